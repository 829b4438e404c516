#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hgm/hopf.hpp"

namespace hgm {

enum class Verdict { free, not_free_class_obstruction, not_free_congruence_obstruction };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::free: return "free";
        case Verdict::not_free_class_obstruction: return "not-free-class-obstruction";
        case Verdict::not_free_congruence_obstruction: return "not-free-congruence-obstruction";
    }
    return "?";
}

struct FreenessCertificate {
    Verdict verdict = Verdict::not_free_congruence_obstruction;
    ClassTuple classes;
    std::vector<KElem> b;      // generators of b_j; empty on a class obstruction
    std::vector<KElem> units;  // u_j of the winning tuple
    std::optional<LElem> generator;
    std::optional<unsigned> obstruction_index;
    std::optional<QuadForm> obstruction_class;
    std::vector<std::string> transcript;  // one line per unit tuple tried
};

namespace detail {

inline std::string unit_tuple_str(const std::vector<KElem>& u) {
    std::string s = "(";
    for (std::size_t j = 0; j < u.size(); ++j) s += (j ? ", " : "") + u[j].str();
    return s + ")";
}

inline LElem candidate(const RadicandContext& ctx, const std::vector<KElem>& b, const std::vector<KElem>& u) {
    LElem x = ctx.zero();
    for (unsigned j = 0; j < ctx.p(); ++j) x[j] = (u[j] * b[j]).inverse();
    return Rat(1, ctx.p()) * x;
}

}  // namespace detail

/* Unit search with prescribed generators b_j of the associated ideals:
 * the first tuple (u_0 = 1, u_1, ..., u_(p-1)) in lexicographic order of
 * unit_reps_mod_p for which (1/p) sum_j u_j^-1 alpha^j / b_j is integral at
 * every prime above p.
 */
inline FreenessCertificate search_generator(const RadicandContext& ctx, const std::vector<KElem>& b) {
    const unsigned p = ctx.p();
    const BaseField& K = ctx.field();
    if (b.size() != p) throw domain_error("need exactly p associated-ideal generators");
    FreenessCertificate cert;
    cert.b = b;
    auto reps = unit_reps_mod_p(K, Int(p));
    std::vector<std::size_t> idx(p, 0);
    for (;;) {
        std::vector<KElem> u;
        u.push_back(KElem(K, 1));
        for (unsigned j = 1; j < p; ++j) u.push_back(reps[idx[j]]);
        LElem x = detail::candidate(ctx, b, u);
        std::string failed;
        for (const auto& P : ctx.primes_above_p())
            if (!is_integral_at(ctx, x, P)) {
                failed = P.str();
                break;
            }
        cert.transcript.push_back(detail::unit_tuple_str(u) + (failed.empty() ? ": integral" : ": fails at " + failed));
        if (failed.empty()) {
            cert.verdict = Verdict::free;
            cert.units = u;
            cert.generator = x;
            return cert;
        }
        unsigned j = p - 1;
        while (j >= 1 && ++idx[j] == reps.size()) idx[j--] = 0;
        if (j == 0) break;
    }
    cert.verdict = Verdict::not_free_congruence_obstruction;
    return cert;
}

inline FreenessCertificate criterion_check(const RadicandContext& ctx) {
    if (!is_normalized(ctx))
        throw precondition_error("radicand " + ctx.a().str() +
                                 " is not tame-normalized (1 mod p^2); run tameness_test first");
    auto ai = associated_ideals(ctx);
    ClassTuple classes = class_tuple_of(ai);
    if (auto j = classes.first_nonprincipal()) {
        FreenessCertificate cert;
        cert.verdict = Verdict::not_free_class_obstruction;
        cert.classes = classes;
        cert.obstruction_index = *j;
        cert.obstruction_class = classes.classes[*j];
        return cert;
    }
    std::vector<KElem> b;
    for (const auto& bj : ai.b) b.push_back(*is_principal(bj).generator);
    auto cert = search_generator(ctx, b);
    cert.classes = classes;
    return cert;
}

/* Generators a_j with {beta^j / b_j} = {alpha^j / a_j} for beta = alpha^ell * c:
 * a_j = b_k c^-k a^-floor(ell k / p) with k = j t mod p, t = ell^-1 mod p.
 */
inline std::vector<KElem> change_radicand(const RadicandContext& ctx, unsigned ell, const KElem& c,
                                          const std::vector<KElem>& b) {
    const unsigned p = ctx.p();
    if (ell % p == 0) throw domain_error("ell must be prime to p");
    if (c.is_zero()) throw domain_error("c must be nonzero");
    if (b.size() != p) throw domain_error("need exactly p generators b_j");
    const unsigned t = static_cast<unsigned>(mod(ext_gcd(Int(ell), Int(p)).x, Int(p)));
    std::vector<KElem> out;
    for (unsigned j = 0; j < p; ++j) {
        unsigned k = static_cast<unsigned>((static_cast<unsigned long>(j) * t) % p);
        int f = static_cast<int>((static_cast<unsigned long>(ell) * k) / p);
        out.push_back(b[k] * c.pow(-static_cast<int>(k)) * ctx.a().pow(-f));
    }
    return out;
}

struct PrimeEvidence {
    PrimeIdeal prime;
    std::optional<int> valuation;  // of the orbit determinant against local_basis
    bool ok = false;
};

struct VerificationResult {
    bool ok = false;
    std::string method;  // "hnf" over Q, "local" otherwise
    std::vector<PrimeEvidence> primes;
    std::string detail;
};

// Primes where the associated-order orbit of x could differ from O_L.
inline std::vector<PrimeIdeal> verification_primes(const RadicandContext& ctx, const LElem& x) {
    auto out = ctx.relevant_primes();
    std::vector<Int> known{Int(ctx.p())};
    for (const auto& P : out) known.push_back(P.q);
    auto add = [&](Int n) {
        n = abs(n);
        for (const auto& q : known)
            while (n % q == 0) n /= q;
        if (n == 1) return;
        for (const auto& [q, e] : factor_integer(n, ctx.limits()))
            for (const auto& P : primes_above(ctx.field(), q))
                if (std::find(out.begin(), out.end(), P) == out.end()) out.push_back(P);
    };
    for (const auto& c : x.coords) {
        add(num(c.norm()));
        add(den(c.norm()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/* Check that the associated order maps x onto O_L. Over Q the lattice
 * spanned by x, p e_1 x, ..., p e_(p-1) x is compared with the global
 * integral basis; over a quadratic field the orbit determinant must be a
 * local unit at every prime where it could fail to be.
 */
inline VerificationResult verify_generator(const RadicandContext& ctx, const LElem& x) {
    ctx.check(x);
    VerificationResult res;
    res.method = ctx.field().is_rational() ? "hnf" : "local";
    for (const auto& c : x.coords)
        if (c.is_zero()) {
            res.detail = "a power-basis coordinate of x is zero, so its orbit is degenerate";
            return res;
        }
    bool local_ok = true;
    for (const auto& P : verification_primes(ctx, x)) {
        PrimeEvidence ev;
        ev.prime = P;
        ev.valuation = local_generation_valuation(ctx, P, x);
        ev.ok = ev.valuation && *ev.valuation == 0;
        local_ok = local_ok && ev.ok;
        res.primes.push_back(std::move(ev));
    }
    if (ctx.field().is_rational()) {
        auto span = ok_span(ctx, associated_orbit(ctx, x));
        bool same = span == global_integral_basis(ctx);
        res.ok = same && local_ok;
        res.detail = same ? "orbit lattice equals the integral basis lattice"
                          : "orbit lattice differs from the integral basis lattice";
        return res;
    }
    res.ok = local_ok;
    res.detail = local_ok ? "orbit determinant is a local unit at every checked prime"
                          : "orbit determinant is not a local unit at some prime";
    return res;
}

}  // namespace hgm
