#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hgm/extension.hpp"

namespace hgm {

// a = prod_i parts[i]^i with the parts squarefree and pairwise coprime.
struct IPartDecomposition {
    BaseField field = BaseField::rationals();
    std::map<int, KIdeal> parts;
    std::map<int, std::vector<PrimeIdeal>> primes;  // the primes making up each part

    KIdeal part(int i) const {
        auto it = parts.find(i);
        return it == parts.end() ? KIdeal::unit(field) : it->second;
    }

    KIdeal reconstruct() const {
        KIdeal r = KIdeal::unit(field);
        for (const auto& [i, A] : parts) r = r * A.pow(i);
        return r;
    }
};

inline IPartDecomposition i_parts_from(const BaseField& K, const Factorization& f) {
    IPartDecomposition d;
    d.field = K;
    for (const auto& [P, e] : f) {
        auto it = d.parts.find(e);
        if (it == d.parts.end()) d.parts.emplace(e, P.ideal());
        else it->second = it->second * P.ideal();
        d.primes[e].push_back(P);
    }
    return d;
}

inline IPartDecomposition i_part_decomposition(const KIdeal& A, const Limits& lim = {}) {
    if (A.is_zero()) throw domain_error("i-part decomposition of the zero ideal");
    if (!A.is_integral()) throw domain_error("i-part decomposition needs an integral ideal");
    return i_parts_from(A.field(), factor_ideal(A, lim));
}

/* The ideals b_j = prod_P P^floor(j v_P(a) / p), j = 0..p-1, attached to a
 * radicand, with the exponent table r_P(a^j) and the class of each b_j.
 */
struct AssociatedIdeals {
    unsigned p = 0;
    std::vector<KIdeal> b;
    std::vector<QuadForm> classes;
    std::vector<std::pair<PrimeIdeal, std::vector<int>>> exponents;  // r_P(a^j) per prime

    int r(const PrimeIdeal& P, unsigned j) const {
        for (const auto& [Q, row] : exponents)
            if (Q == P) return row[j];
        return 0;
    }
};

inline AssociatedIdeals associated_ideals_of(const BaseField& K, unsigned p, const Factorization& f) {
    AssociatedIdeals out;
    out.p = p;
    for (const auto& [P, v] : f) {
        std::vector<int> row(p);
        for (unsigned j = 0; j < p; ++j) row[j] = static_cast<int>((static_cast<long>(j) * v) / p);
        out.exponents.emplace_back(P, std::move(row));
    }
    for (unsigned j = 0; j < p; ++j) {
        KIdeal bj = KIdeal::unit(K);
        for (const auto& [P, row] : out.exponents)
            if (row[j] > 0) bj = bj * P.ideal().pow(row[j]);
        out.classes.push_back(ideal_class(bj));
        out.b.push_back(std::move(bj));
    }
    return out;
}

inline AssociatedIdeals associated_ideals(const RadicandContext& ctx) {
    return associated_ideals_of(ctx.field(), ctx.p(), ctx.radicand_factors());
}

// The i-part form of the same ideals: b_j = prod_i a_i^floor(i j / p).
inline std::vector<KIdeal> associated_ideals_by_parts(const IPartDecomposition& d, unsigned p) {
    std::vector<KIdeal> out;
    for (unsigned j = 0; j < p; ++j) {
        KIdeal bj = KIdeal::unit(d.field);
        for (const auto& [i, A] : d.parts) {
            int e = static_cast<int>((static_cast<long>(i) * j) / p);
            if (e > 0) bj = bj * A.pow(e);
        }
        out.push_back(std::move(bj));
    }
    return out;
}

struct PthPowerStrip {
    KElem reduced;  // a = reduced * s^p
    KElem s;
};

/* Divide out p-th powers of ideals that are principal. The whole
 * prod P^floor(v/p) is tried first, then each prime on its own.
 */
inline PthPowerStrip strip_pth_powers(const KElem& a, unsigned p, const Factorization& f) {
    const BaseField& K = a.field();
    KIdeal J = KIdeal::unit(K);
    for (const auto& [P, v] : f)
        if (v >= static_cast<int>(p)) J = J * P.ideal().pow(v / static_cast<int>(p));
    auto pr = is_principal(J);
    if (pr.principal) {
        KElem s = *pr.generator;
        return {a / s.pow(static_cast<int>(p)), s};
    }
    KElem red = a, s(K, 1);
    for (const auto& [P, v] : f) {
        if (v < static_cast<int>(p)) continue;
        auto pp = is_principal(P.ideal().pow(v / static_cast<int>(p)));
        if (!pp.principal) continue;
        red = red / pp.generator->pow(static_cast<int>(p));
        s = s * *pp.generator;
    }
    return {red, s};
}

inline PthPowerStrip strip_pth_powers(const KElem& a, unsigned p, const Limits& lim = {}) {
    return strip_pth_powers(a, p, factor_ideal(a, lim));
}

/* Outcome of the tameness test. When tame, a' = a^ell * c^p satisfies
 * a' = 1 mod p^2 O_K and alpha' = alpha^ell * c generates the same field.
 */
struct TamenessVerdict {
    bool tame = false;
    std::optional<KElem> normalized;
    unsigned ell = 0;
    std::optional<KElem> c;
    std::optional<PrimeIdeal> wild_prime;  // prime above p where v(a) is not 0 mod p
    std::string witness;
};

namespace detail {

inline KElem reduce_mod(const KElem& x, const Int& m) {
    return KElem(x.field(), Rat(mod(num(x.x()), m)), Rat(mod(num(x.y()), m)));
}

}  // namespace detail

inline TamenessVerdict tameness_test(const BaseField& K, unsigned p, const KElem& a, const Limits& lim = {}) {
    if (p < 3 || !is_prime(Int(p))) throw domain_error("p must be an odd prime");
    if (K.discriminant() % Int(p) == 0) throw domain_error("p ramifies in K");
    if (a.is_zero()) throw domain_error("radicand is zero");
    if (!a.is_integral()) throw domain_error("radicand must lie in O_K");
    if (pth_root(a, p, lim)) throw degenerate_extension_error("radicand " + a.str() + " is a p-th power in K");
    const int ip = static_cast<int>(p);
    const Int P2 = Int(p) * p;

    TamenessVerdict out;
    auto base = strip_pth_powers(a, p, lim);
    for (const auto& P : primes_above(K, Int(p))) {
        int v = valuation(P, base.reduced);
        if (v % ip != 0) {
            out.wild_prime = P;
            out.witness = "v_P(a) = " + std::to_string(v) + " is not divisible by p at P = " + P.str() +
                          "; P is totally and wildly ramified";
            return out;
        }
        if (v > 0)
            throw unsupported_error("radicand has a non-principal p-th power part at " + P.str() +
                                    " above p; cannot normalize");
    }

    // Residues c of O_K mod p^2 in the order (y, x), and c^p mod p^2.
    std::vector<std::pair<KElem, KElem>> residues;
    const Int ylim = K.is_rational() ? Int(1) : P2;
    for (Int y = 0; y < ylim; ++y)
        for (Int x = 0; x < P2; ++x) {
            KElem c(K, Rat(x), Rat(y));
            if (mod(num(c.norm()), Int(p)) == 0) continue;
            residues.emplace_back(c, detail::reduce_mod(c.pow(ip), P2));
        }

    KElem one(K, 1);
    const auto reduced_factors = factor_ideal(base.reduced, lim);
    for (unsigned ell = 1; ell < p; ++ell) {
        auto f = reduced_factors;
        for (auto& [P, v] : f) v *= static_cast<int>(ell);
        auto s = strip_pth_powers(base.reduced.pow(static_cast<int>(ell)), p, f);
        KElem A = detail::reduce_mod(s.reduced, P2);
        for (const auto& [c, cp] : residues) {
            if (!congruent_mod(A * cp, one, P2)) continue;
            out.tame = true;
            out.ell = ell;
            out.normalized = s.reduced * c.pow(ip);
            // a' = a^ell * (c / (s_0^ell * s_ell))^p
            out.c = c / (base.s.pow(static_cast<int>(ell)) * s.s);
            out.witness = "a^" + std::to_string(ell) + " * (" + out.c->str() + ")^p = 1 mod p^2";
            return out;
        }
    }
    out.witness = "no l in 1..p-1 makes a^l a p-th power modulo p^2 O_K";
    return out;
}

enum class RamificationType { unramified, totally_ramified };

inline const char* to_string(RamificationType t) {
    return t == RamificationType::unramified ? "unramified" : "totally-ramified";
}

inline RamificationType ramification_type(const RadicandContext& ctx, const PrimeIdeal& P) {
    if (ctx.above_p(P)) throw domain_error("ramification_type is for primes not above p");
    return ctx.valuation_of_a(P) % static_cast<int>(ctx.p()) == 0 ? RamificationType::unramified
                                                                   : RamificationType::totally_ramified;
}

}  // namespace hgm
