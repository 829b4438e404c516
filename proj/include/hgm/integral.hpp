#pragma once

#include <optional>
#include <set>
#include <vector>

#include "hgm/radical.hpp"

namespace hgm {

using KMatrix = std::vector<std::vector<KElem>>;

inline KElem det_k(KMatrix a) {
    const std::size_t n = a.size();
    const BaseField K = a.empty() ? BaseField::rationals() : a[0][0].field();
    KElem det(K, 1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c].is_zero()) ++piv;
        if (piv == n) return KElem(K, 0);
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det = det * a[c][c];
        KElem inv = a[c][c].inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            KElem f = a[i][c] * inv;
            for (std::size_t k = c; k < n; ++k) a[i][k] = a[i][k] - f * a[c][k];
        }
    }
    return det;
}

// Solve sum_i lambda_i * rows[i] = target for a nonsingular square system.
inline std::vector<KElem> solve_rows(const std::vector<LElem>& rows, const LElem& target) {
    const std::size_t n = rows.size();
    KMatrix m(n, std::vector<KElem>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = rows[j][i];
        m[i][n] = target[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c].is_zero()) ++piv;
        if (piv == n) throw domain_error("singular basis");
        std::swap(m[piv], m[c]);
        KElem inv = m[c][c].inverse();
        for (std::size_t k = c; k <= n; ++k) m[c][k] = m[c][k] * inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c].is_zero()) continue;
            KElem f = m[i][c];
            for (std::size_t k = c; k <= n; ++k) m[i][k] = m[i][k] - f * m[c][k];
        }
    }
    std::vector<KElem> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(m[i][n]);
    return out;
}

/* An element pi with v_P(pi) = 1 and v_Q(pi) = 0 at the other primes
 * dividing a*p*O_K. Over Q and for inert P this is q; otherwise the
 * canonical two-element generator is tried first, then a box search over
 * the Z-basis of P.
 */
inline KElem uniformizer(const RadicandContext& ctx, const PrimeIdeal& P) {
    const BaseField& K = ctx.field();
    if (K.is_rational() || P.residue_degree == 2) return k_int(K, P.q);
    auto others = ctx.relevant_primes();
    auto good = [&](const KElem& x) {
        if (x.is_zero() || valuation(P, x) != 1) return false;
        for (const auto& Q : others)
            if (!(Q == P) && valuation(Q, x) != 0) return false;
        return true;
    };
    if (good(P.pi)) return P.pi;
    auto b = P.ideal().z_basis();
    for (Int R = 1; R < 1000; ++R)
        for (Int u = -R; u <= R; ++u)
            for (Int w = -R; w <= R; ++w) {
                if (abs(u) != R && abs(w) != R) continue;
                KElem x = Rat(u) * b[0] + Rat(w) * b[1];
                if (good(x)) return x;
            }
    throw resource_error("no uniformizer found for " + P.str() + " within search radius 1000");
}

struct LocalIntegralBasis {
    PrimeIdeal prime;
    std::vector<LElem> basis;
    std::optional<KElem> uniformizer;  // absent above p
    std::vector<int> r;                 // r_P(a^j); empty above p
};

inline bool is_normalized(const RadicandContext& ctx) {
    Int p2 = Int(ctx.p()) * ctx.p();
    return congruent_mod(ctx.a(), KElem(ctx.field(), 1), p2);
}

/* Local integral basis of O_{L,P} over O_{K,P}.
 *
 * Away from p: alpha^j / pi^r_j with r_j = floor(j v_P(a) / p).
 * Above p (a = 1 mod p^2): 1, alpha, ..., alpha^(p-2), (1 + ... + alpha^(p-1))/p.
 */
inline LocalIntegralBasis local_basis(const RadicandContext& ctx, const PrimeIdeal& P) {
    const unsigned p = ctx.p();
    const BaseField& K = ctx.field();
    LocalIntegralBasis out;
    out.prime = P;
    if (ctx.above_p(P)) {
        if (!is_normalized(ctx))
            throw precondition_error("radicand " + ctx.a().str() +
                                     " is not 1 mod p^2; normalize it with tameness_test first");
        for (unsigned j = 0; j + 1 < p; ++j) out.basis.push_back(ctx.alpha_pow(j));
        LElem s = ctx.zero();
        for (unsigned j = 0; j < p; ++j) s[j] = KElem(K, Rat(1, p));
        out.basis.push_back(s);
        return out;
    }
    KElem pi = uniformizer(ctx, P);
    out.uniformizer = pi;
    int v = ctx.valuation_of_a(P);
    for (unsigned j = 0; j < p; ++j) {
        int r = static_cast<int>((static_cast<long>(j) * v) / p);
        out.r.push_back(r);
        out.basis.push_back(pi.pow(-r) * ctx.alpha_pow(j));
    }
    return out;
}

inline std::vector<KElem> coordinates_in(const LocalIntegralBasis& B, const LElem& x) {
    return solve_rows(B.basis, x);
}

inline bool is_integral_at(const RadicandContext& ctx, const LElem& x, const PrimeIdeal& P) {
    ctx.check(x);
    auto B = local_basis(ctx, P);
    for (const auto& c : coordinates_in(B, x))
        if (!c.is_zero() && valuation(P, c) < 0) return false;
    return true;
}

// Primes where x could fail to be integral: those of a*p*O_K and those
// above the denominators of x's coordinates.
inline std::vector<PrimeIdeal> integrality_support(const RadicandContext& ctx, const LElem& x) {
    auto out = ctx.relevant_primes();
    Int d = 1;
    for (const auto& c : x.coords) d = lcm(d, c.denominator());
    if (d > 1)
        for (const auto& [q, e] : factor_integer(d, ctx.limits()))
            for (const auto& P : primes_above(ctx.field(), q))
                if (std::find(out.begin(), out.end(), P) == out.end()) out.push_back(P);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_integral(const RadicandContext& ctx, const LElem& x) {
    for (const auto& P : integrality_support(ctx, x))
        if (!is_integral_at(ctx, x, P)) return false;
    return true;
}

// v_P of the determinant of `elems` written in local_basis(P).
inline std::optional<int> local_index_valuation(const RadicandContext& ctx, const PrimeIdeal& P,
                                                const std::vector<LElem>& elems) {
    auto B = local_basis(ctx, P);
    KMatrix m;
    for (const auto& e : elems) {
        LElem z = e;
        m.push_back(coordinates_in(B, z));
    }
    KElem d = det_k(m);
    if (d.is_zero()) return std::nullopt;
    return valuation(P, d);
}

// Global integral basis of O_L as an HNF lattice in the power basis (K = Q).
inline IntegerLattice global_integral_basis(const RadicandContext& ctx) {
    if (!ctx.field().is_rational())
        throw unsupported_error("global integral basis is only assembled over Q");
    std::vector<LocalCondition> conds;
    for (const auto& P : ctx.relevant_primes())
        conds.push_back({P.q, flatten_all(ctx, local_basis(ctx, P).basis)});
    return hnf_glue(conds, ctx.p());
}

inline std::vector<LElem> lattice_elements(const RadicandContext& ctx, const IntegerLattice& lat) {
    const BaseField& K = ctx.field();
    std::vector<LElem> out;
    for (const auto& v : lat.basis()) {
        LElem u = ctx.zero();
        for (unsigned j = 0; j < ctx.p(); ++j)
            u[j] = K.is_rational() ? KElem(K, v[j]) : KElem(K, v[2 * j], v[2 * j + 1]);
        out.push_back(std::move(u));
    }
    return out;
}

// Absolute trace L -> Q over K = Q: Tr(alpha^k) = 0 for 0 < k < p.
inline Rat trace_q(const RadicandContext& ctx, const LElem& u) {
    if (!ctx.field().is_rational()) throw unsupported_error("trace to Q is only implemented over Q");
    return Rat(ctx.p()) * u[0].x();
}

// det(Tr(w_i w_j)) for a Q-basis of L (K = Q).
inline Rat trace_form_discriminant(const RadicandContext& ctx, const std::vector<LElem>& basis) {
    RatMatrix m(basis.size(), RatVector(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) m[i][j] = trace_q(ctx, l_mul(ctx, basis[i], basis[j]));
    return determinant(m);
}

inline Int field_discriminant(const RadicandContext& ctx) {
    Rat d = trace_form_discriminant(ctx, lattice_elements(ctx, global_integral_basis(ctx)));
    if (!is_integer(d)) throw domain_error("internal: non-integral discriminant");
    return num(d);
}

// disc(x^p - a) = (-1)^(p(p-1)/2) p^p (-a)^(p-1) for K = Q.
inline Int power_basis_discriminant(unsigned p, const Int& a) {
    Int s = ((p * (p - 1) / 2) % 2) ? Int(-1) : Int(1);
    return s * ipow(Int(p), p) * ipow(Int(-a), p - 1);
}

}  // namespace hgm
