#pragma once

#include <string>
#include <vector>

#include "hgm/base_field.hpp"

namespace hgm {

// sum_j coords[j] * alpha^j in L = K(alpha), alpha^p = a.
struct LElem {
    std::vector<KElem> coords;

    std::size_t size() const { return coords.size(); }
    const KElem& operator[](std::size_t j) const { return coords[j]; }
    KElem& operator[](std::size_t j) { return coords[j]; }

    bool is_zero() const {
        for (const auto& c : coords)
            if (!c.is_zero()) return false;
        return true;
    }

    friend LElem operator+(const LElem& u, const LElem& v) {
        check(u, v);
        LElem r = u;
        for (std::size_t j = 0; j < r.size(); ++j) r[j] = r[j] + v[j];
        return r;
    }
    friend LElem operator-(const LElem& u, const LElem& v) {
        check(u, v);
        LElem r = u;
        for (std::size_t j = 0; j < r.size(); ++j) r[j] = r[j] - v[j];
        return r;
    }
    friend LElem operator*(const KElem& s, const LElem& u) {
        LElem r = u;
        for (auto& c : r.coords) c = s * c;
        return r;
    }
    friend LElem operator*(const Rat& s, const LElem& u) {
        LElem r = u;
        for (auto& c : r.coords) c = s * c;
        return r;
    }
    friend bool operator==(const LElem& u, const LElem& v) { return u.coords == v.coords; }

private:
    static void check(const LElem& u, const LElem& v) {
        if (u.size() != v.size()) throw domain_error("elements of different extensions");
    }
};

using KPoly = std::vector<KElem>;  // coefficients, lowest degree first

/* L = K(alpha) with alpha^p = a: the base field, an odd prime p unramified
 * in K, and a in O_K that is not a p-th power. The factorization of a*O_K
 * is computed once at construction.
 */
class RadicandContext {
public:
    RadicandContext(const BaseField& K, unsigned p, const KElem& a, const Limits& lim = {})
        : K_(K), p_(p), a_(a), lim_(lim) {
        if (p < 3 || !is_prime(Int(p))) throw domain_error("p = " + std::to_string(p) + " must be an odd prime");
        if (K.discriminant() % Int(p) == 0)
            throw domain_error("p = " + std::to_string(p) + " ramifies in " + K.name());
        if (!(a.field() == K)) throw domain_error("radicand lies in a different field");
        if (a.is_zero()) throw domain_error("radicand is zero");
        if (!a.is_integral()) throw domain_error("radicand must lie in O_K");
        if (pth_root(a, p, lim)) throw degenerate_extension_error("radicand " + a.str() + " is a p-th power in K");
        factors_ = factor_ideal(a, lim);
        for (const auto& P : primes_above(K, Int(p))) primes_above_p_.push_back(P);
    }

    const BaseField& field() const { return K_; }
    unsigned p() const { return p_; }
    const KElem& a() const { return a_; }
    const Limits& limits() const { return lim_; }
    const Factorization& radicand_factors() const { return factors_; }
    const std::vector<PrimeIdeal>& primes_above_p() const { return primes_above_p_; }

    int valuation_of_a(const PrimeIdeal& P) const {
        for (const auto& [Q, e] : factors_)
            if (Q == P) return e;
        return 0;
    }

    bool above_p(const PrimeIdeal& P) const { return P.q == Int(p_); }

    // Primes dividing a*O_K or p*O_K, in canonical order.
    std::vector<PrimeIdeal> relevant_primes() const {
        std::vector<PrimeIdeal> out;
        for (const auto& [P, e] : factors_) out.push_back(P);
        for (const auto& P : primes_above_p_)
            if (std::find(out.begin(), out.end(), P) == out.end()) out.push_back(P);
        std::sort(out.begin(), out.end());
        return out;
    }

    LElem zero() const { return LElem{std::vector<KElem>(p_, KElem(K_, 0))}; }
    LElem from_base(const KElem& c) const {
        LElem r = zero();
        r[0] = c;
        return r;
    }
    LElem alpha_pow(unsigned j) const {
        LElem r = zero();
        r[j % p_] = a_.pow(static_cast<int>(j / p_));
        return r;
    }

    void check(const LElem& u) const {
        if (u.size() != p_) throw domain_error("element does not belong to this extension");
        for (const auto& c : u.coords)
            if (!(c.field() == K_)) throw domain_error("element does not belong to this extension");
    }

    friend bool operator==(const RadicandContext& x, const RadicandContext& y) {
        return x.K_ == y.K_ && x.p_ == y.p_ && x.a_ == y.a_;
    }

private:
    BaseField K_;
    unsigned p_;
    KElem a_;
    Limits lim_;
    Factorization factors_;
    std::vector<PrimeIdeal> primes_above_p_;
};

// Product in L, reduced with alpha^p = a.
inline LElem l_mul(const RadicandContext& ctx, const LElem& u, const LElem& v) {
    ctx.check(u);
    ctx.check(v);
    const unsigned p = ctx.p();
    LElem r = ctx.zero();
    for (unsigned i = 0; i < p; ++i) {
        if (u[i].is_zero()) continue;
        for (unsigned j = 0; j < p; ++j) {
            if (v[j].is_zero()) continue;
            KElem term = u[i] * v[j];
            unsigned k = i + j;
            if (k >= p) {
                term = term * ctx.a();
                k -= p;
            }
            r[k] = r[k] + term;
        }
    }
    return r;
}

inline LElem l_pow(const RadicandContext& ctx, const LElem& u, unsigned e) {
    LElem r = ctx.from_base(KElem(ctx.field(), 1));
    LElem b = u;
    while (e) {
        if (e & 1u) r = l_mul(ctx, r, b);
        b = l_mul(ctx, b, b);
        e >>= 1u;
    }
    return r;
}

// Matrix of multiplication by u: column j holds the coordinates of u*alpha^j.
inline std::vector<std::vector<KElem>> multiplication_matrix(const RadicandContext& ctx, const LElem& u) {
    const unsigned p = ctx.p();
    std::vector<std::vector<KElem>> m(p, std::vector<KElem>(p, KElem(ctx.field(), 0)));
    for (unsigned j = 0; j < p; ++j) {
        LElem col = l_mul(ctx, u, ctx.alpha_pow(j));
        for (unsigned i = 0; i < p; ++i) m[i][j] = col[i];
    }
    return m;
}

/* Characteristic polynomial of multiplication by u (monic, degree p), by
 * the Faddeev-LeVerrier recursion. Since p is prime it is either the
 * minimal polynomial of u or (x - u)^p for u in K.
 */
inline KPoly min_poly(const RadicandContext& ctx, const LElem& u) {
    ctx.check(u);
    const unsigned n = ctx.p();
    const BaseField& K = ctx.field();
    auto A = multiplication_matrix(ctx, u);
    using Mat = std::vector<std::vector<KElem>>;
    auto matmul = [&](const Mat& X, const Mat& Y) {
        Mat Z(n, std::vector<KElem>(n, KElem(K, 0)));
        for (unsigned i = 0; i < n; ++i)
            for (unsigned k = 0; k < n; ++k) {
                if (X[i][k].is_zero()) continue;
                for (unsigned j = 0; j < n; ++j) Z[i][j] = Z[i][j] + X[i][k] * Y[k][j];
            }
        return Z;
    };
    KPoly c(n + 1, KElem(K, 0));
    c[n] = KElem(K, 1);
    Mat M(n, std::vector<KElem>(n, KElem(K, 0)));
    for (unsigned k = 1; k <= n; ++k) {
        M = matmul(A, M);
        for (unsigned i = 0; i < n; ++i) M[i][i] = M[i][i] + c[n - k + 1];
        Mat AM = matmul(A, M);
        KElem tr(K, 0);
        for (unsigned i = 0; i < n; ++i) tr = tr + AM[i][i];
        c[n - k] = -(tr / Rat(static_cast<long>(k)));
    }
    return c;
}

inline bool is_integral_element(const RadicandContext& ctx, const LElem& u) {
    for (const auto& c : min_poly(ctx, u))
        if (!c.is_integral()) return false;
    return true;
}

// Z-coordinates of u: (x_0, y_0, x_1, y_1, ...) for quadratic K.
inline RatVector flatten(const RadicandContext& ctx, const LElem& u) {
    ctx.check(u);
    RatVector out;
    for (const auto& c : u.coords)
        for (const auto& z : c.coords()) out.push_back(z);
    return out;
}

// The O_K-module spanned by `gens`, as a Z-lattice of rank <= p * [K:Q].
inline IntegerLattice ok_span(const RadicandContext& ctx, const std::vector<LElem>& gens) {
    const BaseField& K = ctx.field();
    std::vector<RatVector> z;
    KElem w(K, 0, K.is_rational() ? 0 : 1);
    for (const auto& g : gens) {
        z.push_back(flatten(ctx, g));
        if (!K.is_rational()) z.push_back(flatten(ctx, w * g));
    }
    return IntegerLattice::from_generators(z, ctx.p() * K.degree());
}

// Coordinates of the basis elements as rows, for use with hnf_glue.
inline std::vector<RatVector> flatten_all(const RadicandContext& ctx, const std::vector<LElem>& v) {
    std::vector<RatVector> out;
    for (const auto& u : v) out.push_back(flatten(ctx, u));
    return out;
}

inline std::string poly_str(const KPoly& f) {
    std::string s;
    for (std::size_t i = f.size(); i-- > 0;) {
        if (f[i].is_zero()) continue;
        std::string c = f[i].str();
        bool compound = c.find_first_of("+w") != std::string::npos && f[i].y() != 0;
        if (compound) c = "(" + c + ")";
        std::string term;
        if (i == 0) term = c;
        else {
            std::string xs = i == 1 ? "x" : "x^" + std::to_string(i);
            if (c == "1") term = xs;
            else if (c == "-1") term = "-" + xs;
            else term = c + "*" + xs;
        }
        if (s.empty()) s = term;
        else if (term[0] == '-') s += " - " + term.substr(1);
        else s += " + " + term;
    }
    return s.empty() ? "0" : s;
}

}  // namespace hgm
