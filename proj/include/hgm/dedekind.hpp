#pragma once

// Dedekind's criterion for x^p - a over Q. This file deliberately shares no
// code with the local integral bases it is used to cross-check: it works
// purely with polynomials over Z and over the field with q elements.

#include <cstdint>
#include <string>
#include <vector>

#include "hgm/arith.hpp"

namespace hgm {

namespace fq {

using Poly = std::vector<std::int64_t>;  // lowest degree first, trimmed

inline std::int64_t red(std::int64_t x, std::int64_t q) {
    x %= q;
    return x < 0 ? x + q : x;
}

inline std::int64_t mulm(std::int64_t a, std::int64_t b, std::int64_t q) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % q);
}

inline std::int64_t inv(std::int64_t a, std::int64_t q) {
    std::int64_t r = 1, e = q - 2, b = red(a, q);
    while (e) {
        if (e & 1) r = mulm(r, b, q);
        b = mulm(b, b, q);
        e >>= 1;
    }
    return r;
}

inline Poly trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

inline int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly monic(Poly f, std::int64_t q) {
    f = trim(f);
    if (f.empty()) return f;
    std::int64_t li = inv(f.back(), q);
    for (auto& c : f) c = mulm(c, li, q);
    return f;
}

inline Poly sub(const Poly& f, const Poly& g, std::int64_t q) {
    Poly r(std::max(f.size(), g.size()), 0);
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = red(r[i] - g[i], q);
    return trim(r);
}

inline Poly mul(const Poly& f, const Poly& g, std::int64_t q) {
    if (f.empty() || g.empty()) return {};
    Poly r(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) r[i + j] = red(r[i + j] + mulm(f[i], g[j], q), q);
    return trim(r);
}

// Quotient and remainder; g nonzero.
inline std::pair<Poly, Poly> divmod(Poly f, const Poly& g, std::int64_t q) {
    f = trim(f);
    Poly gt = trim(g);
    if (gt.empty()) throw domain_error("polynomial division by zero");
    if (deg(f) < deg(gt)) return {{}, f};
    Poly quo(f.size() - gt.size() + 1, 0);
    std::int64_t li = inv(gt.back(), q);
    for (int i = deg(f); i >= deg(gt); --i) {
        std::int64_t c = mulm(f[i], li, q);
        quo[i - deg(gt)] = c;
        for (int j = 0; j <= deg(gt); ++j) f[i - deg(gt) + j] = red(f[i - deg(gt) + j] - mulm(c, gt[j], q), q);
    }
    return {trim(quo), trim(f)};
}

inline Poly gcd(Poly f, Poly g, std::int64_t q) {
    f = trim(f);
    g = trim(g);
    while (!g.empty()) {
        Poly r = divmod(f, g, q).second;
        f = std::move(g);
        g = std::move(r);
    }
    return monic(f, q);
}

inline Poly derivative(const Poly& f, std::int64_t q) {
    Poly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mulm(f[i], static_cast<std::int64_t>(i) % q, q));
    return trim(d);
}

// Product of the distinct monic irreducible factors of f (f nonzero).
inline Poly radical(const Poly& f_in, std::int64_t q) {
    Poly f = monic(f_in, q);
    if (deg(f) <= 0) return {1};
    Poly df = derivative(f, q);
    if (df.empty()) {
        // f(x) = G(x^q) = G(x)^q over the prime field
        Poly G;
        for (std::size_t i = 0; i < f.size(); i += static_cast<std::size_t>(q)) G.push_back(f[i]);
        return radical(G, q);
    }
    Poly g = gcd(f, df, q);
    Poly w = divmod(f, g, q).first;  // irreducibles of multiplicity not divisible by q
    Poly rg = radical(g, q);
    Poly common = gcd(w, rg, q);
    return monic(mul(w, divmod(rg, common, q).first, q), q);
}

}  // namespace fq

struct MaximalityWitness {
    Int q;
    unsigned p = 0;
    Int a;
    fq::Poly f_mod_q;   // x^p - a mod q
    fq::Poly g, h;      // f = g * h mod q with g the radical of f
    fq::Poly F_mod_q;   // (g*h - f)/q mod q, with g, h lifted to [0, q)
    fq::Poly gcd_poly;  // gcd(F, g, h) mod q
    bool maximal = false;

    std::string verdict() const { return maximal ? "maximal-at-q" : "index-divisible-by-q"; }
};

namespace detail {

inline fq::Poly compute_F(const fq::Poly& g, const fq::Poly& h, unsigned p, const Int& a, std::int64_t q) {
    // Over Z: g*h - (x^p - a), exactly divisible by q.
    std::vector<Int> gh(g.size() + h.size() - 1, Int(0));
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j) gh[i + j] += Int(g[i]) * h[j];
    gh.resize(std::max<std::size_t>(gh.size(), p + 1), Int(0));
    gh[p] -= 1;
    gh[0] += a;
    fq::Poly F;
    for (auto& c : gh) {
        if (c % q != 0) throw domain_error("internal: g*h - f is not divisible by q");
        F.push_back(static_cast<std::int64_t>(mod(c / q, Int(q))));
    }
    return fq::trim(F);
}

}  // namespace detail

/* Dedekind criterion at q for f = x^p - a: with g the radical of f mod q
 * and h = f/g mod q, Z[alpha] is q-maximal iff gcd(F, g, h) = 1 where
 * F = (g*h - f)/q.
 */
inline MaximalityWitness dedekind_maximality_oracle(const Int& q_in, unsigned p, const Int& a) {
    if (!is_prime(q_in)) throw domain_error(q_in.str() + " is not prime");
    if (q_in > (Int(1) << 62)) throw unsupported_error("Dedekind oracle needs q < 2^62");
    const auto q = static_cast<std::int64_t>(q_in);
    MaximalityWitness w;
    w.q = q_in;
    w.p = p;
    w.a = a;
    fq::Poly f(p + 1, 0);
    f[p] = 1;
    f[0] = static_cast<std::int64_t>(mod(-a, q_in));
    w.f_mod_q = fq::trim(f);
    w.g = fq::radical(w.f_mod_q, q);
    w.h = fq::divmod(w.f_mod_q, w.g, q).first;
    w.F_mod_q = detail::compute_F(w.g, w.h, p, a, q);
    w.gcd_poly = fq::gcd(fq::gcd(w.F_mod_q, w.g, q), w.h, q);
    w.maximal = fq::deg(w.gcd_poly) == 0;
    return w;
}

// Recompute every step of a witness and compare.
inline bool recheck(const MaximalityWitness& w) {
    auto fresh = dedekind_maximality_oracle(w.q, w.p, w.a);
    if (fresh.f_mod_q != w.f_mod_q || fresh.maximal != w.maximal) return false;
    const auto q = static_cast<std::int64_t>(w.q);
    if (fq::mul(w.g, w.h, q) != w.f_mod_q) return false;
    if (detail::compute_F(w.g, w.h, w.p, w.a, q) != w.F_mod_q) return false;
    return fq::gcd(fq::gcd(w.F_mod_q, w.g, q), w.h, q) == w.gcd_poly;
}

}  // namespace hgm
