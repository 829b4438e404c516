#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "hgm/errors.hpp"

namespace hgm {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Resource bounds threaded through operations that may need to factor
// integers. The default norm bound is 2^64.
struct Limits {
    Int max_norm = Int(1) << 64;
};

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

inline Int abs(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return abs(a / gcd(a, b) * b);
}

// Floor division and the matching non-negative remainder (for b > 0).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += abs(m);
    return r;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

struct ExtGcd {
    Int g, x, y;  // g = x*a + y*b, g >= 0
};

inline ExtGcd ext_gcd(const Int& a, const Int& b) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    return {old_r, old_s, old_t};
}

inline Int ipow(Int base, unsigned e) {
    Int r = 1;
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

inline Rat rpow(const Rat& base, int e) {
    Rat b = e < 0 ? Rat(1) / base : base;
    unsigned k = static_cast<unsigned>(e < 0 ? -e : e);
    Rat r = 1;
    while (k) {
        if (k & 1u) r *= b;
        b *= b;
        k >>= 1u;
    }
    return r;
}

inline Int powmod(const Int& b, const Int& e, const Int& m) {
    return boost::multiprecision::powm(mod(b, m), e, m);
}

// Multiplicity of the prime q in the nonzero integer x.
inline int vq(Int x, const Int& q) {
    if (x == 0) throw domain_error("valuation of zero");
    int v = 0;
    x = abs(x);
    while (x % q == 0) { x /= q; ++v; }
    return v;
}

inline int vq(const Rat& x, const Int& q) { return vq(num(x), q) - vq(den(x), q); }

// Deterministic Miller-Rabin for n < 3.3e24 (covers the default 2^64 bound),
// strong probable prime beyond that.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    static constexpr unsigned small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (unsigned a : small) {
        Int x = powmod(Int(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

// Pollard-Brent; n odd composite.
inline Int rho_factor(const Int& n) {
    for (Int c = 1;; ++c) {
        Int y = 2, x = 2, g = 1, q = 1, ys = 2;
        std::uint64_t r = 1;
        auto f = [&](const Int& v) { return (v * v + c) % n; };
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min<std::uint64_t>(64, r - k); ++i) {
                    y = f(y);
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += 64;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_into(Int n, std::vector<std::pair<Int, int>>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        for (auto& [p, e] : out)
            if (p == n) { ++e; return; }
        out.emplace_back(n, 1);
        return;
    }
    Int d = rho_factor(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

// Prime factorization of |n| (n != 0), sorted by prime. Throws resource_error
// when |n| exceeds the norm bound.
inline std::vector<std::pair<Int, int>> factor_integer(const Int& n, const Limits& lim = {}) {
    if (n == 0) throw domain_error("factorization of zero");
    Int m = abs(n);
    if (m > lim.max_norm)
        throw resource_error("norm " + m.str() + " exceeds max-norm bound " + lim.max_norm.str());
    std::vector<std::pair<Int, int>> out;
    for (unsigned p = 2; p < 1000 && Int(p) * p <= m; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (m % p == 0) { m /= p; ++e; }
        if (e) out.emplace_back(Int(p), e);
    }
    detail::factor_into(m, out);
    std::sort(out.begin(), out.end());
    return out;
}

// Exact integer n-th root of x if it exists (negative x allowed for odd n).
inline std::pair<bool, Int> exact_root(const Int& x, unsigned n) {
    if (x < 0) {
        if (n % 2 == 0) return {false, 0};
        auto [ok, r] = exact_root(-x, n);
        return {ok, -r};
    }
    if (x < 2) return {true, x};
    Int lo = 0, hi = 1;
    while (ipow(hi, n) <= x) hi <<= 1;
    while (hi - lo > 1) {
        Int mid = (lo + hi) / 2;
        if (ipow(mid, n) <= x) lo = mid; else hi = mid;
    }
    return {ipow(lo, n) == x, lo};
}

inline Int isqrt(const Int& x) { return boost::multiprecision::sqrt(x); }

// Square root of a modulo an odd prime q (Tonelli-Shanks); nullopt-like
// flag when a is a non-residue.
inline std::pair<bool, Int> sqrt_mod(const Int& a_in, const Int& q) {
    Int a = mod(a_in, q);
    if (a == 0) return {true, 0};
    if (powmod(a, (q - 1) / 2, q) != 1) return {false, 0};
    Int s = q - 1;
    unsigned e = 0;
    while ((s & 1) == 0) { s >>= 1; ++e; }
    Int z = 2;
    while (powmod(z, (q - 1) / 2, q) != q - 1) ++z;
    Int x = powmod(a, (s + 1) / 2, q), b = powmod(a, s, q), g = powmod(z, s, q);
    unsigned r = e;
    while (b != 1) {
        unsigned m = 0;
        Int t = b;
        while (t != 1) { t = t * t % q; ++m; }
        Int gs = g;
        for (unsigned i = 0; i + m + 1 < r; ++i) gs = gs * gs % q;
        x = x * gs % q;
        g = gs * gs % q;
        b = b * g % q;
        r = m;
    }
    return {true, x};
}

inline std::string to_string(const Rat& r) {
    return is_integer(r) ? num(r).str() : num(r).str() + "/" + den(r).str();
}

}  // namespace hgm
