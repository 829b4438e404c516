#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hgm/arith.hpp"
#include "hgm/lattice.hpp"

namespace hgm {

enum class FieldKind { rationals, imaginary_quadratic };

inline bool is_squarefree(std::int64_t n) {
    n = n < 0 ? -n : n;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

/* The base field K: either Q or Q(sqrt(d)) with d < 0 squarefree.
 *
 * O_K has Z-basis {1, w} with w = (1+sqrt(d))/2 when d = 1 mod 4 and
 * w = sqrt(d) otherwise. In both cases w^2 = t*w - n.
 */
class BaseField {
public:
    static BaseField rationals() { return BaseField(FieldKind::rationals, 1, 0, 0); }

    static BaseField imaginary_quadratic(std::int64_t d) {
        if (d >= 0) throw domain_error("imaginary quadratic field needs d < 0");
        if (!is_squarefree(d)) throw domain_error("d = " + std::to_string(d) + " is not squarefree");
        if (d < -(std::int64_t(1) << 40)) throw domain_error("|d| too large");
        std::int64_t r = ((d % 4) + 4) % 4;
        if (r == 1) return BaseField(FieldKind::imaginary_quadratic, d, 1, (1 - d) / 4);
        return BaseField(FieldKind::imaginary_quadratic, d, 0, -d);
    }

    FieldKind kind() const { return kind_; }
    bool is_rational() const { return kind_ == FieldKind::rationals; }
    std::size_t degree() const { return is_rational() ? 1 : 2; }
    std::int64_t d() const { return d_; }
    // w^2 = t*w - n
    std::int64_t t() const { return t_; }
    std::int64_t n() const { return n_; }

    Int discriminant() const {
        if (is_rational()) return 1;
        return t_ == 1 ? Int(d_) : Int(4 * d_);
    }

    std::string name() const { return is_rational() ? "Q" : "Qsqrt" + std::to_string(d_); }

    std::string omega_description() const {
        if (is_rational()) return "";
        return t_ == 1 ? "(1+sqrt(" + std::to_string(d_) + "))/2" : "sqrt(" + std::to_string(d_) + ")";
    }

    friend bool operator==(const BaseField& a, const BaseField& b) {
        return a.kind_ == b.kind_ && a.d_ == b.d_;
    }

private:
    BaseField(FieldKind k, std::int64_t d, std::int64_t t, std::int64_t n) : kind_(k), d_(d), t_(t), n_(n) {}

    FieldKind kind_;
    std::int64_t d_, t_, n_;
};

// x + y*w in K; y == 0 always holds over Q.
class KElem {
public:
    KElem() : K_(BaseField::rationals()) {}
    KElem(const BaseField& K, Rat x, Rat y = 0) : K_(K), x_(std::move(x)), y_(std::move(y)) {
        if (K_.is_rational() && y_ != 0) throw domain_error("rational element with nonzero w-coordinate");
    }

    const BaseField& field() const { return K_; }
    const Rat& x() const { return x_; }
    const Rat& y() const { return y_; }

    bool is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_integral() const { return is_integer(x_) && is_integer(y_); }

    RatVector coords() const {
        if (K_.is_rational()) return {x_};
        return {x_, y_};
    }

    KElem conj() const { return {K_, x_ + y_ * K_.t(), -y_}; }
    Rat norm() const { return x_ * x_ + Rat(K_.t()) * x_ * y_ + Rat(K_.n()) * y_ * y_; }
    Rat trace() const { return K_.is_rational() ? x_ : 2 * x_ + Rat(K_.t()) * y_; }

    // Smallest positive integer m with m*x integral.
    Int denominator() const { return lcm(den(x_), den(y_)); }

    KElem inverse() const {
        if (is_zero()) throw domain_error("inverse of zero");
        Rat nm = norm();
        KElem c = conj();
        return {K_, c.x_ / nm, c.y_ / nm};
    }

    KElem pow(int e) const {
        KElem base = e < 0 ? inverse() : *this;
        unsigned k = static_cast<unsigned>(e < 0 ? -e : e);
        KElem r(K_, 1);
        while (k) {
            if (k & 1u) r = r * base;
            base = base * base;
            k >>= 1u;
        }
        return r;
    }

    friend KElem operator+(const KElem& a, const KElem& b) {
        check(a, b);
        return {a.K_, a.x_ + b.x_, a.y_ + b.y_};
    }
    friend KElem operator-(const KElem& a, const KElem& b) {
        check(a, b);
        return {a.K_, a.x_ - b.x_, a.y_ - b.y_};
    }
    friend KElem operator-(const KElem& a) { return {a.K_, -a.x_, -a.y_}; }
    friend KElem operator*(const KElem& a, const KElem& b) {
        check(a, b);
        if (a.K_.is_rational()) return {a.K_, a.x_ * b.x_};
        Rat yy = a.y_ * b.y_;
        return {a.K_, a.x_ * b.x_ - Rat(a.K_.n()) * yy, a.x_ * b.y_ + a.y_ * b.x_ + Rat(a.K_.t()) * yy};
    }
    friend KElem operator*(const Rat& s, const KElem& a) { return {a.K_, s * a.x_, s * a.y_}; }
    friend KElem operator/(const KElem& a, const KElem& b) { return a * b.inverse(); }
    friend KElem operator/(const KElem& a, const Rat& s) { return {a.K_, a.x_ / s, a.y_ / s}; }

    friend bool operator==(const KElem& a, const KElem& b) {
        return a.K_ == b.K_ && a.x_ == b.x_ && a.y_ == b.y_;
    }

    std::string str() const {
        if (K_.is_rational() || y_ == 0) return to_string(x_);
        std::string ys = y_ == 1 ? "w" : y_ == -1 ? "-w" : to_string(y_) + "*w";
        if (x_ == 0) return ys;
        if (y_ < 0) return to_string(x_) + ys;
        return to_string(x_) + "+" + ys;
    }

    friend std::ostream& operator<<(std::ostream& os, const KElem& e) { return os << e.str(); }

private:
    static void check(const KElem& a, const KElem& b) {
        if (!(a.K_ == b.K_)) throw domain_error("elements of different base fields");
    }

    BaseField K_;
    Rat x_, y_;
};

inline KElem k_int(const BaseField& K, const Int& v) { return KElem(K, Rat(v)); }

/* Fractional ideal of O_K, stored as a canonical Z-lattice in the
 * coordinates of {1, w} (HNF rows over a positive denominator).
 */
class KIdeal {
public:
    KIdeal() = default;

    static KIdeal from_generators(const BaseField& K, const std::vector<KElem>& gens) {
        std::vector<RatVector> z;
        KElem w(K, 0, K.is_rational() ? 0 : 1);
        for (const auto& g : gens) {
            if (!(g.field() == K)) throw domain_error("ideal generator from a different field");
            z.push_back(g.coords());
            if (!K.is_rational()) z.push_back((g * w).coords());
        }
        return KIdeal(K, IntegerLattice::from_generators(z, K.degree()));
    }

    static KIdeal principal(const KElem& g) { return from_generators(g.field(), {g}); }
    static KIdeal unit(const BaseField& K) { return principal(KElem(K, 1)); }

    const BaseField& field() const { return K_; }
    const IntegerLattice& lattice() const { return lat_; }
    bool is_zero() const { return lat_.rank() == 0; }

    std::vector<KElem> z_basis() const {
        std::vector<KElem> out;
        for (const auto& v : lat_.basis()) out.emplace_back(K_, v[0], K_.is_rational() ? Rat(0) : v[1]);
        return out;
    }

    Rat norm() const {
        require_nonzero();
        return lat_.covolume();
    }

    bool is_integral() const { return lat_.denominator() == 1; }
    bool contains(const KElem& x) const { return lat_.contains(x.coords()); }
    bool contains(const KIdeal& J) const { return lat_.contains(J.lat_); }

    KIdeal conj() const {
        std::vector<KElem> g;
        for (const auto& b : z_basis()) g.push_back(b.conj());
        return from_generators(K_, g);
    }

    KIdeal inverse() const {
        require_nonzero();
        if (K_.is_rational()) return principal(KElem(K_, Rat(1) / z_basis()[0].x()));
        // I * conj(I) = N(I) O_K
        KIdeal c = conj();
        return c.scaled(Rat(1) / norm());
    }

    KIdeal scaled(const Rat& s) const { return KIdeal(K_, lat_.scaled(s)); }

    KIdeal pow(int e) const {
        KIdeal base = e < 0 ? inverse() : *this;
        unsigned k = static_cast<unsigned>(e < 0 ? -e : e);
        KIdeal r = unit(K_);
        while (k) {
            if (k & 1u) r = r * base;
            base = base * base;
            k >>= 1u;
        }
        return r;
    }

    friend KIdeal operator*(const KIdeal& a, const KIdeal& b) {
        if (!(a.K_ == b.K_)) throw domain_error("ideals of different base fields");
        std::vector<KElem> g;
        for (const auto& u : a.z_basis())
            for (const auto& v : b.z_basis()) g.push_back(u * v);
        return from_generators(a.K_, g);
    }

    friend bool operator==(const KIdeal& a, const KIdeal& b) { return a.K_ == b.K_ && a.lat_ == b.lat_; }

    std::string str() const {
        std::string s = "(";
        auto b = z_basis();
        for (std::size_t i = 0; i < b.size(); ++i) s += (i ? ", " : "") + b[i].str();
        return s + ")";
    }

private:
    KIdeal(const BaseField& K, IntegerLattice lat) : K_(K), lat_(std::move(lat)) {}

    void require_nonzero() const {
        if (is_zero()) throw domain_error("zero ideal");
    }

    BaseField K_ = BaseField::rationals();
    IntegerLattice lat_;
};

/* A prime of O_K above the rational prime q, in two-element form (q, pi).
 *
 * pi = w + s with 0 <= s < q for split and ramified primes, pi = q for
 * inert primes and over Q. `helper` is an element with helper * P inside
 * q*O_K and v_P(helper) = e - 1; valuations are computed by repeated
 * multiplication by helper/q.
 */
struct PrimeIdeal {
    BaseField field = BaseField::rationals();
    Int q;
    KElem pi;
    int residue_degree = 1;
    int ramification = 1;
    KElem helper;

    Int norm() const { return ipow(q, static_cast<unsigned>(residue_degree)); }
    bool ramified() const { return ramification > 1; }
    KIdeal ideal() const { return KIdeal::from_generators(field, {k_int(field, q), pi}); }

    auto key() const { return std::make_tuple(norm(), q, pi.x(), pi.y()); }
    friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) { return a.field == b.field && a.key() == b.key(); }
    friend bool operator<(const PrimeIdeal& a, const PrimeIdeal& b) { return a.key() < b.key(); }

    std::string str() const {
        if (field.is_rational() || residue_degree == 2) return "(" + q.str() + ")";
        return "(" + q.str() + ", " + pi.str() + ")";
    }
};

// Roots of w's minimal polynomial x^2 - t x + n modulo q, ascending.
inline std::vector<Int> omega_roots_mod(const BaseField& K, const Int& q) {
    std::vector<Int> roots;
    if (q == 2) {
        for (int r = 0; r < 2; ++r)
            if (mod(Int(r * r - K.t() * r + K.n()), q) == 0) roots.emplace_back(r);
        return roots;
    }
    Int D = K.discriminant();
    auto [ok, s] = sqrt_mod(D, q);
    if (!ok) return roots;
    Int inv2 = (q + 1) / 2;
    Int r1 = mod((Int(K.t()) + s) * inv2, q), r2 = mod((Int(K.t()) - s) * inv2, q);
    roots.push_back(std::min(r1, r2));
    if (r1 != r2) roots.push_back(std::max(r1, r2));
    return roots;
}

// The primes of O_K above the rational prime q, in canonical order.
inline std::vector<PrimeIdeal> primes_above(const BaseField& K, const Int& q) {
    if (!is_prime(q)) throw domain_error(q.str() + " is not prime");
    std::vector<PrimeIdeal> out;
    KElem one(K, 1);
    if (K.is_rational()) {
        out.push_back({K, q, k_int(K, q), 1, 1, one});
        return out;
    }
    KElem w(K, 0, 1);
    auto roots = omega_roots_mod(K, q);
    if (roots.empty()) {
        out.push_back({K, q, k_int(K, q), 2, 1, one});
        return out;
    }
    bool ram = K.discriminant() % q == 0;
    for (const auto& r : roots) {
        KElem pi = w + k_int(K, mod(-r, q));
        // ramified: helper = pi itself (v = 1 = e - 1); split: the conjugate
        // prime's generator, which is a unit at this prime.
        KElem helper = ram ? pi : w + k_int(K, mod(-(Int(K.t()) - r), q));
        out.push_back({K, q, pi, 1, ram ? 2 : 1, helper});
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline int valuation(const PrimeIdeal& P, const KElem& x) {
    if (x.is_zero()) throw domain_error("valuation of zero");
    if (!(x.field() == P.field)) throw domain_error("element and prime from different fields");
    Int m = x.denominator();
    KElem z = Rat(m) * x;
    int v = -P.ramification * vq(m, P.q);
    for (;;) {
        KElem t = z * P.helper;
        if (!is_integer(t.x() / Rat(P.q)) || !is_integer(t.y() / Rat(P.q))) break;
        z = t / Rat(P.q);
        ++v;
    }
    return v;
}

inline int valuation(const PrimeIdeal& P, const KIdeal& I) {
    if (I.is_zero()) throw domain_error("valuation of the zero ideal");
    int best = 0;
    bool first = true;
    for (const auto& g : I.z_basis()) {
        if (g.is_zero()) continue;
        int v = valuation(P, g);
        if (first || v < best) best = v;
        first = false;
    }
    return best;
}

using Factorization = std::vector<std::pair<PrimeIdeal, int>>;

// Prime factorization of a nonzero integral ideal, primes in canonical order.
inline Factorization factor_ideal(const KIdeal& I, const Limits& lim = {}) {
    if (I.is_zero()) throw domain_error("factorization of the zero ideal");
    if (!I.is_integral()) throw domain_error("factor_ideal needs an integral ideal");
    Rat nm = I.norm();
    Factorization out;
    for (const auto& [q, e] : factor_integer(num(nm), lim)) {
        (void)e;
        for (const auto& P : primes_above(I.field(), q)) {
            int v = valuation(P, I);
            if (v > 0) out.emplace_back(P, v);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

inline Factorization factor_ideal(const KElem& x, const Limits& lim = {}) {
    if (x.is_zero()) throw domain_error("factorization of zero");
    if (!x.is_integral()) throw domain_error("factor_ideal needs an element of O_K");
    return factor_ideal(KIdeal::principal(x), lim);
}

inline KIdeal product_of(const BaseField& K, const Factorization& f) {
    KIdeal r = KIdeal::unit(K);
    for (const auto& [P, e] : f) r = r * P.ideal().pow(e);
    return r;
}

// ---------------------------------------------------------------------------
// Binary quadratic forms and the class group.

struct QuadForm {
    Int a, b, c;

    Int discriminant() const { return b * b - 4 * a * c; }
    friend bool operator==(const QuadForm&, const QuadForm&) = default;
    std::string str() const { return "(" + a.str() + "," + b.str() + "," + c.str() + ")"; }
};

inline QuadForm principal_form(const Int& D) {
    if (mod(D, 4) == 0) return {1, 0, -D / 4};
    return {1, 1, (1 - D) / 4};
}

// Reduced form equivalent to a positive definite form: |b| <= a <= c, b >= 0
// when |b| = a or a = c.
inline QuadForm reduce(QuadForm f) {
    const Int D = f.discriminant();
    if (D >= 0 || f.a <= 0) {
        if (D == 1) return principal_form(D);
        throw domain_error("reduce needs a positive definite form");
    }
    for (;;) {
        if (f.b > f.a || f.b <= -f.a) {
            Int two_a = 2 * f.a;
            Int b = mod(f.b, two_a);
            if (b > f.a) b -= two_a;
            f.b = b;
            f.c = (f.b * f.b - D) / (4 * f.a);
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        return f;
    }
}

// Dirichlet composition of primitive forms of equal discriminant, reduced.
inline QuadForm compose(QuadForm f1, QuadForm f2) {
    const Int D = f1.discriminant();
    if (f2.discriminant() != D) throw domain_error("composition of forms of different discriminants");
    if (D == 1) return principal_form(D);
    if (f1.a > f2.a) std::swap(f1, f2);
    Int s = (f1.b + f2.b) / 2;
    Int n = f2.b - s;
    Int y1, d;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        auto eg = ext_gcd(f2.a, f1.a);
        d = eg.g;
        y1 = eg.x;
    }
    Int x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        auto eg = ext_gcd(s, d);
        x2 = eg.x;
        y2 = -eg.y;
        d1 = eg.g;
    }
    Int v1 = f1.a / d1, v2 = f2.a / d1;
    Int r = mod(y1 * y2 * n - x2 * f2.c, v1);
    Int b3 = f2.b + 2 * v2 * r;
    Int a3 = v1 * v2;
    Int c3 = (b3 * b3 - D) / (4 * a3);
    return reduce({a3, b3, c3});
}

inline QuadForm inverse_form(const QuadForm& f) { return reduce({f.a, -f.b, f.c}); }

struct IdealClassGroup {
    Int discriminant;
    std::vector<QuadForm> forms;  // reduced representatives; forms[0] is principal

    std::size_t order() const { return forms.size(); }

    std::size_t index_of(const QuadForm& f) const {
        auto r = reduce(f);
        for (std::size_t i = 0; i < forms.size(); ++i)
            if (forms[i] == r) return i;
        throw domain_error("form " + f.str() + " has the wrong discriminant");
    }

    std::size_t compose(std::size_t i, std::size_t j) const { return index_of(hgm::compose(forms[i], forms[j])); }
};

// All reduced primitive forms of the field discriminant.
inline IdealClassGroup class_group(const BaseField& K) {
    IdealClassGroup G{K.discriminant(), {}};
    if (K.is_rational()) {
        G.forms.push_back(principal_form(1));
        return G;
    }
    const Int D = G.discriminant;
    const Int absD = -D;
    for (Int a = 1; 3 * a * a <= absD; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            Int num4 = b * b - D;
            if (num4 % (4 * a) != 0) continue;
            Int c = num4 / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (gcd(gcd(a, abs(b)), c) != 1) continue;
            G.forms.push_back({a, b, c});
        }
    }
    std::stable_sort(G.forms.begin(), G.forms.end(), [](const QuadForm& x, const QuadForm& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    return G;
}

/* Reduced form of the class of a nonzero fractional ideal.
 *
 * The primitive part a*Z + (b + w)*Z of the integral ideal m*I maps to
 * (a, -(2b + t), *); principal ideals map to the principal form.
 */
inline QuadForm ideal_class(const KIdeal& I) {
    if (I.is_zero()) throw domain_error("class of the zero ideal");
    const BaseField& K = I.field();
    if (K.is_rational()) return principal_form(1);
    KIdeal J = I.scaled(Rat(I.lattice().denominator()));
    // Basis with the w-coordinate first: rows (c, b) and (0, a).
    std::vector<RatVector> swapped;
    for (const auto& v : J.lattice().basis()) swapped.push_back({v[1], v[0]});
    auto L = IntegerLattice::from_generators(swapped, 2);
    Int c = L.hnf_rows()[0][0], b = L.hnf_rows()[0][1], a = L.hnf_rows()[1][1];
    Int A = a / c, Bp = b / c;
    Int B = -(2 * Bp + K.t());
    Int D = K.discriminant();
    return reduce({A, B, (B * B - D) / (4 * A)});
}

struct PrincipalityResult {
    bool principal = false;
    std::optional<KElem> generator;
    QuadForm ideal_class;
};

/* Principality test. For imaginary quadratic K every nonzero element of an
 * integral ideal I has norm >= N(I), with equality exactly for generators,
 * so a Lagrange-reduced basis decides the question.
 */
inline PrincipalityResult is_principal(const KIdeal& I) {
    if (I.is_zero()) throw domain_error("principality of the zero ideal");
    const BaseField& K = I.field();
    PrincipalityResult res;
    res.ideal_class = ideal_class(I);
    if (K.is_rational()) {
        Rat g = I.z_basis()[0].x();
        res.principal = true;
        res.generator = KElem(K, g < 0 ? Rat(-g) : g);
        return res;
    }
    Rat m(I.lattice().denominator());
    KIdeal J = I.scaled(m);
    auto b = J.z_basis();
    KElem v1 = b[0], v2 = b[1];
    auto bil = [](const KElem& u, const KElem& v) { return (u * v.conj()).trace() / 2; };
    if (v2.norm() < v1.norm()) std::swap(v1, v2);
    for (;;) {
        Rat mu = bil(v1, v2) / v1.norm();
        Int r = floor_div(2 * num(mu) + den(mu), Int(2 * den(mu)));
        v2 = v2 - Rat(r) * v1;
        if (v2.norm() < v1.norm()) std::swap(v1, v2);
        else break;
    }
    if (v1.norm() == J.norm()) {
        KElem g = v1 / m;
        if (!(KIdeal::principal(g) == I)) throw domain_error("internal: principal generator check failed");
        res.principal = true;
        res.generator = g;
    }
    return res;
}

// All elements of O_K with norm exactly m (m >= 0).
inline std::vector<KElem> elements_of_norm(const BaseField& K, const Int& m) {
    std::vector<KElem> out;
    if (K.is_rational()) {
        if (m == 0) return {KElem(K, 0)};
        out.emplace_back(K, Rat(m));
        out.emplace_back(K, Rat(-m));
        return out;
    }
    // 4m = (2x + t y)^2 + |D| y^2
    const Int absD = -K.discriminant();
    Int ymax = isqrt(4 * m / absD);
    for (Int y = -ymax; y <= ymax; ++y) {
        Int s2 = 4 * m - absD * y * y;
        if (s2 < 0) continue;
        Int s = isqrt(s2);
        if (s * s != s2) continue;
        for (int sign : {1, -1}) {
            if (sign == -1 && s == 0) continue;
            Int twox = sign * s - Int(K.t()) * y;
            if (mod(twox, 2) != 0) continue;
            out.emplace_back(K, Rat(twox / 2), Rat(y));
        }
    }
    return out;
}

// The (finite) unit group of O_K.
inline std::vector<KElem> units(const BaseField& K) {
    std::vector<KElem> out{KElem(K, 1), KElem(K, -1)};
    if (K.is_rational()) return out;
    KElem w(K, 0, 1);
    if (K.d() == -1) {
        out.push_back(w);
        out.push_back(-w);
    } else if (K.d() == -3) {
        // w = (1+sqrt(-3))/2 is a primitive sixth root of unity.
        out.push_back(w);
        out.push_back(-w);
        out.push_back(w * w);
        out.push_back(-(w * w));
    }
    return out;
}

// x == y modulo m*O_K for integral x, y.
inline bool congruent_mod(const KElem& x, const KElem& y, const Int& m) {
    KElem d = x - y;
    return is_integer(d.x() / Rat(m)) && is_integer(d.y() / Rat(m));
}

// Units of O_K, deduplicated modulo p*O_K (first representative kept).
inline std::vector<KElem> unit_reps_mod_p(const BaseField& K, const Int& p) {
    std::vector<KElem> out;
    for (const auto& u : units(K)) {
        bool dup = false;
        for (const auto& v : out)
            if (congruent_mod(u, v, p)) { dup = true; break; }
        if (!dup) out.push_back(u);
    }
    return out;
}

// A p-th root of a in K if one exists.
inline std::optional<KElem> pth_root(const KElem& a, unsigned p, const Limits& lim = {}) {
    const BaseField& K = a.field();
    if (a.is_zero()) return a;
    if (K.is_rational()) {
        auto [okn, rn] = exact_root(num(a.x()), p);
        auto [okd, rd] = exact_root(den(a.x()), p);
        if (okn && okd) return KElem(K, Rat(rn, rd));
        return std::nullopt;
    }
    // a = z / m^p with z integral; a is a p-th power iff z is.
    Int m = a.denominator();
    KElem z = Rat(ipow(m, p)) * a;
    Rat nz = z.norm();
    if (num(nz) > lim.max_norm)
        throw resource_error("norm " + num(nz).str() + " exceeds max-norm bound " + lim.max_norm.str());
    auto [ok, r] = exact_root(num(nz), p);
    if (!ok) return std::nullopt;
    for (const auto& b : elements_of_norm(K, r))
        if (b.pow(static_cast<int>(p)) == z) return b / Rat(m);
    return std::nullopt;
}

}  // namespace hgm
