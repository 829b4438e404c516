#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hgm/arith.hpp"

namespace hgm {

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;
using IntMatrix = std::vector<IntVector>;
using RatMatrix = std::vector<RatVector>;

/* Row-style Hermite normal form of the Z-span of `rows`.
 *
 * The result is in echelon form: each row has a positive pivot strictly to
 * the right of the previous row's pivot, entries above a pivot lie in
 * [0, pivot), and zero rows are dropped. The form is unique for a given
 * lattice, full rank or not.
 */
inline IntMatrix hnf(IntMatrix rows, std::size_t ncols) {
    std::size_t r = 0;
    const std::size_t m = rows.size();
    for (std::size_t col = 0; col < ncols && r < m; ++col) {
        for (;;) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i)
                if (rows[i][col] != 0 && (best == m || abs(rows[i][col]) < abs(rows[best][col])))
                    best = i;
            if (best == m) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (rows[i][col] == 0) continue;
                Int q = floor_div(rows[i][col], rows[r][col]);
                for (std::size_t k = col; k < ncols; ++k) rows[i][k] -= q * rows[r][k];
                if (rows[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[r][col] == 0) continue;
        if (rows[r][col] < 0)
            for (auto& x : rows[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(rows[i][col], rows[r][col]);
            if (q != 0)
                for (std::size_t k = col; k < ncols; ++k) rows[i][k] -= q * rows[r][k];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

// Determinant of a square rational matrix by fraction-exact elimination.
inline Rat determinant(RatMatrix a) {
    const std::size_t n = a.size();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) { std::swap(a[piv], a[c]); det = -det; }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[i][k] -= f * a[c][k];
        }
    }
    return det;
}

// Inverse of a nonsingular square rational matrix.
inline RatMatrix inverse(RatMatrix a) {
    const std::size_t n = a.size();
    RatMatrix inv(n, RatVector(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) throw domain_error("singular matrix");
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        Rat s = a[c][c];
        for (std::size_t k = 0; k < n; ++k) { a[c][k] /= s; inv[c][k] /= s; }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (std::size_t k = 0; k < n; ++k) {
                a[i][k] -= f * a[c][k];
                inv[i][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

inline RatMatrix transpose(const RatMatrix& a) {
    if (a.empty()) return {};
    RatMatrix t(a[0].size(), RatVector(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

/* A Z-lattice in Q^n, stored as (HNF rows) / denominator in lowest terms.
 *
 * Two lattices are equal iff their canonical forms are equal.
 */
class IntegerLattice {
public:
    IntegerLattice() = default;

    static IntegerLattice from_generators(const std::vector<RatVector>& gens, std::size_t dim) {
        Int d = 1;
        for (const auto& g : gens) {
            if (g.size() != dim) throw domain_error("lattice generator has wrong dimension");
            for (const auto& x : g) d = lcm(d, den(x));
        }
        IntMatrix rows;
        rows.reserve(gens.size());
        for (const auto& g : gens) {
            IntVector row(dim);
            for (std::size_t k = 0; k < dim; ++k) row[k] = num(g[k] * d);
            rows.push_back(std::move(row));
        }
        return IntegerLattice(hnf(std::move(rows), dim), d, dim);
    }

    static IntegerLattice standard(std::size_t dim) {
        std::vector<RatVector> gens(dim, RatVector(dim, Rat(0)));
        for (std::size_t i = 0; i < dim; ++i) gens[i][i] = 1;
        return from_generators(gens, dim);
    }

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return hnf_.size(); }
    bool full_rank() const { return rank() == dim_; }
    const IntMatrix& hnf_rows() const { return hnf_; }
    const Int& denominator() const { return den_; }

    std::vector<RatVector> basis() const {
        std::vector<RatVector> out;
        for (const auto& row : hnf_) {
            RatVector v(dim_);
            for (std::size_t k = 0; k < dim_; ++k) v[k] = Rat(row[k], den_);
            out.push_back(std::move(v));
        }
        return out;
    }

    // |det| of a basis; defined for full-rank lattices.
    Rat covolume() const {
        if (!full_rank()) throw domain_error("covolume of a rank-deficient lattice");
        Rat v = 1;
        for (std::size_t i = 0; i < dim_; ++i) v *= Rat(hnf_[i][i], den_);
        return v;
    }

    bool contains(const RatVector& v) const {
        if (v.size() != dim_) throw domain_error("vector has wrong dimension");
        RatVector w(dim_);
        for (std::size_t k = 0; k < dim_; ++k) w[k] = v[k] * den_;
        std::size_t col = 0;
        for (const auto& row : hnf_) {
            while (row[col] == 0) {
                if (w[col] != 0) return false;
                ++col;
            }
            Rat lambda = w[col] / Rat(row[col]);
            if (!is_integer(lambda)) return false;
            for (std::size_t k = col; k < dim_; ++k) w[k] -= lambda * row[k];
            ++col;
        }
        for (std::size_t k = 0; k < dim_; ++k)
            if (w[k] != 0) return false;
        return true;
    }

    bool contains(const IntegerLattice& other) const {
        for (const auto& b : other.basis())
            if (!contains(b)) return false;
        return true;
    }

    IntegerLattice scaled(const Rat& s) const {
        auto b = basis();
        for (auto& v : b)
            for (auto& x : v) x *= s;
        return from_generators(b, dim_);
    }

    friend IntegerLattice operator+(const IntegerLattice& a, const IntegerLattice& b) {
        if (a.dim_ != b.dim_) throw domain_error("lattice dimension mismatch");
        auto g = a.basis();
        for (auto& v : b.basis()) g.push_back(std::move(v));
        return from_generators(g, a.dim_);
    }

    // {v : <v, w> in Z for all w in this}; full rank only.
    IntegerLattice dual() const {
        if (!full_rank()) throw domain_error("dual of a rank-deficient lattice");
        return from_generators(transpose(inverse(basis())), dim_);
    }

    IntegerLattice intersect(const IntegerLattice& other) const {
        return (dual() + other.dual()).dual();
    }

    friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) {
        return a.dim_ == b.dim_ && a.den_ == b.den_ && a.hnf_ == b.hnf_;
    }

private:
    IntegerLattice(IntMatrix rows, Int d, std::size_t dim) : hnf_(std::move(rows)), den_(std::move(d)), dim_(dim) {
        Int g = den_;
        for (const auto& row : hnf_)
            for (const auto& x : row) g = gcd(g, x);
        if (g > 1) {
            den_ /= g;
            for (auto& row : hnf_)
                for (auto& x : row) x /= g;
        }
    }

    IntMatrix hnf_;
    Int den_ = 1;
    std::size_t dim_ = 0;
};

// A lattice prescribed at a single rational prime.
struct LocalCondition {
    Int prime;
    std::vector<RatVector> basis;
};

/* The unique lattice whose localization at each listed prime is the span of
 * that prime's basis and which equals Z^n at every other prime.
 *
 * Each condition becomes span(M_q) + (q^m / D_q) Z^n, where q^m Z_q^n lies
 * inside the local span and D_q clears the denominators of the other
 * conditions, so it is M_q at q, large enough at the other listed primes and
 * Z^n elsewhere. The global lattice is the intersection of these.
 */
inline IntegerLattice hnf_glue(const std::vector<LocalCondition>& conditions, std::size_t dim) {
    std::vector<Int> seen, dens;
    std::vector<int> fills;
    for (const auto& c : conditions) {
        if (!is_prime(c.prime)) throw domain_error("local condition at non-prime " + c.prime.str());
        if (std::find(seen.begin(), seen.end(), c.prime) != seen.end())
            throw domain_error("duplicate local condition at " + c.prime.str());
        seen.push_back(c.prime);
        if (c.basis.size() != dim) throw domain_error("local basis must have exactly dim elements");
        Int d = 1;
        for (const auto& v : c.basis) {
            if (v.size() != dim) throw domain_error("local basis vector has wrong dimension");
            for (const auto& x : v) {
                Int dd = den(x);
                while (dd % c.prime == 0) dd /= c.prime;
                if (dd != 1)
                    throw domain_error("local basis at " + c.prime.str() + " has a denominator at a foreign prime");
                d = lcm(d, den(x));
            }
        }
        RatMatrix scaled = c.basis;
        for (auto& v : scaled)
            for (auto& x : v) x *= d;
        Rat delta = determinant(scaled);
        if (delta == 0) throw domain_error("local basis at " + c.prime.str() + " is singular");
        dens.push_back(d);
        fills.push_back(vq(delta, c.prime) - vq(d, c.prime));
    }
    std::optional<IntegerLattice> result;
    for (std::size_t i = 0; i < conditions.size(); ++i) {
        Int others = 1;
        for (std::size_t j = 0; j < conditions.size(); ++j)
            if (j != i) others *= dens[j];
        Rat fill = rpow(Rat(conditions[i].prime), fills[i]) / others;
        std::vector<RatVector> gens = conditions[i].basis;
        for (std::size_t k = 0; k < dim; ++k) {
            RatVector e(dim, Rat(0));
            e[k] = fill;
            gens.push_back(std::move(e));
        }
        auto local = IntegerLattice::from_generators(gens, dim);
        result = result ? result->intersect(local) : local;
    }
    return result ? *result : IntegerLattice::standard(dim);
}

// Lattice with the same localization at q as `lat` and equal to Z^n elsewhere;
// its basis has denominators only at q.
inline IntegerLattice localize(const IntegerLattice& lat, const Int& q) {
    const std::size_t n = lat.dim();
    int k = vq(lat.denominator(), q);
    Int qk = ipow(q, static_cast<unsigned>(k));
    std::vector<RatVector> box(n, RatVector(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) box[i][i] = Rat(1, qk);
    IntegerLattice within = lat.intersect(IntegerLattice::from_generators(box, n));
    // q^k * within is integral with covolume q^(kn) * delta, so
    // q^(k(n-1)) * delta * Z^n lies inside `within`.
    Rat delta = within.covolume();
    int m = vq(delta, q) + k * static_cast<int>(n - 1);
    std::vector<RatVector> gens = within.basis();
    for (std::size_t i = 0; i < n; ++i) {
        RatVector e(n, Rat(0));
        e[i] = rpow(Rat(q), m);
        gens.push_back(std::move(e));
    }
    return IntegerLattice::from_generators(gens, n);
}

}  // namespace hgm
