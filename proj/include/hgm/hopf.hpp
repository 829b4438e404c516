#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hgm/integral.hpp"

namespace hgm {

// sum_i c[i] e_i in the basis of orthogonal idempotents of H = K^p.
struct HElem {
    std::vector<KElem> c;

    static HElem identity(const BaseField& K, unsigned p) { return {std::vector<KElem>(p, KElem(K, 1))}; }
    static HElem zero(const BaseField& K, unsigned p) { return {std::vector<KElem>(p, KElem(K, 0))}; }
    static HElem idempotent(const BaseField& K, unsigned p, unsigned i) {
        HElem h = zero(K, p);
        h.c.at(i) = KElem(K, 1);
        return h;
    }

    std::size_t size() const { return c.size(); }

    friend HElem operator+(const HElem& u, const HElem& v) {
        check(u, v);
        HElem r = u;
        for (std::size_t i = 0; i < r.size(); ++i) r.c[i] = r.c[i] + v.c[i];
        return r;
    }
    friend HElem operator-(const HElem& u, const HElem& v) {
        check(u, v);
        HElem r = u;
        for (std::size_t i = 0; i < r.size(); ++i) r.c[i] = r.c[i] - v.c[i];
        return r;
    }
    friend HElem operator*(const HElem& u, const HElem& v) {
        check(u, v);
        HElem r = u;
        for (std::size_t i = 0; i < r.size(); ++i) r.c[i] = r.c[i] * v.c[i];
        return r;
    }
    friend HElem operator*(const KElem& s, const HElem& u) {
        HElem r = u;
        for (auto& x : r.c) x = s * x;
        return r;
    }
    friend bool operator==(const HElem& u, const HElem& v) { return u.c == v.c; }

private:
    static void check(const HElem& u, const HElem& v) {
        if (u.size() != v.size()) throw domain_error("Hopf algebra elements of different degree");
    }
};

// Element of F = K(zeta), zeta a primitive p-th root of unity, in the basis 1, zeta, ..., zeta^(p-2).
struct CyclotomicElem {
    std::vector<KElem> coords;

    static CyclotomicElem zero(const BaseField& K, unsigned p) {
        return {std::vector<KElem>(p - 1, KElem(K, 0))};
    }

    unsigned p() const { return static_cast<unsigned>(coords.size()) + 1; }

    // s * zeta^k, reduced with zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)).
    static CyclotomicElem monomial(const KElem& s, unsigned p, long k) {
        CyclotomicElem r = zero(s.field(), p);
        r.add_monomial(s, k);
        return r;
    }

    void add_monomial(const KElem& s, long k) {
        const long q = static_cast<long>(p());
        long m = ((k % q) + q) % q;
        if (m == q - 1)
            for (auto& x : coords) x = x - s;
        else
            coords[static_cast<std::size_t>(m)] = coords[static_cast<std::size_t>(m)] + s;
    }

    bool is_integral() const {
        for (const auto& x : coords)
            if (!x.is_integral()) return false;
        return true;
    }

    // The element as a member of K, if it lies there.
    std::optional<KElem> as_base() const {
        for (std::size_t i = 1; i < coords.size(); ++i)
            if (!coords[i].is_zero()) return std::nullopt;
        return coords[0];
    }

    friend CyclotomicElem operator+(const CyclotomicElem& u, const CyclotomicElem& v) {
        CyclotomicElem r = u;
        for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = r.coords[i] + v.coords[i];
        return r;
    }
    friend CyclotomicElem operator*(const CyclotomicElem& u, const CyclotomicElem& v) {
        CyclotomicElem r = zero(u.coords[0].field(), u.p());
        for (std::size_t i = 0; i < u.coords.size(); ++i) {
            if (u.coords[i].is_zero()) continue;
            for (std::size_t j = 0; j < v.coords.size(); ++j)
                if (!v.coords[j].is_zero()) r.add_monomial(u.coords[i] * v.coords[j], static_cast<long>(i + j));
        }
        return r;
    }
    friend bool operator==(const CyclotomicElem& u, const CyclotomicElem& v) { return u.coords == v.coords; }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i].is_zero()) continue;
            std::string c = "(" + coords[i].str() + ")";
            std::string term = i == 0 ? c : c + "*z" + (i == 1 ? "" : "^" + std::to_string(i));
            s += s.empty() ? term : " + " + term;
        }
        return s.empty() ? "0" : s;
    }
};

// (h . x)_j = c_j x_j: e_i fixes alpha^i and kills the other powers.
inline LElem act(const RadicandContext& ctx, const HElem& h, const LElem& x) {
    ctx.check(x);
    if (h.size() != ctx.p()) throw domain_error("Hopf element does not belong to this extension");
    LElem r = x;
    for (unsigned j = 0; j < ctx.p(); ++j) {
        if (!(h.c[j].field() == ctx.field())) throw domain_error("Hopf element over a different field");
        r[j] = h.c[j] * x[j];
    }
    return r;
}

// Coefficient of eta^k: (1/p) sum_i c_i zeta^(-ik).
inline std::vector<CyclotomicElem> eta_coefficients(const HElem& h) {
    const unsigned p = static_cast<unsigned>(h.size());
    if (p < 3) throw domain_error("Hopf element has too few coordinates");
    const BaseField K = h.c[0].field();
    const Rat inv_p(1, p);
    std::vector<CyclotomicElem> out;
    for (unsigned k = 0; k < p; ++k) {
        CyclotomicElem d = CyclotomicElem::zero(K, p);
        for (unsigned i = 0; i < p; ++i)
            if (!h.c[i].is_zero()) d.add_monomial(inv_p * h.c[i], -static_cast<long>(i) * k);
        out.push_back(std::move(d));
    }
    return out;
}

// Inverse change of basis: c_i = sum_k d_k zeta^(ik), which must land in K.
inline HElem from_eta_coefficients(const std::vector<CyclotomicElem>& d) {
    const unsigned p = static_cast<unsigned>(d.size());
    if (p < 3) throw domain_error("too few eta coefficients");
    const BaseField K = d[0].coords[0].field();
    HElem h = HElem::zero(K, p);
    for (unsigned i = 0; i < p; ++i) {
        CyclotomicElem s = CyclotomicElem::zero(K, p);
        for (unsigned k = 0; k < p; ++k)
            s = s + d[k] * CyclotomicElem::monomial(KElem(K, 1), p, static_cast<long>(i) * k);
        auto base = s.as_base();
        if (!base) throw domain_error("eta coefficients do not describe an element of H");
        h.c[i] = *base;
    }
    return h;
}

// Membership in the associated order via integrality of the eta coefficients.
inline bool in_associated_order(const HElem& h) {
    for (const auto& d : eta_coefficients(h))
        if (!d.is_integral()) return false;
    return true;
}

// Same set, tested as: all c_i integral and pairwise congruent mod p.
inline bool in_associated_order_congruence(const HElem& h) {
    const Int p(static_cast<long>(h.size()));
    for (const auto& x : h.c)
        if (!x.is_integral()) return false;
    for (std::size_t i = 1; i < h.size(); ++i)
        if (!congruent_mod(h.c[i], h.c[0], p)) return false;
    return true;
}

inline bool in_maximal_order(const HElem& h) {
    for (const auto& x : h.c)
        if (!x.is_integral()) return false;
    return true;
}

// O_K-basis of the associated order: 1, p e_1, ..., p e_(p-1).
inline std::vector<HElem> associated_order_basis(const BaseField& K, unsigned p) {
    std::vector<HElem> out{HElem::identity(K, p)};
    for (unsigned i = 1; i < p; ++i) out.push_back(KElem(K, Rat(p)) * HElem::idempotent(K, p, i));
    return out;
}

// The orbit {x, p e_1 x, ..., p e_(p-1) x}.
inline std::vector<LElem> associated_orbit(const RadicandContext& ctx, const LElem& x) {
    std::vector<LElem> out;
    for (const auto& h : associated_order_basis(ctx.field(), ctx.p())) out.push_back(act(ctx, h, x));
    return out;
}

/* Local generator of O_{L,P} over the associated order:
 * (1/p) sum_j alpha^j above p, (1/p) sum_j alpha^j / pi^r_j elsewhere.
 */
inline LElem local_generator(const RadicandContext& ctx, const PrimeIdeal& P) {
    const unsigned p = ctx.p();
    LElem x = ctx.zero();
    if (ctx.above_p(P)) {
        if (!is_normalized(ctx))
            throw precondition_error("radicand " + ctx.a().str() + " is not 1 mod p^2; normalize it first");
        for (unsigned j = 0; j < p; ++j) x[j] = KElem(ctx.field(), Rat(1, p));
        return x;
    }
    auto B = local_basis(ctx, P);
    for (unsigned j = 0; j < p; ++j) x = x + B.basis[j];
    return Rat(1, p) * x;
}

// v_P of the determinant of the orbit of x against local_basis(P); 0 means x generates locally.
inline std::optional<int> local_generation_valuation(const RadicandContext& ctx, const PrimeIdeal& P,
                                                     const LElem& x) {
    return local_index_valuation(ctx, P, associated_orbit(ctx, x));
}

struct ClassTuple {
    std::vector<QuadForm> classes;  // class of b_j^-1
    std::vector<bool> principal;

    bool all_principal() const {
        for (bool b : principal)
            if (!b) return false;
        return true;
    }
    std::optional<unsigned> first_nonprincipal() const {
        for (std::size_t j = 0; j < principal.size(); ++j)
            if (!principal[j]) return static_cast<unsigned>(j);
        return std::nullopt;
    }
};

inline ClassTuple class_tuple_of(const AssociatedIdeals& ai) {
    ClassTuple t;
    for (const auto& b : ai.b) {
        auto r = is_principal(b.inverse());
        t.classes.push_back(r.ideal_class);
        t.principal.push_back(r.principal);
    }
    return t;
}

inline ClassTuple class_of_MOL(const RadicandContext& ctx) { return class_tuple_of(associated_ideals(ctx)); }

}  // namespace hgm
