#include <gtest/gtest.h>

#include <random>

#include "hgm/dedekind.hpp"
#include "hgm/integral.hpp"

using namespace hgm;

namespace {

const BaseField Q = BaseField::rationals();

LElem lel(const RadicandContext& ctx, std::initializer_list<Rat> xs) {
    LElem u = ctx.zero();
    unsigned j = 0;
    for (const auto& x : xs) u[j++] = KElem(ctx.field(), x);
    return u;
}

PrimeIdeal prime_of(const BaseField& K, long q) { return primes_above(K, q)[0]; }

// Discriminant of the pure cubic field Q(m^(1/3)), m = f g^2 cube-free with f, g squarefree coprime.
Int pure_cubic_discriminant(long m) {
    long f = 1, g = 1;
    for (long q = 2; q <= m; ++q) {
        int e = 0;
        while (m % q == 0) { m /= q; ++e; }
        if (e == 1) f *= q;
        if (e == 2) g *= q;
    }
    long fg = f * g;
    long mm = f * g * g;
    bool special = (mm % 9 == 1) || (mm % 9 == 8);
    return Int(-(special ? 3 : 27)) * fg * fg;
}

}  // namespace

TEST(Integral, LocalBasisExamples) {
    RadicandContext c28(Q, 3, KElem(Q, 28)), c10(Q, 3, KElem(Q, 10));
    auto b2 = local_basis(c28, prime_of(Q, 2));
    ASSERT_EQ(b2.basis.size(), 3u);
    EXPECT_EQ(b2.basis[0], lel(c28, {1, 0, 0}));
    EXPECT_EQ(b2.basis[1], lel(c28, {0, 1, 0}));
    EXPECT_EQ(b2.basis[2], lel(c28, {0, 0, Rat(1, 2)}));
    EXPECT_EQ(b2.r, (std::vector<int>{0, 0, 1}));

    auto b3 = local_basis(c10, prime_of(Q, 3));
    EXPECT_EQ(b3.basis[2], lel(c10, {Rat(1, 3), Rat(1, 3), Rat(1, 3)}));
    EXPECT_FALSE(b3.uniformizer.has_value());

    auto b5 = local_basis(c28, prime_of(Q, 5));
    for (unsigned j = 0; j < 3; ++j) EXPECT_EQ(b5.basis[j], c28.alpha_pow(j));

    RadicandContext c2(Q, 3, KElem(Q, 2));
    EXPECT_THROW(local_basis(c2, prime_of(Q, 3)), precondition_error);
}

TEST(Integral, IntegralityExamples) {
    RadicandContext c10(Q, 3, KElem(Q, 10));
    PrimeIdeal P3 = prime_of(Q, 3);
    EXPECT_TRUE(is_integral_at(c10, lel(c10, {Rat(1, 3), Rat(1, 3), Rat(1, 3)}), P3));
    EXPECT_FALSE(is_integral_at(c10, lel(c10, {0, Rat(1, 3), 0}), P3));
    auto coords = coordinates_in(local_basis(c10, P3), lel(c10, {0, Rat(1, 3), 0}));
    EXPECT_EQ(coords[0], KElem(Q, 0));
    EXPECT_EQ(coords[1], KElem(Q, Rat(1, 3)));
    EXPECT_EQ(coords[2], KElem(Q, 0));
    for (const auto& P : c10.relevant_primes()) EXPECT_TRUE(is_integral_at(c10, c10.alpha_pow(1), P));
    EXPECT_TRUE(is_integral(c10, lel(c10, {Rat(1, 3), Rat(1, 3), Rat(1, 3)})));
    EXPECT_FALSE(is_integral(c10, lel(c10, {Rat(1, 7), 0, 0})));
}

TEST(Integral, IntegralityMatchesCharacteristicPolynomial) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> d(-6, 6);
    const long dens[] = {1, 2, 3, 6, 9};
    for (long a : {10L, 28L, 19L, 82L}) {
        RadicandContext ctx(Q, 3, KElem(Q, a));
        for (int i = 0; i < 200; ++i) {
            LElem u = ctx.zero();
            for (unsigned j = 0; j < 3; ++j) u[j] = KElem(Q, Rat(d(rng), dens[rng() % 5]));
            EXPECT_EQ(is_integral(ctx, u), is_integral_element(ctx, u)) << a;
        }
    }
    BaseField K = BaseField::imaginary_quadratic(-5);
    RadicandContext ctx(K, 3, KElem(K, 10));
    for (int i = 0; i < 150; ++i) {
        LElem u = ctx.zero();
        for (unsigned j = 0; j < 3; ++j) u[j] = KElem(K, Rat(d(rng), dens[rng() % 4]), Rat(d(rng), dens[rng() % 3]));
        EXPECT_EQ(is_integral(ctx, u), is_integral_element(ctx, u));
    }
}

TEST(Integral, LocalBasisDeterminants) {
    for (long a : {28L, 10L, 19L, 244L, 1000001L}) {
        auto t = tameness_test(Q, 3, KElem(Q, a));
        if (!t.tame) continue;
        RadicandContext ctx(Q, 3, *t.normalized);
        for (const auto& P : ctx.relevant_primes()) {
            auto B = local_basis(ctx, P);
            KMatrix m;
            for (const auto& e : B.basis) m.push_back(e.coords);
            int v = valuation(P, det_k(m));
            if (ctx.above_p(P)) {
                EXPECT_EQ(v, -1);
            } else {
                int s = 0;
                for (int r : B.r) s += r;
                EXPECT_EQ(v, -s);
            }
        }
    }
    // quadratic base, including a non-principal prime
    BaseField K = BaseField::imaginary_quadratic(-5);
    RadicandContext ctx(K, 3, KElem(K, 20));  // 2 O_K = p2^2 with p2 non-principal
    for (const auto& P : ctx.relevant_primes()) {
        if (ctx.above_p(P)) continue;
        auto B = local_basis(ctx, P);
        KMatrix m;
        for (const auto& e : B.basis) m.push_back(e.coords);
        int s = 0;
        for (int r : B.r) s += r;
        EXPECT_EQ(valuation(P, det_k(m)), -s);
        EXPECT_EQ(valuation(P, *B.uniformizer), 1);
        for (const auto& R : ctx.relevant_primes())
            if (!(R == P)) EXPECT_EQ(valuation(R, *B.uniformizer), 0);
    }
}

TEST(Integral, TotallyRamifiedValuationsPermute) {
    // v_P(N(x)) = v_Q(x) for the prime Q of L above a totally ramified P
    for (long a : {28L, 12L, 44L, 18L, 50L}) {
        for (unsigned p : {3u, 5u}) {
            if (pth_root(KElem(Q, a), p)) continue;
            RadicandContext ctx(Q, p, KElem(Q, a));
            for (const auto& P : ctx.relevant_primes()) {
                if (ctx.above_p(P) || ctx.valuation_of_a(P) % static_cast<int>(p) == 0) continue;
                std::vector<int> vals;
                for (const auto& e : local_basis(ctx, P).basis) {
                    KElem nrm = min_poly(ctx, e)[0];
                    if (p % 2 == 1) nrm = -nrm;
                    vals.push_back(valuation(P, nrm));
                }
                std::sort(vals.begin(), vals.end());
                for (unsigned j = 0; j < p; ++j) EXPECT_EQ(vals[j], static_cast<int>(j)) << a << " " << P.str();
            }
        }
    }
}

TEST(Integral, GlobalBasisExamples) {
    RadicandContext c10(Q, 3, KElem(Q, 10));
    auto g = global_integral_basis(c10);
    std::vector<RatVector> expect{{1, 0, 0}, {0, 1, 0}, {Rat(1, 3), Rat(1, 3), Rat(1, 3)}};
    EXPECT_EQ(g, IntegerLattice::from_generators(expect, 3));
    EXPECT_EQ(field_discriminant(c10), -300);
    EXPECT_EQ(power_basis_discriminant(3, 10), -2700);

    RadicandContext c19(Q, 3, KElem(Q, 19));
    EXPECT_EQ(global_integral_basis(c19), IntegerLattice::from_generators(expect, 3));

    RadicandContext c28(Q, 3, KElem(Q, 28));
    auto g28 = global_integral_basis(c28);
    EXPECT_TRUE(g28.contains(RatVector{0, 0, Rat(1, 2)}));
    EXPECT_EQ(g28.covolume(), Rat(1, 6));
    EXPECT_EQ(field_discriminant(c28), pure_cubic_discriminant(28));

    BaseField K = BaseField::imaginary_quadratic(-5);
    EXPECT_THROW(global_integral_basis(RadicandContext(K, 3, KElem(K, 10))), unsupported_error);
}

TEST(Integral, DiscriminantMatchesIndexFormula) {
    for (unsigned p : {3u, 5u, 7u}) {
        long m = static_cast<long>(p * p);
        int count = 0;
        for (long a = m + 1; a < 3000 && count < 25; a += m) {
            if (pth_root(KElem(Q, a), p)) continue;
            RadicandContext ctx(Q, p, KElem(Q, a));
            auto ai = associated_ideals(ctx);
            Int index = p;
            for (unsigned j = 1; j < p; ++j) index *= num(ai.b[j].z_basis()[0].x());
            EXPECT_EQ(field_discriminant(ctx) * index * index, power_basis_discriminant(p, a)) << p << " " << a;
            ++count;
        }
    }
}

TEST(Integral, PureCubicDiscriminants) {
    for (long m = 2; m < 150; ++m) {
        if (pth_root(KElem(Q, m), 3)) continue;
        bool cubefree = true;
        for (long q = 2; q * q * q <= m; ++q) cubefree = cubefree && m % (q * q * q) != 0;
        if (!cubefree || m % 3 == 0) continue;
        auto t = tameness_test(Q, 3, KElem(Q, m));
        if (!t.tame) continue;
        // normalization multiplies by a cube, which changes neither the field nor its discriminant
        EXPECT_EQ(field_discriminant(RadicandContext(Q, 3, *t.normalized)), pure_cubic_discriminant(m)) << m;
    }
}

TEST(Integral, LocalizationRoundTrip) {
    for (long a : {10L, 28L, 136L, 244L}) {
        RadicandContext ctx(Q, 3, KElem(Q, a));
        auto g = global_integral_basis(ctx);
        std::vector<LocalCondition> conds;
        for (const auto& P : ctx.relevant_primes()) conds.push_back({P.q, localize(g, P.q).basis()});
        EXPECT_EQ(hnf_glue(conds, 3), g);
    }
}

TEST(Dedekind, Examples) {
    auto w3 = dedekind_maximality_oracle(3, 3, 10);
    EXPECT_FALSE(w3.maximal);
    EXPECT_EQ(w3.verdict(), "index-divisible-by-q");
    EXPECT_TRUE(recheck(w3));
    auto w5 = dedekind_maximality_oracle(5, 3, 10);
    EXPECT_TRUE(w5.maximal);
    EXPECT_EQ(w5.g, (fq::Poly{0, 1}));
    EXPECT_EQ(w5.F_mod_q, (fq::Poly{2}));
    auto w7 = dedekind_maximality_oracle(7, 3, 10);
    EXPECT_TRUE(w7.maximal);
    EXPECT_EQ(w7.g, w7.f_mod_q);
    EXPECT_THROW(dedekind_maximality_oracle(4, 3, 10), domain_error);
}

TEST(Dedekind, TamperedTranscriptFailsRecheck) {
    auto w = dedekind_maximality_oracle(2, 3, 28);
    ASSERT_TRUE(recheck(w));
    auto bad = w;
    bad.maximal = !bad.maximal;
    EXPECT_FALSE(recheck(bad));
    bad = w;
    bad.F_mod_q.push_back(1);
    EXPECT_FALSE(recheck(bad));
}

TEST(Dedekind, AgreesWithGlobalIndex) {
    for (unsigned p : {3u, 5u}) {
        long m = static_cast<long>(p * p);
        for (long a = m + 1; a < 1200; a += m) {
            if (pth_root(KElem(Q, a), p)) continue;
            RadicandContext ctx(Q, p, KElem(Q, a));
            Rat index = Rat(1) / global_integral_basis(ctx).covolume();
            ASSERT_TRUE(is_integer(index));
            std::vector<Int> qs{Int(p)};
            for (const auto& [q, e] : factor_integer(a)) qs.push_back(q);
            for (Int q : {2, 7, 11, 13})
                if (std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
            for (const auto& q : qs) {
                auto w = dedekind_maximality_oracle(q, p, a);
                EXPECT_EQ(!w.maximal, num(index) % q == 0) << p << " " << a << " " << q;
            }
        }
    }
}
