#include <gtest/gtest.h>

#include <random>

#include "hgm/radical.hpp"

using namespace hgm;

namespace {

const BaseField Q = BaseField::rationals();
const BaseField K5 = BaseField::imaginary_quadratic(-5);

LElem lel(const RadicandContext& ctx, std::initializer_list<Rat> xs) {
    LElem u = ctx.zero();
    unsigned j = 0;
    for (const auto& x : xs) u[j++] = KElem(ctx.field(), x);
    return u;
}

LElem random_lelem(const RadicandContext& ctx, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-9, 9);
    LElem u = ctx.zero();
    for (unsigned j = 0; j < ctx.p(); ++j)
        u[j] = ctx.field().is_rational() ? KElem(ctx.field(), Rat(d(rng), 1 + rng() % 4))
                                         : KElem(ctx.field(), Rat(d(rng)), Rat(d(rng), 1 + rng() % 3));
    return u;
}

// Evaluate a polynomial over K at u in L.
LElem eval(const RadicandContext& ctx, const KPoly& f, const LElem& u) {
    LElem r = ctx.zero();
    for (std::size_t i = f.size(); i-- > 0;) r = l_mul(ctx, r, u) + ctx.from_base(f[i]);
    return r;
}

}  // namespace

TEST(Extension, ContextValidation) {
    EXPECT_THROW(RadicandContext(Q, 4, KElem(Q, 10)), domain_error);
    EXPECT_THROW(RadicandContext(Q, 2, KElem(Q, 10)), domain_error);
    EXPECT_THROW(RadicandContext(Q, 3, KElem(Q, 8)), degenerate_extension_error);
    EXPECT_THROW(RadicandContext(Q, 3, KElem(Q, 0)), domain_error);
    EXPECT_THROW(RadicandContext(Q, 3, KElem(Q, Rat(1, 2))), domain_error);
    EXPECT_THROW(RadicandContext(BaseField::imaginary_quadratic(-3), 3, KElem(BaseField::imaginary_quadratic(-3), 2)),
                 domain_error);
    EXPECT_NO_THROW(RadicandContext(K5, 3, KElem(K5, 10)));
}

TEST(Extension, MultiplicationExamples) {
    RadicandContext c10(Q, 3, KElem(Q, 10)), c28(Q, 3, KElem(Q, 28));
    EXPECT_EQ(l_mul(c10, c10.alpha_pow(1), c10.alpha_pow(2)), lel(c10, {10, 0, 0}));
    EXPECT_EQ(l_mul(c10, lel(c10, {1, 1, 0}), lel(c10, {1, -1, 0})), lel(c10, {1, 0, -1}));
    EXPECT_EQ(l_mul(c28, c28.alpha_pow(2), c28.alpha_pow(2)), lel(c28, {0, 28, 0}));
    RadicandContext c5(Q, 5, KElem(Q, 7));
    EXPECT_THROW(l_mul(c10, c10.alpha_pow(1), c5.alpha_pow(1)), domain_error);
}

TEST(Extension, RingAxiomsRandom) {
    std::mt19937_64 rng(21);
    for (auto ctx : {RadicandContext(Q, 3, KElem(Q, 10)), RadicandContext(Q, 5, KElem(Q, 12)),
                     RadicandContext(K5, 3, KElem(K5, 2, 1))}) {
        for (int i = 0; i < 30; ++i) {
            LElem u = random_lelem(ctx, rng), v = random_lelem(ctx, rng), x = random_lelem(ctx, rng);
            EXPECT_EQ(l_mul(ctx, u, v), l_mul(ctx, v, u));
            EXPECT_EQ(l_mul(ctx, l_mul(ctx, u, v), x), l_mul(ctx, u, l_mul(ctx, v, x)));
            EXPECT_EQ(l_mul(ctx, u, v + x), l_mul(ctx, u, v) + l_mul(ctx, u, x));
        }
    }
}

TEST(Extension, MinPolyExamples) {
    RadicandContext ctx(Q, 3, KElem(Q, 10));
    auto f = min_poly(ctx, ctx.alpha_pow(1));
    EXPECT_EQ(poly_str(f), "x^3 - 10");
    auto g = min_poly(ctx, lel(ctx, {1, 1, 0}));
    EXPECT_EQ(poly_str(g), "x^3 - 3*x^2 + 3*x - 11");
    LElem t = lel(ctx, {Rat(1, 3), Rat(1, 3), Rat(1, 3)});
    auto h = min_poly(ctx, t);
    for (const auto& c : h) EXPECT_TRUE(c.is_integral()) << poly_str(h);
    EXPECT_TRUE(eval(ctx, h, t).is_zero());
    EXPECT_TRUE(is_integral_element(ctx, t));
    EXPECT_FALSE(is_integral_element(ctx, lel(ctx, {0, Rat(1, 3), 0})));
    // (x - u)^p for u in K
    auto k = min_poly(ctx, ctx.from_base(KElem(Q, 2)));
    EXPECT_EQ(poly_str(k), "x^3 - 6*x^2 + 12*x - 8");
}

TEST(Extension, MinPolyAnnihilatesRandom) {
    std::mt19937_64 rng(2);
    for (auto ctx : {RadicandContext(Q, 5, KElem(Q, 6)), RadicandContext(K5, 3, KElem(K5, 3, 1)),
                     RadicandContext(BaseField::imaginary_quadratic(-1), 5, KElem(BaseField::imaginary_quadratic(-1), 2))}) {
        for (int i = 0; i < 10; ++i) {
            LElem u = random_lelem(ctx, rng);
            auto f = min_poly(ctx, u);
            EXPECT_EQ(f.back(), KElem(ctx.field(), 1));
            EXPECT_TRUE(eval(ctx, f, u).is_zero());
        }
        auto f = min_poly(ctx, ctx.alpha_pow(1));
        for (std::size_t i = 1; i < ctx.p(); ++i) EXPECT_TRUE(f[i].is_zero());
        EXPECT_EQ(f[0], -ctx.a());
    }
}

TEST(Radical, IPartExamples) {
    auto d = i_part_decomposition(KIdeal::principal(KElem(Q, 360)));
    EXPECT_EQ(d.part(1), KIdeal::principal(KElem(Q, 5)));
    EXPECT_EQ(d.part(2), KIdeal::principal(KElem(Q, 3)));
    EXPECT_EQ(d.part(3), KIdeal::principal(KElem(Q, 2)));
    EXPECT_EQ(d.reconstruct(), KIdeal::principal(KElem(Q, 360)));
    EXPECT_TRUE(i_part_decomposition(KIdeal::unit(K5)).parts.empty());
    auto e = i_part_decomposition(KIdeal::principal(KElem(K5, 2)));
    ASSERT_EQ(e.parts.size(), 1u);
    EXPECT_EQ(e.part(2), KIdeal::from_generators(K5, {KElem(K5, 2), KElem(K5, 1, 1)}));
    EXPECT_THROW(i_part_decomposition(KIdeal::principal(KElem(Q, Rat(1, 2)))), domain_error);
}

TEST(Radical, AssociatedIdealExamples) {
    auto a28 = associated_ideals(RadicandContext(Q, 3, KElem(Q, 28)));
    EXPECT_EQ(a28.b[0], KIdeal::unit(Q));
    EXPECT_EQ(a28.b[1], KIdeal::unit(Q));
    EXPECT_EQ(a28.b[2], KIdeal::principal(KElem(Q, 2)));
    auto a496 = associated_ideals(RadicandContext(Q, 5, KElem(Q, 496)));
    const long expect[] = {1, 1, 2, 4, 8};
    for (unsigned j = 0; j < 5; ++j) EXPECT_EQ(a496.b[j], KIdeal::principal(KElem(Q, expect[j])));
    auto sq = associated_ideals(RadicandContext(K5, 3, KElem(K5, 3, 1)));
    for (const auto& b : sq.b) EXPECT_EQ(b, KIdeal::unit(K5));
}

TEST(Radical, AssociatedIdealsTwoFormulasRandom) {
    std::mt19937_64 rng(13);
    const long ds[] = {0, -1, -2, -5, -6, -14};
    for (int t = 0; t < 120; ++t) {
        long dd = ds[rng() % 6];
        BaseField K = dd == 0 ? Q : BaseField::imaginary_quadratic(dd);
        unsigned p = (rng() % 2) ? 3 : 5;
        if (K.discriminant() % p == 0) continue;
        KElem a(K, Rat(static_cast<long>(rng() % 200) - 100), K.is_rational() ? Rat(0) : Rat(static_cast<long>(rng() % 40) - 20));
        a = a * KElem(K, 2).pow(static_cast<int>(rng() % 6));
        if (a.is_zero() || pth_root(a, p)) continue;
        RadicandContext ctx(K, p, a);
        auto ai = associated_ideals(ctx);
        auto byparts = associated_ideals_by_parts(i_part_decomposition(KIdeal::principal(a)), p);
        for (unsigned j = 0; j < p; ++j) {
            EXPECT_EQ(ai.b[j], byparts[j]);
            for (const auto& [P, v] : ctx.radicand_factors())
                EXPECT_EQ(valuation(P, ai.b[j]), static_cast<int>((j * v) / p));
        }
        EXPECT_EQ(ai.b[0], KIdeal::unit(K));
    }
}

TEST(Radical, TamenessExamples) {
    auto t10 = tameness_test(Q, 3, KElem(Q, 10));
    EXPECT_TRUE(t10.tame);
    EXPECT_EQ(*t10.normalized, KElem(Q, 10));
    EXPECT_EQ(t10.ell, 1u);
    EXPECT_EQ(*t10.c, KElem(Q, 1));

    auto t2 = tameness_test(Q, 3, KElem(Q, 2));
    EXPECT_FALSE(t2.tame);

    auto t17 = tameness_test(Q, 3, KElem(Q, 17));
    ASSERT_TRUE(t17.tame);
    EXPECT_EQ(t17.ell, 1u);
    EXPECT_EQ(*t17.c, KElem(Q, 2));
    EXPECT_EQ(*t17.normalized, KElem(Q, 136));

    EXPECT_THROW(tameness_test(Q, 3, KElem(Q, 27)), degenerate_extension_error);
    EXPECT_THROW(tameness_test(Q, 3, KElem(Q, 0)), domain_error);
    // v_3(a) = 1 above p
    auto t3 = tameness_test(Q, 3, KElem(Q, 3));
    EXPECT_FALSE(t3.tame);
    EXPECT_TRUE(t3.wild_prime.has_value());
}

TEST(Radical, NormalizationPreservesField) {
    std::mt19937_64 rng(17);
    const long ds[] = {0, -1, -2, -5, -14};
    int tame_seen = 0;
    for (int t = 0; t < 150; ++t) {
        long dd = ds[rng() % 5];
        BaseField K = dd == 0 ? Q : BaseField::imaginary_quadratic(dd);
        unsigned p = (rng() % 3) ? 3 : 5;
        if (K.discriminant() % p == 0) continue;
        KElem a(K, Rat(static_cast<long>(rng() % 300) - 150), K.is_rational() ? Rat(0) : Rat(static_cast<long>(rng() % 30) - 15));
        if (a.is_zero() || pth_root(a, p)) continue;
        TamenessVerdict v;
        try {
            v = tameness_test(K, p, a);
        } catch (const unsupported_error&) {
            continue;
        }
        if (!v.tame) continue;
        ++tame_seen;
        EXPECT_TRUE(congruent_mod(*v.normalized, KElem(K, 1), Int(p * p)));
        EXPECT_NE(v.ell % p, 0u);
        // alpha' = alpha^ell * c satisfies x^p - a'
        RadicandContext ctx(K, p, a);
        LElem ap = (*v.c) * l_pow(ctx, ctx.alpha_pow(1), v.ell);
        EXPECT_EQ(l_pow(ctx, ap, p), ctx.from_base(*v.normalized));
    }
    EXPECT_GT(tame_seen, 10);
}

TEST(Radical, TamenessEquivalenceOverQ) {
    for (unsigned p : {3u, 5u})
        for (long a = -200; a <= 200; ++a) {
            if (a % static_cast<long>(p) == 0 || pth_root(KElem(Q, a), p)) continue;
            bool classical = powmod(Int(a), Int(p - 1), Int(p * p)) == 1;
            EXPECT_EQ(tameness_test(Q, p, KElem(Q, a)).tame, classical) << p << " " << a;
        }
}

TEST(Radical, RamificationTypes) {
    RadicandContext c28(Q, 3, KElem(Q, 28)), c56(Q, 3, KElem(Q, 56));
    EXPECT_EQ(ramification_type(c28, primes_above(Q, 7)[0]), RamificationType::totally_ramified);
    EXPECT_EQ(ramification_type(c56, primes_above(Q, 2)[0]), RamificationType::unramified);
    EXPECT_EQ(ramification_type(c28, primes_above(Q, 5)[0]), RamificationType::unramified);
    EXPECT_THROW(ramification_type(c28, primes_above(Q, 3)[0]), domain_error);
}
