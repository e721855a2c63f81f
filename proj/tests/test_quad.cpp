#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace miop;
using P = Poly<Rational>;

namespace {
const P eta = P::variable();
P k(long v) { return P::constant(Rational(v)); }
}  // namespace

TEST(FloatPoly, CompensatedHornerIsAccurateNearARoot) {
    // (eta - 1)^8 evaluated close to 1, where plain Horner cancels badly
    auto p = pow(eta - k(1), 8);
    FloatPoly<long double> f(p);
    for (long double x : {1.001L, 0.999L, 1.01L, 1.5L}) {
        long double exact = std::pow(x - 1, 8);
        EXPECT_NEAR(f(x) / exact, 1.0L, 1e-6L) << static_cast<double>(x);
    }
    EXPECT_EQ(FloatPoly<long double>(P{})(2.0L), 0.0L);
}

TEST(Sturm, CountsDistinctRealRoots) {
    auto p = (eta - k(1)) * (eta - k(2)) * (eta + k(3));
    EXPECT_EQ(count_real_roots(p, Rational(0), std::nullopt), 2);
    EXPECT_EQ(count_real_roots(p, std::nullopt, std::nullopt), 3);
    EXPECT_EQ(count_real_roots(p, Rational(-1), Rational(1)), 1);
    EXPECT_EQ(count_real_roots(p * (eta - k(1)), Rational(0), std::nullopt), 2);
    EXPECT_EQ(count_real_roots(eta * eta + k(1), std::nullopt, std::nullopt), 0);
    EXPECT_THROW(count_real_roots(P{}, std::nullopt, std::nullopt), ConfigurationError);
}

TEST(Norms, ClosedValues) {
    EXPECT_NEAR(static_cast<double>(norm_h(FamilyParams::laguerre(Rational(3, 2)), 0)), 0.5, 1e-18);
    // J, g = h = 1: h_n = Gamma(n+3/2)^2 / (n! Gamma(n+2) 2 (2n+2))
    auto j = FamilyParams::jacobi(Rational(1), Rational(1));
    long double want = std::tgamma(1.5L) * std::tgamma(1.5L) / (1 * 1 * 2 * 2);
    EXPECT_NEAR(static_cast<double>(norm_h(j, 0) / want), 1.0, 1e-15);
}

TEST(Weight, ClassicalLaguerreAtOne) {
    Weight w(FamilyParams::laguerre(Rational(3, 2)), IndexSet{});
    // phi_0(x) = e^{-x^2/2} x^g, squared at x = 1
    EXPECT_NEAR(static_cast<double>(w(1.0L)), std::exp(-1.0), 1e-15);
    EXPECT_THROW(w(-0.5L), DomainError);
    EXPECT_THROW(w(0.0L), DomainError);
    Weight wj(preset(Family::J), IndexSet{});
    EXPECT_THROW(wj(2.0L), DomainError);
}

TEST(Weight, PolesAreDetectedExactly) {
    EXPECT_THROW(Weight(preset(Family::L), IndexSet::parse("II2")), PoleEncountered);
    EXPECT_THROW(Weight(preset(Family::J), IndexSet::parse("I2")), PoleEncountered);
    EXPECT_NO_THROW(Weight(preset(Family::L), IndexSet::parse("I1,II1")));
    EXPECT_THROW(Weight(preset(Family::W), IndexSet{}), ConfigurationError);
}

TEST(Weight, PositiveOnTheInterval) {
    for (const char* d : {"I1", "II1", "I1,I2", "I1,II1"}) {
        Weight w(preset(Family::L), IndexSet::parse(d));
        for (int i = 1; i < 200; ++i) EXPECT_GT(w(0.05L * i), 0.0L);
    }
    Weight wj(preset(Family::J), IndexSet::parse("I1,II1"));
    for (int i = 1; i < 100; ++i) EXPECT_GT(wj(std::acos(-1.0L) / 2 * i / 100), 0.0L);
}

TEST(Orthogonality, ClassicalNormsAndZeros) {
    for (Family f : {Family::L, Family::J}) {
        auto fp = preset(f);
        auto pair = build_LJ(fp, IndexSet{}, 8);
        Weight w(fp, IndexSet{}, pair.Xi);
        for (long n = 0; n <= 8; ++n)
            for (long m = n; m <= 8; ++m) {
                auto r = orthogonality_check(w, pair, n, m);
                EXPECT_LT(r.rel_err, 1e-9L) << to_string(f) << " " << n << "," << m;
            }
    }
}

TEST(Orthogonality, LaguerreI1NormProduct) {
    auto fp = FamilyParams::laguerre(Rational(7, 3));
    auto D = IndexSet::parse("I1");
    auto pair = build_LJ(fp, D, 2);
    Weight w(fp, D, pair.Xi);
    auto r = orthogonality_check(w, pair, 1, 1);
    long double g = 7.0L / 3;
    long double want = (4 + 4 * (g + 1 + 0.5L)) * norm_h(fp, 1);
    EXPECT_NEAR(static_cast<double>(r.integral / want), 1.0, 1e-12);
    EXPECT_NEAR(static_cast<double>(r.expected / want), 1.0, 1e-15);
}

TEST(Orthogonality, DeformedCases) {
    struct C {
        Family f;
        const char* D;
    };
    for (auto c : {C{Family::L, "II1"}, C{Family::L, "I1,II1"}, C{Family::J, "I1"}, C{Family::J, "I1,II1"}}) {
        auto fp = preset(c.f);
        auto D = IndexSet::parse(c.D);
        auto pair = build_LJ(fp, D, 5);
        Weight w(fp, D, pair.Xi);
        for (long n = 0; n <= 5; ++n)
            for (long m = n; m <= 5; ++m) {
                auto r = orthogonality_check(w, pair, n, m);
                EXPECT_LT(r.rel_err, n == m ? 1e-7L : 1e-8L) << c.D << " " << n << "," << m;
            }
    }
}

TEST(Orthogonality, GivesUpLoudly) {
    auto fp = preset(Family::L);
    auto pair = build_LJ(fp, IndexSet{}, 8);
    Weight w(fp, IndexSet{}, pair.Xi);
    QuadratureSpec strict;
    strict.max_refinements = 1;
    strict.accept = 1e-40L;
    EXPECT_THROW(orthogonality_check(w, pair, 8, 8, strict), NonConvergent);
    auto other = build_LJ(fp, IndexSet::parse("I1"), 2);
    EXPECT_THROW(orthogonality_check(w, other, 0, 0), ConfigurationError);
}
