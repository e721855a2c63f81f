#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace miop;
using P = Poly<Rational>;

namespace {

const P eta = P::variable();
P k(const Rational& c) { return P::constant(c); }

template <class S>
Poly<S> lift(const P& p) {
    std::vector<S> c;
    for (const auto& x : p.coeffs()) c.emplace_back(x);
    return Poly<S>(c);
}

}  // namespace

TEST(RTable, LevelZeroIsTheThreeTermRow) {
    for (Family f : {Family::L, Family::J, Family::W, Family::AW}) {
        auto fp = preset(f);
        with_eta_scalar(fp, [&](auto tag) {
            using S = decltype(tag);
            auto t = build_rtable<S>(fp, 0, -2, 6);
            for (long n = -2; n <= 6; ++n) {
                auto c = three_term(fp, n);
                EXPECT_EQ(t.at(0, n, 1), lift<S>(k(c.A))) << to_string(f) << n;
                EXPECT_EQ(t.at(0, n, 0), lift<S>(k(c.B) - eta)) << to_string(f) << n;
                EXPECT_EQ(t.at(0, n, -1), lift<S>(k(c.C))) << to_string(f) << n;
            }
        });
    }
}

TEST(RTable, LevelOneCentreEntryLJ) {
    for (Family f : {Family::L, Family::J}) {
        auto fp = preset(f);
        auto t = build_rtable_LJ(fp, 1, -2, 8);
        for (long n = -1; n <= 8; ++n) {
            auto c = three_term(fp, n), cp = three_term(fp, n + 1), cm = three_term(fp, n - 1);
            P want = k(c.A * cp.C + cm.A * c.C) + (k(c.B) - eta) * (k(c.B) - eta);
            EXPECT_EQ(t.at(1, n, 0), want) << n;
        }
    }
}

TEST(RTable, LaguerreTopCorner) {
    auto t = build_rtable_LJ(FamilyParams::laguerre(Rational(3, 2)), 1, 0, 4);
    EXPECT_EQ(t.at(1, 0, 2), k(Rational(2)));
}

TEST(RTable, TopEntryIsProductOfA) {
    for (Family f : {Family::L, Family::J, Family::W, Family::AW}) {
        auto fp = preset(f);
        with_eta_scalar(fp, [&](auto tag) {
            using S = decltype(tag);
            auto t = build_rtable<S>(fp, 3, 0, 5);
            for (int s = 0; s <= 3; ++s)
                for (long n = 0; n <= 5; ++n) {
                    Rational prod = 1;
                    for (long j = 0; j <= s; ++j) prod *= three_term(fp, n + j).A;
                    EXPECT_EQ(t.at(s, n, s + 1), lift<S>(k(prod)));
                }
        });
    }
}

TEST(RTable, WilsonLevelOneByShiftIdentity) {
    auto fp = preset(Family::W);
    auto t = build_rtable<Rational>(fp, 1, 0, 6);
    for (long n = 0; n <= 6; ++n) {
        auto c = three_term(fp, n), cp = three_term(fp, n + 1), cm = three_term(fp, n - 1);
        // eta(x - i/2) + eta(x + i/2) = 2 eta - 1/2, product (eta + 1/4)^2
        P sum = eta * Rational(2) - k(Rational(1, 2));
        P prod = (eta + k(Rational(1, 4))) * (eta + k(Rational(1, 4)));
        EXPECT_EQ(t.at(1, n, 1), (k(c.B + cp.B) - sum) * c.A);
        EXPECT_EQ(t.at(1, n, 0), k(c.A * cp.C + cm.A * c.C) + k(c.B * c.B) - sum * c.B + prod);
    }
}

TEST(RTable, AskeyWilsonLevelOneByShiftIdentity) {
    auto fp = preset(Family::AW);
    using S = SqrtQRational;
    auto t = build_rtable<S>(fp, 1, 0, 6);
    for (long n = 0; n <= 6; ++n) {
        auto c = three_term(fp, n), cp = three_term(fp, n + 1), cm = three_term(fp, n - 1);
        // q = 1/4: sum (q^{1/2} + q^{-1/2}) eta = 5/2 eta, product eta^2 + 9/16
        P sum = eta * Rational(5, 2);
        P prod = eta * eta + k(Rational(9, 16));
        EXPECT_EQ(t.at(1, n, 1), lift<S>((k(c.B + cp.B) - sum) * c.A));
        EXPECT_EQ(t.at(1, n, 0), lift<S>(k(c.A * cp.C + cm.A * c.C) + k(c.B * c.B) - sum * c.B + prod));
    }
}

TEST(RTable, DerivativeProperty) {
    auto t = build_rtable_LJ(FamilyParams::laguerre(Rational(3, 2)), 1, 0, 4);
    EXPECT_EQ(derivative(t.at(1, 1, 0)), t.at(0, 1, 0) * Rational(-2));
    for (Family f : {Family::L, Family::J}) {
        auto check = check_rprop(build_rtable_LJ(preset(f), 3, -4, 12));
        EXPECT_TRUE(check.pass());
        EXPECT_GT(check.checked, 0);
    }
}

TEST(RTable, ShiftPropertiesWAW) {
    {
        WilsonPicture pic(preset(Family::W));
        for (const auto& c : check_rprop2_rprop3(build_rtable_WAW(pic, 3, -4, 12))) EXPECT_TRUE(c.pass()) << c.identity;
    }
    for (auto q : {Rational(1, 4), Rational(1, 3)}) {
        auto fp = FamilyParams::askey_wilson({Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 5)}, q);
        AskeyWilsonPicture pic(fp);
        for (const auto& c : check_rprop2_rprop3(build_rtable_WAW(pic, 3, -4, 12))) EXPECT_TRUE(c.pass()) << c.identity;
    }
}

TEST(RTable, VanishingRegion) {
    auto t1 = build_rtable_LJ(preset(Family::L), 1, -2, 4);
    for (int kk = 1; kk <= 2; ++kk) EXPECT_TRUE(t1.at(1, -1, kk).is_zero());
    auto t2 = build_rtable<SqrtQRational>(preset(Family::AW), 2, -3, 4);
    for (int kk = 2; kk <= 3; ++kk) EXPECT_TRUE(t2.at(2, -2, kk).is_zero());
    for (Family f : {Family::L, Family::J, Family::W, Family::AW})
        for (const auto& c : table_checks(preset(f), 3, -4, 12)) EXPECT_TRUE(c.pass()) << to_string(f) << c.identity;
}

TEST(RTable, DegreeLaw) {
    for (Family f : {Family::L, Family::W}) {
        auto t = build_rtable<Rational>(preset(f), 2, -3, 6);
        EXPECT_TRUE(check_degree_law(t).pass());
        EXPECT_EQ(t.at(2, 4, 0).degree(), 3);
        EXPECT_EQ(t.at(2, 4, 3).degree(), 0);
    }
}

TEST(RTable, CorruptedEntryIsLocated) {
    TableOptions opt;
    opt.corrupt = EntryIndex{2, 1, -1};
    auto c = check_rprop(build_rtable_LJ(preset(Family::J), 3, -4, 8, opt));
    ASSERT_FALSE(c.pass());
    bool hit = false;
    for (const auto& v : c.violations) hit = hit || (v.at == EntryIndex{2, 1, -1});
    EXPECT_TRUE(hit);
    opt.corrupt = EntryIndex{7, 0, 0};
    EXPECT_THROW(build_rtable_LJ(preset(Family::J), 3, -4, 8, opt), ConfigurationError);
}

TEST(RTable, WindowBounds) {
    auto t = build_rtable_LJ(preset(Family::L), 2, 0, 5);
    EXPECT_EQ(t.level_lo(2), 0);
    EXPECT_EQ(t.level_hi(0), 7);
    EXPECT_EQ(t.level_lo(0), -2);
    EXPECT_TRUE(t.contains(1, -1));
    EXPECT_FALSE(t.contains(2, -1));
}
