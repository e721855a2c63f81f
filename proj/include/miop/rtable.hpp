#pragma once

// Recurrence-coefficient tables R^[s]_{n,k}(eta), 0 <= s <= M, |k| <= s+1.
//
// Level s is stored on the window [lo - (M - s), hi + (M - s)] so every
// entry referenced by the next level is available; level -1 is the constant
// 1 at k = 0.

#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "miop/errors.hpp"
#include "miop/families.hpp"
#include "miop/parallel.hpp"
#include "miop/poly.hpp"
#include "miop/xpicture.hpp"

namespace miop {

/// Triangular (s, n, k) storage shared by eta-tables and x-picture tables.
template <class E>
class LevelGrid {
public:
    LevelGrid() = default;
    LevelGrid(int M, long lo, long hi, E one, E zero) : M_(M), lo_(lo), hi_(hi), zero_(std::move(zero)) {
        if (M < 0) throw ConfigurationError("table depth M must be >= 0");
        if (hi < lo) throw ConfigurationError("empty table window");
        levels_.resize(static_cast<std::size_t>(M + 2));
        for (int s = -1; s <= M; ++s) {
            auto& lv = levels_[static_cast<std::size_t>(s + 1)];
            lv.assign(static_cast<std::size_t>(level_hi(s) - level_lo(s) + 1),
                      std::vector<E>(static_cast<std::size_t>(2 * s + 3), zero_));
        }
        for (auto& row : levels_[0]) row[0] = one;
    }

    int M() const { return M_; }
    long lo() const { return lo_; }
    long hi() const { return hi_; }
    long level_lo(int s) const { return lo_ - (M_ - s); }
    long level_hi(int s) const { return hi_ + (M_ - s); }
    bool contains(int s, long n) const { return s >= -1 && s <= M_ && n >= level_lo(s) && n <= level_hi(s); }

    const E& at(int s, long n, int k) const {
        if (k < -s - 1 || k > s + 1) return zero_;
        check(s, n);
        return levels_[static_cast<std::size_t>(s + 1)][static_cast<std::size_t>(n - level_lo(s))]
                      [static_cast<std::size_t>(k + s + 1)];
    }
    E& ref(int s, long n, int k) {
        if (k < -s - 1 || k > s + 1) throw ConfigurationError("k outside |k| <= s+1");
        check(s, n);
        return levels_[static_cast<std::size_t>(s + 1)][static_cast<std::size_t>(n - level_lo(s))]
                      [static_cast<std::size_t>(k + s + 1)];
    }

private:
    void check(int s, long n) const {
        if (!contains(s, n))
            throw ConfigurationError("table entry (s=" + std::to_string(s) + ", n=" + std::to_string(n) +
                                     ") outside the stored window");
    }

    int M_ = 0;
    long lo_ = 0;
    long hi_ = 0;
    E zero_;
    std::vector<std::vector<std::vector<E>>> levels_;
};

/// (s, n, k) of a table entry.
struct EntryIndex {
    int s = 0;
    long n = 0;
    int k = 0;
    friend bool operator==(const EntryIndex&, const EntryIndex&) = default;
};

inline std::string to_string(const EntryIndex& e) {
    return "(s=" + std::to_string(e.s) + ", n=" + std::to_string(e.n) + ", k=" + std::to_string(e.k) + ")";
}

struct TableOptions {
    /// Replaces the default three-term data (e.g. the B_{-1} probe).
    std::function<void(ThreeTermTable&)> adjust_coefficients;
    /// Fault injection: perturb this entry right after it is computed, so the
    /// damage propagates to higher levels as a real bug would.
    std::optional<EntryIndex> corrupt;
};

template <class S>
class RTable {
public:
    using Scalar = S;

    RTable(FamilyParams fp, ThreeTermTable coeffs, LevelGrid<Poly<S>> grid)
        : fp_(std::move(fp)), coeffs_(std::move(coeffs)), grid_(std::move(grid)) {}

    const FamilyParams& params() const { return fp_; }
    const ThreeTermTable& coefficients() const { return coeffs_; }
    int M() const { return grid_.M(); }
    long lo() const { return grid_.lo(); }
    long hi() const { return grid_.hi(); }
    long level_lo(int s) const { return grid_.level_lo(s); }
    long level_hi(int s) const { return grid_.level_hi(s); }
    bool contains(int s, long n) const { return grid_.contains(s, n); }
    const Poly<S>& at(int s, long n, int k) const { return grid_.at(s, n, k); }

private:
    FamilyParams fp_;
    ThreeTermTable coeffs_;
    LevelGrid<Poly<S>> grid_;
};

namespace detail {

template <class E>
void check_corrupt_target(const EntryIndex& c, const LevelGrid<E>& g) {
    if (c.s < 0 || !g.contains(c.s, c.n) || c.k < -c.s - 1 || c.k > c.s + 1)
        throw ConfigurationError("corrupted entry " + to_string(c) + " is outside the table");
}

inline ThreeTermTable table_coefficients(const FamilyParams& fp, int M, long lo, long hi,
                                         const TableOptions& opt) {
    ThreeTermTable t(fp, lo - M - 1, hi + M + 1);
    if (opt.adjust_coefficients) opt.adjust_coefficients(t);
    return t;
}

}  // namespace detail

/// R^[s]_{n,k}(eta) = A_n R^[s-1]_{n+1,k-1} + (B_n - eta) R^[s-1]_{n,k} + C_n R^[s-1]_{n-1,k+1}.
inline RTable<Rational> build_rtable_LJ(const FamilyParams& fp, int M, long lo, long hi,
                                        const TableOptions& opt = {}) {
    if (fp.family() != Family::L && fp.family() != Family::J)
        throw ConfigurationError("build_rtable_LJ requires the L or J family");
    using P = Poly<Rational>;
    ThreeTermTable coeffs = detail::table_coefficients(fp, M, lo, hi, opt);
    LevelGrid<P> grid(M, lo, hi, P::constant(Rational(1)), P{});
    const P eta = P::variable();
    for (int s = 0; s <= M; ++s) {
        const long base = grid.level_lo(s);
        parallel_for(static_cast<std::size_t>(grid.level_hi(s) - base + 1), [&](std::size_t i) {
            const long n = base + static_cast<long>(i);
            const ThreeTerm& t = coeffs.at(n);
            const P mid = P::constant(t.B) - eta;
            for (int k = -s - 1; k <= s + 1; ++k) {
                P r = grid.at(s - 1, n + 1, k - 1) * t.A + mid * grid.at(s - 1, n, k) +
                      grid.at(s - 1, n - 1, k + 1) * t.C;
                grid.ref(s, n, k) = std::move(r);
            }
        });
    }
    if (opt.corrupt) {
        detail::check_corrupt_target(*opt.corrupt, grid);
        grid.ref(opt.corrupt->s, opt.corrupt->n, opt.corrupt->k) += eta;
    }
    return RTable<Rational>(fp, std::move(coeffs), std::move(grid));
}

/// The x-picture table Ř together with its reduction to eta.
template <class Picture>
struct XTable {
    using Elem = typename Picture::Elem;
    using EtaScalar = typename Picture::EtaScalar;
    Picture picture;
    LevelGrid<Elem> x;
    RTable<EtaScalar> eta;
};

/// Ř^[s]_{n,k}(x) = A_n Ř^[s-1]_{n+1,k-1}(x+iγ/2) + (B_n - eta(x - isγ/2)) Ř^[s-1]_{n,k}(x+iγ/2)
///                  + C_n Ř^[s-1]_{n-1,k+1}(x+iγ/2), then reduced to eta.
template <class Picture>
XTable<Picture> build_rtable_WAW(const Picture& pic, int M, long lo, long hi, const TableOptions& opt = {}) {
    using Elem = typename Picture::Elem;
    using Coef = typename Picture::Coef;
    using EtaP = Poly<typename Picture::EtaScalar>;
    const FamilyParams& fp = pic.params();
    ThreeTermTable coeffs = detail::table_coefficients(fp, M, lo, hi, opt);
    LevelGrid<Elem> xg(M, lo, hi, pic.one(), Elem{});
    LevelGrid<EtaP> eg(M, lo, hi, EtaP::constant(typename Picture::EtaScalar(1)), EtaP{});
    const Rational half(1, 2);
    for (int s = 0; s <= M; ++s) {
        // shifted copies of level s-1, each computed once
        const long plo = xg.level_lo(s - 1);
        const long phi = xg.level_hi(s - 1);
        std::vector<std::vector<Elem>> shifted(static_cast<std::size_t>(phi - plo + 1));
        parallel_for(shifted.size(), [&](std::size_t i) {
            const long n = plo + static_cast<long>(i);
            auto& row = shifted[i];
            row.reserve(static_cast<std::size_t>(2 * s + 1));
            for (int k = -s; k <= s; ++k) row.push_back(pic.shift(xg.at(s - 1, n, k), half));
        });
        auto sh = [&](long n, int k) -> const Elem& {
            static const Elem zero{};
            if (k < -s || k > s) return zero;
            return shifted[static_cast<std::size_t>(n - plo)][static_cast<std::size_t>(k + s)];
        };
        const Elem eta_s = pic.eta_at(Rational(-s, 2));
        const long base = xg.level_lo(s);
        parallel_for(static_cast<std::size_t>(xg.level_hi(s) - base + 1), [&](std::size_t i) {
            const long n = base + static_cast<long>(i);
            const ThreeTerm& t = coeffs.at(n);
            const Elem mid = pic.constant(Coef(t.B)) - eta_s;
            for (int k = -s - 1; k <= s + 1; ++k) {
                Elem r = mid * sh(n, k);
                if (!t.A.is_zero()) r += sh(n + 1, k - 1) * Coef(t.A);
                if (!t.C.is_zero()) r += sh(n - 1, k + 1) * Coef(t.C);
                eg.ref(s, n, k) = pic.reduce(r);
                xg.ref(s, n, k) = std::move(r);
            }
        });
    }
    // a lone stored fault; later levels were built from the clean entry
    if (opt.corrupt) {
        const auto& c = *opt.corrupt;
        detail::check_corrupt_target(c, xg);
        xg.ref(c.s, c.n, c.k) += pic.eta_at(Rational(0));
        eg.ref(c.s, c.n, c.k) = pic.reduce(xg.at(c.s, c.n, c.k));
    }
    RTable<typename Picture::EtaScalar> eta(fp, std::move(coeffs), std::move(eg));
    return XTable<Picture>{pic, std::move(xg), std::move(eta)};
}

/// R-table for any family with scalar type S (Rational for L/J/W, SqrtQRational for AW).
template <class S>
RTable<S> build_rtable(const FamilyParams& fp, int M, long lo, long hi, const TableOptions& opt = {}) {
    switch (fp.family()) {
        case Family::L:
        case Family::J:
            if constexpr (std::is_same_v<S, Rational>) return build_rtable_LJ(fp, M, lo, hi, opt);
            break;
        case Family::W:
            if constexpr (std::is_same_v<S, Rational>) return build_rtable_WAW(WilsonPicture(fp), M, lo, hi, opt).eta;
            break;
        case Family::AW:
            if constexpr (std::is_same_v<S, SqrtQRational>)
                return build_rtable_WAW(AskeyWilsonPicture(fp), M, lo, hi, opt).eta;
            break;
    }
    throw ConfigurationError(std::string("scalar type does not match family ") + to_string(fp.family()));
}

// ---------------------------------------------------------------------------
// structural checks

struct TableViolation {
    EntryIndex at;
    std::string detail;
};

struct TableCheck {
    std::string identity;
    long checked = 0;
    std::vector<TableViolation> violations;
    bool pass() const { return violations.empty(); }
};

/// d/deta R^[s]_{n,k} = -(s+1) R^[s-1]_{n,k} for every stored entry.
template <class S>
TableCheck check_rprop(const RTable<S>& t) {
    TableCheck out{"rprop", 0, {}};
    for (int s = 0; s <= t.M(); ++s)
        for (long n = t.level_lo(s); n <= t.level_hi(s); ++n)
            for (int k = -s - 1; k <= s + 1; ++k) {
                ++out.checked;
                auto lhs = derivative(t.at(s, n, k));
                auto rhs = t.at(s - 1, n, k) * S(-(s + 1));
                if (!(lhs == rhs)) out.violations.push_back({{s, n, k}, "derivative mismatch"});
            }
    return out;
}

/// Rprop2 (the (-) half) and Rprop3 (the (+) reconstruction) in the x-picture,
/// plus self-conjugacy of every entry.
template <class Picture>
std::vector<TableCheck> check_rprop2_rprop3(const XTable<Picture>& t) {
    using Elem = typename Picture::Elem;
    using Coef = typename Picture::Coef;
    const Picture& pic = t.picture;
    const ThreeTermTable& c = t.eta.coefficients();
    const Rational half(1, 2);
    const Coef i_half(GaussianRational(Rational(0), half));
    const Coef r_half(half);
    TableCheck p2{"rprop2", 0, {}};
    TableCheck p3{"rprop3", 0, {}};
    TableCheck sc{"self-conjugate", 0, {}};
    auto minus = [&](const Elem& f) { return (pic.shift(f, -half) - pic.shift(f, half)) * i_half; };
    auto plus = [&](const Elem& f) { return (pic.shift(f, -half) + pic.shift(f, half)) * r_half; };
    for (int s = 0; s <= t.x.M(); ++s) {
        const Elem e_lo = pic.eta_at(Rational(-(s + 1), 2));
        const Elem e_hi = pic.eta_at(Rational(s + 1, 2));
        const Elem d2 = (e_lo - e_hi) * (-i_half);
        const Elem s_lo = pic.eta_at(Rational(-s, 2));
        const Elem s_hi = pic.eta_at(Rational(s, 2));
        const Elem avg = (s_lo + s_hi) * r_half;
        const Elem diff = s_lo - s_hi;
        const Elem quarter_sq = diff * diff * Coef(Rational(-1, 4));
        for (long n = t.x.level_lo(s); n <= t.x.level_hi(s); ++n) {
            const ThreeTerm& abc = c.at(n);
            for (int k = -s - 1; k <= s + 1; ++k) {
                const Elem& f = t.x.at(s, n, k);
                ++p2.checked;
                ++p3.checked;
                ++sc.checked;
                if (!pic.self_conjugate(f)) sc.violations.push_back({{s, n, k}, "Ř* != Ř"});
                if (!(minus(f) == d2 * t.x.at(s - 1, n, k))) p2.violations.push_back({{s, n, k}, "(-) half mismatch"});
                Elem rhs = (pic.constant(Coef(abc.B)) - avg) * plus(t.x.at(s - 1, n, k));
                if (t.x.contains(s - 1, n + 1)) rhs += plus(t.x.at(s - 1, n + 1, k - 1)) * Coef(abc.A);
                if (t.x.contains(s - 1, n - 1)) rhs += plus(t.x.at(s - 1, n - 1, k + 1)) * Coef(abc.C);
                if (s >= 1) rhs += quarter_sq * t.x.at(s - 2, n, k);
                if (!(f == rhs)) p3.violations.push_back({{s, n, k}, "(+) reconstruction mismatch"});
            }
        }
    }
    return {p2, p3, sc};
}

/// R^[M]_{n,k} = 0 for -M-1 <= n <= -1, -n <= k <= M+1.
template <class S>
TableCheck check_vanishing_region(const RTable<S>& t) {
    const int M = t.M();
    TableCheck out{"vanishing-region", 0, {}};
    for (long n = -M - 1; n <= -1; ++n) {
        if (!t.contains(M, n)) throw ConfigurationError("table window does not cover n = " + std::to_string(n));
        for (long k = -n; k <= M + 1; ++k) {
            ++out.checked;
            if (!t.at(M, n, static_cast<int>(k)).is_zero())
                out.violations.push_back({{M, n, static_cast<int>(k)}, "expected the zero polynomial"});
        }
    }
    return out;
}

/// deg R^[s]_{n,k} <= s+1-|k| everywhere, with equality for n >= s+1.
template <class S>
TableCheck check_degree_law(const RTable<S>& t) {
    TableCheck out{"degree-law", 0, {}};
    for (int s = 0; s <= t.M(); ++s)
        for (long n = t.level_lo(s); n <= t.level_hi(s); ++n)
            for (int k = -s - 1; k <= s + 1; ++k) {
                ++out.checked;
                long want = s + 1 - std::abs(k);
                long got = t.at(s, n, k).degree();
                if (got > want || (n >= s + 1 && got != want))
                    out.violations.push_back({{s, n, k}, "degree " + std::to_string(got) + ", expected " +
                                                             std::to_string(want)});
            }
    return out;
}

}  // namespace miop
