#pragma once

// The four classical families (Laguerre, Jacobi, Wilson, Askey-Wilson):
// parameters, three-term recurrence data, energies and virtual-state data.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "miop/errors.hpp"
#include "miop/poly.hpp"
#include "miop/scalar.hpp"

namespace miop {

enum class Family { L, J, W, AW };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::L: return "L";
        case Family::J: return "J";
        case Family::W: return "W";
        case Family::AW: return "AW";
    }
    return "?";
}

inline Family parse_family(const std::string& s) {
    if (s == "L") return Family::L;
    if (s == "J") return Family::J;
    if (s == "W") return Family::W;
    if (s == "AW") return Family::AW;
    throw ConfigurationError("unknown family '" + s + "' (expected L, J, W or AW)");
}

/// Virtual-state type.
enum class VType { I, II };

inline const char* to_string(VType t) { return t == VType::I ? "I" : "II"; }

class FamilyParams {
public:
    FamilyParams() = default;

    static FamilyParams laguerre(Rational g) { return FamilyParams(Family::L, {std::move(g)}, Rational(0)); }
    static FamilyParams jacobi(Rational g, Rational h) {
        return FamilyParams(Family::J, {std::move(g), std::move(h)}, Rational(0));
    }
    static FamilyParams wilson(std::array<Rational, 4> a) {
        return FamilyParams(Family::W, {a[0], a[1], a[2], a[3]}, Rational(0));
    }
    static FamilyParams askey_wilson(std::array<Rational, 4> a, Rational q) {
        return FamilyParams(Family::AW, {a[0], a[1], a[2], a[3]}, std::move(q));
    }

    Family family() const { return family_; }
    const std::vector<Rational>& lambda() const { return lambda_; }
    const Rational& g() const { return lambda_.at(0); }
    const Rational& h() const { return lambda_.at(1); }
    /// a_{i}, 1-based as in the usual Wilson/Askey-Wilson notation.
    const Rational& a(int i) const { return lambda_.at(static_cast<std::size_t>(i - 1)); }
    const Rational& q() const { return q_; }
    const QContextPtr& qctx() const { return qctx_; }
    bool is_xpicture_family() const { return family_ == Family::W || family_ == Family::AW; }

    /// Skip the physical range checks; algebraic identities hold for any generic values.
    bool algebraic_override() const { return override_; }
    FamilyParams with_override(bool on = true) const {
        FamilyParams f(*this);
        f.override_ = on;
        return f;
    }

    /// Physical parameter range (g > 1/2, |a_i| < 1, ...). Throws unless overridden.
    void validate() const {
        if (override_) return;
        const Rational half(1, 2);
        auto fail = [&](const std::string& why) {
            throw ConfigurationError(std::string("parameters outside the classical range for ") + to_string(family_) +
                                     ": " + why + " (use the algebraic override to bypass)");
        };
        switch (family_) {
            case Family::L:
                if (g() <= half) fail("g > 1/2 required");
                break;
            case Family::J:
                if (g() <= half || h() <= half) fail("g, h > 1/2 required");
                break;
            case Family::W:
                for (int i = 1; i <= 4; ++i)
                    if (a(i) <= 0) fail("a_i > 0 required");
                break;
            case Family::AW:
                if (q_ <= 0 || q_ >= 1) fail("0 < q < 1 required");
                for (int i = 1; i <= 4; ++i)
                    if (abs(a(i)) >= 1) fail("|a_i| < 1 required");
                break;
        }
    }

    Rational b1() const { return a(1) + a(2) + a(3) + a(4); }
    Rational b4() const { return a(1) * a(2) * a(3) * a(4); }

    std::map<std::string, std::string> lambda_strings() const {
        std::map<std::string, std::string> m;
        switch (family_) {
            case Family::L: m["g"] = to_string(g()); break;
            case Family::J:
                m["g"] = to_string(g());
                m["h"] = to_string(h());
                break;
            case Family::W:
            case Family::AW:
                for (int i = 1; i <= 4; ++i) m["a" + std::to_string(i)] = to_string(a(i));
                if (family_ == Family::AW) m["q"] = to_string(q_);
                break;
        }
        return m;
    }

    std::string describe() const {
        std::string s = to_string(family_);
        s += "(";
        bool first = true;
        for (const auto& [k, v] : lambda_strings()) {
            if (!first) s += ",";
            s += k + "=" + v;
            first = false;
        }
        return s + ")";
    }

    friend bool operator==(const FamilyParams& x, const FamilyParams& y) {
        return x.family_ == y.family_ && x.lambda_ == y.lambda_ && x.q_ == y.q_;
    }

private:
    FamilyParams(Family f, std::vector<Rational> lambda, Rational q)
        : family_(f), lambda_(std::move(lambda)), q_(std::move(q)) {
        if (family_ == Family::AW) {
            if (q_ <= 0) throw ConfigurationError("Askey-Wilson requires q > 0");
            qctx_ = QContext::make(q_);
        }
    }

    Family family_ = Family::L;
    std::vector<Rational> lambda_{Rational(3, 2)};
    Rational q_{0};
    QContextPtr qctx_;
    bool override_ = false;
};

// ---------------------------------------------------------------------------
// presets

/// Generic parameter values shipped with the library.
inline FamilyParams preset(Family f) {
    switch (f) {
        case Family::L: return FamilyParams::laguerre(Rational(7, 3));
        case Family::J: return FamilyParams::jacobi(Rational(7, 3), Rational(9, 4));
        case Family::W:
            return FamilyParams::wilson({Rational(3, 4), Rational(4, 5), Rational(6, 5), Rational(7, 5)});
        case Family::AW:
            return FamilyParams::askey_wilson({Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 5)},
                                              Rational(1, 4));
    }
    throw ConfigurationError("unknown family");
}

inline std::optional<FamilyParams> named_preset(const std::string& name) {
    if (name == "l-default") return preset(Family::L);
    if (name == "j-default") return preset(Family::J);
    if (name == "w-default") return preset(Family::W);
    if (name == "aw-default") return preset(Family::AW);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// three-term recurrence   A_n P_{n+1} + (B_n - eta) P_n + C_n P_{n-1} = 0

struct ThreeTerm {
    Rational A{0};
    Rational B{0};
    Rational C{0};
    friend bool operator==(const ThreeTerm&, const ThreeTerm&) = default;
};

namespace detail {

inline Rational checked_div(const Rational& num, const Rational& den, const FamilyParams& fp, long n,
                            const char* what) {
    if (den.is_zero())
        throw SingularCoefficient(std::string(what) + " has a vanishing denominator at n=" + std::to_string(n) +
                                  " for " + fp.describe());
    return num / den;
}

inline Rational qpow(const FamilyParams& fp, long e) { return pow_int(fp.q(), e); }

}  // namespace detail

/// Coefficients for the standard normalization P_0 = 1. Negative n gives
/// all zeros (A_{-1} = 0 is required; the other negative-n values are free).
inline ThreeTerm three_term(const FamilyParams& fp, long n) {
    if (n < 0) return {};
    using detail::checked_div;
    const Rational nn(n);
    const Rational half(1, 2);
    ThreeTerm t;
    switch (fp.family()) {
        case Family::L: {
            t.A = -(nn + 1);
            t.B = 2 * nn + fp.g() + half;
            t.C = -(nn + fp.g() - half);
            break;
        }
        case Family::J: {
            const Rational& g = fp.g();
            const Rational& h = fp.h();
            Rational s = 2 * nn + g + h;
            // (n + g + h) / (2n + g + h) is 1 at n = 0 whenever it is defined
            t.A = checked_div(2 * (nn + 1) * (nn + g + h), s * (s + 1), fp, n, "J A_n");
            t.B = checked_div((h - g) * (g + h - 1), (s - 1) * (s + 1), fp, n, "J B_n");
            t.C = checked_div(2 * (nn + g - half) * (nn + h - half), (s - 1) * s, fp, n, "J C_n");
            break;
        }
        case Family::W: {
            Rational b1 = fp.b1();
            Rational pairs_all = 1;
            for (int j = 1; j <= 4; ++j)
                for (int k = j + 1; k <= 4; ++k) pairs_all *= nn + fp.a(j) + fp.a(k) - 1;
            Rational pairs_234 = 1;
            for (int j = 2; j <= 4; ++j)
                for (int k = j + 1; k <= 4; ++k) pairs_234 *= nn + fp.a(j) + fp.a(k) - 1;
            Rational with_a1 = 1;
            for (int k = 2; k <= 4; ++k) with_a1 *= nn + fp.a(1) + fp.a(k);
            Rational d1 = (2 * nn + b1 - 1) * (2 * nn + b1);
            t.A = checked_div(-(nn + b1 - 1), d1, fp, n, "W A_n");
            Rational lower = n == 0 ? Rational(0)
                                    : checked_div(nn * pairs_234, (2 * nn + b1 - 2) * (2 * nn + b1 - 1), fp, n,
                                                  "W B_n");
            t.B = checked_div((nn + b1 - 1) * with_a1, d1, fp, n, "W B_n") + lower - fp.a(1) * fp.a(1);
            t.C = n == 0 ? Rational(0)
                         : checked_div(-nn * pairs_all, (2 * nn + b1 - 2) * (2 * nn + b1 - 1), fp, n, "W C_n");
            break;
        }
        case Family::AW: {
            using detail::qpow;
            Rational b4 = fp.b4();
            const Rational& a1 = fp.a(1);
            Rational up = 1 - b4 * qpow(fp, n - 1);
            Rational d_up = 2 * (1 - b4 * qpow(fp, 2 * n - 1)) * (1 - b4 * qpow(fp, 2 * n));
            t.A = checked_div(up, d_up, fp, n, "AW A_n");
            Rational with_a1 = 1;
            for (int k = 2; k <= 4; ++k) with_a1 *= 1 - a1 * fp.a(k) * qpow(fp, n);
            Rational head = (a1 + 1 / a1) / 2 - checked_div(up * with_a1, a1 * d_up, fp, n, "AW B_n");
            if (n == 0) {
                t.B = head;
                t.C = 0;
                break;
            }
            Rational d_dn = 2 * (1 - b4 * qpow(fp, 2 * n - 2)) * (1 - b4 * qpow(fp, 2 * n - 1));
            Rational pairs_all = 1;
            for (int j = 1; j <= 4; ++j)
                for (int k = j + 1; k <= 4; ++k) pairs_all *= 1 - fp.a(j) * fp.a(k) * qpow(fp, n - 1);
            Rational pairs_234 = 1;
            for (int j = 2; j <= 4; ++j)
                for (int k = j + 1; k <= 4; ++k) pairs_234 *= 1 - fp.a(j) * fp.a(k) * qpow(fp, n - 1);
            Rational one_minus_qn = 1 - qpow(fp, n);
            t.B = head - checked_div(a1 * one_minus_qn * pairs_234, d_dn, fp, n, "AW B_n");
            t.C = checked_div(one_minus_qn * pairs_all, d_dn, fp, n, "AW C_n");
            break;
        }
    }
    return t;
}

/// Three-term coefficients cached over an index window, with overrides so the
/// free negative-n values can be probed.
class ThreeTermTable {
public:
    ThreeTermTable(const FamilyParams& fp, long lo, long hi) : lo_(lo) {
        if (hi < lo) throw ConfigurationError("empty coefficient window");
        rows_.reserve(static_cast<std::size_t>(hi - lo + 1));
        for (long n = lo; n <= hi; ++n) rows_.push_back(three_term(fp, n));
    }

    long lo() const { return lo_; }
    long hi() const { return lo_ + static_cast<long>(rows_.size()) - 1; }

    const ThreeTerm& at(long n) const {
        if (n < lo_ || n > hi())
            throw ConfigurationError("three-term coefficient n=" + std::to_string(n) + " outside cached window");
        return rows_[static_cast<std::size_t>(n - lo_)];
    }
    void set(long n, ThreeTerm t) {
        if (n < lo_ || n > hi()) throw ConfigurationError("override outside cached window");
        rows_[static_cast<std::size_t>(n - lo_)] = std::move(t);
    }

private:
    long lo_;
    std::vector<ThreeTerm> rows_;
};

/// P_0..P_{n_max} from the three-term recurrence with P_0 = 1.
inline std::vector<Poly<Rational>> classical_polys(const FamilyParams& fp, long n_max) {
    std::vector<Poly<Rational>> out;
    if (n_max < 0) return out;
    out.push_back(Poly<Rational>::constant(Rational(1)));
    const auto eta = Poly<Rational>::variable();
    for (long n = 0; n < n_max; ++n) {
        ThreeTerm t = three_term(fp, n);
        if (t.A.is_zero())
            throw SingularCoefficient("A_" + std::to_string(n) + " = 0 for " + fp.describe() +
                                      "; the recurrence cannot be unrolled");
        Poly<Rational> rhs = (Poly<Rational>::constant(t.B) - eta) * out.back();
        if (n >= 1) rhs += out[static_cast<std::size_t>(n - 1)] * t.C;
        out.push_back(rhs * Rational(-1 / t.A));
    }
    return out;
}

/// P_n(eta; lambda); the zero polynomial for n < 0.
inline Poly<Rational> classical_poly(const FamilyParams& fp, long n) {
    if (n < 0) return Poly<Rational>{};
    return classical_polys(fp, n).back();
}

// ---------------------------------------------------------------------------
// energies, twists and shifts

inline Rational energy(const FamilyParams& fp, long n) {
    const Rational nn(n);
    switch (fp.family()) {
        case Family::L: return 4 * nn;
        case Family::J: return 4 * nn * (nn + fp.g() + fp.h());
        case Family::W: return nn * (nn + fp.b1() - 1);
        case Family::AW: return (pow_int(fp.q(), -n) - 1) * (1 - fp.b4() * pow_int(fp.q(), n - 1));
    }
    return 0;
}

struct VirtualState {
    VType type = VType::I;
    int degree = 0;
    friend bool operator==(const VirtualState&, const VirtualState&) = default;
};

/// t^I / t^II applied to lambda. Laguerre type I has no parameter twist
/// (its polynomial is P_v(-eta)); asking for it is an error.
inline FamilyParams twisted(const FamilyParams& fp, VType type) {
    const bool one = type == VType::I;
    switch (fp.family()) {
        case Family::L:
            if (one) throw ConfigurationError("Laguerre type I virtual states use eta -> -eta, not a twist");
            return FamilyParams::laguerre(1 - fp.g()).with_override();
        case Family::J:
            return (one ? FamilyParams::jacobi(fp.g(), 1 - fp.h()) : FamilyParams::jacobi(1 - fp.g(), fp.h()))
                .with_override();
        case Family::W: {
            std::array<Rational, 4> a{fp.a(1), fp.a(2), fp.a(3), fp.a(4)};
            int first = one ? 0 : 2;
            a[first] = 1 - a[first];
            a[first + 1] = 1 - a[first + 1];
            return FamilyParams::wilson(a).with_override();
        }
        case Family::AW: {
            std::array<Rational, 4> a{fp.a(1), fp.a(2), fp.a(3), fp.a(4)};
            int first = one ? 0 : 2;
            a[first] = fp.q() / a[first];
            a[first + 1] = fp.q() / a[first + 1];
            return FamilyParams::askey_wilson(a, fp.q()).with_override();
        }
    }
    throw ConfigurationError("unknown family");
}

/// xi_v(eta; lambda) for the given virtual state.
inline Poly<Rational> virtual_poly(const FamilyParams& fp, const VirtualState& vs) {
    if (vs.degree < 0) throw ConfigurationError("virtual-state degree must be non-negative");
    if (fp.family() == Family::L && vs.type == VType::I) {
        auto p = classical_poly(fp, vs.degree);
        return scale_variable(p, Rational(-1));
    }
    return classical_poly(twisted(fp, vs.type), vs.degree);
}

inline Rational virtual_energy(const FamilyParams& fp, const VirtualState& vs) {
    const Rational v(vs.degree);
    const Rational half(1, 2);
    const bool one = vs.type == VType::I;
    switch (fp.family()) {
        case Family::L: return one ? -4 * (fp.g() + v + half) : -4 * (fp.g() - v - half);
        case Family::J:
            return one ? -4 * (fp.g() + v + half) * (fp.h() - v - half)
                       : -4 * (fp.g() - v - half) * (fp.h() + v + half);
        case Family::W: {
            Rational s12 = fp.a(1) + fp.a(2);
            Rational s34 = fp.a(3) + fp.a(4);
            return one ? -(s12 - v - 1) * (s34 + v) : -(s34 - v - 1) * (s12 + v);
        }
        case Family::AW: {
            Rational p12 = fp.a(1) * fp.a(2);
            Rational p34 = fp.a(3) * fp.a(4);
            const Rational& q = fp.q();
            long d = vs.degree;
            return one ? -(1 - p12 * pow_int(q, -d - 1)) * (1 - p34 * pow_int(q, d))
                       : -(1 - p34 * pow_int(q, -d - 1)) * (1 - p12 * pow_int(q, d));
        }
    }
    return 0;
}

namespace detail {

/// a * q^{half_units/2}, which must be rational.
inline Rational aw_scaled(const FamilyParams& fp, const Rational& a, long half_units) {
    auto f = SqrtQRational::q_half_power(fp.qctx(), half_units);
    if (!f.is_rational())
        throw ConfigurationError("parameter shift by a half-integer power of q=" + to_string(fp.q()) +
                                 " is not rational; choose q a rational square");
    return a * f.to_rational();
}

}  // namespace detail

/// lambda + delta (delta = 1, (1,1), (1/2,...) or q^{1/2} scaling).
inline FamilyParams shifted(const FamilyParams& fp, int times = 1) {
    FamilyParams out;
    switch (fp.family()) {
        case Family::L: out = FamilyParams::laguerre(fp.g() + times); break;
        case Family::J: out = FamilyParams::jacobi(fp.g() + times, fp.h() + times); break;
        case Family::W: {
            Rational d(times, 2);
            out = FamilyParams::wilson({fp.a(1) + d, fp.a(2) + d, fp.a(3) + d, fp.a(4) + d});
            break;
        }
        case Family::AW: {
            std::array<Rational, 4> a;
            for (int i = 0; i < 4; ++i) a[static_cast<std::size_t>(i)] = detail::aw_scaled(fp, fp.a(i + 1), times);
            out = FamilyParams::askey_wilson(a, fp.q());
            break;
        }
    }
    return out.with_override(fp.algebraic_override());
}

/// lambda^{[M_I, M_II]} = lambda + M_I * delta~_I + M_II * delta~_II.
inline FamilyParams deformed_params(const FamilyParams& fp, int m1, int m2) {
    switch (fp.family()) {
        case Family::L: return FamilyParams::laguerre(fp.g() + m1 - m2).with_override();
        case Family::J: return FamilyParams::jacobi(fp.g() + m1 - m2, fp.h() - m1 + m2).with_override();
        case Family::W: {
            Rational d(m2 - m1, 2);
            return FamilyParams::wilson({fp.a(1) + d, fp.a(2) + d, fp.a(3) - d, fp.a(4) - d}).with_override();
        }
        case Family::AW: {
            long e = m2 - m1;
            return FamilyParams::askey_wilson({detail::aw_scaled(fp, fp.a(1), e), detail::aw_scaled(fp, fp.a(2), e),
                                               detail::aw_scaled(fp, fp.a(3), -e),
                                               detail::aw_scaled(fp, fp.a(4), -e)},
                                              fp.q())
                .with_override();
        }
    }
    throw ConfigurationError("unknown family");
}

}  // namespace miop
