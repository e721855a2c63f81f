#pragma once

// Float backend for Laguerre and Jacobi: deformed weights, norms and
// orthogonality by tanh-sinh / exp-sinh quadrature in long double.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "miop/errors.hpp"
#include "miop/families.hpp"
#include "miop/multiindex.hpp"
#include "miop/poly.hpp"

namespace miop {

/// Float mirror of an exact polynomial, evaluated by compensated Horner.
template <class T = long double>
class FloatPoly {
public:
    FloatPoly() = default;
    explicit FloatPoly(const Poly<Rational>& p) {
        coeffs_.reserve(p.size());
        for (const auto& c : p.coeffs()) coeffs_.push_back(c.template convert_to<T>());
    }

    const std::vector<T>& coeffs() const { return coeffs_; }
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

    /// Horner with error-free transformations; about twice working precision.
    T operator()(T x) const {
        if (coeffs_.empty()) return T(0);
        T s = coeffs_.back();
        T c = 0;
        for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
            T p = s * x;
            T pe = std::fma(s, x, -p);
            T t = p + coeffs_[i];
            T z = t - p;
            T se = (p - (t - z)) + (coeffs_[i] - z);
            s = t;
            c = c * x + (pe + se);
        }
        return s + c;
    }

private:
    std::vector<T> coeffs_;
};

// ---------------------------------------------------------------------------
// Sturm sequences

namespace detail {

inline int sign_at(const Poly<Rational>& p, const Rational& x) {
    Rational v = p.evaluate(x);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

inline int sign_at_infinity(const Poly<Rational>& p, bool positive) {
    if (p.is_zero()) return 0;
    int s = p.leading() > 0 ? 1 : -1;
    if (!positive && p.degree() % 2 == 1) s = -s;
    return s;
}

inline int sign_changes(const std::vector<int>& signs) {
    int changes = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace detail

inline std::vector<Poly<Rational>> sturm_sequence(const Poly<Rational>& p) {
    std::vector<Poly<Rational>> seq{p, derivative(p)};
    while (!seq.back().is_zero()) {
        auto r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    if (seq.back().is_zero()) seq.pop_back();
    return seq;
}

/// Distinct real roots in (a, b]; nullopt bounds mean -inf / +inf.
inline long count_real_roots(const Poly<Rational>& p, std::optional<Rational> a, std::optional<Rational> b) {
    if (p.is_zero()) throw ConfigurationError("root count of the zero polynomial");
    if (p.degree() == 0) return 0;
    auto seq = sturm_sequence(p);
    auto signs = [&](const std::optional<Rational>& x, bool positive) {
        std::vector<int> s;
        for (const auto& q : seq) s.push_back(x ? detail::sign_at(q, *x) : detail::sign_at_infinity(q, positive));
        return detail::sign_changes(s);
    };
    return signs(a, false) - signs(b, true);
}

// ---------------------------------------------------------------------------
// spectral data

/// h_n(lambda) for L and J.
inline long double norm_h(const FamilyParams& fp, long n) {
    const long double half = 0.5L;
    const long double nn = static_cast<long double>(n);
    const long double g = fp.g().convert_to<long double>();
    switch (fp.family()) {
        case Family::L: return std::exp(std::lgamma(nn + g + half) - std::lgamma(nn + 1)) / 2;
        case Family::J: {
            const long double h = fp.h().convert_to<long double>();
            long double lg = std::lgamma(nn + g + half) + std::lgamma(nn + h + half) - std::lgamma(nn + 1) -
                             std::lgamma(nn + g + h);
            return std::exp(lg) / (2 * (2 * nn + g + h));
        }
        default: throw ConfigurationError("norms are provided for L and J only");
    }
}

struct QuadratureSpec {
    /// Target relative error handed to the integrator.
    long double tolerance = 1e-15L;
    std::size_t max_refinements = 15;
    /// Accept when the integrator's error estimate is below this fraction of |integral| + scale.
    long double accept = 1e-11L;
};

/// Psi_D(x)^2 = c_F^{2M} phi_0(x; lambda^{[M_I,M_II]})^2 / Xi_D(eta(x))^2.
class Weight {
public:
    Weight(const FamilyParams& fp, const IndexSet& D) : Weight(fp, D, build_LJ(fp, D, -1).Xi) {}

    Weight(const FamilyParams& fp, const IndexSet& D, const Poly<Rational>& xi)
        : fp_(fp), D_(D), xi_exact_(xi), xi_(xi) {
        if (fp.family() != Family::L && fp.family() != Family::J)
            throw ConfigurationError("the float backend covers the L and J families");
        auto dp = deformed_params(fp, D.M_I(), D.M_II());
        g_ = dp.g().convert_to<long double>();
        if (fp.family() == Family::J) h_ = dp.h().convert_to<long double>();
        long double cf = fp.family() == Family::L ? 2.0L : -4.0L;
        c2m_ = std::pow(cf, 2 * D.M());
        check_poles();
    }

    const Poly<Rational>& xi() const { return xi_exact_; }

    long double lower() const { return 0; }
    /// +inf for L, pi/2 for J.
    long double upper() const {
        return fp_.family() == Family::L ? std::numeric_limits<long double>::infinity()
                                         : std::acos(-1.0L) / 2;
    }

    long double eta(long double x) const { return fp_.family() == Family::L ? x * x : std::cos(2 * x); }

    long double operator()(long double x) const {
        if (!(x > lower() && x < upper()))
            throw DomainError("x = " + std::to_string(static_cast<double>(x)) + " outside the weight interval");
        return unchecked(x);
    }

    /// Integrand helper; no interval check (quadrature nodes are interior).
    long double unchecked(long double x) const {
        long double phi2;
        if (fp_.family() == Family::L)
            phi2 = std::exp(-x * x + 2 * g_ * std::log(x));
        else
            phi2 = std::exp(2 * g_ * std::log(std::sin(x)) + 2 * h_ * std::log(std::cos(x)));
        // far tail: the Gaussian factor has already underflowed
        if (phi2 == 0) return 0;
        long double xi = xi_(eta(x));
        return c2m_ * phi2 / (xi * xi);
    }

private:
    void check_poles() const {
        if (xi_exact_.degree() <= 0) return;
        long roots = 0;
        bool endpoint = false;
        if (fp_.family() == Family::L) {
            endpoint = detail::sign_at(xi_exact_, Rational(0)) == 0;
            roots = count_real_roots(xi_exact_, Rational(0), std::nullopt);
        } else {
            endpoint = detail::sign_at(xi_exact_, Rational(-1)) == 0 || detail::sign_at(xi_exact_, Rational(1)) == 0;
            roots = count_real_roots(xi_exact_, Rational(-1), Rational(1));
        }
        if (roots > 0 || endpoint)
            throw PoleEncountered("Xi_D for D=" + D_.to_string() + " vanishes on the orthogonality interval (" +
                                  std::to_string(roots) + " interior root(s)" +
                                  (endpoint ? ", endpoint root" : "") + ")");
    }

    FamilyParams fp_;
    IndexSet D_;
    Poly<Rational> xi_exact_;
    FloatPoly<long double> xi_;
    long double g_ = 0;
    long double h_ = 0;
    long double c2m_ = 1;
};

struct QuadResult {
    long double value = 0;
    long double error = 0;
    long double l1 = 0;
    std::size_t levels = 0;
};

/// Integral of w(x) f(x) over the weight interval.
template <class F>
QuadResult integrate(const Weight& w, F&& f, const QuadratureSpec& spec = {}) {
    QuadResult r;
    auto integrand = [&](long double x) -> long double {
        long double v = w.unchecked(x);
        if (v == 0) return 0;
        return v * f(x);
    };
    if (std::isinf(w.upper())) {
        boost::math::quadrature::exp_sinh<long double> q(spec.max_refinements);
        r.value = q.integrate(integrand, spec.tolerance, &r.error, &r.l1, &r.levels);
    } else {
        boost::math::quadrature::tanh_sinh<long double> q(spec.max_refinements);
        r.value = q.integrate(integrand, w.lower(), w.upper(), spec.tolerance, &r.error, &r.l1, &r.levels);
    }
    if (!std::isfinite(r.value)) throw NonConvergent("quadrature produced a non-finite value");
    return r;
}

struct OrthogonalityResult {
    long n = 0;
    long m = 0;
    long double integral = 0;
    long double expected = 0;
    long double error_estimate = 0;
    /// |integral - expected| / scale, scale = expected (diagonal) or sqrt(diag_n diag_m) (off-diagonal).
    long double rel_err = 0;
};

/// prod_j (E_n - E~_{d_j}) h_n
inline long double expected_norm(const FamilyParams& fp, const IndexSet& D, long n) {
    long double prod = 1;
    Rational En = energy(fp, n);
    for (const auto& e : D.entries()) prod *= (En - virtual_energy(fp, e)).convert_to<long double>();
    return prod * norm_h(fp, n);
}

/// Integral of Psi_D^2 P_{D,n} P_{D,m} against the norm formula.
inline OrthogonalityResult orthogonality_check(const Weight& w, const MultiIndexedPair<Rational>& pair, long n, long m,
                                               const QuadratureSpec& spec = {}) {
    if (!(w.xi() == pair.Xi)) throw ConfigurationError("weight and polynomial pair disagree on Xi_D");
    FloatPoly<long double> pn(pair.at(n));
    FloatPoly<long double> pm(pair.at(m));
    OrthogonalityResult out{n, m};
    auto r = integrate(w, [&](long double x) { return pn(w.eta(x)) * pm(w.eta(x)); }, spec);
    out.integral = r.value;
    out.error_estimate = r.error;
    long double scale;
    if (n == m) {
        out.expected = expected_norm(pair.params, pair.D, n);
        scale = std::fabs(out.expected);
    } else {
        out.expected = 0;
        scale = std::sqrt(std::fabs(expected_norm(pair.params, pair.D, n) * expected_norm(pair.params, pair.D, m)));
    }
    if (r.error > spec.accept * (std::fabs(r.value) + scale))
        throw NonConvergent("quadrature error estimate " + std::to_string(static_cast<double>(r.error)) +
                            " exceeds the acceptance threshold for (n, m) = (" + std::to_string(n) + ", " +
                            std::to_string(m) + ")");
    out.rel_err = std::fabs(out.integral - out.expected) / scale;
    return out;
}

}  // namespace miop
