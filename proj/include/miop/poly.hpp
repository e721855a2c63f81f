#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "miop/errors.hpp"
#include "miop/scalar.hpp"

namespace miop {

enum class Variable { eta, x };

inline const char* to_string(Variable v) { return v == Variable::eta ? "eta" : "x"; }

/// Dense univariate polynomial, coefficient i multiplies var^i. Always kept
/// canonical: no trailing zero coefficients, the zero polynomial is empty.
template <class S>
class Poly {
public:
    using Scalar = S;

    Poly() = default;
    explicit Poly(Variable v) : var_(v) {}
    Poly(std::vector<S> coeffs, Variable v = Variable::eta) : coeffs_(std::move(coeffs)), var_(v) {
        trim();
    }
    Poly(std::initializer_list<S> coeffs, Variable v = Variable::eta) : coeffs_(coeffs), var_(v) {
        trim();
    }

    static Poly constant(S c, Variable v = Variable::eta) { return Poly(std::vector<S>{std::move(c)}, v); }
    /// c * var^k
    static Poly monomial(S c, std::size_t k, Variable v = Variable::eta) {
        std::vector<S> cs(k + 1, S(0));
        cs[k] = std::move(c);
        return Poly(std::move(cs), v);
    }
    static Poly variable(Variable v = Variable::eta) { return monomial(S(1), 1, v); }

    Variable var() const { return var_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// -1 stands in for -infinity on the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    std::size_t size() const { return coeffs_.size(); }
    const std::vector<S>& coeffs() const { return coeffs_; }
    const S& operator[](std::size_t i) const { return coeffs_[i]; }
    S coeff(long i) const {
        if (i < 0 || i >= static_cast<long>(coeffs_.size())) return S(0);
        return coeffs_[static_cast<std::size_t>(i)];
    }
    const S& leading() const {
        if (coeffs_.empty()) throw ConfigurationError("leading coefficient of the zero polynomial");
        return coeffs_.back();
    }
    bool is_constant() const { return coeffs_.size() <= 1; }

    Poly operator-() const {
        Poly r(*this);
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        check_compatible(o);
        if (is_zero()) var_ = o.var_;
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), S(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_compatible(o);
        if (is_zero()) var_ = o.var_;
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), S(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly& operator*=(const S& c) {
        if (miop::is_zero(c)) {
            coeffs_.clear();
            return *this;
        }
        for (auto& a : coeffs_) a *= c;
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_compatible(b);
        Poly r(a.var_);
        if (a.is_zero() || b.is_zero()) return r;
        r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, S(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (miop::is_zero(a.coeffs_[i])) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        r.trim();
        return r;
    }
    friend Poly operator*(Poly a, const S& c) { return a *= c; }
    friend Poly operator*(const S& c, Poly a) { return a *= c; }
    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.var_ == b.var_ && a.coeffs_ == b.coeffs_;
    }

    /// Multiply by var^k.
    Poly shifted_up(std::size_t k) const {
        if (is_zero()) return *this;
        std::vector<S> cs(k, S(0));
        cs.insert(cs.end(), coeffs_.begin(), coeffs_.end());
        return Poly(std::move(cs), var_);
    }

    /// Number of leading-order zero coefficients (the multiplicity of the root 0).
    std::size_t low_order_zeros() const {
        std::size_t k = 0;
        while (k < coeffs_.size() && miop::is_zero(coeffs_[k])) ++k;
        return k;
    }

    template <class T>
    T evaluate(const T& at) const {
        T acc(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * at + T(coeffs_[i]);
        return acc;
    }

    template <class T>
    Poly<T> cast() const {
        std::vector<T> cs;
        cs.reserve(coeffs_.size());
        for (const auto& c : coeffs_) cs.emplace_back(c);
        return Poly<T>(std::move(cs), var_);
    }

    Poly with_variable(Variable v) const {
        Poly r(*this);
        r.var_ = v;
        return r;
    }

private:
    void trim() {
        while (!coeffs_.empty() && miop::is_zero(coeffs_.back())) coeffs_.pop_back();
    }
    void check_compatible(const Poly& o) const {
        if (var_ != o.var_ && !is_zero() && !o.is_zero())
            throw ConfigurationError(std::string("variable mismatch: ") + to_string(var_) + " vs " +
                                     to_string(o.var_));
    }

    std::vector<S> coeffs_;
    Variable var_ = Variable::eta;
};

template <class S>
bool is_zero(const Poly<S>& p) {
    return p.is_zero();
}

/// Formal derivative with respect to the polynomial's own variable.
template <class S>
Poly<S> derivative(const Poly<S>& p) {
    if (p.size() <= 1) return Poly<S>(p.var());
    std::vector<S> cs;
    cs.reserve(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) cs.push_back(p[i] * S(static_cast<int>(i)));
    return Poly<S>(std::move(cs), p.var());
}

template <class S>
Poly<S> conj(const Poly<S>& p) {
    std::vector<S> cs;
    cs.reserve(p.size());
    for (const auto& c : p.coeffs()) cs.push_back(conj(c));
    return Poly<S>(std::move(cs), p.var());
}

/// Quotient and remainder of polynomial long division over a field.
template <class S>
std::pair<Poly<S>, Poly<S>> divmod(const Poly<S>& num, const Poly<S>& den) {
    if (den.is_zero()) throw InexactDivision("polynomial division by zero");
    if (num.degree() < den.degree()) return {Poly<S>(num.var()), num};
    std::vector<S> rem = num.coeffs();
    const std::size_t dn = den.size();
    std::vector<S> quo(num.size() - dn + 1, S(0));
    const S& lead = den.leading();
    const bool monic = lead == S(1);
    for (std::size_t i = quo.size(); i-- > 0;) {
        S c = rem[i + dn - 1];
        if (is_zero(c)) continue;
        if (!monic) c /= lead;
        for (std::size_t j = 0; j < dn; ++j) rem[i + j] -= c * den[j];
        quo[i] = std::move(c);
    }
    rem.resize(dn - 1);
    return {Poly<S>(std::move(quo), num.var()), Poly<S>(std::move(rem), num.var())};
}

/// q with q*den == num, or InexactDivision.
template <class S>
Poly<S> exact_div(const Poly<S>& num, const Poly<S>& den) {
    auto [q, r] = divmod(num, den);
    if (!r.is_zero())
        throw InexactDivision("nonzero remainder of degree " + std::to_string(r.degree()) +
                              " dividing a degree " + std::to_string(num.degree()) + " polynomial by degree " +
                              std::to_string(den.degree()));
    return q;
}

/// p(inner(var)), Horner over polynomials.
template <class S>
Poly<S> compose(const Poly<S>& p, const Poly<S>& inner) {
    Poly<S> acc(inner.var());
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * inner + Poly<S>::constant(p[i], inner.var());
    return acc;
}

/// p(var + c), a Taylor shift.
template <class S>
Poly<S> taylor_shift(const Poly<S>& p, const S& c) {
    if (is_zero(c) || p.size() <= 1) return p;
    std::vector<S> a = p.coeffs();
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;) a[j] += c * a[j + 1];
    return Poly<S>(std::move(a), p.var());
}

/// Multiplies every coefficient i by factor^i, i.e. p(factor * var).
template <class S>
Poly<S> scale_variable(const Poly<S>& p, const S& factor) {
    std::vector<S> cs = p.coeffs();
    S f(1);
    for (auto& c : cs) {
        c *= f;
        f *= factor;
    }
    return Poly<S>(std::move(cs), p.var());
}

template <class S>
Poly<S> pow(const Poly<S>& p, unsigned e) {
    Poly<S> r = Poly<S>::constant(S(1), p.var());
    Poly<S> b = p;
    while (e > 0) {
        if (e & 1u) r = r * b;
        e >>= 1u;
        if (e) b = b * b;
    }
    return r;
}

template <class S>
std::vector<std::string> coeff_strings(const Poly<S>& p) {
    std::vector<std::string> out;
    out.reserve(p.size());
    for (const auto& c : p.coeffs()) out.push_back(to_string(c));
    return out;
}

template <class S>
std::string to_string(const Poly<S>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const char* v = to_string(p.var());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (is_zero(p[i])) continue;
        if (!out.empty()) out += " + ";
        out += "(" + to_string(p[i]) + ")";
        if (i >= 1) out += std::string("*") + v;
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

/// Converts coefficients to rationals; ReductionFailure if any is not rational.
template <class S>
Poly<Rational> to_rational_poly(const Poly<S>& p) {
    std::vector<Rational> cs;
    cs.reserve(p.size());
    for (const auto& c : p.coeffs()) cs.push_back(to_rational(c));
    return Poly<Rational>(std::move(cs), p.var());
}

}  // namespace miop
