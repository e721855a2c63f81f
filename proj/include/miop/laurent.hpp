#pragma once

#include <string>
#include <utility>
#include <vector>

#include "miop/errors.hpp"
#include "miop/poly.hpp"
#include "miop/scalar.hpp"

namespace miop {

/// Laurent polynomial in z = e^{ix}: sum_k c_k z^k for k in [lo, lo + size).
/// Canonical: nonzero end coefficients, zero is empty with lo = 0.
template <class S>
class LaurentPoly {
public:
    using Scalar = S;

    LaurentPoly() = default;
    LaurentPoly(long lo, std::vector<S> coeffs) : lo_(lo), coeffs_(std::move(coeffs)) { trim(); }

    static LaurentPoly constant(S c) { return LaurentPoly(0, {std::move(c)}); }
    static LaurentPoly monomial(S c, long k) { return LaurentPoly(k, {std::move(c)}); }

    bool is_zero() const { return coeffs_.empty(); }
    long lo() const { return lo_; }
    long hi() const { return lo_ + static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<S>& coeffs() const { return coeffs_; }
    S coeff(long k) const {
        if (is_zero() || k < lo_ || k > hi()) return S(0);
        return coeffs_[static_cast<std::size_t>(k - lo_)];
    }

    LaurentPoly operator-() const {
        LaurentPoly r(*this);
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& o) { return accumulate(o, false); }
    LaurentPoly& operator-=(const LaurentPoly& o) { return accumulate(o, true); }
    LaurentPoly& operator*=(const S& c) {
        if (miop::is_zero(c)) {
            coeffs_.clear();
            lo_ = 0;
            return *this;
        }
        for (auto& a : coeffs_) a *= c;
        trim();
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, const S& c) { return a *= c; }
    friend LaurentPoly operator*(const S& c, LaurentPoly a) { return a *= c; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<S> cs(a.coeffs_.size() + b.coeffs_.size() - 1, S(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (miop::is_zero(a.coeffs_[i])) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) cs[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return LaurentPoly(a.lo_ + b.lo_, std::move(cs));
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.lo_ == b.lo_ && a.coeffs_ == b.coeffs_;
    }

    /// The ordinary polynomial z^{-lo} * p.
    Poly<S> stripped() const { return Poly<S>(coeffs_, Variable::x); }

private:
    LaurentPoly& accumulate(const LaurentPoly& o, bool subtract) {
        if (o.is_zero()) return *this;
        if (is_zero()) {
            *this = subtract ? -o : o;
            return *this;
        }
        long nlo = std::min(lo_, o.lo_);
        long nhi = std::max(hi(), o.hi());
        if (nlo < lo_) coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(lo_ - nlo), S(0));
        lo_ = nlo;
        coeffs_.resize(static_cast<std::size_t>(nhi - nlo + 1), S(0));
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
            auto& dst = coeffs_[static_cast<std::size_t>(o.lo_ - lo_) + j];
            if (subtract)
                dst -= o.coeffs_[j];
            else
                dst += o.coeffs_[j];
        }
        trim();
        return *this;
    }
    void trim() {
        while (!coeffs_.empty() && miop::is_zero(coeffs_.back())) coeffs_.pop_back();
        std::size_t k = 0;
        while (k < coeffs_.size() && miop::is_zero(coeffs_[k])) ++k;
        if (k == coeffs_.size()) {
            coeffs_.clear();
            lo_ = 0;
            return;
        }
        if (k > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(k));
            lo_ += static_cast<long>(k);
        }
    }

    long lo_ = 0;
    std::vector<S> coeffs_;
};

template <class S>
bool is_zero(const LaurentPoly<S>& p) {
    return p.is_zero();
}

/// z -> 1/z.
template <class S>
LaurentPoly<S> invert_variable(const LaurentPoly<S>& p) {
    if (p.is_zero()) return p;
    std::vector<S> cs(p.coeffs().rbegin(), p.coeffs().rend());
    return LaurentPoly<S>(-p.hi(), std::move(cs));
}

/// The *-operation for functions of x: conjugate coefficients and z -> 1/z
/// (since (e^{ikx})^* = e^{-ikx}).
template <class S>
LaurentPoly<S> star(const LaurentPoly<S>& p) {
    auto r = invert_variable(p);
    std::vector<S> cs;
    cs.reserve(r.coeffs().size());
    for (const auto& c : r.coeffs()) cs.push_back(conj(c));
    return LaurentPoly<S>(r.lo(), std::move(cs));
}

/// z -> z * q^c for half-integer c, given as c = half_units / 2.
inline LaurentPoly<SqrtQRational> laurent_shift(const LaurentPoly<SqrtQRational>& p, long half_units,
                                                const QContextPtr& ctx) {
    if (half_units == 0 || p.is_zero()) return p;
    std::vector<SqrtQRational> cs = p.coeffs();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        long k = p.lo() + static_cast<long>(i);
        cs[i] *= SqrtQRational::q_half_power(ctx, k * half_units);
    }
    return LaurentPoly<SqrtQRational>(p.lo(), std::move(cs));
}

/// Exact quotient num / den in the Laurent ring, or InexactDivision.
template <class S>
LaurentPoly<S> exact_div(const LaurentPoly<S>& num, const LaurentPoly<S>& den) {
    if (den.is_zero()) throw InexactDivision("Laurent division by zero");
    if (num.is_zero()) return {};
    auto q = exact_div(num.stripped(), den.stripped());
    return LaurentPoly<S>(num.lo() - den.lo(), q.coeffs());
}

template <class S>
std::string to_string(const LaurentPoly<S>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long k = p.lo(); k <= p.hi(); ++k) {
        auto c = p.coeff(k);
        if (is_zero(c)) continue;
        if (!out.empty()) out += " + ";
        out += "(" + to_string(c) + ")*z^" + std::to_string(k);
    }
    return out;
}

}  // namespace miop
