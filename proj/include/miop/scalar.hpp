#pragma once

// Exact scalar towers: Rational < GaussianRational < SqrtQRational.
//
// Every polynomial coefficient in the library lives in one of these types.
// Laguerre/Jacobi work over plain Rational; the Wilson x-picture needs the
// Gaussian rationals (shifts x -> x + i c); the Askey-Wilson z-picture also
// needs sqrt(q) for half-integer powers of q.

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "miop/errors.hpp"

namespace miop {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

// ---------------------------------------------------------------------------
// Rational helpers

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline Rational conj(const Rational& r) { return r; }
inline bool is_real(const Rational&) { return true; }

inline bool is_integer(const Rational& r) {
    return boost::multiprecision::denominator(r) == 1;
}

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == '\n'; };
    while (!s.empty() && is_sep(s.back())) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && is_sep(s[b])) ++b;
    s = s.substr(b);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    if (s.empty()) throw ConfigurationError("empty rational literal");
    auto slash = s.find('/');
    auto digits_ok = [](std::string_view d, bool allow_sign) {
        if (d.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && d[0] == '-') i = 1;
        if (i == d.size()) return false;
        for (; i < d.size(); ++i)
            if (d[i] < '0' || d[i] > '9') return false;
        return true;
    };
    std::string_view sv(s);
    if (slash == std::string::npos) {
        if (!digits_ok(sv, true)) throw ConfigurationError("bad rational literal '" + s + "'");
        return Rational(Integer(s));
    }
    auto num = sv.substr(0, slash);
    auto den = sv.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
        throw ConfigurationError("bad rational literal '" + s + "'");
    Integer d{std::string(den)};
    if (d == 0) throw ConfigurationError("zero denominator in '" + s + "'");
    return Rational(Integer(std::string(num)), d);
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational pow_int(const Rational& base, long e) {
    if (e < 0) {
        if (is_zero(base)) throw SingularCoefficient("zero raised to a negative power");
        return pow_int(Rational(1) / base, -e);
    }
    Rational result = 1;
    Rational b = base;
    while (e > 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

inline std::optional<Integer> integer_sqrt_exact(const Integer& n) {
    if (n < 0) return std::nullopt;
    if (mpz_perfect_square_p(n.backend().data()) == 0) return std::nullopt;
    Integer r;
    mpz_sqrt(r.backend().data(), n.backend().data());
    return r;
}

/// Square root of a non-negative rational if it is a rational square.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
    auto n = integer_sqrt_exact(boost::multiprecision::numerator(r));
    auto d = integer_sqrt_exact(boost::multiprecision::denominator(r));
    if (!n || !d) return std::nullopt;
    return Rational(*n, *d);
}

// ---------------------------------------------------------------------------
// GaussianRational

class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(int v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        if (!o.im_.is_zero()) im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        if (!o.im_.is_zero()) im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        if (im_.is_zero() && o.im_.is_zero()) {
            re_ *= o.re_;
        } else if (o.im_.is_zero()) {
            re_ *= o.re_;
            im_ *= o.re_;
        } else if (im_.is_zero()) {
            im_ = re_ * o.im_;
            re_ *= o.re_;
        } else {
            Rational r = re_ * o.re_ - im_ * o.im_;
            im_ = re_ * o.im_ + im_ * o.re_;
            re_ = std::move(r);
        }
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw InexactDivision("division by zero GaussianRational");
        if (o.im_.is_zero()) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        Rational n = o.norm();
        *this *= o.conj();
        re_ /= n;
        im_ /= n;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

inline bool is_zero(const GaussianRational& g) { return g.is_zero(); }
inline GaussianRational conj(const GaussianRational& g) { return g.conj(); }
inline bool is_real(const GaussianRational& g) { return g.is_real(); }

inline std::string to_string(const GaussianRational& g) {
    if (g.im().is_zero()) return to_string(g.re());
    std::string im = to_string(g.im()) + "*i";
    if (g.re().is_zero()) return im;
    if (g.im() < 0) return to_string(g.re()) + im;
    return to_string(g.re()) + "+" + im;
}

inline GaussianRational parse_gaussian(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s.push_back(c);
    if (s.size() < 2 || s.substr(s.size() - 2) != "*i") return {parse_rational(s)};
    std::string body = s.substr(0, s.size() - 2);
    // split at the last sign that is not the leading one
    std::size_t cut = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if (body[i] == '+' || body[i] == '-') {
            cut = i;
            break;
        }
    }
    if (cut == std::string::npos) return {Rational(0), parse_rational(body)};
    return {parse_rational(body.substr(0, cut)), parse_rational(body.substr(cut))};
}

// ---------------------------------------------------------------------------
// SqrtQRational: a + b*sqrt(q) with a, b Gaussian rationals, q > 0 fixed.

/// Shared description of the adjoined root. When q is a rational square the
/// root is folded into the rational part and b stays zero.
struct QContext {
    Rational q;
    std::optional<Rational> root;

    static std::shared_ptr<const QContext> make(const Rational& q) {
        if (q <= 0) throw ConfigurationError("sqrt(q) requires q > 0");
        auto ctx = std::make_shared<QContext>();
        ctx->q = q;
        ctx->root = rational_sqrt(q);
        return ctx;
    }
};

using QContextPtr = std::shared_ptr<const QContext>;

class SqrtQRational {
public:
    SqrtQRational() = default;
    SqrtQRational(int v) : a_(v) {}                                    // NOLINT
    SqrtQRational(Rational a) : a_(std::move(a)) {}                   // NOLINT
    SqrtQRational(GaussianRational a) : a_(std::move(a)) {}           // NOLINT
    SqrtQRational(GaussianRational a, GaussianRational b, QContextPtr ctx)
        : a_(std::move(a)), b_(std::move(b)), ctx_(std::move(ctx)) {
        normalize();
    }

    /// sqrt(q)^m = q^(m/2).
    static SqrtQRational q_half_power(const QContextPtr& ctx, long m) {
        long whole = m >= 0 ? m / 2 : -((-m + 1) / 2);
        long rem = m - 2 * whole;  // 0 or 1
        Rational base = pow_int(ctx->q, whole);
        if (rem == 0) return {GaussianRational(base), GaussianRational(0), ctx};
        return {GaussianRational(0), GaussianRational(base), ctx};
    }

    const GaussianRational& a() const { return a_; }
    const GaussianRational& b() const { return b_; }
    const QContextPtr& context() const { return ctx_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_real() const { return a_.is_real() && b_.is_real(); }
    bool is_rational() const { return b_.is_zero() && a_.is_real(); }

    Rational to_rational() const {
        if (!is_rational()) throw ReductionFailure("scalar " + to_string_() + " is not rational");
        return a_.re();
    }

    SqrtQRational conj() const { return {a_.conj(), b_.conj(), ctx_}; }
    SqrtQRational operator-() const { return {-a_, -b_, ctx_}; }

    SqrtQRational& operator+=(const SqrtQRational& o) {
        adopt(o);
        a_ += o.a_;
        if (!o.b_.is_zero()) b_ += o.b_;
        return *this;
    }
    SqrtQRational& operator-=(const SqrtQRational& o) {
        adopt(o);
        a_ -= o.a_;
        if (!o.b_.is_zero()) b_ -= o.b_;
        return *this;
    }
    SqrtQRational& operator*=(const SqrtQRational& o) {
        adopt(o);
        if (b_.is_zero() && o.b_.is_zero()) {
            a_ *= o.a_;
            return *this;
        }
        GaussianRational na = a_ * o.a_ + b_ * o.b_ * GaussianRational(ctx_->q);
        GaussianRational nb = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(na);
        b_ = std::move(nb);
        return *this;
    }
    SqrtQRational& operator/=(const SqrtQRational& o) {
        if (o.is_zero()) throw InexactDivision("division by zero SqrtQRational");
        adopt(o);
        if (o.b_.is_zero()) {
            a_ /= o.a_;
            b_ /= o.a_;
            return *this;
        }
        // (a + b r)^{-1} = (a - b r) / (a^2 - b^2 q); nonzero because r is not in Q(i)
        GaussianRational den = o.a_ * o.a_ - o.b_ * o.b_ * GaussianRational(ctx_->q);
        *this *= SqrtQRational(o.a_, -o.b_, ctx_);
        a_ /= den;
        b_ /= den;
        return *this;
    }

    friend SqrtQRational operator+(SqrtQRational a, const SqrtQRational& b) { return a += b; }
    friend SqrtQRational operator-(SqrtQRational a, const SqrtQRational& b) { return a -= b; }
    friend SqrtQRational operator*(SqrtQRational a, const SqrtQRational& b) { return a *= b; }
    friend SqrtQRational operator/(SqrtQRational a, const SqrtQRational& b) { return a /= b; }
    friend bool operator==(const SqrtQRational& x, const SqrtQRational& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }

    std::string to_string_() const {
        if (b_.is_zero()) return miop::to_string(a_);
        return miop::to_string(a_) + "+(" + miop::to_string(b_) + ")*sqrt(q)";
    }

private:
    void adopt(const SqrtQRational& o) {
        if (!o.ctx_) return;
        if (!ctx_) {
            ctx_ = o.ctx_;
            return;
        }
        if (ctx_ != o.ctx_ && ctx_->q != o.ctx_->q)
            throw ConfigurationError("mixing SqrtQRational values with different q");
    }
    void normalize() {
        if (b_.is_zero() || !ctx_) {
            if (!b_.is_zero() && !ctx_)
                throw ConfigurationError("sqrt(q) component without a q context");
            return;
        }
        if (ctx_->root) {
            a_ += b_ * GaussianRational(*ctx_->root);
            b_ = GaussianRational(0);
        }
    }

    GaussianRational a_;
    GaussianRational b_;
    QContextPtr ctx_;
};

inline bool is_zero(const SqrtQRational& s) { return s.is_zero(); }
inline SqrtQRational conj(const SqrtQRational& s) { return s.conj(); }
inline bool is_real(const SqrtQRational& s) { return s.is_real(); }
inline std::string to_string(const SqrtQRational& s) { return s.to_string_(); }

inline SqrtQRational parse_sqrtq(std::string_view text, const QContextPtr& ctx) {
    std::string s;
    for (char c : text)
        if (c != ' ') s.push_back(c);
    const std::string tail = ")*sqrt(q)";
    if (s.size() < tail.size() || s.substr(s.size() - tail.size()) != tail)
        return {parse_gaussian(s)};
    auto open = s.rfind("+(");
    if (open == std::string::npos) throw ConfigurationError("bad sqrt(q) literal '" + s + "'");
    auto a = parse_gaussian(s.substr(0, open));
    auto b = parse_gaussian(s.substr(open + 2, s.size() - tail.size() - open - 2));
    return {a, b, ctx};
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << to_string(g); }
inline std::ostream& operator<<(std::ostream& os, const SqrtQRational& s) { return os << to_string(s); }

/// Projects a scalar onto the rationals, throwing ReductionFailure when it is not rational.
inline Rational to_rational(const Rational& r) { return r; }
inline Rational to_rational(const GaussianRational& g) {
    if (!g.is_real()) throw ReductionFailure("scalar " + to_string(g) + " is not real");
    return g.re();
}
inline Rational to_rational(const SqrtQRational& s) { return s.to_rational(); }

}  // namespace miop
