#pragma once

// The x-picture of the difference-equation families. Wilson functions of x
// are polynomials in x over Q(i) (eta = x^2, gamma = 1); Askey-Wilson
// functions are Laurent polynomials in z = e^{ix} (eta = cos x, gamma = log q).
//
// Both pictures expose the same small interface so the Casoratian and the
// R-table recursion are written once.

#include <utility>

#include "miop/errors.hpp"
#include "miop/families.hpp"
#include "miop/laurent.hpp"
#include "miop/poly.hpp"
#include "miop/scalar.hpp"

namespace miop {

class WilsonPicture {
public:
    using Coef = GaussianRational;
    using EtaScalar = Rational;
    using Elem = Poly<GaussianRational>;

    explicit WilsonPicture(const FamilyParams& fp) : fp_(fp) {
        if (fp.family() != Family::W) throw ConfigurationError("WilsonPicture requires the W family");
    }

    const FamilyParams& params() const { return fp_; }

    Elem constant(const Coef& c) const { return Elem::constant(c, Variable::x); }
    Elem one() const { return constant(Coef(1)); }

    /// eta(x + i c gamma) = (x + i c)^2
    Elem eta_at(const Rational& c) const {
        return Elem({Coef(-c * c), Coef(Rational(0), 2 * c), Coef(1)}, Variable::x);
    }
    /// phi(x + i c gamma) = 2 (x + i c)
    Elem phi_at(const Rational& c) const { return Elem({Coef(Rational(0), 2 * c), Coef(2)}, Variable::x); }

    /// f(x + i c gamma)
    Elem shift(const Elem& f, const Rational& c) const { return taylor_shift(f, Coef(Rational(0), c)); }

    /// p(eta(x + i c gamma))
    template <class T>
    Elem lift(const Poly<T>& p, const Rational& c = Rational(0)) const {
        Elem e = eta_at(c);
        Elem acc(Variable::x);
        for (std::size_t i = p.size(); i-- > 0;) acc = acc * e + constant(Coef(p[i]));
        return acc;
    }

    Elem star(const Elem& f) const { return conj(f); }
    bool self_conjugate(const Elem& f) const { return star(f) == f; }

    /// Even, real polynomial in x -> polynomial in eta = x^2.
    Poly<Rational> reduce(const Elem& f) const {
        if (f.is_zero()) return {};
        std::vector<Rational> out;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const Coef& c = f[i];
            if (!c.is_real())
                throw ReductionFailure("x-picture value has a non-real coefficient at x^" + std::to_string(i));
            if (i % 2 == 1) {
                if (!c.is_zero())
                    throw ReductionFailure("x-picture value has an odd power x^" + std::to_string(i));
                continue;
            }
            out.push_back(c.re());
        }
        return Poly<Rational>(std::move(out), Variable::eta);
    }

    /// a + s, the parameter after a shift by s (additive for Wilson).
    Coef shifted_param(const Rational& a, const Rational& s) const { return Coef(a + s); }

    /// (u + ix)_{jp} (u - ix)_{jm}
    Elem pochhammer_pair(const Coef& u, long jp, long jm) const {
        Elem r = one();
        for (long m = 0; m < jp; ++m) r = r * Elem({u + Coef(Rational(m)), Coef::i()}, Variable::x);
        for (long m = 0; m < jm; ++m) r = r * Elem({u + Coef(Rational(m)), -Coef::i()}, Variable::x);
        return r;
    }

    Coef kappa_power(const Rational&) const { return Coef(1); }
    Elem z_power(long) const { return one(); }
    Coef block_factor(const Rational&, long) const { return Coef(1); }
    /// alpha^{I/II}(lambda + (N-1) delta~)
    Rational alpha(VType, long) const { return Rational(1); }

private:
    FamilyParams fp_;
};

class AskeyWilsonPicture {
public:
    using Coef = SqrtQRational;
    using EtaScalar = SqrtQRational;
    using Elem = LaurentPoly<SqrtQRational>;

    explicit AskeyWilsonPicture(const FamilyParams& fp) : fp_(fp), ctx_(fp.qctx()) {
        if (fp.family() != Family::AW) throw ConfigurationError("AskeyWilsonPicture requires the AW family");
    }

    const FamilyParams& params() const { return fp_; }
    const QContextPtr& context() const { return ctx_; }

    /// q^{e} for half-integer e.
    Coef qpow(const Rational& e) const { return SqrtQRational::q_half_power(ctx_, half_units(e)); }

    Elem constant(const Coef& c) const { return Elem::constant(with_ctx(c)); }
    Elem one() const { return constant(Coef(1)); }

    /// eta(x + i c gamma) = (q^{-c} z + q^{c} / z) / 2, since e^{i(x + i c log q)} = z q^{-c}.
    Elem eta_at(const Rational& c) const {
        Coef half(Rational(1, 2));
        return Elem(-1, {qpow(c) * half, Coef(0), qpow(-c) * half});
    }
    /// phi(x + i c gamma) = 2 sin(x + i c gamma) = -i (q^{-c} z - q^{c} / z)
    Elem phi_at(const Rational& c) const {
        Coef mi(GaussianRational(Rational(0), Rational(-1)));
        return Elem(-1, {-(mi * qpow(c)), Coef(0), mi * qpow(-c)});
    }

    /// f(x + i c gamma): z -> z q^{-c}
    Elem shift(const Elem& f, const Rational& c) const { return laurent_shift(f, -half_units(c), ctx_); }

    template <class T>
    Elem lift(const Poly<T>& p, const Rational& c = Rational(0)) const {
        Elem e = eta_at(c);
        Elem acc;
        for (std::size_t i = p.size(); i-- > 0;) acc = acc * e + constant(Coef(p[i]));
        return acc;
    }

    Elem star(const Elem& f) const { return miop::star(f); }
    bool self_conjugate(const Elem& f) const { return star(f) == f; }

    /// Symmetric, real Laurent polynomial -> polynomial in eta, using
    /// z^k + z^{-k} = 2 T_k(eta).
    Poly<SqrtQRational> reduce(const Elem& f) const {
        using P = Poly<SqrtQRational>;
        if (f.is_zero()) return {};
        if (f.lo() != -f.hi()) throw ReductionFailure("Laurent value is not symmetric under z -> 1/z");
        const long K = f.hi();
        P eta = P::variable();
        P t_prev = P::constant(Coef(1));
        P t_cur = eta;
        P out = P::constant(real_coeff(f, 0));
        for (long k = 1; k <= K; ++k) {
            Coef c = real_coeff(f, k);
            if (!(c == real_coeff(f, -k)))
                throw ReductionFailure("Laurent value is not symmetric at z^" + std::to_string(k));
            if (k >= 2) {
                P next = P::constant(Coef(2)) * eta * t_cur - t_prev;
                t_prev = std::move(t_cur);
                t_cur = std::move(next);
            }
            if (!c.is_zero()) out += t_cur * (c * Coef(2));
        }
        return out;
    }

    /// a q^{s}
    Coef shifted_param(const Rational& a, const Rational& s) const { return qpow(s) * Coef(a); }

    /// (u z; q)_{jp} (u / z; q)_{jm}
    Elem pochhammer_pair(const Coef& u, long jp, long jm) const {
        Elem r = one();
        Coef qm(1);
        Coef q(fp_.q());
        for (long m = 0; m < std::max(jp, jm); ++m) {
            Coef uq = with_ctx(u * qm);
            if (m < jp) r = r * Elem(0, {Coef(1), -uq});
            if (m < jm) r = r * Elem(-1, {-uq, Coef(1)});
            qm *= q;
        }
        return r;
    }

    /// kappa^e with kappa = 1/q.
    Coef kappa_power(const Rational& e) const { return qpow(-e); }
    Elem z_power(long k) const { return Elem::monomial(with_ctx(Coef(1)), k); }
    /// a_k^{-j} q^{j(j+1)/4}
    Coef block_factor(const Rational& ak, long j) const {
        return with_ctx(Coef(pow_int(ak, -j))) * SqrtQRational::q_half_power(ctx_, j * (j + 1) / 2);
    }
    /// alpha^{I/II}(lambda + (N-1) delta~) = a a' q^{-(N-1)} / q
    Rational alpha(VType t, long N) const {
        Rational prod = t == VType::I ? fp_.a(1) * fp_.a(2) : fp_.a(3) * fp_.a(4);
        return prod * pow_int(fp_.q(), -(N - 1) - 1);
    }

private:
    static long half_units(const Rational& e) {
        Rational twice = 2 * e;
        if (!is_integer(twice)) throw ConfigurationError("q-power exponent " + to_string(e) + " is not a half-integer");
        return boost::multiprecision::numerator(twice).convert_to<long>();
    }
    Coef with_ctx(const Coef& c) const { return Coef(c.a(), c.b(), ctx_); }
    Coef real_coeff(const Elem& f, long k) const {
        Coef c = f.coeff(k);
        if (!c.is_real()) throw ReductionFailure("Laurent value has a non-real coefficient at z^" + std::to_string(k));
        return c;
    }

    FamilyParams fp_;
    QContextPtr ctx_;
};

/// Calls f(picture) with the picture matching fp (W or AW).
template <class F>
decltype(auto) with_picture(const FamilyParams& fp, F&& f) {
    if (fp.family() == Family::W) return f(WilsonPicture(fp));
    if (fp.family() == Family::AW) return f(AskeyWilsonPicture(fp));
    throw ConfigurationError(std::string("family ") + to_string(fp.family()) + " has no x-picture");
}

/// P_n(eta(x)) in the picture's carrier.
template <class Picture>
typename Picture::Elem classical_poly_x(const Picture& pic, long n) {
    return pic.lift(classical_poly(pic.params(), n));
}

/// phi_N(x) = phi(x)^{[N/2]} prod_{k=1}^{N-2} (phi(x - ik gamma/2) phi(x + ik gamma/2))^{[(N-k)/2]}
template <class Picture>
typename Picture::Elem phi_M(const Picture& pic, long N) {
    if (N < 0) throw ConfigurationError("phi_M requires M >= 0");
    auto out = pic.one();
    for (long e = 0; e < N / 2; ++e) out = out * pic.phi_at(Rational(0));
    for (long k = 1; k <= N - 2; ++k) {
        auto pair = pic.phi_at(Rational(-k, 2)) * pic.phi_at(Rational(k, 2));
        for (long e = 0; e < (N - k) / 2; ++e) out = out * pair;
    }
    return out;
}

/// eta(x - im gamma/2) + eta(x + im gamma/2) and their product, reduced to eta.
template <class Picture>
std::pair<Poly<typename Picture::EtaScalar>, Poly<typename Picture::EtaScalar>> eta_shift_identities(
    const Picture& pic, long m) {
    auto lo = pic.eta_at(Rational(-m, 2));
    auto hi = pic.eta_at(Rational(m, 2));
    return {pic.reduce(lo + hi), pic.reduce(lo * hi)};
}

}  // namespace miop
