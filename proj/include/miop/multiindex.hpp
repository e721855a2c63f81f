#pragma once

// Denominator polynomials Xi_D and multi-indexed polynomials P_{D,n}:
// gauged Wronskians in eta for L/J, Casoratians in the x-picture for W/AW.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "miop/determinant.hpp"
#include "miop/errors.hpp"
#include "miop/families.hpp"
#include "miop/parallel.hpp"
#include "miop/poly.hpp"
#include "miop/xpicture.hpp"

namespace miop {

// ---------------------------------------------------------------------------
// index sets

class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::vector<VirtualState> entries) : entries_(std::move(entries)) { validate(); }

    /// "I1,II2"; "" or "-" is the empty set.
    static IndexSet parse(const std::string& text) {
        std::vector<VirtualState> out;
        std::string item;
        std::stringstream ss(text);
        while (std::getline(ss, item, ',')) {
            std::string t;
            for (char c : item)
                if (c != ' ') t.push_back(c);
            if (t.empty() || t == "-") continue;
            VirtualState vs;
            std::size_t pos = 0;
            if (t.rfind("II", 0) == 0) {
                vs.type = VType::II;
                pos = 2;
            } else if (t.rfind("I", 0) == 0) {
                vs.type = VType::I;
                pos = 1;
            } else {
                throw ConfigurationError("bad index-set entry '" + t + "' (expected I<d> or II<d>)");
            }
            std::string digits = t.substr(pos);
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                throw ConfigurationError("bad degree in index-set entry '" + t + "'");
            vs.degree = std::stoi(digits);
            out.push_back(vs);
        }
        return IndexSet(std::move(out));
    }

    const std::vector<VirtualState>& entries() const { return entries_; }
    int M() const { return static_cast<int>(entries_.size()); }
    int M_I() const { return count(VType::I); }
    int M_II() const { return count(VType::II); }
    bool empty() const { return entries_.empty(); }

    /// sum d_j - M(M-1)/2 + 2 M_I M_II
    long ell() const {
        long sum = 0;
        for (const auto& e : entries_) sum += e.degree;
        long m = M();
        return sum - m * (m - 1) / 2 + 2L * M_I() * M_II();
    }

    IndexSet prefix(int s) const {
        if (s < 0 || s > M()) throw ConfigurationError("prefix length out of range");
        return IndexSet(std::vector<VirtualState>(entries_.begin(), entries_.begin() + s));
    }

    /// Entry perm[i] of this set becomes entry i of the result.
    IndexSet permuted(const std::vector<std::size_t>& perm) const {
        if (perm.size() != entries_.size()) throw ConfigurationError("permutation size mismatch");
        std::vector<bool> seen(perm.size(), false);
        std::vector<VirtualState> out;
        for (auto p : perm) {
            if (p >= perm.size() || seen[p]) throw ConfigurationError("not a permutation");
            seen[p] = true;
            out.push_back(entries_[p]);
        }
        return IndexSet(std::move(out));
    }

    std::string to_string() const {
        if (entries_.empty()) return "-";
        std::string s;
        for (const auto& e : entries_) {
            if (!s.empty()) s += ",";
            s += std::string(miop::to_string(e.type)) + std::to_string(e.degree);
        }
        return s;
    }

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    int count(VType t) const {
        int c = 0;
        for (const auto& e : entries_) c += e.type == t;
        return c;
    }
    void validate() const {
        std::set<std::pair<int, int>> seen;
        for (const auto& e : entries_) {
            if (e.degree < 0) throw ConfigurationError("virtual-state degrees must be non-negative");
            if (!seen.insert({static_cast<int>(e.type), e.degree}).second)
                throw ConfigurationError("duplicate degree " + std::string(miop::to_string(e.type)) +
                                         std::to_string(e.degree) + " in index set");
        }
        if (!entries_.empty() && ell() < 1)
            throw ConfigurationError("index set " + to_string() + " has ell = " + std::to_string(ell()) +
                                     " < 1");
    }

    std::vector<VirtualState> entries_;
};

/// Xi_D and P_{D,0..n_max}. For Askey-Wilson the determinant prefactors may
/// leave a square root of a rational constant; the true polynomials are then
/// sqrt(radicand) times the stored ones (radicand 1 when absent).
template <class S>
struct MultiIndexedPair {
    FamilyParams params;
    IndexSet D;
    Poly<S> Xi;
    std::vector<Poly<S>> P;
    Rational xi_radicand{1};
    Rational p_radicand{1};

    long n_max() const { return static_cast<long>(P.size()) - 1; }
    /// P_{D,n}, the zero polynomial for n < 0.
    const Poly<S>& at(long n) const {
        static const Poly<S> zero{};
        if (n < 0) return zero;
        if (n > n_max()) throw ConfigurationError("P_{D,n} requested beyond n_max = " + std::to_string(n_max()));
        return P[static_cast<std::size_t>(n)];
    }
};

// ---------------------------------------------------------------------------
// Laguerre / Jacobi: Wronskians with gauge factors

struct WronskianOptions {
    /// Fault injection: added to the eta (L) or u (J) exponent of the final gauge.
    Rational gauge_offset{0};
};

namespace detail {

/// A column e^{a eta} eta^{b} p (L) or u^{a} v^{b} p (J), u = (1-eta)/2, v = (1+eta)/2.
struct GaugedColumn {
    Poly<Rational> p;
    Rational a;
    Rational b;
};

/// Polynomial parts p_0..p_{N-1} of the derivatives: the r-th derivative is
/// e^{a eta} eta^{b-r} p_r (L) or u^{a-r} v^{b-r} p_r (J).
inline std::vector<Poly<Rational>> derivative_parts(const GaugedColumn& col, Family fam, long N) {
    using P = Poly<Rational>;
    const P eta = P::variable();
    const P u({Rational(1, 2), Rational(-1, 2)});
    const P v({Rational(1, 2), Rational(1, 2)});
    std::vector<P> out;
    out.reserve(static_cast<std::size_t>(N));
    out.push_back(col.p);
    for (long r = 0; r + 1 < N; ++r) {
        const P& pr = out.back();
        P next;
        if (fam == Family::L) {
            next = eta * pr * col.a + pr * (col.b - r) + eta * derivative(pr);
        } else {
            next = v * pr * Rational(-(col.a - r) / 2) + u * pr * Rational((col.b - r) / 2) + u * v * derivative(pr);
        }
        out.push_back(std::move(next));
    }
    return out;
}

inline long integer_exponent(const Rational& e, const char* what) {
    if (!is_integer(e))
        throw NonPolynomialResult(std::string("gauge factors leave a non-integer power of ") + what + ": " +
                                  to_string(e));
    return boost::multiprecision::numerator(e).convert_to<long>();
}

/// p * base^e for integer e, dividing exactly when e < 0.
inline Poly<Rational> apply_power(Poly<Rational> p, const Poly<Rational>& base, long e, const char* what) {
    if (e >= 0) return p * pow(base, static_cast<unsigned>(e));
    try {
        return exact_div(p, pow(base, static_cast<unsigned>(-e)));
    } catch (const InexactDivision&) {
        throw NonPolynomialResult(std::string("Wronskian is not divisible by ") + what + "^" + std::to_string(-e));
    }
}

class WronskianBuilder {
public:
    WronskianBuilder(const FamilyParams& fp, const IndexSet& D, const WronskianOptions& opt)
        : fp_(fp), D_(D), opt_(opt) {
        const Rational half(1, 2);
        const bool L = fp.family() == Family::L;
        for (const auto& e : D.entries()) {
            GaugedColumn c{virtual_poly(fp, e), Rational(0), Rational(0)};
            if (e.type == VType::I) {
                if (L)
                    c.a = 1;  // e^{eta}
                else
                    c.b = half - fp.h();  // v^{1/2-h}
            } else {
                if (L)
                    c.b = half - fp.g();  // eta^{1/2-g}
                else
                    c.a = half - fp.g();  // u^{1/2-g}
            }
            cols_.push_back(std::move(c));
        }
    }

    Poly<Rational> xi() const {
        const long N = D_.M();
        if (N == 0) return Poly<Rational>::constant(Rational(1));
        Matrix<Poly<Rational>> m(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
        fill(m, N);
        return gauge(det_fraction_free(m), N, Rational(-1, 2));
    }

    std::vector<Poly<Rational>> p_range(long n_max) const {
        const long N = D_.M() + 1;
        std::vector<Poly<Rational>> out(static_cast<std::size_t>(n_max + 1));
        if (n_max < 0) return out;
        auto classical = classical_polys(fp_, n_max);
        std::vector<Poly<Rational>> cof;
        if (N == 1) {
            cof.push_back(Poly<Rational>::constant(Rational(1)));
        } else {
            Matrix<Poly<Rational>> m(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
            fill(m, N);
            cof = last_column_cofactors(m, Poly<Rational>::constant(Rational(1)));
        }
        parallel_for(out.size(), [&](std::size_t n) {
            auto parts = derivative_parts({classical[n], Rational(0), Rational(0)}, fp_.family(), N);
            Poly<Rational> det;
            for (long r = 0; r < N; ++r) det += parts[static_cast<std::size_t>(r)] * cof[static_cast<std::size_t>(r)];
            out[n] = gauge(det, N, Rational(1, 2));
        });
        return out;
    }

private:
    void fill(Matrix<Poly<Rational>>& m, long N) const {
        for (std::size_t c = 0; c < cols_.size(); ++c) {
            auto parts = derivative_parts(cols_[c], fp_.family(), N);
            for (long r = 0; r < N; ++r) m(static_cast<std::size_t>(r), c) = parts[static_cast<std::size_t>(r)];
        }
    }

    /// Multiplies the determinant of polynomial parts by the column gauges,
    /// the row factors and the printed prefactor; everything must cancel.
    Poly<Rational> gauge(const Poly<Rational>& det, long N, const Rational& pm_half) const {
        using P = Poly<Rational>;
        const Rational MI(D_.M_I());
        const Rational MII(D_.M_II());
        Rational sa = 0;
        Rational sb = 0;
        for (const auto& c : cols_) {
            sa += c.a;
            sb += c.b;
        }
        const Rational rows(N * (N - 1) / 2);
        if (fp_.family() == Family::L) {
            Rational e_exp = sa - MI;
            if (!e_exp.is_zero()) throw NonPolynomialResult("exponential gauge factors do not cancel");
            Rational eta_exp = sb - rows + (MI + fp_.g() + pm_half) * MII + opt_.gauge_offset;
            return apply_power(det, P::variable(), integer_exponent(eta_exp, "eta"), "eta");
        }
        Rational u_exp = sa - rows + (MI + fp_.g() + pm_half) * MII + opt_.gauge_offset;
        Rational v_exp = sb - rows + (MII + fp_.h() + pm_half) * MI;
        const P u({Rational(1, 2), Rational(-1, 2)});
        const P v({Rational(1, 2), Rational(1, 2)});
        P out = apply_power(det, u, integer_exponent(u_exp, "(1-eta)/2"), "(1-eta)/2");
        return apply_power(out, v, integer_exponent(v_exp, "(1+eta)/2"), "(1+eta)/2");
    }

    FamilyParams fp_;
    IndexSet D_;
    WronskianOptions opt_;
    std::vector<GaugedColumn> cols_;
};

}  // namespace detail

inline MultiIndexedPair<Rational> build_LJ(const FamilyParams& fp, const IndexSet& D, long n_max,
                                           const WronskianOptions& opt = {}) {
    if (fp.family() != Family::L && fp.family() != Family::J)
        throw ConfigurationError("build_LJ requires the L or J family");
    detail::WronskianBuilder b(fp, D, opt);
    MultiIndexedPair<Rational> out{fp, D, b.xi(), b.p_range(n_max)};
    return out;
}

// ---------------------------------------------------------------------------
// Wilson / Askey-Wilson: Casoratians in the x-picture

template <class Picture>
struct CasoratianOptions {
    using Elem = typename Picture::Elem;
    /// Fault injection on the raw determinant (before dividing by A or B and phi).
    std::function<void(Elem&)> tamper_det;
    /// Fault injection on the quotient (before reduction to eta).
    std::function<void(Elem&)> tamper_quotient;
};

namespace detail {

template <class Picture>
class CasoratianBuilder {
public:
    using Elem = typename Picture::Elem;
    using Coef = typename Picture::Coef;
    using EtaScalar = typename Picture::EtaScalar;

    CasoratianBuilder(const Picture& pic, const IndexSet& D, const CasoratianOptions<Picture>& opt)
        : pic_(pic), fp_(pic.params()), D_(D), opt_(opt) {
        for (const auto& e : D.entries()) virt_.push_back(virtual_poly(fp_, e));
    }

    /// Xi and its radicand.
    std::pair<Poly<EtaScalar>, Rational> xi() const {
        const long N = D_.M();
        if (N == 0) return {Poly<EtaScalar>::constant(EtaScalar(1)), Rational(1)};
        Matrix<Elem> m(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
        fill(m, N);
        Elem det = det_fraction_free(m);
        auto [factor, radicand] = alpha_factor(N, false);
        return {finish(std::move(det), N, factor), radicand};
    }

    std::pair<std::vector<Poly<EtaScalar>>, Rational> p_range(long n_max) const {
        const long N = D_.M() + 1;
        std::vector<Poly<EtaScalar>> out(static_cast<std::size_t>(std::max<long>(n_max + 1, 0)));
        auto [factor, radicand] = alpha_factor(N, true);
        if (n_max < 0) return {out, radicand};
        auto classical = classical_polys(fp_, n_max);
        std::vector<Elem> cof;
        if (N == 1) {
            cof.push_back(pic_.one());
        } else {
            Matrix<Elem> m(static_cast<std::size_t>(N), static_cast<std::size_t>(N), pic_.one());
            fill(m, N);
            cof = last_column_cofactors(m, pic_.one());
        }
        std::vector<Elem> rr;  // r^I_j r^II_j
        for (long j = 1; j <= N; ++j) rr.push_back(r_factor(VType::I, N, j) * r_factor(VType::II, N, j));
        parallel_for(out.size(), [&](std::size_t n) {
            Elem det;
            for (long j = 1; j <= N; ++j) {
                Elem z = rr[static_cast<std::size_t>(j - 1)] * pic_.lift(classical[n], sample_shift(N, j));
                det += z * cof[static_cast<std::size_t>(j - 1)];
            }
            out[n] = finish(std::move(det), N, factor);
        });
        return {out, radicand};
    }

private:
    static Rational sample_shift(long N, long j) { return Rational(N + 1, 2) - j; }

    /// r_j without its alpha power: kappa power, z power and the Pochhammer products.
    Elem r_factor(VType which, long N, long j) const {
        const Rational half_nm1(N - 1, 2);
        Rational kexp = Rational((N - 1) * (N - 1), 2) - (j - 1) * (N - j);
        Elem out = pic_.z_power(N + 1 - 2 * j) * pic_.kappa_power(kexp);
        int k0 = which == VType::I ? 1 : 3;
        for (int k = k0; k < k0 + 2; ++k)
            out = out * pic_.pochhammer_pair(pic_.shifted_param(fp_.a(k), -half_nm1), j - 1, N - j);
        return out;
    }

    void fill(Matrix<Elem>& m, long N) const {
        for (std::size_t c = 0; c < virt_.size(); ++c) {
            VType t = D_.entries()[c].type;
            VType other = t == VType::I ? VType::II : VType::I;
            for (long j = 1; j <= N; ++j)
                m(static_cast<std::size_t>(j - 1), c) =
                    r_factor(other, N, j) * pic_.lift(virt_[c], sample_shift(N, j));
        }
    }

    /// A (size N = M) or B (size N = M + 1).
    Elem norm_block(long N) const {
        const long M = D_.M();
        const Rational shift(-(N - 1), 2);
        Elem out = pic_.one();
        auto block = [&](int k0, long upper) {
            for (int k = k0; k < k0 + 2; ++k)
                for (long j = 1; j <= upper; ++j)
                    out = out * pic_.pochhammer_pair(pic_.shifted_param(fp_.a(k), shift), j, j) *
                          pic_.block_factor(fp_.a(k), j);
        };
        block(3, D_.M_I() + N - M - 1);
        block(1, D_.M_II() + N - M - 1);
        return out;
    }

    /// Product of alpha^{-(N-1)/2} over the columns: a rational factor and a
    /// square-free leftover radicand (folded in when it is a perfect square).
    std::pair<Rational, Rational> alpha_factor(long N, bool with_z) const {
        Rational factor(1);
        Rational radicand(1);
        long nx = D_.M_I() + (with_z ? 1 : 0);   // columns carrying r^II
        long ny = D_.M_II() + (with_z ? 1 : 0);  // columns carrying r^I
        auto apply = [&](const Rational& alpha, long count) {
            long twice = -(N - 1) * count;  // exponent is twice/2
            long whole = twice >= 0 ? twice / 2 : -((-twice + 1) / 2);
            factor *= pow_int(alpha, whole);
            if (twice - 2 * whole == 1) radicand *= alpha;
        };
        apply(pic_.alpha(VType::II, N), nx);
        apply(pic_.alpha(VType::I, N), ny);
        if (radicand != 1) {
            if (auto root = rational_sqrt(radicand)) {
                factor *= *root;
                radicand = 1;
            }
        }
        return {factor, radicand};
    }

    Poly<EtaScalar> finish(Elem det, long N, const Rational& factor) const {
        if (opt_.tamper_det) opt_.tamper_det(det);
        static const Coef units[4] = {Coef(1), Coef(GaussianRational::i()), Coef(-1),
                                      Coef(-GaussianRational::i())};
        det *= units[static_cast<std::size_t>((N * (N - 1) / 2) % 4)];
        Elem q = exact_div(det, norm_block(N) * phi_M(pic_, N));
        if (factor != 1) q *= Coef(factor);
        if (opt_.tamper_quotient) opt_.tamper_quotient(q);
        return pic_.reduce(q);
    }

    Picture pic_;
    FamilyParams fp_;
    IndexSet D_;
    CasoratianOptions<Picture> opt_;
    std::vector<Poly<Rational>> virt_;
};

}  // namespace detail

template <class Picture>
MultiIndexedPair<typename Picture::EtaScalar> build_WAW(const Picture& pic, const IndexSet& D, long n_max,
                                                        const CasoratianOptions<Picture>& opt = {}) {
    detail::CasoratianBuilder<Picture> b(pic, D, opt);
    auto [xi, xr] = b.xi();
    auto [ps, pr] = b.p_range(n_max);
    MultiIndexedPair<typename Picture::EtaScalar> out{pic.params(), D, std::move(xi), std::move(ps), xr, pr};
    return out;
}

/// The pair for any family with scalar type S (Rational for L/J/W, SqrtQRational for AW).
template <class S>
MultiIndexedPair<S> build_pair(const FamilyParams& fp, const IndexSet& D, long n_max) {
    switch (fp.family()) {
        case Family::L:
        case Family::J:
            if constexpr (std::is_same_v<S, Rational>) return build_LJ(fp, D, n_max);
            break;
        case Family::W:
            if constexpr (std::is_same_v<S, Rational>) return build_WAW(WilsonPicture(fp), D, n_max);
            break;
        case Family::AW:
            if constexpr (std::is_same_v<S, SqrtQRational>) return build_WAW(AskeyWilsonPicture(fp), D, n_max);
            break;
    }
    throw ConfigurationError(std::string("scalar type does not match family ") + to_string(fp.family()));
}

/// Calls f(tag) with tag = S{} for the family's eta scalar type.
template <class F>
decltype(auto) with_eta_scalar(const FamilyParams& fp, F&& f) {
    if (fp.family() == Family::AW) return f(SqrtQRational{});
    return f(Rational{});
}

}  // namespace miop
