#pragma once

// Exact checks of the recurrence identities over constructed tables and
// polynomial families. Every check returns a report; a failure carries the
// first witness found.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "miop/errors.hpp"
#include "miop/families.hpp"
#include "miop/multiindex.hpp"
#include "miop/poly.hpp"
#include "miop/rtable.hpp"

namespace miop {

struct ReportRow {
    long n = 0;
    bool pass = true;
    std::string note;  // "structural" for the n < 0 cases
};

struct VerificationReport {
    std::string identity;
    std::string family;
    std::map<std::string, std::string> lambda;
    std::string D;
    long n_lo = 0;
    long n_hi = -1;
    bool pass = true;
    std::optional<std::string> witness;
    std::optional<std::string> constant;
    std::string detail;
    std::vector<ReportRow> rows;

    void fail(std::string w) {
        if (pass) witness = std::move(w);
        pass = false;
    }
};

namespace detail {

inline VerificationReport make_report(const std::string& identity, const FamilyParams& fp, const IndexSet& D,
                                      long lo, long hi) {
    VerificationReport r;
    r.identity = identity;
    r.family = to_string(fp.family());
    r.lambda = fp.lambda_strings();
    r.D = D.to_string();
    r.n_lo = lo;
    r.n_hi = hi;
    return r;
}

/// Index of the first nonzero coefficient.
template <class S>
std::size_t first_nonzero(const Poly<S>& p) {
    return p.low_order_zeros();
}

template <class S>
S scalar_from(const Rational& r) {
    return S(r);
}

}  // namespace detail

/// A_n P_{n+1} + (B_n - eta) P_n + C_n P_{n-1} = 0 for 0 <= n < n_max.
inline VerificationReport check_three_term(const FamilyParams& fp, long n_max) {
    auto rep = detail::make_report("three-term", fp, IndexSet{}, 0, n_max);
    auto ps = classical_polys(fp, n_max + 1);
    const auto eta = Poly<Rational>::variable();
    for (long n = 0; n <= n_max; ++n) {
        ThreeTerm t = three_term(fp, n);
        auto sum = ps[static_cast<std::size_t>(n + 1)] * t.A +
                   (Poly<Rational>::constant(t.B) - eta) * ps[static_cast<std::size_t>(n)];
        if (n >= 1) sum += ps[static_cast<std::size_t>(n - 1)] * t.C;
        bool ok = sum.is_zero() && ps[static_cast<std::size_t>(n)].degree() == n;
        rep.rows.push_back({n, ok, ""});
        if (!ok) rep.fail("n=" + std::to_string(n));
    }
    return rep;
}

/// sum_{k=-M-1}^{M+1} R^[M]_{n,k} P_{D,n+k} = 0 for n in [lo, hi].
template <class S>
VerificationReport check_rrp(const MultiIndexedPair<S>& pair, const RTable<S>& table, long lo, long hi,
                             const std::string& identity = "rrp") {
    const int M = table.M();
    if (M != pair.D.M()) throw ConfigurationError("table depth does not match |D|");
    auto rep = detail::make_report(identity, pair.params, pair.D, lo, hi);
    for (long n = lo; n <= hi; ++n) {
        Poly<S> sum;
        for (int k = -M - 1; k <= M + 1; ++k) {
            if (n + k < 0) continue;
            const auto& r = table.at(M, n, k);
            if (r.is_zero()) continue;
            sum += r * pair.at(n + k);
        }
        bool ok = sum.is_zero();
        rep.rows.push_back({n, ok, n < 0 ? "structural" : ""});
        if (!ok)
            rep.fail("n=" + std::to_string(n) + ", coefficient " + std::to_string(detail::first_nonzero(sum)));
    }
    return rep;
}

/// Regenerates P_{D,n+M+1} from the RRP, starting from P_{D,0..M}, and
/// compares with the determinant construction for n + M + 1 <= N.
template <class S>
VerificationReport regenerate_from_initial(const MultiIndexedPair<S>& pair, const RTable<S>& table, long N) {
    const int M = table.M();
    auto rep = detail::make_report("regenerate", pair.params, pair.D, M + 1, N);
    std::vector<Poly<S>> gen;
    for (long n = 0; n <= std::min<long>(M, N); ++n) gen.push_back(pair.at(n));
    auto at = [&](long m) -> const Poly<S>& {
        static const Poly<S> zero{};
        return m < 0 ? zero : gen[static_cast<std::size_t>(m)];
    };
    for (long n = 0; n + M + 1 <= N; ++n) {
        const auto& lead = table.at(M, n, M + 1);
        if (lead.is_zero() || lead.degree() != 0)
            throw LeadingCoefficientZero("R^[" + std::to_string(M) + "]_{" + std::to_string(n) + "," +
                                         std::to_string(M + 1) + "} is not a nonzero constant");
        Poly<S> sum;
        for (int k = -M - 1; k <= M; ++k) {
            const auto& r = table.at(M, n, k);
            if (!r.is_zero() && n + k >= 0) sum += r * at(n + k);
        }
        S inv = S(-1) / lead[0];
        gen.push_back(sum * inv);
        const long m = n + M + 1;
        bool ok = gen.back() == pair.at(m);
        rep.rows.push_back({m, ok, ""});
        if (!ok) {
            auto diff = gen.back() - pair.at(m);
            rep.fail("n=" + std::to_string(m) + ", coefficient " + std::to_string(detail::first_nonzero(diff)));
        }
    }
    return rep;
}

/// a == c * b for a nonzero constant c; returns c.
template <class S>
std::optional<S> proportionality_constant(const Poly<S>& a, const Poly<S>& b) {
    if (a.is_zero() || b.is_zero() || a.degree() != b.degree()) return std::nullopt;
    S c = a.leading() / b.leading();
    if (!(b * c == a)) return std::nullopt;
    return c;
}

/// P_{D,0}(eta; lambda) proportional to Xi_D(eta; lambda + delta).
template <class S>
VerificationReport check_seed_proportionality(const FamilyParams& fp, const IndexSet& D) {
    auto rep = detail::make_report("seed", fp, D, 0, 0);
    auto here = build_pair<S>(fp, D, 0);
    auto there = build_pair<S>(shifted(fp), D, -1);
    auto c = proportionality_constant(here.at(0), there.Xi);
    if (!c) {
        rep.fail("P_{D,0} is not proportional to Xi_D at shifted parameters");
        return rep;
    }
    rep.constant = to_string(*c);
    if (here.p_radicand != 1 || there.xi_radicand != 1)
        rep.detail = "radicands: P " + to_string(here.p_radicand) + ", Xi " + to_string(there.xi_radicand);
    return rep;
}

/// The recurrence at every prefix depth s = 0..M with the depth-s table.
template <class S>
VerificationReport check_prefix_chain(const FamilyParams& fp, const IndexSet& D, long lo_n, long hi_n) {
    auto rep = detail::make_report("prefix-chain", fp, D, lo_n, hi_n);
    for (int s = 0; s <= D.M(); ++s) {
        auto Ds = D.prefix(s);
        long lo = std::max<long>(lo_n, -s - 1);
        auto pair = build_pair<S>(fp, Ds, hi_n + s + 1);
        auto table = build_rtable<S>(fp, s, lo, hi_n);
        auto sub = check_rrp(pair, table, lo, hi_n);
        rep.rows.push_back({s, sub.pass, "depth"});
        if (!sub.pass) rep.fail("depth s=" + std::to_string(s) + ": " + *sub.witness);
    }
    return rep;
}

/// Xi and every P_n change by one common sign under a column permutation.
template <class S>
VerificationReport check_permutation(const MultiIndexedPair<S>& base, const std::vector<std::size_t>& perm) {
    auto rep = detail::make_report("permutation", base.params, base.D, 0, base.n_max());
    auto Dp = base.D.permuted(perm);
    auto other = build_pair<S>(base.params, Dp, base.n_max());
    std::string p;
    for (auto i : perm) p += (p.empty() ? "" : " ") + std::to_string(i);
    rep.detail = "order " + Dp.to_string() + " (perm " + p + ")";
    std::optional<int> sign;
    auto match = [&](const Poly<S>& a, const Poly<S>& b, const std::string& what) {
        int sg = a == b ? 1 : (a == -b ? -1 : 0);
        if (sg == 0 || (sign && *sign != sg)) {
            rep.fail(what);
            return;
        }
        sign = sg;
    };
    match(other.Xi, base.Xi, "Xi");
    for (long n = 0; n <= base.n_max(); ++n) match(other.at(n), base.at(n), "P_" + std::to_string(n));
    if (other.xi_radicand != base.xi_radicand || other.p_radicand != base.p_radicand) rep.fail("radicands differ");
    if (sign) rep.constant = std::to_string(*sign);
    return rep;
}

/// Genericity: deg Xi = ell, deg P_{D,n} = ell + n, and R^[M]_{n,M+1} a nonzero constant.
template <class S>
VerificationReport genericity_probe(const MultiIndexedPair<S>& pair, const RTable<S>& table, long n_hi) {
    auto rep = detail::make_report("genericity", pair.params, pair.D, 0, n_hi);
    const long ell = pair.D.ell();
    if (pair.Xi.degree() != ell) rep.fail("deg Xi = " + std::to_string(pair.Xi.degree()));
    for (long n = 0; n <= std::min(n_hi, pair.n_max()); ++n) {
        bool ok = pair.at(n).degree() == ell + n;
        if (table.contains(table.M(), n)) {
            const auto& lead = table.at(table.M(), n, table.M() + 1);
            ok = ok && !lead.is_zero() && lead.degree() == 0;
        }
        rep.rows.push_back({n, ok, ""});
        if (!ok) rep.fail("n=" + std::to_string(n));
    }
    return rep;
}

/// Throws ConfigurationError with a diagnostic unless the probe passes.
template <class S>
void require_generic(const MultiIndexedPair<S>& pair, const RTable<S>& table, long n_hi) {
    auto rep = genericity_probe(pair, table, n_hi);
    if (!rep.pass)
        throw ConfigurationError("parameters " + pair.params.describe() + " are not generic for D=" +
                                 pair.D.to_string() + " (" + *rep.witness + "); try another preset");
}

struct SuiteOptions {
    long n_hi = 8;
    /// Lower end of the rrp range; -M-1 when unset.
    std::optional<long> n_lo;
    /// Permutation for the order check; the reversed order when empty.
    std::vector<std::size_t> perm;
    /// Also rerun the RRP with B_{-1} = 7 for n >= 0.
    bool probe_negative_convention = true;
    TableOptions table;
};

/// The standard battery for one (family, D): rrp (n in [-M-1, n_hi]),
/// regeneration, seed proportionality, prefix chain, permutation, degrees.
template <class S>
std::vector<VerificationReport> run_suite(const FamilyParams& fp, const IndexSet& D, const SuiteOptions& opt = {}) {
    const int M = D.M();
    const long lo = std::min(opt.n_lo.value_or(-M - 1), -M - 1L);
    const long rrp_lo = opt.n_lo.value_or(-M - 1);
    std::vector<VerificationReport> out;
    auto pair = build_pair<S>(fp, D, opt.n_hi + M + 1);
    RTable<S> table = [&] {
        switch (fp.family()) {
            case Family::L:
            case Family::J:
                if constexpr (std::is_same_v<S, Rational>) return build_rtable_LJ(fp, M, lo, opt.n_hi, opt.table);
                break;
            case Family::W:
                if constexpr (std::is_same_v<S, Rational>)
                    return build_rtable_WAW(WilsonPicture(fp), M, lo, opt.n_hi, opt.table).eta;
                break;
            case Family::AW:
                if constexpr (std::is_same_v<S, SqrtQRational>)
                    return build_rtable_WAW(AskeyWilsonPicture(fp), M, lo, opt.n_hi, opt.table).eta;
                break;
        }
        throw ConfigurationError("scalar type does not match family");
    }();
    out.push_back(genericity_probe(pair, table, opt.n_hi));
    out.push_back(check_rrp(pair, table, rrp_lo, opt.n_hi));
    if (opt.probe_negative_convention) {
        TableOptions probe = opt.table;
        probe.adjust_coefficients = [&](ThreeTermTable& t) {
            if (opt.table.adjust_coefficients) opt.table.adjust_coefficients(t);
            ThreeTerm c = t.at(-1);
            c.B = 7;
            t.set(-1, c);
        };
        auto t7 = build_rtable<S>(fp, M, lo, opt.n_hi, probe);
        out.push_back(check_rrp(pair, t7, 0, opt.n_hi, "rrp-b-1=7"));
    }
    out.push_back(regenerate_from_initial(pair, table, opt.n_hi));
    out.push_back(check_seed_proportionality<S>(fp, D));
    out.push_back(check_prefix_chain<S>(fp, D, lo, opt.n_hi));
    if (M >= 2) {
        std::vector<std::size_t> perm = opt.perm;
        if (perm.empty())
            for (int i = M - 1; i >= 0; --i) perm.push_back(static_cast<std::size_t>(i));
        out.push_back(check_permutation(pair, perm));
    }
    return out;
}

/// The default index sets: two per M, the second mixing types I and II.
inline std::vector<IndexSet> default_index_sets(int M) {
    switch (M) {
        case 0: return {IndexSet{}};
        case 1: return {IndexSet::parse("I1"), IndexSet::parse("II2")};
        case 2: return {IndexSet::parse("I1,I2"), IndexSet::parse("I1,II1")};
        case 3: return {IndexSet::parse("I1,I2,II1"), IndexSet::parse("I1,II1,II2")};
    }
    throw ConfigurationError("no default index sets for M = " + std::to_string(M));
}

/// Structural table checks for depth M on [lo, hi]: Rprop (L/J) or
/// Rprop2/Rprop3 and self-conjugacy (W/AW), the vanishing region and the degree law.
inline std::vector<TableCheck> table_checks(const FamilyParams& fp, int M, long lo, long hi,
                                            const TableOptions& opt = {}) {
    std::vector<TableCheck> out;
    if (fp.family() == Family::L || fp.family() == Family::J) {
        auto t = build_rtable_LJ(fp, M, lo, hi, opt);
        out.push_back(check_rprop(t));
        out.push_back(check_vanishing_region(t));
        out.push_back(check_degree_law(t));
        return out;
    }
    with_picture(fp, [&](const auto& pic) {
        auto t = build_rtable_WAW(pic, M, lo, hi, opt);
        for (auto& c : check_rprop2_rprop3(t)) out.push_back(std::move(c));
        out.push_back(check_vanishing_region(t.eta));
        out.push_back(check_degree_law(t.eta));
    });
    return out;
}

}  // namespace miop
