// miop_cli: gen | rtable | verify | ortho

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "miop/miop.hpp"

namespace {

using namespace miop;

struct Common {
    std::string family;
    std::string preset;
    std::string g, h, a, q;
    bool override_ = false;
    std::string format = "json";
    std::string out;
};

void add_common(CLI::App* sub, Common& c) {
    sub->set_help_flag("--help", "print this help");
    sub->add_option("--family", c.family, "L, J, W or AW");
    sub->add_option("--preset", c.preset, "preset name (l-default, j-default, w-default, aw-default) or JSON file");
    sub->add_option("--g", c.g, "L/J parameter g");
    sub->add_option("--h", c.h, "J parameter h");
    sub->add_option("--a", c.a, "W/AW parameters a1,a2,a3,a4");
    sub->add_option("--q", c.q, "AW base q in (0,1)");
    sub->add_flag("--override", c.override_, "skip physical parameter range checks");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", c.out, "output file (default stdout)");
}

std::vector<Rational> parse_list(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    return out;
}

bool has_inline(const Common& c) { return !(c.g.empty() && c.h.empty() && c.a.empty() && c.q.empty()); }

FamilyParams resolve(const Common& c) {
    std::optional<FamilyParams> base;
    if (!c.preset.empty()) {
        base = named_preset(c.preset);
        if (!base) base = load_params_file(c.preset);
        if (!c.family.empty() && parse_family(c.family) != base->family())
            throw ConfigurationError("--family " + c.family + " conflicts with preset family " +
                                     to_string(base->family()));
    } else if (!c.family.empty()) {
        base = preset(parse_family(c.family));
    } else {
        throw ConfigurationError("--family or --preset is required");
    }
    FamilyParams fp = *base;
    if (has_inline(c)) {
        switch (fp.family()) {
            case Family::L:
                if (!c.h.empty() || !c.a.empty() || !c.q.empty())
                    throw ConfigurationError("L takes only --g");
                if (!c.g.empty()) fp = FamilyParams::laguerre(parse_rational(c.g));
                break;
            case Family::J:
                if (!c.a.empty() || !c.q.empty()) throw ConfigurationError("J takes only --g and --h");
                fp = FamilyParams::jacobi(c.g.empty() ? fp.g() : parse_rational(c.g),
                                          c.h.empty() ? fp.h() : parse_rational(c.h));
                break;
            case Family::W:
            case Family::AW: {
                if (!c.g.empty() || !c.h.empty()) throw ConfigurationError("W/AW take --a (and --q for AW)");
                if (fp.family() == Family::W && !c.q.empty()) throw ConfigurationError("W takes no --q");
                std::array<Rational, 4> a{fp.a(1), fp.a(2), fp.a(3), fp.a(4)};
                if (!c.a.empty()) {
                    auto v = parse_list(c.a);
                    if (v.size() != 4) throw ConfigurationError("--a needs four comma-separated rationals");
                    std::copy(v.begin(), v.end(), a.begin());
                }
                if (fp.family() == Family::W)
                    fp = FamilyParams::wilson(a);
                else
                    fp = FamilyParams::askey_wilson(a, c.q.empty() ? fp.q() : parse_rational(c.q));
                break;
            }
        }
    }
    if (c.override_ || base->algebraic_override()) fp = fp.with_override();
    fp.validate();
    return fp;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigurationError("cannot write '" + path + "'");
        }
    }
    std::ostream& operator()() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::string join(const Json& arr, char sep) {
    std::string s;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (i) s += sep;
        s += arr[i].get<std::string>();
    }
    return s;
}

std::optional<EntryIndex> parse_corrupt(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto v = std::vector<long>{};
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stol(item));
    if (v.size() != 3) throw ConfigurationError("--corrupt expects s,n,k");
    return EntryIndex{static_cast<int>(v[0]), v[1], static_cast<int>(v[2])};
}

// ---------------------------------------------------------------------------

struct GenArgs {
    std::string D;
    long N = 8;
};

int cmd_gen(const Common& c, const GenArgs& g) {
    if (c.format != "json") throw ConfigurationError("gen writes JSON only");
    FamilyParams fp = resolve(c);
    IndexSet D = IndexSet::parse(g.D);
    if (g.N < 0) throw ConfigurationError("--N must be non-negative");
    Json j = with_eta_scalar(fp, [&](auto tag) { return pair_to_json(build_pair<decltype(tag)>(fp, D, g.N)); });
    Output out(c.out);
    out() << j.dump(2) << "\n";
    return 0;
}

struct RtableArgs {
    int M = 1;
    std::string window;
    std::string corrupt;
};

int cmd_rtable(const Common& c, const RtableArgs& r) {
    FamilyParams fp = resolve(c);
    if (r.M < 0) throw ConfigurationError("--M must be non-negative");
    auto [lo, hi] = r.window.empty() ? std::pair<long, long>{-r.M - 1, 8} : parse_range(r.window);
    TableOptions opt;
    opt.corrupt = parse_corrupt(r.corrupt);
    Json j = with_eta_scalar(fp, [&](auto tag) {
        using S = decltype(tag);
        return rtable_to_json(build_rtable<S>(fp, r.M, lo, hi, opt));
    });
    if (r.M == 0) {
        ThreeTermTable tt(fp, lo, hi);
        Json rows = Json::array();
        for (long n = lo; n <= hi; ++n) {
            const auto& t = tt.at(n);
            rows.push_back({{"n", n}, {"A", to_string(t.A)}, {"B", to_string(t.B)}, {"C", to_string(t.C)}});
        }
        j["three_term"] = rows;
    }
    Output out(c.out);
    if (c.format == "json") {
        out() << j.dump(2) << "\n";
    } else {
        out() << "# provenance " << j["provenance"].dump() << "\n";
        out() << "s,n,k,coeffs\n";
        for (const auto& row : j["rows"])
            out() << row["s"] << "," << row["n"] << "," << row["k"] << "," << join(row["coeffs"], ';') << "\n";
    }
    return 0;
}

struct VerifyArgs {
    std::string D;
    std::vector<int> Ms;
    std::string identity = "all";
    std::string n_range;
    std::string corrupt;
    std::optional<std::uint64_t> seed;
};

struct Job {
    FamilyParams fp;
    IndexSet D;
};

bool wanted(const std::string& filter, const std::string& identity) {
    if (filter == "all") return true;
    if (filter == "tables")
        return identity == "rprop" || identity == "rprop2" || identity == "rprop3" || identity == "self-conjugate" ||
               identity == "vanishing-region" || identity == "degree-law";
    return identity == filter;
}

int cmd_verify(const Common& c, const VerifyArgs& v) {
    std::vector<FamilyParams> families;
    if (c.family.empty() && c.preset.empty() && !has_inline(c)) {
        for (Family f : {Family::L, Family::J, Family::W, Family::AW}) families.push_back(preset(f));
    } else {
        families.push_back(resolve(c));
    }
    long n_hi = 8;
    std::optional<long> n_lo;
    if (!v.n_range.empty()) {
        auto [lo, hi] = parse_range(v.n_range);
        n_lo = lo;
        n_hi = hi;
    }
    TableOptions topt;
    topt.corrupt = parse_corrupt(v.corrupt);

    std::vector<Job> jobs;
    std::vector<int> Ms = v.Ms;
    std::optional<IndexSet> fixed;
    if (!v.D.empty()) {
        fixed = IndexSet::parse(v.D);
        Ms = {fixed->M()};
    } else if (Ms.empty()) {
        Ms = {1, 2, 3};
    }
    for (const auto& fp : families)
        for (int M : Ms) {
            if (fixed) {
                jobs.push_back({fp, *fixed});
                continue;
            }
            for (auto& D : default_index_sets(M)) jobs.push_back({fp, D});
        }

    std::mt19937_64 rng(v.seed.value_or(0));
    std::vector<std::vector<std::size_t>> perms(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!v.seed) continue;
        perms[i].resize(static_cast<std::size_t>(jobs[i].D.M()));
        std::iota(perms[i].begin(), perms[i].end(), std::size_t{0});
        std::shuffle(perms[i].begin(), perms[i].end(), rng);
    }

    // one block of output objects per job, filled concurrently, emitted in order
    std::vector<std::vector<Json>> blocks(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        const auto& job = jobs[i];
        SuiteOptions opt;
        opt.n_hi = n_hi;
        opt.n_lo = n_lo;
        opt.perm = perms[i];
        opt.table = topt;
        auto prov = provenance(job.fp, &job.D, n_hi, "verify");
        std::vector<VerificationReport> reports;
        try {
            reports = with_eta_scalar(job.fp, [&](auto tag) { return run_suite<decltype(tag)>(job.fp, job.D, opt); });
        } catch (const Error& e) {
            // a construction error is a failed check, not a crash
            Json j;
            j["identity"] = "suite";
            j["family"] = to_string(job.fp.family());
            j["D"] = job.D.to_string();
            j["status"] = "fail";
            j["witness"] = e.what();
            j["provenance"] = prov;
            blocks[i].push_back(std::move(j));
            return;
        }
        for (const auto& r : reports) {
            if (!wanted(v.identity, r.identity)) continue;
            Json j = report_to_json(r);
            j["provenance"] = prov;
            blocks[i].push_back(std::move(j));
        }
    });

    // structural table checks once per (family, M)
    std::vector<Json> table_block;
    for (const auto& fp : families) {
        if (wanted(v.identity, "three-term")) {
            const long top = std::max(n_hi, 12L);
            Json j = report_to_json(check_three_term(fp, top));
            j["provenance"] = provenance(fp, nullptr, top, "verify");
            table_block.push_back(std::move(j));
        }
        for (int M : Ms) {
            const long lo = std::min(n_lo.value_or(-M - 1), -M - 1L);
            for (const auto& tc : table_checks(fp, M, lo, n_hi, topt)) {
                std::string id = tc.identity;
                if (!wanted(v.identity, id)) continue;
                Json j = table_check_to_json(tc, fp, M, lo, n_hi);
                j["provenance"] = provenance(fp, nullptr, n_hi, "verify");
                table_block.push_back(std::move(j));
            }
        }
    }

    Output out(c.out);
    bool all = true;
    std::optional<std::string> first;
    long count = 0;
    auto emit = [&](const Json& j) {
        ++count;
        const bool ok = j["status"] == "pass";
        if (!ok && !first) {
            std::string w = j.contains("witness") ? j["witness"].dump() : "(none)";
            if (j["witness"].is_object())
                w = "(s,n,k) = (" + j["witness"]["s"].dump() + "," + j["witness"]["n"].dump() + "," +
                    j["witness"]["k"].dump() + "): " + j["witness"]["detail"].get<std::string>();
            std::string D = j.contains("D") ? " D=" + j["D"].get<std::string>() : "";
            first = j["identity"].get<std::string>() + " " + j["family"].get<std::string>() + D + " witness " + w;
        }
        all = all && ok;
        if (c.format == "json") {
            out() << j.dump() << "\n";
        } else {
            std::string D = j.contains("D") ? j["D"].get<std::string>() : "";
            std::string w = j.contains("witness") ? j["witness"].dump() : "";
            std::replace(w.begin(), w.end(), ',', ';');
            out() << j["identity"].get<std::string>() << "," << j["family"].get<std::string>() << "," << D << ","
                  << j["status"].get<std::string>() << "," << w << "\n";
        }
    };
    if (c.format == "csv") out() << "identity,family,D,status,witness\n";
    for (const auto& j : table_block) emit(j);
    for (const auto& b : blocks)
        for (const auto& j : b) emit(j);
    if (count == 0) throw ConfigurationError("no check matches --identity " + v.identity);
    if (!all) {
        std::cerr << "FAIL " << *first << "\n";
        return 1;
    }
    std::cerr << "all " << count << " checks passed\n";
    return 0;
}

struct OrthoArgs {
    std::string D;
    std::string n = "0..8";
};

int cmd_ortho(const Common& c, const OrthoArgs& o) {
    FamilyParams fp = resolve(c);
    if (fp.algebraic_override())
        throw ConfigurationError("orthogonality is not checked at algebraic-override parameters");
    IndexSet D = IndexSet::parse(o.D);
    auto [lo, hi] = parse_range(o.n);
    if (lo < 0) throw ConfigurationError("--n must be non-negative");
    auto pair = build_LJ(fp, D, hi);
    Weight w(fp, D, pair.Xi);
    std::vector<std::pair<long, long>> nm;
    for (long n = lo; n <= hi; ++n)
        for (long m = n; m <= hi; ++m) nm.emplace_back(n, m);
    std::vector<OrthogonalityResult> res(nm.size());
    parallel_for(nm.size(), [&](std::size_t i) { res[i] = orthogonality_check(w, pair, nm[i].first, nm[i].second); });

    auto num = [](long double x) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.18Lg", x);
        return std::string(buf);
    };
    Output out(c.out);
    Json prov = provenance(fp, &D, hi, "ortho");
    if (c.format == "json") {
        Json rows = Json::array();
        for (const auto& r : res)
            rows.push_back({{"n", r.n},
                            {"m", r.m},
                            {"integral", num(r.integral)},
                            {"expected", num(r.expected)},
                            {"rel_err", num(r.rel_err)}});
        out() << Json{{"provenance", prov}, {"rows", rows}}.dump(2) << "\n";
    } else {
        out() << "# provenance " << prov.dump() << "\n";
        out() << "n,m,integral,expected,rel_err\n";
        for (const auto& r : res)
            out() << r.n << "," << r.m << "," << num(r.integral) << "," << num(r.expected) << "," << num(r.rel_err)
                  << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-indexed orthogonal polynomials: construction, recurrence tables, verification"};
    app.require_subcommand(1);

    Common common;
    GenArgs gen;
    RtableArgs rt;
    VerifyArgs ver;
    OrthoArgs ortho;

    auto* g = app.add_subcommand("gen", "build Xi_D and P_{D,0..N}");
    add_common(g, common);
    g->add_option("--D", gen.D, "index set, e.g. I1,II2")->required();
    g->add_option("--N", gen.N, "highest n");

    auto* r = app.add_subcommand("rtable", "recurrence coefficient table R[s]_{n,k}");
    add_common(r, common);
    r->add_option("--M", rt.M, "depth");
    r->add_option("--window", rt.window, "n window at the top level, lo..hi");
    r->add_option("--corrupt", rt.corrupt, "perturb entry s,n,k (testing)");

    auto* v = app.add_subcommand("verify", "exact identity checks; exit 1 on the first failure");
    add_common(v, common);
    v->add_option("--D", ver.D, "single index set (default: built-in sets per M)");
    v->add_option("--M", ver.Ms, "depths to sweep (default 1 2 3)");
    v->add_option("--identity", ver.identity,
                  "all, tables, three-term, rprop, rprop2, rprop3, self-conjugate, vanishing-region, degree-law, "
                  "genericity, rrp, rrp-b-1=7, regenerate, seed, prefix-chain, permutation");
    v->add_option("--n-range", ver.n_range, "lo..hi for the recurrence check");
    v->add_option("--corrupt", ver.corrupt, "perturb table entry s,n,k (testing)");
    v->add_option("--seed", ver.seed, "random column permutation for the order check");

    auto* o = app.add_subcommand("ortho", "float orthogonality (L, J)");
    add_common(o, common);
    o->add_option("--D", ortho.D, "index set")->required();
    o->add_option("--n", ortho.n, "lo..hi");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    // ortho prints CSV unless told otherwise
    if (o->parsed() && o->count("--format") == 0) common.format = "csv";

    try {
        if (g->parsed()) return cmd_gen(common, gen);
        if (r->parsed()) return cmd_rtable(common, rt);
        if (v->parsed()) return cmd_verify(common, ver);
        return cmd_ortho(common, ortho);
    } catch (const miop::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
