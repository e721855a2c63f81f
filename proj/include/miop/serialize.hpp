#pragma once

// JSON encoding of parameters, polynomials, tables and reports. Exact
// scalars are always strings; key order is fixed so output is reproducible.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "miop/errors.hpp"
#include "miop/families.hpp"
#include "miop/multiindex.hpp"
#include "miop/rtable.hpp"
#include "miop/verify.hpp"

namespace miop {

using Json = nlohmann::ordered_json;

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// "lo..hi" (either bound may be negative).
inline std::pair<long, long> parse_range(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            long v = std::stol(text);
            return {v, v};
        }
        long lo = std::stol(text.substr(0, dots));
        long hi = std::stol(text.substr(dots + 2));
        if (hi < lo) throw ConfigurationError("empty range '" + text + "'");
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw ConfigurationError("bad range '" + text + "' (expected lo..hi)");
    }
}

template <class S>
Json poly_to_json(const Poly<S>& p) {
    Json a = Json::array();
    for (const auto& c : p.coeffs()) a.push_back(to_string(c));
    return a;
}

inline Json params_to_json(const FamilyParams& fp) {
    Json j;
    j["family"] = to_string(fp.family());
    switch (fp.family()) {
        case Family::L: j["g"] = to_string(fp.g()); break;
        case Family::J:
            j["g"] = to_string(fp.g());
            j["h"] = to_string(fp.h());
            break;
        case Family::W:
        case Family::AW: {
            Json a = Json::array();
            for (int i = 1; i <= 4; ++i) a.push_back(to_string(fp.a(i)));
            j["a"] = a;
            if (fp.family() == Family::AW) j["q"] = to_string(fp.q());
            break;
        }
    }
    return j;
}

/// The lambda block alone (no family key).
inline Json lambda_to_json(const FamilyParams& fp) {
    Json j = params_to_json(fp);
    j.erase("family");
    return j;
}

inline FamilyParams params_from_json(const Json& j) {
    auto str = [&](const char* key) -> std::string {
        if (!j.contains(key)) throw ConfigurationError(std::string("preset is missing '") + key + "'");
        const auto& v = j.at(key);
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    Family f = parse_family(str("family"));
    FamilyParams fp;
    switch (f) {
        case Family::L: fp = FamilyParams::laguerre(parse_rational(str("g"))); break;
        case Family::J: fp = FamilyParams::jacobi(parse_rational(str("g")), parse_rational(str("h"))); break;
        case Family::W:
        case Family::AW: {
            if (!j.contains("a") || !j.at("a").is_array() || j.at("a").size() != 4)
                throw ConfigurationError("preset needs 'a' as an array of four rationals");
            std::array<Rational, 4> a;
            for (std::size_t i = 0; i < 4; ++i) {
                const auto& v = j.at("a")[i];
                a[i] = parse_rational(v.is_string() ? v.get<std::string>() : v.dump());
            }
            fp = f == Family::W ? FamilyParams::wilson(a) : FamilyParams::askey_wilson(a, parse_rational(str("q")));
            break;
        }
    }
    if (j.contains("override") && j.at("override").get<bool>()) fp = fp.with_override();
    return fp;
}

inline FamilyParams load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot open preset file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigurationError("preset file '" + path + "': " + e.what());
    }
    return params_from_json(j);
}

inline Json index_set_to_json(const IndexSet& D) {
    Json a = Json::array();
    for (const auto& e : D.entries()) a.push_back(Json::array({to_string(e.type), e.degree}));
    return a;
}

/// Traceability block embedded in every output.
inline Json provenance(const FamilyParams& fp, const IndexSet* D, long N, const std::string& command) {
    Json p;
    p["command"] = command;
    p["family"] = to_string(fp.family());
    p["lambda"] = lambda_to_json(fp);
    if (D) p["D"] = D->to_string();
    p["N"] = N;
    p["preset_hash"] = fnv1a_hex(params_to_json(fp).dump());
    p["algebraic_override"] = fp.algebraic_override();
    const bool x = fp.is_xpicture_family();
    p["construction"] = x ? "casoratian in the x-picture, reduced to eta" : "gauged wronskian in eta";
    return p;
}

template <class S>
Json pair_to_json(const MultiIndexedPair<S>& pair) {
    Json j;
    j["provenance"] = provenance(pair.params, &pair.D, pair.n_max(), "gen");
    j["family"] = to_string(pair.params.family());
    j["lambda"] = lambda_to_json(pair.params);
    j["D"] = index_set_to_json(pair.D);
    j["ell"] = pair.D.ell();
    j["variable"] = "eta";
    j["Xi"] = poly_to_json(pair.Xi);
    Json P;
    for (long n = 0; n <= pair.n_max(); ++n) P[std::to_string(n)] = poly_to_json(pair.at(n));
    j["P"] = P;
    if (pair.xi_radicand != 1 || pair.p_radicand != 1)
        j["radicands"] = {{"Xi", to_string(pair.xi_radicand)}, {"P", to_string(pair.p_radicand)}};
    return j;
}

template <class S>
Json rtable_to_json(const RTable<S>& t) {
    Json rows = Json::array();
    for (int s = 0; s <= t.M(); ++s)
        for (long n = t.level_lo(s); n <= t.level_hi(s); ++n)
            for (int k = -s - 1; k <= s + 1; ++k) {
                Json r;
                r["s"] = s;
                r["n"] = n;
                r["k"] = k;
                r["coeffs"] = poly_to_json(t.at(s, n, k));
                rows.push_back(r);
            }
    Json j;
    j["provenance"] = provenance(t.params(), nullptr, t.M(), "rtable");
    j["M"] = t.M();
    j["window"] = {t.lo(), t.hi()};
    j["rows"] = rows;
    return j;
}

inline Json report_to_json(const VerificationReport& r) {
    Json j;
    j["identity"] = r.identity;
    j["family"] = r.family;
    j["lambda"] = r.lambda;
    j["D"] = r.D;
    j["n_range"] = {r.n_lo, r.n_hi};
    j["status"] = r.pass ? "pass" : "fail";
    if (r.witness) j["witness"] = *r.witness;
    if (r.constant) j["constant"] = *r.constant;
    if (!r.detail.empty()) j["detail"] = r.detail;
    if (!r.rows.empty()) {
        Json rows = Json::array();
        for (const auto& row : r.rows) {
            Json x;
            x["n"] = row.n;
            x["status"] = row.pass ? "pass" : "fail";
            if (!row.note.empty()) x["kind"] = row.note;
            rows.push_back(x);
        }
        j["rows"] = rows;
    }
    return j;
}

inline Json table_check_to_json(const TableCheck& c, const FamilyParams& fp, int M, long lo, long hi) {
    Json j;
    j["identity"] = c.identity;
    j["family"] = to_string(fp.family());
    j["lambda"] = fp.lambda_strings();
    j["M"] = M;
    j["window"] = {lo, hi};
    j["checked"] = c.checked;
    j["status"] = c.pass() ? "pass" : "fail";
    if (!c.pass()) {
        const auto& v = c.violations.front();
        j["witness"] = {{"s", v.at.s}, {"n", v.at.n}, {"k", v.at.k}, {"detail", v.detail}};
        j["violations"] = c.violations.size();
    }
    return j;
}

}  // namespace miop
