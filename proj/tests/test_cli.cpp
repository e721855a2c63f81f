// Drives the miop_cli binary end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, bool merge_stderr = false) {
    std::string cmd = std::string(MIOP_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<nlohmann::json> json_lines(const std::string& s) {
    std::vector<nlohmann::json> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] == '{') out.push_back(nlohmann::json::parse(line));
    return out;
}

std::string preset(const char* name) { return std::string(MIOP_PRESET_DIR) + "/" + name; }

}  // namespace

TEST(CliGen, LaguerreSingleIndex) {
    auto r = run("gen --family L --g 7/3 --D I1 --N 2");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["ell"], 1);
    EXPECT_EQ(j["Xi"], (nlohmann::json{"17/6", "1"}));
    EXPECT_EQ(j["P"]["1"], (nlohmann::json{"-493/36", "0", "1"}));
    EXPECT_EQ(j["provenance"]["command"], "gen");
}

TEST(CliGen, PresetFileAndDegrees) {
    auto r = run("gen --preset " + preset("aw-default.json") + " --D I1,II2 --N 3");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["ell"], 4);
    EXPECT_EQ(j["Xi"].size(), 5u);
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(j["P"][std::to_string(n)].size(), static_cast<std::size_t>(5 + n));
}

TEST(CliGen, BadInputExitsNonZero) {
    EXPECT_EQ(run("gen --family L --D I1,I1").code, 2);
    EXPECT_NE(run("gen --family L").code, 0);
    EXPECT_NE(run("gen --family Q --D I1").code, 0);
}

TEST(CliVerify, DefaultSweepPasses) {
    auto r = run("verify");
    ASSERT_EQ(r.code, 0);
    auto lines = json_lines(r.out);
    ASSERT_GT(lines.size(), 100u);
    for (const auto& l : lines) {
        EXPECT_EQ(l["status"], "pass") << l.dump();
        EXPECT_TRUE(l.contains("provenance"));
    }
}

TEST(CliVerify, CorruptionReportsWitness) {
    for (const char* fam : {"L", "J", "W", "AW"}) {
        auto r = run(std::string("verify --family ") + fam + " --D I1,II1 --corrupt 1,2,0", true);
        EXPECT_EQ(r.code, 1) << fam;
        EXPECT_NE(r.out.find("witness (s,n,k) = (1,2,0)"), std::string::npos) << fam << r.out;
    }
}

TEST(CliVerify, NegativeRowsAreStructural) {
    auto r = run("verify --family J --D I1,II1 --identity rrp --n-range -3..8");
    ASSERT_EQ(r.code, 0);
    auto lines = json_lines(r.out);
    ASSERT_EQ(lines.size(), 1u);
    const auto& rows = lines[0]["rows"];
    ASSERT_EQ(rows.size(), 12u);
    for (const auto& row : rows) {
        EXPECT_EQ(row["status"], "pass");
        EXPECT_EQ(row.value("kind", ""), row["n"].get<int>() < 0 ? "structural" : "");
    }
}

TEST(CliVerify, SeededPermutationIsReproducible) {
    auto a = run("verify --family W --D I1,I2,II1 --identity permutation --seed 11");
    auto b = run("verify --family W --D I1,I2,II1 --identity permutation --seed 11");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(CliRtable, JacobiWindowCsv) {
    auto r = run("rtable --family J --M 2 --window -3..10 --format csv");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("# provenance", 0), 0u);
    EXPECT_NE(r.out.find("\ns,n,k,coeffs\n"), std::string::npos);
    EXPECT_NE(r.out.find("\n2,10,3,"), std::string::npos);
    EXPECT_EQ(r.out.find("\n3,"), std::string::npos);
}

TEST(CliRtable, LevelZeroCarriesThreeTermData) {
    auto r = run("rtable --preset " + preset("w-default.json") + " --M 0 --window 0..3");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    ASSERT_TRUE(j.contains("three_term"));
    EXPECT_GE(j["three_term"].size(), 4u);
}

TEST(CliOrtho, CsvWithinTolerance) {
    auto r = run("ortho --family L --D I1 --n 0..3");
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'n') continue;
        auto last = line.rfind(',');
        EXPECT_LT(std::stod(line.substr(last + 1)), 1e-8) << line;
        ++rows;
    }
    EXPECT_EQ(rows, 10);
    EXPECT_NE(run("ortho --family L --D II2 --n 0..1").code, 0);
}

TEST(CliDeterminism, RepeatedRunsAreByteIdentical) {
    for (const char* args : {"gen --family J --D I1,II1 --N 5", "rtable --family AW --M 2 --window -2..4",
                             "verify --family L --M 2", "ortho --family J --D I1 --n 0..2"}) {
        auto a = run(args), b = run(args);
        EXPECT_EQ(a.code, b.code) << args;
        EXPECT_EQ(a.out, b.out) << args;
    }
}

TEST(CliPreset, NamedAndFilePresetsAgree) {
    auto a = run("gen --preset l-default --D II1 --N 2");
    auto b = run("gen --preset " + preset("l-default.json") + " --D II1 --N 2");
    ASSERT_EQ(a.code, 0);
    auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
    EXPECT_EQ(ja["P"], jb["P"]);
    auto q3 = run("gen --preset " + preset("aw-q-third.json") + " --D I1 --N 1");
    EXPECT_EQ(q3.code, 0);
}
