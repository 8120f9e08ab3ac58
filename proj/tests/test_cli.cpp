#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "t310/analysis.hpp"
#include "t310/cli.hpp"

using json = nlohmann::json;
using t310::cli::dispatch;

namespace {

const std::string kKeys = fixtures::keys_path();

json result_of(const t310::cli::RunResult& r) { return json::parse(r.report)["result"]; }

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("/tmp/t310_test_" + name) {
        std::ofstream f(path, std::ios::binary);
        f << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("inv verify: the compact-FE fixture passes 8/8 cases") {
    auto r = dispatch({"inv", "verify", "--lzs", kKeys + "#827", "--z",
                       "e+be+ce+bce+bf+bcf+bef+bcef", "--inv",
                       "a+b+c+ac+d+bd+e+ce+f+df+g+ag+eg+h+bh+fh"});
    CHECK(r.exit_code == 0);
    json res = result_of(r);
    CHECK(res["holds"] == true);
    CHECK(res["cases"].size() == 8);
}

TEST_CASE("fe build prints the canonical FE") {
    auto r = dispatch({"fe", "build", "--lzs", kKeys + "#991", "--inv",
                       "an+gn+u+v+w+x+O+P+Q+R", "--mode", "opaque"});
    CHECK(r.exit_code == 0);
    CHECK(result_of(r)["fe"] == "W+a+an+bo+gn+ho");
}

TEST_CASE("fe specialize at a partial case") {
    auto r = dispatch({"fe", "specialize", "--lzs", kKeys + "#317", "--inv",
                       "efg+efh+egh+fgh+fg", "--case", "F=0"});
    CHECK(r.exit_code == 0);
    CHECK(result_of(r)["fe"] == "Zfg+Zfh+Zgh+fg+gh");
}

TEST_CASE("fe solve: unique 991 solution with the printed ANF") {
    auto r = dispatch({"fe", "solve", "--lzs", kKeys + "#991", "--inv",
                       "an+gn+u+v+w+x+O+P+Q+R"});
    CHECK(r.exit_code == 0);
    json res = result_of(r);
    CHECK(res["kind"] == "affine-subspace");
    CHECK(res["dimension"] == 0);
    CHECK(res["particular"]["anf"] == "a+ae+bf+ce+df");
}

TEST_CASE("fe check exit code reflects the verdict") {
    auto ok = dispatch({"fe", "check", "--lzs", kKeys + "#551", "--z", "1+d+e+f+de+cde+def",
                        "--inv", "eg+fh+eo+fp+gm+hn+mo+np"});
    CHECK(ok.exit_code == 0);
    auto bad = dispatch({"fe", "check", "--lzs", kKeys + "#551", "--z", "a", "--inv",
                         "eg+fh+eo+fp+gm+hn+mo+np"});
    CHECK(bad.exit_code == 1);
    CHECK(result_of(bad)["holds"] == false);
}

TEST_CASE("inv bias: counts match the library") {
    auto r = dispatch({"inv", "bias", "--inv", "eg+fh+eo+fp+gm+hn+mo+np", "--event",
                       "e=1,f=1,g=1", "--cond", "0"});
    CHECK(r.exit_code == 0);
    json res = result_of(r);
    CHECK(res["zero_count"] == 160);
    std::vector<t310::EventFix> ev = {{t310::var_from_letter('e'), 1},
                                      {t310::var_from_letter('f'), 1},
                                      {t310::var_from_letter('g'), 1}};
    CHECK(res["count"] == t310::event_count(fixtures::inv551(), ev, 0));
    CHECK(res["expected"] == 20.0);
}

TEST_CASE("inv minbias and factor") {
    auto r = dispatch({"inv", "minbias", "--inv", "eg+fh+eo+fp+gm+hn+mo+np"});
    CHECK(r.exit_code == 0);
    CHECK(result_of(r)["min_biased_n"] == 2);
    auto f = dispatch({"inv", "factor", "--inv", "ab"});
    CHECK(f.exit_code == 0);
    CHECK(result_of(f)["irreducible"] == false);
}

TEST_CASE("lzs commands") {
    auto v = dispatch({"lzs", "validate", "--lzs", kKeys + "#991"});
    CHECK(v.exit_code == 0);
    CHECK(result_of(v)["tier"] == 2);
    auto v1 = dispatch({"lzs", "validate", "--lzs", kKeys + "#317", "--require-tier", "1"});
    CHECK(v1.exit_code == 1);

    auto k = dispatch({"lzs", "kt1-check", "--lzs", kKeys + "#991"});
    CHECK(k.exit_code == 0);
    CHECK(result_of(k)["cycle"] == json({1, 4, 2, 9, 8, 7, 6, 5, 3}));
    auto k317 = dispatch({"lzs", "kt1-check", "--lzs", kKeys + "#317"});
    CHECK(k317.exit_code == 1);

    auto p = dispatch({"lzs", "parse", "--lzs", kKeys + "#827"});
    CHECK(p.exit_code == 0);
    CHECK(result_of(p)["key"] == t310::format_lzs(fixtures::key("827")));
}

TEST_CASE("lzs keygen requires a seed and honors it") {
    TempFile cons("cons.json", R"({"tier": 1, "fixed": {"D9": 32, "D8": 36}})");
    auto no_seed = dispatch({"lzs", "keygen", "--constraints", cons.path});
    CHECK(no_seed.exit_code == 2);
    auto a = dispatch({"lzs", "keygen", "--constraints", cons.path, "--count", "2", "--seed", "9"});
    auto b = dispatch({"lzs", "keygen", "--constraints", cons.path, "--count", "2", "--seed", "9"});
    CHECK(a.exit_code == 0);
    CHECK(a.report == b.report);   // byte-identical
    CHECK(result_of(a)["keys"].size() == 2);
}

TEST_CASE("round eval matches the library") {
    auto r = dispatch({"round", "eval", "--lzs", kKeys + "#847", "--z", "d+cd+bd+bcd+cf+bcf+cdf+bcdf",
                       "--state", "000000000000000000000000000000000000", "--rb", "1,0,1"});
    CHECK(r.exit_code == 0);
    t310::State s{};
    t310::State expect =
        t310::round_eval(fixtures::key("847"), fixtures::z847(), s, t310::RoundBits{1, 0, 1});
    CHECK(result_of(r)["state"] == t310::format_state(expect));
}

TEST_CASE("fe dimacs writes a CNF file") {
    auto r = dispatch({"fe", "dimacs", "--lzs", kKeys + "#991", "--inv", "an+gn+u+v+w+x+O+P+Q+R",
                       "--out", "/tmp/t310_test_out.cnf"});
    CHECK(r.exit_code == 0);
    std::ifstream f("/tmp/t310_test_out.cnf");
    std::string first;
    std::getline(f, first);
    CHECK(first.substr(0, 1) == "c");
    std::remove("/tmp/t310_test_out.cnf");
}

TEST_CASE("spaces subcommands work on a space file") {
    // Flat pre-FE rows generated from the factored fixtures.
    std::string space_text;
    for (const auto& p : fixtures::prefe_z1z4()) space_text += t310::format_poly(p) + "\n";
    TempFile sp("space.txt", space_text);
    auto red = dispatch({"spaces", "reduce", "--space", sp.path, "--eliminate", "F,P6"});
    CHECK(red.exit_code == 0);
    json steps = result_of(red)["steps"];
    CHECK(steps[0]["dimension"] == 8);
    CHECK(steps[1]["dimension"] == 6);
    CHECK(steps[2]["dimension"] == 4);

    std::string printed3;
    printed3 += "Zc+Wc+ZM+WQ+Zg+Wg+WM+ZQ\n";
    printed3 += "WR+Wf+WN+Zh+Zz+ZP+Zd+Wb\n";
    printed3 += "ZW+Za+Ze+Wy+WO\n";
    TempFile sp3("space3.txt", printed3);
    auto scan = dispatch({"spaces", "scan", "--space", sp3.path});
    CHECK(scan.exit_code == 0);
    CHECK(result_of(scan)["passing"].size() == 2);

    auto orbit = dispatch({"spaces", "orbit", "--lzs", kKeys + "#827", "--seed-monomials", "bd",
                           "--degree-cap", "2", "--ignore", "F,Z"});
    CHECK(orbit.exit_code == 0);
    json edges = result_of(orbit)["edges"];
    bool found = false;
    for (const auto& e : edges) found = found || (e["from"] == "bd" && e["to"] == "ce");
    CHECK(found);
}

TEST_CASE("inv simulate: exit codes and CSV output") {
    auto ok = dispatch({"inv", "simulate", "--lzs", kKeys + "#827", "--z",
                        "e+be+ce+bce+bf+bcf+bef+bcef", "--inv",
                        "a+b+c+ac+d+bd+e+ce+f+df+g+ag+eg+h+bh+fh", "--rounds", "30", "--samples",
                        "20", "--seed", "5"});
    CHECK(ok.exit_code == 0);
    CHECK(result_of(ok)["failures"] == 0);

    auto bad = dispatch({"inv", "simulate", "--lzs", kKeys + "#827", "--z",
                         "e+be+ce+bce+bf+bcf+bef+bcef", "--inv", "ab+cd", "--rounds", "30",
                         "--samples", "20", "--seed", "5"});
    CHECK(bad.exit_code == 1);

    auto probe = dispatch({"inv", "simulate", "--lzs", kKeys + "#551", "--z", "1+d+e+f+de+cde+def",
                           "--inv", "eg+fh+eo+fp+gm+hn+mo+np", "--probe", "efg", "--rounds", "10",
                           "--samples", "200", "--seed", "5", "--out", "/tmp/t310_test_series.csv"});
    CHECK(probe.exit_code == 0);
    std::ifstream f("/tmp/t310_test_series.csv");
    std::string header;
    std::getline(f, header);
    CHECK(header == "round,count,frequency");
    std::remove("/tmp/t310_test_series.csv");

    auto no_seed = dispatch({"inv", "simulate", "--lzs", kKeys + "#827", "--z", "a", "--inv", "ab",
                             "--rounds", "5", "--samples", "5"});
    CHECK(no_seed.exit_code == 2);
}

TEST_CASE("lc scan is empty for the toy key") {
    auto r = dispatch({"lc", "scan", "--lzs", kKeys + "#317", "--z", "a+d+ad+cd+f+af", "--case",
                       "F=0,K=0,L=0"});
    CHECK(r.exit_code == 0);
    CHECK(result_of(r)["dimension"] == 0);
}

TEST_CASE("usage and capacity errors") {
    auto usage = dispatch({"fe", "build", "--lzs", kKeys + "#991"});   // missing --inv
    CHECK(usage.exit_code == 2);
    auto badpoly = dispatch({"inv", "bias", "--inv", "Z99"});
    CHECK(badpoly.exit_code == 2);
    auto toobig = dispatch({"fe", "build", "--lzs", kKeys + "#881", "--inv",
                            t310::format_poly(fixtures::inv881()), "--term-guard", "64"});
    CHECK(toobig.exit_code == 3);
    auto nocmd = dispatch({});
    CHECK(nocmd.exit_code == 2);
}

TEST_CASE("reports are deterministic and carry the schema header") {
    auto a = dispatch({"inv", "bias", "--inv", "ab+cd"});
    auto b = dispatch({"inv", "bias", "--inv", "ab+cd"});
    CHECK(a.report == b.report);
    json top = json::parse(a.report);
    CHECK(top["schema"] == 1);
    CHECK(top["status"] == 0);
    CHECK(top["inputs_digest"].get<std::string>().substr(0, 8) == "fnv1a64:");
    CHECK(top.contains("command"));
}
