#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "relaysim/cli.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kScenarios{RELAYSIM_SCENARIO_DIR};

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = relaysim::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

struct TempDir {
    fs::path path;
    explicit TempDir(std::string_view tag)
        : path(fs::temp_directory_path() / fmt_name(tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    static std::string fmt_name(std::string_view tag) {
        return "relaysim-test-" + std::string(tag) + "-" + std::to_string(::getpid());
    }
};

fs::path write_scenario(const fs::path& dir, std::string_view name, std::string_view text) {
    const auto p = dir / name;
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_CASE("causality") {
    auto r = invoke({"causality", "1.10", "4.0e8", "0.98c"});
    CHECK(r.code == 0);
    CHECK(r.out.find("5.02519") != std::string::npos);
    CHECK(r.out.find("-1.04308") != std::string::npos);
    CHECK(r.out.find("3.86054e+08") != std::string::npos);
    CHECK(r.out.find("Spacelike") != std::string::npos);

    r = invoke({"causality", "1", "0", "0", "--format", "json-lines"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"class\":\"Timelike\"") != std::string::npos);
    CHECK(r.out.find("\"dt_prime_s\":\"1\"") != std::string::npos);

    r = invoke({"causality", "1", "3.64e8", "0", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find("3.64e+08") != std::string::npos);
    CHECK(r.out.find("Spacelike") != std::string::npos);

    CHECK(invoke({"causality", "1", "1", "1.0c"}).code == 4);
    CHECK(invoke({"causality", "1", "1", "fast"}).code == 2);
    CHECK(invoke({"causality", "1"}).code == 2);
}

TEST_CASE("difficulty") {
    auto r = invoke({"difficulty", "1903a30c"});
    CHECK(r.code == 0);
    CHECK(r.out.find("22829202948393929850749706076701368331072452018388575715328") != std::string::npos);
    CHECK(r.out.find("2.2829e+58") != std::string::npos);

    r = invoke({"difficulty", "03000042", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find(",66,") != std::string::npos);

    r = invoke({"difficulty", "ff000001"});
    CHECK(r.code == 4);
    CHECK_FALSE(r.err.empty());
    CHECK(invoke({"difficulty", "xyz"}).code == 2);
    CHECK(invoke({"difficulty", "1903a30c00"}).code == 2);
    CHECK(invoke({"difficulty", "1903a30c", "--format", "yaml"}).code == 2);
}

TEST_CASE("plan") {
    TempDir tmp("plan");
    const auto sat = write_scenario(tmp.path, "sat.scn", "[topology]\nkind = satellite\nr1 = 10ls\nperiod = 1d\n");
    auto r = invoke({"plan", sat.string(), "--output-dir", (tmp.path / "out").string()});
    CHECK(r.code == 0);
    const auto doc = slurp(tmp.path / "out" / "plan.txt");
    CHECK(doc.find("b_min_s = 5\n") != std::string::npos);
    CHECK(doc.find("rule = satellite\n") != std::string::npos);

    const auto conc = write_scenario(tmp.path, "c.scn", "[topology]\nkind = concentric\nradii = 4ls 6ls\n");
    r = invoke({"plan", conc.string(), "--output-dir", tmp.path.string(), "--format", "json-lines"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"b_min_s\":\"5\"") != std::string::npos);

    r = invoke({"plan", (kScenarios / "lattice.scn").string(), "--output-dir", tmp.path.string(),
                "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(slurp(tmp.path / "plan.txt").find("b_min_s = 450\n") != std::string::npos);

    const auto bad = write_scenario(tmp.path, "bad.scn", "[topology]\nkind = satellite\nr1 = ten\n");
    r = invoke({"plan", bad.string(), "--output-dir", tmp.path.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("bad.scn:3:") != std::string::npos);

    const auto split = write_scenario(tmp.path, "split.scn", "[topology]\nkind = explicit-graph\n[nodes]\na 1 x\nb 1 y\n");
    CHECK(invoke({"plan", split.string(), "--output-dir", tmp.path.string()}).code == 3);
    CHECK(invoke({"plan", (tmp.path / "missing.scn").string()}).code != 0);
}

TEST_CASE("simulate") {
    TempDir tmp("sim");
    const auto scn = (kScenarios / "earth_mars.scn").string();
    const auto a = tmp.path / "a", b = tmp.path / "b";
    auto ra = invoke({"simulate", scn, "--output-dir", a.string(), "--duration", "5d"});
    auto rb = invoke({"simulate", scn, "--output-dir", b.string(), "--duration", "5d"});
    REQUIRE(ra.code == 0);
    REQUIRE(rb.code == 0);
    CHECK(ra.out == rb.out);
    for (const char* f : {"summary.txt", "blocks.csv", "transactions.csv"}) {
        CHECK(slurp(a / f) == slurp(b / f));
    }

    const auto summary = slurp(a / "summary.txt");
    CHECK(summary.find("node.earth.share = ") != std::string::npos);
    CHECK(summary.find("node.mars.share = ") != std::string::npos);
    CHECK(summary.find("verdict = single-currency") != std::string::npos);

    const auto mined_pos = summary.find("total_mined = ");
    REQUIRE(mined_pos != std::string::npos);
    const auto total = std::stoul(summary.substr(mined_pos + 14));
    const auto blocks = slurp(a / "blocks.csv");
    CHECK(blocks.starts_with("id,parent,miner,time,height,on_main_chain\n"));
    CHECK(line_count(blocks) == total + 1);
    const auto txs = slurp(a / "transactions.csv");
    CHECK(txs.starts_with("id,created,confirmed,latency\n"));
    CHECK(line_count(txs) == 4);

    auto rc = invoke({"simulate", scn, "--output-dir", a.string(), "--duration", "5d", "--seed", "8"});
    CHECK(rc.code == 0);
    CHECK(slurp(a / "blocks.csv") != slurp(b / "blocks.csv"));

    auto sweep = invoke({"simulate", scn, "--output-dir", (tmp.path / "sweep").string(), "--duration", "2d",
                         "--seeds", "3", "--workers", "2", "--format", "csv"});
    CHECK(sweep.code == 0);
    CHECK(line_count(sweep.out) == 4);
    CHECK(fs::exists(tmp.path / "sweep" / "seed_7" / "blocks.csv"));
    CHECK(fs::exists(tmp.path / "sweep" / "seed_9" / "summary.txt"));

    const auto solo = write_scenario(tmp.path, "solo.scn",
                                     "[topology]\nkind = explicit-graph\n[nodes]\nhome 1 home\n"
                                     "[simulation]\nblocktime = 10s\nduration = 1h\n");
    auto rs = invoke({"simulate", solo.string(), "--output-dir", (tmp.path / "solo").string()});
    CHECK(rs.code == 0);
    CHECK(slurp(tmp.path / "solo" / "summary.txt").find("orphan_rate = 0\n") != std::string::npos);

    CHECK(invoke({"simulate", scn, "--output-dir", a.string(), "--blocktime", "-5s"}).code == 2);
    CHECK(invoke({"simulate", scn, "--seeds", "0"}).code == 2);
}

TEST_CASE("usage errors") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"warp"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}
