#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

#include "cylid/serialize.hpp"

namespace fs = std::filesystem;
using cylid::Json;

namespace {

struct Run {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("cylid_cli_test_" + std::to_string(::getpid())) / name;
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const Json& cfg) {
    const fs::path p = dir / "config.json";
    std::ofstream(p) << cfg.dump(2);
    return p;
}

Run run(const std::string& args, const fs::path& dir) {
    const std::string cmd = std::string(CYLID_CLI_PATH) + " " + args + " > " + (dir / "stdout.txt").string() + " 2> " +
                            (dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(dir / "stdout.txt"), slurp(dir / "stderr.txt")};
}

Run run_config(const std::string& command, const Json& cfg, const fs::path& dir, const std::string& extra = "") {
    const fs::path config = write_config(dir, cfg);
    return run(command + " --config " + config.string() + " --out " + (dir / "out").string() + " " + extra, dir);
}

} // namespace

TEST_CASE("cli: check on the Gaussian gallery entry passes") {
    const fs::path dir = scratch("check");
    const Run r = run_config("check", {{"gallery", "gaussian"}, {"random_point_sets", {{"count", 3}, {"size", 6}}}}, dir);
    CHECK(r.exit_code == 0);
    const Json report = Json::parse(slurp(dir / "out" / "check.json"));
    REQUIRE(report["conditions"].size() == 4);
    for (const Json& row : report["conditions"]) CHECK(row["pass"] == true);
    CHECK(Json::parse(r.out)["pass"] == true);
}

TEST_CASE("cli: drift-only exponent fails with a witness") {
    const fs::path dir = scratch("definiteness");
    const Json cfg{{"gallery", "poisson_drift_only"},
                   {"point_sets", {{{0, 0, 0, 0}, {0.8, 0, 0, 0}, {1.6, 0, 0, 0}}}},
                   {"divisors", {1}}};
    const Run r = run_config("definiteness", cfg, dir);
    CHECK(r.exit_code == 1);
    const Json report = Json::parse(slurp(dir / "out" / "definiteness.json"));
    const Json& sch = report["point_sets"][0]["schoenberg"][0];
    CHECK(sch["verdict"] == "not_semidefinite");
    CHECK(sch["witness"].size() == 3);
    CHECK(sch["witness_form"].get<double>() < 0.0);
}

TEST_CASE("cli: sampling a Gaussian projection") {
    const fs::path dir = scratch("sample");
    const Json cfg{{"gallery", "gaussian"}, {"sample", {{"functional", {0.5, -0.2, 0.1, 0.3}}, {"n", 100000}}}};
    const Run r = run_config("sample", cfg, dir, "--seed 17");
    CHECK(r.exit_code == 0);
    const Json summary = Json::parse(r.out);
    CHECK(summary["oracle"] == "normal");
    CHECK(summary["max_cf_deviation"].get<double>() <= 3.0 / std::sqrt(100000.0));
    CHECK(summary["ks"].get<double>() < summary["ks_critical_1pct"].get<double>());
}

TEST_CASE("cli: sampling a compound Poisson projection uses the lattice oracle") {
    const fs::path dir = scratch("sample_poisson");
    const Json cfg{{"gallery", "poisson"}, {"sample", {{"functional", {0.1, 0.05, 0.1, 0.0}}, {"n", 50000}}}};
    const Run r = run_config("sample", cfg, dir, "--seed 3");
    CHECK(r.exit_code == 0);
    CHECK(Json::parse(r.out)["oracle"] == "poisson");
}

TEST_CASE("cli: reports are bit-identical for identical runs") {
    const Json cfg{{"gallery", "dnu_gaussian"},
                   {"functionals", {{0.3, 0.1, -0.2, 0.5}, {1.0, 0.0, 0.0, 0.0}}},
                   {"t_grid", {{"from", -2.0}, {"to", 2.0}, {"points", 5}}}};
    const fs::path d1 = scratch("ident1");
    const fs::path d2 = scratch("ident2");
    for (const std::string cmd : {"cf", "project"}) {
        CHECK(run_config(cmd, cfg, d1).exit_code == 0);
        CHECK(run_config(cmd, cfg, d2).exit_code == 0);
    }
    const Json scfg{{"gallery", "poisson"}, {"sample", {{"functional", {0.1, 0.2, 0.0, 0.1}}, {"n", 20000}}}};
    CHECK(run_config("sample", scfg, d1, "--seed 5").exit_code == 0);
    CHECK(run_config("sample", scfg, d2, "--seed 5").exit_code == 0);
    for (const char* f : {"cf.csv", "project.json", "sample.csv"}) {
        CAPTURE(f);
        const std::string a = slurp(d1 / "out" / f);
        CHECK_FALSE(a.empty());
        CHECK(a == slurp(d2 / "out" / f));
    }
}

TEST_CASE("cli: dnu and continuity commands") {
    const fs::path dir = scratch("dnu");
    const Json dcfg{{"space", {{"dim", 2}, {"norm", "l2"}}},
                    {"truncation", "ramp"},
                    {"measure", {{"kind", "atoms"}, {"atoms", {{{0.3, 0.2}, 1.0}, {{2.0, -1.0}, 0.5}}}}},
                    {"functionals", {{1.0, 0.5}, {-2.0, 3.0}}}};
    const Run d = run_config("dnu", dcfg, dir);
    CHECK(d.exit_code == 0);
    CHECK(Json::parse(d.out)["radon_extendability"] == "untested");
    CHECK(slurp(dir / "out" / "dnu.csv").find("piece0_bound") != std::string::npos);

    const Json ccfg{{"gallery", "poisson"},
                    {"sequences", {{{"limit", {0.2, -0.1, 0.05, 0.1}}, {"direction", {0.001, 0.0, 0.0, 0.0}}, {"count", 64}}}}};
    const Run r = run_config("continuity", ccfg, dir);
    CHECK(r.exit_code == 0);
    CHECK(Json::parse(r.out)["sequences"][0]["continuity_pass"] == true);
}

TEST_CASE("cli: gallery surface") {
    const fs::path dir = scratch("gallery");
    const Run list = run("gallery list", dir);
    CHECK(list.exit_code == 0);
    CHECK(Json::parse(list.out)["entries"].size() == 8);
    const Run build = run("gallery build poisson --out " + (dir / "out").string(), dir);
    CHECK(build.exit_code == 0);
    const Json doc = Json::parse(slurp(dir / "out" / "poisson.json"));
    CHECK(doc["characteristics"]["nu"]["kind"] == "atomic_functional");
    CHECK(run("gallery build nothing", dir).exit_code == 2);
}

TEST_CASE("cli: configuration errors exit with 2 and a JSON record") {
    const fs::path dir = scratch("errors");
    Run r = run_config("check", {{"characteristics", {{"space", {{"dim", 2}}}, {"truncation", "soft"}}}, {"point_sets", {{{0, 0}, {1, 0}}}}}, dir);
    CHECK(r.exit_code == 2);
    CHECK(Json::parse(r.err)["error"] == "config");
    r = run_config("cf", {{"gallery", "gaussian"}}, dir);
    CHECK(r.exit_code == 2);
    r = run("check --config " + (dir / "missing.json").string(), dir);
    CHECK(r.exit_code == 2);
    r = run("frobnicate", dir);
    CHECK(r.exit_code == 2);
    std::ofstream(dir / "broken.json") << "{ not json";
    r = run("check --config " + (dir / "broken.json").string(), dir);
    CHECK(r.exit_code == 2);
}
