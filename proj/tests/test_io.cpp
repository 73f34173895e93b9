#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "camplab/cli.hpp"
#include "camplab/csv.hpp"
#include "camplab/manifest.hpp"
#include "camplab/parallel.hpp"

using namespace camplab;

namespace {

int cli(const std::vector<std::string>& args) {
    std::vector<std::string> full = {"camplab"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& s : full) argv.push_back(s.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Scratch {
    std::filesystem::path dir;
    explicit Scratch(const std::string& name) : dir(name) {
        std::filesystem::remove_all(dir);
        std::filesystem::create_directories(dir);
    }
    ~Scratch() { std::filesystem::remove_all(dir); }
    std::string path(const std::string& f) const { return (dir / f).string(); }
};

}  // namespace

TEST_CASE("csv_number: decimal rendering round-trips every double") {
    const std::vector<double> values = {0.0,
                                        1.0 / 3.0,
                                        0.1,
                                        3.141592653589793,
                                        1e300,
                                        5e-324,
                                        -2.5,
                                        1e-8,
                                        123456789.123456789,
                                        std::numeric_limits<double>::max()};
    for (double v : values) {
        const std::string s = csv_number(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    const std::string neg_zero = csv_number(-0.0);
    CHECK(std::signbit(std::strtod(neg_zero.c_str(), nullptr)));
}

TEST_CASE("write_csv: quoting, shape validation, directory creation") {
    Scratch scratch("io_scratch_csv");
    const std::string path = scratch.path("nested/dir/table.csv");
    write_csv(path, {"plain", "tricky"},
              {{"a", "has,comma"}, {"b", "has\"quote"}, {"c", "has\nnewline"}});
    const std::string text = read_file(path);
    CHECK(text.find("plain,tricky\n") == 0);
    CHECK(text.find("a,\"has,comma\"\n") != std::string::npos);
    CHECK(text.find("b,\"has\"\"quote\"\n") != std::string::npos);
    CHECK(text.find("c,\"has\nnewline\"\n") != std::string::npos);

    CHECK_THROWS_AS(write_csv(scratch.path("bad.csv"), {"a", "b"}, {{"only-one"}}),
                    std::invalid_argument);
}

TEST_CASE("write_manifest: fixed key set, no timestamp, byte-identical reruns") {
    Scratch scratch("io_scratch_manifest");
    const std::string out = scratch.path("data.csv");
    write_manifest(out, "camplab se --delta 0.25", "{\"delta\":0.25}", 7, 3);
    const std::string manifest_path = out + ".manifest.json";
    const std::string first = read_file(manifest_path);

    const nlohmann::json doc = nlohmann::json::parse(first);
    CHECK(doc.contains("version"));
    CHECK(doc.contains("command"));
    CHECK(doc.contains("config"));
    CHECK(doc.contains("seed"));
    CHECK(doc.contains("threads"));
    CHECK(!doc.contains("timestamp"));
    CHECK(doc["command"] == "camplab se --delta 0.25");
    CHECK(doc["config"]["delta"] == 0.25);
    CHECK(doc["seed"] == 7);
    CHECK(doc["threads"] == 3);
    CHECK(doc.size() == 5);

    write_manifest(out, "camplab se --delta 0.25", "{\"delta\":0.25}", 7, 3);
    CHECK(read_file(manifest_path) == first);
}

TEST_CASE("resolve_threads: the environment override beats the request") {
    unsetenv("CAMP_LAB_THREADS");
    CHECK(resolve_threads(2) == 2);
    CHECK(resolve_threads(0) >= 1);
    setenv("CAMP_LAB_THREADS", "3", 1);
    CHECK(resolve_threads(2) == 3);
    CHECK(resolve_threads(0) == 3);
    setenv("CAMP_LAB_THREADS", "abc", 1);
    CHECK(resolve_threads(2) == 2);
    setenv("CAMP_LAB_THREADS", "0", 1);
    CHECK(resolve_threads(2) == 2);
    unsetenv("CAMP_LAB_THREADS");
}

TEST_CASE("parallel_for: every index runs once; worker errors surface") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);

    std::atomic<int> ran{0};
    CHECK_THROWS_AS(parallel_for(100, 4,
                                 [&](std::size_t i) {
                                     ran.fetch_add(1);
                                     if (i == 7) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
    CHECK(ran.load() >= 1);
}

TEST_CASE("run_cli: exit codes for help, usage errors, and numerical failure") {
    Scratch scratch("io_scratch_codes");
    CHECK(cli({"--help"}) == 0);
    CHECK(cli({}) == 1);                      // a subcommand is required
    CHECK(cli({"no-such-command"}) == 1);
    CHECK(cli({"se", "--no-such-flag", "3"}) == 1);
    CHECK(cli({"ns", "--delta", "0.25"}) == 1);  // missing required --rho

    // a threshold too small to contract makes the fixed-point search diverge
    const std::string out = scratch.path("cal.csv");
    CHECK(cli({"calibrate", "--delta", "0.25", "--rho", "0.1", "--sigma", "0", "--tau", "0.3",
               "--out", out}) == 2);
    CHECK(!std::filesystem::exists(out));  // nothing partial left behind
}

TEST_CASE("run_cli: se table is deterministic and knows its frozen fixed point") {
    Scratch scratch("io_scratch_se");
    const std::string out = scratch.path("se.csv");
    const std::vector<std::string> args = {"se",    "--delta", "0.25", "--rho", "0.1",
                                           "--sigma", "0.1",   "--tau", "2",    "--out", out};
    REQUIRE(cli(args) == 0);
    const std::string table = read_file(out);
    const std::string manifest = read_file(out + ".manifest.json");
    CHECK(table.rfind("t,", 0) == 0);

    REQUIRE(cli(args) == 0);  // rerun: identical bytes for table and manifest
    CHECK(read_file(out) == table);
    CHECK(read_file(out + ".manifest.json") == manifest);

    const nlohmann::json doc = nlohmann::json::parse(manifest);
    const std::string cmd = doc["command"].get<std::string>();
    CHECK(cmd.find("se") != std::string::npos);
    CHECK(cmd.find("--delta") != std::string::npos);
}

TEST_CASE("run_cli: ns emits the analytic sensitivity value") {
    Scratch scratch("io_scratch_ns");
    const std::string out = scratch.path("ns.csv");
    REQUIRE(cli({"ns", "--delta", "0.25", "--rho", "0.2", "--out", out}) == 0);
    const std::string table = read_file(out);
    CHECK(table.find("0.4848909103768") != std::string::npos);
}

TEST_CASE("run_cli: config files inject flags that explicit flags override") {
    Scratch scratch("io_scratch_config");
    const std::string cfg = scratch.path("cfg.json");
    {
        std::ofstream out(cfg);
        out << "{\"delta\": 0.5, \"rho\": 0.1}";
    }

    const std::string a = scratch.path("a.csv"), b = scratch.path("b.csv"),
                      c = scratch.path("c.csv"), d = scratch.path("d.csv");
    REQUIRE(cli({"se", "--config", cfg, "--sigma", "0.1", "--tau", "2", "--out", a}) == 0);
    REQUIRE(cli({"se", "--delta", "0.5", "--rho", "0.1", "--sigma", "0.1", "--tau", "2",
                 "--out", b}) == 0);
    CHECK(read_file(a) == read_file(b));

    // explicit --delta beats the config value
    REQUIRE(cli({"se", "--config", cfg, "--delta", "0.25", "--sigma", "0.1", "--tau", "2",
                 "--out", c}) == 0);
    REQUIRE(cli({"se", "--delta", "0.25", "--rho", "0.1", "--sigma", "0.1", "--tau", "2",
                 "--out", d}) == 0);
    CHECK(read_file(c) == read_file(d));
    CHECK(read_file(c) != read_file(a));

    // unknown keys and unreadable files are configuration errors
    const std::string bad = scratch.path("bad.json");
    {
        std::ofstream out(bad);
        out << "{\"frobnicate\": 1}";
    }
    CHECK(cli({"se", "--config", bad, "--out", scratch.path("x.csv")}) == 1);
    CHECK(cli({"se", "--config", scratch.path("missing.json"), "--out", scratch.path("y.csv")}) ==
          1);
}

TEST_CASE("run_cli: solve round-trips a saved instance to the same solution") {
    Scratch scratch("io_scratch_solve");
    const std::string inst = scratch.path("inst.bin");
    const std::string s1 = scratch.path("sol1.csv"), s2 = scratch.path("sol2.csv");
    REQUIRE(cli({"solve", "--N", "80", "--delta", "0.5", "--rho", "0.1", "--sigma", "0.1",
                 "--solver", "camp", "--save-instance", inst, "--out", s1}) == 0);
    REQUIRE(std::filesystem::exists(inst));
    REQUIRE(cli({"solve", "--instance", inst, "--solver", "camp", "--out", s2}) == 0);
    CHECK(read_file(s1) == read_file(s2));
}
