#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncgn/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::vector<const char*> argv{"ncgn"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = ncgn::run_cli(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("topology subcommand reports the broken-face anchor") {
    Run r = cli({"topology", "data/two_broken_faces.graph"});
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["topology"]["n"] == 3);
    CHECK(rep["topology"]["I"] == 3);
    CHECK(rep["topology"]["L"] == 2);
    CHECK(rep["topology"]["chi"] == 2);
    CHECK(rep["topology"]["g"] == 0);
    CHECK(rep["topology"]["B"] == 2);
    CHECK(rep["schema"] == 1);
}

TEST_CASE("planar-regular rosette on the wrong graph exits 2") {
    Run r = cli({"rosette", "--form", "planar-regular", "data/bubble_b2.graph"});
    CHECK(r.code == 2);
}

TEST_CASE("rosette emits sorted phase records") {
    Run r = cli({"rosette", "--form", "orientable", "data/tadpole.graph"});
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["rosette"]["phase"].size() > 0);
    // identical invocation is byte-identical
    Run r2 = cli({"rosette", "--form", "orientable", "data/tadpole.graph"});
    CHECK(r.out == r2.out);
}

TEST_CASE("unknown subcommands and flags exit 64") {
    CHECK(cli({"frobnicate"}).code == 64);
    CHECK(cli({"topology", "--bogus", "data/tadpole.graph"}).code == 64);
    CHECK(cli({}).code == 64);
}

TEST_CASE("missing and malformed files exit 1") {
    CHECK(cli({"topology", "data/no_such_file.graph"}).code == 1);
    CHECK(cli({"vacuum-check", "data/vacuum_clashing.graph"}).code == 1);  // needs --relaxed
}

TEST_CASE("vacuum-check distinguishes the two sectors") {
    Run ok = cli({"vacuum-check", "data/vacuum_orientable.graph"});
    REQUIRE(ok.code == 0);
    CHECK(json::parse(ok.out)["vacuum_check"]["invariant"] == true);

    Run bad = cli({"vacuum-check", "--relaxed", "data/vacuum_clashing.graph"});
    REQUIRE(bad.code == 0);
    json rep = json::parse(bad.out);
    CHECK(rep["vacuum_check"]["invariant"] == false);
    CHECK(rep["vacuum_check"]["residual"].size() > 0);
}

TEST_CASE("powercount classifies and enumerates") {
    Run r = cli({"powercount", "data/critical.graph"});
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    bool found_critical = false;
    for (const auto& node : rep["powercount"]["nodes"])
        if (node["div_class"] == "critical-4pt") found_critical = true;
    CHECK(found_critical);

    Run e = cli({"powercount", "--enumerate", "--rho", "4", "data/tadpole.graph"});
    REQUIRE(e.code == 0);
    json erep = json::parse(e.out);
    CHECK(erep["powercount"]["totals"].size() == 5);
    Run e2 = cli({"powercount", "--enumerate", "--rho", "4", "data/tadpole.graph"});
    CHECK(e.out == e2.out);  // deterministic

    CHECK(cli({"powercount", "data/vacuum_orientable.graph"}).code == 2);
}

TEST_CASE("classify-2pt surfaces the gamma01 route") {
    Run r = cli({"classify-2pt", "--gamma01-lowest", "data/critical.graph"});
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    bool deltam = false;
    for (const auto& f : rep["classify_2pt"]["divergent"])
        if (f == "deltam*gamma0gamma1") deltam = true;
    CHECK(deltam);
    CHECK(cli({"classify-2pt", "data/bubble_b1.graph"}).code == 2);
}

TEST_CASE("kernel-check is deterministic under a fixed seed") {
    std::vector<std::string> args{"kernel-check", "--i", "2", "--samples",
                                  "24",           "--seed", "7"};
    Run a = cli(args), b = cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    json rep = json::parse(a.out);
    CHECK(rep["slice_bound"]["pass"] == true);
}

TEST_CASE("fierz prints the interaction table") {
    Run r = cli({"fierz"});
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["fierz"]["orientable"]["o1"][0][0] == "-2");
    CHECK(rep["fierz"]["conjugation"]["gamma0"][1][1] == "-1");
}
