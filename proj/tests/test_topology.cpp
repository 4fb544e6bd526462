#include <doctest.h>

#include "ncgn/enumerate.hpp"
#include "ncgn/graph.hpp"
#include "ncgn/orientation.hpp"
#include "ncgn/topology.hpp"

using namespace ncgn;

namespace {

RibbonGraph load(const std::string& name, bool relaxed = false) {
    return parse_graph_file("data/" + name, relaxed);
}

}  // namespace

TEST_CASE("face tracing on the hand-checked small graphs") {
    SUBCASE("planar tadpole") {
        TopologyReport t = trace_faces(load("tadpole.graph"));
        CHECK(t.faces == 2);
        CHECK(t.genus == 0);
        CHECK(t.broken == 1);
    }
    SUBCASE("one-vertex vacuum with adjacent pairings") {
        TopologyReport t = trace_faces(load("vacuum_orientable.graph"));
        CHECK(t.faces == 3);
        CHECK(t.chi == 2);
        CHECK(t.genus == 0);
        CHECK(t.broken == 0);
    }
    SUBCASE("three vertices, three lines, both faces broken") {
        TopologyReport t = trace_faces(load("two_broken_faces.graph"));
        CHECK(t.vertices == 3);
        CHECK(t.lines == 3);
        CHECK(t.faces == 2);
        CHECK(t.chi == 2);
        CHECK(t.genus == 0);
        CHECK(t.broken == 2);
    }
    SUBCASE("planar regular bubble") {
        TopologyReport t = trace_faces(load("bubble_b1.graph"));
        CHECK(t.genus == 0);
        CHECK(t.broken == 1);
    }
    SUBCASE("interleaved bubble has two broken faces") {
        TopologyReport t = trace_faces(load("bubble_b2.graph"));
        CHECK(t.genus == 0);
        CHECK(t.broken == 2);
    }
    SUBCASE("crossing loops give genus one") {
        TopologyReport t = trace_faces(load("nonplanar_2pt.graph"));
        CHECK(t.faces == 1);
        CHECK(t.chi == 0);
        CHECK(t.genus == 1);
        CHECK(t.broken == 1);
    }
}

TEST_CASE("planar graphs have zero intersection rank") {
    RibbonGraph g = load("bubble_b1.graph");
    OrderedGraph og = total_order(g);
    OrientationData o = orient(og);
    IntersectionMatrices m = intersection_matrices(og, o, relations(og));
    CHECK(rational_rank(m.q_w) == 0);
}

TEST_CASE("two crossing loops give intersection rank two") {
    RibbonGraph g = load("nonplanar_2pt.graph");
    OrderedGraph og = total_order(g);
    OrientationData o = orient(og);
    IntersectionMatrices m = intersection_matrices(og, o, relations(og));
    CHECK(m.loop_lines.size() == 2);
    CHECK(rational_rank(m.q_w) == 2);
    // entries are +-1 at the crossing
    CHECK(m.q_w[0][1] == -m.q_w[1][0]);
    CHECK((m.q_w[0][1] == Rational(1) || m.q_w[0][1] == Rational(-1)));
}

TEST_CASE("two-broken-face graph couples externals of the second face to w") {
    RibbonGraph g = load("two_broken_faces.graph");
    OrderedGraph og = total_order(g);
    OrientationData o = orient(og);
    IntersectionMatrices m = intersection_matrices(og, o, relations(og));
    // the loop overflows x2 (v1.3) and x3 (v2.4): their rows are nonzero
    TopologyReport topo = trace_faces(g);
    REQUIRE(topo.broken == 2);
    std::set<int> coupled;
    for (int k = 0; k < g.external_count(); ++k)
        for (size_t c = 0; c < m.loop_lines.size(); ++c)
            if (!m.q_xw[k][c].is_zero()) coupled.insert(k);
    CHECK(coupled == std::set<int>{1, 2});  // x2, x3 in declaration order
}

TEST_CASE("keystone: rank Q_W = 2 g exhaustively for n <= 2") {
    for (const auto& g : enumerate_orientable_graphs(2)) {
        TopologyReport topo = trace_faces(g);
        for (const auto& tree : all_spanning_trees(g))
            for (const auto& root : admissible_roots(g, tree)) {
                OrderedGraph og = total_order(g, tree, root);
                OrientationData o = orient(og);
                IntersectionMatrices m = intersection_matrices(og, o, relations(og));
                REQUIRE(rational_rank(m.q_w) == 2 * topo.genus);
            }
    }
}

TEST_CASE("no orientable graph with n <= 2 has N=2 and B=2") {
    for (const auto& g : enumerate_orientable_graphs(2)) {
        TopologyReport topo = trace_faces(g);
        bool excluded = g.external_count() == 2 && topo.broken == 2;
        CHECK_FALSE(excluded);
        CHECK(topo.chi % 2 == 0);
        if (!g.is_vacuum()) CHECK(topo.broken >= 1);
    }
}
