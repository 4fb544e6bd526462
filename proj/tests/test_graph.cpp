#include <doctest.h>

#include "ncgn/enumerate.hpp"
#include "ncgn/graph.hpp"
#include "ncgn/orientation.hpp"

using namespace ncgn;

namespace {

RibbonGraph load(const std::string& name, bool relaxed = false) {
    return parse_graph_file("data/" + name, relaxed);
}

int line_index(const RibbonGraph& g, const std::string& name) {
    for (int l = 0; l < g.internal_count(); ++l)
        if (g.lines[l].name == name) return l;
    REQUIRE(false);
    return -1;
}

}  // namespace

TEST_CASE("parser accepts the bare vertex") {
    RibbonGraph g = load("bare_vertex.graph");
    CHECK(g.n() == 1);
    CHECK(g.internal_count() == 0);
    CHECK(g.external_count() == 4);
}

TEST_CASE("parser accepts the tadpole") {
    RibbonGraph g = load("tadpole.graph");
    CHECK(g.n() == 1);
    CHECK(g.internal_count() == 1);
    CHECK(g.external_count() == 2);
}

TEST_CASE("polarity clash is a non-orientable line error") {
    const char* text = R"(
graph bad
vertex v1 kind=o1
line l1 v1.1 v1.3
external x1 v1.2
external x2 v1.4
)";
    CHECK_THROWS_WITH_AS(parse_graph(text), doctest::Contains("non-orientable line"),
                         GraphError);
    CHECK_NOTHROW(parse_graph(text, true));  // relaxed admits it
}

TEST_CASE("parser rejects reused and unused positions") {
    CHECK_THROWS_WITH_AS(parse_graph(R"(
graph bad
vertex v1 kind=o1
line l1 v1.1 v1.2
line l2 v1.2 v1.3
external x1 v1.4
)"),
                         doctest::Contains("used twice"), GraphError);
    CHECK_THROWS_WITH_AS(parse_graph(R"(
graph bad
vertex v1 kind=o1
line l1 v1.1 v1.2
external x1 v1.3
)"),
                         doctest::Contains("unused"), GraphError);
}

TEST_CASE("parser rejects disconnected graphs") {
    CHECK_THROWS_WITH_AS(parse_graph(R"(
graph bad
vertex v1 kind=o1
vertex v2 kind=o1
line l1 v1.1 v1.2
line l2 v2.1 v2.2
external x1 v1.3
external x2 v1.4
external x3 v2.3
external x4 v2.4
)"),
                         doctest::Contains("disconnected"), GraphError);
}

TEST_CASE("parser reports the offending line number") {
    try {
        parse_graph("graph g\nvertex v1 kind=o9\n");
        CHECK(false);
    } catch (const GraphError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("parser rejects malformed clauses") {
    CHECK_THROWS_WITH_AS(parse_graph("vertex v1 kind=o1\nline l1 v1.1 v1.1\n"),
                         doctest::Contains("used twice"), GraphError);
    CHECK_THROWS_WITH_AS(parse_graph("vertex v1 kind=o1\nline l1 v1.1 v1.2 scale=abc\n"),
                         doctest::Contains("scale"), GraphError);
    CHECK_THROWS_WITH_AS(parse_graph("vertex v1 kind=o1\nline l1 v1.9 v1.2\n"),
                         doctest::Contains("range"), GraphError);
    CHECK_THROWS_WITH_AS(parse_graph("vertex v1 kind=o1\nexternal x1 v2.1\n"),
                         doctest::Contains("unknown vertex"), GraphError);
    CHECK_THROWS_WITH_AS(parse_graph("frobnicate\n"), doctest::Contains("directive"),
                         GraphError);
    CHECK_THROWS_WITH_AS(parse_graph("vertex v1 kind=o1\nline l1 v1.1 v1.2 scale=-3\n"
                                     "external x1 v1.3\nexternal x2 v1.4\n"),
                         doctest::Contains("negative"), GraphError);
}

TEST_CASE("4n = 2I + N on every parsed file") {
    for (const char* name :
         {"bare_vertex.graph", "tadpole.graph", "bubble_b1.graph", "bubble_b2.graph",
          "two_broken_faces.graph", "nonplanar_2pt.graph", "critical.graph",
          "card2.graph", "single_line_6pt.graph"}) {
        RibbonGraph g = load(name);
        CHECK(4 * g.n() == 2 * g.internal_count() + g.external_count());
    }
}

TEST_CASE("spanning tree is scale-maximal with documented tie break") {
    // two vertices joined by lines of scales 3 and 7: the tree is the 7
    RibbonGraph g = parse_graph(R"(
graph two
vertex v1 kind=o1
vertex v2 kind=o1
line a v1.2 v2.1 scale=3
line b v1.4 v2.3 scale=7
external x1 v1.1
external x2 v1.3
external x3 v2.2
external x4 v2.4
)");
    auto tree = spanning_tree(g);
    CHECK(tree == std::set<int>{line_index(g, "b")});

    // all scales equal: lowest line index wins
    RibbonGraph h = load("bubble_b1.graph");
    CHECK(spanning_tree(h) == std::set<int>{0});

    // tadpole: empty tree
    CHECK(spanning_tree(load("tadpole.graph")).empty());
}

TEST_CASE("total order on the bare vertex is the cyclic order") {
    RibbonGraph g = load("bare_vertex.graph");
    OrderedGraph og = total_order(g);
    for (int s = 0; s < 4; ++s) CHECK(og.number[s] == s + 1);
}

TEST_CASE("total order refuses a tree-line root") {
    RibbonGraph g = load("bubble_b1.graph");
    auto tree = spanning_tree(g);
    int t = *tree.begin();
    CHECK_THROWS_WITH_AS(total_order(g, tree, g.lines[t].end_a),
                         doctest::Contains("root"), GraphError);
}

TEST_CASE("bubble numbering: all lines join even to odd positions") {
    RibbonGraph g = parse_graph(R"(
graph bubble
vertex v1 kind=o1
vertex v2 kind=o1
line a v1.2 v2.1
line b v2.2 v1.3
external x1 v1.1
external x2 v1.4
external x3 v2.3
external x4 v2.4
)");
    for (const auto& tree : all_spanning_trees(g)) {
        OrderedGraph og = total_order(g, tree, g.externals[0].at);
        CHECK(og.positions() == 8);
        for (int l = 0; l < g.internal_count(); ++l) {
            auto [i, j] = og.line_span(l);
            CHECK((i + j) % 2 == 1);
        }
    }
}

TEST_CASE("orientation of the bare vertex alternates from the root") {
    OrderedGraph og = total_order(load("bare_vertex.graph"));
    OrientationData o = orient(og);
    CHECK(o.sign_at_position[1] == 1);
    CHECK(o.sign_at_position[2] == -1);
    CHECK(o.sign_at_position[3] == 1);
    CHECK(o.sign_at_position[4] == -1);
}

TEST_CASE("tadpole loop line lands in the orientable loop class") {
    OrderedGraph og = total_order(load("tadpole.graph"));
    OrientationData o = orient(og);
    CHECK(o.line_class[0] == LineClass::Loop0);
}

TEST_CASE("ordering example: spans, classes and relations") {
    RibbonGraph g = load("fig1b.graph", true);
    std::set<int> tree{line_index(g, "l2"), line_index(g, "l3"), line_index(g, "l6")};
    OrderedGraph og = total_order(g, tree, g.externals[0].at);

    int lo1 = line_index(g, "lo1"), l2 = line_index(g, "l2"), l3 = line_index(g, "l3");
    int lo4 = line_index(g, "lo4"), lo5 = line_index(g, "lo5"), l6 = line_index(g, "l6");

    CHECK(og.line_span(lo1) == std::make_pair(2, 5));
    CHECK(og.line_span(l2) == std::make_pair(3, 4));
    CHECK(og.line_span(l3) == std::make_pair(6, 7));
    CHECK(og.line_span(lo4) == std::make_pair(8, 12));
    CHECK(og.line_span(lo5) == std::make_pair(11, 14));
    CHECK(og.line_span(l6) == std::make_pair(9, 10));

    CHECK_THROWS_AS(orient(og, false), GraphError);  // lo4 clashes
    OrientationData o = orient(og, true);
    CHECK(o.line_class[l2] == LineClass::Tree);
    CHECK(o.line_class[l3] == LineClass::Tree);
    CHECK(o.line_class[l6] == LineClass::Tree);
    CHECK(o.line_class[lo1] == LineClass::Loop0);
    CHECK(o.line_class[lo5] == LineClass::Loop0);
    CHECK(o.line_class[lo4] == LineClass::LoopMinus);

    LineRelations rel = relations(og);
    CHECK(rel.rel[lo1][lo4] == Rel::Before);
    CHECK(rel.rel[l2][lo1] == Rel::Inside);
    CHECK(rel.ext[l3][0] == ExtRel::After);  // l3 after x1
}

TEST_CASE("line relations mirror consistently") {
    RibbonGraph g = load("nonplanar_2pt.graph");
    OrderedGraph og = total_order(g);
    LineRelations rel = relations(og);
    for (int a = 0; a < g.internal_count(); ++a)
        for (int b = 0; b < g.internal_count(); ++b) {
            if (a == b) continue;
            Rel r = rel.rel[a][b], m = rel.rel[b][a];
            switch (r) {
                case Rel::Before: CHECK(m == Rel::After); break;
                case Rel::After: CHECK(m == Rel::Before); break;
                case Rel::Inside: CHECK(m == Rel::Contains); break;
                case Rel::Contains: CHECK(m == Rel::Inside); break;
                case Rel::CrossLeft: CHECK(m == Rel::CrossRight); break;
                case Rel::CrossRight: CHECK(m == Rel::CrossLeft); break;
            }
        }
}

TEST_CASE("line variables substitution round-trips") {
    for (const char* name : {"tadpole.graph", "bubble_b2.graph", "nonplanar_2pt.graph"}) {
        RibbonGraph g = load(name);
        OrderedGraph og = total_order(g);
        OrientationData o = orient(og);
        auto sub = line_variables(og, o);
        for (int l = 0; l < g.internal_count(); ++l) {
            LinearForm u = short_variable(og, o, l);
            LinearForm lng = long_variable(og, l);
            LinearForm ru, rl;
            for (const auto& [s, c] : u.terms) ru += sub.at(s.id).scaled(c);
            for (const auto& [s, c] : lng.terms) rl += sub.at(s.id).scaled(c);
            LinearForm eu, el;
            eu.add(u_sym(l), Rational(1));
            Sym lngsym = o.line_class[l] == LineClass::Tree ? v_sym(l) : w_sym(l);
            el.add(lngsym, Rational(1));
            CHECK(ru == eu);
            CHECK(rl == el);
        }
    }
}

TEST_CASE("exhaustive n<=2: orientable lines always join even to odd") {
    auto graphs = enumerate_orientable_graphs(2);
    CHECK(graphs.size() > 100);
    for (const auto& g : graphs) {
        CHECK(4 * g.n() == 2 * g.internal_count() + g.external_count());
        for (const auto& tree : all_spanning_trees(g))
            for (const auto& root : admissible_roots(g, tree)) {
                OrderedGraph og = total_order(g, tree, root);
                OrientationData o = orient(og);
                CHECK(o.orientable());
                std::set<int> products;
                for (int l = 0; l < g.internal_count(); ++l) {
                    auto [i, j] = og.line_span(l);
                    CHECK((i % 2) != (j % 2));
                    CHECK(o.eps[l] == (i % 2 == 0 ? 1 : -1));
                    products.insert(o.eps[l] * o.epsilon[l]);
                }
                // the conjugation orientation aligns with the tour one:
                // eps * epsilon is a graph-wide constant
                CHECK(products.size() <= 1);
            }
    }
}
