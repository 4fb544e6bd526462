#pragma once

// Ribbon graph data model: 4-valent cyclic vertices, propagator lines with
// optional scale indices, external legs.  Includes the text-format parser,
// scale-maximal spanning trees and the trigonometric total ordering of the
// vertex positions.

#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncgn {

enum class VertexKind { O1, O2, O3, NO1, NO2, NO3 };

bool is_orientable_kind(VertexKind k);
const char* kind_name(VertexKind k);

enum class Polarity { PsiBar, Psi };

// Field polarity at a slot (0-based) of a vertex of the given kind.
Polarity slot_polarity(VertexKind kind, int slot);

// Scalar-product pairing of the four slots: which slot shares a spinor
// index with which.  partner[slot] is the paired slot.
std::array<int, 4> slot_pairing(VertexKind kind);

struct Position {
    int vertex = -1;
    int slot = -1;  // 0..3, cyclic order
    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position&, const Position&) = default;
};

struct Vertex {
    std::string name;
    VertexKind kind = VertexKind::O1;
};

struct Line {
    std::string name;
    Position end_a, end_b;
    std::optional<int> scale;
};

struct External {
    std::string name;
    Position at;
};

class GraphError : public std::runtime_error {
public:
    GraphError(std::string msg, int line = 0, int col = 0)
        : std::runtime_error(std::move(msg)), line(line), col(col) {}
    int line, col;
};

// An analysis was asked for outside its domain (e.g. the planar-regular
// rosette of a non-planar graph); distinct from malformed input.
class PreconditionError : public GraphError {
public:
    using GraphError::GraphError;
};

// Occupancy encoding: a line index >= 0, or external k as -(k + 2);
// -1 marks a free slot (only valid mid-construction).
inline constexpr int kFreePosition = -1;
inline constexpr int kExternalBase = -2;
inline constexpr int external_occupancy(int k) { return -(k + 2); }
inline constexpr int external_of_occupancy(int occ) { return -occ - 2; }

struct RibbonGraph {
    std::string name;
    std::vector<Vertex> vertices;
    std::vector<Line> lines;
    std::vector<External> externals;  // in declaration order

    int n() const { return int(vertices.size()); }
    int internal_count() const { return int(lines.size()); }
    int external_count() const { return int(externals.size()); }

    bool is_vacuum() const { return externals.empty(); }

    // Index of the position in a flat 0..4n-1 layout.
    int position_index(const Position& p) const { return p.vertex * 4 + p.slot; }

    // What occupies each position, in the encoding above.
    std::vector<int> occupancy() const;

    Polarity polarity_at(const Position& p) const {
        return slot_polarity(vertices[p.vertex].kind, p.slot);
    }

    bool has_scales() const;
    int max_scale() const;

    // Structural checks shared by the parser and the programmatic builders:
    // every position filled exactly once, 4n = 2I + N, polarity-compatible
    // line ends (unless relaxed), connectivity.
    void validate(bool relaxed = false) const;
};

// Parse the graph file format.  In relaxed mode non-orientable vertex
// kinds and polarity-clashing lines are admitted (used by the vacuum
// translation-invariance check only).
RibbonGraph parse_graph(const std::string& text, bool relaxed = false);
RibbonGraph parse_graph_file(const std::string& path, bool relaxed = false);

// Scale-maximal spanning tree: greedy on descending scale, ties broken by
// ascending line index, so its restriction to every high-scale connected
// component still spans that component.  Returns line indices.
std::set<int> spanning_tree(const RibbonGraph& g);

// All spanning trees, as sets of line indices (graphs here are tiny).
std::vector<std::set<int>> all_spanning_trees(const RibbonGraph& g);

// Default root: first declared external; for vacuum graphs slot 0 of the
// first vertex.
Position default_root(const RibbonGraph& g);

// Same, but skips tree-line ends on vacuum graphs (those cannot start the
// tour).
Position default_root(const RibbonGraph& g, const std::set<int>& tree);

struct OrderedGraph {
    RibbonGraph graph;
    std::set<int> tree;      // line indices
    Position root;
    std::vector<int> number;      // position index -> 1..4n
    std::vector<int> at_number;   // 1..4n -> position index (slot 0 unused)

    int positions() const { return 4 * graph.n(); }
    int number_of(const Position& p) const { return number[graph.position_index(p)]; }

    // Line endpoints as position numbers, smaller first.
    std::pair<int, int> line_span(int line) const;
    // Position number of external k (declaration order).
    int external_number(int k) const;
};

// Walk around the tree in the trigonometric sense from the root and number
// the 4n positions in the order they are met.
OrderedGraph total_order(const RibbonGraph& g, const std::set<int>& tree, const Position& root);
OrderedGraph total_order(const RibbonGraph& g);

}  // namespace ncgn
