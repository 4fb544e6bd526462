#pragma once

// Multiscale analysis: scale attributions, the Gallavotti-Nicolo tree of
// high-scale connected components, the power-counting degree with critical
// four-point detection, divergence classification and bounds summed over
// attributions.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncgn/graph.hpp"
#include "ncgn/topology.hpp"

namespace ncgn {

struct ScaleAttribution {
    std::vector<int> scale;  // by line index, in [0, rho]
    int rho = 0;
};

ScaleAttribution attribution_from_graph(const RibbonGraph& g, int rho);

enum class DivClass {
    Convergent,
    LogDivergent2pt,
    Divergent2pt,
    LogDivergent4ptB1,
    Critical4pt,
    Improved4ptB2,
    NonplanarSuppressed,
};

const char* div_class_name(DivClass c);

struct GNNode {
    std::vector<int> lines;     // sorted line indices of the component
    std::vector<int> vertices;  // sorted vertex indices
    int i_low = 0;              // e_g + 1: first scale at which the node exists
    int i_high = 0;             // i_g: min line scale inside
    int parent = -1;            // index into GNTree::nodes, -1 at the root
    int N = 0, g = 0, B = 0, L = 0;
    int omega = 0;
    bool critical = false;
    DivClass div_class = DivClass::Convergent;
    std::string note;

    int multiplicity() const { return i_high - i_low + 1; }
};

struct GNTree {
    std::vector<GNNode> nodes;  // root first, then by descending inclusion
    int root() const { return 0; }
};

// Components of the subgraphs made of all lines with scale >= i, for every
// i, merged over the scale ranges on which they persist.  Topology fields
// are filled on the induced sub-ribbon-graph whose externals are the true
// externals plus the ends of lower-scale lines.
GNTree gn_tree(const RibbonGraph& g, const ScaleAttribution& mu);

// The induced sub-ribbon-graph of a node (used by the topology fields and
// by the counterterm classification).
RibbonGraph node_subgraph(const RibbonGraph& g, const std::vector<int>& lines);

// Power-counting degree of one node; `tree` is needed for the critical case.
int omega_degree(const GNTree& tree, int node);

// True iff the node is a critical four-point component: N=4, g=0, B=2 and
// the two external points of its second broken face are joined, inside the
// nearest enclosing two-point component, by an insertion of exactly one
// lower-scale line.
bool detect_critical(const GNTree& tree, int node, const RibbonGraph& g,
                     const ScaleAttribution& mu);

struct DivergenceReport {
    GNTree tree;
    // per node: divergence class is stored in the node; this lists the
    // indices of divergent nodes for convenience.
    std::vector<int> divergent_nodes;
    // counterterm form names for 2-point nodes.
    std::vector<std::vector<std::string>> forms;  // by node index
};

// Classify every node; massive switches the two-point counterterm forms.
// Vacuum graphs are rejected (their scale behavior is fixed by translation
// invariance, not by this table).
DivergenceReport classify_divergences(const RibbonGraph& g, const ScaleAttribution& mu,
                                      bool massive = true);

// Product over GN nodes of M^{-omega/2 * multiplicity}; K^n bookkeeping is
// left to the caller (the node count is returned alongside).
struct BoundEstimate {
    double value = 1.0;
    int node_count = 0;
};
BoundEstimate bound_estimate(const RibbonGraph& g, const ScaleAttribution& mu, double M);

struct AttributionSum {
    std::vector<double> totals;  // totals[r] = sum over attributions with scales <= r
    std::int64_t count = 0;      // attributions in the last total
};

// Exact enumeration of all attributions with scales in [0, r] for each
// r <= rho, summing bound_estimate.  Throws when (rho+1)^I exceeds the
// budget.  The parallel version and the serial reference agree bitwise.
AttributionSum sum_attributions(const RibbonGraph& g, int rho, double M,
                                double log_budget = 16.0);
AttributionSum sum_attributions_serial(const RibbonGraph& g, int rho, double M,
                                       double log_budget = 16.0);

}  // namespace ncgn
