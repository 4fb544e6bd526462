#pragma once

// Exhaustive generation of connected orientable ribbon graphs with up to
// max_n vertices, used by the property suites.  Vertices carry the first
// orientable kind; the pairing structure, not the kind, drives every
// phase/topology identity (the kinds only recolor epsilon, which the
// enumeration already varies through the tour signs).

#include <vector>

#include "ncgn/graph.hpp"

namespace ncgn {

std::vector<RibbonGraph> enumerate_orientable_graphs(int max_n);

// Admissible roots for the total ordering: external positions for
// non-vacuum graphs, any position not ending a tree line otherwise.
std::vector<Position> admissible_roots(const RibbonGraph& g, const std::set<int>& tree);

}  // namespace ncgn
