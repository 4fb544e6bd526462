#pragma once

// Ribbon-graph topology: face tracing on the combinatorial map, Euler
// characteristic, genus, broken faces, and the intersection matrices built
// from the loop-loop and external-loop oscillations.

#include <vector>

#include "ncgn/graph.hpp"
#include "ncgn/orientation.hpp"
#include "ncgn/rational.hpp"

namespace ncgn {

struct Face {
    // Positions (flat indices) met around the face.
    std::vector<int> corners;
    // Externals (declaration indices) met on the face.
    std::vector<int> externals;
    bool broken() const { return !externals.empty(); }
};

struct TopologyReport {
    int faces = 0;       // L
    int broken = 0;      // B
    int lines = 0;       // I
    int vertices = 0;    // n
    int chi = 0;         // L - I + n
    int genus = 0;       // (2 - chi) / 2 for connected graphs
    std::vector<Face> face_list;
};

// Faces are the orbits of sigma after alpha on the positions: sigma steps to
// the next slot in the cyclic order, alpha swaps line ends and fixes
// external legs.  A face is broken iff an external leg lies on it.
TopologyReport trace_faces(const RibbonGraph& g);

struct IntersectionMatrices {
    std::vector<int> loop_lines;            // line indices indexing Q_W
    std::vector<std::vector<Rational>> q_w;   // skew-symmetric
    std::vector<std::vector<Rational>> q_xw;  // rows: externals, cols: loops
};

IntersectionMatrices intersection_matrices(const OrderedGraph& og,
                                           const OrientationData& o,
                                           const LineRelations& rel);

// Exact rank by fraction-free elimination.
int rational_rank(std::vector<std::vector<Rational>> m);

}  // namespace ncgn
