#pragma once

// Exact oscillation phases: raw vertex phases, branch delta functions,
// Filk tree reduction, the rosette factors (general graph, orientable,
// planar regular), the brute-force reference expansion, the Omega
// dressing and the masslet variable forms with their change-of-variables
// matrix.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ncgn/graph.hpp"
#include "ncgn/orientation.hpp"
#include "ncgn/symbols.hpp"

namespace ncgn {

struct DeltaSystem {
    // One linear constraint per delta; label -1 for the root delta, the
    // tree-line index for a branch delta, the vertex index for raw vertex
    // deltas.
    std::vector<int> labels;
    std::vector<LinearForm> args;
};

struct Rosette {
    PhaseForm phase;
    LinearForm root_delta;
};

// Raw phase: one six-term alternating wedge block per vertex, in position
// symbols; the per-vertex delta functions alongside.
std::pair<PhaseForm, DeltaSystem> vertex_phases(const OrderedGraph& og);

// Branch system: n-1 branch deltas plus the root delta.  Branch arguments
// follow the branch formula: short variables of lines contracting inside
// the branch, +/- long variables of clashing ones, and eta-signed position
// symbols for external points and boundary half-line ends.
DeltaSystem branch_deltas(const OrderedGraph& og, const OrientationData& o);

// Vertices above each tree line (the branch b(l)), including the upper
// end's vertex.
std::vector<int> branch_vertices(const OrderedGraph& og, int tree_line);

// Tree reduction: tree positions rewritten in (u, v), loop and external
// positions kept as position symbols.
Rosette filk_reduce(const OrderedGraph& og, const OrientationData& o);

// Full rewrites in line variables.
Rosette rosette_general(const OrderedGraph& og, const OrientationData& o,
                        const LineRelations& rel);
Rosette rosette_orientable(const OrderedGraph& og, const OrientationData& o,
                           const LineRelations& rel);
Rosette rosette_planar_regular(const OrderedGraph& og, const OrientationData& o,
                               const LineRelations& rel);

// Just the loop-loop and external-loop oscillation group (used by the
// intersection matrices).
PhaseForm rosette_phi_w(const OrderedGraph& og, const OrientationData& o,
                        const LineRelations& rel);

// Reference expansion: substitute every internal position by its
// (u, v or w)/2 form in the raw vertex phases and expand exactly.
// substitute_loops=false leaves loop positions alone (Filk oracle).
PhaseForm brute_force_phase(const OrderedGraph& og, const OrientationData& o,
                            bool substitute_loops = true);

// The delta system in the same variables as the brute-force phase.
DeltaSystem brute_force_deltas(const OrderedGraph& og, const OrientationData& o,
                               bool substitute_loops = true);

// Canonical representative modulo the span of the delta arguments.
PhaseForm reduce_mod_deltas(const PhaseForm& phase, const DeltaSystem& deltas);

// Phases are compared modulo the delta system of the graph.
bool phases_equal_mod_deltas(const PhaseForm& a, const PhaseForm& b,
                             const DeltaSystem& deltas);

// phi_Omega: each long-short wedge picks up the propagator oscillation,
// scaling its 1/2 eps coefficient by (1 + epsilon(l) Omega).
PhaseForm omega_dress(const PhaseForm& phase, const OrderedGraph& og,
                      const OrientationData& o);

// phi'_Omega: adds the branch-delta oscillations p_l . (branch argument),
// with boundary position symbols expanded in line variables.
PhaseForm with_momentum_phases(const PhaseForm& phase, const OrderedGraph& og,
                               const OrientationData& o);

struct MassletForms {
    // eps(l)*V_l for tree lines and eps(l)*W_l for loops, keyed by line.
    std::map<int, OmegaLinearForm> forms;
    // Lines sorted by first endpoint; the matrix of the change of
    // variables (eps v, eps w) -> (eps V, eps W) in that order.
    std::vector<int> order;
    std::vector<std::vector<OmegaPoly>> matrix;

    bool lower_triangular() const;
    OmegaPoly determinant() const;  // valid once triangular
};

MassletForms masslet_forms(const OrderedGraph& og, const OrientationData& o,
                           const LineRelations& rel);

}  // namespace ncgn
