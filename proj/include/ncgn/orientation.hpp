#pragma once

// Orientation of an ordered ribbon graph: position signs from the root,
// line classes (tree / orientable loop / clashing loops), the two line
// signs, order relations between lines and externals, and the short/long
// line-variable substitution.

#include <map>
#include <vector>

#include "ncgn/graph.hpp"
#include "ncgn/symbols.hpp"

namespace ncgn {

enum class LineClass { Tree, Loop0, LoopPlus, LoopMinus };

struct OrientationData {
    // +1 at odd-numbered positions, -1 at even ones (root is +).
    std::vector<int> sign_at_position;  // indexed by position number 1..4n
    std::vector<LineClass> line_class;  // by line index
    std::vector<int> eps;               // epsilon-hat: tour sign per line
    std::vector<int> epsilon;           // conjugation sign per line (psi end first?)
    std::vector<int> eta;               // by external index: +1 incoming, -1 outgoing

    bool orientable() const {
        for (auto c : line_class)
            if (c == LineClass::LoopPlus || c == LineClass::LoopMinus) return false;
        return true;
    }
    bool in_t_or_l0(int line) const {
        return line_class[line] == LineClass::Tree || line_class[line] == LineClass::Loop0;
    }
};

// Signs alternate around each vertex starting from + at the root; a line is
// clashing when it joins two equal signs.  Clashing lines are an error
// unless relaxed.
OrientationData orient(const OrderedGraph& og, bool relaxed = false);

enum class Rel {
    Before,       // l entirely before l'
    After,        // l entirely after l'
    Inside,       // l nested inside l'
    Contains,     // l' nested inside l ("l contracts above l'")
    CrossLeft,    // l crosses l' from the left: i < p < j < q
    CrossRight,   // mirror image
};

enum class ExtRel { Before, After, Above };  // Above: the line contracts above x

struct LineRelations {
    // rel[a][b] for distinct line indices a,b.
    std::vector<std::vector<Rel>> rel;
    // ext[l][k]: relation of line l to external k.
    std::vector<std::vector<ExtRel>> ext;

    bool crosses(int a, int b) const {
        return rel[a][b] == Rel::CrossLeft || rel[a][b] == Rel::CrossRight;
    }
};

LineRelations relations(const OrderedGraph& og);

// Exact substitution recovering every position variable s_k from the line
// variables: s = (long +/- short) / 2 with signs fixed by the line class.
// Keyed by position number; externals are not substituted.
std::map<int, LinearForm> line_variables(const OrderedGraph& og, const OrientationData& o);

// Inverse direction: u_l and v_l/w_l as combinations of position symbols.
LinearForm short_variable(const OrderedGraph& og, const OrientationData& o, int line);
LinearForm long_variable(const OrderedGraph& og, int line);

}  // namespace ncgn
