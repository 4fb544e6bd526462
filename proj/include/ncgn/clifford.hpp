#pragma once

// Exact two-dimensional Clifford algebra {gamma^mu, gamma^nu} = -2 delta,
// the quartic-interaction rewriting in the Gamma basis, gamma-word
// reduction, chain/cycle decomposition of a graph's spinor structure, and
// the parity classification of two-point counterterm forms.

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ncgn/graph.hpp"
#include "ncgn/rational.hpp"

namespace ncgn {

// Basis: Gamma^0 = 1, Gamma^1 = gamma0, Gamma^2 = gamma1, Gamma^3 = gamma0 gamma1.
struct CliffordElement {
    std::array<GaussianRational, 4> c{};

    static CliffordElement unit() { return basis(0); }
    static CliffordElement gamma0() { return basis(1); }
    static CliffordElement gamma1() { return basis(2); }
    static CliffordElement gamma01() { return basis(3); }
    static CliffordElement basis(int a) {
        CliffordElement e;
        e.c[a] = GaussianRational(1);
        return e;
    }
    static CliffordElement zero() { return {}; }

    bool is_zero() const {
        for (const auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }
    GaussianRational trace() const { return c[0] * GaussianRational(2); }

    friend CliffordElement operator+(const CliffordElement& a, const CliffordElement& b);
    friend CliffordElement operator-(const CliffordElement& a, const CliffordElement& b);
    friend CliffordElement operator*(const GaussianRational& s, const CliffordElement& a);
    friend bool operator==(const CliffordElement&, const CliffordElement&) = default;
    std::string str() const;
};

CliffordElement multiply(const CliffordElement& a, const CliffordElement& b);

using Mat2 = std::array<std::array<GaussianRational, 2>, 2>;

// Concrete skew-Hermitian representation: gamma0 = i sigma1, gamma1 = i sigma3
// (both symmetric, as the transposed-basis identities require).
Mat2 representation(const CliffordElement& e);

// Coefficients from M = -1/2 sum eta_AB Tr(M Gamma^A) Gamma^B.
CliffordElement decompose(const Mat2& m);

using FierzMatrix = std::array<std::array<GaussianRational, 4>, 4>;

// The g-matrix rewriting a quartic interaction over the Gamma basis,
// solved exactly from its spin-index contraction pattern (never stored).
// Orientable kinds target psibar G psi x psibar G psi; non-orientable ones
// psi G psibar x psibar G psi.
FierzMatrix fierz_matrix(VertexKind kind);

// Diagonal g with psi Gamma^C psibar psi Gamma^C psibar rewritten over the
// orientable basis; C indexes the basis element.
FierzMatrix conjugation_table(int basis_c);

// Reduction of words over {gamma0, gamma1} by the closed-form parity rules:
// collapse equal-letter runs with sign (-1)^{floor(len/2)}, then classify
// the alternating remainder.  Returns the sign and the basis index.
struct GammaWord {
    std::vector<int> letters;  // 0 or 1
};
std::pair<int, int> reduce_gamma_word(const GammaWord& word);

// Alternating normal form with the run-collapse sign (exposed for the
// gamma0 <-> gamma1 exchange symmetry check).
std::pair<int, GammaWord> alternating_normal_form(const GammaWord& word);

// True iff swapping gamma0 <-> gamma1 leaves the run-collapse sign intact
// and maps the alternating normal form to its letter-swapped image.
bool exchange_symmetry_check(const GammaWord& word);

struct ChainCycleDecomposition {
    // Each entry lists line indices in traversal order; chains run from one
    // external leg to another.
    std::vector<std::vector<int>> cycles;
    std::vector<std::vector<int>> chains;
    // Externals (indices) at the two ends of each chain.
    std::vector<std::pair<int, int>> chain_ends;
};

// Follow scalar-product pairings at the vertices and propagator links.
ChainCycleDecomposition chains_cycles(const RibbonGraph& g);

enum class CountertermForm {
    MassOne,         // m * 1
    DeltaMassGamma01,
    WaveSlash,       // slashed derivative
    OmegaXtilde,
    PSlashTilde,     // convergent only
    XSlash,          // convergent only
};

const char* counterterm_form_name(CountertermForm f);

struct CountertermClass {
    std::set<CountertermForm> divergent;
    std::set<CountertermForm> convergent_only;
    int chain_length = 0;
    bool lowest_in_chain = false;
};

// Parity-admissible counterterm forms of a two-point graph.  When the
// lowest line contributes its gamma0 gamma1 factor (the treatment of a
// critical subcomponent), the divergent mass-type form is the
// gamma0 gamma1 one; massless graphs lose the mass-type forms entirely.
CountertermClass parity_counterterm_class(const RibbonGraph& graph2pt,
                                          bool lowest_line_uses_gamma01,
                                          bool massive = true);

struct Projections {
    GaussianRational mass;     // 1/2 Tr(A)
    GaussianRational delta_m;  // -1/2 coefficient extraction against gamma0 gamma1
    GaussianRational g0, g1;   // remaining basis components
};

Projections counterterm_projections(const CliffordElement& amplitude);

// -(vslash / 2 v^2) Tr(vslash A): the coefficient of vslash in A when A is
// proportional to it.  Rejects v = 0.
GaussianRational slash_projection(const CliffordElement& amplitude,
                                  const Rational& v0, const Rational& v1);

}  // namespace ncgn
