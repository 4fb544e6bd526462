#pragma once

// Formal symbols and linear/quadratic forms shared by the rosette and
// multiscale machinery.  A PhaseForm is an exact quadratic expression:
// antisymmetric wedge terms and symmetric dot terms with OmegaPoly
// coefficients over the symbol universe
//   x_k (true externals), s_j (positions), u_l, v_l, w_l, p_l, ptilde_l.

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ncgn/rational.hpp"

namespace ncgn {

enum class SymKind : int {
    External = 0,  // id = external index (0-based declaration order)
    Pos,           // id = position number 1..4n
    U,             // id = line index
    V,
    W,
    P,
    Ptilde,
};

struct Sym {
    SymKind kind{};
    int id = 0;
    friend auto operator<=>(const Sym&, const Sym&) = default;
};

Sym ext_sym(int k);
Sym pos_sym(int number);
Sym u_sym(int line);
Sym v_sym(int line);
Sym w_sym(int line);
Sym p_sym(int line);
Sym ptilde_sym(int line);

std::string sym_name(const Sym& s);

// Exact linear form with rational coefficients.
struct LinearForm {
    std::map<Sym, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    void add(const Sym& s, const Rational& c);
    LinearForm& operator+=(const LinearForm& o);
    LinearForm& operator-=(const LinearForm& o);
    LinearForm scaled(const Rational& c) const;
    friend bool operator==(const LinearForm&, const LinearForm&) = default;
    std::string str() const;
};

// Linear form with OmegaPoly coefficients (masslet variable forms).
struct OmegaLinearForm {
    std::map<Sym, OmegaPoly> terms;
    void add(const Sym& s, const OmegaPoly& c);
    friend bool operator==(const OmegaLinearForm&, const OmegaLinearForm&) = default;
    std::string str() const;
};

class PhaseForm {
public:
    // wedge: antisymmetric, stored on keys (a, b) with a < b.
    // dot: symmetric, stored on keys (a, b) with a <= b.
    std::map<std::pair<Sym, Sym>, OmegaPoly> wedge;
    std::map<std::pair<Sym, Sym>, OmegaPoly> dot;

    void add_wedge(const Sym& a, const Sym& b, const OmegaPoly& c);
    void add_dot(const Sym& a, const Sym& b, const OmegaPoly& c);
    void add(const PhaseForm& o);

    OmegaPoly wedge_coeff(const Sym& a, const Sym& b) const;  // signed for (a, b)
    bool is_zero() const { return wedge.empty() && dot.empty(); }

    // Drop exact zeros (kept canonical by add_*, exposed for substitutions).
    void prune();

    // Replace each mapped symbol by its linear form, expanding bilinearly.
    PhaseForm substituted(const std::map<Sym, LinearForm>& sub) const;

    friend bool operator==(const PhaseForm&, const PhaseForm&) = default;
    std::string str() const;
};

// Row-echelon basis of a list of linear constraints (= 0), used to
// canonicalize phases modulo the delta system.  Pivots are the largest
// symbols, so reduction eliminates the lexicographically largest eligible
// symbol of each constraint.
class ConstraintSpan {
public:
    explicit ConstraintSpan(const std::vector<LinearForm>& constraints);

    int rank() const { return int(rows_.size()); }

    // Substitution map sending each pivot symbol to its expression in
    // non-pivot symbols.
    const std::map<Sym, LinearForm>& pivot_substitution() const { return sub_; }

    LinearForm reduce(const LinearForm& f) const;
    PhaseForm reduce(const PhaseForm& f) const;
    bool contains(const LinearForm& f) const { return reduce(f).is_zero(); }

private:
    std::vector<LinearForm> rows_;
    std::map<Sym, LinearForm> sub_;
};

}  // namespace ncgn
