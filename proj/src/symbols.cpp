#include "ncgn/symbols.hpp"

#include <algorithm>
#include <vector>

namespace ncgn {

Sym ext_sym(int k) { return {SymKind::External, k}; }
Sym pos_sym(int number) { return {SymKind::Pos, number}; }
Sym u_sym(int line) { return {SymKind::U, line}; }
Sym v_sym(int line) { return {SymKind::V, line}; }
Sym w_sym(int line) { return {SymKind::W, line}; }
Sym p_sym(int line) { return {SymKind::P, line}; }
Sym ptilde_sym(int line) { return {SymKind::Ptilde, line}; }

std::string sym_name(const Sym& s) {
    switch (s.kind) {
        case SymKind::External: return "x" + std::to_string(s.id + 1);
        case SymKind::Pos: return "s" + std::to_string(s.id);
        case SymKind::U: return "u[" + std::to_string(s.id) + "]";
        case SymKind::V: return "v[" + std::to_string(s.id) + "]";
        case SymKind::W: return "w[" + std::to_string(s.id) + "]";
        case SymKind::P: return "p[" + std::to_string(s.id) + "]";
        case SymKind::Ptilde: return "pt[" + std::to_string(s.id) + "]";
    }
    return "?";
}

void LinearForm::add(const Sym& s, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.emplace(s, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
    for (const auto& [s, c] : o.terms) add(s, c);
    return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o) {
    for (const auto& [s, c] : o.terms) add(s, -c);
    return *this;
}

LinearForm LinearForm::scaled(const Rational& c) const {
    LinearForm r;
    if (c.is_zero()) return r;
    for (const auto& [s, x] : terms) r.terms.emplace(s, x * c);
    return r;
}

std::string LinearForm::str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [s, c] : terms) {
        if (!out.empty()) out += c < Rational(0) ? " - " : " + ";
        else if (c < Rational(0)) out += "-";
        Rational mag = c < Rational(0) ? -c : c;
        if (mag != Rational(1)) out += mag.str() + "*";
        out += sym_name(s);
    }
    return out;
}

void OmegaLinearForm::add(const Sym& s, const OmegaPoly& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.emplace(s, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

std::string OmegaLinearForm::str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [s, c] : terms) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*" + sym_name(s);
    }
    return out;
}

void PhaseForm::add_wedge(const Sym& a, const Sym& b, const OmegaPoly& c) {
    if (a == b || c.is_zero()) return;
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    OmegaPoly inc = a < b ? c : -c;
    auto [it, fresh] = wedge.emplace(key, inc);
    if (!fresh) {
        it->second += inc;
        if (it->second.is_zero()) wedge.erase(it);
    }
}

void PhaseForm::add_dot(const Sym& a, const Sym& b, const OmegaPoly& c) {
    if (c.is_zero()) return;
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    auto [it, fresh] = dot.emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) dot.erase(it);
    }
}

void PhaseForm::add(const PhaseForm& o) {
    for (const auto& [k, c] : o.wedge) add_wedge(k.first, k.second, c);
    for (const auto& [k, c] : o.dot) add_dot(k.first, k.second, c);
}

OmegaPoly PhaseForm::wedge_coeff(const Sym& a, const Sym& b) const {
    if (a == b) return {};
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    auto it = wedge.find(key);
    if (it == wedge.end()) return {};
    return a < b ? it->second : -it->second;
}

void PhaseForm::prune() {
    for (auto it = wedge.begin(); it != wedge.end();)
        it = it->second.is_zero() ? wedge.erase(it) : std::next(it);
    for (auto it = dot.begin(); it != dot.end();)
        it = it->second.is_zero() ? dot.erase(it) : std::next(it);
}

namespace {

LinearForm expand_sym(const Sym& s, const std::map<Sym, LinearForm>& sub) {
    auto it = sub.find(s);
    if (it != sub.end()) return it->second;
    LinearForm f;
    f.add(s, Rational(1));
    return f;
}

}  // namespace

PhaseForm PhaseForm::substituted(const std::map<Sym, LinearForm>& sub) const {
    PhaseForm out;
    for (const auto& [k, c] : wedge) {
        LinearForm a = expand_sym(k.first, sub), b = expand_sym(k.second, sub);
        for (const auto& [sa, ca] : a.terms)
            for (const auto& [sb, cb] : b.terms)
                out.add_wedge(sa, sb, c * OmegaPoly(ca * cb));
    }
    for (const auto& [k, c] : dot) {
        LinearForm a = expand_sym(k.first, sub), b = expand_sym(k.second, sub);
        for (const auto& [sa, ca] : a.terms)
            for (const auto& [sb, cb] : b.terms)
                out.add_dot(sa, sb, c * OmegaPoly(ca * cb));
    }
    return out;
}

std::string PhaseForm::str() const {
    std::string out;
    for (const auto& [k, c] : wedge)
        out += "(" + c.str() + ") " + sym_name(k.first) + "^" + sym_name(k.second) + "\n";
    for (const auto& [k, c] : dot)
        out += "(" + c.str() + ") " + sym_name(k.first) + "." + sym_name(k.second) + "\n";
    return out.empty() ? "0\n" : out;
}

ConstraintSpan::ConstraintSpan(const std::vector<LinearForm>& constraints) {
    // Gauss-Jordan with the largest symbol of each row as pivot.
    for (const auto& c : constraints) {
        LinearForm row = c;
        for (const auto& r : rows_) {
            Sym pivot = r.terms.rbegin()->first;
            auto it = row.terms.find(pivot);
            if (it != row.terms.end()) {
                Rational f = it->second / r.terms.rbegin()->second;
                row -= r.scaled(f);
            }
        }
        if (!row.is_zero()) rows_.push_back(row);
    }
    // Back-substitution in ascending pivot order leaves each row with its
    // own pivot only.
    std::sort(rows_.begin(), rows_.end(), [](const LinearForm& a, const LinearForm& b) {
        return a.terms.rbegin()->first < b.terms.rbegin()->first;
    });
    for (size_t j = 0; j < rows_.size(); ++j) {
        Sym pivot = rows_[j].terms.rbegin()->first;
        for (size_t i = 0; i < rows_.size(); ++i) {
            if (i == j) continue;
            auto it = rows_[i].terms.find(pivot);
            if (it != rows_[i].terms.end()) {
                Rational f = it->second / rows_[j].terms.rbegin()->second;
                rows_[i] -= rows_[j].scaled(f);
            }
        }
    }
    for (const auto& r : rows_) {
        Sym pivot = r.terms.rbegin()->first;
        Rational pc = r.terms.rbegin()->second;
        LinearForm rest;
        for (const auto& [s, c] : r.terms)
            if (!(s == pivot)) rest.add(s, -(c / pc));
        sub_.emplace(pivot, rest);
    }
}

LinearForm ConstraintSpan::reduce(const LinearForm& f) const {
    LinearForm out;
    for (const auto& [s, c] : f.terms) {
        auto it = sub_.find(s);
        if (it == sub_.end()) out.add(s, c);
        else out += it->second.scaled(c);
    }
    return out;
}

PhaseForm ConstraintSpan::reduce(const PhaseForm& f) const {
    return f.substituted(sub_);
}

}  // namespace ncgn
