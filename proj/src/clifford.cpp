#include "ncgn/clifford.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ncgn {

CliffordElement operator+(const CliffordElement& a, const CliffordElement& b) {
    CliffordElement r;
    for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

CliffordElement operator-(const CliffordElement& a, const CliffordElement& b) {
    CliffordElement r;
    for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

CliffordElement operator*(const GaussianRational& s, const CliffordElement& a) {
    CliffordElement r;
    for (int i = 0; i < 4; ++i) r.c[i] = s * a.c[i];
    return r;
}

std::string CliffordElement::str() const {
    static const char* names[4] = {"1", "g0", "g1", "g0g1"};
    std::string out;
    for (int i = 0; i < 4; ++i) {
        if (c[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + c[i].str() + ")*" + names[i];
    }
    return out.empty() ? "0" : out;
}

namespace {

// Basis elements as words: presence of gamma0 (bit 0) and gamma1 (bit 1),
// in the order gamma0 gamma1.  Multiplication derives from the relations
// (gamma^mu)^2 = -1 and gamma1 gamma0 = -gamma0 gamma1.
struct BasisWord {
    int sign;
    int index;  // 0:1  1:gamma0  2:gamma1  3:gamma0 gamma1
};

BasisWord basis_multiply(int a, int b) {
    bool a0 = a & 1, a1 = a & 2, b0 = b & 1, b1 = b & 2;
    int sign = 1;
    // commute a's gamma1 past b's gamma0
    if (a1 && b0) sign = -sign;
    int r0 = a0 ^ b0, r1 = a1 ^ b1;
    if (a0 && b0) sign = -sign;  // (gamma0)^2 = -1
    if (a1 && b1) sign = -sign;
    return {sign, (r0 ? 1 : 0) | (r1 ? 2 : 0)};
}

// Map basis index <-> bit pattern: 0 -> 0, 1(gamma0) -> 1, 2(gamma1) -> 2,
// 3(gamma0 gamma1) -> 3.  They coincide.

}  // namespace

CliffordElement multiply(const CliffordElement& a, const CliffordElement& b) {
    CliffordElement r;
    for (int i = 0; i < 4; ++i) {
        if (a.c[i].is_zero()) continue;
        for (int j = 0; j < 4; ++j) {
            if (b.c[j].is_zero()) continue;
            BasisWord w = basis_multiply(i, j);
            r.c[w.index] += GaussianRational(Rational(w.sign)) * a.c[i] * b.c[j];
        }
    }
    return r;
}

namespace {

Mat2 mat_zero() {
    Mat2 m;
    for (auto& row : m) row = {GaussianRational(0), GaussianRational(0)};
    return m;
}

// Concrete representation gamma0 = i sigma1, gamma1 = i sigma3.  Both are
// symmetric as matrices; the transposed-basis reductions behind the
// interaction table need that.
Mat2 basis_rep(int a) {
    const GaussianRational i = GaussianRational::i();
    Mat2 m = mat_zero();
    switch (a) {
        case 0:  // identity
            m[0][0] = m[1][1] = GaussianRational(1);
            break;
        case 1:  // gamma0 = i sigma1
            m[0][1] = m[1][0] = i;
            break;
        case 2:  // gamma1 = i sigma3 = diag(i, -i)
            m[0][0] = i;
            m[1][1] = -i;
            break;
        case 3:  // gamma0 gamma1 = i sigma2 = [[0,1],[-1,0]]
            m[0][1] = GaussianRational(1);
            m[1][0] = GaussianRational(-1);
            break;
    }
    return m;
}

GaussianRational mat_trace_with(const Mat2& m, int a) {
    Mat2 g = basis_rep(a);
    GaussianRational t(0);
    for (int r = 0; r < 2; ++r)
        for (int k = 0; k < 2; ++k) t += m[r][k] * g[k][r];
    return t;
}

}  // namespace

Mat2 representation(const CliffordElement& e) {
    Mat2 m = mat_zero();
    for (int a = 0; a < 4; ++a) {
        if (e.c[a].is_zero()) continue;
        Mat2 b = basis_rep(a);
        for (int r = 0; r < 2; ++r)
            for (int k = 0; k < 2; ++k) m[r][k] += e.c[a] * b[r][k];
    }
    return m;
}

CliffordElement decompose(const Mat2& m) {
    static const Rational eta[4] = {Rational(-1), Rational(1), Rational(1), Rational(1)};
    CliffordElement e;
    for (int a = 0; a < 4; ++a)
        e.c[a] = GaussianRational(Rational(-1, 2) * eta[a]) * mat_trace_with(m, a);
    return e;
}

namespace {

// Rank-4 tensor over spinor indices (alpha beta gamma delta), each in {0,1}.
struct SpinTensor {
    std::array<GaussianRational, 16> t{};
    GaussianRational& at(int a, int b, int c, int d) {
        return t[a * 8 + b * 4 + c * 2 + d];
    }
    const GaussianRational& at(int a, int b, int c, int d) const {
        return t[a * 8 + b * 4 + c * 2 + d];
    }
};

// Solve T = -1/2 sum_{AB} g_AB Gamma^A_(s1 s2) Gamma^B_(s3 s4) for g,
// exactly, via the 16x16 linear system.
FierzMatrix solve_fierz(const SpinTensor& T) {
    // columns: (A, B); rows: (a, b, c, d)
    std::array<std::array<GaussianRational, 17>, 16> sys;
    for (auto& row : sys) row.fill(GaussianRational(0));
    for (int A = 0; A < 4; ++A) {
        Mat2 ga = basis_rep(A);
        for (int B = 0; B < 4; ++B) {
            Mat2 gb = basis_rep(B);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 2; ++c)
                        for (int d = 0; d < 2; ++d)
                            sys[a * 8 + b * 4 + c * 2 + d][A * 4 + B] =
                                GaussianRational(Rational(-1, 2)) * ga[a][b] * gb[c][d];
        }
    }
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    sys[a * 8 + b * 4 + c * 2 + d][16] = T.at(a, b, c, d);

    // Gaussian elimination over the Gaussian rationals.
    int row = 0;
    std::array<int, 16> pivot_row;
    pivot_row.fill(-1);
    for (int col = 0; col < 16 && row < 16; ++col) {
        int p = -1;
        for (int r = row; r < 16; ++r)
            if (!sys[r][col].is_zero()) { p = r; break; }
        if (p < 0) continue;
        std::swap(sys[row], sys[p]);
        for (int r = 0; r < 16; ++r) {
            if (r == row || sys[r][col].is_zero()) continue;
            GaussianRational f = sys[r][col] / sys[row][col];
            for (int k = col; k <= 16; ++k) sys[r][k] -= f * sys[row][k];
        }
        pivot_row[col] = row;
        ++row;
    }
    FierzMatrix g;
    for (int A = 0; A < 4; ++A)
        for (int B = 0; B < 4; ++B) {
            int col = A * 4 + B;
            if (pivot_row[col] < 0) {
                g[A][B] = GaussianRational(0);
                continue;
            }
            int r = pivot_row[col];
            g[A][B] = sys[r][16] / sys[r][col];
        }
    return g;
}

struct FieldSlot {
    Polarity pol;
    int index_label;  // 0 or 1: which contracted spin index
};

// Field pattern of an interaction kind in its declared cyclic order.
std::array<FieldSlot, 4> field_pattern(VertexKind kind) {
    auto pairing = slot_pairing(kind);
    std::array<FieldSlot, 4> f;
    // label classes from the pairing: the pair containing slot 0 is label 0
    int partner0 = pairing[0];
    for (int s = 0; s < 4; ++s) {
        f[s].pol = slot_polarity(kind, s);
        f[s].index_label = (s == 0 || s == partner0) ? 0 : 1;
    }
    return f;
}

}  // namespace

FierzMatrix fierz_matrix(VertexKind kind) {
    bool orientable = is_orientable_kind(kind);
    auto f = field_pattern(kind);

    // Rotate cyclically to the canonical polarity pattern.
    std::array<Polarity, 4> target = orientable
        ? std::array<Polarity, 4>{Polarity::PsiBar, Polarity::Psi, Polarity::PsiBar, Polarity::Psi}
        : std::array<Polarity, 4>{Polarity::Psi, Polarity::PsiBar, Polarity::PsiBar, Polarity::Psi};
    int rot = -1;
    for (int r = 0; r < 4 && rot < 0; ++r) {
        bool ok = true;
        for (int s = 0; s < 4; ++s)
            if (f[(s + r) % 4].pol != target[s]) ok = false;
        if (ok) rot = r;
    }
    if (rot < 0) throw std::logic_error("no cyclic rotation matches the canonical pattern");

    // T_{alpha beta gamma delta}: product of index deltas over the label
    // classes, slots read in rotated order.
    std::array<int, 4> label;
    for (int s = 0; s < 4; ++s) label[s] = f[(s + rot) % 4].index_label;
    SpinTensor T;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    std::array<int, 4> v{a, b, c, d};
                    std::array<int, 2> val{-1, -1};
                    bool ok = true;
                    for (int s = 0; s < 4; ++s) {
                        int& slot_val = val[label[s]];
                        if (slot_val < 0) slot_val = v[s];
                        else if (slot_val != v[s]) ok = false;
                    }
                    T.at(a, b, c, d) = GaussianRational(ok ? 1 : 0);
                }
    return solve_fierz(T);
}

FierzMatrix conjugation_table(int basis_c) {
    // integral of psi Gamma^C psibar psi Gamma^C psibar, rotated to
    // psibar_d psi_a psibar_b psi_c with coefficient Gamma^C_ab Gamma^C_cd.
    Mat2 gc = basis_rep(basis_c);
    SpinTensor T;
    for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be)
            for (int ga = 0; ga < 2; ++ga)
                for (int de = 0; de < 2; ++de)
                    T.at(al, be, ga, de) = gc[be][ga] * gc[de][al];
    return solve_fierz(T);
}

std::pair<int, GammaWord> alternating_normal_form(const GammaWord& word) {
    int sign = 1;
    std::vector<int> stack;
    for (int letter : word.letters) {
        if (!stack.empty() && stack.back() == letter) {
            stack.pop_back();
            sign = -sign;  // (gamma^mu)^2 = -1
        } else {
            stack.push_back(letter);
        }
    }
    return {sign, GammaWord{stack}};
}

std::pair<int, int> reduce_gamma_word(const GammaWord& word) {
    auto [sign, alt] = alternating_normal_form(word);
    const auto& w = alt.letters;
    if (w.empty()) return {sign, 0};

    int n0 = int(std::count(w.begin(), w.end(), 0));
    int n1 = int(w.size()) - n0;
    int first = w.front();

    if (n0 == n1) {
        int p = n0 / 2;
        int s = (p % 2 == 0) ? 1 : -1;
        if (n0 % 2 == 0) return {sign * s, 0};
        // odd: gamma0 gamma1 ... or gamma1 gamma0 ...; the latter equals
        // -gamma0 gamma1 in the canonical basis.
        if (first == 0) return {sign * s, 3};
        return {-sign * s, 3};
    }
    // counts differ by one; the word starts and ends with the same letter
    int p = std::min(n0, n1) / 2;
    int s = (p % 2 == 0) ? 1 : -1;
    if (n0 == n1 + 1)  // starts/ends with gamma0
        return {sign * s, n1 % 2 == 0 ? 1 : 2};
    return {sign * s, n0 % 2 == 0 ? 2 : 1};
}

bool exchange_symmetry_check(const GammaWord& word) {
    GammaWord swapped;
    swapped.letters.reserve(word.letters.size());
    for (int l : word.letters) swapped.letters.push_back(1 - l);
    auto [s1, a1] = alternating_normal_form(word);
    auto [s2, a2] = alternating_normal_form(swapped);
    if (s1 != s2) return false;
    if (a1.letters.size() != a2.letters.size()) return false;
    for (size_t i = 0; i < a1.letters.size(); ++i)
        if (a2.letters[i] != 1 - a1.letters[i]) return false;
    return true;
}

ChainCycleDecomposition chains_cycles(const RibbonGraph& g) {
    ChainCycleDecomposition out;
    auto occ = g.occupancy();
    int P = 4 * g.n();

    // partner via scalar product at the vertex
    auto sp = [&](int idx) {
        int v = idx / 4, slot = idx % 4;
        return v * 4 + slot_pairing(g.vertices[v].kind)[slot];
    };
    // partner via propagator, or -1 for externals
    auto prop = [&](int idx) {
        int o = occ[idx];
        if (o < 0) return -1;
        const Line& l = g.lines[o];
        int a = g.position_index(l.end_a), b = g.position_index(l.end_b);
        return idx == a ? b : a;
    };

    std::vector<bool> seen(P, false);

    // chains start at external slots
    for (int k = 0; k < g.external_count(); ++k) {
        int start = g.position_index(g.externals[k].at);
        if (seen[start]) continue;
        std::vector<int> lines;
        int idx = start;
        seen[idx] = true;
        int end_ext = -1;
        while (true) {
            int pair = sp(idx);
            seen[pair] = true;
            int next = prop(pair);
            if (next < 0) {
                end_ext = external_of_occupancy(occ[pair]);
                break;
            }
            lines.push_back(occ[pair]);
            idx = next;
            seen[idx] = true;
        }
        out.chains.push_back(std::move(lines));
        out.chain_ends.emplace_back(k, end_ext);
    }

    // remaining slots form cycles
    for (int start = 0; start < P; ++start) {
        if (seen[start]) continue;
        std::vector<int> lines;
        int idx = start;
        while (!seen[idx]) {
            seen[idx] = true;
            int pair = sp(idx);
            seen[pair] = true;
            int next = prop(pair);
            lines.push_back(occ[pair]);
            idx = next;
        }
        out.cycles.push_back(std::move(lines));
    }
    return out;
}

const char* counterterm_form_name(CountertermForm f) {
    switch (f) {
        case CountertermForm::MassOne: return "mass*1";
        case CountertermForm::DeltaMassGamma01: return "deltam*gamma0gamma1";
        case CountertermForm::WaveSlash: return "wave-slash";
        case CountertermForm::OmegaXtilde: return "Omega-xtilde";
        case CountertermForm::PSlashTilde: return "pslash-tilde";
        case CountertermForm::XSlash: return "xslash";
    }
    return "?";
}

CountertermClass parity_counterterm_class(const RibbonGraph& graph2pt,
                                          bool lowest_line_uses_gamma01,
                                          bool massive) {
    if (graph2pt.external_count() != 2)
        throw PreconditionError("parity_counterterm_class expects a two-point graph");
    auto dec = chains_cycles(graph2pt);
    if (dec.chains.size() != 1)
        throw PreconditionError("a two-point graph must carry exactly one chain");

    CountertermClass out;
    const auto& chain = dec.chains[0];
    out.chain_length = int(chain.size());

    if (!lowest_line_uses_gamma01) {
        if (massive) out.divergent.insert(CountertermForm::MassOne);
        out.divergent.insert(CountertermForm::WaveSlash);
        out.divergent.insert(CountertermForm::OmegaXtilde);
        return out;
    }

    // lowest line: smallest scale, ties by index
    int lowest = 0;
    for (int l = 1; l < graph2pt.internal_count(); ++l) {
        int sl = graph2pt.lines[l].scale.value_or(0);
        int sb = graph2pt.lines[lowest].scale.value_or(0);
        if (sl < sb) lowest = l;
    }
    out.lowest_in_chain =
        std::find(chain.begin(), chain.end(), lowest) != chain.end();

    // Case split on the chain parity and the lowest line membership:
    // the mass-type divergence is carried by gamma0 gamma1 in every case;
    // the derivative-type terms survive only as convergent remainders.
    if (massive) out.divergent.insert(CountertermForm::DeltaMassGamma01);
    bool even = out.chain_length % 2 == 0;
    if (even && !out.lowest_in_chain) {
        out.convergent_only.insert(CountertermForm::WaveSlash);
        out.convergent_only.insert(CountertermForm::OmegaXtilde);
    } else {
        out.convergent_only.insert(CountertermForm::PSlashTilde);
        out.convergent_only.insert(CountertermForm::XSlash);
    }
    return out;
}

Projections counterterm_projections(const CliffordElement& a) {
    Projections p;
    // 1/2 Tr(A)
    p.mass = a.c[0];
    // -1/2 Tr(gamma0 gamma1 A) against gamma0 gamma1: (g0g1)^2 = -1
    p.delta_m = a.c[3];
    p.g0 = a.c[1];
    p.g1 = a.c[2];
    return p;
}

GaussianRational slash_projection(const CliffordElement& a, const Rational& v0,
                                  const Rational& v1) {
    Rational v2 = v0 * v0 + v1 * v1;
    if (v2.is_zero())
        throw std::domain_error("slash projection at v = 0 is singular");
    // -(1/2 v^2) Tr(vslash A) with Tr(gamma^mu gamma^nu) = -2 delta:
    // Tr(vslash A) = -2 (v0 a1 + v1 a2)
    GaussianRational dot = GaussianRational(v0) * a.c[1] + GaussianRational(v1) * a.c[2];
    return dot / GaussianRational(v2);
}

}  // namespace ncgn
