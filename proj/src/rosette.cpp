#include "ncgn/rosette.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "ncgn/topology.hpp"

namespace ncgn {

namespace {

const Rational kHalf(1, 2);

// Sign (-1)^{num+1}: +1 at odd position numbers.
int parity_sign(int num) { return num % 2 == 1 ? +1 : -1; }

// External index occupying a position number, or -1.
std::vector<int> external_at_number(const OrderedGraph& og) {
    std::vector<int> ext(og.positions() + 1, -1);
    for (int k = 0; k < og.graph.external_count(); ++k)
        ext[og.external_number(k)] = k;
    return ext;
}

struct Context {
    const OrderedGraph& og;
    const OrientationData& o;
    std::vector<int> tree, loop0, loop_plus, loop_minus;
    std::vector<std::pair<int, int>> exts;  // (position number, external index)
    std::vector<int> ext_of_num;

    Context(const OrderedGraph& og_, const OrientationData& o_) : og(og_), o(o_) {
        for (int l = 0; l < og.graph.internal_count(); ++l) {
            switch (o.line_class[l]) {
                case LineClass::Tree: tree.push_back(l); break;
                case LineClass::Loop0: loop0.push_back(l); break;
                case LineClass::LoopPlus: loop_plus.push_back(l); break;
                case LineClass::LoopMinus: loop_minus.push_back(l); break;
            }
        }
        for (int k = 0; k < og.graph.external_count(); ++k)
            exts.emplace_back(og.external_number(k), k);
        std::sort(exts.begin(), exts.end());
        ext_of_num = external_at_number(og);
    }

    Sym sym_at(int num) const {
        int k = ext_of_num[num];
        return k >= 0 ? ext_sym(k) : pos_sym(num);
    }

    std::vector<int> t_or_l0() const {
        std::vector<int> v = tree;
        v.insert(v.end(), loop0.begin(), loop0.end());
        return v;
    }
    std::vector<int> clashing() const {
        std::vector<int> v = loop_plus;
        v.insert(v.end(), loop_minus.begin(), loop_minus.end());
        return v;
    }
    std::vector<int> loops() const {
        std::vector<int> v = loop0;
        v.insert(v.end(), loop_plus.begin(), loop_plus.end());
        v.insert(v.end(), loop_minus.begin(), loop_minus.end());
        return v;
    }

    OmegaPoly eps_c(int l) const { return OmegaPoly(Rational(o.eps[l])); }

    // The own-pair oscillation of a clashing line expands with the sign
    // opposite to its tour sign (the orientable classes keep it).
    OmegaPoly eps_self(int l) const {
        bool clash = o.line_class[l] == LineClass::LoopPlus ||
                     o.line_class[l] == LineClass::LoopMinus;
        return OmegaPoly(Rational(clash ? -o.eps[l] : o.eps[l]));
    }
};

// All ordered pairs (a, b) in A x B with rel(a, b) == r.
template <class F>
void for_pairs(const LineRelations& rel, const std::vector<int>& A,
               const std::vector<int>& B, Rel r, F&& f) {
    for (int a : A)
        for (int b : B)
            if (a != b && rel.rel[a][b] == r) f(a, b);
}

// Vertex at the upper (larger-numbered) end of a tree line.
int upper_vertex(const OrderedGraph& og, int tree_line) {
    const Line& l = og.graph.lines[tree_line];
    int na = og.number[og.graph.position_index(l.end_a)];
    int nb = og.number[og.graph.position_index(l.end_b)];
    return na > nb ? l.end_a.vertex : l.end_b.vertex;
}

}  // namespace

std::vector<int> branch_vertices(const OrderedGraph& og, int tree_line) {
    const RibbonGraph& g = og.graph;
    std::vector<bool> in(g.n(), false);
    std::function<void(int)> dfs = [&](int v) {
        in[v] = true;
        for (int t : og.tree) {
            if (t == tree_line) continue;
            int a = g.lines[t].end_a.vertex, b = g.lines[t].end_b.vertex;
            if (a == v && !in[b]) dfs(b);
            if (b == v && !in[a]) dfs(a);
        }
    };
    dfs(upper_vertex(og, tree_line));
    std::vector<int> out;
    for (int v = 0; v < g.n(); ++v)
        if (in[v]) out.push_back(v);
    return out;
}

std::pair<PhaseForm, DeltaSystem> vertex_phases(const OrderedGraph& og) {
    auto ext_of_num = external_at_number(og);
    auto sym_at = [&](int num) {
        int k = ext_of_num[num];
        return k >= 0 ? ext_sym(k) : pos_sym(num);
    };
    PhaseForm phase;
    DeltaSystem deltas;
    for (int v = 0; v < og.graph.n(); ++v) {
        std::array<int, 4> nums{};
        for (int s = 0; s < 4; ++s) nums[s] = og.number[v * 4 + s];
        std::sort(nums.begin(), nums.end());
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                int sign = (nums[a] + nums[b]) % 2 == 0 ? -1 : +1;
                phase.add_wedge(sym_at(nums[a]), sym_at(nums[b]),
                                OmegaPoly(Rational(sign)));
            }
        LinearForm d;
        for (int s = 0; s < 4; ++s)
            d.add(sym_at(nums[s]), Rational(parity_sign(nums[s])));
        deltas.labels.push_back(v);
        deltas.args.push_back(d);
    }
    return {phase, deltas};
}

DeltaSystem branch_deltas(const OrderedGraph& og, const OrientationData& o) {
    Context cx(og, o);
    const RibbonGraph& g = og.graph;
    DeltaSystem out;

    LinearForm root;
    for (auto [num, k] : cx.exts) root.add(ext_sym(k), Rational(o.eta[k]));
    for (int l : cx.t_or_l0()) root.add(u_sym(l), Rational(1));
    for (int l : cx.loop_plus) root.add(w_sym(l), Rational(1));
    for (int l : cx.loop_minus) root.add(w_sym(l), Rational(-1));
    out.labels.push_back(-1);
    out.args.push_back(root);

    for (int t : cx.tree) {
        auto verts = branch_vertices(og, t);
        std::vector<bool> in(g.n(), false);
        for (int v : verts) in[v] = true;

        LinearForm arg;
        for (int l = 0; l < g.internal_count(); ++l) {
            bool a_in = in[g.lines[l].end_a.vertex], b_in = in[g.lines[l].end_b.vertex];
            if (a_in && b_in) {
                switch (o.line_class[l]) {
                    case LineClass::Tree:
                    case LineClass::Loop0: arg.add(u_sym(l), Rational(1)); break;
                    case LineClass::LoopPlus: arg.add(w_sym(l), Rational(1)); break;
                    case LineClass::LoopMinus: arg.add(w_sym(l), Rational(-1)); break;
                }
            } else if (a_in || b_in) {
                const Position& inside = a_in ? g.lines[l].end_a : g.lines[l].end_b;
                int num = og.number[g.position_index(inside)];
                arg.add(pos_sym(num), Rational(parity_sign(num)));
            }
        }
        for (auto [num, k] : cx.exts)
            if (in[g.externals[k].at.vertex]) arg.add(ext_sym(k), Rational(o.eta[k]));
        out.labels.push_back(t);
        out.args.push_back(arg);
    }
    return out;
}

Rosette filk_reduce(const OrderedGraph& og, const OrientationData& o) {
    Context cx(og, o);
    Rosette r;

    std::vector<int> rest;
    std::vector<bool> is_tree_end(og.positions() + 1, false);
    for (int t : cx.tree) {
        auto [i, j] = og.line_span(t);
        is_tree_end[i] = is_tree_end[j] = true;
    }
    for (int num = 1; num <= og.positions(); ++num)
        if (!is_tree_end[num]) rest.push_back(num);

    for (int num : rest) r.root_delta.add(cx.sym_at(num), Rational(parity_sign(num)));
    for (int t : cx.tree) r.root_delta.add(u_sym(t), Rational(1));

    for (size_t a = 0; a < rest.size(); ++a)
        for (size_t b = a + 1; b < rest.size(); ++b) {
            int sign = (rest[a] + rest[b]) % 2 == 0 ? -1 : +1;
            r.phase.add_wedge(cx.sym_at(rest[a]), cx.sym_at(rest[b]),
                              OmegaPoly(Rational(sign)));
        }

    for (int t : cx.tree)
        r.phase.add_wedge(v_sym(t), u_sym(t), OmegaPoly(kHalf) * cx.eps_c(t));

    for (int t1 : cx.tree)
        for (int t2 : cx.tree) {
            if (t1 == t2) continue;
            if (og.line_span(t1).second < og.line_span(t2).first)
                r.phase.add_wedge(u_sym(t2), u_sym(t1), OmegaPoly(Rational(1)));
        }

    for (int t : cx.tree) {
        auto [i, j] = og.line_span(t);
        for (int num : rest) {
            OmegaPoly c(Rational(parity_sign(num)));
            if (num > j)
                r.phase.add_wedge(cx.sym_at(num), u_sym(t), c);
            else if (num < i)
                r.phase.add_wedge(u_sym(t), cx.sym_at(num), c);
        }
    }
    return r;
}

PhaseForm rosette_phi_w(const OrderedGraph& og, const OrientationData& o,
                        const LineRelations& rel) {
    Context cx(og, o);
    PhaseForm w;
    auto l0 = cx.loop0;
    auto lc = cx.clashing();
    const OmegaPoly half(kHalf);

    // external-loop terms: clashing lines ordered against an external,
    // orientable loops contracting above one
    for (auto [num, k] : cx.exts) {
        OmegaPoly sx(Rational(parity_sign(num)));
        for (int l : lc) {
            if (rel.ext[l][k] == ExtRel::Before)
                w.add_wedge(w_sym(l), ext_sym(k), cx.eps_c(l) * sx);
            else if (rel.ext[l][k] == ExtRel::After)
                w.add_wedge(ext_sym(k), w_sym(l), sx * cx.eps_c(l));
        }
        for (int l : l0)
            if (rel.ext[l][k] == ExtRel::Above)
                w.add_wedge(w_sym(l), ext_sym(k), cx.eps_c(l) * sx);
    }

    // 1/2 eps' w' ^ eps w over crossings
    auto cross = [&](int a, int b) {
        w.add_wedge(w_sym(b), w_sym(a), half * cx.eps_c(b) * cx.eps_c(a));
    };
    for_pairs(rel, l0, l0, Rel::CrossLeft, cross);
    for_pairs(rel, lc, lc, Rel::CrossLeft, cross);
    for_pairs(rel, l0, lc, Rel::CrossLeft, cross);
    for_pairs(rel, l0, lc, Rel::CrossRight, cross);

    // eps' w' ^ eps w over (L0 containing clashing) and ordered clashing pairs
    auto nest = [&](int a, int b) {
        w.add_wedge(w_sym(b), w_sym(a), cx.eps_c(b) * cx.eps_c(a));
    };
    for_pairs(rel, l0, lc, Rel::Contains, nest);
    for_pairs(rel, lc, lc, Rel::Before, nest);
    return w;
}

namespace {

PhaseForm rosette_phi_e(const Context& cx) {
    PhaseForm e;
    for (size_t a = 0; a < cx.exts.size(); ++a)
        for (size_t b = a + 1; b < cx.exts.size(); ++b) {
            auto [ja, ka] = cx.exts[a];
            auto [jb, kb] = cx.exts[b];
            int sign = (ja + jb) % 2 == 0 ? -1 : +1;
            e.add_wedge(ext_sym(ka), ext_sym(kb), OmegaPoly(Rational(sign)));
        }
    return e;
}

PhaseForm rosette_phi_x(const Context& cx, const LineRelations& rel) {
    PhaseForm x;
    auto tl0 = cx.t_or_l0();
    auto lc = cx.clashing();
    for (auto [num, k] : cx.exts) {
        OmegaPoly sx(Rational(parity_sign(num)));
        for (int l : tl0) {
            if (rel.ext[l][k] == ExtRel::Before)
                x.add_wedge(ext_sym(k), u_sym(l), sx);
            else if (rel.ext[l][k] == ExtRel::After)
                x.add_wedge(u_sym(l), ext_sym(k), sx);
        }
        for (int l : lc)
            if (rel.ext[l][k] == ExtRel::Above)
                x.add_wedge(ext_sym(k), u_sym(l), sx);
    }
    return x;
}

PhaseForm rosette_phi_u(const Context& cx, const LineRelations& rel) {
    PhaseForm u;
    auto tl0 = cx.t_or_l0();
    auto lc = cx.clashing();
    auto loops = cx.loops();
    const OmegaPoly half(kHalf);
    const OmegaPoly one(Rational(1));

    for (int t : cx.tree) u.add_wedge(v_sym(t), u_sym(t), half * cx.eps_c(t));
    for (int l : loops) u.add_wedge(w_sym(l), u_sym(l), half * cx.eps_self(l));

    for_pairs(rel, cx.loop0, cx.loop0, Rel::CrossLeft, [&](int a, int b) {
        u.add_wedge(w_sym(a), u_sym(b), half * cx.eps_c(a));
        u.add_wedge(w_sym(b), u_sym(a), half * cx.eps_c(b));
    });
    for_pairs(rel, cx.loop0, lc, Rel::CrossLeft, [&](int a, int b) {
        u.add_wedge(w_sym(a), u_sym(b), half * cx.eps_c(a));
        u.add_wedge(w_sym(b), u_sym(a), -(half * cx.eps_c(b)));
    });
    for_pairs(rel, cx.loop0, lc, Rel::CrossRight, [&](int a, int b) {
        u.add_wedge(w_sym(a), u_sym(b), -(half * cx.eps_c(a)));
        u.add_wedge(w_sym(b), u_sym(a), half * cx.eps_c(b));
    });
    auto mixed = [&](int a, int b) {
        u.add_wedge(u_sym(a), w_sym(b), half * cx.eps_c(b));
        u.add_wedge(u_sym(b), w_sym(a), half * cx.eps_c(a));
    };
    for_pairs(rel, cx.loop_plus, cx.loop_minus, Rel::CrossLeft, mixed);
    for_pairs(rel, cx.loop_plus, cx.loop_minus, Rel::CrossRight, mixed);
    for_pairs(rel, cx.loop_plus, cx.loop_plus, Rel::CrossLeft, mixed);
    for_pairs(rel, cx.loop_minus, cx.loop_minus, Rel::CrossLeft, mixed);

    for_pairs(rel, tl0, cx.loop0, Rel::Inside, [&](int a, int b) {
        u.add_wedge(w_sym(b), u_sym(a), cx.eps_c(b));
    });
    for_pairs(rel, tl0, lc, Rel::After, [&](int a, int b) {
        u.add_wedge(w_sym(b), u_sym(a), cx.eps_c(b));
    });
    // nested clashing pairs: the inner line carries the long variable
    for_pairs(rel, lc, lc, Rel::Inside, [&](int a, int b) {
        u.add_wedge(u_sym(b), w_sym(a), cx.eps_c(a));
    });
    for_pairs(rel, tl0, lc, Rel::Before, [&](int a, int b) {
        u.add_wedge(u_sym(a), w_sym(b), cx.eps_c(b));
    });

    for_pairs(rel, tl0, tl0, Rel::Before, [&](int a, int b) {
        u.add_wedge(u_sym(b), u_sym(a), one);
    });
    for_pairs(rel, tl0, lc, Rel::Inside, [&](int a, int b) {
        u.add_wedge(u_sym(a), u_sym(b), one);
    });

    auto upu = [&](int a, int b) { u.add_wedge(u_sym(b), u_sym(a), half); };
    for_pairs(rel, cx.loop0, cx.loop0, Rel::CrossLeft, upu);
    for_pairs(rel, cx.loop_plus, cx.loop_plus, Rel::CrossLeft, upu);
    for_pairs(rel, cx.loop_minus, cx.loop_minus, Rel::CrossLeft, upu);
    auto uup = [&](int a, int b) { u.add_wedge(u_sym(a), u_sym(b), half); };
    for_pairs(rel, cx.loop0, lc, Rel::CrossLeft, uup);
    for_pairs(rel, cx.loop0, lc, Rel::CrossRight, uup);
    for_pairs(rel, cx.loop_plus, cx.loop_minus, Rel::CrossRight, uup);
    for_pairs(rel, cx.loop_minus, cx.loop_plus, Rel::CrossRight, uup);

    return u;
}

LinearForm general_root_delta(const Context& cx) {
    LinearForm root;
    for (auto [num, k] : cx.exts) root.add(ext_sym(k), Rational(parity_sign(num)));
    for (int l : cx.t_or_l0()) root.add(u_sym(l), Rational(1));
    for (int l : cx.loop_plus) root.add(w_sym(l), Rational(1));
    for (int l : cx.loop_minus) root.add(w_sym(l), Rational(-1));
    return root;
}

}  // namespace

Rosette rosette_general(const OrderedGraph& og, const OrientationData& o,
                        const LineRelations& rel) {
    Context cx(og, o);
    Rosette r;
    r.root_delta = general_root_delta(cx);
    r.phase.add(rosette_phi_e(cx));
    r.phase.add(rosette_phi_x(cx, rel));
    r.phase.add(rosette_phi_u(cx, rel));
    r.phase.add(rosette_phi_w(og, o, rel));
    return r;
}

Rosette rosette_orientable(const OrderedGraph& og, const OrientationData& o,
                           const LineRelations& rel) {
    if (!o.orientable())
        throw PreconditionError("rosette_orientable: graph has clashing lines");
    Context cx(og, o);
    Rosette r;
    r.root_delta = general_root_delta(cx);

    auto all = cx.t_or_l0();
    auto loops = cx.loop0;
    const OmegaPoly half(kHalf);
    const OmegaPoly one(Rational(1));
    PhaseForm& p = r.phase;

    p.add(rosette_phi_e(cx));

    for (auto [num, k] : cx.exts) {
        OmegaPoly sx(Rational(parity_sign(num)));
        for (int l : all) {
            if (rel.ext[l][k] == ExtRel::Before)
                p.add_wedge(ext_sym(k), u_sym(l), sx);
            else if (rel.ext[l][k] == ExtRel::After)
                p.add_wedge(u_sym(l), ext_sym(k), sx);
        }
    }

    for (int t : cx.tree) p.add_wedge(v_sym(t), u_sym(t), half * cx.eps_c(t));
    for (int l : loops) p.add_wedge(w_sym(l), u_sym(l), half * cx.eps_c(l));
    for_pairs(rel, loops, loops, Rel::CrossLeft, [&](int a, int b) {
        p.add_wedge(w_sym(a), u_sym(b), half * cx.eps_c(a));
        p.add_wedge(w_sym(b), u_sym(a), half * cx.eps_c(b));
    });
    for_pairs(rel, all, loops, Rel::Inside, [&](int a, int b) {
        p.add_wedge(w_sym(b), u_sym(a), cx.eps_c(b));
    });
    for_pairs(rel, all, all, Rel::Before, [&](int a, int b) {
        p.add_wedge(u_sym(b), u_sym(a), one);
    });
    for_pairs(rel, loops, loops, Rel::CrossLeft, [&](int a, int b) {
        p.add_wedge(u_sym(b), u_sym(a), half);
    });

    for (auto [num, k] : cx.exts) {
        OmegaPoly sx(Rational(-parity_sign(num)));  // (-1)^{j_k}
        for (int l : loops)
            if (rel.ext[l][k] == ExtRel::Above)
                p.add_wedge(ext_sym(k), w_sym(l), sx * cx.eps_c(l));
    }
    for_pairs(rel, loops, loops, Rel::CrossLeft, [&](int a, int b) {
        p.add_wedge(w_sym(b), w_sym(a), half * cx.eps_c(b) * cx.eps_c(a));
    });
    return r;
}

Rosette rosette_planar_regular(const OrderedGraph& og, const OrientationData& o,
                               const LineRelations& rel) {
    if (!o.orientable())
        throw PreconditionError("rosette_planar_regular: graph has clashing lines");
    TopologyReport topo = trace_faces(og.graph);
    if (topo.genus != 0 || topo.broken != 1)
        throw PreconditionError("rosette_planar_regular requires g = 0 and B = 1");

    Context cx(og, o);
    Rosette r;
    r.root_delta = general_root_delta(cx);

    auto all = cx.t_or_l0();
    auto loops = cx.loop0;
    const OmegaPoly half(kHalf);
    const OmegaPoly one(Rational(1));
    PhaseForm& p = r.phase;

    p.add(rosette_phi_e(cx));
    for (auto [num, k] : cx.exts) {
        OmegaPoly sx(Rational(parity_sign(num)));
        for (int l : all) {
            if (rel.ext[l][k] == ExtRel::Before)
                p.add_wedge(ext_sym(k), u_sym(l), sx);
            else if (rel.ext[l][k] == ExtRel::After)
                p.add_wedge(u_sym(l), ext_sym(k), sx);
        }
    }
    for (int t : cx.tree) p.add_wedge(v_sym(t), u_sym(t), half * cx.eps_c(t));
    for (int l : loops) p.add_wedge(w_sym(l), u_sym(l), half * cx.eps_c(l));
    for_pairs(rel, all, loops, Rel::Inside, [&](int a, int b) {
        p.add_wedge(w_sym(b), u_sym(a), cx.eps_c(b));
    });
    for_pairs(rel, all, all, Rel::Before, [&](int a, int b) {
        p.add_wedge(u_sym(b), u_sym(a), one);
    });
    return r;
}

namespace {

std::map<Sym, LinearForm> substitution_map(const OrderedGraph& og,
                                           const OrientationData& o,
                                           bool substitute_loops) {
    std::map<Sym, LinearForm> sub;
    for (const auto& [num, form] : line_variables(og, o))
        sub.emplace(pos_sym(num), form);
    if (!substitute_loops) {
        for (int l = 0; l < og.graph.internal_count(); ++l) {
            if (o.line_class[l] == LineClass::Tree) continue;
            auto [i, j] = og.line_span(l);
            sub.erase(pos_sym(i));
            sub.erase(pos_sym(j));
        }
    }
    for (int k = 0; k < og.graph.external_count(); ++k) {
        LinearForm f;
        f.add(ext_sym(k), Rational(1));
        sub[pos_sym(og.external_number(k))] = f;
    }
    return sub;
}

LinearForm apply_sub(const LinearForm& f, const std::map<Sym, LinearForm>& sub) {
    LinearForm out;
    for (const auto& [s, c] : f.terms) {
        auto it = sub.find(s);
        if (it == sub.end()) out.add(s, c);
        else out += it->second.scaled(c);
    }
    return out;
}

}  // namespace

PhaseForm brute_force_phase(const OrderedGraph& og, const OrientationData& o,
                            bool substitute_loops) {
    auto [phase, deltas] = vertex_phases(og);
    (void)deltas;
    return phase.substituted(substitution_map(og, o, substitute_loops));
}

DeltaSystem brute_force_deltas(const OrderedGraph& og, const OrientationData& o,
                               bool substitute_loops) {
    auto [phase, deltas] = vertex_phases(og);
    (void)phase;
    auto sub = substitution_map(og, o, substitute_loops);
    DeltaSystem out;
    out.labels = deltas.labels;
    for (const auto& arg : deltas.args) out.args.push_back(apply_sub(arg, sub));
    return out;
}

PhaseForm reduce_mod_deltas(const PhaseForm& phase, const DeltaSystem& deltas) {
    ConstraintSpan span(deltas.args);
    PhaseForm r = span.reduce(phase);
    r.prune();
    return r;
}

bool phases_equal_mod_deltas(const PhaseForm& a, const PhaseForm& b,
                             const DeltaSystem& deltas) {
    ConstraintSpan span(deltas.args);
    PhaseForm ra = span.reduce(a), rb = span.reduce(b);
    ra.prune();
    rb.prune();
    return ra == rb;
}

PhaseForm omega_dress(const PhaseForm& phase, const OrderedGraph& og,
                      const OrientationData& o) {
    PhaseForm out = phase;
    for (int l = 0; l < og.graph.internal_count(); ++l) {
        Sym lng = o.line_class[l] == LineClass::Tree ? v_sym(l) : w_sym(l);
        OmegaPoly extra = OmegaPoly::omega() *
                          OmegaPoly(kHalf * Rational(o.epsilon[l] * o.eps[l]));
        out.add_wedge(lng, u_sym(l), extra);
    }
    return out;
}

PhaseForm with_momentum_phases(const PhaseForm& phase, const OrderedGraph& og,
                               const OrientationData& o) {
    PhaseForm out = phase;
    auto deltas = branch_deltas(og, o);
    auto sub = substitution_map(og, o, true);
    for (size_t d = 0; d < deltas.args.size(); ++d) {
        if (deltas.labels[d] < 0) continue;  // the root delta stays a delta
        int l = deltas.labels[d];
        LinearForm arg = apply_sub(deltas.args[d], sub);
        for (const auto& [s, c] : arg.terms)
            out.add_dot(p_sym(l), s, OmegaPoly(c));
    }
    return out;
}

bool MassletForms::lower_triangular() const {
    for (size_t r = 0; r < matrix.size(); ++r)
        for (size_t c = r + 1; c < matrix.size(); ++c)
            if (!matrix[r][c].is_zero()) return false;
    return true;
}

OmegaPoly MassletForms::determinant() const {
    OmegaPoly det(Rational(1));
    for (size_t r = 0; r < matrix.size(); ++r) det *= matrix[r][r];
    return det;
}

MassletForms masslet_forms(const OrderedGraph& og, const OrientationData& o,
                           const LineRelations& rel) {
    if (!o.orientable())
        throw PreconditionError("masslet_forms: graph has clashing lines");
    const RibbonGraph& g = og.graph;
    Context cx(og, o);
    MassletForms mf;

    std::vector<int> down_line(g.n(), -1);
    for (int t : cx.tree) down_line[upper_vertex(og, t)] = t;

    auto path_to_root = [&](int v) {
        std::vector<int> path;
        while (down_line[v] >= 0) {
            int t = down_line[v];
            path.push_back(t);
            const Line& l = g.lines[t];
            v = l.end_a.vertex == v ? l.end_b.vertex : l.end_a.vertex;
        }
        return path;
    };

    const OmegaPoly half(kHalf);
    auto diag = [&](int l) {
        return half * (OmegaPoly(Rational(1)) +
                       OmegaPoly::omega() * OmegaPoly(Rational(o.epsilon[l])));
    };

    for (int l = 0; l < g.internal_count(); ++l) {
        OmegaLinearForm f;
        if (o.line_class[l] == LineClass::Tree) {
            f.add(v_sym(l), diag(l) * cx.eps_c(l));
            for (int lp : cx.loop0)
                if (rel.rel[l][lp] == Rel::Inside) f.add(w_sym(lp), cx.eps_c(lp));
            int upper = upper_vertex(og, l);
            f.add(ptilde_sym(l), OmegaPoly(Rational(-1, 2)));
            for (int t : path_to_root(upper))
                f.add(ptilde_sym(t), OmegaPoly(Rational(-1)));
        } else {
            f.add(w_sym(l), diag(l) * cx.eps_c(l));
            for (int lp : cx.loop0) {
                if (lp == l) continue;
                if (rel.rel[l][lp] == Rel::Inside) f.add(w_sym(lp), cx.eps_c(lp));
                else if (rel.rel[lp][l] == Rel::CrossLeft) f.add(w_sym(lp), cx.eps_c(lp));
            }
        }
        mf.forms.emplace(l, std::move(f));
    }

    mf.order.resize(g.internal_count());
    for (int l = 0; l < g.internal_count(); ++l) mf.order[l] = l;
    std::sort(mf.order.begin(), mf.order.end(), [&](int a, int b) {
        return og.line_span(a).first < og.line_span(b).first;
    });
    std::map<int, int> col;
    for (size_t c = 0; c < mf.order.size(); ++c) col[mf.order[c]] = int(c);

    int I = g.internal_count();
    mf.matrix.assign(I, std::vector<OmegaPoly>(I));
    for (int r = 0; r < I; ++r) {
        int l = mf.order[r];
        for (const auto& [s, c] : mf.forms.at(l).terms) {
            if (s.kind == SymKind::Ptilde) continue;  // parameters
            mf.matrix[r][col.at(s.id)] = c * OmegaPoly(Rational(o.eps[s.id]));
        }
    }
    return mf;
}

}  // namespace ncgn
