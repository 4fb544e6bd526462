#include "ncgn/multiscale.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "ncgn/clifford.hpp"
#include "ncgn/parallel.hpp"

namespace ncgn {

ScaleAttribution attribution_from_graph(const RibbonGraph& g, int rho) {
    ScaleAttribution mu;
    mu.rho = rho;
    mu.scale.resize(g.internal_count());
    for (int l = 0; l < g.internal_count(); ++l) {
        if (!g.lines[l].scale)
            throw GraphError("line " + g.lines[l].name + " has no scale");
        mu.scale[l] = *g.lines[l].scale;
        if (mu.scale[l] > rho)
            throw GraphError("line " + g.lines[l].name + " above the cutoff");
    }
    return mu;
}

const char* div_class_name(DivClass c) {
    switch (c) {
        case DivClass::Convergent: return "convergent";
        case DivClass::LogDivergent2pt: return "log-divergent-2pt";
        case DivClass::Divergent2pt: return "divergent-2pt";
        case DivClass::LogDivergent4ptB1: return "log-divergent-4pt-B1";
        case DivClass::Critical4pt: return "critical-4pt";
        case DivClass::Improved4ptB2: return "improved-4pt-B2";
        case DivClass::NonplanarSuppressed: return "nonplanar-suppressed";
    }
    return "?";
}

RibbonGraph node_subgraph(const RibbonGraph& g, const std::vector<int>& lines) {
    RibbonGraph s;
    s.name = g.name + "#node";
    std::set<int> keep(lines.begin(), lines.end());
    std::set<int> verts;
    for (int l : lines) {
        verts.insert(g.lines[l].end_a.vertex);
        verts.insert(g.lines[l].end_b.vertex);
    }
    if (verts.empty() && g.n() > 0) verts.insert(0);
    std::map<int, int> vmap;
    for (int v : verts) {
        vmap[v] = s.n();
        s.vertices.push_back(g.vertices[v]);
    }
    auto remap = [&](Position p) { return Position{vmap.at(p.vertex), p.slot}; };
    for (int l : lines) {
        Line nl = g.lines[l];
        nl.end_a = remap(nl.end_a);
        nl.end_b = remap(nl.end_b);
        s.lines.push_back(nl);
    }
    // Every remaining occupied slot of the kept vertices becomes an
    // external leg of the component.
    auto occ = g.occupancy();
    for (int v : verts)
        for (int slot = 0; slot < 4; ++slot) {
            int o = occ[v * 4 + slot];
            Position p{v, slot};
            if (o >= 0 && !keep.count(o)) {
                s.externals.push_back({"e." + g.lines[o].name + "." +
                                           std::to_string(s.externals.size()),
                                       remap(p)});
            } else if (o <= kExternalBase) {
                s.externals.push_back({g.externals[external_of_occupancy(o)].name, remap(p)});
            }
        }
    return s;
}

GNTree gn_tree(const RibbonGraph& g, const ScaleAttribution& mu) {
    GNTree tree;
    int I = g.internal_count();
    if (int(mu.scale.size()) != I) throw GraphError("attribution size mismatch");

    int max_scale = 0;
    for (int s : mu.scale) max_scale = std::max(max_scale, s);

    // Components per scale; identical line sets merged over scale ranges.
    std::map<std::vector<int>, std::pair<int, int>> span;  // lines -> [i_low, i_high]
    for (int i = 0; i <= max_scale; ++i) {
        std::vector<int> parent(g.n());
        for (int v = 0; v < g.n(); ++v) parent[v] = v;
        std::function<int(int)> root = [&](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (int l = 0; l < I; ++l)
            if (mu.scale[l] >= i)
                parent[root(g.lines[l].end_a.vertex)] = root(g.lines[l].end_b.vertex);
        std::map<int, std::vector<int>> groups;
        for (int l = 0; l < I; ++l)
            if (mu.scale[l] >= i) groups[root(g.lines[l].end_a.vertex)].push_back(l);
        if (i == 0 && groups.empty()) groups[0] = {};  // bare root for line-less graphs
        for (auto& [r, ls] : groups) {
            std::sort(ls.begin(), ls.end());
            auto it = span.find(ls);
            if (it == span.end()) span.emplace(ls, std::make_pair(i, i));
            else it->second.second = std::max(it->second.second, i);
        }
    }

    for (const auto& [lines, range] : span) {
        GNNode node;
        node.lines = lines;
        std::set<int> verts;
        for (int l : lines) {
            verts.insert(g.lines[l].end_a.vertex);
            verts.insert(g.lines[l].end_b.vertex);
        }
        if (verts.empty()) verts.insert(0);
        node.vertices.assign(verts.begin(), verts.end());
        node.i_low = range.first;
        node.i_high = range.second;
        RibbonGraph sub = node_subgraph(g, lines);
        TopologyReport topo = trace_faces(sub);
        node.N = sub.external_count();
        node.g = topo.genus;
        node.B = topo.broken;
        node.L = topo.faces;
        tree.nodes.push_back(std::move(node));
    }

    // Root first, then by inclusion depth: sort by descending line count,
    // ascending i_low.
    std::sort(tree.nodes.begin(), tree.nodes.end(), [](const GNNode& a, const GNNode& b) {
        if (a.lines.size() != b.lines.size()) return a.lines.size() > b.lines.size();
        return a.lines < b.lines;
    });

    // Parents: smallest strict superset.
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        int best = -1;
        size_t best_size = SIZE_MAX;
        for (size_t j = 0; j < tree.nodes.size(); ++j) {
            if (i == j) continue;
            if (tree.nodes[j].lines.size() <= tree.nodes[i].lines.size()) continue;
            if (std::includes(tree.nodes[j].lines.begin(), tree.nodes[j].lines.end(),
                              tree.nodes[i].lines.begin(), tree.nodes[i].lines.end()) &&
                tree.nodes[j].lines.size() < best_size) {
                best = int(j);
                best_size = tree.nodes[j].lines.size();
            }
        }
        tree.nodes[i].parent = best;
    }

    // Fill omega and criticality bottom-up; needs the attribution.
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        GNNode& n = tree.nodes[i];
        if (n.N == 4 && n.g == 0 && n.B >= 2)
            n.critical = detect_critical(tree, int(i), g, mu);
        n.omega = omega_degree(tree, int(i));
    }
    return tree;
}

int omega_degree(const GNTree& tree, int node) {
    const GNNode& n = tree.nodes[node];
    if (n.g >= 1) return n.N + 4;
    if (n.N == 4) {
        if (n.B <= 1) return 0;
        return n.critical ? 0 : n.N;
    }
    return n.N - 4;
}

bool detect_critical(const GNTree& tree, int node, const RibbonGraph& g,
                     const ScaleAttribution& mu) {
    const GNNode& n = tree.nodes[node];
    if (!(n.N == 4 && n.g == 0 && n.B >= 2))
        throw PreconditionError("detect_critical expects a planar N=4, B=2 node");

    // Highest-scale two-point component on the path towards the root.
    int two_pt = -1;
    for (int p = n.parent; p >= 0; p = tree.nodes[p].parent)
        if (tree.nodes[p].N == 2) { two_pt = p; break; }
    if (two_pt < 0) return false;

    RibbonGraph sub = node_subgraph(g, n.lines);
    TopologyReport topo = trace_faces(sub);

    // Map component positions back to ambient ones (node_subgraph keeps
    // vertices in ascending ambient order).
    const std::vector<int>& vmap = n.vertices;
    auto ambient_occ = g.occupancy();

    const GNNode& host = tree.nodes[two_pt];
    std::set<int> low;  // host lines below the node's scale
    for (int l : host.lines)
        if (mu.scale[l] < n.i_low) low.insert(l);

    // The component is critical when one of its broken faces carries
    // exactly two external points, both ends of one and the same
    // lower-scale line of the host: the insertion has cardinality one.
    for (const auto& f : topo.face_list) {
        if (f.externals.size() != 2) continue;
        std::array<int, 2> attach{-1, -1};
        bool ok = true;
        for (int idx = 0; idx < 2 && ok; ++idx) {
            Position p = sub.externals[f.externals[idx]].at;
            int o = ambient_occ[vmap[p.vertex] * 4 + p.slot];
            if (o < 0 || !low.count(o)) ok = false;  // true external or not in host
            else attach[idx] = o;
        }
        if (ok && attach[0] == attach[1]) return true;
    }
    return false;
}

DivergenceReport classify_divergences(const RibbonGraph& g, const ScaleAttribution& mu,
                                      bool massive) {
    if (g.is_vacuum())
        throw PreconditionError("classify_divergences: vacuum graphs are handled by vacuum-check");
    DivergenceReport rep;
    rep.tree = gn_tree(g, mu);
    rep.forms.resize(rep.tree.nodes.size());
    for (size_t i = 0; i < rep.tree.nodes.size(); ++i) {
        GNNode& n = rep.tree.nodes[i];
        if (n.g >= 1) {
            n.div_class = DivClass::NonplanarSuppressed;
        } else if (n.N == 2) {
            n.div_class = massive ? DivClass::Divergent2pt : DivClass::LogDivergent2pt;
            bool encloses_critical = false;
            for (size_t j = 0; j < rep.tree.nodes.size(); ++j)
                if (rep.tree.nodes[j].critical) {
                    for (int p = rep.tree.nodes[j].parent; p >= 0;
                         p = rep.tree.nodes[p].parent)
                        if (p == int(i)) encloses_critical = true;
                }
            // counterterm forms from the parity analysis of the component;
            // when a critical subcomponent forces the lowest propagator to
            // keep its rotation factor, that route supplements the regular
            // expansion.
            RibbonGraph sub = node_subgraph(g, n.lines);
            std::set<CountertermForm> divergent, convergent;
            CountertermClass std_route = parity_counterterm_class(sub, false, massive);
            divergent.insert(std_route.divergent.begin(), std_route.divergent.end());
            if (massive && encloses_critical) {
                CountertermClass g01 = parity_counterterm_class(sub, true, massive);
                divergent.insert(g01.divergent.begin(), g01.divergent.end());
                convergent.insert(g01.convergent_only.begin(), g01.convergent_only.end());
            }
            for (auto f : divergent) rep.forms[i].push_back(counterterm_form_name(f));
            for (auto f : convergent)
                if (!divergent.count(f))
                    rep.forms[i].push_back(std::string(counterterm_form_name(f)) +
                                           " (convergent)");
        } else if (n.N == 4 && n.B <= 1) {
            n.div_class = DivClass::LogDivergent4ptB1;
            rep.forms[i] = {"vertex-form"};
        } else if (n.N == 4) {
            if (n.critical) {
                n.div_class = DivClass::Critical4pt;
                n.note = "renormalized by the enclosing two-point function";
            } else {
                n.div_class = DivClass::Improved4ptB2;
            }
        } else {
            n.div_class = DivClass::Convergent;
            if (n.N >= 6 && n.B >= 2)
                n.note = "N>=6 with extra broken faces: no improvement claimed";
        }
        if (n.div_class != DivClass::Convergent &&
            n.div_class != DivClass::NonplanarSuppressed &&
            n.div_class != DivClass::Improved4ptB2)
            rep.divergent_nodes.push_back(int(i));
    }
    return rep;
}

BoundEstimate bound_estimate(const RibbonGraph& g, const ScaleAttribution& mu, double M) {
    GNTree tree = gn_tree(g, mu);
    BoundEstimate est;
    est.node_count = int(tree.nodes.size());
    for (const auto& n : tree.nodes)
        est.value *= std::pow(M, -0.5 * double(n.omega) * double(n.multiplicity()));
    return est;
}

namespace {

std::int64_t attribution_count(int I, int r) {
    std::int64_t c = 1;
    for (int i = 0; i < I; ++i) c *= (r + 1);
    return c;
}

double sum_for_cutoff(const RibbonGraph& g, int r, double M, bool parallel) {
    int I = g.internal_count();
    std::int64_t total = attribution_count(I, r);
    auto eval = [&](std::int64_t idx) {
        ScaleAttribution mu;
        mu.rho = r;
        mu.scale.resize(I);
        std::int64_t t = idx;
        for (int l = 0; l < I; ++l) {
            mu.scale[l] = int(t % (r + 1));
            t /= (r + 1);
        }
        return bound_estimate(g, mu, M).value;
    };
    return parallel ? parallel_sum(total, eval) : serial_sum(total, eval);
}

AttributionSum sum_attributions_impl(const RibbonGraph& g, int rho, double M,
                                     double log_budget, bool parallel) {
    int I = g.internal_count();
    if (I == 0) throw PreconditionError("attribution sum needs at least one line");
    if (double(I) * std::log(double(rho + 1)) > log_budget)
        throw PreconditionError("attribution enumeration budget exceeded");
    AttributionSum out;
    for (int r = 0; r <= rho; ++r)
        out.totals.push_back(sum_for_cutoff(g, r, M, parallel));
    out.count = attribution_count(I, rho);
    return out;
}

}  // namespace

AttributionSum sum_attributions(const RibbonGraph& g, int rho, double M, double log_budget) {
    return sum_attributions_impl(g, rho, M, log_budget, true);
}

AttributionSum sum_attributions_serial(const RibbonGraph& g, int rho, double M,
                                       double log_budget) {
    return sum_attributions_impl(g, rho, M, log_budget, false);
}

}  // namespace ncgn
