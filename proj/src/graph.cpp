#include "ncgn/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace ncgn {

bool is_orientable_kind(VertexKind k) {
    return k == VertexKind::O1 || k == VertexKind::O2 || k == VertexKind::O3;
}

const char* kind_name(VertexKind k) {
    switch (k) {
        case VertexKind::O1: return "o1";
        case VertexKind::O2: return "o2";
        case VertexKind::O3: return "o3";
        case VertexKind::NO1: return "no1";
        case VertexKind::NO2: return "no2";
        case VertexKind::NO3: return "no3";
    }
    return "?";
}

Polarity slot_polarity(VertexKind kind, int slot) {
    switch (kind) {
        case VertexKind::O1:
        case VertexKind::O3:
            // psibar psi psibar psi
            return slot % 2 == 0 ? Polarity::PsiBar : Polarity::Psi;
        case VertexKind::O2:
            // psi psibar psi psibar
            return slot % 2 == 0 ? Polarity::Psi : Polarity::PsiBar;
        case VertexKind::NO1:
        case VertexKind::NO2:
        case VertexKind::NO3:
            // psibar psibar psi psi
            return slot < 2 ? Polarity::PsiBar : Polarity::Psi;
    }
    return Polarity::Psi;
}

std::array<int, 4> slot_pairing(VertexKind kind) {
    switch (kind) {
        case VertexKind::O1:   // psibar_a psi_a psibar_b psi_b
        case VertexKind::O2:   // psi_a psibar_a psi_b psibar_b
        case VertexKind::NO3:  // psibar_a psibar_a psi_b psi_b
            return {1, 0, 3, 2};
        case VertexKind::O3:   // psibar_a psi_b psibar_a psi_b
        case VertexKind::NO1:  // psibar_a psibar_b psi_a psi_b
            return {2, 3, 0, 1};
        case VertexKind::NO2:  // psibar_a psibar_b psi_b psi_a
            return {3, 2, 1, 0};
    }
    return {1, 0, 3, 2};
}

std::vector<int> RibbonGraph::occupancy() const {
    std::vector<int> occ(4 * n(), kFreePosition);
    auto put = [&](const Position& p, int what, const std::string& who) {
        if (p.vertex < 0 || p.vertex >= n() || p.slot < 0 || p.slot > 3)
            throw GraphError("position out of range for " + who);
        int idx = position_index(p);
        if (occ[idx] != kFreePosition)
            throw GraphError("position " + vertices[p.vertex].name + "." +
                             std::to_string(p.slot + 1) + " used twice (by " + who + ")");
        occ[idx] = what;
    };
    for (size_t l = 0; l < lines.size(); ++l) {
        put(lines[l].end_a, int(l), lines[l].name);
        put(lines[l].end_b, int(l), lines[l].name);
    }
    for (size_t k = 0; k < externals.size(); ++k)
        put(externals[k].at, external_occupancy(int(k)), externals[k].name);
    return occ;
}

bool RibbonGraph::has_scales() const {
    return std::all_of(lines.begin(), lines.end(),
                       [](const Line& l) { return l.scale.has_value(); });
}

int RibbonGraph::max_scale() const {
    int m = 0;
    for (const auto& l : lines)
        if (l.scale) m = std::max(m, *l.scale);
    return m;
}

void RibbonGraph::validate(bool relaxed) const {
    auto occ = occupancy();
    for (int i = 0; i < 4 * n(); ++i)
        if (occ[i] == kFreePosition)
            throw GraphError("position " + vertices[i / 4].name + "." +
                             std::to_string(i % 4 + 1) + " unused");
    if (4 * n() != 2 * internal_count() + external_count())
        throw GraphError("position count mismatch: 4n != 2I + N");

    for (const auto& v : vertices)
        if (!relaxed && !is_orientable_kind(v.kind))
            throw GraphError("non-orientable interaction " + v.name +
                             " requires relaxed mode");

    for (const auto& l : lines) {
        // end_a == end_b is already a double-use error from occupancy()
        if (!relaxed && polarity_at(l.end_a) == polarity_at(l.end_b))
            throw GraphError("non-orientable line " + l.name +
                             " (joins two fields of the same polarity)");
        if (l.scale && *l.scale < 0)
            throw GraphError("line " + l.name + " has negative scale");
    }

    // Connectivity over lines.
    if (n() > 1) {
        std::vector<int> comp(n(), -1);
        std::function<void(int)> dfs = [&](int v) {
            comp[v] = 0;
            for (const auto& l : lines) {
                int a = l.end_a.vertex, b = l.end_b.vertex;
                if (a == v && comp[b] < 0) dfs(b);
                if (b == v && comp[a] < 0) dfs(a);
            }
        };
        dfs(0);
        for (int v = 0; v < n(); ++v)
            if (comp[v] < 0)
                throw GraphError("graph is disconnected (vertex " + vertices[v].name +
                                 " unreachable)");
    }
}

namespace {

struct Tokenizer {
    std::istringstream in;
    int lineno = 0;
    std::string line;

    explicit Tokenizer(const std::string& text) : in(text) {}

    bool next_line(std::vector<std::string>& toks, int& at) {
        toks.clear();
        while (std::getline(in, line)) {
            ++lineno;
            at = lineno;
            auto hash = line.find('#');
            std::string body = hash == std::string::npos ? line : line.substr(0, hash);
            std::istringstream ls(body);
            std::string t;
            while (ls >> t) toks.push_back(t);
            if (!toks.empty()) return true;
        }
        return false;
    }
};

VertexKind parse_kind(const std::string& s, int lineno) {
    if (s == "o1") return VertexKind::O1;
    if (s == "o2") return VertexKind::O2;
    if (s == "o3") return VertexKind::O3;
    if (s == "no1") return VertexKind::NO1;
    if (s == "no2") return VertexKind::NO2;
    if (s == "no3") return VertexKind::NO3;
    throw GraphError("unknown vertex kind '" + s + "'", lineno);
}

}  // namespace

RibbonGraph parse_graph(const std::string& text, bool relaxed) {
    RibbonGraph g;
    std::map<std::string, int> vindex;
    std::map<std::string, int> lnames, xnames;
    Tokenizer tz(text);
    std::vector<std::string> t;
    int at = 0;

    auto parse_position = [&](const std::string& s) -> Position {
        auto dot = s.find('.');
        if (dot == std::string::npos)
            throw GraphError("expected <vertex>.<pos>, got '" + s + "'", at);
        std::string vn = s.substr(0, dot);
        auto it = vindex.find(vn);
        if (it == vindex.end())
            throw GraphError("unknown vertex '" + vn + "'", at);
        int slot;
        try {
            slot = std::stoi(s.substr(dot + 1));
        } catch (...) {
            throw GraphError("bad position index in '" + s + "'", at);
        }
        if (slot < 1 || slot > 4)
            throw GraphError("position index out of range 1..4 in '" + s + "'", at);
        return Position{it->second, slot - 1};
    };

    while (tz.next_line(t, at)) {
        if (t[0] == "graph") {
            if (t.size() != 2) throw GraphError("usage: graph <name>", at);
            g.name = t[1];
        } else if (t[0] == "vertex") {
            if (t.size() != 3 || t[2].rfind("kind=", 0) != 0)
                throw GraphError("usage: vertex <id> kind=<o1|o2|o3>", at);
            if (vindex.count(t[1]))
                throw GraphError("duplicate vertex '" + t[1] + "'", at);
            vindex[t[1]] = g.n();
            g.vertices.push_back({t[1], parse_kind(t[2].substr(5), at)});
        } else if (t[0] == "line") {
            if (t.size() != 4 && t.size() != 5)
                throw GraphError("usage: line <id> <v>.<pos> <v>.<pos> [scale=<int>]", at);
            if (lnames.count(t[1])) throw GraphError("duplicate line '" + t[1] + "'", at);
            lnames[t[1]] = 1;
            Line l;
            l.name = t[1];
            l.end_a = parse_position(t[2]);
            l.end_b = parse_position(t[3]);
            if (t.size() == 5) {
                if (t[4].rfind("scale=", 0) != 0)
                    throw GraphError("expected scale=<int>, got '" + t[4] + "'", at);
                try {
                    l.scale = std::stoi(t[4].substr(6));
                } catch (...) {
                    throw GraphError("bad scale in '" + t[4] + "'", at);
                }
            }
            g.lines.push_back(l);
        } else if (t[0] == "external") {
            if (t.size() != 3) throw GraphError("usage: external <id> <v>.<pos>", at);
            if (xnames.count(t[1])) throw GraphError("duplicate external '" + t[1] + "'", at);
            xnames[t[1]] = 1;
            g.externals.push_back({t[1], parse_position(t[2])});
        } else {
            throw GraphError("unknown directive '" + t[0] + "'", at);
        }
    }

    g.validate(relaxed);
    return g;
}

RibbonGraph parse_graph_file(const std::string& path, bool relaxed) {
    std::ifstream f(path);
    if (!f) throw GraphError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_graph(ss.str(), relaxed);
}

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) {
        for (int i = 0; i < n; ++i) p[i] = i;
    }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    bool unite(int a, int b) {
        a = find(a); b = find(b);
        if (a == b) return false;
        p[a] = b;
        return true;
    }
};

}  // namespace

std::set<int> spanning_tree(const RibbonGraph& g) {
    std::vector<int> order(g.lines.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        int sa = g.lines[a].scale.value_or(0), sb = g.lines[b].scale.value_or(0);
        if (sa != sb) return sa > sb;
        return a < b;
    });
    UnionFind uf(g.n());
    std::set<int> tree;
    for (int l : order)
        if (uf.unite(g.lines[l].end_a.vertex, g.lines[l].end_b.vertex)) tree.insert(l);
    if (int(tree.size()) != std::max(0, g.n() - 1))
        throw GraphError("graph is disconnected: no spanning tree");
    return tree;
}

std::vector<std::set<int>> all_spanning_trees(const RibbonGraph& g) {
    std::vector<std::set<int>> out;
    int I = g.internal_count(), need = g.n() - 1;
    if (need == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int from) {
        if (int(pick.size()) == need) {
            UnionFind uf(g.n());
            for (int l : pick)
                if (!uf.unite(g.lines[l].end_a.vertex, g.lines[l].end_b.vertex)) return;
            out.emplace_back(pick.begin(), pick.end());
            return;
        }
        for (int l = from; l < I; ++l) {
            pick.push_back(l);
            rec(l + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return out;
}

Position default_root(const RibbonGraph& g) {
    if (!g.externals.empty()) return g.externals.front().at;
    if (g.n() == 0) throw GraphError("empty graph has no root position");
    return Position{0, 0};
}

Position default_root(const RibbonGraph& g, const std::set<int>& tree) {
    if (!g.externals.empty() || g.n() == 0) return default_root(g);
    auto occ = g.occupancy();
    for (int idx = 0; idx < 4 * g.n(); ++idx) {
        int o = occ[idx];
        if (o >= 0 && tree.count(o)) continue;
        return Position{idx / 4, idx % 4};
    }
    throw GraphError("no admissible root position");
}

OrderedGraph total_order(const RibbonGraph& g, const std::set<int>& tree, const Position& root) {
    // Tree lines per vertex, found on demand during the walk.
    auto occ = g.occupancy();
    for (int l : tree) {
        if (l < 0 || l >= g.internal_count()) throw GraphError("bad tree line index");
    }
    {
        UnionFind uf(g.n());
        int merged = 0;
        for (int l : tree)
            if (uf.unite(g.lines[l].end_a.vertex, g.lines[l].end_b.vertex)) ++merged;
        if (int(tree.size()) != std::max(0, g.n() - 1) || merged != g.n() - 1)
            throw GraphError("tree does not span the graph");
    }
    int root_occ = occ[g.position_index(root)];
    if (root_occ >= 0 && tree.count(root_occ))
        throw GraphError("root position is occupied by a tree line end");

    OrderedGraph og;
    og.graph = g;
    og.tree = tree;
    og.root = root;
    og.number.assign(4 * g.n(), 0);
    og.at_number.assign(4 * g.n() + 1, -1);

    int counter = 0;
    std::vector<bool> visited(g.n(), false);

    // Number the four positions of v starting from entry_slot, following the
    // cyclic order; descend into unvisited subtrees along tree lines.
    std::function<void(int, int)> walk = [&](int v, int entry_slot) {
        visited[v] = true;
        for (int k = 0; k < 4; ++k) {
            int slot = (entry_slot + k) % 4;
            Position p{v, slot};
            int idx = g.position_index(p);
            og.number[idx] = ++counter;
            og.at_number[counter] = idx;
            int o = occ[idx];
            if (o >= 0 && tree.count(o)) {
                const Line& l = g.lines[o];
                Position other = (l.end_a == p) ? l.end_b : l.end_a;
                if (!visited[other.vertex]) walk(other.vertex, other.slot);
            }
        }
    };
    if (g.n() > 0) walk(root.vertex, root.slot);
    return og;
}

OrderedGraph total_order(const RibbonGraph& g) {
    return total_order(g, spanning_tree(g), default_root(g));
}

std::pair<int, int> OrderedGraph::line_span(int line) const {
    int a = number[graph.position_index(graph.lines[line].end_a)];
    int b = number[graph.position_index(graph.lines[line].end_b)];
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

int OrderedGraph::external_number(int k) const {
    return number[graph.position_index(graph.externals[k].at)];
}

}  // namespace ncgn
