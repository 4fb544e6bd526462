#include "ncgn/enumerate.hpp"

#include <functional>
#include <string>

namespace ncgn {

namespace {

bool connected_by_lines(int n, const std::vector<std::pair<int, int>>& lines) {
    if (n <= 1) return true;
    std::vector<int> parent(n);
    for (int v = 0; v < n; ++v) parent[v] = v;
    std::function<int(int)> root = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (auto [a, b] : lines) parent[root(a)] = root(b);
    for (int v = 1; v < n; ++v)
        if (root(v) != root(0)) return false;
    return true;
}

}  // namespace

std::vector<RibbonGraph> enumerate_orientable_graphs(int max_n) {
    std::vector<RibbonGraph> out;
    for (int n = 1; n <= max_n; ++n) {
        // psibar at even slots (0-based), psi at odd ones, per the first
        // orientable kind.  Lines pair a psibar position to a psi one.
        std::vector<int> psibar, psi;
        for (int v = 0; v < n; ++v)
            for (int s = 0; s < 4; ++s)
                ((s % 2 == 0) ? psibar : psi).push_back(v * 4 + s);

        int half = int(psibar.size());
        std::vector<int> match(half, -2);  // psi index or -1 (external)
        std::vector<bool> psi_used(half, false);

        std::function<void(int)> rec = [&](int k) {
            if (k == half) {
                std::vector<std::pair<int, int>> vlines;
                RibbonGraph g;
                g.name = "enum" + std::to_string(n) + "_" + std::to_string(out.size());
                for (int v = 0; v < n; ++v)
                    g.vertices.push_back({"v" + std::to_string(v + 1), VertexKind::O1});
                for (int i = 0; i < half; ++i) {
                    if (match[i] < 0) continue;
                    int a = psibar[i], b = psi[match[i]];
                    vlines.emplace_back(a / 4, b / 4);
                    g.lines.push_back({"l" + std::to_string(g.lines.size() + 1),
                                       Position{a / 4, a % 4}, Position{b / 4, b % 4},
                                       std::nullopt});
                }
                if (!connected_by_lines(n, vlines)) return;
                auto occ = g.occupancy();
                for (int idx = 0; idx < 4 * n; ++idx)
                    if (occ[idx] == kFreePosition)
                        g.externals.push_back(
                            {"x" + std::to_string(g.externals.size() + 1),
                             Position{idx / 4, idx % 4}});
                g.validate();
                out.push_back(std::move(g));
                return;
            }
            match[k] = -1;  // external
            rec(k + 1);
            for (int j = 0; j < half; ++j) {
                if (psi_used[j]) continue;
                psi_used[j] = true;
                match[k] = j;
                rec(k + 1);
                psi_used[j] = false;
            }
            match[k] = -2;
        };
        rec(0);
    }
    return out;
}

std::vector<Position> admissible_roots(const RibbonGraph& g, const std::set<int>& tree) {
    std::vector<Position> roots;
    if (!g.externals.empty()) {
        for (const auto& e : g.externals) roots.push_back(e.at);
        return roots;
    }
    auto occ = g.occupancy();
    for (int idx = 0; idx < 4 * g.n(); ++idx) {
        int o = occ[idx];
        if (o >= 0 && tree.count(o)) continue;
        roots.push_back(Position{idx / 4, idx % 4});
    }
    return roots;
}

}  // namespace ncgn
