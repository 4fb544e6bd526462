#include "ncgn/topology.hpp"

#include <stdexcept>

#include "ncgn/rosette.hpp"

namespace ncgn {

TopologyReport trace_faces(const RibbonGraph& g) {
    TopologyReport rep;
    rep.lines = g.internal_count();
    rep.vertices = g.n();

    int P = 4 * g.n();
    auto occ = g.occupancy();

    // next(d) = sigma(alpha(d)); alpha fixes externals.
    auto alpha = [&](int d) {
        int o = occ[d];
        if (o < 0) return d;
        const Line& l = g.lines[o];
        int a = g.position_index(l.end_a), b = g.position_index(l.end_b);
        return d == a ? b : a;
    };
    auto sigma = [&](int d) { return (d / 4) * 4 + (d % 4 + 1) % 4; };

    std::vector<bool> seen(P, false);
    for (int d0 = 0; d0 < P; ++d0) {
        if (seen[d0]) continue;
        Face f;
        int d = d0;
        do {
            seen[d] = true;
            f.corners.push_back(d);
            if (occ[d] <= kExternalBase) f.externals.push_back(external_of_occupancy(occ[d]));
            d = sigma(alpha(d));
        } while (d != d0);
        rep.face_list.push_back(std::move(f));
    }

    rep.faces = int(rep.face_list.size());
    for (const auto& f : rep.face_list)
        if (f.broken()) ++rep.broken;
    rep.chi = rep.faces - rep.lines + rep.vertices;
    if ((2 - rep.chi) % 2 != 0)
        throw GraphError("odd Euler characteristic on a connected graph");
    rep.genus = (2 - rep.chi) / 2;
    if (rep.genus < 0) throw GraphError("negative genus from face tracing");
    return rep;
}

IntersectionMatrices intersection_matrices(const OrderedGraph& og,
                                           const OrientationData& o,
                                           const LineRelations& rel) {
    const RibbonGraph& g = og.graph;
    IntersectionMatrices m;
    std::map<int, int> col;
    for (int l = 0; l < g.internal_count(); ++l)
        if (o.line_class[l] != LineClass::Tree) {
            col[l] = int(m.loop_lines.size());
            m.loop_lines.push_back(l);
        }
    int L = int(m.loop_lines.size());
    int N = g.external_count();
    m.q_w.assign(L, std::vector<Rational>(L, Rational(0)));
    m.q_xw.assign(N, std::vector<Rational>(L, Rational(0)));

    // Read both matrices off the w-w and x-w oscillations of phi_W, in the
    // coordinates z_l = eps(l) w_l.  Entries are doubled so that a crossing
    // pair contributes +/-1.
    PhaseForm phi_w = rosette_phi_w(og, o, rel);
    for (const auto& [key, c] : phi_w.wedge) {
        const auto& [a, b] = key;
        Rational cr = c.at_zero() * Rational(2);
        if (a.kind == SymKind::W && b.kind == SymKind::W) {
            int ca = col.at(a.id), cb = col.at(b.id);
            int za = o.eps[a.id], zb = o.eps[b.id];
            Rational v = cr * Rational(za * zb);
            m.q_w[ca][cb] += v;
            m.q_w[cb][ca] -= v;
        } else if (a.kind == SymKind::External && b.kind == SymKind::W) {
            m.q_xw[a.id][col.at(b.id)] += cr * Rational(o.eps[b.id]);
        } else if (a.kind == SymKind::W && b.kind == SymKind::External) {
            m.q_xw[b.id][col.at(a.id)] -= cr * Rational(o.eps[a.id]);
        }
    }
    return m;
}

int rational_rank(std::vector<std::vector<Rational>> m) {
    if (m.empty() || m[0].empty()) return 0;
    int rows = int(m.size()), cols = int(m[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (!m[r][c].is_zero()) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][c].is_zero()) continue;
            Rational f = m[r][c] / m[rank][c];
            for (int k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace ncgn
