#include "ncgn/orientation.hpp"

namespace ncgn {

OrientationData orient(const OrderedGraph& og, bool relaxed) {
    const RibbonGraph& g = og.graph;
    OrientationData o;

    // The tour alternates parity around every vertex and the root (number 1)
    // carries +, so the sign of a position is the parity of its number.
    o.sign_at_position.assign(og.positions() + 1, 0);
    for (int num = 1; num <= og.positions(); ++num)
        o.sign_at_position[num] = (num % 2 == 1) ? +1 : -1;

    o.line_class.resize(g.internal_count());
    o.eps.resize(g.internal_count());
    o.epsilon.resize(g.internal_count());

    for (int l = 0; l < g.internal_count(); ++l) {
        auto [i, j] = og.line_span(l);
        bool i_odd = i % 2 == 1, j_odd = j % 2 == 1;
        if (i_odd != j_odd) {
            o.line_class[l] = og.tree.count(l) ? LineClass::Tree : LineClass::Loop0;
            o.eps[l] = i_odd ? -1 : +1;
        } else {
            if (og.tree.count(l))
                throw GraphError("tree line " + g.lines[l].name + " is clashing");
            if (!relaxed)
                throw GraphError("clashing line " + g.lines[l].name +
                                 " outside relaxed mode");
            o.line_class[l] = i_odd ? LineClass::LoopPlus : LineClass::LoopMinus;
            o.eps[l] = i_odd ? -1 : +1;
        }

        // epsilon: +1 when the smaller-numbered end carries psi.  Clashing
        // lines may join equal polarities; they take the +1 convention.
        const Line& ln = g.lines[l];
        int na = og.number[g.position_index(ln.end_a)];
        const Position& first = (na == i) ? ln.end_a : ln.end_b;
        const Position& second = (na == i) ? ln.end_b : ln.end_a;
        Polarity pf = g.polarity_at(first), ps = g.polarity_at(second);
        if (pf == Polarity::Psi && ps == Polarity::PsiBar) o.epsilon[l] = +1;
        else if (pf == Polarity::PsiBar && ps == Polarity::Psi) o.epsilon[l] = -1;
        else o.epsilon[l] = +1;
    }

    o.eta.resize(g.external_count());
    for (int k = 0; k < g.external_count(); ++k)
        o.eta[k] = o.sign_at_position[og.external_number(k)];

    return o;
}

LineRelations relations(const OrderedGraph& og) {
    const RibbonGraph& g = og.graph;
    int I = g.internal_count();
    LineRelations r;
    r.rel.assign(I, std::vector<Rel>(I, Rel::Before));
    for (int a = 0; a < I; ++a) {
        auto [i, j] = og.line_span(a);
        for (int b = 0; b < I; ++b) {
            if (a == b) continue;
            auto [p, q] = og.line_span(b);
            Rel rel;
            if (j < p) rel = Rel::Before;
            else if (q < i) rel = Rel::After;
            else if (p < i && j < q) rel = Rel::Inside;
            else if (i < p && q < j) rel = Rel::Contains;
            else if (i < p && p < j && j < q) rel = Rel::CrossLeft;
            else rel = Rel::CrossRight;
            r.rel[a][b] = rel;
        }
    }
    r.ext.assign(I, std::vector<ExtRel>(g.external_count(), ExtRel::Before));
    for (int a = 0; a < I; ++a) {
        auto [i, j] = og.line_span(a);
        for (int k = 0; k < g.external_count(); ++k) {
            int x = og.external_number(k);
            if (j < x) r.ext[a][k] = ExtRel::Before;
            else if (x < i) r.ext[a][k] = ExtRel::After;
            else r.ext[a][k] = ExtRel::Above;
        }
    }
    return r;
}

LinearForm short_variable(const OrderedGraph& og, const OrientationData& o, int line) {
    auto [i, j] = og.line_span(line);
    LinearForm u;
    switch (o.line_class[line]) {
        case LineClass::Tree:
        case LineClass::Loop0:
            u.add(pos_sym(i), Rational(i % 2 == 1 ? 1 : -1));
            u.add(pos_sym(j), Rational(j % 2 == 1 ? 1 : -1));
            break;
        case LineClass::LoopPlus:
            u.add(pos_sym(i), Rational(1));
            u.add(pos_sym(j), Rational(-1));
            break;
        case LineClass::LoopMinus:
            u.add(pos_sym(i), Rational(-1));
            u.add(pos_sym(j), Rational(1));
            break;
    }
    return u;
}

LinearForm long_variable(const OrderedGraph& og, int line) {
    auto [i, j] = og.line_span(line);
    LinearForm v;
    v.add(pos_sym(i), Rational(1));
    v.add(pos_sym(j), Rational(1));
    return v;
}

std::map<int, LinearForm> line_variables(const OrderedGraph& og, const OrientationData& o) {
    std::map<int, LinearForm> sub;
    const Rational half(1, 2);
    for (int l = 0; l < og.graph.internal_count(); ++l) {
        auto [i, j] = og.line_span(l);
        Sym lng = o.line_class[l] == LineClass::Tree ? v_sym(l) : w_sym(l);
        Rational ci, cj;  // coefficients of u in s_i = (long + c*u)/2
        switch (o.line_class[l]) {
            case LineClass::Tree:
            case LineClass::Loop0:
                ci = Rational(i % 2 == 1 ? 1 : -1);
                cj = Rational(j % 2 == 1 ? 1 : -1);
                break;
            case LineClass::LoopPlus:
                ci = Rational(1);
                cj = Rational(-1);
                break;
            case LineClass::LoopMinus:
                ci = Rational(-1);
                cj = Rational(1);
                break;
        }
        LinearForm fi, fj;
        fi.add(lng, half);
        fi.add(u_sym(l), half * ci);
        fj.add(lng, half);
        fj.add(u_sym(l), half * cj);
        sub.emplace(i, fi);
        sub.emplace(j, fj);
    }
    return sub;
}

}  // namespace ncgn
