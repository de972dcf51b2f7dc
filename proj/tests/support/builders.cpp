#include "support/builders.hpp"

#include "fobkit/path.hpp"

namespace fobkit::testing {

CellSurface cornered_disk(const std::vector<std::pair<Label, int>>& runs) {
    CellSurface s;
    int m = 0;
    for (const auto& [l, n] : runs) {
        (void)l;
        m += n;
    }
    std::vector<Id> vs;
    for (int i = 0; i < m; ++i) vs.push_back(s.fresh_vertex());
    std::vector<Dart> cycle;
    std::vector<Id> es;
    for (int i = 0; i < m; ++i) {
        Id e = s.fresh_edge(vs[i], vs[(i + 1) % m]);
        es.push_back(e);
        cycle.push_back({e, false});
    }
    s.fresh_face(cycle);
    int pos = 0;
    std::vector<int> run_starts;
    for (const auto& [l, n] : runs) {
        run_starts.push_back(pos);
        for (int i = 0; i < n; ++i) s.boundary[es[pos++]] = l;
    }
    if (runs.size() > 1) {
        Sign sign = Sign::Plus;
        for (size_t j = 0; j < runs.size(); ++j) {
            if (runs[j].first == runs[(j + runs.size() - 1) % runs.size()].first)
                throw PreconditionError("cornered_disk: adjacent runs share a label");
            s.corners[vs[run_starts[j]]] = sign;
            sign = opposite(sign);
        }
    }
    return s;
}

CellSurface half_disk() {
    return cornered_disk({{Label::Binding, 1}, {Label::Leaf, 1}});
}

CellSurface slotted_half_disk() {
    return cornered_disk({{Label::Binding, 2}, {Label::Leaf, 3}});
}

CellSurface annulus(int n, Label bottom, Label top) {
    CellSurface s;
    std::vector<Id> w, u;
    for (int i = 0; i < n; ++i) w.push_back(s.fresh_vertex());
    for (int i = 0; i < n; ++i) u.push_back(s.fresh_vertex());
    std::vector<Id> b, t, g;
    for (int i = 0; i < n; ++i) b.push_back(s.fresh_edge(w[i], w[(i + 1) % n]));
    for (int i = 0; i < n; ++i) t.push_back(s.fresh_edge(u[(i + 1) % n], u[i]));
    for (int i = 0; i < n; ++i) g.push_back(s.fresh_edge(w[i], u[i]));
    for (int i = 0; i < n; ++i) {
        s.fresh_face({{b[i], false}, {g[(i + 1) % n], false}, {t[i], false}, {g[i], true}});
        s.boundary[b[i]] = bottom;
        s.boundary[t[i]] = top;
    }
    return s;
}

AnnulusWithCore annulus_with_core(int n, Label bottom, Label top) {
    CellSurface s;
    std::vector<Id> w, m, u;
    for (int i = 0; i < n; ++i) w.push_back(s.fresh_vertex());
    for (int i = 0; i < n; ++i) m.push_back(s.fresh_vertex());
    for (int i = 0; i < n; ++i) u.push_back(s.fresh_vertex());
    std::vector<Id> b, h, t, g1, g2;
    for (int i = 0; i < n; ++i) b.push_back(s.fresh_edge(w[i], w[(i + 1) % n]));
    for (int i = 0; i < n; ++i) h.push_back(s.fresh_edge(m[i], m[(i + 1) % n]));
    for (int i = 0; i < n; ++i) t.push_back(s.fresh_edge(u[(i + 1) % n], u[i]));
    for (int i = 0; i < n; ++i) g1.push_back(s.fresh_edge(w[i], m[i]));
    for (int i = 0; i < n; ++i) g2.push_back(s.fresh_edge(m[i], u[i]));
    for (int i = 0; i < n; ++i) {
        s.fresh_face({{b[i], false}, {g1[(i + 1) % n], false}, {h[i], true}, {g1[i], true}});
        s.fresh_face({{h[i], false}, {g2[(i + 1) % n], false}, {t[i], false}, {g2[i], true}});
        s.boundary[b[i]] = bottom;
        s.boundary[t[i]] = top;
    }
    AnnulusWithCore out;
    out.surface = std::move(s);
    for (int i = 0; i < n; ++i) out.core.darts.push_back({h[i], false});
    out.bottom_rungs = g1;
    out.top_rungs = g2;
    out.mid_vertices = m;
    return out;
}

CellSurface disjoint_union(const CellSurface& a, const CellSurface& b) {
    CellSurface s = a;
    Id dv = a.next_vertex, de = a.next_edge, df = a.next_face;
    for (Id v : b.vertices) s.vertices.insert(v + dv);
    s.next_vertex = a.next_vertex + b.next_vertex;
    for (const auto& [e, r] : b.edges) s.edges[e + de] = {r.tail + dv, r.head + dv};
    s.next_edge = a.next_edge + b.next_edge;
    for (const auto& [f, cycle] : b.faces) {
        std::vector<Dart> c;
        for (const Dart& d : cycle) c.push_back({d.edge + de, d.rev});
        s.faces[f + df] = c;
    }
    s.next_face = a.next_face + b.next_face;
    for (const auto& [e, l] : b.boundary) s.boundary[e + de] = l;
    for (const auto& [v, sg] : b.corners) s.corners[v + dv] = sg;
    return s;
}

} // namespace fobkit::testing
