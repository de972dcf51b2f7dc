#include "fobkit/surface.hpp"

#include <algorithm>
#include <sstream>

namespace fobkit {

namespace {

std::string cell_str(const char* kind, Id id) {
    std::ostringstream os;
    os << kind << " " << id;
    return os.str();
}

} // namespace

Topology::Topology(const CellSurface& s) : s_(&s) {
    // Index dart -> (face, pos) and catch sides used twice.
    for (const auto& [f, cycle] : s.faces) {
        if (cycle.empty()) {
            structure_.add("empty-face", "face cycle has length 0", cell_str("face", f));
            continue;
        }
        for (int i = 0; i < static_cast<int>(cycle.size()); ++i) {
            Dart d = cycle[i];
            if (!s.edges.count(d.edge)) {
                structure_.add("unknown-edge", "face references missing edge", cell_str("edge", d.edge));
                continue;
            }
            auto [it, fresh] = side_loc_.emplace(d.side_id(), std::make_pair(f, i));
            if (!fresh)
                structure_.add("side-reused", "edge side appears in two face positions",
                               cell_str("edge", d.edge));
        }
    }

    // Chain condition inside each face cycle.
    for (const auto& [f, cycle] : s.faces) {
        int n = static_cast<int>(cycle.size());
        for (int i = 0; i < n; ++i) {
            if (!s.edges.count(cycle[i].edge) || !s.edges.count(cycle[(i + 1) % n].edge)) continue;
            if (s_->head_of(cycle[i]) != s_->tail_of(cycle[(i + 1) % n]))
                structure_.add("face-chain", "consecutive face sides do not share a vertex",
                               cell_str("face", f));
        }
    }

    // Normal form: side A in exactly one face; label <=> side B free.
    for (const auto& [e, rec] : s.edges) {
        bool a = side_loc_.count(Dart(e, false).side_id()) != 0;
        bool b = side_loc_.count(Dart(e, true).side_id()) != 0;
        if (!a)
            structure_.add("side-a-free", "edge side A does not lie in any face", cell_str("edge", e));
        bool labeled = s.boundary.count(e) != 0;
        if (a && b && labeled)
            structure_.add("interior-labeled", "interior edge carries a boundary label",
                           cell_str("edge", e));
        if (a && !b && !labeled)
            structure_.add("boundary-unlabeled", "boundary edge has no Binding/Leaf label",
                           cell_str("edge", e));
        if (!s.vertices.count(rec.tail) || !s.vertices.count(rec.head))
            structure_.add("unknown-vertex", "edge endpoint is not a listed vertex",
                           cell_str("edge", e));
    }

    if (structure_.ok()) {
        build_links();
        if (structure_.ok()) build_walks();
    }
}

std::optional<std::pair<Id, int>> Topology::face_of(Dart d) const {
    auto it = side_loc_.find(d.side_id());
    if (it == side_loc_.end()) return std::nullopt;
    return it->second;
}

void Topology::build_links() {
    const CellSurface& s = *s_;

    // Face corners at each vertex join two edge ends.  We store, per edge
    // end, its (at most two) corner-neighbours; boundary ends have one.
    struct EndInfo {
        std::vector<EdgeEnd> adj;
    };
    std::map<Id, std::map<EdgeEnd, EndInfo>> at_vertex;

    auto end_of_incoming = [&](Dart d) -> EdgeEnd { return {d.edge, d.rev ? 0 : 1}; };
    auto end_of_outgoing = [&](Dart d) -> EdgeEnd { return {d.edge, d.rev ? 1 : 0}; };

    for (const auto& [f, cycle] : s.faces) {
        int n = static_cast<int>(cycle.size());
        for (int i = 0; i < n; ++i) {
            Dart din = cycle[i];
            Dart dout = cycle[(i + 1) % n];
            Id v = s.head_of(din);
            EdgeEnd a = end_of_incoming(din);
            EdgeEnd b = end_of_outgoing(dout);
            at_vertex[v][a].adj.push_back(b);
            at_vertex[v][b].adj.push_back(a);
        }
    }
    // Register ends not seen in any corner (dangling ends of boundary edges
    // at degree-one vertices still occupy the link).
    for (const auto& [e, rec] : s.edges) {
        at_vertex[rec.tail].try_emplace(EdgeEnd{e, 0});
        at_vertex[rec.head].try_emplace(EdgeEnd{e, 1});
    }

    for (Id v : s.vertices) {
        auto it = at_vertex.find(v);
        if (it == at_vertex.end() || it->second.empty()) {
            structure_.add("isolated-vertex", "vertex has empty link", cell_str("vertex", v));
            continue;
        }
        auto& ends = it->second;
        // A valid link is a single path or cycle in the corner graph, and
        // every end has degree <= 2.
        std::vector<EdgeEnd> deg_le1;
        bool bad = false;
        for (auto& [end, info] : ends) {
            if (info.adj.size() > 2) bad = true;
            if (info.adj.size() <= 1) deg_le1.push_back(end);
        }
        if (bad) {
            structure_.add("link-pinched", "vertex link is not a 1-manifold", cell_str("vertex", v));
            continue;
        }
        VertexLink link;
        EdgeEnd start;
        if (deg_le1.empty()) {
            link.is_circle = true;
            start = ends.begin()->first;
        } else if (deg_le1.size() == 2) {
            link.is_circle = false;
            start = std::min(deg_le1[0], deg_le1[1]);
        } else {
            structure_.add("link-disconnected", "vertex link has several components",
                           cell_str("vertex", v));
            continue;
        }
        // Trace the chain.
        std::set<EdgeEnd> seen;
        EdgeEnd cur = start;
        EdgeEnd prev{-1, 0};
        while (true) {
            link.ends.push_back(cur);
            seen.insert(cur);
            const auto& adj = ends.at(cur).adj;
            std::optional<EdgeEnd> nxt;
            for (const EdgeEnd& cand : adj)
                if (!(cand == prev)) { nxt = cand; break; }
            if (!nxt) break;
            if (*nxt == start) break; // closed the circle
            if (seen.count(*nxt)) break;
            prev = cur;
            cur = *nxt;
        }
        if (link.ends.size() != ends.size()) {
            structure_.add("link-disconnected", "vertex link has several components",
                           cell_str("vertex", v));
            continue;
        }
        links_[v] = std::move(link);
    }
}

void Topology::build_walks() {
    const CellSurface& s = *s_;

    // Boundary edges chain: free side of e runs head(e) -> tail(e).  The
    // successor at v = tail(e) is the boundary edge departing from v.
    std::map<Id, Id> departs; // vertex -> boundary edge with head == v
    for (const auto& [e, lbl] : s.boundary) {
        (void)lbl;
        Id v = s.edges.at(e).head;
        auto [it, fresh] = departs.emplace(v, e);
        if (!fresh) {
            structure_.add("boundary-branch", "two boundary sides depart from one vertex",
                           cell_str("vertex", v));
            return;
        }
    }

    std::set<Id> todo;
    for (const auto& [e, lbl] : s.boundary) { (void)lbl; todo.insert(e); }

    while (!todo.empty()) {
        Id start = *todo.begin(); // smallest remaining edge id
        BoundaryWalk w;
        Id cur = start;
        while (true) {
            todo.erase(cur);
            w.edge_ids.push_back(cur);
            w.vertex_ids.push_back(s.edges.at(cur).head);
            Id v = s.edges.at(cur).tail;
            auto it = departs.find(v);
            if (it == departs.end()) {
                structure_.add("boundary-open", "boundary walk does not close up",
                               cell_str("vertex", v));
                return;
            }
            cur = it->second;
            if (cur == start) break;
            if (!todo.count(cur)) {
                structure_.add("boundary-open", "boundary walk revisits an edge",
                               cell_str("edge", cur));
                return;
            }
        }
        walks_.push_back(std::move(w));
    }
    std::sort(walks_.begin(), walks_.end(), [](const BoundaryWalk& a, const BoundaryWalk& b) {
        return *std::min_element(a.edge_ids.begin(), a.edge_ids.end()) <
               *std::min_element(b.edge_ids.begin(), b.edge_ids.end());
    });
    // Start each walk at its smallest edge.
    for (auto& w : walks_) {
        int k = static_cast<int>(std::min_element(w.edge_ids.begin(), w.edge_ids.end()) -
                                 w.edge_ids.begin());
        std::rotate(w.edge_ids.begin(), w.edge_ids.begin() + k, w.edge_ids.end());
        std::rotate(w.vertex_ids.begin(), w.vertex_ids.begin() + k, w.vertex_ids.end());
    }
    for (int wi = 0; wi < static_cast<int>(walks_.size()); ++wi)
        for (int i = 0; i < walks_[wi].length(); ++i)
            vertex_walk_pos_[walks_[wi].vertex(i)] = {wi, i};
}

std::optional<std::pair<int, int>> Topology::locate_on_boundary(Id v) const {
    auto it = vertex_walk_pos_.find(v);
    if (it == vertex_walk_pos_.end()) return std::nullopt;
    return it->second;
}

std::pair<Id, Id> Topology::boundary_edges_at(Id v) const {
    auto loc = locate_on_boundary(v);
    if (!loc) throw PreconditionError("vertex is not on the boundary");
    const BoundaryWalk& w = walks_[loc->first];
    return {w.edge(loc->second - 1), w.edge(loc->second)};
}

Id resolve_slot(const Topology& topo, const BoundarySlot& slot, Label required) {
    const auto& walks = topo.walks();
    if (slot.walk < 0 || slot.walk >= static_cast<int>(walks.size()))
        throw PreconditionError("slot references a missing boundary walk");
    const BoundaryWalk& w = walks[slot.walk];
    Id v = w.vertex(slot.pos);
    if (topo.surface().is_corner(v))
        throw PreconditionError("slot lands on a corner vertex");
    Label before = topo.surface().boundary.at(w.edge(slot.pos - 1));
    Label after = topo.surface().boundary.at(w.edge(slot.pos));
    if (before != required || after != required)
        throw PreconditionError(std::string("slot is not inside a ") + to_string(required) + " run");
    return v;
}

BoundarySlot slot_of_vertex(const Topology& topo, Id v) {
    auto loc = topo.locate_on_boundary(v);
    if (!loc) throw PreconditionError("vertex is not on the boundary");
    return {loc->first, loc->second};
}

WalkRuns decompose_runs(const CellSurface& s, const BoundaryWalk& w) {
    WalkRuns out;
    int n = w.length();
    if (n == 0) return out;
    // Find a label transition to anchor run boundaries; if none, one run.
    int anchor = -1;
    for (int i = 0; i < n; ++i) {
        if (s.boundary.at(w.edge(i - 1)) != s.boundary.at(w.edge(i))) { anchor = i; break; }
    }
    if (anchor < 0) {
        out.runs.push_back({s.boundary.at(w.edge(0)), 0, n, -1});
        return out;
    }
    int i = anchor;
    while (i < anchor + n) {
        Label l = s.boundary.at(w.edge(i));
        int j = i;
        while (j < anchor + n && s.boundary.at(w.edge(j)) == l) ++j;
        Id corner_vertex = w.vertex(j); // transition vertex after the run
        out.runs.push_back({l, w.mod(i), j - i, corner_vertex});
        i = j;
    }
    return out;
}

namespace {

std::string canonical_rotation(const std::vector<std::string>& tokens) {
    if (tokens.empty()) return "";
    std::string best;
    int n = static_cast<int>(tokens.size());
    for (int r = 0; r < n; ++r) {
        std::string cand;
        for (int i = 0; i < n; ++i) {
            cand += tokens[(r + i) % n];
            cand += '|';
        }
        if (best.empty() || cand < best) best = cand;
    }
    return best;
}

} // namespace

BoundaryTrace boundary_trace(const CellSurface& s) {
    Topology topo(s);
    BoundaryTrace t;
    for (const auto& w : topo.walks()) {
        WalkRuns rd = decompose_runs(s, w);
        std::vector<std::string> tokens;
        for (const auto& run : rd.runs) {
            std::string tok(run.label == Label::Binding ? "B" : "L");
            if (run.corner_after >= 0 && s.is_corner(run.corner_after))
                tok += to_string(s.corners.at(run.corner_after));
            tokens.push_back(tok);
        }
        t.walk_words.push_back(canonical_rotation(tokens));
    }
    std::sort(t.walk_words.begin(), t.walk_words.end());
    return t;
}

std::string to_string(const BoundaryTrace& t) {
    std::string s = "{";
    for (size_t i = 0; i < t.walk_words.size(); ++i) {
        if (i) s += ", ";
        s += t.walk_words[i];
    }
    s += "}";
    return s;
}

EdgeEnd incoming_end(Dart d) { return {d.edge, d.rev ? 0 : 1}; }
EdgeEnd outgoing_end(Dart d) { return {d.edge, d.rev ? 1 : 0}; }

std::map<Id, VertexLink> oriented_links(const CellSurface& s) {
    std::map<Id, std::map<EdgeEnd, EdgeEnd>> step; // corner: in-end -> out-end
    std::map<Id, std::set<EdgeEnd>> ends_at;
    for (const auto& [f, cycle] : s.faces) {
        int n = static_cast<int>(cycle.size());
        for (int i = 0; i < n; ++i) {
            Dart din = cycle[i];
            Dart dout = cycle[(i + 1) % n];
            Id v = s.head_of(din);
            step[v][incoming_end(din)] = outgoing_end(dout);
        }
    }
    for (const auto& [e, rec] : s.edges) {
        ends_at[rec.tail].insert({e, 0});
        ends_at[rec.head].insert({e, 1});
    }
    std::map<Id, VertexLink> out;
    for (Id v : s.vertices) {
        const auto& ends = ends_at[v];
        if (ends.empty()) continue;
        auto& st = step[v];
        std::set<EdgeEnd> has_in;
        for (const auto& [a, b] : st) {
            (void)a;
            has_in.insert(b);
        }
        VertexLink link;
        EdgeEnd start{-1, 0};
        for (const EdgeEnd& e : ends)
            if (!has_in.count(e)) { start = e; break; }
        if (start.edge < 0) {
            link.is_circle = true;
            start = *ends.begin();
        }
        EdgeEnd cur = start;
        for (size_t i = 0; i < ends.size(); ++i) {
            link.ends.push_back(cur);
            auto it = st.find(cur);
            if (it == st.end()) break;
            cur = it->second;
            if (cur == start) break;
        }
        out[v] = std::move(link);
    }
    return out;
}

ValidationReport validate_surface(const CellSurface& s) {
    Topology topo(s);
    ValidationReport rep = topo.structure();
    if (!rep.ok()) return rep;

    // Corner placement: corner <=> label transition on the boundary.
    std::set<Id> transitions;
    for (const auto& w : topo.walks()) {
        WalkRuns rd = decompose_runs(s, w);
        if (rd.runs.size() == 1) {
            if (rd.runs[0].label == Label::Leaf)
                rep.add("circle-leaf", "boundary walk consists entirely of Leaf sides",
                        cell_str("edge", w.edge(0)));
            continue;
        }
        std::vector<Sign> signs;
        for (const auto& run : rd.runs) {
            Id v = run.corner_after;
            transitions.insert(v);
            if (!s.is_corner(v)) {
                rep.add("missing-corner", "label transition without a corner vertex",
                        cell_str("vertex", v));
            } else {
                signs.push_back(s.corners.at(v));
            }
        }
        for (size_t i = 0; i + 1 < signs.size() + 1 && signs.size() > 1; ++i) {
            if (signs[i] == signs[(i + 1) % signs.size()]) {
                rep.add("corner-signs", "corner signs do not alternate along the walk",
                        cell_str("walk", static_cast<Id>(&w - topo.walks().data())));
                break;
            }
        }
    }
    for (const auto& [v, sign] : s.corners) {
        (void)sign;
        if (!transitions.count(v))
            rep.add("corner-not-transition",
                    "corner vertex is not a Binding/Leaf transition on the boundary",
                    cell_str("vertex", v));
    }
    return rep;
}

std::vector<BoundaryWalk> trace_boundary(const CellSurface& s) {
    Topology topo(s);
    if (!topo.structure().ok())
        throw StructuralError("malformed gluing: " + topo.structure().summary());
    return topo.walks();
}

long euler_characteristic(const CellSurface& s) { return s.euler_characteristic(); }

int count_leaf_intervals(const CellSurface& s) {
    Topology topo(s);
    int n = 0;
    for (const auto& w : topo.walks()) {
        WalkRuns rd = decompose_runs(s, w);
        for (const auto& run : rd.runs)
            if (run.label == Label::Leaf && rd.runs.size() > 1) ++n;
    }
    return n;
}

} // namespace fobkit
