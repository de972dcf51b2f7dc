#include "fobkit/surgery.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace fobkit {

namespace {

std::string idstr(Id x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

void replace_dart_in_faces(CellSurface& s, Dart from, Dart to) {
    for (auto& [f, cycle] : s.faces) {
        (void)f;
        for (Dart& d : cycle)
            if (d == from) d = to;
    }
}

/// Restore normal form for `e`: if only side B lies in a face, flip the edge.
/// Returns true if flipped.
bool normalize_edge(CellSurface& s, Id e) {
    bool a = false, b = false;
    for (const auto& [f, cycle] : s.faces) {
        (void)f;
        for (const Dart& d : cycle) {
            if (d.edge != e) continue;
            if (d.rev) b = true; else a = true;
        }
    }
    if (a || !b) return false;
    std::swap(s.edges.at(e).tail, s.edges.at(e).head);
    for (auto& [f, cycle] : s.faces) {
        (void)f;
        for (Dart& d : cycle)
            if (d.edge == e) d.rev = !d.rev;
    }
    return true;
}

void retarget_edge_end(CellSurface& s, const EdgeEnd& end, Id new_vertex) {
    Edge& e = s.edges.at(end.edge);
    if (end.end == 0) e.tail = new_vertex; else e.head = new_vertex;
}

} // namespace

SubdivideResult subdivide_edge(CellSurface s, Id edge) {
    if (!s.edges.count(edge)) throw PreconditionError("subdivide: unknown edge " + idstr(edge));
    Edge rec = s.edges.at(edge);
    Id mid = s.fresh_vertex();
    Id e1 = s.fresh_edge(rec.tail, mid);
    Id e2 = s.fresh_edge(mid, rec.head);

    for (auto& [f, cycle] : s.faces) {
        (void)f;
        std::vector<Dart> nc;
        nc.reserve(cycle.size() + 1);
        for (const Dart& d : cycle) {
            if (d.edge != edge) {
                nc.push_back(d);
            } else if (!d.rev) {
                nc.push_back({e1, false});
                nc.push_back({e2, false});
            } else {
                nc.push_back({e2, true});
                nc.push_back({e1, true});
            }
        }
        cycle = std::move(nc);
    }
    if (s.boundary.count(edge)) {
        Label l = s.boundary.at(edge);
        s.boundary.erase(edge);
        s.boundary[e1] = l;
        s.boundary[e2] = l;
    }
    s.edges.erase(edge);
    return {std::move(s), SubdivideRec{edge, e1, e2, mid}};
}

SplitFaceResult split_face(CellSurface s, Id face, int t1, int t2) {
    if (!s.faces.count(face)) throw PreconditionError("split_face: unknown face " + idstr(face));
    std::vector<Dart> cycle = s.faces.at(face);
    int n = static_cast<int>(cycle.size());
    auto norm = [&](int t) { return ((t % n) + n) % n; };
    t1 = norm(t1);
    t2 = norm(t2);
    if (t1 == t2) throw PreconditionError("split_face: positions coincide");
    Id v1 = s.tail_of(cycle[t1]);
    Id v2 = s.tail_of(cycle[t2]);
    if (v1 == v2) throw PreconditionError("split_face: diagonal endpoints coincide");

    Id g = s.fresh_edge(v1, v2);
    std::vector<Dart> c1, c2, route;
    for (int t = t1; t != t2; t = norm(t + 1)) {
        c1.push_back(cycle[t]);
        route.push_back(cycle[t]);
    }
    c1.push_back({g, true});
    for (int t = t2; t != t1; t = norm(t + 1)) c2.push_back(cycle[t]);
    c2.push_back({g, false});

    s.faces.erase(face);
    Id f1 = s.fresh_face(std::move(c1));
    Id f2 = s.fresh_face(std::move(c2));
    return {std::move(s), SplitFaceRec{face, f1, f2, g, std::move(route)}};
}

CutResult cut_along_arc(CellSurface s, const EdgePath& arc, const CutOptions& opts) {
    if (!is_properly_embedded(s, arc))
        throw PreconditionError("cut: arc is not a properly embedded edge path");
    for (const Dart& d : arc.darts)
        if (s.is_boundary_edge(d.edge))
            throw PreconditionError("cut: arc traverses a boundary edge");

    Topology topo(s);
    if (!topo.structure().ok()) throw StructuralError(topo.structure().summary());

    Id v_first = s.tail_of(arc.darts.front());
    Id v_last = s.head_of(arc.darts.back());
    for (Id v : {v_first, v_last}) {
        if (!topo.locate_on_boundary(v))
            throw PreconditionError("cut: anchor " + idstr(v) + " is not a boundary vertex");
        if (s.is_corner(v)) throw PreconditionError("cut: anchor on a corner");
        auto [arr, dep] = topo.boundary_edges_at(v);
        if (s.boundary.at(arr) != opts.anchor_label || s.boundary.at(dep) != opts.anchor_label)
            throw PreconditionError("cut: anchor not inside a " +
                                    std::string(to_string(opts.anchor_label)) + " run");
    }
    for (size_t i = 0; i + 1 < arc.darts.size(); ++i) {
        Id v = s.head_of(arc.darts[i]);
        if (topo.locate_on_boundary(v))
            throw PreconditionError("cut: arc interior touches the boundary at vertex " + idstr(v));
    }

    auto links = oriented_links(s);

    // Vertex sequence along the arc, captured before the edges are retired.
    std::vector<Id> vseq;
    vseq.push_back(v_first);
    for (size_t i = 0; i + 1 < arc.darts.size(); ++i) vseq.push_back(s.head_of(arc.darts[i]));
    vseq.push_back(v_last);

    CutRec rec;
    rec.arc = arc.darts;

    // Duplicate the arc edges: the face containing dart p_i is left of travel
    // and keeps a fresh "left" edge; the face containing the reverse gets the
    // "right" edge.
    for (const Dart& p : arc.darts) {
        Edge er = s.edges.at(p.edge);
        Id left = s.fresh_edge(er.tail, er.head);
        Id right = s.fresh_edge(er.tail, er.head);
        rec.edge_copies[p.edge] = {left, right};
        replace_dart_in_faces(s, p, Dart(left, p.rev));
        replace_dart_in_faces(s, p.reversed(), Dart(right, !p.rev));
        s.edges.erase(p.edge);
    }

    auto left_copy_dart = [&](const Dart& p) { return Dart(rec.edge_copies.at(p.edge).first, p.rev); };
    auto right_copy_dart = [&](const Dart& p) { return Dart(rec.edge_copies.at(p.edge).second, p.rev); };

    // Split vertices.  Walk the oriented link; ends strictly between the
    // in-end of the arriving arc dart and the out-end of the departing one
    // (going forward) lie on the left.
    auto split_vertex = [&](Id v, std::optional<Dart> din, std::optional<Dart> dout) {
        const VertexLink& link = links.at(v);
        // Ends of the (pre-cut) arc edges at v.
        std::optional<EdgeEnd> ein = din ? std::optional<EdgeEnd>(incoming_end(*din)) : std::nullopt;
        std::optional<EdgeEnd> eout = dout ? std::optional<EdgeEnd>(outgoing_end(*dout)) : std::nullopt;
        int n = static_cast<int>(link.ends.size());
        auto pos_of = [&](const EdgeEnd& e) {
            for (int i = 0; i < n; ++i)
                if (link.ends[i] == e) return i;
            throw InternalError("cut: arc end missing from vertex link");
        };
        Id vl = s.fresh_vertex();
        Id vr = s.fresh_vertex();
        rec.vertex_copies[v] = {vl, vr};

        std::vector<EdgeEnd> left_ends, right_ends;
        if (ein && eout) {
            int pi = pos_of(*ein), po = pos_of(*eout);
            for (int t = (pi + 1) % n; t != po; t = (t + 1) % n) left_ends.push_back(link.ends[t]);
            for (int t = (po + 1) % n; t != pi; t = (t + 1) % n) right_ends.push_back(link.ends[t]);
        } else {
            // Anchor: interval link, one arc end splits it in two pieces.
            EdgeEnd probe = ein ? *ein : *eout;
            int pe = pos_of(probe);
            // With an arriving dart din, ends after its in-end are left of
            // travel; with a departing dart dout, ends before its out-end are
            // left of travel.
            for (int t = 0; t < n; ++t) {
                if (t == pe) continue;
                bool after = t > pe;
                bool left = ein ? after : !after;
                (left ? left_ends : right_ends).push_back(link.ends[t]);
            }
        }
        for (const EdgeEnd& e : left_ends) retarget_edge_end(s, e, vl);
        for (const EdgeEnd& e : right_ends) retarget_edge_end(s, e, vr);
        // Arc-edge ends at v follow their copy.
        if (din) {
            retarget_edge_end(s, incoming_end(left_copy_dart(*din)), vl);
            retarget_edge_end(s, incoming_end(right_copy_dart(*din)), vr);
        }
        if (dout) {
            retarget_edge_end(s, outgoing_end(left_copy_dart(*dout)), vl);
            retarget_edge_end(s, outgoing_end(right_copy_dart(*dout)), vr);
        }
        s.vertices.erase(v);
        if (opts.corner_signs) {
            bool is_first = !din;
            Sign sl = is_first ? opts.corner_signs->first : opposite(opts.corner_signs->first);
            Sign sr = is_first ? opts.corner_signs->second : opposite(opts.corner_signs->second);
            s.corners[vl] = sl;
            s.corners[vr] = sr;
        }
    };

    split_vertex(v_first, std::nullopt, arc.darts.front());
    for (size_t i = 0; i + 1 < arc.darts.size(); ++i)
        split_vertex(vseq[i + 1], arc.darts[i], arc.darts[i + 1]);
    split_vertex(v_last, arc.darts.back(), std::nullopt);

    // New boundary labels + normal form.
    SurgeryLog log;
    FlipRec flips;
    for (const auto& [orig, copies] : rec.edge_copies) {
        (void)orig;
        for (Id e : {copies.first, copies.second}) {
            s.boundary[e] = opts.new_label;
            if (normalize_edge(s, e)) flips.edges.push_back(e);
        }
    }
    log.push_back(rec);
    if (!flips.edges.empty()) log.push_back(flips);
    return {std::move(s), std::move(log), rec};
}

ZipResult zip_segments(CellSurface s, const std::vector<Id>& seg_a, const std::vector<Id>& seg_b,
                       const ZipOptions& opts) {
    if (seg_a.empty() || seg_a.size() != seg_b.size())
        throw PreconditionError("zip: segments must be nonempty and of equal length");
    std::set<Id> all(seg_a.begin(), seg_a.end());
    all.insert(seg_b.begin(), seg_b.end());
    if (all.size() != seg_a.size() + seg_b.size())
        throw PreconditionError("zip: segments share an edge");
    for (Id e : all)
        if (!s.is_boundary_edge(e)) throw PreconditionError("zip: edge " + idstr(e) + " not boundary");

    int k = static_cast<int>(seg_a.size());
    // Walk order: free side of edge runs head -> tail, so within a segment
    // tail(seg[i]) == head(seg[i+1]).
    for (int i = 0; i + 1 < k; ++i) {
        if (s.edges.at(seg_a[i]).tail != s.edges.at(seg_a[i + 1]).head)
            throw PreconditionError("zip: segment A is not consecutive in walk order");
        if (s.edges.at(seg_b[i]).tail != s.edges.at(seg_b[i + 1]).head)
            throw PreconditionError("zip: segment B is not consecutive in walk order");
    }

    // Vertex pairs: head(a_i) ~ tail(b_{k-1-i}), tail(a_i) ~ head(b_{k-1-i}).
    std::vector<std::pair<Id, Id>> vpairs;
    for (int i = 0; i < k; ++i) {
        Id a = seg_a[i], b = seg_b[k - 1 - i];
        vpairs.push_back({s.edges.at(a).head, s.edges.at(b).tail});
        if (i == k - 1) vpairs.push_back({s.edges.at(a).tail, s.edges.at(b).head});
    }
    std::set<Id> va, vb;
    for (auto& [x, y] : vpairs) {
        va.insert(x);
        vb.insert(y);
    }
    if (va.size() != vpairs.size() || vb.size() != vpairs.size())
        throw PreconditionError("zip: segment is self-adjacent");
    for (Id x : va)
        if (vb.count(x)) throw PreconditionError("zip: segments touch at vertex " + idstr(x));

    ZipRec rec;
    for (auto& [keep, drop] : vpairs) {
        if (s.is_corner(keep) || s.is_corner(drop)) {
            if (!opts.allow_corner_merge)
                throw PreconditionError("zip: segment end at a corner");
            if (!s.is_corner(keep) || !s.is_corner(drop) ||
                s.corners.at(keep) != opposite(s.corners.at(drop)))
                throw PreconditionError("zip: merged corners must carry opposite signs");
            s.corners.erase(keep);
            s.corners.erase(drop);
        }
        rec.vertex_merges.push_back({keep, drop});
    }

    // Merge edges: free(a_i) glues to free(b_{k-1-i}) traversed oppositely.
    // free sides run head->tail; after the vertex merges the two edges have
    // opposite endpoint roles, so drop's A dart maps to keep's B dart.
    for (int i = 0; i < k; ++i) {
        Id keep = seg_a[i], drop = seg_b[k - 1 - i];
        if (s.boundary.at(keep) != s.boundary.at(drop))
            throw PreconditionError("zip: label mismatch along the seam");
        rec.edge_merges.push_back({keep, drop, false});
        replace_dart_in_faces(s, Dart(drop, false), Dart(keep, true));
        replace_dart_in_faces(s, Dart(drop, true), Dart(keep, false));
        s.edges.erase(drop);
        s.boundary.erase(drop);
        s.boundary.erase(keep);
    }
    // Apply vertex merges to the surviving edge records.
    for (auto& [keep, drop] : rec.vertex_merges) {
        for (auto& [e, er] : s.edges) {
            (void)e;
            if (er.tail == drop) er.tail = keep;
            if (er.head == drop) er.head = keep;
        }
        s.vertices.erase(drop);
    }
    SurgeryLog log;
    log.push_back(rec);
    return {std::move(s), std::move(log), rec};
}

AttachResult attach_handle(CellSurface s, Id p_vertex, Id q_vertex, Label run_label) {
    if (p_vertex == q_vertex) throw PreconditionError("attach: coincident slots");
    if (s.is_corner(p_vertex) || s.is_corner(q_vertex))
        throw PreconditionError("attach: slot on a corner");

    SurgeryLog log;
    auto subdiv = [&](Id edge) {
        SubdivideResult r = subdivide_edge(std::move(s), edge);
        s = std::move(r.surface);
        log.push_back(r.rec);
        return r.rec;
    };

    // Fresh half-edge feet around each slot so segment ends are never
    // corners and segments never overlap.
    auto foot = [&](Id v) -> std::pair<Id, Id> { // (arriving half at v, departing half at v)
        Topology topo(s);
        if (!topo.locate_on_boundary(v))
            throw PreconditionError("attach: slot vertex " + idstr(v) + " not on boundary");
        auto [arr, dep] = topo.boundary_edges_at(v);
        if (s.boundary.at(arr) != run_label || s.boundary.at(dep) != run_label)
            throw PreconditionError("attach: slot not inside a " +
                                    std::string(to_string(run_label)) + " run");
        if (arr == dep) throw PreconditionError("attach: slot run too short, subdivide first");
        // free(arr) runs head->tail and ends at v, so v == tail(arr); the
        // half of arr adjacent to v after subdividing is the e2 part.
        SubdivideRec ra = subdiv(arr);
        SubdivideRec rd = subdiv(dep);
        Id arr_half = (s.edges.at(ra.e1).tail == v) ? ra.e1 : ra.e2;
        Id dep_half = (s.edges.at(rd.e1).head == v) ? rd.e1 : rd.e2;
        return {arr_half, dep_half};
    };

    auto [p_arr, p_dep] = foot(p_vertex);
    auto [q_arr, q_dep] = foot(q_vertex);

    // Segment around p in walk order: [p_arr, p_dep]; likewise for q.
    ZipResult z = zip_segments(std::move(s), {p_arr, p_dep}, {q_arr, q_dep}, {});
    s = std::move(z.surface);
    log.push_back(z.rec);

    AttachResult out;
    out.seam_edges = {p_arr, p_dep};
    out.merged_slot = p_vertex; // q merged into p (p side is the keep side)
    // Co-core: the seam traversed end-to-end; anchors are the merged
    // segment-end vertices.
    EdgePath seam;
    // walk order along segment A: free sides head->tail: dart (e, true).
    seam.darts.push_back({p_arr, true});
    seam.darts.push_back({p_dep, true});
    out.cocore = seam;
    out.log = std::move(log);
    out.surface = std::move(s);
    return out;
}

std::optional<ChordResult> find_chord(const CellSurface& s0, const ChordSpec& spec) {
    if (!s0.is_boundary_edge(spec.src_boundary_edge) || !s0.is_boundary_edge(spec.dst_boundary_edge))
        return std::nullopt;

    CellSurface s = s0;
    SurgeryLog log;

    // If src == dst we need two distinct anchor slots on that edge: split it
    // first and use the halves.
    Id src_edge = spec.src_boundary_edge;
    Id dst_edge = spec.dst_boundary_edge;
    if (src_edge == dst_edge) {
        SubdivideResult r = subdivide_edge(std::move(s), src_edge);
        s = std::move(r.surface);
        log.push_back(r.rec);
        src_edge = r.rec.e1;
        dst_edge = r.rec.e2;
    }

    Topology topo(s);
    std::set<Id> forbid(spec.forbid_edges.begin(), spec.forbid_edges.end());
    std::set<Id> avoid_faces(spec.avoid_faces.begin(), spec.avoid_faces.end());
    std::set<Id> crossset(spec.cross_once.begin(), spec.cross_once.end());
    bool need_cross = !crossset.empty();

    auto face_of_boundary = [&](Id e) { return topo.face_of(Dart(e, false))->first; };
    Id f_src = face_of_boundary(src_edge);
    Id f_dst = face_of_boundary(dst_edge);

    // BFS over (face, crossed) with simple face paths.
    struct Node {
        Id face;
        int crossed;
    };
    std::map<std::pair<Id, int>, std::pair<std::pair<Id, int>, Id>> parent; // node -> (prev, via edge)
    std::deque<Node> queue;
    auto push = [&](Node n, std::pair<Id, int> prev, Id via) {
        if (avoid_faces.count(n.face)) return;
        auto key = std::make_pair(n.face, n.crossed);
        if (parent.count(key)) return;
        parent[key] = {prev, via};
        queue.push_back(n);
    };
    push({f_src, 0}, {-1, -1}, -1);
    std::optional<std::pair<Id, int>> goal;
    int want = need_cross ? 1 : 0;
    if (f_src == f_dst && want == 0) goal = std::make_pair(f_src, 0);

    while (!queue.empty() && !goal) {
        Node cur = queue.front();
        queue.pop_front();
        for (const auto& [e, er] : s.edges) {
            (void)er;
            if (s.is_boundary_edge(e) || forbid.count(e)) continue;
            auto fa = topo.face_of(Dart(e, false));
            auto fb = topo.face_of(Dart(e, true));
            if (!fa || !fb) continue;
            Id other;
            if (fa->first == cur.face) other = fb->first;
            else if (fb->first == cur.face) other = fa->first;
            else continue;
            if (other == cur.face) continue; // no dual loops
            int crossed = cur.crossed;
            if (crossset.count(e)) {
                if (crossed) continue; // cross the marked set at most once
                crossed = 1;
            }
            Node nn{other, crossed};
            auto key = std::make_pair(nn.face, nn.crossed);
            if (parent.count(key)) continue;
            push(nn, {cur.face, cur.crossed}, e);
            if (nn.face == f_dst && nn.crossed == want) {
                goal = key;
                break;
            }
        }
    }
    if (!goal) return std::nullopt;

    // Reconstruct the crossing edge list.
    std::vector<Id> crossings;
    {
        std::pair<Id, int> cur = *goal;
        while (true) {
            auto& [prev, via] = parent.at(cur);
            if (via < 0) break;
            crossings.push_back(via);
            cur = prev;
        }
        std::reverse(crossings.begin(), crossings.end());
    }
    // Face sequence must be simple for in-place refinement.
    {
        std::set<Id> seen;
        std::pair<Id, int> cur = *goal;
        while (true) {
            if (!seen.insert(cur.first).second) return std::nullopt;
            auto& [prev, via] = parent.at(cur);
            if (via < 0) break;
            cur = prev;
        }
    }

    // Subdivide src, dst (anchors) and every crossing edge (waypoints).
    auto midpoint = [&](Id e) {
        SubdivideResult r = subdivide_edge(std::move(s), e);
        s = std::move(r.surface);
        log.push_back(r.rec);
        return r.rec.mid;
    };
    Id m_src = midpoint(src_edge);
    std::vector<Id> way;
    for (Id e : crossings) way.push_back(midpoint(e));
    Id m_dst = midpoint(dst_edge);

    // Waypoint sequence through faces f_src, ..., f_dst.
    std::vector<Id> pts;
    pts.push_back(m_src);
    for (Id w : way) pts.push_back(w);
    pts.push_back(m_dst);

    EdgePath chord;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        // The two waypoints share exactly one current face.
        std::optional<Id> shared;
        int pos1 = -1, pos2 = -1;
        for (const auto& [f, cycle] : s.faces) {
            int a = -1, b = -1;
            for (int t = 0; t < static_cast<int>(cycle.size()); ++t) {
                Id v = s.tail_of(cycle[t]);
                if (v == pts[i]) a = t;
                if (v == pts[i + 1]) b = t;
            }
            if (a >= 0 && b >= 0) {
                shared = f;
                pos1 = a;
                pos2 = b;
                break;
            }
        }
        if (!shared) return std::nullopt;
        SplitFaceResult r = split_face(std::move(s), *shared, pos1, pos2);
        s = std::move(r.surface);
        chord.darts.push_back({r.rec.diagonal, false});
        log.push_back(r.rec);
    }

    ChordResult out;
    out.surface = std::move(s);
    out.log = std::move(log);
    out.chord = std::move(chord);
    return out;
}

// ---------------------------------------------------------------------------
// transports

namespace {

std::optional<std::vector<Dart>> map_dart_forward(const SurgeryRec& rec, Dart d) {
    if (std::holds_alternative<SubdivideRec>(rec)) {
        const auto& r = std::get<SubdivideRec>(rec);
        if (d.edge != r.old_edge) return std::vector<Dart>{d};
        if (!d.rev) return std::vector<Dart>{{r.e1, false}, {r.e2, false}};
        return std::vector<Dart>{{r.e2, true}, {r.e1, true}};
    }
    if (std::holds_alternative<SplitFaceRec>(rec)) return std::vector<Dart>{d};
    if (std::holds_alternative<CutRec>(rec)) {
        const auto& r = std::get<CutRec>(rec);
        if (r.edge_copies.count(d.edge)) return std::nullopt; // severed
        return std::vector<Dart>{d};
    }
    if (std::holds_alternative<ZipRec>(rec)) {
        const auto& r = std::get<ZipRec>(rec);
        for (const auto& m : r.edge_merges) {
            if (d.edge == m.drop) {
                bool rev = m.same_dir ? d.rev : !d.rev;
                return std::vector<Dart>{{m.keep, rev}};
            }
        }
        return std::vector<Dart>{d};
    }
    const auto& r = std::get<FlipRec>(rec);
    for (Id e : r.edges)
        if (d.edge == e) return std::vector<Dart>{{e, !d.rev}};
    return std::vector<Dart>{d};
}

std::optional<std::vector<Dart>> map_darts_backward(const SurgeryRec& rec,
                                                    const std::vector<Dart>& darts) {
    std::vector<Dart> out;
    if (std::holds_alternative<SubdivideRec>(rec)) {
        const auto& r = std::get<SubdivideRec>(rec);
        for (size_t i = 0; i < darts.size(); ++i) {
            Dart d = darts[i];
            if (d.edge == r.e1 || d.edge == r.e2) {
                // A straight pass e1,e2 (or e2r,e1r) contracts to the old
                // edge; anything else turns at the midpoint and is blocked.
                if (i + 1 >= darts.size()) return std::nullopt;
                Dart n = darts[i + 1];
                bool fwd = d == Dart{r.e1, false} && n == Dart{r.e2, false};
                bool bwd = d == Dart{r.e2, true} && n == Dart{r.e1, true};
                if (!fwd && !bwd) return std::nullopt;
                out.push_back({r.old_edge, bwd});
                ++i;
            } else {
                out.push_back(d);
            }
        }
        return out;
    }
    if (std::holds_alternative<SplitFaceRec>(rec)) {
        const auto& r = std::get<SplitFaceRec>(rec);
        for (const Dart& d : darts) {
            if (d.edge != r.diagonal) {
                out.push_back(d);
            } else if (!d.rev) {
                out.insert(out.end(), r.side_route.begin(), r.side_route.end());
            } else {
                for (auto it = r.side_route.rbegin(); it != r.side_route.rend(); ++it)
                    out.push_back(it->reversed());
            }
        }
        return out;
    }
    if (std::holds_alternative<CutRec>(rec)) {
        const auto& r = std::get<CutRec>(rec);
        std::map<Id, std::pair<Id, bool>> back; // copy -> (orig, unusedflag)
        for (const auto& [orig, copies] : r.edge_copies) {
            back[copies.first] = {orig, false};
            back[copies.second] = {orig, false};
        }
        for (const Dart& d : darts) {
            auto it = back.find(d.edge);
            if (it == back.end()) out.push_back(d);
            else out.push_back({it->second.first, d.rev});
        }
        return out;
    }
    if (std::holds_alternative<ZipRec>(rec)) {
        const auto& r = std::get<ZipRec>(rec);
        for (const Dart& d : darts) {
            for (const auto& m : r.edge_merges)
                if (d.edge == m.keep) return std::nullopt; // seam did not exist as interior
            out.push_back(d);
        }
        return out;
    }
    const auto& r = std::get<FlipRec>(rec);
    for (Dart d : darts) {
        for (Id e : r.edges)
            if (d.edge == e) d.rev = !d.rev;
        out.push_back(d);
    }
    return out;
}

std::optional<EdgePath> finish_path(const CellSurface& target, std::vector<Dart> darts) {
    EdgePath p{std::move(darts)};
    for (const Dart& d : p.darts)
        if (!target.edges.count(d.edge)) return std::nullopt;
    p = reduce_path(p);
    if (p.empty()) return p;
    if (!is_chain(target, p)) return std::nullopt;
    return p;
}

} // namespace

std::optional<EdgePath> transport_forward(const CellSurface& post, const SurgeryRec& rec,
                                          const EdgePath& path) {
    std::vector<Dart> darts;
    for (const Dart& d : path.darts) {
        auto m = map_dart_forward(rec, d);
        if (!m) return std::nullopt;
        darts.insert(darts.end(), m->begin(), m->end());
    }
    return finish_path(post, std::move(darts));
}

std::optional<EdgePath> transport_forward(const CellSurface& post, const SurgeryLog& log,
                                          const EdgePath& path) {
    // Intermediate chain checks need intermediate surfaces; map darts through
    // the whole log and validate only at the end.
    std::vector<Dart> darts = path.darts;
    for (const SurgeryRec& rec : log) {
        std::vector<Dart> next;
        for (const Dart& d : darts) {
            auto m = map_dart_forward(rec, d);
            if (!m) return std::nullopt;
            next.insert(next.end(), m->begin(), m->end());
        }
        darts = std::move(next);
    }
    return finish_path(post, std::move(darts));
}

std::optional<EdgePath> transport_backward(const CellSurface& pre, const SurgeryRec& rec,
                                           const EdgePath& path) {
    auto m = map_darts_backward(rec, path.darts);
    if (!m) return std::nullopt;
    return finish_path(pre, std::move(*m));
}

std::optional<EdgePath> transport_backward(const CellSurface& pre, const SurgeryLog& log,
                                           const EdgePath& path) {
    std::vector<Dart> darts = path.darts;
    for (auto it = log.rbegin(); it != log.rend(); ++it) {
        auto m = map_darts_backward(*it, darts);
        if (!m) return std::nullopt;
        darts = std::move(*m);
    }
    return finish_path(pre, std::move(darts));
}

namespace {

std::optional<EdgeCycle> finish_cycle(const CellSurface& target, std::vector<Dart> darts) {
    EdgeCycle c{std::move(darts)};
    for (const Dart& d : c.darts) {
        if (!target.edges.count(d.edge)) return std::nullopt;
        if (target.is_boundary_edge(d.edge)) return std::nullopt;
    }
    c = reduce_cycle(c);
    if (c.empty()) return std::nullopt;
    if (!is_closed_chain(target, c)) return std::nullopt;
    return c;
}

} // namespace

std::optional<EdgeCycle> transport_forward_cycle(const CellSurface& post, const SurgeryLog& log,
                                                 const EdgeCycle& c) {
    std::vector<Dart> darts = c.darts;
    for (const SurgeryRec& rec : log) {
        std::vector<Dart> next;
        for (const Dart& d : darts) {
            auto m = map_dart_forward(rec, d);
            if (!m) return std::nullopt;
            next.insert(next.end(), m->begin(), m->end());
        }
        darts = std::move(next);
    }
    return finish_cycle(post, std::move(darts));
}

std::optional<EdgeCycle> transport_backward_cycle(const CellSurface& pre, const SurgeryLog& log,
                                                  const EdgeCycle& c) {
    std::vector<Dart> darts = c.darts;
    for (auto it = log.rbegin(); it != log.rend(); ++it) {
        // Rotate so subdivision pairs are not split across the seam.
        auto m = map_darts_backward(*it, darts);
        if (!m && std::holds_alternative<SubdivideRec>(*it) && darts.size() > 1) {
            std::vector<Dart> rot(darts.begin() + 1, darts.end());
            rot.push_back(darts.front());
            m = map_darts_backward(*it, rot);
        }
        if (!m) return std::nullopt;
        darts = std::move(*m);
    }
    return finish_cycle(pre, std::move(darts));
}

std::optional<Id> transport_vertex_forward(const SurgeryLog& log, Id v) {
    for (const SurgeryRec& rec : log) {
        if (std::holds_alternative<CutRec>(rec)) {
            const auto& r = std::get<CutRec>(rec);
            if (r.vertex_copies.count(v)) return std::nullopt;
        } else if (std::holds_alternative<ZipRec>(rec)) {
            const auto& r = std::get<ZipRec>(rec);
            for (const auto& [keep, drop] : r.vertex_merges)
                if (v == drop) v = keep;
        }
    }
    return v;
}

} // namespace fobkit
