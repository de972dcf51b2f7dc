#ifndef FOBKIT_SURFACE_HPP
#define FOBKIT_SURFACE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fobkit/report.hpp"

namespace fobkit {

using Id = std::int32_t;

enum class Label : std::uint8_t { Binding, Leaf };
enum class Sign : std::int8_t { Minus = -1, Plus = 1 };

inline Sign opposite(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline const char* to_string(Label l) { return l == Label::Binding ? "binding" : "leaf"; }
inline const char* to_string(Sign s) { return s == Sign::Plus ? "+" : "-"; }

/// Oriented side of an edge.  `rev == false` is side A and traverses the edge
/// tail -> head; side B traverses head -> tail.
struct Dart {
    Id edge = -1;
    bool rev = false;

    Dart() = default;
    Dart(Id e, bool r) : edge(e), rev(r) {}
    Dart reversed() const { return {edge, !rev}; }
    int side_id() const { return 2 * edge + (rev ? 1 : 0); }
    friend bool operator==(const Dart& a, const Dart& b) = default;
    friend auto operator<=>(const Dart& a, const Dart& b) = default;
};

struct Edge {
    Id tail = -1;
    Id head = -1;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// One end of an edge at a vertex; `end == 0` is the tail end.
struct EdgeEnd {
    Id edge = -1;
    int end = 0;
    friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
    friend auto operator<=>(const EdgeEnd&, const EdgeEnd&) = default;
};

/// Combinatorial cornered surface: disk faces glued along edge sides, with
/// boundary sides labeled Binding/Leaf and signed corner vertices.
///
/// Normal form: every edge's side A lies in exactly one face cycle.  Interior
/// edges also have side B in a face; boundary edges leave side B free, and the
/// free side is the boundary side.  Face cycles are CCW (face on the left of
/// each dart), so free B sides traverse the boundary with the surface on the
/// left when walking head -> tail.
class CellSurface {
  public:
    std::set<Id> vertices;
    std::map<Id, Edge> edges;
    std::map<Id, std::vector<Dart>> faces;
    std::map<Id, Label> boundary; // boundary edge id -> label
    std::map<Id, Sign> corners;   // corner vertex id -> sign

    Id next_vertex = 0;
    Id next_edge = 0;
    Id next_face = 0;

    Id fresh_vertex() { Id v = next_vertex++; vertices.insert(v); return v; }
    Id fresh_edge(Id tail, Id head) { Id e = next_edge++; edges[e] = {tail, head}; return e; }
    Id fresh_face(std::vector<Dart> cycle) { Id f = next_face++; faces[f] = std::move(cycle); return f; }

    Id tail_of(Dart d) const { const Edge& e = edges.at(d.edge); return d.rev ? e.head : e.tail; }
    Id head_of(Dart d) const { const Edge& e = edges.at(d.edge); return d.rev ? e.tail : e.head; }

    bool is_boundary_edge(Id e) const { return boundary.count(e) != 0; }
    bool is_corner(Id v) const { return corners.count(v) != 0; }

    long euler_characteristic() const {
        return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) +
               static_cast<long>(faces.size());
    }

    friend bool operator==(const CellSurface& a, const CellSurface& b) {
        return a.vertices == b.vertices && a.edges == b.edges && a.faces == b.faces &&
               a.boundary == b.boundary && a.corners == b.corners;
    }
};

/// A boundary component traced as a cyclic sequence of boundary edges.  The
/// free B side of `edge(i)` is traversed from `vertex(i)` to `vertex(i+1)`,
/// i.e. vertex(i) == head(edge(i)) and vertex(i+1) == tail(edge(i)).
struct BoundaryWalk {
    std::vector<Id> edge_ids;
    std::vector<Id> vertex_ids; // same length; vertex_ids[i] = start of edge_ids[i]

    int length() const { return static_cast<int>(edge_ids.size()); }
    Id edge(int i) const { return edge_ids[mod(i)]; }
    Id vertex(int i) const { return vertex_ids[mod(i)]; }
    int mod(int i) const {
        int n = length();
        return ((i % n) + n) % n;
    }
};

/// Link of a vertex, as an ordered chain of edge ends connected by face
/// corners.  A circle for interior vertices, an interval for boundary ones.
struct VertexLink {
    bool is_circle = false;
    std::vector<EdgeEnd> ends; // rotation order; for intervals, ends[0] and
                               // ends.back() are the two boundary edge ends
};

/// Derived connectivity for a CellSurface.  Build once, query many times;
/// invalidated by any mutation of the surface.
class Topology {
  public:
    explicit Topology(const CellSurface& s);

    const CellSurface& surface() const { return *s_; }

    /// Location of a dart inside the face cycles, if any.
    std::optional<std::pair<Id, int>> face_of(Dart d) const;
    bool in_face(Dart d) const { return face_of(d).has_value(); }

    const std::vector<BoundaryWalk>& walks() const { return walks_; }
    const VertexLink& link(Id v) const { return links_.at(v); }
    bool is_interior_vertex(Id v) const { return links_.at(v).is_circle; }

    /// Walk index and position of a boundary vertex (valid surfaces visit
    /// each boundary vertex exactly once).
    std::optional<std::pair<int, int>> locate_on_boundary(Id v) const;

    /// Boundary edges adjacent to boundary vertex v in walk order:
    /// first = arrives at v, second = departs from v.
    std::pair<Id, Id> boundary_edges_at(Id v) const;

    /// Structural well-formedness issues found while indexing (bad gluing,
    /// inconsistent face cycles, pinched links).  Validation uses these.
    const ValidationReport& structure() const { return structure_; }

  private:
    const CellSurface* s_;
    std::map<int, std::pair<Id, int>> side_loc_;
    std::map<Id, VertexLink> links_;
    std::vector<BoundaryWalk> walks_;
    std::map<Id, std::pair<int, int>> vertex_walk_pos_;
    ValidationReport structure_;

    void build_links();
    void build_walks();
};

/// Position strictly inside a run of a boundary walk: the vertex at the start
/// of walk edge `pos`.  Resolves to a non-corner boundary vertex.
struct BoundarySlot {
    int walk = 0;
    int pos = 0;
    friend bool operator==(const BoundarySlot&, const BoundarySlot&) = default;
};

/// Resolve a slot to its vertex; throws PreconditionError if it lands on a
/// corner or if the adjacent boundary sides do not both carry `required`.
Id resolve_slot(const Topology& topo, const BoundarySlot& slot, Label required);

/// Inverse of resolve_slot for serialization and reporting.
BoundarySlot slot_of_vertex(const Topology& topo, Id v);

/// Maximal runs of equal label along a walk, with the corner signs between
/// them.  For cornerless walks there is a single run and no signs.
struct WalkRuns {
    struct Run {
        Label label;
        int first;  // index of first edge in walk order
        int count;
        Id corner_after = -1; // corner vertex at the transition after this run, -1 if none
    };
    std::vector<Run> runs;
};

WalkRuns decompose_runs(const CellSurface& s, const BoundaryWalk& w);

/// Canonical per-walk description of labels, runs and corner signs, rotation
/// independent; the multiset over walks is the boundary-trace fingerprint.
/// Run lengths are deliberately not recorded so that subdivision and the
/// cut/add round trips preserve the fingerprint.
struct BoundaryTrace {
    std::vector<std::string> walk_words; // canonical (min-rotation) words, sorted
    friend bool operator==(const BoundaryTrace&, const BoundaryTrace&) = default;
};

BoundaryTrace boundary_trace(const CellSurface& s);
std::string to_string(const BoundaryTrace& t);

/// Vertex links chained in the direction induced by the face corners, so the
/// rotation sense is globally consistent with the surface orientation.
/// Interval links run from the end with no incoming corner step.
std::map<Id, VertexLink> oriented_links(const CellSurface& s);

EdgeEnd incoming_end(Dart d);
EdgeEnd outgoing_end(Dart d);

/// Full invariant check per the CellSurface contract; empty iff valid.
ValidationReport validate_surface(const CellSurface& s);

/// Boundary components in deterministic order (sorted by smallest contained
/// edge id, each walk started at that edge).  Requires a valid surface.
std::vector<BoundaryWalk> trace_boundary(const CellSurface& s);

long euler_characteristic(const CellSurface& s);

/// Number of Leaf runs (equivalently, leaves of alpha) over all walks.
int count_leaf_intervals(const CellSurface& s);

} // namespace fobkit

#endif
