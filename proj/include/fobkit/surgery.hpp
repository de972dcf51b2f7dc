#ifndef FOBKIT_SURGERY_HPP
#define FOBKIT_SURGERY_HPP

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "fobkit/path.hpp"
#include "fobkit/surface.hpp"

namespace fobkit {

/// Provenance of one surface mutation; enough to transport paths and cycles
/// between the pre- and post-surfaces.

struct SubdivideRec {
    Id old_edge = -1;
    Id e1 = -1, e2 = -1; // e1: tail->mid, e2: mid->head (pre-flip orientation)
    Id mid = -1;
};

struct SplitFaceRec {
    Id old_face = -1;
    Id f1 = -1, f2 = -1;
    Id diagonal = -1;
    std::vector<Dart> side_route; // pre-split chain from diagonal tail to head
};

struct CutRec {
    std::vector<Dart> arc; // darts in the pre-surface
    std::map<Id, std::pair<Id, Id>> edge_copies;   // arc edge -> (left, right)
    std::map<Id, std::pair<Id, Id>> vertex_copies; // split vertex -> (left, right)
};

struct ZipRec {
    // drop edge merged into keep edge; same_dir tells whether drop's A dart
    // maps to keep's A dart (true) or keep's B dart (false).
    struct EdgeMerge {
        Id keep = -1, drop = -1;
        bool same_dir = false;
    };
    std::vector<EdgeMerge> edge_merges;
    std::vector<std::pair<Id, Id>> vertex_merges; // (keep, drop)
};

/// Edge flips performed to restore normal form (side A in a face).
struct FlipRec {
    std::vector<Id> edges;
};

using SurgeryRec = std::variant<SubdivideRec, SplitFaceRec, CutRec, ZipRec, FlipRec>;
using SurgeryLog = std::vector<SurgeryRec>;

/// --- primitive mutations (all pure: take by value, return the new value) ---

struct SubdivideResult {
    CellSurface surface;
    SubdivideRec rec;
};
SubdivideResult subdivide_edge(CellSurface s, Id edge);

struct SplitFaceResult {
    CellSurface surface;
    SplitFaceRec rec;
};
/// Diagonal between the vertices at face-cycle positions t1 and t2
/// (vertex at position t = tail of cycle[t]); the vertices must differ.
SplitFaceResult split_face(CellSurface s, Id face, int t1, int t2);

struct CutOptions {
    Label anchor_label = Label::Leaf;  // runs the anchors must sit inside
    Label new_label = Label::Leaf;     // label of the duplicated arc sides
    // Assembly mode: make the four anchor copies corners.  Signs are given
    // for (first anchor left, first anchor right); the far anchor gets the
    // opposite signs so each new Leaf interval runs from a + to a - corner.
    std::optional<std::pair<Sign, Sign>> corner_signs;
};

struct CutResult {
    CellSurface surface;
    SurgeryLog log; // flips may accompany the CutRec
    CutRec rec;
};
/// Cut along a properly embedded interior arc anchored at two boundary
/// vertices.  chi increases by exactly 1.
CutResult cut_along_arc(CellSurface s, const EdgePath& arc, const CutOptions& opts = {});

struct ZipOptions {
    bool allow_corner_merge = false; // merged corner pairs must have opposite
                                     // signs and stop being corners
};

struct ZipResult {
    CellSurface surface;
    SurgeryLog log;
    ZipRec rec;
};
/// Glue boundary segment A onto boundary segment B, orientation reversing
/// (walk direction of A against walk direction of B).  Segments are lists of
/// boundary edges consecutive along their walks; equal length, disjoint.
/// chi decreases by exactly 1 per connected gluing... (one segment pair).
ZipResult zip_segments(CellSurface s, const std::vector<Id>& seg_a, const std::vector<Id>& seg_b,
                       const ZipOptions& opts = {});

struct AttachResult {
    CellSurface surface;
    SurgeryLog log;
    EdgePath cocore;       // seam path between the two surviving end vertices
    Id merged_slot = -1;   // image of p (== image of q)
    std::vector<Id> seam_edges;
};
/// Attach a 1-handle along two boundary slots, realized as a zip of short
/// segments around the slot vertices.  Both slots must sit inside runs of
/// `run_label`.  Cutting along the returned cocore undoes the attachment.
AttachResult attach_handle(CellSurface s, Id p_vertex, Id q_vertex, Label run_label = Label::Leaf);

/// --- chord construction ------------------------------------------------

struct ChordSpec {
    Id src_boundary_edge = -1;
    Id dst_boundary_edge = -1;
    std::vector<Id> forbid_edges;  // interior edges the dual path must not cross
    std::vector<Id> avoid_faces;   // faces the dual path must not enter
    std::vector<Id> cross_once;    // if nonempty: cross exactly one edge of this set exactly once
};

struct ChordResult {
    CellSurface surface;
    SurgeryLog log;
    EdgePath chord; // properly embedded, anchored at fresh midpoints of the
                    // two boundary edges
};
/// Find and realize an embedded interior arc between two boundary edges via
/// a simple dual path, refining the surface (midpoints + diagonals).  All
/// chord cells are fresh, so the chord is automatically disjoint from every
/// existing path.  Returns nullopt if no admissible dual path exists.
std::optional<ChordResult> find_chord(const CellSurface& s, const ChordSpec& spec);

/// --- transports ----------------------------------------------------------

/// Carry a path forward through one mutation.  nullopt = blocked (the path
/// uses cells the mutation destroyed: cut arc edges).  The result is reduced;
/// a broken chain (path crossed a cut) also yields nullopt.
std::optional<EdgePath> transport_forward(const CellSurface& post, const SurgeryRec& rec,
                                          const EdgePath& path);
std::optional<EdgePath> transport_forward(const CellSurface& post, const SurgeryLog& log,
                                          const EdgePath& path);

/// Carry a path backward through one mutation (projection).  nullopt =
/// blocked: the path uses cells that do not descend (zip seam edges, a
/// turn at a subdivision midpoint).
std::optional<EdgePath> transport_backward(const CellSurface& pre, const SurgeryRec& rec,
                                           const EdgePath& path);
std::optional<EdgePath> transport_backward(const CellSurface& pre, const SurgeryLog& log,
                                           const EdgePath& path);

std::optional<EdgeCycle> transport_forward_cycle(const CellSurface& post, const SurgeryLog& log,
                                                 const EdgeCycle& c);
std::optional<EdgeCycle> transport_backward_cycle(const CellSurface& pre, const SurgeryLog& log,
                                                  const EdgeCycle& c);

/// Vertex image under a mutation log (forward).  nullopt if retired with no
/// unique descendant (split by a cut).
std::optional<Id> transport_vertex_forward(const SurgeryLog& log, Id v);

} // namespace fobkit

#endif
