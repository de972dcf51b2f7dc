#ifndef FOBKIT_PATH_HPP
#define FOBKIT_PATH_HPP

#include <optional>
#include <vector>

#include "fobkit/surface.hpp"

namespace fobkit {

/// Path through interior edges; anchors are its endpoint vertices (boundary
/// vertices for cutting/stabilizing arcs).  Consecutive darts share a vertex.
struct EdgePath {
    std::vector<Dart> darts;

    bool empty() const { return darts.empty(); }
    int length() const { return static_cast<int>(darts.size()); }
    EdgePath reversed() const {
        EdgePath r;
        for (auto it = darts.rbegin(); it != darts.rend(); ++it) r.darts.push_back(it->reversed());
        return r;
    }
    friend bool operator==(const EdgePath&, const EdgePath&) = default;
};

/// Closed reduced path (no anchors).  Twist curves must avoid boundary edges.
struct EdgeCycle {
    std::vector<Dart> darts;

    bool empty() const { return darts.empty(); }
    int length() const { return static_cast<int>(darts.size()); }
    Dart dart(int i) const {
        int n = length();
        return darts[((i % n) + n) % n];
    }
    EdgeCycle reversed() const {
        EdgeCycle r;
        for (auto it = darts.rbegin(); it != darts.rend(); ++it) r.darts.push_back(it->reversed());
        return r;
    }
    friend bool operator==(const EdgeCycle&, const EdgeCycle&) = default;
};

Id path_start(const CellSurface& s, const EdgePath& p);
Id path_end(const CellSurface& s, const EdgePath& p);

/// Chain check: consecutive darts share vertices (cyclically for cycles).
bool is_chain(const CellSurface& s, const EdgePath& p);
bool is_closed_chain(const CellSurface& s, const EdgeCycle& c);

/// No dart immediately followed by its reverse.
bool is_reduced(const EdgePath& p);
bool is_reduced_cycle(const EdgeCycle& c);

/// Visits no edge twice and no interior vertex twice; anchors distinct from
/// interior vertices and from each other.
bool is_properly_embedded(const CellSurface& s, const EdgePath& p);
bool is_embedded_cycle(const CellSurface& s, const EdgeCycle& c);

/// Cancel adjacent dart/reverse pairs until none remain.  Idempotent; anchors
/// are preserved (cancellation never removes the whole anchored path unless
/// it is nullhomotopic onto its start vertex, in which case the empty path
/// keeps that anchor implicitly).
EdgePath reduce_path(const EdgePath& p);
EdgeCycle reduce_cycle(const EdgeCycle& c);

/// Dehn twist of `path` along `cycle`.  Transversal crossings are maximal
/// shared runs (possibly single vertices) that enter and exit on opposite
/// sides of the cycle in the vertex rotation; each crossing splices in a copy
/// of the cycle based at the entry vertex.  `sign` +1 is the right-handed
/// twist; +1 and -1 are mutually inverse up to reduce_path.
EdgePath apply_twist(const CellSurface& s, const EdgePath& path, const EdgeCycle& cycle, int sign);

/// Number of transversal crossings found by the same detection that
/// apply_twist uses.  Diagnostic for the sorting loop.
int count_crossings(const CellSurface& s, const EdgePath& path, const EdgeCycle& cycle);

/// Paths intersect if they share an edge or a vertex (reduced forms).
bool paths_share_cells(const CellSurface& s, const EdgePath& a, const EdgePath& b);

} // namespace fobkit

#endif
