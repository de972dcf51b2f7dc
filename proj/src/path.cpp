#include "fobkit/path.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fobkit {

Id path_start(const CellSurface& s, const EdgePath& p) {
    if (p.empty()) throw PreconditionError("empty path has no start");
    return s.tail_of(p.darts.front());
}

Id path_end(const CellSurface& s, const EdgePath& p) {
    if (p.empty()) throw PreconditionError("empty path has no end");
    return s.head_of(p.darts.back());
}

bool is_chain(const CellSurface& s, const EdgePath& p) {
    for (size_t i = 0; i + 1 < p.darts.size(); ++i)
        if (s.head_of(p.darts[i]) != s.tail_of(p.darts[i + 1])) return false;
    return true;
}

bool is_closed_chain(const CellSurface& s, const EdgeCycle& c) {
    if (c.empty()) return false;
    int n = c.length();
    for (int i = 0; i < n; ++i)
        if (s.head_of(c.dart(i)) != s.tail_of(c.dart(i + 1))) return false;
    return true;
}

bool is_reduced(const EdgePath& p) {
    for (size_t i = 0; i + 1 < p.darts.size(); ++i)
        if (p.darts[i + 1] == p.darts[i].reversed()) return false;
    return true;
}

bool is_reduced_cycle(const EdgeCycle& c) {
    int n = c.length();
    if (n <= 1) return true;
    for (int i = 0; i < n; ++i)
        if (c.dart(i + 1) == c.dart(i).reversed()) return false;
    return true;
}

bool is_properly_embedded(const CellSurface& s, const EdgePath& p) {
    if (p.empty() || !is_chain(s, p)) return false;
    std::set<Id> edge_ids;
    for (const Dart& d : p.darts)
        if (!edge_ids.insert(d.edge).second) return false;
    std::set<Id> seen;
    seen.insert(path_start(s, p));
    for (size_t i = 0; i + 1 < p.darts.size(); ++i)
        if (!seen.insert(s.head_of(p.darts[i])).second) return false;
    if (!seen.insert(path_end(s, p)).second) return false;
    return true;
}

bool is_embedded_cycle(const CellSurface& s, const EdgeCycle& c) {
    if (c.empty() || !is_closed_chain(s, c)) return false;
    std::set<Id> edge_ids, verts;
    for (const Dart& d : c.darts) {
        if (!edge_ids.insert(d.edge).second) return false;
        if (!verts.insert(s.tail_of(d)).second) return false;
    }
    return true;
}

EdgePath reduce_path(const EdgePath& p) {
    EdgePath out;
    for (const Dart& d : p.darts) {
        if (!out.darts.empty() && out.darts.back() == d.reversed())
            out.darts.pop_back();
        else
            out.darts.push_back(d);
    }
    return out;
}

EdgeCycle reduce_cycle(const EdgeCycle& c) {
    std::vector<Dart> v;
    for (const Dart& d : c.darts) {
        if (!v.empty() && v.back() == d.reversed())
            v.pop_back();
        else
            v.push_back(d);
    }
    // cyclic cancellation across the seam
    while (v.size() >= 2 && v.front() == v.back().reversed()) {
        v.erase(v.begin());
        v.pop_back();
    }
    return EdgeCycle{v};
}

namespace {

struct Visit {
    Id vertex;
    EdgeEnd in_end;  // end of the arriving cycle edge at the vertex
    EdgeEnd out_end; // end of the departing cycle edge at the vertex
};

/// Side of an edge end relative to a cycle visit: LEFT if it lies in the open
/// arc from the visit's out-end to its in-end in rotation order (wrapping,
/// with the boundary gap of interval links treated as part of the arc).
enum class CycleSide { Left, Right, OnCycle };

CycleSide side_of(const VertexLink& link, const Visit& visit, const EdgeEnd& x) {
    if (x == visit.in_end || x == visit.out_end) return CycleSide::OnCycle;
    int n = static_cast<int>(link.ends.size());
    int pi = -1, po = -1, px = -1;
    for (int i = 0; i < n; ++i) {
        if (link.ends[i] == visit.in_end) pi = i;
        if (link.ends[i] == visit.out_end) po = i;
        if (link.ends[i] == x) px = i;
    }
    if (pi < 0 || po < 0 || px < 0) throw InternalError("cycle or probe end missing from vertex link");
    // Walk from out-end forward (cyclically); ends met before in-end are Left.
    for (int step = 1; step < n; ++step) {
        int pos = (po + step) % n;
        if (pos == pi) break;
        if (pos == px) return CycleSide::Left;
    }
    return CycleSide::Right;
}

struct Crossing {
    int insert_before;  // path dart index to insert before
    int visit_pos;      // cycle position k: visit at tail(c_k)
    CycleSide entry_side;
};

struct Detection {
    std::vector<Crossing> crossings;
};

Detection detect(const CellSurface& s, const EdgePath& path, const EdgeCycle& cycle) {
    Detection det;
    int plen = path.length();
    int clen = cycle.length();
    if (plen == 0 || clen == 0) return det;

    auto links = oriented_links(s);

    // Match path darts against cycle darts.
    std::map<Id, std::vector<int>> cycle_pos; // edge -> cycle indices
    for (int i = 0; i < clen; ++i) cycle_pos[cycle.dart(i).edge].push_back(i);

    auto match_dir = [&](int j, int i) -> int {
        if (path.darts[j] == cycle.dart(i)) return 1;
        if (path.darts[j] == cycle.dart(i).reversed()) return -1;
        return 0;
    };

    std::vector<bool> in_run(plen, false);

    // Maximal runs, greedy from the left.
    int j = 0;
    while (j < plen) {
        auto it = cycle_pos.find(path.darts[j].edge);
        if (it == cycle_pos.end()) { ++j; continue; }
        // Choose the start match that extends longest.
        int best_len = 0, best_i = -1, best_dir = 0;
        for (int i : it->second) {
            int dir = match_dir(j, i);
            if (dir == 0) continue;
            int len = 1;
            while (j + len < plen && match_dir(j + len, ((i + dir * len) % clen + clen) % clen) == dir)
                ++len;
            if (len > best_len) { best_len = len; best_i = i; best_dir = dir; }
        }
        if (best_len == 0) { ++j; continue; }
        int j0 = j, j1 = j + best_len - 1; // inclusive dart range of the run
        for (int t = j0; t <= j1; ++t) in_run[t] = true;
        j = j1 + 1;

        if (j0 == 0 || j1 == plen - 1) continue; // tangential at an anchor

        // Entry visit.
        int entry_visit =
            best_dir > 0 ? best_i : ((best_i + 1) % clen);
        int exit_visit = best_dir > 0 ? ((best_i + best_dir * best_len) % clen + clen) % clen
                                      : ((best_i - best_len + 1) % clen + clen) % clen;
        // For dir=-1 the run's last dart is reverse(c_m) with m = i-(len-1);
        // exit vertex = tail(c_m) = visit position m.
        Id ventry = s.tail_of(path.darts[j0]);
        Id vexit = s.head_of(path.darts[j1]);

        Visit ev{ventry, incoming_end(cycle.dart(entry_visit - 1)),
                 outgoing_end(cycle.dart(entry_visit))};
        Visit xv{vexit, incoming_end(cycle.dart(exit_visit - 1)),
                 outgoing_end(cycle.dart(exit_visit))};
        CycleSide se = side_of(links.at(ventry), ev, incoming_end(path.darts[j0 - 1]));
        CycleSide sx = side_of(links.at(vexit), xv, outgoing_end(path.darts[j1 + 1]));
        if (se == CycleSide::OnCycle || sx == CycleSide::OnCycle) continue;
        if (se != sx) det.crossings.push_back({j0, entry_visit, se});
    }

    // Vertex-only passes.
    std::map<Id, std::vector<int>> cycle_vertex_visits; // vertex -> visit positions
    for (int i = 0; i < clen; ++i) cycle_vertex_visits[s.tail_of(cycle.dart(i))].push_back(i);

    for (int t = 1; t < plen; ++t) {
        if (in_run[t - 1] || in_run[t]) continue;
        Id v = s.tail_of(path.darts[t]);
        auto it = cycle_vertex_visits.find(v);
        if (it == cycle_vertex_visits.end()) continue;
        for (int k : it->second) {
            Visit vis{v, incoming_end(cycle.dart(k - 1)), outgoing_end(cycle.dart(k))};
            CycleSide se = side_of(links.at(v), vis, incoming_end(path.darts[t - 1]));
            CycleSide sx = side_of(links.at(v), vis, outgoing_end(path.darts[t]));
            if (se == CycleSide::OnCycle || sx == CycleSide::OnCycle) continue;
            if (se != sx) det.crossings.push_back({t, k, se});
        }
    }

    std::sort(det.crossings.begin(), det.crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.insert_before < b.insert_before; });
    return det;
}

std::vector<Dart> cycle_based_at(const EdgeCycle& cycle, int visit, bool forward) {
    std::vector<Dart> out;
    int n = cycle.length();
    if (forward) {
        for (int i = 0; i < n; ++i) out.push_back(cycle.dart(visit + i));
    } else {
        for (int i = 1; i <= n; ++i) out.push_back(cycle.dart(visit - i).reversed());
    }
    return out;
}

} // namespace

EdgePath apply_twist(const CellSurface& s, const EdgePath& path, const EdgeCycle& cycle, int sign) {
    if (sign != 1 && sign != -1) throw PreconditionError("twist sign must be +1 or -1");
    if (!is_closed_chain(s, cycle) || !is_reduced_cycle(cycle))
        throw PreconditionError("twist curve must be a closed reduced cycle");
    for (const Dart& d : cycle.darts)
        if (s.is_boundary_edge(d.edge))
            throw PreconditionError("twist curve meets the boundary (Binding) subcomplex");
    EdgePath p = reduce_path(path);
    if (p.empty()) return p;
    if (!is_chain(s, p)) throw PreconditionError("path is not a chain");

    Detection det = detect(s, p, cycle);
    if (det.crossings.empty()) return p;

    EdgePath out;
    size_t next = 0;
    for (int t = 0; t < p.length(); ++t) {
        while (next < det.crossings.size() && det.crossings[next].insert_before == t) {
            const Crossing& c = det.crossings[next];
            bool forward = (c.entry_side == CycleSide::Left) == (sign > 0);
            auto ins = cycle_based_at(cycle, c.visit_pos, forward);
            out.darts.insert(out.darts.end(), ins.begin(), ins.end());
            ++next;
        }
        out.darts.push_back(p.darts[t]);
    }
    return reduce_path(out);
}

int count_crossings(const CellSurface& s, const EdgePath& path, const EdgeCycle& cycle) {
    EdgePath p = reduce_path(path);
    if (p.empty() || cycle.empty()) return 0;
    return static_cast<int>(detect(s, p, cycle).crossings.size());
}

bool paths_share_cells(const CellSurface& s, const EdgePath& a, const EdgePath& b) {
    std::set<Id> ea, va;
    for (const Dart& d : a.darts) ea.insert(d.edge);
    if (!a.empty()) {
        va.insert(path_start(s, a));
        for (const Dart& d : a.darts) va.insert(s.head_of(d));
    }
    for (const Dart& d : b.darts)
        if (ea.count(d.edge)) return true;
    if (!b.empty()) {
        if (va.count(path_start(s, b))) return true;
        for (const Dart& d : b.darts)
            if (va.count(s.head_of(d))) return true;
    }
    return false;
}

} // namespace fobkit
