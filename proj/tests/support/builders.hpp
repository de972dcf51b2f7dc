#ifndef FOBKIT_TEST_BUILDERS_HPP
#define FOBKIT_TEST_BUILDERS_HPP

#include <vector>

#include "fobkit/path.hpp"
#include "fobkit/surface.hpp"

namespace fobkit::testing {

/// Disk with one face whose boundary follows `runs` = (label, edge count)
/// in face order; corners inserted at every transition, signs alternating.
CellSurface cornered_disk(const std::vector<std::pair<Label, int>>& runs);

/// Bigon page: one Binding side, one Leaf side, corners +/-.
CellSurface half_disk();

/// Half-disk with subdivided runs so slots exist: Binding run of 2 edges,
/// Leaf run of 3.
CellSurface slotted_half_disk();

/// Ring of n squares; both boundary circles labeled `top`/`bottom`.
CellSurface annulus(int n, Label bottom, Label top);

/// Ring of 2n squares stacked two high, so the core circle exists as an
/// interior edge cycle.  Returns the surface and the core cycle.
struct AnnulusWithCore {
    CellSurface surface;
    EdgeCycle core;
    std::vector<Id> bottom_rungs; // interior vertical edges bottom->mid
    std::vector<Id> top_rungs;    // interior vertical edges mid->top
    std::vector<Id> mid_vertices;
};
AnnulusWithCore annulus_with_core(int n, Label bottom, Label top);

/// Disjoint union; b's cells are renumbered above a's.
CellSurface disjoint_union(const CellSurface& a, const CellSurface& b);

} // namespace fobkit::testing

#endif
