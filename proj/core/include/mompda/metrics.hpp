#pragma once

#include <span>
#include <vector>

#include "mompda/core.hpp"

namespace mompda {

struct NormalizedPoint {
    double ob1 = 0.0;  // log-scaled makespan
    double ob2 = 0.0;  // rescaled robot count

    bool operator==(const NormalizedPoint&) const = default;
};

// ob1 = (ln makespan - 2 ln 10) / (4 ln 10), ob2 = (m - LBM)/(UBM - LBM).
// Unclamped; penalised makespans land far above 1. Throws std::domain_error
// for non-positive makespans.
NormalizedPoint normalize(const ObjectiveVector& objectives, const RobotBounds& bounds);

// Clamps both coordinates into [0, 1.1] so out-of-range points sit on the
// reference boundary during indicator computation.
NormalizedPoint clamp_to_indicator_box(NormalizedPoint p);

// Mean distance from each reference point to its nearest front point.
// +inf for an empty front.
double igd(std::span<const NormalizedPoint> reference, std::span<const NormalizedPoint> front);

// Exact bi-objective hypervolume against `reference`; points not
// component-wise below the reference are discarded.
double hv(std::span<const NormalizedPoint> front, NormalizedPoint reference);

inline constexpr NormalizedPoint kReferencePoint{1.1, 1.1};

// Non-dominated subset of the union of the archives, duplicates removed.
std::vector<ObjectiveVector> reference_front(std::span<const std::vector<ObjectiveVector>> archives);

}  // namespace mompda
