#include "mompda/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mompda {

NormalizedPoint normalize(const ObjectiveVector& objectives, const RobotBounds& bounds) {
    if (!(objectives.makespan > 0.0)) throw std::domain_error("normalize: makespan must be positive");
    const double ln10 = std::log(10.0);
    NormalizedPoint p;
    p.ob1 = (std::log(objectives.makespan) - 2.0 * ln10) / (4.0 * ln10);
    const int denom = bounds.ubm - bounds.lbm;
    p.ob2 = denom == 0 ? 0.0 : static_cast<double>(objectives.robot_count - bounds.lbm) / denom;
    return p;
}

NormalizedPoint clamp_to_indicator_box(NormalizedPoint p) {
    p.ob1 = std::clamp(p.ob1, 0.0, 1.1);
    p.ob2 = std::clamp(p.ob2, 0.0, 1.1);
    return p;
}

double igd(std::span<const NormalizedPoint> reference, std::span<const NormalizedPoint> front) {
    if (reference.empty()) throw std::invalid_argument("igd: reference set is empty");
    if (front.empty()) return std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (const NormalizedPoint& r : reference) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const NormalizedPoint& f : front)
            nearest = std::min(nearest, std::hypot(r.ob1 - f.ob1, r.ob2 - f.ob2));
        total += nearest;
    }
    return total / static_cast<double>(reference.size());
}

double hv(std::span<const NormalizedPoint> front, NormalizedPoint reference) {
    std::vector<NormalizedPoint> points;
    points.reserve(front.size());
    for (const NormalizedPoint& p : front)
        if (p.ob1 <= reference.ob1 && p.ob2 <= reference.ob2) points.push_back(p);
    if (points.empty()) return 0.0;

    // Sweep left to right over the non-dominated staircase.
    std::sort(points.begin(), points.end(), [](const NormalizedPoint& a, const NormalizedPoint& b) {
        if (a.ob1 != b.ob1) return a.ob1 < b.ob1;
        return a.ob2 < b.ob2;
    });
    double volume = 0.0;
    double ceiling = reference.ob2;
    for (const NormalizedPoint& p : points) {
        if (p.ob2 >= ceiling) continue;  // dominated, adds nothing
        volume += (reference.ob1 - p.ob1) * (ceiling - p.ob2);
        ceiling = p.ob2;
    }
    return volume;
}

std::vector<ObjectiveVector> reference_front(std::span<const std::vector<ObjectiveVector>> archives) {
    std::vector<ObjectiveVector> pool;
    for (const auto& archive : archives) pool.insert(pool.end(), archive.begin(), archive.end());
    if (pool.empty()) throw std::invalid_argument("reference_front: all archives are empty");

    std::sort(pool.begin(), pool.end(), [](const ObjectiveVector& a, const ObjectiveVector& b) {
        if (a.robot_count != b.robot_count) return a.robot_count < b.robot_count;
        return a.makespan < b.makespan;
    });
    std::vector<ObjectiveVector> front;
    double best_makespan = std::numeric_limits<double>::infinity();
    for (const ObjectiveVector& p : pool) {
        if (!front.empty() && front.back().robot_count == p.robot_count) continue;  // keep min makespan per count
        if (p.makespan < best_makespan) {
            front.push_back(p);
            best_makespan = p.makespan;
        }
    }
    return front;
}

}  // namespace mompda
