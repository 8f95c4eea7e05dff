#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace wfront::design {

using Point3 = std::array<double, 3>;  // (nu, v_coast, v_river)

struct Bounds3 {
    std::array<std::pair<double, double>, 3> axis;

    // The design box the final round of the sequential strategy settles on:
    // (0,120) x (0,3) x (0,2).
    static Bounds3 paper_box() { return {{{{0, 120}, {0, 3}, {0, 2}}}}; }
};

struct DesignMatrix {
    std::vector<Point3> points;
    Bounds3 bounds;
};

// Best-of-n_candidates maximin Latin hypercube: each candidate places one
// uniform point per stratum per axis with independent random axis
// permutations; the winner maximizes the minimum pairwise Euclidean distance
// in box-normalized coordinates.
DesignMatrix lhd_maximin(int p, const Bounds3& bounds, int n_candidates, std::uint64_t seed);

// Minimum pairwise distance in box-normalized coordinates (the maximin score).
double min_pairwise_distance(const std::vector<Point3>& pts, const Bounds3& bounds);

// Per-axis [min, max] of the samples widened by `margin` of the range on each
// side (by margin*|value| when the range is degenerate), floored at 0.
Bounds3 expand_bounds(const std::vector<Point3>& samples, double margin = 0.25);

}  // namespace wfront::design
