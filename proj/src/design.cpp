#include "wfront/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wfront/rng.hpp"

namespace wfront::design {

double min_pairwise_distance(const std::vector<Point3>& pts, const Bounds3& bounds) {
    std::array<double, 3> width{};
    for (int a = 0; a < 3; ++a) width[a] = bounds.axis[a].second - bounds.axis[a].first;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double d2 = 0.0;
            for (int a = 0; a < 3; ++a) {
                const double d = (pts[i][a] - pts[j][a]) / width[a];
                d2 += d * d;
            }
            best = std::min(best, d2);
        }
    return std::sqrt(best);
}

DesignMatrix lhd_maximin(int p, const Bounds3& bounds, int n_candidates, std::uint64_t seed) {
    if (p < 2) throw std::invalid_argument("lhd_maximin: p must be at least 2");
    if (n_candidates < 1) throw std::invalid_argument("lhd_maximin: need at least one candidate");
    for (const auto& [lo, hi] : bounds.axis)
        if (!(lo < hi)) throw std::invalid_argument("lhd_maximin: invalid bounds");

    Rng rng(seed);
    std::vector<Point3> best;
    double best_score = -1.0;
    std::vector<int> perm(p);
    std::vector<Point3> cand(p);
    for (int c = 0; c < n_candidates; ++c) {
        for (int a = 0; a < 3; ++a) {
            for (int i = 0; i < p; ++i) perm[i] = i;
            for (int i = p - 1; i > 0; --i)
                std::swap(perm[i], perm[rng.uniform_int(static_cast<std::uint64_t>(i) + 1)]);
            const auto [lo, hi] = bounds.axis[a];
            const double w = (hi - lo) / p;
            for (int i = 0; i < p; ++i)
                cand[i][a] = lo + (perm[i] + rng.uniform()) * w;
        }
        const double score = min_pairwise_distance(cand, bounds);
        if (score > best_score) {
            best_score = score;
            best = cand;
        }
    }
    return {std::move(best), bounds};
}

Bounds3 expand_bounds(const std::vector<Point3>& samples, double margin) {
    if (samples.empty()) throw std::invalid_argument("expand_bounds: no samples");
    Bounds3 out;
    for (int a = 0; a < 3; ++a) {
        double lo = samples[0][a], hi = samples[0][a];
        for (const auto& s : samples) {
            lo = std::min(lo, s[a]);
            hi = std::max(hi, s[a]);
        }
        double pad = margin * (hi - lo);
        if (pad == 0.0) pad = margin * std::fabs(hi);
        out.axis[a] = {std::max(0.0, lo - pad), hi + pad};
    }
    return out;
}

}  // namespace wfront::design
