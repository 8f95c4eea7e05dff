#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wfront/geo.hpp"

namespace wfront::data {

struct DatedSample {
    double t_bc = 0.0;   // calendar years BC (positive)
    double sigma = 0.0;  // years
};

struct SiteRecord {
    std::string site_id;
    std::string name;
    geo::GeoPoint loc;
    std::vector<DatedSample> samples;
    double t_summary = 0.0;      // years BC
    double sigma_summary = 0.0;  // years
    int m = 0;
};

// Precision-weighted site summary:
//   t = sum t_j / sigma_j^2 / sum 1/sigma_j^2,  sigma^2 = 1 / sum 1/sigma_j^2.
std::pair<double, double> summarize(const std::vector<DatedSample>& samples);

// CSV columns: site_id,name,lon,lat,t_bc,sigma — one row per dated object,
// grouped by site_id. An optional sigma floor (years) clamps each object's
// sigma from below before summarizing; 0 disables it.
std::vector<SiteRecord> load_sites(const std::string& path, double sigma_floor = 0.0);

// Years elapsed since the expansion start date (BC counts down to present).
inline double to_elapsed(double t_bc, double start_bc) { return start_bc - t_bc; }

}  // namespace wfront::data
