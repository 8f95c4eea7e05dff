#pragma once

#include <cstdint>
#include <vector>

#include "wfront/geo.hpp"

namespace wfront::front {

struct WaveParams {
    double nu = 15.0;       // km^2/year, dimensional diffusivity magnitude
    double v_coast = 0.0;   // km/year
    double v_river = 0.0;   // km/year
    double gamma = 0.02;    // 1/year, fixed per run
};

// Ordered closed chain of marker particles. Traversal i -> i+1 (mod n) is
// kept counterclockwise as seen from outside the sphere; particles that left
// the grid are frozen in place but keep their slot in the loop.
struct Front {
    std::vector<geo::GeoPoint> pts;
    std::vector<std::uint8_t> frozen;
    double delta_deg = 1.0 / 15.0;  // target spacing, degrees of arc

    std::size_t size() const { return pts.size(); }
};

struct SimConfig {
    geo::GeoPoint source{37.1, 41.1};
    double start_radius_km = 10.0;
    int n_init = 16;
    double dt = 1.0;        // years; upper bound, shortened by the stability rule
    double t_max = 8000.0;  // years since the source date
    std::vector<geo::GeoPoint> sites;
    double hit_radius_km = 0.0;  // 0: delta in km at the site's latitude
    double delta_deg = 1.0 / 15.0;
};

struct EnvFields {
    geo::ScalarField diffusivity;  // dimensionless nu_L
    geo::VectorField coast;
    geo::VectorField river;

    static EnvFields homogeneous(const geo::GridSpec& spec, double nu_l = 1.0);
};

struct ArrivalRecord {
    std::vector<double> time;  // years since source date; NaN when unreached
    std::vector<std::uint8_t> reached;
};

struct RunResult {
    ArrivalRecord arrivals;
    long steps = 0;
    int excised_loops = 0;
    double t_start = 0.0;  // clock offset start_radius / U(source)
    double t_end = 0.0;
};

// Spacing target in km at a given latitude (delta is stored in degrees of
// arc; the km equivalent follows the local longitude arc length).
double delta_km(double delta_deg, double lat);

Front init_front(const SimConfig& config, const geo::GridSpec& spec);

// Unit outward normals in the local east/north tangent plane, one per
// particle, from the perpendicular of the neighbor chord.
std::vector<geo::Vec2> normals(const Front& f);

// Local front velocity u = U n + V, with U = 2 sqrt(gamma nu nu_L) and
// V = v_c sgn(n.Vc) Vc + v_r sgn(n.Vr) Vr, fields bilinearly interpolated.
std::vector<geo::Vec2> velocities(const Front& f, const EnvFields& env,
                                  const WaveParams& params);

// Displaces each particle by v*dt in its tangent plane; particles that would
// leave the grid are frozen instead.
void advance(Front& f, const std::vector<geo::Vec2>& vel, double dt,
             const geo::GridSpec& spec);

void step(Front& f, const EnvFields& env, const WaveParams& params, double dt);

// Midpoint insertion above delta, removal of one of any neighbor pair below
// delta/2, then a final insertion sweep so no gap exceeds delta.
void resample(Front& f);

// Rewires the ordering wherever two non-neighbor particles approach within
// delta, excising the pinched-off loop; the loop holding the particle
// farthest from `source` (the advancing front) is retained. Returns the
// number of loops dropped.
int reconnect(Front& f, const geo::GeoPoint& source);

// Signed loop area in km^2 (positive = counterclockwise).
double signed_area_km2(const Front& f);
void orient_ccw(Front& f);

RunResult run_simulation(const EnvFields& env, const WaveParams& params,
                         const SimConfig& config);

}  // namespace wfront::front
