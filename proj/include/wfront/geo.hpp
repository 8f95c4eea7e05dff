#pragma once

#include <string>
#include <vector>

namespace wfront::geo {

// Adopted spherical Earth radius, km.
inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kKmPerDeg = kEarthRadiusKm * M_PI / 180.0;

struct GeoPoint {
    double lon = 0.0;  // degrees east
    double lat = 0.0;  // degrees north
};

// Local east/north offset in km (tangent-plane coordinates).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Regular lon/lat raster. Nodes are registered at
//   lon = lon_min + j*cell,  lat = lat_min + i*cell,
// with i=0 the southernmost row in memory; lon_max/lat_max are the outer
// bounds one cell beyond the last node.
struct GridSpec {
    double lon_min = 0.0;
    double lat_min = 0.0;
    double cell = 1.0 / 15.0;  // degrees; default 4 arc-minutes
    int n_lon = 0;
    int n_lat = 0;

    double lon_max() const { return lon_min + cell * n_lon; }
    double lat_max() const { return lat_min + cell * n_lat; }
    double node_lon(int j) const { return lon_min + cell * j; }
    double node_lat(int i) const { return lat_min + cell * i; }
    // Interpolation domain: the hull of the nodes.
    bool contains(const GeoPoint& p) const {
        return p.lon >= lon_min && p.lon <= node_lon(n_lon - 1) &&
               p.lat >= lat_min && p.lat <= node_lat(n_lat - 1);
    }
    static GridSpec from_bounds(double lon_min, double lon_max, double lat_min,
                                double lat_max, double cell);
};

struct ScalarField {
    GridSpec spec;
    std::vector<double> values;  // row-major, index i*n_lon + j, south to north

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * spec.n_lon + j]; }
    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * spec.n_lon + j]; }
    static ScalarField constant(const GridSpec& spec, double value);
};

// Unit-or-zero vector field (local east/north components).
struct VectorField {
    GridSpec spec;
    std::vector<double> vx;
    std::vector<double> vy;

    static VectorField zero(const GridSpec& spec);
};

double great_circle_km(const GeoPoint& a, const GeoPoint& b);

// Great-circle midpoint (via 3D chord midpoint re-projected to the sphere).
GeoPoint gc_midpoint(const GeoPoint& a, const GeoPoint& b);

// Point at the given great-circle distance along a compass bearing
// (radians, clockwise from north).
GeoPoint destination(const GeoPoint& origin, double bearing_rad, double dist_km);

// Equirectangular east/north offset of p relative to origin, km.
Vec2 local_offset_km(const GeoPoint& origin, const GeoPoint& p);
GeoPoint offset_point(const GeoPoint& origin, const Vec2& d_km);

// For each sea cell (altitude < 0), great-circle distance in km to the
// nearest land cell (altitude >= 0), computed by a multi-source Dijkstra
// sweep over the 8-connected grid. Land cells map to 0.
ScalarField distance_to_land(const ScalarField& altitude);

// Dimensionless diffusivity from altitude (km) and distance-to-land (km):
//   (1.25 - lat/100) * (1/2 - 1/2 tanh{10(a - 1)})   on land (a > 0)
//   (1.25 - lat/100) * exp(-d_land/10)               at sea  (a <= 0)
ScalarField build_diffusivity(const ScalarField& altitude, const ScalarField& d_land);

// Remaps irregular polyline tangents onto the grid: at each node, the
// tangent of every polyline data point contributes with weight
// exp(-d/15 km); the sum is renormalized to unit length (zero below 1e-6).
VectorField remap_tangents(const std::vector<std::vector<GeoPoint>>& polylines,
                           const GridSpec& spec);

double bilinear(const ScalarField& f, const GeoPoint& p);
Vec2 bilinear(const VectorField& f, const GeoPoint& p);

// ESRI-ASCII raster I/O (ncols/nrows/xllcenter|xllcorner/cellsize/
// nodata_value header, then rows north to south).
ScalarField load_raster(const std::string& path);
void save_raster(const ScalarField& f, const std::string& path);

// Polyline CSV: path_id,lon,lat with points ordered along each path.
std::vector<std::vector<GeoPoint>> load_polylines(const std::string& path);
void save_polylines(const std::vector<std::vector<GeoPoint>>& paths, const std::string& path);

}  // namespace wfront::geo
