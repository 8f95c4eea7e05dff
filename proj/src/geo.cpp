#include "wfront/geo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "wfront/io_util.hpp"

namespace wfront::geo {

namespace {
constexpr double kDegToRad = M_PI / 180.0;

struct HeapEntry {
    double dist;
    int cell;
    bool operator>(const HeapEntry& o) const { return dist > o.dist; }
};
}  // namespace

GridSpec GridSpec::from_bounds(double lon_min, double lon_max, double lat_min,
                               double lat_max, double cell) {
    if (cell <= 0.0) throw std::invalid_argument("grid: cell_size must be positive");
    if (lon_min >= lon_max || lat_min >= lat_max)
        throw std::invalid_argument("grid: bounds must be ordered");
    if (lat_min <= -90.0 || lat_max >= 90.0)
        throw std::invalid_argument("grid: latitude bounds must lie in (-90, 90)");
    GridSpec s;
    s.lon_min = lon_min;
    s.lat_min = lat_min;
    s.cell = cell;
    s.n_lon = static_cast<int>(std::lround((lon_max - lon_min) / cell));
    s.n_lat = static_cast<int>(std::lround((lat_max - lat_min) / cell));
    if (s.n_lon < 2 || s.n_lat < 2) throw std::invalid_argument("grid: too few cells");
    return s;
}

ScalarField ScalarField::constant(const GridSpec& spec, double value) {
    ScalarField f;
    f.spec = spec;
    f.values.assign(static_cast<std::size_t>(spec.n_lon) * spec.n_lat, value);
    return f;
}

VectorField VectorField::zero(const GridSpec& spec) {
    VectorField f;
    f.spec = spec;
    f.vx.assign(static_cast<std::size_t>(spec.n_lon) * spec.n_lat, 0.0);
    f.vy.assign(static_cast<std::size_t>(spec.n_lon) * spec.n_lat, 0.0);
    return f;
}

double great_circle_km(const GeoPoint& a, const GeoPoint& b) {
    const double lat1 = a.lat * kDegToRad;
    const double lat2 = b.lat * kDegToRad;
    const double dlat = lat2 - lat1;
    const double dlon = (b.lon - a.lon) * kDegToRad;
    const double sl = std::sin(0.5 * dlat);
    const double so = std::sin(0.5 * dlon);
    double h = sl * sl + std::cos(lat1) * std::cos(lat2) * so * so;
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

namespace {
void to_cartesian(const GeoPoint& p, double out[3]) {
    const double lat = p.lat * kDegToRad;
    const double lon = p.lon * kDegToRad;
    out[0] = std::cos(lat) * std::cos(lon);
    out[1] = std::cos(lat) * std::sin(lon);
    out[2] = std::sin(lat);
}
}  // namespace

GeoPoint gc_midpoint(const GeoPoint& a, const GeoPoint& b) {
    double va[3], vb[3];
    to_cartesian(a, va);
    to_cartesian(b, vb);
    double m[3] = {va[0] + vb[0], va[1] + vb[1], va[2] + vb[2]};
    const double norm = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
    if (norm < 1e-12) return a;  // antipodal, midpoint undefined
    return {std::atan2(m[1], m[0]) / kDegToRad,
            std::asin(m[2] / norm) / kDegToRad};
}

GeoPoint destination(const GeoPoint& origin, double bearing_rad, double dist_km) {
    const double ang = dist_km / kEarthRadiusKm;
    const double lat1 = origin.lat * kDegToRad;
    const double lat2 = std::asin(std::sin(lat1) * std::cos(ang) +
                                  std::cos(lat1) * std::sin(ang) * std::cos(bearing_rad));
    const double lon2 = origin.lon * kDegToRad +
                        std::atan2(std::sin(bearing_rad) * std::sin(ang) * std::cos(lat1),
                                   std::cos(ang) - std::sin(lat1) * std::sin(lat2));
    return {lon2 / kDegToRad, lat2 / kDegToRad};
}

Vec2 local_offset_km(const GeoPoint& origin, const GeoPoint& p) {
    const double coslat = std::cos(origin.lat * kDegToRad);
    return {(p.lon - origin.lon) * coslat * kKmPerDeg,
            (p.lat - origin.lat) * kKmPerDeg};
}

GeoPoint offset_point(const GeoPoint& origin, const Vec2& d_km) {
    const double coslat = std::cos(origin.lat * kDegToRad);
    return {origin.lon + d_km.x / (coslat * kKmPerDeg),
            origin.lat + d_km.y / kKmPerDeg};
}

ScalarField distance_to_land(const ScalarField& altitude) {
    const GridSpec& spec = altitude.spec;
    const int nl = spec.n_lon, nt = spec.n_lat;
    const std::size_t n = static_cast<std::size_t>(nl) * nt;
    ScalarField out = ScalarField::constant(spec, std::numeric_limits<double>::infinity());

    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;
    bool any_land = false;
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < nl; ++j)
            if (altitude.at(i, j) >= 0.0) {
                out.at(i, j) = 0.0;
                heap.push({0.0, i * nl + j});
                any_land = true;
            }
    if (!any_land) throw std::runtime_error("distance_to_land: no land in domain");

    // Multi-source Dijkstra over the 8-connected grid with great-circle edge
    // weights; accuracy is one cell diagonal, enough against the 10 km decay
    // scale of the sea branch.
    while (!heap.empty()) {
        const HeapEntry e = heap.top();
        heap.pop();
        const int i = e.cell / nl, j = e.cell % nl;
        if (e.dist > out.at(i, j)) continue;
        const GeoPoint here{spec.node_lon(j), spec.node_lat(i)};
        for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj) {
                if (di == 0 && dj == 0) continue;
                const int ni = i + di, nj = j + dj;
                if (ni < 0 || ni >= nt || nj < 0 || nj >= nl) continue;
                if (altitude.at(ni, nj) >= 0.0) continue;  // land stays 0
                const GeoPoint there{spec.node_lon(nj), spec.node_lat(ni)};
                const double cand = e.dist + great_circle_km(here, there);
                if (cand < out.at(ni, nj)) {
                    out.at(ni, nj) = cand;
                    heap.push({cand, ni * nl + nj});
                }
            }
    }
    (void)n;
    return out;
}

ScalarField build_diffusivity(const ScalarField& altitude, const ScalarField& d_land) {
    const GridSpec& spec = altitude.spec;
    ScalarField out = ScalarField::constant(spec, 0.0);
    for (int i = 0; i < spec.n_lat; ++i) {
        const double lat_factor = 1.25 - spec.node_lat(i) / 100.0;
        for (int j = 0; j < spec.n_lon; ++j) {
            const double a = altitude.at(i, j);
            double shape;
            if (a > 0.0)
                shape = 0.5 - 0.5 * std::tanh(10.0 * (a - 1.0));
            else
                shape = std::exp(-d_land.at(i, j) / 10.0);
            out.at(i, j) = lat_factor * shape;
        }
    }
    return out;
}

VectorField remap_tangents(const std::vector<std::vector<GeoPoint>>& polylines,
                           const GridSpec& spec) {
    VectorField out = VectorField::zero(spec);

    struct TangentPoint {
        GeoPoint pos;
        double tx, ty;
    };
    std::vector<TangentPoint> data;
    for (const auto& path : polylines) {
        if (path.size() < 2)
            throw std::invalid_argument("remap_tangents: polyline needs at least 2 points");
        for (std::size_t k = 0; k + 1 < path.size(); ++k) {
            const Vec2 chord = local_offset_km(path[k], path[k + 1]);
            const double norm = std::hypot(chord.x, chord.y);
            if (norm < 1e-12) continue;  // repeated point, no direction
            data.push_back({path[k], chord.x / norm, chord.y / norm});
        }
    }

    // exp(-d/15) is below 1e-9 past ~311 km; restrict each data point to the
    // nodes inside that window.
    constexpr double kScaleKm = 15.0;
    constexpr double kCutoffKm = 311.0;
    for (const auto& tp : data) {
        const double dlat = kCutoffKm / kKmPerDeg;
        const double coslat = std::cos(tp.pos.lat * kDegToRad);
        const double dlon = kCutoffKm / (kKmPerDeg * std::max(coslat, 0.05));
        const int i0 = std::max(0, static_cast<int>(std::floor((tp.pos.lat - dlat - spec.lat_min) / spec.cell)));
        const int i1 = std::min(spec.n_lat - 1, static_cast<int>(std::ceil((tp.pos.lat + dlat - spec.lat_min) / spec.cell)));
        const int j0 = std::max(0, static_cast<int>(std::floor((tp.pos.lon - dlon - spec.lon_min) / spec.cell)));
        const int j1 = std::min(spec.n_lon - 1, static_cast<int>(std::ceil((tp.pos.lon + dlon - spec.lon_min) / spec.cell)));
        for (int i = i0; i <= i1; ++i)
            for (int j = j0; j <= j1; ++j) {
                const GeoPoint node{spec.node_lon(j), spec.node_lat(i)};
                const double d = great_circle_km(node, tp.pos);
                if (d > kCutoffKm) continue;
                const double w = std::exp(-d / kScaleKm);
                const std::size_t idx = static_cast<std::size_t>(i) * spec.n_lon + j;
                out.vx[idx] += w * tp.tx;
                out.vy[idx] += w * tp.ty;
            }
    }

    for (std::size_t idx = 0; idx < out.vx.size(); ++idx) {
        const double norm = std::hypot(out.vx[idx], out.vy[idx]);
        if (norm < 1e-6) {
            out.vx[idx] = 0.0;
            out.vy[idx] = 0.0;
        } else {
            out.vx[idx] /= norm;
            out.vy[idx] /= norm;
        }
    }
    return out;
}

namespace {
struct CellWeights {
    int i0, j0;
    double fx, fy;  // fractional offsets within the cell (lon, lat)
};

CellWeights locate(const GridSpec& spec, const GeoPoint& p) {
    if (!spec.contains(p)) {
        std::ostringstream ss;
        ss << "bilinear: point (" << p.lon << ", " << p.lat << ") outside grid";
        throw std::out_of_range(ss.str());
    }
    double gj = (p.lon - spec.lon_min) / spec.cell;
    double gi = (p.lat - spec.lat_min) / spec.cell;
    int j0 = std::min(static_cast<int>(gj), spec.n_lon - 2);
    int i0 = std::min(static_cast<int>(gi), spec.n_lat - 2);
    j0 = std::max(j0, 0);
    i0 = std::max(i0, 0);
    return {i0, j0, gj - j0, gi - i0};
}
}  // namespace

double bilinear(const ScalarField& f, const GeoPoint& p) {
    const CellWeights w = locate(f.spec, p);
    const double v00 = f.at(w.i0, w.j0), v01 = f.at(w.i0, w.j0 + 1);
    const double v10 = f.at(w.i0 + 1, w.j0), v11 = f.at(w.i0 + 1, w.j0 + 1);
    return v00 * (1 - w.fx) * (1 - w.fy) + v01 * w.fx * (1 - w.fy) +
           v10 * (1 - w.fx) * w.fy + v11 * w.fx * w.fy;
}

Vec2 bilinear(const VectorField& f, const GeoPoint& p) {
    const CellWeights w = locate(f.spec, p);
    const auto idx = [&](int i, int j) { return static_cast<std::size_t>(i) * f.spec.n_lon + j; };
    const double w00 = (1 - w.fx) * (1 - w.fy), w01 = w.fx * (1 - w.fy);
    const double w10 = (1 - w.fx) * w.fy, w11 = w.fx * w.fy;
    Vec2 v;
    v.x = f.vx[idx(w.i0, w.j0)] * w00 + f.vx[idx(w.i0, w.j0 + 1)] * w01 +
          f.vx[idx(w.i0 + 1, w.j0)] * w10 + f.vx[idx(w.i0 + 1, w.j0 + 1)] * w11;
    v.y = f.vy[idx(w.i0, w.j0)] * w00 + f.vy[idx(w.i0, w.j0 + 1)] * w01 +
          f.vy[idx(w.i0 + 1, w.j0)] * w10 + f.vy[idx(w.i0 + 1, w.j0 + 1)] * w11;
    return v;
}

ScalarField load_raster(const std::string& path) {
    std::istringstream in(io::read_file(path));
    std::string key;
    long ncols = -1, nrows = -1;
    double xll = 0, yll = 0, cell = 0, nodata = -9999;
    bool x_is_center = false, y_is_center = false;
    for (int k = 0; k < 6; ++k) {
        if (!(in >> key)) throw std::runtime_error(path + ": truncated raster header");
        std::string lower;
        for (char c : key) lower += static_cast<char>(std::tolower(c));
        if (lower == "ncols") in >> ncols;
        else if (lower == "nrows") in >> nrows;
        else if (lower == "xllcorner") in >> xll;
        else if (lower == "xllcenter") { in >> xll; x_is_center = true; }
        else if (lower == "yllcorner") in >> yll;
        else if (lower == "yllcenter") { in >> yll; y_is_center = true; }
        else if (lower == "cellsize") in >> cell;
        else if (lower == "nodata_value") { in >> nodata; --k; continue; }
        else throw std::runtime_error(path + ": unknown raster header key '" + key + "'");
    }
    // nodata_value may follow the six mandatory keys
    std::streampos mark = in.tellg();
    if (in >> key) {
        std::string lower;
        for (char c : key) lower += static_cast<char>(std::tolower(c));
        if (lower == "nodata_value") in >> nodata;
        else in.seekg(mark);
    } else {
        in.clear();
        in.seekg(mark);
    }
    if (ncols < 2 || nrows < 2 || cell <= 0)
        throw std::runtime_error(path + ": invalid raster dimensions");

    ScalarField f;
    f.spec.cell = cell;
    f.spec.n_lon = static_cast<int>(ncols);
    f.spec.n_lat = static_cast<int>(nrows);
    f.spec.lon_min = x_is_center ? xll : xll + 0.5 * cell;
    f.spec.lat_min = y_is_center ? yll : yll + 0.5 * cell;
    f.values.assign(static_cast<std::size_t>(ncols) * nrows, 0.0);
    // file rows run north to south
    for (long r = 0; r < nrows; ++r) {
        const long i = nrows - 1 - r;
        for (long j = 0; j < ncols; ++j) {
            double v;
            if (!(in >> v)) throw std::runtime_error(path + ": truncated raster data");
            f.values[static_cast<std::size_t>(i) * ncols + j] = v;
        }
    }
    (void)nodata;
    return f;
}

void save_raster(const ScalarField& f, const std::string& path) {
    std::ostringstream out;
    out << "ncols " << f.spec.n_lon << "\n";
    out << "nrows " << f.spec.n_lat << "\n";
    out << "xllcenter " << io::fmt_double(f.spec.lon_min) << "\n";
    out << "yllcenter " << io::fmt_double(f.spec.lat_min) << "\n";
    out << "cellsize " << io::fmt_double(f.spec.cell) << "\n";
    out << "nodata_value -9999\n";
    for (int r = 0; r < f.spec.n_lat; ++r) {
        const int i = f.spec.n_lat - 1 - r;
        for (int j = 0; j < f.spec.n_lon; ++j) {
            if (j) out << ' ';
            out << io::fmt_double(f.at(i, j));
        }
        out << "\n";
    }
    io::write_file(path, out.str());
}

std::vector<std::vector<GeoPoint>> load_polylines(const std::string& path) {
    std::istringstream in(io::read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty polyline file");
    std::vector<std::vector<GeoPoint>> paths;
    std::string current_id;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = io::split_csv(line);
        if (fields.size() != 3)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected path_id,lon,lat");
        const std::string ctx = path + ":" + std::to_string(lineno);
        GeoPoint p{io::parse_double(fields[1], ctx), io::parse_double(fields[2], ctx)};
        if (paths.empty() || fields[0] != current_id) {
            current_id = fields[0];
            paths.emplace_back();
        }
        paths.back().push_back(p);
    }
    return paths;
}

void save_polylines(const std::vector<std::vector<GeoPoint>>& paths, const std::string& path) {
    std::ostringstream out;
    out << "path_id,lon,lat\n";
    for (std::size_t k = 0; k < paths.size(); ++k)
        for (const auto& p : paths[k])
            out << k << ',' << io::fmt_double(p.lon) << ',' << io::fmt_double(p.lat) << "\n";
    io::write_file(path, out.str());
}

}  // namespace wfront::geo
