#include "wfront/front.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace wfront::front {

using geo::GeoPoint;
using geo::Vec2;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline int sgn(double x) { return (x > 0.0) - (x < 0.0); }

// Spatial hash over particle positions, cell size delta_deg. Any pair within
// delta km lies within one cell in each direction (delta km spans at most
// delta_deg in longitude and delta_deg*cos(lat) in latitude).
class ParticleHash {
public:
    ParticleHash(const std::vector<GeoPoint>& pts, double cell_deg) : cell_(cell_deg) {
        buckets_.reserve(pts.size() * 2);
        for (std::size_t i = 0; i < pts.size(); ++i)
            buckets_[key(pts[i])].push_back(static_cast<int>(i));
    }

    template <typename Fn>
    void for_neighborhood(const GeoPoint& p, int rings, Fn&& fn) const {
        const long long qx = qlon(p.lon), qy = qlat(p.lat);
        for (long long dy = -rings; dy <= rings; ++dy)
            for (long long dx = -rings; dx <= rings; ++dx) {
                auto it = buckets_.find(pack(qx + dx, qy + dy));
                if (it == buckets_.end()) continue;
                for (int idx : it->second) fn(idx);
            }
    }

private:
    long long qlon(double lon) const { return static_cast<long long>(std::floor(lon / cell_)); }
    long long qlat(double lat) const { return static_cast<long long>(std::floor(lat / cell_)); }
    static std::uint64_t pack(long long x, long long y) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
               static_cast<std::uint32_t>(y);
    }
    std::uint64_t key(const GeoPoint& p) const { return pack(qlon(p.lon), qlat(p.lat)); }

    double cell_;
    std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
};

double point_segment_dist(const Vec2& a, const Vec2& b) {
    // distance from the origin to segment a-b
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(-(a.x * dx + a.y * dy) / len2, 0.0, 1.0);
    return std::hypot(a.x + t * dx, a.y + t * dy);
}

}  // namespace

double delta_km(double delta_deg, double lat) {
    return delta_deg * geo::kKmPerDeg * std::cos(lat * M_PI / 180.0);
}

EnvFields EnvFields::homogeneous(const geo::GridSpec& spec, double nu_l) {
    return {geo::ScalarField::constant(spec, nu_l), geo::VectorField::zero(spec),
            geo::VectorField::zero(spec)};
}

Front init_front(const SimConfig& config, const geo::GridSpec& spec) {
    if (!spec.contains(config.source))
        throw std::invalid_argument("init_front: source outside grid");
    if (config.n_init < 4) throw std::invalid_argument("init_front: need n_init >= 4");
    Front f;
    f.delta_deg = config.delta_deg;
    f.pts.reserve(config.n_init);
    for (int k = 0; k < config.n_init; ++k) {
        // counterclockwise in the east/north plane
        const double phi = 2.0 * M_PI * k / config.n_init;
        const double bearing = 0.5 * M_PI - phi;
        f.pts.push_back(geo::destination(config.source, bearing, config.start_radius_km));
    }
    f.frozen.assign(f.pts.size(), 0);
    for (std::size_t i = 0; i < f.pts.size(); ++i)
        if (!spec.contains(f.pts[i])) f.frozen[i] = 1;
    return f;
}

std::vector<Vec2> normals(const Front& f) {
    const std::size_t n = f.size();
    if (n < 4) throw std::runtime_error("normals: front has fewer than 4 particles");
    std::vector<Vec2> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const GeoPoint& prev = f.pts[(i + n - 1) % n];
        const GeoPoint& next = f.pts[(i + 1) % n];
        const Vec2 to_next = geo::local_offset_km(f.pts[i], next);
        const Vec2 to_prev = geo::local_offset_km(f.pts[i], prev);
        Vec2 chord{to_next.x - to_prev.x, to_next.y - to_prev.y};
        double len = std::hypot(chord.x, chord.y);
        if (len < 1e-9) {
            // hairpin: prev and next coincide; fall back to the outgoing edge
            chord = to_next;
            len = std::hypot(chord.x, chord.y);
            if (len < 1e-9)
                throw std::runtime_error(
                    "normals: degenerate neighbor chord (coincident particles)");
        }
        // right-hand perpendicular of the traversal direction: outward for a
        // counterclockwise loop
        out[i] = {chord.y / len, -chord.x / len};
    }
    return out;
}

std::vector<Vec2> velocities(const Front& f, const EnvFields& env, const WaveParams& params) {
    const std::vector<Vec2> nrm = normals(f);
    std::vector<Vec2> out(f.size(), Vec2{0.0, 0.0});
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.frozen[i]) continue;
        const GeoPoint& p = f.pts[i];
        const double nu_l = std::max(0.0, geo::bilinear(env.diffusivity, p));
        const double speed = 2.0 * std::sqrt(params.gamma * params.nu * nu_l);
        Vec2 u{speed * nrm[i].x, speed * nrm[i].y};
        if (params.v_coast != 0.0) {
            const Vec2 vc = geo::bilinear(env.coast, p);
            const double s = sgn(nrm[i].x * vc.x + nrm[i].y * vc.y) * params.v_coast;
            u.x += s * vc.x;
            u.y += s * vc.y;
        }
        if (params.v_river != 0.0) {
            const Vec2 vr = geo::bilinear(env.river, p);
            const double s = sgn(nrm[i].x * vr.x + nrm[i].y * vr.y) * params.v_river;
            u.x += s * vr.x;
            u.y += s * vr.y;
        }
        out[i] = u;
    }
    return out;
}

void advance(Front& f, const std::vector<Vec2>& vel, double dt, const geo::GridSpec& spec) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.frozen[i]) continue;
        const GeoPoint next =
            geo::offset_point(f.pts[i], {vel[i].x * dt, vel[i].y * dt});
        if (!spec.contains(next)) {
            f.frozen[i] = 1;
            continue;
        }
        f.pts[i] = next;
    }
}

void step(Front& f, const EnvFields& env, const WaveParams& params, double dt) {
    advance(f, velocities(f, env, params), dt, env.diffusivity.spec);
}

void resample(Front& f) {
    const auto gap_limit = [&](const GeoPoint& a, const GeoPoint& b) {
        return delta_km(f.delta_deg, 0.5 * (a.lat + b.lat));
    };

    const auto insert_pass = [&]() {
        bool inserted = false;
        std::vector<GeoPoint> pts;
        std::vector<std::uint8_t> frozen;
        pts.reserve(f.size() * 2);
        frozen.reserve(f.size() * 2);
        const std::size_t n = f.size();
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = (i + 1) % n;
            pts.push_back(f.pts[i]);
            frozen.push_back(f.frozen[i]);
            if (geo::great_circle_km(f.pts[i], f.pts[j]) > gap_limit(f.pts[i], f.pts[j])) {
                pts.push_back(geo::gc_midpoint(f.pts[i], f.pts[j]));
                frozen.push_back(f.frozen[i] && f.frozen[j]);
                inserted = true;
            }
        }
        f.pts = std::move(pts);
        f.frozen = std::move(frozen);
        return inserted;
    };

    for (int pass = 0; pass < 32 && insert_pass(); ++pass) {}

    // removal: drop the follower of any neighbor pair closer than delta/2
    if (f.size() > 4) {
        std::vector<GeoPoint> pts;
        std::vector<std::uint8_t> frozen;
        pts.push_back(f.pts[0]);
        frozen.push_back(f.frozen[0]);
        for (std::size_t i = 1; i < f.size(); ++i) {
            if (f.size() - i + pts.size() <= 4) {
                // keep the remainder: the loop may not shrink below 4
                pts.push_back(f.pts[i]);
                frozen.push_back(f.frozen[i]);
                continue;
            }
            const double d = geo::great_circle_km(pts.back(), f.pts[i]);
            if (d < 0.5 * gap_limit(pts.back(), f.pts[i])) continue;
            pts.push_back(f.pts[i]);
            frozen.push_back(f.frozen[i]);
        }
        // wrap-around pair
        if (pts.size() > 4 &&
            geo::great_circle_km(pts.back(), pts.front()) <
                0.5 * gap_limit(pts.back(), pts.front())) {
            pts.pop_back();
            frozen.pop_back();
        }
        f.pts = std::move(pts);
        f.frozen = std::move(frozen);
    }

    for (int pass = 0; pass < 32 && insert_pass(); ++pass) {}
}

double signed_area_km2(const Front& f) {
    GeoPoint centroid{0.0, 0.0};
    for (const auto& p : f.pts) {
        centroid.lon += p.lon;
        centroid.lat += p.lat;
    }
    centroid.lon /= f.size();
    centroid.lat /= f.size();
    double area2 = 0.0;
    Vec2 prev = geo::local_offset_km(centroid, f.pts.back());
    for (const auto& p : f.pts) {
        const Vec2 cur = geo::local_offset_km(centroid, p);
        area2 += prev.x * cur.y - cur.x * prev.y;
        prev = cur;
    }
    return 0.5 * area2;
}

void orient_ccw(Front& f) {
    if (signed_area_km2(f) < 0.0) {
        std::reverse(f.pts.begin(), f.pts.end());
        std::reverse(f.frozen.begin(), f.frozen.end());
    }
}

int reconnect(Front& f, const GeoPoint& source) {
    int excised = 0;
    for (int event = 0; event < 1000; ++event) {
        const std::size_t n = f.size();
        if (n < 8) break;
        const ParticleHash hash(f.pts, f.delta_deg);

        // globally closest non-neighbor pair within delta (skip pairs fewer
        // than 3 slots apart along the chain: a tight local curve is not a
        // collision)
        int best_i = -1, best_j = -1;
        double best_d = kInf;
        for (std::size_t i = 0; i < n; ++i) {
            hash.for_neighborhood(f.pts[i], 1, [&](int j) {
                if (j <= static_cast<int>(i)) return;
                const std::size_t gap =
                    std::min<std::size_t>(j - i, n - (j - i));
                if (gap <= 2) return;
                const double lim =
                    delta_km(f.delta_deg, 0.5 * (f.pts[i].lat + f.pts[j].lat));
                const double d = geo::great_circle_km(f.pts[i], f.pts[j]);
                if (d < lim && (d < best_d || (d == best_d && static_cast<int>(i) < best_i))) {
                    best_d = d;
                    best_i = static_cast<int>(i);
                    best_j = j;
                }
            });
        }
        if (best_i < 0) break;

        // split the ring at the close pair: loop A = [i+1 .. j] with edge
        // j -> i+1, loop B = [j+1 .. i] with edge i -> j+1
        const auto slice = [&](std::size_t from, std::size_t to) {
            Front part;
            part.delta_deg = f.delta_deg;
            for (std::size_t k = from;; k = (k + 1) % n) {
                part.pts.push_back(f.pts[k]);
                part.frozen.push_back(f.frozen[k]);
                if (k == to) break;
            }
            return part;
        };
        Front loop_a = slice(static_cast<std::size_t>(best_i) + 1, best_j);
        Front loop_b = slice((best_j + 1) % n, best_i);

        // keep the loop holding the particle farthest from the source
        double far_a = 0.0, far_b = 0.0;
        for (const auto& p : loop_a.pts) far_a = std::max(far_a, geo::great_circle_km(source, p));
        for (const auto& p : loop_b.pts) far_b = std::max(far_b, geo::great_circle_km(source, p));
        f = far_a >= far_b ? std::move(loop_a) : std::move(loop_b);
        ++excised;
        if (f.size() >= 4) orient_ccw(f);
    }
    return excised;
}

RunResult run_simulation(const EnvFields& env, const WaveParams& params,
                         const SimConfig& config) {
    const geo::GridSpec& spec = env.diffusivity.spec;
    if (!spec.contains(config.source))
        throw std::invalid_argument("run_simulation: source outside grid");
    const double nu_l0 = geo::bilinear(env.diffusivity, config.source);
    const double u0 = 2.0 * std::sqrt(params.gamma * params.nu * std::max(nu_l0, 0.0));
    if (u0 <= 0.0)
        throw std::runtime_error("run_simulation: zero front speed at the source");

    RunResult res;
    // the front notionally leaves the source at time zero and reaches the
    // seed circle at start_radius / U
    res.t_start = config.start_radius_km / u0;

    Front f = init_front(config, spec);
    orient_ccw(f);

    const std::size_t n_sites = config.sites.size();
    res.arrivals.time.assign(n_sites, std::numeric_limits<double>::quiet_NaN());
    res.arrivals.reached.assign(n_sites, 0);
    std::vector<double> hit_radius(n_sites);
    std::vector<double> dist_prev(n_sites, kInf);
    std::size_t n_hit = 0;

    for (std::size_t s = 0; s < n_sites; ++s)
        hit_radius[s] = config.hit_radius_km > 0.0
                            ? config.hit_radius_km
                            : delta_km(config.delta_deg, config.sites[s].lat);

    // distance from a site to the nearby portion of the front
    const auto site_distance = [&](const ParticleHash& hash, std::size_t s,
                                   double window_km) {
        const GeoPoint& site = config.sites[s];
        const double window_deg =
            window_km / (geo::kKmPerDeg * std::cos(site.lat * M_PI / 180.0));
        const int rings = std::max(1, static_cast<int>(std::ceil(window_deg / f.delta_deg)));
        double best = kInf;
        const std::size_t n = f.size();
        hash.for_neighborhood(site, rings, [&](int idx) {
            for (int which = 0; which < 2; ++which) {
                const std::size_t a = which ? idx : (idx + n - 1) % n;
                const std::size_t b = (a + 1) % n;
                const double d = point_segment_dist(geo::local_offset_km(site, f.pts[a]),
                                                    geo::local_offset_km(site, f.pts[b]));
                best = std::min(best, d);
            }
        });
        return best;
    };

    // a site inside the seed circle is swept from the start
    {
        const ParticleHash hash(f.pts, f.delta_deg);
        for (std::size_t s = 0; s < n_sites; ++s) {
            const double d0 = geo::great_circle_km(config.source, config.sites[s]);
            const double dist = site_distance(hash, s, hit_radius[s] * 2.0 + 10.0);
            if (d0 <= config.start_radius_km || dist <= hit_radius[s]) {
                res.arrivals.time[s] = res.t_start;
                res.arrivals.reached[s] = 1;
                ++n_hit;
            } else {
                dist_prev[s] = dist;
            }
        }
    }

    const double lat_extreme =
        std::max(std::fabs(spec.lat_min), std::fabs(spec.lat_max()));
    const double delta_min_km = delta_km(config.delta_deg, lat_extreme);

    double t = res.t_start;
    constexpr long kMaxSteps = 2'000'000;
    while (t < config.t_max && n_hit < n_sites) {
        if (res.steps >= kMaxSteps) break;
        const std::vector<Vec2> vel = velocities(f, env, params);
        double u_max = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (!f.frozen[i]) u_max = std::max(u_max, std::hypot(vel[i].x, vel[i].y));
        if (u_max <= 0.0) break;  // fully stalled front

        double dt = std::min(config.dt, 0.5 * delta_min_km / u_max);
        dt = std::min(dt, config.t_max - t);
        advance(f, vel, dt, spec);
        resample(f);
        res.excised_loops += reconnect(f, config.source);
        t += dt;
        ++res.steps;

        const ParticleHash hash(f.pts, f.delta_deg);
        const double window = 2.0 * delta_km(config.delta_deg, 0.0) + 2.0 * u_max * dt;
        for (std::size_t s = 0; s < n_sites; ++s) {
            if (res.arrivals.reached[s]) continue;
            const double dist = site_distance(hash, s, hit_radius[s] + window);
            if (dist <= hit_radius[s]) {
                // extrapolate the closing distance to zero: the moment the
                // front itself sweeps the site
                double tau = t;
                if (std::isfinite(dist_prev[s]) && dist_prev[s] > dist)
                    tau = (t - dt) + dt * dist_prev[s] / (dist_prev[s] - dist);
                res.arrivals.time[s] = tau;
                res.arrivals.reached[s] = 1;
                ++n_hit;
            } else {
                dist_prev[s] = dist;
            }
        }
        if (f.size() < 4) break;
    }
    res.t_end = t;
    return res;
}

}  // namespace wfront::front
