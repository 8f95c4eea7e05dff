#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "wfront/geo.hpp"
#include "wfront/rng.hpp"

using namespace wfront;
using geo::GeoPoint;
using geo::GridSpec;
using geo::ScalarField;
using geo::VectorField;

namespace {
GridSpec small_grid() { return GridSpec::from_bounds(0.0, 2.0, 0.0, 2.0, 1.0 / 15.0); }
}

TEST_CASE("great_circle_km basics") {
    CHECK(geo::great_circle_km({10, 20}, {10, 20}) == doctest::Approx(0.0));
    // antipodal
    CHECK(geo::great_circle_km({0, 0}, {180, 0}) ==
          doctest::Approx(M_PI * 6371.0).epsilon(1e-9));
    // one degree along the equator
    CHECK(geo::great_circle_km({0, 0}, {1, 0}) ==
          doctest::Approx(6371.0 * M_PI / 180.0).epsilon(1e-9));
}

TEST_CASE("great_circle_km symmetry and triangle inequality on random triples") {
    Rng rng(42);
    for (int k = 0; k < 200; ++k) {
        const GeoPoint a{rng.uniform(-180, 180), rng.uniform(-80, 80)};
        const GeoPoint b{rng.uniform(-180, 180), rng.uniform(-80, 80)};
        const GeoPoint c{rng.uniform(-180, 180), rng.uniform(-80, 80)};
        const double ab = geo::great_circle_km(a, b);
        const double ba = geo::great_circle_km(b, a);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
        CHECK(ab <= geo::great_circle_km(a, c) + geo::great_circle_km(c, b) + 1e-9 * ab);
    }
}

TEST_CASE("destination/offset round trips") {
    const GeoPoint origin{12.0, 47.0};
    const GeoPoint p = geo::destination(origin, 0.3, 25.0);
    CHECK(geo::great_circle_km(origin, p) == doctest::Approx(25.0).epsilon(1e-9));
    const geo::Vec2 d = geo::local_offset_km(origin, p);
    const GeoPoint q = geo::offset_point(origin, d);
    CHECK(q.lon == doctest::Approx(p.lon).epsilon(1e-12));
    CHECK(q.lat == doctest::Approx(p.lat).epsilon(1e-12));
}

TEST_CASE("distance_to_land") {
    GridSpec spec = small_grid();

    SUBCASE("land maps to zero, adjacent sea one cell away") {
        ScalarField alt = ScalarField::constant(spec, -1.0);
        // a single land column at j=0
        for (int i = 0; i < spec.n_lat; ++i) alt.at(i, 0) = 0.2;
        const ScalarField d = geo::distance_to_land(alt);
        CHECK(d.at(0, 0) == 0.0);
        // sea cell one cell east of land at the equator
        CHECK(d.at(0, 1) == doctest::Approx((1.0 / 15.0) * M_PI / 180.0 * 6371.0)
                                .epsilon(1e-6));  // ~7.413 km
    }

    SUBCASE("uniform land gives all zeros") {
        ScalarField alt = ScalarField::constant(spec, 0.5);
        const ScalarField d = geo::distance_to_land(alt);
        for (double v : d.values) CHECK(v == 0.0);
    }

    SUBCASE("all-sea raster is an error") {
        ScalarField alt = ScalarField::constant(spec, -2.0);
        CHECK_THROWS_WITH_AS(geo::distance_to_land(alt),
                             "distance_to_land: no land in domain", std::runtime_error);
    }
}

TEST_CASE("build_diffusivity matches the closed form") {
    GridSpec spec = GridSpec::from_bounds(0, 1, 25, 26, 0.5);
    spec.n_lat = 2;
    spec.n_lon = 2;

    SUBCASE("land at the tanh midpoint") {
        ScalarField alt = ScalarField::constant(spec, 1.0);
        ScalarField dl = ScalarField::constant(spec, 0.0);
        const ScalarField nu = geo::build_diffusivity(alt, dl);
        CHECK(nu.at(0, 0) == doctest::Approx(0.5).epsilon(1e-12));  // phi=25: factor 1.0
    }

    SUBCASE("sea at the coast") {
        ScalarField alt = ScalarField::constant(spec, -0.1);
        ScalarField dl = ScalarField::constant(spec, 0.0);
        const ScalarField nu = geo::build_diffusivity(alt, dl);
        CHECK(nu.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("mid-altitude land at 45 degrees") {
        GridSpec s45 = GridSpec::from_bounds(0, 1, 45, 46, 0.5);
        ScalarField alt = ScalarField::constant(s45, 0.5);
        ScalarField dl = ScalarField::constant(s45, 0.0);
        const ScalarField nu = geo::build_diffusivity(alt, dl);
        const double expect = 0.8 * (0.5 - 0.5 * std::tanh(-5.0));  // 0.799964
        CHECK(nu.at(0, 0) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(nu.at(0, 0) == doctest::Approx(0.799964).epsilon(1e-5));
    }

    SUBCASE("bounds and latitude monotonicity") {
        GridSpec s = GridSpec::from_bounds(0, 4, 30, 70, 1.0);
        ScalarField alt = ScalarField::constant(s, 0.0);
        ScalarField dl = ScalarField::constant(s, 0.0);
        Rng rng(7);
        for (auto& v : alt.values) v = rng.uniform(-3.0, 3.0);
        for (auto& v : dl.values) v = rng.uniform(0.0, 100.0);
        const ScalarField nu = geo::build_diffusivity(alt, dl);
        for (double v : nu.values) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.25 - 30.0 / 100.0 + 1e-12);
        }
        // same altitude/distance, increasing latitude: non-increasing
        ScalarField alt_c = ScalarField::constant(s, 0.4);
        ScalarField dl_c = ScalarField::constant(s, 0.0);
        const ScalarField nu_c = geo::build_diffusivity(alt_c, dl_c);
        for (int i = 0; i + 1 < s.n_lat; ++i)
            CHECK(nu_c.at(i + 1, 0) <= nu_c.at(i, 0));
    }

    SUBCASE("high altitude kills spread") {
        GridSpec s = GridSpec::from_bounds(0, 1, 40, 41, 0.5);
        ScalarField alt = ScalarField::constant(s, 1.6);
        ScalarField dl = ScalarField::constant(s, 0.0);
        const ScalarField nu = geo::build_diffusivity(alt, dl);
        CHECK(nu.at(0, 0) < 0.01 * (1.25 - 0.40));
    }
}

TEST_CASE("remap_tangents") {
    GridSpec spec = GridSpec::from_bounds(0, 1, 0, 1, 0.25);

    SUBCASE("empty polyline list gives the zero field") {
        const VectorField f = geo::remap_tangents({}, spec);
        for (double v : f.vx) CHECK(v == 0.0);
        for (double v : f.vy) CHECK(v == 0.0);
    }

    SUBCASE("east-west polyline through a node") {
        std::vector<GeoPoint> path = {{-0.5, 0.5}, {1.5, 0.5}};
        const VectorField f = geo::remap_tangents({path}, spec);
        const geo::Vec2 v = geo::bilinear(f, GeoPoint{0.5, 0.5});
        CHECK(v.x == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(v.y == doctest::Approx(0.0).epsilon(1e-9));
    }

    SUBCASE("single data point 15 km away keeps its direction") {
        // tangent (0,1): a short northward chord; data point at the node,
        // so nodes ~15 km away get weight e^-1 and normalize back to (0,1)
        std::vector<GeoPoint> path = {{0.5, 0.25}, {0.5, 0.26}};
        const VectorField f = geo::remap_tangents({path}, spec);
        for (std::size_t idx = 0; idx < f.vx.size(); ++idx) {
            const double norm = std::hypot(f.vx[idx], f.vy[idx]);
            if (norm > 0.0) {
                CHECK(f.vx[idx] == doctest::Approx(0.0).epsilon(1e-9));
                CHECK(f.vy[idx] == doctest::Approx(1.0).epsilon(1e-9));
            }
        }
    }

    SUBCASE("unit-or-zero invariant on crossing paths") {
        std::vector<GeoPoint> east = {{0.0, 0.5}, {1.0, 0.5}};
        std::vector<GeoPoint> north = {{0.5, 0.0}, {0.5, 1.0}};
        const VectorField f = geo::remap_tangents({east, north}, spec);
        for (std::size_t idx = 0; idx < f.vx.size(); ++idx) {
            const double norm = std::hypot(f.vx[idx], f.vy[idx]);
            CHECK((norm == 0.0 || std::fabs(norm - 1.0) < 1e-6));
        }
    }
}

TEST_CASE("bilinear interpolation") {
    GridSpec spec = GridSpec::from_bounds(0, 2, 0, 2, 1.0);
    ScalarField f = ScalarField::constant(spec, 0.0);
    // nodes (lat row i, lon col j)

    SUBCASE("exact at nodes") {
        f.at(1, 1) = 3.5;
        CHECK(geo::bilinear(f, GeoPoint{1.0, 1.0}) == doctest::Approx(3.5));
    }

    SUBCASE("cell center of rows {0,0} and {1,1} is 0.5") {
        f.at(1, 0) = 1.0;
        f.at(1, 1) = 1.0;
        CHECK(geo::bilinear(f, GeoPoint{0.5, 0.5}) == doctest::Approx(0.5));
    }

    SUBCASE("hand-computed weights at (0.25, 0.75)") {
        // row-major cell values {1,2,3,4}: v00=1 v01=2 (south row), v10=3 v11=4
        f.at(0, 0) = 1;
        f.at(0, 1) = 2;
        f.at(1, 0) = 3;
        f.at(1, 1) = 4;
        const double v = geo::bilinear(f, GeoPoint{0.25, 0.75});
        CHECK(v == doctest::Approx(1 * 0.75 * 0.25 + 2 * 0.25 * 0.25 + 3 * 0.75 * 0.75 +
                                   4 * 0.25 * 0.75)
                       .epsilon(1e-12));
        CHECK(v == doctest::Approx(2.75).epsilon(1e-12));
    }

    SUBCASE("exact on affine fields") {
        Rng rng(3);
        const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2), c = rng.uniform(-2, 2);
        for (int i = 0; i < spec.n_lat; ++i)
            for (int j = 0; j < spec.n_lon; ++j)
                f.at(i, j) = a + b * spec.node_lon(j) + c * spec.node_lat(i);
        for (int k = 0; k < 50; ++k) {
            const GeoPoint p{rng.uniform(0, 1.0), rng.uniform(0, 1.0)};
            CHECK(geo::bilinear(f, p) ==
                  doctest::Approx(a + b * p.lon + c * p.lat).epsilon(1e-12));
        }
    }

    SUBCASE("outside the node hull is an error") {
        CHECK_THROWS_AS(geo::bilinear(f, GeoPoint{-0.1, 0.5}), std::out_of_range);
        CHECK_THROWS_AS(geo::bilinear(f, GeoPoint{0.5, 1.5}), std::out_of_range);
    }
}

TEST_CASE("raster round trip") {
    GridSpec spec = GridSpec::from_bounds(10, 12, 40, 41, 0.25);
    ScalarField f = ScalarField::constant(spec, 0.0);
    Rng rng(11);
    for (auto& v : f.values) v = rng.uniform(-5, 5);

    const auto tmp = std::filesystem::temp_directory_path() / "wfront_test_raster.asc";
    geo::save_raster(f, tmp.string());
    const ScalarField g = geo::load_raster(tmp.string());
    CHECK(g.spec.n_lon == spec.n_lon);
    CHECK(g.spec.n_lat == spec.n_lat);
    CHECK(g.spec.lon_min == doctest::Approx(spec.lon_min).epsilon(1e-12));
    CHECK(g.spec.lat_min == doctest::Approx(spec.lat_min).epsilon(1e-12));
    for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(g.values[i] == f.values[i]);
    std::filesystem::remove(tmp);
}

TEST_CASE("polyline round trip") {
    std::vector<std::vector<GeoPoint>> paths = {{{0, 0}, {1, 0.5}, {2, 1}},
                                                {{5, 5}, {5, 6}}};
    const auto tmp = std::filesystem::temp_directory_path() / "wfront_test_paths.csv";
    geo::save_polylines(paths, tmp.string());
    const auto back = geo::load_polylines(tmp.string());
    REQUIRE(back.size() == 2);
    REQUIRE(back[0].size() == 3);
    CHECK(back[0][1].lon == doctest::Approx(1.0));
    CHECK(back[1][1].lat == doctest::Approx(6.0));
    std::filesystem::remove(tmp);
}
