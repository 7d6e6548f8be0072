#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cubical/measure.hpp"
#include "cubical/quadrature.hpp"
#include "cubical/shapes.hpp"

using namespace cubical;
using shapes::Shape;

namespace {

Shape unit_disk() { return Shape(shapes::Disk{{0.0, 0.0}, 1.0}); }

Shape two_tangent_circles() {
  shapes::BallUnion bu;
  bu.centers = {VecN{-1.0, 0.0}, VecN{1.0, 0.0}};
  bu.radii = {1.0};
  return Shape(bu);
}

}  // namespace

TEST_CASE("quadrature brackets enclose analytic areas") {
  const auto disk = quadrature::volume_bracket(unit_disk(), 10);
  CHECK(disk.lo <= kPi);
  CHECK(disk.hi >= kPi);
  CHECK(disk.width() < 0.02);

  shapes::BallUnion bu;
  bu.centers = {VecN{0.0, 0.0}, VecN{3.0, 0.0}};  // disjoint
  bu.radii = {1.0};
  const auto two = quadrature::volume_bracket(Shape(bu), 10);
  CHECK(two.lo <= 2.0 * kPi);
  CHECK(two.hi >= 2.0 * kPi);

  const Shape sq(shapes::Polygon{{{0.1, 0.1}, {0.9, 0.1}, {0.9, 0.7}, {0.1, 0.7}}});
  const auto rect = quadrature::volume_bracket(sq, 10);
  CHECK(rect.lo <= 0.48);
  CHECK(rect.hi >= 0.48);
  CHECK(rect.width() < 0.01);
}

TEST_CASE("minkowski content: circle tube is 2 pi R") {
  // annulus area pi((R+r)^2 - (R-r)^2) = 4 pi R r, so the estimate is 2 pi R
  const auto pts =
      measure::minkowski_content_estimate(unit_disk(), {0.05}, {.max_quad_depth = 12});
  REQUIRE(pts.size() == 1);
  const auto& p = pts.front();
  CHECK(p.estimate - p.half_width <= 2.0 * kPi);
  CHECK(p.estimate + p.half_width >= 2.0 * kPi);
  CHECK(std::abs(p.estimate - 2.0 * kPi) < 0.01 * 2.0 * kPi);
}

TEST_CASE("minkowski content: segment tube is a stadium") {
  const Shape seg(shapes::Polyline{{{0.0, 0.0}, {1.0, 0.0}}});
  const double r = 0.05;
  const double expected = (2.0 * r * 1.0 + kPi * r * r) / (2.0 * r);  // 1 + pi r / 2
  const auto pts = measure::minkowski_content_estimate(seg, {r}, {.max_quad_depth = 12});
  CHECK(pts.front().estimate - pts.front().half_width <= expected);
  CHECK(pts.front().estimate + pts.front().half_width >= expected);
  CHECK(pts.front().estimate == Catch::Approx(expected).epsilon(0.01));
}

TEST_CASE("minkowski content: tolerance failure reports an error") {
  CHECK_THROWS_AS(
      measure::minkowski_content_estimate(unit_disk(), {0.05},
                                          {.max_quad_depth = 4, .tolerance = 1e-4}),
      std::runtime_error);
  CHECK_THROWS_AS(measure::minkowski_content_estimate(unit_disk(), {-0.1}),
                  std::invalid_argument);
}

TEST_CASE("minkowski refinement: estimates converge over decreasing radii") {
  const auto pts = measure::minkowski_content_estimate(unit_disk(), {0.2, 0.1, 0.05},
                                                       {.max_quad_depth = 12});
  // every bracket contains 2 pi (the circle is smooth, limit exact here)
  for (const auto& p : pts) {
    CHECK(p.estimate - p.half_width <= 2.0 * kPi + 1e-9);
    CHECK(p.estimate + p.half_width >= 2.0 * kPi - 1e-9);
  }
}

TEST_CASE("density theta: single ball satisfies the covering chain") {
  const auto rep = measure::density_theta(unit_disk(), 6);
  CHECK(rep.theta_lo > 0.0);
  CHECK(rep.theta_hi <= 1.0);
  CHECK(rep.counts_ok);
  CHECK(rep.volume_ok);
  CHECK(rep.cover_volume <= rep.volume.lo / rep.theta_hi);
  // observed tile counts add up to the cover (each cube central exactly once)
  std::int64_t total = 0;
  for (auto n : rep.per_tiling_counts) total += n;
  CHECK(total == rep.cover_count);
  CHECK(rep.per_tiling_counts.size() == 9);
}

TEST_CASE("density theta: far-apart balls behave like one ball") {
  shapes::BallUnion bu;
  bu.centers = {VecN{0.0, 0.0}, VecN{64.0, 0.0}};  // lattice-aligned translation
  bu.radii = {1.0};
  const auto two = measure::density_theta(Shape(bu), 6);
  const auto one = measure::density_theta(unit_disk(), 6);
  CHECK(two.counts_ok);
  CHECK(two.volume_ok);
  // translation by a lattice vector preserves per-cube densities
  CHECK(two.theta_lo == Catch::Approx(one.theta_lo).epsilon(1e-9));
  CHECK(two.theta_hi == Catch::Approx(one.theta_hi).epsilon(1e-9));
}

TEST_CASE("density theta: shallow depth is rejected") {
  CHECK_THROWS_AS(measure::density_theta(unit_disk(), 0), std::invalid_argument);
  // 2^-d == r/4 still shallow (needs strict)
  CHECK_THROWS_AS(measure::density_theta(unit_disk(), 2), std::invalid_argument);
  CHECK_NOTHROW(measure::density_theta(unit_disk(), 3));
}

TEST_CASE("reach estimator: exact on circles") {
  const Shape circle(shapes::Disk{{0.3, -0.1}, 2.0});
  const auto samples = shapes::sample_boundary(circle, 0.05);
  const double est = measure::reach_estimate(samples);
  CHECK(est == Catch::Approx(2.0).epsilon(0.01));
  CHECK(est <= 2.0 + 1e-9);
}

TEST_CASE("reach estimator: flat input gives the +infinity sentinel") {
  const Shape seg(shapes::Polyline{{{0.0, 0.0}, {1.0, 0.0}}});
  const auto samples = shapes::sample_boundary(seg, 0.05);
  CHECK(std::isinf(measure::reach_estimate(samples)));
  CHECK_THROWS_AS(measure::reach_estimate(shapes::BoundarySamples{{{0.0, 0.0}, 0.0}}),
                  std::invalid_argument);
}

TEST_CASE("reach estimator: tangent circles collapse with spacing") {
  const auto est = measure::reach_estimate(
      shapes::sample_boundary(two_tangent_circles(), 0.01));
  CHECK(est <= 2.0 * 0.01);

  // nested refinement (sample counts 2^m so the finer set contains the
  // coarser one) never increases the estimate
  const double s7 = 2.0 * kPi / 128.0;
  const double s8 = 2.0 * kPi / 256.0;
  const auto coarse =
      measure::reach_estimate(shapes::sample_boundary(two_tangent_circles(), s7));
  const auto fine =
      measure::reach_estimate(shapes::sample_boundary(two_tangent_circles(), s8));
  CHECK(fine <= coarse + 1e-12);
}

TEST_CASE("reach estimator: monotone under sample refinement on circles") {
  const Shape circle(shapes::Disk{{0.0, 0.0}, 1.0});
  const double r1 = measure::reach_estimate(shapes::sample_boundary(circle, 0.2));
  const double r2 = measure::reach_estimate(shapes::sample_boundary(circle, 0.05));
  CHECK(r2 <= r1 + 1e-12);
}

TEST_CASE("tube volume bound: ball ratio is tight") {
  const auto tb = measure::tube_volume_bound(1.0, 0.1, 2);
  CHECK(tb.upper_ratio == Catch::Approx(1.21));
  // exact ratio for the ball: ((R+eps)/R)^2 with R = 1
  CHECK(tb.upper_ratio == Catch::Approx(std::pow(1.1, 2)).epsilon(1e-12));
  REQUIRE(tb.d_epsilon.has_value());
  CHECK(*tb.d_epsilon == static_cast<int>(std::ceil(std::log2(std::sqrt(2.0) / 0.1))));

  const auto flat = measure::tube_volume_bound(0.5, 0.0, 2);
  CHECK(flat.upper_ratio == 1.0);
  CHECK_FALSE(flat.d_epsilon.has_value());

  CHECK_THROWS_AS(measure::tube_volume_bound(2.0, 0.5, 2), std::invalid_argument);
}

TEST_CASE("tube volume bound vs cover volume at d(eps)") {
  // eps = sqrt(2) 2^-8 puts the cover inside the eps-expansion of the disk
  const double eps = std::sqrt(2.0) * std::ldexp(1.0, -8);
  const auto tb = measure::tube_volume_bound(1.0, eps, 2);
  const double ratio = dyadic::cover_stats(unit_disk(), 8).volume / kPi;
  CHECK(ratio <= tb.upper_ratio);
}

TEST_CASE("mink cover bound check: disk satisfies the (1+delta_hat) bound") {
  const auto rep =
      measure::mink_cover_bound_check(unit_disk(), 8, 1e-3, {.max_quad_depth = 12});
  CHECK(rep.holds);
  CHECK(rep.volume == Catch::Approx(kPi));
  CHECK(rep.cover_volume >= kPi);
  CHECK(rep.delta_hat > 0.0);
  CHECK(rep.delta_hat < 0.2);
}

TEST_CASE("mink cover bound check: lattice square has slack") {
  const Shape sq(shapes::Polygon{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}});
  const auto rep = measure::mink_cover_bound_check(sq, 4, 0.0, {.max_quad_depth = 12});
  CHECK(rep.holds);
  CHECK(rep.cover_volume == 1.0);  // cover equals the square exactly
}

TEST_CASE("mink cover bound check: zero-volume shapes are rejected") {
  CHECK_THROWS_AS(measure::mink_cover_bound_check(Shape(shapes::DenseUnitCube{2}), 4, 0.0),
                  std::invalid_argument);
}

TEST_CASE("hausdorff box estimate: point, segment, circle") {
  const Shape pt(shapes::PointCloud{{VecN{0.3, 0.7}}});
  for (int d : {6, 9, 12}) {
    const double est = measure::hausdorff_box_estimate(pt, 1.0, d);
    CHECK(est == Catch::Approx(std::sqrt(2.0) * std::ldexp(1.0, -d)));
  }
  CHECK(measure::hausdorff_box_estimate(pt, 1.0, 12) < 1e-3);

  // generic-height unit segment: single row of cubes, estimate -> sqrt(2)
  const Shape seg(shapes::Polyline{{{0.0, 1.0 / 3.0}, {1.0, 1.0 / 3.0}}});
  const double e8 = measure::hausdorff_box_estimate(seg, 1.0, 8);
  const double e11 = measure::hausdorff_box_estimate(seg, 1.0, 11);
  CHECK(e8 == Catch::Approx(std::sqrt(2.0)).epsilon(0.01));
  CHECK(e11 == Catch::Approx(std::sqrt(2.0)).epsilon(0.002));

  // circle as a 1-set: the cover count tracks the grid crossings (total
  // variation 8R), so the estimate stabilizes at sqrt(2) * 8R, between the
  // length 2 pi R and twice the length
  const Shape circ = shapes::make_circle_curve({1.0 / 3.0, 1.0 / 7.0}, 1.0);
  for (int d : {7, 9}) {
    const double est = measure::hausdorff_box_estimate(circ, 1.0, d);
    CHECK(est >= 2.0 * kPi);
    CHECK(est <= 4.0 * kPi);
    CHECK(est == Catch::Approx(std::sqrt(2.0) * 8.0).epsilon(0.05));
  }

  CHECK_THROWS_AS(measure::hausdorff_box_estimate(pt, 3.0, 4), std::invalid_argument);
}

TEST_CASE("hausdorff estimate of a point at k=0 counts cubes") {
  // alpha(0) = 1, so the estimate is the cube count itself
  const Shape pt(shapes::PointCloud{{VecN{0.3, 0.7}}});
  CHECK(measure::hausdorff_box_estimate(pt, 0.0, 5) == 1.0);
}

TEST_CASE("single-ball worst-case theta stays positive") {
  const double worst = measure::single_ball_worst_theta(1.0, 4, 3, {.cell_quad_depth = 5});
  CHECK(worst > 0.0);
  CHECK(worst <= 1.0);
}
