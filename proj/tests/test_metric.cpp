#include <catch2/catch_amalgamated.hpp>

#include "hilbert/metric.hpp"

#include <cmath>
#include <memory>

using namespace hilbert;

namespace {

HomogeneousPoint hp(std::initializer_list<double> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return HomogeneousPoint(v);
}

auto code_is(errc c) {
  return Catch::Matchers::Predicate<error>(
      [c](const error& e) { return e.code() == c; }, errc_name(c));
}

// Independent evaluation through the chord endpoints and the projective
// cross-ratio routine.
double distance_via_cross_ratio(const ConvexDomain& dom, const HomogeneousPoint& x,
                                const HomogeneousPoint& y) {
  auto [a, b] = dom.line_boundary_intersection(x, y);
  return 0.5 * std::log(cross_ratio(a, x, y, b));
}

HomogeneousPoint ball_point(double x, double y) { return hp({1, x, y}); }

Mat boost_matrix(double t) {
  Mat g = Mat::Identity(3, 3);
  g(0, 0) = g(1, 1) = std::cosh(t);
  g(0, 1) = g(1, 0) = std::sinh(t);
  return g;
}

}  // namespace

TEST_CASE("Beltrami-Klein closed form on the ball") {
  ConvexDomain ball = ConvexDomain::unit_ball();
  for (double t : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    double expect = 0.5 * std::log((1 + t) / (1 - t));
    CHECK_THAT(hilbert_distance(ball, ball_point(0, 0), ball_point(t, 0)),
               Catch::Matchers::WithinAbs(expect, 1e-9));
  }
  CHECK(hilbert_distance(ball, ball_point(0.3, 0.2), ball_point(0.3, 0.2)) == 0.0);
  CHECK_THROWS_MATCHES(hilbert_distance(ball, ball_point(1, 0), ball_point(0, 0)), error,
                       code_is(errc::not_interior));
}

TEST_CASE("ellipsoid form identity matches the cross-ratio path") {
  ConvexDomain ball = ConvexDomain::unit_ball();
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    Vec a = rng.unit_vector(2) * std::sqrt(rng.uniform()) * 0.98;
    Vec b = rng.unit_vector(2) * std::sqrt(rng.uniform()) * 0.98;
    HomogeneousPoint x = ball.point_from_chart(a), y = ball.point_from_chart(b);
    if (x.approx(y, 1e-9)) continue;
    CHECK_THAT(hilbert_distance(ball, x, y),
               Catch::Matchers::WithinAbs(distance_via_cross_ratio(ball, x, y), 1e-10));
  }

  Mat hq = Mat::Zero(3, 3);  // 2*x0*x2 - x1^2
  hq(0, 2) = hq(2, 0) = 1.0;
  hq(1, 1) = -1.0;
  ConvexDomain par = ConvexDomain::ellipsoid(hq);
  for (int i = 0; i < 300; ++i) {
    Vec a = rng.unit_vector(2) * std::sqrt(rng.uniform()) * 0.9;
    Vec b = rng.unit_vector(2) * std::sqrt(rng.uniform()) * 0.9;
    HomogeneousPoint x = par.point_from_chart(a), y = par.point_from_chart(b);
    if (x.approx(y, 1e-9)) continue;
    CHECK_THAT(hilbert_distance(par, x, y),
               Catch::Matchers::WithinAbs(distance_via_cross_ratio(par, x, y), 1e-10));
  }
}

TEST_CASE("polytope distances: square chord") {
  ConvexDomain sq = ConvexDomain::square();
  CHECK_THAT(hilbert_distance(sq, hp({1, 0, 0}), hp({1, 0.5, 0})),
             Catch::Matchers::WithinAbs(0.5 * std::log(3.0), 1e-10));
  CHECK_THAT(hilbert_distance(sq, hp({1, 0, 0}), hp({1, 0.5, 0})),
             Catch::Matchers::WithinAbs(distance_via_cross_ratio(sq, hp({1, 0, 0}), hp({1, 0.5, 0})),
                                        1e-10));
}

TEST_CASE("deep orbit points keep full accuracy on ellipsoids") {
  ConvexDomain ball = ConvexDomain::unit_ball();
  // materialized double points are exact enough up to moderate depth
  for (double t : {0.5, 1.0}) {
    ProjectiveMap g(boost_matrix(t));
    HomogeneousPoint p = hp({1, 0, 0});
    for (int n = 1; n * t <= 6.0; ++n) {
      p = g.apply(p);
      CHECK_THAT(hilbert_distance(ball, hp({1, 0, 0}), p),
                 Catch::Matchers::WithinAbs(n * t, 1e-9));
    }
  }
  // past that, the extended-precision orbit path holds 1e-8 to depth ~12
  for (double t : {0.5, 1.0, 2.0}) {
    ProjectiveMap g(boost_matrix(t));
    for (int n = 1; n * t <= 12.0; ++n)
      CHECK_THAT(orbit_distance(ball, hp({1, 0, 0}), g, n),
                 Catch::Matchers::WithinAbs(n * t, 1e-8));
  }
  CHECK(orbit_distance(ball, hp({1, 0.2, 0}), ProjectiveMap(boost_matrix(1.0)), 0) == 0.0);
  // non-ellipsoid fallback agrees with the direct evaluation
  ConvexDomain sq = ConvexDomain::square();
  Mat rot = Mat::Identity(3, 3);
  rot(1, 1) = rot(2, 2) = std::cos(0.3);
  rot(1, 2) = -std::sin(0.3);
  rot(2, 1) = std::sin(0.3);
  HomogeneousPoint p0 = hp({1, 0.2, 0.1});
  ProjectiveMap r(rot);
  HomogeneousPoint p2 = r.apply(r.apply(p0));
  CHECK_THAT(orbit_distance(sq, p0, r, 2),
             Catch::Matchers::WithinAbs(hilbert_distance(sq, p0, p2), 1e-12));
}

TEST_CASE("metric axioms on three domains") {
  auto domains = {ConvexDomain::unit_ball(), ConvexDomain::square(),
                  ConvexDomain::standard_simplex(2)};
  Rng rng(13);
  for (const ConvexDomain& dom : domains) {
    auto pts = dom.sample_interior(60, rng);
    for (int i = 0; i < 200; ++i) {
      const auto& x = pts[rng.raw() % pts.size()];
      const auto& y = pts[rng.raw() % pts.size()];
      const auto& z = pts[rng.raw() % pts.size()];
      double dxy = hilbert_distance(dom, x, y);
      double dyx = hilbert_distance(dom, y, x);
      CHECK_THAT(dxy, Catch::Matchers::WithinAbs(dyx, 1e-10));
      double defect = dxy + hilbert_distance(dom, y, z) - hilbert_distance(dom, x, z);
      CHECK(defect >= -1e-8);
    }
  }
}

TEST_CASE("boost invariance of the ball metric") {
  ConvexDomain ball = ConvexDomain::unit_ball();
  ProjectiveMap g(boost_matrix(0.8));
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    Vec a = rng.unit_vector(2) * std::sqrt(rng.uniform()) * 0.95;
    Vec b = rng.unit_vector(2) * std::sqrt(rng.uniform()) * 0.95;
    HomogeneousPoint x = ball.point_from_chart(a), y = ball.point_from_chart(b);
    CHECK_THAT(hilbert_distance(ball, g.apply(x), g.apply(y)),
               Catch::Matchers::WithinAbs(hilbert_distance(ball, x, y), 1e-9));
  }
}

TEST_CASE("simplex closed form") {
  ConvexDomain tri = ConvexDomain::standard_simplex(2);
  Simplex s2{{hp({1, 0, 0}), hp({0, 1, 0}), hp({0, 0, 1})}};

  CHECK_THAT(hilbert_distance(tri, hp({1, 1, 1}), hp({std::exp(2.0), 1, 1})),
             Catch::Matchers::WithinAbs(1.0, 1e-10));
  Vec x3(3), y3(3);
  x3 << 1, 1, 1;
  y3 << std::exp(2.0), 1, 1;
  CHECK_THAT(simplex_distance_closed_form(s2, x3, y3), Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK(simplex_distance_closed_form(s2, x3, x3) == 0.0);

  Simplex s3{{hp({1, 0, 0, 0}), hp({0, 1, 0, 0}), hp({0, 0, 1, 0}), hp({0, 0, 0, 1})}};
  Vec x4(4), y4(4);
  x4 << 1, 1, 1, 1;
  y4 << std::exp(2.0), std::exp(-1.0), 1, 1;
  CHECK_THAT(simplex_distance_closed_form(s3, x4, y4), Catch::Matchers::WithinAbs(1.5, 1e-12));

  Vec bad(3);
  bad << 1, -1, 1;
  CHECK_THROWS_MATCHES(simplex_distance_closed_form(s2, bad, x3), error,
                       code_is(errc::not_in_relative_interior));

  // closed form vs hilbert_distance on random interior pairs
  Rng rng(19);
  for (int i = 0; i < 300; ++i) {
    Vec wx = rng.dirichlet(3), wy = rng.dirichlet(3);
    HomogeneousPoint x(wx), y(wy);
    CHECK_THAT(simplex_distance_closed_form(s2, x, y),
               Catch::Matchers::WithinAbs(hilbert_distance(tri, x, y), 1e-8));
  }
  ConvexDomain tet = ConvexDomain::standard_simplex(3);
  for (int i = 0; i < 300; ++i) {
    Vec wx = rng.dirichlet(4), wy = rng.dirichlet(4);
    HomogeneousPoint x(wx), y(wy);
    CHECK_THAT(simplex_distance_closed_form(s3, x, y),
               Catch::Matchers::WithinAbs(hilbert_distance(tet, x, y), 1e-8));
  }
}

TEST_CASE("geodesic points: ratio and additivity") {
  auto domains = {ConvexDomain::unit_ball(), ConvexDomain::square(),
                  ConvexDomain::standard_simplex(2)};
  Rng rng(23);
  for (const ConvexDomain& dom : domains) {
    auto pts = dom.sample_interior(20, rng);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
      const auto& x = pts[i];
      const auto& y = pts[i + 1];
      double d = hilbert_distance(dom, x, y);
      CHECK(geodesic_point(dom, x, y, 0.0).approx(x, 1e-12));
      CHECK(geodesic_point(dom, x, y, 1.0).approx(y, 1e-12));
      for (double s : {0.25, 0.5, 0.75}) {
        HomogeneousPoint z = geodesic_point(dom, x, y, s);
        double dxz = hilbert_distance(dom, x, z);
        double dzy = hilbert_distance(dom, z, y);
        CHECK_THAT(dxz, Catch::Matchers::WithinAbs(s * d, 1e-9));
        CHECK_THAT(dxz + dzy, Catch::Matchers::WithinAbs(d, 1e-9));
      }
    }
  }
  ConvexDomain ball = ConvexDomain::unit_ball();
  CHECK_THROWS_MATCHES(geodesic_point(ball, ball_point(0, 0), ball_point(0.5, 0), 1.5), error,
                       code_is(errc::invalid_argument));
}

TEST_CASE("distance to a segment subset") {
  auto ball = std::make_shared<ConvexDomain>(ConvexDomain::unit_ball());
  ConvexSubset axis(ball, {hp({1, 1, 0}), hp({1, -1, 0})});

  double v = distance_to_subset(*ball, ball_point(0, 0.5), axis);
  CHECK_THAT(v, Catch::Matchers::WithinAbs(0.5 * std::log(3.0), 1e-7));

  // brute-force grid oracle: optimizer must not exceed any sampled value
  double grid_min = std::numeric_limits<double>::infinity();
  for (int i = 1; i < 2000; ++i) {
    double t = -1.0 + 2.0 * i / 2000;
    grid_min = std::min(grid_min,
                        hilbert_distance(*ball, ball_point(0, 0.5), ball_point(t * 0.9999, 0)));
  }
  CHECK(v <= grid_min + 1e-6);
  CHECK(v >= grid_min - 1e-3);

  // point on the subset: zero distance
  CHECK(distance_to_subset(*ball, ball_point(0.3, 0), axis) <= 1e-9);

  auto sq = std::make_shared<ConvexDomain>(ConvexDomain::square());
  ConvexSubset vdiam(sq, {hp({1, 0, 1}), hp({1, 0, -1})});
  CHECK_THAT(distance_to_subset(*sq, hp({1, 0.5, 0}), vdiam),
             Catch::Matchers::WithinAbs(0.5 * std::log(3.0), 1e-7));

  CHECK_THROWS_MATCHES(distance_to_subset(*ball, hp({1, 1, 0}), axis), error,
                       code_is(errc::not_interior));
}

TEST_CASE("distance to a triangle subset matches a barycentric grid") {
  auto ball = std::make_shared<ConvexDomain>(ConvexDomain::unit_ball());
  ConvexSubset tri(ball, {ball_point(0, 0), ball_point(0.6, 0), ball_point(0, 0.6)});
  HomogeneousPoint p = ball_point(0.5, 0.5);
  double v = distance_to_subset(*ball, p, tri);

  double grid_min = std::numeric_limits<double>::infinity();
  const int n = 120;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j + i <= n; ++j) {
      double wa = static_cast<double>(i) / n, wb = static_cast<double>(j) / n;
      Vec c(2);
      c << 0.6 * wa, 0.6 * wb;
      grid_min = std::min(grid_min, hilbert_distance(*ball, p, ball->point_from_chart(c)));
    }
  CHECK(v <= grid_min + 1e-6);
  CHECK(v >= grid_min - 1e-4);
}

TEST_CASE("hausdorff distance of point lists") {
  ConvexDomain ball = ConvexDomain::unit_ball();
  std::vector<HomogeneousPoint> a = {ball_point(0, 0), ball_point(0.3, 0)};
  CHECK(hausdorff_distance(ball, a, a) == 0.0);
  std::vector<HomogeneousPoint> b = {ball_point(0, 0.5)};
  CHECK_THAT(hausdorff_distance(ball, {ball_point(0, 0)}, b),
             Catch::Matchers::WithinAbs(0.5 * std::log(3.0), 1e-9));
  CHECK_THROWS_MATCHES(hausdorff_distance(ball, a, {}), error, code_is(errc::empty_set));
}

TEST_CASE("face distances") {
  ConvexDomain sq = ConvexDomain::square();
  // edge {x=1}: interval coordinates y in (-1,1)
  double expect = 0.5 * std::log((1.3 * 1.2) / (0.7 * 0.8));
  CHECK_THAT(face_distance(sq, hp({1, 1, 0.2}), hp({1, 1, -0.3})),
             Catch::Matchers::WithinAbs(expect, 1e-9));
  CHECK_THROWS_MATCHES(face_distance(sq, hp({1, 1, 0.2}), hp({1, 0.2, 1})), error,
                       code_is(errc::face_mismatch));
  // interior points: whole-domain face, ordinary distance
  CHECK_THAT(face_distance(sq, hp({1, 0, 0}), hp({1, 0.5, 0})),
             Catch::Matchers::WithinAbs(0.5 * std::log(3.0), 1e-10));
  // corner: zero-dimensional face
  CHECK(face_distance(sq, hp({1, 1, 1}), hp({1, 1, 1})) == 0.0);

  ConvexDomain ball = ConvexDomain::unit_ball();
  CHECK(face_distance(ball, hp({1, 1, 0}), hp({1, 1, 0})) == 0.0);
}

TEST_CASE("segment Hausdorff bound") {
  auto sq = std::make_shared<ConvexDomain>(ConvexDomain::square());

  auto trivial = check_segment_hausdorff_bound(sq, hp({1, 1, 0}), hp({1, -1, 0}), hp({1, 1, 0}),
                                               hp({1, -1, 0}));
  CHECK(trivial.lhs <= 1e-9);
  CHECK(trivial.rhs == 0.0);
  CHECK(trivial.ok);

  // one endpoint moved along its edge by the documented fixture amount
  auto moved = check_segment_hausdorff_bound(sq, hp({1, 1, 0}), hp({1, -1, 0}), hp({1, 1, 0.5}),
                                             hp({1, -1, 0}));
  CHECK_THAT(moved.rhs, Catch::Matchers::WithinAbs(0.5 * std::log(3.0), 1e-9));
  CHECK(moved.ok);
  CHECK(moved.lhs <= moved.rhs + tol::samp);

  CHECK_THROWS_MATCHES(check_segment_hausdorff_bound(sq, hp({1, 1, 0}), hp({1, -1, 0}),
                                                     hp({1, 0.5, 1}), hp({1, -1, 0})),
                       error, code_is(errc::face_mismatch));

  // randomized valid quadruples: endpoints slide along fixed opposite edges
  Rng rng(29);
  for (int i = 0; i < 40; ++i) {
    double a1 = -0.9 + 1.8 * rng.uniform(), b1 = -0.9 + 1.8 * rng.uniform();
    double a2 = -0.9 + 1.8 * rng.uniform(), b2 = -0.9 + 1.8 * rng.uniform();
    auto rep = check_segment_hausdorff_bound(sq, hp({1, 1, a1}), hp({1, -1, a2}),
                                             hp({1, 1, b1}), hp({1, -1, b2}), 100);
    CHECK(rep.ok);
  }
}

TEST_CASE("hull Hausdorff bound") {
  auto sq = std::make_shared<ConvexDomain>(ConvexDomain::square());
  std::vector<HomogeneousPoint> qs = {hp({1, 1, 0.3}), hp({1, -1, 0.5}), hp({1, 0, -1})};

  HomogeneousPoint z = hp({1, 0, -0.1});  // inside the q-hull
  auto same = check_hull_hausdorff_bound(sq, qs, qs, z, 400);
  CHECK(same.rhs == 0.0);
  CHECK(same.lhs <= tol::opt);
  CHECK(same.ok);

  std::vector<HomogeneousPoint> ps = {hp({1, 1, -0.1}), hp({1, -1, 0.5}), hp({1, 0, -1})};
  auto rep = check_hull_hausdorff_bound(sq, qs, ps, z, 400);
  CHECK(rep.ok);
  CHECK(rep.rhs > 0.0);

  // m = 2 agrees with the segment check
  std::vector<HomogeneousPoint> q2 = {hp({1, 1, 0}), hp({1, -1, 0})};
  std::vector<HomogeneousPoint> p2 = {hp({1, 1, 0.5}), hp({1, -1, 0})};
  auto hull2 = check_hull_hausdorff_bound(sq, q2, p2, hp({1, 0, 0}), 400);
  auto seg2 = check_segment_hausdorff_bound(sq, q2[0], q2[1], p2[0], p2[1]);
  CHECK_THAT(hull2.rhs, Catch::Matchers::WithinAbs(seg2.rhs, 1e-9));
  CHECK(std::abs(hull2.lhs - seg2.lhs) <= tol::samp);

  CHECK_THROWS_MATCHES(
      check_hull_hausdorff_bound(sq, qs, {hp({1, 1, 0.3}), hp({1, -1, 0.5}), hp({1, 1, -1})}, z),
      error, code_is(errc::face_mismatch));
}

TEST_CASE("asymptotic faces") {
  ConvexDomain sq = ConvexDomain::square();
  std::vector<HomogeneousPoint> ps, qs;
  for (int n = 1; n <= 12; ++n) {
    double h = std::pow(2.0, -n);
    ps.push_back(hp({1, 1 - h, 0}));
    qs.push_back(hp({1, 1 - h, 0.3 * (1 - h)}));
  }
  auto rep = check_asymptotic_faces(sq, ps, qs);
  CHECK(rep.face_equal);
  CHECK(rep.limit_p.approx(hp({1, 1, 0}), 1e-9));
  CHECK(rep.limit_q.approx(hp({1, 1, 0.3}), 1e-9));
  double expect_face = 0.5 * std::log(1.3 / 0.7);
  CHECK_THAT(rep.face_dist, Catch::Matchers::WithinAbs(expect_face, 1e-6));
  CHECK(rep.face_dist <= rep.liminf_dist + tol::samp);
  CHECK(rep.ok);

  // ball: both sequences converge to the same boundary point
  ConvexDomain ball = ConvexDomain::unit_ball();
  std::vector<HomogeneousPoint> bs, cs;
  for (int n = 1; n <= 10; ++n) {
    double h = std::pow(2.0, -n);
    bs.push_back(ball_point(1 - h, 0));
    cs.push_back(ball_point(1 - h, 0.5 * h));
  }
  auto rep2 = check_asymptotic_faces(ball, bs, cs);
  CHECK(rep2.face_equal);
  CHECK(rep2.face_dist == 0.0);
  CHECK(rep2.ok);

  // stationary interior sequence does not converge to the boundary
  std::vector<HomogeneousPoint> stat(5, ball_point(0.5, 0));
  CHECK_THROWS_MATCHES(check_asymptotic_faces(ball, stat, bs), error,
                       code_is(errc::not_converging));
}
