#include "hilbert/projective.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace hilbert;

namespace {

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

// Independent oracle: evaluate the cross-ratio as the Euclidean ratio
// (|x-b||y-a|)/(|x-a||y-b|) in the explicit chart {x0 = 1}.
double cross_ratio_chart_oracle(const Vec& a, const Vec& x, const Vec& y, const Vec& b) {
  auto ch = [](const Vec& v) { return Vec(v / v[0]); };
  Vec ca = ch(a), cx = ch(x), cy = ch(y), cb = ch(b);
  return ((cx - cb).norm() * (cy - ca).norm()) / ((cx - ca).norm() * (cy - cb).norm());
}

}  // namespace

TEST_CASE("canonical vector is unit norm, sign fixed, and bitwise idempotent") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int d = 2 + rng.uniform_int(7);
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = rng.uniform(-50.0, 50.0);
    if (v.norm() < 1e-6) continue;
    Vec c = canonical_vector(v);
    REQUIRE(std::abs(c.norm() - 1.0) < 1e-14);
    Vec cc = canonical_vector(c);
    REQUIRE(std::memcmp(c.data(), cc.data(), sizeof(double) * d) == 0);
    // the same ray canonicalizes identically
    Vec scaled = -3.25 * v;
    REQUIRE(proj_dist(canonical_vector(scaled), c) < 1e-12);
  }
}

TEST_CASE("canonical matrix is Frobenius-1 and bitwise idempotent") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    int d = 2 + rng.uniform_int(7);
    Mat m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = rng.uniform(-5.0, 5.0);
    Mat c = canonical_matrix(m);
    REQUIRE(std::abs(c.norm() - 1.0) < 1e-14);
    Mat cc = canonical_matrix(c);
    REQUIRE(std::memcmp(c.data(), cc.data(), sizeof(double) * d * d) == 0);
    REQUIRE(proj_dist(canonical_matrix(Mat(-0.37 * m)), c) < 1e-12);
  }
}

TEST_CASE("cross-ratio of collinear reals 0,1,2,3 is 4") {
  HomogeneousPoint a(v3(1, 0, 0)), x(v3(1, 1, 0)), y(v3(1, 2, 0)), b(v3(1, 3, 0));
  REQUIRE(cross_ratio(a, x, y, b) == Catch::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("cross-ratio matches the affine-chart ratio oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    int d = 2 + rng.uniform_int(7);
    Vec u(d), w(d);
    for (int i = 0; i < d; ++i) {
      u[i] = rng.uniform(-1.0, 1.0);
      w[i] = rng.uniform(-1.0, 1.0);
    }
    u[0] = rng.uniform(1.0, 2.0);  // keep the pencil visible in the {x0=1} chart
    w[0] = rng.uniform(1.0, 2.0);
    double lx = rng.uniform(0.1, 1.0);
    double ly = lx + rng.uniform(0.1, 2.0);
    Vec x = u + lx * w, y = u + ly * w;
    HomogeneousPoint pa{u}, px{x}, py{y}, pb{w};
    double cr = cross_ratio(pa, px, py, pb);
    double oracle = cross_ratio_chart_oracle(u, x, y, w);
    REQUIRE(cr == Catch::Approx(oracle).epsilon(1e-10));
    REQUIRE(cr >= 1.0 - 1e-12);
  }
}

TEST_CASE("cross-ratio is a projective invariant") {
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    int d = 3;
    Vec u = rng.unit_vector(d), w = rng.unit_vector(d);
    if (std::abs(u.dot(w)) > 0.99) continue;
    double lx = rng.uniform(0.2, 1.0), ly = lx + rng.uniform(0.2, 2.0);
    HomogeneousPoint a{u}, x{Vec(u + lx * w)}, y{Vec(u + ly * w)}, b{w};
    double cr = cross_ratio(a, x, y, b);

    Mat g(d, d);
    do {
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.uniform(-1.0, 1.0);
    } while (std::abs(g.determinant()) < 1e-2);
    ProjectiveMap pm(g);
    double cr_mapped = cross_ratio(pm.apply(a), pm.apply(x), pm.apply(y), pm.apply(b));
    REQUIRE(cr_mapped == Catch::Approx(cr).epsilon(1e-9));
  }
}

TEST_CASE("cross-ratio degenerate configurations") {
  HomogeneousPoint a(v3(1, 0, 0)), x(v3(1, 1, 0)), b(v3(1, 3, 0));
  SECTION("x equal to y gives exactly 1") {
    REQUIRE(cross_ratio(a, x, x, b) == Catch::Approx(1.0).epsilon(1e-14));
  }
  SECTION("x coinciding with a is rejected") {
    REQUIRE_THROWS_MATCHES(cross_ratio(a, a, x, b), error,
                           Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::degenerate_configuration;
                           }));
  }
  SECTION("y coinciding with b is rejected") {
    REQUIRE_THROWS_MATCHES(cross_ratio(a, x, b, b), error,
                           Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::degenerate_configuration;
                           }));
  }
  SECTION("non-collinear points are rejected") {
    HomogeneousPoint off(v3(1, 1, 1));
    REQUIRE_THROWS_MATCHES(cross_ratio(a, x, off, b), error,
                           Catch::Matchers::Predicate<error>(
                               [](const error& e) { return e.code() == errc::not_collinear; }));
  }
}

TEST_CASE("limit of diag(e^n,1,e^-n) is the rank-one projection") {
  std::vector<ProjectiveMap> seq;
  for (int n = 1; n <= 40; ++n) {
    Mat m = Mat::Zero(3, 3);
    m(0, 0) = std::exp(static_cast<double>(n));
    m(1, 1) = 1.0;
    m(2, 2) = std::exp(-static_cast<double>(n));
    seq.emplace_back(m);
  }
  EndomorphismClass t = limit_of_maps(seq);
  REQUIRE(t.rank() == 1);
  Mat expected = Mat::Zero(3, 3);
  expected(0, 0) = 1.0;
  REQUIRE(proj_dist(t.rep(), expected) < 1e-12);
  // image is span(e1); kernel is span(e2,e3)
  REQUIRE(std::abs(std::abs(t.image_basis()(0, 0)) - 1.0) < 1e-12);
  REQUIRE(t.kernel_basis().cols() == 2);
  REQUIRE(t.kernel_basis().row(0).norm() < 1e-12);

  HomogeneousPoint p(v3(1, 0.3, 0.3));
  REQUIRE(apply_endo(t, p).approx(HomogeneousPoint(v3(1, 0, 0)), 1e-12));
  REQUIRE_THROWS_MATCHES(apply_endo(t, HomogeneousPoint(v3(0, 1, 0))), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::kernel_point; }));
}

TEST_CASE("limit of diag(e^n,e^n,1) has rank two") {
  std::vector<ProjectiveMap> seq;
  for (int n = 1; n <= 40; ++n) {
    Mat m = Mat::Zero(3, 3);
    double en = std::exp(static_cast<double>(n));
    m(0, 0) = en;
    m(1, 1) = en;
    m(2, 2) = 1.0;
    seq.emplace_back(m);
  }
  EndomorphismClass t = limit_of_maps(seq);
  REQUIRE(t.rank() == 2);
  Mat expected = Mat::Zero(3, 3);
  expected(0, 0) = expected(1, 1) = 1.0 / std::sqrt(2.0);
  REQUIRE(proj_dist(t.rep(), expected) < 1e-12);
}

TEST_CASE("constant and too-short sequences") {
  Mat g(3, 3);
  g << 2, 1, 0, 0, 1, 0, 0, 0, 1;
  std::vector<ProjectiveMap> constant(5, ProjectiveMap(g));
  EndomorphismClass t = limit_of_maps(constant);
  REQUIRE(proj_dist(t.rep(), canonical_matrix(g)) < 1e-15);
  REQUIRE(t.rank() == 3);

  std::vector<ProjectiveMap> single{ProjectiveMap(g)};
  REQUIRE(proj_dist(limit_of_maps(single).rep(), canonical_matrix(g)) < 1e-15);
}

TEST_CASE("a rotating sequence does not converge") {
  std::vector<ProjectiveMap> seq;
  for (int n = 1; n <= 30; ++n) {
    double c = std::cos(0.7 * n), s = std::sin(0.7 * n);
    Mat m(3, 3);
    m << c, -s, 0, s, c, 0, 0, 0, 1;
    seq.emplace_back(m);
  }
  REQUIRE_THROWS_MATCHES(limit_of_maps(seq), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::not_converged; }));
}

TEST_CASE("affine chart coordinates against the standard chart") {
  AffineChart chart(v3(1, 0, 0));
  HomogeneousPoint p(v3(2, 1, 0.5));
  Vec x = chart.to_chart(p);
  REQUIRE(x.size() == 2);
  REQUIRE(x[0] == Catch::Approx(0.5).margin(1e-14));
  REQUIRE(x[1] == Catch::Approx(0.25).margin(1e-14));
  REQUIRE(chart.from_chart(x).approx(p, 1e-12));
  REQUIRE_THROWS_MATCHES(chart.to_chart(HomogeneousPoint(v3(0, 1, 0))), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::outside_chart; }));
}

TEST_CASE("affine chart round-trips in a generic direction") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    int d = 2 + rng.uniform_int(7);
    AffineChart chart(rng.unit_vector(d));
    Vec x(d - 1);
    for (int i = 0; i < d - 1; ++i) x[i] = rng.uniform(-2.0, 2.0);
    HomogeneousPoint p = chart.from_chart(x);
    Vec back = chart.to_chart(p);
    REQUIRE((back - x).norm() < 1e-10);
  }
}

TEST_CASE("projective map application, composition, inverse") {
  Rng rng(31);
  Mat g(3, 3);
  g << 1, 2, 0, 0, 1, 1, 1, 0, 3;
  ProjectiveMap pm(g);
  ProjectiveMap inv = pm.inverse();
  REQUIRE(pm.compose(inv).approx(ProjectiveMap::identity(3), 1e-12));
  for (int trial = 0; trial < 50; ++trial) {
    HomogeneousPoint p(rng.unit_vector(3));
    REQUIRE(inv.apply(pm.apply(p)).approx(p, 1e-10));
  }
  Mat sing(3, 3);
  sing << 1, 0, 0, 0, 1, 0, 1, 1, 0;
  REQUIRE_THROWS_AS(ProjectiveMap(sing), error);
}
