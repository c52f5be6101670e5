#include <catch2/catch_amalgamated.hpp>

#include "hilbert/group.hpp"

#include <cmath>
#include <memory>
#include <numbers>

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

Mat boost_matrix(double t) {
  Mat g = Mat::Identity(3, 3);
  g(0, 0) = g(1, 1) = std::cosh(t);
  g(0, 1) = g(1, 0) = std::sinh(t);
  return g;
}

Mat rotation_matrix(double a) {
  Mat r = Mat::Identity(3, 3);
  r(1, 1) = r(2, 2) = std::cos(a);
  r(1, 2) = -std::sin(a);
  r(2, 1) = std::sin(a);
  return r;
}

Mat diag3(double a, double b, double c) {
  Mat m = Mat::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

std::shared_ptr<const ConvexDomain> ball_ptr() {
  return std::make_shared<const ConvexDomain>(ConvexDomain::unit_ball());
}

}  // namespace

TEST_CASE("generator sets validate domain preservation") {
  auto ball = ball_ptr();
  CHECK_NOTHROW(GeneratorSet(ball, {ProjectiveMap(boost_matrix(1.0))}));
  CHECK_NOTHROW(GeneratorSet(ball, {}));  // trivial group

  Mat bad = diag3(1.0, 1.2, 1.0);  // stretches the ball
  CHECK_THROWS_MATCHES(GeneratorSet(ball, {ProjectiveMap(bad)}), error,
                       code_is(errc::domain_not_preserved));

  Mat m2 = Mat::Identity(2, 2);
  CHECK_THROWS_MATCHES(GeneratorSet(ball, {ProjectiveMap(m2)}), error,
                       code_is(errc::invalid_argument));
}

TEST_CASE("orbit enumeration") {
  auto ball = ball_ptr();
  HomogeneousPoint base = hp({1, 0, 0});

  GeneratorSet trivial(ball, {});
  auto orb0 = enumerate_orbit(trivial, base, 5);
  REQUIRE(orb0.elements.size() == 1);
  CHECK(orb0.elements[0].word.empty());
  CHECK(orb0.orbit_points[0].approx(base, 1e-12));

  double t = 1.0;
  GeneratorSet cyc(ball, {ProjectiveMap(boost_matrix(t))});
  auto orb = enumerate_orbit(cyc, base, 5);
  REQUIRE(orb.elements.size() == 11);  // identity and g^{+-1..5}
  CHECK(orb.word_length_histogram == std::vector<int>{1, 2, 2, 2, 2, 2});
  for (std::size_t i = 0; i < orb.elements.size(); ++i) {
    double n = static_cast<double>(orb.elements[i].word.size());
    CHECK_THAT(hilbert_distance(*ball, base, orb.orbit_points[i]),
               Catch::Matchers::WithinAbs(n * t, 1e-7));
    CHECK(std::abs(ball->chart_point(orb.orbit_points[i])[1]) < 1e-12);  // on the x-axis
  }

  GeneratorSet pair = schottky_pso21(4.0, std::numbers::pi / 2);
  auto orb2 = enumerate_orbit(pair, base, 3);
  CHECK(orb2.elements.size() == 53);  // 1 + 4 + 12 + 36 reduced words, no relations
  CHECK(orb2.word_length_histogram == std::vector<int>{1, 4, 12, 36});

  // involution folds the words onto two classes
  Mat refl = diag3(1.0, -1.0, 1.0);
  GeneratorSet two(ball, {ProjectiveMap(refl)});
  auto orb3 = enumerate_orbit(two, hp({1, 0.3, 0.1}), 5);
  CHECK(orb3.elements.size() == 2);
  CHECK(orb3.orbit_points[1].approx(hp({1, -0.3, 0.1}), 1e-12));

  CHECK_THROWS_MATCHES(enumerate_orbit(cyc, base, 11), error, code_is(errc::invalid_argument));
  CHECK_THROWS_MATCHES(enumerate_orbit(cyc, hp({1, 1, 0}), 3), error, code_is(errc::not_interior));

  // byte-for-byte determinism
  auto rerun = enumerate_orbit(pair, base, 3);
  REQUIRE(rerun.elements.size() == orb2.elements.size());
  for (std::size_t i = 0; i < rerun.elements.size(); ++i) {
    CHECK(rerun.elements[i].word == orb2.elements[i].word);
    CHECK((rerun.elements[i].matrix.rep() - orb2.elements[i].matrix.rep()).cwiseAbs().maxCoeff() ==
          0.0);
  }
}

TEST_CASE("translation distances") {
  ConvexDomain ball = ConvexDomain::unit_ball();
  HomogeneousPoint o = hp({1, 0, 0});
  CHECK(translation_distance(ball, ProjectiveMap::identity(3), o) == 0.0);

  double t = 1.3;
  ProjectiveMap g(boost_matrix(t));
  CHECK_THAT(translation_distance(ball, g, o), Catch::Matchers::WithinAbs(t, 1e-12));

  ProjectiveMap h(Mat(rotation_matrix(0.7) * boost_matrix(0.4)));
  ProjectiveMap conj(Mat(h.rep() * g.rep() * h.inverse().rep()));
  CHECK_THAT(translation_distance(ball, conj, h.apply(o)),
             Catch::Matchers::WithinAbs(t, 1e-9));

  CHECK_THROWS_MATCHES(translation_distance(ball, g, hp({1, 1, 0})), error,
                       code_is(errc::not_interior));
}

TEST_CASE("attracting fixed points") {
  auto [p1, gap1] = attracting_fixed_point(ProjectiveMap(diag3(std::exp(1.0), 1.0, std::exp(-1.0))));
  CHECK(p1.approx(hp({1, 0, 0}), 1e-12));
  CHECK_THAT(gap1, Catch::Matchers::WithinAbs(std::exp(1.0), 1e-12));

  double t = 0.8;
  auto [p2, gap2] = attracting_fixed_point(ProjectiveMap(boost_matrix(t)));
  CHECK(p2.approx(hp({1, 1, 0}), 1e-9));
  CHECK_THAT(gap2, Catch::Matchers::WithinAbs(std::exp(t), 1e-10));

  CHECK_THROWS_MATCHES(attracting_fixed_point(ProjectiveMap(rotation_matrix(std::numbers::pi / 3))),
                       error, code_is(errc::not_proximal));
  CHECK_THROWS_MATCHES(attracting_fixed_point(ProjectiveMap::identity(3)), error,
                       code_is(errc::not_proximal));
}

TEST_CASE("axes") {
  auto ball = ball_ptr();
  ProjectiveMap g(boost_matrix(1.0));
  ConvexSubset axis = axis_of(ball, g);
  REQUIRE(axis.size() == 2);
  CHECK(axis.generators()[0].approx(hp({1, 1, 0}), 1e-9));
  CHECK(axis.generators()[1].approx(hp({1, -1, 0}), 1e-9));

  auto tri = std::make_shared<const ConvexDomain>(ConvexDomain::standard_simplex(2));
  ProjectiveMap dg(diag3(std::exp(2.0), std::exp(1.0), 1.0));
  ConvexSubset edge = axis_of(tri, dg);
  CHECK(edge.generators()[0].approx(hp({1, 0, 0}), 1e-9));
  CHECK(edge.generators()[1].approx(hp({0, 0, 1}), 1e-9));
  CHECK_FALSE(edge.has_interior());

  // proximal map whose fixed points lie outside the square
  auto sq = std::make_shared<const ConvexDomain>(ConvexDomain::square());
  Mat v(3, 3);
  v.col(0) << 1, 2, 1;
  v.col(1) << 1, 2, -1;
  v.col(2) << 1, 0, 0;
  Mat away = v * diag3(4, 2, 1) * v.inverse();
  CHECK_THROWS_MATCHES(axis_of(sq, ProjectiveMap(away)), error,
                       code_is(errc::axis_misses_domain));

  CHECK_THROWS_MATCHES(axis_of(ball, ProjectiveMap(rotation_matrix(1.0))), error,
                       code_is(errc::not_proximal));
}

TEST_CASE("limit sets and convex cores") {
  auto ball = ball_ptr();
  HomogeneousPoint base = hp({1, 0, 0});

  GeneratorSet cyc(ball, {ProjectiveMap(boost_matrix(1.0))});
  auto ls = limit_set_approx(cyc, base, 8);
  REQUIRE(ls.points.size() == 2);
  for (const auto& p : ls.points) CHECK(ball->classify(p) == Region::Boundary);
  CHECK(ls.points[0].approx(hp({1, 1, 0}), 1e-9));
  CHECK(ls.points[1].approx(hp({1, -1, 0}), 1e-9));
  CHECK(ls.provenance[0] == LimitSetApprox::Provenance::AttractingEigenvector);
  CHECK(ls.gaps[0] > 1.0);

  ConvexSubset core = convex_core_approx(cyc, 8);
  CHECK(core.size() == 2);

  GeneratorSet trivial(ball, {});
  CHECK(limit_set_approx(trivial, base, 5).points.empty());
  CHECK_THROWS_MATCHES(convex_core_approx(trivial, 5), error, code_is(errc::empty_limit_set));

  GeneratorSet pair = schottky_pso21(4.0, std::numbers::pi / 2);
  auto ls2 = limit_set_approx(pair, base, 5);
  CHECK(ls2.points.size() >= 4);
  for (const auto& p : ls2.points) {
    CHECK(ball->classify(p) == Region::Boundary);
    CHECK(std::abs(ball->chart_point(p).norm() - 1.0) <= 1e-6);
  }
}

TEST_CASE("convergence dynamics on diagonal sequences") {
  Mat hq = Mat::Zero(3, 3);  // 2*x0*x2 - x1^2
  hq(0, 2) = hq(2, 0) = 1.0;
  hq(1, 1) = -1.0;
  ConvexDomain par = ConvexDomain::ellipsoid(hq);
  std::vector<ProjectiveMap> seq;
  for (int n = 1; n <= 25; ++n)
    seq.emplace_back(diag3(std::exp(double(n)), 1.0, std::exp(-double(n))));

  auto rep = check_convergence_dynamics(par, seq, par.base_point());
  CHECK(rep.limit_x.approx(hp({1, 0, 0}), 1e-9));
  CHECK(rep.limit_y.approx(hp({0, 0, 1}), 1e-9));
  CHECK(rep.T.rank() == 1);
  CHECK(rep.image_in_face_span);
  CHECK(rep.kernel_avoids_domain);
  CHECK(rep.backward_limit_in_kernel);
  CHECK(rep.track_bounded);
  CHECK(rep.maps_onto_face);
  CHECK(rep.ok);

  ConvexDomain tri = ConvexDomain::standard_simplex(2);
  std::vector<ProjectiveMap> seq2;
  for (int n = 1; n <= 25; ++n)
    seq2.emplace_back(diag3(std::exp(double(n)), std::exp(double(n)), 1.0));
  auto rep2 = check_convergence_dynamics(tri, seq2, hp({1, 1, 1}));
  CHECK(rep2.limit_x.approx(hp({1, 1, 0}), 1e-9));
  CHECK(rep2.T.rank() == 2);  // image is the span of the edge face
  CHECK(rep2.image_in_face_span);
  CHECK(rep2.ok);

  std::vector<ProjectiveMap> constant(5, ProjectiveMap::identity(3));
  CHECK_THROWS_MATCHES(check_convergence_dynamics(par, constant, par.base_point()), error,
                       code_is(errc::not_converged));
}

TEST_CASE("coxeter reflection groups") {
  auto [gens, dom] = coxeter_triangle(2, 3, 7);
  REQUIRE(gens.size() == 3);
  CHECK(dom->variant() == ConvexDomain::Variant::Ellipsoid);

  Mat id3 = canonical_matrix(Mat::Identity(3, 3));
  for (int i = 0; i < 3; ++i) {
    Mat sq = gens.generator(i).rep() * gens.generator(i).rep();
    CHECK(proj_dist(canonical_matrix(sq), id3) <= 1e-10);
  }
  // order of sigma_1 sigma_2 is 7
  Mat prod = gens.generator(1).rep() * gens.generator(2).rep();
  Mat pw = Mat::Identity(3, 3);
  for (int k = 0; k < 7; ++k) pw = Mat(pw * prod);
  CHECK(proj_dist(canonical_matrix(pw), id3) <= 1e-8);

  // generators preserve the form domain on samples
  Rng rng(5);
  for (const auto& p : dom->sample_interior(50, rng))
    for (int i = 0; i < 3; ++i) CHECK(dom->classify(gens.generator(i).apply(p)) != Region::Outside);

  // spherical signature is rejected
  Mat a2(2, 2);
  a2 << 1.0, -0.5, -0.5, 1.0;
  CHECK_THROWS_MATCHES(coxeter_generators(a2), error, code_is(errc::bad_signature));

  // single mirror gives an order-two group
  auto [one, dom1] = coxeter_generators(coxeter_triangle_gram(2, 3, 7), {Vec(Vec::Unit(3, 0))});
  auto orb = enumerate_orbit(one, dom1->base_point(), 4);
  CHECK(orb.elements.size() == 2);

  // a slightly detuned Gram entry still reads as order 3 but breaks the relation
  Mat detuned = coxeter_triangle_gram(2, 3, 7);
  detuned(0, 2) -= 1e-7;
  detuned(2, 0) -= 1e-7;
  CHECK_THROWS_MATCHES(coxeter_generators(detuned), error, code_is(errc::relation_violated));

  Mat asym = coxeter_triangle_gram(2, 3, 7);
  asym(0, 1) += 1e-3;
  CHECK_THROWS_MATCHES(coxeter_generators(asym), error, code_is(errc::invalid_argument));
}

TEST_CASE("schottky pairs") {
  CHECK_THAT(schottky_min_translation(std::numbers::pi / 2),
             Catch::Matchers::WithinAbs(1.7627471740390861, 1e-12));

  GeneratorSet pair = schottky_pso21(4.0, std::numbers::pi / 2);
  REQUIRE(pair.size() == 2);

  CHECK_THROWS_MATCHES(schottky_pso21(0.1, std::numbers::pi / 2), error,
                       code_is(errc::ping_pong_fails));
  CHECK_THROWS_MATCHES(schottky_pso21(1.7, std::numbers::pi / 2), error,
                       code_is(errc::ping_pong_fails));
  CHECK_THROWS_MATCHES(schottky_pso21(4.0, 0.0), error, code_is(errc::invalid_argument));

  // the commutator is proximal and carries an axis
  Mat a = pair.generator(0).rep(), b = pair.generator(1).rep();
  Mat ai = pair.inverse(0).rep(), bi = pair.inverse(1).rep();
  ProjectiveMap comm(Mat(a * b * ai * bi));
  auto [fix, gap] = attracting_fixed_point(comm);
  CHECK(gap > 1.0 + tol::prox);
  ConvexSubset axis = axis_of(pair.domain_ptr(), comm);
  CHECK(axis.size() == 2);
  for (const auto& p : axis.generators()) CHECK(pair.domain().classify(p) == Region::Boundary);
}
