#pragma once
// Command dispatch. Each subcommand consumes a validated Scene and produces a
// Report; the visual commands additionally render an SVG when the chart is
// 2-dimensional. Check-style commands set pass=false and list witnesses
// instead of throwing, so callers can map outcomes to exit codes.

#include "hilbert/quotient.hpp"
#include "hilbert/report.hpp"
#include "hilbert/scene.hpp"
#include "hilbert/svg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace hilbert {

struct RunResult {
  Report report;
  std::string svg;  // empty when the command draws nothing or the chart is not 2-d
};

namespace detail {

inline std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline Json chart_rows(const ConvexDomain& dom, const std::vector<HomogeneousPoint>& pts) {
  Json rows = Json::array();
  for (const auto& p : pts) {
    Vec c = dom.chart_point(p);
    Json row = Json::array();
    for (int i = 0; i < c.size(); ++i) row.push_back(c[i]);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json index_pairs(const std::vector<std::pair<int, int>>& pairs) {
  Json out = Json::array();
  for (const auto& [i, j] : pairs) out.push_back(Json::array({i, j}));
  return out;
}

inline Json config_block(const Scene& s) {
  Json c = Json::object();
  c["seed"] = s.params.seed;
  c["word_len"] = s.params.word_len;
  c["window"] = s.params.window;
  c["r"] = s.params.r;
  if (s.family) c["family_word_len"] = s.family->word_len;
  c["threads"] = worker_count();
  c["tolerances"] = tolerance_block();
  return c;
}

inline HomogeneousPoint lift_param(const Scene& s, std::size_t i) {
  return s.domain->point_from_chart(s.params.points[i]);
}

inline PeripheralFamily family_of(const Scene& s) {
  if (!s.family) fail(errc::invalid_argument, "this command needs a family in the scene");
  std::vector<ConvexSubset> reps;
  reps.reserve(s.family->representatives.size());
  for (int idx : s.family->representatives) reps.push_back(s.subsets[idx]);
  return make_peripheral_family(s.gens, reps, s.family->word_len);
}

inline void cmd_distance(const Scene& s, Report& rep) {
  if (s.params.points.size() != 2)
    fail(errc::invalid_argument, "distance needs exactly two points in params.points");
  Json echo = Json::array();
  for (const Vec& c : s.params.points) {
    Json row = Json::array();
    for (int i = 0; i < c.size(); ++i) row.push_back(c[i]);
    echo.push_back(std::move(row));
  }
  rep.results["points"] = std::move(echo);
  rep.results["distance"] = hilbert_distance(*s.domain, lift_param(s, 0), lift_param(s, 1));
}

inline void cmd_orbit(const Scene& s, Report& rep, PlotOverlays& o) {
  OrbitResult orb = enumerate_orbit(s.gens, s.domain->base_point(), s.params.word_len);
  rep.results["count"] = orb.elements.size();
  rep.results["histogram"] = orb.word_length_histogram;
  rep.results["points"] = chart_rows(*s.domain, orb.orbit_points);
  o.orbit_points = std::move(orb.orbit_points);
}

inline void cmd_limitset(const Scene& s, Report& rep, PlotOverlays& o) {
  LimitSetApprox ls = limit_set_approx(s.gens, s.domain->base_point(), s.params.word_len);
  rep.results["count"] = ls.points.size();
  rep.results["points"] = chart_rows(*s.domain, ls.points);
  Json prov = Json::array();
  for (auto p : ls.provenance)
    prov.push_back(p == LimitSetApprox::Provenance::AttractingEigenvector ? "eigenvector"
                                                                          : "orbit");
  rep.results["provenance"] = std::move(prov);
  rep.results["gaps"] = ls.gaps;
  o.limit_points = std::move(ls.points);
}

inline void cmd_core(const Scene& s, Report& rep, PlotOverlays& o) {
  ConvexSubset core = convex_core_approx(s.gens, s.params.word_len);
  rep.results["vertex_count"] = core.size();
  rep.results["vertices"] = chart_rows(*s.domain, core.generators());
  o.translates.push_back(core);
  if (s.family) {
    PeripheralFamily fam = family_of(s);
    StructureConstantsReport sc = structure_constants_report(*s.domain, core, fam, s.params.window);
    rep.results["face_disjoint"] = sc.face_disjoint;
    rep.results["face_violations"] = index_pairs(sc.face_violations);
    rep.results["L_hat"] = sc.L_hat;
    rep.results["R_hat"] = sc.R_hat;
    rep.results["cocompact_radius"] = sc.cocompact_radius;
    for (const auto& t : fam.translates) o.translates.push_back(t);
    if (!sc.face_disjoint) {
      rep.pass = false;
      for (const auto& [i, j] : sc.face_violations)
        rep.witnesses.push_back("translates " + std::to_string(i) + " and " + std::to_string(j) +
                                " share a boundary face");
    }
  }
}

inline void cmd_isolation(const Scene& s, Report& rep, PlotOverlays& o) {
  PeripheralFamily fam = family_of(s);
  IsolationReport ir = strong_isolation_report(*s.domain, fam, s.params.r, s.params.window);
  rep.results["r"] = ir.r;
  rep.results["window"] = ir.window;
  rep.results["window_translates"] = ir.window_translates;
  Json pd = Json::array();
  for (const auto& p : ir.pair_diameters)
    pd.push_back(Json::array({Json(p.first), Json(p.second), Json(p.diameter)}));
  rep.results["pair_diameters"] = std::move(pd);
  rep.results["D1_hat"] = ir.D1_hat;
  rep.results["D2_hat"] = ir.D2_hat;
  rep.results["L_hat"] = ir.L_hat;
  rep.results["R_hat"] = ir.R_hat;
  o.translates = fam.translates;
  if (!std::isfinite(ir.D1_hat)) {
    rep.pass = false;
    rep.witnesses.push_back("overlap diameter D1 is not finite within the window");
  }
}

inline void cmd_quotient(const Scene& s, Report& rep, PlotOverlays& o) {
  PeripheralFamily fam = family_of(s);
  std::vector<HomogeneousPoint> pts;
  if (!s.params.points.empty()) {
    for (std::size_t i = 0; i < s.params.points.size(); ++i) pts.push_back(lift_param(s, i));
  } else {
    // Default sample: the family's ideal points plus the fixed points of the
    // proximal generators and their inverses.
    for (auto& trace : family_ideal_samples(fam, 4))
      for (auto& p : trace) pts.push_back(std::move(p));
    for (int i = 0; i < s.gens.size(); ++i) {
      for (const ProjectiveMap* g : {&s.gens.generator(i), &s.gens.inverse(i)}) {
        try {
          pts.push_back(attracting_fixed_point(*g).first);
        } catch (const error& e) {
          if (e.code() != errc::not_proximal) throw;
        }
      }
    }
  }
  BoundarySample sample = make_boundary_sample(*s.domain, fam, std::move(pts));
  QuotientComplex q = build_quotient(sample, fam);
  rep.results["point_count"] = sample.points.size();
  rep.results["points"] = chart_rows(*s.domain, sample.points);
  rep.results["family_membership"] = sample.family_membership;
  rep.results["class_count"] = q.class_count;
  rep.results["class_of"] = q.class_of;
  Json labels = Json::array();
  for (auto c : q.class_labels) labels.push_back(point_class_name(c));
  rep.results["class_labels"] = std::move(labels);
  rep.results["representatives"] = q.representatives;
  rep.results["adjacency"] = index_pairs(q.adjacency);
  o.translates = fam.translates;
  o.class_points = sample.points;
  o.class_of = q.class_of;
}

inline void cmd_checks(const Scene& s, Report& rep) {
  const ConvexDomain& dom = *s.domain;
  Rng rng(s.params.seed ^ 0x636865636bull);

  const int triples = 300;
  auto tp = dom.sample_interior(3 * triples, rng);
  double worst_sym = 0.0, worst_tri = 0.0;
  for (int t = 0; t < triples; ++t) {
    const auto &x = tp[3 * t], &y = tp[3 * t + 1], &z = tp[3 * t + 2];
    double dxy = hilbert_distance(dom, x, y);
    worst_sym = std::max(worst_sym, std::abs(dxy - hilbert_distance(dom, y, x)));
    worst_tri = std::max(worst_tri, hilbert_distance(dom, x, z) - dxy - hilbert_distance(dom, y, z));
  }
  bool sym_ok = worst_sym <= 1e-10;
  bool tri_ok = worst_tri <= 1e-8;

  const int pairs = 200;
  auto pp = dom.sample_interior(2 * pairs, rng);
  double worst_inv = 0.0;
  for (int i = 0; i < s.gens.size(); ++i) {
    const ProjectiveMap& g = s.gens.generator(i);
    for (int k = 0; k < pairs; ++k) {
      const auto &x = pp[2 * k], &y = pp[2 * k + 1];
      worst_inv = std::max(worst_inv, std::abs(hilbert_distance(dom, g.apply(x), g.apply(y)) -
                                               hilbert_distance(dom, x, y)));
    }
  }
  bool inv_ok = worst_inv <= 1e-8;

  // Interior endpoints always give valid quadruples: the open segments stay
  // inside the domain and every endpoint pair shares the whole-domain face.
  const int quads = 48;
  double worst_excess = -kInf;
  int violations = 0;
  auto qp = dom.sample_interior(4 * quads, rng);
  for (int k = 0; k < quads; ++k) {
    HausdorffBoundReport hb = check_segment_hausdorff_bound(
        s.domain, qp[4 * k], qp[4 * k + 1], qp[4 * k + 2], qp[4 * k + 3], 64);
    worst_excess = std::max(worst_excess, hb.lhs - hb.rhs);
    if (!hb.ok) {
      ++violations;
      rep.witnesses.push_back("segment quadruple " + std::to_string(k) + " exceeds the bound by " +
                              fmt_g(hb.lhs - hb.rhs));
    }
  }
  bool seg_ok = violations == 0;

  if (!sym_ok) rep.witnesses.push_back("symmetry defect " + fmt_g(worst_sym));
  if (!tri_ok) rep.witnesses.push_back("triangle defect " + fmt_g(worst_tri));
  if (!inv_ok) rep.witnesses.push_back("invariance defect " + fmt_g(worst_inv));
  rep.results["symmetry_ok"] = sym_ok;
  rep.results["symmetry_max"] = worst_sym;
  rep.results["triangle_ok"] = tri_ok;
  rep.results["triangle_defect_max"] = worst_tri;
  rep.results["invariance_ok"] = inv_ok;
  rep.results["invariance_max"] = worst_inv;
  rep.results["segment_ok"] = seg_ok;
  rep.results["segment_violations"] = violations;
  rep.results["segment_max_excess"] = worst_excess;
  rep.pass = sym_ok && tri_ok && inv_ok && seg_ok;
}

inline void cmd_plot(const Scene& s, Report& rep, PlotOverlays& o) {
  if (s.domain->chart_dim() != 2)
    fail(errc::unsupported_plot_dimension, "plot needs a 2-dimensional chart");
  if (s.gens.size() > 0) {
    o.orbit_points = enumerate_orbit(s.gens, s.domain->base_point(), s.params.word_len).orbit_points;
    o.limit_points = limit_set_approx(s.gens, s.domain->base_point(), s.params.word_len).points;
  }
  if (s.family) {
    PeripheralFamily fam = family_of(s);
    o.translates = fam.translates;
    std::vector<HomogeneousPoint> pts;
    for (auto& trace : family_ideal_samples(fam, 4))
      for (auto& p : trace) pts.push_back(std::move(p));
    if (!pts.empty()) {
      BoundarySample sample = make_boundary_sample(*s.domain, fam, std::move(pts));
      QuotientComplex q = build_quotient(sample, fam);
      o.class_points = sample.points;
      o.class_of = q.class_of;
    }
  }
  Json layers = Json::object();
  layers["orbit"] = o.orbit_points.size();
  layers["limit"] = o.limit_points.size();
  layers["translates"] = o.translates.size();
  layers["classes"] = o.class_points.size();
  rep.results["layers"] = std::move(layers);
}

}  // namespace detail

inline RunResult run_scene_command(const Scene& scene, const std::string& command) {
  static constexpr const char* kCommands[] = {"distance", "orbit",    "limitset", "core",
                                              "isolation", "quotient", "checks",   "plot"};
  if (std::none_of(std::begin(kCommands), std::end(kCommands),
                   [&](const char* c) { return command == c; }))
    fail(errc::unknown_command, "unknown command '" + command + "'");

  RunResult out;
  out.report.command = command;
  out.report.config = detail::config_block(scene);
  PlotOverlays overlays;
  auto t0 = std::chrono::steady_clock::now();
  if (command == "distance") {
    detail::cmd_distance(scene, out.report);
  } else if (command == "orbit") {
    detail::cmd_orbit(scene, out.report, overlays);
  } else if (command == "limitset") {
    detail::cmd_limitset(scene, out.report, overlays);
  } else if (command == "core") {
    detail::cmd_core(scene, out.report, overlays);
  } else if (command == "isolation") {
    detail::cmd_isolation(scene, out.report, overlays);
  } else if (command == "quotient") {
    detail::cmd_quotient(scene, out.report, overlays);
  } else if (command == "checks") {
    detail::cmd_checks(scene, out.report);
  } else {
    detail::cmd_plot(scene, out.report, overlays);
  }
  out.report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  const bool visual = command != "distance" && command != "checks";
  if (visual && scene.domain->chart_dim() == 2) out.svg = emit_svg(*scene.domain, overlays);
  return out;
}

// The report alone; exit-code mapping is pass ? 0 : 2, errors throw.
inline Report run_command(const Scene& scene, const std::string& command) {
  return run_scene_command(scene, command).report;
}

}  // namespace hilbert
