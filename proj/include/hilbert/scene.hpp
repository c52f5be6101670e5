#pragma once
// Scene ingestion. A scene is a versioned JSON document describing a domain,
// generators (explicit matrices or a named constructor that brings its own
// domain), named point subsets, an optional peripheral family, and default
// command parameters. Parsing is strict: unknown keys are rejected, and every
// diagnostic names the offending path.

#include "hilbert/group.hpp"

#include "json.hpp"

#include <algorithm>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hilbert {

// Ordered so that echoing a document back preserves insertion order.
using Json = nlohmann::ordered_json;

struct SceneParams {
  int word_len = 3;
  double window = tol::window;
  double r = 0.5;
  std::uint64_t seed = kDefaultSeed;
  std::vector<Vec> points;  // chart coordinates, consumed per command
};

struct FamilySpec {
  std::vector<int> representatives;  // indices into Scene::subsets
  int word_len = 2;
};

struct Scene {
  int version = 1;
  std::shared_ptr<const ConvexDomain> domain;
  GeneratorSet gens;
  std::vector<std::string> subset_names;
  std::vector<ConvexSubset> subsets;
  std::optional<FamilySpec> family;
  SceneParams params;
};

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& path, const std::string& message) {
  fail(errc::parse_error, path + ": " + message);
}

[[noreturn]] inline void validation_fail(const std::string& path, const std::string& message) {
  fail(errc::validation_error, path + ": " + message);
}

// Rethrows scene diagnostics untouched; anything else becomes a validation
// failure tagged with the document path that triggered it.
[[noreturn]] inline void validation_wrap(const std::string& path, const error& e) {
  if (e.code() == errc::parse_error || e.code() == errc::validation_error) throw e;
  validation_fail(path, e.what());
}

inline void require_object(const Json& j, const std::string& path,
                           std::initializer_list<const char*> required,
                           std::initializer_list<const char*> optional) {
  if (!j.is_object()) parse_fail(path, "expected an object");
  for (const char* k : required)
    if (!j.contains(k)) parse_fail(path + "." + k, "missing required key");
  for (const auto& item : j.items()) {
    auto match = [&](const char* s) { return item.key() == s; };
    if (!std::any_of(required.begin(), required.end(), match) &&
        !std::any_of(optional.begin(), optional.end(), match))
      parse_fail(path + "." + item.key(), "unknown key");
  }
}

inline double get_double(const Json& j, const std::string& path) {
  if (!j.is_number()) parse_fail(path, "expected a number");
  return j.get<double>();
}

inline int get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) parse_fail(path, "expected an integer");
  return j.get<int>();
}

inline std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) parse_fail(path, "expected a string");
  return j.get<std::string>();
}

inline Vec get_vector(const Json& j, const std::string& path, int expect = -1) {
  if (!j.is_array() || j.empty()) parse_fail(path, "expected a nonempty array of numbers");
  if (static_cast<int>(j.size()) > kMaxDim)
    parse_fail(path, "at most " + std::to_string(kMaxDim) + " entries");
  Vec v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) v[i] = get_double(j[i], path + "[" + std::to_string(i) + "]");
  if (expect >= 0 && v.size() != expect)
    parse_fail(path, "expected " + std::to_string(expect) + " entries");
  return v;
}

// A list of equal-length coordinate rows (any count, each bounded by kMaxDim).
inline std::vector<Vec> get_rows(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) parse_fail(path, "expected a nonempty array of rows");
  std::vector<Vec> rows;
  rows.reserve(j.size());
  rows.push_back(get_vector(j[0], path + "[0]"));
  for (std::size_t i = 1; i < j.size(); ++i)
    rows.push_back(get_vector(j[i], path + "[" + std::to_string(i) + "]", int(rows[0].size())));
  return rows;
}

inline Mat get_matrix(const Json& j, const std::string& path) {
  std::vector<Vec> rows = get_rows(j, path);
  if (static_cast<int>(rows.size()) > kMaxDim)
    parse_fail(path, "at most " + std::to_string(kMaxDim) + " rows");
  Mat m(static_cast<int>(rows.size()), rows[0].size());
  for (int i = 0; i < m.rows(); ++i) m.row(i) = rows[i];
  return m;
}

inline std::shared_ptr<const ConvexDomain> parse_domain(const Json& j, const std::string& path) {
  require_object(j, path, {"type"}, {"dim", "form", "vertices"});
  const std::string type = get_string(j.at("type"), path + ".type");
  auto forbid = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys)
      if (j.contains(k)) parse_fail(path + "." + k, "key not valid for domain type '" + type + "'");
  };
  auto need = [&](const char* k) -> const Json& {
    if (!j.contains(k)) parse_fail(path + "." + k, "missing required key");
    return j.at(k);
  };
  auto homogeneous_rows = [&](const char* k) {
    std::vector<Vec> rows = get_rows(need(k), path + "." + k);
    std::vector<HomogeneousPoint> vs;
    vs.reserve(rows.size());
    for (const Vec& r : rows) vs.emplace_back(r);
    return vs;
  };
  try {
    if (type == "ball") {
      forbid({"form", "vertices"});
      int dim = j.contains("dim") ? get_int(j.at("dim"), path + ".dim") : 2;
      if (dim < 1 || dim + 1 > kMaxDim)
        validation_fail(path + ".dim", "chart dimension out of range");
      return std::make_shared<const ConvexDomain>(ConvexDomain::unit_ball(dim + 1));
    }
    if (type == "square") {
      forbid({"dim", "form", "vertices"});
      return std::make_shared<const ConvexDomain>(ConvexDomain::square());
    }
    if (type == "simplex") {
      forbid({"form"});
      if (j.contains("vertices")) {
        forbid({"dim"});
        return std::make_shared<const ConvexDomain>(ConvexDomain::simplex(homogeneous_rows("vertices")));
      }
      int dim = j.contains("dim") ? get_int(j.at("dim"), path + ".dim") : 2;
      if (dim < 1 || dim + 1 > kMaxDim)
        validation_fail(path + ".dim", "chart dimension out of range");
      return std::make_shared<const ConvexDomain>(ConvexDomain::standard_simplex(dim));
    }
    if (type == "ellipsoid") {
      forbid({"dim", "vertices"});
      return std::make_shared<const ConvexDomain>(
          ConvexDomain::ellipsoid(get_matrix(need("form"), path + ".form")));
    }
    if (type == "polytope") {
      forbid({"dim", "form"});
      return std::make_shared<const ConvexDomain>(ConvexDomain::polytope(homogeneous_rows("vertices")));
    }
  } catch (const error& e) {
    validation_wrap(path, e);
  }
  parse_fail(path + ".type", "unknown domain type '" + type + "'");
}

inline std::vector<ProjectiveMap> parse_matrix_generators(const Json& j, const std::string& path,
                                                          int dim) {
  if (!j.is_array()) parse_fail(path, "expected an array of generator specs");
  std::vector<ProjectiveMap> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string pi = path + "[" + std::to_string(i) + "]";
    require_object(j[i], pi, {"matrix"}, {});
    Mat m = get_matrix(j[i].at("matrix"), pi + ".matrix");
    if (m.rows() != dim || m.cols() != dim)
      validation_fail(pi + ".matrix", "expected a " + std::to_string(dim) + "x" +
                                          std::to_string(dim) + " matrix");
    try {
      out.emplace_back(m);
    } catch (const error& e) {
      validation_wrap(pi + ".matrix", e);
    }
  }
  return out;
}

inline GeneratorSet parse_named_generators(const Json& j, const std::string& path) {
  require_object(j, path, {"name"}, {"t", "angle", "p", "q", "r"});
  const std::string name = get_string(j.at("name"), path + ".name");
  auto need_num = [&](const char* k) {
    if (!j.contains(k)) parse_fail(path + "." + k, "missing required key");
    return get_double(j.at(k), path + "." + k);
  };
  auto need_int = [&](const char* k) {
    if (!j.contains(k)) parse_fail(path + "." + k, "missing required key");
    return get_int(j.at(k), path + "." + k);
  };
  auto forbid = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys)
      if (j.contains(k)) parse_fail(path + "." + k, "key not valid for constructor '" + name + "'");
  };
  try {
    if (name == "schottky_pso21") {
      forbid({"p", "q", "r"});
      return schottky_pso21(need_num("t"), need_num("angle"));
    }
    if (name == "coxeter_triangle") {
      forbid({"t", "angle"});
      return coxeter_triangle(need_int("p"), need_int("q"), need_int("r")).first;
    }
  } catch (const error& e) {
    validation_wrap(path, e);
  }
  parse_fail(path + ".name", "unknown generator constructor '" + name + "'");
}

// Letters a..z act by the generators, A..Z by their inverses, left to right.
inline ProjectiveMap word_map(const GeneratorSet& gens, const std::string& word,
                              const std::string& path) {
  if (word.empty()) validation_fail(path, "empty word");
  ProjectiveMap m = ProjectiveMap::identity(gens.domain().ambient_dim());
  for (char c : word) {
    int rank = -1;
    if (c >= 'a' && c <= 'z') rank = 2 * (c - 'a');
    if (c >= 'A' && c <= 'Z') rank = 2 * (c - 'A') + 1;
    if (rank < 0 || rank >= gens.letter_count())
      validation_fail(path, std::string("letter '") + c + "' has no generator");
    m = m.compose(gens.letter(rank));
  }
  return m;
}

inline void parse_subsets(const Json& j, const std::string& path, Scene& scene) {
  if (!j.is_array()) parse_fail(path, "expected an array of subset specs");
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string pi = path + "[" + std::to_string(i) + "]";
    require_object(j[i], pi, {"name"}, {"points", "axis_word"});
    std::string name = get_string(j[i].at("name"), pi + ".name");
    if (name.empty()) validation_fail(pi + ".name", "empty subset name");
    if (std::find(scene.subset_names.begin(), scene.subset_names.end(), name) !=
        scene.subset_names.end())
      validation_fail(pi + ".name", "duplicate subset name '" + name + "'");
    const bool has_points = j[i].contains("points");
    if (has_points == j[i].contains("axis_word"))
      parse_fail(pi, "exactly one of points/axis_word is required");
    try {
      if (has_points) {
        std::vector<Vec> rows = get_rows(j[i].at("points"), pi + ".points");
        if (rows[0].size() != scene.domain->chart_dim())
          validation_fail(pi + ".points", "chart dimension mismatch");
        std::vector<HomogeneousPoint> pts;
        pts.reserve(rows.size());
        for (const Vec& r : rows) pts.push_back(scene.domain->point_from_chart(r));
        scene.subsets.emplace_back(scene.domain, std::move(pts));
      } else {
        std::string word = get_string(j[i].at("axis_word"), pi + ".axis_word");
        scene.subsets.push_back(
            axis_of(scene.domain, word_map(scene.gens, word, pi + ".axis_word")));
      }
    } catch (const error& e) {
      validation_wrap(pi, e);
    }
    scene.subset_names.push_back(std::move(name));
  }
}

inline FamilySpec parse_family(const Json& j, const std::string& path, const Scene& scene) {
  require_object(j, path, {"representatives"}, {"word_len"});
  FamilySpec f;
  const Json& reps = j.at("representatives");
  if (!reps.is_array() || reps.empty())
    parse_fail(path + ".representatives", "expected a nonempty array of subset names");
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const std::string pi = path + ".representatives[" + std::to_string(i) + "]";
    std::string name = get_string(reps[i], pi);
    auto it = std::find(scene.subset_names.begin(), scene.subset_names.end(), name);
    if (it == scene.subset_names.end()) validation_fail(pi, "unknown subset '" + name + "'");
    f.representatives.push_back(static_cast<int>(it - scene.subset_names.begin()));
  }
  if (j.contains("word_len")) f.word_len = get_int(j.at("word_len"), path + ".word_len");
  if (f.word_len < 0 || f.word_len > kWordCap)
    validation_fail(path + ".word_len", "word length out of range");
  return f;
}

inline SceneParams parse_params(const Json& j, const std::string& path, const ConvexDomain& dom) {
  require_object(j, path, {}, {"word_len", "window", "r", "seed", "points"});
  SceneParams p;
  if (j.contains("word_len")) {
    p.word_len = get_int(j.at("word_len"), path + ".word_len");
    if (p.word_len < 0 || p.word_len > kWordCap)
      validation_fail(path + ".word_len", "word length out of range");
  }
  if (j.contains("window")) {
    p.window = get_double(j.at("window"), path + ".window");
    if (!(p.window > 0)) validation_fail(path + ".window", "window must be positive");
  }
  if (j.contains("r")) {
    p.r = get_double(j.at("r"), path + ".r");
    if (!(p.r > 0)) validation_fail(path + ".r", "radius must be positive");
  }
  if (j.contains("seed")) {
    const Json& s = j.at("seed");
    if (!s.is_number_integer() && !s.is_number_unsigned())
      parse_fail(path + ".seed", "expected an integer");
    if (s.is_number_integer() && s.get<std::int64_t>() < 0)
      validation_fail(path + ".seed", "seed must be non-negative");
    p.seed = s.get<std::uint64_t>();
  }
  if (j.contains("points")) {
    p.points = get_rows(j.at("points"), path + ".points");
    if (p.points[0].size() != dom.chart_dim())
      validation_fail(path + ".points", "chart dimension mismatch");
  }
  return p;
}

}  // namespace detail

inline Scene parse_scene(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    detail::parse_fail("$", e.what());
  }
  detail::require_object(j, "$", {"version"},
                         {"domain", "generators", "subsets", "family", "params"});
  int version = detail::get_int(j.at("version"), "$.version");
  if (version != 1) detail::parse_fail("$.version", "unsupported schema version");

  std::shared_ptr<const ConvexDomain> domain;
  std::optional<GeneratorSet> gens;
  if (j.contains("generators") && j.at("generators").is_object()) {
    if (j.contains("domain"))
      detail::validation_fail("$.domain", "a named generator constructor fixes its own domain");
    gens = detail::parse_named_generators(j.at("generators"), "$.generators");
    domain = gens->domain_ptr();
  } else {
    if (!j.contains("domain")) detail::parse_fail("$.domain", "missing required key");
    domain = detail::parse_domain(j.at("domain"), "$.domain");
    std::vector<ProjectiveMap> ms;
    if (j.contains("generators"))
      ms = detail::parse_matrix_generators(j.at("generators"), "$.generators",
                                           domain->ambient_dim());
    try {
      gens.emplace(domain, std::move(ms));
    } catch (const error& e) {
      detail::validation_wrap("$.generators", e);
    }
  }

  Scene scene{version, std::move(domain), std::move(*gens), {}, {}, std::nullopt, {}};
  if (j.contains("subsets")) detail::parse_subsets(j.at("subsets"), "$.subsets", scene);
  if (j.contains("family")) scene.family = detail::parse_family(j.at("family"), "$.family", scene);
  if (j.contains("params"))
    scene.params = detail::parse_params(j.at("params"), "$.params", *scene.domain);
  return scene;
}

}  // namespace hilbert
