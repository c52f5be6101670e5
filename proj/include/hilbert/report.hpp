#pragma once
// Structured command reports with a deterministic JSON rendering: keys in
// insertion order, floats at 17 significant digits (round-trip exact),
// non-finite numbers as the strings "inf"/"-inf"/"nan". Timing is
// informational and excluded from the canonical byte stream, which is what
// the determinism contract covers.

#include "hilbert/scene.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace hilbert {

struct Report {
  std::string command;
  Json config = Json::object();
  Json results = Json::object();
  bool pass = true;
  std::vector<std::string> witnesses;  // human-readable check failures
  double elapsed_ms = 0.0;
};

namespace detail {

inline void append_double(double v, std::string& out) {
  if (std::isnan(v)) {
    out += "\"nan\"";
  } else if (std::isinf(v)) {
    out += v > 0 ? "\"inf\"" : "\"-inf\"";
  } else {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  }
}

inline void append_json(const Json& j, int depth, std::string& out) {
  using vt = Json::value_t;
  auto pad = [&](int n) { out.append(static_cast<std::size_t>(2 * n), ' '); };
  switch (j.type()) {
    case vt::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& item : j.items()) {
        if (!first) out += ",\n";
        first = false;
        pad(depth + 1);
        out += Json(item.key()).dump();
        out += ": ";
        append_json(item.value(), depth + 1, out);
      }
      out += "\n";
      pad(depth);
      out += "}";
      return;
    }
    case vt::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalars = true;
      for (const auto& e : j) scalars = scalars && !e.is_structured();
      out += scalars ? "[" : "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += scalars ? ", " : ",\n";
        first = false;
        if (!scalars) pad(depth + 1);
        append_json(e, depth + 1, out);
      }
      if (!scalars) {
        out += "\n";
        pad(depth);
      }
      out += "]";
      return;
    }
    case vt::string:
      out += j.dump();
      return;
    case vt::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case vt::number_integer:
      out += std::to_string(j.get<long long>());
      return;
    case vt::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      return;
    case vt::number_float:
      append_double(j.get<double>(), out);
      return;
    default:
      out += "null";
      return;
  }
}

}  // namespace detail

// Every tolerance the library uses, so reports are self-describing.
inline Json tolerance_block() {
  Json t = Json::object();
  t["alg"] = tol::alg;
  t["conv"] = tol::conv;
  t["geo"] = tol::geo;
  t["opt"] = tol::opt;
  t["samp"] = tol::samp;
  t["prox"] = tol::prox;
  t["acc"] = tol::acc;
  t["adj"] = tol::adj;
  t["rank"] = tol::rank;
  t["chart_margin"] = tol::chart_margin;
  t["collinear"] = tol::collinear;
  t["dedup"] = tol::dedup;
  t["grid"] = tol::grid;
  t["window"] = tol::window;
  return t;
}

inline std::string report_json(const Report& r, bool include_timing = true) {
  Json doc = Json::object();
  doc["command"] = r.command;
  doc["config"] = r.config;
  doc["pass"] = r.pass;
  doc["witnesses"] = r.witnesses;
  doc["results"] = r.results;
  if (include_timing) {
    Json t = Json::object();
    t["elapsed_ms"] = r.elapsed_ms;
    doc["timing"] = t;
  }
  std::string out;
  detail::append_json(doc, 0, out);
  out += "\n";
  return out;
}

inline std::string canonical_report_json(const Report& r) { return report_json(r, false); }

}  // namespace hilbert
