// hilbert-lab: scene-driven command line for Hilbert geometry experiments.
// Exit codes: 0 = pass, 2 = a check failed (witnesses in the report), 1 =
// error (bad arguments, unreadable scene, unsupported command).

#include "CLI11.hpp"
#include "hilbert/runner.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) hilbert::fail(hilbert::errc::invalid_argument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) hilbert::fail(hilbert::errc::invalid_argument, "cannot write " + path);
  out << text;
}

bool visual_command(const std::string& c) {
  return c == "orbit" || c == "limitset" || c == "core" || c == "isolation" || c == "quotient" ||
         c == "plot";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hilbert-lab: properly convex domains, Hilbert metrics, and group dynamics"};
  std::string command, scene_path, out_path, svg_path;
  std::optional<int> word_len;
  std::optional<double> r_opt, window_opt;
  std::optional<std::uint64_t> seed_opt;
  app.add_option("command", command,
                 "one of distance|orbit|limitset|core|isolation|quotient|checks|plot")
      ->required();
  app.add_option("--scene", scene_path, "scene JSON file")->required();
  app.add_option("--out", out_path, "write the report JSON here (default: stdout)");
  app.add_option("--svg", svg_path, "write the SVG rendering here (visual commands only)");
  app.add_option("--word-len", word_len, "override params.word_len");
  app.add_option("--r", r_opt, "override params.r");
  app.add_option("--window", window_opt, "override params.window");
  app.add_option("--seed", seed_opt, "override params.seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    hilbert::Scene scene = hilbert::parse_scene(read_file(scene_path));
    if (word_len) {
      if (*word_len < 0 || *word_len > hilbert::kWordCap)
        hilbert::fail(hilbert::errc::validation_error, "--word-len out of range");
      scene.params.word_len = *word_len;
    }
    if (r_opt) {
      if (!(*r_opt > 0)) hilbert::fail(hilbert::errc::validation_error, "--r must be positive");
      scene.params.r = *r_opt;
    }
    if (window_opt) {
      if (!(*window_opt > 0))
        hilbert::fail(hilbert::errc::validation_error, "--window must be positive");
      scene.params.window = *window_opt;
    }
    if (seed_opt) scene.params.seed = *seed_opt;

    hilbert::RunResult run = hilbert::run_scene_command(scene, command);
    std::string doc = hilbert::report_json(run.report);
    if (out_path.empty()) {
      std::fputs(doc.c_str(), stdout);
    } else {
      write_file(out_path, doc);
    }
    if (!svg_path.empty()) {
      if (!visual_command(command))
        hilbert::fail(hilbert::errc::invalid_argument,
                      "the " + command + " command produces no SVG");
      if (run.svg.empty())
        hilbert::fail(hilbert::errc::unsupported_plot_dimension,
                      "the scene's chart is not 2-dimensional");
      write_file(svg_path, run.svg);
    }
    return run.report.pass ? 0 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "hilbert-lab: %s\n", e.what());
    return 1;
  }
}
