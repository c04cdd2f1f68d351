#include "packdens/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "packdens/density.hpp"
#include "packdens/errors.hpp"
#include "packdens/generators.hpp"
#include "packdens/io.hpp"
#include "packdens/render.hpp"

namespace packdens {

namespace {

// Input problems that map to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Window parse_window_flag(const std::string& text) {
  std::vector<Scalar> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    try {
      parts.push_back(parse_scalar(part));
    } catch (const std::invalid_argument&) {
      throw InputError("bad --window component '" + part + "'");
    }
  }
  if (parts.size() != 4) throw InputError("--window needs xmin,ymin,xmax,ymax");
  try {
    return make_window(parts[0], parts[1], parts[2], parts[3]);
  } catch (const InvalidWindow& e) {
    throw InputError(std::string("--window: ") + e.what());
  }
}

PointFile load(const std::string& path, std::istream& in) {
  try {
    if (path == "-") return read_point_file(in);
    std::ifstream file(path);
    if (!file) throw InputError("cannot open " + path);
    return read_point_file(file);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::size_t line_of(const PointFile& f, std::size_t index) {
  return index < f.lines.size() ? f.lines[index] : index + 1;
}

// Validates the file's points against the window from the file or the flag.
Configuration load_configuration(const PointFile& f, const std::string& window_flag) {
  std::optional<Window> window = f.window;
  if (!window_flag.empty()) window = parse_window_flag(window_flag);
  // Check spacing first so a bad pair is reported even without a window.
  Window probe = window.value_or(Window{});
  if (!window) {
    for (const Point& p : f.points) {
      probe.xmin = std::min(probe.xmin, p.x), probe.xmax = std::max(probe.xmax, p.x);
      probe.ymin = std::min(probe.ymin, p.y), probe.ymax = std::max(probe.ymax, p.y);
    }
  }
  try {
    auto c = validate(f.points, probe);
    if (!window) throw InputError("no window: add a 'window xmin ymin xmax ymax' line or --window");
    return c;
  } catch (const PairTooClose& e) {
    throw InputError("points on lines " + std::to_string(line_of(f, e.first)) + " and " +
                     std::to_string(line_of(f, e.second)) + " are closer than 2 (distance_squared " +
                     to_string(e.distance_squared) + ")");
  } catch (const OutOfWindow& e) {
    throw InputError("point on line " + std::to_string(line_of(f, e.index)) +
                     " lies outside the window");
  } catch (const InvalidWindow& e) {
    throw InputError(e.what());
  }
}

Triangulation triangulate_or_throw(const std::vector<Point>& points) {
  try {
    return delaunay(points);
  } catch (const GeometryError& e) {
    throw InputError(e.what());
  }
}

void note_violations(CertificationReport& r, const std::string& name, const CheckResult& check) {
  constexpr std::size_t kMaxListed = 20;
  for (std::size_t i = 0; i < check.violations.size() && i < kMaxListed; ++i)
    r.violations.push_back(name + ": triangle " + std::to_string(check.violations[i].triangle) +
                           ": " + check.violations[i].reason);
  if (check.violations.size() > kMaxListed)
    r.violations.push_back(name + ": " + std::to_string(check.violations.size() - kMaxListed) +
                           " more");
}

// Fills the density part of the report and returns the exit code.
int analyze_into(CertificationReport& r, const Configuration& c, const Scalar& margin,
                 std::ostream& err) {
  const Triangulation t = triangulate_or_throw(c.points);
  r.n_triangles = t.triangles.size();
  r.delaunay_ok = verify_delaunay(t).passed;
  r.min_pairwise_distance_squared = min_pairwise_distance_squared(c.points);

  const auto stats = all_stats(t);
  auto selected = stats;
  r.mode = "all";
  r.interior_margin = margin;
  if (margin > 0) {
    auto inner = interior_stats(stats, t, c.window, margin);
    if (inner.empty()) {
      err << "note: no triangle lies " << to_string(margin)
          << " inside the window; analyzing all triangles\n";
    } else {
      selected = std::move(inner);
      r.mode = "interior";
    }
  }
  r.n_analyzed = selected.size();
  r.density = aggregate(selected, r.saturated);
  const DensityReport& d = *r.density;

  if (!r.delaunay_ok) r.violations.push_back("delaunay: empty-circle check failed");
  if (!d.lemma1.applicable) r.violations.push_back("lemma1: configuration is not saturated");
  note_violations(r, "lemma1", d.lemma1);
  note_violations(r, "lemma2", d.lemma2);
  if (!d.bound_ok) r.violations.push_back("bound: overall density exceeds pi/sqrt(12)");

  const bool ok = r.delaunay_ok && d.lemma1_ok && d.lemma2_ok && d.bound_ok;
  if (!ok) {
    std::string failed;
    if (!r.delaunay_ok) failed += " delaunay";
    if (!d.lemma1_ok) failed += " lemma1";
    if (!d.lemma2_ok) failed += " lemma2";
    if (!d.bound_ok) failed += " bound";
    err << "violation:" << failed << '\n';
  }
  return ok ? kExitOk : kExitViolation;
}

struct Options {
  std::string input = "-";
  std::string output;
  std::string window;
  std::string kind = "hex";
  std::string spacing = "2";
  std::string perturb = "0";
  std::uint64_t seed = 0;
  std::size_t max_points = 0;
  std::size_t budget = 10000;
  std::string margin = "4";
  bool no_heat = false, no_edges = false, no_circles = false, no_window = false;
  bool circumcircles = false;
};

Scalar parse_flag(const std::string& name, const std::string& text) {
  try {
    return parse_scalar(text);
  } catch (const std::invalid_argument&) {
    throw InputError("bad " + name + " '" + text + "'");
  }
}

int cmd_generate(const Options& o, std::ostream& out) {
  static const std::map<std::string, GeneratorKind> kinds = {
      {"hex", GeneratorKind::Hexagonal},
      {"square", GeneratorKind::Square},
      {"perturbed-hex", GeneratorKind::PerturbedHex},
      {"random", GeneratorKind::RandomDart}};
  GeneratorSpec spec;
  spec.kind = kinds.at(o.kind);
  spec.window = parse_window_flag(o.window.empty() ? "0,0,20,20" : o.window);
  spec.spacing = parse_flag("--spacing", o.spacing);
  spec.perturbation = parse_flag("--perturb", o.perturb);
  spec.seed = o.seed;
  spec.failure_budget = o.budget;
  spec.max_points = o.max_points;
  Configuration c;
  try {
    c = generate(spec);
  } catch (const InvalidSpec& e) {
    throw InputError(e.what());
  }
  std::ostringstream comment;
  comment << "generated kind=" << o.kind << " spacing=" << to_string(spec.spacing);
  if (spec.kind == GeneratorKind::PerturbedHex || spec.kind == GeneratorKind::RandomDart)
    comment << " seed=" << o.seed;
  if (spec.kind == GeneratorKind::PerturbedHex) comment << " perturb=" << to_string(spec.perturbation);
  write_point_file(out, c, comment.str());
  return kExitOk;
}

int cmd_validate(const Options& o, std::istream& in, std::ostream& out) {
  auto c = load_configuration(load(o.input, in), o.window);
  out << "valid: " << c.points.size() << " points\n";
  return kExitOk;
}

int cmd_saturate(const Options& o, std::istream& in, std::ostream& out) {
  auto c = load_configuration(load(o.input, in), o.window);
  auto result = saturate_logged(c);
  write_point_file(out, result.configuration,
                   "saturated: " + std::to_string(result.insertions.size()) + " inserted",
                   c.points.size(), result.insertions);
  return kExitOk;
}

int cmd_triangulate(const Options& o, std::istream& in, std::ostream& out) {
  auto f = load(o.input, in);
  auto t = triangulate_or_throw(f.points);
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& tri : t.triangles)
    for (int k = 0; k < 3; ++k) edges.insert(std::minmax(tri.v[k], tri.v[(k + 1) % 3]));
  out << "# " << t.points.size() << " points, " << t.triangles.size() << " triangles, "
      << edges.size() << " edges\n";
  for (auto [a, b] : edges) out << a << ' ' << b << '\n';
  return kExitOk;
}

int cmd_analyze(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  auto c = load_configuration(load(o.input, in), o.window);
  CertificationReport r;
  r.n_points = c.points.size();
  const Scalar margin = parse_flag("--interior-margin", o.margin);
  if (auto w = find_witness(c)) {
    r.witnesses.push_back(*w);
    err << "violation: not saturated, witness at (" << to_string(w->location.x) << ", "
        << to_string(w->location.y) << ")\n";
  } else {
    r.saturated = true;
  }
  int code = kExitViolation;
  try {
    code = analyze_into(r, c, margin, err);
  } catch (const InputError& e) {
    r.error = e.what();
  }
  if (!r.saturated) code = kExitViolation;
  write_report(out, r);
  return code;
}

int cmd_certify(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  CertificationReport r;
  r.interior_margin = 0;
  Configuration c;
  try {
    c = load_configuration(load(o.input, in), o.window);
  } catch (const InputError& e) {
    r.error = e.what();
    write_report(out, r);
    throw;
  }
  const Scalar margin = parse_flag("--interior-margin", o.margin);
  auto result = saturate_logged(c);
  r.n_points = result.configuration.points.size();
  r.n_inserted = result.insertions.size();
  for (const auto& ins : result.insertions) r.witnesses.push_back(ins.witness);
  r.saturated = true;
  const int code = analyze_into(r, result.configuration, margin, err);
  write_report(out, r);
  return code;
}

int cmd_render(const Options& o, std::istream& in, std::ostream& out) {
  auto f = load(o.input, in);
  auto t = triangulate_or_throw(f.points);
  std::optional<Window> window = f.window;
  if (!o.window.empty()) window = parse_window_flag(o.window);
  RenderLayers layers;
  layers.heat = !o.no_heat;
  layers.edges = !o.no_edges;
  layers.circles = !o.no_circles;
  layers.window = !o.no_window;
  layers.circumcircles = o.circumcircles;
  out << render_svg(t, window, layers);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Options o;
  CLI::App app{"Circle-packing density certifier", "packdens"};
  app.require_subcommand(1);

  auto input = [&](CLI::App* cmd) {
    cmd->add_option("input", o.input, "Point file, '-' for standard input");
  };
  auto output = [&](CLI::App* cmd) { cmd->add_option("-o,--output", o.output, "Output file"); };
  auto window = [&](CLI::App* cmd, const char* help) {
    cmd->add_option("--window", o.window, help);
  };
  auto margin = [&](CLI::App* cmd) {
    cmd->add_option("--interior-margin", o.margin,
                    "Analyze only triangles this far inside the window; 0 for all");
  };

  auto* gen = app.add_subcommand("generate", "Write a generated configuration");
  gen->add_option("--kind", o.kind)->check(CLI::IsMember({"hex", "square", "perturbed-hex", "random"}));
  gen->add_option("--spacing", o.spacing, "Minimum distance between centers, at least 2");
  gen->add_option("--perturb", o.perturb, "Perturbation amplitude for perturbed-hex");
  gen->add_option("--seed", o.seed);
  gen->add_option("--max-points", o.max_points, "Stop random darts after this many points");
  gen->add_option("--budget", o.budget, "Consecutive rejected darts before stopping");
  window(gen, "xmin,ymin,xmax,ymax (default 0,0,20,20)");
  output(gen);

  auto* val = app.add_subcommand("validate", "Check spacing and window containment");
  auto* sat = app.add_subcommand("saturate", "Insert points until no unit circle fits");
  auto* tri = app.add_subcommand("triangulate", "Write the Delaunay edge list");
  auto* ana = app.add_subcommand("analyze", "Report densities of a saturated configuration");
  auto* cer = app.add_subcommand("certify", "Saturate, triangulate and check the density bound");
  auto* ren = app.add_subcommand("render", "Draw the triangulation as SVG");
  for (auto* cmd : {val, sat, tri, ana, cer, ren}) {
    input(cmd);
    output(cmd);
  }
  for (auto* cmd : {val, sat, ana, cer}) window(cmd, "Override the file's window");
  window(ren, "Override the file's window");
  margin(ana);
  margin(cer);
  ren->add_flag("--no-heat", o.no_heat);
  ren->add_flag("--no-edges", o.no_edges);
  ren->add_flag("--no-circles", o.no_circles);
  ren->add_flag("--no-window", o.no_window);
  ren->add_flag("--circumcircles", o.circumcircles);

  std::vector<const char*> argv{"packdens"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  std::ofstream file;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) {
      err << "error: cannot write " << o.output << '\n';
      return kExitInput;
    }
  }
  std::ostream& sink = o.output.empty() ? out : file;

  try {
    if (gen->parsed()) return cmd_generate(o, sink);
    if (val->parsed()) return cmd_validate(o, in, sink);
    if (sat->parsed()) return cmd_saturate(o, in, sink);
    if (tri->parsed()) return cmd_triangulate(o, in, sink);
    if (ana->parsed()) return cmd_analyze(o, in, sink, err);
    if (cer->parsed()) return cmd_certify(o, in, sink, err);
    if (ren->parsed()) return cmd_render(o, in, sink);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitInput;
}

}  // namespace packdens
