#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lep/epscan.hpp"
#include "lep/experiments.hpp"
#include "lep/expr.hpp"
#include "lep/lindblad.hpp"
#include "lep/model_io.hpp"
#include "lep/tropical.hpp"
#include "svg.hpp"

namespace {

using namespace lep;
using nlohmann::json;

enum ExitCode { kOk = 0, kFailure = 1, kInput = 2, kPrecondition = 3, kNumerical = 4 };

struct Options {
  std::string model;
  std::vector<std::string> binds;
  std::string omega0;
  std::string perturb = "generic";
  std::uint64_t seed = kDefaultSeed;
  std::string shift_sign = "plus";
  double eps_min = 1e-6;
  double eps_max = 1e-2;
  int eps_points = 25;
  int moduli = 40;
  int phases = 64;
  double radius = 0.01;
  int steps = 400;
  int turns = 1;
  std::string branch = "fastest";
  std::string target;
  std::string out;
  std::string svg;
};

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

Bindings parse_bindings(const std::vector<std::string>& binds, const ModelSpec& spec) {
  Bindings out;
  for (const auto& b : binds) {
    auto eq = b.find('=');
    if (eq == std::string::npos) throw InputError("binding '" + b + "' is not of the form name=value");
    std::string name = b.substr(0, eq);
    if (std::find(spec.params.begin(), spec.params.end(), name) == spec.params.end())
      throw InputError("model '" + spec.name + "' has no parameter '" + name + "'");
    if (out.contains(name)) throw InputError("parameter '" + name + "' bound twice");
    out[name] = Rational::parse(b.substr(eq + 1));
  }
  return out;
}

void require_bound(const Bindings& b, const ModelSpec& spec) {
  std::string missing;
  for (const auto& p : spec.params)
    if (!b.contains(p)) missing += (missing.empty() ? "" : ", ") + p;
  if (!missing.empty()) throw InputError("unbound parameters: " + missing);
}

struct Setup {
  BuiltinModel model;
  Bindings bindings;
  PolyMatrix l0;
  GaussRational omega0;
};

Setup load(const Options& o, bool need_all, bool need_omega0) {
  Setup s{resolve_model(o.model), {}, {}, {}};
  s.bindings = parse_bindings(o.binds, s.model.spec);
  if (need_all) require_bound(s.bindings, s.model.spec);
  s.l0 = substitute(s.model.split.effective(), s.bindings);
  if (need_omega0) {
    if (o.omega0.empty()) throw InputError("--omega0 is required");
    s.omega0 = Rational::parse(o.omega0);
    if (o.shift_sign == "minus") s.omega0 = -s.omega0;
    const MultiPoly p = char_poly(s.l0, std::nullopt, MultiPoly::constant(s.l0.vars(), s.omega0));
    if (p.min_degree(kOmega) < 1) throw PreconditionError("omega0 = " + s.omega0.str() + " is not an eigenvalue");
  }
  return s;
}

PolyMatrix perturbation(const Options& o, const Setup& s) {
  if (o.perturb == "generic") return generic_perturbation(s.l0.rows(), o.seed, s.l0.vars());
  return substitute(perturbation_matrix(s.model.spec, o.perturb), s.bindings);
}

json perturbation_json(const Options& o) {
  if (o.perturb == "generic") return {{"kind", "generic"}, {"seed", o.seed}};
  return {{"kind", "parameter"}, {"param", o.perturb}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

// Plain JSON results go to --out or stdout.
void emit_json(const Options& o, const json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty()) std::cout << text;
  else write_text(o.out, text);
}

// CSV data with a JSON summary: CSV to --out and summary to stdout, or CSV to
// stdout and summary to stderr.
void emit_data(const Options& o, const std::string& csv, const json& summary) {
  const std::string text = summary.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << csv;
    std::cerr << text;
  } else {
    write_text(o.out, csv);
    std::cout << text;
  }
}

json matrix_json(const PolyMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(format_poly(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json bindings_json(const Bindings& b) {
  json out = json::object();
  for (const auto& [k, v] : b) out[k] = v.str();
  return out;
}

int cmd_build(const Options& o) {
  Setup s = load(o, false, false);
  json doc{{"schema", 1},
           {"model", s.model.spec.name},
           {"dim", s.model.spec.dim},
           {"params", s.model.spec.params},
           {"bindings", bindings_json(s.bindings)},
           {"liouvillian", matrix_json(s.l0)},
           {"no_jump", matrix_json(substitute(s.model.split.no_jump, s.bindings))},
           {"jumps", matrix_json(substitute(s.model.split.jumps, s.bindings))}};
  emit_json(o, doc);
  return kOk;
}

int cmd_polygon(const Options& o) {
  Setup s = load(o, true, true);
  const PolyMatrix l1 = perturbation(o, s);
  const MultiPoly f = char_poly(s.l0, l1, MultiPoly::constant(s.l0.vars(), s.omega0));
  const NewtonPolygon polygon = newton_polygon(f);
  const EPCandidate cls = classify(s.model, s.bindings, s.omega0, o.seed);
  json doc{{"schema", 1},
           {"model", s.model.spec.name},
           {"bindings", bindings_json(s.bindings)},
           {"omega0", s.omega0.str()},
           {"perturbation", perturbation_json(o)},
           {"charpoly", format_poly(f)},
           {"polygon", polygon_to_json(polygon)},
           {"classification", candidate_to_json(cls)}};
  emit_json(o, doc);
  if (!o.svg.empty()) {
    svg::Plot plot{"Newton polygon", "omega-degree i", "eps-valuation j", {}};
    svg::Series pts{{}, kPalette[0], false};
    for (const auto& p : polygon.points) pts.points.emplace_back(p.i, p.j);
    svg::Series hull{{}, kPalette[3], true};
    for (const auto& seg : polygon.segments) {
      if (seg.vertical()) {
        hull.points.emplace_back(seg.start.i, seg.start.j + 2);
      }
      hull.points.emplace_back(seg.start.i, seg.start.j);
      hull.points.emplace_back(seg.end.i, seg.end.j);
    }
    plot.series = {pts, hull};
    svg::write_file(o.svg, svg::render(plot));
  }
  return kOk;
}

int cmd_scan(const Options& o) {
  BuiltinModel model = resolve_model(o.model);
  if (o.target.empty()) throw InputError("--target is required");
  Bindings fixed = parse_bindings(o.binds, model.spec);
  ScanReport report = scan(model, o.target, fixed, o.seed);
  emit_json(o, scan_to_json(report));
  return kOk;
}

int cmd_amoeba(const Options& o) {
  Setup s = load(o, true, true);
  const PolyMatrix l1 = perturbation(o, s);
  const MultiPoly f = char_poly(s.l0, l1, MultiPoly::constant(s.l0.vars(), s.omega0));
  AmoebaGrid grid{o.eps_min, o.eps_max, o.moduli, o.phases, true};
  AmoebaCloud cloud = amoeba_sample(f, grid, o.seed);
  const auto dirs = tentacle_directions(newton_polygon(f));
  const auto fits = fit_tentacles(cloud, dirs);

  json tentacles = json::array();
  for (const auto& t : fits) {
    json j{{"direction", t.direction.str()}, {"support", t.support}};
    j["fitted_slope"] = t.slope ? json(*t.slope) : json(nullptr);
    tentacles.push_back(j);
  }
  json summary{{"schema", 1},
               {"model", s.model.spec.name},
               {"omega0", s.omega0.str()},
               {"perturbation", perturbation_json(o)},
               {"grid", {{"modulus_min", o.eps_min}, {"modulus_max", o.eps_max}, {"moduli", o.moduli}, {"phases", o.phases}}},
               {"points", cloud.points.size()},
               {"skipped", cloud.skipped},
               {"tentacles", tentacles}};
  std::ostringstream csv;
  write_amoeba_csv(csv, cloud);
  emit_data(o, csv.str(), summary);
  if (!o.svg.empty()) {
    svg::Plot plot{"Amoeba", "log10|omega - omega0|", "log10|eps|", {}};
    svg::Series pts{{}, kPalette[0], false};
    for (const auto& p : cloud.points) pts.points.emplace_back(p.logmag, p.logeps);
    plot.series = {pts};
    svg::write_file(o.svg, svg::render(plot));
  }
  return kOk;
}

int cmd_scale(const Options& o) {
  Setup s = load(o, true, true);
  const PolyMatrix l1 = perturbation(o, s);
  ScalingOptions opts;
  if (o.branch == "slowest") opts.branch = Branch::Slowest;
  else if (o.branch != "fastest") throw InputError("--branch must be fastest or slowest");
  const auto grid = log_grid(o.eps_min, o.eps_max, o.eps_points);
  ScalingResult r = scaling_sweep(to_numeric(s.l0), to_numeric(l1), s.omega0.to_complex(), grid, opts);
  json summary{{"schema", 1},
               {"model", s.model.spec.name},
               {"omega0", s.omega0.str()},
               {"perturbation", perturbation_json(o)},
               {"fit",
                {{"slope", r.fit.slope}, {"intercept", r.fit.intercept}, {"rsquared", r.fit.rsquared},
                 {"npoints", r.fit.npoints}}}};
  std::ostringstream csv;
  write_scaling_csv(csv, r);
  emit_data(o, csv.str(), summary);
  if (!o.svg.empty()) {
    svg::Plot plot{"Scaling", "log10 eps", "log10|omega - omega0|", {}};
    svg::Series pts{{}, kPalette[0], false};
    svg::Series line{{}, kPalette[3], true};
    for (const auto& smp : r.samples) {
      pts.points.emplace_back(smp.logeps, smp.logmag);
      line.points.emplace_back(smp.logeps, r.fit.intercept + r.fit.slope * smp.logeps);
    }
    plot.series = {pts, line};
    svg::write_file(o.svg, svg::render(plot));
  }
  return kOk;
}

int cmd_encircle(const Options& o) {
  Setup s = load(o, true, false);
  const PolyMatrix l1 = perturbation(o, s);
  PermutationReport r = encircle(to_numeric(s.l0), to_numeric(l1), o.radius, o.steps, o.turns);
  json summary{{"schema", 1},
               {"model", s.model.spec.name},
               {"perturbation", perturbation_json(o)},
               {"radius", o.radius},
               {"steps", o.steps},
               {"turns", o.turns},
               {"permutation", r.permutation},
               {"cycles", r.cycles},
               {"tracking_residual", r.tracking_residual},
               {"min_gap", r.min_gap}};
  std::ostringstream csv;
  write_encircle_csv(csv, r);
  emit_data(o, csv.str(), summary);
  if (!o.svg.empty()) {
    svg::Plot plot{"Encircling", "Re omega", "Im omega", {}};
    for (std::size_t i = 0; i < r.permutation.size(); ++i) {
      svg::Series path{{}, kPalette[i % std::size(kPalette)], true};
      for (const auto& step : r.trace) path.points.emplace_back(step[i].real(), step[i].imag());
      plot.series.push_back(path);
    }
    svg::write_file(o.svg, svg::render(plot));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Liouvillian exceptional points via Newton polygons and tropical geometry", "liouville-ep"};
  app.require_subcommand(1);
  Options o;

  auto model_opts = [&](CLI::App* sub) {
    sub->add_option("--model", o.model, "built-in model (spin_half, qubit) or path to a JSON model file")->required();
    sub->add_option("--bind", o.binds, "parameter binding name=value (exact rational), repeatable");
  };
  auto shift_opts = [&](CLI::App* sub) {
    sub->add_option("--omega0", o.omega0, "exact eigenvalue at the degeneracy")->required();
    sub->add_option("--shift-sign", o.shift_sign, "plus: det(L - (omega + omega0)); minus: det(L - (omega - omega0))")
        ->check(CLI::IsMember({"plus", "minus"}));
  };
  auto perturb_opts = [&](CLI::App* sub) {
    sub->add_option("--perturb", o.perturb, "parameter name, or 'generic' for a seeded random matrix");
    sub->add_option("--seed", o.seed, "seed for generic perturbations");
  };
  auto out_opts = [&](CLI::App* sub, bool svg) {
    sub->add_option("--out", o.out, "output file");
    if (svg) sub->add_option("--svg", o.svg, "also render an SVG plot to this path");
  };

  auto* build = app.add_subcommand("build", "print the exact Liouvillian");
  model_opts(build);
  out_opts(build, false);

  auto* polygon = app.add_subcommand("polygon", "Newton polygon, EP report and classification");
  model_opts(polygon);
  shift_opts(polygon);
  perturb_opts(polygon);
  out_opts(polygon, true);

  auto* scan_cmd = app.add_subcommand("scan", "second-order EP scan over one parameter");
  model_opts(scan_cmd);
  scan_cmd->add_option("--target", o.target, "parameter to solve for")->required();
  scan_cmd->add_option("--seed", o.seed, "seed for the classification perturbations");
  out_opts(scan_cmd, false);

  auto* amoeba = app.add_subcommand("amoeba", "amoeba point cloud and tentacle fits");
  model_opts(amoeba);
  shift_opts(amoeba);
  perturb_opts(amoeba);
  amoeba->add_option("--eps-min", o.eps_min, "smallest sampled modulus");
  amoeba->add_option("--eps-max", o.eps_max, "largest sampled modulus");
  amoeba->add_option("--moduli", o.moduli, "number of log-spaced moduli");
  amoeba->add_option("--phases", o.phases, "number of phases per modulus");
  out_opts(amoeba, true);

  auto* scale = app.add_subcommand("scale", "eigenvalue scaling against eps");
  model_opts(scale);
  shift_opts(scale);
  perturb_opts(scale);
  scale->add_option("--eps-min", o.eps_min, "smallest eps");
  scale->add_option("--eps-max", o.eps_max, "largest eps");
  scale->add_option("--eps-points", o.eps_points, "number of log-spaced eps values");
  scale->add_option("--branch", o.branch, "fastest or slowest member of the cluster")
      ->check(CLI::IsMember({"fastest", "slowest"}));
  out_opts(scale, true);

  auto* enc = app.add_subcommand("encircle", "track eigenvalues of L0 + r e^{it} L1");
  model_opts(enc);
  perturb_opts(enc);
  enc->add_option("--radius", o.radius, "loop radius");
  enc->add_option("--steps", o.steps, "steps per turn (>= 100)");
  enc->add_option("--turns", o.turns, "number of turns");
  out_opts(enc, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*build) return cmd_build(o);
    if (*polygon) return cmd_polygon(o);
    if (*scan_cmd) return cmd_scan(o);
    if (*amoeba) return cmd_amoeba(o);
    if (*scale) return cmd_scale(o);
    if (*enc) return cmd_encircle(o);
  } catch (const lep::ParseError& e) {
    std::cerr << "liouville-ep: parse error: " << e.what() << "\n";
    return kInput;
  } catch (const lep::InputError& e) {
    std::cerr << "liouville-ep: input error: " << e.what() << "\n";
    return kInput;
  } catch (const lep::StructuralError& e) {
    std::cerr << "liouville-ep: input error: " << e.what() << "\n";
    return kInput;
  } catch (const lep::PreconditionError& e) {
    std::cerr << "liouville-ep: precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const lep::NumericalError& e) {
    std::cerr << "liouville-ep: numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "liouville-ep: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
