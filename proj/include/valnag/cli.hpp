#pragma once

#include "valnag/report.hpp"
#include "valnag/svg.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace valnag {

struct RunOptions {
  std::optional<Rational> t;                    // zariski: the point of the segment
  std::optional<std::optional<Rational>> t_max;  // command-line override; inner nullopt = auto
  bool want_svg = false;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 diagnostics, 2 internal inconsistency
  report::Json json;
  std::vector<Diagnostic> diagnostics;
  std::optional<std::string> svg;
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"invariants", "zariski", "walk",  "nok",
                                              "bounds",     "verdict", "suite", "threshold"};
  return names;
}

namespace cli_detail {

struct Usage : InvalidInput {
  using InvalidInput::InvalidInput;
};

inline ChamberWalk walk_for(const BlowupModel& model, const Scene& scene, const RunOptions& opts) {
  WalkOptions w;
  w.t_max = opts.t_max ? *opts.t_max : scene.t_max;
  auto walk = chamber_walk(model, w);
  verify_walk(model, walk);
  return walk;
}

inline report::Json sandwich(const NokPolygon& poly, const std::optional<std::vector<ExactPoint>>& outer,
                             const std::optional<std::vector<ExactPoint>>& inner) {
  report::Json out = report::Json::object();
  if (outer) {
    out["polygonInT"] = geom::contains(geom::convex_hull(*outer), poly.boundary);
    out["polygonEqualsT"] = geom::same_polygon(poly.vertices, *outer);
  }
  if (inner) out["innerInPolygon"] = geom::contains(poly.boundary, *inner);
  if (outer && inner) out["innerInT"] = geom::contains(geom::convex_hull(*outer), *inner);
  return out;
}

inline report::Json run(std::string_view name, const Scene& scene, const RunOptions& opts, RunResult& res) {
  auto model = scene.model();
  report::Json out;
  std::optional<Verdict> verdict;
  if (!scene.assertions.empty() || name == "verdict" || name == "nok" || name == "suite" || name == "threshold" ||
      name == "bounds") {
    verdict = minimality_verdict(model, scene.tangent, scene.assertions);
    for (const auto& e : verdict->errors) res.diagnostics.push_back({Diagnostic::Severity::Error, e, {}});
  }

  if (name == "invariants") {
    out = report::invariants(model, scene.tangent);
  } else if (name == "zariski") {
    if (!opts.t) throw Usage("zariski needs --t <rational>");
    if (*opts.t < 0) throw Usage("--t must be non-negative");
    auto dec = zariski_decompose(model, model.segment_class(*opts.t));
    out = report::decomposition(model, dec);
    out["t"] = report::rational(*opts.t);
    auto closed = segment_closed_form(model, *opts.t);
    out["closedForm"] = {{"valid", closed.valid}, {"agrees", closed.decomposition == dec}};
    if (closed.valid && !(closed.decomposition == dec))
      throw InternalInconsistency("closed form disagrees with the decomposition below the first breakpoint");
  } else if (name == "walk") {
    out = report::walk(model, walk_for(model, scene, opts));
  } else if (name == "nok") {
    auto walk = walk_for(model, scene, opts);
    auto data = build_flag_data(model, scene.flag);
    auto poly = nok_polygon(model, walk, scene.flag);
    verify_polygon(model, walk, poly);
    out = report::polygon(poly, data);
    std::optional<std::vector<ExactPoint>> outer, inner;
    if (verdict->mu_exact) outer = triangle_T(data, *verdict->mu_exact);
    if (verdict->eps_exact) inner = inner_triangle(data, *verdict->eps_exact);
    out["triangleT"] = outer ? report::points(*outer) : report::Json(nullptr);
    out["innerTriangle"] = inner ? report::points(*inner) : report::Json(nullptr);
    out["sandwich"] = sandwich(poly, outer, inner);
    if (opts.want_svg) {
      SvgLayers layers;
      layers.polygon = &poly;
      layers.outer = outer;
      layers.inner = inner;
      layers.title = "area " + (poly.area.is_rational() ? to_string(poly.area.rational()) : poly.area.str()) +
                     (poly.complete ? "" : " (incomplete catalog)");
      res.svg = render_svg(layers);
    }
  } else if (name == "bounds") {
    out["eps"] = report::interval(verdict->eps);
    out["muHat"] = report::interval(verdict->mu);
    out["epsCap"] = report::surd(epsilon_cap(model));
    out["muHatFloor"] = report::surd(mu_hat_floor(model));
    if (model.surface().is_p2()) {
      auto lb = p2_epsilon_lower_bound(model, scene.tangent);
      out["p2LowerBound"] = {{"t", report::integer(lb.t)},
                             {"delta0", report::integer(lb.delta0)},
                             {"value", report::rational(lb.value)}};
    }
    out["conjectureApplicable"] = verdict->conjecture_applicable;
  } else if (name == "verdict") {
    out = report::verdict(*verdict);
  } else if (name == "suite") {
    if (!verdict->eps_exact || !verdict->mu_exact)
      throw Usage("suite needs pinned eps and mu-hat; verdict is " + std::string(to_string(verdict->status)) +
                  " without both values (use assert eps/mu)");
    const Surd& eps = *verdict->eps_exact;
    const Surd& mu = *verdict->mu_exact;
    auto walk = walk_for(model, scene, opts);
    auto data = build_flag_data(model, scene.flag);
    auto poly = nok_polygon(model, walk, scene.flag);
    verify_polygon(model, walk, poly);
    auto outer = triangle_T(data, mu);
    auto suite = theorem_suite(model, eps, mu, walk, poly, outer);
    out = report::suite(suite);
    auto count = computing_curve_count(model, eps);
    out["computingCurves"] = {{"count", count.count}, {"names", report::strings(count.names)}, {"rho", count.rho},
                              {"exceedsRho", count.exceeds_rho}};
    if (count.exceeds_rho)
      res.diagnostics.push_back({Diagnostic::Severity::Warning,
                                 "catalog inconsistency: more eps-computing curves than the Picard number", {}});
    auto chambers = chamber_count_check(walk, count.count, model.surface().rho);
    out["chamberCount"] = {{"chambers", chambers.chambers}, {"bound", chambers.bound},
                           {"withinBound", chambers.within_bound}, {"atLeastTwo", chambers.at_least_two},
                           {"applies", verdict->status == Status::NonMinimal}};
    out["sandwich"] = sandwich(poly, outer, inner_triangle(data, eps));
    if (model.surface().is_p2()) {
      out["muEpsIsOne"] = mu * eps == Surd(1);
      out["p2LowerBoundBelowEps"] = Surd(p2_epsilon_lower_bound(model, scene.tangent).value) <= eps;
    }
    out["eps"] = report::surd(eps);
    out["muHat"] = report::surd(mu);
    out["status"] = to_string(verdict->status);
  } else if (name == "threshold") {
    auto m = nef_threshold(model);
    out["m"] = m ? report::integer(*m) : report::Json(nullptr);
    out["epsLowerConditional"] = m ? report::rational(Rational(Integer(1), *m)) : report::Json(nullptr);
    if (verdict->eps_exact) {
      auto count = computing_curve_count(model, *verdict->eps_exact);
      out["computingCurves"] = {{"count", count.count}, {"rho", count.rho}, {"exceedsRho", count.exceeds_rho}};
    }
  } else {
    throw Usage("unknown subcommand '" + std::string(name) + "'");
  }
  return out;
}

}  // namespace cli_detail

/// Runs one subcommand on a parsed scene. Never throws: user errors become
/// diagnostics (exit 1), violated internal invariants exit 2.
inline RunResult run_subcommand(std::string_view name, const Scene& scene, const RunOptions& opts = {}) {
  RunResult res;
  report::Json body;
  try {
    body = cli_detail::run(name, scene, opts, res);
  } catch (const InternalInconsistency& e) {
    res.exit_code = 2;
    res.diagnostics.push_back({Diagnostic::Severity::Error, std::string("internal inconsistency: ") + e.what(), {}});
  } catch (const InvalidInput& e) {
    res.exit_code = 1;
    res.diagnostics.push_back({Diagnostic::Severity::Error, e.what(), {}});
  }
  if (res.exit_code == 0)
    for (const auto& d : res.diagnostics)
      if (d.is_error()) res.exit_code = 1;
  if (res.exit_code != 0) {
    body = report::Json::object();
    res.svg.reset();
  }
  body["schemaVersion"] = report::schema_version;
  body["command"] = std::string(name);
  body["diagnostics"] = report::diagnostics(res.diagnostics);
  res.json = std::move(body);
  return res;
}

/// Parses scene text and runs the subcommand.
inline RunResult run_text(std::string_view name, std::string_view text, const RunOptions& opts = {}) {
  auto parsed = parse_scene(text);
  if (!parsed.ok()) {
    RunResult res;
    res.exit_code = 1;
    res.diagnostics = parsed.diagnostics;
    res.json = {{"schemaVersion", report::schema_version},
                {"command", std::string(name)},
                {"diagnostics", report::diagnostics(parsed.diagnostics)}};
    return res;
  }
  auto res = run_subcommand(name, *parsed.scene, opts);
  if (!parsed.diagnostics.empty()) {
    res.diagnostics.insert(res.diagnostics.begin(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    res.json["diagnostics"] = report::diagnostics(res.diagnostics);
  }
  return res;
}

inline RunResult run_file(std::string_view name, const std::string& path, const RunOptions& opts = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    RunResult res;
    res.exit_code = 1;
    res.diagnostics.push_back({Diagnostic::Severity::Error, "cannot read " + path, {}});
    res.json = {{"schemaVersion", report::schema_version},
                {"command", std::string(name)},
                {"diagnostics", report::diagnostics(res.diagnostics)}};
    return res;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return run_text(name, buf.str(), opts);
}

}  // namespace valnag
