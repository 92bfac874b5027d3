#include "graphesa/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "graphesa/catalog.hpp"
#include "graphesa/error.hpp"
#include "graphesa/family_io.hpp"
#include "graphesa/report.hpp"

namespace graphesa::cli {

namespace {

struct Common {
  std::string family_path;
  std::string example;
  std::vector<std::string> sets;
  bool strict = false;
  bool timing = false;
  std::string format = "json";
  std::string dump_matrix;
};

void add_common(CLI::App* cmd, Common& c, bool with_source = true) {
  if (with_source) {
    auto* f = cmd->add_option("--family", c.family_path, "family JSON file");
    auto* e = cmd->add_option("--example", c.example, "built-in family (example1..4, unit)");
    f->excludes(e);
    cmd->add_option("--set", c.sets, "bind a placeholder or example parameter, name=value");
  }
  cmd->add_flag("--strict", c.strict, "exit with code 2 on Inconclusive verdicts");
  cmd->add_flag("--timing", c.timing, "include wall time in the report");
  cmd->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--dump-matrix", c.dump_matrix, "write the dense operator of the truncation as CSV");
}

Params parse_sets(const std::vector<std::string>& sets) {
  Params p;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::BadParams, "--set expects name=value, got '" + s + "'");
    try {
      p[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::BadParams, "not a number in --set " + s);
    }
  }
  return p;
}

Family resolve(const Common& c, const Params& params) {
  if (!c.family_path.empty()) return load_family(c.family_path, params);
  if (!c.example.empty()) return example_family(c.example, params);
  throw Error(ErrorKind::BadParams, "give --family or --example");
}

Complex parse_lambda(const std::string& s) {
  if (s == "i" || s == "+i") return {0.0, 1.0};
  if (s == "-i") return {0.0, -1.0};
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::BadParams, "cannot read lambda '" + s + "'");
  }
}

MetricScheme parse_scheme(const std::string& s) {
  if (s == "inv-sqrt-c") return MetricScheme::InvSqrtC;
  if (s == "min-omega") return MetricScheme::MinOmegaOverSqrtC;
  throw Error(ErrorKind::BadParams, "unknown scheme '" + s + "'");
}

Rule parse_rule(const std::string& s) {
  for (Rule r : {Rule::ThmNonComplete, Rule::ThmSeries, Rule::ThmAgmonGrowth, Rule::WeylNumeric}) {
    if (s == to_string(r)) return r;
  }
  throw Error(ErrorKind::BadParams, "unknown rule '" + s + "'");
}

std::vector<Index> parse_horizons(const std::string& s) {
  std::vector<Index> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw Error(ErrorKind::BadParams, "cannot read horizon '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::BadParams, "no horizons given");
  return out;
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Index family_horizon(const Family& f) {
  if (const auto* e = std::get_if<EndFamily>(&f)) return e->horizon();
  if (const auto* t = std::get_if<TreeSpec>(&f)) return t->max_depth;
  Index h = 2;
  for (const auto& e : std::get<StarLikeSpec>(f).ends) h = std::max(h, e.end.horizon());
  return h;
}

void dump_matrix(const std::string& path, const Family& family, Index horizon) {
  const WeightedGraph g = build_truncation(family, horizon);
  if (g.size() > 5000) throw Error(ErrorKind::BadParams, "truncation too large for a dense dump");
  const Eigen::MatrixXd m = dense_operator(g);
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::BadParams, "cannot write " + path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << fmt17(m(i, j));
    out << '\n';
  }
}

struct Emitter {
  std::ostream& out;
  std::vector<std::string> args;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void json(const Common& c, const std::string& command, const Json& inputs, const Json& result) const {
    Json env;
    env["schema"] = kSchema;
    env["version"] = std::string(kVersion);
    env["command"] = command;
    env["args"] = args;
    env["inputs_digest"] = "fnv1a:" + fnv1a_hex(write_json(inputs, -1));
    env["result"] = result;
    if (c.timing) {
      env["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    out << write_json(env) << '\n';
  }
};

Json root_moduli(const Verdict& v) {
  for (const auto& e : v.ends) {
    if (e.hyperbolic) return Json::array({e.hyperbolic->moduli[0], e.hyperbolic->moduli[1]});
  }
  if (v.radial && v.radial->roots) {
    return Json::array({std::abs((*v.radial->roots)[0]), std::abs((*v.radial->roots)[1])});
  }
  return Json::array();
}

int strict_code(const Common& c, bool inconclusive) { return c.strict && inconclusive ? 2 : 0; }

// --- commands --------------------------------------------------------------

int cmd_classify(const Common& c, const std::vector<std::string>& disable, const std::string& lambda,
                 const Emitter& em) {
  const Params params = parse_sets(c.sets);
  const Family family = resolve(c, params);
  ClassifyOptions opt;
  opt.lambda = parse_lambda(lambda);
  for (const auto& r : disable) opt.disabled.insert(parse_rule(r));
  const Verdict v = classify(family, opt);
  if (!c.dump_matrix.empty()) dump_matrix(c.dump_matrix, family, std::min<Index>(family_horizon(family), 200));
  if (c.format == "csv") {
    em.out << "status,rule,conflict\n" << to_string(v.status) << ',' << to_string(v.rule) << ','
           << (v.conflict ? "true" : "false") << '\n';
  } else {
    em.json(c, "classify", family_to_json(family), to_json(v));
  }
  return strict_code(c, v.status == Status::Inconclusive);
}

int cmd_sweep(Common c, const std::string& param, double from, double to, double step, int threads,
              const Emitter& em) {
  if (!(step > 0.0) || to < from) throw Error(ErrorKind::BadParams, "need step > 0 and to >= from");
  const Params base = parse_sets(c.sets);
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) values[k] = from + static_cast<double>(k) * step;
  // Parse once up front so input errors surface before any work starts.
  {
    Params p = base;
    p[param] = values.front();
    (void)resolve(c, p);
  }
  std::vector<Verdict> verdicts(count);
  const auto work = [&](std::size_t k) {
    Params p = base;
    p[param] = values[k];
    verdicts[k] = classify(resolve(c, p));
  };
  const auto n_threads = static_cast<std::size_t>(
      std::max(1, threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency())));
  std::vector<std::future<void>> jobs;
  for (std::size_t t = 0; t < std::min(n_threads, count); ++t) {
    jobs.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t k = t; k < count; k += n_threads) work(k);
    }));
  }
  for (auto& j : jobs) j.get();

  bool inconclusive = false;
  for (const auto& v : verdicts) inconclusive = inconclusive || v.status == Status::Inconclusive;
  if (c.format == "csv" || c.format.empty()) {
    em.out << param << ",status,rule,root_moduli\n";
    for (std::size_t k = 0; k < count; ++k) {
      const Json m = root_moduli(verdicts[k]);
      std::string moduli;
      for (std::size_t i = 0; i < m.size(); ++i) moduli += (i ? ";" : "") + fmt17(m[i].get<double>());
      em.out << fmt17(values[k]) << ',' << to_string(verdicts[k].status) << ',' << to_string(verdicts[k].rule)
             << ',' << moduli << '\n';
    }
  } else {
    Json rows = Json::array();
    for (std::size_t k = 0; k < count; ++k) {
      rows.push_back({{param, values[k]},
                      {"status", std::string(to_string(verdicts[k].status))},
                      {"rule", std::string(to_string(verdicts[k].rule))},
                      {"root_moduli", root_moduli(verdicts[k])}});
    }
    Params p = base;
    p[param] = values.front();
    em.json(c, "sweep", Json{{"param", param}, {"from", from}, {"to", to}, {"step", step},
                             {"family", family_to_json(resolve(c, p))}},
            Json{{"rows", rows}});
  }
  return strict_code(c, inconclusive);
}

int cmd_dirichlet(const Common& c, const std::string& horizons, double boundary, const Emitter& em) {
  const Family family = resolve(c, parse_sets(c.sets));
  const std::vector<Index> hs = parse_horizons(horizons);
  const WitnessReport w = non_esa_witness(family, hs, boundary);
  if (!c.dump_matrix.empty()) dump_matrix(c.dump_matrix, family, hs.back());
  if (c.format == "csv") {
    em.out << "horizon,F0,Q,norm,residual,scaled_residual\n";
    for (const auto& r : w.rows) {
      em.out << r.horizon << ',' << fmt17(r.F0) << ',' << fmt17(r.energy) << ',' << fmt17(r.norm) << ','
             << fmt17(r.residual) << ',' << fmt17(r.scaled_residual) << '\n';
    }
  } else {
    em.json(c, "dirichlet",
            Json{{"family", family_to_json(family)}, {"horizons", hs}, {"boundary", boundary}}, to_json(w));
  }
  return strict_code(c, !w.stable);
}

int cmd_weyl(const Common& c, const std::string& lambda_text, const Emitter& em) {
  const Family family = resolve(c, parse_sets(c.sets));
  const Complex lambda = parse_lambda(lambda_text);
  Json result;
  bool undecided = false;
  if (const auto* end = std::get_if<EndFamily>(&family)) {
    const auto e = classify_end(*end, lambda);
    result = to_json(e);
    if (e.hyperbolic) result["roots"] = to_json(*e.hyperbolic)["roots"];
    undecided = !e.dimE;
  } else if (const auto* tree = std::get_if<TreeSpec>(&family)) {
    const RadialReduction rr = radial_reduce(*tree);
    const auto e = classify_end(rr.family, lambda);
    result = to_json(e);
    result["radial"] = to_json(rr);
    result["caveat"] = "radial sector only";
    undecided = !e.dimE;
  } else {
    const auto& spec = std::get<StarLikeSpec>(family);
    Json ends = Json::array();
    int index = 0;
    for (const auto& a : spec.ends) {
      const auto e = classify_end(a.end, lambda);
      ends.push_back(to_json(e));
      if (e.dimE) {
        index += *e.dimE - 1;
      } else {
        undecided = true;
      }
    }
    result["ends"] = ends;
    result["n_plus"] = undecided ? Json(nullptr) : Json(index);
    result["n_minus"] = result["n_plus"];
  }
  em.json(c, "weyl", Json{{"family", family_to_json(family)}, {"lambda", complex_json(lambda)}}, result);
  return strict_code(c, undecided);
}

Json metric_for_end(const EndFamily& end, MetricScheme scheme, Index horizon) {
  const auto v = end_completeness(end, scheme);
  Json j = to_json(v);
  if (v.status == Completeness::NonComplete) {
    Json d = Json::array();
    for (double x : boundary_distances(end, scheme, horizon)) d.push_back(x);
    j["D"] = d;
  } else {
    j["D"] = nullptr;
  }
  return j;
}

int cmd_metric(const Common& c, const std::string& scheme_text, Index horizon, const Emitter& em) {
  const Family family = resolve(c, parse_sets(c.sets));
  const MetricScheme scheme = parse_scheme(scheme_text);
  if (horizon < 1) throw Error(ErrorKind::HorizonTooSmall, "horizon must be positive");
  Json result;
  if (const auto* end = std::get_if<EndFamily>(&family)) {
    result = metric_for_end(*end, scheme, horizon);
  } else if (const auto* tree = std::get_if<TreeSpec>(&family)) {
    result = metric_for_end(tree_ray(*tree, tree->max_depth), scheme, horizon);
    result["note"] = "distances along any ray; they depend on depth only";
  } else {
    const auto& spec = std::get<StarLikeSpec>(family);
    Json ends = Json::array();
    bool any = false;
    for (const auto& a : spec.ends) {
      const auto v = end_completeness(a.end, scheme);
      any = any || v.status == Completeness::NonComplete;
      ends.push_back(to_json(v));
    }
    result["status"] = any ? "NonComplete" : "Complete";
    result["ends"] = ends;
    if (any) {
      Json d = Json::array();
      for (double x : boundary_distances(spec, scheme, horizon)) d.push_back(number_or_tag(x));
      result["D"] = d;
    } else {
      result["D"] = nullptr;
    }
  }
  if (!c.dump_matrix.empty()) dump_matrix(c.dump_matrix, family, horizon);
  em.json(c, "metric", Json{{"family", family_to_json(family)}, {"scheme", scheme_text}, {"horizon", horizon}},
          result);
  return 0;
}

// --- reproduce -------------------------------------------------------------

Json row(const std::string& quantity, const Json& computed, const Json& expected, bool agrees) {
  return {{"quantity", quantity}, {"computed", computed}, {"expected", expected}, {"agrees", agrees}};
}

struct Reproduction {
  Json table = Json::array();
  Json details = Json::object();
  Verdict verdict;
};

Reproduction reproduce_power_end(const EndFamily& end, double gamma, double beta, bool example1) {
  Reproduction r;
  const EndFamily g = gauge_transform(end);
  const Index n = 10000;
  const double a_ratio = g.edge()(n) / std::pow(static_cast<double>(n), gamma + 2.0 * beta);
  const double w_coeff = -beta * (beta + gamma - 1.0);
  const double w_ratio = g.potential_at(n) / (w_coeff * std::pow(static_cast<double>(n), 2.0 * beta + gamma - 2.0));
  const std::string a_law = example1 ? "a/n^5" : "a/n^(gamma+2beta)";
  const std::string w_law = example1 ? "W/(-3n^3)" : "W/(-beta(beta+gamma-1) n^(2beta+gamma-2))";
  r.table.push_back(row(a_law + " at n=1e4", a_ratio, 1.0, std::abs(a_ratio - 1.0) <= 0.01));
  r.table.push_back(row(w_law + " at n=1e4", w_ratio, 1.0, std::abs(w_ratio - 1.0) <= 0.01));
  const auto comp = end_completeness(end, MetricScheme::InvSqrtC);
  r.table.push_back(row("sum c^{-1/2}", comp.status == Completeness::NonComplete ? "finite" : "infinite", "finite",
                        comp.status == Completeness::NonComplete));
  const auto vol = end_volume(end);
  r.table.push_back(row("sum omega^2", vol.status == SeriesStatus::Converges ? "finite" : "not finite", "finite",
                        vol.status == SeriesStatus::Converges));
  r.verdict = classify(end);
  r.table.push_back(row("verdict", std::string(to_string(r.verdict.status)), "NotESA",
                        r.verdict.status == Status::NotESA));
  r.table.push_back(row("rule", std::string(to_string(r.verdict.rule)), "ThmNonComplete",
                        r.verdict.rule == Rule::ThmNonComplete));
  const std::vector<Index> hs{100, 200, 400};
  const WitnessReport w = non_esa_witness(end, hs);
  r.table.push_back(row("Dirichlet witness F(0)", w.rows.back().F0, "nonzero", w.nonzero && w.stable));
  r.details["witness"] = to_json(w);
  return r;
}

Reproduction reproduce_example2(double A) {
  Reproduction r;
  const double A0 = catalog::dyadic_upper_threshold();
  const double lower = catalog::dyadic_lower_threshold();
  const EndFamily end = catalog::dyadic_end(A);
  const LimitTransfer lt = limit_transfer(end, 0.0);
  const double b = 4.0 * lt.matrix(0, 0).real();
  const double b_closed = 5.0 + 2.0 * std::sqrt(2.0) * (A - A0);
  const double A0_closed = 5.0 * std::sqrt(2.0) / 4.0 - 1.5;
  r.table.push_back(row("A0", A0, A0_closed, std::abs(A0 - A0_closed) <= 1e-15));
  r.table.push_back(row("recurrence middle coefficient", b, b_closed, std::abs(b - b_closed) <= 1e-12 * std::abs(b_closed) + 1e-12));
  const auto roots = quadratic_roots(b / 4.0, 0.25);
  r.table.push_back(row("root moduli", Json::array({std::abs(roots[0]), std::abs(roots[1])}), nullptr, true));
  const double thr = growth_threshold(end, MetricScheme::MinOmegaOverSqrtC, 3);
  r.table.push_back(row("N/(2 D(3)^2)", thr, std::pow(4.0, 3) / 2.0, std::abs(thr / 32.0 - 1.0) <= 1e-12));
  r.verdict = classify(end);
  std::string expected;
  if (A > lower && A < A0) {
    expected = "NotESA";
  } else if (A > A0 || A < lower) {
    expected = "ESA";
  } else {
    expected = "NotESA (claimed at the threshold)";
  }
  const bool boundary = !(A > lower && A < A0) && !(A > A0 || A < lower);
  const bool agrees = boundary ? r.verdict.status == Status::Inconclusive
                               : std::string(to_string(r.verdict.status)) == expected;
  r.table.push_back(row("verdict", std::string(to_string(r.verdict.status)), expected, agrees));
  if (boundary) r.details["note"] = "characteristic root on the unit circle; the dichotomy does not apply";
  r.details["thresholds"] = Json{{"lower", lower}, {"upper", A0}};
  return r;
}

Reproduction reproduce_example4(int N, Index depth) {
  Reproduction r;
  const TreeSpec tree = catalog::dyadic_tree(N, depth);
  const RadialReduction rr = radial_reduce(tree);
  const double trace_expected = 0.5 + 0.25 / N;
  const double det_expected = 1.0 / (8.0 * N);
  r.table.push_back(row("characteristic trace", number_or_tag(rr.trace.value_or(NAN)), trace_expected,
                        rr.trace && std::abs(*rr.trace - trace_expected) <= 1e-12));
  r.table.push_back(row("characteristic determinant", number_or_tag(rr.determinant.value_or(NAN)), det_expected,
                        rr.determinant && std::abs(*rr.determinant / det_expected - 1.0) <= 1e-12));
  if (rr.roots) {
    const double m0 = std::abs((*rr.roots)[0]);
    const double m1 = std::abs((*rr.roots)[1]);
    r.table.push_back(row("root moduli", Json::array({m0, m1}), "both < 1", m0 < 1.0 && m1 < 1.0));
  }
  const auto vol = tree_volume(tree);
  r.table.push_back(row("sum N^n omega_n^2", vol.status == SeriesStatus::Converges ? "finite" : "not finite",
                        N < 4 ? "finite" : "not finite", (vol.status == SeriesStatus::Converges) == (N < 4)));
  r.verdict = classify(tree);
  r.table.push_back(row("verdict", std::string(to_string(r.verdict.status)), "NotESA",
                        r.verdict.status == Status::NotESA));
  r.details["radial"] = to_json(rr);
  r.details["note"] =
      "radial solutions decaying like 2^{-n} are square summable on the tree only when N < 4, "
      "because sphere n carries N^n vertices";
  return r;
}

int cmd_reproduce(const Common& c, const std::string& which, const Params& p, const Emitter& em) {
  const auto get = [&](const char* k, double d) {
    const auto it = p.find(k);
    return it == p.end() ? d : it->second;
  };
  Reproduction r;
  Json inputs{{"example", which}};
  if (which == "example1") {
    r = reproduce_power_end(catalog::cubic_conductance_end(), 3.0, 1.0, true);
  } else if (which == "example2") {
    inputs["A"] = get("A", 0.0);
    r = reproduce_example2(get("A", 0.0));
  } else if (which == "example3") {
    const double gamma = get("gamma", 3.0);
    const double beta = get("beta", 1.0);
    inputs["gamma"] = gamma;
    inputs["beta"] = beta;
    r = reproduce_power_end(catalog::power_end(gamma, beta), gamma, beta, false);
  } else if (which == "example4") {
    const int N = static_cast<int>(get("N", 1.0));
    inputs["N"] = N;
    r = reproduce_example4(N, 12);
  } else {
    throw Error(ErrorKind::BadParams, "unknown example '" + which + "'");
  }
  if (c.format == "csv") {
    em.out << "quantity,computed,expected,agrees\n";
    for (const auto& t : r.table) {
      const auto cell = [](const Json& j) {
        if (j.is_string()) return j.get<std::string>();
        if (j.is_number_float()) return fmt17(j.get<double>());
        std::string s = write_json(j, -1);
        for (auto& ch : s) {
          if (ch == ',') ch = ';';
        }
        return s;
      };
      em.out << t["quantity"].get<std::string>() << ',' << cell(t["computed"]) << ',' << cell(t["expected"]) << ','
             << (t["agrees"].get<bool>() ? "true" : "false") << '\n';
    }
  } else {
    Json result{{"status", std::string(to_string(r.verdict.status))},
                {"rule", std::string(to_string(r.verdict.rule))},
                {"table", r.table},
                {"verdict", to_json(r.verdict)}};
    for (const auto& [k, v] : r.details.items()) result[k] = v;
    em.json(c, "reproduce", inputs, result);
  }
  return strict_code(c, r.verdict.status == Status::Inconclusive);
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Essential self-adjointness of weighted graph Laplacians and Schrodinger operators", "graphesa"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Common classify_c, sweep_c, dirichlet_c, weyl_c, metric_c, repro_c;
  std::vector<std::string> disable;
  std::string lambda = "i";
  auto* classify_cmd = app.add_subcommand("classify", "layered verdict with rule trail");
  add_common(classify_cmd, classify_c);
  classify_cmd->add_option("--disable", disable, "rules to skip");
  classify_cmd->add_option("--lambda", lambda, "spectral parameter for the Weyl route");

  std::string param;
  double from = 0.0, to = 0.0, step = 0.0;
  int threads = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "classify over a parameter grid");
  add_common(sweep_cmd, sweep_c);
  sweep_c.format = "csv";
  sweep_cmd->add_option("--param", param, "placeholder or example parameter")->required();
  sweep_cmd->add_option("--from", from)->required();
  sweep_cmd->add_option("--to", to)->required();
  sweep_cmd->add_option("--step", step)->required();
  sweep_cmd->add_option("--threads", threads, "worker threads (0: all cores)");

  std::string horizons = "50,100,200,400";
  double boundary = 1.0;
  auto* dirichlet_cmd = app.add_subcommand("dirichlet", "Dirichlet problem at infinity on truncations");
  add_common(dirichlet_cmd, dirichlet_c);
  dirichlet_cmd->add_option("--horizons", horizons, "comma separated truncation horizons");
  dirichlet_cmd->add_option("--boundary", boundary, "frontier value");

  std::string weyl_lambda = "i";
  auto* weyl_cmd = app.add_subcommand("weyl", "limit point / limit circle classification");
  add_common(weyl_cmd, weyl_c);
  weyl_cmd->add_option("--lambda", weyl_lambda, "i, -i, <re> or <re>,<im>");

  std::string scheme = "inv-sqrt-c";
  Index metric_horizon = 20;
  auto* metric_cmd = app.add_subcommand("metric", "completeness and distance to the boundary");
  add_common(metric_cmd, metric_c);
  metric_cmd->add_option("--scheme", scheme)->check(CLI::IsMember({"inv-sqrt-c", "min-omega"}));
  metric_cmd->add_option("--horizon", metric_horizon, "last vertex for the D table");

  std::string which;
  double rA = 0.0, rN = 1.0, rgamma = 3.0, rbeta = 1.0;
  auto* repro_cmd = app.add_subcommand("reproduce", "worked examples");
  add_common(repro_cmd, repro_c, false);
  repro_cmd->add_option("example", which, "example1, example2, example3 or example4")
      ->required()
      ->check(CLI::IsMember({"example1", "example2", "example3", "example4"}));
  auto* oA = repro_cmd->add_option("--A", rA, "potential coefficient for example2");
  auto* oN = repro_cmd->add_option("--N", rN, "branching for example4");
  auto* og = repro_cmd->add_option("--gamma", rgamma, "conductance exponent for example3");
  auto* ob = repro_cmd->add_option("--beta", rbeta, "weight exponent for example3");

  std::vector<std::string> argv_store{"graphesa"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << '\n';
    return 1;
  }

  const Emitter em{out, args};
  try {
    if (*classify_cmd) return cmd_classify(classify_c, disable, lambda, em);
    if (*sweep_cmd) return cmd_sweep(sweep_c, param, from, to, step, threads, em);
    if (*dirichlet_cmd) return cmd_dirichlet(dirichlet_c, horizons, boundary, em);
    if (*weyl_cmd) return cmd_weyl(weyl_c, weyl_lambda, em);
    if (*metric_cmd) return cmd_metric(metric_c, scheme, metric_horizon, em);
    if (*repro_cmd) {
      Params p;
      if (*oA) p["A"] = rA;
      if (*oN) p["N"] = rN;
      if (*og) p["gamma"] = rgamma;
      if (*ob) p["beta"] = rbeta;
      return cmd_reproduce(repro_c, which, p, em);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace graphesa::cli
