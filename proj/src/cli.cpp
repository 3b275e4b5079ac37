#include "subsum/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <optional>

#include "subsum/error.hpp"
#include "subsum/fs_engine.hpp"
#include "subsum/gap.hpp"
#include "subsum/inverse_linear.hpp"
#include "subsum/io.hpp"
#include "subsum/pipeline.hpp"
#include "subsum/rd_stability.hpp"
#include "subsum/registry.hpp"

namespace subsum {

namespace {

struct Report {
  std::string command;
  Json params = Json::object();
  Json results = Json::object();
  Json constants = Json::object();
  Json checks = Json::object();
  std::string input_digest;
  std::uint64_t seed = 0;
  int exit_code = 0;

  Json to_json() const {
    return Json{{"command", command}, {"params", params}, {"results", results}, {"realized_constants", constants},
                {"checks", checks}};
  }
};

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::HypothesisFailed:
    case ErrorKind::NoIndexFound:
    case ErrorKind::PipelineStalled:
    case ErrorKind::NotInGAP:
    case ErrorKind::XNotLargest:
    case ErrorKind::NonPositiveElement:
    case ErrorKind::CollinearInput:
    case ErrorKind::NotFound:
      return 1;
    case ErrorKind::BudgetExceeded:
    case ErrorKind::CapacityExceeded:
      return 2;
    default:
      return 3;
  }
}

Rational rational_arg(const std::string& text, const char* name) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    fail(ErrorKind::ParseError, std::string("--") + name + ": not a rational: " + text);
  }
}

std::string digest_file(const std::string& path) { return fnv1a_hex(read_file(path)); }

Json log_to_json(const ConstantLog& log) {
  Json j = Json::object();
  for (const auto& [k, v] : log) j[k] = v;
  return j;
}

struct Args {
  std::string input, set_input, csv, path = "auto", eps, C;
  bool trace = false, values = false;
  int n = 0;
  long M = 0, cap = 0, m = 0, x_max = 0, grid = 1, level = 0;
  std::size_t d = 1;
  std::uint64_t budget = 0, seed = 1;
  unsigned jobs = 1;
  std::vector<std::int64_t> lambda;
  std::vector<std::string> intervals;
};

void fs_compute(const Args& a, Report& r) {
  r.params = {{"input", a.input}, {"trace", a.trace}, {"values", a.values}, {"path", a.path}};
  r.input_digest = digest_file(a.input);
  ParsedSet set = parse_input(a.input);
  FsOptions opts;
  if (a.path == "dense") opts.path = FsOptions::Path::Dense;
  else if (a.path == "sparse") opts.path = FsOptions::Path::Sparse;
  else if (a.path != "auto") fail(ErrorKind::InvalidArgument, "--path must be auto, dense or sparse");

  if (auto* s = std::get_if<ScalarSet>(&set)) {
    auto fs = fs_set(*s, opts);
    std::uint64_t n = s->size();
    r.results["n"] = n;
    r.results["fs_size"] = fs.size();
    r.results["path"] = std::string(fs.path());
    Integer floor_bound = Integer(n * (n + 1) / 2 + 1);
    r.checks["minimum_bound"] = !s->all_positive() || Integer(static_cast<unsigned long>(fs.size())) >= floor_bound;
    r.constants["fs_over_n2"] = n ? to_string(Rational(Integer(static_cast<unsigned long>(fs.size())), Integer(n * n))) : "0";
    if (a.values) {
      Json v = Json::array();
      for (const auto& x : fs.values()) v.push_back(scalar_to_json(x));
      r.results["values"] = v;
    }
    if (a.trace) {
      auto t = incremental_trace(*s, opts);
      Json order = Json::array();
      for (const auto& x : t.order) order.push_back(scalar_to_json(x));
      r.results["trace"] = {{"order", order}, {"z", t.z}, {"y", t.y}};
    }
  } else {
    const auto& p = std::get<PointSet>(set);
    auto fs = fs_set_points(p, opts);
    r.results["n"] = p.size();
    r.results["dim"] = p.dim();
    r.results["fs_size"] = fs.size();
    r.results["max_subspace_count"] = max_subspace_count(p);
    if (a.values) {
      Json v = Json::array();
      for (const auto& x : fs.values()) v.push_back(point_to_json(x));
      r.results["values"] = v;
    }
    if (a.trace) fail(ErrorKind::InvalidArgument, "--trace applies to scalar sets only");
  }
}

void verify_linear(const Args& a, Report& r) {
  r.params = {{"n", a.n}, {"M", a.M}, {"cap", a.cap}, {"jobs", a.jobs}};
  ScanOptions opts;
  opts.jobs = a.jobs;
  if (a.budget) {
    opts.budget = a.budget;
    r.params["budget"] = a.budget;
  }
  auto s = thm11_scan(a.n, a.M, a.cap, opts);
  Json v = Json::array();
  for (const auto& t : s.violations) v.push_back(t);
  r.results = {{"violations", v},
               {"formal_violations", s.formal_violations},
               {"enumerated", s.enumerated},
               {"fs_side_true", s.fs_side_true},
               {"formal_checked", s.formal_checked}};
  bool expected = a.n >= 4 && a.M <= a.n - 4;
  r.checks = {{"equivalence_expected", expected},
              {"no_violations", s.violations.empty() && s.formal_violations.empty()}};
  if (expected && !(s.violations.empty() && s.formal_violations.empty())) r.exit_code = 1;
}

void verify_lemma21(const Args& a, Report& r) {
  r.params = {{"m", a.m}, {"x_max", a.x_max}};
  auto s = lemma21_scan(a.m, a.x_max);
  Json mm = Json::array();
  for (const auto& [b, x] : s.mismatches) mm.push_back({{"B", b}, {"x", x}});
  r.results = {{"checked", s.checked},
               {"equality_cases", s.equality_cases},
               {"homogeneous_cases", s.homogeneous_cases},
               {"mismatches", mm}};
  bool expected = a.m >= 3;
  r.checks = {{"equivalence_expected", expected}, {"no_mismatches", s.mismatches.empty()}};
  if (expected && !s.mismatches.empty()) r.exit_code = 1;
}

void search_fd(const Args& a, Report& r) {
  r.params = {{"d", a.d}, {"n", a.n}, {"m", a.m}, {"grid", a.grid}, {"seed", a.seed}, {"jobs", a.jobs}};
  FdSearchOptions opts;
  opts.seed = a.seed;
  opts.jobs = a.jobs;
  if (a.budget) {
    opts.budget = a.budget;
    r.params["budget"] = a.budget;
  }
  r.seed = a.seed;
  auto rec = fd_search(a.d, static_cast<std::size_t>(a.n), static_cast<std::size_t>(a.m), a.grid, opts);
  r.results = fd_record_to_json(rec);
  r.checks = {{"found", rec.found}, {"exhaustive", rec.exhaustive}};
  if (!a.csv.empty()) {
    std::ofstream f(a.csv);
    if (!f) fail(ErrorKind::StorageError, a.csv + ": cannot write");
    f << fd_csv_header() << "\n" << fd_csv_row(rec) << "\n";
  }
  if (rec.budget_exceeded) r.exit_code = 2;
}

void certify_stability(const Args& a, Report& r) {
  r.params = {{"d", a.d}, {"eps", a.eps}, {"n", a.n}};
  Rational eps = rational_arg(a.eps, "eps");
  auto c = stability_certificate(a.d, eps, a.n);
  r.results = {{"m", c.m}, {"bound", c.bound.get_str()}, {"recursive_bound", c.recursive_bound.get_str()}};
  r.constants = {{"gamma", to_string(c.gamma)}, {"threshold", c.threshold}};
  r.checks = {{"below_threshold", c.below_threshold}};
}

SymmetricGAP read_gap(const std::string& path) { return parse_gap_text(read_file(path), path); }

void gap_check(const Args& a, Report& r) {
  r.params = {{"input", a.input}};
  r.input_digest = digest_file(a.input);
  auto g = read_gap(a.input);
  bool proper = is_proper(g);
  r.results = {{"rank", g.rank()}, {"size", g.box_size().get_str()}, {"proper", proper}};
  if (!proper) r.results["properized"] = gap_to_json(properize(g));
  r.checks = {{"proper", proper}};
}

void gap_clean(const Args& a, Report& r) {
  r.params = {{"input", a.input}, {"set", a.set_input}, {"eps", a.eps}};
  r.input_digest = fnv1a_hex(read_file(a.input) + "\n" + read_file(a.set_input));
  auto g = read_gap(a.input);
  auto parsed = parse_input(a.set_input);
  auto* b = std::get_if<ScalarSet>(&parsed);
  if (!b) fail(ErrorKind::InvalidArgument, "gap clean needs a scalar set");
  Rational eps = rational_arg(a.eps, "eps");
  auto c = clean(g, *b, eps);
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    Json normal = Json::array();
    for (const auto& x : s.normal) normal.push_back(x.get_str());
    steps.push_back({{"rank_before", s.rank_before},
                     {"rank_after", s.rank_after},
                     {"b_before", s.b_before},
                     {"on_hyperplane", s.on_hyperplane},
                     {"normal", normal},
                     {"eta", to_string(s.eta)}});
  }
  r.results = {{"b", scalars_to_json(c.b)}, {"gap", gap_to_json(c.gap)}, {"steps", steps}};
  r.constants = {{"retained", to_string(c.retained)}, {"size_ratio", to_string(c.size_ratio)}};
  Rational limit = (1 - eps) * Rational(static_cast<long>(c.b.size())) + 1;
  r.checks = {{"proper", c.gap.proper},
              {"subspace_condition", c.gap.rank() <= 1 || Rational(static_cast<long>(c.max_hyperplane_count)) <= limit}};
}

void gap_fiber(const Args& a, Report& r) {
  r.params = {{"lambda", a.lambda}, {"intervals", a.intervals}, {"level", a.level}};
  BoxSlice s;
  s.lambda = a.lambda;
  s.level = a.level;
  for (const auto& iv : a.intervals) {
    auto colon = iv.find(':');
    if (colon == std::string::npos) fail(ErrorKind::ParseError, "--interval expects lo:hi, got " + iv);
    try {
      s.intervals.emplace_back(std::stoll(iv.substr(0, colon)), std::stoll(iv.substr(colon + 1)));
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "--interval expects lo:hi, got " + iv);
    }
  }
  if (s.lambda.size() != s.intervals.size() || s.lambda.empty())
    fail(ErrorKind::InvalidArgument, "--lambda and --interval counts differ");
  Integer exact = fiber_count_exact(s);
  long dim = affine_dimension(fiber_points(s));
  Rational bound = fiber_upper_bound(s, dim);
  r.results = {{"fiber_size", exact.get_str()}, {"affine_dimension", dim}, {"box_size", s.box_size().get_str()}};
  r.constants = {{"upper_bound", to_string(bound)}};
  r.checks = {{"bound_holds", Rational(exact) <= bound}};
}

void decompose_cmd(const Args& a, Report& r) {
  r.params = {{"input", a.input}, {"C", a.C}};
  r.input_digest = digest_file(a.input);
  auto parsed = parse_input(a.input);
  auto* s = std::get_if<ScalarSet>(&parsed);
  if (!s) fail(ErrorKind::InvalidArgument, "decompose needs a scalar set");
  DecomposeOptions opts;
  if (!a.eps.empty()) {
    opts.eps = rational_arg(a.eps, "eps");
    r.params["eps"] = a.eps;
  }
  auto rep = decompose(*s, rational_arg(a.C, "C"), opts);
  r.results = decomposition_to_json(rep);
  r.constants = log_to_json(rep.stage_log);
  r.checks = {{"partition", rep.checks.partition},
              {"a1_in_lattice", rep.checks.a1_in_lattice},
              {"sum_within_budget", rep.checks.sum_within_budget},
              {"a2_within_budget", rep.checks.a2_within_budget},
              {"product_bound", rep.checks.product_bound}};
  if (!rep.checks.all()) r.exit_code = 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subset-sum structure toolkit", "subsum"};
  app.require_subcommand(1);
  std::string out_path, registry_path;
  app.add_option("--out", out_path, "Write the JSON report to this file");
  app.add_option("--registry", registry_path, "Append a run record to this file");
  Args a;

  auto* fs = app.add_subcommand("fs", "Subset-sum sets")->require_subcommand(1);
  auto* fs_c = fs->add_subcommand("compute", "|FS(A)| of a set file");
  fs_c->add_option("--input", a.input)->required()->check(CLI::ExistingFile);
  fs_c->add_flag("--trace", a.trace, "Incremental z_i and y_i");
  fs_c->add_flag("--values", a.values, "List FS(A)");
  fs_c->add_option("--path", a.path, "auto, dense or sparse");

  auto* verify = app.add_subcommand("verify", "Exhaustive checks")->require_subcommand(1);
  auto* v_lin = verify->add_subcommand("linear", "Scan n-sets with sum <= cap for disagreements");
  v_lin->add_option("--n", a.n)->required()->check(CLI::Range(1, 64));
  v_lin->add_option("--M", a.M)->required()->check(CLI::NonNegativeNumber);
  v_lin->add_option("--cap", a.cap)->required();
  v_lin->add_option("--jobs", a.jobs)->check(CLI::Range(1u, 256u));
  v_lin->add_option("--budget", a.budget);
  auto* v_l21 = verify->add_subcommand("lemma21", "One-step equality over all small B");
  v_l21->add_option("--m", a.m)->required()->check(CLI::PositiveNumber);
  v_l21->add_option("--x-max", a.x_max)->required();

  auto* search = app.add_subcommand("search", "Extremal searches")->require_subcommand(1);
  auto* s_fd = search->add_subcommand("fd", "Grid minimum of |FS| over Xi_d(n, m)");
  s_fd->add_option("--d", a.d)->required()->check(CLI::PositiveNumber);
  s_fd->add_option("--n", a.n)->required()->check(CLI::PositiveNumber);
  s_fd->add_option("--m", a.m)->required()->check(CLI::NonNegativeNumber);
  s_fd->add_option("--grid", a.grid)->check(CLI::PositiveNumber);
  s_fd->add_option("--budget", a.budget);
  s_fd->add_option("--seed", a.seed);
  s_fd->add_option("--jobs", a.jobs)->check(CLI::Range(1u, 256u));
  s_fd->add_option("--csv", a.csv, "Write a CSV row to this file");

  auto* certify = app.add_subcommand("certify", "Certificates")->require_subcommand(1);
  auto* c_st = certify->add_subcommand("stability", "Explicit gamma and lower bound");
  c_st->add_option("--d", a.d)->required()->check(CLI::PositiveNumber);
  c_st->add_option("--eps", a.eps)->required();
  c_st->add_option("--n", a.n)->required()->check(CLI::PositiveNumber);

  auto* gap = app.add_subcommand("gap", "Symmetric GAP tools")->require_subcommand(1);
  auto* g_check = gap->add_subcommand("check", "Properness of a GAP file");
  g_check->add_option("--input", a.input)->required()->check(CLI::ExistingFile);
  auto* g_clean = gap->add_subcommand("clean", "Clean a set inside a GAP");
  g_clean->add_option("--input", a.input, "GAP file")->required()->check(CLI::ExistingFile);
  g_clean->add_option("--set", a.set_input, "Set file")->required()->check(CLI::ExistingFile);
  g_clean->add_option("--eps", a.eps)->required();
  auto* g_fiber = gap->add_subcommand("fiber", "Fiber size of a box slice");
  g_fiber->add_option("--lambda", a.lambda)->required()->delimiter(',');
  g_fiber->add_option("--interval", a.intervals, "lo:hi, once per coordinate")->required();
  g_fiber->add_option("--level", a.level);

  auto* dec = app.add_subcommand("decompose", "A = A1 u A2 decomposition");
  dec->add_option("--input", a.input)->required()->check(CLI::ExistingFile);
  dec->add_option("--C", a.C)->required();
  dec->add_option("--eps", a.eps);

  for (auto* sub : {fs, verify, search, certify, gap}) sub->fallthrough();
  for (auto* sub : {fs_c, v_lin, v_l21, s_fd, c_st, g_check, g_clean, g_fiber, dec}) sub->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 3;
  }

  Report r;
  auto start = std::chrono::steady_clock::now();
  try {
    if (fs_c->parsed()) r.command = "fs compute", fs_compute(a, r);
    else if (v_lin->parsed()) r.command = "verify linear", verify_linear(a, r);
    else if (v_l21->parsed()) r.command = "verify lemma21", verify_lemma21(a, r);
    else if (s_fd->parsed()) r.command = "search fd", search_fd(a, r);
    else if (c_st->parsed()) r.command = "certify stability", certify_stability(a, r);
    else if (g_check->parsed()) r.command = "gap check", gap_check(a, r);
    else if (g_clean->parsed()) r.command = "gap clean", gap_clean(a, r);
    else if (g_fiber->parsed()) r.command = "gap fiber", gap_fiber(a, r);
    else if (dec->parsed()) r.command = "decompose", decompose_cmd(a, r);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 3;
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  Json report = r.to_json();
  try {
    if (out_path.empty()) {
      out << report.dump(2) << "\n";
    } else {
      std::ofstream f(out_path);
      if (!f) fail(ErrorKind::StorageError, out_path + ": cannot write");
      f << report.dump(2) << "\n";
    }
    if (!registry_path.empty()) {
      Json outcome{{"results", r.results}, {"realized_constants", r.constants}, {"checks", r.checks},
                   {"exit_code", r.exit_code}};
      Registry(registry_path).append(make_record(r.command, r.params, r.input_digest, r.seed, outcome, ms));
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 3;
  }
  return r.exit_code;
}

}  // namespace subsum
