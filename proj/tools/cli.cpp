#include "cli.hpp"

#include "goldstein/bisection.hpp"
#include "goldstein/direction.hpp"
#include "goldstein/geometry.hpp"
#include "goldstein/optimizer.hpp"
#include "goldstein/rng.hpp"
#include "goldstein/testfns.hpp"
#include "montecarlo.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <variant>

namespace goldstein::cli {

namespace {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { Csv, Json };

std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

void write_csv(const Table& table, std::ostream& os) {
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    os << (k ? "," : "") << table.columns[k];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      os << (k ? "," : "") << cell_text(row[k]);
    }
    os << '\n';
  }
}

void write_json(const Table& table, std::ostream& os) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < row.size(); ++k) {
      std::visit([&](const auto& v) { obj[table.columns[k]] = v; }, row[k]);
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

// Writes to `path` when given, otherwise to `out`.
void emit(const Table& table, Format format, const std::string& path,
          std::ostream& out) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!path.empty()) {
    file.open(path, std::ios::out | std::ios::trunc | std::ios::binary);
    if (!file) throw InvalidArgument("cannot open output file '" + path + "'");
    os = &file;
  }
  if (format == Format::Csv) {
    write_csv(table, *os);
  } else {
    write_json(table, *os);
  }
  os->flush();
  if (!*os) throw std::runtime_error("failed writing output");
}

const std::map<std::string, Format> kFormats{{"csv", Format::Csv},
                                             {"json", Format::Json}};

Vector make_point(const std::string& text, Index n, const char* what) {
  const std::vector<double> values = parse_list(text);
  if (values.size() == 1) return Vector::Constant(n, values[0]);
  if (static_cast<Index>(values.size()) != n) {
    throw InvalidArgument(std::string(what) + " has " +
                          std::to_string(values.size()) +
                          " entries, function dimension is " +
                          std::to_string(n));
  }
  return Eigen::Map<const Vector>(values.data(), n);
}

std::string vector_text(const Vector& x) {
  std::string s;
  for (Index i = 0; i < x.size(); ++i) {
    s += (i ? "," : "") + format_number(x[i]);
  }
  return s;
}

// -- solve ---------------------------------------------------------------------

struct SolveOptions {
  std::string fn;
  std::string x0 = "1";
  std::string method = "det";
  double eps = 1.0;
  double c = 0.5;
  double delta = 1e-6;
  double eps_min = 1e-6;
  double shrink = 0.5;
  int max_outer = 10000;
  std::size_t max_bundle = 0;
  std::uint64_t seed = 0;
  std::optional<int> m;
  std::string out;
  Format format = Format::Csv;
};

int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  const FunctionOracle oracle = testfns::make_oracle(o.fn);
  const Vector x0 = make_point(o.x0, oracle.dimension(), "--x0");

  Table table{{"iter", "fx", "eps", "vnorm", "oracle_evals", "oracle_subgrads",
               "bundle_size"},
              {}};
  const TraceSink sink = [&table](const TraceRow& r) {
    table.rows.push_back({std::int64_t{r.iter}, r.fx, r.eps, r.vnorm,
                          static_cast<std::int64_t>(r.oracle_evals),
                          static_cast<std::int64_t>(r.oracle_subgrads),
                          static_cast<std::int64_t>(r.bundle_size)});
  };

  DescentTrace trace;
  try {
    if (o.method == "det") {
      DescentParams p;
      p.eps = o.eps;
      p.c = o.c;
      p.delta = o.delta;
      p.eps_min = o.eps_min;
      p.shrink = o.shrink;
      p.max_outer = o.max_outer;
      p.max_bundle = o.max_bundle;
      p.validate();
      trace = minimize_deterministic(oracle, x0, p, sink);
    } else {
      GSParams p;
      p.m = o.m;
      p.eps = o.eps;
      p.c = o.c;
      p.delta = o.delta;
      p.eps_min = o.eps_min;
      p.shrink = o.shrink;
      p.max_outer = o.max_outer;
      p.seed = o.seed;
      p.validate();
      trace = minimize_random_gs(oracle, x0, p, sink);
    }
  } catch (const AlgorithmFailure& e) {
    emit(table, o.format, o.out, out);
    err << "algorithm failure: " << e.what() << '\n';
    return kFailure;
  }

  emit(table, o.format, o.out, out);
  err << "status="
      << (trace.status == TraceStatus::Converged ? "converged" : "max-outer")
      << " steps=" << trace.steps() << " f=" << format_number(trace.f_final)
      << " x=" << vector_text(trace.x_final) << '\n';
  return trace.status == TraceStatus::Converged ? kOk : kFailure;
}

// -- bisect-demo ---------------------------------------------------------------

struct BisectOptions {
  std::string algo = "improved";
  std::string fn = "counterexample";
  std::string x0 = "0";
  std::string v;  // empty: -subgrad(x0)
  double eps = 1.0;
  double c = 0.5;
  std::optional<double> ctilde;
  int max_iter = BisectionCaps{}.max_iter;
  std::string out;
  Format format = Format::Csv;
};

int cmd_bisect_demo(const BisectOptions& o, std::ostream& out,
                    std::ostream& err) {
  const FunctionOracle oracle = testfns::make_oracle(o.fn);
  const Index n = oracle.dimension();
  const Vector x0 = make_point(o.x0, n, "--x0");
  const Vector v =
      o.v.empty() ? Vector(-oracle.subgradient(x0)) : make_point(o.v, n, "--v");
  BisectionCaps caps;
  caps.max_iter = o.max_iter;

  Table table{{"j", "a", "b", "t", "xi_dot_v"}, {}};
  const BisectionLog log = [&table](const BisectionStep& s) {
    table.rows.push_back({std::int64_t{s.j}, s.a, s.b, s.t, s.xi_dot_v});
  };

  BisectionOutcome result;
  if (o.algo == "legacy") {
    if (o.ctilde) throw InvalidArgument("--ctilde only applies to improved");
    result = bisect_legacy(oracle, x0, o.eps, o.c, v, caps, log);
  } else if (o.ctilde) {
    result = bisect_improved(oracle, x0, o.eps, o.c, *o.ctilde, v, caps, log);
  } else {
    result = bisect_improved(oracle, x0, o.eps, o.c, v, caps, log);
  }
  emit(table, o.format, o.out, out);

  err << "c_min=" << format_number(result.c_min)
      << " c_tilde=" << format_number(result.c_tilde) << '\n';
  if (result.found()) {
    const Found& f = result.found_value();
    err << "Found j=" << f.j << " updates=" << f.updates
        << " t=" << format_number(f.t) << " xi=" << vector_text(f.xi)
        << " xi_dot_v=" << format_number(f.xi.dot(v)) << '\n';
    return kOk;
  }
  const IntervalExhausted& x = result.exhausted();
  err << "IntervalExhausted j=" << x.j << " updates=" << x.updates
      << " last_t=" << format_number(x.last_t) << '\n';
  return kFailure;
}

// -- table1 --------------------------------------------------------------------

struct Table1Options {
  std::int64_t mc = 0;
  std::uint64_t seed = 0;
  std::optional<int> n;
  unsigned workers = 0;
  std::string out;
  Format format = Format::Csv;
};

int cmd_table1(const Table1Options& o, std::ostream& out, std::ostream&) {
  if (o.n && *o.n < 2) throw InvalidArgument("--n must be >= 2");
  if (o.mc < 0) throw InvalidArgument("--mc must be >= 0");

  std::vector<geometry::ProbabilityRow> rows;
  if (o.n) {
    rows.push_back({*o.n, 2 * *o.n, geometry::d2_fraction(*o.n),
                    geometry::detection_probability(*o.n, 2 * *o.n)});
  } else {
    rows = geometry::table1();
  }

  Table table{{"n", "m", "p", "detect"}, {}};
  if (o.mc > 0) {
    table.columns.push_back("mc_detect");
    table.columns.push_back("mc_stderr");
  }
  for (const auto& r : rows) {
    std::vector<Cell> cells{std::int64_t{r.n}, std::int64_t{r.m}, r.p,
                            r.detect};
    if (o.mc > 0) {
      const mc::Estimate e = mc::d2_hit_rate(r.n, r.m, o.mc, o.seed, o.workers);
      cells.emplace_back(e.rate());
      cells.emplace_back(e.standard_error());
    }
    table.rows.push_back(std::move(cells));
  }
  emit(table, o.format, o.out, out);
  return kOk;
}

// -- gs-compare ----------------------------------------------------------------

struct CompareOptions {
  std::string dims = "2,3,4,5,6,7,8,9,10";
  std::int64_t trials = 10000;
  std::uint64_t seed = 0;
  double eps = 1.0;
  double c = 0.5;
  double detect_tol = 1e-9;
  unsigned workers = 0;
  std::string out;
  Format format = Format::Csv;
};

constexpr mc::Outcome kHit = 1;
constexpr mc::Outcome kDetect = 2;

int cmd_gs_compare(const CompareOptions& o, std::ostream& out, std::ostream&) {
  if (o.trials < 1) throw InvalidArgument("--trials must be >= 1");
  std::vector<int> dims;
  for (const double d : parse_list(o.dims)) {
    if (d != static_cast<int>(d) || d < 2) {
      throw InvalidArgument("--dims entries must be integers >= 2");
    }
    dims.push_back(static_cast<int>(d));
  }

  Table table{{"n", "det_subgrads", "det_critical", "gs_hit_rate",
               "gs_hit_stderr", "gs_detect_rate", "gs_detect_stderr",
               "analytic_hit"},
              {}};
  for (const int n : dims) {
    const FunctionOracle oracle = testfns::cone_oracle(n);
    const Vector x0 = Vector::Zero(n);

    DescentParams dp;
    dp.eps = o.eps;
    dp.c = o.c;
    const DirectionReport det = descent_direction(oracle, x0, dp);

    GSParams gp;
    gp.eps = o.eps;
    gp.c = o.c;
    gp.validate();
    const std::uint64_t stream_seed =
        splitmix64(o.seed ^ static_cast<std::uint64_t>(n));
    const auto outcomes = mc::run_trials(
        o.trials,
        [&](std::int64_t i) -> mc::Outcome {
          Rng rng(stream_seed, static_cast<std::uint64_t>(i));
          const GSDirection d = gs_direction(oracle, x0, gp, rng);
          mc::Outcome r = 0;
          for (const Vector& y : d.samples) {
            if (mc::in_d2(y)) r |= kHit;
          }
          if (d.v.norm() <= o.detect_tol) r |= kDetect;
          return r;
        },
        o.workers);
    const mc::Estimate hit = mc::tally(outcomes, kHit);
    const mc::Estimate detect = mc::tally(outcomes, kDetect);

    table.rows.push_back(
        {std::int64_t{n}, static_cast<std::int64_t>(det.stats.calls.subgradients),
         std::int64_t{det.critical() ? 1 : 0}, hit.rate(),
         hit.standard_error(), detect.rate(), detect.standard_error(),
         geometry::detection_probability(n, gp.samples(n))});
  }
  emit(table, o.format, o.out, out);
  return kOk;
}

void add_output_options(CLI::App* sub, std::string& path, Format& format) {
  sub->add_option("--out", path, "Output file (default: stdout)");
  sub->add_option("--format", format, "csv (default) or json")
      ->always_capture_default(false)
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
      ->option_text("TEXT");
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    double v = 0.0;
    const char* first = item.data();
    const char* last = item.data() + item.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (item.empty() || ec != std::errc() || ptr != last) {
      throw InvalidArgument("bad number '" + item + "' in list '" + text + "'");
    }
    values.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Deterministic Goldstein subgradient descent tools",
               "goldstein"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "Minimize a bundled function");
  solve->add_option("--fn", so.fn, "counterexample, cone:<n>, abs, "
                                   "maxnorm:<n>, maxquad")
      ->required();
  solve->add_option("--x0", so.x0, "Start point: comma list or one scalar");
  solve->add_option("--eps", so.eps);
  solve->add_option("--c", so.c);
  solve->add_option("--delta", so.delta);
  solve->add_option("--eps-min", so.eps_min);
  solve->add_option("--shrink", so.shrink);
  solve->add_option("--max-outer", so.max_outer);
  solve->add_option("--max-bundle", so.max_bundle, "0 selects 2(n+1)");
  solve->add_option("--method", so.method)
      ->check(CLI::IsMember({"det", "gs"}));
  solve->add_option("--seed", so.seed, "Seed for --method gs");
  solve->add_option("--m", so.m, "Samples per iteration for --method gs");
  add_output_options(solve, so.out, so.format);

  BisectOptions bo;
  auto* bisect = app.add_subcommand("bisect-demo",
                                    "Trace one bisection search");
  bisect->add_option("--algo", bo.algo)
      ->check(CLI::IsMember({"legacy", "improved"}));
  bisect->add_option("--fn", bo.fn);
  bisect->add_option("--x0", bo.x0);
  bisect->add_option("--v", bo.v, "Direction (default: -subgrad(x0))");
  bisect->add_option("--eps", bo.eps);
  bisect->add_option("--c", bo.c);
  bisect->add_option("--ctilde", bo.ctilde, "Default: midpoint rule");
  bisect->add_option("--max-iter", bo.max_iter);
  add_output_options(bisect, bo.out, bo.format);

  Table1Options to;
  auto* table1 = app.add_subcommand("table1",
                                    "Detection probabilities at x0 = 0");
  table1->add_option("--mc", to.mc, "Monte Carlo trials per row");
  table1->add_option("--seed", to.seed);
  table1->add_option("--n", to.n, "Single dimension instead of the table");
  table1->add_option("--workers", to.workers, "0 = all cores");
  add_output_options(table1, to.out, to.format);

  CompareOptions co;
  auto* compare = app.add_subcommand(
      "gs-compare", "Deterministic vs random sampling at the cone apex");
  compare->add_option("--dims", co.dims, "Comma list of dimensions");
  compare->add_option("--trials", co.trials);
  compare->add_option("--seed", co.seed);
  compare->add_option("--eps", co.eps);
  compare->add_option("--c", co.c);
  compare->add_option("--detect-tol", co.detect_tol);
  compare->add_option("--workers", co.workers, "0 = all cores");
  add_output_options(compare, co.out, co.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return cmd_solve(so, out, err);
    if (*bisect) return cmd_bisect_demo(bo, out, err);
    if (*table1) return cmd_table1(to, out, err);
    return cmd_gs_compare(co, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  std::vector<const char*> argv{"goldstein"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace goldstein::cli
