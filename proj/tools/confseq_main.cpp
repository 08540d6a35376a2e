// Command-line front end: boundary tables, streaming confidence sequences,
// treatment-effect and covariance streams, tuning, and seeded simulations.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "confseq/boundaries.hpp"
#include "confseq/boundary_spec.hpp"
#include "confseq/intervals.hpp"
#include "confseq/matrix.hpp"
#include "confseq/simulate.hpp"
#include "confseq/streams.hpp"

namespace {

using namespace confseq;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<double> parse_row(const std::string& line, int lineno) {
  std::string cleaned = line;
  for (char& c : cleaned)
    if (c == ',' || c == '\t' || c == ';') c = ' ';
  std::istringstream is(cleaned);
  std::vector<double> vals;
  double v;
  while (is >> v) vals.push_back(v);
  std::string rest;
  if (is.fail() && !is.eof()) {
    is.clear();
    is >> rest;
    throw IoError("input line " + std::to_string(lineno) + ": bad field '" + rest + "'");
  }
  return vals;
}

class InputStream {
 public:
  explicit InputStream(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw IoError("cannot open input file: " + path);
      in_ = &file_;
    } else {
      in_ = &std::cin;
    }
  }
  bool next_row(std::vector<double>* row) {
    std::string line;
    while (std::getline(*in_, line)) {
      ++lineno_;
      if (line.empty() || line[0] == '#') continue;
      *row = parse_row(line, lineno_);
      if (!row->empty()) return true;
    }
    return false;
  }
  int lineno() const { return lineno_; }

 private:
  std::ifstream file_;
  std::istream* in_ = nullptr;
  int lineno_ = 0;
};

// ---------------------------------------------------------------------------
// boundary

struct BoundaryArgs {
  BoundarySpec spec;
  std::string spec_file;
  bool dump_spec = false;
  double v = -1.0;
  double v_min = 1.0, v_max = 1e6;
  int v_points = 50;
  bool tsv = false;
};

void add_spec_flags(CLI::App* cmd, BoundarySpec* spec) {
  cmd->add_option("--kind", spec->kind, "boundary kind");
  cmd->add_option("--family", spec->family, "psi family for linear/discrete kinds");
  cmd->add_option("--alpha", spec->alpha, "crossing probability");
  cmd->add_option("--l0", spec->l0, "initial-value constant (matrix: dimension)");
  for (const char* key : {"lambda", "eta", "s", "m", "c", "rho", "opt_time", "g", "h",
                          "lambda_bar", "v_max", "A", "C"}) {
    std::string flag = std::string("--") + key;
    for (auto& ch : flag)
      if (ch == '_') ch = '-';
    cmd->add_option_function<double>(
        flag, [spec, key = std::string(key)](double v) { spec->num[key] = v; },
        std::string("parameter ") + key);
  }
}

int run_boundary(const BoundaryArgs& args) {
  BoundarySpec spec = args.spec;
  if (!args.spec_file.empty()) {
    std::ifstream f(args.spec_file);
    if (!f) throw IoError("cannot open spec file: " + args.spec_file);
    std::stringstream ss;
    ss << f.rdbuf();
    spec = BoundarySpec::parse(ss.str());
  }
  UniformBoundary u = make_boundary(spec);
  if (args.dump_spec) {
    std::cout << spec.to_text();
    return 0;
  }
  char d = args.tsv ? '\t' : ',';
  if (spec.kind == "inverted-lil")
    std::cout << "# crossing_bound = " << fmt(u.alpha()) << "\n";
  std::cout << "v" << d << "u\n";
  auto emit = [&](double v) { std::cout << fmt(v) << d << fmt(u(v)) << "\n"; };
  if (args.v >= 0.0) {
    emit(args.v);
    return 0;
  }
  if (!(args.v_min > 0.0 && args.v_max >= args.v_min && args.v_points >= 1))
    throw std::domain_error("boundary: invalid v grid");
  for (int i = 0; i < args.v_points; ++i) {
    double f = args.v_points > 1 ? static_cast<double>(i) / (args.v_points - 1) : 0.0;
    emit(args.v_min * std::pow(args.v_max / args.v_min, f));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// confseq

struct ConfseqArgs {
  std::string strategy = "hoeffding";
  double alpha = 0.05;
  double a = 0.0, b = 1.0;
  std::optional<double> rho;
  double opt_time = 500.0;
  std::optional<double> null_value;
  bool intersect = false;
  std::string input;
  bool tsv = false;
};

// common surface over the streaming strategies
struct StrategyBox {
  std::function<void(double)> observe;
  std::function<CsInterval()> interval;
  std::function<bool(double, double)> covers;  // (theta, alpha_total)
};

StrategyBox make_strategy(const ConfseqArgs& args) {
  double span = args.b - args.a;
  if (!(span > 0.0)) throw std::domain_error("requires a < b");
  double hoeff_v = span * span * args.opt_time / 4.0;
  if (args.strategy == "hoeffding") {
    double rho = args.rho ? *args.rho : tune_rho_for_time(hoeff_v, args.alpha);
    auto cs = std::make_shared<HoeffdingCs>(args.a, args.b, args.alpha, rho);
    return {[cs](double x) { cs->observe(x); }, [cs] { return cs->interval(); },
            [cs](double th, double al) { return cs->covers(th, al); }};
  }
  if (args.strategy == "beta-binomial") {
    if (args.rho) throw std::domain_error("beta-binomial tunes per candidate; use --opt-time");
    auto cs = std::make_shared<BetaBinomialCs>(args.a, args.b, args.alpha, args.opt_time);
    return {[cs](double x) { cs->observe(x); }, [cs] { return cs->interval(); },
            [cs](double th, double al) { return cs->covers(th, al); }};
  }
  if (args.strategy == "empirical-bernstein") {
    double rho = args.rho ? *args.rho : tune_rho_for_time(hoeff_v, args.alpha);
    auto cs = std::make_shared<EmpiricalBernsteinCs>(args.a, args.b, args.alpha / 2.0, rho);
    return {[cs](double x) { cs->observe(x); }, [cs] { return cs->interval(); },
            [cs](double th, double al) { return cs->covers(th, al); }};
  }
  if (args.strategy == "naive-sn") {
    double rho = args.rho ? *args.rho : tune_rho_for_time(hoeff_v, args.alpha);
    auto cs = std::make_shared<NaiveSnCs>(args.a, args.b, args.alpha, rho);
    return {[cs](double x) { cs->observe(x); }, [cs] { return cs->interval(); },
            [cs](double th, double al) { return cs->covers(th, al); }};
  }
  if (args.strategy == "variance") {
    double rho = args.rho ? *args.rho : tune_rho_for_time(2.0 * args.opt_time, args.alpha);
    auto cs = std::make_shared<VarianceCs>(args.alpha / 2.0, args.alpha / 2.0, rho, rho);
    return {[cs](double x) { cs->update(x); }, [cs] { return cs->interval(); },
            [cs](double th, double al) { return cs->covers(th, al); }};
  }
  if (args.strategy == "bernoulli-family") {
    auto cs = std::make_shared<BernoulliFamilyCs>(args.alpha / 2.0, args.alpha / 2.0,
                                                  args.opt_time);
    return {[cs](double x) { cs->observe(x); }, [cs] { return cs->interval(); },
            [cs](double th, double al) { return cs->covers(th, al); }};
  }
  throw std::domain_error("unknown strategy: " + args.strategy);
}

int run_confseq(const ConfseqArgs& args) {
  StrategyBox box = make_strategy(args);
  InputStream in(args.input);
  char d = args.tsv ? '\t' : ',';
  std::cout << "t" << d << "lower" << d << "upper";
  if (args.null_value) std::cout << d << "p_value";
  if (args.intersect) std::cout << d << "empty";
  std::cout << "\n";
  RunningIntersection runint;
  AlwaysValidP avp;
  std::vector<double> row;
  std::int64_t t = 0;
  while (in.next_row(&row)) {
    if (row.size() != 1)
      throw IoError("input line " + std::to_string(in.lineno()) + ": expected one value per row");
    box.observe(row[0]);
    ++t;
    CsInterval ci = box.interval();
    if (args.intersect) ci = runint.feed(ci);
    std::cout << t << d << fmt(ci.lower) << d << fmt(ci.upper);
    if (args.null_value) {
      double theta = *args.null_value;
      double p = avp.update([&](double al) { return box.covers(theta, al); });
      std::cout << d << fmt(p);
    }
    if (args.intersect) std::cout << d << (runint.empty() ? 1 : 0);
    std::cout << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// ate

struct AteArgs {
  double alpha = 0.025;
  double p_min = 0.1;
  std::optional<double> rho;
  double opt_time = 100.0;  // intrinsic time target
  std::string input;
  bool tsv = false;
};

int run_ate(const AteArgs& args) {
  double rho = args.rho ? *args.rho : tune_rho_for_time(args.opt_time, 2.0 * args.alpha);
  AteCs cs(args.p_min, args.alpha, rho);
  InputStream in(args.input);
  char d = args.tsv ? '\t' : ',';
  std::cout << "t" << d << "lower" << d << "upper\n";
  std::vector<double> row;
  while (in.next_row(&row)) {
    CsInterval ci;
    if (row.size() == 3)
      ci = cs.update(static_cast<int>(row[0]), row[1], row[2]);
    else if (row.size() == 5)
      ci = cs.update(static_cast<int>(row[0]), row[1], row[2], row[3], row[4]);
    else
      throw IoError("input line " + std::to_string(in.lineno()) +
                    ": expected z,p,y or z,p,y,pred0,pred1");
    std::cout << ci.t << d << fmt(ci.lower) << d << fmt(ci.upper) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// covariance

struct CovArgs {
  int dim = 2;
  double b = 1.0;
  double alpha = 0.05;
  double eta = 1.1;
  double s = 1.4;
  std::optional<double> lambda_bar;
  std::optional<double> sigma_op;
  std::string input;
  bool tsv = false;
};

int run_covariance(const CovArgs& args) {
  double c = 2.0 * args.b / 3.0;
  double lb = args.lambda_bar ? *args.lambda_bar
                              : discrete_mixture_lambda_bar(c, args.b * args.b, args.alpha);
  UniformBoundary u =
      discrete_mixture_boundary(DiscreteMixtureParams::lil(args.s, lb, args.eta),
                                PsiFamily::gamma(c), args.alpha, static_cast<double>(args.dim));
  CovarianceCs cs(args.dim, args.b, u);
  InputStream in(args.input);
  char d = args.tsv ? '\t' : ',';
  std::cout << "t";
  for (int i = 0; i < args.dim; ++i)
    for (int j = i; j < args.dim; ++j) std::cout << d << "sigma" << i << j;
  std::cout << d << "radius_conservative";
  if (args.sigma_op) std::cout << d << "radius_at_sigma_op";
  std::cout << "\n";
  std::vector<double> row;
  while (in.next_row(&row)) {
    if (static_cast<int>(row.size()) != args.dim)
      throw IoError("input line " + std::to_string(in.lineno()) + ": expected " +
                    std::to_string(args.dim) + " values");
    cs.update(row);
    SymMatrix sh = cs.sigma_hat();
    std::cout << cs.t();
    for (int i = 0; i < args.dim; ++i)
      for (int j = i; j < args.dim; ++j) std::cout << d << fmt(sh.at(i, j));
    std::cout << d << fmt(cs.conservative_radius());
    if (args.sigma_op) std::cout << d << fmt(cs.radius(*args.sigma_op));
    std::cout << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate / tune

struct SimArgs {
  std::string scenario;
  int reps = -1;
  std::int64_t horizon = -1;
  std::uint64_t seed = 1;
  double alpha = -1.0;
  double opt_time = -1.0;
  bool tsv = false;
};

int run_simulate(const SimArgs& args) {
  Scenario sc = make_scenario(args.scenario);
  if (args.reps > 0) sc.reps = args.reps;
  if (args.horizon > 0) sc.horizon = args.horizon;
  sc.seed = args.seed;
  if (args.alpha > 0.0) sc.alpha = args.alpha;
  if (args.opt_time > 0.0) sc.opt_time = args.opt_time;
  SimReport report = run_scenario(sc);
  report.write(std::cout, args.tsv ? '\t' : ',');
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-uniform confidence sequences"};
  app.require_subcommand(1);

  BoundaryArgs bargs;
  auto* boundary = app.add_subcommand("boundary", "tabulate a uniform boundary");
  add_spec_flags(boundary, &bargs.spec);
  boundary->add_option("--spec", bargs.spec_file, "load a key=value spec file");
  boundary->add_flag("--dump-spec", bargs.dump_spec, "print the spec and exit");
  boundary->add_option("--v", bargs.v, "single intrinsic time to evaluate");
  boundary->add_option("--v-min", bargs.v_min, "grid start");
  boundary->add_option("--v-max", bargs.v_max, "grid end");
  boundary->add_option("--v-points", bargs.v_points, "grid size (log-spaced)");
  boundary->add_flag("--tsv", bargs.tsv, "tab-separated output");

  ConfseqArgs cargs;
  auto* conf = app.add_subcommand("confseq", "streaming confidence sequence");
  conf->add_option("--strategy", cargs.strategy,
                   "hoeffding|beta-binomial|empirical-bernstein|naive-sn|variance|bernoulli-family");
  conf->add_option("--alpha", cargs.alpha, "total miscoverage budget");
  conf->add_option("--a", cargs.a, "support lower end");
  conf->add_option("--b", cargs.b, "support upper end");
  conf->add_option("--rho", cargs.rho, "mixture precision");
  conf->add_option("--opt-time", cargs.opt_time, "sample count to optimize for");
  conf->add_option("--null", cargs.null_value, "emit always-valid p against this value");
  conf->add_flag("--intersect", cargs.intersect, "apply the running intersection");
  conf->add_option("--input", cargs.input, "input file (default stdin)");
  conf->add_flag("--tsv", cargs.tsv, "tab-separated output");

  AteArgs aargs;
  auto* ate = app.add_subcommand("ate", "treatment-effect confidence sequence");
  ate->add_option("--alpha", aargs.alpha, "crossing probability per side");
  ate->add_option("--p-min", aargs.p_min, "treatment probability floor")->required();
  ate->add_option("--rho", aargs.rho, "mixture precision");
  ate->add_option("--opt-time", aargs.opt_time, "intrinsic time to optimize for");
  ate->add_option("--input", aargs.input, "input rows z,p,y[,pred0,pred1]");
  ate->add_flag("--tsv", aargs.tsv, "tab-separated output");

  CovArgs vargs;
  auto* cov = app.add_subcommand("covariance", "covariance-matrix confidence sequence");
  cov->add_option("--dim", vargs.dim, "vector dimension")->required();
  cov->add_option("--b", vargs.b, "norm bound: ||x||^2 <= b")->required();
  cov->add_option("--alpha", vargs.alpha, "crossing probability");
  cov->add_option("--eta", vargs.eta, "discrete mixture spacing");
  cov->add_option("--s", vargs.s, "mixture shape exponent");
  cov->add_option("--lambda-bar", vargs.lambda_bar, "top mixture support point");
  cov->add_option("--sigma-op", vargs.sigma_op, "report the radius at this operator norm");
  cov->add_option("--input", vargs.input, "input rows: d-vectors");
  cov->add_flag("--tsv", vargs.tsv, "tab-separated output");

  SimArgs sargs;
  auto* sim = app.add_subcommand("simulate", "seeded Monte-Carlo scenario");
  sim->add_option("--scenario", sargs.scenario, "scenario name")->required();
  sim->add_option("--reps", sargs.reps, "replications");
  sim->add_option("--horizon", sargs.horizon, "stream length");
  sim->add_option("--seed", sargs.seed, "random seed");
  sim->add_option("--alpha", sargs.alpha, "nominal level");
  sim->add_option("--opt-time", sargs.opt_time, "sample count boundaries are tuned for");
  sim->add_flag("--tsv", sargs.tsv, "tab-separated output");

  double tune_m = 0.0, tune_alpha = 0.05, tune_l0 = 1.0;
  auto* tune = app.add_subcommand("tune", "mixture precision for a target intrinsic time");
  tune->add_option("--opt-time", tune_m, "intrinsic time")->required();
  tune->add_option("--alpha", tune_alpha, "crossing probability");
  tune->add_option("--l0", tune_l0, "initial-value constant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*boundary) return run_boundary(bargs);
    if (*conf) return run_confseq(cargs);
    if (*ate) return run_ate(aargs);
    if (*cov) return run_covariance(vargs);
    if (*sim) return run_simulate(sargs);
    if (*tune) {
      std::cout << fmt(tune_rho_for_time(tune_m, tune_alpha, tune_l0)) << "\n";
      return 0;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
