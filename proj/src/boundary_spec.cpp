#include "confseq/boundary_spec.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "confseq/boundaries.hpp"

namespace confseq {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

PsiFamily family_from_spec(const BoundarySpec& spec) {
  if (spec.family == "normal" || spec.family.empty()) return PsiFamily::normal();
  if (spec.family == "bernoulli")
    return PsiFamily::bernoulli(spec.require("g"), spec.require("h"));
  if (spec.family == "poisson") return PsiFamily::poisson(spec.require("c"));
  if (spec.family == "exponential") return PsiFamily::exponential(spec.require("c"));
  if (spec.family == "gamma") return PsiFamily::gamma(spec.require("c"));
  throw std::domain_error("unknown family: " + spec.family);
}

// rho directly, or tuned from opt_time (alpha doubled for one-sided kinds)
double resolve_rho(const BoundarySpec& spec, bool one_sided) {
  auto rho = spec.get("rho");
  auto opt = spec.get("opt_time");
  if (rho && opt) throw std::domain_error("rho and opt_time are mutually exclusive");
  if (rho) return *rho;
  if (opt) {
    double a = one_sided ? std::min(2.0 * spec.alpha, 0.999) : spec.alpha;
    return tune_rho_for_time(*opt, a, spec.l0);
  }
  throw std::domain_error("mixture boundary needs rho or opt_time");
}

}  // namespace

std::optional<double> BoundarySpec::get(const std::string& key) const {
  auto it = num.find(key);
  if (it == num.end()) return std::nullopt;
  return it->second;
}

double BoundarySpec::require(const std::string& key) const {
  auto v = get(key);
  if (!v) throw std::domain_error("boundary spec: missing parameter '" + key + "'");
  return *v;
}

BoundarySpec BoundarySpec::parse(const std::string& text) {
  BoundarySpec spec;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::domain_error("boundary spec line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "kind") {
      spec.kind = value;
    } else if (key == "family") {
      spec.family = value;
    } else {
      char* end = nullptr;
      double v = std::strtod(value.c_str(), &end);
      if (end == value.c_str() || *end != '\0')
        throw std::domain_error("boundary spec line " + std::to_string(lineno) +
                                ": bad numeric value '" + value + "'");
      if (key == "alpha") spec.alpha = v;
      else if (key == "l0") spec.l0 = v;
      else spec.num[key] = v;
    }
  }
  if (spec.kind.empty()) throw std::domain_error("boundary spec: missing kind");
  return spec;
}

std::string BoundarySpec::to_text() const {
  std::ostringstream os;
  os << "kind = " << kind << "\n";
  if (!family.empty()) os << "family = " << family << "\n";
  os << "alpha = " << fmt(alpha) << "\n";
  os << "l0 = " << fmt(l0) << "\n";
  for (const auto& [k, v] : num) os << k << " = " << fmt(v) << "\n";
  return os.str();
}

UniformBoundary make_boundary(const BoundarySpec& spec) {
  const std::string& kind = spec.kind;
  if (kind == "linear")
    return linear_boundary(family_from_spec(spec), spec.require("lambda"), spec.alpha, spec.l0);
  if (kind == "stitch-poly" || kind == "stitch-exp") {
    double eta = spec.get("eta").value_or(2.0);
    double s = spec.get("s").value_or(1.4);
    double m = spec.get("m").value_or(1.0);
    double c = spec.get("c").value_or(0.0);
    StitchParams p = kind == "stitch-poly" ? StitchParams::polynomial(eta, s, m, c)
                                           : StitchParams::exponential(eta, s, m, c);
    return stitched_boundary(p, spec.alpha, spec.l0);
  }
  if (kind == "normal2")
    return mixture_boundary(MixtureKind::normal_two_sided,
                            MixtureParams{resolve_rho(spec, false), 0.0, 0.0, 0.0}, spec.alpha,
                            spec.l0);
  if (kind == "normal1")
    return mixture_boundary(MixtureKind::normal_one_sided,
                            MixtureParams{resolve_rho(spec, true), 0.0, 0.0, 0.0}, spec.alpha,
                            spec.l0);
  if (kind == "betabinom2" || kind == "betabinom1") {
    MixtureParams p{resolve_rho(spec, kind == "betabinom1"), 0.0, spec.require("g"),
                    spec.require("h")};
    return mixture_boundary(kind == "betabinom2" ? MixtureKind::beta_binomial_two_sided
                                                 : MixtureKind::beta_binomial_one_sided,
                            p, spec.alpha, spec.l0);
  }
  if (kind == "gammaexp" || kind == "gammapoisson") {
    MixtureParams p{resolve_rho(spec, true), spec.require("c"), 0.0, 0.0};
    return mixture_boundary(kind == "gammaexp" ? MixtureKind::gamma_exponential
                                               : MixtureKind::gamma_poisson,
                            p, spec.alpha, spec.l0);
  }
  if (kind == "dm-lil" || kind == "dm-halfnormal") {
    PsiFamily family = family_from_spec(spec);
    double c = 0.0;
    if (family.kind() == PsiKind::poisson || family.kind() == PsiKind::exponential ||
        family.kind() == PsiKind::gamma)
      c = std::max(family.scale(), 0.0);
    double lambda_bar = spec.get("lambda_bar")
                            ? *spec.get("lambda_bar")
                            : discrete_mixture_lambda_bar(c, spec.require("opt_time"), spec.alpha);
    DiscreteMixtureParams p =
        kind == "dm-lil"
            ? DiscreteMixtureParams::lil(spec.get("s").value_or(1.4), lambda_bar,
                                         spec.get("eta").value_or(1.1))
            : DiscreteMixtureParams::half_normal(resolve_rho(spec, true), lambda_bar,
                                                 spec.get("eta").value_or(1.05));
    return discrete_mixture_boundary(p, family, spec.alpha, spec.l0);
  }
  if (kind == "inverted-lil") {
    double A = spec.get("A").value_or(1.7);
    double C = spec.get("C").value_or(3.46);
    double v_max = spec.get("v_max").value_or(1e20);
    auto g = [A, C](double v) {
      return A * std::sqrt(v * (std::log(std::log(std::exp(1.0) * v)) + C));
    };
    auto grid = default_eta_grid();
    return inverted_stitching_boundary(g, v_max, grid, spec.l0);
  }
  throw std::domain_error("unknown boundary kind: " + kind);
}

}  // namespace confseq
