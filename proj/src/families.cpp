#include "qpol/families.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "qpol/minimize.hpp"

namespace qpol {

namespace {

// x^e with the support convention 0^0 = 0.
double pow0(double x, double e) { return x <= 0.0 ? 0.0 : std::pow(x, e); }

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(fmt::format("{} = {} outside [0, 1]", name, x));
}

double log_sum_exp(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  const double top = std::max(a, b);
  return top + std::log(std::exp(a - top) + std::exp(b - top));
}

double log_or_minus_inf(double x) { return x > 0.0 ? std::log(x) : -INFINITY; }

}  // namespace

void check_family(const SuperpositionFamily& fam) {
  if (fam.n1 < 0 || fam.n2 <= fam.n1)
    throw DomainError(fmt::format("need 0 <= N1 < N2, got N1={}, N2={}", fam.n1, fam.n2));
  check_unit(fam.p, "p");
}

void check_family(const MixtureFamily& fam) {
  check_unit(fam.p, "p");
  check_unit(fam.alpha, "alpha");
  check_unit(fam.beta, "beta");
  check_unit(fam.gamma, "gamma");
  if (fam.beta + fam.gamma > 1.0)
    throw DomainError(fmt::format("beta + gamma = {} exceeds 1", fam.beta + fam.gamma));
}

double superposition_renyi(const SuperpositionFamily& fam, double s, double pi1) {
  check_family(fam);
  check_unit(s, "s");
  check_unit(pi1, "pi1");
  return pow0(fam.p, s) * pow0(pi1 / (fam.n1 + 1), 1.0 - s) +
         pow0(1.0 - fam.p, s) * pow0((1.0 - pi1) / (fam.n2 + 1), 1.0 - s);
}

double superposition_optimal_pi1(const SuperpositionFamily& fam, double s) {
  check_family(fam);
  if (!(s > 0.0 && s <= 1.0)) throw DomainError(fmt::format("s = {} outside (0, 1]", s));
  if (fam.p == 0.0) return 0.0;
  const double log_ratio = std::log(static_cast<double>(fam.n1 + 1) / (fam.n2 + 1));
  return 1.0 / (1.0 + (1.0 - fam.p) / fam.p * std::exp((1.0 / s - 1.0) * log_ratio));
}

double superposition_max_overlap(const SuperpositionFamily& fam, double s) {
  check_family(fam);
  if (!(s > 0.0 && s <= 1.0)) throw DomainError(fmt::format("s = {} outside (0, 1]", s));
  const double e = 1.0 - 1.0 / s;
  const double t1 = log_or_minus_inf(fam.p) + e * std::log(fam.n1 + 1.0);
  const double t2 = log_or_minus_inf(1.0 - fam.p) + e * std::log(fam.n2 + 1.0);
  return std::exp(s * log_sum_exp(t1, t2));
}

double superposition_stationarity_residual(const SuperpositionFamily& fam, double s) {
  const double e = 1.0 - 1.0 / s;
  const double a = fam.p * std::pow(fam.n1 + 1.0, e);
  const double b = (1.0 - fam.p) * std::pow(fam.n2 + 1.0, e);
  const double q = superposition_max_overlap(fam, s);
  return a * std::log((fam.n1 + 1.0) * q) + b * std::log((fam.n2 + 1.0) * q);
}

ChernoffResult superposition_chernoff(const SuperpositionFamily& fam) {
  check_family(fam);
  ChernoffResult out;
  auto boundary_at = [&out](int n) {
    out.s_opt = 0.0;
    out.overlap = 1.0 / (n + 1);
    out.degree = static_cast<double>(n) / (n + 1);
    out.optimal_weights.weights = {{n, 1.0}};
    out.boundary_case = true;
  };
  if (fam.p == 0.0) {
    boundary_at(fam.n2);
    return out;
  }
  if (fam.p >= 1.0 / (fam.n1 + 1)) {  // plateau, includes p = 1
    boundary_at(fam.n1);
    return out;
  }
  const OverlapMinimum m = minimize_overlap_curve(
      [&](double s) { return superposition_max_overlap(fam, s); }, 1.0 / (fam.n1 + 1));
  if (m.at_boundary) {
    boundary_at(fam.n1);
    return out;
  }
  const double pi1 = superposition_optimal_pi1(fam, m.s);
  out.s_opt = m.s;
  out.overlap = m.value;
  out.degree = 1.0 - m.value;
  out.optimal_weights.weights = {{fam.n1, pi1}, {fam.n2, 1.0 - pi1}};
  return out;
}

double superposition_bures(const SuperpositionFamily& fam) {
  check_family(fam);
  return 1.0 - std::sqrt(fam.p / (fam.n1 + 1) + (1.0 - fam.p) / (fam.n2 + 1));
}

TwoModeState superposition_state(const SuperpositionFamily& fam) {
  check_family(fam);
  return horizontal_fock_superposition({{fam.n1, fam.p}, {fam.n2, 1.0 - fam.p}});
}

namespace {

// sum of lambda^s over the two block spectra.
double mixture_xi1(const MixtureFamily& fam, double s) { return pow0(fam.alpha, s) + pow0(1.0 - fam.alpha, s); }

double mixture_xi2(const MixtureFamily& fam, double s) {
  return pow0(fam.beta, s) + pow0(fam.gamma, s) + pow0(1.0 - fam.beta - fam.gamma, s);
}

// log of the two weight terms 2^(1-1/s) p xi1^(1/s) and 3^(1-1/s) (1-p) xi2^(1/s).
std::pair<double, double> mixture_log_terms(const MixtureFamily& fam, double s) {
  const double inv_s = 1.0 / s;
  return {log_or_minus_inf(fam.p) + (1.0 - inv_s) * std::log(2.0) + inv_s * std::log(mixture_xi1(fam, s)),
          log_or_minus_inf(1.0 - fam.p) + (1.0 - inv_s) * std::log(3.0) +
              inv_s * std::log(mixture_xi2(fam, s))};
}

}  // namespace

double mixture_renyi(const MixtureFamily& fam, double s, double pi1) {
  check_family(fam);
  check_unit(s, "s");
  check_unit(pi1, "pi1");
  return pow0(pi1 / 2.0, 1.0 - s) * pow0(fam.p, s) * mixture_xi1(fam, s) +
         pow0((1.0 - pi1) / 3.0, 1.0 - s) * pow0(1.0 - fam.p, s) * mixture_xi2(fam, s);
}

std::pair<ChernoffResult, BuresResult> mixture_degrees(const MixtureFamily& fam) {
  check_family(fam);

  // s = 0: the better of nu_1/2 and nu_2/3 among manifolds that carry weight.
  const double ratio1 = mixture_xi1(fam, 0.0) / 2.0;
  const double ratio2 = mixture_xi2(fam, 0.0) / 3.0;
  int zero_n = 1;
  double at_zero = ratio1;
  if (fam.p == 0.0 || (fam.p < 1.0 && ratio2 > ratio1)) {
    zero_n = 2;
    at_zero = ratio2;
  }

  const OverlapMinimum m = minimize_overlap_curve(
      [&](double s) {
        const auto [t1, t2] = mixture_log_terms(fam, s);
        return std::exp(s * log_sum_exp(t1, t2));
      },
      at_zero);

  ChernoffResult chernoff;
  chernoff.s_opt = m.s;
  chernoff.overlap = m.value;
  chernoff.degree = 1.0 - m.value;
  chernoff.boundary_case = m.at_boundary;
  if (m.at_boundary) {
    chernoff.optimal_weights.weights = {{zero_n, 1.0}};
  } else {
    const auto [t1, t2] = mixture_log_terms(fam, m.s);
    const double norm = log_sum_exp(t1, t2);
    if (fam.p > 0.0) chernoff.optimal_weights.weights[1] = std::exp(t1 - norm);
    if (fam.p < 1.0) chernoff.optimal_weights.weights[2] = std::exp(t2 - norm);
  }

  const double r1 = std::sqrt(fam.alpha) + std::sqrt(1.0 - fam.alpha);
  const double r2 = std::sqrt(fam.beta) + std::sqrt(fam.gamma) + std::sqrt(1.0 - fam.beta - fam.gamma);
  const double f1 = fam.p / 2.0 * r1 * r1;
  const double f2 = (1.0 - fam.p) / 3.0 * r2 * r2;
  BuresResult bures;
  bures.fidelity = f1 + f2;
  bures.degree = 1.0 - std::sqrt(bures.fidelity);
  if (fam.p > 0.0) bures.optimal_weights.weights[1] = f1 / bures.fidelity;
  if (fam.p < 1.0) bures.optimal_weights.weights[2] = f2 / bures.fidelity;
  return {chernoff, bures};
}

TwoModeState mixture_state(const MixtureFamily& fam) {
  check_family(fam);
  std::vector<ManifoldBlock> blocks;
  if (fam.p > 0.0) {
    Eigen::Vector2cd d(fam.alpha, 1.0 - fam.alpha);
    blocks.emplace_back(1, Matrix(fam.p * Matrix(d.asDiagonal())), fam.p);
  }
  if (fam.p < 1.0) {
    Eigen::Vector3cd d(fam.beta, fam.gamma, 1.0 - fam.beta - fam.gamma);
    blocks.emplace_back(2, Matrix((1.0 - fam.p) * Matrix(d.asDiagonal())), 1.0 - fam.p);
  }
  return TwoModeState(std::move(blocks));
}

PureDegrees pure_state_degrees(const std::map<int, double>& distribution) {
  double total = 0.0;
  int smallest = -1;
  for (const auto& [n, p] : distribution) {
    if (n < 0 || !(p >= 0.0 && p <= 1.0))
      throw DomainError(fmt::format("invalid probability p_{} = {}", n, p));
    total += p;
    if (p > 0.0 && smallest < 0) smallest = n;
  }
  if (std::abs(total - 1.0) > tol::kNormalization || smallest < 0)
    throw DomainError(fmt::format("photon-number distribution sums to {:.12g}", total));

  const OverlapMinimum m = minimize_overlap_curve(
      [&](double s) {
        std::vector<double> terms;
        double top = -INFINITY;
        for (const auto& [n, p] : distribution) {
          if (p <= 0.0) continue;
          terms.push_back(std::log(p) + (1.0 - 1.0 / s) * std::log(n + 1.0));
          top = std::max(top, terms.back());
        }
        double acc = 0.0;
        for (double t : terms) acc += std::exp(t - top);
        return std::exp(s * (top + std::log(acc)));
      },
      1.0 / (smallest + 1));

  double fidelity = 0.0;
  for (const auto& [n, p] : distribution) fidelity += p / (n + 1);
  return {1.0 - m.value, 1.0 - std::sqrt(fidelity)};
}

}  // namespace qpol
