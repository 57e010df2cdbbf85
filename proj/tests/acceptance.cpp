// Acceptance gate: one PASS/FAIL line per criterion, sub-lines per quantity.
// Exit status is nonzero if any line fails.

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "qpol/cli.hpp"
#include "qpol/families.hpp"
#include "qpol/polarization.hpp"
#include "qpol/su2.hpp"
#include "support/random_states.hpp"

using namespace qpol;
using qpol::testing::Rng;

namespace {

constexpr double kThreeDecimalTol = 1e-3;
constexpr double kRuntimeLimitSeconds = 1.0;

int failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  fmt::print("{} {}: {}\n", pass ? "PASS" : "FAIL", id, detail);
}

void near(const std::string& id, const std::string& name, double got, double want, double tol) {
  report(id, std::abs(got - want) <= tol,
         fmt::format("{} = {:.12f}, expected {} +/- {:g} (|diff| = {:.3e})", name, got, want, tol, std::abs(got - want)));
}

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qpol");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

double total_variation_from_uniform(const ManifoldSpectrum& m) {
  double tv = 0.0;
  for (double l : m.eigenvalues) tv += std::abs(l - 1.0 / (m.N + 1));
  return tv / 2.0;
}

void criterion_1() {
  ChernoffResult r;
  const double t = seconds([&] { r = superposition_chernoff({1, 2, 0.1}); });
  near("1 s~", "s~", r.s_opt, 0.124, kThreeDecimalTol);
  near("1 pi1~", "pi1~", r.optimal_weights.at(1), 0.634, kThreeDecimalTol);
  near("1 Q~", "Q~", r.overlap, 0.431, kThreeDecimalTol);
  near("1 P_C", "P_C", r.degree, 0.569, kThreeDecimalTol);
  report("1 runtime", t < kRuntimeLimitSeconds, fmt::format("{:.6f} s < {} s", t, kRuntimeLimitSeconds));
}

void criterion_2() {
  std::pair<ChernoffResult, BuresResult> r;
  const double t = seconds([&] { r = mixture_degrees({0.1, 0.1, 0.01, 0.04}); });
  near("2 s~", "s~", r.first.s_opt, 0.434, kThreeDecimalTol);
  near("2 pi1~", "pi1~", r.first.optimal_weights.at(1), 0.209, kThreeDecimalTol);
  near("2 Q~", "Q~", r.first.overlap, 0.544, kThreeDecimalTol);
  near("2 P_C", "P_C", r.first.degree, 0.251, kThreeDecimalTol);
  near("2 P_B", "P_B", r.second.degree, 0.247, kThreeDecimalTol);
  report("2 runtime", t < kRuntimeLimitSeconds, fmt::format("{:.6f} s < {} s", t, kRuntimeLimitSeconds));
}

void criterion_3() {
  Rng rng(1003);
  double worst_c = 0.0, worst_b = 0.0;
  bool all_boundary = true;
  for (int n = 0; n <= 10; ++n) {
    PureAmplitudes pure;
    const Vector c = testing::random_unit_vector(rng, n + 1);
    for (int k = 0; k <= n; ++k) pure.entries.push_back({n, k, c(k)});
    const SpectralData spec = spectra(TwoModeState(pure));
    const ChernoffResult cr = chernoff_degree(spec);
    worst_c = std::max(worst_c, std::abs(cr.degree - static_cast<double>(n) / (n + 1)));
    worst_b = std::max(worst_b, std::abs(bures_degree(spec).degree - (1.0 - 1.0 / std::sqrt(n + 1.0))));
    all_boundary = all_boundary && cr.boundary_case;
  }
  report("3 P_C", worst_c < 1e-9, fmt::format("max |P_C - N/(N+1)| = {:.3e} < 1e-9, N = 0..10", worst_c));
  report("3 boundary", all_boundary, "boundary_case set for every N-photon state");
  report("3 P_B", worst_b < 1e-12, fmt::format("max |P_B - (1 - (N+1)^-1/2)| = {:.3e} < 1e-12", worst_b));
}

void criterion_4() {
  const std::string csv = run_cli({"sweep", "--n1", "1", "--n2", "2", "--points", "1001", "--threads", "1"});
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  double plateau_dev = 0.0;
  bool inside = true;
  bool decreasing = true;
  double prev_b = INFINITY;
  int plateau_rows = 0, interior_rows = 0;
  while (std::getline(in, line)) {
    double p, c, b, s;
    int boundary;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%d", &p, &c, &b, &s, &boundary) != 5) continue;
    if (p >= 0.5 && p <= 0.999) {
      plateau_dev = std::max(plateau_dev, std::abs(c - 0.5));
      ++plateau_rows;
    }
    if (p > 0.0 && p < 0.5) {
      inside = inside && c > 0.5 && c < 2.0 / 3.0;
      ++interior_rows;
    }
    decreasing = decreasing && b < prev_b;
    prev_b = b;
  }
  report("4 plateau", plateau_dev < 1e-9,
         fmt::format("max |P_C - 0.5| = {:.3e} < 1e-9 over {} rows with p in [0.5, 0.999]", plateau_dev, plateau_rows));
  report("4 variable region", inside, fmt::format("P_C in (1/2, 2/3) on {} rows with p in (0, 0.5)", interior_rows));
  report("4 Bures", decreasing, "P_B strictly decreasing over the 1001-point sweep");
}

void criterion_5() {
  Rng rng(1005);
  double worst = INFINITY;
  const int count = 1000;
  for (int k = 0; k < count; ++k) {
    const SpectralData spec = spectra(testing::random_block_state(rng, 5, 6));
    worst = std::min(worst, chernoff_degree(spec).degree - bures_degree(spec).degree);
  }
  report("5", worst >= -1e-9, fmt::format("min (P_C - P_B) = {:.3e} >= -1e-9 over {} random states", worst, count));
}

void criterion_6() {
  Rng rng(1006);
  double worst_c = 0.0, worst_b = 0.0;
  for (int k = 0; k < 100; ++k) {
    const TwoModeState s = testing::random_block_state(rng);
    const TwoModeState r = transform_state(s, testing::random_angles(rng));
    worst_c = std::max(worst_c, std::abs(chernoff_degree(s).degree - chernoff_degree(r).degree));
    worst_b = std::max(worst_b, std::abs(bures_degree(s).degree - bures_degree(r).degree));
  }
  report("6 P_C", worst_c < 1e-9, fmt::format("max |dP_C| = {:.3e} < 1e-9 over 100 rotations", worst_c));
  report("6 P_B", worst_b < 1e-9, fmt::format("max |dP_B| = {:.3e} < 1e-9 over 100 rotations", worst_b));
}

void criterion_7() {
  Rng rng(1007);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const TwoModeState s = testing::random_block_state(rng, 4, 4);
    const SpectralData spec = spectra(s);
    const int t = spec.manifolds.back().N;
    const Matrix rho = dense_density_matrix(s, t);
    for (int j = 0; j <= 20; ++j) {
      const double sv = j / 20.0;
      const Matrix sigma = dense_density_matrix(closest_unpolarized_state(spec, sv), t);
      worst = std::max(worst, std::abs(max_overlap(spec, sv) - general_renyi_overlap(rho, sigma, sv)));
    }
  }
  report("7 minimax", worst < 1e-10, fmt::format("max |closed form - dense| = {:.3e} < 1e-10 (100 states x 21 s)", worst));

  double worst_g = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Matrix a = testing::random_density(rng, 2, 1 + k % 2);
    const Matrix b = testing::random_density(rng, 2, 2);
    const double engine = chernoff_overlap_general(a, b).overlap;
    double grid = INFINITY;
    for (int j = 0; j <= 2000; ++j) grid = std::min(grid, general_renyi_overlap(a, b, j / 2000.0));
    worst_g = std::max(worst_g, std::abs(engine - grid));
  }
  report("7 general", worst_g < 1e-6, fmt::format("max |Q - grid| = {:.3e} < 1e-6 over 100 qubit pairs", worst_g));
}

void criterion_8() {
  Rng rng(1008);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const TwoModeState s = testing::random_pure_state(rng);
    PureAmplitudes rephased = s.pure();
    std::map<int, Complex> phase;
    for (auto& e : rephased.entries) {
      if (!phase.count(e.N)) phase[e.N] = std::polar(1.0, angle(rng));
      e.amplitude *= phase[e.N];
    }
    const double c = chernoff_degree(s).degree;
    const double b = bures_degree(s).degree;
    for (const TwoModeState& other : {block_diagonalize(s), TwoModeState(rephased)}) {
      worst = std::max(worst, std::abs(chernoff_degree(other).degree - c));
      worst = std::max(worst, std::abs(bures_degree(other).degree - b));
    }
  }
  report("8", worst < 1e-12, fmt::format("max change = {:.3e} < 1e-12 over 100 pure states", worst));
}

void criterion_9() {
  Rng rng(1009);
  double worst_zero = 0.0;
  for (int k = 0; k < 100; ++k)
    worst_zero = std::max(worst_zero, chernoff_degree(unpolarized_state(testing::random_weights(rng))).degree);
  report("9 unpolarized", worst_zero < 1e-9, fmt::format("max P_C = {:.3e} < 1e-9 over 100 unpolarized states", worst_zero));

  double smallest = INFINITY;
  int accepted = 0;
  while (accepted < 100) {
    const TwoModeState s = testing::random_block_state(rng);
    const SpectralData spec = spectra(s);
    double tv = 0.0;
    for (const auto& m : spec.manifolds) tv = std::max(tv, total_variation_from_uniform(m));
    if (tv < 1e-2) continue;
    ++accepted;
    smallest = std::min(smallest, chernoff_degree(spec).degree);
  }
  report("9 polarized", smallest > 1e-4,
         fmt::format("min P_C = {:.3e} > 1e-4 over 100 states with a block >= 1e-2 from uniform", smallest));
}

void criterion_10() {
  const std::vector<std::string> sweep{"sweep", "--family", "mixture", "--points", "101"};
  const std::vector<std::string> surface{"surface", "--grid", "101"};
  auto with_threads = [](std::vector<std::string> args, const char* t) {
    args.insert(args.end(), {"--threads", t});
    return args;
  };
  const std::string a1 = run_cli(with_threads(sweep, "1"));
  const bool sweep_ok = a1 == run_cli(with_threads(sweep, "1")) && a1 == run_cli(with_threads(sweep, "4"));
  const std::string b1 = run_cli(with_threads(surface, "1"));
  const bool surface_ok = b1 == run_cli(with_threads(surface, "1")) && b1 == run_cli(with_threads(surface, "4"));
  report("10 sweep", sweep_ok && !a1.empty(), "sweep output byte-identical across two runs and 1 vs 4 threads");
  report("10 surface", surface_ok && !b1.empty(), "surface output byte-identical across two runs and 1 vs 4 threads");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  fmt::print("{} failing line(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
