#include "qpol/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpol/families.hpp"
#include "qpol/fock.hpp"
#include "qpol/parallel.hpp"
#include "qpol/polarization.hpp"
#include "qpol/state_io.hpp"
#include "qpol/su2.hpp"

namespace qpol::cli {

using nlohmann::json;

std::string csv_number(double value) { return fmt::format("{:.15e}", value); }

namespace {

std::string fixed(double v) { return fmt::format("{:.12f}", v); }

std::string weights_line(const UnpolarizedWeights& w) {
  std::string out;
  for (const auto& [n, pi] : w.weights) {
    if (!out.empty()) out += ", ";
    out += fmt::format("N={} {}", n, fixed(pi));
  }
  return out;
}

json weights_json(const UnpolarizedWeights& w) {
  json arr = json::array();
  for (const auto& [n, pi] : w.weights) arr.push_back({{"N", n}, {"pi", pi}});
  return arr;
}

// Loads and validates a state file; returns an exit code on failure.
int load_state(const std::string& path, std::optional<TwoModeState>& state, std::ostream& err) {
  try {
    state.emplace(read_state_file(path));
  } catch (const ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kParseError;
  }
  const ValidationReport report = validate(*state);
  if (!report.pass) {
    fmt::print(err, "error: invalid state in {}: {}\n", path, report.summary());
    return kInvalidState;
  }
  return kOk;
}

}  // namespace

int run_degree(const DegreeOptions& opts, std::ostream& out, std::ostream& err) {
  std::optional<TwoModeState> state;
  if (int code = load_state(opts.state_path, state, err); code != kOk) return code;

  SpectralData spec;
  try {
    spec = spectra(*state);
  } catch (const InvalidState& e) {
    fmt::print(err, "error: invalid state in {}: {}\n", opts.state_path, e.what());
    return kInvalidState;
  }
  const bool want_c = opts.measure != Measure::kBures;
  const bool want_b = opts.measure != Measure::kChernoff;
  std::optional<ChernoffResult> c;
  std::optional<BuresResult> b;
  if (want_c) c = chernoff_degree(spec);
  if (want_b) b = bures_degree(spec);

  if (opts.json) {
    json doc;
    doc["measure"] = want_c && want_b ? "both" : (want_c ? "chernoff" : "bures");
    json probs = json::array();
    for (const auto& m : spec.manifolds) probs.push_back({{"N", m.N}, {"p", m.weight}, {"rank", m.rank}});
    doc["manifolds"] = std::move(probs);
    if (c)
      doc["chernoff"] = {{"degree", c->degree},
                         {"overlap", c->overlap},
                         {"s_opt", c->s_opt},
                         {"boundary_case", c->boundary_case},
                         {"optimal_weights", weights_json(c->optimal_weights)}};
    if (b)
      doc["bures"] = {{"degree", b->degree},
                      {"fidelity", b->fidelity},
                      {"optimal_weights", weights_json(b->optimal_weights)}};
    out << doc.dump(2) << "\n";
    return kOk;
  }

  if (c && b) fmt::print(out, "P_C = {}, P_B = {}\n", fixed(c->degree), fixed(b->degree));
  if (c) {
    fmt::print(out, "P_C = {}, s = {}\n", fixed(c->degree), fixed(c->s_opt));
    fmt::print(out, "Q = {}\n", fixed(c->overlap));
    fmt::print(out, "boundary = {}\n", c->boundary_case ? "true" : "false");
    fmt::print(out, "pi_C: {}\n", weights_line(c->optimal_weights));
  }
  if (b) {
    fmt::print(out, "P_B = {}, F = {}\n", fixed(b->degree), fixed(b->fidelity));
    fmt::print(out, "pi_B: {}\n", weights_line(b->optimal_weights));
  }
  return kOk;
}

namespace {

bool is_mixture(const FamilyOptions& fam) { return fam.family == "mixture"; }

// Returns an empty string when the family parameters are acceptable.
std::string family_problem(const FamilyOptions& fam) {
  try {
    if (fam.family == "superposition") {
      check_family(SuperpositionFamily{fam.n1, fam.n2, fam.p});
    } else if (fam.family == "mixture") {
      if (fam.n1 != 1 || fam.n2 != 2) return "the mixture family is defined for N1 = 1, N2 = 2";
      check_family(MixtureFamily{fam.p, fam.alpha, fam.beta, fam.gamma});
    } else {
      return fmt::format("unknown family \"{}\"", fam.family);
    }
  } catch (const DomainError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

int run_surface(const FamilyOptions& fam, int grid, unsigned threads, std::ostream& out, std::ostream& err) {
  if (std::string problem = family_problem(fam); !problem.empty()) {
    fmt::print(err, "error: {}\n", problem);
    return kInvalidParameters;
  }
  if (grid < 2) {
    fmt::print(err, "error: --grid must be at least 2, got {}\n", grid);
    return kInvalidParameters;
  }
  const SuperpositionFamily sup{fam.n1, fam.n2, fam.p};
  const MixtureFamily mix{fam.p, fam.alpha, fam.beta, fam.gamma};
  const auto m = static_cast<std::size_t>(grid);
  auto node = [&](std::size_t k) { return k + 1 == m ? 1.0 : static_cast<double>(k) / (grid - 1); };

  std::vector<double> values(m * m);
  parallel_for(values.size(), threads, [&](std::size_t idx) {
    const double s = node(idx / m);
    const double pi1 = node(idx % m);
    values[idx] = is_mixture(fam) ? mixture_renyi(mix, s, pi1) : superposition_renyi(sup, s, pi1);
  });

  const ChernoffResult saddle = is_mixture(fam) ? mixture_degrees(mix).first : superposition_chernoff(sup);
  const int n1 = is_mixture(fam) ? 1 : fam.n1;

  std::string text = "s,pi1,Q\n";
  for (std::size_t idx = 0; idx < values.size(); ++idx)
    text += fmt::format("{},{},{}\n", csv_number(node(idx / m)), csv_number(node(idx % m)), csv_number(values[idx]));
  text += fmt::format("# saddle s={}, pi1={}, Q={}, P_C={}, boundary={}\n", csv_number(saddle.s_opt),
                      csv_number(saddle.optimal_weights.at(n1)), csv_number(saddle.overlap),
                      csv_number(saddle.degree), saddle.boundary_case ? 1 : 0);
  out << text;
  return kOk;
}

int run_sweep(const FamilyOptions& fam, int points, unsigned threads, std::ostream& out, std::ostream& err) {
  if (std::string problem = family_problem(fam); !problem.empty()) {
    fmt::print(err, "error: {}\n", problem);
    return kInvalidParameters;
  }
  if (points < 2) {
    fmt::print(err, "error: --points must be at least 2, got {}\n", points);
    return kInvalidParameters;
  }
  struct Row {
    double p, chernoff, bures, s_opt;
    bool boundary;
  };
  std::vector<Row> rows(static_cast<std::size_t>(points));
  parallel_for(rows.size(), threads, [&](std::size_t k) {
    const double p = k + 1 == rows.size() ? 1.0 : static_cast<double>(k) / (points - 1);
    if (is_mixture(fam)) {
      const auto [c, b] = mixture_degrees(MixtureFamily{p, fam.alpha, fam.beta, fam.gamma});
      rows[k] = {p, c.degree, b.degree, c.s_opt, c.boundary_case};
    } else {
      const SuperpositionFamily sup{fam.n1, fam.n2, p};
      const ChernoffResult c = superposition_chernoff(sup);
      rows[k] = {p, c.degree, superposition_bures(sup), c.s_opt, c.boundary_case};
    }
  });

  std::string text = "p,P_C,P_B,s_opt,boundary\n";
  for (const Row& r : rows)
    text += fmt::format("{},{},{},{},{}\n", csv_number(r.p), csv_number(r.chernoff), csv_number(r.bures),
                        csv_number(r.s_opt), r.boundary ? 1 : 0);
  out << text;
  return kOk;
}

int run_transform(const TransformOptions& opts, std::ostream& out, std::ostream& err) {
  std::optional<TwoModeState> state;
  if (int code = load_state(opts.state_path, state, err); code != kOk) return code;
  const EulerAngles angles{opts.phi, opts.theta, opts.psi};
  if (!std::isfinite(angles.phi) || !std::isfinite(angles.theta) || !std::isfinite(angles.psi)) {
    fmt::print(err, "error: Euler angles must be finite\n");
    return kInvalidParameters;
  }
  try {
    write_state_file(opts.output_path, transform_state(*state, angles));
  } catch (const ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kParseError;
  }
  fmt::print(out, "wrote {}\n", opts.output_path);
  return kOk;
}

int run_discriminate(const DiscriminateOptions& opts, std::ostream& out, std::ostream& err) {
  std::optional<TwoModeState> a;
  std::optional<TwoModeState> b;
  if (int code = load_state(opts.state_a, a, err); code != kOk) return code;
  if (int code = load_state(opts.state_b, b, err); code != kOk) return code;

  const int needed = std::max(a->truncation(), b->truncation());
  const int truncation = opts.truncation.value_or(needed);
  if (truncation < needed) {
    fmt::print(err, "error: truncation {} too small: {} carries N={}, {} carries N={}\n", truncation,
               opts.state_a, a->truncation(), opts.state_b, b->truncation());
    return kTruncationTooSmall;
  }

  const Matrix rho = dense_density_matrix(*a, truncation);
  const Matrix sigma = dense_density_matrix(*b, truncation);
  const double error = single_copy_error_probability(rho, sigma);
  const GeneralChernoff qcb = chernoff_overlap_general(rho, sigma);

  if (opts.json) {
    json doc = {{"truncation", truncation},
                {"error_probability", error},
                {"chernoff_overlap", qcb.overlap},
                {"s_opt", qcb.s_opt}};
    doc["xi_qcb"] = std::isfinite(qcb.exponent) ? json(qcb.exponent) : json(nullptr);
    out << doc.dump(2) << "\n";
    return kOk;
  }
  fmt::print(out, "error_probability = {}\n", fixed(error));
  fmt::print(out, "Q = {}\n", fixed(qcb.overlap));
  fmt::print(out, "xi_QCB = {}\n", std::isfinite(qcb.exponent) ? fixed(qcb.exponent) : std::string("inf"));
  fmt::print(out, "s = {}\n", fixed(qcb.s_opt));
  return kOk;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chernoff and Bures degrees of polarization for two-mode states of light", "qpol"};
  app.require_subcommand(1);

  DegreeOptions degree;
  std::string measure = "both";
  auto* degree_cmd = app.add_subcommand("degree", "Degrees of polarization of a state file");
  degree_cmd->add_option("state", degree.state_path, "State file (JSON)")->required();
  degree_cmd->add_option("--measure", measure, "chernoff, bures or both")
      ->check(CLI::IsMember({"chernoff", "bures", "both"}));
  degree_cmd->add_flag("--json", degree.json, "Emit JSON");

  const unsigned default_threads = std::max(1u, std::thread::hardware_concurrency());
  FamilyOptions fam;
  int grid = 101;
  int points = 101;
  unsigned threads = default_threads;
  auto add_family_flags = [&](CLI::App* cmd) {
    cmd->add_option("--family", fam.family, "superposition or mixture")
        ->check(CLI::IsMember({"superposition", "mixture"}));
    cmd->add_option("--n1", fam.n1, "Lower photon number");
    cmd->add_option("--n2", fam.n2, "Upper photon number");
    cmd->add_option("--p", fam.p, "Weight of the lower manifold");
    cmd->add_option("--alpha", fam.alpha, "Mixture: N=1 block diagonal (alpha, 1-alpha)");
    cmd->add_option("--beta", fam.beta, "Mixture: N=2 block diagonal (beta, gamma, 1-beta-gamma)");
    cmd->add_option("--gamma", fam.gamma, "Mixture: N=2 block diagonal (beta, gamma, 1-beta-gamma)");
    cmd->add_option("--threads", threads, "Worker threads for grid evaluation");
  };
  auto* surface_cmd = app.add_subcommand("surface", "Renyi overlap over the (s, pi1) grid as CSV");
  add_family_flags(surface_cmd);
  surface_cmd->add_option("--grid", grid, "Grid points per axis");
  auto* sweep_cmd = app.add_subcommand("sweep", "P_C and P_B versus p as CSV");
  add_family_flags(sweep_cmd);
  sweep_cmd->add_option("--points", points, "Number of p values");

  TransformOptions transform;
  auto* transform_cmd = app.add_subcommand("transform", "Apply a polarization transformation");
  transform_cmd->add_option("state", transform.state_path, "Input state file")->required();
  transform_cmd->add_option("output", transform.output_path, "Output state file")->required();
  transform_cmd->add_option("--phi", transform.phi, "Euler angle phi (rad)");
  transform_cmd->add_option("--theta", transform.theta, "Euler angle theta (rad)");
  transform_cmd->add_option("--psi", transform.psi, "Euler angle psi (rad)");

  DiscriminateOptions disc;
  int truncation = -1;
  auto* disc_cmd = app.add_subcommand("discriminate", "Single-copy error and Chernoff overlap of two states");
  disc_cmd->add_option("state_a", disc.state_a, "First state file")->required();
  disc_cmd->add_option("state_b", disc.state_b, "Second state file")->required();
  disc_cmd->add_option("--truncation", truncation, "Largest photon number of the common space");
  disc_cmd->add_flag("--json", disc.json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInvalidParameters;
  }

  if (*degree_cmd) {
    degree.measure = measure == "chernoff" ? Measure::kChernoff : measure == "bures" ? Measure::kBures : Measure::kBoth;
    return run_degree(degree, out, err);
  }
  if (*surface_cmd) return run_surface(fam, grid, threads, out, err);
  if (*sweep_cmd) return run_sweep(fam, points, threads, out, err);
  if (*transform_cmd) return run_transform(transform, out, err);
  if (truncation >= 0) disc.truncation = truncation;
  return run_discriminate(disc, out, err);
}

}  // namespace qpol::cli
