#pragma once

// Command implementations behind the `qpol` executable. Each returns the
// process exit code and writes to the given streams, so tests drive them
// without spawning processes.

#include <iosfwd>
#include <optional>
#include <string>

namespace qpol::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kInvalidState = 3,
  kInvalidParameters = 4,
  kTruncationTooSmall = 5,
};

enum class Measure { kChernoff, kBures, kBoth };

struct DegreeOptions {
  std::string state_path;
  Measure measure = Measure::kBoth;
  bool json = false;
};

struct FamilyOptions {
  std::string family = "superposition";  // or "mixture"
  int n1 = 1;
  int n2 = 2;
  double p = 0.1;
  double alpha = 0.1;
  double beta = 0.01;
  double gamma = 0.04;
};

struct TransformOptions {
  std::string state_path;
  std::string output_path;
  double phi = 0.0;
  double theta = 0.0;
  double psi = 0.0;
};

struct DiscriminateOptions {
  std::string state_a;
  std::string state_b;
  std::optional<int> truncation;
  bool json = false;
};

int run_degree(const DegreeOptions& opts, std::ostream& out, std::ostream& err);
int run_surface(const FamilyOptions& fam, int grid, unsigned threads, std::ostream& out, std::ostream& err);
int run_sweep(const FamilyOptions& fam, int points, unsigned threads, std::ostream& out, std::ostream& err);
int run_transform(const TransformOptions& opts, std::ostream& out, std::ostream& err);
int run_discriminate(const DiscriminateOptions& opts, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Decimal form used in every CSV cell.
std::string csv_number(double value);

}  // namespace qpol::cli
