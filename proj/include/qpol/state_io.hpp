#pragma once

// JSON state files.
//
//   {"kind": "pure",
//    "amplitudes": [{"N": 1, "n": 1, "re": 0.3, "im": 0.0}, ...]}
//
//   {"kind": "block-diagonal",
//    "blocks": [{"N": 1, "matrix": [[[re, im], [re, im]], [[re, im], [re, im]]]}, ...]}
//
// Block matrices are unnormalized: their trace is p_N. Unknown keys are
// rejected. Numbers are written with round-trip precision.

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qpol/fock.hpp"

namespace qpol {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

TwoModeState state_from_json(const nlohmann::json& doc);
nlohmann::json state_to_json(const TwoModeState& state);

TwoModeState parse_state(const std::string& text);
std::string serialize_state(const TwoModeState& state);

TwoModeState read_state_file(const std::filesystem::path& path);
void write_state_file(const std::filesystem::path& path, const TwoModeState& state);

}  // namespace qpol
