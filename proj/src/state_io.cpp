#include "qpol/state_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <fmt/format.h>

namespace qpol {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) throw ParseError(fmt::format("{}: unknown field \"{}\"", where, item.key()));
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(fmt::format("{}: missing field \"{}\"", where, key));
  return *it;
}

int require_int(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ParseError(fmt::format("{}: \"{}\" must be an integer", where, key));
  return v.get<int>();
}

double require_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(fmt::format("{}: expected a number", where));
  return v.get<double>();
}

Complex parse_pair(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw ParseError(fmt::format("{}: expected [re, im]", where));
  return {require_number(v[0], where), require_number(v[1], where)};
}

}  // namespace

TwoModeState state_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("state file: top level must be an object");
  const json& kind = require(doc, "kind", "state file");
  if (!kind.is_string()) throw ParseError("state file: \"kind\" must be a string");

  if (kind == "pure") {
    reject_unknown_keys(doc, {"kind", "amplitudes"}, "state file");
    const json& list = require(doc, "amplitudes", "state file");
    if (!list.is_array()) throw ParseError("state file: \"amplitudes\" must be an array");
    PureAmplitudes pure;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string where = fmt::format("amplitudes[{}]", k);
      const json& e = list[k];
      if (!e.is_object()) throw ParseError(where + ": expected an object");
      reject_unknown_keys(e, {"N", "n", "re", "im"}, where);
      pure.entries.push_back({require_int(e, "N", where), require_int(e, "n", where),
                              Complex(require_number(require(e, "re", where), where),
                                      require_number(require(e, "im", where), where))});
    }
    return TwoModeState(std::move(pure));
  }

  if (kind == "block-diagonal") {
    reject_unknown_keys(doc, {"kind", "blocks"}, "state file");
    const json& list = require(doc, "blocks", "state file");
    if (!list.is_array()) throw ParseError("state file: \"blocks\" must be an array");
    std::vector<ManifoldBlock> blocks;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string where = fmt::format("blocks[{}]", k);
      const json& b = list[k];
      if (!b.is_object()) throw ParseError(where + ": expected an object");
      reject_unknown_keys(b, {"N", "matrix"}, where);
      const int n = require_int(b, "N", where);
      const json& rows = require(b, "matrix", where);
      if (!rows.is_array() || rows.empty()) throw ParseError(where + ": \"matrix\" must be a non-empty array");
      const auto dim = static_cast<Eigen::Index>(rows.size());
      Matrix m(dim, dim);
      for (Eigen::Index r = 0; r < dim; ++r) {
        const json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
          throw ParseError(fmt::format("{}: matrix row {} must hold {} entries", where, r, dim));
        for (Eigen::Index c = 0; c < dim; ++c)
          m(r, c) = parse_pair(row[static_cast<std::size_t>(c)], fmt::format("{}.matrix[{}][{}]", where, r, c));
      }
      blocks.emplace_back(n, std::move(m));
    }
    return TwoModeState(std::move(blocks));
  }

  throw ParseError(fmt::format("state file: unknown kind \"{}\"", kind.get<std::string>()));
}

json state_to_json(const TwoModeState& state) {
  json doc;
  if (state.is_pure()) {
    doc["kind"] = "pure";
    doc["amplitudes"] = json::array();
    for (const auto& e : state.pure().entries)
      doc["amplitudes"].push_back({{"N", e.N}, {"n", e.n}, {"re", e.amplitude.real()}, {"im", e.amplitude.imag()}});
    return doc;
  }
  doc["kind"] = "block-diagonal";
  doc["blocks"] = json::array();
  for (const auto& b : state.block_diagonal().blocks) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < b.matrix().rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < b.matrix().cols(); ++c)
        row.push_back({b.matrix()(r, c).real(), b.matrix()(r, c).imag()});
      rows.push_back(std::move(row));
    }
    doc["blocks"].push_back({{"N", b.photons()}, {"matrix", std::move(rows)}});
  }
  return doc;
}

TwoModeState parse_state(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("state file: {}", e.what()));
  }
  return state_from_json(doc);
}

std::string serialize_state(const TwoModeState& state) { return state_to_json(state).dump(2) + "\n"; }

TwoModeState read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("cannot open {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_state(buffer.str());
}

void write_state_file(const std::filesystem::path& path, const TwoModeState& state) {
  std::ofstream out(path);
  if (!out) throw ParseError(fmt::format("cannot write {}", path.string()));
  out << serialize_state(state);
  if (!out) throw ParseError(fmt::format("failed writing {}", path.string()));
}

}  // namespace qpol
