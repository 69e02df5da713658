#include "lep/model_io.hpp"

#include <fstream>
#include <sstream>

#include "lep/error.hpp"
#include "lep/expr.hpp"

namespace lep {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw InputError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

MultiPoly parse_entry(const json& value, const Vars& vars, const std::string& where) {
  if (!value.is_string()) throw InputError(where + ": expected an expression string");
  const auto& text = value.get_ref<const std::string&>();
  try {
    return parse_expr(text, vars);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what() + " in \"" + text + "\"", e.offset());
  }
}

PolyMatrix parse_matrix(const json& rows, std::size_t dim, const Vars& vars, const std::string& where) {
  if (!rows.is_array() || rows.size() != dim)
    throw InputError(where + ": expected " + std::to_string(dim) + " rows");
  PolyMatrix m(dim, dim, vars);
  for (std::size_t r = 0; r < dim; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || row.size() != dim)
      throw InputError(where + "[" + std::to_string(r) + "]: expected " + std::to_string(dim) + " entries");
    for (std::size_t c = 0; c < dim; ++c)
      m(r, c) = parse_entry(row[c], vars, where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

ChannelKind parse_kind(const json& jump, const std::string& where) {
  if (!jump.contains("kind")) return ChannelKind::Lindblad;
  const json& k = jump.at("kind");
  if (k == "lindblad") return ChannelKind::Lindblad;
  if (k == "quantum_jump") return ChannelKind::QuantumJump;
  if (k == "loss") return ChannelKind::Loss;
  throw InputError(where + ": kind must be lindblad, quantum_jump or loss");
}

const char* kind_name(ChannelKind k) {
  switch (k) {
    case ChannelKind::Lindblad: return "lindblad";
    case ChannelKind::QuantumJump: return "quantum_jump";
    case ChannelKind::Loss: return "loss";
  }
  return "lindblad";
}

}  // namespace

ModelSpec model_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("model: top level must be a JSON object");
  ModelSpec m;
  m.name = doc.value("name", std::string("model"));
  const json& dim = field(doc, "dim", "model");
  if (!dim.is_number_integer() || dim.get<long>() <= 0) throw InputError("model: dim must be a positive integer");
  m.dim = dim.get<std::size_t>();
  const json& params = field(doc, "params", "model");
  if (!params.is_array()) throw InputError("model: params must be an array of names");
  for (const auto& p : params) {
    if (!p.is_string()) throw InputError("model: params must be an array of names");
    m.params.push_back(p.get<std::string>());
  }
  m.vars = model_vars(m.params);
  m.hamiltonian = parse_matrix(field(doc, "hamiltonian", "model"), m.dim, m.vars, "hamiltonian");
  if (doc.contains("jumps")) {
    const json& jumps = doc.at("jumps");
    if (!jumps.is_array()) throw InputError("model: jumps must be an array");
    for (std::size_t k = 0; k < jumps.size(); ++k) {
      const std::string where = "jumps[" + std::to_string(k) + "]";
      JumpChannel ch;
      ch.rate = parse_entry(field(jumps[k], "rate", where), m.vars, where + ".rate");
      ch.op = parse_matrix(field(jumps[k], "operator", where), m.dim, m.vars, where + ".operator");
      ch.kind = parse_kind(jumps[k], where);
      m.jumps.push_back(std::move(ch));
    }
  }
  validate(m);
  return m;
}

ModelSpec parse_model_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what(), e.byte);
  }
  return model_from_json(doc);
}

ModelSpec load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_text(buf.str());
}

json model_to_json(const ModelSpec& model) {
  auto matrix = [](const PolyMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(format_poly(m(r, c)));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  json jumps = json::array();
  for (const auto& ch : model.jumps)
    jumps.push_back({{"rate", format_poly(ch.rate)}, {"operator", matrix(ch.op)}, {"kind", kind_name(ch.kind)}});
  return {{"name", model.name},
          {"dim", model.dim},
          {"params", model.params},
          {"hamiltonian", matrix(model.hamiltonian)},
          {"jumps", std::move(jumps)}};
}

BuiltinModel resolve_model(const std::string& ref) {
  if (ref == "spin_half" || ref == "qubit") return builtin_model(ref);
  ModelSpec spec = load_model_file(ref);
  HybridSplit split = hybrid_split(spec);
  return {std::move(spec), std::move(split)};
}

}  // namespace lep
