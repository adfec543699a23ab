#include "csaot/nn/serialize.hpp"

#include "csaot/errors.hpp"

namespace csaot::nn {

using nlohmann::json;

namespace {

const json& field(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return doc.at(key);
}

Vector read_values(const json& doc, std::size_t expected, const std::string& where) {
  if (!doc.is_array()) throw ParseError(where + ": expected an array");
  if (doc.size() != expected)
    throw MismatchError(where + ": expected " + std::to_string(expected) + " values, found " +
                        std::to_string(doc.size()));
  Vector out;
  out.reserve(doc.size());
  for (const auto& v : doc) {
    if (!v.is_number()) throw ParseError(where + ": non-numeric entry");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

json params_to_json(const std::vector<ParamTensor*>& params) {
  json doc = json::object();
  for (const ParamTensor* p : params) doc[p->name] = {{"shape", p->shape}, {"values", p->values}};
  return doc;
}

void params_from_json(const json& doc, const std::vector<ParamTensor*>& params, const std::string& where) {
  for (ParamTensor* p : params) {
    const std::string path = where + "." + p->name;
    const json& entry = field(doc, p->name, where);
    const json& shape = field(entry, "shape", path);
    std::vector<std::size_t> s;
    try {
      s = shape.get<std::vector<std::size_t>>();
    } catch (const json::exception&) {
      throw ParseError(path + ".shape: not a list of dimensions");
    }
    if (s != p->shape) throw MismatchError(path + ": shape disagrees with the configured architecture");
    p->values = read_values(field(entry, "values", path), p->size(), path + ".values");
    p->grad.assign(p->values.size(), 0.0);
  }
}

json adam_to_json(const Adam& adam, const std::vector<ParamTensor*>& params) {
  json m = json::object();
  json v = json::object();
  const bool started = !adam.first_moments().empty();
  for (std::size_t k = 0; k < params.size(); ++k) {
    m[params[k]->name] = started ? adam.first_moments()[k] : Vector(params[k]->size(), 0.0);
    v[params[k]->name] = started ? adam.second_moments()[k] : Vector(params[k]->size(), 0.0);
  }
  return {{"steps", adam.steps()}, {"lr", adam.config().lr}, {"m", m}, {"v", v}};
}

void adam_from_json(const json& doc, Adam& adam, const std::vector<ParamTensor*>& params, const std::string& where) {
  const json& steps = field(doc, "steps", where);
  if (!steps.is_number_integer()) throw ParseError(where + ".steps: not an integer");
  const json& m = field(doc, "m", where);
  const json& v = field(doc, "v", where);
  std::vector<Vector> ms, vs;
  for (const ParamTensor* p : params) {
    ms.push_back(read_values(field(m, p->name, where + ".m"), p->size(), where + ".m." + p->name));
    vs.push_back(read_values(field(v, p->name, where + ".v"), p->size(), where + ".v." + p->name));
  }
  adam.set_steps(steps.get<std::int64_t>());
  if (adam.steps() > 0) {
    adam.first_moments() = std::move(ms);
    adam.second_moments() = std::move(vs);
  } else {
    adam.first_moments().clear();
    adam.second_moments().clear();
  }
}

}  // namespace csaot::nn
