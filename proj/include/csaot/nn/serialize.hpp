#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "csaot/nn/adam.hpp"
#include "csaot/nn/tape.hpp"

namespace csaot::nn {

// {name: {"shape": [...], "values": [...]}}
nlohmann::json params_to_json(const std::vector<ParamTensor*>& params);
// Fills every listed parameter from `doc`. Throws ParseError naming the
// missing/ill-typed field, MismatchError on a shape disagreement.
void params_from_json(const nlohmann::json& doc, const std::vector<ParamTensor*>& params,
                      const std::string& where);

nlohmann::json adam_to_json(const Adam& adam, const std::vector<ParamTensor*>& params);
void adam_from_json(const nlohmann::json& doc, Adam& adam, const std::vector<ParamTensor*>& params,
                    const std::string& where);

}  // namespace csaot::nn
