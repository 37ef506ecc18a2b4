#pragma once

#include <string>

#include <json.hpp>

#include "cwhopf/ce.hpp"
#include "cwhopf/hopf.hpp"

namespace cw {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

// parse errors throw std::invalid_argument
json to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);
json to_json(const Poly& p);
Poly poly_from_json(const json& j);
json to_json(const TruncatedMap& f);
TruncatedMap map_from_json(const json& j);
json to_json(const Form& f);
Form form_from_json(int n, const json& j);
json to_json(const VeyPair& p);

json to_json(const BottCochain& c);
BottCochain bott_from_json(const json& j);
// f_wedge: per term, the slot factors of the tensor; scalar in the first
json to_json(const CECochain& c);
CECochain ce_from_json(const json& j);
json to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);
json to_json(const HopfTensor& t);
HopfTensor hopf_from_json(const json& j);

// "bott" or "ce", from the model field
std::string model_of(const json& j);

std::string latex(const Var& v);
std::string latex(const Poly& p);
std::string latex(const Form& f);
std::string latex(const HopfTensor& t);

// write to path.tmp, then rename
void write_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace cw
