#pragma once

#include "heatrate/core.hpp"

#include "json.hpp"

#include <string>

namespace heatrate {

using json = nlohmann::json;

void to_json(json& j, const MaterialParams& p);
/// Rejects unknown and missing fields.
void from_json(const json& j, MaterialParams& p);

void to_json(json& j, const FreeEnergyCoeffs& c);
void from_json(const json& j, FreeEnergyCoeffs& c);

void to_json(json& j, const ThermalState& s);
void from_json(const json& j, ThermalState& s);

void to_json(json& j, const QuadForm4& a);
void from_json(const json& j, QuadForm4& a);

/// Tagged union {"kind": "...", params...}.
void to_json(json& j, const ModelKind& m);
void from_json(const json& j, ModelKind& m);

ModelKind parse_model(const json& j);

/// 17 significant digits, the CSV number format.
std::string fmt17(double v);

}  // namespace heatrate
