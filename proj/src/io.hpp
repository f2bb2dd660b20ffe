// File formats: algebra structure-constant files, group tables and cocycle
// tables (dense or named family), plus the sc-json export.

#pragma once

#include "group_double.hpp"

#include <json.hpp>

namespace qhd {

// Distinguishes unreadable/unparsable input from well-formed input that
// violates an invariant.
struct IoError : Error {
  using Error::Error;
};

nlohmann::json algebra_to_json(const QuasiHopf& H, const std::string& name);
QuasiHopf algebra_from_json(SpaceRegistry& reg, const nlohmann::json& j);
QuasiHopf load_algebra(SpaceRegistry& reg, const std::string& path);
void export_algebra_sc_json(const QuasiHopf& H, const std::string& name, const std::string& path);

nlohmann::json group_to_json(const FiniteGroup& G);
FiniteGroup group_from_json(const nlohmann::json& j);
FiniteGroup load_group(const std::string& path);

nlohmann::json cocycle_to_json(const ThreeCocycle& w);
ThreeCocycle cocycle_from_json(const FiniteGroup& G, const nlohmann::json& j);
ThreeCocycle load_cocycle(const FiniteGroup& G, const std::string& path);

}  // namespace qhd
