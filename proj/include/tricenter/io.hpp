#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "tricenter/fields.hpp"
#include "tricenter/system.hpp"

namespace tricenter {

/// FNV-1a over bytes; used for the config/artifact integrity checks.
std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Canonical hash of a configuration document: object keys are emitted in
/// sorted order, so semantically identical documents hash identically.
std::string config_hash(const nlohmann::json& config);

/// Converged fields as CSV: one row per (t, s, xi) node with the trajectory
/// value and the graph parts at the row's t (the graph map does not depend on
/// s; rows repeat it so the layout stays flat). 17 significant digits.
void write_manifold_csv(const std::string& path, const TrichotomySystem& sys,
                        const CenterField& x, const GraphField& phi);

/// Rebuilds the graph field from a manifold CSV written by the function above.
GraphField read_graph_field_csv(const std::string& path, const GridSpec& grid, int dim);

nlohmann::json grid_to_json(const GridSpec& g);
GridSpec grid_from_json(const nlohmann::json& j);

}  // namespace tricenter
