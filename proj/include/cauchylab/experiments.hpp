#pragma once

#include <optional>
#include <string>

#include "cauchylab/config.hpp"
#include "cauchylab/elliptic1d.hpp"
#include "cauchylab/report.hpp"

namespace cauchylab {

/// Runs the experiment the config names (kind = subspace-random,
/// scale-random, sweep-1d, disk-crossing, or verify-all) and returns its
/// report. Deterministic given (config, seed); writes nothing.
Report run_experiment(const Config& config,
                      std::optional<std::uint64_t> seed_override = {});

/// Canonical built-in config text for a kind, used when the CLI is
/// invoked without --config.
std::string default_config_text(const std::string& kind);

/// Operator family b ↦ A_b from config keys d, m, base_a<j>, pert_a<j>
/// (coefficient tables as nested arrays of [re, im] pairs):
/// a_j(b) = base_a<j> + b·pert_a<j>.
struct OperatorFamily1D {
  int order = 1;
  int fiber = 1;
  std::vector<MatPoly> base;
  std::vector<MatPoly> perturbation;

  OperatorSpec1D at(double b) const;
};
OperatorFamily1D parse_operator_family(const Config& config);

/// Single-spec document: {"d", "m", "a": [a_0 .. a_d]} with each a_j an
/// array over degree of fiber×fiber tables of [re, im] pairs.
nlohmann::json operator_spec_to_json(const OperatorSpec1D& spec);
OperatorSpec1D operator_spec_from_json(const nlohmann::json& document);

} // namespace cauchylab
