#ifndef SHADOWLAB_CONFIG_HPP
#define SHADOWLAB_CONFIG_HPP

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "shadowlab/catalog.hpp"

namespace shadowlab {

enum class Suite {
    shadowing,
    average_shadowing,
    limit_shadowing,
    asymptotic_shadowing,
    chain_dynamics,
    hyperbolicity,
    manifolds,
    full,
};

const char* suite_name(Suite s);
std::optional<Suite> suite_from_name(const std::string& name);

/// Experiment description: which system, which verification suite, the seed
/// (mandatory, reproducibility is not optional) and suite parameters.
struct ExperimentSpec {
    SystemSpec system;
    Suite suite = Suite::full;
    std::map<std::string, double> params;
    std::uint64_t seed = 0;
    std::string output_dir = "shadowlab_out";

    double param_or(const std::string& key, double fallback) const {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }
};

/// Load a TOML or JSON experiment file (decided by extension, .toml/.json).
/// Unknown keys are rejected; schema violations name the offending field.
ExperimentSpec load_experiment(const std::filesystem::path& path);

/// Parse from an in-memory JSON document (the TOML path converts into this).
ExperimentSpec experiment_from_json(const nlohmann::ordered_json& doc);

/// Canonical JSON form of a spec; reloading it yields an identical spec.
nlohmann::ordered_json experiment_to_json(const ExperimentSpec& spec);

/// Minimal TOML reader covering the config needs: [section] and
/// [section.sub] headers, key = value with strings, numbers, booleans and
/// flat arrays, and # comments. Returns the equivalent JSON document.
nlohmann::ordered_json toml_subset_to_json(const std::string& text);

/// FNV-1a hash of the canonical spec serialization (provenance).
std::uint64_t config_hash(const ExperimentSpec& spec);

}  // namespace shadowlab

#endif
