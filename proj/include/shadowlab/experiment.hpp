#ifndef SHADOWLAB_EXPERIMENT_HPP
#define SHADOWLAB_EXPERIMENT_HPP

#include "shadowlab/claims.hpp"

namespace shadowlab {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kShadowlabVersion = "0.1.0";

struct Report {
    std::vector<Verdict> verdicts;
    std::vector<std::string> artifacts;  // files written under output_dir
    std::uint64_t seed = 0;
    std::string version = kShadowlabVersion;
    std::uint64_t config_hash = 0;
    std::string system_name;
    Suite suite = Suite::full;

    bool any_fail() const;
    bool any_inconclusive() const;
    /// 0 all pass, 1 any fail, 2 any inconclusive and none fail.
    int exit_code() const;
};

/// Executes the suite's applicable claims in registry order. Claim errors
/// become inconclusive verdicts carrying the error text; nothing passes
/// silently. Deterministic per seed.
Report run_suite(const ExperimentSpec& spec);

ordered_json report_json(const Report& report);
std::string report_verdicts_csv(const Report& report);

/// Writes report.json (always) and verdicts.csv when "csv" is requested.
/// Byte-stable for identical reports. Returns the written paths.
std::vector<std::filesystem::path> emit_report(const Report& report,
                                               const std::filesystem::path& out_dir,
                                               const std::vector<std::string>& formats = {"json"});

}  // namespace shadowlab

#endif
