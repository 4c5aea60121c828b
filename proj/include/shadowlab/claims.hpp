#ifndef SHADOWLAB_CLAIMS_HPP
#define SHADOWLAB_CLAIMS_HPP

#include <filesystem>
#include <functional>

#include "shadowlab/config.hpp"

namespace shadowlab {

struct Verdict {
    enum class Status { pass, fail, inconclusive };
    std::string claim_id;
    Status status = Status::inconclusive;
    double statistic = 0.0;
    double threshold = 0.0;
    std::string note;
};

const char* verdict_status_name(Verdict::Status s);

/// Execution context handed to each claim: the built system, the experiment
/// spec (seed and parameters) and an artifact sink rooted at the output
/// directory.
struct ClaimContext {
    const ExperimentSpec& spec;
    const SmoothSystem& sys;
    std::filesystem::path out_dir;
    std::vector<std::string>* artifacts = nullptr;

    std::uint64_t seed() const { return spec.seed; }
    void write_artifact(const std::string& name, const std::string& contents) const;
};

/// Registry entry: a claim verifies one statement, citing the module
/// operation it exercises. Claims declare which suites schedule them and
/// which systems they apply to.
struct ClaimInfo {
    std::string id;
    std::string summary;
    std::string op_ref;  // module.operation the claim exercises
    std::vector<Suite> suites;
    std::function<bool(const SmoothSystem&)> applies;
    std::function<Verdict(const ClaimContext&)> run;
};

const std::vector<ClaimInfo>& claim_registry();

/// Claims scheduled for a suite (the full suite selects everything).
std::vector<const ClaimInfo*> claims_for(Suite suite);

/// Default analysis region for a catalog system.
std::pair<Eigen::VectorXd, Eigen::VectorXd> default_region(const SmoothSystem& sys);

}  // namespace shadowlab

#endif
