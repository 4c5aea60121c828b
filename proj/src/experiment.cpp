#include "shadowlab/experiment.hpp"

#include <fstream>

#include "shadowlab/serialize.hpp"

namespace shadowlab {

bool Report::any_fail() const {
    for (const auto& v : verdicts)
        if (v.status == Verdict::Status::fail) return true;
    return false;
}

bool Report::any_inconclusive() const {
    for (const auto& v : verdicts)
        if (v.status == Verdict::Status::inconclusive) return true;
    return false;
}

int Report::exit_code() const {
    if (any_fail()) return 1;
    if (any_inconclusive()) return 2;
    return 0;
}

Report run_suite(const ExperimentSpec& spec) {
    Report report;
    report.seed = spec.seed;
    report.config_hash = config_hash(spec);
    report.suite = spec.suite;

    SmoothSystem sys = build_system(spec.system);
    report.system_name = sys.name;

    ClaimContext ctx{spec, sys, std::filesystem::path(spec.output_dir), &report.artifacts};
    for (const ClaimInfo* claim : claims_for(spec.suite)) {
        if (!claim->applies(sys)) continue;
        Verdict verdict;
        try {
            verdict = claim->run(ctx);
        } catch (const Error& e) {
            verdict = Verdict{claim->id, Verdict::Status::inconclusive, 0.0, 0.0,
                              std::string(error_kind_name(e.kind())) + ": " + e.what()};
        } catch (const std::exception& e) {
            verdict = Verdict{claim->id, Verdict::Status::inconclusive, 0.0, 0.0, e.what()};
        }
        report.verdicts.push_back(std::move(verdict));
    }
    return report;
}

ordered_json report_json(const Report& report) {
    ordered_json j;
    ordered_json verdicts = ordered_json::array();
    for (const auto& v : report.verdicts) {
        ordered_json jv;
        jv["claim"] = v.claim_id;
        jv["status"] = verdict_status_name(v.status);
        jv["statistic"] = v.statistic;
        jv["threshold"] = v.threshold;
        if (!v.note.empty()) jv["note"] = v.note;
        verdicts.push_back(std::move(jv));
    }
    j["verdicts"] = std::move(verdicts);
    j["artifacts"] = report.artifacts;
    j["provenance"] = {{"seed", report.seed},
                       {"version", report.version},
                       {"config_hash", report.config_hash},
                       {"system", report.system_name},
                       {"suite", suite_name(report.suite)}};
    return j;
}

std::string report_verdicts_csv(const Report& report) {
    std::string out = "claim,status,statistic,threshold\n";
    for (const auto& v : report.verdicts) {
        out += v.claim_id;
        out += ",";
        out += verdict_status_name(v.status);
        out += ",";
        out += format_double(v.statistic);
        out += ",";
        out += format_double(v.threshold);
        out += "\n";
    }
    return out;
}

std::vector<std::filesystem::path> emit_report(const Report& report,
                                               const std::filesystem::path& out_dir,
                                               const std::vector<std::string>& formats) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    auto write = [&](const std::filesystem::path& name, const std::string& text) {
        std::ofstream out(out_dir / name, std::ios::binary);
        if (!out) throw Error(ErrorKind::io, "cannot write " + (out_dir / name).string());
        out << text;
        written.push_back(out_dir / name);
    };
    write("report.json", report_json(report).dump(2) + "\n");
    for (const auto& f : formats)
        if (f == "csv") write("verdicts.csv", report_verdicts_csv(report));
    return written;
}

}  // namespace shadowlab
