#pragma once

#include <json.hpp>

#include "experiments.hpp"

namespace rumincalc {

// Structured form of an experiment report. Field layout is stable under
// schema_version; reruns with the same configuration and seed serialize to
// identical bytes.
inline nlohmann::json report_to_json(const ExperimentReport& rep) {
    nlohmann::json j;
    j["schema_version"] = rep.schema_version;
    j["operation"] = rep.operation;
    if (!rep.group_ref.empty()) j["group"] = rep.group_ref;
    j["config"] = rep.config;
    j["seed"] = rep.seed;
    j["samples_per_point"] = rep.samples_per_point;

    nlohmann::json points = nlohmann::json::array();
    nlohmann::json estimates = nlohmann::json::array();
    nlohmann::json stderrs = nlohmann::json::array();
    for (const ExperimentPoint& p : rep.points) {
        nlohmann::json pj;
        pj["parameter"] = p.parameter;
        pj["estimate"] = p.estimate;
        pj["stderr"] = p.stderr_;
        for (const auto& [k, v] : p.extra) pj[k] = v;
        points.push_back(std::move(pj));
        estimates.push_back(p.estimate);
        stderrs.push_back(p.stderr_);
    }
    j["points"] = std::move(points);
    j["estimates"] = std::move(estimates);
    j["stderr"] = std::move(stderrs);

    if (rep.fit.valid)
        j["fit"] = {{"slope", rep.fit.slope},
                    {"intercept", rep.fit.intercept},
                    {"ci", 1.96 * rep.fit.slope_stderr}};
    j["derived"] = rep.derived;
    return j;
}

}  // namespace rumincalc
