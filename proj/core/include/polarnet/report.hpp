#pragma once

#include <nlohmann/json.hpp>

#include "polarnet/design_fd.hpp"
#include "polarnet/design_fj.hpp"
#include "polarnet/experiment.hpp"
#include "polarnet/indices.hpp"

namespace polarnet {

// Flat JSON views of the result types. Absent optionals serialize as null.

nlohmann::json to_json(const IndexReport& report);
nlohmann::json to_json(const LeaderChoice& choice);
nlohmann::json to_json(const Twin& twin);
nlohmann::json to_json(const RobustDesign& design);
nlohmann::json to_json(const WeightDesign& design, const WeightedGraph& topology);
nlohmann::json to_json(const FlipPlan& plan);
nlohmann::json to_json(const RandomFlipStats& stats);
nlohmann::json to_json(const ExperimentReport& report);

/// Comma-separated table, one row per lambda, with a header line.
std::string experiment_csv(const ExperimentReport& report);

}  // namespace polarnet
