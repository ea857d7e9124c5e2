#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ordstat/grid.hpp"
#include "ordstat/orderstat.hpp"
#include "ordstat/stochorder.hpp"

namespace ordstat {

/**
 * A comparison scenario: two ELS batches plus optional grid override and
 * theorem id, parsed from the versioned JSON schema ("v": 1).
 */
struct Scenario {
    std::string name;
    std::optional<std::string> theorem_id;
    ElsBatch batch_a;
    ElsBatch batch_b;
    std::optional<GridSpec> grid;
};

/** Parse a scenario object; throws std::invalid_argument on schema errors. */
Scenario parse_scenario(const nlohmann::json& j);

/** Load and parse a scenario file. */
Scenario load_scenario(const std::string& path);

/** Build a baseline from its scenario tag and parameter object. */
BaselineFamily baseline_from_json(const nlohmann::json& j);

/** Build a generator from its scenario tag and parameter object. */
Generator generator_from_json(const nlohmann::json& j);

/** One of the four figure reproductions shipped inside the binary. */
struct FigureFixture {
    std::string figure;           // "1a", "1b", "2a", "2b"
    std::string scenario_json;    // embedded scenario text
    VerdictStatus expected_status;
    Direction expected_direction; // meaningful when expected_status == holds
};

/** The four embedded figure fixtures, in figure order. */
const std::vector<FigureFixture>& figure_fixtures();

/** Lookup by figure label; throws std::out_of_range for unknown labels. */
const FigureFixture& find_figure(const std::string& figure);

/** All embedded scenario fixtures by name (the four figures plus the other shipped examples). */
const std::vector<std::pair<std::string, std::string>>& embedded_scenarios();

}  // namespace ordstat
