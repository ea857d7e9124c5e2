#include "ordstat/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ordstat {

namespace {

std::vector<double> number_array(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument(what + " must be a non-empty array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw std::invalid_argument(what + " must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

double number_param(const nlohmann::json& params, const std::string& key, const std::string& tag) {
    if (!params.contains(key))
        throw std::invalid_argument("baseline/generator '" + tag + "' needs parameter '" + key + "'");
    return params.at(key).get<double>();
}

ElsBatch batch_from_json(const nlohmann::json& j, const std::string& which) {
    if (!j.is_object()) throw std::invalid_argument(which + " must be an object");
    const BaselineFamily base = baseline_from_json(j.at("baseline"));
    const std::vector<double> lambdas = number_array(j.at("lambda"), which + ".lambda");
    const std::vector<double> thetas = number_array(j.at("theta"), which + ".theta");
    std::vector<double> alphas;
    const auto& ja = j.at("alpha");
    if (ja.is_number()) {
        alphas.assign(lambdas.size(), ja.get<double>());
    } else {
        alphas = number_array(ja, which + ".alpha");
    }
    if (thetas.size() != lambdas.size() || alphas.size() != lambdas.size())
        throw std::invalid_argument(which + ": lambda/theta/alpha lengths differ");
    std::optional<Generator> gen;
    if (j.contains("generator") && !j.at("generator").is_null())
        gen = generator_from_json(j.at("generator"));
    return ElsBatch::make(base, lambdas, thetas, alphas, std::move(gen));
}

}  // namespace

BaselineFamily baseline_from_json(const nlohmann::json& j) {
    const std::string tag = j.at("tag").get<std::string>();
    const nlohmann::json params = j.value("params", nlohmann::json::object());
    if (tag == "pareto") return BaselineFamily::pareto(number_param(params, "a", tag));
    if (tag == "burr")
        return BaselineFamily::burr(number_param(params, "c", tag), number_param(params, "k", tag));
    if (tag == "pgw")
        return BaselineFamily::pgw(number_param(params, "c", tag), number_param(params, "k", tag));
    if (tag == "expweibull")
        return BaselineFamily::expweibull(number_param(params, "d", tag),
                                          number_param(params, "c", tag));
    if (tag == "truncweibull") return BaselineFamily::truncweibull(number_param(params, "a", tag));
    if (tag == "ratio") return BaselineFamily::ratio();
    if (tag == "tabulated")
        return BaselineFamily::tabulated(number_array(params.at("xs"), "tabulated.xs"),
                                         number_array(params.at("Fs"), "tabulated.Fs"));
    throw std::invalid_argument(
        "unknown baseline tag '" + tag +
        "' (expected pareto, burr, pgw, expweibull, truncweibull, ratio, tabulated)");
}

Generator generator_from_json(const nlohmann::json& j) {
    const std::string tag = j.at("tag").get<std::string>();
    const nlohmann::json params = j.value("params", nlohmann::json::object());
    if (tag == "independence") return Generator::independence();
    if (tag == "gumbel_frailty") return Generator::gumbel_frailty(number_param(params, "a", tag));
    if (tag == "gumbel_hougaard") return Generator::gumbel_hougaard(number_param(params, "a", tag));
    if (tag == "clayton") return Generator::clayton(number_param(params, "c", tag));
    if (tag == "tabulated_inverse")
        return Generator::tabulated_inverse(number_array(params.at("xs"), "tabulated_inverse.xs"),
                                            number_array(params.at("psis"), "tabulated_inverse.psis"));
    throw std::invalid_argument(
        "unknown generator tag '" + tag +
        "' (expected independence, gumbel_frailty, gumbel_hougaard, clayton, tabulated_inverse)");
}

Scenario parse_scenario(const nlohmann::json& j) {
    try {
        if (!j.is_object() || !j.contains("v") || j.at("v").get<int>() != 1)
            throw std::invalid_argument("scenario schema version must be \"v\": 1");
        Scenario s{j.value("name", std::string{}),
                   std::nullopt,
                   batch_from_json(j.at("batchA"), "batchA"),
                   batch_from_json(j.at("batchB"), "batchB"),
                   std::nullopt};
        if (j.contains("theorem") && !j.at("theorem").is_null())
            s.theorem_id = j.at("theorem").get<std::string>();
        if (j.contains("grid") && !j.at("grid").is_null()) {
            const auto& g = j.at("grid");
            s.grid = GridSpec{g.at("lo").get<double>(), g.at("hi").get<double>(),
                              g.at("n").get<int>()};
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("scenario schema error: ") + e.what());
    }
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open scenario file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("cannot parse " + path + ": " + e.what());
    }
    return parse_scenario(j);
}

namespace {

// clang-format off
const char* kExample31 = R"({
  "v": 1,
  "name": "example_3_1",
  "theorem": "T3.1",
  "batchA": {
    "baseline": {"tag": "pareto", "params": {"a": 2.0}},
    "lambda": [5.0, 7.0, 9.0],
    "theta": [0.5, 0.7, 0.9],
    "alpha": 0.2
  },
  "batchB": {
    "baseline": {"tag": "pareto", "params": {"a": 2.0}},
    "lambda": [2.0, 4.0, 7.0],
    "theta": [0.5, 0.7, 0.9],
    "alpha": 0.2
  },
  "grid": {"lo": 9.001, "hi": 60.0, "n": 512}
})";

const char* kExample32 = R"({
  "v": 1,
  "name": "example_3_2",
  "theorem": "T3.1*",
  "batchA": {
    "baseline": {"tag": "burr", "params": {"c": 0.5, "k": 2.0}},
    "lambda": [7.0, 9.0, 11.0],
    "theta": [2.0, 2.0, 2.0],
    "alpha": 0.2
  },
  "batchB": {
    "baseline": {"tag": "burr", "params": {"c": 0.5, "k": 2.0}},
    "lambda": [3.0, 5.0, 8.0],
    "theta": [2.0, 2.0, 2.0],
    "alpha": 0.2
  }
})";

const char* kExample33 = R"({
  "v": 1,
  "name": "example_3_3",
  "theorem": "T3.2*",
  "batchA": {
    "baseline": {"tag": "pgw", "params": {"c": 0.5, "k": 2.0}},
    "lambda": [2.0, 2.0, 2.0],
    "theta": [5.0, 6.0, 7.0],
    "alpha": 0.6
  },
  "batchB": {
    "baseline": {"tag": "pgw", "params": {"c": 0.5, "k": 2.0}},
    "lambda": [2.0, 2.0, 2.0],
    "theta": [2.0, 3.0, 4.0],
    "alpha": 0.6
  }
})";

const char* kExample34 = R"({
  "v": 1,
  "name": "example_3_4",
  "theorem": "T3.8*",
  "batchA": {
    "baseline": {"tag": "expweibull", "params": {"d": 0.5, "c": 0.2}},
    "lambda": [4.0, 6.0, 7.0],
    "theta": [5.0, 5.0, 5.0],
    "alpha": 0.1,
    "generator": {"tag": "gumbel_frailty", "params": {"a": 0.5}}
  },
  "batchB": {
    "baseline": {"tag": "expweibull", "params": {"d": 0.5, "c": 0.2}},
    "lambda": [2.5, 3.5, 4.0],
    "theta": [5.0, 5.0, 5.0],
    "alpha": 0.1,
    "generator": {"tag": "gumbel_frailty", "params": {"a": 0.5}}
  }
})";

const char* kExample35 = R"({
  "v": 1,
  "name": "example_3_5",
  "theorem": "T3.14",
  "batchA": {
    "baseline": {"tag": "truncweibull", "params": {"a": 0.12}},
    "lambda": [5.0, 5.0, 5.0],
    "theta": [4.5, 6.5, 7.5],
    "alpha": 0.9,
    "generator": {"tag": "independence"}
  },
  "batchB": {
    "baseline": {"tag": "truncweibull", "params": {"a": 0.12}},
    "lambda": [5.0, 5.0, 5.0],
    "theta": [2.5, 3.5, 4.0],
    "alpha": 0.9,
    "generator": {"tag": "independence"}
  },
  "grid": {"lo": 5.001, "hi": 60.0, "n": 512}
})";

const char* kExample36 = R"({
  "v": 1,
  "name": "example_3_6",
  "theorem": "T3.16ii",
  "batchA": {
    "baseline": {"tag": "pareto", "params": {"a": 2.0}},
    "lambda": [2.0, 5.0, 6.0],
    "theta": [3.0, 4.0, 5.0],
    "alpha": 0.8,
    "generator": {"tag": "gumbel_frailty", "params": {"a": 0.5}}
  },
  "batchB": {
    "baseline": {"tag": "pareto", "params": {"a": 2.0}},
    "lambda": [2.0, 5.0, 6.0],
    "theta": [6.0, 7.0, 8.0],
    "alpha": 0.8,
    "generator": {"tag": "gumbel_frailty", "params": {"a": 0.1}}
  }
})";

const char* kCex31 = R"({
  "v": 1,
  "name": "cex_3_1",
  "theorem": "T3.17",
  "batchA": {
    "baseline": {"tag": "truncweibull", "params": {"a": 0.9}},
    "lambda": [3.0, 4.0, 5.0],
    "theta": [6.0, 6.0, 6.0],
    "alpha": 8.0,
    "generator": {"tag": "gumbel_frailty", "params": {"a": 0.001}}
  },
  "batchB": {
    "baseline": {"tag": "truncweibull", "params": {"a": 0.9}},
    "lambda": [6.0, 7.0, 8.0],
    "theta": [6.0, 6.0, 6.0],
    "alpha": 8.0,
    "generator": {"tag": "gumbel_frailty", "params": {"a": 0.5}}
  },
  "grid": {"lo": 8.001, "hi": 80.0, "n": 512}
})";

const char* kCex32 = R"({
  "v": 1,
  "name": "cex_3_2",
  "theorem": "T3.18",
  "batchA": {
    "baseline": {"tag": "truncweibull", "params": {"a": 0.5}},
    "lambda": [5.0, 5.0, 5.0],
    "theta": [2.5, 6.5, 3.1],
    "alpha": 0.1,
    "generator": {"tag": "gumbel_hougaard", "params": {"a": 2.5}}
  },
  "batchB": {
    "baseline": {"tag": "truncweibull", "params": {"a": 0.5}},
    "lambda": [5.0, 5.0, 5.0],
    "theta": [4.5, 6.5, 7.5],
    "alpha": 0.1,
    "generator": {"tag": "gumbel_hougaard", "params": {"a": 1.0001}}
  },
  "grid": {"lo": 5.001, "hi": 60.0, "n": 512}
})";
// clang-format on

}  // namespace

const std::vector<FigureFixture>& figure_fixtures() {
    static const std::vector<FigureFixture> fixtures = {
        {"1a", kExample31, VerdictStatus::holds, Direction::A_ge_B},
        {"1b", kExample35, VerdictStatus::holds, Direction::A_ge_B},
        {"2a", kCex31, VerdictStatus::fails, Direction::equal},
        {"2b", kCex32, VerdictStatus::fails, Direction::equal},
    };
    return fixtures;
}

const FigureFixture& find_figure(const std::string& figure) {
    for (const auto& f : figure_fixtures())
        if (f.figure == figure) return f;
    throw std::out_of_range("unknown figure '" + figure + "' (expected 1a, 1b, 2a, 2b)");
}

const std::vector<std::pair<std::string, std::string>>& embedded_scenarios() {
    static const std::vector<std::pair<std::string, std::string>> all = {
        {"example_3_1", kExample31}, {"example_3_2", kExample32}, {"example_3_3", kExample33},
        {"example_3_4", kExample34}, {"example_3_5", kExample35}, {"example_3_6", kExample36},
        {"cex_3_1", kCex31},         {"cex_3_2", kCex32},
    };
    return all;
}

}  // namespace ordstat
