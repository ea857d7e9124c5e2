#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ordstat/majorize.hpp"
#include "ordstat/scenario.hpp"
#include "ordstat/stochorder.hpp"
#include "ordstat/theorems.hpp"

namespace {

using namespace ordstat;

std::string num(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

GridSpec parse_grid_flag(const std::string& s) {
    std::istringstream is(s);
    double lo = 0.0, hi = 0.0;
    int n = 0;
    char c1 = 0, c2 = 0;
    if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':')
        throw std::invalid_argument("--grid expects lo:hi:n");
    std::string rest;
    if (is >> rest) throw std::invalid_argument("--grid expects lo:hi:n");
    return GridSpec(lo, hi, n);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        double v = 0.0;
        const auto* begin = item.data();
        const auto* end = begin + item.size();
        const auto res = std::from_chars(begin, end, v);
        if (res.ec != std::errc{} || res.ptr != end)
            throw std::invalid_argument("cannot parse number '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty vector");
    return out;
}

GridSpec resolve_grid(const std::string& grid_flag, const Scenario& sc) {
    if (!grid_flag.empty()) return parse_grid_flag(grid_flag);
    if (sc.grid) return *sc.grid;
    return default_comparison_grid(sc.batch_a, sc.batch_b, 512);
}

void write_curves_csv(std::ostream& out, const Scenario& sc, const GridSpec& grid,
                      const std::string& what) {
    out << "x,value_A,value_B,diff\n";
    const bool hazard = (what == "hazard");
    const bool closed_a = sc.batch_a.independent() && sc.batch_a.all_alpha_one();
    const bool closed_b = sc.batch_b.independent() && sc.batch_b.all_alpha_one();
    for (const double x : grid.points()) {
        double va = 0.0, vb = 0.0;
        if (hazard) {
            // Hazards are undefined once the survival underflows; skip those rows.
            if (sf_second(sc.batch_a, x) <= 1e-12 || sf_second(sc.batch_b, x) <= 1e-12) continue;
            va = closed_a ? hazard_second_indep_unitshape(sc.batch_a, x)
                          : hazard_numeric([&](double t) { return sf_second(sc.batch_a, t); }, x);
            vb = closed_b ? hazard_second_indep_unitshape(sc.batch_b, x)
                          : hazard_numeric([&](double t) { return sf_second(sc.batch_b, t); }, x);
        } else {
            va = sf_second(sc.batch_a, x);
            vb = sf_second(sc.batch_b, x);
        }
        out << num(x) << ',' << num(va) << ',' << num(vb) << ',' << num(va - vb) << '\n';
    }
}

int cmd_verify(const std::string& path, const std::string& theorem_flag,
               const std::string& grid_flag, bool as_csv) {
    const Scenario sc = load_scenario(path);
    std::string tid = theorem_flag;
    if (tid.empty() && sc.theorem_id) tid = *sc.theorem_id;
    if (tid.empty()) {
        std::cerr << "error: no theorem id (pass --theorem or set \"theorem\" in the scenario)\n";
        return 1;
    }
    const TheoremSpec* spec = nullptr;
    try {
        spec = &find_theorem(tid);
    } catch (const std::out_of_range&) {
        std::cerr << "error: unknown theorem id '" << tid << "'; valid ids:";
        for (const auto& s : list_theorems()) std::cerr << ' ' << s.id;
        std::cerr << '\n';
        return 1;
    }
    const GridSpec grid = resolve_grid(grid_flag, sc);
    const TheoremReport rep = verify(*spec, sc.batch_a, sc.batch_b, grid);
    if (as_csv) {
        std::cout << "clause,pass,witness\n";
        for (const auto& c : rep.hypothesis_results) {
            std::string w = c.witness.value_or("");
            for (auto& ch : w)
                if (ch == ',') ch = ';';
            std::cout << '"' << c.clause << "\"," << (c.pass ? "true" : "false") << ",\"" << w
                      << "\"\n";
        }
        std::cout << "\"conclusion " << relation_name(rep.conclusion_verdict.relation) << ' '
                  << direction_name(rep.conclusion_verdict.direction) << "\","
                  << status_name(rep.conclusion_verdict.status) << ",\n";
        std::cout << "consistent," << (rep.consistent ? "true" : "false") << ",\n";
    } else {
        std::cout << rep.to_json().dump(2) << '\n';
    }
    return rep.consistent ? 0 : 2;
}

int cmd_curves(const std::string& path, const std::string& what, const std::string& grid_flag,
               const std::string& out_path) {
    const Scenario sc = load_scenario(path);
    const GridSpec grid = resolve_grid(grid_flag, sc);
    if (out_path.empty()) {
        write_curves_csv(std::cout, sc, grid, what);
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << '\n';
        return 1;
    }
    write_curves_csv(out, sc, grid, what);
    return 0;
}

int cmd_reproduce(const std::string& figure, const std::string& out_dir) {
    const FigureFixture* fix = nullptr;
    try {
        fix = &find_figure(figure);
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    const Scenario sc = parse_scenario(nlohmann::json::parse(fix->scenario_json));
    const GridSpec grid = sc.grid ? *sc.grid : default_comparison_grid(sc.batch_a, sc.batch_b, 512);

    std::filesystem::create_directories(out_dir);
    const std::string stem = (std::filesystem::path(out_dir) / ("figure_" + fix->figure)).string();

    std::ofstream csv(stem + ".csv", std::ios::binary);
    if (!csv) {
        std::cerr << "error: cannot write " << stem << ".csv\n";
        return 1;
    }
    write_curves_csv(csv, sc, grid, "sf");

    const OrderVerdict v = check_st(sc.batch_a, sc.batch_b, grid);
    const bool match =
        v.status == fix->expected_status &&
        (fix->expected_status != VerdictStatus::holds || v.direction == fix->expected_direction ||
         v.direction == Direction::equal);

    nlohmann::json meta{{"figure", fix->figure},
                        {"scenario", sc.name},
                        {"verdict", v.to_json()},
                        {"expected_status", status_name(fix->expected_status)},
                        {"matches_expected", match}};
    if (fix->expected_status == VerdictStatus::holds)
        meta["expected_direction"] = direction_name(fix->expected_direction);
    std::ofstream vj(stem + "_verdict.json", std::ios::binary);
    if (!vj) {
        std::cerr << "error: cannot write " << stem << "_verdict.json\n";
        return 1;
    }
    vj << meta.dump(2) << '\n';

    std::cout << "figure " << fix->figure << " (" << sc.name << "): "
              << relation_name(v.relation) << ' ' << status_name(v.status);
    if (v.status == VerdictStatus::holds) std::cout << ' ' << direction_name(v.direction);
    if (v.witness) std::cout << ", witness at x = " << num(v.witness->x);
    std::cout << (match ? " [matches expected]" : " [DOES NOT MATCH EXPECTED]") << '\n';
    std::cout << "wrote " << stem << ".csv and " << stem << "_verdict.json\n";
    return match ? 0 : 2;
}

int cmd_check_major(const std::string& file, const std::string& x_flag, const std::string& y_flag,
                    const std::string& relation) {
    std::vector<double> x, y;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) {
            std::cerr << "error: cannot open " << file << '\n';
            return 1;
        }
        nlohmann::json j;
        in >> j;
        x = j.at("x").get<std::vector<double>>();
        y = j.at("y").get<std::vector<double>>();
    } else {
        if (x_flag.empty() || y_flag.empty()) {
            std::cerr << "error: pass --x and --y (or a vector file)\n";
            return 1;
        }
        x = parse_list(x_flag);
        y = parse_list(y_flag);
    }
    if (x.size() != y.size()) {
        std::cerr << "error: vectors must have equal length\n";
        return 1;
    }
    const RVector rx(x), ry(y);
    MajorResult res;
    if (relation == "m")
        res = majorizes_detail(ry, rx);
    else if (relation == "w_sub")
        res = weak_submajorizes_detail(ry, rx);
    else if (relation == "w_sup")
        res = weak_supermajorizes_detail(ry, rx);
    else if (relation == "rm")
        res = reciprocal_majorizes_detail(ry, rx);
    else {
        std::cerr << "error: --relation must be one of m, w_sub, w_sup, rm\n";
        return 1;
    }
    if (res.holds)
        std::cout << "true\n";
    else
        std::cout << "false first_violation=" << res.first_violation << '\n';
    return 0;
}

int cmd_list_theorems() {
    for (const auto& s : list_theorems()) std::cout << s.id << '\t' << s.digest << '\n';
    return 0;
}

int cmd_list_baselines() {
    std::cout << "pareto         params: a > 0            support: x >= 1\n"
                 "burr           params: c > 0, k > 0     support: x >= 0\n"
                 "pgw            params: c > 0, k > 0     support: x >= 0\n"
                 "expweibull     params: d > 0, c > 0     support: x >= 0\n"
                 "truncweibull   params: a > 0            support: x >= 1\n"
                 "ratio          params: (none)           support: x >= 1\n"
                 "tabulated      params: xs[], Fs[]       support: x >= xs[0]\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"survival and hazard ordering of second order statistics from "
                 "exponentiated location-scale batches"};
    app.require_subcommand(1);

    std::function<int()> run;

    {
        auto* c = app.add_subcommand("verify", "check a scenario against a registered result");
        auto scenario = std::make_shared<std::string>();
        auto theorem = std::make_shared<std::string>();
        auto grid = std::make_shared<std::string>();
        auto csv = std::make_shared<bool>(false);
        auto json_flag = std::make_shared<bool>(false);
        c->add_option("scenario", *scenario, "scenario JSON file")->required();
        c->add_option("--theorem", *theorem, "result id (default: the scenario's \"theorem\")");
        c->add_option("--grid", *grid, "comparison grid lo:hi:n");
        c->add_flag("--json", *json_flag, "JSON report (default)");
        c->add_flag("--csv", *csv, "CSV report");
        c->callback([=, &run] {
            run = [=] { return cmd_verify(*scenario, *theorem, *grid, *csv); };
        });
    }
    {
        auto* c = app.add_subcommand("curves", "emit comparison curves as CSV");
        auto scenario = std::make_shared<std::string>();
        auto what = std::make_shared<std::string>("sf");
        auto grid = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        c->add_option("scenario", *scenario, "scenario JSON file")->required();
        c->add_option("--what", *what, "sf | hazard | diff (default sf)")
            ->check(CLI::IsMember({"sf", "hazard", "diff"}));
        c->add_option("--grid", *grid, "grid lo:hi:n");
        c->add_option("--out", *out, "output CSV path (default: stdout)");
        c->callback([=, &run] {
            run = [=] { return cmd_curves(*scenario, *what, *grid, *out); };
        });
    }
    {
        auto* c = app.add_subcommand("reproduce", "regenerate an embedded figure comparison");
        auto figure = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>(".");
        c->add_option("figure", *figure, "1a | 1b | 2a | 2b")->required();
        c->add_option("--out", *out, "output directory (default .)");
        c->callback([=, &run] {
            run = [=] { return cmd_reproduce(*figure, *out); };
        });
    }
    {
        auto* c = app.add_subcommand("check-major", "evaluate a majorization preorder");
        auto file = std::make_shared<std::string>();
        auto x = std::make_shared<std::string>();
        auto y = std::make_shared<std::string>();
        auto rel = std::make_shared<std::string>();
        c->add_option("file", *file, "JSON file with {\"x\": [...], \"y\": [...]}");
        c->add_option("--x", *x, "dominated vector, comma-separated");
        c->add_option("--y", *y, "dominant vector, comma-separated");
        c->add_option("--relation", *rel, "m | w_sub | w_sup | rm")->required();
        c->callback([=, &run] {
            run = [=] { return cmd_check_major(*file, *x, *y, *rel); };
        });
    }
    app.add_subcommand("list-theorems", "print all registered result ids and digests")
        ->callback([&run] { run = cmd_list_theorems; });
    app.add_subcommand("list-baselines", "print the built-in baseline families")
        ->callback([&run] { run = cmd_list_baselines; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        return run();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
