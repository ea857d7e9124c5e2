#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "ordstat/baseline.hpp"
#include "ordstat/grid.hpp"
#include "test_support.hpp"

using namespace ordstat;
using doctest::Approx;

namespace {

// Sample points strictly inside the support, spread across body and tail.
std::vector<double> probe_points(const BaselineFamily& f) {
    const double lo = f.support_lo();
    return {lo + 0.05, lo + 0.3, lo + 1.0, lo + 3.0, lo + 10.0, lo + 40.0};
}

void check_function_identities(const BaselineFamily& f) {
    CAPTURE(f.tag());
    for (double x : probe_points(f)) {
        CAPTURE(x);
        const double F = f.cdf(x);
        const double S = f.sf(x);
        const double p = f.pdf(x);
        CHECK(F == Approx(1.0 - S).epsilon(1e-12));
        CHECK(F > 0.0);
        CHECK(F < 1.0);
        CHECK(p > 0.0);
        CHECK(f.hazard(x) == Approx(p / S).epsilon(1e-12));
        CHECK(f.reversed_hazard(x) == Approx(p / F).epsilon(1e-12));
        CHECK(f.g_ratio(x) == Approx(F / S).epsilon(1e-12));
        CHECK(f.g_prime(x) == Approx(p / (S * S)).epsilon(1e-12));
        // quantile round trip
        CHECK(f.inv_cdf(F) == Approx(x).epsilon(1e-8));
    }
}

void check_boundary_conventions(const BaselineFamily& f) {
    CAPTURE(f.tag());
    const double lo = f.support_lo();
    CHECK(f.cdf(lo) == 0.0);
    CHECK(f.sf(lo) == 1.0);
    CHECK(f.cdf(lo - 1.0) == 0.0);
    CHECK(f.sf(lo - 1.0) == 1.0);
    CHECK(f.pdf(lo - 1.0) == 0.0);
    CHECK(f.g_ratio(lo) == 0.0);
    CHECK(f.inv_cdf(0.0) == lo);
    CHECK_THROWS_AS(f.inv_cdf(1.0), std::invalid_argument);
    CHECK_THROWS_AS(f.inv_cdf(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(f.reversed_hazard(lo), std::domain_error);
}

void check_derivatives_numerically(const BaselineFamily& f) {
    if (!f.has_derivatives()) return;
    CAPTURE(f.tag());
    for (double x : probe_points(f)) {
        CAPTURE(x);
        const double h = 1e-5 * std::max(1.0, std::abs(x));
        const double rp_num = (f.hazard(x + h) - f.hazard(x - h)) / (2.0 * h);
        const double rp = f.hazard_prime(x);
        CHECK(rp == Approx(rp_num).epsilon(2e-4).scale(1e-8));
        const double gs_num = (f.g_prime(x + h) - f.g_prime(x - h)) / (2.0 * h);
        CHECK(f.g_second(x) == Approx(gs_num).epsilon(2e-4).scale(1e-8));
    }
}

}  // namespace

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(BaselineFamily::pareto(0.0), std::invalid_argument);
    CHECK_THROWS_AS(BaselineFamily::pareto(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(BaselineFamily::burr(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BaselineFamily::pgw(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(BaselineFamily::expweibull(-0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BaselineFamily::truncweibull(0.0), std::invalid_argument);
}

TEST_CASE("function identities hold on every analytic family") {
    for (const auto& f : testsup::analytic_baselines()) {
        check_function_identities(f);
        check_boundary_conventions(f);
        check_derivatives_numerically(f);
    }
}

TEST_CASE("closed-form spot values") {
    const auto par = BaselineFamily::pareto(1.5);
    CHECK(par.support_lo() == 1.0);
    CHECK(par.cdf(2.0) == Approx(1.0 - std::pow(2.0, -1.5)).epsilon(1e-15));
    CHECK(par.hazard(2.0) == Approx(0.75).epsilon(1e-15));
    CHECK(par.pdf(2.0) == Approx(1.5 * std::pow(2.0, -2.5)).epsilon(1e-15));
    CHECK(par.g_ratio(2.0) == Approx(std::pow(2.0, 1.5) - 1.0).epsilon(1e-14));
    CHECK(par.hazard_prime(2.0) == Approx(-0.375).epsilon(1e-14));
    // g = w^a - 1 so g'' = a (a-1) w^(a-2)
    CHECK(par.g_second(2.0) == Approx(1.5 * 0.5 * std::pow(2.0, -0.5)).epsilon(1e-13));

    const auto rat = BaselineFamily::ratio();
    CHECK(rat.cdf(3.0) == Approx(0.5).epsilon(1e-15));
    CHECK(rat.sf(3.0) == Approx(0.5).epsilon(1e-15));
    CHECK(rat.pdf(3.0) == Approx(0.125).epsilon(1e-15));
    CHECK(rat.hazard(3.0) == Approx(0.25).epsilon(1e-15));
    CHECK(rat.hazard(1.0) == Approx(0.5).epsilon(1e-15));  // right limit at the support edge
    CHECK(rat.inv_cdf(0.5) == Approx(3.0).epsilon(1e-15));
    CHECK(rat.g_prime(3.0) == Approx(0.5).epsilon(1e-14));
    CHECK(rat.g_second(3.0) == Approx(0.0).scale(1.0).epsilon(1e-12));

    const auto tw = BaselineFamily::truncweibull(0.5);
    CHECK(tw.sf(4.0) == Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(tw.hazard(4.0) == Approx(0.25).epsilon(1e-15));

    const auto burr = BaselineFamily::burr(2.0, 1.0);
    CHECK(burr.cdf(1.0) == Approx(0.5).epsilon(1e-15));
    CHECK(burr.hazard(1.0) == Approx(1.0).epsilon(1e-15));

    const auto pgw = BaselineFamily::pgw(1.0, 2.0);
    CHECK(pgw.sf(3.0) == Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(pgw.hazard(3.0) == Approx(0.25).epsilon(1e-15));

    const auto ew = BaselineFamily::expweibull(1.0, 2.0);
    CHECK(ew.cdf(std::log(2.0)) == Approx(0.25).epsilon(1e-14));
    CHECK(ew.pdf(std::log(2.0)) == Approx(0.5).epsilon(1e-14));
}

TEST_CASE("upper tail survival avoids cancellation") {
    const auto par = BaselineFamily::pareto(2.0);
    CHECK(par.sf(1e6) == Approx(1e-12).epsilon(1e-12));
    const auto tw = BaselineFamily::truncweibull(1.0);
    CHECK(tw.sf(41.0) == Approx(std::exp(-40.0)).epsilon(1e-12));
}

TEST_CASE("tabulated family interpolates its source") {
    const auto rat = BaselineFamily::ratio();
    std::vector<double> xs, Fs;
    for (int i = 0; i <= 400; ++i) {
        const double x = 1.0 + 99.0 * i / 400.0;
        xs.push_back(x);
        Fs.push_back(rat.cdf(x));
    }
    Fs.front() = 0.0;
    const auto tab = BaselineFamily::tabulated(xs, Fs);
    CHECK_FALSE(tab.has_derivatives());
    CHECK(tab.support_lo() == Approx(1.0));
    for (double x : {1.7, 5.0, 20.0, 60.0}) {
        CAPTURE(x);
        CHECK(tab.cdf(x) == Approx(rat.cdf(x)).epsilon(1e-6));
        CHECK(tab.hazard(x) == Approx(rat.hazard(x)).epsilon(5e-3));
        CHECK(tab.inv_cdf(rat.cdf(x)) == Approx(x).epsilon(1e-4));
    }
    CHECK_THROWS_AS(tab.hazard_prime(5.0), std::invalid_argument);
    CHECK_THROWS_AS(tab.g_second(5.0), std::invalid_argument);
    CHECK(tab.g_prime(5.0) == Approx(rat.g_prime(5.0)).epsilon(5e-3));
}

TEST_CASE("tabulated table validation") {
    CHECK_THROWS_AS(BaselineFamily::tabulated({1.0, 2.0}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(BaselineFamily::tabulated({1.0, 2.0, 1.5}, {0.0, 0.5, 0.9}),
                    std::invalid_argument);
    CHECK_THROWS_AS(BaselineFamily::tabulated({1.0, 2.0, 3.0}, {0.1, 0.5, 0.9}),
                    std::invalid_argument);
}

TEST_CASE("tags, params and equality") {
    const auto a = BaselineFamily::pareto(2.0);
    const auto b = BaselineFamily::pareto(2.0);
    const auto c = BaselineFamily::pareto(2.5);
    CHECK(a == b);
    CHECK_FALSE(a == c);
    CHECK(a.tag() == "pareto");
    REQUIRE(a.params().size() == 1);
    CHECK(a.params().front().first == "a");
    CHECK(a.params().front().second == 2.0);
    CHECK_FALSE(a == BaselineFamily::ratio());
    const auto burr = BaselineFamily::burr(0.5, 2.0);
    CHECK(burr.params().size() == 2);
}

TEST_CASE("shape condition matrix") {
    const auto grid_of = [](const BaselineFamily& f) { return default_condition_grid(f); };

    SUBCASE("pareto keeps w r(w) constant, so both plain and w-scaled decrease hold") {
        for (double a : {0.5, 1.0, 1.5, 2.5}) {
            CAPTURE(a);
            const auto f = BaselineFamily::pareto(a);
            CHECK(check_shape(f, ShapeCondition::HazardDecreasing, grid_of(f)).satisfied);
            CHECK(check_shape(f, ShapeCondition::WHazardDecreasing, grid_of(f)).satisfied);
            const auto w2 = check_shape(f, ShapeCondition::W2HazardDecreasing, grid_of(f));
            CHECK_FALSE(w2.satisfied);
            CHECK(w2.witness.has_value());
        }
    }

    SUBCASE("no decreasing-hazard family satisfies the w^2-scaled decrease") {
        std::mt19937_64 rng(0x5EEDu);
        for (int it = 0; it < 30; ++it) {
            const auto f = testsup::random_dfr_baseline(rng);
            CAPTURE(f.tag());
            CHECK(check_shape(f, ShapeCondition::HazardDecreasing, grid_of(f)).satisfied);
            CHECK_FALSE(check_shape(f, ShapeCondition::W2HazardDecreasing, grid_of(f)).satisfied);
        }
    }

    SUBCASE("increasing-hazard example fails the decrease checks") {
        const auto f = BaselineFamily::burr(3.0, 1.0);
        const auto res = check_shape(f, ShapeCondition::HazardDecreasing, grid_of(f));
        CHECK_FALSE(res.satisfied);
        CHECK(res.witness.has_value());
    }

    SUBCASE("pareto exponent window for the hazard-order clause trios") {
        const auto mid = BaselineFamily::pareto(1.5);  // 1 < a < 2
        CHECK(check_shape(mid, ShapeCondition::HazardDecreasingConvex, grid_of(mid)).satisfied);
        CHECK(check_shape(mid, ShapeCondition::GIncreasingConvex, grid_of(mid)).satisfied);
        CHECK(check_shape(mid, ShapeCondition::GSecondDecreasing, grid_of(mid)).satisfied);
        CHECK_FALSE(check_shape(mid, ShapeCondition::W2GSecondDecreasing, grid_of(mid)).satisfied);
        CHECK_FALSE(check_shape(mid, ShapeCondition::GIncreasingConcave, grid_of(mid)).satisfied);

        const auto unit = BaselineFamily::pareto(1.0);  // linear odds ratio: everything flattens
        for (auto cond :
             {ShapeCondition::HazardDecreasing, ShapeCondition::HazardDecreasingConvex,
              ShapeCondition::W2HazardPrimeIncreasing, ShapeCondition::GIncreasingConvex,
              ShapeCondition::GSecondDecreasing, ShapeCondition::W2GSecondDecreasing,
              ShapeCondition::WHazardIncreasingConcave, ShapeCondition::GIncreasingConcave,
              ShapeCondition::WGPrimeConvex}) {
            CAPTURE(shape_condition_name(cond));
            CHECK(check_shape(unit, cond, grid_of(unit)).satisfied);
        }
    }

    SUBCASE("ratio family satisfies the concave trio") {
        const auto f = BaselineFamily::ratio();
        CHECK(check_shape(f, ShapeCondition::WHazardIncreasingConcave, grid_of(f)).satisfied);
        CHECK(check_shape(f, ShapeCondition::GIncreasingConcave, grid_of(f)).satisfied);
        CHECK(check_shape(f, ShapeCondition::WGPrimeConvex, grid_of(f)).satisfied);
    }

    SUBCASE("derivative-based conditions are reported unsupported for tabulated") {
        std::vector<double> xs = {1.0, 2.0, 3.0, 5.0, 10.0, 50.0};
        std::vector<double> Fs = {0.0, 0.5, 2.0 / 3, 0.8, 0.9, 49.0 / 51};
        const auto tab = BaselineFamily::tabulated(xs, Fs);
        CHECK_THROWS_AS((void)check_shape(tab, ShapeCondition::W2HazardPrimeIncreasing,
                                          default_condition_grid(tab)),
                        std::invalid_argument);
    }

    SUBCASE("grid must hold at least 32 points") {
        const auto f = BaselineFamily::pareto(2.0);
        CHECK_THROWS_AS((void)check_shape(f, ShapeCondition::HazardDecreasing, {1.5, 2.0, 3.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("default condition grid is sane") {
    for (const auto& f : testsup::analytic_baselines()) {
        const auto g = default_condition_grid(f);
        REQUIRE(g.size() >= 32);
        CHECK(g.front() > f.support_lo());
        CHECK(std::is_sorted(g.begin(), g.end()));
    }
}
