#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ordstat/stochorder.hpp"
#include "test_support.hpp"

using namespace ordstat;
using namespace testsup;
using doctest::Approx;

namespace {

ElsBatch example_batch_x() {
    return batch_of(BaselineFamily::pareto(2.0), {5, 7, 9}, {0.5, 0.7, 0.9}, const_vec(3, 0.2));
}
ElsBatch example_batch_y() {
    return batch_of(BaselineFamily::pareto(2.0), {2, 4, 7}, {0.5, 0.7, 0.9}, const_vec(3, 0.2));
}
// the crossing pair: generators differ, scales are not jointly monotone
ElsBatch crossing_batch_a() {
    return batch_of(BaselineFamily::truncweibull(0.5), const_vec(3, 5.0), {2.5, 6.5, 3.1},
                    const_vec(3, 0.1), Generator::gumbel_hougaard(2.5));
}
ElsBatch crossing_batch_b() {
    return batch_of(BaselineFamily::truncweibull(0.5), const_vec(3, 5.0), {4.5, 6.5, 7.5},
                    const_vec(3, 0.1), Generator::gumbel_hougaard(1.0001));
}

}  // namespace

TEST_CASE("survival order verdict on the dominating example pair") {
    const auto v = check_st(example_batch_x(), example_batch_y(), GridSpec(9.001, 60.0, 512));
    CHECK(v.relation == Relation::st);
    CHECK(v.status == VerdictStatus::holds);
    CHECK(v.direction == Direction::A_ge_B);
    CHECK_FALSE(v.witness.has_value());
    CHECK(v.max_violation == Approx(-6.553163759825841e-10).epsilon(1e-6));
    CHECK(v.grid_meta.used == 512);
    CHECK(v.grid_meta.trimmed == 0);
}

TEST_CASE("survival order verdict on the crossing pair") {
    const GridSpec grid(5.001, 60.0, 512);
    const auto v = check_st(crossing_batch_a(), crossing_batch_b(), grid);
    CHECK(v.status == VerdictStatus::fails);
    REQUIRE(v.witness.has_value());
    CHECK(v.max_violation > 0.0);

    // swapping the batches flips the direction and keeps the witness location
    const auto w = check_st(crossing_batch_b(), crossing_batch_a(), grid);
    CHECK(w.status == VerdictStatus::fails);
    CHECK(w.max_violation == Approx(v.max_violation).epsilon(1e-12));
    REQUIRE(w.witness.has_value());
    CHECK(w.witness->x == v.witness->x);
    CHECK(w.witness->value_a == v.witness->value_b);
    CHECK(w.witness->value_b == v.witness->value_a);
    CHECK(v.direction != w.direction);
}

TEST_CASE("identical batches compare as equal") {
    const auto v = check_st(example_batch_x(), example_batch_x(), GridSpec(9.001, 60.0, 256));
    CHECK(v.status == VerdictStatus::holds);
    CHECK(v.direction == Direction::equal);
    const auto h = check_hr(batch_of(BaselineFamily::pareto(1.5), {1, 2}, {1, 1}, {1, 1}),
                            batch_of(BaselineFamily::pareto(1.5), {1, 2}, {1, 1}, {1, 1}),
                            GridSpec(2.1, 30.0, 256));
    CHECK(h.status == VerdictStatus::holds);
    CHECK(h.direction == Direction::equal);
}

TEST_CASE("hazard order on a hand-checked scale pair") {
    // homogeneous unit-shape batches with scales 1 vs 2: survival of the
    // second smallest is n t^{n-1} - (n-1) t^n with t = (x/theta)^{-a}, so the
    // hazard is n(n-1)a(1-t) / [x(n-(n-1)t)], and (1-t)/(n-(n-1)t) is
    // decreasing in t; the slower batch B sees the larger t, hence the
    // smaller hazard at every x above both supports
    const auto A = batch_of(BaselineFamily::pareto(1.5), const_vec(3, 0.0), const_vec(3, 1.0),
                            const_vec(3, 1.0));
    const auto B = batch_of(BaselineFamily::pareto(1.5), const_vec(3, 0.0), const_vec(3, 2.0),
                            const_vec(3, 1.0));
    const auto grid = GridSpec(2.001, 80.0, 256);
    const auto v = check_hr(A, B, grid);
    CHECK(v.relation == Relation::hr);
    CHECK(v.status == VerdictStatus::holds);
    CHECK(v.direction == Direction::B_ge_A);

    // the survival order is implied
    const auto s = check_st(A, B, grid);
    CHECK(s.status == VerdictStatus::holds);
    CHECK(s.direction == Direction::B_ge_A);
}

TEST_CASE("staggered support entries make the survival curves cross") {
    // equal-sum location profiles, one spread out and one flat: just past the
    // flat batch's support entry the spread batch has one component with a
    // long exposure head start, so its second failure arrives sooner; far in
    // the tail the spread profile survives better and the curves cross
    const auto A = batch_of(BaselineFamily::pareto(1.5), {3, 2, 1}, const_vec(3, 1.0),
                            const_vec(3, 1.0));
    const auto B = batch_of(BaselineFamily::pareto(1.5), {2, 2, 2}, const_vec(3, 1.0),
                            const_vec(3, 1.0));
    const double x_near = 3.1125440313111543;
    CHECK(sf_second(A, x_near) == Approx(0.9003125859714113).epsilon(1e-12));
    CHECK(sf_second(B, x_near) == Approx(0.9408970954936615).epsilon(1e-12));
    CHECK(sf_second(A, 6.0) > sf_second(B, 6.0));

    const auto v = check_st(A, B, GridSpec(3.001, 60.0, 512));
    CHECK(v.status == VerdictStatus::fails);
    CHECK(v.max_violation > 0.0);
    CHECK(v.witness.has_value());
}

TEST_CASE("hazard order uses the closed form only where it applies") {
    // shaped batches go through numeric differentiation; the verdict must
    // agree with the unit-shape closed-form route on a unit-shape pair
    const auto A = batch_of(BaselineFamily::burr(0.7, 1.5), {1, 2}, {1.0, 1.3}, {1, 1});
    const auto B = batch_of(BaselineFamily::burr(0.7, 1.5), {1.5, 1.5}, {1.0, 1.3}, {1, 1});
    const auto grid = default_comparison_grid(A, B, 200);
    const auto v = check_hr(A, B, grid);
    CHECK(v.status != VerdictStatus::indeterminate);

    // forcing the numeric route by perturbing one shape far from 1
    const auto A2 = batch_of(BaselineFamily::burr(0.7, 1.5), {1, 2}, {1.0, 1.3}, {0.99, 1.0});
    const auto v2 = check_hr(A2, B, grid);
    CHECK(v2.status != VerdictStatus::indeterminate);
}

TEST_CASE("tail points with vanished survival are trimmed") {
    const auto A = batch_of(BaselineFamily::pareto(2.0), {0, 0}, {1, 1}, {1, 1});
    const auto B = batch_of(BaselineFamily::pareto(2.0), {0, 0}, {1.2, 1.2}, {1, 1});

    const auto mixed = check_hr(A, B, GridSpec(5.0, 3e6, 128));
    CHECK(mixed.grid_meta.trimmed > 0);
    CHECK(mixed.grid_meta.used + mixed.grid_meta.trimmed == 128);
    CHECK(mixed.status != VerdictStatus::indeterminate);

    const auto dead = check_hr(A, B, GridSpec(3e6, 5e6, 128));
    CHECK(dead.status == VerdictStatus::indeterminate);
    CHECK(dead.direction == Direction::equal);
    CHECK(dead.grid_meta.used < 8);
}

TEST_CASE("grids must carry at least 128 points") {
    const auto A = example_batch_x();
    CHECK_THROWS_AS((void)check_st(A, A, GridSpec(9.001, 60.0, 64)), std::invalid_argument);
    CHECK_THROWS_AS((void)check_hr(A, A, GridSpec(9.001, 60.0, 127)), std::invalid_argument);
}

TEST_CASE("verdicts serialize with the documented keys") {
    const auto v = check_st(example_batch_x(), example_batch_y(), GridSpec(9.001, 60.0, 256));
    const auto j = v.to_json();
    CHECK(j.at("relation") == "st");
    CHECK(j.at("direction") == "A_ge_B");
    CHECK(j.at("status") == "holds");
    CHECK(j.at("witness").is_null());
    CHECK(j.at("grid").at("n") == 256);
    CHECK(j.at("grid").at("lo").get<double>() == Approx(9.001));
    CHECK(j.at("max_violation").is_number());
    CHECK_FALSE(j.contains("seed"));

    const auto f = check_st(crossing_batch_a(), crossing_batch_b(), GridSpec(5.001, 60.0, 256));
    const auto jf = f.to_json();
    CHECK(jf.at("status") == "fails");
    CHECK(jf.at("witness").at("x").is_number());
}

TEST_CASE("monte carlo estimates are deterministic and calibrated") {
    const auto b = batch_of(BaselineFamily::pareto(2.0), {0, 0, 0}, {1.0, 1.5, 2.0},
                            {1.0, 0.8, 1.2});
    const uint64_t seed = default_mc_seed();

    const auto e1 = mc_sf_second(b, 3.0, 200000, seed);
    const auto e2 = mc_sf_second(b, 3.0, 200000, seed);
    CHECK(e1.estimate == e2.estimate);
    CHECK(e1.stderr_ == e2.stderr_);

    const auto e3 = mc_sf_second(b, 3.0, 200000, seed + 1);
    CHECK(e1.estimate != e3.estimate);

    const double exact = sf_second_indep(b, 3.0);
    CHECK(std::abs(e1.estimate - exact) <= 4.0 * e1.stderr_);
    CHECK(e1.stderr_ == Approx(std::sqrt(exact * (1 - exact) / 200000.0)).epsilon(0.05));

    // the multi-point path is bit-identical to the single-point call
    const std::vector<double> xs = {2.0, 3.0, 5.0, 9.0};
    const auto multi = mc_sf_second_multi(b, xs, 200000, seed);
    REQUIRE(multi.size() == xs.size());
    CHECK(multi[1].estimate == e1.estimate);
    for (size_t i = 1; i < multi.size(); ++i) CHECK(multi[i].estimate <= multi[i - 1].estimate);
}

TEST_CASE("monte carlo input guards") {
    const auto b = batch_of(BaselineFamily::pareto(2.0), {0, 0}, {1, 1}, {1, 1});
    CHECK_THROWS_AS((void)mc_sf_second(b, 2.0, 100, 7), std::invalid_argument);
    CHECK_THROWS_AS((void)mc_sf_second_multi(b, {}, 100000, 7), std::invalid_argument);
    CHECK_THROWS_AS((void)mc_sf_second_multi(b, {3.0, 2.0}, 100000, 7), std::invalid_argument);
    const auto dep = batch_of(BaselineFamily::pareto(2.0), {0, 0}, {1, 1}, {1, 1},
                              Generator::clayton(1.0));
    CHECK_THROWS_AS((void)mc_sf_second(dep, 2.0, 100000, 7), std::invalid_argument);
}

TEST_CASE("subset-lattice oracle matches the dependent formula") {
    std::mt19937_64 rng(0x0DDBA11u);
    for (int it = 0; it < 30; ++it) {
        const size_t n = static_cast<size_t>(randint(rng, 2, 4));
        Generator gen = Generator::independence();
        switch (it % 3) {
            case 0: gen = Generator::gumbel_frailty(uniform(rng, 0.05, 1.0)); break;
            case 1: gen = Generator::gumbel_hougaard(uniform(rng, 1.0, 3.0)); break;
            case 2: gen = Generator::clayton(uniform(rng, 0.1, 3.0)); break;
        }
        const auto base = analytic_baselines()[static_cast<size_t>(randint(rng, 0, 5))];
        const auto b = batch_of(base, rand_pos_vec(rng, n, 0.0, 3.0),
                                rand_pos_vec(rng, n, 0.4, 2.5), rand_pos_vec(rng, n, 0.2, 2.0),
                                gen);
        const auto grid = default_comparison_grid(b, b, 12);
        for (double x : grid.points()) {
            CAPTURE(base.tag());
            CAPTURE(gen.tag());
            CAPTURE(x);
            CHECK(sf_second_dep(b, x) ==
                  Approx(oracle_sf_second_dep(b, x)).epsilon(1e-11).scale(1e-12));
        }
    }
}

TEST_CASE("oracle guards") {
    const auto indep = batch_of(BaselineFamily::pareto(2.0), {0, 0}, {1, 1}, {1, 1});
    CHECK_THROWS_AS((void)oracle_sf_second_dep(indep, 2.0), std::logic_error);
    const size_t n = 13;
    const auto wide = batch_of(BaselineFamily::pareto(2.0), const_vec(n, 0.0), const_vec(n, 1.0),
                               const_vec(n, 1.0), Generator::clayton(1.0));
    CHECK_THROWS_AS((void)oracle_sf_second_dep(wide, 2.0), std::invalid_argument);
}
