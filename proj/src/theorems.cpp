#include "ordstat/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ordstat {

namespace {

constexpr double kParamTol = 1e-12;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string param_constraint_name(ParamConstraint c) {
    switch (c) {
        case ParamConstraint::scale_vectors_equal: return "scale vectors equal";
        case ParamConstraint::scale_scalar_common: return "common scalar scale";
        case ParamConstraint::loc_vectors_equal: return "location vectors equal";
        case ParamConstraint::loc_scalar_common: return "common scalar location";
        case ParamConstraint::locB_scalar: return "B locations all equal";
        case ParamConstraint::scaleB_scalar: return "B scales all equal";
        case ParamConstraint::alpha_common_le1: return "common shape <= 1";
        case ParamConstraint::alpha_common_eq1: return "all shapes = 1";
        case ParamConstraint::locA_const_half_shift_max: return "A homogeneous at max (1+locB)/2";
        case ParamConstraint::locB_max_le1: return "max locB <= 1";
        case ParamConstraint::locB_n_times_le_sum_locA: return "sum locB <= sum locA";
        case ParamConstraint::scaleB_recip_ge_mean_recipA: return "1/scaleB >= mean(1/scaleA)";
        case ParamConstraint::scaleB_n_times_le_sum_scaleA: return "sum scaleB <= sum scaleA";
        case ParamConstraint::locB_const_mean_locA: return "locB = mean(locA)";
        case ParamConstraint::scaleB_const_harmonic_meanA: return "scaleB = harmonic mean(scaleA)";
    }
    return "?";
}

std::string generator_condition_name(GeneratorCondition c) {
    switch (c) {
        case GeneratorCondition::log_concave_psi: return "log-concave generator";
        case GeneratorCondition::log_concave_either: return "log-concave generator (either)";
        case GeneratorCondition::sub_additive_comp: return "sub-additive composition";
        case GeneratorCondition::super_additive_comp: return "super-additive composition";
    }
    return "?";
}

bool all_close(const std::vector<double>& v, double target, size_t* bad) {
    for (size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i] - target) > kParamTol) {
            *bad = i;
            return false;
        }
    return true;
}

double sum_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

ClauseResult eval_param(ParamConstraint c, const ElsBatch& a, const ElsBatch& b) {
    ClauseResult res{param_constraint_name(c), true, std::nullopt};
    auto fail = [&](std::string why) {
        res.pass = false;
        res.witness = std::move(why);
    };
    const auto la = a.lambdas(), lb = b.lambdas(), ta = a.thetas(), tb = b.thetas();
    const size_t n = a.n();
    size_t bad = 0;
    switch (c) {
        case ParamConstraint::scale_vectors_equal:
            for (size_t i = 0; i < n; ++i)
                if (std::abs(ta[i] - tb[i]) > kParamTol) {
                    fail("component " + std::to_string(i) + ": " + fmt(ta[i]) + " vs " + fmt(tb[i]));
                    break;
                }
            break;
        case ParamConstraint::scale_scalar_common:
            if (!all_close(ta, ta[0], &bad) )
                fail("A scale " + std::to_string(bad) + " = " + fmt(ta[bad]) + " != " + fmt(ta[0]));
            else if (!all_close(tb, ta[0], &bad))
                fail("B scale " + std::to_string(bad) + " = " + fmt(tb[bad]) + " != " + fmt(ta[0]));
            break;
        case ParamConstraint::loc_vectors_equal:
            for (size_t i = 0; i < n; ++i)
                if (std::abs(la[i] - lb[i]) > kParamTol) {
                    fail("component " + std::to_string(i) + ": " + fmt(la[i]) + " vs " + fmt(lb[i]));
                    break;
                }
            break;
        case ParamConstraint::loc_scalar_common:
            if (!all_close(la, la[0], &bad))
                fail("A location " + std::to_string(bad) + " = " + fmt(la[bad]) + " != " + fmt(la[0]));
            else if (!all_close(lb, la[0], &bad))
                fail("B location " + std::to_string(bad) + " = " + fmt(lb[bad]) + " != " + fmt(la[0]));
            break;
        case ParamConstraint::locB_scalar:
            if (!all_close(lb, lb[0], &bad))
                fail("B location " + std::to_string(bad) + " = " + fmt(lb[bad]) + " != " + fmt(lb[0]));
            break;
        case ParamConstraint::scaleB_scalar:
            if (!all_close(tb, tb[0], &bad))
                fail("B scale " + std::to_string(bad) + " = " + fmt(tb[bad]) + " != " + fmt(tb[0]));
            break;
        case ParamConstraint::alpha_common_le1: {
            const auto aa = a.alphas(), ab = b.alphas();
            const double a0 = aa[0];
            if (!all_close(aa, a0, &bad) || !all_close(ab, a0, &bad))
                fail("shapes are not all equal");
            else if (a0 > 1.0 + kParamTol)
                fail("common shape " + fmt(a0) + " > 1");
            break;
        }
        case ParamConstraint::alpha_common_eq1: {
            const auto aa = a.alphas(), ab = b.alphas();
            if (!all_close(aa, 1.0, &bad))
                fail("A shape " + std::to_string(bad) + " = " + fmt(aa[bad]));
            else if (!all_close(ab, 1.0, &bad))
                fail("B shape " + std::to_string(bad) + " = " + fmt(ab[bad]));
            break;
        }
        case ParamConstraint::locA_const_half_shift_max: {
            double mu_m = -std::numeric_limits<double>::infinity();
            for (double mu : lb) mu_m = std::max(mu_m, 0.5 * (1.0 + mu));
            if (!all_close(la, mu_m, &bad))
                fail("A location " + std::to_string(bad) + " = " + fmt(la[bad]) + " != " + fmt(mu_m));
            break;
        }
        case ParamConstraint::locB_max_le1: {
            const double mx = *std::max_element(lb.begin(), lb.end());
            if (mx > 1.0 + kParamTol) fail("max locB = " + fmt(mx));
            break;
        }
        case ParamConstraint::locB_n_times_le_sum_locA: {
            const double sb = sum_of(lb), sa = sum_of(la);
            if (sb > sa + kParamTol * static_cast<double>(n))
                fail("sum locB " + fmt(sb) + " > sum locA " + fmt(sa));
            break;
        }
        case ParamConstraint::scaleB_recip_ge_mean_recipA: {
            double mean_ra = 0.0;
            for (double t : ta) mean_ra += 1.0 / t;
            mean_ra /= static_cast<double>(n);
            double mean_rb = 0.0;
            for (double t : tb) mean_rb += 1.0 / t;
            mean_rb /= static_cast<double>(n);
            if (mean_rb < mean_ra - kParamTol)
                fail("1/scaleB " + fmt(mean_rb) + " < mean(1/scaleA) " + fmt(mean_ra));
            break;
        }
        case ParamConstraint::scaleB_n_times_le_sum_scaleA: {
            const double sb = sum_of(tb), sa = sum_of(ta);
            if (sb > sa + kParamTol * static_cast<double>(n))
                fail("sum scaleB " + fmt(sb) + " > sum scaleA " + fmt(sa));
            break;
        }
        case ParamConstraint::locB_const_mean_locA: {
            const double mean = sum_of(la) / static_cast<double>(n);
            if (!all_close(lb, mean, &bad))
                fail("B location " + std::to_string(bad) + " = " + fmt(lb[bad]) + " != " + fmt(mean));
            break;
        }
        case ParamConstraint::scaleB_const_harmonic_meanA: {
            double recip_sum = 0.0;
            for (double t : ta) recip_sum += 1.0 / t;
            const double hm = static_cast<double>(n) / recip_sum;
            if (!all_close(tb, hm, &bad))
                fail("B scale " + std::to_string(bad) + " = " + fmt(tb[bad]) + " != " + fmt(hm));
            break;
        }
    }
    return res;
}

ClauseResult eval_chain(const ChainRequirement& chain, const ElsBatch& a, const ElsBatch& b) {
    std::string members;
    for (const auto q : chain.members) {
        if (!members.empty()) members += ", ";
        members += quantity_name(q);
    }
    ClauseResult res{(chain.ascending_only ? "chain ascending {" : "chain monotone {") + members + "}",
                     true, std::nullopt};
    try {
        bool all_asc = true, all_desc = true;
        for (const auto q : chain.members) {
            const RVector v(quantity_values(q, a, b));
            all_asc = all_asc && is_ascending(v);
            all_desc = all_desc && is_descending(v);
        }
        const bool ok = all_asc || (!chain.ascending_only && all_desc);
        if (!ok) {
            res.pass = false;
            res.witness = "vectors are not jointly monotone";
        }
    } catch (const std::invalid_argument& e) {
        res.pass = false;
        res.witness = std::string("requires positive vectors: ") + e.what();
    }
    return res;
}

ClauseResult eval_major(const MajorClause& mc, const ElsBatch& a, const ElsBatch& b) {
    const std::string name = major_rel_name(mc.rel) + "(" + quantity_name(mc.dominant) +
                             " >= " + quantity_name(mc.dominated) + ")";
    ClauseResult res{name, true, std::nullopt};
    try {
        const RVector dom(quantity_values(mc.dominant, a, b));
        const RVector sub(quantity_values(mc.dominated, a, b));
        MajorResult mr;
        switch (mc.rel) {
            case MajorRel::m: mr = majorizes_detail(dom, sub); break;
            case MajorRel::w_sub: mr = weak_submajorizes_detail(dom, sub); break;
            case MajorRel::w_sup: mr = weak_supermajorizes_detail(dom, sub); break;
            case MajorRel::rm: mr = reciprocal_majorizes_detail(dom, sub); break;
        }
        if (!mr.holds) {
            res.pass = false;
            res.witness = "first violated prefix length " + std::to_string(mr.first_violation);
        }
    } catch (const std::invalid_argument& e) {
        res.pass = false;
        res.witness = std::string("requires positive vectors: ") + e.what();
    }
    return res;
}

ClauseResult eval_shape(ShapeCondition c, const BaselineFamily& base) {
    ClauseResult res{std::string("baseline ") + shape_condition_name(c), true, std::nullopt};
    try {
        const ShapeCheck sc = check_shape(base, c, default_condition_grid(base));
        if (!sc.satisfied) {
            res.pass = false;
            if (sc.witness) res.witness = "violated near w = " + fmt(*sc.witness);
        }
    } catch (const std::invalid_argument& e) {
        res.pass = false;
        res.witness = std::string("not checkable: ") + e.what();
    }
    return res;
}

ClauseResult eval_generator(GeneratorCondition c, const ElsBatch& a, const ElsBatch& b) {
    ClauseResult res{generator_condition_name(c), true, std::nullopt};
    auto log_concave = [](const Generator& g) {
        return check_log_concave(g, default_log_concavity_grid(g));
    };
    switch (c) {
        case GeneratorCondition::log_concave_psi: {
            const GenCheck gc = log_concave(*a.generator());
            if (!gc.satisfied) {
                res.pass = false;
                if (gc.witness_x) res.witness = "log psi convex near x = " + fmt(*gc.witness_x);
            }
            break;
        }
        case GeneratorCondition::log_concave_either: {
            const GenCheck ga = log_concave(*a.generator());
            const GenCheck gb = log_concave(*b.generator());
            if (!ga.satisfied && !gb.satisfied) {
                res.pass = false;
                res.witness = "neither generator is log-concave";
            }
            break;
        }
        case GeneratorCondition::sub_additive_comp:
        case GeneratorCondition::super_additive_comp: {
            const auto mode = (c == GeneratorCondition::sub_additive_comp) ? AdditivityMode::sub
                                                                           : AdditivityMode::super;
            const Generator& inner = *a.generator();
            const Generator& outer = *b.generator();
            const GenCheck gc =
                check_additivity(outer, inner, mode, default_additivity_grid(inner));
            if (!gc.satisfied) {
                res.pass = false;
                if (gc.witness_pair)
                    res.witness = "violated at (x, y) = (" + fmt(gc.witness_pair->first) + ", " +
                                  fmt(gc.witness_pair->second) + ")";
            }
            break;
        }
    }
    return res;
}

TheoremSpec make_spec(std::string id, Dependence dep, std::vector<ParamConstraint> pcs,
                      std::optional<ChainRequirement> chain, std::vector<MajorClause> majors,
                      std::vector<ShapeCondition> shapes, std::vector<GeneratorCondition> gens,
                      Relation rel, Direction dir) {
    TheoremSpec s;
    s.id = std::move(id);
    s.dependence = dep;
    s.param_constraints = std::move(pcs);
    s.chain = std::move(chain);
    s.major_clauses = std::move(majors);
    s.shape_conditions = std::move(shapes);
    s.generator_conditions = std::move(gens);
    s.conclusion = {rel, dir};

    std::string d = dependence_name(dep);
    for (const auto c : s.param_constraints) d += "; " + param_constraint_name(c);
    if (s.chain) {
        d += std::string("; ") + (s.chain->ascending_only ? "ascending {" : "monotone {");
        for (size_t i = 0; i < s.chain->members.size(); ++i)
            d += (i ? "," : "") + std::string(quantity_name(s.chain->members[i]));
        d += "}";
    }
    for (const auto& mc : s.major_clauses)
        d += "; " + major_rel_name(mc.rel) + "(" + quantity_name(mc.dominant) + ">=" +
             quantity_name(mc.dominated) + ")";
    for (const auto c : s.shape_conditions) d += std::string("; ") + shape_condition_name(c);
    for (const auto c : s.generator_conditions) d += "; " + generator_condition_name(c);
    d += " => " + relation_name(s.conclusion.relation) + " " + direction_name(s.conclusion.direction);
    s.digest = std::move(d);
    return s;
}

std::vector<TheoremSpec> build_registry() {
    using PC = ParamConstraint;
    using SC = ShapeCondition;
    using GC = GeneratorCondition;
    using Q = Quantity;
    const auto st = Relation::st;
    const auto hr = Relation::hr;
    const auto AgeB = Direction::A_ge_B;
    const auto BgeA = Direction::B_ge_A;
    auto ch = [](std::vector<Q> m, bool asc = false) { return ChainRequirement{std::move(m), asc}; };
    auto w_sub = [](Q d, Q s) { return MajorClause{MajorRel::w_sub, d, s}; };
    auto w_sup = [](Q d, Q s) { return MajorClause{MajorRel::w_sup, d, s}; };
    auto rm = [](Q d, Q s) { return MajorClause{MajorRel::rm, d, s}; };
    auto mm = [](Q d, Q s) { return MajorClause{MajorRel::m, d, s}; };

    std::vector<TheoremSpec> reg;
    reg.push_back(make_spec("T3.1", Dependence::independent,
                            {PC::scale_vectors_equal, PC::alpha_common_le1},
                            ch({Q::locA, Q::scaleA, Q::locB}), {w_sub(Q::locA, Q::locB)},
                            {SC::WHazardDecreasing}, {}, st, AgeB));
    reg.push_back(make_spec("T3.1*", Dependence::independent,
                            {PC::scale_scalar_common, PC::alpha_common_le1},
                            ch({Q::locA, Q::locB}), {w_sub(Q::locA, Q::locB)},
                            {SC::HazardDecreasing}, {}, st, AgeB));
    reg.push_back(make_spec("T3.2", Dependence::independent,
                            {PC::loc_vectors_equal, PC::alpha_common_le1},
                            ch({Q::locA, Q::scaleA, Q::scaleB}),
                            {w_sup(Q::recipScaleA, Q::recipScaleB)}, {SC::WHazardDecreasing}, {},
                            st, AgeB));
    reg.push_back(make_spec("T3.2*", Dependence::independent,
                            {PC::loc_scalar_common, PC::alpha_common_le1},
                            ch({Q::scaleA, Q::scaleB}), {w_sup(Q::recipScaleA, Q::recipScaleB)},
                            {SC::HazardDecreasing}, {}, st, AgeB));
    reg.push_back(make_spec("T3.3", Dependence::independent,
                            {PC::loc_vectors_equal, PC::alpha_common_le1},
                            ch({Q::locA, Q::scaleA, Q::scaleB}),
                            {rm(Q::recipScaleA, Q::recipScaleB)}, {SC::W2HazardDecreasing}, {}, st,
                            AgeB));
    reg.push_back(make_spec("T3.4i", Dependence::independent, {PC::alpha_common_le1},
                            ch({Q::locA, Q::locB, Q::scaleA, Q::scaleB}),
                            {w_sub(Q::locA, Q::locB), w_sup(Q::recipScaleA, Q::recipScaleB)},
                            {SC::WHazardDecreasing}, {}, st, AgeB));
    reg.push_back(make_spec("T3.4ii", Dependence::independent, {PC::alpha_common_le1},
                            ch({Q::locA, Q::locB, Q::scaleA, Q::scaleB}),
                            {w_sub(Q::locA, Q::locB), rm(Q::recipScaleA, Q::recipScaleB)},
                            {SC::WHazardDecreasing, SC::W2HazardDecreasing}, {}, st, AgeB));
    reg.push_back(make_spec("T3.5", Dependence::independent,
                            {PC::scale_scalar_common, PC::alpha_common_eq1},
                            ch({Q::locA, Q::locB}), {mm(Q::locA, Q::locB)},
                            {SC::HazardDecreasingConvex, SC::GIncreasingConvex,
                             SC::GSecondDecreasing},
                            {}, hr, BgeA));
    reg.push_back(make_spec("T3.6", Dependence::independent,
                            {PC::scale_vectors_equal, PC::alpha_common_eq1},
                            ch({Q::locA, Q::scaleA, Q::locB}), {mm(Q::locA, Q::locB)},
                            {SC::HazardDecreasing, SC::W2HazardPrimeIncreasing,
                             SC::GIncreasingConvex, SC::W2GSecondDecreasing},
                            {}, hr, BgeA));
    reg.push_back(make_spec("T3.7", Dependence::independent,
                            {PC::loc_scalar_common, PC::alpha_common_eq1},
                            ch({Q::scaleA, Q::scaleB}), {mm(Q::recipScaleA, Q::recipScaleB)},
                            {SC::WHazardIncreasingConcave, SC::GIncreasingConcave,
                             SC::WGPrimeConvex},
                            {}, hr, AgeB));
    reg.push_back(make_spec("T3.8", Dependence::common_copula,
                            {PC::scale_vectors_equal, PC::alpha_common_le1},
                            ch({Q::locA, Q::scaleA, Q::locB}), {w_sub(Q::locA, Q::locB)},
                            {SC::WHazardDecreasing}, {GC::log_concave_psi}, st, AgeB));
    reg.push_back(make_spec("T3.8*", Dependence::common_copula,
                            {PC::scale_scalar_common, PC::alpha_common_le1},
                            ch({Q::locA, Q::locB}), {w_sub(Q::locA, Q::locB)},
                            {SC::HazardDecreasing}, {GC::log_concave_psi}, st, AgeB));
    reg.push_back(make_spec("T3.9", Dependence::common_copula,
                            {PC::loc_vectors_equal, PC::alpha_common_le1},
                            ch({Q::locA, Q::scaleA, Q::scaleB}),
                            {rm(Q::recipScaleA, Q::recipScaleB)}, {SC::W2HazardDecreasing},
                            {GC::log_concave_psi}, st, AgeB));
    reg.push_back(make_spec("T3.10", Dependence::common_copula,
                            {PC::loc_vectors_equal, PC::alpha_common_le1},
                            ch({Q::locA, Q::scaleA, Q::scaleB}),
                            {w_sup(Q::recipScaleA, Q::recipScaleB)}, {SC::WHazardDecreasing},
                            {GC::log_concave_psi}, st, AgeB));
    reg.push_back(make_spec("T3.14", Dependence::common_copula,
                            {PC::loc_scalar_common, PC::alpha_common_le1},
                            ch({Q::scaleA, Q::scaleB}), {w_sup(Q::recipScaleA, Q::recipScaleB)},
                            {SC::HazardDecreasing}, {GC::log_concave_psi}, st, AgeB));
    reg.push_back(make_spec("T3.15i", Dependence::two_copulas,
                            {PC::scale_vectors_equal, PC::alpha_common_le1},
                            ch({Q::locA, Q::scaleA, Q::locB}), {w_sub(Q::locA, Q::locB)},
                            {SC::WHazardDecreasing},
                            {GC::log_concave_either, GC::sub_additive_comp}, st, AgeB));
    reg.push_back(make_spec("T3.15ii", Dependence::two_copulas,
                            {PC::scale_vectors_equal, PC::alpha_common_le1},
                            ch({Q::locA, Q::scaleA, Q::locB}), {w_sub(Q::locB, Q::locA)},
                            {SC::WHazardDecreasing},
                            {GC::log_concave_either, GC::super_additive_comp}, st, BgeA));
    reg.push_back(make_spec("T3.16i", Dependence::two_copulas,
                            {PC::loc_vectors_equal, PC::alpha_common_le1},
                            ch({Q::locA, Q::scaleA, Q::scaleB}),
                            {w_sup(Q::recipScaleA, Q::recipScaleB)}, {SC::WHazardDecreasing},
                            {GC::log_concave_either, GC::sub_additive_comp}, st, AgeB));
    reg.push_back(make_spec("T3.16ii", Dependence::two_copulas,
                            {PC::loc_vectors_equal, PC::alpha_common_le1},
                            ch({Q::locA, Q::scaleA, Q::scaleB}),
                            {w_sup(Q::recipScaleB, Q::recipScaleA)}, {SC::WHazardDecreasing},
                            {GC::log_concave_either, GC::super_additive_comp}, st, BgeA));
    reg.push_back(make_spec("T3.17", Dependence::two_copulas,
                            {PC::scale_scalar_common, PC::alpha_common_le1},
                            ch({Q::locA, Q::locB}), {w_sub(Q::locB, Q::locA)},
                            {SC::HazardDecreasing},
                            {GC::log_concave_either, GC::super_additive_comp}, st, BgeA));
    reg.push_back(make_spec("T3.18", Dependence::two_copulas,
                            {PC::loc_scalar_common, PC::alpha_common_le1},
                            ch({Q::scaleA, Q::scaleB}), {w_sup(Q::recipScaleB, Q::recipScaleA)},
                            {SC::HazardDecreasing},
                            {GC::log_concave_either, GC::super_additive_comp}, st, BgeA));
    reg.push_back(make_spec("C3.1", Dependence::independent,
                            {PC::scale_scalar_common, PC::alpha_common_le1,
                             PC::locA_const_half_shift_max, PC::locB_max_le1},
                            ch({Q::locB}, true), {}, {SC::WHazardDecreasing}, {}, st, AgeB));
    reg.push_back(make_spec("C3.2", Dependence::independent,
                            {PC::scale_vectors_equal, PC::alpha_common_le1, PC::locB_scalar,
                             PC::locB_n_times_le_sum_locA},
                            ch({Q::locA, Q::scaleA, Q::locB}), {}, {SC::WHazardDecreasing}, {}, st,
                            AgeB));
    reg.push_back(make_spec("C3.3", Dependence::independent,
                            {PC::loc_scalar_common, PC::alpha_common_le1, PC::scaleB_scalar,
                             PC::scaleB_recip_ge_mean_recipA},
                            ch({Q::scaleA}), {}, {SC::WHazardDecreasing}, {}, st, AgeB));
    reg.push_back(make_spec("C3.4", Dependence::independent,
                            {PC::loc_vectors_equal, PC::alpha_common_le1, PC::scaleB_scalar,
                             PC::scaleB_n_times_le_sum_scaleA},
                            ch({Q::locA, Q::scaleA}), {}, {SC::W2HazardDecreasing}, {}, st, AgeB));
    reg.push_back(make_spec("C3.5", Dependence::independent,
                            {PC::scale_scalar_common, PC::alpha_common_eq1, PC::locB_scalar,
                             PC::locB_const_mean_locA},
                            ch({Q::locA}), {},
                            {SC::HazardDecreasingConvex, SC::GIncreasingConvex,
                             SC::GSecondDecreasing},
                            {}, hr, BgeA));
    reg.push_back(make_spec("C3.6", Dependence::independent,
                            {PC::loc_scalar_common, PC::alpha_common_eq1, PC::scaleB_scalar,
                             PC::scaleB_const_harmonic_meanA},
                            ch({Q::scaleA}), {},
                            {SC::WHazardIncreasingConcave, SC::GIncreasingConcave,
                             SC::WGPrimeConvex},
                            {}, hr, AgeB));
    return reg;
}

}  // namespace

std::string dependence_name(Dependence d) {
    switch (d) {
        case Dependence::independent: return "independent";
        case Dependence::common_copula: return "common copula";
        default: return "two copulas";
    }
}

std::string major_rel_name(MajorRel r) {
    switch (r) {
        case MajorRel::m: return "m";
        case MajorRel::w_sub: return "w_sub";
        case MajorRel::w_sup: return "w_sup";
        default: return "rm";
    }
}

std::string quantity_name(Quantity q) {
    switch (q) {
        case Quantity::locA: return "locA";
        case Quantity::locB: return "locB";
        case Quantity::scaleA: return "scaleA";
        case Quantity::scaleB: return "scaleB";
        case Quantity::recipScaleA: return "1/scaleA";
        default: return "1/scaleB";
    }
}

std::vector<double> quantity_values(Quantity q, const ElsBatch& a, const ElsBatch& b) {
    switch (q) {
        case Quantity::locA: return a.lambdas();
        case Quantity::locB: return b.lambdas();
        case Quantity::scaleA: return a.thetas();
        case Quantity::scaleB: return b.thetas();
        case Quantity::recipScaleA: return reciprocal(RVector(a.thetas())).entries();
        default: return reciprocal(RVector(b.thetas())).entries();
    }
}

const std::vector<TheoremSpec>& list_theorems() {
    static const std::vector<TheoremSpec> registry = build_registry();
    return registry;
}

const TheoremSpec& find_theorem(const std::string& id) {
    for (const auto& s : list_theorems())
        if (s.id == id) return s;
    throw std::out_of_range("unknown theorem id: " + id);
}

std::vector<ClauseResult> check_hypotheses(const TheoremSpec& spec, const ElsBatch& a,
                                           const ElsBatch& b) {
    if (a.n() != b.n()) throw std::invalid_argument("batches must have equal size");
    if (!(a.baseline() == b.baseline()))
        throw std::invalid_argument("batches must share one baseline");
    switch (spec.dependence) {
        case Dependence::independent:
            if (!a.independent() || !b.independent())
                throw std::invalid_argument(spec.id + " applies to independent batches");
            break;
        case Dependence::common_copula:
            if (a.independent() || b.independent() || !(*a.generator() == *b.generator()))
                throw std::invalid_argument(spec.id + " requires one common generator");
            break;
        case Dependence::two_copulas:
            if (a.independent() || b.independent())
                throw std::invalid_argument(spec.id + " requires a generator on each batch");
            break;
    }

    std::vector<ClauseResult> out;
    for (const auto c : spec.param_constraints) out.push_back(eval_param(c, a, b));
    if (spec.chain) out.push_back(eval_chain(*spec.chain, a, b));
    for (const auto& mc : spec.major_clauses) out.push_back(eval_major(mc, a, b));
    for (const auto c : spec.shape_conditions) out.push_back(eval_shape(c, a.baseline()));
    for (const auto c : spec.generator_conditions) out.push_back(eval_generator(c, a, b));
    return out;
}

nlohmann::json TheoremReport::to_json() const {
    nlohmann::json clauses = nlohmann::json::array();
    for (const auto& c : hypothesis_results) {
        nlohmann::json jc{{"clause", c.clause}, {"pass", c.pass}};
        if (c.witness) jc["witness"] = *c.witness;
        clauses.push_back(std::move(jc));
    }
    return nlohmann::json{{"id", id},
                          {"hypotheses", std::move(clauses)},
                          {"hypotheses_all_pass", hypotheses_all_pass},
                          {"conclusion", conclusion_verdict.to_json()},
                          {"consistent", consistent}};
}

TheoremReport verify(const TheoremSpec& spec, const ElsBatch& a, const ElsBatch& b,
                     const GridSpec& grid) {
    TheoremReport rep;
    rep.id = spec.id;
    rep.hypothesis_results = check_hypotheses(spec, a, b);
    rep.hypotheses_all_pass = true;
    for (const auto& c : rep.hypothesis_results) rep.hypotheses_all_pass &= c.pass;

    rep.conclusion_verdict = (spec.conclusion.relation == Relation::st) ? check_st(a, b, grid)
                                                                        : check_hr(a, b, grid);
    const Direction want = spec.conclusion.direction;
    const Direction opposite =
        (want == Direction::A_ge_B) ? Direction::B_ge_A : Direction::A_ge_B;
    const auto& v = rep.conclusion_verdict;
    const bool contradicted = (v.status == VerdictStatus::fails) ||
                              (v.status == VerdictStatus::holds && v.direction == opposite);
    rep.consistent = !(rep.hypotheses_all_pass && contradicted);
    return rep;
}

std::string bound_kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::cor31_sf_upper: return "cor31_sf_upper";
        case BoundKind::cor35_hazard_lower: return "cor35_hazard_lower";
        default: return "cor35_pareto_lower";
    }
}

nlohmann::json BoundReport::to_json() const {
    nlohmann::json pre = nlohmann::json::array();
    for (const auto& c : preconditions) {
        nlohmann::json jc{{"clause", c.clause}, {"pass", c.pass}};
        if (c.witness) jc["witness"] = *c.witness;
        pre.push_back(std::move(jc));
    }
    nlohmann::json j{{"kind", bound_kind_name(kind)},
                     {"preconditions", std::move(pre)},
                     {"preconditions_ok", preconditions_ok},
                     {"xs", xs},
                     {"bound", bound},
                     {"exact", exact},
                     {"dominates", dominates},
                     {"max_violation", max_violation}};
    if (witness)
        j["witness"] = {{"x", witness->x}, {"value_a", witness->value_a}, {"value_b", witness->value_b}};
    else
        j["witness"] = nullptr;
    return j;
}

BoundReport eval_bound(BoundKind kind, const ElsBatch& batch, const GridSpec& grid) {
    BoundReport rep;
    rep.kind = kind;
    const auto& base = batch.baseline();
    auto clause = [&](std::string name, bool pass, std::string why = "") {
        ClauseResult c{std::move(name), pass, std::nullopt};
        if (!pass && !why.empty()) c.witness = std::move(why);
        rep.preconditions.push_back(std::move(c));
    };

    const auto thetas = batch.thetas();
    const auto lambdas = batch.lambdas();
    size_t bad = 0;
    const bool common_scale = all_close(thetas, thetas[0], &bad);
    double alpha0 = 0.0;
    const bool common_shape = batch.common_alpha(&alpha0);

    clause("independent batch", batch.independent());
    if (kind == BoundKind::cor31_sf_upper) {
        clause("common scalar scale", common_scale);
        clause("common shape <= 1", common_shape && alpha0 <= 1.0 + kParamTol);
        bool asc = true;
        for (size_t i = 1; i < lambdas.size(); ++i) asc &= lambdas[i] >= lambdas[i - 1];
        clause("locations ascending", asc);
        clause("max location <= 1",
               *std::max_element(lambdas.begin(), lambdas.end()) <= 1.0 + kParamTol);
        const auto sc = eval_shape(ShapeCondition::WHazardDecreasing, base);
        rep.preconditions.push_back(sc);
    } else {
        clause("all shapes = 1", batch.all_alpha_one());
        clause("common scalar scale", common_scale);
        bool asc = true, desc = true;
        for (size_t i = 1; i < lambdas.size(); ++i) {
            asc &= lambdas[i] >= lambdas[i - 1];
            desc &= lambdas[i] <= lambdas[i - 1];
        }
        clause("locations jointly monotone", asc || desc);
        if (kind == BoundKind::cor35_hazard_lower) {
            for (const auto c : {ShapeCondition::HazardDecreasingConvex,
                                 ShapeCondition::GIncreasingConvex,
                                 ShapeCondition::GSecondDecreasing})
                rep.preconditions.push_back(eval_shape(c, base));
        } else {
            if (base.tag() != "pareto")
                throw std::invalid_argument("closed-form bound is specific to the Pareto baseline");
            const double a = base.params().front().second;
            clause("Pareto exponent in (1, 2)", a > 1.0 && a < 2.0, "a = " + fmt(a));
        }
    }
    rep.preconditions_ok = true;
    for (const auto& c : rep.preconditions) rep.preconditions_ok &= c.pass;

    const bool closed_hazard = batch.independent() && batch.all_alpha_one();
    double worst_excess = -std::numeric_limits<double>::infinity();
    for (const double x : grid.points()) {
        double exact, bnd, breach;
        if (kind == BoundKind::cor31_sf_upper) {
            exact = sf_second(batch, x);
            bnd = bound_cor31(batch, x);
            breach = exact - bnd;  // bound must sit above the exact survival
        } else {
            if (sf_second(batch, x) <= 1e-12) continue;  // hazard of an exhausted batch
            exact = closed_hazard
                        ? hazard_second_indep_unitshape(batch, x)
                        : hazard_numeric([&batch](double t) { return sf_second(batch, t); }, x);
            bnd = (kind == BoundKind::cor35_hazard_lower) ? bound_cor35(batch, x)
                                                          : bound_cor35_pareto(batch, x);
            breach = bnd - exact;  // bound must sit below the exact hazard
        }
        rep.xs.push_back(x);
        rep.exact.push_back(exact);
        rep.bound.push_back(bnd);
        const double tol = 1e-9 * (1.0 + std::abs(exact));
        const double excess = breach - tol;
        if (excess > worst_excess) {
            worst_excess = excess;
            rep.max_violation = breach;
            rep.witness = Witness{x, bnd, exact};
        }
    }
    rep.dominates = worst_excess <= 0.0;
    if (rep.dominates) rep.witness.reset();
    return rep;
}

double omega(double alpha, double t) {
    if (!(alpha > 0.0)) throw std::domain_error("omega needs alpha > 0");
    if (!(t > 0.0) || !(t < 1.0)) throw std::domain_error("omega needs 0 < t < 1");
    const double denom = -std::expm1(alpha * std::log(t));  // 1 - t^alpha
    return alpha * (1.0 - t) * std::pow(t, alpha) / denom;
}

}  // namespace ordstat
