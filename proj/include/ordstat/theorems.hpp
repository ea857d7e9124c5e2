#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ordstat/baseline.hpp"
#include "ordstat/majorize.hpp"
#include "ordstat/orderstat.hpp"
#include "ordstat/stochorder.hpp"

namespace ordstat {

enum class Dependence { independent, common_copula, two_copulas };

/** Derived parameter vectors a hypothesis clause can quantify over. */
enum class Quantity { locA, locB, scaleA, scaleB, recipScaleA, recipScaleB };

enum class MajorRel { m, w_sub, w_sup, rm };

/** rel(dominant, dominated): the dominant vector majorizes the other. */
struct MajorClause {
    MajorRel rel;
    Quantity dominant;
    Quantity dominated;
};

/**
 * Exact-to-1e-12 structural constraints between the two batches' parameters.
 */
enum class ParamConstraint {
    scale_vectors_equal,           // theta_i == delta_i componentwise
    scale_scalar_common,           // one scalar scale shared by every component of both batches
    loc_vectors_equal,             // lambda_i == mu_i componentwise
    loc_scalar_common,             // one scalar location shared by every component of both batches
    locB_scalar,                   // B's locations all equal
    scaleB_scalar,                 // B's scales all equal
    alpha_common_le1,              // all shapes equal across both batches and <= 1
    alpha_common_eq1,              // all shapes equal 1
    locA_const_half_shift_max,     // A homogeneous at max_i (1 + locB_i)/2
    locB_max_le1,                  // max of B's locations <= 1
    locB_n_times_le_sum_locA,      // n * locB scalar <= sum of A's locations
    scaleB_recip_ge_mean_recipA,   // 1/scaleB >= mean of A's reciprocal scales
    scaleB_n_times_le_sum_scaleA,  // n * scaleB scalar <= sum of A's scales
    locB_const_mean_locA,          // B's scalar location == mean of A's locations
    scaleB_const_harmonic_meanA,   // B's scalar scale == harmonic mean of A's scales
};

enum class GeneratorCondition {
    log_concave_psi,      // the (common) generator is log-concave
    log_concave_either,   // at least one of the two generators is log-concave
    sub_additive_comp,    // phi_B composed with psi_A is sub-additive
    super_additive_comp,  // phi_B composed with psi_A is super-additive
};

/** Vectors that must be jointly monotone (all ascending, or all descending). */
struct ChainRequirement {
    std::vector<Quantity> members;
    bool ascending_only = false;
};

struct Conclusion {
    Relation relation;
    Direction direction;  // A_ge_B or B_ge_A
};

/**
 * A machine-checkable ordering result: hypothesis clauses over two ELS
 * batches plus the order conclusion they are claimed to imply.
 */
struct TheoremSpec {
    std::string id;
    Dependence dependence;
    std::vector<ParamConstraint> param_constraints;
    std::optional<ChainRequirement> chain;
    std::vector<MajorClause> major_clauses;
    std::vector<ShapeCondition> shape_conditions;
    std::vector<GeneratorCondition> generator_conditions;
    Conclusion conclusion;
    std::string digest;  // one-line hypothesis summary
};

struct ClauseResult {
    std::string clause;
    bool pass;
    std::optional<std::string> witness;
};

struct TheoremReport {
    std::string id;
    std::vector<ClauseResult> hypothesis_results;
    bool hypotheses_all_pass = false;
    OrderVerdict conclusion_verdict;
    bool consistent = true;

    nlohmann::json to_json() const;
};

/** All registered results, in registry order (27 entries). */
const std::vector<TheoremSpec>& list_theorems();

/** Lookup by id; throws std::out_of_range for unknown ids. */
const TheoremSpec& find_theorem(const std::string& id);

std::string dependence_name(Dependence d);
std::string major_rel_name(MajorRel r);
std::string quantity_name(Quantity q);

/** The derived parameter vector a clause quantifies over. */
std::vector<double> quantity_values(Quantity q, const ElsBatch& a, const ElsBatch& b);

/**
 * Evaluate every hypothesis clause of a registered result against the two batches,
 * never short-circuiting: parameter equalities exact to 1e-12, chain classes,
 * majorization preorders, baseline shape conditions on the default condition
 * grid, and generator conditions.  Throws on structural mismatch (wrong
 * dependence mode, different baselines, different sizes).
 */
std::vector<ClauseResult> check_hypotheses(const TheoremSpec& spec, const ElsBatch& a,
                                           const ElsBatch& b);

/**
 * Run the hypothesis checks, then the conclusion's order check on the grid
 * regardless of the hypothesis outcome.  The report is inconsistent exactly
 * when every hypothesis passes yet the grid contradicts the claimed
 * direction.
 */
TheoremReport verify(const TheoremSpec& spec, const ElsBatch& a, const ElsBatch& b,
                     const GridSpec& grid);

enum class BoundKind { cor31_sf_upper, cor35_hazard_lower, cor35_pareto_lower };

std::string bound_kind_name(BoundKind k);

/**
 * A closed-form envelope evaluated against the exact quantity it is supposed
 * to dominate.  Precondition failures are flagged, not fatal: the curve is
 * still evaluated so a violated precondition can be seen to matter.
 */
struct BoundReport {
    BoundKind kind;
    std::vector<ClauseResult> preconditions;
    bool preconditions_ok = false;
    std::vector<double> xs;
    std::vector<double> bound;
    std::vector<double> exact;
    bool dominates = false;
    double max_violation = 0.0;  // largest signed breach of dominance
    std::optional<Witness> witness;

    nlohmann::json to_json() const;
};

BoundReport eval_bound(BoundKind kind, const ElsBatch& batch, const GridSpec& grid);

/**
 * omega(alpha, t) = alpha (1-t) t^alpha / (1 - t^alpha) for alpha > 0 and
 * 0 < t < 1; omega(1, t) = t, and for fixed alpha the values run from 0
 * (t -> 0+) to 1 (t -> 1-).  Decreasing in alpha for fixed t.
 */
double omega(double alpha, double t);

}  // namespace ordstat
