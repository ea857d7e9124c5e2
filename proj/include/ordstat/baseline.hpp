#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ordstat {

/**
 * Closed set of baseline distribution families used as the parent CDF of the
 * exponentiated location-scale model.  Each family exposes the CDF F_b, the
 * density f_b, the hazard rate r_b = f_b/(1-F_b), the reversed hazard rate
 * r~_b = f_b/F_b, the odds ratio g = F_b/(1-F_b) = r_b/r~_b, the quantile
 * function, and (for the analytic families) exact first derivatives of r_b
 * and g via the log-density derivative l(x) = f'(x)/f(x):
 *
 *     r_b' = r_b * (l + r_b),   g' = r_b/(1-F_b),   g'' = (r_b' + r_b^2)/(1-F_b).
 *
 * Families and supports:
 *   pareto(a):       F(x) = 1 - x^-a,                 x >= 1
 *   burr(c,k):       F(x) = 1 - (1+x^c)^-k,           x >= 0
 *   pgw(c,k):        F(x) = 1 - exp(1-(1+x^c)^(1/k)), x >= 0
 *   expweibull(d,c): F(x) = (1-exp(-x^d))^c,          x >= 0
 *   truncweibull(a): F(x) = 1 - exp(1-x^a),           x >= 1
 *   ratio:           F(x) = (x-1)/(x+1),              x >= 1
 *   tabulated:       monotone piecewise-cubic interpolation of (x, F) pairs
 *
 * The tabulated family has no analytic log-density derivative; operations
 * that need r_b' or g'' report it as unsupported.
 */
class BaselineFamily {
  public:
    static BaselineFamily pareto(double a);
    static BaselineFamily burr(double c, double k);
    static BaselineFamily pgw(double c, double k);
    static BaselineFamily expweibull(double d, double c);
    static BaselineFamily truncweibull(double a);
    static BaselineFamily ratio();
    static BaselineFamily tabulated(std::vector<double> xs, std::vector<double> Fs);

    /** F_b(x); 0 for x <= support_lo, approaches 1 as x -> inf. */
    double cdf(double x) const;
    /** 1 - F_b(x), computed without cancellation in the upper tail. */
    double sf(double x) const;
    /** Density f_b(x); 0 outside the support interior. */
    double pdf(double x) const;
    /** Hazard rate r_b(x) = f_b/(1-F_b); 0 for x <= support_lo. */
    double hazard(double x) const;
    /** Reversed hazard rate r~_b = f_b/F_b; domain error at F_b(x) = 0. */
    double reversed_hazard(double x) const;
    /** Odds ratio g(x) = r_b/r~_b = F_b/(1-F_b); 0 at the lower support edge. */
    double g_ratio(double x) const;

    /** d/dx r_b(x) from the analytic log-density derivative; unsupported for tabulated. */
    double hazard_prime(double x) const;
    /** g'(x) = f_b/(1-F_b)^2; available for every family (pointwise density). */
    double g_prime(double x) const;
    /** g''(x) = (r_b' + r_b^2)/(1-F_b); unsupported for tabulated. */
    double g_second(double x) const;

    /** Quantile function: smallest x with F_b(x) >= p, for p in [0, 1). */
    double inv_cdf(double p) const;

    /** Lowest point of the support (F_b = 0 at and below it). */
    double support_lo() const;
    /** False for the tabulated family (no analytic f'/f). */
    bool has_derivatives() const;

    /** Scenario-file tag: "pareto", "burr", "pgw", "expweibull", "truncweibull", "ratio", "tabulated". */
    const std::string& tag() const;
    /** Named parameters, for display and structural equality. */
    std::vector<std::pair<std::string, double>> params() const;

    bool operator==(const BaselineFamily& other) const;

  private:
    struct ParetoF {
        double a;
    };
    struct BurrF {
        double c, k;
    };
    struct PgwF {
        double c, k;
    };
    struct ExpWeibullF {
        double d, c;
    };
    struct TruncWeibullF {
        double a;
    };
    struct RatioF {};
    struct TabulatedF {
        std::shared_ptr<const struct TabulatedData> data;
    };
    using Variant = std::variant<ParetoF, BurrF, PgwF, ExpWeibullF, TruncWeibullF, RatioF, TabulatedF>;

    explicit BaselineFamily(Variant v, std::string tag) : v_(std::move(v)), tag_(std::move(tag)) {}

    /** f'(x)/f(x) for the analytic families; throws for tabulated. */
    double log_density_deriv(double x) const;

    Variant v_;
    std::string tag_;
};

/**
 * Shape hypotheses on the baseline, named by the composite function they
 * constrain.  "W" prefixes denote multiplication by the abscissa w, "G" the
 * odds ratio g = F_b/(1-F_b); the trailing word is the required property.
 */
enum class ShapeCondition {
    HazardDecreasing,         // r_b(w) decreasing
    WHazardDecreasing,        // w * r_b(w) decreasing
    W2HazardDecreasing,       // w^2 * r_b(w) decreasing
    HazardDecreasingConvex,   // r_b(w) decreasing and convex
    W2HazardPrimeIncreasing,  // w^2 * r_b'(w) increasing
    GIncreasingConvex,        // g(w) increasing and convex
    GSecondDecreasing,        // g''(w) decreasing
    W2GSecondDecreasing,      // w^2 * g''(w) decreasing
    WHazardIncreasingConcave, // w * r_b(w) increasing and concave
    GIncreasingConcave,       // g(w) increasing and concave
    WGPrimeConvex,            // w * g'(w) convex
};

const char* shape_condition_name(ShapeCondition c);

struct ShapeCheck {
    bool satisfied = false;
    std::optional<double> witness;  // abscissa of the first violation
};

/**
 * Grid check of a shape condition.  Monotonicity is tested through adjacent
 * differences with additive slack 1e-9; convexity/concavity through central
 * second differences f(x_i) - 2 f(m) + f(x_{i+2}) at pair midpoints
 * m = (x_i + x_{i+2})/2, same slack.  The grid must have at least 32 points,
 * all strictly above the family's support_lo.
 */
ShapeCheck check_shape(const BaselineFamily& family, ShapeCondition cond, const std::vector<double>& grid);

/** Default condition-check grid: 128 log-spaced points on (support_lo + 1e-6, support_lo + 50). */
std::vector<double> default_condition_grid(const BaselineFamily& family);

}  // namespace ordstat
