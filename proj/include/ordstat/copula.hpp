#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ordstat {

/**
 * Sentinel standing for phi(0+) = +inf.  Any phi result at or above half this
 * value is treated as saturated; psi of a saturated argument is exactly 0.
 * Callers that sum phi values must detect saturation (phi_is_saturated)
 * instead of adding sentinels, which would overflow.
 */
inline constexpr double kPhiSaturated = 1e308;

inline bool phi_is_saturated(double t) {
    return t >= 0.5 * kPhiSaturated;
}

/**
 * Archimedean generator psi with inverse phi.  Variants:
 *   independence:      psi(x) = exp(-x)
 *   gumbel_frailty(a): psi(x) = exp((1 - e^x)/a),  0 < a <= 1  (log-concave)
 *   gumbel_hougaard(a):psi(x) = exp(-x^(1/a)),     a >= 1      (log-convex for a > 1)
 *   clayton(c):        psi(x) = (1 + c x)^(-1/c),  c > 0       (log-convex)
 *   tabulated_inverse: psi interpolated from a table; phi by bisection with
 *                      geometric bracket expansion
 *
 * psi is nonincreasing with psi(0) = 1 and psi(x) -> 0; phi(1) = 0 and
 * phi(0+) saturates to kPhiSaturated.
 */
class Generator {
  public:
    static Generator independence();
    static Generator gumbel_frailty(double a);
    static Generator gumbel_hougaard(double a);
    static Generator clayton(double c);
    static Generator tabulated_inverse(std::vector<double> xs, std::vector<double> psis);

    /** psi(x) for x >= 0; exactly 0 for saturated x. */
    double psi(double x) const;
    /** phi(v) for v in [0, 1]; v = 0 yields kPhiSaturated; v outside [0, 1] is rejected. */
    double phi(double v) const;

    const std::string& tag() const;
    std::vector<std::pair<std::string, double>> params() const;
    bool operator==(const Generator& other) const;

  private:
    struct IndependenceG {};
    struct GumbelFrailtyG {
        double a;
    };
    struct GumbelHougaardG {
        double a;
    };
    struct ClaytonG {
        double c;
    };
    struct TabulatedInvG {
        std::shared_ptr<const struct PsiTable> table;
    };
    using Variant = std::variant<IndependenceG, GumbelFrailtyG, GumbelHougaardG, ClaytonG, TabulatedInvG>;

    explicit Generator(Variant v, std::string tag) : v_(std::move(v)), tag_(std::move(tag)) {}

    Variant v_;
    std::string tag_;
};

struct GenCheck {
    bool satisfied = false;
    std::optional<double> witness_x;                        // abscissa of a single-variable violation
    std::optional<std::pair<double, double>> witness_pair;  // (x, y) of an additivity violation
};

/**
 * Concavity of log psi via central second differences at grid-pair midpoints,
 * additive slack 1e-9.  The grid needs >= 32 increasing points in (0, x_hi]
 * with psi(x_hi) > 1e-12.
 */
GenCheck check_log_concave(const Generator& gen, const std::vector<double>& grid);

/** Default log-concavity grid: 128 uniform points on (0, phi(1e-6)]. */
std::vector<double> default_log_concavity_grid(const Generator& gen);

enum class AdditivityMode { sub, super };

/**
 * Checks sub-/super-additivity of f = phi_outer(psi_inner(.)) on a grid of
 * nonnegative pairs: super requires f(x+y) >= f(x) + f(y) - slack, sub the
 * reverse, with slack 1e-9 * (1 + |f(x)| + |f(y)| + |f(x+y)|).  Throws if any
 * evaluation saturates (the pair grid must keep psi_inner above ~1e-6).
 */
GenCheck check_additivity(const Generator& outer, const Generator& inner, AdditivityMode mode,
                          const std::vector<std::pair<double, double>>& pairs);

/**
 * Default triangular additivity grid: levels 0 = x_0 < ... < x_15 = x_hi with
 * psi_inner(x_hi) = 1e-6, all pairs (x_i, x_j), i <= j, with x_i + x_j <= x_hi
 * (72 pairs, corners included).
 */
std::vector<std::pair<double, double>> default_additivity_grid(const Generator& inner);

/**
 * Finite-difference spot check of d-monotonicity: (-1)^k * delta^k psi >= -1e-7
 * for k = 1..order (order <= 3) on a uniform grid over [0, x_hi].
 */
GenCheck check_d_monotone(const Generator& gen, int order, double x_hi, int points = 64);

}  // namespace ordstat
