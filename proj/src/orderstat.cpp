#include "ordstat/orderstat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ordstat {

namespace {

constexpr double kSfClampSlack = 1e-12;

double clamp01(double v) {
    if (!std::isfinite(v)) throw std::runtime_error("survival evaluation produced a non-finite value");
    if (v < 0.0) {
        if (v < -kSfClampSlack) throw std::runtime_error("survival evaluation fell below 0 beyond slack");
        return 0.0;
    }
    if (v > 1.0) {
        if (v > 1.0 + kSfClampSlack) throw std::runtime_error("survival evaluation rose above 1 beyond slack");
        return 1.0;
    }
    return v;
}

}  // namespace

ElsMarginal::ElsMarginal(double lambda_, double theta_, double alpha_, BaselineFamily baseline_)
    : lambda(lambda_), theta(theta_), alpha(alpha_), baseline(std::move(baseline_)) {
    if (!std::isfinite(lambda) || !std::isfinite(theta) || !std::isfinite(alpha))
        throw std::invalid_argument("ELS parameters must be finite");
    if (theta <= 0.0) throw std::invalid_argument("scale parameter must be positive");
    if (alpha <= 0.0) throw std::invalid_argument("shape parameter must be positive");
}

ElsBatch::ElsBatch(std::vector<ElsMarginal> marginals, std::optional<Generator> generator)
    : marginals_(std::move(marginals)), generator_(std::move(generator)) {
    if (marginals_.size() < 2) throw std::invalid_argument("a batch needs at least 2 components");
    for (size_t i = 1; i < marginals_.size(); ++i) {
        if (!(marginals_[i].baseline == marginals_.front().baseline))
            throw std::invalid_argument("all components of a batch must share one baseline");
    }
}

ElsBatch ElsBatch::make(const BaselineFamily& baseline, const std::vector<double>& lambdas,
                        const std::vector<double>& thetas, const std::vector<double>& alphas,
                        std::optional<Generator> generator) {
    const size_t n = lambdas.size();
    if (thetas.size() != n || alphas.size() != n)
        throw std::invalid_argument("parameter vectors must have equal length");
    std::vector<ElsMarginal> ms;
    ms.reserve(n);
    for (size_t i = 0; i < n; ++i) ms.emplace_back(lambdas[i], thetas[i], alphas[i], baseline);
    return ElsBatch(std::move(ms), std::move(generator));
}

std::vector<double> ElsBatch::lambdas() const {
    std::vector<double> v;
    v.reserve(n());
    for (const auto& m : marginals_) v.push_back(m.lambda);
    return v;
}

std::vector<double> ElsBatch::thetas() const {
    std::vector<double> v;
    v.reserve(n());
    for (const auto& m : marginals_) v.push_back(m.theta);
    return v;
}

std::vector<double> ElsBatch::alphas() const {
    std::vector<double> v;
    v.reserve(n());
    for (const auto& m : marginals_) v.push_back(m.alpha);
    return v;
}

double ElsBatch::max_lambda() const {
    double m = marginals_.front().lambda;
    for (const auto& comp : marginals_) m = std::max(m, comp.lambda);
    return m;
}

bool ElsBatch::common_alpha(double* value) const {
    const double a = marginals_.front().alpha;
    for (const auto& m : marginals_)
        if (m.alpha != a) return false;
    if (value) *value = a;
    return true;
}

bool ElsBatch::all_alpha_one() const {
    for (const auto& m : marginals_)
        if (m.alpha != 1.0) return false;
    return true;
}

double marginal_cdf(const ElsMarginal& m, double x) {
    if (x <= m.lambda) return 0.0;
    const double w = (x - m.lambda) / m.theta;
    const double fb = m.baseline.cdf(w);
    if (fb <= 0.0) return 0.0;
    if (fb >= 1.0) return 1.0;
    return std::exp(m.alpha * std::log(fb));
}

double marginal_sf(const ElsMarginal& m, double x) {
    if (x <= m.lambda) return 1.0;
    const double w = (x - m.lambda) / m.theta;
    const double fb = m.baseline.cdf(w);
    if (fb <= 0.0) return 1.0;
    if (fb >= 1.0) return 0.0;
    return -std::expm1(m.alpha * std::log(fb));
}

double sf_second_indep(const ElsBatch& batch, double x) {
    const size_t n = batch.n();
    std::vector<double> sf(n);
    for (size_t i = 0; i < n; ++i) sf[i] = marginal_sf(batch.marginals()[i], x);

    if (n <= 8) {
        // Leave-one-out products via prefix/suffix, avoiding division so a
        // zero survival cannot poison its own leave-out term.
        std::vector<double> prefix(n + 1, 1.0), suffix(n + 1, 1.0);
        for (size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] * sf[i];
        for (size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] * sf[i];
        double acc = 0.0;
        for (size_t l = 0; l < n; ++l) acc += prefix[l] * suffix[l + 1];
        acc -= static_cast<double>(n - 1) * prefix[n];
        return clamp01(acc);
    }

    // Large batches: accumulate log survivals and factor out the dominant
    // leave-one-out term so underflow cannot erase the result.
    std::vector<double> logs(n);
    size_t zeros = 0;
    size_t zero_idx = 0;
    for (size_t i = 0; i < n; ++i) {
        if (sf[i] <= 0.0) {
            ++zeros;
            zero_idx = i;
            logs[i] = -std::numeric_limits<double>::infinity();
        } else {
            logs[i] = std::log(sf[i]);
        }
    }
    if (zeros >= 2) return 0.0;
    if (zeros == 1) {
        double lsum = 0.0;
        for (size_t i = 0; i < n; ++i)
            if (i != zero_idx) lsum += logs[i];
        return clamp01(std::exp(lsum));
    }
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) total += logs[i];
    // Leave-one-out log products: total - logs[l]; the max corresponds to the
    // smallest marginal survival.
    double lmax = -std::numeric_limits<double>::infinity();
    for (size_t l = 0; l < n; ++l) lmax = std::max(lmax, total - logs[l]);
    if (!std::isfinite(lmax)) return 0.0;
    double acc = 0.0;
    for (size_t l = 0; l < n; ++l) acc += std::exp(total - logs[l] - lmax);
    acc -= static_cast<double>(n - 1) * std::exp(total - lmax);
    return clamp01(std::exp(lmax) * acc);
}

double sf_second_dep(const ElsBatch& batch, double x) {
    if (batch.independent()) throw std::logic_error("sf_second_dep requires a generator");
    const Generator& gen = *batch.generator();
    const size_t n = batch.n();
    std::vector<double> t(n);
    size_t saturated = 0;
    size_t sat_idx = 0;
    for (size_t i = 0; i < n; ++i) {
        t[i] = gen.phi(marginal_sf(batch.marginals()[i], x));
        if (phi_is_saturated(t[i])) {
            ++saturated;
            sat_idx = i;
        }
    }
    if (saturated >= 2) return 0.0;
    if (saturated == 1) {
        // Exactly one dead component: every term containing it vanishes and
        // the sum collapses to the survival of the remaining n-1 together.
        double rest = 0.0;
        for (size_t i = 0; i < n; ++i)
            if (i != sat_idx) rest += t[i];
        return clamp01(gen.psi(rest));
    }
    // Direct per-l inner sums: O(n^2) but free of the catastrophic
    // cancellation a total-minus-one-term shortcut suffers when one phi
    // value dwarfs the rest.
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) total += t[i];
    double acc = 0.0;
    for (size_t l = 0; l < n; ++l) {
        double inner = 0.0;
        for (size_t k = 0; k < n; ++k)
            if (k != l) inner += t[k];
        acc += gen.psi(inner);
    }
    acc -= static_cast<double>(n - 1) * gen.psi(total);
    return clamp01(acc);
}

double sf_second(const ElsBatch& batch, double x) {
    return batch.independent() ? sf_second_indep(batch, x) : sf_second_dep(batch, x);
}

double hazard_second_indep_unitshape(const ElsBatch& batch, double x) {
    if (!batch.independent())
        throw std::invalid_argument("closed-form hazard requires an independent batch");
    if (!batch.all_alpha_one())
        throw std::invalid_argument("closed-form hazard requires every shape parameter equal to 1");
    const size_t n = batch.n();
    const BaselineFamily& base = batch.baseline();
    double sum_r = 0.0;     // sum_i r_b(w_i)/theta_i
    double sum_gp = 0.0;    // sum_i g'(w_i)/theta_i
    double sum_g = 0.0;     // sum_i g(w_i)
    double max_g = 0.0;
    size_t imax = 0;
    std::vector<double> r(n), w(n);
    for (size_t i = 0; i < n; ++i) {
        const auto& m = batch.marginals()[i];
        w[i] = (x - m.lambda) / m.theta;
        r[i] = base.hazard(w[i]);
        const double g = base.g_ratio(w[i]);
        sum_r += r[i] / m.theta;
        sum_g += g;
        sum_gp += base.g_prime(w[i]) / m.theta;
        if (g >= max_g) {
            max_g = g;
            imax = i;
        }
    }
    if (!std::isfinite(sum_g) || max_g > 1e12) {
        // Deep in the tail g' / (sum g + 1) -> r of the component whose g
        // dominates; evaluating the ratio directly would be inf/inf.
        return sum_r - r[imax] / batch.marginals()[imax].theta;
    }
    return sum_r - sum_gp / (sum_g + 1.0);
}

double hazard_numeric(const std::function<double(double)>& sf, double x, double h) {
    if (h <= 0.0) h = 1e-5 * std::max(1.0, std::abs(x));
    const double lo = sf(x + h);
    const double hi = sf(x - h);
    if (!(lo > 1e-12) || !(hi > 1e-12))
        throw std::domain_error("numeric hazard needs survival above 1e-12 at the stencil");
    return -(std::log(lo) - std::log(hi)) / (2.0 * h);
}

double bound_cor31(const ElsBatch& batch, double x) {
    const size_t n = batch.n();
    double mu_m = -std::numeric_limits<double>::infinity();
    for (const auto& m : batch.marginals()) mu_m = std::max(mu_m, 0.5 * (1.0 + m.lambda));
    const double theta = batch.marginals().front().theta;
    const double alpha = batch.marginals().front().alpha;
    ElsMarginal homog(mu_m, theta, alpha, batch.baseline());
    const double s = marginal_sf(homog, x);
    // Homogeneous second order statistic: n s^{n-1} - (n-1) s^n.
    const double val = static_cast<double>(n) * std::pow(s, static_cast<double>(n - 1)) -
                       static_cast<double>(n - 1) * std::pow(s, static_cast<double>(n));
    return clamp01(val);
}

double bound_cor35(const ElsBatch& batch, double x) {
    const size_t n = batch.n();
    double mean = 0.0;
    for (const auto& m : batch.marginals()) mean += m.lambda;
    mean /= static_cast<double>(n);
    const double theta = batch.marginals().front().theta;
    std::vector<ElsMarginal> ms;
    ms.reserve(n);
    for (size_t i = 0; i < n; ++i) ms.emplace_back(mean, theta, 1.0, batch.baseline());
    return hazard_second_indep_unitshape(ElsBatch(std::move(ms)), x);
}

double bound_cor35_pareto(const ElsBatch& batch, double x) {
    if (batch.baseline().tag() != "pareto")
        throw std::invalid_argument("closed-form bound is specific to the Pareto baseline");
    const double a = batch.baseline().params().front().second;
    const auto nd = static_cast<double>(batch.n());
    double mean = 0.0;
    for (const auto& m : batch.marginals()) mean += m.lambda;
    mean /= nd;
    const double theta = batch.marginals().front().theta;
    const double w = (x - mean) / theta;
    if (w <= 1.0) return 0.0;
    const double wa = std::pow(w, a);
    return nd * a * (nd - 1.0) * (wa - 1.0) / (theta * w * (nd * wa - nd + 1.0));
}

GridSpec default_comparison_grid(const ElsBatch& a, const ElsBatch& b, int n) {
    const double lo = std::max(a.max_lambda(), b.max_lambda()) + 1e-3;
    auto worst_sf = [&](double x) { return std::max(sf_second(a, x), sf_second(b, x)); };
    constexpr double kTailLevel = 1e-4;
    double hi = lo + 1.0;
    int guard = 0;
    while (worst_sf(hi) > kTailLevel && guard++ < 200) {
        hi = lo + (hi - lo) * 2.0;
        if (hi > 1e15) break;
    }
    double left = lo, right = hi;
    if (worst_sf(right) <= kTailLevel) {
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (left + right);
            (worst_sf(mid) > kTailLevel ? left : right) = mid;
        }
    }
    return GridSpec{lo, right, n};
}

}  // namespace ordstat
