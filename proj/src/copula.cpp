#include "ordstat/copula.hpp"

#include <cmath>
#include <stdexcept>

#include "ordstat/detail/pchip.hpp"

namespace ordstat {

namespace {
constexpr double kLogConcaveSlack = 1e-9;
constexpr double kAdditivitySlack = 1e-9;
constexpr double kDMonotoneSlack = 1e-7;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

double saturate(double t) {
    if (!std::isfinite(t) || t >= kPhiSaturated) return kPhiSaturated;
    return t;
}
}  // namespace

/** Tabulated psi with exponential tail continuation beyond the table. */
struct PsiTable {
    detail::PchipTable table;
    double tail_rate;  // d/dx log psi at the right end, forced negative

    PsiTable(std::vector<double> xs_, std::vector<double> psis_) : table(std::move(xs_), std::move(psis_)) {
        require(table.xs.front() == 0.0, "tabulated_inverse: x grid must start at 0");
        require(table.ys.front() == 1.0, "tabulated_inverse: psi(0) must be 1");
        for (size_t i = 1; i < table.ys.size(); ++i)
            require(table.ys[i] < table.ys[i - 1] && table.ys[i] > 0.0,
                    "tabulated_inverse: psi values must be strictly decreasing and positive");
        const double end_deriv = table.eval_deriv(table.xs.back() * (1.0 - 1e-12));
        tail_rate = std::min(end_deriv / table.ys.back(), -1e-12);
    }

    double eval(double x) const {
        if (x <= 0.0) return 1.0;
        if (x >= table.xs.back()) return table.ys.back() * std::exp(tail_rate * (x - table.xs.back()));
        return table.eval(x);
    }
};

Generator Generator::independence() {
    return Generator(IndependenceG{}, "independence");
}
Generator Generator::gumbel_frailty(double a) {
    require(a > 0.0 && a <= 1.0, "gumbel_frailty: need 0 < a <= 1");
    return Generator(GumbelFrailtyG{a}, "gumbel_frailty");
}
Generator Generator::gumbel_hougaard(double a) {
    require(a >= 1.0, "gumbel_hougaard: need a >= 1");
    return Generator(GumbelHougaardG{a}, "gumbel_hougaard");
}
Generator Generator::clayton(double c) {
    require(c > 0.0, "clayton: need c > 0");
    return Generator(ClaytonG{c}, "clayton");
}
Generator Generator::tabulated_inverse(std::vector<double> xs, std::vector<double> psis) {
    auto table = std::make_shared<const PsiTable>(std::move(xs), std::move(psis));
    return Generator(TabulatedInvG{std::move(table)}, "tabulated_inverse");
}

double Generator::psi(double x) const {
    if (x < 0.0) throw std::domain_error("psi: x must be nonnegative");
    if (phi_is_saturated(x)) return 0.0;
    return std::visit(
        [x](const auto& g) -> double {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, IndependenceG>) {
                return std::exp(-x);
            } else if constexpr (std::is_same_v<T, GumbelFrailtyG>) {
                return std::exp(-std::expm1(x) / g.a);
            } else if constexpr (std::is_same_v<T, GumbelHougaardG>) {
                return std::exp(-std::pow(x, 1.0 / g.a));
            } else if constexpr (std::is_same_v<T, ClaytonG>) {
                return std::exp(-std::log1p(g.c * x) / g.c);
            } else {
                return g.table->eval(x);
            }
        },
        v_);
}

double Generator::phi(double v) const {
    if (v < 0.0 || v > 1.0) throw std::domain_error("phi: v must lie in [0, 1]");
    if (v == 0.0) return kPhiSaturated;
    if (v >= 1.0) return 0.0;
    return std::visit(
        [v, this](const auto& g) -> double {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, IndependenceG>) {
                return saturate(-std::log(v));
            } else if constexpr (std::is_same_v<T, GumbelFrailtyG>) {
                return saturate(std::log1p(-g.a * std::log(v)));
            } else if constexpr (std::is_same_v<T, GumbelHougaardG>) {
                return saturate(std::pow(-std::log(v), g.a));
            } else if constexpr (std::is_same_v<T, ClaytonG>) {
                // (v^-c - 1)/c, via logs to dodge overflow of v^-c
                const double t = -g.c * std::log(v);
                if (t > 700.0) return kPhiSaturated;
                return saturate(std::expm1(t) / g.c);
            } else {
                // bisection on psi with geometric bracket expansion
                double hi = g.table->table.xs.back();
                while (psi(hi) > v) {
                    hi *= 2.0;
                    if (hi > 1e12) return kPhiSaturated;
                }
                double lo = 0.0;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (psi(mid) > v)
                        lo = mid;
                    else
                        hi = mid;
                    if (hi - lo <= 1e-15 * (1.0 + hi)) break;
                }
                return 0.5 * (lo + hi);
            }
        },
        v_);
}

const std::string& Generator::tag() const {
    return tag_;
}

std::vector<std::pair<std::string, double>> Generator::params() const {
    return std::visit(
        [](const auto& g) -> std::vector<std::pair<std::string, double>> {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, GumbelFrailtyG> || std::is_same_v<T, GumbelHougaardG>) {
                return {{"a", g.a}};
            } else if constexpr (std::is_same_v<T, ClaytonG>) {
                return {{"c", g.c}};
            } else if constexpr (std::is_same_v<T, TabulatedInvG>) {
                return {{"points", static_cast<double>(g.table->table.xs.size())}};
            } else {
                return {};
            }
        },
        v_);
}

bool Generator::operator==(const Generator& other) const {
    if (tag_ != other.tag_) return false;
    if (const auto* ta = std::get_if<TabulatedInvG>(&v_)) {
        const auto* tb = std::get_if<TabulatedInvG>(&other.v_);
        return tb && ta->table->table.xs == tb->table->table.xs && ta->table->table.ys == tb->table->table.ys;
    }
    return params() == other.params();
}

GenCheck check_log_concave(const Generator& gen, const std::vector<double>& grid) {
    require(grid.size() >= 32, "check_log_concave: grid must have at least 32 points");
    require(grid.front() > 0.0, "check_log_concave: grid must lie in (0, x_hi]");
    for (size_t i = 1; i < grid.size(); ++i)
        require(grid[i] > grid[i - 1], "check_log_concave: grid must be increasing");
    require(gen.psi(grid.back()) > 1e-12, "check_log_concave: psi underflows on the grid");

    auto logpsi = [&gen](double x) { return std::log(gen.psi(x)); };
    for (size_t i = 0; i + 2 < grid.size(); ++i) {
        const double m = 0.5 * (grid[i] + grid[i + 2]);
        const double second = logpsi(grid[i]) - 2.0 * logpsi(m) + logpsi(grid[i + 2]);
        if (second > 2.0 * kLogConcaveSlack) return {false, m, std::nullopt};
    }
    return {true, std::nullopt, std::nullopt};
}

std::vector<double> default_log_concavity_grid(const Generator& gen) {
    const double x_hi = gen.phi(1e-6);
    const int n = 128;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[static_cast<size_t>(i)] = x_hi * static_cast<double>(i + 1) / n;
    return grid;
}

GenCheck check_additivity(const Generator& outer, const Generator& inner, AdditivityMode mode,
                          const std::vector<std::pair<double, double>>& pairs) {
    require(pairs.size() >= 64, "check_additivity: need at least 64 pairs");
    auto comp = [&](double t) {
        const double f = outer.phi(inner.psi(t));
        if (phi_is_saturated(f)) throw std::domain_error("check_additivity: composition saturated on the grid");
        return f;
    };
    for (const auto& [x, y] : pairs) {
        require(x >= 0.0 && y >= 0.0, "check_additivity: pairs must be nonnegative");
        const double fx = comp(x), fy = comp(y), fxy = comp(x + y);
        const double slack = kAdditivitySlack * (1.0 + std::abs(fx) + std::abs(fy) + std::abs(fxy));
        const double excess = fxy - fx - fy;  // positive favors super-additivity
        if (mode == AdditivityMode::super ? (excess < -slack) : (excess > slack))
            return {false, std::nullopt, std::make_pair(x, y)};
    }
    return {true, std::nullopt, std::nullopt};
}

std::vector<std::pair<double, double>> default_additivity_grid(const Generator& inner) {
    const double x_hi = inner.phi(1e-6);
    const int levels = 16;
    std::vector<double> xs(levels);
    for (int i = 0; i < levels; ++i) xs[static_cast<size_t>(i)] = x_hi * static_cast<double>(i) / (levels - 1);
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < levels; ++i)
        for (int j = i; j < levels; ++j)
            if (xs[static_cast<size_t>(i)] + xs[static_cast<size_t>(j)] <= x_hi * (1.0 + 1e-12))
                pairs.emplace_back(xs[static_cast<size_t>(i)], xs[static_cast<size_t>(j)]);
    return pairs;
}

GenCheck check_d_monotone(const Generator& gen, int order, double x_hi, int points) {
    require(order >= 1 && order <= 3, "check_d_monotone: order must be 1..3");
    require(x_hi > 0.0 && points >= 8, "check_d_monotone: need x_hi > 0 and points >= 8");
    const double h = x_hi / (4.0 * points);
    for (int k = 1; k <= order; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i < points; ++i) {
            const double x = x_hi * static_cast<double>(i) / points;
            // forward difference delta^k psi(x)
            double acc = 0.0;
            double binom = 1.0;
            for (int j = 0; j <= k; ++j) {
                const double term = binom * gen.psi(x + j * h);
                acc += ((k - j) % 2 == 0) ? term : -term;
                binom = binom * (k - j) / (j + 1.0);
            }
            if (sign * acc < -kDMonotoneSlack) return {false, x, std::nullopt};
        }
    }
    return {true, std::nullopt, std::nullopt};
}

}  // namespace ordstat
