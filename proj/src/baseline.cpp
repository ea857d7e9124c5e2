#include "ordstat/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "ordstat/detail/pchip.hpp"
#include "ordstat/grid.hpp"

namespace ordstat {

namespace {
constexpr double kShapeSlack = 1e-9;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

/** Monotone piecewise-cubic (Fritsch-Carlson) interpolant of a CDF table. */
struct TabulatedData {
    detail::PchipTable table;

    TabulatedData(std::vector<double> xs_, std::vector<double> Fs_) : table(std::move(xs_), std::move(Fs_)) {
        for (size_t i = 1; i < table.ys.size(); ++i)
            require(table.ys[i] > table.ys[i - 1], "tabulated: F values must be strictly increasing");
        require(table.ys.front() == 0.0, "tabulated: first F value must be 0");
        require(table.ys.back() <= 1.0, "tabulated: F values must not exceed 1");
    }

    const std::vector<double>& xs() const { return table.xs; }
    const std::vector<double>& Fs() const { return table.ys; }

    double eval(double x) const { return table.eval(x); }
    double eval_deriv(double x) const { return table.eval_deriv(x); }

    double invert(double p) const {
        if (p <= 0.0) return xs().front();
        if (p >= Fs().back()) return xs().back();
        double lo = xs().front(), hi = xs().back();
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (eval(mid) < p)
                lo = mid;
            else
                hi = mid;
            if (hi - lo <= 1e-15 * (1.0 + std::abs(hi))) break;
        }
        return 0.5 * (lo + hi);
    }
};

BaselineFamily BaselineFamily::pareto(double a) {
    require(a > 0.0, "pareto: a must be positive");
    return BaselineFamily(ParetoF{a}, "pareto");
}
BaselineFamily BaselineFamily::burr(double c, double k) {
    require(c > 0.0 && k > 0.0, "burr: c and k must be positive");
    return BaselineFamily(BurrF{c, k}, "burr");
}
BaselineFamily BaselineFamily::pgw(double c, double k) {
    require(c > 0.0 && k > 0.0, "pgw: c and k must be positive");
    return BaselineFamily(PgwF{c, k}, "pgw");
}
BaselineFamily BaselineFamily::expweibull(double d, double c) {
    require(d > 0.0 && c > 0.0, "expweibull: d and c must be positive");
    return BaselineFamily(ExpWeibullF{d, c}, "expweibull");
}
BaselineFamily BaselineFamily::truncweibull(double a) {
    require(a > 0.0, "truncweibull: a must be positive");
    return BaselineFamily(TruncWeibullF{a}, "truncweibull");
}
BaselineFamily BaselineFamily::ratio() {
    return BaselineFamily(RatioF{}, "ratio");
}
BaselineFamily BaselineFamily::tabulated(std::vector<double> xs, std::vector<double> Fs) {
    auto data = std::make_shared<const TabulatedData>(std::move(xs), std::move(Fs));
    return BaselineFamily(TabulatedF{std::move(data)}, "tabulated");
}

double BaselineFamily::support_lo() const {
    return std::visit(
        [](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ParetoF> || std::is_same_v<T, TruncWeibullF> || std::is_same_v<T, RatioF>)
                return 1.0;
            else if constexpr (std::is_same_v<T, TabulatedF>)
                return f.data->xs().front();
            else
                return 0.0;
        },
        v_);
}

bool BaselineFamily::has_derivatives() const {
    return !std::holds_alternative<TabulatedF>(v_);
}

namespace {

// log(1 - exp(-t)) for t > 0 without losing precision at either end.
double log1mexp(double t) {
    constexpr double kLn2 = 0.6931471805599453;
    return t > kLn2 ? std::log1p(-std::exp(-t)) : std::log(-std::expm1(-t));
}

}  // namespace

double BaselineFamily::cdf(double x) const {
    if (x <= support_lo()) return 0.0;
    return std::visit(
        [x](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ParetoF>) {
                return -std::expm1(-f.a * std::log(x));
            } else if constexpr (std::is_same_v<T, BurrF>) {
                return -std::expm1(-f.k * std::log1p(std::pow(x, f.c)));
            } else if constexpr (std::is_same_v<T, PgwF>) {
                return -std::expm1(1.0 - std::pow(1.0 + std::pow(x, f.c), 1.0 / f.k));
            } else if constexpr (std::is_same_v<T, ExpWeibullF>) {
                return std::exp(f.c * log1mexp(std::pow(x, f.d)));
            } else if constexpr (std::is_same_v<T, TruncWeibullF>) {
                return -std::expm1(1.0 - std::pow(x, f.a));
            } else if constexpr (std::is_same_v<T, RatioF>) {
                return (x - 1.0) / (x + 1.0);
            } else {
                return f.data->eval(x);
            }
        },
        v_);
}

double BaselineFamily::sf(double x) const {
    if (x <= support_lo()) return 1.0;
    return std::visit(
        [x, this](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ParetoF>) {
                return std::exp(-f.a * std::log(x));
            } else if constexpr (std::is_same_v<T, BurrF>) {
                return std::exp(-f.k * std::log1p(std::pow(x, f.c)));
            } else if constexpr (std::is_same_v<T, PgwF>) {
                return std::exp(1.0 - std::pow(1.0 + std::pow(x, f.c), 1.0 / f.k));
            } else if constexpr (std::is_same_v<T, ExpWeibullF>) {
                return -std::expm1(f.c * log1mexp(std::pow(x, f.d)));
            } else if constexpr (std::is_same_v<T, TruncWeibullF>) {
                return std::exp(1.0 - std::pow(x, f.a));
            } else if constexpr (std::is_same_v<T, RatioF>) {
                return 2.0 / (x + 1.0);
            } else {
                return 1.0 - cdf(x);
            }
        },
        v_);
}

double BaselineFamily::pdf(double x) const {
    if (x < support_lo()) return 0.0;
    return std::visit(
        [x](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ParetoF>) {
                return f.a * std::pow(x, -f.a - 1.0);
            } else if constexpr (std::is_same_v<T, BurrF>) {
                return f.c * f.k * std::pow(x, f.c - 1.0) * std::exp(-(f.k + 1.0) * std::log1p(std::pow(x, f.c)));
            } else if constexpr (std::is_same_v<T, PgwF>) {
                const double u = std::pow(x, f.c);
                const double r = (f.c / f.k) * std::pow(x, f.c - 1.0) * std::pow(1.0 + u, 1.0 / f.k - 1.0);
                return r * std::exp(1.0 - std::pow(1.0 + u, 1.0 / f.k));
            } else if constexpr (std::is_same_v<T, ExpWeibullF>) {
                const double t = std::pow(x, f.d);
                const double u = std::exp(-t);
                return f.c * std::exp((f.c - 1.0) * log1mexp(t)) * u * f.d * std::pow(x, f.d - 1.0);
            } else if constexpr (std::is_same_v<T, TruncWeibullF>) {
                return f.a * std::pow(x, f.a - 1.0) * std::exp(1.0 - std::pow(x, f.a));
            } else if constexpr (std::is_same_v<T, RatioF>) {
                const double s = x + 1.0;
                return 2.0 / (s * s);
            } else {
                return f.data->eval_deriv(x);
            }
        },
        v_);
}

double BaselineFamily::hazard(double x) const {
    if (x < support_lo()) return 0.0;
    return std::visit(
        [x, this](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ParetoF>) {
                return f.a / x;
            } else if constexpr (std::is_same_v<T, BurrF>) {
                return f.c * f.k * std::pow(x, f.c - 1.0) / (1.0 + std::pow(x, f.c));
            } else if constexpr (std::is_same_v<T, PgwF>) {
                const double u = std::pow(x, f.c);
                return (f.c / f.k) * std::pow(x, f.c - 1.0) * std::pow(1.0 + u, 1.0 / f.k - 1.0);
            } else if constexpr (std::is_same_v<T, ExpWeibullF>) {
                const double s = sf(x);
                if (s <= 0.0) throw std::domain_error("hazard: survival is numerically 0");
                return pdf(x) / s;
            } else if constexpr (std::is_same_v<T, TruncWeibullF>) {
                return f.a * std::pow(x, f.a - 1.0);
            } else if constexpr (std::is_same_v<T, RatioF>) {
                return 1.0 / (x + 1.0);
            } else {
                const double s = sf(x);
                if (s <= 0.0) throw std::domain_error("hazard: survival is numerically 0");
                return pdf(x) / s;
            }
        },
        v_);
}

double BaselineFamily::reversed_hazard(double x) const {
    const double F = cdf(x);
    if (F <= 0.0) throw std::domain_error("reversed_hazard: F_b(x) = 0");
    return pdf(x) / F;
}

double BaselineFamily::g_ratio(double x) const {
    if (x <= support_lo()) return 0.0;
    const double F = cdf(x);
    const double s = sf(x);
    if (s <= 0.0) throw std::domain_error("g_ratio: survival is numerically 0");
    return F / s;
}

double BaselineFamily::log_density_deriv(double x) const {
    return std::visit(
        [x](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ParetoF>) {
                return -(f.a + 1.0) / x;
            } else if constexpr (std::is_same_v<T, BurrF>) {
                const double u = std::pow(x, f.c);
                return (f.c - 1.0) / x - (f.k + 1.0) * f.c * std::pow(x, f.c - 1.0) / (1.0 + u);
            } else if constexpr (std::is_same_v<T, PgwF>) {
                const double u = std::pow(x, f.c);
                const double r = (f.c / f.k) * std::pow(x, f.c - 1.0) * std::pow(1.0 + u, 1.0 / f.k - 1.0);
                return (f.c - 1.0) / x + (1.0 / f.k - 1.0) * f.c * std::pow(x, f.c - 1.0) / (1.0 + u) - r;
            } else if constexpr (std::is_same_v<T, ExpWeibullF>) {
                const double t = std::pow(x, f.d);
                const double u = std::exp(-t);
                const double one_mu = -std::expm1(-t);
                const double dw = f.d * std::pow(x, f.d - 1.0);
                return (f.c - 1.0) * dw * u / one_mu - dw + (f.d - 1.0) / x;
            } else if constexpr (std::is_same_v<T, TruncWeibullF>) {
                return (f.a - 1.0) / x - f.a * std::pow(x, f.a - 1.0);
            } else if constexpr (std::is_same_v<T, RatioF>) {
                return -2.0 / (x + 1.0);
            } else {
                throw std::invalid_argument("tabulated baseline has no analytic density derivative");
            }
        },
        v_);
}

double BaselineFamily::hazard_prime(double x) const {
    if (!has_derivatives()) throw std::invalid_argument("hazard_prime: unsupported for tabulated baseline");
    const double r = hazard(x);
    return r * (log_density_deriv(x) + r);
}

double BaselineFamily::g_prime(double x) const {
    const double s = sf(x);
    if (s <= 0.0) throw std::domain_error("g_prime: survival is numerically 0");
    return hazard(x) / s;
}

double BaselineFamily::g_second(double x) const {
    if (!has_derivatives()) throw std::invalid_argument("g_second: unsupported for tabulated baseline");
    const double s = sf(x);
    if (s <= 0.0) throw std::domain_error("g_second: survival is numerically 0");
    const double r = hazard(x);
    return (hazard_prime(x) + r * r) / s;
}

double BaselineFamily::inv_cdf(double p) const {
    require(p >= 0.0 && p < 1.0, "inv_cdf: p must lie in [0, 1)");
    if (p == 0.0) return support_lo();
    return std::visit(
        [p](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ParetoF>) {
                return std::exp(-std::log1p(-p) / f.a);
            } else if constexpr (std::is_same_v<T, BurrF>) {
                return std::pow(std::expm1(-std::log1p(-p) / f.k), 1.0 / f.c);
            } else if constexpr (std::is_same_v<T, PgwF>) {
                return std::pow(std::pow(1.0 - std::log1p(-p), f.k) - 1.0, 1.0 / f.c);
            } else if constexpr (std::is_same_v<T, ExpWeibullF>) {
                // F = (1-exp(-x^d))^c  =>  x = (-log(1 - p^(1/c)))^(1/d)
                const double logp = p > 0.5 ? std::log1p(p - 1.0) : std::log(p);
                return std::pow(-std::log(-std::expm1(logp / f.c)), 1.0 / f.d);
            } else if constexpr (std::is_same_v<T, TruncWeibullF>) {
                return std::pow(1.0 - std::log1p(-p), 1.0 / f.a);
            } else if constexpr (std::is_same_v<T, RatioF>) {
                return (1.0 + p) / (1.0 - p);
            } else {
                return f.data->invert(p);
            }
        },
        v_);
}

const std::string& BaselineFamily::tag() const {
    return tag_;
}

std::vector<std::pair<std::string, double>> BaselineFamily::params() const {
    return std::visit(
        [](const auto& f) -> std::vector<std::pair<std::string, double>> {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ParetoF>) {
                return {{"a", f.a}};
            } else if constexpr (std::is_same_v<T, BurrF>) {
                return {{"c", f.c}, {"k", f.k}};
            } else if constexpr (std::is_same_v<T, PgwF>) {
                return {{"c", f.c}, {"k", f.k}};
            } else if constexpr (std::is_same_v<T, ExpWeibullF>) {
                return {{"d", f.d}, {"c", f.c}};
            } else if constexpr (std::is_same_v<T, TruncWeibullF>) {
                return {{"a", f.a}};
            } else if constexpr (std::is_same_v<T, RatioF>) {
                return {};
            } else {
                return {{"points", static_cast<double>(f.data->xs().size())}};
            }
        },
        v_);
}

bool BaselineFamily::operator==(const BaselineFamily& other) const {
    if (tag_ != other.tag_) return false;
    if (const auto* ta = std::get_if<TabulatedF>(&v_)) {
        const auto* tb = std::get_if<TabulatedF>(&other.v_);
        return tb && ta->data->xs() == tb->data->xs() && ta->data->Fs() == tb->data->Fs();
    }
    return params() == other.params();
}

const char* shape_condition_name(ShapeCondition c) {
    switch (c) {
        case ShapeCondition::HazardDecreasing: return "HazardDecreasing";
        case ShapeCondition::WHazardDecreasing: return "WHazardDecreasing";
        case ShapeCondition::W2HazardDecreasing: return "W2HazardDecreasing";
        case ShapeCondition::HazardDecreasingConvex: return "HazardDecreasingConvex";
        case ShapeCondition::W2HazardPrimeIncreasing: return "W2HazardPrimeIncreasing";
        case ShapeCondition::GIncreasingConvex: return "GIncreasingConvex";
        case ShapeCondition::GSecondDecreasing: return "GSecondDecreasing";
        case ShapeCondition::W2GSecondDecreasing: return "W2GSecondDecreasing";
        case ShapeCondition::WHazardIncreasingConcave: return "WHazardIncreasingConcave";
        case ShapeCondition::GIncreasingConcave: return "GIncreasingConcave";
        case ShapeCondition::WGPrimeConvex: return "WGPrimeConvex";
    }
    return "?";
}

namespace {

enum class Prop { dec, inc, convex, concave };

struct Clause {
    std::function<double(double)> f;
    Prop prop;
};

std::optional<double> check_monotone(const Clause& cl, const std::vector<double>& grid) {
    const bool dec = cl.prop == Prop::dec;
    double prev = cl.f(grid.front());
    for (size_t i = 1; i < grid.size(); ++i) {
        const double cur = cl.f(grid[i]);
        if (dec ? (cur > prev + kShapeSlack) : (cur < prev - kShapeSlack)) return grid[i];
        prev = cur;
    }
    return std::nullopt;
}

std::optional<double> check_curvature(const Clause& cl, const std::vector<double>& grid) {
    const bool convex = cl.prop == Prop::convex;
    for (size_t i = 0; i + 2 < grid.size(); ++i) {
        const double m = 0.5 * (grid[i] + grid[i + 2]);
        const double second = cl.f(grid[i]) - 2.0 * cl.f(m) + cl.f(grid[i + 2]);
        if (convex ? (second < -2.0 * kShapeSlack) : (second > 2.0 * kShapeSlack)) return m;
    }
    return std::nullopt;
}

}  // namespace

ShapeCheck check_shape(const BaselineFamily& family, ShapeCondition cond, const std::vector<double>& grid) {
    require(grid.size() >= 32, "check_shape: grid must have at least 32 points");
    for (size_t i = 1; i < grid.size(); ++i) require(grid[i] > grid[i - 1], "check_shape: grid must be increasing");
    require(grid.front() > family.support_lo(), "check_shape: grid must lie strictly inside the support");

    auto r = [&family](double w) { return family.hazard(w); };
    auto wr = [&family](double w) { return w * family.hazard(w); };
    auto w2r = [&family](double w) { return w * w * family.hazard(w); };
    auto w2rp = [&family](double w) { return w * w * family.hazard_prime(w); };
    auto g = [&family](double w) { return family.g_ratio(w); };
    auto gpp = [&family](double w) { return family.g_second(w); };
    auto w2gpp = [&family](double w) { return w * w * family.g_second(w); };
    auto wgp = [&family](double w) { return w * family.g_prime(w); };

    std::vector<Clause> clauses;
    switch (cond) {
        case ShapeCondition::HazardDecreasing: clauses = {{r, Prop::dec}}; break;
        case ShapeCondition::WHazardDecreasing: clauses = {{wr, Prop::dec}}; break;
        case ShapeCondition::W2HazardDecreasing: clauses = {{w2r, Prop::dec}}; break;
        case ShapeCondition::HazardDecreasingConvex: clauses = {{r, Prop::dec}, {r, Prop::convex}}; break;
        case ShapeCondition::W2HazardPrimeIncreasing: clauses = {{w2rp, Prop::inc}}; break;
        case ShapeCondition::GIncreasingConvex: clauses = {{g, Prop::inc}, {g, Prop::convex}}; break;
        case ShapeCondition::GSecondDecreasing: clauses = {{gpp, Prop::dec}}; break;
        case ShapeCondition::W2GSecondDecreasing: clauses = {{w2gpp, Prop::dec}}; break;
        case ShapeCondition::WHazardIncreasingConcave: clauses = {{wr, Prop::inc}, {wr, Prop::concave}}; break;
        case ShapeCondition::GIncreasingConcave: clauses = {{g, Prop::inc}, {g, Prop::concave}}; break;
        case ShapeCondition::WGPrimeConvex: clauses = {{wgp, Prop::convex}}; break;
    }

    for (const auto& cl : clauses) {
        const auto witness = (cl.prop == Prop::dec || cl.prop == Prop::inc) ? check_monotone(cl, grid)
                                                                            : check_curvature(cl, grid);
        if (witness) return {false, witness};
    }
    return {true, std::nullopt};
}

std::vector<double> default_condition_grid(const BaselineFamily& family) {
    const double lo = family.support_lo();
    return log_spaced(lo + 1e-6, lo + 50.0, 128);
}

}  // namespace ordstat
