#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ordstat::detail {

/**
 * Shape-preserving piecewise-cubic Hermite interpolant (Fritsch-Carlson
 * slope limiting).  Works for strictly monotone data of either direction;
 * the interpolant is monotone on every segment whose data are monotone.
 */
struct PchipTable {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> slopes;

    PchipTable(std::vector<double> xs_, std::vector<double> ys_) : xs(std::move(xs_)), ys(std::move(ys_)) {
        if (xs.size() != ys.size()) throw std::invalid_argument("pchip: x and y lists must have equal length");
        if (xs.size() < 4) throw std::invalid_argument("pchip: need at least 4 points");
        for (size_t i = 1; i < xs.size(); ++i)
            if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("pchip: x grid must be strictly increasing");

        const size_t n = xs.size();
        std::vector<double> h(n - 1), d(n - 1);
        for (size_t i = 0; i + 1 < n; ++i) {
            h[i] = xs[i + 1] - xs[i];
            d[i] = (ys[i + 1] - ys[i]) / h[i];
        }
        slopes.assign(n, 0.0);
        for (size_t i = 1; i + 1 < n; ++i) {
            if (d[i - 1] * d[i] <= 0.0) {
                slopes[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                slopes[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
            }
        }
        auto endpoint = [](double h0, double h1, double d0, double d1) {
            double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
            if (m * d0 <= 0.0) return 0.0;
            if (std::abs(m) > 3.0 * std::abs(d0)) return 3.0 * d0;
            return m;
        };
        slopes.front() = endpoint(h[0], h[1], d[0], d[1]);
        slopes.back() = endpoint(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    }

    size_t segment(double x) const {
        const auto it = std::upper_bound(xs.begin(), xs.end(), x);
        size_t i = static_cast<size_t>(it - xs.begin());
        if (i == 0) return 0;
        if (i >= xs.size()) return xs.size() - 2;
        return i - 1;
    }

    /** Interpolated value; clamped to the end values outside the table. */
    double eval(double x) const {
        if (x <= xs.front()) return ys.front();
        if (x >= xs.back()) return ys.back();
        const size_t i = segment(x);
        const double h = xs[i + 1] - xs[i];
        const double t = (x - xs[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return ys[i] * (2 * t3 - 3 * t2 + 1) + h * slopes[i] * (t3 - 2 * t2 + t) + ys[i + 1] * (-2 * t3 + 3 * t2) +
               h * slopes[i + 1] * (t3 - t2);
    }

    /** Derivative of the interpolant; 0 outside the table. */
    double eval_deriv(double x) const {
        if (x <= xs.front() || x >= xs.back()) return 0.0;
        const size_t i = segment(x);
        const double h = xs[i + 1] - xs[i];
        const double t = (x - xs[i]) / h;
        const double t2 = t * t;
        const double dH = ys[i] * (6 * t2 - 6 * t) + h * slopes[i] * (3 * t2 - 4 * t + 1) +
                          ys[i + 1] * (-6 * t2 + 6 * t) + h * slopes[i + 1] * (3 * t2 - 2 * t);
        return dH / h;
    }
};

}  // namespace ordstat::detail
