#include "ordstat/majorize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace ordstat {

namespace {

double tol_for(double a, double b) {
    return 1e-12 * (1.0 + std::abs(a) + std::abs(b));
}

void check_lengths(const RVector& y, const RVector& x) {
    if (y.size() != x.size()) throw std::invalid_argument("majorization: vectors must have equal length");
}

std::vector<double> sorted(const std::vector<double>& v, bool ascending) {
    std::vector<double> s = v;
    if (ascending)
        std::sort(s.begin(), s.end());
    else
        std::sort(s.begin(), s.end(), std::greater<double>());
    return s;
}

}  // namespace

RVector::RVector(std::vector<double> entries) : v_(std::move(entries)) {
    if (v_.size() < 2) throw std::invalid_argument("RVector: need at least 2 entries");
    for (double e : v_)
        if (!(e > 0.0) || !std::isfinite(e)) throw std::invalid_argument("RVector: entries must be positive finite reals");
}

MajorResult weak_submajorizes_detail(const RVector& y, const RVector& x) {
    check_lengths(y, x);
    const auto xs = sorted(x.entries(), false);
    const auto ys = sorted(y.entries(), false);
    double sx = 0.0, sy = 0.0;
    for (size_t l = 0; l < xs.size(); ++l) {
        sx += xs[l];
        sy += ys[l];
        if (sx > sy + tol_for(sx, sy)) return {false, static_cast<int>(l + 1)};
    }
    return {true, 0};
}

MajorResult majorizes_detail(const RVector& y, const RVector& x) {
    check_lengths(y, x);
    const auto xs = sorted(x.entries(), false);
    const auto ys = sorted(y.entries(), false);
    const size_t n = xs.size();
    double sx = 0.0, sy = 0.0;
    for (size_t l = 0; l + 1 < n; ++l) {
        sx += xs[l];
        sy += ys[l];
        if (sx > sy + tol_for(sx, sy)) return {false, static_cast<int>(l + 1)};
    }
    sx += xs[n - 1];
    sy += ys[n - 1];
    if (std::abs(sx - sy) > tol_for(sx, sy)) return {false, static_cast<int>(n)};
    return {true, 0};
}

MajorResult weak_supermajorizes_detail(const RVector& y, const RVector& x) {
    check_lengths(y, x);
    const auto xs = sorted(x.entries(), true);
    const auto ys = sorted(y.entries(), true);
    double sx = 0.0, sy = 0.0;
    for (size_t l = 0; l < xs.size(); ++l) {
        sx += xs[l];
        sy += ys[l];
        if (sx < sy - tol_for(sx, sy)) return {false, static_cast<int>(l + 1)};
    }
    return {true, 0};
}

MajorResult reciprocal_majorizes_detail(const RVector& y, const RVector& x) {
    check_lengths(y, x);
    const auto xs = sorted(x.entries(), true);
    const auto ys = sorted(y.entries(), true);
    double sx = 0.0, sy = 0.0;
    for (size_t l = 0; l < xs.size(); ++l) {
        sx += 1.0 / xs[l];
        sy += 1.0 / ys[l];
        if (sx > sy + tol_for(sx, sy)) return {false, static_cast<int>(l + 1)};
    }
    return {true, 0};
}

bool majorizes(const RVector& y, const RVector& x) {
    return majorizes_detail(y, x).holds;
}
bool weak_submajorizes(const RVector& y, const RVector& x) {
    return weak_submajorizes_detail(y, x).holds;
}
bool weak_supermajorizes(const RVector& y, const RVector& x) {
    return weak_supermajorizes_detail(y, x).holds;
}
bool reciprocal_majorizes(const RVector& y, const RVector& x) {
    return reciprocal_majorizes_detail(y, x).holds;
}

bool is_ascending(const RVector& v) {
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[i - 1]) return false;
    return true;
}

bool is_descending(const RVector& v) {
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1]) return false;
    return true;
}

ChainClass chain_class(const RVector& v) {
    if (is_ascending(v)) return ChainClass::ascending;
    if (is_descending(v)) return ChainClass::descending;
    return ChainClass::neither;
}

const char* chain_class_name(ChainClass c) {
    switch (c) {
        case ChainClass::ascending: return "ascending";
        case ChainClass::descending: return "descending";
        case ChainClass::neither: return "neither";
    }
    return "?";
}

RVector reciprocal(const RVector& v) {
    std::vector<double> r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = 1.0 / v[i];
    return RVector(std::move(r));
}

}  // namespace ordstat
