#pragma once

#include <string>
#include <vector>

namespace ordstat {

/** Vector of strictly positive reals, length >= 2. */
class RVector {
  public:
    explicit RVector(std::vector<double> entries);
    const std::vector<double>& entries() const { return v_; }
    size_t size() const { return v_.size(); }
    double operator[](size_t i) const { return v_[i]; }

  private:
    std::vector<double> v_;
};

/**
 * Result of a majorization query: `holds`, or the 1-based index of the first
 * partial-sum inequality that fails (for the equal-totals relation, index n
 * means the totals differ).
 */
struct MajorResult {
    bool holds = false;
    int first_violation = 0;  // 0 when holds
};

/**
 * The four preorders, each asking whether x is dominated by y (first argument
 * dominant).  Partial-sum comparisons carry tolerance 1e-12 * (1 + |sums|).
 *
 *   majorizes(y, x):            descending-prefix sums of x <= those of y, totals equal
 *   weak_submajorizes(y, x):    descending-prefix sums of x <= those of y
 *   weak_supermajorizes(y, x):  ascending-prefix sums of x >= those of y
 *   reciprocal_majorizes(y, x): prefix sums of reciprocals of ascending-sorted x
 *                               <= those of y
 */
MajorResult majorizes_detail(const RVector& y, const RVector& x);
MajorResult weak_submajorizes_detail(const RVector& y, const RVector& x);
MajorResult weak_supermajorizes_detail(const RVector& y, const RVector& x);
MajorResult reciprocal_majorizes_detail(const RVector& y, const RVector& x);

bool majorizes(const RVector& y, const RVector& x);
bool weak_submajorizes(const RVector& y, const RVector& x);
bool weak_supermajorizes(const RVector& y, const RVector& x);
bool reciprocal_majorizes(const RVector& y, const RVector& x);

enum class ChainClass { ascending, descending, neither };

/** Monotonicity class of the entries; ties allowed, constant vectors classify as ascending. */
ChainClass chain_class(const RVector& v);

/** Nondecreasing / nonincreasing entry order (ties allowed). */
bool is_ascending(const RVector& v);
bool is_descending(const RVector& v);

const char* chain_class_name(ChainClass c);

/** Componentwise reciprocal. */
RVector reciprocal(const RVector& v);

}  // namespace ordstat
