#include "ordstat/stochorder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ordstat {

namespace {

constexpr double kStSlack = 1e-9;
constexpr double kHrTrimLevel = 1e-12;
constexpr int kMinGridPoints = 128;
constexpr int kMinUsableHr = 8;
constexpr uint64_t kMcChunk = 65536;
constexpr uint64_t kSeedStride = 0x9E3779B97F4A7C15ULL;

double hr_slack(double ra, double rb) {
    return std::max(1e-7, 1e-4 * std::max(std::abs(ra), std::abs(rb)));
}

struct SideStats {
    double max_excess = -std::numeric_limits<double>::infinity();  // raw - slack
    double max_raw = -std::numeric_limits<double>::infinity();
    size_t argmax = 0;  // index of max_excess
};

void feed(SideStats& s, double raw, double slack, size_t idx) {
    s.max_raw = std::max(s.max_raw, raw);
    const double excess = raw - slack;
    if (excess > s.max_excess) {
        s.max_excess = excess;
        s.argmax = idx;
    }
}

}  // namespace

std::string relation_name(Relation r) { return r == Relation::st ? "st" : "hr"; }

std::string direction_name(Direction d) {
    switch (d) {
        case Direction::A_ge_B: return "A_ge_B";
        case Direction::B_ge_A: return "B_ge_A";
        default: return "equal";
    }
}

std::string status_name(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::holds: return "holds";
        case VerdictStatus::fails: return "fails";
        default: return "indeterminate";
    }
}

nlohmann::json OrderVerdict::to_json() const {
    nlohmann::json j{
        {"relation", relation_name(relation)},
        {"direction", direction_name(direction)},
        {"status", status_name(status)},
        {"max_violation", max_violation},
        {"grid",
         {{"lo", grid_meta.lo},
          {"hi", grid_meta.hi},
          {"n", grid_meta.n},
          {"used", grid_meta.used},
          {"trimmed", grid_meta.trimmed}}},
    };
    if (witness)
        j["witness"] = {{"x", witness->x}, {"value_a", witness->value_a}, {"value_b", witness->value_b}};
    else
        j["witness"] = nullptr;
    if (seed) j["seed"] = *seed;
    return j;
}

namespace {

/**
 * Resolve direction/status from per-side violation statistics.  against_a
 * tracks evidence contradicting "A dominates", against_b the reverse.  When
 * both sides are contradicted beyond slack the verdict fails toward the
 * direction with the lesser contradiction, with the witness at the point
 * that contradicts it the most; an exact tie reports "equal" so swapping the
 * batches mirrors the verdict.
 */
void resolve(OrderVerdict& v, const SideStats& against_a, const SideStats& against_b,
             const std::vector<double>& xs, const std::vector<double>& va,
             const std::vector<double>& vb) {
    const bool a_ok = against_a.max_excess <= 0.0;
    const bool b_ok = against_b.max_excess <= 0.0;
    auto witness_at = [&](size_t i) { return Witness{xs[i], va[i], vb[i]}; };
    if (a_ok && b_ok) {
        v.status = VerdictStatus::holds;
        v.direction = Direction::equal;
        v.max_violation = std::max(against_a.max_raw, against_b.max_raw);
    } else if (a_ok) {
        v.status = VerdictStatus::holds;
        v.direction = Direction::A_ge_B;
        v.max_violation = against_a.max_raw;
    } else if (b_ok) {
        v.status = VerdictStatus::holds;
        v.direction = Direction::B_ge_A;
        v.max_violation = against_b.max_raw;
    } else {
        v.status = VerdictStatus::fails;
        if (against_a.max_excess < against_b.max_excess) {
            v.direction = Direction::A_ge_B;
            v.max_violation = against_a.max_raw;
            v.witness = witness_at(against_a.argmax);
        } else if (against_b.max_excess < against_a.max_excess) {
            v.direction = Direction::B_ge_A;
            v.max_violation = against_b.max_raw;
            v.witness = witness_at(against_b.argmax);
        } else {
            v.direction = Direction::equal;
            v.max_violation = against_a.max_raw;
            v.witness = witness_at(std::max(against_a.argmax, against_b.argmax));
        }
    }
}

}  // namespace

OrderVerdict check_st(const ElsBatch& a, const ElsBatch& b, const GridSpec& grid) {
    if (grid.n < kMinGridPoints) throw std::invalid_argument("stochastic-order grid needs >= 128 points");
    const std::vector<double> xs = grid.points();
    std::vector<double> sfa(xs.size()), sfb(xs.size());
    SideStats against_a, against_b;
    for (size_t i = 0; i < xs.size(); ++i) {
        sfa[i] = sf_second(a, xs[i]);
        sfb[i] = sf_second(b, xs[i]);
        feed(against_a, sfb[i] - sfa[i], kStSlack, i);
        feed(against_b, sfa[i] - sfb[i], kStSlack, i);
    }
    OrderVerdict v;
    v.relation = Relation::st;
    v.grid_meta = {grid.lo, grid.hi, grid.n, static_cast<int>(xs.size()), 0};
    resolve(v, against_a, against_b, xs, sfa, sfb);
    return v;
}

OrderVerdict check_hr(const ElsBatch& a, const ElsBatch& b, const GridSpec& grid) {
    if (grid.n < kMinGridPoints) throw std::invalid_argument("hazard-order grid needs >= 128 points");
    const bool closed_a = a.independent() && a.all_alpha_one();
    const bool closed_b = b.independent() && b.all_alpha_one();
    auto hazard_of = [](const ElsBatch& batch, bool closed, double x) {
        if (closed) return hazard_second_indep_unitshape(batch, x);
        return hazard_numeric([&batch](double t) { return sf_second(batch, t); }, x);
    };

    const std::vector<double> all = grid.points();
    std::vector<double> xs, ra, rb;
    int trimmed = 0;
    for (double x : all) {
        if (sf_second(a, x) <= kHrTrimLevel || sf_second(b, x) <= kHrTrimLevel) {
            ++trimmed;
            continue;
        }
        xs.push_back(x);
        ra.push_back(hazard_of(a, closed_a, x));
        rb.push_back(hazard_of(b, closed_b, x));
    }

    OrderVerdict v;
    v.relation = Relation::hr;
    v.grid_meta = {grid.lo, grid.hi, grid.n, static_cast<int>(xs.size()), trimmed};
    if (static_cast<int>(xs.size()) < kMinUsableHr) {
        v.status = VerdictStatus::indeterminate;
        v.direction = Direction::equal;
        return v;
    }
    // A is hr-larger when its hazard is the smaller one.
    SideStats against_a, against_b;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double slack = hr_slack(ra[i], rb[i]);
        feed(against_a, ra[i] - rb[i], slack, i);
        feed(against_b, rb[i] - ra[i], slack, i);
    }
    resolve(v, against_a, against_b, xs, ra, rb);
    return v;
}

namespace {

/** Draw one batch realization and return the second-smallest component. */
double sample_second_smallest(const ElsBatch& batch, SplitMix64& rng) {
    double s1 = std::numeric_limits<double>::infinity();
    double s2 = std::numeric_limits<double>::infinity();
    for (const auto& m : batch.marginals()) {
        const double u = rng.next_unit();
        const double p = std::pow(u, 1.0 / m.alpha);
        const double val = m.lambda + m.theta * m.baseline.inv_cdf(p);
        if (val < s1) {
            s2 = s1;
            s1 = val;
        } else if (val < s2) {
            s2 = val;
        }
    }
    return s2;
}

}  // namespace

std::vector<McEstimate> mc_sf_second_multi(const ElsBatch& batch, const std::vector<double>& xs,
                                           uint64_t n_samples, uint64_t seed) {
    if (!batch.independent())
        throw std::invalid_argument("Monte Carlo sampling supports independent batches only");
    if (n_samples < 10000) throw std::invalid_argument("Monte Carlo needs at least 10^4 samples");
    if (xs.empty()) throw std::invalid_argument("no abscissas given");
    if (!std::is_sorted(xs.begin(), xs.end()))
        throw std::invalid_argument("abscissas must be sorted ascending");

    // hist[k] = number of samples whose second-smallest lands in (xs[k-1], xs[k]];
    // the count of samples exceeding xs[j] is then the suffix sum past j.
    std::vector<uint64_t> hist(xs.size() + 1, 0);
    const uint64_t n_chunks = (n_samples + kMcChunk - 1) / kMcChunk;
    for (uint64_t chunk = 0; chunk < n_chunks; ++chunk) {
        SplitMix64 rng(splitmix64(seed ^ ((chunk + 1) * kSeedStride)));
        const uint64_t count = std::min(kMcChunk, n_samples - chunk * kMcChunk);
        for (uint64_t s = 0; s < count; ++s) {
            const double s2 = sample_second_smallest(batch, rng);
            const auto idx = static_cast<size_t>(
                std::lower_bound(xs.begin(), xs.end(), s2) - xs.begin());
            ++hist[idx];
        }
    }
    std::vector<McEstimate> out(xs.size());
    uint64_t exceed = hist[xs.size()];
    for (size_t j = xs.size(); j-- > 0;) {
        const double p = static_cast<double>(exceed) / static_cast<double>(n_samples);
        out[j] = {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples))};
        exceed += hist[j];
    }
    return out;
}

McEstimate mc_sf_second(const ElsBatch& batch, double x, uint64_t n_samples, uint64_t seed) {
    return mc_sf_second_multi(batch, {x}, n_samples, seed).front();
}

double oracle_sf_second_dep(const ElsBatch& batch, double x) {
    if (batch.independent()) throw std::logic_error("lattice oracle requires a generator");
    const size_t n = batch.n();
    if (n > 12) throw std::invalid_argument("subset lattice oracle limited to n <= 12");
    const Generator& gen = *batch.generator();
    std::vector<double> t(n);
    for (size_t i = 0; i < n; ++i) t[i] = gen.phi(marginal_sf(batch.marginals()[i], x));

    // Joint survival of the subset S: psi(sum_{k in S} phi(sf_k)).
    auto subset_sf = [&](uint32_t mask) {
        double sum = 0.0;
        for (size_t k = 0; k < n; ++k)
            if (mask & (1u << k)) {
                if (phi_is_saturated(t[k])) return 0.0;
                sum += t[k];
            }
        return gen.psi(sum);
    };

    // P(exactly the components in T survive) by inclusion-exclusion over
    // supersets; the event "at most one failure" sums T of size n-1 and n.
    const uint32_t full = (n == 32 ? ~0u : (1u << n) - 1u);
    double total = 0.0;
    for (uint32_t tmask = 0; tmask <= full; ++tmask) {
        const int sz = __builtin_popcount(tmask);
        if (sz < static_cast<int>(n) - 1) continue;
        const uint32_t rest = full & ~tmask;
        // Enumerate subsets of the complement.
        double p_exact = 0.0;
        uint32_t extra = rest;
        while (true) {
            const double sign = (__builtin_popcount(extra) % 2 == 0) ? 1.0 : -1.0;
            p_exact += sign * subset_sf(tmask | extra);
            if (extra == 0) break;
            extra = (extra - 1) & rest;
        }
        total += p_exact;
    }
    return std::clamp(total, 0.0, 1.0);
}

}  // namespace ordstat
