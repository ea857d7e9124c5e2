#include "ordstat/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace ordstat {

std::vector<double> log_spaced(double lo, double hi, int n) {
    if (!(0.0 < lo && lo < hi) || n < 2) throw std::invalid_argument("log_spaced: need 0 < lo < hi and n >= 2");
    std::vector<double> xs(static_cast<size_t>(n));
    const double llo = std::log(lo), lhi = std::log(hi);
    const double step = (lhi - llo) / static_cast<double>(n - 1);
    for (int i = 0; i < n; ++i) xs[static_cast<size_t>(i)] = std::exp(llo + step * i);
    xs.front() = lo;
    xs.back() = hi;
    return xs;
}

std::vector<double> lin_spaced(double lo, double hi, int n) {
    return GridSpec(lo, hi, n).points();
}

std::uint64_t default_mc_seed() {
    if (const char* env = std::getenv("ORDSTAT_SEED")) {
        try {
            return static_cast<std::uint64_t>(std::stoull(std::string(env)));
        } catch (...) {
            // fall through to the fixed default on unparsable input
        }
    }
    return 0x0FD5E5EEDB16C0DEULL;
}

}  // namespace ordstat
