#include "pidlab/time_series.hpp"

#include <cstddef>

#include "pidlab/errors.hpp"

namespace pidlab {

TimeSeries backward_difference(const TimeSeries& s, int order) {
    if (order != 1 && order != 2) throw DomainError("backward_difference: order must be 1 or 2");
    if (s.h <= 0.0) throw DomainError("backward_difference: h must be positive");
    if (s.size() < static_cast<std::size_t>(order) + 1)
        throw LengthError("backward_difference: series shorter than order+1");

    TimeSeries out{s.h, s.t0, std::vector<double>(s.size(), 0.0)};
    if (order == 1) {
        for (std::size_t k = 1; k < s.size(); ++k)
            out.values[k] = (s.values[k] - s.values[k - 1]) / s.h;
    } else {
        const double h2 = s.h * s.h;
        for (std::size_t k = 2; k < s.size(); ++k)
            out.values[k] = (s.values[k] - 2.0 * s.values[k - 1] + s.values[k - 2]) / h2;
    }
    return out;
}

TimeSeries moving_average(const TimeSeries& s, int window) {
    if (window < 1) throw DomainError("moving_average: window must be >= 1");

    TimeSeries out{s.h, s.t0, std::vector<double>(s.size(), 0.0)};
    // Recompute each mean from scratch: O(n*window) but immune to the drift a
    // running-sum update would accumulate over long records.
    const std::size_t w = static_cast<std::size_t>(window);
    for (std::size_t k = 0; k < s.size(); ++k) {
        const std::size_t lo = (k + 1 > w) ? k + 1 - w : 0;
        double sum = 0.0;
        for (std::size_t j = lo; j <= k; ++j) sum += s.values[j];
        out.values[k] = sum / static_cast<double>(k - lo + 1);
    }
    return out;
}

TimeSeries cumulative_sum(const TimeSeries& s) {
    if (s.h <= 0.0) throw DomainError("cumulative_sum: h must be positive");
    TimeSeries out{s.h, s.t0, std::vector<double>(s.size(), 0.0)};
    double acc = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        acc += s.h * s.values[k];
        out.values[k] = acc;
    }
    return out;
}

}  // namespace pidlab
