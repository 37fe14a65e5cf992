#pragma once

#include <cstddef>
#include <vector>

namespace pidlab {

// Uniformly sampled real-valued signal. The universal currency of the
// library: every signal (control, output, error, reference) is one of these.
struct TimeSeries {
    double h = 0.01;   // sampling interval, seconds; > 0
    double t0 = 0.0;   // time of the first sample, seconds
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    double time_at(std::size_t k) const { return t0 + static_cast<double>(k) * h; }
    double operator[](std::size_t k) const { return values[k]; }
    double& operator[](std::size_t k) { return values[k]; }
};

// Finite difference of the given order with zero-filled leading samples:
//   order 1: (s[k] - s[k-1]) / h
//   order 2: (s[k] - 2 s[k-1] + s[k-2]) / h^2
// The first `order` samples are 0 by convention so lengths stay aligned.
TimeSeries backward_difference(const TimeSeries& s, int order);

// Causal trailing mean over min(k+1, window) samples; window = 1 is identity.
TimeSeries moving_average(const TimeSeries& s, int window);

// Running Riemann sum I(t) = I(t-h) + h*s(t); the discrete integral that
// pairs with backward_difference (diff of cumsum recovers the signal).
TimeSeries cumulative_sum(const TimeSeries& s);

}  // namespace pidlab
