#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace saxmine {

// Values below this are treated as zero variance (flat segment).
inline constexpr double kEpsilonFlat = 1e-8;

struct TimeSeries {
    std::vector<double> values;
    std::optional<double> startTime;    // epoch seconds
    std::optional<double> stepSeconds;  // sampling period

    std::size_t size() const { return values.size(); }
};

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

double mean(std::span<const double> x);

// Population standard deviation.
double stddev(std::span<const double> x);

// (x - mean) / std with the flat rule: std < kEpsilonFlat yields all zeros.
std::vector<double> znormalize(std::span<const double> x);
TimeSeries znormalize(const TimeSeries& s);

// First difference, length N-1.
std::vector<double> firstDifference(std::span<const double> x);

}  // namespace saxmine
