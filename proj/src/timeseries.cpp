#include "saxmine/timeseries.hpp"

#include <cmath>
#include <numeric>

namespace saxmine {

double mean(std::span<const double> x) {
    if (x.empty()) throw InvalidInput("mean: empty input");
    return std::accumulate(x.begin(), x.end(), 0.0) / double(x.size());
}

double stddev(std::span<const double> x) {
    const double m = mean(x);
    double acc = 0.0;
    for (double v : x) acc += (v - m) * (v - m);
    return std::sqrt(acc / double(x.size()));
}

std::vector<double> znormalize(std::span<const double> x) {
    if (x.empty()) throw InvalidInput("znormalize: empty series");
    const double m = mean(x);
    const double sd = stddev(x);
    std::vector<double> out(x.size());
    if (sd < kEpsilonFlat) {
        // flat rule: all zeros
        return out;
    }
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - m) / sd;
    return out;
}

TimeSeries znormalize(const TimeSeries& s) {
    TimeSeries out = s;
    out.values = znormalize(std::span<const double>(s.values));
    return out;
}

std::vector<double> firstDifference(std::span<const double> x) {
    if (x.size() < 2) throw InvalidInput("firstDifference: need >= 2 points");
    std::vector<double> out(x.size() - 1);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) out[i] = x[i + 1] - x[i];
    return out;
}

}  // namespace saxmine
