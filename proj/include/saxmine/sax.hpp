#pragma once

#include <string>
#include <vector>

#include "saxmine/timeseries.hpp"

namespace saxmine {

// A SAX word over the first `alpha` letters of 'a'..'z'.
using SaxWord = std::string;

struct SaxConfig {
    int alpha = 3;
    int wordSize = 8;
    int windowSize = 64;

    // Throws InvalidInput when a field is out of range or
    // windowSize is not a multiple of wordSize.
    void validate() const;
};

struct SaxEntry {
    std::size_t startIndex = 0;
    SaxWord word;
};

struct SaxSequence {
    std::vector<SaxEntry> entries;
    SaxConfig config;
};

struct Breakpoints {
    std::vector<double> cuts;  // alpha-1 strictly increasing reals
};

// Inverse standard normal CDF, absolute error below 1e-8 (Acklam's
// rational approximation plus one Halley refinement step).
double invNormalCdf(double p);

// Equiprobable cuts: quantiles i/alpha for i = 1..alpha-1.
Breakpoints gaussianBreakpoints(int alpha);

// Median of bin k of an alpha-bin equiprobable Gaussian quantization,
// i.e. the quantile at (2k+1)/(2*alpha).
double gaussianBinMedian(int alpha, int bin);

// Average of consecutive blocks; fractional-weight blocks when
// frames does not divide the length.
std::vector<double> paa(std::span<const double> x, int frames);

// Bin index of a z-scored value; ties on a cut go to the upper bin.
int quantizeValue(double v, const Breakpoints& bp);

// Whole-series encoding: znormalize, PAA to wordSize frames, quantize.
SaxWord saxEncode(std::span<const double> x, int alpha, int wordSize);
SaxWord saxEncode(const TimeSeries& s, int alpha, int wordSize);

// Full-overlap sliding encoding; every window is z-normalized
// independently before encoding.
SaxSequence saxSliding(const TimeSeries& s, const SaxConfig& cfg);

int hammingDistance(const SaxWord& a, const SaxWord& b);

// Standard MINDIST lower bound; windowSize is the number of raw points
// each word stands for.
double mindist(const SaxWord& a, const SaxWord& b, int alpha, int windowSize);

}  // namespace saxmine
