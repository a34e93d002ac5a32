#pragma once

#include <cstdint>
#include <vector>

#include "saxmine/sax.hpp"
#include "saxmine/timeseries.hpp"

namespace saxmine {

struct DiscordResult {
    std::size_t location = 0;  // window start index
    double distance = 0.0;     // nearest-non-self-match Euclidean distance
};

// Per-point scores; positions outside [validFrom, validTo] are NaN.
struct ScoreSeries {
    std::vector<double> scores;
    std::size_t validFrom = 0;
    std::size_t validTo = 0;
};

struct ChaosHistogram {
    std::vector<double> counts;  // 4^level bins, normalized by word count
    int level = 1;
};

struct DiscordStats {
    std::uint64_t distanceCalls = 0;
};

struct DiscordOptions {
    bool normalizeWindows = true;  // z-normalize windows before distance
};

// Exact maximin discord over all window pairs with |p-q| > n; ties go to
// the smallest location. This is the oracle for hotSaxDiscord.
DiscordResult bruteForceDiscord(const TimeSeries& series, int n,
                                DiscordStats* stats = nullptr,
                                const DiscordOptions& opt = {});

// Same result as bruteForceDiscord; the SAX-based outer/inner orderings
// and early abandoning only change the amount of work.
DiscordResult hotSaxDiscord(const TimeSeries& series, int n,
                            const SaxConfig& cfg, unsigned seed,
                            DiscordStats* stats = nullptr,
                            const DiscordOptions& opt = {});

// Sequitur rule density per point: sum of grammar depths of every SAX
// word whose window covers the point. High density = compressible.
ScoreSeries sequiturDensity(const TimeSeries& series, const SaxConfig& cfg,
                            bool collapseRuns = false);

// score_i = max(density) - density_i over the valid range.
ScoreSeries densityToScore(const ScoreSeries& density);

// CGR n-gram histogram over a set of SAX words (alphabet must be 'a'..'d');
// counts are divided by the number of words.
ChaosHistogram chaosHistogram(std::span<const SaxWord> words, int level);

double histogramSquaredDistance(const ChaosHistogram& a,
                                const ChaosHistogram& b);

// Histogram divergence between the D words after each index and the L
// words before it. stride subsamples the words inside each window.
ScoreSeries chaosGameScore(const TimeSeries& series, const SaxConfig& cfg,
                           int level, int D, int L, int stride = 1);

// Indices where score exceeds mean + k*std over the valid range;
// consecutive crossings merge into the first index of the run.
std::vector<std::size_t> thresholdAlarms(const ScoreSeries& s, double k);

// Restrict the valid range of a score series (used to drop the edge
// roll-off of density scores before alarming).
ScoreSeries clampValidRange(const ScoreSeries& s, std::size_t from,
                            std::size_t to);

}  // namespace saxmine
