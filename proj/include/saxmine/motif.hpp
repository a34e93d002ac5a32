#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "saxmine/sax.hpp"
#include "saxmine/timeseries.hpp"

namespace saxmine {

struct Motif {
    std::vector<std::size_t> occurrences;  // sorted start indices
    std::size_t length = 0;                // points per occurrence
    std::string source;                    // producing algorithm
    double score = 0.0;                    // algorithm-specific
};

struct MkStats {
    std::uint64_t distanceCalls = 0;
    // (a, b, refGap, bestAtSkip) for pairs pruned by the sorted-order scan.
    struct Skip {
        std::size_t a = 0, b = 0;
        double refGap = 0.0;
        double bestAtSkip = 0.0;
    };
    std::vector<Skip> skips;       // capped at skipCapacity
    std::size_t skipCapacity = 0;  // 0 = do not record
};

// Exhaustive closest non-self-matching pair (|i-j| > n) on z-normalized
// windows; ties go to the lexicographically smallest (i, j). Oracle for
// mkMotif.
Motif bruteForceClosestPair(const TimeSeries& series, int n);

// Mueen-Keogh exact closest pair with random reference points and the
// triangle-inequality ordering prune. Result is seed-independent.
Motif mkMotif(const TimeSeries& series, int n, int numRefs, unsigned seed,
              MkStats* stats = nullptr);

// Sequitur rules mapped back to series segments, ranked by nesting depth
// then expansion length, post-processed, truncated to topK.
std::vector<Motif> grammarMotifs(const TimeSeries& series,
                                 const SaxConfig& cfg, int topK);

// Collapse self-matches, sort longest first, drop monotone/flat motifs,
// merge motifs whose occurrence sets overlap >= 50%. Idempotent.
std::vector<Motif> postProcessMotifs(const TimeSeries& series,
                                     std::vector<Motif> motifs,
                                     const SaxConfig& cfg);

// AIS-style tracker growth over the SAX symbols of the first difference.
std::vector<Motif> motifTracking(const TimeSeries& series, int alpha,
                                 double r);

// Aggregative clustering of window pairs under Pearson correlation of
// the words' numeric profiles; complete-linkage merging.
std::vector<Motif> approximateMotifs(const TimeSeries& series,
                                     const SaxConfig& cfg, double Rmin);

// Multiscale MDL motifs: Gaussian smoothing at kernel size 2^i,
// derivative-sign segmentation, k-means coding, one best-compressing
// repeated substring per scale. score = description-length gain in bits
// (0 when nothing compresses).
std::vector<Motif> mdlMotifs(const TimeSeries& series, int scales, int k,
                             std::vector<std::string>* warnings = nullptr);

}  // namespace saxmine
