#include "saxmine/anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

#include "saxmine/grammar.hpp"

namespace saxmine {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// All windows of length n, flattened; optionally z-normalized per window.
std::vector<double> buildWindows(const TimeSeries& s, int n, bool normalize) {
    const std::size_t count = s.size() - std::size_t(n) + 1;
    std::vector<double> w(count * std::size_t(n));
    for (std::size_t i = 0; i < count; ++i) {
        std::span<const double> src(s.values.data() + i, std::size_t(n));
        if (normalize) {
            auto z = znormalize(src);
            std::copy(z.begin(), z.end(), w.begin() + i * n);
        } else {
            std::copy(src.begin(), src.end(), w.begin() + i * n);
        }
    }
    return w;
}

// Squared Euclidean distance with early abandoning: returns +inf as soon
// as the partial sum strictly exceeds cutoff (exact ties are kept).
double squaredDist(const double* a, const double* b, int n, double cutoff) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
        if (acc > cutoff) return kInf;
    }
    return acc;
}

void checkDiscordPre(const TimeSeries& s, int n) {
    if (n < 1) throw InvalidInput("discord: window size must be >= 1");
    if (s.size() < 2 * std::size_t(n) + 1)
        throw InvalidInput("discord: need N >= 2n+1");
}

}  // namespace

DiscordResult bruteForceDiscord(const TimeSeries& series, int n,
                                DiscordStats* stats, const DiscordOptions& opt) {
    checkDiscordPre(series, n);
    const std::vector<double> win = buildWindows(series, n, opt.normalizeWindows);
    const std::size_t count = series.size() - std::size_t(n) + 1;

    double best = -1.0;
    std::size_t bestLoc = 0;
    bool found = false;
    for (std::size_t p = 0; p < count; ++p) {
        double nn = kInf;
        for (std::size_t q = 0; q < count; ++q) {
            if ((p >= q ? p - q : q - p) <= std::size_t(n)) continue;
            if (stats) ++stats->distanceCalls;
            const double d = squaredDist(&win[p * n], &win[q * n], n, nn);
            if (d < nn) nn = d;
        }
        if (nn == kInf) continue;  // window without any non-self-match
        if (!found || nn > best) {
            best = nn;
            bestLoc = p;
            found = true;
        }
    }
    if (!found) throw InvalidInput("discord: no non-self-matching pair exists");
    return {bestLoc, std::sqrt(best)};
}

DiscordResult hotSaxDiscord(const TimeSeries& series, int n,
                            const SaxConfig& cfg, unsigned seed,
                            DiscordStats* stats, const DiscordOptions& opt) {
    checkDiscordPre(series, n);
    if (cfg.windowSize != n)
        throw InvalidInput("hotSaxDiscord: cfg.windowSize must equal n");
    const std::vector<double> win = buildWindows(series, n, opt.normalizeWindows);
    const std::size_t count = series.size() - std::size_t(n) + 1;

    const SaxSequence sax = saxSliding(series, cfg);
    std::unordered_map<SaxWord, std::vector<std::size_t>> byWord;
    for (const SaxEntry& e : sax.entries) byWord[e.word].push_back(e.startIndex);

    std::size_t minCount = std::numeric_limits<std::size_t>::max();
    for (const auto& [w, idx] : byWord) minCount = std::min(minCount, idx.size());

    std::mt19937 rng(seed);
    std::vector<std::size_t> outer;
    outer.reserve(count);
    std::vector<char> isRare(count, 0);
    for (std::size_t i = 0; i < count; ++i)
        if (byWord[sax.entries[i].word].size() == minCount) {
            outer.push_back(i);
            isRare[i] = 1;
        }
    std::vector<std::size_t> rest;
    rest.reserve(count - outer.size());
    for (std::size_t i = 0; i < count; ++i)
        if (!isRare[i]) rest.push_back(i);
    std::shuffle(rest.begin(), rest.end(), rng);
    outer.insert(outer.end(), rest.begin(), rest.end());

    // one shared shuffled order for the tail of every inner scan
    std::vector<std::size_t> innerTail(count);
    std::iota(innerTail.begin(), innerTail.end(), 0);
    std::shuffle(innerTail.begin(), innerTail.end(), rng);

    double best = -1.0;
    std::size_t bestLoc = 0;
    bool found = false;
    std::vector<char> seen(count, 0);
    for (std::size_t p : outer) {
        double nn = kInf;
        const auto& sameWord = byWord[sax.entries[p].word];
        std::fill(seen.begin(), seen.end(), 0);
        bool pruned = false;
        auto visit = [&](std::size_t q) -> bool {  // false = abandon p
            if (seen[q]) return true;
            seen[q] = 1;
            if ((p >= q ? p - q : q - p) <= std::size_t(n)) return true;
            if (stats) ++stats->distanceCalls;
            const double d = squaredDist(&win[p * n], &win[q * n], n, nn);
            if (d < nn) nn = d;
            return !(found && nn < best);
        };
        for (std::size_t q : sameWord)
            if (!visit(q)) {
                pruned = true;
                break;
            }
        if (!pruned)
            for (std::size_t q : innerTail)
                if (!visit(q)) {
                    pruned = true;
                    break;
                }
        if (pruned || nn == kInf) continue;
        if (!found || nn > best || (nn == best && p < bestLoc)) {
            best = nn;
            bestLoc = p;
            found = true;
        }
    }
    if (!found) throw InvalidInput("discord: no non-self-matching pair exists");
    return {bestLoc, std::sqrt(best)};
}

ScoreSeries sequiturDensity(const TimeSeries& series, const SaxConfig& cfg,
                            bool collapseRuns) {
    const SaxSequence sax = saxSliding(series, cfg);
    const std::size_t N = series.size();
    const std::size_t w = std::size_t(cfg.windowSize);

    // intern words to terminal ids
    std::unordered_map<SaxWord, int> vocab;
    std::vector<int> tokens;
    std::vector<std::size_t> runStart;  // word index where each token's run begins
    tokens.reserve(sax.entries.size());
    for (std::size_t i = 0; i < sax.entries.size(); ++i) {
        auto [it, fresh] =
            vocab.try_emplace(sax.entries[i].word, int(vocab.size()));
        if (collapseRuns && !tokens.empty() && tokens.back() == it->second)
            continue;
        tokens.push_back(it->second);
        runStart.push_back(i);
    }

    const Grammar g = inferGrammar(tokens);
    const std::vector<UnwrappedToken> unwrapped = unwrapGrammar(g);

    // depth per word position; collapsed runs share their token's depth
    std::vector<int> wordDepth(sax.entries.size(), 0);
    for (std::size_t t = 0; t < unwrapped.size(); ++t) {
        const std::size_t from = runStart[t];
        const std::size_t to =
            t + 1 < runStart.size() ? runStart[t + 1] : sax.entries.size();
        for (std::size_t i = from; i < to; ++i)
            wordDepth[i] = unwrapped[t].depth;
    }

    // density at point i = sum of depths of words covering i
    std::vector<double> diff(N + 1, 0.0);
    for (std::size_t i = 0; i < wordDepth.size(); ++i) {
        diff[i] += wordDepth[i];
        diff[i + w] -= wordDepth[i];
    }
    ScoreSeries out;
    out.scores.resize(N);
    double run = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        run += diff[i];
        out.scores[i] = run;
    }
    out.validFrom = 0;
    out.validTo = N - 1;
    return out;
}

ScoreSeries densityToScore(const ScoreSeries& density) {
    ScoreSeries out = density;
    double mx = -kInf;
    for (std::size_t i = density.validFrom; i <= density.validTo; ++i)
        mx = std::max(mx, density.scores[i]);
    for (std::size_t i = 0; i < out.scores.size(); ++i) {
        if (i < density.validFrom || i > density.validTo)
            out.scores[i] = kNaN;
        else
            out.scores[i] = mx - density.scores[i];
    }
    return out;
}

ChaosHistogram chaosHistogram(std::span<const SaxWord> words, int level) {
    if (level < 1) throw InvalidInput("chaosHistogram: level must be >= 1");
    std::size_t bins = 1;
    for (int i = 0; i < level; ++i) bins *= 4;
    ChaosHistogram h;
    h.level = level;
    h.counts.assign(bins, 0.0);
    for (const SaxWord& w : words) {
        if (w.size() < std::size_t(level))
            throw InvalidInput("chaosHistogram: word shorter than level");
        for (char c : w)
            if (c < 'a' || c > 'd')
                throw InvalidInput("chaosHistogram: alphabet must be 4 (a..d)");
        for (std::size_t p = 0; p + level <= w.size(); ++p) {
            std::size_t bin = 0;
            for (int k = 0; k < level; ++k)
                bin = bin * 4 + std::size_t(w[p + k] - 'a');
            h.counts[bin] += 1.0;
        }
    }
    if (!words.empty())
        for (double& c : h.counts) c /= double(words.size());
    return h;
}

double histogramSquaredDistance(const ChaosHistogram& a,
                                const ChaosHistogram& b) {
    if (a.counts.size() != b.counts.size())
        throw InvalidInput("histogramSquaredDistance: bin count mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.counts.size(); ++i) {
        const double d = a.counts[i] - b.counts[i];
        acc += d * d;
    }
    return acc;
}

ScoreSeries chaosGameScore(const TimeSeries& series, const SaxConfig& cfg,
                           int level, int D, int L, int stride) {
    if (cfg.alpha != 4) throw InvalidInput("chaosGameScore: alpha must be 4");
    if (D < 1 || L < D) throw InvalidInput("chaosGameScore: need L >= D >= 1");
    if (stride < 1) throw InvalidInput("chaosGameScore: stride must be >= 1");
    if (level > cfg.wordSize)
        throw InvalidInput("chaosGameScore: level must be <= wordSize");
    const SaxSequence sax = saxSliding(series, cfg);
    const long numWords = long(sax.entries.size());
    const long spanD = long(D - 1) * stride + 1;  // word indices touched
    const long spanL = long(L) * stride;
    if (spanL + spanD > numWords)
        throw InvalidInput("chaosGameScore: series too short for L+D windows");

    const std::size_t N = series.size();
    ScoreSeries out;
    out.scores.assign(N, kNaN);
    out.validFrom = std::size_t(spanL);
    out.validTo = std::size_t(numWords - spanD);

    std::vector<SaxWord> det(D), lag(L);
    for (long i = spanL; i <= numWords - spanD; ++i) {
        for (int j = 0; j < D; ++j) det[j] = sax.entries[i + long(j) * stride].word;
        for (int j = 0; j < L; ++j)
            lag[j] = sax.entries[i - long(L - j) * stride].word;
        const ChaosHistogram hd = chaosHistogram(det, level);
        const ChaosHistogram hl = chaosHistogram(lag, level);
        out.scores[std::size_t(i)] = histogramSquaredDistance(hd, hl);
    }
    return out;
}

std::vector<std::size_t> thresholdAlarms(const ScoreSeries& s, double k) {
    if (k <= 0) throw InvalidInput("thresholdAlarms: k must be > 0");
    if (s.scores.empty() || s.validFrom > s.validTo ||
        s.validTo >= s.scores.size())
        throw InvalidInput("thresholdAlarms: empty valid range");
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = s.validFrom; i <= s.validTo; ++i) {
        if (std::isnan(s.scores[i])) continue;
        sum += s.scores[i];
        ++n;
    }
    if (n == 0) throw InvalidInput("thresholdAlarms: empty valid range");
    const double m = sum / double(n);
    double var = 0.0;
    for (std::size_t i = s.validFrom; i <= s.validTo; ++i) {
        if (std::isnan(s.scores[i])) continue;
        var += (s.scores[i] - m) * (s.scores[i] - m);
    }
    const double sd = std::sqrt(var / double(n));
    std::vector<std::size_t> alarms;
    if (sd < 1e-12) return alarms;  // all-equal guard
    const double thr = m + k * sd;
    bool inRun = false;
    for (std::size_t i = s.validFrom; i <= s.validTo; ++i) {
        const bool over = !std::isnan(s.scores[i]) && s.scores[i] > thr;
        if (over && !inRun) alarms.push_back(i);
        inRun = over;
    }
    return alarms;
}

ScoreSeries clampValidRange(const ScoreSeries& s, std::size_t from,
                            std::size_t to) {
    ScoreSeries out = s;
    out.validFrom = std::max(s.validFrom, from);
    out.validTo = std::min(s.validTo, to);
    for (std::size_t i = 0; i < out.scores.size(); ++i)
        if (i < out.validFrom || i > out.validTo) out.scores[i] = kNaN;
    return out;
}

}  // namespace saxmine
