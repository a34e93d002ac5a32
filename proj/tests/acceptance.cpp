// Acceptance suite: one pass/fail line per criterion, exit 0 only if all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "saxmine/anomaly.hpp"
#include "saxmine/grammar.hpp"
#include "saxmine/harness.hpp"
#include "saxmine/motif.hpp"

using namespace saxmine;

namespace {

std::mt19937 rngFor(unsigned seed) { return std::mt19937(seed); }

TimeSeries ts(std::vector<double> v) { return TimeSeries{std::move(v), {}, {}}; }

TimeSeries randomSeries(std::size_t n, unsigned seed) {
    auto rng = rngFor(seed);
    std::normal_distribution<double> g;
    std::vector<double> v(n);
    for (double& x : v) x = g(rng);
    return ts(std::move(v));
}

bool check(bool ok, const char* what) {
    if (!ok) std::printf("    failed: %s\n", what);
    return ok;
}

// ---------------------------------------------------------------- 1
bool criterion1() {
    bool ok = true;
    const auto b3 = gaussianBreakpoints(3).cuts;
    const auto b4 = gaussianBreakpoints(4).cuts;
    ok &= check(b3.size() == 2 && std::abs(b3[0] + 0.43) < 0.005 &&
                    std::abs(b3[1] - 0.43) < 0.005,
                "alpha=3 cuts are [-0.43, 0.43]");
    ok &= check(b4.size() == 3 && std::abs(b4[0] + 0.67) < 0.005 &&
                    std::abs(b4[1]) < 1e-9 && std::abs(b4[2] - 0.67) < 0.005,
                "alpha=4 cuts are [-0.67, 0, 0.67]");
    auto rng = rngFor(1);
    std::normal_distribution<double> g;
    for (int alpha : {3, 4}) {
        const Breakpoints bp = gaussianBreakpoints(alpha);
        std::vector<std::size_t> bins(std::size_t(alpha), 0);
        const std::size_t n = 1000000;
        for (std::size_t i = 0; i < n; ++i)
            ++bins[std::size_t(quantizeValue(g(rng), bp))];
        for (int b = 0; b < alpha; ++b)
            ok &= check(std::abs(double(bins[std::size_t(b)]) / double(n) -
                                 1.0 / alpha) < 0.005,
                        "bin frequency within 0.005 of 1/alpha on 1e6 draws");
    }
    return ok;
}

// ---------------------------------------------------------------- 2
bool criterion2() {
    bool ok = true;
    auto rng = rngFor(22);
    int strictlyFewer = 0;
    const int instances = 50;
    for (int inst = 0; inst < instances; ++inst) {
        const std::size_t N = 600 + rng() % 601;
        const int n = 5 * (4 + int(rng() % 9));  // 20..60, word-size aligned
        const TimeSeries s = randomSeries(N, 5000 + unsigned(inst));
        DiscordStats bs;
        const DiscordResult ref = bruteForceDiscord(s, n, &bs);
        bool fewer = true;
        for (unsigned seed : {1u, 2u, 3u}) {
            DiscordStats hs;
            const DiscordResult got =
                hotSaxDiscord(s, n, SaxConfig{3, 5, n}, seed, &hs);
            ok &= check(got.location == ref.location,
                        "hot sax location equals brute force");
            ok &= check(std::abs(got.distance - ref.distance) < 1e-9,
                        "hot sax distance equals brute force");
            if (hs.distanceCalls >= bs.distanceCalls) fewer = false;
        }
        if (fewer) ++strictlyFewer;
    }
    std::printf("    strictly fewer distance calls on %d/%d instances\n",
                strictlyFewer, instances);
    ok &= check(strictlyFewer * 10 >= instances * 9,
                "strictly fewer calls on >= 90% of instances");
    return ok;
}

// ---------------------------------------------------------------- 3
bool criterion3() {
    bool ok = true;
    auto rng = rngFor(33);
    for (int inst = 0; inst < 50; ++inst) {
        const std::size_t N = 400 + rng() % 1601;  // <= 2000
        const int n = 20 + int(rng() % 31);
        const TimeSeries s = randomSeries(N, 7000 + unsigned(inst));
        const Motif ref = bruteForceClosestPair(s, n);
        for (int numRefs : {1, 5})
            for (unsigned seed : {1u, 2u}) {
                const Motif got = mkMotif(s, n, numRefs, seed);
                ok &= check(got.occurrences == ref.occurrences,
                            "mk pair equals brute-force pair");
                ok &= check(std::abs(got.score - ref.score) < 1e-9,
                            "mk distance equals brute-force distance");
            }
    }
    return ok;
}

// ---------------------------------------------------------------- 4
bool grammarLawsHold(const Grammar& g, const std::vector<int>& x) {
    if (expandGrammar(g) != x) return false;
    // digram uniqueness (overlapping duplicates allowed)
    std::map<std::pair<long, long>, std::pair<int, std::size_t>> seen;
    auto key = [](const Token& t) {
        return t.kind == Token::Kind::Rule ? long(t.id) * 2 + 1 : long(t.id) * 2;
    };
    auto scan = [&](const std::vector<Token>& body, int container) {
        for (std::size_t i = 0; i + 1 < body.size(); ++i) {
            const auto k = std::make_pair(key(body[i]), key(body[i + 1]));
            auto it = seen.find(k);
            if (it != seen.end() &&
                !(it->second.first == container && i == it->second.second + 1))
                return false;
            seen[k] = {container, i};
        }
        return true;
    };
    if (!scan(g.sequence, -1)) return false;
    for (const auto& [rid, body] : g.rules)
        if (!scan(body, rid)) return false;
    // rule utility
    std::map<int, int> refs;
    auto count = [&](const std::vector<Token>& body) {
        for (const Token& t : body)
            if (t.kind == Token::Kind::Rule) ++refs[t.id];
    };
    count(g.sequence);
    for (const auto& [rid, body] : g.rules) count(body);
    for (const auto& [rid, body] : g.rules)
        if (body.size() < 2 || refs[rid] < 2 || g.useCount.at(rid) != refs[rid])
            return false;
    return true;
}

bool criterion4() {
    bool ok = true;
    auto rng = rngFor(44);
    for (int trial = 0; trial < 1000; ++trial) {
        const int len = 1 + int(rng() % 400);
        const int vocab = 1 + int(rng() % 16);
        std::vector<int> x(static_cast<std::size_t>(len));
        for (int& t : x) t = int(rng() % vocab);
        if (!grammarLawsHold(inferGrammar(x), x)) {
            ok = check(false, "grammar laws on a random stream");
            break;
        }
    }
    for (int k : {8, 32, 128, 512}) {
        std::vector<int> x;
        for (int i = 0; i < k; ++i) {
            x.push_back(0);
            x.push_back(1);
        }
        int maxDepth = 0;
        for (const auto& u : unwrapGrammar(inferGrammar(x)))
            maxDepth = std::max(maxDepth, u.depth);
        ok &= check(double(maxDepth) >= std::log2(double(k)) - 1.0,
                    "unwrap depth >= log2(k) - 1 on a doubled stream");
    }
    return ok;
}

// ---------------------------------------------------------------- 5
bool criterion5() {
    bool ok = true;
    const std::vector<SaxWord> one{"aaa"};
    ok &= check(chaosHistogram(one, 3).counts.size() == 64,
                "level-3 histogram has 64 bins");

    auto rng = rngFor(55);
    for (int trial = 0; trial < 100; ++trial) {
        const int wordSize = 4 + int(rng() % 8);
        const int level = 1 + int(rng() % 3);
        const std::size_t wordCount = 1 + rng() % 30;
        std::vector<SaxWord> words(wordCount);
        for (auto& w : words) {
            w.resize(std::size_t(wordSize));
            for (char& c : w) c = char('a' + rng() % 4);
        }
        double sum = 0;
        for (double c : chaosHistogram(words, level).counts)
            sum += c * double(wordCount);
        if (std::abs(sum - double(wordSize - level + 1) * double(wordCount)) >
            1e-9) {
            ok = check(false, "pre-normalization bin sum formula");
            break;
        }
    }

    const SaxConfig cfg{4, 8, 16};
    const int D = 40, L = 80;  // wide histograms damp noise-only fluctuation
    const std::size_t stepAt = 600;
    int hits = 0;
    const int trials = 40;
    for (int t = 0; t < trials; ++t) {
        auto g = rngFor(9000 + unsigned(t));
        std::normal_distribution<double> gauss;
        std::vector<double> v(1200);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = std::sin(double(i) / 7.0) +
                   gauss(g) * (i < stepAt ? 0.1 : 1.0);
        const ScoreSeries sc = chaosGameScore(ts(std::move(v)), cfg, 3, D, L);
        std::size_t argmax = sc.validFrom;
        for (std::size_t i = sc.validFrom; i <= sc.validTo; ++i)
            if (sc.scores[i] > sc.scores[argmax]) argmax = i;
        const double tol = double(D + L) + cfg.windowSize;
        if (std::abs(double(argmax) - double(stepAt)) <= tol) ++hits;
    }
    std::printf("    variance-step argmax hit on %d/%d trials\n", hits, trials);
    ok &= check(hits * 100 >= trials * 95,
                "argmax within step +- (D+L) windows in >= 95% of trials");
    return ok;
}

// ---------------------------------------------------------------- 6
// hourly resolution: weekly sine with a 2-hour maintenance burst; trimmed so
// the run-collapsed token stream is a whole number of weekly periods (the
// grammar then nests every point equally deep and the control stays flat)
std::vector<double> weeklyBase(std::size_t weeks) {
    const std::size_t P = 168;
    std::vector<double> v(weeks * P + 23 - 41);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = std::sin(2.0 * M_PI * double(i % P) / double(P));
        const std::size_t h = i % P;
        if (h >= 60 && h < 62) v[i] += 5.0;
    }
    return v;
}

bool criterion6() {
    bool ok = true;
    const std::size_t weeks = 512;
    const TimeSeries control = ts(weeklyBase(weeks));
    std::vector<double> exc = weeklyBase(weeks);
    for (std::size_t i = 700; i < 730; ++i) exc[i] += 8.0;  // one-off excursion
    const TimeSeries excursion = ts(std::move(exc));

    RunConfig seq;
    seq.algorithm = "sequitur";
    seq.sax = SaxConfig{3, 8, 24};
    seq.collapseRuns = true;
    const auto seqControl = runDetector(seq, control);
    const auto seqExc = runDetector(seq, excursion);
    std::printf("    sequitur alarms: control=%zu excursion=%zu\n",
                seqControl["alarms"].size(), seqExc["alarms"].size());
    ok &= check(seqControl["alarms"].empty(),
                "sequitur raises no alarm on the clean weekly control");
    ok &= check(!seqExc["alarms"].empty(),
                "sequitur raises an alarm on the high-mean excursion");
    if (!seqExc["alarms"].empty()) {
        const auto at = seqExc["alarms"][0].get<std::size_t>();
        ok &= check(at >= 700 - 48 && at <= 730 + 48,
                    "sequitur alarm falls at the excursion");
    }

    RunConfig chaos;
    chaos.algorithm = "chaosgame";
    chaos.sax = SaxConfig{4, 8, 8};  // short feature window
    chaos.level = 3;
    chaos.lead = 4;
    chaos.lag = 8;
    const auto chaosControl = runDetector(chaos, control);
    std::printf("    chaos game alarms on control=%zu\n",
                chaosControl["alarms"].size());
    ok &= check(!chaosControl["alarms"].empty(),
                "chaos game raises a false alarm on the weekly control");
    return ok;
}

// ---------------------------------------------------------------- 7
bool criterion7() {
    bool ok = true;
    const auto report = runBench({43200, 86400}, {"sequitur", "chaosgame"}, 3,
                                 600.0);
    std::map<std::string, std::map<std::size_t, double>> mean;
    for (const auto& e : report) {
        if (e.timedOut) ok = check(false, "benchmark run timed out");
        mean[e.algo][e.size] = e.meanSeconds;
    }
    for (const std::string& algo : {"sequitur", "chaosgame"}) {
        const double ratio = mean[algo][86400] / mean[algo][43200];
        std::printf("    %s: %.3fs -> %.3fs, ratio %.2f\n", algo.c_str(),
                    mean[algo][43200], mean[algo][86400], ratio);
        ok &= check(ratio >= 1.5 && ratio <= 3.0,
                    "doubling the input scales runtime by 1.5x..3.0x");
    }

    SynthSpec spec;
    spec.kind = "sine";
    spec.length = 20000;
    spec.period = 1440;
    spec.noiseSigma = 0.2;
    spec.seed = 7;
    const TimeSeries s = synth(spec).series;
    using Clock = std::chrono::steady_clock;
    auto t0 = Clock::now();
    sequiturDensity(s, SaxConfig{3, 10, 100});
    const double seqSec = std::chrono::duration<double>(Clock::now() - t0).count();
    t0 = Clock::now();
    hotSaxDiscord(s, 100, SaxConfig{3, 10, 100}, 1);
    const double hotSec = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("    20k points: sequitur %.3fs, hot sax %.3fs (%.1fx)\n",
                seqSec, hotSec, hotSec / seqSec);
    ok &= check(hotSec >= 10.0 * seqSec,
                "hot sax at 20k is >= 10x slower than sequitur");
    return ok;
}

// ---------------------------------------------------------------- 8
// fraction of planted starts covered by some motif occurrence within tol
double recovery(const std::vector<Motif>& motifs,
                const std::vector<std::size_t>& plants, std::size_t tol) {
    std::size_t hit = 0;
    for (std::size_t p : plants) {
        bool found = false;
        for (const Motif& m : motifs) {
            for (std::size_t o : m.occurrences)
                if ((o >= p ? o - p : p - o) <= tol) {
                    found = true;
                    break;
                }
            if (found) break;
        }
        if (found) ++hit;
    }
    return double(hit) / double(plants.size());
}

bool criterion8() {
    bool ok = true;
    double grammarHits = 0, trackingHits = 0, approxHits = 0;
    const int seeds = 20;
    for (int sd = 0; sd < seeds; ++sd) {
        SynthSpec spec;
        spec.kind = "planted-motif";
        spec.length = 1000;
        spec.patternLen = 20;
        spec.plants = 5;
        spec.noiseSigma = 0.05;
        spec.amplitude = 3.0;
        spec.seed = unsigned(100 + sd);
        const auto gen = synth(spec);
        std::vector<std::size_t> plants;
        for (int p = 0; p < 5; ++p)
            plants.push_back(std::size_t(
                gen.metadata.at("plant_" + std::to_string(p))));

        grammarHits += recovery(
            grammarMotifs(gen.series, SaxConfig{3, 4, 16}, 10), plants, 16);
        // exact repeats: a strict radius keeps only true copies alive, so the
        // longest surviving tracker is the full pattern at every plant
        trackingHits +=
            recovery(motifTracking(gen.series, 4, 1e-6), plants, 4);
        approxHits += recovery(
            approximateMotifs(gen.series, SaxConfig{4, 5, 20}, 0.95), plants, 4);
    }
    grammarHits /= seeds;
    trackingHits /= seeds;
    approxHits /= seeds;
    std::printf("    recovery: grammar %.0f%%, tracking %.0f%%, approx %.0f%%\n",
                grammarHits * 100, trackingHits * 100, approxHits * 100);
    ok &= check(grammarHits >= 0.8, "grammar motifs recover >= 80%");
    ok &= check(trackingHits >= 0.8, "motif tracking recovers >= 80%");
    ok &= check(approxHits >= 0.8, "approximate motifs recover >= 80%");

    // square wave: the matching scale yields a tiling motif that compresses
    std::vector<double> sq(512);
    for (std::size_t i = 0; i < sq.size(); ++i)
        sq[i] = (i / 16) % 2 == 0 ? 1.0 : -1.0;
    const auto motifs = mdlMotifs(ts(std::move(sq)), 5, 2);
    bool tiled = false;
    for (const Motif& m : motifs) {
        if (m.score <= 0.0 || m.occurrences.size() < 3) continue;
        bool regular = true;
        const std::size_t gap = m.occurrences[1] - m.occurrences[0];
        for (std::size_t i = 1; i < m.occurrences.size(); ++i)
            if (m.occurrences[i] - m.occurrences[i - 1] != gap) regular = false;
        if (regular && gap % 16 == 0) tiled = true;
    }
    ok &= check(tiled, "square wave yields a compressing tiling motif");
    return ok;
}

// ---------------------------------------------------------------- 9
bool criterion9() {
    bool ok = true;
    const SaxConfig cfg{3, 4, 30};
    const TimeSeries s = randomSeries(400, 12);

    Motif selfMatch;
    selfMatch.occurrences = {10, 12};
    selfMatch.length = 40;
    const auto collapsed = postProcessMotifs(s, {selfMatch}, cfg);
    ok &= check(collapsed.size() == 1 &&
                    collapsed[0].occurrences == std::vector<std::size_t>{10},
                "self-match collapse");

    TimeSeries rampSeries = s;
    for (std::size_t i = 100; i < 140; ++i) rampSeries.values[i] = double(i);
    Motif rampMotif;
    rampMotif.occurrences = {100};
    rampMotif.length = 40;
    ok &= check(postProcessMotifs(rampSeries, {rampMotif}, cfg).empty(),
                "monotone-motif removal");

    Motif a, b;
    a.occurrences = {10, 100, 200};
    a.length = 35;
    b.occurrences = {100, 200, 300};
    b.length = 34;
    const auto merged = postProcessMotifs(s, {a, b}, cfg);
    ok &= check(merged.size() == 1 &&
                    merged[0].occurrences ==
                        std::vector<std::size_t>{10, 100, 200, 300} &&
                    merged[0].length == 35,
                "overlap merge");

    auto rng = rngFor(77);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Motif> in;
        for (int m = 0; m < 4; ++m) {
            Motif mo;
            for (int o = 0; o < 1 + int(rng() % 5); ++o)
                mo.occurrences.push_back(rng() % 350);
            std::sort(mo.occurrences.begin(), mo.occurrences.end());
            mo.length = 20 + rng() % 30;
            in.push_back(std::move(mo));
        }
        const auto once = postProcessMotifs(s, in, cfg);
        const auto twice = postProcessMotifs(s, once, cfg);
        bool same = once.size() == twice.size();
        for (std::size_t i = 0; same && i < once.size(); ++i)
            same = once[i].occurrences == twice[i].occurrences &&
                   once[i].length == twice[i].length;
        if (!same) {
            ok = check(false, "idempotence");
            break;
        }
    }
    return ok;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        bool (*fn)();
    };
    const Entry entries[] = {
        {"1 breakpoint fidelity", criterion1},
        {"2 hot sax exactness", criterion2},
        {"3 mk exactness", criterion3},
        {"4 grammar laws", criterion4},
        {"5 chaos game structure", criterion5},
        {"6 detector sensitivity contrast", criterion6},
        {"7 runtime scaling", criterion7},
        {"8 motif planted truth", criterion8},
        {"9 post-processing laws", criterion9},
    };
    int failures = 0;
    for (const Entry& e : entries) {
        std::printf("criterion %s:\n", e.name);
        const bool ok = e.fn();
        std::printf("criterion %s: %s\n", e.name, ok ? "PASS" : "FAIL");
        if (!ok) ++failures;
    }
    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
