#include <chrono>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "saxmine/anomaly.hpp"
#include "saxmine/grammar.hpp"
#include "saxmine/harness.hpp"
#include "saxmine/motif.hpp"

namespace saxmine {

namespace {

using Clock = std::chrono::steady_clock;
using json = nlohmann::ordered_json;

double secondsSince(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

json configJson(const RunConfig& c) {
    return json{{"algorithm", c.algorithm},
                {"alpha", c.sax.alpha},
                {"word", c.sax.wordSize},
                {"window", c.sax.windowSize},
                {"level", c.level},
                {"lead", c.lead},
                {"lag", c.lag},
                {"stride", c.stride},
                {"rmin", c.rmin},
                {"r", c.r},
                {"scales", c.scales},
                {"k", c.k},
                {"topk", c.topK},
                {"refs", c.numRefs},
                {"ksigma", c.kSigma},
                {"seed", c.seed},
                {"format", c.format},
                {"dump_grammar", c.dumpGrammar},
                {"collapse_runs", c.collapseRuns},
                {"raw_distance", c.rawDistance}};
}

json seriesMeta(const TimeSeries& s) {
    json m{{"length", s.size()}};
    if (s.startTime) m["start_time"] = *s.startTime;
    if (s.stepSeconds) m["step_seconds"] = *s.stepSeconds;
    return m;
}

json scoresJson(const ScoreSeries& s) {
    json arr = json::array();
    for (double v : s.scores)
        arr.push_back(std::isnan(v) ? json(nullptr) : json(v));
    return json{{"valid_from", s.validFrom},
                {"valid_to", s.validTo},
                {"values", std::move(arr)}};
}

json motifsJson(const std::vector<Motif>& motifs, const TimeSeries& s) {
    json arr = json::array();
    for (const Motif& m : motifs) {
        json rec{{"source", m.source},
                 {"length", m.length},
                 {"score", m.score},
                 {"occurrences", m.occurrences}};
        if (s.startTime && s.stepSeconds) {
            json times = json::array();
            for (std::size_t o : m.occurrences)
                times.push_back(*s.startTime + double(o) * *s.stepSeconds);
            rec["occurrence_times"] = std::move(times);
        }
        arr.push_back(std::move(rec));
    }
    return arr;
}

std::string dumpSequiturGrammar(const TimeSeries& s, const SaxConfig& cfg) {
    const SaxSequence sax = saxSliding(s, cfg);
    std::unordered_map<SaxWord, int> vocab;
    std::vector<int> tokens;
    std::vector<std::string> names;
    for (const SaxEntry& e : sax.entries) {
        auto [it, fresh] = vocab.try_emplace(e.word, int(vocab.size()));
        if (fresh) names.push_back(e.word);
        tokens.push_back(it->second);
    }
    return dumpGrammar(inferGrammar(tokens), &names);
}

}  // namespace

json runDetector(const RunConfig& cfg, const TimeSeries& s) {
    const auto t0 = Clock::now();
    json out;
    out["config"] = configJson(cfg);
    out["series_meta"] = seriesMeta(s);

    const DiscordOptions dopt{!cfg.rawDistance};
    const std::string& a = cfg.algorithm;
    if (a == "chaosgame" && cfg.sax.alpha != 4)
        throw InvalidInput("config error: chaosgame requires --alpha 4");

    auto emitScores = [&](const ScoreSeries& sc) {
        out["scores"] = scoresJson(sc);
        out["alarms"] = thresholdAlarms(sc, cfg.kSigma);
    };

    if (a == "brute" || a == "hotsax") {
        SaxConfig sax = cfg.sax;
        sax.windowSize = cfg.sax.windowSize;
        DiscordResult d =
            a == "brute"
                ? bruteForceDiscord(s, sax.windowSize, nullptr, dopt)
                : hotSaxDiscord(s, sax.windowSize, sax, cfg.seed, nullptr, dopt);
        out["discord"] = json{{"location", d.location}, {"distance", d.distance}};
    } else if (a == "sequitur") {
        const ScoreSeries density =
            sequiturDensity(s, cfg.sax, cfg.collapseRuns);
        ScoreSeries score = densityToScore(density);
        // alarm only where every covering word exists (edge roll-off of
        // the density would trivially trip the threshold)
        const std::size_t w = std::size_t(cfg.sax.windowSize);
        score = clampValidRange(score, w - 1, s.size() - w);
        emitScores(score);
        if (cfg.dumpGrammar) out["grammar"] = dumpSequiturGrammar(s, cfg.sax);
    } else if (a == "chaosgame") {
        emitScores(
            chaosGameScore(s, cfg.sax, cfg.level, cfg.lead, cfg.lag, cfg.stride));
    } else if (a == "mk") {
        const Motif m =
            mkMotif(s, cfg.sax.windowSize, cfg.numRefs, cfg.seed);
        out["motifs"] = motifsJson({m}, s);
    } else if (a == "grammar-motif") {
        out["motifs"] = motifsJson(grammarMotifs(s, cfg.sax, cfg.topK), s);
        if (cfg.dumpGrammar) out["grammar"] = dumpSequiturGrammar(s, cfg.sax);
    } else if (a == "tracking") {
        out["motifs"] = motifsJson(motifTracking(s, cfg.sax.alpha, cfg.r), s);
    } else if (a == "approx-motif") {
        out["motifs"] = motifsJson(approximateMotifs(s, cfg.sax, cfg.rmin), s);
    } else if (a == "mdl") {
        std::vector<std::string> warnings;
        out["motifs"] = motifsJson(mdlMotifs(s, cfg.scales, cfg.k, &warnings), s);
        if (!warnings.empty()) out["warnings"] = warnings;
    } else {
        throw InvalidInput("config error: unknown algorithm '" + a + "'");
    }
    out["timing"] = json{{"seconds", secondsSince(t0)}};
    return out;
}

std::string reportToCsv(const json& report, const TimeSeries& s) {
    std::ostringstream os;
    os << "index,value,score,alarm\n";
    std::vector<char> alarm(s.size(), 0);
    if (report.contains("alarms"))
        for (const auto& a : report["alarms"]) alarm[a.get<std::size_t>()] = 1;
    for (std::size_t i = 0; i < s.size(); ++i) {
        os << i << ',' << s.values[i] << ',';
        if (report.contains("scores")) {
            const auto& v = report["scores"]["values"][i];
            if (!v.is_null()) os << v.get<double>();
        }
        os << ',' << int(alarm[i]) << '\n';
    }
    return os.str();
}

std::vector<BenchEntry> runBench(const std::vector<std::size_t>& sizes,
                                 const std::vector<std::string>& algos,
                                 int reps, double timeoutSeconds) {
    if (reps < 1) throw InvalidInput("runBench: reps must be >= 1");
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i)
        if (sizes[i + 1] <= sizes[i])
            throw InvalidInput("runBench: sizes must be ascending");

    std::vector<BenchEntry> report;
    for (std::size_t size : sizes) {
        // identical input per size across algorithms: a daily-cycle sine
        // with noise, one point per minute
        SynthSpec spec;
        spec.kind = "sine";
        spec.length = size;
        spec.period = 1440;
        spec.noiseSigma = 0.2;
        spec.seed = 7;
        const TimeSeries series = synth(spec).series;

        for (const std::string& algo : algos) {
            RunConfig cfg;
            cfg.algorithm = algo;
            if (algo == "chaosgame") {
                cfg.sax = SaxConfig{4, 8, 16};
                cfg.lead = 30;
                cfg.lag = 60;
            } else if (algo == "hotsax" || algo == "brute") {
                cfg.sax = SaxConfig{3, 10, 100};
            } else {
                cfg.sax = SaxConfig{3, 10, 100};
            }
            BenchEntry e{algo, size, 0, 0, 0, false};
            std::vector<double> times;
            for (int rep = -1; rep < reps; ++rep) {  // rep -1 = warm-up
                const auto t0 = std::chrono::steady_clock::now();
                runDetector(cfg, series);
                const double dt = std::chrono::duration<double>(
                                      std::chrono::steady_clock::now() - t0)
                                      .count();
                if (rep >= 0) times.push_back(dt);
                if (dt > timeoutSeconds) {
                    e.timedOut = true;
                    break;
                }
            }
            if (!times.empty()) {
                double m = 0;
                for (double t : times) m += t;
                m /= double(times.size());
                double var = 0;
                for (double t : times) var += (t - m) * (t - m);
                e.meanSeconds = m;
                e.stdSeconds = std::sqrt(var / double(times.size()));
                e.repetitions = int(times.size());
            }
            report.push_back(e);
        }
    }
    return report;
}

std::string benchToCsv(const std::vector<BenchEntry>& report) {
    std::ostringstream os;
    os << "algorithm,size,mean_seconds,std_seconds,repetitions,timed_out\n";
    for (const BenchEntry& e : report)
        os << e.algo << ',' << e.size << ',' << e.meanSeconds << ','
           << e.stdSeconds << ',' << e.repetitions << ','
           << (e.timedOut ? 1 : 0) << '\n';
    // scaling summary: ratio of consecutive-size means per algorithm
    for (std::size_t i = 0; i < report.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (report[j].algo == report[i].algo &&
                report[j].size < report[i].size &&
                report[j].meanSeconds > 0 && !report[i].timedOut &&
                !report[j].timedOut)
                os << "# scaling " << report[i].algo << " " << report[j].size
                   << "->" << report[i].size << ": "
                   << report[i].meanSeconds / report[j].meanSeconds << '\n';
    return os.str();
}

}  // namespace saxmine
