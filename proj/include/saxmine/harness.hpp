#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "saxmine/sax.hpp"
#include "saxmine/timeseries.hpp"

namespace saxmine {

struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IngestOptions {
    int timestampColumn = 0;  // -1: no timestamp column, values only
    int valueColumn = 1;      // ignored when timestampColumn == -1
    double maxGapSteps = 10;  // interpolate gaps up to this many steps
};

struct IngestResult {
    // Segments split at gaps larger than maxGapSteps, longest first.
    std::vector<TimeSeries> segments;
    std::size_t rejectedRows = 0;  // non-finite values dropped
    std::size_t interpolated = 0;  // points filled by interpolation
    std::vector<std::string> warnings;

    const TimeSeries& longest() const { return segments.front(); }
};

// Parses `timestamp,value` (epoch seconds or ISO-8601) or a bare value
// column; `#` comments and a non-numeric header row are skipped.
IngestResult ingestCsv(const std::string& path, const IngestOptions& opt = {});

// Series emission, `timestamp,value` rows (or bare values without
// timestamps). Inverse of ingestCsv for gap-free input.
void emitCsv(const std::string& path, const TimeSeries& s,
             const std::map<std::string, double>& metadata = {});

struct SynthSpec {
    std::string kind;  // sine square noise walk planted-discord planted-motif step
    std::size_t length = 0;
    double period = 1440;
    double amplitude = 1.0;
    double noiseSigma = 0.0;
    long index = -1;          // discord/step position; -1 = middle
    int patternLen = 20;      // planted-motif
    int plants = 5;           // planted-motif
    double stepScale = 3.0;   // step: sigma multiplier after the step
    double meanShift = 0.0;   // step: mean offset after the step
    unsigned seed = 1;
};

struct SynthResult {
    TimeSeries series;
    std::map<std::string, double> metadata;  // e.g. planted indices
};

SynthResult synth(const SynthSpec& spec);

struct RunConfig {
    std::string algorithm;  // brute hotsax sequitur chaosgame mk
                            // grammar-motif tracking approx-motif mdl
    SaxConfig sax{3, 8, 64};
    int level = 3;
    int lead = 30;   // chaos detection window D
    int lag = 60;    // chaos lag window L
    int stride = 1;
    double rmin = 0.9;
    double r = 0.5;
    int scales = 8;
    int k = 5;
    int topK = 5;
    int numRefs = 5;
    double kSigma = 5.0;
    unsigned seed = 1;
    std::string format = "json";  // json | csv
    bool dumpGrammar = false;
    bool collapseRuns = false;
    bool rawDistance = false;
};

// Dispatches to the selected algorithm and assembles the report object:
// {config, series_meta, scores?, alarms?, discord?, motifs?, timing}.
nlohmann::ordered_json runDetector(const RunConfig& cfg, const TimeSeries& s);

// Plot-data emission: index,value,score,alarm columns.
std::string reportToCsv(const nlohmann::ordered_json& report,
                        const TimeSeries& s);

struct BenchEntry {
    std::string algo;
    std::size_t size = 0;
    double meanSeconds = 0.0;
    double stdSeconds = 0.0;
    int repetitions = 0;
    bool timedOut = false;
};

// Times each algorithm on identical synthetic inputs per size; one
// warm-up run is discarded. A rep exceeding timeoutSeconds marks the
// entry timed-out and stops further reps for it.
std::vector<BenchEntry> runBench(const std::vector<std::size_t>& sizes,
                                 const std::vector<std::string>& algos,
                                 int reps, double timeoutSeconds);

std::string benchToCsv(const std::vector<BenchEntry>& report);

}  // namespace saxmine
