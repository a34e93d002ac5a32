#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "saxmine/harness.hpp"

namespace saxmine {

namespace {

bool parseDouble(const std::string& s, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(s, &used);
        while (used < s.size() && std::isspace(std::uint8_t(s[used]))) ++used;
        return used == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

// epoch seconds or ISO-8601 (YYYY-MM-DD[THH:MM:SS[Z]])
bool parseTimestamp(const std::string& s, double& out) {
    if (parseDouble(s, out)) return true;
    std::tm tm{};
    std::istringstream is(s);
    if (s.find('T') != std::string::npos || s.find(' ') != std::string::npos) {
        is >> std::get_time(&tm, s.find('T') != std::string::npos
                                     ? "%Y-%m-%dT%H:%M:%S"
                                     : "%Y-%m-%d %H:%M:%S");
    } else {
        is >> std::get_time(&tm, "%Y-%m-%d");
    }
    if (is.fail()) return false;
    out = double(timegm(&tm));
    return true;
}

std::vector<std::string> splitCsvRow(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace

IngestResult ingestCsv(const std::string& path, const IngestOptions& opt) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open " + path);

    IngestResult res;
    std::vector<std::pair<double, double>> rows;  // (timestamp, value)
    std::string line;
    std::size_t lineNo = 0;
    bool headerSkipped = false;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty() || line[0] == '#') continue;
        const std::vector<std::string> cells = splitCsvRow(line);
        double ts = 0.0, value = 0.0;
        bool ok = true;
        if (opt.timestampColumn < 0) {
            ok = !cells.empty() && parseDouble(cells[0], value);
            ts = double(rows.size());
        } else {
            ok = std::size_t(std::max(opt.timestampColumn, opt.valueColumn)) <
                     cells.size() &&
                 parseTimestamp(cells[std::size_t(opt.timestampColumn)], ts) &&
                 parseDouble(cells[std::size_t(opt.valueColumn)], value);
        }
        if (!ok) {
            if (!headerSkipped && rows.empty()) {
                headerSkipped = true;  // header row
                continue;
            }
            throw IngestError("unparseable row " + std::to_string(lineNo) +
                              ": " + line);
        }
        if (!std::isfinite(value)) {
            ++res.rejectedRows;
            continue;
        }
        rows.emplace_back(ts, value);
    }
    if (rows.empty()) throw IngestError("no valid rows in " + path);

    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        if (rows[i + 1].first <= rows[i].first)
            throw IngestError("duplicate timestamp at row with t=" +
                              std::to_string(rows[i].first));

    // infer the sampling step from the median gap
    double step = 1.0;
    if (rows.size() > 1) {
        std::vector<double> gaps;
        gaps.reserve(rows.size() - 1);
        for (std::size_t i = 0; i + 1 < rows.size(); ++i)
            gaps.push_back(rows[i + 1].first - rows[i].first);
        std::nth_element(gaps.begin(), gaps.begin() + long(gaps.size() / 2),
                         gaps.end());
        step = gaps[gaps.size() / 2];
        if (step <= 0) throw IngestError("non-positive sampling step");
    }

    // interpolate small gaps; split at large ones
    std::vector<TimeSeries> segments;
    TimeSeries cur;
    cur.startTime = rows[0].first;
    cur.stepSeconds = step;
    cur.values.push_back(rows[0].second);
    double lastT = rows[0].first;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double gapSteps = (rows[i].first - lastT) / step;
        if (gapSteps > opt.maxGapSteps) {
            res.warnings.push_back("gap of " + std::to_string(gapSteps) +
                                   " steps at t=" + std::to_string(lastT) +
                                   ": series split");
            segments.push_back(std::move(cur));
            cur = TimeSeries{};
            cur.startTime = rows[i].first;
            cur.stepSeconds = step;
        } else {
            const long missing = std::lround(gapSteps) - 1;
            const double prev = cur.values.back();
            for (long m = 1; m <= missing; ++m) {
                const double frac = double(m) / double(missing + 1);
                cur.values.push_back(prev + frac * (rows[i].second - prev));
                ++res.interpolated;
            }
        }
        cur.values.push_back(rows[i].second);
        lastT = rows[i].first;
    }
    segments.push_back(std::move(cur));
    std::stable_sort(segments.begin(), segments.end(),
                     [](const TimeSeries& a, const TimeSeries& b) {
                         return a.size() > b.size();
                     });
    res.segments = std::move(segments);
    return res;
}

void emitCsv(const std::string& path, const TimeSeries& s,
             const std::map<std::string, double>& metadata) {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot write " + path);
    out << std::setprecision(17);
    for (const auto& [k, v] : metadata) out << "# " << k << "=" << v << "\n";
    const bool stamped = s.startTime.has_value() && s.stepSeconds.has_value();
    if (stamped) out << "timestamp,value\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (stamped)
            out << (*s.startTime + double(i) * *s.stepSeconds) << ",";
        out << s.values[i] << "\n";
    }
}

}  // namespace saxmine
