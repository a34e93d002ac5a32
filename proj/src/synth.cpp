#include <cmath>
#include <random>

#include "saxmine/harness.hpp"

namespace saxmine {

namespace {

// Fixed two-bump shape used for planted motifs, scaled to patternLen.
double motifShape(double t) {  // t in [0, 1)
    return std::sin(2.0 * M_PI * t) + 0.6 * std::sin(6.0 * M_PI * t);
}

}  // namespace

SynthResult synth(const SynthSpec& spec) {
    if (spec.length < 1) throw InvalidInput("synth: length must be >= 1");
    std::mt19937 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    SynthResult res;
    res.series.values.resize(spec.length);
    res.series.startTime = 0.0;
    res.series.stepSeconds = 60.0;
    auto& v = res.series.values;

    if (spec.kind == "sine" || spec.kind == "planted-discord") {
        if (spec.period <= 1) throw InvalidInput("synth: period must be > 1");
        for (std::size_t i = 0; i < spec.length; ++i)
            v[i] = spec.amplitude *
                       std::sin(2.0 * M_PI * double(i) / spec.period) +
                   spec.noiseSigma * gauss(rng);
        if (spec.kind == "planted-discord") {
            const std::size_t p = std::size_t(spec.period);
            std::size_t at = spec.index >= 0 ? std::size_t(spec.index)
                                             : (spec.length / 2 / p) * p;
            at = std::min(at, spec.length - std::min(spec.length, p));
            for (std::size_t i = at; i < std::min(at + p, spec.length); ++i)
                v[i] = spec.noiseSigma * gauss(rng);  // flattened period
            res.metadata["discord_index"] = double(at);
            res.metadata["discord_length"] = double(p);
        }
    } else if (spec.kind == "square") {
        if (spec.period <= 1) throw InvalidInput("synth: period must be > 1");
        for (std::size_t i = 0; i < spec.length; ++i) {
            const double phase = std::fmod(double(i), spec.period) / spec.period;
            v[i] = (phase < 0.5 ? spec.amplitude : -spec.amplitude) +
                   spec.noiseSigma * gauss(rng);
        }
    } else if (spec.kind == "noise") {
        const double sigma = spec.noiseSigma > 0 ? spec.noiseSigma : 1.0;
        for (std::size_t i = 0; i < spec.length; ++i) v[i] = sigma * gauss(rng);
    } else if (spec.kind == "walk") {
        const double sigma = spec.noiseSigma > 0 ? spec.noiseSigma : 1.0;
        double acc = 0.0;
        for (std::size_t i = 0; i < spec.length; ++i) {
            acc += sigma * gauss(rng);
            v[i] = acc;
        }
    } else if (spec.kind == "planted-motif") {
        const std::size_t pl = std::size_t(spec.patternLen);
        if (pl < 2 || pl * std::size_t(spec.plants) * 2 > spec.length)
            throw InvalidInput("synth: pattern does not fit");
        for (std::size_t i = 0; i < spec.length; ++i)
            v[i] = spec.noiseSigma * gauss(rng);
        const std::size_t slot = spec.length / std::size_t(spec.plants);
        res.metadata["plants"] = double(spec.plants);
        res.metadata["pattern_len"] = double(pl);
        for (int p = 0; p < spec.plants; ++p) {
            const std::size_t at = std::size_t(p) * slot + slot / 4;
            // exact repeats: the pattern replaces the noise at each site
            for (std::size_t i = 0; i < pl && at + i < spec.length; ++i)
                v[at + i] = spec.amplitude * motifShape(double(i) / double(pl));
            res.metadata["plant_" + std::to_string(p)] = double(at);
        }
    } else if (spec.kind == "step") {
        const std::size_t at = spec.index >= 0 ? std::size_t(spec.index)
                                               : spec.length / 2;
        for (std::size_t i = 0; i < spec.length; ++i) {
            const bool after = i >= at;
            const double sigma =
                spec.noiseSigma * (after ? spec.stepScale : 1.0);
            v[i] = (after ? spec.meanShift : 0.0) + sigma * gauss(rng);
        }
        res.metadata["step_index"] = double(at);
    } else {
        throw InvalidInput("synth: unknown kind '" + spec.kind + "'");
    }
    return res;
}

}  // namespace saxmine
