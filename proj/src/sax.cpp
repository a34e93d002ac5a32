#include "saxmine/sax.hpp"

#include <algorithm>
#include <cmath>

namespace saxmine {

void SaxConfig::validate() const {
    if (alpha < 2 || alpha > 26)
        throw InvalidInput("SaxConfig: alpha must be in [2, 26]");
    if (wordSize < 1) throw InvalidInput("SaxConfig: wordSize must be >= 1");
    if (windowSize < wordSize)
        throw InvalidInput("SaxConfig: windowSize must be >= wordSize");
    if (windowSize % wordSize != 0)
        throw InvalidInput("SaxConfig: windowSize must be a multiple of wordSize");
}

namespace {

// Acklam's rational approximation of the probit function.
double acklam(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p <= 1 - plow) {
        q = p - 0.5;
        r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    }
    q = std::sqrt(-2 * std::log(1 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
}

}  // namespace

double invNormalCdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidInput("invNormalCdf: p must be in (0,1)");
    double x = acklam(p);
    // One Halley step against erfc brings the error below 1e-10.
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1 + x * u / 2);
    return x;
}

Breakpoints gaussianBreakpoints(int alpha) {
    if (alpha < 2) throw InvalidInput("gaussianBreakpoints: alpha must be >= 2");
    Breakpoints bp;
    bp.cuts.reserve(alpha - 1);
    for (int i = 1; i < alpha; ++i)
        bp.cuts.push_back(invNormalCdf(double(i) / double(alpha)));
    return bp;
}

double gaussianBinMedian(int alpha, int bin) {
    if (alpha < 2 || bin < 0 || bin >= alpha)
        throw InvalidInput("gaussianBinMedian: bad alpha/bin");
    return invNormalCdf((2.0 * bin + 1.0) / (2.0 * alpha));
}

std::vector<double> paa(std::span<const double> x, int frames) {
    const std::size_t n = x.size();
    if (frames < 1 || std::size_t(frames) > n)
        throw InvalidInput("paa: frames must be in [1, N]");
    std::vector<double> out(frames, 0.0);
    if (n % frames == 0) {
        const std::size_t block = n / frames;
        for (int f = 0; f < frames; ++f) {
            double acc = 0.0;
            for (std::size_t j = 0; j < block; ++j) acc += x[f * block + j];
            out[f] = acc / double(block);
        }
        return out;
    }
    // Fractional-weight blocks: frame f covers [f*n/frames, (f+1)*n/frames).
    const double block = double(n) / double(frames);
    for (int f = 0; f < frames; ++f) {
        const double lo = f * block;
        const double hi = (f + 1) * block;
        double acc = 0.0;
        for (std::size_t j = std::size_t(std::floor(lo)); j < n && double(j) < hi; ++j) {
            const double w = std::min(hi, double(j) + 1.0) - std::max(lo, double(j));
            if (w > 0) acc += w * x[j];
        }
        out[f] = acc / block;
    }
    return out;
}

int quantizeValue(double v, const Breakpoints& bp) {
    // value >= cut goes to the upper bin
    int k = 0;
    for (double c : bp.cuts)
        if (v >= c) ++k;
    return k;
}

SaxWord saxEncode(std::span<const double> x, int alpha, int wordSize) {
    if (alpha < 2 || alpha > 26) throw InvalidInput("saxEncode: alpha out of range");
    if (wordSize < 1 || x.size() < std::size_t(wordSize))
        throw InvalidInput("saxEncode: series shorter than wordSize");
    const Breakpoints bp = gaussianBreakpoints(alpha);
    const std::vector<double> z = znormalize(x);
    const std::vector<double> aggr = paa(z, wordSize);
    SaxWord w;
    w.reserve(wordSize);
    for (double v : aggr) w.push_back(char('a' + quantizeValue(v, bp)));
    return w;
}

SaxWord saxEncode(const TimeSeries& s, int alpha, int wordSize) {
    return saxEncode(std::span<const double>(s.values), alpha, wordSize);
}

SaxSequence saxSliding(const TimeSeries& s, const SaxConfig& cfg) {
    cfg.validate();
    const std::size_t n = s.size();
    const std::size_t w = std::size_t(cfg.windowSize);
    if (n < w) throw InvalidInput("saxSliding: series shorter than windowSize");
    const Breakpoints bp = gaussianBreakpoints(cfg.alpha);
    const std::size_t block = w / std::size_t(cfg.wordSize);

    SaxSequence out;
    out.config = cfg;
    out.entries.reserve(n - w + 1);
    for (std::size_t i = 0; i + w <= n; ++i) {
        std::span<const double> win(s.values.data() + i, w);
        const double m = mean(win);
        const double sd = stddev(win);
        SaxWord word;
        word.reserve(cfg.wordSize);
        if (sd < kEpsilonFlat) {
            word.assign(cfg.wordSize, char('a' + quantizeValue(0.0, bp)));
        } else {
            for (int f = 0; f < cfg.wordSize; ++f) {
                double acc = 0.0;
                for (std::size_t j = 0; j < block; ++j) acc += win[f * block + j];
                const double v = (acc / double(block) - m) / sd;
                word.push_back(char('a' + quantizeValue(v, bp)));
            }
        }
        out.entries.push_back({i, std::move(word)});
    }
    return out;
}

int hammingDistance(const SaxWord& a, const SaxWord& b) {
    if (a.size() != b.size())
        throw InvalidInput("hammingDistance: length mismatch");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) ++d;
    return d;
}

double mindist(const SaxWord& a, const SaxWord& b, int alpha, int windowSize) {
    if (a.size() != b.size()) throw InvalidInput("mindist: length mismatch");
    if (a.empty()) return 0.0;
    const Breakpoints bp = gaussianBreakpoints(alpha);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int r = a[i] - 'a';
        const int c = b[i] - 'a';
        if (r < 0 || r >= alpha || c < 0 || c >= alpha)
            throw InvalidInput("mindist: symbol outside alphabet");
        if (std::abs(r - c) <= 1) continue;
        const double cell = bp.cuts[std::max(r, c) - 1] - bp.cuts[std::min(r, c)];
        acc += cell * cell;
    }
    return std::sqrt(double(windowSize) / double(a.size())) * std::sqrt(acc);
}

}  // namespace saxmine
