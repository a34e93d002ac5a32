#include "saxmine/motif.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "saxmine/grammar.hpp"

namespace saxmine {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> buildNormalizedWindows(const TimeSeries& s, int n) {
    const std::size_t count = s.size() - std::size_t(n) + 1;
    std::vector<double> w(count * std::size_t(n));
    for (std::size_t i = 0; i < count; ++i) {
        auto z = znormalize(std::span<const double>(s.values.data() + i,
                                                    std::size_t(n)));
        std::copy(z.begin(), z.end(), w.begin() + i * n);
    }
    return w;
}

double squaredDist(const double* a, const double* b, int n, double cutoff) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
        if (acc > cutoff) return kInf;
    }
    return acc;
}

void checkPairPre(const TimeSeries& s, int n) {
    if (n < 2) throw InvalidInput("closest pair: window size must be >= 2");
    if (s.size() < 2 * std::size_t(n) + 1)
        throw InvalidInput("closest pair: need N >= 2n+1");
}

Motif makePair(std::size_t i, std::size_t j, double sqDist, int n,
               const char* source) {
    Motif m;
    m.occurrences = {std::min(i, j), std::max(i, j)};
    m.length = std::size_t(n);
    m.source = source;
    m.score = std::sqrt(sqDist);
    return m;
}

}  // namespace

Motif bruteForceClosestPair(const TimeSeries& series, int n) {
    checkPairPre(series, n);
    const std::vector<double> win = buildNormalizedWindows(series, n);
    const std::size_t count = series.size() - std::size_t(n) + 1;

    double best = kInf;
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + std::size_t(n) + 1; j < count; ++j) {
            const double d = squaredDist(&win[i * n], &win[j * n], n, best);
            if (d < best || (d == best && found &&
                             (i < bi || (i == bi && j < bj)))) {
                best = d;
                bi = i;
                bj = j;
                found = true;
            }
        }
    if (!found) throw InvalidInput("closest pair: no non-self-matching pair");
    return makePair(bi, bj, best, n, "brute-pair");
}

Motif mkMotif(const TimeSeries& series, int n, int numRefs, unsigned seed,
              MkStats* stats) {
    checkPairPre(series, n);
    if (numRefs < 1) throw InvalidInput("mkMotif: numRefs must be >= 1");
    const std::vector<double> win = buildNormalizedWindows(series, n);
    const std::size_t count = series.size() - std::size_t(n) + 1;

    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, count - 1);
    std::vector<std::size_t> refs;
    while (refs.size() < std::size_t(std::min<std::size_t>(numRefs, count))) {
        const std::size_t r = pick(rng);
        if (std::find(refs.begin(), refs.end(), r) == refs.end())
            refs.push_back(r);
    }

    double best = kInf;
    std::size_t bi = 0, bj = 0;
    bool found = false;
    auto consider = [&](std::size_t a, std::size_t b, double sq) {
        const std::size_t i = std::min(a, b), j = std::max(a, b);
        if (sq < best ||
            (sq == best && found && (i < bi || (i == bi && j < bj)))) {
            best = sq;
            bi = i;
            bj = j;
            found = true;
        }
    };

    // initial scan: every window against every reference; distances to
    // the first reference drive the ordering
    std::vector<double> refDist(count, 0.0);
    for (std::size_t ri = 0; ri < refs.size(); ++ri) {
        const std::size_t r = refs[ri];
        for (std::size_t i = 0; i < count; ++i) {
            const double sq =
                squaredDist(&win[r * n], &win[i * n], n,
                            ri == 0 ? kInf : best);
            if (stats) ++stats->distanceCalls;
            if (ri == 0) refDist[i] = std::sqrt(sq);
            if ((r >= i ? r - i : i - r) > std::size_t(n) && sq <= best)
                consider(r, i, sq);
        }
    }

    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return refDist[a] < refDist[b];
    });

    for (std::size_t offset = 1; offset < count; ++offset) {
        bool active = false;
        for (std::size_t j = 0; j + offset < count; ++j) {
            const std::size_t a = order[j];
            const std::size_t b = order[j + offset];
            const double gap = refDist[b] - refDist[a];
            // strict: pairs at gap == best may still tie and must keep
            // the brute-force tie rule
            if (gap > std::sqrt(best)) {
                if (stats && stats->skipCapacity &&
                    stats->skips.size() < stats->skipCapacity)
                    stats->skips.push_back({a, b, gap, std::sqrt(best)});
                continue;
            }
            active = true;
            if ((a >= b ? a - b : b - a) <= std::size_t(n)) continue;
            if (stats) ++stats->distanceCalls;
            const double sq = squaredDist(&win[a * n], &win[b * n], n, best);
            if (sq <= best) consider(a, b, sq);
        }
        if (!active) break;
    }
    if (!found) throw InvalidInput("mkMotif: no non-self-matching pair");
    return makePair(bi, bj, best, n, "mk");
}

// ---------------------------------------------------------------------
// grammar motifs

namespace {

struct RuleMeta {
    int expandLen = 0;  // terminals covered
    int height = 0;     // nesting depth of the expansion
};

void ruleMeta(const Grammar& g, int rid, std::map<int, RuleMeta>& memo) {
    if (memo.count(rid)) return;
    memo[rid];  // mark to stop cycles; grammar is a DAG anyway
    RuleMeta m;
    for (const Token& t : g.rules.at(rid)) {
        if (t.kind == Token::Kind::Terminal) {
            m.expandLen += 1;
        } else {
            ruleMeta(g, t.id, memo);
            m.expandLen += memo[t.id].expandLen;
            m.height = std::max(m.height, memo[t.id].height);
        }
    }
    m.height += 1;
    memo[rid] = m;
}

void collectOccurrences(const Grammar& g, const Token& t, std::size_t pos,
                        const std::map<int, RuleMeta>& meta,
                        std::map<int, std::vector<std::size_t>>& occ) {
    if (t.kind == Token::Kind::Terminal) return;
    occ[t.id].push_back(pos);
    std::size_t p = pos;
    for (const Token& b : g.rules.at(t.id)) {
        collectOccurrences(g, b, p, meta, occ);
        p += b.kind == Token::Kind::Terminal
                 ? 1
                 : std::size_t(meta.at(b.id).expandLen);
    }
}

}  // namespace

std::vector<Motif> grammarMotifs(const TimeSeries& series,
                                 const SaxConfig& cfg, int topK) {
    if (topK < 1) throw InvalidInput("grammarMotifs: topK must be >= 1");
    const SaxSequence sax = saxSliding(series, cfg);
    std::unordered_map<SaxWord, int> vocab;
    std::vector<int> tokens;
    tokens.reserve(sax.entries.size());
    for (const SaxEntry& e : sax.entries)
        tokens.push_back(
            vocab.try_emplace(e.word, int(vocab.size())).first->second);

    const Grammar g = inferGrammar(tokens);
    std::map<int, RuleMeta> meta;
    for (const auto& [rid, body] : g.rules) ruleMeta(g, rid, meta);

    std::map<int, std::vector<std::size_t>> occ;
    std::size_t pos = 0;
    for (const Token& t : g.sequence) {
        collectOccurrences(g, t, pos, meta, occ);
        pos += t.kind == Token::Kind::Terminal
                   ? 1
                   : std::size_t(meta.at(t.id).expandLen);
    }

    std::vector<Motif> motifs;
    for (auto& [rid, starts] : occ) {
        std::sort(starts.begin(), starts.end());
        Motif m;
        m.occurrences = starts;
        m.length = std::size_t(meta.at(rid).expandLen) +
                   std::size_t(cfg.windowSize) - 1;
        m.source = "grammar";
        m.score = meta.at(rid).height;
        motifs.push_back(std::move(m));
    }
    std::stable_sort(motifs.begin(), motifs.end(),
                     [](const Motif& a, const Motif& b) {
                         if (a.score != b.score) return a.score > b.score;
                         return a.length > b.length;
                     });
    std::vector<Motif> post = postProcessMotifs(series, std::move(motifs), cfg);
    if (post.size() > std::size_t(topK)) post.resize(std::size_t(topK));
    return post;
}

// ---------------------------------------------------------------------
// post-processing

namespace {

bool segmentTrivial(const TimeSeries& s, std::size_t start, std::size_t len) {
    const std::size_t end = std::min(start + len, s.size());
    if (end <= start + 1) return true;
    bool nonneg = true, nonpos = true;
    for (std::size_t i = start; i + 1 < end; ++i) {
        const double d = s.values[i + 1] - s.values[i];
        if (d < 0) nonneg = false;
        if (d > 0) nonpos = false;
    }
    if (nonneg || nonpos) return true;  // monotone (flat included)
    const double sd = stddev(std::span<const double>(s.values.data() + start,
                                                     end - start));
    return sd < kEpsilonFlat;
}

std::vector<Motif> postPass(const TimeSeries& series, std::vector<Motif> in,
                            const SaxConfig& cfg) {
    const std::size_t w = std::size_t(cfg.windowSize);
    // 1. collapse self-matching occurrences
    for (Motif& m : in) {
        std::sort(m.occurrences.begin(), m.occurrences.end());
        std::vector<std::size_t> kept;
        for (std::size_t o : m.occurrences)
            if (kept.empty() || o >= kept.back() + w) kept.push_back(o);
        m.occurrences = std::move(kept);
    }
    // 2. longest first
    std::stable_sort(in.begin(), in.end(), [](const Motif& a, const Motif& b) {
        return a.length > b.length;
    });
    // 3. drop motifs made only of monotone or flat segments
    std::vector<Motif> kept;
    for (Motif& m : in) {
        bool allTrivial = !m.occurrences.empty();
        for (std::size_t o : m.occurrences)
            if (!segmentTrivial(series, o, m.length)) {
                allTrivial = false;
                break;
            }
        if (!allTrivial) kept.push_back(std::move(m));
    }
    // 4. merge motifs with >= 50% shared occurrences
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t a = 0; a < kept.size() && !merged; ++a)
            for (std::size_t b = a + 1; b < kept.size() && !merged; ++b) {
                std::vector<std::size_t> common;
                std::set_intersection(kept[a].occurrences.begin(),
                                      kept[a].occurrences.end(),
                                      kept[b].occurrences.begin(),
                                      kept[b].occurrences.end(),
                                      std::back_inserter(common));
                const std::size_t smaller = std::min(
                    kept[a].occurrences.size(), kept[b].occurrences.size());
                if (smaller == 0 || common.size() * 2 < smaller) continue;
                std::vector<std::size_t> uni;
                std::set_union(kept[a].occurrences.begin(),
                               kept[a].occurrences.end(),
                               kept[b].occurrences.begin(),
                               kept[b].occurrences.end(),
                               std::back_inserter(uni));
                kept[a].occurrences = std::move(uni);
                kept[a].length = std::max(kept[a].length, kept[b].length);
                kept[a].score = std::max(kept[a].score, kept[b].score);
                kept.erase(kept.begin() + long(b));
                merged = true;
            }
    }
    std::stable_sort(kept.begin(), kept.end(),
                     [](const Motif& a, const Motif& b) {
                         return a.length > b.length;
                     });
    return kept;
}

}  // namespace

std::vector<Motif> postProcessMotifs(const TimeSeries& series,
                                     std::vector<Motif> motifs,
                                     const SaxConfig& cfg) {
    // run to fixpoint so the whole step is idempotent
    std::vector<Motif> cur = postPass(series, std::move(motifs), cfg);
    for (int guard = 0; guard < 16; ++guard) {
        std::vector<Motif> next = postPass(series, cur, cfg);
        bool same = next.size() == cur.size();
        for (std::size_t i = 0; same && i < next.size(); ++i)
            same = next[i].occurrences == cur[i].occurrences &&
                   next[i].length == cur[i].length;
        if (same) break;
        cur = std::move(next);
    }
    return cur;
}

// ---------------------------------------------------------------------
// motif tracking

std::vector<Motif> motifTracking(const TimeSeries& series, int alpha,
                                 double r) {
    if (r <= 0) throw InvalidInput("motifTracking: r must be > 0");
    if (alpha < 2 || alpha > 26) throw InvalidInput("motifTracking: bad alpha");
    if (series.size() < 3)
        throw InvalidInput("motifTracking: need at least 3 points");

    const std::vector<double> diff = firstDifference(series.values);
    const std::vector<double> z = znormalize(std::span<const double>(diff));
    const Breakpoints bp = gaussianBreakpoints(alpha);
    std::string stream;
    stream.reserve(z.size());
    for (double v : z) stream.push_back(char('a' + quantizeValue(v, bp)));

    struct Tracker {
        std::string word;
        std::vector<std::size_t> indexes;
    };

    std::vector<Tracker> trackers;
    for (int a = 0; a < alpha; ++a)
        trackers.push_back({std::string(1, char('a' + a)), {}});

    std::vector<Tracker> lastSurvivors;
    std::size_t lastLen = 0;

    for (std::size_t l = 1; l <= stream.size(); ++l) {
        for (Tracker& t : trackers) t.indexes.clear();
        for (std::size_t i = 0; i + l <= stream.size(); ++i) {
            const std::string_view sub(stream.data() + i, l);
            for (Tracker& t : trackers) {
                if (sub != t.word) continue;
                // confirm against every recorded occurrence on raw values
                bool ok = true;
                for (std::size_t j : t.indexes) {
                    double acc = 0.0;
                    for (std::size_t k = 0; k < l; ++k) {
                        const double d = diff[i + k] - diff[j + k];
                        acc += d * d;
                    }
                    if (std::sqrt(acc) / double(l) >= r) {
                        ok = false;
                        break;
                    }
                }
                if (ok) t.indexes.push_back(i);
            }
        }
        std::vector<Tracker> survivors;
        for (Tracker& t : trackers)
            if (t.indexes.size() >= 2) survivors.push_back(std::move(t));
        if (survivors.empty()) break;
        lastSurvivors = survivors;
        lastLen = l;
        trackers.clear();
        for (const Tracker& t : survivors)
            for (int a = 0; a < alpha; ++a)
                trackers.push_back({t.word + char('a' + a), {}});
    }

    std::vector<Motif> out;
    for (const Tracker& t : lastSurvivors) {
        Motif m;
        m.occurrences = t.indexes;
        std::sort(m.occurrences.begin(), m.occurrences.end());
        m.length = lastLen + 1;  // l diff points span l+1 series points
        m.source = "tracking";
        m.score = double(t.indexes.size());
        out.push_back(std::move(m));
    }
    return out;
}

// ---------------------------------------------------------------------
// approximate motifs (aggregative clustering)

namespace {

// Pearson correlation of the numeric profiles of two SAX words.
double wordCorrelation(const std::vector<double>& a,
                       const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= double(n);
    mb /= double(n);
    double sab = 0, sa = 0, sb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        sa += (a[i] - ma) * (a[i] - ma);
        sb += (b[i] - mb) * (b[i] - mb);
    }
    if (sa < 1e-18 || sb < 1e-18) return a == b ? 1.0 : 0.0;
    return sab / std::sqrt(sa * sb);
}

}  // namespace

std::vector<Motif> approximateMotifs(const TimeSeries& series,
                                     const SaxConfig& cfg, double Rmin) {
    if (!(Rmin > 0.0 && Rmin <= 1.0))
        throw InvalidInput("approximateMotifs: Rmin must be in (0, 1]");
    if (series.size() < 2 * std::size_t(cfg.windowSize))
        throw InvalidInput("approximateMotifs: need N >= 2*windowSize");
    const SaxSequence sax = saxSliding(series, cfg);
    const std::size_t M = sax.entries.size();
    const std::size_t w = std::size_t(cfg.windowSize);

    std::vector<std::vector<double>> profile(M);
    for (std::size_t i = 0; i < M; ++i) {
        profile[i].reserve(sax.entries[i].word.size());
        for (char c : sax.entries[i].word)
            profile[i].push_back(gaussianBinMedian(cfg.alpha, c - 'a'));
    }

    std::unordered_map<std::uint64_t, double> rCache;
    auto corr = [&](std::size_t i, std::size_t j) {
        const std::uint64_t key = (std::uint64_t(std::min(i, j)) << 32) |
                                  std::uint64_t(std::max(i, j));
        auto it = rCache.find(key);
        if (it != rCache.end()) return it->second;
        const double v = wordCorrelation(profile[i], profile[j]);
        rCache.emplace(key, v);
        return v;
    };

    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = i + w; j < M; ++j)
            if (std::abs(corr(i, j)) >= Rmin) clusters.push_back({i, j});

    // complete-linkage merging until a full pass makes no update
    bool updates = true;
    while (updates) {
        updates = false;
        for (std::size_t a = 0; a < clusters.size(); ++a) {
            for (std::size_t b = a + 1; b < clusters.size();) {
                bool mergeable = true;
                for (std::size_t x : clusters[a]) {
                    for (std::size_t y : clusters[b])
                        if (std::abs(corr(x, y)) < Rmin) {
                            mergeable = false;
                            break;
                        }
                    if (!mergeable) break;
                }
                if (mergeable) {
                    clusters[a].insert(clusters[a].end(), clusters[b].begin(),
                                       clusters[b].end());
                    clusters.erase(clusters.begin() + long(b));
                    updates = true;
                } else {
                    ++b;
                }
            }
        }
    }

    std::vector<Motif> out;
    for (auto& c : clusters) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        if (c.size() < 2) continue;
        Motif m;
        m.occurrences = c;
        m.length = w;
        m.source = "approx";
        m.score = double(c.size());
        out.push_back(std::move(m));
    }
    return out;
}

// ---------------------------------------------------------------------
// MDL motifs

namespace {

std::vector<double> gaussianSmooth(const std::vector<double>& x, double sigma) {
    const int radius = std::max(1, int(std::ceil(3.0 * sigma)));
    std::vector<double> kern(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kern[i + radius] = std::exp(-0.5 * (i / sigma) * (i / sigma));
        sum += kern[i + radius];
    }
    for (double& k : kern) k /= sum;
    const long n = long(x.size());
    std::vector<double> out(x.size(), 0.0);
    for (long i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
            const long j = std::clamp(i + k, 0l, n - 1);  // edge replication
            acc += kern[k + radius] * x[j];
        }
        out[i] = acc;
    }
    return out;
}

struct Segment {
    std::size_t start = 0;   // point index of the left boundary
    std::size_t length = 0;  // points to the next boundary
    double rise = 0.0;       // detail[end] - detail[start]
};

// Boundaries at sign changes of the first difference; zero runs attach
// to the preceding segment.
std::vector<Segment> segmentAtZeroCrossings(const std::vector<double>& detail) {
    std::vector<std::size_t> bounds{0};
    int sign = 0;
    for (std::size_t j = 0; j + 1 < detail.size(); ++j) {
        const double d = detail[j + 1] - detail[j];
        const int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
        if (s == 0) continue;
        if (sign != 0 && s != sign) bounds.push_back(j + 1);
        sign = s;
    }
    bounds.push_back(detail.size() - 1);
    std::vector<Segment> segs;
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
        if (bounds[k + 1] <= bounds[k]) continue;
        segs.push_back({bounds[k], bounds[k + 1] - bounds[k],
                        detail[bounds[k + 1]] - detail[bounds[k]]});
    }
    return segs;
}

// Seeded k-means++ over z-scored (length, rise) features.
std::vector<int> kmeansCode(const std::vector<Segment>& segs, int k,
                            unsigned seed) {
    const std::size_t n = segs.size();
    std::vector<std::array<double, 2>> f(n);
    for (std::size_t i = 0; i < n; ++i)
        f[i] = {double(segs[i].length), segs[i].rise};
    for (int d = 0; d < 2; ++d) {
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = f[i][d];
        const double m = mean(col);
        const double sd = stddev(col);
        for (std::size_t i = 0; i < n; ++i)
            f[i][d] = sd < kEpsilonFlat ? 0.0 : (f[i][d] - m) / sd;
    }

    std::mt19937 rng(seed);
    auto d2 = [&](std::size_t i, const std::array<double, 2>& c) {
        const double dx = f[i][0] - c[0], dy = f[i][1] - c[1];
        return dx * dx + dy * dy;
    };
    std::vector<std::array<double, 2>> centers;
    centers.push_back(f[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)]);
    while (centers.size() < std::size_t(k)) {
        std::vector<double> w(n);
        double tot = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double b = kInf;
            for (const auto& c : centers) b = std::min(b, d2(i, c));
            w[i] = b;
            tot += b;
        }
        if (tot <= 0) {
            centers.push_back(f[centers.size() % n]);
            continue;
        }
        std::discrete_distribution<std::size_t> dd(w.begin(), w.end());
        centers.push_back(f[dd(rng)]);
    }

    std::vector<int> assign(n, 0);
    for (int it = 0; it < 50; ++it) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            int bestC = 0;
            double bestD = kInf;
            for (std::size_t c = 0; c < centers.size(); ++c)
                if (d2(i, centers[c]) < bestD) {
                    bestD = d2(i, centers[c]);
                    bestC = int(c);
                }
            if (assign[i] != bestC) {
                assign[i] = bestC;
                changed = true;
            }
        }
        if (!changed) break;
        std::vector<std::array<double, 2>> acc(centers.size(), {0, 0});
        std::vector<int> cnt(centers.size(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            acc[assign[i]][0] += f[i][0];
            acc[assign[i]][1] += f[i][1];
            ++cnt[assign[i]];
        }
        for (std::size_t c = 0; c < centers.size(); ++c)
            if (cnt[c] > 0)
                centers[c] = {acc[c][0] / cnt[c], acc[c][1] / cnt[c]};
    }
    return assign;
}

}  // namespace

std::vector<Motif> mdlMotifs(const TimeSeries& series, int scales, int k,
                             std::vector<std::string>* warnings) {
    if (scales < 1) throw InvalidInput("mdlMotifs: scales must be >= 1");
    if (k < 2) throw InvalidInput("mdlMotifs: k must be >= 2");
    if (series.size() < 4) throw InvalidInput("mdlMotifs: series too short");

    std::vector<Motif> out;
    for (int sc = 1; sc <= scales; ++sc) {
        const double kernelSize = std::pow(2.0, sc);
        if (2 * std::size_t(std::ceil(1.5 * kernelSize)) + 1 > series.size()) {
            if (warnings)
                warnings->push_back("scale " + std::to_string(sc) +
                                    " skipped: kernel larger than series");
            continue;
        }
        const std::vector<double> detail =
            gaussianSmooth(series.values, kernelSize / 2.0);
        const std::vector<Segment> segs = segmentAtZeroCrossings(detail);
        const std::size_t S = segs.size();
        if (S < 2) continue;  // single segment, nothing repeats

        const int kEff = int(std::min<std::size_t>(std::size_t(k), S));
        const std::vector<int> code = kmeansCode(segs, kEff, 0x5eedu + sc);

        const double bitsPlain = std::log2(double(kEff));
        const double bitsEsc = std::log2(double(kEff) + 1.0);
        const double lT = double(S) * bitsPlain;

        // enumerate repeated substrings, pick min L(m) + L(T|m)
        double bestCost = kInf;
        std::size_t bestLen = 0;
        std::vector<std::size_t> bestOcc;  // greedy non-overlapping, segment idx
        for (std::size_t p = 2; p <= S / 2; ++p) {
            std::map<std::vector<int>, std::vector<std::size_t>> where;
            for (std::size_t i = 0; i + p <= S; ++i)
                where[std::vector<int>(code.begin() + long(i),
                                       code.begin() + long(i + p))]
                    .push_back(i);
            for (const auto& [sub, pos] : where) {
                if (pos.size() < 2) continue;
                std::vector<std::size_t> occ;
                for (std::size_t i : pos)
                    if (occ.empty() || i >= occ.back() + p) occ.push_back(i);
                if (occ.size() < 2) continue;
                const double c = double(occ.size());
                const double cost = double(p) * bitsPlain +
                                    (double(S) - c * double(p) + c) * bitsEsc;
                if (cost < bestCost ||
                    (cost == bestCost &&
                     (p < bestLen || (p == bestLen && occ[0] < bestOcc[0])))) {
                    bestCost = cost;
                    bestLen = p;
                    bestOcc = occ;
                }
            }
        }
        if (bestOcc.empty()) continue;  // no repeated substring at this scale

        Motif m;
        for (std::size_t i : bestOcc) m.occurrences.push_back(segs[i].start);
        std::size_t span = 0;
        for (std::size_t q = 0; q < bestLen; ++q) span += segs[bestOcc[0] + q].length;
        m.length = span;
        m.source = "mdl-scale" + std::to_string(sc);
        m.score = std::max(0.0, lT - bestCost);  // description-length gain
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace saxmine
