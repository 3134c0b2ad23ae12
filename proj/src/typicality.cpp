#include "zeroerr/typicality.hpp"

#include <algorithm>
#include <cmath>

#include "zeroerr/rng.hpp"

namespace zeroerr {

namespace {

constexpr double count_slack = 1e-9;

double log_multinomial(std::size_t n, const std::vector<std::int64_t> & counts)
{
    double v = std::lgamma(static_cast<double>(n) + 1.0);
    for (auto c : counts)
        v -= std::lgamma(static_cast<double>(c) + 1.0);
    return v;
}

} // namespace

std::vector<double> SequenceType::distribution() const
{
    std::vector<double> d;
    d.reserve(counts.size());
    for (auto c : counts)
        d.push_back(static_cast<double>(c) / static_cast<double>(n));
    return d;
}

SequenceType type_of(std::span<const int> seq, std::size_t alphabet)
{
    if (seq.empty())
        throw Error("type_of: empty sequence");
    SequenceType t{std::vector<std::int64_t>(alphabet, 0), seq.size()};
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] < 0 || static_cast<std::size_t>(seq[i]) >= alphabet)
            throw Error("type_of: symbol " + std::to_string(seq[i]) + " at position " + std::to_string(i)
                        + " outside alphabet of size " + std::to_string(alphabet));
        ++t.counts[static_cast<std::size_t>(seq[i])];
    }
    return t;
}

double type_distance(const SequenceType & t, const Distribution & p)
{
    if (t.counts.size() != p.size())
        throw Error("type and distribution have different alphabets");
    double d = 0.0;
    for (std::size_t a = 0; a < p.size(); ++a)
        d = std::max(d, std::abs(static_cast<double>(t.counts[a]) / static_cast<double>(t.n) - p[a]));
    return d;
}

bool is_typical(const SequenceType & t, const Distribution & p, double eps)
{
    if (t.counts.size() != p.size())
        throw Error("type and distribution have different alphabets");
    const double n = static_cast<double>(t.n);
    for (std::size_t a = 0; a < p.size(); ++a)
        if (std::abs(static_cast<double>(t.counts[a]) - n * p[a]) > n * eps + count_slack)
            return false;
    return true;
}

TypicalSet::TypicalSet(Distribution base, std::size_t n, double eps) : base_(std::move(base)), n_(n), eps_(eps)
{
    if (n == 0)
        throw Error("typical set needs n >= 1");
    if (!(eps >= 0.0))
        throw Error("typical set needs eps >= 0");
    const double nd = static_cast<double>(n);
    for (std::size_t a = 0; a < base_.size(); ++a) {
        const double centre = nd * base_[a], width = nd * eps + count_slack;
        lo_.push_back(std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(centre - width))));
        hi_.push_back(std::min<std::int64_t>(static_cast<std::int64_t>(n),
                                             static_cast<std::int64_t>(std::floor(centre + width))));
    }
}

bool TypicalSet::contains(std::span<const int> seq) const
{
    if (seq.size() != n_)
        return false;
    for (int x : seq)
        if (x < 0 || static_cast<std::size_t>(x) >= base_.size())
            return false;
    return is_typical(type_of(seq, base_.size()), base_, eps_);
}

std::vector<std::vector<std::int64_t>> TypicalSet::types() const
{
    std::vector<std::vector<std::int64_t>> out;
    const auto k = base_.size();
    std::vector<std::int64_t> c(k, 0);
    // suffix sums of the admissible ranges prune infeasible prefixes
    std::vector<std::int64_t> lo_suffix(k + 1, 0), hi_suffix(k + 1, 0);
    for (std::size_t a = k; a-- > 0;) {
        lo_suffix[a] = lo_suffix[a + 1] + lo_[a];
        hi_suffix[a] = hi_suffix[a + 1] + hi_[a];
    }
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t a, std::int64_t left) {
        if (a == k) {
            if (left == 0)
                out.push_back(c);
            return;
        }
        for (std::int64_t v = lo_[a]; v <= hi_[a] && v <= left; ++v) {
            const auto rest = left - v;
            if (rest < lo_suffix[a + 1] || rest > hi_suffix[a + 1])
                continue;
            c[a] = v;
            rec(a + 1, rest);
        }
    };
    rec(0, static_cast<std::int64_t>(n_));
    return out;
}

double TypicalSet::size() const
{
    double s = 0.0;
    for (const auto & c : types())
        s += std::exp(log_multinomial(n_, c));
    return s;
}

double TypicalSet::probability() const
{
    double s = 0.0;
    for (const auto & c : types()) {
        double lp = log_multinomial(n_, c);
        bool zero = false;
        for (std::size_t a = 0; a < c.size(); ++a) {
            if (c[a] == 0)
                continue;
            if (base_[a] <= 0.0) {
                zero = true;
                break;
            }
            lp += static_cast<double>(c[a]) * std::log(base_[a]);
        }
        if (!zero)
            s += std::exp(lp);
    }
    return std::min(1.0, s);
}

void TypicalSet::for_each(const std::function<bool(const std::vector<int> &)> & visit) const
{
    const auto k = base_.size();
    std::vector<int> seq(n_);
    std::vector<std::int64_t> count(k, 0);
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t t) {
        if (stop)
            return;
        if (t == n_) {
            if (!visit(seq))
                stop = true;
            return;
        }
        const auto remaining = static_cast<std::int64_t>(n_ - t - 1);
        for (std::size_t a = 0; a < k && !stop; ++a) {
            if (count[a] + 1 > hi_[a])
                continue;
            ++count[a];
            std::int64_t deficit = 0, room = 0;
            for (std::size_t b = 0; b < k; ++b) {
                deficit += std::max<std::int64_t>(0, lo_[b] - count[b]);
                room += hi_[b] - count[b];
            }
            if (deficit <= remaining && room >= remaining) {
                seq[t] = static_cast<int>(a);
                rec(t + 1);
            }
            --count[a];
        }
    };
    rec(0);
}

std::vector<std::vector<int>> TypicalSet::enumerate(std::uint64_t limit) const
{
    if (size() > static_cast<double>(limit))
        throw BudgetError("typical set has more than " + std::to_string(limit) + " members");
    std::vector<std::vector<int>> out;
    for_each([&](const std::vector<int> & s) {
        out.push_back(s);
        return true;
    });
    return out;
}

std::uint64_t sequence_index(std::span<const int> seq, std::size_t alphabet)
{
    std::uint64_t idx = 0;
    for (int x : seq)
        idx = idx * alphabet + static_cast<std::uint64_t>(x);
    return idx;
}

std::vector<int> sequence_from_index(std::uint64_t index, std::size_t alphabet, std::size_t n)
{
    std::vector<int> seq(n);
    for (std::size_t t = n; t-- > 0;) {
        seq[t] = static_cast<int>(index % alphabet);
        index /= alphabet;
    }
    return seq;
}

TypicalSubgraph typical_induced_subgraph(const ProbabilisticGraph & pg, std::size_t n, double eps,
                                         const ProductOptions & opts)
{
    const auto k = pg.size();
    double power = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        power *= static_cast<double>(k);
    if (power > static_cast<double>(opts.vertex_budget))
        throw BudgetError("product too large: " + std::to_string(k) + "^" + std::to_string(n)
                          + " vertices exceeds budget " + std::to_string(opts.vertex_budget));
    TypicalSet ts(pg.dist, n, eps);
    TypicalSubgraph out;
    out.sequences = ts.enumerate(opts.vertex_budget);
    if (out.sequences.empty())
        throw Error("typical set is empty for n=" + std::to_string(n) + ", eps=" + std::to_string(eps));

    const auto m = out.sequences.size();
    Graph g(m);
    auto confusable = [&](const std::vector<int> & a, const std::vector<int> & b) {
        for (std::size_t t = 0; t < n; ++t)
            if (a[t] != b[t] && !pg.graph.adjacent(a[t], b[t]))
                return false;
        return true;
    };
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = u + 1; v < m; ++v)
            if (confusable(out.sequences[u], out.sequences[v]))
                g.add_edge(static_cast<int>(u), static_cast<int>(v));

    std::vector<double> w(m);
    for (std::size_t i = 0; i < m; ++i) {
        double p = 1.0;
        for (int x : out.sequences[i])
            p *= pg.dist[static_cast<std::size_t>(x)];
        w[i] = p;
        out.mass += p;
    }
    if (!(out.mass > 0.0))
        throw Error("cannot renormalize: typical set has zero probability");
    out.pg = ProbabilisticGraph(std::move(g), Distribution::normalized(std::move(w)));
    return out;
}

TypeSplit type_split(std::span<const int> seq, double beta, const Distribution & p1, const Distribution & p2,
                     std::uint64_t seed)
{
    if (!(beta >= 0.0 && beta <= 1.0))
        throw Error("type_split: beta must lie in [0, 1]");
    if (p1.size() != p2.size())
        throw Error("type_split: P1 and P2 have different alphabets");
    const auto k = p1.size();
    const auto t = type_of(seq, k);
    const double n = static_cast<double>(seq.size());

    TypeSplit out;
    out.mask.assign(seq.size(), 0);
    std::vector<std::int64_t> quota(k, 0);
    bool exact = true;
    for (std::size_t a = 0; a < k && exact; ++a) {
        const double want1 = beta * n * p1[a];
        const double want2 = (1.0 - beta) * n * p2[a];
        const double r1 = std::round(want1), r2 = std::round(want2);
        if (std::abs(want1 - r1) > 1e-9 || std::abs(want2 - r2) > 1e-9
            || static_cast<std::int64_t>(r1) + static_cast<std::int64_t>(r2) != t.counts[a])
            exact = false;
        else
            quota[a] = static_cast<std::int64_t>(r1);
    }

    if (exact) {
        for (std::size_t i = 0; i < seq.size(); ++i) {
            auto & q = quota[static_cast<std::size_t>(seq[i])];
            if (q > 0) {
                out.mask[i] = 1;
                --q;
            }
        }
    } else {
        SplitMix64 rng(seed);
        for (std::size_t i = 0; i < seq.size(); ++i) {
            const auto a = static_cast<std::size_t>(seq[i]);
            const double ta = static_cast<double>(t.counts[a]) / n;
            const double prob = std::clamp(beta * p1[a] / ta, 0.0, 1.0);
            out.mask[i] = rng.uniform() < prob ? 1 : 0;
        }
    }
    out.exact = exact;
    for (std::size_t i = 0; i < seq.size(); ++i)
        (out.mask[i] ? out.sub1 : out.sub2).push_back(seq[i]);
    return out;
}

} // namespace zeroerr
