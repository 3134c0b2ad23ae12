#include "zeroerr/numopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "zeroerr/combinat.hpp"
#include "zeroerr/perfect.hpp"
#include "zeroerr/symmetry.hpp"

namespace zeroerr {

namespace {

constexpr double inv_ln2 = 1.4426950408889634;

struct Membership {
    std::vector<std::vector<int>> sets;
    std::vector<std::vector<int>> containing; // per vertex: indices of sets holding it
};

Membership membership(const Graph & g, std::size_t limit)
{
    Membership m;
    m.sets = maximal_independent_sets(g, limit);
    m.containing.resize(g.size());
    for (std::size_t w = 0; w < m.sets.size(); ++w)
        for (int x : m.sets[w])
            m.containing[static_cast<std::size_t>(x)].push_back(static_cast<int>(w));
    return m;
}

// Z_x = sum of r over the sets holding x.
void partition_sums(const Membership & m, const std::vector<double> & r, std::vector<double> & z)
{
    z.assign(m.containing.size(), 0.0);
    for (std::size_t x = 0; x < z.size(); ++x)
        for (int w : m.containing[x])
            z[x] += r[static_cast<std::size_t>(w)];
}

struct Evaluation {
    double objective = 0.0;
    double gap = 0.0;
    std::vector<double> z; // Z_x
    std::vector<double> s; // s_w = sum_{x in w} P(x) / Z_x
};

void evaluate(const Membership & m, const std::vector<double> & p, const std::vector<double> & r, Evaluation & e)
{
    const auto n = p.size();
    partition_sums(m, r, e.z);
    e.objective = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        if (p[x] > 0.0)
            e.objective -= p[x] * std::log2(e.z[x]);
    e.s.assign(r.size(), 0.0);
    for (std::size_t x = 0; x < n; ++x)
        if (p[x] > 0.0)
            for (int w : m.containing[x])
                e.s[static_cast<std::size_t>(w)] += p[x] / e.z[x];
    e.gap = (*std::max_element(e.s.begin(), e.s.end()) - 1.0) * inv_ln2;
}

KornerSolution solve_korner(const Membership & m, const std::vector<double> & p, const KornerOptions & opts)
{
    KornerSolution sol;
    const auto n = p.size();
    const auto k = m.sets.size();

    std::vector<double> r;
    if (opts.warm_start.size() == k) {
        r = opts.warm_start;
        double s = 0.0;
        for (auto & v : r) {
            v = std::max(v, 1e-300);
            s += v;
        }
        for (auto & v : r)
            v /= s;
    } else {
        r.assign(k, 1.0 / static_cast<double>(k));
    }

    // Each step takes two multiplicative updates r1, r2 and tries the
    // squared extrapolation r - 2a(r1 - r) + a^2(r2 - 2r1 + r), falling back
    // to r1 when it does not improve on it. Objectives never increase.
    Evaluation cur, one, cand;
    evaluate(m, p, r, cur);
    std::vector<double> r1(k), r2(k), trial(k);
    for (std::size_t it = 0;; ++it) {
        if (opts.trace)
            sol.trace.push_back(cur.objective);
        sol.iterations = it;
        if (cur.gap <= opts.tol) {
            sol.converged = true;
            break;
        }
        if (it >= opts.max_iterations)
            break;

        for (std::size_t w = 0; w < k; ++w)
            r1[w] = r[w] * cur.s[w];
        evaluate(m, p, r1, one);
        for (std::size_t w = 0; w < k; ++w)
            r2[w] = r1[w] * one.s[w];

        double ss = 0.0, vv = 0.0;
        for (std::size_t w = 0; w < k; ++w) {
            const double sv = r1[w] - r[w], v = r2[w] - 2.0 * r1[w] + r[w];
            ss += sv * sv;
            vv += v * v;
        }
        bool accepted = false;
        if (vv > 0.0) {
            double a = std::min(-std::sqrt(ss / vv), -1.0);
            for (int halving = 0; halving < 30 && !accepted; ++halving, a = 0.5 * (a - 1.0)) {
                bool positive = true;
                double total = 0.0;
                for (std::size_t w = 0; w < k && positive; ++w) {
                    const double sv = r1[w] - r[w], v = r2[w] - 2.0 * r1[w] + r[w];
                    trial[w] = r[w] - 2.0 * a * sv + a * a * v;
                    positive = trial[w] > 0.0 || r[w] == 0.0;
                    trial[w] = std::max(trial[w], 0.0);
                    total += trial[w];
                }
                if (!positive || !(total > 0.0))
                    continue;
                for (auto & v : trial)
                    v /= total;
                evaluate(m, p, trial, cand);
                if (cand.objective <= one.objective) {
                    r.swap(trial);
                    std::swap(cur, cand);
                    accepted = true;
                }
                break;
            }
        }
        if (!accepted) {
            r.swap(r1);
            std::swap(cur, one);
        }
    }

    // Q at the final r, and I(W;X) against Q's own output marginal.
    const auto & z = cur.z;
    sol.q.assign(n, {});
    std::vector<double> marginal(k, 0.0);
    for (std::size_t x = 0; x < n; ++x)
        for (int w : m.containing[x]) {
            const double q = z[x] > 0.0 ? r[static_cast<std::size_t>(w)] / z[x] : 0.0;
            sol.q[x].push_back({w, q});
            marginal[static_cast<std::size_t>(w)] += p[x] * q;
        }
    double info = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        if (p[x] <= 0.0)
            continue;
        for (const auto & [w, q] : sol.q[x]) {
            // denormal q can underflow p*q to zero; marginal >= p*q then
            if (p[x] * q > 0.0)
                info += p[x] * q * std::log2(q / marginal[static_cast<std::size_t>(w)]);
        }
    }
    sol.value = std::max(0.0, std::min(info, cur.objective));
    sol.lower_bound = std::max(0.0, std::min(cur.objective - std::max(cur.gap, 0.0), sol.value));
    sol.sets = m.sets;
    sol.r = std::move(r);
    return sol;
}

} // namespace

KornerSolution korner_entropy(const ProbabilisticGraph & pg, const KornerOptions & opts)
{
    if (!(opts.tol > 0.0))
        throw Error("korner_entropy needs tol > 0");
    if (pg.size() == 0)
        return {};
    return solve_korner(membership(pg.graph, opts.mis_limit), pg.dist.weights(), opts);
}

double relative_capacity_perfect(const ProbabilisticGraph & pg, bool assume_perfect, const KornerOptions & opts)
{
    if (!assume_perfect) {
        const auto perf = is_perfect(pg.graph);
        if (perf.perfect == Decision::undecided)
            throw Error("perfectness undecided; pass assume_perfect to proceed");
        if (perf.perfect == Decision::no)
            throw Error("graph is not perfect");
    }
    return pg.dist.entropy() - korner_entropy(pg, opts).value;
}

namespace {

CapacityEvaluator make_evaluator(const Graph & g, const KornerOptions & opts)
{
    auto warm = std::make_shared<std::vector<double>>();
    auto m = std::make_shared<const Membership>(membership(g, opts.mis_limit));
    return [n = g.size(), opts, warm, m](const Distribution & p) {
        if (p.size() != n)
            throw Error("capacity evaluator: distribution length does not match the graph");
        KornerOptions o = opts;
        o.warm_start = *warm;
        auto sol = solve_korner(*m, p.weights(), o);
        *warm = sol.r;
        std::vector<double> z;
        partition_sums(*m, sol.r, z);
        CapacityEvaluation e;
        e.value = p.entropy() - sol.value;
        e.supergradient.resize(n);
        for (std::size_t x = 0; x < n; ++x) {
            const double px = std::max(p[x], 1e-300);
            e.supergradient[x] = -std::log2(px) - inv_ln2 + std::log2(std::max(z[x], 1e-300));
        }
        return e;
    };
}

} // namespace

CapacityEvaluator perfect_capacity_evaluator(const Graph & g, const KornerOptions & opts)
{
    const auto perf = is_perfect(g);
    if (perf.perfect != Decision::yes)
        throw Error("perfect_capacity_evaluator needs a graph certified perfect");
    return make_evaluator(g, opts);
}

CapacityEvaluator korner_lower_evaluator(const Graph & g, const KornerOptions & opts)
{
    return make_evaluator(g, opts);
}

CapacityResult capacity_achieving_distribution(std::size_t n, const CapacityEvaluator & eval,
                                               const CapacityOptions & opts)
{
    if (n == 0)
        throw Error("capacity optimization over an empty alphabet");
    CapacityResult res;
    res.lower_bound_only = opts.lower_bound_evaluator;
    std::vector<double> p(n, 1.0 / static_cast<double>(n));
    auto cur = eval(Distribution(p));
    double eta = 1.0;
    auto stationarity = [&](const CapacityEvaluation & e, const std::vector<double> & pt) {
        double mx = -std::numeric_limits<double>::infinity(), avg = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            mx = std::max(mx, e.supergradient[x]);
            avg += pt[x] * e.supergradient[x];
        }
        return std::max(0.0, mx - avg);
    };
    for (std::size_t it = 0;; ++it) {
        res.gap = stationarity(cur, p);
        res.iterations = it;
        if (res.gap <= opts.tol) {
            res.converged = true;
            break;
        }
        if (it >= opts.max_iterations)
            break;
        const double mx = *std::max_element(cur.supergradient.begin(), cur.supergradient.end());
        bool accepted = false;
        while (eta > 1e-12) {
            std::vector<double> next(n);
            double s = 0.0;
            for (std::size_t x = 0; x < n; ++x) {
                next[x] = p[x] * std::exp2(eta * (cur.supergradient[x] - mx));
                s += next[x];
            }
            for (auto & v : next)
                v /= s;
            auto cand = eval(Distribution::normalized(next));
            if (cand.value >= cur.value - 1e-13) {
                p = std::move(next);
                cur = std::move(cand);
                accepted = true;
                eta = std::min(1.0, eta * 2.0);
                break;
            }
            eta *= 0.5;
        }
        if (!accepted)
            break;
    }
    res.p = Distribution::normalized(p);
    res.value = cur.value;
    return res;
}

std::pair<Distribution, double> sum_channel_weights(std::span<const double> c0_values)
{
    if (c0_values.empty())
        throw Error("sum_channel_weights needs at least one channel");
    for (double c : c0_values)
        if (!std::isfinite(c))
            throw Error("sum_channel_weights: capacity values must be finite");
    const double mx = *std::max_element(c0_values.begin(), c0_values.end());
    std::vector<double> w;
    double s = 0.0;
    for (double c : c0_values) {
        w.push_back(std::exp2(c - mx));
        s += w.back();
    }
    for (auto & v : w)
        v /= s;
    return {Distribution::normalized(std::move(w)), mx + std::log2(s)};
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n)
{
    if (a.size() != n * n)
        throw Error("symmetric_eigenvalues: matrix size mismatch");
    auto at = [&](std::size_t i, std::size_t j) -> double & { return a[i * n + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                off += 2.0 * at(i, j) * at(i, j);
        if (std::sqrt(off) < 1e-12)
            break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) < 1e-300)
                    continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i)
        eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

double theta_transitive(const Graph & g, bool assume_transitive)
{
    const auto n = g.size();
    const auto d = g.regular_degree();
    if (!d)
        throw Error("theta_transitive: graph is not regular");
    if (*d == 0)
        return static_cast<double>(n);
    if (!assume_transitive) {
        const auto vt = is_vertex_transitive(g);
        const auto et = is_edge_transitive(g);
        if (vt != Decision::yes || et != Decision::yes)
            throw Error(std::string("theta_transitive: vertex transitivity ") + to_string(vt)
                        + ", edge transitivity " + to_string(et));
    }
    std::vector<double> a(n * n, 0.0);
    for (auto [u, v] : g.edges()) {
        a[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)] = 1.0;
        a[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(u)] = 1.0;
    }
    const double lmin = symmetric_eigenvalues(std::move(a), n).front();
    return static_cast<double>(n) * (-lmin) / (static_cast<double>(*d) - lmin);
}

bool is_prime(int p)
{
    if (p < 2)
        return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

namespace {

long long power_mod(long long b, long long e, long long m)
{
    long long r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1)
            r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

int reduce(int v, int p) { return ((v % p) + p) % p; }

void check_matrix(const FiniteFieldMatrix & m)
{
    if (!is_prime(m.p))
        throw Error("finite-field modulus " + std::to_string(m.p) + " is not prime");
    for (std::size_t i = 0; i < m.rows.size(); ++i)
        if (m.rows[i].size() != m.rows.size())
            throw Error("finite-field matrix is not square: row " + std::to_string(i));
}

} // namespace

std::size_t rank_mod_p(const FiniteFieldMatrix & m)
{
    check_matrix(m);
    const long long p = m.p;
    auto a = m.rows;
    for (auto & row : a)
        for (auto & v : row)
            v = reduce(v, m.p);
    const auto n = a.size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < n; ++col) {
        std::size_t piv = rank;
        while (piv < n && a[piv][col] == 0)
            ++piv;
        if (piv == n)
            continue;
        std::swap(a[piv], a[rank]);
        const long long inv = power_mod(a[rank][col], p - 2, p);
        for (auto & v : a[rank])
            v = static_cast<int>(v * inv % p);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == rank || a[r][col] == 0)
                continue;
            const long long f = a[r][col];
            for (std::size_t c = col; c < n; ++c)
                a[r][c] = static_cast<int>(((a[r][c] - f * a[rank][c]) % p + p) % p);
        }
        ++rank;
    }
    return rank;
}

double haemers_bound(const Graph & g, const FiniteFieldMatrix & b)
{
    check_matrix(b);
    if (b.rows.size() != g.size())
        throw Error("fitting matrix has " + std::to_string(b.rows.size()) + " rows, graph has "
                    + std::to_string(g.size()) + " vertices");
    const auto n = g.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const int v = reduce(b.rows[i][j], b.p);
            if (i == j && v == 0)
                throw Error("matrix does not fit graph: diagonal entry (" + std::to_string(i) + ","
                            + std::to_string(i) + ") is zero mod " + std::to_string(b.p));
            if (i != j && v != 0 && !g.adjacent(static_cast<int>(i), static_cast<int>(j)))
                throw Error("matrix does not fit graph: entry (" + std::to_string(i) + "," + std::to_string(j)
                            + ") is nonzero on a non-edge");
        }
    return std::log2(static_cast<double>(rank_mod_p(b)));
}

std::vector<FiniteFieldMatrix> default_haemers_candidates(const Graph & g)
{
    std::vector<FiniteFieldMatrix> out;
    for (int p : {2, 3}) {
        FiniteFieldMatrix m{p, std::vector<std::vector<int>>(g.size(), std::vector<int>(g.size(), 0))};
        for (std::size_t i = 0; i < g.size(); ++i) {
            m.rows[i][i] = 1;
            for (std::size_t j = 0; j < g.size(); ++j)
                if (g.adjacent(static_cast<int>(i), static_cast<int>(j)))
                    m.rows[i][j] = 1;
        }
        out.push_back(std::move(m));
    }
    return out;
}

} // namespace zeroerr
