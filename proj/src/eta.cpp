#include "zeroerr/eta.hpp"

#include <algorithm>
#include <numeric>

#include "zeroerr/perfect.hpp"

namespace zeroerr {

namespace {

// Smallest k with k P_A integral, and the matching repetition counts.
std::pair<std::vector<std::int64_t>, std::int64_t> reduced_counts(const Distribution & p_a)
{
    if (!p_a.is_rational())
        throw Error("eta needs a rational P_A (numerators over a common denominator)");
    auto num = p_a.numerators();
    std::int64_t g = p_a.denominator();
    for (auto v : num)
        g = std::gcd(g, v);
    for (auto & v : num)
        v /= g;
    return {num, p_a.denominator() / g};
}

void check_parts(std::span<const ProbabilisticGraph> parts, const Distribution & p_a)
{
    if (parts.empty())
        throw Error("eta needs at least one part");
    if (parts.size() != p_a.size())
        throw Error("eta: P_A has " + std::to_string(p_a.size()) + " entries for " + std::to_string(parts.size())
                    + " parts");
}

} // namespace

ProbabilisticGraph eta_product(std::span<const ProbabilisticGraph> parts, const Distribution & p_a,
                               const ProductOptions & opts)
{
    check_parts(parts, p_a);
    const auto [counts, k] = reduced_counts(p_a);
    (void)k;
    std::optional<ProbabilisticGraph> acc;
    for (std::size_t a = 0; a < parts.size(); ++a)
        for (std::int64_t r = 0; r < counts[a]; ++r)
            acc = acc ? and_product(*acc, parts[a], opts) : parts[a];
    return *acc;
}

BoundInterval eta_bounds(std::span<const ProbabilisticGraph> parts, const Distribution & p_a,
                         const BoundsOptions & opts)
{
    check_parts(parts, p_a);
    const auto k = static_cast<double>(reduced_counts(p_a).second);
    const auto product = eta_product(parts, p_a, opts.product);
    BoundsOptions inner = opts;
    inner.assume_perfect = false;
    const auto hb = hbar_bounds(product, inner);

    BoundInterval b;
    b.quantity = "eta";
    b.lo = hb.lo / k;
    b.hi = hb.hi / k;
    const int kn = static_cast<int>(k);
    b.lo_cert = Certificate{"product-scaling", kn, {}, b.lo, {hb.lo_cert}};
    b.hi_cert = Certificate{"product-scaling", kn, {}, b.hi, {hb.hi_cert}};

    bool all_perfect = true;
    std::vector<std::string> flags;
    for (const auto & part : parts) {
        if (opts.assume_perfect)
            continue;
        PerfectOptions po;
        po.budget = opts.budget;
        if (is_perfect(part.graph, po).perfect != Decision::yes) {
            all_perfect = false;
            break;
        }
    }
    if (all_perfect) {
        flags.push_back(opts.assume_perfect ? "assumed-perfect" : "verified-perfect");
        double lo = 0.0, hi = 0.0;
        bool converged = true;
        for (std::size_t a = 0; a < parts.size(); ++a) {
            if (p_a[a] == 0.0)
                continue;
            const auto sol = korner_entropy(parts[a], opts.korner);
            lo += p_a[a] * sol.lower_bound;
            hi += p_a[a] * sol.value;
            converged = converged && sol.converged;
        }
        if (!converged)
            flags.push_back("not-converged");
        if (lo > b.lo) {
            b.lo = lo;
            b.lo_cert = Certificate{"perfect-family-linearization", 1, flags, lo, {}};
        }
        if (hi < b.hi) {
            b.hi = hi;
            b.hi_cert = Certificate{"perfect-family-linearization", 1, flags, hi, {}};
        }
    }
    return b;
}

} // namespace zeroerr
