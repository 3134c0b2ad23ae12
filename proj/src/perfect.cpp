#include "zeroerr/perfect.hpp"

namespace zeroerr {

namespace {

// Grows chordless paths p0 < every other path vertex, closing an odd cycle
// of length >= 5 when the newest vertex touches p0.
class HoleSearch {
public:
    HoleSearch(const Graph & g, BudgetTracker & tracker) : g_(g), tracker_(tracker), n_(g.size()) {}

    std::vector<int> run()
    {
        for (std::size_t s = 0; s < n_ && !tracker_.exhausted(); ++s) {
            path_.assign(1, static_cast<int>(s));
            if (extend())
                return path_;
        }
        return {};
    }

private:
    bool extend()
    {
        if (!tracker_.tick())
            return false;
        const int s = path_.front();
        const int last = path_.back();
        const auto len = path_.size();
        for (auto w = g_.row(last).first(); w != Bitset::npos; w = g_.row(last).next(w + 1)) {
            const int x = static_cast<int>(w);
            if (x <= s || on_path(x))
                continue;
            // x must avoid every path vertex other than `last` and possibly s
            bool chord = false;
            for (std::size_t i = 1; i + 1 < len; ++i)
                if (g_.adjacent(x, path_[i])) {
                    chord = true;
                    break;
                }
            if (chord)
                continue;
            const bool closes = len >= 2 && g_.adjacent(x, s);
            if (closes) {
                if (len + 1 >= 5 && (len + 1) % 2 == 1) {
                    path_.push_back(x);
                    return true;
                }
                continue;
            }
            if (len + 1 < n_) {
                path_.push_back(x);
                if (extend())
                    return true;
                path_.pop_back();
                if (tracker_.exhausted())
                    return false;
            }
        }
        return false;
    }

    bool on_path(int x) const
    {
        for (int p : path_)
            if (p == x)
                return true;
        return false;
    }

    const Graph & g_;
    BudgetTracker & tracker_;
    std::size_t n_;
    std::vector<int> path_;
};

} // namespace

std::vector<int> find_odd_hole(const Graph & g, BudgetTracker & tracker, bool & exhausted)
{
    HoleSearch h(g, tracker);
    auto hole = h.run();
    exhausted = hole.empty() && tracker.exhausted();
    return hole;
}

bool is_induced_cycle(const Graph & g, std::span<const int> cycle)
{
    const auto k = cycle.size();
    if (k < 3)
        return false;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            if (cycle[i] == cycle[j])
                return false;
            const bool consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if (g.adjacent(cycle[i], cycle[j]) != consecutive)
                return false;
        }
    return true;
}

PerfectResult is_perfect(const Graph & g, const PerfectOptions & opts)
{
    PerfectResult r;
    if (g.size() > opts.max_vertices)
        return r;
    BudgetTracker tracker(opts.budget);
    bool exhausted = false;
    auto hole = find_odd_hole(g, tracker, exhausted);
    if (!hole.empty()) {
        r.perfect = Decision::no;
        r.witness = std::move(hole);
        return r;
    }
    if (exhausted)
        return r;
    hole = find_odd_hole(complement(g), tracker, exhausted);
    if (!hole.empty()) {
        r.perfect = Decision::no;
        r.witness = std::move(hole);
        r.in_complement = true;
        return r;
    }
    if (exhausted)
        return r;
    r.perfect = Decision::yes;
    return r;
}

} // namespace zeroerr
