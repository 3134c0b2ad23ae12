// Python bindings. Graphs, channels and results cross the boundary as JSON
// text in the same formats the CLI reads and writes; zeroerr/__init__.py
// converts to and from dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zeroerr/codec.hpp"
#include "zeroerr/eta.hpp"
#include "zeroerr/io.hpp"
#include "zeroerr/perfect.hpp"
#include "zeroerr/verifier.hpp"

namespace py = pybind11;
using namespace zeroerr;

namespace {

Graph graph_of(const std::string & text) { return graph_from_json(Json::parse(text)); }
ProbabilisticGraph pg_of(const std::string & text) { return pg_from_json(Json::parse(text)); }
std::string out(const Json & j) { return j.dump(); }

BoundsOptions bounds_options(int max_n, std::uint64_t node_budget)
{
    BoundsOptions o;
    o.max_n = max_n;
    o.budget.node_limit = node_budget;
    return o;
}

Json set_json(const SetResult & r) { return {{"size", r.size}, {"witness", r.witness}, {"exact", r.exact}}; }

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Zero-error information theory on probabilistic graphs";

    // translators run newest first, so the subclass is registered last
    const auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "BudgetError", error.ptr());

    const std::uint64_t nodes = SolverBudget{}.node_limit;

    m.def("catalog", [](const std::string & name, std::vector<int> params) { return out(to_json(catalog_get(name, params))); },
          py::arg("name"), py::arg("params") = std::vector<int>{});
    m.def("and_product", [](const std::string & a, const std::string & b) {
        return out(to_json(and_product(pg_of(a), pg_of(b))));
    });
    m.def("and_power", [](const std::string & g, std::size_t n) { return out(to_json(and_power(pg_of(g), n))); });
    m.def("complement", [](const std::string & g) { return out(to_json(complement(graph_of(g)))); });
    m.def("disjoint_union", [](const std::vector<std::string> & parts, std::vector<double> weights) {
        std::vector<ProbabilisticGraph> pgs;
        for (const auto & p : parts)
            pgs.push_back(pg_of(p));
        return out(to_json(disjoint_union(pgs, Distribution::normalized(std::move(weights))).first));
    });
    m.def("is_perfect", [](const std::string & g) {
        PerfectOptions po;
        po.max_vertices = 64;
        const auto r = is_perfect(graph_of(g), po);
        return out({{"perfect", to_string(r.perfect)}, {"witness", r.witness}, {"in_complement", r.in_complement}});
    });

    m.def("alpha", [](const std::string & g, std::uint64_t budget) {
        SolverBudget b;
        b.node_limit = budget;
        return out(set_json(alpha_exact(graph_of(g), b)));
    }, py::arg("graph"), py::arg("node_budget") = nodes);
    m.def("omega", [](const std::string & g) { return out(set_json(omega_exact(graph_of(g)))); });
    m.def("chromatic_number", [](const std::string & g) {
        const auto r = chromatic_number_exact(graph_of(g));
        return out({{"count", r.count}, {"colors", r.coloring.color_of}, {"exact", r.exact}});
    });
    m.def("min_entropy_coloring", [](const std::string & g) {
        const auto r = min_entropy_coloring(pg_of(g));
        return out({{"h_chi", r.h_chi}, {"colors", r.coloring.color_of}, {"exact", r.exact}});
    });

    m.def("korner_entropy", [](const std::string & g) {
        const auto k = korner_entropy(pg_of(g));
        return out({{"value", k.value}, {"lower_bound", k.lower_bound}, {"converged", k.converged}});
    });
    m.def("sum_channel_weights", [](std::vector<double> c) {
        const auto [p, value] = sum_channel_weights(c);
        return std::pair{p.weights(), value};
    });
    m.def("theta_transitive", [](const std::string & g) { return theta_transitive(graph_of(g)); });

    m.def("c0_bounds", [](const std::string & g, int max_n, std::uint64_t budget) {
        return out(to_json(c0_bounds(graph_of(g), bounds_options(max_n, budget))));
    }, py::arg("graph"), py::arg("max_n") = 2, py::arg("node_budget") = nodes);
    m.def("h0_bounds", [](const std::string & g, int max_n, std::uint64_t budget) {
        return out(to_json(h0_bounds(graph_of(g), bounds_options(max_n, budget))));
    }, py::arg("graph"), py::arg("max_n") = 2, py::arg("node_budget") = nodes);
    m.def("hbar_bounds", [](const std::string & g, int max_n, std::uint64_t budget) {
        return out(to_json(hbar_bounds(pg_of(g), bounds_options(max_n, budget))));
    }, py::arg("graph"), py::arg("max_n") = 2, py::arg("node_budget") = nodes);
    m.def("c_rel_bounds", [](const std::string & g, int max_n, std::uint64_t budget) {
        return out(to_json(c_rel_bounds(pg_of(g), bounds_options(max_n, budget))));
    }, py::arg("graph"), py::arg("max_n") = 2, py::arg("node_budget") = nodes);
    m.def("eta_bounds", [](const std::vector<std::string> & parts, std::vector<std::int64_t> num, std::int64_t den,
                           int max_n) {
        std::vector<ProbabilisticGraph> pgs;
        for (const auto & p : parts)
            pgs.push_back(pg_of(p));
        return out(to_json(eta_bounds(pgs, Distribution::rational(std::move(num), den), bounds_options(max_n, nodes))));
    }, py::arg("parts"), py::arg("numerators"), py::arg("denominator"), py::arg("max_n") = 1);

    m.def("simulate_si", [](const std::string & channel, std::size_t n, double eps, std::size_t trials,
                            std::uint64_t seed) {
        const auto ch = channel_from_json(Json::parse(channel));
        const auto code = build_si_code(ch, Distribution::uniform(static_cast<std::size_t>(ch.x_count)), n, eps);
        auto j = to_json(simulate_si(code, trials, seed));
        j["rate_budget"] = code.rate_budget();
        return out(j);
    }, py::arg("channel"), py::arg("n"), py::arg("eps"), py::arg("trials"), py::arg("seed") = 1);
    m.def("channel_code", [](const std::string & channel, std::size_t n) {
        return out(to_json(build_channel_code(channel_from_json(Json::parse(channel)), n)));
    });

    m.def("verify", [](std::vector<std::string> tags, std::vector<std::string> ids, std::uint64_t seed,
                       std::size_t threads) {
        VerifierConfig c;
        c.tags = std::move(tags);
        c.ids = std::move(ids);
        c.seed = seed;
        c.threads = threads;
        SuiteReport r;
        {
            py::gil_scoped_release release;
            r = full_suite(c);
        }
        return dump(to_json(r));
    }, py::arg("tags") = std::vector<std::string>{}, py::arg("ids") = std::vector<std::string>{},
          py::arg("seed") = VerifierConfig{}.seed, py::arg("threads") = 1);
}
