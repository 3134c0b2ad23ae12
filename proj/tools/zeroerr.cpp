// zeroerr: command-line front end. Every command writes one JSON document
// (or a versioned CSV table) to stdout or --out.
//
// Exit codes: 0 success, 2 a solver budget ran out (the printed result is
// then a one-sided or flagged bound), 1 error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "zeroerr/codec.hpp"
#include "zeroerr/eta.hpp"
#include "zeroerr/io.hpp"
#include "zeroerr/parallel.hpp"
#include "zeroerr/perfect.hpp"
#include "zeroerr/symmetry.hpp"
#include "zeroerr/typicality.hpp"
#include "zeroerr/verifier.hpp"

using namespace zeroerr;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_undecided = 2;

struct CliConfig {
    std::size_t vertex_budget = default_vertex_budget;
    std::int64_t time_budget_ms = 0;
    std::uint64_t node_budget = SolverBudget{}.node_limit;
    std::optional<double> tol_bits;
    std::uint64_t seed = 20240229;
    std::size_t threads = 0; // 0: ZEROERR_THREADS or 1
    std::string output_format = "json";
    std::string out;

    SolverBudget budget() const
    {
        SolverBudget b;
        b.node_limit = node_budget;
        b.time_limit = std::chrono::milliseconds(time_budget_ms);
        return b;
    }
    ProductOptions product() const { return {vertex_budget}; }
    std::size_t thread_count() const { return threads > 0 ? threads : threads_from_env(1); }
    KornerOptions korner() const
    {
        KornerOptions k;
        if (tol_bits)
            k.tol = *tol_bits;
        return k;
    }
    BoundsOptions bounds(int max_n) const
    {
        BoundsOptions o;
        o.max_n = max_n;
        o.budget = budget();
        o.product = product();
        o.korner = korner();
        o.threads = thread_count();
        return o;
    }
    CodecOptions codec() const
    {
        CodecOptions o;
        o.product = product();
        o.budget = budget();
        o.threads = thread_count();
        return o;
    }
};

std::vector<int> parse_ints(const std::string & text, const std::string & what)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception &) {
            throw Error(what + ": \"" + item + "\" is not an integer");
        }
    }
    return out;
}

// "1/3,2/3" -> rational distribution over the common denominator.
Distribution parse_rational(const std::string & text, const std::string & what)
{
    std::vector<std::pair<std::int64_t, std::int64_t>> parts;
    std::stringstream ss(text);
    std::string item;
    std::int64_t den = 1;
    while (std::getline(ss, item, ',')) {
        const auto slash = item.find('/');
        try {
            const std::int64_t p = std::stoll(item.substr(0, slash));
            const std::int64_t q = slash == std::string::npos ? 1 : std::stoll(item.substr(slash + 1));
            if (p < 0 || q <= 0)
                throw std::invalid_argument(item);
            parts.emplace_back(p, q);
            den = std::lcm(den, q);
        } catch (const std::exception &) {
            throw Error(what + ": \"" + item + "\" is not a non-negative fraction p/q");
        }
    }
    std::vector<std::int64_t> num;
    for (const auto & [p, q] : parts)
        num.push_back(p * (den / q));
    try {
        return Distribution::rational(std::move(num), den);
    } catch (const Error & e) {
        throw Error(what + ": " + e.what());
    }
}

ProbabilisticGraph load_pg(const std::string & path) { return pg_from_json(read_json_file(path)); }
Graph load_graph(const std::string & path) { return graph_from_json(read_json_file(path)); }

Json set_json(const SetResult & r)
{
    return {{"size", r.size}, {"witness", r.witness}, {"exact", r.exact}, {"nodes", r.nodes}};
}

Json coloring_json(const ColoringResult & r)
{
    return {{"count", r.count},
            {"lower_bound", r.lower_bound},
            {"colors", r.coloring.color_of},
            {"exact", r.exact},
            {"nodes", r.nodes}};
}

std::vector<double> rounded(const std::vector<double> & v)
{
    std::vector<double> out;
    for (double x : v)
        out.push_back(round9(x));
    return out;
}

std::string csv_value(const Json & v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_float())
        return format9(v.get<double>());
    return v.dump();
}

// Scalar fields of an object, or of each object in an array, as a table.
// Nested values are written as compact JSON.
std::string to_csv_table(const Json & j)
{
    std::ostringstream os;
    os << "# zeroerr csv v1\n";
    const auto rows = j.is_array() ? j : Json::array({j});
    if (rows.empty() || !rows[0].is_object())
        return os.str() + "value\n" + j.dump() + "\n";
    bool first = true;
    for (const auto & [k, v] : rows[0].items()) {
        os << (first ? "" : ",") << k;
        first = false;
    }
    os << "\n";
    for (const auto & row : rows) {
        first = true;
        for (const auto & [k, v] : rows[0].items()) {
            const auto it = row.find(k);
            std::string cell = it == row.end() ? "" : csv_value(*it);
            if (cell.find_first_of(",\"\n") != std::string::npos) {
                std::string q = "\"";
                for (char c : cell)
                    q += c == '"' ? std::string("\"\"") : std::string(1, c);
                cell = q + "\"";
            }
            os << (first ? "" : ",") << cell;
            first = false;
        }
        os << "\n";
    }
    return os.str();
}

void emit(const CliConfig & cfg, const std::string & text)
{
    if (cfg.out.empty())
        std::cout << text;
    else
        write_text_file(cfg.out, text);
}

void emit(const CliConfig & cfg, const Json & j)
{
    emit(cfg, cfg.output_format == "csv" ? to_csv_table(j) : dump(j));
}

void add_graph_commands(CLI::App & app, CliConfig & cfg, std::function<void()> & action)
{
    auto * graph = app.add_subcommand("graph", "Build, combine and inspect graphs");
    graph->require_subcommand(1);

    static int n = 0;
    static std::string edges, dist, name, a_path, b_path, weights;
    static std::vector<std::string> graph_paths;
    static std::vector<int> params;
    static std::size_t power = 2;

    auto * build = graph->add_subcommand("build", "Graph from a vertex count and an edge list");
    build->add_option("--n", n, "Vertex count")->required();
    build->add_option("--edges", edges, "Edges as \"0-1 1-2 ...\"");
    build->add_option("--dist", dist, "Rational distribution \"1/2,1/4,1/4\"");
    build->callback([&] {
        action = [&] {
            std::vector<Edge> list;
            std::stringstream ss(edges);
            std::string e;
            while (ss >> e) {
                const auto dash = e.find('-');
                const auto uv = parse_ints(dash == std::string::npos ? e : e.replace(dash, 1, ","), "--edges");
                if (uv.size() != 2)
                    throw Error("--edges: \"" + e + "\" is not u-v");
                list.emplace_back(uv[0], uv[1]);
            }
            auto g = Graph::from_edges(static_cast<std::size_t>(n), list);
            if (dist.empty())
                emit(cfg, to_json(g));
            else
                emit(cfg, to_json(ProbabilisticGraph(std::move(g), parse_rational(dist, "--dist"))));
        };
    });

    auto * product = graph->add_subcommand("product", "AND product of two graphs");
    product->add_option("--a", a_path, "First graph file")->required();
    product->add_option("--b", b_path, "Second graph file")->required();
    product->callback([&] {
        action = [&] { emit(cfg, to_json(and_product(load_pg(a_path), load_pg(b_path), cfg.product()))); };
    });

    auto * uni = graph->add_subcommand("union", "Disjoint union mixed by part weights");
    uni->add_option("--graph", graph_paths, "Part graph files")->required();
    uni->add_option("--weights", weights, "Rational part weights \"1/2,1/2\" (default uniform)");
    uni->callback([&] {
        action = [&] {
            std::vector<ProbabilisticGraph> parts;
            for (const auto & p : graph_paths)
                parts.push_back(load_pg(p));
            const auto w = weights.empty() ? Distribution::uniform(parts.size()) : parse_rational(weights, "--weights");
            if (w.size() != parts.size())
                throw Error("--weights: need one weight per --graph");
            auto [pg, layout] = disjoint_union(parts, w);
            auto j = to_json(pg);
            j["offsets"] = layout.offsets;
            emit(cfg, j);
        };
    });

    auto * comp = graph->add_subcommand("complement", "Complement graph");
    comp->add_option("--graph", a_path, "Graph file")->required();
    comp->callback([&] { action = [&] { emit(cfg, to_json(complement(load_graph(a_path)))); }; });

    auto * pw = graph->add_subcommand("power", "AND power G^n");
    pw->add_option("--graph", a_path, "Graph file")->required();
    pw->add_option("--n", power, "Exponent")->required()->check(CLI::PositiveNumber);
    pw->callback([&] { action = [&] { emit(cfg, to_json(and_power(load_pg(a_path), power, cfg.product()))); }; });

    auto * cat = graph->add_subcommand("catalog", "Named graph: cycle, complete, empty, path (with --param n), schlafli");
    cat->add_option("--name", name, "Catalog name")->required();
    cat->add_option("--param", params, "Integer parameters");
    cat->callback([&] { action = [&] { emit(cfg, to_json(catalog_get(name, params))); }; });

    auto * info = graph->add_subcommand("info", "Size, degrees, perfection and symmetry");
    info->add_option("--graph", a_path, "Graph file")->required();
    info->callback([&] {
        action = [&] {
            const auto g = load_graph(a_path);
            Json j;
            j["n"] = g.size();
            j["edges"] = g.edge_count();
            std::size_t lo = g.size(), hi = 0;
            for (std::size_t v = 0; v < g.size(); ++v) {
                lo = std::min(lo, g.degree(static_cast<int>(v)));
                hi = std::max(hi, g.degree(static_cast<int>(v)));
            }
            j["min_degree"] = g.size() ? lo : 0;
            j["max_degree"] = hi;
            if (const auto d = g.regular_degree())
                j["degree"] = *d;
            else
                j["degree"] = nullptr;
            PerfectOptions po;
            po.budget = cfg.budget();
            po.max_vertices = 64;
            const auto p = is_perfect(g, po);
            j["perfect"] = to_string(p.perfect);
            if (p.perfect == Decision::no) {
                j["odd_hole"] = p.witness;
                j["hole_in_complement"] = p.in_complement;
            }
            TransitivityOptions to;
            to.budget = cfg.budget();
            j["vertex_transitive"] = to_string(is_vertex_transitive(g, to));
            j["edge_transitive"] = to_string(is_edge_transitive(g, to));
            emit(cfg, j);
        };
    });
}

void add_solve_commands(CLI::App & app, CliConfig & cfg, std::function<void()> & action)
{
    auto * solve = app.add_subcommand("solve", "Exact combinatorial solvers");
    solve->require_subcommand(1);
    static std::string path;
    static bool heuristic = false;
    static std::size_t limit = 1'000'000;

    auto add = [&](const char * name, const char * help, std::function<Json()> run) {
        auto * s = solve->add_subcommand(name, help);
        s->add_option("--graph", path, "Graph file")->required();
        return std::pair{s, run};
    };
    auto bind = [&](std::pair<CLI::App *, std::function<Json()>> p) {
        p.first->callback([&cfg, &action, run = p.second] { action = [&cfg, run] { emit(cfg, run()); }; });
        return p.first;
    };
    bind(add("alpha", "Independence number with a witness",
             [&] { return set_json(alpha_exact(load_graph(path), cfg.budget())); }));
    bind(add("omega", "Clique number with a witness",
             [&] { return set_json(omega_exact(load_graph(path), cfg.budget())); }));
    bind(add("chi", "Chromatic number with a colouring",
             [&] { return coloring_json(chromatic_number_exact(load_graph(path), cfg.budget())); }));
    auto * hchi = bind(add("hchi", "Minimum-entropy colouring", [&] {
        const auto r = min_entropy_coloring(load_pg(path), heuristic ? ColoringMode::heuristic : ColoringMode::exact,
                                            cfg.budget());
        return Json{{"h_chi", round9(r.h_chi)},
                    {"colors", r.coloring.color_of},
                    {"color_count", r.coloring.color_count},
                    {"exact", r.exact}};
    }));
    hchi->add_flag("--heuristic", heuristic, "Greedy maximum-probability independent sets");
    auto * mis = bind(add("mis", "All maximal independent sets", [&] {
        const auto sets = maximal_independent_sets(load_graph(path), limit);
        return Json{{"count", sets.size()}, {"sets", sets}};
    }));
    mis->add_option("--limit", limit, "Give up past this many sets");
}

void add_entropy_commands(CLI::App & app, CliConfig & cfg, std::function<void()> & action)
{
    auto * entropy = app.add_subcommand("entropy", "Korner entropy and capacity-achieving distributions");
    entropy->require_subcommand(1);
    static std::string path;

    auto * kappa = entropy->add_subcommand("kappa", "Korner graph entropy H_kappa(G, P)");
    kappa->add_option("--graph", path, "Probabilistic graph file")->required();
    kappa->callback([&] {
        action = [&] {
            const auto k = korner_entropy(load_pg(path), cfg.korner());
            emit(cfg, Json{{"quantity", "H_kappa"},
                           {"value", round9(k.value)},
                           {"lower_bound", round9(k.lower_bound)},
                           {"iterations", k.iterations},
                           {"converged", k.converged},
                           {"sets", k.sets},
                           {"r", rounded(k.r)}});
        };
    });

    auto * cap = entropy->add_subcommand("capdist", "Distribution maximizing the relative capacity C(G, P)");
    cap->add_option("--graph", path, "Graph file")->required();
    cap->callback([&] {
        action = [&] {
            const auto g = load_graph(path);
            PerfectOptions po;
            po.budget = cfg.budget();
            const bool perfect = is_perfect(g, po).perfect == Decision::yes;
            CapacityOptions co;
            if (cfg.tol_bits)
                co.tol = *cfg.tol_bits;
            co.lower_bound_evaluator = !perfect;
            const auto r = capacity_achieving_distribution(
                g.size(), perfect ? perfect_capacity_evaluator(g, cfg.korner()) : korner_lower_evaluator(g, cfg.korner()),
                co);
            emit(cfg, Json{{"quantity", "max_P C(G, P)"},
                           {"value", round9(r.value)},
                           {"lower_bound_only", r.lower_bound_only},
                           {"p", rounded(r.p.weights())},
                           {"gap", round9(r.gap)},
                           {"iterations", r.iterations},
                           {"converged", r.converged}});
        };
    });
}

void add_bounds_commands(CLI::App & app, CliConfig & cfg, std::function<void()> & action)
{
    auto * bounds = app.add_subcommand("bounds", "Certified finite-n bound intervals");
    bounds->require_subcommand(1);
    static std::string path;
    static int max_n = 2;
    static int n = 2;
    static double eps = 0.2;
    static std::vector<std::string> matrices;
    static bool no_default_haemers = false, assume_perfect = false, assume_transitive = false;

    // static: the command callbacks run after this function returns
    static const auto options = [&] {
        auto o = cfg.bounds(max_n);
        for (const auto & m : matrices)
            o.haemers_extra.push_back(matrix_from_json(read_json_file(m)));
        o.use_default_haemers = !no_default_haemers;
        o.assume_perfect = assume_perfect;
        o.assume_transitive = assume_transitive;
        return o;
    };
    auto add = [&](const char * name, const char * help, std::function<Json()> run) {
        auto * s = bounds->add_subcommand(name, help);
        s->add_option("--graph", path, "Graph file")->required();
        s->add_option("--max-n", max_n, "Largest product level")->check(CLI::Range(1, 16));
        s->add_option("--haemers", matrices, "Extra fitting-matrix files");
        s->add_flag("--no-default-haemers", no_default_haemers, "Skip the A + I candidates");
        s->add_flag("--assume-perfect", assume_perfect, "Skip the odd-hole search");
        s->add_flag("--assume-transitive", assume_transitive, "Skip the automorphism search");
        s->callback([&cfg, &action, run] { action = [&cfg, run] { emit(cfg, run()); }; });
        return s;
    };
    add("hbar", "Complementary graph entropy", [&] { return to_json(hbar_bounds(load_pg(path), options())); });
    add("c", "Relative capacity C(G, P)", [&] { return to_json(c_rel_bounds(load_pg(path), options())); });
    add("c0", "Zero-error capacity", [&] { return to_json(c0_bounds(load_graph(path), options())); });
    add("h0", "Witsenhausen rate", [&] { return to_json(h0_bounds(load_graph(path), options())); });
    auto * ta = add("typical-alpha", "Uncertified typical-set alpha estimate",
                    [&] { return to_json(typical_alpha_estimate(load_pg(path), n, eps, options())); });
    ta->add_option("--n", n, "Block length")->check(CLI::PositiveNumber);
    ta->add_option("--eps", eps, "Typicality radius")->check(CLI::NonNegativeNumber);
}

void add_codec_commands(CLI::App & app, CliConfig & cfg, std::function<void()> & action)
{
    auto * codec = app.add_subcommand("codec", "Zero-error codes");
    codec->require_subcommand(1);
    static std::string channel_path, source, g_map, kind = "si", book_path, weights;
    static std::vector<std::string> channels, books;
    static std::size_t n = 2, slots = 0, trials = 10'000;
    static double eps = 0.2;
    static bool greedy = false;

    static const auto source_dist = [&](const ChannelSpec & ch) {
        return source.empty() ? Distribution::uniform(static_cast<std::size_t>(ch.x_count))
                              : parse_rational(source, "--source");
    };
    static const auto si_code = [&] {
        const auto ch = channel_from_json(read_json_file(channel_path));
        return build_si_code(ch, source_dist(ch), n, eps, cfg.codec());
    };
    static const auto partial_code = [&] {
        const auto ch = channel_from_json(read_json_file(channel_path));
        return build_partial_si_code(ch, source_dist(ch), parse_ints(g_map, "--g-map"), n, eps, cfg.codec());
    };
    static const auto sum_code = [&] {
        std::vector<ChannelSpec> specs;
        std::vector<Codebook> cbs;
        std::vector<double> c0;
        for (std::size_t i = 0; i < channels.size(); ++i) {
            specs.push_back(channel_from_json(read_json_file(channels[i])));
            if (i < books.size()) {
                auto b = codebook_from_json(read_json_file(books[i]));
                b.independence_checked = is_zero_error_codebook(characteristic_graph(specs.back()), b);
                if (!b.independence_checked)
                    throw Error(books[i] + ": codebook is not zero-error for its channel");
                cbs.push_back(std::move(b));
            } else {
                cbs.push_back(build_channel_code(specs.back(), n, greedy ? CodeTarget::greedy : CodeTarget::exact,
                                                 cfg.codec()));
            }
            c0.push_back(cbs.back().rate());
        }
        const auto pa = weights.empty() ? sum_channel_weights(c0).first : parse_rational(weights, "--weights");
        if (pa.size() != specs.size())
            throw Error("--weights: need one weight per --channel");
        return build_sum_channel_code(specs, cbs, composition_for(pa, slots ? slots : 2 * specs.size()));
    };
    static const auto si_json = [](const SiCode & c) {
        return Json{{"n", c.n},
                    {"eps", round9(c.eps)},
                    {"typical_vertices", c.typical.size()},
                    {"typical_mass", round9(c.typical_mass)},
                    {"colors", c.coloring.color_count},
                    {"coloring_exact", c.coloring_exact},
                    {"color_entropy", round9(c.color_entropy())},
                    {"escape_length", c.escape_length},
                    {"expected_rate", round9(c.expected_rate())},
                    {"rate_budget", round9(c.rate_budget())},
                    {"color_codewords", c.color_code.codewords()}};
    };
    static const auto sum_json = [](const SumChannelCode & c) {
        return Json{{"composition", c.composition},
                    {"slots", c.slots},
                    {"n", c.n},
                    {"messages", c.messages.str()},
                    {"rate", round9(c.rate())}};
    };

    auto * si = codec->add_subcommand("si", "Side-information code for a channel's confusability graph");
    si->add_option("--channel", channel_path, "Channel file")->required();
    si->add_option("--source", source, "Rational source distribution (default uniform)");
    si->add_option("--n", n, "Block length")->check(CLI::PositiveNumber);
    si->add_option("--eps", eps, "Typicality radius")->check(CLI::NonNegativeNumber);
    si->callback([&] { action = [&] { emit(cfg, si_json(si_code())); }; });

    auto * psi = codec->add_subcommand("partial-si", "Code with encoder-side partial information g(y)");
    psi->add_option("--channel", channel_path, "Channel file")->required();
    psi->add_option("--g-map", g_map, "g(y) for each output, \"0,1,1\"")->required();
    psi->add_option("--source", source, "Rational source distribution (default uniform)");
    psi->add_option("--n", n, "Block length")->check(CLI::PositiveNumber);
    psi->add_option("--eps", eps, "Typicality radius")->check(CLI::NonNegativeNumber);
    psi->callback([&] {
        action = [&] {
            const auto c = partial_code();
            Json parts = Json::array();
            for (std::size_t a = 0; a < c.a_count; ++a)
                parts.push_back({{"a", a}, {"p_a", round9(c.p_a[a])}, {"graph", to_json(c.part_graph[a])}});
            emit(cfg, Json{{"n", c.n}, {"a_count", c.a_count}, {"parts", parts}});
        };
    });

    auto * ch = codec->add_subcommand("channel", "Zero-error channel codebook");
    ch->add_option("--channel", channel_path, "Channel file")->required();
    ch->add_option("--n", n, "Block length")->check(CLI::PositiveNumber);
    ch->add_flag("--greedy", greedy, "Greedy independent set instead of an exact maximum");
    ch->callback([&] {
        action = [&] {
            const auto spec = channel_from_json(read_json_file(channel_path));
            emit(cfg, to_json(build_channel_code(spec, n, greedy ? CodeTarget::greedy : CodeTarget::exact,
                                                 cfg.codec())));
        };
    });

    auto * sum = codec->add_subcommand("sum", "Time sharing over channels with disjoint outputs");
    sum->add_option("--channel", channels, "Channel files")->required();
    sum->add_option("--book", books, "Codebook files, in channel order (built when missing)");
    sum->add_option("--n", n, "Block length of built codebooks")->check(CLI::PositiveNumber);
    sum->add_option("--slots", slots, "Codeword slots per block (default 2 per channel)");
    sum->add_option("--weights", weights, "Rational time-sharing weights (default optimal)");
    sum->add_flag("--greedy", greedy, "Greedy codebooks");
    sum->callback([&] { action = [&] { emit(cfg, sum_json(sum_code())); }; });

    auto * sim = codec->add_subcommand("simulate", "Simulated roundtrips: zero errors expected");
    sim->add_option("--kind", kind, "si, partial-si, channel or sum")
        ->check(CLI::IsMember({"si", "partial-si", "channel", "sum"}));
    sim->add_option("--channel", channels, "Channel file(s)")->required();
    sim->add_option("--book", books, "Codebook files for channel or sum");
    sim->add_option("--g-map", g_map, "g(y) for partial-si");
    sim->add_option("--source", source, "Rational source distribution (default uniform)");
    sim->add_option("--n", n, "Block length")->check(CLI::PositiveNumber);
    sim->add_option("--eps", eps, "Typicality radius")->check(CLI::NonNegativeNumber);
    sim->add_option("--slots", slots, "Codeword slots for sum");
    sim->add_option("--weights", weights, "Time-sharing weights for sum");
    sim->add_option("--trials", trials, "Number of transmissions")->check(CLI::PositiveNumber);
    sim->add_flag("--greedy", greedy, "Greedy codebooks");
    sim->callback([&] {
        action = [&] {
            channel_path = channels.front();
            const auto threads = cfg.thread_count();
            SimulationReport r;
            std::optional<double> code_rate;
            if (kind == "si") {
                r = simulate_si(si_code(), trials, cfg.seed, threads);
            } else if (kind == "partial-si") {
                if (g_map.empty())
                    throw Error("--g-map is required for --kind partial-si");
                r = simulate_partial_si(partial_code(), trials, cfg.seed, threads);
            } else if (kind == "channel") {
                const auto spec = channel_from_json(read_json_file(channel_path));
                Codebook book;
                if (!books.empty()) {
                    book = codebook_from_json(read_json_file(books.front()));
                    book.independence_checked = is_zero_error_codebook(characteristic_graph(spec), book);
                    if (!book.independence_checked)
                        throw Error(books.front() + ": codebook is not zero-error for its channel");
                } else {
                    book = build_channel_code(spec, n, greedy ? CodeTarget::greedy : CodeTarget::exact, cfg.codec());
                }
                r = channel_roundtrip(book, spec, trials, cfg.seed, threads);
                code_rate = book.rate();
            } else {
                const auto code = sum_code();
                r = simulate_sum_channel(code, trials, cfg.seed, threads);
                code_rate = code.rate();
            }
            auto j = to_json(r);
            j["kind"] = kind;
            // channel codes send a fixed message set: the rate is the code's
            if (code_rate)
                j["code_rate"] = round9(*code_rate);
            j["seed"] = cfg.seed;
            emit(cfg, j);
            if (r.errors != 0)
                throw Error("simulation produced " + std::to_string(r.errors) + " decoding errors");
        };
    });
}

void add_eta_command(CLI::App & app, CliConfig & cfg, std::function<void()> & action)
{
    static std::vector<std::string> paths;
    static std::string pa;
    static int max_n = 1;
    auto * eta = app.add_subcommand("eta", "Complementary entropy of a disjoint union mixed by rational P_A");
    eta->add_option("--graph", paths, "Part graph files")->required();
    eta->add_option("--pa", pa, "Rational part weights \"1/3,2/3\" (default uniform)");
    eta->add_option("--max-n", max_n, "Largest product level")->check(CLI::Range(1, 16));
    eta->callback([&] {
        action = [&] {
            std::vector<ProbabilisticGraph> parts;
            for (const auto & p : paths)
                parts.push_back(load_pg(p));
            const auto w = pa.empty() ? Distribution::rational(std::vector<std::int64_t>(parts.size(), 1),
                                                               static_cast<std::int64_t>(parts.size()))
                                      : parse_rational(pa, "--pa");
            emit(cfg, to_json(eta_bounds(parts, w, cfg.bounds(max_n))));
        };
    });
}

void add_verify_command(CLI::App & app, CliConfig & cfg, std::function<void()> & action, int & code)
{
    static std::vector<std::string> tags, ids;
    static bool list = false;
    auto * verify = app.add_subcommand("verify", "Run the scenario suite");
    verify->add_option("--tag", tags, "Only scenarios with one of these tags");
    verify->add_option("--id", ids, "Only these scenario ids");
    verify->add_flag("--list", list, "List scenarios without running them");
    verify->callback([&] {
        action = [&] {
            if (list) {
                Json all = Json::array();
                for (const auto & s : scenario_registry())
                    all.push_back({{"id", s.id}, {"description", s.description}, {"tags", s.tags}});
                emit(cfg, all);
                return;
            }
            VerifierConfig vc;
            vc.budget = cfg.budget();
            vc.product = cfg.product();
            vc.seed = cfg.seed;
            vc.threads = cfg.thread_count();
            vc.tags = tags;
            vc.ids = ids;
            const auto r = full_suite(vc);
            if (r.scenarios.empty())
                throw Error("no scenario matches the given --tag/--id filters");
            emit(cfg, cfg.output_format == "csv" ? to_csv(r) : dump(to_json(r)));
            code = r.failed > 0 ? exit_error : r.undecided > 0 ? exit_undecided : exit_ok;
        };
    });
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Zero-error information theory on probabilistic graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    CliConfig cfg;
    double tol = 0.0;
    app.add_option("--vertex-budget", cfg.vertex_budget, "Largest product graph built")->check(CLI::PositiveNumber);
    app.add_option("--time-budget-ms", cfg.time_budget_ms, "Wall-clock limit per exact search (0: none)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--node-budget", cfg.node_budget, "Search-node limit per exact search")->check(CLI::PositiveNumber);
    auto * tol_opt = app.add_option("--tol-bits", tol, "Optimizer tolerance in bits")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Seed for simulations and the scenario suite");
    app.add_option("--threads", cfg.threads, "Workers (default ZEROERR_THREADS, else 1)");
    app.add_option("--format", cfg.output_format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", cfg.out, "Write the result here instead of stdout");

    std::function<void()> action;
    int code = -1; // set by commands that decide their own status

    add_graph_commands(app, cfg, action);
    add_solve_commands(app, cfg, action);
    add_entropy_commands(app, cfg, action);
    add_bounds_commands(app, cfg, action);
    add_codec_commands(app, cfg, action);
    add_eta_command(app, cfg, action);
    add_verify_command(app, cfg, action, code);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        const int r = app.exit(e);
        return r == 0 ? exit_ok : exit_error;
    }
    if (tol_opt->count() > 0)
        cfg.tol_bits = tol;

    try {
        if (action)
            action();
    } catch (const BudgetError & e) {
        std::cerr << "zeroerr: budget exhausted: " << e.what() << "\n";
        return exit_undecided;
    } catch (const std::exception & e) {
        std::cerr << "zeroerr: " << e.what() << "\n";
        return exit_error;
    }
    if (code >= 0)
        return code;
    if (budget_exhaustion_count() > 0) {
        std::cerr << "zeroerr: a solver budget ran out; the result is a one-sided bound\n";
        return exit_undecided;
    }
    return exit_ok;
}
