#include "zeroerr/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace zeroerr {

double round9(double x)
{
    if (!std::isfinite(x))
        return x;
    return std::strtod(format9(x).c_str(), nullptr);
}

std::string format9(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

namespace {

[[noreturn]] void bad(const std::string & what, const std::string & field, const std::string & need)
{
    throw Error(what + ": field \"" + field + "\" " + need);
}

const Json & need(const Json & j, const std::string & what, const std::string & field)
{
    if (!j.is_object())
        throw Error(what + ": expected a JSON object");
    const auto it = j.find(field);
    if (it == j.end())
        bad(what, field, "is missing");
    return *it;
}

std::int64_t as_int(const Json & v, const std::string & what, const std::string & field)
{
    if (!v.is_number_integer())
        bad(what, field, "must be an integer");
    return v.get<std::int64_t>();
}

double as_number(const Json & v, const std::string & what, const std::string & field)
{
    if (!v.is_number())
        bad(what, field, "must be a number");
    return v.get<double>();
}

std::vector<int> int_list(const Json & v, const std::string & what, const std::string & field)
{
    if (!v.is_array())
        bad(what, field, "must be an array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(static_cast<int>(as_int(v[i], what, field + "[" + std::to_string(i) + "]")));
    return out;
}

std::vector<std::pair<int, int>> pair_list(const Json & v, const std::string & what, const std::string & field)
{
    if (!v.is_array())
        bad(what, field, "must be an array of pairs");
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto name = field + "[" + std::to_string(i) + "]";
        const auto p = int_list(v[i], what, name);
        if (p.size() != 2)
            bad(what, name, "must be a pair of integers");
        out.emplace_back(p[0], p[1]);
    }
    return out;
}

Json vector_json(const std::vector<double> & v)
{
    Json a = Json::array();
    for (double x : v)
        a.push_back(round9(x));
    return a;
}

} // namespace

Json to_json(const Graph & g)
{
    Json j;
    j["n"] = g.size();
    Json edges = Json::array();
    for (const auto & [u, v] : g.edges())
        edges.push_back({u, v});
    j["edges"] = std::move(edges);
    if (!g.labels().empty())
        j["labels"] = g.labels();
    return j;
}

Graph graph_from_json(const Json & j)
{
    const std::string what = "graph";
    const auto n = as_int(need(j, what, "n"), what, "n");
    if (n < 0)
        bad(what, "n", "must be non-negative");
    const auto edges = pair_list(need(j, what, "edges"), what, "edges");
    std::vector<std::string> labels;
    if (const auto it = j.find("labels"); it != j.end()) {
        if (!it->is_array())
            bad(what, "labels", "must be an array of strings");
        for (std::size_t i = 0; i < it->size(); ++i) {
            if (!(*it)[i].is_string())
                bad(what, "labels[" + std::to_string(i) + "]", "must be a string");
            labels.push_back((*it)[i].get<std::string>());
        }
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto [u, v] = edges[i];
        if (u < 0 || v < 0 || u >= n || v >= n)
            bad(what, "edges[" + std::to_string(i) + "]", "has an endpoint outside 0.." + std::to_string(n - 1));
        if (u == v)
            bad(what, "edges[" + std::to_string(i) + "]", "is a self-loop");
    }
    if (!labels.empty() && static_cast<std::int64_t>(labels.size()) != n)
        bad(what, "labels", "must have one entry per vertex");
    return Graph::from_edges(static_cast<std::size_t>(n), edges, std::move(labels));
}

Json to_json(const ProbabilisticGraph & pg)
{
    auto j = to_json(pg.graph);
    if (pg.dist.is_rational()) {
        Json d;
        d["num"] = pg.dist.numerators();
        d["den"] = pg.dist.denominator();
        j["dist"] = std::move(d);
    } else {
        j["dist"] = vector_json(pg.dist.weights());
    }
    return j;
}

Distribution dist_from_json(const Json & v, const std::string & field)
{
    const std::string what = "distribution";
    if (v.is_array()) {
        std::vector<double> w;
        for (std::size_t i = 0; i < v.size(); ++i)
            w.push_back(as_number(v[i], what, field + "[" + std::to_string(i) + "]"));
        try {
            return Distribution(std::move(w));
        } catch (const Error & e) {
            bad(what, field, e.what());
        }
    }
    if (v.is_object()) {
        const auto num_field = field + ".num", den_field = field + ".den";
        const auto & num = need(v, what, "num");
        if (!num.is_array())
            bad(what, num_field, "must be an array of integers");
        std::vector<std::int64_t> nums;
        for (std::size_t i = 0; i < num.size(); ++i)
            nums.push_back(as_int(num[i], what, num_field + "[" + std::to_string(i) + "]"));
        const auto den = as_int(need(v, what, "den"), what, den_field);
        try {
            return Distribution::rational(std::move(nums), den);
        } catch (const Error & e) {
            bad(what, field, e.what());
        }
    }
    bad(what, field, "must be an array of floats or {\"num\": [...], \"den\": int}");
}

ProbabilisticGraph pg_from_json(const Json & j)
{
    auto g = graph_from_json(j);
    if (!j.contains("dist"))
        return ProbabilisticGraph::uniform(std::move(g));
    auto d = dist_from_json(j["dist"]);
    if (d.size() != g.size())
        bad("graph", "dist", "must have one entry per vertex");
    return ProbabilisticGraph(std::move(g), std::move(d));
}

Json to_json(const ChannelSpec & c)
{
    Json j;
    j["x_count"] = c.x_count;
    j["y_count"] = c.y_count;
    Json s = Json::array();
    for (const auto & [x, y] : c.support)
        s.push_back({x, y});
    j["support"] = std::move(s);
    if (!c.weights.empty()) {
        Json w = Json::array();
        for (const auto & e : c.weights)
            w.push_back({e.x, e.y, round9(e.p)});
        j["weights"] = std::move(w);
    }
    return j;
}

ChannelSpec channel_from_json(const Json & j)
{
    const std::string what = "channel";
    ChannelSpec c;
    c.x_count = static_cast<int>(as_int(need(j, what, "x_count"), what, "x_count"));
    c.y_count = static_cast<int>(as_int(need(j, what, "y_count"), what, "y_count"));
    c.support = pair_list(need(j, what, "support"), what, "support");
    if (const auto it = j.find("weights"); it != j.end()) {
        if (!it->is_array())
            bad(what, "weights", "must be an array of [x, y, p]");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto name = "weights[" + std::to_string(i) + "]";
            const auto & e = (*it)[i];
            if (!e.is_array() || e.size() != 3)
                bad(what, name, "must be [x, y, p]");
            c.weights.push_back({static_cast<int>(as_int(e[0], what, name)),
                                 static_cast<int>(as_int(e[1], what, name)), as_number(e[2], what, name)});
        }
    }
    try {
        c.validate();
    } catch (const Error & e) {
        throw Error(what + ": " + e.what());
    }
    return c;
}

Json to_json(const FiniteFieldMatrix & m)
{
    Json j;
    j["p"] = m.p;
    j["rows"] = m.rows;
    return j;
}

FiniteFieldMatrix matrix_from_json(const Json & j)
{
    const std::string what = "matrix";
    FiniteFieldMatrix m;
    m.p = static_cast<int>(as_int(need(j, what, "p"), what, "p"));
    if (!is_prime(m.p))
        bad(what, "p", "must be a prime");
    const auto & rows = need(j, what, "rows");
    if (!rows.is_array())
        bad(what, "rows", "must be an array of integer rows");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        m.rows.push_back(int_list(rows[i], what, "rows[" + std::to_string(i) + "]"));
        if (m.rows.back().size() != rows.size())
            bad(what, "rows[" + std::to_string(i) + "]", "must have one entry per row (square matrix)");
    }
    return m;
}

Json to_json(const Certificate & c)
{
    Json j;
    j["method"] = c.method;
    j["n"] = c.n;
    j["value"] = round9(c.value);
    j["flags"] = c.flags;
    if (!c.sub.empty()) {
        Json s = Json::array();
        for (const auto & x : c.sub)
            s.push_back(to_json(x));
        j["sub"] = std::move(s);
    }
    return j;
}

Json to_json(const BoundInterval & b)
{
    Json j;
    j["quantity"] = b.quantity;
    j["lo"] = round9(b.lo);
    j["hi"] = round9(b.hi);
    j["lo_cert"] = to_json(b.lo_cert);
    j["hi_cert"] = to_json(b.hi_cert);
    return j;
}

Json to_json(const Estimate & e)
{
    Json j;
    j["quantity"] = e.quantity;
    j["value"] = round9(e.value);
    j["certified"] = e.certified;
    j["n"] = e.n;
    j["eps"] = round9(e.eps);
    j["vertices"] = e.vertices;
    j["alpha"] = e.alpha;
    j["exact"] = e.exact;
    return j;
}

Json to_json(const Codebook & book)
{
    Json j;
    j["n"] = book.n;
    j["independence_checked"] = book.independence_checked;
    j["exact"] = book.exact;
    j["rate"] = round9(book.rate());
    j["codewords"] = book.codewords;
    return j;
}

Codebook codebook_from_json(const Json & j)
{
    const std::string what = "codebook";
    Codebook book;
    const auto & words = j.is_array() ? j : need(j, what, "codewords");
    if (!words.is_array())
        bad(what, "codewords", "must be an array of integer sequences");
    for (std::size_t i = 0; i < words.size(); ++i)
        book.codewords.push_back(int_list(words[i], what, "codewords[" + std::to_string(i) + "]"));
    book.n = book.codewords.empty() ? 0 : book.codewords.front().size();
    for (std::size_t i = 0; i < book.codewords.size(); ++i)
        if (book.codewords[i].size() != book.n)
            bad(what, "codewords[" + std::to_string(i) + "]", "differs in length from the first codeword");
    return book;
}

Json to_json(const SimulationReport & r)
{
    Json j;
    j["trials"] = r.trials;
    j["errors"] = r.errors;
    j["ambiguities"] = r.ambiguities;
    j["escapes"] = r.escapes;
    j["bits"] = r.bits;
    j["block"] = r.block;
    j["rate"] = round9(r.rate());
    return j;
}

Json read_json_file(const std::string & path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::parse_error & e) {
        throw Error(path + ": invalid JSON (" + e.what() + ")");
    }
}

namespace {

// Same layout as Json::dump(2), but floats go through format9 so every
// number carries at most 9 significant digits.
void write(const Json & j, int depth, std::string & out)
{
    const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
    if (j.is_number_float()) {
        const double x = j.get<double>();
        if (!std::isfinite(x)) {
            out += "null";
            return;
        }
        auto text = format9(x);
        if (text.find_first_of(".en") == std::string::npos)
            text += ".0";
        out += text;
    } else if (j.is_object() && !j.empty()) {
        out += "{\n";
        bool first = true;
        for (const auto & [k, v] : j.items()) {
            out += first ? "" : ",\n";
            first = false;
            out += pad + Json(k).dump() + ": ";
            write(v, depth + 1, out);
        }
        out += "\n" + pad.substr(2) + "}";
    } else if (j.is_array() && !j.empty()) {
        out += "[\n";
        bool first = true;
        for (const auto & v : j) {
            out += first ? "" : ",\n";
            first = false;
            out += pad;
            write(v, depth + 1, out);
        }
        out += "\n" + pad.substr(2) + "]";
    } else {
        out += j.dump();
    }
}

} // namespace

std::string dump(const Json & j)
{
    std::string out;
    write(j, 0, out);
    return out + "\n";
}

void write_text_file(const std::string & path, const std::string & text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path);
    out << text;
    if (!out)
        throw Error("failed writing " + path);
}

} // namespace zeroerr
