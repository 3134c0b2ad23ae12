#pragma once

#include <string>

#include <json.hpp>

#include "zeroerr/bounds.hpp"
#include "zeroerr/codec.hpp"
#include "zeroerr/graph.hpp"
#include "zeroerr/numopt.hpp"

namespace zeroerr {

/// Insertion-ordered so emitted files keep a fixed field order.
using Json = nlohmann::ordered_json;

/// x rounded to 9 significant digits; the JSON writer then prints at most 9.
double round9(double x);
/// "%.9g".
std::string format9(double x);

Json to_json(const Graph & g);
/// {"n", "edges", "labels"?}; Error messages name the offending field.
Graph graph_from_json(const Json & j);

/// Graph fields plus "dist": floats, or {"num": [...], "den": int}.
Json to_json(const ProbabilisticGraph & pg);
ProbabilisticGraph pg_from_json(const Json & j);
Distribution dist_from_json(const Json & j, const std::string & field = "dist");

Json to_json(const ChannelSpec & c);
ChannelSpec channel_from_json(const Json & j);

Json to_json(const FiniteFieldMatrix & m);
FiniteFieldMatrix matrix_from_json(const Json & j);

Json to_json(const Certificate & c);
/// {"quantity", "lo", "hi", "lo_cert", "hi_cert"}.
Json to_json(const BoundInterval & b);
Json to_json(const Estimate & e);

/// Codewords as a list of integer sequences.
Json to_json(const Codebook & book);
Codebook codebook_from_json(const Json & j);

Json to_json(const SimulationReport & r);

/// Parses a file; Error names the path on I/O or syntax failure.
Json read_json_file(const std::string & path);
/// Two-space indented with a trailing newline; floats printed with "%.9g".
std::string dump(const Json & j);
void write_text_file(const std::string & path, const std::string & text);

} // namespace zeroerr
