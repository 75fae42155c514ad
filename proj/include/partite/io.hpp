#pragma once

#include "partite/extremal.hpp"
#include "partite/graph.hpp"
#include "partite/oracles.hpp"
#include "partite/search.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace partite {

using Json = nlohmann::json;

/// Shared graph interchange format, version 1:
///   {"version": 1, "parts": [[ids...], ...], "edges": [[u, v], ...]}
/// Ids in a file may be any distinct nonnegative integers; internally they
/// are remapped to dense ids 0..n-1 in part order, which is also the
/// canonical form save_graph emits (parts in index order, edges sorted with
/// u < v). Equal graphs therefore serialize to identical bytes.
MultipartiteGraph graph_from_json(const Json& doc);
MultipartiteGraph load_graph(const std::string& path);
Json graph_to_json(const MultipartiteGraph& g);
std::string graph_to_string(const MultipartiteGraph& g);
void save_graph(const MultipartiteGraph& g, const std::string& path);

/// Params format: {"version": 1, "k": ..., "l": ..., "class_sizes": [[...], ...]}.
ExtremalParams params_from_json(const Json& doc);
ExtremalParams load_params(const std::string& path);
Json params_to_json(const ExtremalParams& params);

/// Deletion lists ride in the graph format's "edges" key (a bare
/// {"edges": [...]} document is accepted too).
DeletionList load_edge_list(const std::string& path);

Json coloring_to_json(const ClassColoring& coloring);

/// FNV-1a 64-bit digest, hex encoded; used to fingerprint run inputs/outputs.
std::string fnv1a64_hex(std::string_view bytes);
std::string file_digest(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
void write_json_file(const std::string& path, const Json& doc);

Json suite_report_json(const SuiteReport& report);
Json search_report_json(const SearchResult& result, std::int64_t wall_ms);
Json experiment_report_json(const ExperimentReport& report, std::int64_t wall_ms);
Json hypothesis_report_json(const HypothesisReport& report);

/// Every subcommand emits one of these next to its outputs; inputs + seed +
/// format version pin down an exact replay.
struct RunReport {
    std::string command;
    std::vector<std::string> argv_echo;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
    std::vector<std::pair<std::string, std::string>> outputs; // path, digest
    Json summary;
    std::optional<std::uint64_t> seed;
    std::int64_t wall_ms = 0;
    int format_version = 1;
};
Json run_report_json(const RunReport& report);

/// Copy of `doc` with every "wall_ms"/"runtime_ms" value zeroed, recursively.
/// Reports are byte-identical across reruns of the same seed after this
/// normalization; wall-clock time is the one intentionally volatile field.
Json strip_timing(Json doc);

} // namespace partite
