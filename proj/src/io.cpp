#include "partite/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace partite {
namespace {

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

const Json& require_key(const Json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) fail(std::string("missing key \"") + key + "\"");
    return doc.at(key);
}

void check_version(const Json& doc) {
    if (!doc.is_object() || !doc.contains("version")) return; // pre-version files are v1
    const Json& v = doc.at("version");
    if (!v.is_number_integer() || v.get<std::int64_t>() != 1)
        fail("unsupported format version " + v.dump() + " (this build reads version 1)");
}

} // namespace

MultipartiteGraph graph_from_json(const Json& doc) {
    check_version(doc);
    const Json& parts = require_key(doc, "parts");
    if (!parts.is_array() || parts.size() < 2) fail("\"parts\" must list at least two parts");

    std::map<std::int64_t, int> dense; // original id -> dense id
    std::vector<int> sizes;
    std::vector<int> part_of_dense;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const Json& part = parts[i];
        const std::string where = "parts[" + std::to_string(i) + "]";
        if (!part.is_array()) fail(where + " is not an array");
        if (part.empty()) fail(where + " is empty; every part must be nonempty");
        for (const Json& id : part) {
            if (!id.is_number_integer() || id.get<std::int64_t>() < 0)
                fail(where + " contains a non-vertex entry " + id.dump());
            const std::int64_t original = id.get<std::int64_t>();
            if (dense.contains(original))
                fail(where + ": duplicate vertex id " + std::to_string(original));
            dense[original] = static_cast<int>(part_of_dense.size());
            part_of_dense.push_back(static_cast<int>(i));
        }
        sizes.push_back(static_cast<int>(part.size()));
    }

    GraphBuilder builder(sizes);
    const Json& edges = require_key(doc, "edges");
    if (!edges.is_array()) fail("\"edges\" must be an array");
    std::set<std::pair<int, int>> seen;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const Json& edge = edges[e];
        const std::string where = "edges[" + std::to_string(e) + "]";
        if (!edge.is_array() || edge.size() != 2 || !edge[0].is_number_integer() ||
            !edge[1].is_number_integer())
            fail(where + " is not a pair of vertex ids");
        const std::int64_t a = edge[0].get<std::int64_t>(), b = edge[1].get<std::int64_t>();
        const auto ia = dense.find(a), ib = dense.find(b);
        if (ia == dense.end()) fail(where + ": unknown vertex id " + std::to_string(a));
        if (ib == dense.end()) fail(where + ": unknown vertex id " + std::to_string(b));
        if (a == b) fail(where + ": loop at vertex " + std::to_string(a));
        int u = ia->second, v = ib->second;
        if (part_of_dense[u] == part_of_dense[v])
            fail(where + ": edge [" + std::to_string(a) + "," + std::to_string(b) +
                 "] joins two vertices of part " + std::to_string(part_of_dense[u]));
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second)
            fail(where + ": duplicate edge [" + std::to_string(a) + "," + std::to_string(b) +
                 "]");
        builder.add_edge(u, v);
    }
    return builder.build();
}

MultipartiteGraph load_graph(const std::string& path) {
    const std::string text = read_text_file(path);
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& err) {
        fail(path + ": " + err.what());
    }
    try {
        return graph_from_json(doc);
    } catch (const std::invalid_argument& err) {
        fail(path + ": " + err.what());
    }
}

Json graph_to_json(const MultipartiteGraph& g) {
    Json parts = Json::array();
    for (int p = 0; p < g.part_count(); ++p) {
        Json ids = Json::array();
        for (int v = g.layout().part_begin(p); v < g.layout().part_end(p); ++v) ids.push_back(v);
        parts.push_back(std::move(ids));
    }
    Json edges = Json::array();
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = u + 1; v < g.vertex_count(); ++v)
            if (g.adjacent(u, v)) edges.push_back(Json::array({u, v}));
    return Json{{"version", 1}, {"parts", std::move(parts)}, {"edges", std::move(edges)}};
}

std::string graph_to_string(const MultipartiteGraph& g) {
    return graph_to_json(g).dump(2) + "\n";
}

void save_graph(const MultipartiteGraph& g, const std::string& path) {
    write_text_file(path, graph_to_string(g));
}

ExtremalParams params_from_json(const Json& doc) {
    check_version(doc);
    ExtremalParams params;
    const Json& k = require_key(doc, "k");
    const Json& l = require_key(doc, "l");
    if (!k.is_number_integer() || !l.is_number_integer()) fail("\"k\" and \"l\" must be integers");
    params.k = k.get<int>();
    params.part_count = l.get<int>();
    const Json& table = require_key(doc, "class_sizes");
    if (!table.is_array()) fail("\"class_sizes\" must be an array of rows");
    for (std::size_t i = 0; i < table.size(); ++i) {
        const Json& row = table[i];
        if (!row.is_array()) fail("class_sizes[" + std::to_string(i) + "] is not an array");
        std::vector<std::int64_t> sizes;
        for (const Json& entry : row) {
            if (!entry.is_number_integer())
                fail("class_sizes[" + std::to_string(i) + "] contains a non-integer");
            sizes.push_back(entry.get<std::int64_t>());
        }
        params.class_sizes.push_back(std::move(sizes));
    }
    return params;
}

ExtremalParams load_params(const std::string& path) {
    Json doc;
    try {
        doc = Json::parse(read_text_file(path));
    } catch (const Json::parse_error& err) {
        fail(path + ": " + err.what());
    }
    try {
        return params_from_json(doc);
    } catch (const std::invalid_argument& err) {
        fail(path + ": " + err.what());
    }
}

Json params_to_json(const ExtremalParams& params) {
    Json rows = Json::array();
    for (const auto& row : params.class_sizes) rows.push_back(row);
    return Json{{"version", 1}, {"k", params.k}, {"l", params.part_count},
                {"class_sizes", std::move(rows)}};
}

DeletionList load_edge_list(const std::string& path) {
    Json doc;
    try {
        doc = Json::parse(read_text_file(path));
    } catch (const Json::parse_error& err) {
        fail(path + ": " + err.what());
    }
    const Json& edges = require_key(doc, "edges");
    if (!edges.is_array()) fail(path + ": \"edges\" must be an array");
    DeletionList out;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const Json& edge = edges[e];
        if (!edge.is_array() || edge.size() != 2 || !edge[0].is_number_integer() ||
            !edge[1].is_number_integer())
            fail(path + ": edges[" + std::to_string(e) + "] is not a pair of vertex ids");
        out.push_back({edge[0].get<int>(), edge[1].get<int>()});
    }
    return out;
}

Json coloring_to_json(const ClassColoring& coloring) {
    return Json{{"classes", coloring.classes}};
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t hash = 0xCBF29CE484222325ull;
    for (const char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001B3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string file_digest(const std::string& path) { return fnv1a64_hex(read_text_file(path)); }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail("cannot write " + path);
    out << text;
    if (!out) fail("write failed for " + path);
}

void write_json_file(const std::string& path, const Json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

Json suite_report_json(const SuiteReport& report) {
    Json violations = Json::array();
    for (const auto& v : report.violations)
        violations.push_back(Json{{"trial", v.trial},
                                  {"detail", v.detail},
                                  {"graph", graph_to_json(v.graph)}});
    return Json{{"suite", report.suite},
                {"trials", report.trials},
                {"violations", static_cast<std::int64_t>(report.violations.size())},
                {"violation_details", std::move(violations)},
                {"hypothesis_hits", report.hypothesis_hits},
                {"seed", report.seed},
                {"runtime_ms", report.wall_ms}};
}

Json search_report_json(const SearchResult& result, std::int64_t wall_ms) {
    const SearchConfig& cfg = result.config;
    Json trace{{"iterations", result.trace.iterations},
               {"accepted", result.trace.accepted},
               {"repairs", result.trace.repairs},
               {"improvements", result.trace.improvements},
               {"best_iteration", result.trace.best_iteration},
               {"best_restart", result.trace.best_restart},
               {"states_examined", result.trace.states_examined}};
    Json initial = mode_cli_name(cfg.mode) == "exhaustive"
                       ? Json(nullptr)
                       : Json(cfg.initial == InitialKind::Empty          ? "empty"
                              : cfg.initial == InitialKind::ExtremalSeed ? "extremal-seed"
                                                                         : "file");
    return Json{{"min_density", result.min_density.str()},
                {"k", cfg.k},
                {"l", cfg.part_count},
                {"n", cfg.part_size},
                {"seed", cfg.seed},
                {"iterations", cfg.iteration_budget},
                {"mode", mode_cli_name(cfg.mode)},
                {"initial", std::move(initial)},
                {"restarts", cfg.restarts},
                {"kfree_verified", result.kfree_verified},
                {"trace", std::move(trace)},
                {"wall_ms", wall_ms}};
}

Json experiment_report_json(const ExperimentReport& report, std::int64_t wall_ms) {
    Json anchors = Json::object();
    for (const auto& [label, value] : report.anchors) anchors[label] = value;
    Json runs = Json::array();
    for (const auto& run : report.runs) {
        Json entry = search_report_json(run.result, 0);
        entry.erase("wall_ms");
        entry["anchor"] = run.anchor.str();
        entry["above_anchor"] = run.above_anchor;
        runs.push_back(std::move(entry));
    }
    return Json{{"preset", report.preset},
                {"k", report.k},
                {"anchors", std::move(anchors)},
                {"runs", std::move(runs)},
                {"wall_ms", wall_ms}};
}

Json hypothesis_report_json(const HypothesisReport& report) {
    Json items = Json::array();
    for (const auto& item : report.items) {
        Json entry{{"label", item.label}, {"ok", item.ok}, {"strict", item.strict}};
        entry["margin"] = item.margin ? Json(item.margin->str()) : Json(nullptr);
        items.push_back(std::move(entry));
    }
    return Json{{"hypothesis", report.hypothesis}, {"holds", report.holds},
                {"items", std::move(items)}};
}

Json run_report_json(const RunReport& report) {
    const auto digests = [](const std::vector<std::pair<std::string, std::string>>& files) {
        Json out = Json::array();
        for (const auto& [path, digest] : files)
            out.push_back(Json{{"path", path}, {"fnv1a64", digest}});
        return out;
    };
    Json doc{{"command", report.command},
             {"argv", report.argv_echo},
             {"inputs", digests(report.inputs)},
             {"outputs", digests(report.outputs)},
             {"summary", report.summary},
             {"wall_ms", report.wall_ms},
             {"format_version", report.format_version}};
    doc["seed"] = report.seed ? Json(*report.seed) : Json(nullptr);
    return doc;
}

Json strip_timing(Json doc) {
    if (doc.is_object()) {
        for (auto& [key, value] : doc.items()) {
            if ((key == "wall_ms" || key == "runtime_ms") && value.is_number())
                value = 0;
            else
                value = strip_timing(value);
        }
    } else if (doc.is_array()) {
        for (auto& value : doc) value = strip_timing(value);
    }
    return doc;
}

} // namespace partite
