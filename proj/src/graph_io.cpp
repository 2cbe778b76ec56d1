#include "netsparse/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace netsparse {

namespace {

struct RawEdge {
    std::uint64_t u, v;
    double w;
};

bool is_blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#' || c == '%') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;  // blank
}

// Splits a line into at most 4 tokens; more than 3 is a format error upstream.
int tokenize(const std::string& line, std::string_view out[4]) {
    int count = 0;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (count < 4) out[count] = std::string_view(line).substr(start, i - start);
        ++count;
    }
    return count;
}

std::uint64_t parse_id(std::string_view tok, std::size_t line_no) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw ParseError(line_no, "expected a non-negative integer node id, got '" +
                                      std::string(tok) + "'");
    return v;
}

double parse_weight(std::string_view tok, std::size_t line_no) {
    // std::from_chars for doubles is incomplete on some toolchains; strtod
    // on a bounded copy is portable.
    char buf[64];
    if (tok.size() >= sizeof(buf)) throw ParseError(line_no, "weight token too long");
    std::copy(tok.begin(), tok.end(), buf);
    buf[tok.size()] = '\0';
    char* end = nullptr;
    double w = std::strtod(buf, &end);
    if (end != buf + tok.size())
        throw ParseError(line_no, "expected a numeric weight, got '" + std::string(tok) + "'");
    if (w < 0.0) throw ParseError(line_no, "negative edge weight");
    return w;
}

// Compact raw ids to 0..n-1 in ascending id order, dropping nodes whose
// every incident entry was a self-loop; keeps load(write(g)) == g.
Graph build_from_raw(std::vector<RawEdge> raw) {
    std::vector<std::uint64_t> ids;
    ids.reserve(raw.size() * 2);
    for (const auto& e : raw) {
        if (e.u == e.v) continue;
        ids.push_back(e.u);
        ids.push_back(e.v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::unordered_map<std::uint64_t, NodeId> remap;
    remap.reserve(ids.size());
    for (NodeId i = 0; i < ids.size(); ++i) remap.emplace(ids[i], i);

    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const auto& e : raw) {
        if (e.u == e.v) continue;
        edges.push_back({remap[e.u], remap[e.v], e.w});
    }
    return Graph::from_edges(static_cast<NodeId>(ids.size()), std::move(edges));
}

Graph load_edgelist(std::istream& in) {
    std::vector<RawEdge> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) continue;
        std::string_view tok[4];
        int count = tokenize(line, tok);
        if (count != 2 && count != 3)
            throw ParseError(line_no, "expected 'u v [w]', got " + std::to_string(count) +
                                          " fields");
        RawEdge e;
        e.u = parse_id(tok[0], line_no);
        e.v = parse_id(tok[1], line_no);
        e.w = count == 3 ? parse_weight(tok[2], line_no) : 1.0;
        raw.push_back(e);
    }
    return build_from_raw(std::move(raw));
}

Graph load_matrix_market(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError(1, "empty Matrix Market stream");
    ++line_no;
    std::istringstream header(line);
    std::string banner, object, fmt, field, symmetry;
    header >> banner >> object >> fmt >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix")
        throw ParseError(line_no, "not a Matrix Market matrix header");
    if (fmt != "coordinate")
        throw ParseError(line_no, "only coordinate format is supported");
    bool pattern = field == "pattern";
    if (!pattern && field != "real" && field != "integer")
        throw ParseError(line_no, "unsupported field type '" + field + "'");
    if (symmetry != "symmetric" && symmetry != "general")
        throw ParseError(line_no, "unsupported symmetry '" + symmetry + "'");

    std::uint64_t rows = 0, cols = 0, nnz = 0;
    bool have_size = false;
    std::vector<RawEdge> raw;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) continue;
        std::string_view tok[4];
        int count = tokenize(line, tok);
        if (!have_size) {
            if (count != 3) throw ParseError(line_no, "expected 'rows cols nnz'");
            rows = parse_id(tok[0], line_no);
            cols = parse_id(tok[1], line_no);
            nnz = parse_id(tok[2], line_no);
            if (rows != cols) throw ParseError(line_no, "adjacency matrix must be square");
            have_size = true;
            raw.reserve(nnz);
            continue;
        }
        int expected = pattern ? 2 : 3;
        if (count != expected)
            throw ParseError(line_no, "expected " + std::to_string(expected) + " fields");
        RawEdge e;
        e.u = parse_id(tok[0], line_no);
        e.v = parse_id(tok[1], line_no);
        if (e.u == 0 || e.v == 0 || e.u > rows || e.v > rows)
            throw ParseError(line_no, "entry index out of range");
        e.u -= 1;  // 1-based in the file
        e.v -= 1;
        e.w = pattern ? 1.0 : parse_weight(tok[2], line_no);
        raw.push_back(e);
    }
    if (!have_size) throw ParseError(line_no + 1, "missing size line");
    return build_from_raw(std::move(raw));
}

}  // namespace

Graph load_graph(std::istream& in, GraphFormat format) {
    return format == GraphFormat::MatrixMarket ? load_matrix_market(in) : load_edgelist(in);
}

Graph load_graph_file(const std::string& path) {
    GraphFormat fmt = GraphFormat::EdgeList;
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".mtx")
        fmt = GraphFormat::MatrixMarket;
    return load_graph_file(path, fmt);
}

Graph load_graph_file(const std::string& path, GraphFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return load_graph(in, format);
}

void write_graph(const Graph& g, std::ostream& out) {
    char buf[96];
    for (const Edge& e : g.edges()) {
        int len = std::snprintf(buf, sizeof(buf), "%u %u %.17g\n", e.u, e.v, e.w);
        out.write(buf, len);
    }
    if (!out) throw std::runtime_error("graph write failed");
}

void write_graph_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_graph(g, out);
    out.flush();
    if (!out) throw std::runtime_error("graph write failed: " + path);
}

}  // namespace netsparse
