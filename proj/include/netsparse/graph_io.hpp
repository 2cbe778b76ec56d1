// Streaming readers/writers for edge-list and Matrix Market coordinate files.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "netsparse/graph.hpp"

namespace netsparse {

enum class GraphFormat { EdgeList, MatrixMarket };

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_no(line) {}
    std::size_t line_no;
};

// Edge list: whitespace-separated "u v [w]" lines, '#'/'%' comments skipped.
// Matrix Market: symmetric/general coordinate matrices, pattern/real/integer.
// Node ids are compacted to 0..n-1 in ascending id order; nodes with no
// surviving edge are dropped (so write_graph followed by load_graph is the
// identity on canonical graphs).
Graph load_graph(std::istream& in, GraphFormat format = GraphFormat::EdgeList);
Graph load_graph_file(const std::string& path);  // format from extension (.mtx)
Graph load_graph_file(const std::string& path, GraphFormat format);

// One "u v w" line per undirected edge, u < v, sorted lexicographically.
void write_graph(const Graph& g, std::ostream& out);
void write_graph_file(const Graph& g, const std::string& path);

}  // namespace netsparse
