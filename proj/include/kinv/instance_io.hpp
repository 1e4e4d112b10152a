#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kinv/digraph.hpp"
#include "kinv/inversion.hpp"

namespace kinv {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
};

// Instance format (line based):
//   # comment
//   p inv <n> <k>          exactly one header, before any a/w line
//   a <u> <v>              arc, 1-indexed
//   w <i> <w1> <w2> ...    allowed weights for vertex i (may list none)
// Anything else is an error.
struct Instance {
  RawDigraph graph;
  int k = 0;
  std::optional<WeightConstraints> constraints;  // keyed by 0-indexed vertex
};

Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
Instance parse_instance_file(const std::string& path);

// Writes the instance format; comments (without leading '#') go first.
std::string format_instance(const OrientedGraph& g, int k,
                            const std::vector<std::string>& comments = {});

// Certificate format: `s yes` followed by one `y <v1> <v2> ...` line per set
// (1-indexed, possibly empty), or a single `s no`.
std::optional<DecyclingFamily> parse_certificate(std::istream& in);
std::optional<DecyclingFamily> parse_certificate_file(const std::string& path);
std::string format_certificate(const std::optional<DecyclingFamily>& f);

}  // namespace kinv
