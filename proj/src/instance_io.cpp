#include "kinv/instance_io.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace kinv {

namespace {

struct Tokenizer {
  std::string line;
  int line_no;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= line.size();
  }
  int col() const { return static_cast<int>(pos) + 1; }
  std::string next_token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    return line.substr(start, pos - start);
  }
  long long next_int(const char* what) {
    skip_ws();
    int c = col();
    std::string tok = next_token();
    if (tok.empty()) throw ParseError(line_no, c, std::string("expected ") + what);
    std::size_t used = 0;
    long long val = 0;
    try {
      val = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw ParseError(line_no, c, std::string("bad integer for ") + what + ": '" + tok + "'");
    }
    if (used != tok.size())
      throw ParseError(line_no, c, std::string("bad integer for ") + what + ": '" + tok + "'");
    return val;
  }
  void expect_end() {
    if (!at_end()) throw ParseError(line_no, col(), "trailing tokens");
  }
};

}  // namespace

Instance parse_instance(std::istream& in) {
  Instance inst;
  bool have_header = false;
  std::string raw;
  int line_no = 0;
  std::vector<char> seen_w;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    Tokenizer tok{raw, line_no};
    if (tok.at_end()) continue;
    if (raw[tok.pos] == '#') continue;
    std::string kind = tok.next_token();
    if (kind == "p") {
      if (have_header) throw ParseError(line_no, 1, "duplicate header");
      int c = tok.col();
      std::string fmt = tok.next_token();
      if (fmt != "inv") throw ParseError(line_no, c, "expected 'inv' after 'p'");
      long long n = tok.next_int("vertex count");
      long long k = tok.next_int("budget k");
      tok.expect_end();
      if (n < 0) throw ParseError(line_no, 1, "negative vertex count");
      if (k < 0) throw ParseError(line_no, 1, "negative budget");
      if (k > 30) throw ParseError(line_no, 1, "budget too large (max 30)");
      inst.graph.n = static_cast<int>(n);
      inst.k = static_cast<int>(k);
      seen_w.assign(static_cast<std::size_t>(n), 0);
      have_header = true;
    } else if (kind == "a") {
      if (!have_header) throw ParseError(line_no, 1, "arc before header");
      tok.skip_ws();
      const int cu = tok.col();
      long long u = tok.next_int("arc tail");
      tok.skip_ws();
      const int cv = tok.col();
      long long v = tok.next_int("arc head");
      tok.expect_end();
      if (u < 1 || u > inst.graph.n)
        throw ParseError(line_no, cu, "vertex index out of range");
      if (v < 1 || v > inst.graph.n)
        throw ParseError(line_no, cv, "vertex index out of range");
      inst.graph.arcs.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    } else if (kind == "w") {
      if (!have_header) throw ParseError(line_no, 1, "weight line before header");
      tok.skip_ws();
      const int c = tok.col();
      long long i = tok.next_int("vertex index");
      if (i < 1 || i > inst.graph.n)
        throw ParseError(line_no, c, "vertex index out of range");
      if (seen_w[static_cast<std::size_t>(i - 1)])
        throw ParseError(line_no, c, "duplicate weight line for vertex " + std::to_string(i));
      seen_w[static_cast<std::size_t>(i - 1)] = 1;
      WeightSet ws;
      while (!tok.at_end()) {
        int wc = tok.col();
        long long w = tok.next_int("weight");
        if (w < 0 || w > inst.k)
          throw ParseError(line_no, wc, "weight outside {0..k}");
        ws.allow(static_cast<int>(w));
      }
      if (!inst.constraints) inst.constraints.emplace();
      (*inst.constraints)[static_cast<Vertex>(i - 1)] = ws;
    } else {
      throw ParseError(line_no, 1, "unknown line kind '" + kind + "'");
    }
  }
  if (!have_header) throw ParseError(line_no + 1, 1, "missing header");
  return inst;
}

Instance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

Instance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  return parse_instance(in);
}

std::string format_instance(const OrientedGraph& g, int k,
                            const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << "\n";
  out << "p inv " << g.order() << " " << k << "\n";
  for (const auto& [u, v] : g.arcs()) out << "a " << u + 1 << " " << v + 1 << "\n";
  return out.str();
}

std::optional<DecyclingFamily> parse_certificate(std::istream& in) {
  std::string raw;
  int line_no = 0;
  bool have_status = false;
  bool yes = false;
  std::vector<std::vector<Vertex>> sets;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    Tokenizer tok{raw, line_no};
    if (tok.at_end()) continue;
    if (raw[tok.pos] == '#') continue;
    std::string kind = tok.next_token();
    if (kind == "s") {
      if (have_status) throw ParseError(line_no, 1, "duplicate status line");
      int c = tok.col();
      std::string v = tok.next_token();
      tok.expect_end();
      if (v == "yes")
        yes = true;
      else if (v == "no")
        yes = false;
      else
        throw ParseError(line_no, c, "expected 'yes' or 'no'");
      have_status = true;
    } else if (kind == "y") {
      if (!have_status || !yes)
        throw ParseError(line_no, 1, "'y' line without preceding 's yes'");
      std::vector<Vertex> set;
      while (!tok.at_end()) {
        int c = tok.col();
        long long v = tok.next_int("vertex");
        if (v < 1) throw ParseError(line_no, c, "vertex index out of range");
        set.push_back(static_cast<Vertex>(v - 1));
      }
      sets.push_back(std::move(set));
    } else {
      throw ParseError(line_no, 1, "unknown line kind '" + kind + "'");
    }
  }
  if (!have_status) throw ParseError(line_no + 1, 1, "missing status line");
  if (!yes) return std::nullopt;
  return DecyclingFamily(std::move(sets));
}

std::optional<DecyclingFamily> parse_certificate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open certificate file: " + path);
  return parse_certificate(in);
}

std::string format_certificate(const std::optional<DecyclingFamily>& f) {
  if (!f) return "s no\n";
  std::ostringstream out;
  out << "s yes\n";
  for (const auto& y : f->sets) {
    out << "y";
    for (Vertex v : y) out << " " << v + 1;
    out << "\n";
  }
  return out.str();
}

}  // namespace kinv
