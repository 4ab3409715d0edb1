#pragma once

// Graph files.  Text form, one item per line:
//   vertex <name>
//   <name> <name> <label>      (label a decimal integer >= 2)
//   # comment
// Vertices first met in an edge line are declared implicitly.  JSON form:
//   {"vertices": ["a", ...], "edges": [["a", "b", 3], ...]}
// where every edge endpoint must be listed in "vertices".

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "coxprof/graph.hpp"

namespace coxprof {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline bool valid_name(std::string_view s) {
  if (s.empty() || s.front() == '#') return false;
  for (char c : s)
    if (static_cast<unsigned char>(c) <= ' ' || c == '"') return false;
  return true;
}

inline std::size_t vertex_or_declare(CoxeterGraph& g, const std::string& name, std::size_t line) {
  if (auto i = g.index_of(name)) return *i;
  if (!valid_name(name)) throw ParseError(line, "invalid vertex name '" + name + "'");
  try {
    return g.add_vertex(name);
  } catch (const GraphError& e) {
    throw ParseError(line, e.what());
  }
}

inline void add_edge_checked(CoxeterGraph& g, std::size_t a, std::size_t b, long long label, std::size_t line) {
  if (a == b) throw ParseError(line, "self-loop at '" + g.name(a) + "'");
  if (label < 2) throw ParseError(line, "edge label " + std::to_string(label) + " is below 2");
  if (label > static_cast<long long>(kMaxLabel))
    throw ParseError(line, "edge label " + std::to_string(label) + " exceeds " + std::to_string(kMaxLabel));
  if (g.adjacent(a, b)) throw ParseError(line, "duplicate edge " + g.name(a) + " " + g.name(b));
  g.set_edge(a, b, static_cast<Label>(label));
}

inline CoxeterGraph parse_text(std::string_view text) {
  CoxeterGraph g;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream fields(raw);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty() || tok[0].front() == '#') continue;

    if (tok.size() == 2 && tok[0] == "vertex") {
      if (g.index_of(tok[1])) throw ParseError(line, "duplicate vertex '" + tok[1] + "'");
      vertex_or_declare(g, tok[1], line);
      continue;
    }
    if (tok.size() != 3) throw ParseError(line, "malformed line '" + raw + "'");
    long long label = 0;
    const auto& l = tok[2];
    auto [end, ec] = std::from_chars(l.data(), l.data() + l.size(), label);
    if (ec != std::errc{} || end != l.data() + l.size())
      throw ParseError(line, "edge label '" + l + "' is not an integer");
    const auto a = vertex_or_declare(g, tok[0], line);
    const auto b = vertex_or_declare(g, tok[1], line);
    add_edge_checked(g, a, b, label, line);
  }
  return g;
}

inline CoxeterGraph parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
    throw ParseError(0, "JSON graph needs a \"vertices\" array");
  CoxeterGraph g;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) throw ParseError(0, "vertex names must be strings");
    const auto name = v.get<std::string>();
    if (!valid_name(name)) throw ParseError(0, "invalid vertex name '" + name + "'");
    if (g.index_of(name)) throw ParseError(0, "duplicate vertex '" + name + "'");
    g.add_vertex(name);
  }
  if (!doc.contains("edges")) return g;
  if (!doc["edges"].is_array()) throw ParseError(0, "\"edges\" must be an array");
  std::size_t k = 0;
  for (const auto& e : doc["edges"]) {
    ++k;
    const std::string where = "edge " + std::to_string(k) + ": ";
    if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string() || !e[2].is_number_integer())
      throw ParseError(0, where + "expected [\"a\", \"b\", label]");
    const auto a = g.index_of(e[0].get<std::string>());
    const auto b = g.index_of(e[1].get<std::string>());
    if (!a || !b) throw ParseError(0, where + "undeclared vertex");
    try {
      add_edge_checked(g, *a, *b, e[2].get<long long>(), 0);
    } catch (const ParseError& err) {
      throw ParseError(0, where + err.what());
    }
  }
  return g;
}

}  // namespace detail

/// Parses either format; JSON is recognised by a leading '{'.
inline CoxeterGraph parse_graph(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return detail::parse_json(text);
  return detail::parse_text(text);
}

inline CoxeterGraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

inline std::string render_text(const CoxeterGraph& g) {
  std::string out;
  for (const auto& name : g.names()) out += "vertex " + name + "\n";
  for (const auto& e : g.edges())
    out += g.name(e.u) + " " + g.name(e.v) + " " + std::to_string(e.label) + "\n";
  return out;
}

inline nlohmann::ordered_json graph_to_json(const CoxeterGraph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = g.names();
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) j["edges"].push_back({g.name(e.u), g.name(e.v), e.label});
  return j;
}

inline std::string render_json(const CoxeterGraph& g) { return graph_to_json(g).dump() + "\n"; }

inline std::string render_dot(const CoxeterGraph& g) {
  std::string out = "graph coxeter {\n";
  for (const auto& name : g.names()) out += "  \"" + name + "\";\n";
  for (const auto& e : g.edges())
    out += "  \"" + g.name(e.u) + "\" -- \"" + g.name(e.v) + "\" [label=\"" + std::to_string(e.label) + "\"];\n";
  out += "}\n";
  return out;
}

}  // namespace coxprof
