#include "dagelim/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace dagelim {

namespace {

struct GraphAccum {
  std::map<std::string, int> ids;
  std::vector<std::string> names;
  std::set<std::pair<int, int>> edge_set;
  std::vector<std::pair<int, int>> edges;
  int duplicates = 0;

  int vertex(const std::string& name) {
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    const int id = static_cast<int>(names.size());
    ids.emplace(name, id);
    names.push_back(name);
    return id;
  }

  void edge(const std::string& a, const std::string& b, int line) {
    const int u = vertex(a);
    const int w = vertex(b);
    if (u == w) throw SyntaxError("self-loop on '" + a + "'", line);
    if (!edge_set.emplace(u, w).second) {
      ++duplicates;
      return;
    }
    edges.emplace_back(u, w);
  }

  Dag finish() const {
    Dag d = Dag::from_edges(static_cast<int>(names.size()), edges);
    for (int v = 0; v < d.order(); ++v) d.set_label(v, names[static_cast<size_t>(v)]);
    return d;
  }
};

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

Dag parse_edge_list(const std::string& text, ParseReport* report) {
  GraphAccum g;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    const auto toks = split_ws(line);
    if (toks[0] == "v") {
      if (toks.size() != 2) throw SyntaxError("expected 'v <name>'", line_no);
      g.vertex(toks[1]);
    } else if (toks[0] == "e") {
      if (toks.size() != 3) throw SyntaxError("expected 'e <from> <to>'", line_no);
      g.edge(toks[1], toks[2], line_no);
    } else {
      throw SyntaxError("unknown directive '" + toks[0] + "'", line_no);
    }
  }
  if (report) report->duplicate_edges = g.duplicates;
  return g.finish();
}

// --- minimal DOT reader -----------------------------------------------

struct DotLexer {
  const std::string& s;
  size_t pos = 0;
  int line = 1;

  explicit DotLexer(const std::string& text) : s(text) {}

  void skip_space() {
    while (pos < s.size()) {
      if (s[pos] == '\n') {
        ++line;
        ++pos;
      } else if (std::isspace(static_cast<unsigned char>(s[pos]))) {
        ++pos;
      } else if (s.compare(pos, 2, "//") == 0) {
        while (pos < s.size() && s[pos] != '\n') ++pos;
      } else if (s.compare(pos, 2, "/*") == 0) {
        pos += 2;
        while (pos + 1 < s.size() && s.compare(pos, 2, "*/") != 0) {
          if (s[pos] == '\n') ++line;
          ++pos;
        }
        if (pos + 1 >= s.size()) throw SyntaxError("unterminated comment", line);
        pos += 2;
      } else {
        break;
      }
    }
  }

  // Tokens: identifiers/numbers/quoted strings, "->", and single symbols.
  std::string next() {
    skip_space();
    if (pos >= s.size()) return {};
    const char c = s[pos];
    if (c == '"') {
      std::string out;
      ++pos;
      while (pos < s.size() && s[pos] != '"') {
        if (s[pos] == '\n') ++line;
        out += s[pos++];
      }
      if (pos >= s.size()) throw SyntaxError("unterminated string", line);
      ++pos;
      return out.empty() ? std::string("\"\"") : out;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' || s[pos] == '.'))
        ++pos;
      return s.substr(start, pos - start);
    }
    if (c == '-' && pos + 1 < s.size() && s[pos + 1] == '>') {
      pos += 2;
      return "->";
    }
    ++pos;
    return std::string(1, c);
  }

  std::string peek() {
    const size_t p = pos;
    const int l = line;
    std::string t = next();
    pos = p;
    line = l;
    return t;
  }
};

bool is_dot_symbol(const std::string& t) {
  return t == "{" || t == "}" || t == ";" || t == "[" || t == "]" || t == "=" || t == "," ||
         t == "->";
}

Dag parse_dot(const std::string& text, ParseReport* report) {
  GraphAccum g;
  DotLexer lex(text);
  if (lex.next() != "digraph") throw SyntaxError("expected 'digraph'", lex.line);
  std::string t = lex.next();
  if (t != "{") {
    if (is_dot_symbol(t) || t.empty()) throw SyntaxError("expected graph name or '{'", lex.line);
    t = lex.next();
    if (t != "{") throw SyntaxError("expected '{'", lex.line);
  }
  auto skip_attrs = [&]() {
    while (lex.peek() == "[") {
      lex.next();
      int depth = 1;
      while (depth > 0) {
        const std::string a = lex.next();
        if (a.empty()) throw SyntaxError("unterminated attribute list", lex.line);
        if (a == "[") ++depth;
        if (a == "]") --depth;
      }
    }
  };
  while (true) {
    t = lex.next();
    if (t == "}") break;
    if (t.empty()) throw SyntaxError("unexpected end of input", lex.line);
    if (t == ";") continue;
    if (is_dot_symbol(t)) throw SyntaxError("unexpected '" + t + "'", lex.line);
    std::string prev = t;
    g.vertex(prev);
    skip_attrs();
    while (lex.peek() == "->") {
      lex.next();
      const std::string nxt = lex.next();
      if (nxt.empty() || is_dot_symbol(nxt))
        throw SyntaxError("expected vertex after '->'", lex.line);
      g.edge(prev, nxt, lex.line);
      prev = nxt;
      skip_attrs();
    }
  }
  if (report) report->duplicate_edges = g.duplicates;
  return g.finish();
}

}  // namespace

Dag parse_graph(const std::string& text, GraphFormat format, ParseReport* report) {
  if (report) *report = {};
  return format == GraphFormat::EdgeList ? parse_edge_list(text, report)
                                         : parse_dot(text, report);
}

Dag parse_graph_auto(const std::string& text, ParseReport* report) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text.compare(first, 7, "digraph") == 0)
    return parse_graph(text, GraphFormat::DotSubset, report);
  return parse_graph(text, GraphFormat::EdgeList, report);
}

std::string vertex_name(const Dag& d, int v) {
  const std::string& l = d.label(v);
  return l.empty() ? std::to_string(v) : l;
}

std::string to_edge_list(const Dag& d) {
  std::ostringstream out;
  for (int v : d.vertices()) out << "v " << vertex_name(d, v) << "\n";
  for (auto [u, w] : d.edges()) out << "e " << vertex_name(d, u) << " " << vertex_name(d, w) << "\n";
  return out.str();
}

std::string to_dot(const Dag& d) {
  std::ostringstream out;
  out << "digraph g {\n";
  for (auto [u, w] : d.edges())
    out << "  " << vertex_name(d, u) << " -> " << vertex_name(d, w) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace dagelim
