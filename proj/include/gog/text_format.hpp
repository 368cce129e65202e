#pragma once

// Line-oriented text format:
//   vertex NAME free RANK | vertex NAME dihedral
//   edge NAME from=NAME to=NAME img_from="WORD" img_to="WORD"
// Letters are NAME.INDEX, NAME.r, NAME.s (vertex generators) and NAME.t
// (stable letters), each with an optional ^EXP.  '#' starts a comment.

#include "gog/error.hpp"
#include "gog/model.hpp"
#include "gog/word_engine.hpp"

#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace gog {

namespace detail {

struct Token {
  std::string text;
  int column;  // 1-based
};

[[noreturn]] inline void syntax_error(const std::string& what, int line, int column) {
  throw Error(ErrorKind::Syntax, what, line, column);
}

inline bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

// splits on whitespace outside double quotes; drops a trailing comment
inline std::vector<Token> tokenize(const std::string& line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    bool quoted = false;
    while (i < line.size()) {
      const char d = line[i];
      if (d == '"') {
        quoted = !quoted;
      } else if (!quoted && (std::isspace(static_cast<unsigned char>(d)) || d == '#')) {
        break;
      }
      ++i;
    }
    if (quoted) syntax_error("unterminated string", lineno, static_cast<int>(start) + 1);
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

inline bool parse_integer(const std::string& s, BigInt& out) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  }
  out = BigInt(s.substr(i));
  if (neg) out = -out;
  return true;
}

struct ParsedLetter {
  std::string owner;   // vertex or edge name
  std::string suffix;  // index, r, s or t
  BigInt exp = 1;
  int column = 0;
};

inline std::vector<ParsedLetter> parse_letters(const std::string& text, int lineno, int column0) {
  std::vector<ParsedLetter> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::string tok = text.substr(start, i - start);
    const int col = column0 + static_cast<int>(start);
    ParsedLetter l;
    l.column = col;
    std::string body = tok;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      body = tok.substr(0, caret);
      if (!parse_integer(tok.substr(caret + 1), l.exp)) syntax_error("bad exponent in '" + tok + "'", lineno, col);
    }
    const auto dot = body.find('.');
    if (dot == std::string::npos) syntax_error("letter '" + tok + "' lacks '.'", lineno, col);
    l.owner = body.substr(0, dot);
    l.suffix = body.substr(dot + 1);
    if (!valid_name(l.owner) || l.suffix.empty()) syntax_error("malformed letter '" + tok + "'", lineno, col);
    out.push_back(l);
  }
  return out;
}

// generator index for a vertex letter suffix, or 0
inline int generator_of(const VertexKind& k, const std::string& suffix) {
  if (k.is_dihedral()) {
    if (suffix == "r") return kDihedralR;
    if (suffix == "s") return kDihedralS;
    return 0;
  }
  if (suffix.size() > 9) return 0;
  for (char c : suffix) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return 0;
  }
  const int gen = std::stoi(suffix);
  return gen >= 1 && gen <= k.rank ? gen : 0;
}

}  // namespace detail

inline GraphOfGroups parse(const std::string& text) {
  struct PendingEdge {
    EdgeDecl decl;
    int line;
    int name_col;
    std::map<std::string, detail::Token> fields;
  };
  std::vector<VertexDecl> vertices;
  std::map<std::string, VertexKind> kinds;
  std::vector<PendingEdge> edges;
  std::map<std::string, int> edge_names;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = detail::tokenize(line, lineno);
    if (toks.empty()) continue;
    const std::string& head = toks[0].text;
    if (head == "vertex") {
      if (toks.size() < 3) detail::syntax_error("expected 'vertex NAME (free INT | dihedral)'", lineno, toks[0].column);
      const std::string& name = toks[1].text;
      if (!detail::valid_name(name)) detail::syntax_error("bad vertex name '" + name + "'", lineno, toks[1].column);
      if (kinds.count(name)) throw Error(ErrorKind::DuplicateName, "duplicate vertex '" + name + "'", lineno, toks[1].column);
      VertexKind kind;
      if (toks[2].text == "dihedral" && toks.size() == 3) {
        kind = VertexKind::dihedral();
      } else if (toks[2].text == "free" && toks.size() == 4) {
        BigInt r;
        if (!detail::parse_integer(toks[3].text, r) || r < 0 || r > 1000000) {
          detail::syntax_error("bad rank '" + toks[3].text + "'", lineno, toks[3].column);
        }
        if (r == 0) throw Error(ErrorKind::RankZero, "vertex '" + name + "' has free rank 0", lineno, toks[3].column);
        kind = VertexKind::free(static_cast<int>(r));
      } else {
        detail::syntax_error("expected 'free INT' or 'dihedral'", lineno, toks[2].column);
      }
      kinds[name] = kind;
      vertices.push_back({name, kind});
    } else if (head == "edge") {
      if (toks.size() != 6) detail::syntax_error("expected 'edge NAME from= to= img_from= img_to='", lineno, toks[0].column);
      PendingEdge pe;
      pe.line = lineno;
      pe.name_col = toks[1].column;
      pe.decl.name = toks[1].text;
      if (!detail::valid_name(pe.decl.name)) detail::syntax_error("bad edge name", lineno, toks[1].column);
      if (edge_names.count(pe.decl.name)) {
        throw Error(ErrorKind::DuplicateName, "duplicate edge '" + pe.decl.name + "'", lineno, toks[1].column);
      }
      edge_names[pe.decl.name] = lineno;
      for (std::size_t k = 2; k < toks.size(); ++k) {
        const auto eq = toks[k].text.find('=');
        if (eq == std::string::npos) detail::syntax_error("expected key=value", lineno, toks[k].column);
        const std::string key = toks[k].text.substr(0, eq);
        std::string value = toks[k].text.substr(eq + 1);
        int vcol = toks[k].column + static_cast<int>(eq) + 1;
        if (key != "from" && key != "to" && key != "img_from" && key != "img_to") {
          detail::syntax_error("unknown key '" + key + "'", lineno, toks[k].column);
        }
        if (pe.fields.count(key)) detail::syntax_error("repeated key '" + key + "'", lineno, toks[k].column);
        if (key.rfind("img_", 0) == 0) {
          if (value.size() < 2 || value.front() != '"' || value.back() != '"') {
            detail::syntax_error("attachment words must be quoted", lineno, vcol);
          }
          value = value.substr(1, value.size() - 2);
          ++vcol;
        }
        pe.fields[key] = {value, vcol};
      }
      for (const char* key : {"from", "to", "img_from", "img_to"}) {
        if (!pe.fields.count(key)) detail::syntax_error(std::string("missing ") + key + "=", lineno, toks[0].column);
      }
      edges.push_back(std::move(pe));
    } else {
      detail::syntax_error("expected 'vertex' or 'edge', got '" + head + "'", lineno, toks[0].column);
    }
  }

  std::vector<EdgeDecl> decls;
  for (PendingEdge& pe : edges) {
    auto endpoint = [&](const char* key) {
      const detail::Token& t = pe.fields.at(key);
      if (!kinds.count(t.text)) throw Error(ErrorKind::UnknownVertex, "unknown vertex '" + t.text + "'", pe.line, t.column);
      return t.text;
    };
    pe.decl.from = endpoint("from");
    pe.decl.to = endpoint("to");
    auto attachment = [&](const char* key, const std::string& vertex) {
      const detail::Token& t = pe.fields.at(key);
      const VertexKind& k = kinds.at(vertex);
      Word w;
      for (const auto& l : detail::parse_letters(t.text, pe.line, t.column)) {
        const int gen = l.owner == vertex ? detail::generator_of(k, l.suffix) : 0;
        if (!gen) {
          throw Error(ErrorKind::UnknownGenerator,
                      "letter '" + l.owner + "." + l.suffix + "' is not a generator of '" + vertex + "'", pe.line,
                      l.column);
        }
        w.push_back({gen, l.exp});
      }
      const Word n = normalize_element(k, w);
      const bool infinite = k.is_free() ? !n.empty() : (n.size() == 1 && n[0].gen == kDihedralR);
      if (!infinite) {
        throw Error(ErrorKind::FiniteOrderAttachment, "attachment of '" + pe.decl.name + "' has finite order", pe.line,
                    t.column);
      }
      return w;
    };
    pe.decl.img_from = attachment("img_from", pe.decl.from);
    pe.decl.img_to = attachment("img_to", pe.decl.to);
    decls.push_back(pe.decl);
  }
  return GraphOfGroups::build(std::move(vertices), std::move(decls));
}

inline GraphOfGroups parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::Syntax, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

inline std::string serialize(const GraphOfGroups& g) {
  std::string out;
  for (const Vertex& v : g.vertices()) {
    out += "vertex " + v.name;
    out += v.kind.is_free() ? " free " + std::to_string(v.kind.rank) : std::string(" dihedral");
    out += '\n';
  }
  for (const Edge& e : g.edges()) {
    out += "edge " + e.name + " from=" + g.vertex(e.source).name + " to=" + g.vertex(e.target).name;
    out += " img_from=\"" + format_element(g, e.source, e.img_from) + "\"";
    out += " img_to=\"" + format_element(g, e.target, e.img_to) + "\"\n";
  }
  return out;
}

// Letters over any vertex or edge of g, e.g. "e.t v.1^2 e.t^-1".
inline std::vector<RawLetter> parse_word(const GraphOfGroups& g, const std::string& text) {
  std::vector<RawLetter> out;
  for (const auto& l : detail::parse_letters(text, 1, 1)) {
    RawLetter r;
    r.exp = l.exp;
    if (l.suffix == "t") {
      auto e = g.find_edge(l.owner);
      if (!e) throw Error(ErrorKind::UnknownEdge, "unknown edge '" + l.owner + "'", 1, l.column);
      r.kind = RawLetter::Kind::Stable;
      r.id = *e;
    } else {
      auto v = g.find_vertex(l.owner);
      if (!v) throw Error(ErrorKind::UnknownVertex, "unknown vertex '" + l.owner + "'", 1, l.column);
      r.gen = detail::generator_of(g.kind(*v), l.suffix);
      if (!r.gen) {
        throw Error(ErrorKind::UnknownGenerator, "'" + l.suffix + "' is not a generator of '" + l.owner + "'", 1, l.column);
      }
      r.id = *v;
    }
    out.push_back(r);
  }
  return out;
}

// first vertex the word touches, or vertex 0 for the empty word
inline VertexId default_base(const GraphOfGroups& g, const std::vector<RawLetter>& w) {
  if (w.empty()) return 0;
  const RawLetter& r = w.front();
  if (r.kind == RawLetter::Kind::Vertex) return r.id;
  return letter_start(g, {r.id, r.exp < 0 ? -1 : 1});
}

inline PathWord parse_path_word(const GraphOfGroups& g, const std::string& text) {
  const auto raw = parse_word(g, text);
  return to_path_form(g, raw, default_base(g, raw));
}

}  // namespace gog
