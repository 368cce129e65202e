#pragma once

// Path words g_0 t_1 g_1 ... t_n g_n over a graph of groups and Britton
// pinch reduction with exponent-compressed syllables.

#include "gog/model.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gog {

// elements.size() == letters.size() + 1; elements[i] lives at the vertex
// reached after letters[0..i).  Paths need not be closed: the value in the
// fundamental group is obtained by closing along the spanning tree.
struct PathWord {
  VertexId base = 0;
  std::vector<Word> elements{Word{}};
  std::vector<StableLetter> letters;

  friend bool operator==(const PathWord&, const PathWord&) = default;
};

struct RawLetter {
  enum class Kind { Vertex, Stable };
  Kind kind = Kind::Vertex;
  std::size_t id = 0;  // vertex or edge id
  int gen = 1;
  BigInt exp = 1;
};

inline VertexId letter_start(const GraphOfGroups& g, const StableLetter& l) {
  const Edge& e = g.edge(l.edge);
  return l.sign > 0 ? e.source : e.target;
}

inline VertexId letter_end(const GraphOfGroups& g, const StableLetter& l) {
  const Edge& e = g.edge(l.edge);
  return l.sign > 0 ? e.target : e.source;
}

inline VertexId end_vertex(const GraphOfGroups& g, const PathWord& w) {
  return w.letters.empty() ? w.base : letter_end(g, w.letters.back());
}

inline VertexId element_vertex(const GraphOfGroups& g, const PathWord& w, std::size_t i) {
  return i == 0 ? w.base : letter_end(g, w.letters[i - 1]);
}

inline PathWord path_word(const VertexWord& x) { return {x.vertex, {x.word}, {}}; }

inline PathWord identity_word(VertexId base) { return {base, {Word{}}, {}}; }

namespace detail {

inline void push_letter(PathWord& w, const StableLetter& l) {
  w.letters.push_back(l);
  w.elements.emplace_back();
}

// extend w with tree letters until it ends at v
inline void walk_to(const GraphOfGroups& g, PathWord& w, VertexId v) {
  const VertexId at = end_vertex(g, w);
  if (at == v) return;
  for (const StableLetter& l : g.tree_path(at, v)) push_letter(w, l);
}

}  // namespace detail

inline void append_letter(const GraphOfGroups& g, PathWord& w, const StableLetter& l) {
  detail::walk_to(g, w, letter_start(g, l));
  detail::push_letter(w, l);
}

inline void append_element(const GraphOfGroups& g, PathWord& w, const VertexWord& x) {
  detail::walk_to(g, w, x.vertex);
  w.elements.back() = multiply(g.kind(x.vertex), w.elements.back(), x.word);
}

inline PathWord multiply(const GraphOfGroups& g, const PathWord& u, const PathWord& v) {
  PathWord out = u;
  append_element(g, out, {v.base, v.elements[0]});
  for (std::size_t i = 0; i < v.letters.size(); ++i) {
    detail::push_letter(out, v.letters[i]);
    out.elements.back() = v.elements[i + 1];
  }
  return out;
}

inline PathWord multiply(const GraphOfGroups& g, const PathWord& a, const PathWord& b, const PathWord& c) {
  return multiply(g, multiply(g, a, b), c);
}

inline PathWord inverse(const GraphOfGroups& g, const PathWord& w) {
  PathWord out;
  out.base = end_vertex(g, w);
  out.elements.clear();
  for (std::size_t i = w.elements.size(); i-- > 0;) {
    out.elements.push_back(invert(g.kind(element_vertex(g, w, i)), w.elements[i]));
  }
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back({it->edge, -it->sign});
  return out;
}

inline PathWord power(const GraphOfGroups& g, const PathWord& w, long n) {
  PathWord base = n < 0 ? inverse(g, w) : w;
  PathWord out = identity_word(w.base);
  if (n < 0) out.base = base.base;
  for (long i = 0; i < (n < 0 ? -n : n); ++i) out = multiply(g, out, base);
  return out;
}

// closes the path back to its base through the spanning tree
inline PathWord closed(const GraphOfGroups& g, const PathWord& w) {
  PathWord out = w;
  detail::walk_to(g, out, w.base);
  return out;
}

inline PathWord to_path_form(const GraphOfGroups& g, const std::vector<RawLetter>& raw, VertexId base) {
  PathWord w = identity_word(base);
  for (const RawLetter& r : raw) {
    if (r.kind == RawLetter::Kind::Vertex) {
      const VertexKind& k = g.kind(r.id);
      const bool ok = k.is_free() ? (r.gen >= 1 && r.gen <= k.rank) : (r.gen == kDihedralR || r.gen == kDihedralS);
      if (!ok) {
        throw Error(ErrorKind::UnknownGenerator, "vertex '" + g.vertex(r.id).name + "' has no generator " +
                                                     std::to_string(r.gen));
      }
      append_element(g, w, {r.id, normalize_element(k, {{r.gen, r.exp}})});
    } else {
      const int sign = r.exp < 0 ? -1 : 1;
      for (BigInt i = 0; i < abs(r.exp); ++i) append_letter(g, w, {r.id, sign});
    }
  }
  return closed(g, w);
}

// k with x == image(side)^k, if x lies in that cyclic subgroup
inline std::optional<BigInt> pinch_membership(const GraphOfGroups& g, EdgeId e, Side side, const Word& x) {
  const RootData& rd = g.attachment_root(e, side);
  const VertexKind& k = g.kind(g.edge(e).endpoint(side));
  std::optional<BigInt> q;
  if (k.is_free()) {
    q = power_exponent(conjugate(inverse(rd.conjugator), x), rd.root);
  } else {
    const DihedralElement d = dihedral_from_word(x);
    if (d.eps == 0) q = d.k;
  }
  if (!q || *q % rd.exponent != 0) return std::nullopt;
  return BigInt(*q / rd.exponent);
}

struct PinchStep {
  std::size_t position;  // index of the opening stable letter in the output so far
  StableLetter letter;   // the opening letter
  BigInt exponent;       // inner element = image^exponent
};

// Leftmost-innermost pinch elimination; a single left-to-right pass with a
// stack reaches the fully reduced word.
inline PathWord britton_reduce(const GraphOfGroups& g, const PathWord& w, std::vector<PinchStep>* log = nullptr) {
  PathWord out;
  out.base = w.base;
  out.elements = {w.elements[0]};
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    const StableLetter& l = w.letters[i];
    const Word& next = w.elements[i + 1];
    if (!out.letters.empty()) {
      const StableLetter top = out.letters.back();
      if (top.edge == l.edge && top.sign == -l.sign) {
        // t g t^-1 tests g against img_to; t^-1 g t against img_from
        const Side inner = top.sign > 0 ? Side::Target : Side::Source;
        if (auto k = pinch_membership(g, l.edge, inner, out.elements.back())) {
          const Edge& e = g.edge(l.edge);
          const Side outer = opposite(inner);
          const VertexKind& ok = g.kind(e.endpoint(outer));
          if (log) log->push_back({out.letters.size() - 1, top, *k});
          out.letters.pop_back();
          out.elements.pop_back();
          Word merged = multiply(ok, out.elements.back(), raise(ok, e.image(outer), *k));
          out.elements.back() = multiply(ok, merged, next);
          continue;
        }
      }
    }
    out.letters.push_back(l);
    out.elements.push_back(next);
  }
  return out;
}

inline bool is_trivial(const GraphOfGroups& g, const PathWord& w) {
  const PathWord r = britton_reduce(g, closed(g, w));
  return r.letters.empty() && r.elements[0].empty();
}

inline bool are_equal(const GraphOfGroups& g, const PathWord& u, const PathWord& v) {
  return is_trivial(g, multiply(g, u, inverse(g, v)));
}

// h x h^-1
inline PathWord conjugate(const GraphOfGroups& g, const PathWord& h, const PathWord& x) {
  return multiply(g, h, x, inverse(g, h));
}

inline std::size_t syllable_count(const PathWord& w) {
  std::size_t n = w.letters.size();
  for (const Word& x : w.elements) n += !x.empty();
  return n;
}

// stable letters count one each, tree letters included
inline BigInt letter_length(const PathWord& w) {
  BigInt n = static_cast<long long>(w.letters.size());
  for (const Word& x : w.elements) n += letter_length(x);
  return n;
}

// ---- display -------------------------------------------------------------

inline std::string format_letter(const std::string& prefix, const std::string& suffix, const BigInt& exp) {
  std::string s = prefix + "." + suffix;
  if (exp != 1) s += "^" + exp.str();
  return s;
}

inline std::string format_element(const GraphOfGroups& g, VertexId v, const Word& w) {
  std::string out;
  const Vertex& vx = g.vertex(v);
  for (const Letter& l : w) {
    if (!out.empty()) out += ' ';
    std::string gen = vx.kind.is_free() ? std::to_string(l.gen) : (l.gen == kDihedralR ? "r" : "s");
    out += format_letter(vx.name, gen, l.exp);
  }
  return out;
}

// Space-separated letters; tree stable letters are omitted unless asked for.
inline std::string format_word(const GraphOfGroups& g, const PathWord& w, bool show_tree_letters = false) {
  std::vector<std::string> tokens;
  std::optional<StableLetter> run;
  long run_len = 0;
  auto flush = [&] {
    if (run) tokens.push_back(format_letter(g.edge(run->edge).name, "t", BigInt(run->sign * run_len)));
    run.reset();
    run_len = 0;
  };
  for (std::size_t i = 0; i < w.elements.size(); ++i) {
    if (!w.elements[i].empty()) {
      flush();
      tokens.push_back(format_element(g, element_vertex(g, w, i), w.elements[i]));
    }
    if (i < w.letters.size()) {
      const StableLetter& l = w.letters[i];
      if (g.in_tree(l.edge) && !show_tree_letters) continue;
      if (run && *run == l) {
        ++run_len;
      } else {
        flush();
        run = l;
        run_len = 1;
      }
    }
  }
  flush();
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

// ---- bounded conjugator search ------------------------------------------

struct SearchBounds {
  int max_syllables = 4;
  int max_exp = 4;
  std::size_t node_cap = 2000000;
};

// Elements of letter length <= radius (free), or s^eps r^k with |k| <= radius.
inline std::vector<Word> vertex_ball(const VertexKind& k, int radius) {
  std::vector<Word> out{Word{}};
  if (k.is_dihedral()) {
    for (int eps = 0; eps < 2; ++eps) {
      for (int m = 0; m <= radius; ++m) {
        for (int sgn : {1, -1}) {
          if (m == 0 && (sgn < 0 || eps == 0)) continue;
          out.push_back(dihedral_to_word({eps, BigInt(sgn * m)}));
        }
      }
    }
    return out;
  }
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= radius; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (int gen = 1; gen <= k.rank; ++gen) {
        for (int sgn : {1, -1}) {
          if (!w.empty() && w.back().gen == gen && sign(w.back().exp) != sgn) continue;
          Word x = w;
          if (!x.empty() && x.back().gen == gen) {
            x.back().exp += sgn;
          } else {
            x.push_back({gen, sgn});
          }
          next.push_back(x);
        }
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// Some h with h x h^-1 = y among path words with at most max_syllables
// syllables whose vertex syllables come from the radius-max_exp balls.  The
// path is built right to left and may only cross an edge when the current
// conjugate lies in that edge's image.  The returned h starts at y.vertex and
// ends at x.vertex; it has the least syllable count within the bounds.
inline std::optional<PathWord> bounded_conjugator_search(const GraphOfGroups& g, const VertexWord& x,
                                                         const VertexWord& y, const SearchBounds& bounds) {
  std::vector<std::vector<Word>> balls;
  for (const Vertex& v : g.vertices()) balls.push_back(vertex_ball(v.kind, bounds.max_exp));
  const Word target = normalize_element(g.kind(y.vertex), y.word);
  std::size_t nodes = 0;
  std::vector<std::pair<Word, StableLetter>> chain;  // applied right to left

  auto assemble = [&](const Word& last) {
    PathWord h;
    h.base = y.vertex;
    h.elements = {last};
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      h.letters.push_back(it->second);
      h.elements.push_back(it->first);
    }
    return h;
  };
  const PathWord px = path_word(x), py = path_word(y);

  std::function<std::optional<PathWord>(VertexId, const Word&, int, int)> dfs =
      [&](VertexId u, const Word& z, int cost, int limit) -> std::optional<PathWord> {
    const VertexKind& ku = g.kind(u);
    for (const Word& gw : balls[u]) {
      const int c = cost + (gw.empty() ? 0 : 1);
      if (c > limit) continue;
      if (++nodes > bounds.node_cap) {
        throw Error(ErrorKind::SearchBudgetExceeded, "conjugator search exceeded " +
                                                         std::to_string(bounds.node_cap) + " nodes");
      }
      const Word zz = conjugate(ku, gw, z);
      if (u == y.vertex && zz == target && c == limit) {
        PathWord h = assemble(gw);
        if (are_equal(g, conjugate(g, h, px), py)) return h;
      }
      if (c + 1 > limit) continue;
      for (EdgeId id : g.incident(u)) {
        const Edge& e = g.edge(id);
        for (Side side : {Side::Target, Side::Source}) {
          if (e.endpoint(side) != u) continue;
          const StableLetter letter{id, side == Side::Target ? 1 : -1};
          if (gw.empty() && !chain.empty() && chain.back().second == StableLetter{id, -letter.sign}) continue;
          auto k = pinch_membership(g, id, side, zz);
          if (!k) continue;
          const Side other = opposite(side);
          const VertexId w = e.endpoint(other);
          chain.push_back({gw, letter});
          auto found = dfs(w, raise(g.kind(w), e.image(other), *k), c + 1, limit);
          chain.pop_back();
          if (found) return found;
        }
      }
    }
    return std::nullopt;
  };

  const Word start = normalize_element(g.kind(x.vertex), x.word);
  for (int limit = 0; limit <= bounds.max_syllables; ++limit) {
    if (auto h = dfs(x.vertex, start, 0, limit)) return h;
  }
  return std::nullopt;
}

}  // namespace gog
