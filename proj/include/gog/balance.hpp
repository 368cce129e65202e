#pragma once

// Commensurability groupoid of a graph of groups.  Nodes are pairs
// (vertex, canonical root); every attachment image is conj * root^p * conj^-1
// for the root of its node.  The forward arc of edge e runs from the target
// node to the source node with weight m/n, where img_from has exponent m and
// img_to has exponent n: conjugating root+^(n x) across e yields root-^(m x).

#include "gog/model.hpp"
#include "gog/word_engine.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

namespace gog {

struct GroupoidNode {
  VertexId vertex = 0;
  Word root;
};

struct Occurrence {
  EdgeId edge = 0;
  Side side = Side::Source;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

inline std::size_t occurrence_index(const Occurrence& o) { return 2 * o.edge + (o.side == Side::Target ? 1 : 0); }

inline Occurrence occurrence_at(std::size_t i) { return {i / 2, i % 2 ? Side::Target : Side::Source}; }

struct Arc {
  enum class Kind { Edge, Flip };
  Kind kind = Kind::Edge;
  std::size_t from = 0;
  std::size_t to = 0;
  Rational weight = 1;
  EdgeId edge = npos;    // Edge arcs
  int direction = 1;     // +1: target node -> source node
  VertexId vertex = 0;   // vertex carrying the conjugator's first syllable
  BigInt divisor = 1;    // root exponent at `from` must be a multiple of this
  std::size_t inverse = 0;
};

struct RatioGroupoid {
  std::vector<GroupoidNode> nodes;
  std::vector<std::size_t> occurrence_node;  // by occurrence_index
  std::vector<Arc> arcs;

  std::size_t node_of(EdgeId e, Side s) const { return occurrence_node.at(occurrence_index({e, s})); }
  // forward arc of edge e
  std::size_t edge_arc(EdgeId e) const { return 2 * e; }
};

inline RatioGroupoid build_groupoid(const GraphOfGroups& g) {
  RatioGroupoid out;
  struct Key {
    VertexId vertex;
    Word root;
    std::size_t occ;
  };
  std::vector<Key> keys;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    for (Side s : {Side::Source, Side::Target}) {
      keys.push_back({g.edge(e).endpoint(s), g.attachment_root(e, s).root, occurrence_index({e, s})});
    }
  }
  std::stable_sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.vertex != b.vertex) return a.vertex < b.vertex;
    return compare_words(a.root, b.root) < 0;
  });
  out.occurrence_node.assign(keys.size(), 0);
  for (const Key& k : keys) {
    if (out.nodes.empty() || out.nodes.back().vertex != k.vertex || out.nodes.back().root != k.root) {
      out.nodes.push_back({k.vertex, k.root});
    }
    out.occurrence_node[k.occ] = out.nodes.size() - 1;
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const BigInt m = g.attachment_root(e, Side::Source).exponent;
    const BigInt n = g.attachment_root(e, Side::Target).exponent;
    const std::size_t np = out.node_of(e, Side::Target), nm = out.node_of(e, Side::Source);
    const std::size_t fwd = out.arcs.size();
    out.arcs.push_back({Arc::Kind::Edge, np, nm, ratio(m, n), e, 1, g.edge(e).source, abs(n), fwd + 1});
    out.arcs.push_back({Arc::Kind::Edge, nm, np, ratio(n, m), e, -1, g.edge(e).target, abs(m), fwd});
  }
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    if (g.kind(out.nodes[i].vertex).is_dihedral()) {
      const std::size_t a = out.arcs.size();
      out.arcs.push_back({Arc::Kind::Flip, i, i, Rational(-1), npos, 1, out.nodes[i].vertex, 1, a});
    }
  }
  return out;
}

// closed walk of arcs, each starting where the previous one ends
using Walk = std::vector<std::size_t>;

inline Rational walk_weight(const RatioGroupoid& gr, const Walk& w) {
  Rational q = 1;
  for (std::size_t a : w) q *= gr.arcs[a].weight;
  return q;
}

inline Walk reverse_walk(const RatioGroupoid& gr, const Walk& w) {
  Walk out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(gr.arcs[*it].inverse);
  return out;
}

// Least positive x such that root^x at the start of the walk stays integral
// along every arc.
inline BigInt walk_divisibility(const RatioGroupoid& gr, const Walk& w) {
  BigInt l = 1;
  Rational prefix = 1;
  for (std::size_t a : w) {
    const Arc& arc = gr.arcs[a];
    l = lcm(l, denominator(abs(prefix) / Rational(arc.divisor)));
    prefix *= arc.weight;
  }
  return l;
}

// Conjugator of a single arc: carries root(from)^(divisor x) to
// root(to)^(weight divisor x).
inline PathWord arc_conjugator(const GraphOfGroups& g, const Arc& arc) {
  if (arc.kind == Arc::Kind::Flip) return path_word({arc.vertex, {{kDihedralS, 1}}});
  const Edge& e = g.edge(arc.edge);
  const Word& gm = g.attachment_root(arc.edge, Side::Source).conjugator;
  const Word& gp = g.attachment_root(arc.edge, Side::Target).conjugator;
  const VertexKind& km = g.kind(e.source);
  const VertexKind& kp = g.kind(e.target);
  PathWord w;
  if (arc.direction > 0) {
    w.base = e.source;
    w.elements = {invert(km, gm), gp};
  } else {
    w.base = e.target;
    w.elements = {invert(kp, gp), gm};
  }
  w.letters = {{arc.edge, arc.direction}};
  return w;
}

// C_{a_L} ... C_{a_1}; starts at the walk's final node, ends at its first.
inline PathWord walk_conjugator(const GraphOfGroups& g, const RatioGroupoid& gr, const Walk& w) {
  const std::size_t start = w.empty() ? 0 : gr.arcs[w.front()].from;
  PathWord out = identity_word(w.empty() ? 0 : gr.nodes[start].vertex);
  for (std::size_t a : w) {
    const PathWord c = arc_conjugator(g, gr.arcs[a]);
    out = multiply(g, c, out);
  }
  return out;
}

struct BalanceVerdict {
  bool balanced = true;
  Walk cycle;        // closed walk when unbalanced
  Rational modulus;  // its weight
};

namespace detail {

struct Potentials {
  std::vector<Rational> pot;
  std::vector<std::size_t> parent_arc;
  std::vector<std::size_t> component;
  std::vector<std::size_t> depth;
};

// BFS forest over |weights|, ignoring the arcs of edge `skip`.
inline Potentials potentials(const RatioGroupoid& gr, EdgeId skip = npos) {
  const std::size_t n = gr.nodes.size();
  std::vector<std::vector<std::size_t>> out_arcs(n);
  for (std::size_t a = 0; a < gr.arcs.size(); ++a) {
    if (gr.arcs[a].kind == Arc::Kind::Edge && gr.arcs[a].edge == skip) continue;
    out_arcs[gr.arcs[a].from].push_back(a);
  }
  Potentials p;
  p.pot.assign(n, 0);
  p.parent_arc.assign(n, npos);
  p.component.assign(n, npos);
  p.depth.assign(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (p.component[root] != npos) continue;
    p.component[root] = root;
    p.pot[root] = 1;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t a : out_arcs[x]) {
        const std::size_t y = gr.arcs[a].to;
        if (p.component[y] != npos) continue;
        p.component[y] = root;
        p.pot[y] = p.pot[x] * abs(gr.arcs[a].weight);
        p.parent_arc[y] = a;
        p.depth[y] = p.depth[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return p;
}

// tree walk from a to b inside one component
inline Walk tree_walk(const RatioGroupoid& gr, const Potentials& p, std::size_t a, std::size_t b) {
  Walk up, down;
  while (p.depth[a] > p.depth[b]) {
    up.push_back(gr.arcs[p.parent_arc[a]].inverse);
    a = gr.arcs[p.parent_arc[a]].from;
  }
  while (p.depth[b] > p.depth[a]) {
    down.push_back(p.parent_arc[b]);
    b = gr.arcs[p.parent_arc[b]].from;
  }
  while (a != b) {
    up.push_back(gr.arcs[p.parent_arc[a]].inverse);
    a = gr.arcs[p.parent_arc[a]].from;
    down.push_back(p.parent_arc[b]);
    b = gr.arcs[p.parent_arc[b]].from;
  }
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

// first forward edge arc (by edge id) whose weight disagrees with the potentials
inline std::optional<std::size_t> violating_arc(const RatioGroupoid& gr, const Potentials& p, EdgeId skip,
                                                std::size_t component) {
  for (std::size_t a = 0; a < gr.arcs.size(); ++a) {
    const Arc& arc = gr.arcs[a];
    if (arc.kind != Arc::Kind::Edge || arc.direction != 1 || arc.edge == skip) continue;
    if (component != npos && p.component[arc.from] != component) continue;
    if (p.pot[arc.to] != p.pot[arc.from] * abs(arc.weight)) return a;
  }
  return std::nullopt;
}

}  // namespace detail

inline BalanceVerdict group_balanced(const GraphOfGroups& g, const RatioGroupoid& gr) {
  const detail::Potentials p = detail::potentials(gr);
  if (auto a = detail::violating_arc(gr, p, npos, npos)) {
    Walk cycle{*a};
    const Walk back = detail::tree_walk(gr, p, gr.arcs[*a].to, gr.arcs[*a].from);
    cycle.insert(cycle.end(), back.begin(), back.end());
    (void)g;
    return {false, cycle, walk_weight(gr, cycle)};
  }
  return {};
}

inline BalanceVerdict group_balanced(const GraphOfGroups& g) { return group_balanced(g, build_groupoid(g)); }

// Unbalanced verdicts carry a closed walk that starts with the forward arc
// of e and otherwise avoids e.
inline BalanceVerdict edge_balanced(const GraphOfGroups& g, const RatioGroupoid& gr, EdgeId e) {
  (void)g;
  const detail::Potentials p = detail::potentials(gr, e);
  const std::size_t np = gr.node_of(e, Side::Target), nm = gr.node_of(e, Side::Source);
  if (p.component[np] != p.component[nm]) return {};
  const std::size_t fwd = gr.edge_arc(e);
  Walk direct{fwd};
  const Walk back = detail::tree_walk(gr, p, nm, np);
  direct.insert(direct.end(), back.begin(), back.end());
  const Rational w = walk_weight(gr, direct);
  if (abs(w) != 1) return {false, direct, w};
  if (auto a = detail::violating_arc(gr, p, e, p.component[np])) {
    const Arc& arc = gr.arcs[*a];
    Walk detour{fwd};
    for (const Walk& part : {detail::tree_walk(gr, p, nm, arc.from), Walk{*a}, detail::tree_walk(gr, p, arc.to, np)}) {
      detour.insert(detour.end(), part.begin(), part.end());
    }
    return {false, detour, walk_weight(gr, detour)};
  }
  return {};
}

inline BalanceVerdict edge_balanced(const GraphOfGroups& g, EdgeId e) {
  return edge_balanced(g, build_groupoid(g), e);
}

// h img_to^i h^-1 = img_from^j with h avoiding e and |i| != |j|.
struct EdgeWitness {
  PathWord h;  // in the original graph; never uses t_e
  BigInt i;
  BigInt j;
};

inline EdgeWitness edge_witness(const GraphOfGroups& g, const RatioGroupoid& gr, EdgeId e,
                                const BalanceVerdict& v) {
  if (v.balanced || v.cycle.empty() || v.cycle.front() != gr.edge_arc(e)) {
    throw Error(ErrorKind::NoWitness, "edge '" + g.edge(e).name + "' has no unbalanced cycle");
  }
  const Walk rest(v.cycle.begin() + 1, v.cycle.end());
  const Walk there = reverse_walk(gr, rest);  // target node -> source node
  const Edge& edge = g.edge(e);
  const RootData& rm = g.attachment_root(e, Side::Source);
  const RootData& rp = g.attachment_root(e, Side::Target);
  const BigInt m = rm.exponent, n = rp.exponent;
  const Rational r = walk_weight(gr, there) * ratio(n, m);
  const BigInt l = walk_divisibility(gr, there);
  const BigInt i = lcm(denominator(r), l / gcd(l, n));
  const BigInt j = numerator(r * Rational(i));

  PathWord s = there.empty() ? identity_word(edge.target) : walk_conjugator(g, gr, there);
  PathWord h = multiply(g, path_word({edge.source, rm.conjugator}), s,
                        path_word({edge.target, invert(g.kind(edge.target), rp.conjugator)}));
  return {h, i, j};
}

// ---- brute-force oracle --------------------------------------------------

struct OracleResult {
  enum class Outcome { Unbalanced, Vacuous, BalancedWithinBounds };
  Outcome outcome = Outcome::BalancedWithinBounds;
  // Unbalanced: component of the graph minus e containing it, and the
  // conjugator there with h img_to^i h^-1 = img_from^j
  std::optional<GraphOfGroups> component;
  PathWord h;
  BigInt i = 0;
  BigInt j = 0;

  bool conclusive() const { return outcome != Outcome::BalancedWithinBounds; }
};

inline OracleResult brute_force_balance_oracle(const GraphOfGroups& g, EdgeId e, const SearchBounds& bounds) {
  const Edge& edge = g.edge(e);
  if (!reachable(g, edge.target, e)[edge.source]) return {OracleResult::Outcome::Vacuous, std::nullopt, {}, 0, 0};
  GraphOfGroups h = component_without(g, edge.target, e);
  const VertexId vp = h.vertex_id(g.vertex(edge.target).name);
  const VertexId vm = h.vertex_id(g.vertex(edge.source).name);
  for (int i = 1; i <= bounds.max_exp; ++i) {
    const Word x = raise(h.kind(vp), edge.img_to, i);
    for (int mj = 1; mj <= bounds.max_exp; ++mj) {
      if (mj == i) continue;
      for (int j : {mj, -mj}) {
        const Word y = raise(h.kind(vm), edge.img_from, j);
        if (auto c = bounded_conjugator_search(h, {vp, x}, {vm, y}, bounds)) {
          OracleResult r{OracleResult::Outcome::Unbalanced, std::nullopt, *c, i, j};
          r.component = std::move(h);
          return r;
        }
      }
    }
  }
  return {};
}

// Re-expresses a path word in a graph sharing vertex and edge names.
inline PathWord translate(const GraphOfGroups& from, const GraphOfGroups& to, const PathWord& w) {
  PathWord out;
  out.base = to.vertex_id(from.vertex(w.base).name);
  out.elements = w.elements;
  for (const StableLetter& l : w.letters) out.letters.push_back({to.edge_id(from.edge(l.edge).name), l.sign});
  return out;
}

}  // namespace gog
