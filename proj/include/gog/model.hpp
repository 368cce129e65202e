#pragma once

// Graphs of groups with free or infinite dihedral vertex groups and infinite
// cyclic edge groups.  Edge e carries attachment words img_from (in the
// source group) and img_to (in the target group) subject to
//   t_e * img_to * t_e^-1 = img_from.

#include "gog/bigint.hpp"
#include "gog/dihedral.hpp"
#include "gog/error.hpp"
#include "gog/free_words.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gog {

using VertexId = std::size_t;
using EdgeId = std::size_t;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct VertexKind {
  enum class Type { Free, Dihedral };
  Type type = Type::Free;
  int rank = 1;  // meaningful for free groups only

  static VertexKind free(int rank) { return {Type::Free, rank}; }
  static VertexKind dihedral() { return {Type::Dihedral, 0}; }

  bool is_free() const { return type == Type::Free; }
  bool is_dihedral() const { return type == Type::Dihedral; }
  bool two_ended() const { return is_dihedral() || rank == 1; }

  friend bool operator==(const VertexKind&, const VertexKind&) = default;
};

enum class Side { Source, Target };

inline Side opposite(Side s) { return s == Side::Source ? Side::Target : Side::Source; }

// t_e^sign; +1 travels source -> target
struct StableLetter {
  EdgeId edge = 0;
  int sign = 1;

  friend bool operator==(const StableLetter&, const StableLetter&) = default;
};

struct VertexWord {
  VertexId vertex = 0;
  Word word;

  friend bool operator==(const VertexWord&, const VertexWord&) = default;
};

struct Vertex {
  std::string name;
  VertexKind kind;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
  std::string name;
  VertexId source = 0;
  VertexId target = 0;
  Word img_from;
  Word img_to;

  VertexId endpoint(Side s) const { return s == Side::Source ? source : target; }
  const Word& image(Side s) const { return s == Side::Source ? img_from : img_to; }

  // same relation read with t_e^-1 as the stable letter
  Edge reversed() const { return {name, target, source, img_to, img_from}; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct VertexDecl {
  std::string name;
  VertexKind kind;
};

struct EdgeDecl {
  std::string name;
  std::string from;
  std::string to;
  Word img_from;
  Word img_to;
};

// ---- vertex group arithmetic -------------------------------------------

inline Word normalize_element(const VertexKind& k, const Word& w) {
  if (k.is_free()) return free_reduce(w, k.rank);
  return dihedral_to_word(dihedral_from_word(w));
}

inline Word multiply(const VertexKind& k, const Word& a, const Word& b) {
  if (k.is_free()) return concat(a, b);
  return dihedral_to_word(dmul(dihedral_from_word(a), dihedral_from_word(b)));
}

inline Word invert(const VertexKind& k, const Word& a) {
  if (k.is_free()) return inverse(a);
  return dihedral_to_word(dinv(dihedral_from_word(a)));
}

inline Word raise(const VertexKind& k, const Word& a, const BigInt& n) {
  if (k.is_free()) return power(a, n);
  return dihedral_to_word(dpow(dihedral_from_word(a), n));
}

// g a g^-1
inline Word conjugate(const VertexKind& k, const Word& g, const Word& a) {
  return multiply(k, multiply(k, g, a), invert(k, g));
}

// Root data of an infinite-order element.  Dihedral elements (0,k) all
// share the root r.
inline RootData element_root(const VertexKind& k, const Word& w) {
  if (k.is_free()) return primitive_root(w);
  const DihedralElement d = dihedral_from_word(w);
  if (d.eps != 0 || d.k == 0) throw Error(ErrorKind::FiniteOrderAttachment, "dihedral element has finite order");
  return {{{kDihedralR, 1}}, {}, d.k};
}

// ---- the graph ---------------------------------------------------------

class GraphOfGroups {
 public:
  GraphOfGroups() = default;

  // Validates and normalizes; vertices and edges are stored sorted by name.
  static GraphOfGroups build(std::vector<VertexDecl> vertices, std::vector<EdgeDecl> edges);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const VertexKind& kind(VertexId v) const { return vertices_.at(v).kind; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::optional<VertexId> find_vertex(const std::string& name) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), name,
                               [](const Vertex& v, const std::string& n) { return v.name < n; });
    if (it == vertices_.end() || it->name != name) return std::nullopt;
    return static_cast<VertexId>(it - vertices_.begin());
  }

  std::optional<EdgeId> find_edge(const std::string& name) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), name,
                               [](const Edge& e, const std::string& n) { return e.name < n; });
    if (it == edges_.end() || it->name != name) return std::nullopt;
    return static_cast<EdgeId>(it - edges_.begin());
  }

  VertexId vertex_id(const std::string& name) const {
    if (auto v = find_vertex(name)) return *v;
    throw Error(ErrorKind::UnknownVertex, "unknown vertex '" + name + "'");
  }

  EdgeId edge_id(const std::string& name) const {
    if (auto e = find_edge(name)) return *e;
    throw Error(ErrorKind::UnknownEdge, "unknown edge '" + name + "'");
  }

  bool in_tree(EdgeId e) const { return in_tree_.at(e); }

  // edges incident to v in id order, loops listed once
  const std::vector<EdgeId>& incident(VertexId v) const { return incident_.at(v); }

  // root data of an attachment: image(side) = conjugator root^exponent conjugator^-1
  const RootData& attachment_root(EdgeId e, Side s) const {
    return roots_.at(e)[s == Side::Source ? 0 : 1];
  }

  // stable letters of the tree path from a to b
  std::vector<StableLetter> tree_path(VertexId a, VertexId b) const {
    std::vector<StableLetter> up, down;
    while (depth_[a] > depth_[b]) {
      up.push_back(climb(a));
      a = parent_[a];
    }
    while (depth_[b] > depth_[a]) {
      down.push_back(climb(b));
      b = parent_[b];
    }
    while (a != b) {
      up.push_back(climb(a));
      a = parent_[a];
      down.push_back(climb(b));
      b = parent_[b];
    }
    for (auto it = down.rbegin(); it != down.rend(); ++it) up.push_back({it->edge, -it->sign});
    return up;
  }

  friend bool operator==(const GraphOfGroups& a, const GraphOfGroups& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  // step from v towards its tree parent
  StableLetter climb(VertexId v) const {
    const Edge& e = edges_[parent_edge_[v]];
    return {parent_edge_[v], e.target == v ? -1 : 1};
  }

  void compute_tree();

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
  std::vector<bool> in_tree_;
  std::vector<EdgeId> parent_edge_;
  std::vector<VertexId> parent_;
  std::vector<std::size_t> depth_;
  std::vector<std::array<RootData, 2>> roots_;
};

inline GraphOfGroups GraphOfGroups::build(std::vector<VertexDecl> vdecls, std::vector<EdgeDecl> edecls) {
  if (vdecls.empty()) throw Error(ErrorKind::EmptyGraph, "graph has no vertices");
  std::sort(vdecls.begin(), vdecls.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  std::sort(edecls.begin(), edecls.end(), [](const auto& a, const auto& b) { return a.name < b.name; });

  GraphOfGroups g;
  for (std::size_t i = 0; i < vdecls.size(); ++i) {
    const VertexDecl& d = vdecls[i];
    if (i > 0 && vdecls[i - 1].name == d.name) {
      throw Error(ErrorKind::DuplicateName, "duplicate vertex '" + d.name + "'");
    }
    if (d.kind.is_free() && d.kind.rank < 1) {
      throw Error(ErrorKind::RankZero, "vertex '" + d.name + "' has free rank " + std::to_string(d.kind.rank));
    }
    g.vertices_.push_back({d.name, d.kind});
  }
  for (std::size_t i = 0; i < edecls.size(); ++i) {
    const EdgeDecl& d = edecls[i];
    if (i > 0 && edecls[i - 1].name == d.name) {
      throw Error(ErrorKind::DuplicateName, "duplicate edge '" + d.name + "'");
    }
    Edge e;
    e.name = d.name;
    e.source = g.vertex_id(d.from);
    e.target = g.vertex_id(d.to);
    auto attach = [&](VertexId v, const Word& w) {
      const VertexKind& k = g.vertices_[v].kind;
      Word n = normalize_element(k, w);
      bool infinite = k.is_free() ? !n.empty() : (n.size() == 1 && n[0].gen == kDihedralR);
      if (!infinite) {
        throw Error(ErrorKind::FiniteOrderAttachment,
                    "edge '" + d.name + "' attaches a finite-order element at '" + g.vertices_[v].name + "'");
      }
      return n;
    };
    e.img_from = attach(e.source, d.img_from);
    e.img_to = attach(e.target, d.img_to);
    g.edges_.push_back(std::move(e));
  }
  g.incident_.assign(g.vertices_.size(), {});
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const Edge& e = g.edges_[id];
    g.incident_[e.source].push_back(id);
    if (e.target != e.source) g.incident_[e.target].push_back(id);
  }
  g.compute_tree();
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const Edge& e = g.edges_[id];
    g.roots_.push_back({element_root(g.kind(e.source), e.img_from), element_root(g.kind(e.target), e.img_to)});
  }
  return g;
}

// BFS from vertex 0 (the least name), scanning incident edges in name order.
inline void GraphOfGroups::compute_tree() {
  const std::size_t n = vertices_.size();
  in_tree_.assign(edges_.size(), false);
  parent_edge_.assign(n, npos);
  parent_.assign(n, npos);
  depth_.assign(n, 0);
  std::vector<bool> seen(n, false);
  std::deque<VertexId> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId id : incident_[v]) {
      const Edge& e = edges_[id];
      const VertexId w = e.source == v ? e.target : e.source;
      if (seen[w]) continue;
      seen[w] = true;
      ++reached;
      in_tree_[id] = true;
      parent_edge_[w] = id;
      parent_[w] = v;
      depth_[w] = depth_[v] + 1;
      queue.push_back(w);
    }
  }
  if (reached != n) {
    for (VertexId v = 0; v < n; ++v) {
      if (!seen[v]) {
        throw Error(ErrorKind::DisconnectedGraph, "vertex '" + vertices_[v].name + "' is not connected to '" +
                                                      vertices_[0].name + "'");
      }
    }
  }
}

// ---- free functions over the model -------------------------------------

inline std::vector<VertexDecl> vertex_decls(const GraphOfGroups& g) {
  std::vector<VertexDecl> out;
  for (const Vertex& v : g.vertices()) out.push_back({v.name, v.kind});
  return out;
}

inline std::vector<EdgeDecl> edge_decls(const GraphOfGroups& g) {
  std::vector<EdgeDecl> out;
  for (const Edge& e : g.edges()) {
    out.push_back({e.name, g.vertex(e.source).name, g.vertex(e.target).name, e.img_from, e.img_to});
  }
  return out;
}

// Re-checks every invariant by rebuilding from declarations.
inline void validate(const GraphOfGroups& g) {
  const GraphOfGroups again = GraphOfGroups::build(vertex_decls(g), edge_decls(g));
  if (!(again == g)) throw Error(ErrorKind::Internal, "graph is not in normal form");
}

inline std::vector<EdgeId> spanning_tree(const GraphOfGroups& g) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.in_tree(e)) out.push_back(e);
  }
  return out;
}

// Sub-graph of groups on the named vertices and edges; every edge must have
// both endpoints among the vertices.
inline GraphOfGroups subgraph(const GraphOfGroups& g, const std::set<std::string>& vertices,
                              const std::set<std::string>& edges) {
  std::vector<VertexDecl> vd;
  for (const std::string& name : vertices) vd.push_back({name, g.kind(g.vertex_id(name))});
  std::vector<EdgeDecl> ed;
  for (const std::string& name : edges) {
    const Edge& e = g.edge(g.edge_id(name));
    const std::string& from = g.vertex(e.source).name;
    const std::string& to = g.vertex(e.target).name;
    if (!vertices.count(from) || !vertices.count(to)) {
      throw Error(ErrorKind::UnknownVertex, "edge '" + name + "' leaves the chosen vertex set");
    }
    ed.push_back({name, from, to, e.img_from, e.img_to});
  }
  return GraphOfGroups::build(std::move(vd), std::move(ed));
}

// Vertices reachable from v without using edge `skip` (npos: use all).
inline std::vector<bool> reachable(const GraphOfGroups& g, VertexId v, EdgeId skip = npos) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<VertexId> queue{v};
  seen[v] = true;
  while (!queue.empty()) {
    const VertexId x = queue.front();
    queue.pop_front();
    for (EdgeId id : g.incident(x)) {
      if (id == skip) continue;
      const Edge& e = g.edge(id);
      const VertexId y = e.source == x ? e.target : e.source;
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  return seen;
}

// The connected component of v in the graph with edge `skip` removed.
inline GraphOfGroups component_without(const GraphOfGroups& g, VertexId v, EdgeId skip) {
  const std::vector<bool> seen = reachable(g, v, skip);
  std::set<std::string> vs, es;
  for (VertexId x = 0; x < g.vertex_count(); ++x) {
    if (seen[x]) vs.insert(g.vertex(x).name);
  }
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    if (id != skip && seen[g.edge(id).source]) es.insert(g.edge(id).name);
  }
  return subgraph(g, vs, es);
}

}  // namespace gog
