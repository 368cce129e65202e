#pragma once

// JSON rendering of results.  Requires nlohmann/json.  Objects are emitted
// with sorted keys; integers beyond 2^53 in magnitude become decimal strings.

#include "gog/balance.hpp"
#include "gog/certify.hpp"
#include "gog/conj_graph.hpp"
#include "gog/parametrize.hpp"
#include "gog/text_format.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace gog::json {

using nlohmann::json;

inline json integer(const BigInt& x) {
  static const BigInt limit = BigInt(1) << 53;
  if (abs(x) <= limit) return static_cast<long long>(x);
  return x.str();
}

inline json error(const Error& e) {
  return {{"error", to_string(e.kind())}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}};
}

inline std::string arc_label(const GraphOfGroups& g, const RatioGroupoid& gr, std::size_t a) {
  const Arc& arc = gr.arcs[a];
  if (arc.kind == Arc::Kind::Flip) return g.vertex(arc.vertex).name + ".s";
  return g.edge(arc.edge).name + (arc.direction > 0 ? "" : "^-1");
}

inline json cycle(const GraphOfGroups& g, const RatioGroupoid& gr, const Walk& w) {
  json out = json::array();
  for (std::size_t a : w) out.push_back(arc_label(g, gr, a));
  return out;
}

inline json edge_verdict(const GraphOfGroups& g, const RatioGroupoid& gr, EdgeId e, const BalanceVerdict& v) {
  json out{{"id", g.edge(e).name}, {"verdict", v.balanced ? "Balanced" : "Unbalanced"}};
  if (!v.balanced) {
    out["modulus"] = to_string(v.modulus);
    out["cycle"] = cycle(g, gr, v.cycle);
  }
  return out;
}

inline json phi(const GraphOfGroups& delta, const LinearParametrization& p) {
  json out = json::object();
  auto pair = [](const DihedralElement& d) { return json::array({d.eps, integer(d.k)}); };
  for (VertexId v = 0; v < delta.vertex_count(); ++v) {
    const Vertex& vx = delta.vertex(v);
    if (vx.kind.is_free()) {
      out[vx.name + ".1"] = pair(p.vertex_images[v][0]);
    } else {
      out[vx.name + ".r"] = pair(p.vertex_images[v][0]);
      out[vx.name + ".s"] = pair(p.vertex_images[v][1]);
    }
  }
  for (EdgeId e = 0; e < delta.edge_count(); ++e) {
    if (!delta.in_tree(e)) out[delta.edge(e).name + ".t"] = pair(p.stable_images[e]);
  }
  return out;
}

inline json witness(const GraphOfGroups& g, const BSWitness& w) {
  return {{"a", format_element(g, w.a.vertex, w.a.word)},
          {"s", format_word(g, w.s)},
          {"i", integer(w.i)},
          {"j", integer(w.j)}};
}

inline json transcript(const BSWitness& w) {
  return {{"reduced", w.transcript}, {"pinches", w.pinches}};
}

// detailed: adds the conjugacy graph text and member edges to each certificate
inline json verdict(const GraphOfGroups& g, const Verdict& v, bool detailed = false) {
  json out;
  if (v.hhg) {
    out["status"] = "HHG";
    json certs = json::array();
    bool ok = true;
    for (const Certificate& c : v.certificates) {
      json cj{{"class", c.class_index}, {"phi", phi(c.delta.graph, c.phi)}};
      if (detailed) {
        cj["graph"] = serialize(c.delta.graph);
        json members = json::array();
        for (const Edge& e : c.delta.graph.edges()) members.push_back(e.name);
        cj["edges"] = members;
      }
      ok = ok && verify_parametrization(c.delta.graph, c.phi).ok;
      certs.push_back(cj);
    }
    out["certificates"] = certs;
    out["verified"] = ok;
  } else {
    out["status"] = "NotHHG";
    BSWitness w = *v.witness;
    out["verified"] = verify_witness(g, w);
    out["witness"] = witness(g, w);
    if (detailed) {
      out["edge"] = g.edge(v.edge).name;
      out["transcript"] = transcript(w);
    }
  }
  return out;
}

inline json distortion(const GraphOfGroups& g, const std::string& edge, const DistortionCertificate& d) {
  json rows = json::array();
  bool ok = d.witness.verified;
  for (const DistortionRow& r : d.rows) {
    rows.push_back({{"k", r.k},
                    {"exponent", integer(r.exponent)},
                    {"target", integer(r.target)},
                    {"length_bound", integer(r.length_bound)},
                    {"ratio", to_string(ratio(r.length_bound, abs(r.target)))},
                    {"verified", r.verified}});
    ok = ok && r.verified;
  }
  return {{"status", "NotHHG"},
          {"edge", edge},
          {"witness", witness(g, d.witness)},
          {"transcript", transcript(d.witness)},
          {"table", rows},
          {"verified", ok}};
}

}  // namespace gog::json
