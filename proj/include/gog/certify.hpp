#pragma once

// Almost Baumslag-Solitar witnesses s a^i s^-1 = a^j with |i| != |j|, and
// distortion tables for the iterated relation.

#include "gog/balance.hpp"
#include "gog/word_engine.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace gog {

struct BSWitness {
  VertexWord a;  // power of a primitive root
  PathWord s;
  BigInt i;
  BigInt j;
  // reduced form of s a^i s^-1 a^-j and the number of pinches used
  std::string transcript;
  std::size_t pinches = 0;
  bool verified = false;
};

inline PathWord relator(const GraphOfGroups& g, const VertexWord& a, const PathWord& s, const BigInt& i,
                        const BigInt& j) {
  const VertexKind& k = g.kind(a.vertex);
  const PathWord ai = path_word({a.vertex, raise(k, a.word, i)});
  const PathWord aj = path_word({a.vertex, raise(k, a.word, -j)});
  return multiply(g, multiply(g, s, ai), inverse(g, s), aj);
}

// Recomputes the transcript from scratch.
inline bool verify_witness(const GraphOfGroups& g, BSWitness& w) {
  std::vector<PinchStep> log;
  const PathWord r = britton_reduce(g, closed(g, relator(g, w.a, w.s, w.i, w.j)), &log);
  w.transcript = format_word(g, r, true);
  w.pinches = log.size();
  w.verified = abs(w.i) != abs(w.j) && !w.a.word.empty() && r.letters.empty() && r.elements[0].empty();
  return w.verified;
}

inline BSWitness almost_bs_witness(const GraphOfGroups& g, const RatioGroupoid& gr, const BalanceVerdict& v) {
  if (v.balanced || v.cycle.empty()) throw Error(ErrorKind::NoWitness, "graph is balanced");
  const GroupoidNode& base = gr.nodes[gr.arcs[v.cycle.front()].from];
  const Rational w = walk_weight(gr, v.cycle);
  const BigInt l = walk_divisibility(gr, v.cycle);
  const BigInt q = denominator(w);
  const BigInt m = l / gcd(l, q);
  BSWitness out;
  out.a = {base.vertex, raise(g.kind(base.vertex), base.root, m)};
  out.s = walk_conjugator(g, gr, v.cycle);
  out.i = q;
  out.j = numerator(w);
  verify_witness(g, out);
  return out;
}

inline BSWitness almost_bs_witness(const GraphOfGroups& g, const BalanceVerdict& v) {
  return almost_bs_witness(g, build_groupoid(g), v);
}

struct DistortionRow {
  long k = 0;
  BigInt exponent;      // i^k
  BigInt target;        // j^k
  BigInt length_bound;  // 2k len(s) + |i|^k len(a)
  bool verified = false;
};

struct DistortionCertificate {
  BSWitness witness;  // oriented so that |j| > |i|
  std::vector<DistortionRow> rows;
};

inline DistortionCertificate distortion_certificate(const GraphOfGroups& g, const BSWitness& w, long depth) {
  DistortionCertificate out;
  out.witness = w;
  BSWitness& x = out.witness;
  if (abs(x.j) < abs(x.i)) {
    x.s = inverse(g, x.s);
    std::swap(x.i, x.j);
  }
  if (!verify_witness(g, x)) throw Error(ErrorKind::NoWitness, "witness does not verify");
  const VertexKind& k = g.kind(x.a.vertex);
  const BigInt len_s = letter_length(x.s);
  const BigInt len_a = letter_length(x.a.word);
  BigInt ik = 1, jk = 1;
  PathWord sk = identity_word(x.s.base);
  for (long step = 1; step <= depth; ++step) {
    ik *= x.i;
    jk *= x.j;
    sk = multiply(g, sk, x.s);
    const PathWord lhs = multiply(g, sk, path_word({x.a.vertex, raise(k, x.a.word, ik)}), inverse(g, sk));
    const PathWord rhs = path_word({x.a.vertex, raise(k, x.a.word, jk)});
    DistortionRow row;
    row.k = step;
    row.exponent = ik;
    row.target = jk;
    row.length_bound = 2 * step * len_s + abs(ik) * len_a;
    row.verified = are_equal(g, lhs, rhs);
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace gog
