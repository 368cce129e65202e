// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "gog/gog.hpp"
#include "gog/json_output.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_graphs.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string verdict_json(const gog::GraphOfGroups& g) { return gog::json::verdict(g, gog::hhg_verdict(g)).dump(); }

gog::GraphOfGroups rename_vertices(const gog::GraphOfGroups& g, const std::vector<std::string>& names) {
  auto vs = gog::vertex_decls(g);
  auto es = gog::edge_decls(g);
  for (auto& e : es) {
    e.from = names[g.vertex_id(e.from)];
    e.to = names[g.vertex_id(e.to)];
  }
  for (std::size_t i = 0; i < vs.size(); ++i) vs[i].name = names[i];
  return gog::GraphOfGroups::build(vs, es);
}

// text with vertex and edge lines in random order, parsed back
gog::GraphOfGroups reorder(gogtest::Rng& rng, const gog::GraphOfGroups& g) {
  std::istringstream in(gog::serialize(g));
  std::vector<std::string> vlines, elines;
  for (std::string line; std::getline(in, line);) (line.rfind("vertex", 0) == 0 ? vlines : elines).push_back(line);
  std::shuffle(vlines.begin(), vlines.end(), rng);
  std::shuffle(elines.begin(), elines.end(), rng);
  std::string text;
  for (const auto& l : vlines) text += l + "\n";
  for (const auto& l : elines) text += l + "\n";
  return gog::parse(text);
}

// vertex names n0, n1, ... chosen to minimize the serialized text
gog::GraphOfGroups canonical(const gog::GraphOfGroups& g) {
  std::vector<std::size_t> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  gog::GraphOfGroups out = g;
  do {
    std::vector<std::string> names(g.vertex_count());
    for (std::size_t i = 0; i < perm.size(); ++i) names[perm[i]] = "n" + std::to_string(i);
    auto h = rename_vertices(g, names);
    const std::string text = gog::serialize(h);
    if (best.empty() || text < best) {
      best = text;
      out = std::move(h);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// ---- criteria ------------------------------------------------------------

Outcome criterion1() {
  const auto g = gogtest::fixture("f2");
  const auto classes = gog::edge_classes(g);
  if (classes.size() != 1) return {false, "expected one edge class"};
  const auto cg = gog::build_conjugacy_graph(g, classes[0]);
  const auto& d = cg.graph;
  if (d.vertex_count() != 1 || d.edge_count() != 1 || !d.kind(0).is_free() || d.kind(0).rank != 1) {
    return {false, "conjugacy graph is not a single Free(1) loop"};
  }
  std::vector<gog::BigInt> exps{gog::abs(d.edge(0).img_from.front().exp), gog::abs(d.edge(0).img_to.front().exp)};
  std::sort(exps.begin(), exps.end());
  if (exps != std::vector<gog::BigInt>{2, 3}) return {false, "exponent multiset is not {2,3}"};
  if (!gog::verify_provenance(g, cg)) return {false, "provenance failed"};
  const auto v = gog::hhg_verdict(g);
  if (v.hhg || !v.witness) return {false, "verdict is not NotHHG"};
  const auto& w = *v.witness;
  const std::string s = gog::format_word(g, w.s), a = gog::format_element(g, w.a.vertex, w.a.word);
  if (!w.verified || a != "v.1" || s != "v.2^-1 e.t" || w.i != 3 || w.j != 2) {
    return {false, "witness " + a + " " + s + " " + gog::to_string(w.i) + " " + gog::to_string(w.j)};
  }
  if (!gog::is_trivial(g, gog::parse_path_word(g, "v.2^-1 e.t v.1^3 e.t^-1 v.2 v.1^-2"))) {
    return {false, "s a^3 s^-1 a^-2 does not reduce to the identity"};
  }
  return {true, "Free(1) loop {2,3}; witness a=v.1 s=v.2^-1 e.t i=3 j=2 verified"};
}

Outcome criterion2() {
  int hhg = 0, not_hhg = 0;
  for (int m = -6; m <= 6; ++m) {
    for (int n = -6; n <= 6; ++n) {
      if (m == 0 || n == 0) continue;
      const auto g = gogtest::baumslag_solitar(m, n);
      const auto v = gog::hhg_verdict(g);
      if (v.hhg != (std::abs(m) == std::abs(n))) {
        return {false, "BS(" + std::to_string(m) + "," + std::to_string(n) + ") has the wrong verdict"};
      }
      if (v.hhg) {
        ++hhg;
        for (const auto& c : v.certificates) {
          if (!gog::verify_parametrization(c.delta.graph, c.phi)) return {false, "certificate rejected"};
        }
      } else {
        ++not_hhg;
        gog::BSWitness w = *v.witness;
        if (!gog::verify_witness(g, w) || !w.transcript.empty()) return {false, "witness transcript not empty"};
      }
    }
  }
  return {true, std::to_string(hhg) + " HHG, " + std::to_string(not_hhg) + " NotHHG"};
}

Outcome criterion3() {
  gogtest::Rng rng(3003);
  for (int trial = 0; trial < 200; ++trial) {
    try {
      const auto g = gogtest::random_graph(rng, {6, 5, 9, 35, 0, true});
      if (!gog::group_balanced(g).balanced) return {false, "unbalanced tree:\n" + gog::serialize(g)};
      const auto v = gog::hhg_verdict(g);
      if (!v.hhg) return {false, "NotHHG tree:\n" + gog::serialize(g)};
      for (const auto& c : v.certificates) {
        if (!gog::verify_parametrization(c.delta.graph, c.phi)) return {false, "certificate rejected"};
      }
    } catch (const std::exception& e) {
      return {false, std::string("exception: ") + e.what()};
    }
  }
  return {true, "200 trees balanced and HHG"};
}

struct Criterion4Data {
  std::vector<gog::GraphOfGroups> instances;
  int conclusive = 0, unbalanced = 0, vacuous = 0, within_bounds = 0, budget = 0;
};

Outcome criterion4(Criterion4Data& data) {
  gogtest::Rng rng(4004);
  const gog::SearchBounds bounds{4, 4, 300000};
  for (int trial = 0; trial < 100; ++trial) data.instances.push_back(gogtest::random_graph(rng, {4, 5, 5, 25, 15, false}));
  for (const auto& g : data.instances) {
    const auto gr = gog::build_groupoid(g);
    for (gog::EdgeId e = 0; e < g.edge_count(); ++e) {
      gog::OracleResult o;
      try {
        o = gog::brute_force_balance_oracle(g, e, bounds);
      } catch (const gog::Error& err) {
        if (err.kind() != gog::ErrorKind::SearchBudgetExceeded) throw;
        ++data.budget;
        continue;
      }
      const auto v = gog::edge_balanced(g, gr, e);
      switch (o.outcome) {
        case gog::OracleResult::Outcome::Vacuous:
          ++data.conclusive;
          ++data.vacuous;
          if (!v.balanced) return {false, "vacuous edge judged unbalanced:\n" + gog::serialize(g)};
          break;
        case gog::OracleResult::Outcome::Unbalanced: {
          ++data.conclusive;
          ++data.unbalanced;
          if (v.balanced) return {false, "oracle found unbalanced edge " + g.edge(e).name + ":\n" + gog::serialize(g)};
          const auto m = g.attachment_root(e, gog::Side::Source).exponent;
          const auto n = g.attachment_root(e, gog::Side::Target).exponent;
          if (!gogtest::ratio_achievable(gr, e, gog::ratio(m * o.j, n * o.i))) {
            return {false, "no groupoid cycle with modulus " + gog::to_string(gog::ratio(o.i, o.j))};
          }
          break;
        }
        case gog::OracleResult::Outcome::BalancedWithinBounds:
          ++data.within_bounds;
          break;
      }
    }
  }
  std::ostringstream d;
  d << data.instances.size() << " instances; conclusive " << data.conclusive << " (" << data.unbalanced
    << " unbalanced, " << data.vacuous << " vacuous), inconclusive " << data.within_bounds << " within bounds, "
    << data.budget << " over node budget";
  if (data.unbalanced == 0) return {false, d.str() + "; no conclusive Unbalanced edge"};
  return {true, d.str()};
}

Outcome criterion5() {
  gogtest::Rng rng(5005);
  int trivial = 0, agree = 0, budget = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = gogtest::random_graph(rng, {3, 3, 4, 25, 20, false});
    gog::PathWord w = trial % 2 ? gogtest::random_trivial_word(rng, g, 0, 4) : gogtest::random_closed_word(rng, g, 0, 8, 4);
    if (gog::syllable_count(w) > 8) w = gogtest::random_closed_word(rng, g, 0, 8, 4);
    if (!gog::is_trivial(g, gog::multiply(g, w, gog::inverse(g, w)))) return {false, "w w^-1 not trivial"};
    gogtest::RewritingOracle oracle(g, 10, 500000);
    const auto o = oracle.run(w);
    if (o == gogtest::RewriteOutcome::BudgetExceeded) {
      ++budget;
      continue;
    }
    const bool expected = o == gogtest::RewriteOutcome::Trivial;
    if (gog::is_trivial(g, w) != expected) {
      return {false, "disagreement on " + gog::format_word(g, w, true) + " over\n" + gog::serialize(g)};
    }
    ++agree;
    trivial += expected;
  }
  std::ostringstream d;
  d << agree << "/500 agree (" << trivial << " trivial), " << budget << " over the rewriting state cap";
  return {budget == 0, d.str()};
}

Outcome criterion6(const Criterion4Data& data) {
  int edges = 0, mismatches = 0, bridge_mismatches = 0, classes = 0, class_mismatches = 0;
  std::string example;
  for (const auto& g : data.instances) {
    const auto gr = gog::build_groupoid(g);
    const auto cls = gog::edge_classes(g, gr);
    std::vector<bool> delta_unbalanced;
    for (const auto& c : cls) delta_unbalanced.push_back(!gog::group_balanced(gog::build_conjugacy_graph(g, gr, c).graph).balanced);
    for (std::size_t c = 0; c < cls.size(); ++c) {
      ++classes;
      bool some = false;
      for (gog::EdgeId e : cls[c].edges) some = some || !gog::edge_balanced(g, gr, e).balanced;
      if (some != delta_unbalanced[c]) ++class_mismatches;
    }
    for (gog::EdgeId e = 0; e < g.edge_count(); ++e) {
      ++edges;
      const bool edge_unbalanced = !gog::edge_balanced(g, gr, e).balanced;
      const bool delta = delta_unbalanced[gog::class_of_edge(cls, e)];
      if (edge_unbalanced == delta) continue;
      ++mismatches;
      const auto p = gog::detail::potentials(gr, e);
      const bool bridge = p.component[gr.node_of(e, gog::Side::Target)] != p.component[gr.node_of(e, gog::Side::Source)];
      if (bridge && !edge_unbalanced) ++bridge_mismatches;
      if (example.empty()) example = "edge " + g.edge(e).name + " of\n" + gog::serialize(g);
    }
  }
  std::ostringstream d;
  d << edges << " edges, " << mismatches << " disagree";
  if (mismatches) {
    d << " (" << bridge_mismatches << " are balanced edges whose groupoid nodes separate once the edge is removed,"
      << " inside an unbalanced class)";
  }
  d << "; class form (conjugacy graph unbalanced iff some member edge unbalanced): " << classes - class_mismatches
    << "/" << classes << " classes agree";
  if (mismatches) d << "\n         first disagreement: " << example;
  return {mismatches == 0, d.str()};
}

Outcome criterion7() {
  const auto g = gogtest::fixture("bs32");
  const auto w = *gog::hhg_verdict(g).witness;
  const auto d = gog::distortion_certificate(g, w, 10);
  if (d.witness.i != 2 || d.witness.j != 3) return {false, "witness is not t a^2 t^-1 = a^3"};
  gog::Rational prev = -1;
  std::ostringstream table;
  for (const auto& r : d.rows) {
    if (!r.verified) return {false, "row " + std::to_string(r.k) + " did not reduce"};
    const gog::BigInt expected_bound = gog::BigInt(2 * r.k) + gog::numerator(gog::pow(gog::Rational(2), r.k));
    if (r.length_bound != expected_bound || r.target != gog::numerator(gog::pow(gog::Rational(3), r.k))) {
      return {false, "row " + std::to_string(r.k) + " has the wrong bound"};
    }
    const gog::Rational q = gog::ratio(r.length_bound, r.target);
    if (r.k >= 3 && !(q < prev)) return {false, "ratio not decreasing at k=" + std::to_string(r.k)};
    prev = q;
    table << (r.k > 1 ? " " : "") << gog::to_string(q);
  }
  return {true, "k=1..10 verified; ratios " + table.str()};
}

Outcome criterion8() {
  gogtest::Rng rng(8008);
  int rejected = 0, accepted = 0, mutations = 0;
  std::vector<gog::GraphOfGroups> pool;
  for (const char* name : {"trefoil", "klein"}) pool.push_back(gogtest::fixture(name));
  for (int i = 0; i < 30; ++i) pool.push_back(gogtest::random_graph(rng, {4, 3, 5, 35, 0, true}));
  pool.push_back(gog::parse("vertex d dihedral\nvertex x free 1\n"
                            "edge a from=x to=d img_from=\"x.1^2\" img_to=\"d.r^3\"\n"
                            "edge l from=d to=d img_from=\"d.s d.r^6 d.s\" img_to=\"d.r^6\"\n"));
  auto affine_image = [](const gog::LinearParametrization& phi, const gog::GraphOfGroups& d, gog::VertexId v,
                         const gog::Word& w) {
    gogtest::Affine out;
    for (const auto& l : w) {
      const std::size_t slot = d.kind(v).is_free() ? 0 : (l.gen == gog::kDihedralR ? 0 : 1);
      out = gogtest::then(out, gogtest::affine_power(gogtest::affine(phi.vertex_images[v][slot]),
                                                     static_cast<long long>(l.exp)));
    }
    return out;
  };
  auto valid = [&](const gog::GraphOfGroups& d, const gog::LinearParametrization& phi) {
    for (gog::VertexId v = 0; v < d.vertex_count(); ++v) {
      const auto r = gogtest::affine(phi.vertex_images[v][0]);
      if (r.sign != 1 || r.shift == 0) return false;
      if (d.kind(v).is_dihedral()) {
        const auto s = gogtest::affine(phi.vertex_images[v][1]);
        if (!gogtest::identity(gogtest::then(s, s))) return false;
        if (!gogtest::same(gogtest::then(gogtest::then(s, r), s), gogtest::affine_inverse(r))) return false;
      }
    }
    for (gog::EdgeId e = 0; e < d.edge_count(); ++e) {
      const auto& edge = d.edge(e);
      const auto t = gogtest::affine(phi.stable_images[e]);
      if (d.in_tree(e) && !gogtest::identity(t)) return false;
      const auto x = affine_image(phi, d, edge.target, edge.img_to);
      const auto y = affine_image(phi, d, edge.source, edge.img_from);
      if (!gogtest::same(gogtest::then(gogtest::then(t, x), gogtest::affine_inverse(t)), y)) return false;
    }
    return true;
  };
  for (std::size_t i = 0; mutations < 100; i = (i + 1) % pool.size()) {
    const auto& g = pool[i];
    const auto v = gog::hhg_verdict(g);
    for (const auto& c : v.certificates) {
      if (mutations >= 100) break;
      const auto& d = c.delta.graph;
      if (!gog::verify_parametrization(d, c.phi)) return {false, "original rejected"};
      auto bad = c.phi;
      const int slots = static_cast<int>(d.vertex_count() + d.edge_count());
      const int pick = gogtest::uniform(rng, 0, slots - 1);
      gog::DihedralElement* target;
      if (pick < static_cast<int>(d.vertex_count())) {
        auto& im = bad.vertex_images[pick];
        target = &im[gogtest::uniform(rng, 0, static_cast<int>(im.size()) - 1)];
      } else {
        target = &bad.stable_images[pick - d.vertex_count()];
      }
      target->k += gogtest::uniform(rng, 0, 1) ? 1 : -1;
      ++mutations;
      const bool expected = valid(d, bad);
      if (gog::verify_parametrization(d, bad).ok != expected) {
        return {false, std::string(expected ? "rejected a valid" : "accepted an invalid") + " mutation of\n" +
                           gog::serialize(d)};
      }
      (expected ? accepted : rejected) += 1;
    }
  }
  return {rejected > 0, std::to_string(mutations) + " mutations: " + std::to_string(rejected) + " rejected, " +
                            std::to_string(accepted) + " still valid and accepted; originals accepted"};
}

Outcome criterion9() {
  gogtest::Rng rng(9009);
  const auto& names = gogtest::fixture_names();
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = gogtest::fixture(names[trial % names.size()]);
    const std::string base = verdict_json(g);
    // edge and vertex line reordering alone
    const auto shuffled = reorder(rng, g);
    if (verdict_json(shuffled) != base) return {false, "reordering changed the JSON of " + names[trial % names.size()]};
    // relabeling plus reordering
    std::vector<std::string> fresh;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) fresh.push_back("q" + std::to_string(gogtest::uniform(rng, 0, 999)) + "x" + std::to_string(i));
    std::shuffle(fresh.begin(), fresh.end(), rng);
    const auto h = reorder(rng, rename_vertices(g, fresh));
    const auto vg = gog::hhg_verdict(g), vh = gog::hhg_verdict(h);
    if (vg.hhg != vh.hhg) return {false, "status changed under relabeling"};
    if (vg.hhg) {
      if (vg.certificates.size() != vh.certificates.size()) return {false, "certificate count changed"};
      for (std::size_t c = 0; c < vg.certificates.size(); ++c) {
        const auto& a = vg.certificates[c];
        const auto& b = vh.certificates[c];
        if (!gog::verify_parametrization(b.delta.graph, b.phi)) return {false, "relabeled certificate rejected"};
        // same derived graph up to renaming, same |k| per derived vertex
        if (a.delta.graph.edge_count() != b.delta.graph.edge_count()) return {false, "class changed"};
        std::multiset<std::string> sa, sb;
        for (gog::VertexId v = 0; v < a.delta.graph.vertex_count(); ++v) {
          sa.insert(g.vertex(a.delta.vertices[v].origin).name + ":" + gog::to_string(gog::abs(a.phi.vertex_images[v][0].k)));
        }
        for (gog::VertexId v = 0; v < b.delta.graph.vertex_count(); ++v) {
          const auto it = std::find(fresh.begin(), fresh.end(), h.vertex(b.delta.vertices[v].origin).name);
          const auto origin = static_cast<gog::VertexId>(it - fresh.begin());
          sb.insert(g.vertex(origin).name + ":" + gog::to_string(gog::abs(b.phi.vertex_images[v][0].k)));
        }
        if (sa != sb) return {false, "certificate potentials differ under relabeling"};
      }
    } else {
      gog::BSWitness w = *vh.witness;
      if (!gog::verify_witness(h, w)) return {false, "relabeled witness rejected"};
      if (g.edge(vg.edge).name != h.edge(vh.edge).name) return {false, "witness edge changed"};
    }
    if (verdict_json(canonical(g)) != verdict_json(canonical(h))) return {false, "canonical JSON differs"};
  }
  return {true, "20 relabelings of the fixtures"};
}

}  // namespace

int main() {
  Criterion4Data c4;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 F2 example end to end", criterion1},
      {"2 Baumslag-Solitar family |m|,|n| <= 6", criterion2},
      {"3 trees of 2-ended groups are balanced", criterion3},
      {"4 edge balance agrees with brute-force oracle", [&] { return criterion4(c4); }},
      {"5 word problem agrees with rewriting BFS", criterion5},
      {"6 edge balance transfers to the conjugacy graph", [&] { return criterion6(c4); }},
      {"7 distortion table for t a^2 t^-1 = a^3", criterion7},
      {"8 parametrization verifier under mutations", criterion8},
      {"9 determinism under relabeling and reordering", criterion9},
  };
  const std::vector<double> limits = {1, 5, 10, 60, 60, 60, 1, 60, 60};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    if (secs > limits[i]) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << criteria[i].first << " [" << secs << " s]\n         "
              << o.detail << "\n";
  }
  return failures ? 1 : 0;
}
