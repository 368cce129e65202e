#pragma once

// Exponent-compressed words in free groups: reduction, primitive roots,
// cyclic conjugacy and commensurability of cyclic subgroups.

#include "gog/bigint.hpp"
#include "gog/error.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gog {

// x_gen^exp; generators are 1-based
struct Letter {
  int gen = 1;
  BigInt exp = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

// Adjacent letters on the same generator are merged and zero exponents
// dropped, so a reduced word never has two neighbours with equal `gen`.
inline Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

inline Word free_reduce(const Word& w, int rank) {
  for (const Letter& l : w) {
    if (l.gen < 1 || l.gen > rank) {
      throw Error(ErrorKind::UnknownGenerator,
                  "generator " + std::to_string(l.gen) + " out of range 1.." + std::to_string(rank));
    }
  }
  return free_reduce(w);
}

inline Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

inline Word concat(const Word& a, const Word& b, const Word& c) {
  return concat(concat(a, b), c);
}

// g w g^-1
inline Word conjugate(const Word& g, const Word& w) { return concat(g, w, inverse(g)); }

inline BigInt letter_length(const Word& w) {
  BigInt n = 0;
  for (const Letter& l : w) n += abs(l.exp);
  return n;
}

struct CyclicReduction {
  Word conjugator;
  Word core;
};

// w = conjugator * core * conjugator^-1 where core is empty, a single
// letter, or has distinct first and last generators.
inline CyclicReduction cyclic_reduce(const Word& w) {
  Word core = free_reduce(w);
  Word conj;
  std::size_t lo = 0, hi = core.size();
  Word tail;  // pending letter folded into the end of the core
  while (hi - lo >= 2 && core[lo].gen == core[hi - 1].gen) {
    const Letter first = core[lo];
    const BigInt sum = first.exp + core[hi - 1].exp;
    conj.push_back(first);
    ++lo;
    --hi;
    if (sum != 0) {
      tail.push_back({first.gen, sum});
      break;
    }
  }
  Word mid(core.begin() + static_cast<std::ptrdiff_t>(lo), core.begin() + static_cast<std::ptrdiff_t>(hi));
  mid.insert(mid.end(), tail.begin(), tail.end());
  return {free_reduce(conj), free_reduce(mid)};
}

namespace detail {

// order on letters: generator, then positive before negative, then |exp|
inline int compare_letters(const Letter& a, const Letter& b) {
  if (a.gen != b.gen) return a.gen < b.gen ? -1 : 1;
  const int sa = a.exp < 0, sb = b.exp < 0;
  if (sa != sb) return sa < sb ? -1 : 1;
  const BigInt ma = abs(a.exp), mb = abs(b.exp);
  if (ma != mb) return ma < mb ? -1 : 1;
  return 0;
}

inline Word rotate(const Word& w, std::size_t j) {
  Word out(w.begin() + static_cast<std::ptrdiff_t>(j), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j));
  return out;
}

inline Word prefix(const Word& w, std::size_t j) {
  return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j));
}

}  // namespace detail

// Lexicographic order on compressed words (shorter prefix first).
inline int compare_words(const Word& a, const Word& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = detail::compare_letters(a[i], b[i])) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

inline bool word_less(const Word& a, const Word& b) { return compare_words(a, b) < 0; }

// w == c^q for a cyclically reduced c?  Returns q.
inline std::optional<BigInt> power_exponent(const Word& x, const Word& c) {
  if (x.empty()) return BigInt(0);
  if (c.empty()) return std::nullopt;
  if (c.size() == 1) {
    if (x.size() != 1 || x[0].gen != c[0].gen) return std::nullopt;
    if (x[0].exp % c[0].exp != 0) return std::nullopt;
    return BigInt(x[0].exp / c[0].exp);
  }
  if (x.size() % c.size() != 0) return std::nullopt;
  const std::size_t reps = x.size() / c.size();
  auto repeats = [&](const Word& block) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(x[i] == block[i % block.size()])) return false;
    }
    return true;
  };
  if (repeats(c)) return BigInt(reps);
  if (repeats(inverse(c))) return BigInt(-static_cast<long long>(reps));
  return std::nullopt;
}

// w^n, keeping single-letter cores compressed.
inline Word power(const Word& w, const BigInt& n) {
  if (n == 0 || w.empty()) return {};
  if (n == 1) return free_reduce(w);
  if (n == -1) return inverse(free_reduce(w));
  const auto [h, c] = cyclic_reduce(w);
  Word cn;
  if (c.size() == 1) {
    cn = {{c[0].gen, c[0].exp * n}};
  } else {
    const BigInt m = abs(n);
    if (m > 1000000) {
      throw Error(ErrorKind::Internal, "refusing to materialize a power with " + m.str() + " repetitions");
    }
    const Word block = n > 0 ? c : inverse(c);
    const auto reps = static_cast<std::size_t>(m);
    cn.reserve(block.size() * reps);
    for (std::size_t i = 0; i < reps; ++i) cn.insert(cn.end(), block.begin(), block.end());
  }
  return conjugate(h, cn);
}

// w = conjugator * root^exponent * conjugator^-1 with root the canonical
// (lexicographically least) cyclic rotation of the primitive root or its inverse.
struct RootData {
  Word root;
  Word conjugator;
  BigInt exponent;
};

inline RootData primitive_root(const Word& w) {
  const auto [h, core] = cyclic_reduce(w);
  if (core.empty()) throw Error(ErrorKind::TrivialWord, "trivial word has no root");
  if (core.size() == 1) {
    return {{{core[0].gen, 1}}, h, core[0].exp};
  }
  const std::size_t n = core.size();
  std::size_t d = n;
  for (std::size_t cand = 1; cand < n; ++cand) {
    if (n % cand) continue;
    bool periodic = true;
    for (std::size_t i = 0; i + cand < n && periodic; ++i) periodic = core[i] == core[i + cand];
    if (periodic) {
      d = cand;
      break;
    }
  }
  const Word r0 = detail::prefix(core, d);
  const BigInt p0 = static_cast<long long>(n / d);
  const Word r0inv = inverse(r0);

  Word best = r0;
  Word shift;  // r0 = shift * best^(+-1) * shift^-1
  BigInt p = p0;
  for (std::size_t j = 0; j < d; ++j) {
    Word rot = detail::rotate(r0, j);
    if (compare_words(rot, best) < 0) {
      best = rot;
      shift = detail::prefix(r0, j);
      p = p0;
    }
    Word irot = detail::rotate(r0inv, j);
    if (compare_words(irot, best) < 0) {
      best = irot;
      shift = detail::prefix(r0inv, j);
      p = -p0;
    }
  }
  return {best, concat(h, shift), p};
}

// g with g u g^-1 = v when u and v are conjugate; arbitrary words allowed.
inline std::optional<Word> cyclic_conjugacy(const Word& u, const Word& v) {
  const auto [hu, cu] = cyclic_reduce(u);
  const auto [hv, cv] = cyclic_reduce(v);
  if (cu.size() != cv.size()) return std::nullopt;
  if (cu.empty()) return Word{};
  for (std::size_t j = 0; j < cu.size(); ++j) {
    if (detail::rotate(cu, j) == cv) {
      // cu = P rot P^-1 with P the first j letters
      const Word P = detail::prefix(cu, j);
      return concat(hv, inverse(P), inverse(hu));
    }
  }
  return std::nullopt;
}

// u = conj_u root^p conj_u^-1, v = conj_v root^q conj_v^-1, hence
// (conj_v conj_u^-1)-conjugation carries u^q to v^p.
struct Commensurability {
  Word root;
  Word conj_u;
  BigInt p;
  Word conj_v;
  BigInt q;
  int sign;  // sign(p) * sign(q)
};

inline std::optional<Commensurability> commensurability_data(const Word& u, const Word& v) {
  const RootData ru = primitive_root(u);
  const RootData rv = primitive_root(v);
  if (ru.root != rv.root) return std::nullopt;
  return Commensurability{ru.root, ru.conjugator, ru.exponent, rv.conjugator, rv.exponent,
                          sign(ru.exponent) * sign(rv.exponent)};
}

}  // namespace gog
