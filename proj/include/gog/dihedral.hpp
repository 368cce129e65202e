#pragma once

// The infinite dihedral group <r, s | s^2, srs = r^-1>; elements s^eps r^k.

#include "gog/bigint.hpp"
#include "gog/free_words.hpp"

#include <string>
#include <variant>

namespace gog {

// generator indices used for dihedral vertex words
inline constexpr int kDihedralR = 1;
inline constexpr int kDihedralS = 2;

struct DihedralElement {
  int eps = 0;  // 0 or 1
  BigInt k = 0;

  friend bool operator==(const DihedralElement&, const DihedralElement&) = default;

  bool is_identity() const { return eps == 0 && k == 0; }
};

inline DihedralElement dihedral_r(const BigInt& k = 1) { return {0, k}; }
inline DihedralElement dihedral_s() { return {1, 0}; }

// (e1,k1)(e2,k2) = (e1 xor e2, (-1)^e2 k1 + k2)
inline DihedralElement dmul(const DihedralElement& a, const DihedralElement& b) {
  return {a.eps ^ b.eps, (b.eps ? BigInt(-a.k) : a.k) + b.k};
}

inline DihedralElement dinv(const DihedralElement& a) {
  if (a.eps) return a;
  return {0, -a.k};
}

inline DihedralElement dpow(const DihedralElement& a, const BigInt& n) {
  if (a.eps == 0) return {0, a.k * n};
  if (n % 2 == 0) return {};
  return a;
}

inline DihedralElement dihedral_from_word(const Word& w) {
  DihedralElement out;
  for (const Letter& l : w) {
    if (l.gen == kDihedralR) {
      out = dmul(out, {0, l.exp});
    } else if (l.gen == kDihedralS) {
      out = dmul(out, dpow(dihedral_s(), l.exp));
    } else {
      throw Error(ErrorKind::UnknownGenerator, "dihedral letters are r and s");
    }
  }
  return out;
}

// normal form s^eps r^k as a word
inline Word dihedral_to_word(const DihedralElement& a) {
  Word out;
  if (a.eps) out.push_back({kDihedralS, 1});
  if (a.k != 0) out.push_back({kDihedralR, a.k});
  return out;
}

inline std::string to_string(const DihedralElement& a) {
  return "(" + std::to_string(a.eps) + "," + a.k.str() + ")";
}

struct CyclicSubgroup {
  BigInt k;  // <r^k>
};

struct DihedralTypeSubgroup {
  BigInt k;  // <r^k, s r^l>
  BigInt l;
};

using DihedralSubgroup = std::variant<CyclicSubgroup, DihedralTypeSubgroup>;

inline BigInt subgroup_index(const DihedralSubgroup& h) {
  if (const auto* c = std::get_if<CyclicSubgroup>(&h)) {
    if (c->k == 0) throw Error(ErrorKind::Internal, "subgroup <r^0> has infinite index");
    return 2 * abs(c->k);
  }
  const auto& d = std::get<DihedralTypeSubgroup>(h);
  if (d.k == 0) throw Error(ErrorKind::Internal, "subgroup with k = 0 has infinite index");
  return abs(d.k);
}

}  // namespace gog
