// Decides the verdict for BS(2,3) and prints the witness.
#include "gog/gog.hpp"

#include <iostream>

int main() {
  const gog::GraphOfGroups g = gog::parse(
      "vertex v free 1\n"
      "edge e from=v to=v img_from=\"v.1^3\" img_to=\"v.1^2\"\n");
  const gog::Verdict v = gog::hhg_verdict(g);
  if (v.hhg) {
    std::cout << "HHG\n";
    return 0;
  }
  const gog::BSWitness& w = *v.witness;
  std::cout << "NotHHG: (" << gog::format_word(g, w.s) << ") " << gog::format_element(g, w.a.vertex, w.a.word)
            << "^" << w.i << " (" << gog::format_word(g, w.s) << ")^-1 = "
            << gog::format_element(g, w.a.vertex, w.a.word) << "^" << w.j << '\n';
}
