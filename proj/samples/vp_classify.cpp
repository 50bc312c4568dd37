// Every Vagner-Preston right congruence on a few commutative inverse monoids,
// with the shape of the quotient.

#include <iostream>

#include "semitop/semitop.hpp"

int main() {
  using namespace semitop;
  for (auto const& S : {adjoin_zero(cyclic_group(2)), direct_product(cyclic_group(2), min_chain(2)),
                        min_chain(3)}) {
    auto const M = require_inverse(S);
    std::size_t vp = 0;
    for (auto const& rho : enumerate_congruences(S, CongruenceKind::Right)) {
      if (!is_vagner_preston(M, rho)) {
        continue;
      }
      ++vp;
      auto const c = classify_vp_quotient(M, rho);
      std::cout << S.name() << ": " << rho.number_of_classes() << " classes -> "
                << to_string(c.kind) << "\n";
    }
    std::cout << S.name() << ": " << vp << " Vagner-Preston congruences\n";
  }
}
