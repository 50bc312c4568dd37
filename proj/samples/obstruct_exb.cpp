// Forcing certificate for exB at a few windows, then a replay of each.

#include <iostream>

#include "semitop/semitop.hpp"

int main() {
  using namespace semitop;
  for (std::size_t w : {4, 6, 8}) {
    CatalogOptions o;
    o.window        = w;
    auto const inst = build_instance("exB", o);
    auto const res  = escape_certificate(inst);
    auto const* C   = std::get_if<ObstructionCertificate>(&res);
    if (!C) {
      std::cout << "window " << w << ": no obstruction\n";
      return 1;
    }
    auto const& S = inst.presentation.base();
    std::cout << "window " << w << ": " << C->per_v.size() << " neighbourhoods of "
              << S.label(inst.p) << ", replay " << (replay(*C).ok ? "ok" : "FAILED") << "\n";
    auto const& first = C->per_v.front();
    for (auto const& st : first.chain) {
      std::cout << "  pair (" << S.label(st.derived.first) << ", " << S.label(st.derived.second)
                << ") forced by multiplier " << S.label(st.multiplier) << "\n";
    }
  }
  // The same semigroup with every point isolated: nothing is forced out.
  auto const ctl = escape_certificate(build_instance("exB-discrete"));
  std::cout << "discrete control: "
            << (std::holds_alternative<NoObstruction>(ctl) ? "no obstruction" : "obstruction")
            << "\n";
}
