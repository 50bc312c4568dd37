// I2 three ways: Wagner-Preston, then into N^N, then the Cayley map.

#include <iostream>

#include "semitop/semitop.hpp"

namespace {
  void show(semitop::RepresentationMap const& R) {
    auto const rep = semitop::verify_embedding(R, semitop::TopSpec::discrete(R.source.size()));
    std::cout << R.construction << " -> " << semitop::to_string(R.target)
              << (rep.ok() ? ": verified\n" : ": FAILED\n");
    for (auto const& f : rep.failures) {
      std::cout << "  " << f << "\n";
    }
  }
}  // namespace

int main() {
  using namespace semitop;
  auto const I2 = symmetric_inverse_monoid(2);
  auto const wp = wagner_preston(require_inverse(I2.semigroup));
  show(wp);
  show(embcl_embed(I2));
  show(cayley_right_regular(I2.semigroup));

  for (Elem a = 0; a < I2.semigroup.size(); ++a) {
    std::cout << I2.semigroup.label(a) << " -> "
              << to_string(std::get<PartialPerm>(wp.images[a])) << "\n";
  }
  std::cout << dump(to_json(embcl_map(I2.elements[2])));
}
