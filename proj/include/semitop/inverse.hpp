#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "semitop/semigroup.hpp"

namespace semitop {

  // A finite semigroup together with its (verified unique) inversion.
  class InverseStructure {
   public:
    InverseStructure(FinSemigroup S, std::vector<Elem> inv)
        : _base(std::move(S)), _inv(std::move(inv)), _idem(semitop::idempotents(_base)) {}

    FinSemigroup const& base() const noexcept {
      return _base;
    }

    std::size_t size() const noexcept {
      return _base.size();
    }

    Elem mul(Elem a, Elem b) const noexcept {
      return _base.mul(a, b);
    }

    Elem inv(Elem x) const noexcept {
      return _inv[x];
    }

    std::vector<Elem> const& inverses() const noexcept {
      return _inv;
    }

    Subset const& idempotents() const noexcept {
      return _idem;
    }

    // xx^{-1}
    Elem range_idem(Elem x) const noexcept {
      return mul(x, _inv[x]);
    }

    // x^{-1}x
    Elem domain_idem(Elem x) const noexcept {
      return mul(_inv[x], x);
    }

   private:
    FinSemigroup      _base;
    std::vector<Elem> _inv;
    Subset            _idem;
  };

  // Witness that a semigroup is not inverse: an element with zero or at least
  // two inverses.
  struct NotInverse {
    Elem        witness;
    std::size_t inverse_count;
  };

  // Exhaustive search for y with xyx = x and yxy = y, for every x.
  inline std::variant<InverseStructure, NotInverse>
  inverse_structure(FinSemigroup const& S) {
    std::vector<Elem> inv(S.size());
    for (Elem x = 0; x < S.size(); ++x) {
      std::size_t count = 0;
      for (Elem y = 0; y < S.size(); ++y) {
        if (S.mul(S.mul(x, y), x) == x && S.mul(S.mul(y, x), y) == y) {
          if (count == 0) {
            inv[x] = y;
          }
          ++count;
        }
      }
      if (count != 1) {
        return NotInverse{x, count};
      }
    }
    return InverseStructure(S, std::move(inv));
  }

  inline InverseStructure require_inverse(FinSemigroup const& S) {
    auto res = inverse_structure(S);
    if (auto const* ni = std::get_if<NotInverse>(&res)) {
      throw DomainError("not an inverse semigroup: element " + S.label(ni->witness)
                        + " has " + std::to_string(ni->inverse_count)
                        + " inverses");
    }
    return std::get<InverseStructure>(std::move(res));
  }

  struct CliffordResult {
    bool                clifford = true;
    std::optional<Elem> witness;  // first x with xx^{-1} != x^{-1}x
  };

  inline CliffordResult is_clifford(InverseStructure const& S) {
    for (Elem x = 0; x < S.size(); ++x) {
      if (S.range_idem(x) != S.domain_idem(x)) {
        return {false, x};
      }
    }
    return {};
  }

  // H_e = {x : xx^{-1} = e = x^{-1}x}, verified to be a group with identity e.
  inline Subset maximal_subgroup(InverseStructure const& S, Elem e) {
    if (!S.base().is_idempotent(e)) {
      throw DomainError("maximal_subgroup: " + S.base().label(e)
                        + " is not idempotent");
    }
    Subset H(S.size());
    for (Elem x = 0; x < S.size(); ++x) {
      if (S.range_idem(x) == e && S.domain_idem(x) == e) {
        H.set(x);
      }
    }
    for (auto x : elements_of(H)) {
      if (!H.test(S.inv(x)) || S.mul(x, e) != x || S.mul(e, x) != x) {
        throw TheoremViolation("H_e is not closed under inversion");
      }
      for (auto y : elements_of(H)) {
        if (!H.test(S.mul(x, y))) {
          throw TheoremViolation("H_e is not closed under multiplication");
        }
      }
    }
    return H;
  }

}  // namespace semitop
