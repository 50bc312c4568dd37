#pragma once

// Independent brute-force oracles. Deliberately naive: they enumerate the
// objects a definition quantifies over and test it literally.

#include <cstdint>
#include <functional>
#include <vector>

#include <algorithm>
#include <optional>

#include "semitop/semigroup.hpp"
#include "semitop/topo.hpp"

namespace oracle {

  using semitop::Elem;
  using semitop::FinSemigroup;

  // All set partitions of [0, n) as restricted growth strings, lexicographic.
  inline std::vector<std::vector<Elem>> all_partitions(std::size_t n) {
    std::vector<std::vector<Elem>> out;
    std::vector<Elem>              rgs(n, 0);
    std::function<void(std::size_t, Elem)> rec = [&](std::size_t i, Elem mx) {
      if (i == n) {
        out.push_back(rgs);
        return;
      }
      for (Elem c = 0; c <= mx + 1; ++c) {
        rgs[i] = c;
        rec(i + 1, std::max(mx, c));
      }
    };
    if (n == 0) {
      return {{}};
    }
    rgs[0] = 0;
    rec(1, 0);
    return out;
  }

  inline bool right_stable(FinSemigroup const& S, std::vector<Elem> const& p) {
    for (Elem a = 0; a < S.size(); ++a) {
      for (Elem b = 0; b < S.size(); ++b) {
        for (Elem s = 0; s < S.size(); ++s) {
          if (p[a] == p[b] && p[S.mul(a, s)] != p[S.mul(b, s)]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  inline bool left_stable(FinSemigroup const& S, std::vector<Elem> const& p) {
    for (Elem a = 0; a < S.size(); ++a) {
      for (Elem b = 0; b < S.size(); ++b) {
        for (Elem s = 0; s < S.size(); ++s) {
          if (p[a] == p[b] && p[S.mul(s, a)] != p[S.mul(s, b)]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  // Every partition passing the stability filter, lexicographic.
  inline std::vector<std::vector<Elem>> congruences_by_filter(FinSemigroup const& S,
                                                              bool two_sided) {
    std::vector<std::vector<Elem>> out;
    for (auto const& p : all_partitions(S.size())) {
      if (right_stable(S, p) && (!two_sided || left_stable(S, p))) {
        out.push_back(p);
      }
    }
    return out;
  }

  // Least partition (by filter) containing the given pairs.
  inline std::vector<Elem> least_by_filter(FinSemigroup const&                       S,
                                           std::vector<std::pair<Elem, Elem>> const& seeds,
                                           bool two_sided) {
    std::vector<Elem> best;
    std::size_t       best_classes = 0;
    for (auto const& p : congruences_by_filter(S, two_sided)) {
      bool ok = true;
      for (auto [a, b] : seeds) {
        ok = ok && p[a] == p[b];
      }
      if (!ok) {
        continue;
      }
      std::size_t k = 0;
      for (auto c : p) {
        k = std::max<std::size_t>(k, c + 1);
      }
      if (k > best_classes) {
        best         = p;
        best_classes = k;
      }
    }
    return best;
  }

  // Exhaustive inverse search: the y with xyx = x and yxy = y.
  inline std::vector<std::vector<Elem>> inverses_of(FinSemigroup const& S) {
    std::vector<std::vector<Elem>> out(S.size());
    for (Elem x = 0; x < S.size(); ++x) {
      for (Elem y = 0; y < S.size(); ++y) {
        if (S.mul(S.mul(x, y), x) == x && S.mul(S.mul(y, x), y) == y) {
          out[x].push_back(y);
        }
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Topology, literal definitions over an explicit open family
  ////////////////////////////////////////////////////////////////////////

  using Mask = std::uint64_t;

  inline bool has(Mask m, Elem x) {
    return (m >> x) & 1;
  }

  inline Mask bit(Elem x) {
    return Mask(1) << x;
  }

  inline Mask to_mask(semitop::Subset const& s) {
    Mask m = 0;
    for (auto x : semitop::elements_of(s)) {
      m |= bit(x);
    }
    return m;
  }

  inline bool subset(Mask a, Mask b) {
    return (a & ~b) == 0;
  }

  // All unions of the given generating sets, sorted by size then value.
  inline std::vector<Mask> unions_of(std::vector<Mask> const& gens) {
    std::vector<Mask> fam{0};
    for (auto g : gens) {
      auto const k = fam.size();
      for (std::size_t i = 0; i < k; ++i) {
        fam.push_back(fam[i] | g);
      }
      std::sort(fam.begin(), fam.end());
      fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    }
    std::sort(fam.begin(), fam.end(), [](Mask a, Mask b) {
      auto pa = __builtin_popcountll(a);
      auto pb = __builtin_popcountll(b);
      return pa != pb ? pa < pb : a < b;
    });
    return fam;
  }

  struct Space {
    std::size_t       n;
    std::vector<Mask> opens;  // sorted by size

    Mask carrier() const {
      return n == 64 ? ~Mask(0) : (bit(static_cast<Elem>(n)) - 1);
    }

    bool is_open(Mask m) const {
      return std::binary_search(opens.begin(), opens.end(), m, [](Mask a, Mask b) {
        auto pa = __builtin_popcountll(a);
        auto pb = __builtin_popcountll(b);
        return pa != pb ? pa < pb : a < b;
      });
    }
  };

  // The open family generated by minimal neighbourhoods (as a base).
  inline Space space_of(semitop::TopSpec const& T) {
    std::vector<Mask> gens;
    for (Elem x = 0; x < T.size(); ++x) {
      gens.push_back(to_mask(T.minimal_open(x)));
    }
    return {T.size(), unions_of(gens)};
  }

  inline Mask image(FinSemigroup const& S, Mask A, Mask B) {
    Mask out = 0;
    for (Elem a = 0; a < S.size(); ++a) {
      for (Elem b = 0; b < S.size(); ++b) {
        if (has(A, a) && has(B, b)) {
          out |= bit(S.mul(a, b));
        }
      }
    }
    return out;
  }

  // For all a, b and open O containing ab there are opens U, V containing a, b
  // with UV inside O.
  inline bool continuous(FinSemigroup const& S, Space const& X) {
    for (Elem a = 0; a < S.size(); ++a) {
      for (Elem b = 0; b < S.size(); ++b) {
        for (auto O : X.opens) {
          if (!has(O, S.mul(a, b))) {
            continue;
          }
          bool found = false;
          for (auto U : X.opens) {
            if (!has(U, a)) {
              continue;
            }
            for (auto V : X.opens) {
              if (has(V, b) && subset(image(S, U, V), O)) {
                found = true;
                break;
              }
            }
            if (found) {
              break;
            }
          }
          if (!found) {
            return false;
          }
        }
      }
    }
    return true;
  }

  inline Mask up(FinSemigroup const& S, Elem y) {
    Mask m = 0;
    for (Elem z = 0; z < S.size(); ++z) {
      if (S.mul(y, z) == y) {
        m |= bit(z);
      }
    }
    return m;
  }

  // For every open U containing x: some y in U and open V containing x with
  // V inside the up-set of y.
  inline bool u_at(FinSemigroup const& S, Space const& X, Elem x) {
    for (auto U : X.opens) {
      if (!has(U, x)) {
        continue;
      }
      bool found = false;
      for (Elem y = 0; y < S.size() && !found; ++y) {
        if (!has(U, y)) {
          continue;
        }
        for (auto V : X.opens) {
          if (has(V, x) && subset(V, up(S, y))) {
            found = true;
            break;
          }
        }
      }
      if (!found) {
        return false;
      }
    }
    return true;
  }

  // Every subset that is clopen and an ideal.
  inline std::vector<Mask> clopen_ideals(FinSemigroup const& S, Space const& X) {
    std::vector<Mask> out;
    for (Mask I = 0; I <= X.carrier(); ++I) {
      if (!X.is_open(I) || !X.is_open(X.carrier() & ~I)) {
        continue;
      }
      if (subset(image(S, X.carrier(), I) | image(S, I, X.carrier()), I)) {
        out.push_back(I);
      }
      if (I == X.carrier()) {
        break;
      }
    }
    return out;
  }

  // For every open U containing x: some y in U and clopen ideal I with x not
  // in I and the complement of I inside the up-set of y.
  inline bool u2_at(FinSemigroup const&      S,
                    Space const&             X,
                    std::vector<Mask> const& ideals,
                    Elem                     x) {
    for (auto U : X.opens) {
      if (!has(U, x)) {
        continue;
      }
      bool found = false;
      for (Elem y = 0; y < S.size() && !found; ++y) {
        if (!has(U, y)) {
          continue;
        }
        for (auto I : ideals) {
          if (!has(I, x) && subset(X.carrier() & ~I, up(S, y))) {
            found = true;
            break;
          }
        }
      }
      if (!found) {
        return false;
      }
    }
    return true;
  }

  struct InverseTables {
    std::vector<Elem> inv;
    Mask              idem = 0;
  };

  inline InverseTables inverse_tables(FinSemigroup const& S) {
    InverseTables t;
    auto const    all = inverses_of(S);
    for (Elem x = 0; x < S.size(); ++x) {
      t.inv.push_back(all[x].at(0));
      if (S.mul(x, x) == x) {
        t.idem |= bit(x);
      }
    }
    return t;
  }

  // Inversion continuous, then for every x and open O containing x some opens
  // U containing x and W containing xx^{-1} (and V containing x^{-1}x when
  // weak) whose displayed set lies inside O. Returns the first failing x, or
  // S.size() if the property holds; inversion failures return S.size() + 1.
  inline Elem ditop_first_failure(FinSemigroup const& S, Space const& X, bool weak) {
    auto const t = inverse_tables(S);
    for (Elem x = 0; x < S.size(); ++x) {
      for (auto O : X.opens) {
        if (!has(O, t.inv[x])) {
          continue;
        }
        bool found = false;
        for (auto U : X.opens) {
          if (!has(U, x)) {
            continue;
          }
          Mask Uinv = 0;
          for (Elem u = 0; u < S.size(); ++u) {
            if (has(U, u)) {
              Uinv |= bit(t.inv[u]);
            }
          }
          if (subset(Uinv, O)) {
            found = true;
            break;
          }
        }
        if (!found) {
          return static_cast<Elem>(S.size() + 1);
        }
      }
    }
    auto displayed = [&](Mask U, Mask W, std::optional<Mask> V) {
      Mask out = 0;
      for (Elem s = 0; s < S.size(); ++s) {
        bool first = false;
        for (Elem b = 0; b < S.size() && !first; ++b) {
          for (Elem e = 0; e < S.size() && !first; ++e) {
            first = has(U, b) && has(W, e) && has(t.idem, e) && b == S.mul(e, s);
          }
        }
        bool second = has(W, S.mul(s, t.inv[s]));
        bool third  = !V || has(*V, S.mul(t.inv[s], s));
        if (first && second && third) {
          out |= bit(s);
        }
      }
      return out;
    };
    for (Elem x = 0; x < S.size(); ++x) {
      Elem const r = S.mul(x, t.inv[x]);
      Elem const d = S.mul(t.inv[x], x);
      for (auto O : X.opens) {
        if (!has(O, x)) {
          continue;
        }
        bool found = false;
        for (auto U : X.opens) {
          if (!has(U, x)) {
            continue;
          }
          for (auto W : X.opens) {
            if (!has(W, r)) {
              continue;
            }
            if (!weak) {
              found = subset(displayed(U, W, std::nullopt), O);
            } else {
              for (auto V : X.opens) {
                if (has(V, d) && subset(displayed(U, W, V), O)) {
                  found = true;
                  break;
                }
              }
            }
            if (found) {
              break;
            }
          }
          if (found) {
            break;
          }
        }
        if (!found) {
          return x;
        }
      }
    }
    return static_cast<Elem>(S.size());
  }

  // Derivative by definition: x is isolated in Y if some open O has O meet Y
  // equal to {x}.
  inline Mask derivative(Space const& X, Mask Y) {
    Mask out = 0;
    for (Elem x = 0; x < X.n; ++x) {
      if (!has(Y, x)) {
        continue;
      }
      bool isolated = false;
      for (auto O : X.opens) {
        if ((O & Y) == bit(x)) {
          isolated = true;
          break;
        }
      }
      if (!isolated) {
        out |= bit(x);
      }
    }
    return out;
  }

  // For every x and open O containing x some right congruence with all
  // classes open has [x] inside O. Partitions by filter.
  inline bool congruence_basis(FinSemigroup const& S, Space const& X) {
    std::vector<std::vector<Elem>> good;
    for (auto const& p : congruences_by_filter(S, false)) {
      bool ok = true;
      for (Elem x = 0; x < S.size() && ok; ++x) {
        Mask cls = 0;
        for (Elem y = 0; y < S.size(); ++y) {
          if (p[y] == p[x]) {
            cls |= bit(y);
          }
        }
        ok = X.is_open(cls);
      }
      if (ok) {
        good.push_back(p);
      }
    }
    for (auto O : X.opens) {
      for (Elem x = 0; x < S.size(); ++x) {
        if (!has(O, x)) {
          continue;
        }
        bool found = false;
        for (auto const& p : good) {
          Mask cls = 0;
          for (Elem y = 0; y < S.size(); ++y) {
            if (p[y] == p[x]) {
              cls |= bit(y);
            }
          }
          if (subset(cls, O)) {
            found = true;
            break;
          }
        }
        if (!found) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace oracle
