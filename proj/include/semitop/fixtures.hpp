#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "semitop/semigroup.hpp"
#include "semitop/transforms.hpp"

// Small named semigroups used by tests, samples and the catalog.

namespace semitop {

  // The table of a finite set of elements closed under `mul`. Throws
  // MalformedInput if the set is not closed.
  template <typename T, typename Mul>
  FinSemigroup semigroup_from_elements(std::vector<T> const&    elems,
                                       Mul&&                    mul,
                                       std::vector<std::string> labels,
                                       std::optional<Elem>      identity,
                                       std::string              name) {
    auto const n = elems.size();
    std::map<T, Elem> index;
    for (Elem i = 0; i < n; ++i) {
      index.emplace(elems[i], i);
    }
    std::vector<Elem> table(n * n);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        auto it = index.find(mul(elems[a], elems[b]));
        if (it == index.end()) {
          throw MalformedInput("element set is not closed under multiplication");
        }
        table[a * n + b] = it->second;
      }
    }
    return FinSemigroup(n, std::move(table), std::move(labels), identity, std::move(name));
  }

  inline FinSemigroup trivial_semigroup() {
    return FinSemigroup(1, {0}, {"e"}, 0, "trivial");
  }

  // Z_n with identity 0 labelled "1" and generator "g".
  inline FinSemigroup cyclic_group(std::size_t n) {
    std::vector<Elem>        table(n * n);
    std::vector<std::string> labels;
    for (Elem a = 0; a < n; ++a) {
      labels.push_back(a == 0 ? "1" : a == 1 ? "g" : "g^" + std::to_string(a));
      for (Elem b = 0; b < n; ++b) {
        table[a * n + b] = static_cast<Elem>((a + b) % n);
      }
    }
    return FinSemigroup(n, std::move(table), std::move(labels), 0, "Z" + std::to_string(n));
  }

  // Permutations of [0, n), lexicographic, so the identity is element 0.
  inline FinSemigroup symmetric_group(std::size_t n) {
    std::vector<Elem> p(n);
    std::iota(p.begin(), p.end(), Elem(0));
    std::vector<Transformation> elems;
    std::vector<std::string>    labels;
    do {
      elems.emplace_back(p);
      labels.push_back(to_string(elems.back()));
    } while (std::next_permutation(p.begin(), p.end()));
    return semigroup_from_elements(
        elems,
        [](auto const& f, auto const& g) { return compose(f, g); },
        std::move(labels),
        0,
        "S" + std::to_string(n));
  }

  // ab = a
  inline FinSemigroup left_zero(std::size_t n) {
    std::vector<Elem> table(n * n);
    std::vector<std::string> labels;
    for (Elem a = 0; a < n; ++a) {
      labels.push_back("l" + std::to_string(a));
      for (Elem b = 0; b < n; ++b) {
        table[a * n + b] = a;
      }
    }
    return FinSemigroup(n, std::move(table), std::move(labels), std::nullopt,
                        "L" + std::to_string(n));
  }

  // ab = b
  inline FinSemigroup right_zero(std::size_t n) {
    std::vector<Elem> table(n * n);
    std::vector<std::string> labels;
    for (Elem a = 0; a < n; ++a) {
      labels.push_back("r" + std::to_string(a));
      for (Elem b = 0; b < n; ++b) {
        table[a * n + b] = b;
      }
    }
    return FinSemigroup(n, std::move(table), std::move(labels), std::nullopt,
                        "R" + std::to_string(n));
  }

  // T_n: all self-maps of [0, n), lexicographic.
  inline FinSemigroup full_transformation_monoid(std::size_t n) {
    auto const               elems = all_transformations(n);
    std::vector<std::string> labels;
    for (auto const& t : elems) {
      labels.push_back(to_string(t));
    }
    auto const id = static_cast<Elem>(
        std::find(elems.begin(), elems.end(), Transformation::identity(n)) - elems.begin());
    return semigroup_from_elements(
        elems,
        [](auto const& f, auto const& g) { return compose(f, g); },
        std::move(labels),
        id,
        "T" + std::to_string(n));
  }

  struct PartialPermSemigroup {
    FinSemigroup             semigroup;
    std::vector<PartialPerm> elements;
  };

  namespace detail {
    struct PartialPermLess {
      bool operator()(PartialPerm const& a, PartialPerm const& b) const {
        return a.images() < b.images();
      }
    };
  }  // namespace detail

  // Partial permutations of [0, n) of rank at most max_rank, ordered by
  // partial_perm_order_key. The identity is declared when max_rank == n.
  inline PartialPermSemigroup partial_perm_semigroup(std::size_t n,
                                                     std::size_t max_rank,
                                                     std::string name) {
    auto const elems = all_partial_perms(n, max_rank);
    auto const N     = elems.size();
    std::map<PartialPerm, Elem, detail::PartialPermLess> index;
    std::vector<std::string> labels;
    for (Elem i = 0; i < N; ++i) {
      index.emplace(elems[i], i);
      labels.push_back(to_string(elems[i]));
    }
    std::vector<Elem> table(N * N);
    for (Elem a = 0; a < N; ++a) {
      for (Elem b = 0; b < N; ++b) {
        table[a * N + b] = index.at(compose(elems[a], elems[b]));
      }
    }
    std::optional<Elem> id;
    if (max_rank >= n) {
      Subset all(n);
      all.set();
      id = index.at(PartialPerm::identity_on(n, all));
    }
    return {FinSemigroup(N, std::move(table), std::move(labels), id, std::move(name)),
            elems};
  }

  // I_n
  inline PartialPermSemigroup symmetric_inverse_monoid(std::size_t n) {
    return partial_perm_semigroup(n, n, "I" + std::to_string(n));
  }

  // B_n: partial permutations of rank at most 1 (n^2 + 1 elements).
  inline PartialPermSemigroup brandt_semigroup(std::size_t n) {
    return partial_perm_semigroup(n, 1, "B" + std::to_string(n));
  }

  // {0, ..., n-1} under min; the top n-1 is the declared identity.
  inline FinSemigroup min_chain(std::size_t n) {
    std::vector<Elem>        table(n * n);
    std::vector<std::string> labels;
    for (Elem a = 0; a < n; ++a) {
      labels.push_back(std::to_string(a));
      for (Elem b = 0; b < n; ++b) {
        table[a * n + b] = std::min(a, b);
      }
    }
    return FinSemigroup(n, std::move(table), std::move(labels), static_cast<Elem>(n - 1),
                        "C" + std::to_string(n));
  }

  // T = {0, x_0, ..., x_{n-1}} with aa = a and ab = 0 otherwise. Index 0 is
  // the zero, index i + 1 is x_i.
  inline FinSemigroup antichain_with_zero(std::size_t n) {
    auto const               N = n + 1;
    std::vector<Elem>        table(N * N, 0);
    std::vector<std::string> labels{"0"};
    for (Elem a = 1; a < N; ++a) {
      labels.push_back("x" + std::to_string(a - 1));
      table[a * N + a] = a;
    }
    return FinSemigroup(N, std::move(table), std::move(labels), std::nullopt,
                        "T" + std::to_string(n));
  }

  // Z_2 written multiplicatively as {1, -1}.
  inline FinSemigroup sign_group() {
    return FinSemigroup(2, {0, 1, 1, 0}, {"1", "-1"}, 0, "Z2");
  }

  // T x {1, -1}: (0,1), (0,-1), (x_0,1), (x_0,-1), ... so (x_i, s) has index
  // 2 + 2i (s = 1) or 3 + 2i (s = -1).
  inline FinSemigroup exb_semigroup(std::size_t n) {
    return direct_product(antichain_with_zero(n), sign_group()).renamed("exB"
                                                                       + std::to_string(n));
  }

  inline Elem exb_index(std::optional<std::size_t> i, int sign) {
    Elem const base = i ? static_cast<Elem>(2 + 2 * *i) : 0;
    return base + (sign < 0 ? 1 : 0);
  }

  // {0} together with a_k = 1/(k+1), k < n, under min. Index 0 is 0 and index
  // k + 1 is a_k, so a_j a_k = a_max(j,k). a_0 = 1 is the declared identity.
  inline FinSemigroup reciprocal_chain(std::size_t n) {
    auto const               N = n + 1;
    std::vector<Elem>        table(N * N, 0);
    std::vector<std::string> labels{"0"};
    for (Elem a = 1; a < N; ++a) {
      labels.push_back("1/" + std::to_string(a));
      for (Elem b = 1; b < N; ++b) {
        table[a * N + b] = std::max(a, b);
      }
    }
    return FinSemigroup(N, std::move(table), std::move(labels), 1,
                        "Q" + std::to_string(n));
  }

  // A named entry of the bundled semigroup list.
  struct NamedSemigroup {
    std::string  id;
    FinSemigroup semigroup;
  };

  // Every bundled finite semigroup of at most `max_size` elements.
  inline std::vector<NamedSemigroup> bundled_semigroups(std::size_t max_size = 64) {
    std::vector<NamedSemigroup> all;
    all.push_back({"trivial", trivial_semigroup()});
    for (std::size_t n = 2; n <= 6; ++n) {
      all.push_back({"Z" + std::to_string(n), cyclic_group(n)});
    }
    all.push_back({"S3", symmetric_group(3)});
    all.push_back({"L2", left_zero(2)});
    all.push_back({"R2", right_zero(2)});
    all.push_back({"L3", left_zero(3)});
    all.push_back({"R3", right_zero(3)});
    all.push_back({"T2", full_transformation_monoid(2)});
    all.push_back({"I2", symmetric_inverse_monoid(2).semigroup});
    all.push_back({"B2", brandt_semigroup(2).semigroup});
    for (std::size_t n = 1; n <= 5; ++n) {
      all.push_back({"C" + std::to_string(n), min_chain(n)});
    }
    all.push_back({"T2-antichain", antichain_with_zero(2)});
    all.push_back({"T3-antichain", antichain_with_zero(3)});
    all.push_back({"Z2^0", adjoin_zero(cyclic_group(2))});
    all.push_back({"Z3^0", adjoin_zero(cyclic_group(3))});
    all.push_back({"R2^0", adjoin_zero(right_zero(2))});
    all.push_back({"Z2xZ2", direct_product(cyclic_group(2), cyclic_group(2))});
    all.push_back({"Z2xC2", direct_product(cyclic_group(2), min_chain(2))});
    all.push_back({"Z2xC3", direct_product(cyclic_group(2), min_chain(3))});
    all.push_back({"Z3xC2", direct_product(cyclic_group(3), min_chain(2))});
    all.push_back({"exB1", exb_semigroup(1)});
    all.push_back({"exB2", exb_semigroup(2)});
    all.push_back({"exB3", exb_semigroup(3)});
    all.push_back({"Q4", reciprocal_chain(4)});
    all.push_back({"I3", symmetric_inverse_monoid(3).semigroup});
    std::erase_if(all, [&](auto const& e) { return e.semigroup.size() > max_size; });
    return all;
  }

}  // namespace semitop
