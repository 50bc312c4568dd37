#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semitop/inverse.hpp"
#include "semitop/semigroup.hpp"

namespace semitop {

  enum class CongruenceKind { Right, TwoSided };

  inline char const* to_string(CongruenceKind k) {
    return k == CongruenceKind::Right ? "right" : "two-sided";
  }

  // Class ids renumbered by first occurrence.
  template <typename Int>
  std::vector<Elem> canonical_classes(std::vector<Int> const& raw) {
    std::vector<Elem>          out(raw.size());
    std::vector<std::pair<Int, Elem>> seen;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      auto it = std::find_if(seen.begin(), seen.end(), [&](auto const& p) {
        return p.first == raw[i];
      });
      if (it == seen.end()) {
        seen.emplace_back(raw[i], static_cast<Elem>(seen.size()));
        out[i] = seen.back().second;
      } else {
        out[i] = it->second;
      }
    }
    return out;
  }

  inline bool is_right_compatible(FinSemigroup const& S, std::vector<Elem> const& cls) {
    for (Elem a = 0; a < S.size(); ++a) {
      for (Elem b = a + 1; b < S.size(); ++b) {
        if (cls[a] != cls[b]) {
          continue;
        }
        for (Elem s = 0; s < S.size(); ++s) {
          if (cls[S.mul(a, s)] != cls[S.mul(b, s)]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  inline bool is_left_compatible(FinSemigroup const& S, std::vector<Elem> const& cls) {
    for (Elem a = 0; a < S.size(); ++a) {
      for (Elem b = a + 1; b < S.size(); ++b) {
        if (cls[a] != cls[b]) {
          continue;
        }
        for (Elem s = 0; s < S.size(); ++s) {
          if (cls[S.mul(s, a)] != cls[S.mul(s, b)]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  // A partition of the carrier of a FinSemigroup, closed under right (and for
  // TwoSided also left) multiplication. Class ids are canonical.
  class Congruence {
   public:
    Congruence() = default;

    // Verifies the compatibility required by `kind`; throws KindError if the
    // partition is not a congruence of that kind.
    Congruence(FinSemigroup const& S, CongruenceKind kind, std::vector<Elem> classes)
        : _kind(kind),
          _classes(canonical_classes(classes)),
          _base(S.fingerprint()) {
      if (_classes.size() != S.size()) {
        throw MalformedInput("partition has " + std::to_string(_classes.size())
                             + " entries, semigroup has "
                             + std::to_string(S.size()));
      }
      if (!is_right_compatible(S, _classes)) {
        throw KindError("partition is not a right congruence");
      }
      if (kind == CongruenceKind::TwoSided && !is_left_compatible(S, _classes)) {
        throw KindError("partition is not a two-sided congruence");
      }
    }

    // Trusted constructor for partitions produced by the closure algorithm.
    static Congruence unchecked(FinSemigroup const& S,
                                CongruenceKind      kind,
                                std::vector<Elem>   classes) {
      Congruence c;
      c._kind    = kind;
      c._classes = canonical_classes(classes);
      c._base    = S.fingerprint();
      return c;
    }

    CongruenceKind kind() const noexcept {
      return _kind;
    }

    std::vector<Elem> const& classes() const noexcept {
      return _classes;
    }

    std::size_t size() const noexcept {
      return _classes.size();
    }

    std::uint64_t base_fingerprint() const noexcept {
      return _base;
    }

    Elem class_of(Elem x) const {
      return _classes.at(x);
    }

    bool related(Elem a, Elem b) const {
      return _classes.at(a) == _classes.at(b);
    }

    std::size_t number_of_classes() const {
      return _classes.empty()
                 ? 0
                 : *std::max_element(_classes.begin(), _classes.end()) + 1;
    }

    // [x]
    Subset class_subset(Elem x) const {
      Subset out(_classes.size());
      for (std::size_t i = 0; i < _classes.size(); ++i) {
        if (_classes[i] == _classes[x]) {
          out.set(i);
        }
      }
      return out;
    }

    bool is_diagonal() const {
      return number_of_classes() == _classes.size();
    }

    bool is_universal() const {
      return number_of_classes() <= 1;
    }

    // Pairs (first member of class, x) generating the equivalence.
    std::vector<std::pair<Elem, Elem>> generating_pairs() const {
      std::vector<std::pair<Elem, Elem>> out;
      std::vector<std::optional<Elem>>   first(_classes.size());
      for (Elem x = 0; x < _classes.size(); ++x) {
        auto& f = first[_classes[x]];
        if (!f) {
          f = x;
        } else {
          out.emplace_back(*f, x);
        }
      }
      return out;
    }

    // True iff every class of *this is contained in a class of other.
    bool refines(Congruence const& other) const {
      for (Elem a = 0; a < _classes.size(); ++a) {
        for (Elem b = a + 1; b < _classes.size(); ++b) {
          if (related(a, b) && !other.related(a, b)) {
            return false;
          }
        }
      }
      return true;
    }

    friend bool operator==(Congruence const& a, Congruence const& b) {
      return a._kind == b._kind && a._classes == b._classes && a._base == b._base;
    }

    friend bool operator<(Congruence const& a, Congruence const& b) {
      return a._classes < b._classes;
    }

   private:
    CongruenceKind    _kind = CongruenceKind::Right;
    std::vector<Elem> _classes;
    std::uint64_t     _base = 0;
  };

  // One step of a closure derivation: `pair` was already related, so
  // multiplying it by `multiplier` (on the right, or on the left when
  // `left` is set) forces `derived`.
  struct ForcingStep {
    std::pair<Elem, Elem> pair;
    Elem                  multiplier;
    std::pair<Elem, Elem> derived;
    bool                  left = false;

    friend bool operator==(ForcingStep const&, ForcingStep const&) = default;
  };

  struct TracedClosure {
    Congruence               congruence;
    std::vector<ForcingStep> chain;
  };

  namespace detail {
    class UnionFind {
     public:
      explicit UnionFind(std::size_t n) : _parent(n) {
        std::iota(_parent.begin(), _parent.end(), Elem(0));
      }

      Elem find(Elem x) {
        while (_parent[x] != x) {
          _parent[x] = _parent[_parent[x]];
          x          = _parent[x];
        }
        return x;
      }

      bool unite(Elem a, Elem b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return false;
        }
        if (b < a) {
          std::swap(a, b);
        }
        _parent[b] = a;
        return true;
      }

      std::vector<Elem> classes() {
        std::vector<Elem> raw(_parent.size());
        for (Elem x = 0; x < raw.size(); ++x) {
          raw[x] = find(x);
        }
        return canonical_classes(raw);
      }

     private:
      std::vector<Elem> _parent;
    };
  }  // namespace detail

  // Smallest congruence of the given kind containing all seeds. Seeds are
  // processed in order, each closed by a FIFO worklist before the next one is
  // taken; multipliers are tried in ascending index. Every derived pair that
  // merged two classes is recorded in the chain.
  inline TracedClosure
  congruence_closure_traced(FinSemigroup const&                       S,
                            std::vector<std::pair<Elem, Elem>> const& seeds,
                            CongruenceKind                            kind) {
    struct Item {
      std::pair<Elem, Elem>                pair;
      std::optional<std::pair<Elem, Elem>> parent;
      Elem                                 multiplier = 0;
      bool                                 left       = false;
    };
    auto const        n = S.size();
    detail::UnionFind uf(n);
    std::vector<ForcingStep> chain;
    std::deque<Item>         queue;
    for (auto const& seed : seeds) {
      if (seed.first >= n || seed.second >= n) {
        throw MalformedInput("seed pair out of range");
      }
      queue.push_back({seed, std::nullopt});
      while (!queue.empty()) {
        Item it = queue.front();
        queue.pop_front();
        auto [a, b] = it.pair;
        if (!uf.unite(a, b)) {
          continue;
        }
        if (it.parent) {
          chain.push_back({*it.parent, it.multiplier, it.pair, it.left});
        }
        for (Elem s = 0; s < n; ++s) {
          queue.push_back({{S.mul(a, s), S.mul(b, s)}, it.pair, s, false});
          if (kind == CongruenceKind::TwoSided) {
            queue.push_back({{S.mul(s, a), S.mul(s, b)}, it.pair, s, true});
          }
        }
      }
    }
    return {Congruence::unchecked(S, kind, uf.classes()), std::move(chain)};
  }

  inline Congruence congruence_closure(FinSemigroup const&                       S,
                                       std::vector<std::pair<Elem, Elem>> const& seeds,
                                       CongruenceKind                            kind) {
    return congruence_closure_traced(S, seeds, kind).congruence;
  }

  inline Congruence diagonal_congruence(FinSemigroup const& S, CongruenceKind kind) {
    std::vector<Elem> cls(S.size());
    std::iota(cls.begin(), cls.end(), Elem(0));
    return Congruence::unchecked(S, kind, std::move(cls));
  }

  inline Congruence universal_congruence(FinSemigroup const& S, CongruenceKind kind) {
    return Congruence::unchecked(S, kind, std::vector<Elem>(S.size(), 0));
  }

  inline void require_same_base(Congruence const& a, Congruence const& b) {
    if (a.base_fingerprint() != b.base_fingerprint() || a.size() != b.size()) {
      throw KindError("congruences are on different semigroups");
    }
    if (a.kind() != b.kind()) {
      throw KindError("congruences have different kinds");
    }
  }

  // Intersection of two congruences of the same kind on the same semigroup.
  inline Congruence congruence_meet(FinSemigroup const& S,
                                    Congruence const&   r1,
                                    Congruence const&   r2) {
    require_same_base(r1, r2);
    if (r1.base_fingerprint() != S.fingerprint()) {
      throw KindError("congruence is not on the given semigroup");
    }
    std::vector<std::uint64_t> raw(S.size());
    for (Elem x = 0; x < S.size(); ++x) {
      raw[x] = (std::uint64_t(r1.class_of(x)) << 32) | r2.class_of(x);
    }
    return Congruence::unchecked(S, r1.kind(), canonical_classes(raw));
  }

  // Least congruence containing both.
  inline Congruence congruence_join(FinSemigroup const& S,
                                    Congruence const&   r1,
                                    Congruence const&   r2) {
    require_same_base(r1, r2);
    auto seeds = r1.generating_pairs();
    auto more  = r2.generating_pairs();
    seeds.insert(seeds.end(), more.begin(), more.end());
    return congruence_closure(S, seeds, r1.kind());
  }

  inline constexpr std::size_t default_enumeration_bound = 10;

  // All congruences of the given kind, in lexicographic order of class-id
  // vectors. Computed as the join-closure of the principal congruences.
  inline std::vector<Congruence>
  enumerate_congruences(FinSemigroup const& S,
                        CongruenceKind      kind,
                        std::size_t         bound = default_enumeration_bound) {
    auto const n = S.size();
    if (n > bound) {
      throw SizeError("enumerate_congruences: " + std::to_string(n)
                      + " elements exceeds the bound " + std::to_string(bound));
    }
    std::vector<std::pair<Elem, Elem>> principal_pairs;
    std::set<std::vector<Elem>>        principals;
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = a + 1; b < n; ++b) {
        auto c = congruence_closure(S, {{a, b}}, kind);
        if (principals.insert(c.classes()).second) {
          principal_pairs.emplace_back(a, b);
        }
      }
    }
    std::set<std::vector<Elem>>    found;
    std::deque<std::vector<Elem>>  queue;
    auto const diag = diagonal_congruence(S, kind).classes();
    found.insert(diag);
    queue.push_back(diag);
    while (!queue.empty()) {
      auto cls = std::move(queue.front());
      queue.pop_front();
      auto const rho   = Congruence::unchecked(S, kind, cls);
      auto const seeds = rho.generating_pairs();
      for (auto const& [a, b] : principal_pairs) {
        if (cls[a] == cls[b]) {
          continue;
        }
        auto s = seeds;
        s.emplace_back(a, b);
        auto joined = congruence_closure(S, s, kind).classes();
        if (found.insert(joined).second) {
          queue.push_back(std::move(joined));
        }
      }
    }
    std::vector<Congruence> out;
    out.reserve(found.size());
    for (auto const& cls : found) {
      out.push_back(Congruence::unchecked(S, kind, cls));
    }
    return out;
  }

  // A right congruence that is also left compatible, relabelled as two-sided.
  inline Congruence promote_to_two_sided(FinSemigroup const& S, Congruence const& rho) {
    if (rho.kind() == CongruenceKind::TwoSided) {
      return rho;
    }
    if (!is_left_compatible(S, rho.classes())) {
      throw KindError("right congruence is not left compatible");
    }
    return Congruence::unchecked(S, CongruenceKind::TwoSided, rho.classes());
  }

  ////////////////////////////////////////////////////////////////////////
  // Vagner-Preston right congruences
  ////////////////////////////////////////////////////////////////////////

  // For every s: either every t in [s] has 1 in [tt^{-1}], or [st] = [s] for
  // all t. Requires a declared identity.
  inline bool is_vagner_preston(InverseStructure const& M, Congruence const& rho) {
    auto const one = M.base().identity();
    if (!one) {
      throw DomainError("is_vagner_preston: the monoid has no declared identity");
    }
    if (rho.base_fingerprint() != M.base().fingerprint()) {
      throw KindError("congruence is not on the given monoid");
    }
    auto const n = M.size();
    for (Elem s = 0; s < n; ++s) {
      bool first = true;
      for (Elem t = 0; t < n && first; ++t) {
        if (rho.related(s, t) && !rho.related(*one, M.range_idem(t))) {
          first = false;
        }
      }
      if (first) {
        continue;
      }
      bool second = true;
      for (Elem t = 0; t < n && second; ++t) {
        second = rho.related(M.mul(s, t), s);
      }
      if (!second) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Quotients
  ////////////////////////////////////////////////////////////////////////

  struct Quotient {
    FinSemigroup      semigroup;
    std::vector<Elem> projection;  // element -> class
  };

  // S/rho for a two-sided congruence. Class i is labelled by the label of its
  // first member in brackets.
  inline Quotient quotient(FinSemigroup const& S, Congruence const& rho) {
    if (rho.kind() != CongruenceKind::TwoSided) {
      throw KindError("quotient requires a two-sided congruence");
    }
    if (rho.base_fingerprint() != S.fingerprint()) {
      throw KindError("congruence is not on the given semigroup");
    }
    auto const        k = rho.number_of_classes();
    std::vector<Elem> rep(k);
    std::vector<bool> has(k, false);
    for (Elem x = 0; x < S.size(); ++x) {
      auto c = rho.class_of(x);
      if (!has[c]) {
        has[c] = true;
        rep[c] = x;
      }
    }
    std::vector<Elem>        table(k * k);
    std::vector<std::string> labels;
    for (Elem i = 0; i < k; ++i) {
      labels.push_back("[" + S.label(rep[i]) + "]");
      for (Elem j = 0; j < k; ++j) {
        table[i * k + j] = rho.class_of(S.mul(rep[i], rep[j]));
      }
    }
    std::optional<Elem> id;
    if (S.identity()) {
      id = rho.class_of(*S.identity());
    }
    return {FinSemigroup(k, std::move(table), std::move(labels), id, S.name() + "/rho"),
            rho.classes()};
  }

  enum class VpQuotientKind { Group, GroupWithZero };

  inline char const* to_string(VpQuotientKind k) {
    return k == VpQuotientKind::Group ? "group" : "group-with-zero";
  }

  struct VpClassification {
    VpQuotientKind      kind;
    Quotient            quotient;
    Subset              group_part;  // in the quotient
    std::optional<Elem> zero;        // in the quotient
  };

  // Quotient of a commutative inverse monoid by a Vagner-Preston congruence is
  // a group or a group with zero adjoined. Anything else throws
  // TheoremViolation.
  inline VpClassification classify_vp_quotient(InverseStructure const& M,
                                               Congruence const&       rho) {
    auto const& S = M.base();
    if (!S.identity()) {
      throw DomainError("classify_vp_quotient: no declared identity");
    }
    if (!S.is_commutative()) {
      throw DomainError("classify_vp_quotient: monoid is not commutative");
    }
    if (!is_vagner_preston(M, rho)) {
      throw DomainError("classify_vp_quotient: congruence is not Vagner-Preston");
    }
    auto q = quotient(S, promote_to_two_sided(S, rho));
    auto const& Q   = q.semigroup;
    Elem const  one = *Q.identity();
    auto const  E   = idempotents(Q);

    // The group part: everything except a possible zero, with inverses taken
    // from M.
    auto group_ok = [&](Subset const& G) {
      for (auto x : elements_of(G)) {
        for (auto y : elements_of(G)) {
          if (!G.test(Q.mul(x, y))) {
            return false;
          }
        }
      }
      for (Elem x = 0; x < S.size(); ++x) {
        auto cx = q.projection[x];
        if (G.test(cx) && Q.mul(cx, q.projection[M.inv(x)]) != one) {
          return false;
        }
      }
      return true;
    };

    Subset all(Q.size());
    all.set();
    if (E.count() == 1) {
      if (!E.test(one) || !group_ok(all)) {
        throw TheoremViolation("VP quotient with one idempotent is not a group");
      }
      return {VpQuotientKind::Group, std::move(q), all, std::nullopt};
    }
    if (E.count() == 2 && E.test(one)) {
      auto        z = static_cast<Elem>(E.find_first() == one ? E.find_next(one)
                                                              : E.find_first());
      bool        is_zero = true;
      for (Elem x = 0; x < Q.size(); ++x) {
        is_zero = is_zero && Q.mul(x, z) == z && Q.mul(z, x) == z;
      }
      Subset G = all;
      G.reset(z);
      if (is_zero && group_ok(G)) {
        return {VpQuotientKind::GroupWithZero, std::move(q), G, z};
      }
    }
    throw TheoremViolation("VP quotient of a commutative inverse monoid is neither "
                           "a group nor a group with zero");
  }

}  // namespace semitop
