#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semitop/congruence.hpp"
#include "semitop/inverse.hpp"
#include "semitop/semigroup.hpp"

namespace semitop {

  namespace detail {
    inline bool subset_less(Subset const& a, Subset const& b) {
      auto const ea = elements_of(a);
      auto const eb = elements_of(b);
      if (ea.size() != eb.size()) {
        return ea.size() < eb.size();
      }
      return ea < eb;
    }

    struct SubsetLess {
      bool operator()(Subset const& a, Subset const& b) const {
        return subset_less(a, b);
      }
    };
  }  // namespace detail

  // Contains the empty set and the carrier, and is closed under pairwise union
  // and intersection (which suffices for a finite family).
  inline bool is_topology(std::size_t n, std::vector<Subset> const& opens) {
    std::set<Subset> fam;
    for (auto const& o : opens) {
      if (o.size() != n) {
        return false;
      }
      fam.insert(o);
    }
    Subset all(n);
    all.set();
    if (!fam.count(Subset(n)) || !fam.count(all)) {
      return false;
    }
    for (auto const& a : fam) {
      for (auto const& b : fam) {
        if (!fam.count(a | b) || !fam.count(a & b)) {
          return false;
        }
      }
    }
    return true;
  }

  // A finite topology, stored as the minimal open neighbourhood M(x) of every
  // point. The open sets are exactly the unions of minimal neighbourhoods.
  class TopSpec {
   public:
    TopSpec() = default;

    // Requires x in M(x) and y in M(x) => M(y) subset of M(x).
    static TopSpec from_minimal(std::vector<Subset> minimal) {
      auto const n = minimal.size();
      for (Elem x = 0; x < n; ++x) {
        if (minimal[x].size() != n || !minimal[x].test(x)) {
          throw MalformedInput("minimal neighbourhood of " + std::to_string(x)
                               + " does not contain it");
        }
      }
      for (Elem x = 0; x < n; ++x) {
        for (auto y : elements_of(minimal[x])) {
          if (!minimal[y].is_subset_of(minimal[x])) {
            throw MalformedInput("minimal neighbourhoods are not transitive at ("
                                 + std::to_string(x) + ", " + std::to_string(y) + ")");
          }
        }
      }
      TopSpec t;
      t._min = std::move(minimal);
      return t;
    }

    // Verifies the family is a topology.
    static TopSpec from_opens(std::size_t n, std::vector<Subset> const& opens) {
      if (!is_topology(n, opens)) {
        throw MalformedInput("open family is not a topology on " + std::to_string(n)
                             + " points");
      }
      std::vector<Subset> m(n, Subset(n));
      for (Elem x = 0; x < n; ++x) {
        m[x].set();
        for (auto const& o : opens) {
          if (o.test(x)) {
            m[x] &= o;
          }
        }
      }
      return from_minimal(std::move(m));
    }

    static TopSpec discrete(std::size_t n) {
      std::vector<Subset> m(n, Subset(n));
      for (Elem x = 0; x < n; ++x) {
        m[x].set(x);
      }
      return from_minimal(std::move(m));
    }

    static TopSpec indiscrete(std::size_t n) {
      Subset all(n);
      all.set();
      return from_minimal(std::vector<Subset>(n, all));
    }

    std::size_t size() const noexcept {
      return _min.size();
    }

    // The smallest open set containing x.
    Subset const& minimal_open(Elem x) const {
      return _min.at(x);
    }

    std::vector<Subset> const& minimal_opens() const noexcept {
      return _min;
    }

    Subset carrier() const {
      Subset all(size());
      all.set();
      return all;
    }

    bool is_open(Subset const& A) const {
      for (auto x : elements_of(A)) {
        if (!_min[x].is_subset_of(A)) {
          return false;
        }
      }
      return true;
    }

    bool is_closed(Subset const& A) const {
      return is_open(~A);
    }

    bool is_clopen(Subset const& A) const {
      return is_open(A) && is_closed(A);
    }

    // {x : M(x) subset of A}
    Subset interior(Subset const& A) const {
      Subset out(size());
      for (Elem x = 0; x < size(); ++x) {
        if (_min[x].is_subset_of(A)) {
          out.set(x);
        }
      }
      return out;
    }

    // {x : M(x) meets A}
    Subset closure(Subset const& A) const {
      Subset out(size());
      for (Elem x = 0; x < size(); ++x) {
        if (_min[x].intersects(A)) {
          out.set(x);
        }
      }
      return out;
    }

    bool is_discrete() const {
      for (Elem x = 0; x < size(); ++x) {
        if (_min[x].count() != 1) {
          return false;
        }
      }
      return true;
    }

    // Connected components of the specialization graph, canonical ids. The
    // clopen sets are exactly the unions of components.
    std::vector<Elem> components() const {
      detail::UnionFind uf(size());
      for (Elem x = 0; x < size(); ++x) {
        for (auto y : elements_of(_min[x])) {
          uf.unite(x, y);
        }
      }
      return uf.classes();
    }

    // Smallest clopen set containing A.
    Subset clopen_hull(Subset const& A) const {
      auto const comp = components();
      Subset     hit(size());
      for (auto x : elements_of(A)) {
        hit.set(comp[x]);
      }
      Subset out(size());
      for (Elem x = 0; x < size(); ++x) {
        if (hit.test(comp[x])) {
          out.set(x);
        }
      }
      return out;
    }

    // The whole open family, sorted by size then elements. Throws SizeError
    // once more than `limit` opens have been produced.
    std::vector<Subset> opens(std::size_t limit = std::size_t(1) << 16) const {
      std::set<Subset> fam{Subset(size())};
      for (Elem x = 0; x < size(); ++x) {
        std::vector<Subset> add;
        for (auto const& o : fam) {
          add.push_back(o | _min[x]);
        }
        fam.insert(add.begin(), add.end());
        if (fam.size() > limit) {
          throw SizeError("open family exceeds " + std::to_string(limit) + " sets");
        }
      }
      std::vector<Subset> out(fam.begin(), fam.end());
      std::sort(out.begin(), out.end(), detail::subset_less);
      return out;
    }

    friend bool operator==(TopSpec const&, TopSpec const&) = default;

   private:
    std::vector<Subset> _min;
  };

  // Whether every open set of `coarse` is open in `fine`.
  inline bool refines(TopSpec const& fine, TopSpec const& coarse) {
    for (Elem x = 0; x < fine.size(); ++x) {
      if (!fine.minimal_open(x).is_subset_of(coarse.minimal_open(x))) {
        return false;
      }
    }
    return true;
  }

  // A finite semigroup with a topology on the same carrier.
  struct TopSemigroup {
    FinSemigroup S;
    TopSpec      T;

    TopSemigroup(FinSemigroup s, TopSpec t) : S(std::move(s)), T(std::move(t)) {
      if (S.size() != T.size()) {
        throw MalformedInput("topology and semigroup have different carriers");
      }
    }
  };

  inline Subset product_set(FinSemigroup const& S, Subset const& A, Subset const& B) {
    Subset out(S.size());
    for (auto a : elements_of(A)) {
      for (auto b : elements_of(B)) {
        out.set(S.mul(a, b));
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Continuity
  ////////////////////////////////////////////////////////////////////////

  // A failure (a, b, O = M(ab)) together with u in M(a), v in M(b) whose
  // product leaves O.
  struct ContinuityWitness {
    Elem a, b, u, v;
    Subset O;
  };

  struct ContinuityResult {
    bool                             holds = true;
    std::optional<ContinuityWitness> witness;
  };

  namespace detail {
    inline ContinuityResult continuity_over(FinSemigroup const& S,
                                            TopSpec const&      T,
                                            Elem                limit) {
      for (Elem a = 0; a < limit; ++a) {
        for (Elem b = 0; b < limit; ++b) {
          auto const& O = T.minimal_open(S.mul(a, b));
          for (auto u : elements_of(T.minimal_open(a))) {
            for (auto v : elements_of(T.minimal_open(b))) {
              if (!O.test(S.mul(u, v))) {
                return {false, ContinuityWitness{a, b, u, v, O}};
              }
            }
          }
        }
      }
      return {};
    }
  }  // namespace detail

  // Multiplication is continuous iff M(a)M(b) is contained in M(ab) for all
  // a, b. The witness is the first failing (a, b) in index order.
  inline ContinuityResult continuity_check(FinSemigroup const& S, TopSpec const& T) {
    if (S.size() != T.size()) {
      throw MalformedInput("topology and semigroup have different carriers");
    }
    return detail::continuity_over(S, T, static_cast<Elem>(S.size()));
  }

  ////////////////////////////////////////////////////////////////////////
  // Semilattice predicates
  ////////////////////////////////////////////////////////////////////////

  inline void require_semilattice(FinSemigroup const& S) {
    if (!is_semilattice(S)) {
      throw DomainError("not a semilattice");
    }
  }

  // {y : x <= y}
  inline Subset up_set(FinSemigroup const& S, Elem x) {
    require_semilattice(S);
    Subset out(S.size());
    for (Elem y = 0; y < S.size(); ++y) {
      if (S.mul(x, y) == x) {
        out.set(y);
      }
    }
    return out;
  }

  // interior of the up-set of x
  inline Subset uparrow(FinSemigroup const& S, TopSpec const& T, Elem x) {
    return T.interior(up_set(S, x));
  }

  inline bool is_ideal(FinSemigroup const& S, Subset const& I) {
    for (auto i : elements_of(I)) {
      for (Elem s = 0; s < S.size(); ++s) {
        if (!I.test(S.mul(s, i)) || !I.test(S.mul(i, s))) {
          return false;
        }
      }
    }
    return true;
  }

  // All clopen ideals, sorted by size then elements.
  inline std::vector<Subset> enumerate_clopen_ideals(FinSemigroup const& S,
                                                     TopSpec const&      T) {
    require_semilattice(S);
    auto const comp = T.components();
    auto const k    = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    if (k > 24) {
      throw SizeError("too many clopen components (" + std::to_string(k) + ")");
    }
    std::vector<Subset> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
      Subset I(S.size());
      for (Elem x = 0; x < S.size(); ++x) {
        if ((mask >> comp[x]) & 1) {
          I.set(x);
        }
      }
      if (is_ideal(S, I)) {
        out.push_back(std::move(I));
      }
    }
    std::sort(out.begin(), out.end(), detail::subset_less);
    return out;
  }

  // Smallest clopen ideal containing A.
  inline Subset clopen_ideal_hull(FinSemigroup const& S, TopSpec const& T, Subset A) {
    while (true) {
      Subset next = T.clopen_hull(A | product_set(S, T.carrier(), A));
      if (next == A) {
        return A;
      }
      A = std::move(next);
    }
  }

  // Result of a pointwise U or U2 check. On success `y` is the least witness
  // in M(x) and `set` is V (for U) or the clopen ideal I (for U2).
  struct UResult {
    bool                  holds = false;
    std::optional<Elem>   y;
    std::optional<Subset> set;
  };

  // Some y in M(x) with M(x) inside the up-set of y. For an arbitrary open
  // U containing x both choices can be made inside M(x).
  inline UResult u_check(FinSemigroup const& S, TopSpec const& T, Elem x) {
    require_semilattice(S);
    auto const& M = T.minimal_open(x);
    for (auto y : elements_of(M)) {
      if (M.is_subset_of(up_set(S, y))) {
        return {true, y, M};
      }
    }
    return {};
  }

  // Some y in M(x) and a clopen ideal I with x outside I and the complement
  // of I inside the up-set of y. The least such I is the clopen-ideal hull of
  // the complement of the up-set.
  inline UResult u2_check(FinSemigroup const& S, TopSpec const& T, Elem x) {
    require_semilattice(S);
    for (auto y : elements_of(T.minimal_open(x))) {
      auto const I = clopen_ideal_hull(S, T, ~up_set(S, y));
      if (!I.test(x)) {
        return {true, y, I};
      }
    }
    return {};
  }

  struct SpaceResult {
    bool                holds = true;
    std::optional<Elem> point;  // first failing point
  };

  inline SpaceResult u_check_all(FinSemigroup const& S, TopSpec const& T) {
    for (Elem x = 0; x < S.size(); ++x) {
      if (!u_check(S, T, x).holds) {
        return {false, x};
      }
    }
    return {};
  }

  inline SpaceResult u2_check_all(FinSemigroup const& S, TopSpec const& T) {
    for (Elem x = 0; x < S.size(); ++x) {
      if (!u2_check(S, T, x).holds) {
        return {false, x};
      }
    }
    return {};
  }

  ////////////////////////////////////////////////////////////////////////
  // Ditopological inverse semigroups
  ////////////////////////////////////////////////////////////////////////

  // {s : es in U for some idempotent e in W} and {s : ss^{-1} in W}, met.
  inline Subset ditop_set(InverseStructure const& S, Subset const& U, Subset const& W) {
    Subset out(S.size());
    for (Elem s = 0; s < S.size(); ++s) {
      if (!W.test(S.range_idem(s))) {
        continue;
      }
      for (auto e : elements_of(W & S.idempotents())) {
        if (U.test(S.mul(e, s))) {
          out.set(s);
          break;
        }
      }
    }
    return out;
  }

  struct DitopResult {
    bool holds = true;
    // Inversion fails to be continuous at this point.
    std::optional<Elem> inversion_failure;
    // Otherwise the first x whose neighbourhood O = M(x) admits no U, W; the
    // set computed for the smallest U, V, W is `forced`.
    std::optional<Elem>   x;
    std::optional<Subset> O;
    std::optional<Subset> forced;
  };

  namespace detail {
    inline std::optional<Elem> inversion_failure(InverseStructure const& S,
                                                 TopSpec const&          T) {
      for (Elem x = 0; x < S.size(); ++x) {
        for (auto y : elements_of(T.minimal_open(x))) {
          if (!T.minimal_open(S.inv(x)).test(S.inv(y))) {
            return x;
          }
        }
      }
      return std::nullopt;
    }

    inline DitopResult ditop_impl(InverseStructure const& S, TopSpec const& T, bool weak) {
      if (S.size() != T.size()) {
        throw MalformedInput("topology and semigroup have different carriers");
      }
      if (auto f = inversion_failure(S, T)) {
        DitopResult r;
        r.holds             = false;
        r.inversion_failure = f;
        return r;
      }
      for (Elem x = 0; x < S.size(); ++x) {
        auto const& O = T.minimal_open(x);
        Subset      D = ditop_set(S, O, T.minimal_open(S.range_idem(x)));
        if (weak) {
          auto const& V = T.minimal_open(S.domain_idem(x));
          for (Elem s = 0; s < S.size(); ++s) {
            if (!V.test(S.domain_idem(s))) {
              D.reset(s);
            }
          }
        }
        if (!D.is_subset_of(O)) {
          DitopResult r;
          r.holds  = false;
          r.x      = x;
          r.O      = O;
          r.forced = D;
          return r;
        }
      }
      return {};
    }
  }  // namespace detail

  // Inversion is continuous and, for every x and open O containing x, some
  // neighbourhoods U of x and W of xx^{-1} have their displayed set inside O.
  // The set grows with U and W and the condition gets harder as O shrinks, so
  // U = O = M(x) and W = M(xx^{-1}) decide it.
  inline DitopResult ditopological_check(InverseStructure const& S, TopSpec const& T) {
    return detail::ditop_impl(S, T, false);
  }

  // As above with the extra constraint s^{-1}s in V, V a neighbourhood of
  // x^{-1}x.
  inline DitopResult weakly_ditopological_check(InverseStructure const& S,
                                                TopSpec const&          T) {
    return detail::ditop_impl(S, T, true);
  }

  ////////////////////////////////////////////////////////////////////////
  // Cantor-Bendixson
  ////////////////////////////////////////////////////////////////////////

  // Points of Y that are not isolated in the subspace Y.
  inline Subset cb_derivative(TopSpec const& T, Subset const& Y) {
    Subset out(T.size());
    for (auto x : elements_of(Y)) {
      if ((T.minimal_open(x) & Y).count() != 1) {
        out.set(x);
      }
    }
    return out;
  }

  inline Subset cb_derivative(TopSpec const& T) {
    return cb_derivative(T, T.carrier());
  }

  struct ScatteredResult {
    bool        scattered = true;
    std::size_t height    = 0;  // iterations until the derivative is empty
    Subset      kernel;         // perfect kernel when not scattered
  };

  inline ScatteredResult scattered_height(TopSpec const& T) {
    Subset      Y = T.carrier();
    std::size_t h = 0;
    while (Y.any()) {
      auto next = cb_derivative(T, Y);
      if (next == Y) {
        return {false, h, Y};
      }
      Y = std::move(next);
      ++h;
    }
    return {true, h, Y};
  }

  ////////////////////////////////////////////////////////////////////////
  // Right congruences with open classes
  ////////////////////////////////////////////////////////////////////////

  struct CongruenceBasisResult {
    bool holds = true;
    // Least right congruence all of whose classes are open, with the steps
    // that forced it beyond the clopen components.
    Congruence               rho;
    std::vector<ForcingStep> chain;
    // First failing point, its neighbourhood O = M(x) and the least element of
    // [x] outside O.
    std::optional<Elem>   x;
    std::optional<Subset> O;
    std::optional<Elem>   escaped;
  };

  // Every class of a right congruence with open classes is clopen, so such a
  // congruence contains the component partition and hence its right closure
  // rho. For each x and open O containing x the best candidate is rho, and
  // O = M(x) is the hardest case.
  inline CongruenceBasisResult congruence_basis_check(FinSemigroup const& S,
                                                      TopSpec const&      T) {
    if (S.size() != T.size()) {
      throw MalformedInput("topology and semigroup have different carriers");
    }
    auto const                         comp = T.components();
    std::vector<std::pair<Elem, Elem>> seeds;
    std::vector<std::optional<Elem>>   first(S.size());
    for (Elem x = 0; x < S.size(); ++x) {
      auto& f = first[comp[x]];
      if (!f) {
        f = x;
      } else {
        seeds.emplace_back(*f, x);
      }
    }
    auto tc = congruence_closure_traced(S, seeds, CongruenceKind::Right);
    CongruenceBasisResult r;
    r.rho   = tc.congruence;
    r.chain = std::move(tc.chain);
    for (Elem x = 0; x < S.size(); ++x) {
      auto const cls = r.rho.class_subset(x);
      auto const& O  = T.minimal_open(x);
      if (!cls.is_subset_of(O)) {
        r.holds   = false;
        r.x       = x;
        r.O       = O;
        r.escaped = static_cast<Elem>((cls - O).find_first());
        return r;
      }
    }
    return r;
  }

  // The same verdict by enumerating every right congruence (n <= bound) and
  // every open set.
  inline bool congruence_basis_check_enumerative(
      FinSemigroup const& S,
      TopSpec const&      T,
      std::size_t         bound = default_enumeration_bound) {
    auto const all = enumerate_congruences(S, CongruenceKind::Right, bound);
    std::vector<Congruence> open_classes;
    for (auto const& rho : all) {
      bool ok = true;
      for (Elem x = 0; x < S.size() && ok; ++x) {
        ok = T.is_open(rho.class_subset(x));
      }
      if (ok) {
        open_classes.push_back(rho);
      }
    }
    for (auto const& O : T.opens()) {
      for (auto x : elements_of(O)) {
        bool found = false;
        for (auto const& rho : open_classes) {
          if (rho.class_subset(x).is_subset_of(O)) {
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

  ////////////////////////////////////////////////////////////////////////
  // Truncated presentations
  ////////////////////////////////////////////////////////////////////////

  // A finite window of a countable semigroup with designated limit points.
  // Each limit point has a descending list of admissible neighbourhoods;
  // every other point is isolated. Elements with index >= tail_start lie past
  // the guard, and every admissible neighbourhood must meet them (unless the
  // presentation is a discrete control).
  class TruncatedPresentation {
   public:
    TruncatedPresentation(std::string                      id,
                          FinSemigroup                     base,
                          std::vector<Elem>                limit_points,
                          std::vector<std::vector<Subset>> families,
                          std::size_t                      guard,
                          Elem                             tail_start,
                          bool                             control = false)
        : _id(std::move(id)),
          _base(std::move(base)),
          _limits(std::move(limit_points)),
          _families(std::move(families)),
          _guard(guard),
          _tail_start(tail_start),
          _control(control) {
      validate();
      std::vector<Subset> m(_base.size(), Subset(_base.size()));
      for (Elem x = 0; x < _base.size(); ++x) {
        m[x].set(x);
      }
      for (std::size_t i = 0; i < _limits.size(); ++i) {
        m[_limits[i]] = _families[i].back();
      }
      _top = TopSpec::from_minimal(std::move(m));
    }

    std::string const& id() const noexcept {
      return _id;
    }

    FinSemigroup const& base() const noexcept {
      return _base;
    }

    std::vector<Elem> const& limit_points() const noexcept {
      return _limits;
    }

    std::vector<std::vector<Subset>> const& families() const noexcept {
      return _families;
    }

    std::vector<Subset> const& family(Elem p) const {
      return _families[limit_index(p)];
    }

    std::size_t guard() const noexcept {
      return _guard;
    }

    Elem tail_start() const noexcept {
      return _tail_start;
    }

    bool is_control() const noexcept {
      return _control;
    }

    // M(p) is the smallest admissible neighbourhood of p.
    TopSpec const& topology() const noexcept {
      return _top;
    }

    std::size_t limit_index(Elem p) const {
      auto it = std::find(_limits.begin(), _limits.end(), p);
      if (it == _limits.end()) {
        throw DomainError("element " + _base.label(p) + " is not a limit point");
      }
      return static_cast<std::size_t>(it - _limits.begin());
    }

    Subset tail() const {
      Subset t(_base.size());
      for (Elem x = _tail_start; x < _base.size(); ++x) {
        t.set(x);
      }
      return t;
    }

   private:
    void validate() const {
      auto const n = _base.size();
      if (_limits.size() != _families.size()) {
        throw MalformedInput("one neighbourhood family per limit point is required");
      }
      if (_tail_start > n) {
        throw MalformedInput("guard index beyond the carrier");
      }
      Subset limits(n);
      for (auto p : _limits) {
        if (p >= n) {
          throw MalformedInput("limit point out of range");
        }
        if (limits.test(p)) {
          throw MalformedInput("limit point listed twice");
        }
        limits.set(p);
      }
      auto const t = tail();
      for (std::size_t i = 0; i < _limits.size(); ++i) {
        auto const& fam = _families[i];
        if (fam.empty()) {
          throw MalformedInput("empty neighbourhood family");
        }
        for (std::size_t k = 0; k < fam.size(); ++k) {
          auto const& V = fam[k];
          if (V.size() != n || !V.test(_limits[i])) {
            throw MalformedInput("neighbourhood does not contain its limit point");
          }
          if (k > 0 && !V.is_subset_of(fam[k - 1])) {
            throw MalformedInput("neighbourhood family is not descending");
          }
          if (!_control && !V.intersects(t)) {
            throw MalformedInput("admissible neighbourhood has no tail past the guard");
          }
          auto const others = (V & limits);
          if (others.count() != 1) {
            throw MalformedInput("a neighbourhood contains another limit point");
          }
        }
      }
    }

    std::string                      _id;
    FinSemigroup                     _base;
    std::vector<Elem>                _limits;
    std::vector<std::vector<Subset>> _families;
    std::size_t                      _guard;
    Elem                             _tail_start;
    bool                             _control;
    TopSpec                          _top;
  };

  // Continuity restricted to factors below the guard. A truncation keeps
  // multipliers near the window edge whose products with the tail are not
  // yet controlled; the infinite space has no such edge.
  inline ContinuityResult guarded_continuity_check(TruncatedPresentation const& P) {
    return detail::continuity_over(P.base(), P.topology(), P.tail_start());
  }

}  // namespace semitop
