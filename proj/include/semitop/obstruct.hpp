#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "semitop/congruence.hpp"
#include "semitop/fixtures.hpp"
#include "semitop/topo.hpp"
#include "semitop/transforms.hpp"

// Forcing certificates: every admissible neighbourhood V of a limit point p
// generates a right congruence (the closure of {(p, v) : v in V}) whose
// classes contradict an open target. The finite engine checks the forcing
// steps; it makes no claim about the countable spaces themselves.

namespace semitop {

  ////////////////////////////////////////////////////////////////////////
  // Small structural checks
  ////////////////////////////////////////////////////////////////////////

  struct RightSimpleResult {
    bool                holds = true;
    std::optional<Elem> witness;  // first a with aS != S
  };

  inline RightSimpleResult right_simple_check(FinSemigroup const& S) {
    for (Elem a = 0; a < S.size(); ++a) {
      if (!right_translate_image(S, a).all()) {
        return {false, a};
      }
    }
    return {};
  }

  struct ChainFiniteResult {
    std::size_t       longest = 0;
    std::vector<Elem> chain;  // bottom to top
  };

  // Longest chain in the natural order of a finite semilattice.
  inline ChainFiniteResult chain_finite_check(FinSemigroup const& S) {
    require_semilattice(S);
    auto const                       n = S.size();
    std::vector<std::size_t>         best(n, 0);
    std::vector<std::optional<Elem>> next(n);
    std::function<std::size_t(Elem)> height = [&](Elem e) -> std::size_t {
      if (best[e]) {
        return best[e];
      }
      std::size_t h = 1;
      for (Elem f = 0; f < n; ++f) {
        if (f != e && S.mul(e, f) == e) {
          auto const hf = height(f) + 1;
          if (hf > h) {
            h       = hf;
            next[e] = f;
          }
        }
      }
      return best[e] = h;
    };
    ChainFiniteResult r;
    std::optional<Elem> start;
    for (Elem e = 0; e < n; ++e) {
      if (height(e) > r.longest) {
        r.longest = best[e];
        start     = e;
      }
    }
    for (auto e = start; e; e = next[*e]) {
      r.chain.push_back(*e);
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Targets and certificates
  ////////////////////////////////////////////////////////////////////////

  enum class TargetMode { ClassEscapes, IsolatedCollapses };

  inline char const* to_string(TargetMode m) {
    return m == TargetMode::ClassEscapes ? "class-escapes" : "isolated-collapses";
  }

  // ClassEscapes: [p] must leave the open set `open`.
  // IsolatedCollapses: the class of the isolated point q must be non-singleton.
  struct Target {
    TargetMode          mode;
    Subset              open;
    std::optional<Elem> q;

    static Target escapes(Subset O) {
      return {TargetMode::ClassEscapes, std::move(O), std::nullopt};
    }

    static Target collapses(std::size_t n, Elem q) {
      Subset s(n);
      s.set(q);
      return {TargetMode::IsolatedCollapses, std::move(s), q};
    }
  };

  struct EscapeWitness {
    std::size_t target;
    TargetMode  mode;
    Elem        element;  // in [p] outside O, or in [q] other than q
  };

  // The closure forced by one admissible neighbourhood.
  struct VForcing {
    std::size_t                        index;  // position in the family
    Subset                             V;
    std::vector<std::pair<Elem, Elem>> seeds;
    std::vector<ForcingStep>           chain;
    Congruence                         partition;
    std::optional<EscapeWitness>       escape;
  };

  struct ObstructionCertificate {
    TruncatedPresentation presentation;
    Elem                  p;
    std::vector<Target>   targets;
    std::vector<VForcing> per_v;
  };

  struct NoObstruction {
    std::vector<std::size_t> surviving;  // family indices with no firing target
    std::vector<VForcing>    per_v;
  };

  inline std::vector<std::pair<Elem, Elem>> forcing_seeds(Elem p, Subset const& V) {
    std::vector<std::pair<Elem, Elem>> seeds;
    for (auto v : elements_of(V)) {
      if (v != p) {
        seeds.emplace_back(p, v);
      }
    }
    return seeds;
  }

  // Right closure of {(p, v) : v in V} with its forcing chain. V must be one of
  // the admissible neighbourhoods of p.
  inline TracedClosure forcing_closure(TruncatedPresentation const& P,
                                       Elem                         p,
                                       Subset const&                V) {
    auto const& fam = P.family(p);
    if (std::find(fam.begin(), fam.end(), V) == fam.end()) {
      throw DomainError("neighbourhood is not in the admissible family of "
                        + P.base().label(p));
    }
    return congruence_closure_traced(P.base(), forcing_seeds(p, V), CongruenceKind::Right);
  }

  namespace detail {
    inline std::optional<EscapeWitness> first_firing(Congruence const&          rho,
                                                     Elem                       p,
                                                     std::vector<Target> const& targets) {
      for (std::size_t i = 0; i < targets.size(); ++i) {
        auto const& t = targets[i];
        if (t.mode == TargetMode::ClassEscapes) {
          auto const out = rho.class_subset(p) - t.open;
          if (out.any()) {
            return EscapeWitness{i, t.mode, static_cast<Elem>(out.find_first())};
          }
        } else {
          auto cls = rho.class_subset(*t.q);
          cls.reset(*t.q);
          if (cls.any()) {
            return EscapeWitness{i, t.mode, static_cast<Elem>(cls.find_first())};
          }
        }
      }
      return std::nullopt;
    }
  }  // namespace detail

  // Runs every admissible V of p. A certificate is returned when some target
  // fires for every V; otherwise the surviving neighbourhoods are listed.
  inline std::variant<ObstructionCertificate, NoObstruction>
  escape_certificate(TruncatedPresentation const& P,
                     Elem                         p,
                     std::vector<Target> const&   targets) {
    auto const&           fam = P.family(p);
    std::vector<VForcing> per_v;
    std::vector<std::size_t> surviving;
    for (std::size_t k = 0; k < fam.size(); ++k) {
      auto tc = forcing_closure(P, p, fam[k]);
      auto w  = detail::first_firing(tc.congruence, p, targets);
      if (!w) {
        surviving.push_back(k);
      }
      per_v.push_back(
          {k, fam[k], forcing_seeds(p, fam[k]), std::move(tc.chain), tc.congruence, w});
    }
    if (!surviving.empty()) {
      return NoObstruction{std::move(surviving), std::move(per_v)};
    }
    return ObstructionCertificate{P, p, targets, std::move(per_v)};
  }

  struct ReplayReport {
    bool        ok = true;
    std::string failure;
  };

  // Re-derives every closure through congruence_closure and re-checks each
  // escape against the topology of the presentation.
  inline ReplayReport replay(ObstructionCertificate const& C) {
    auto fail = [](std::string m) { return ReplayReport{false, std::move(m)}; };
    auto const& P   = C.presentation;
    auto const& S   = P.base();
    auto const& T   = P.topology();
    auto const& fam = P.family(C.p);
    if (C.per_v.size() != fam.size()) {
      return fail("certificate does not cover every admissible neighbourhood");
    }
    for (std::size_t i = 0; i < C.targets.size(); ++i) {
      auto const& t = C.targets[i];
      if (t.open.size() != S.size()) {
        return fail("target " + std::to_string(i) + " has the wrong carrier");
      }
      if (t.mode == TargetMode::ClassEscapes) {
        if (!T.is_open(t.open) || !t.open.test(C.p)) {
          return fail("target " + std::to_string(i) + " is not an open neighbourhood of p");
        }
      } else if (!t.q || T.minimal_open(*t.q).count() != 1) {
        return fail("target " + std::to_string(i) + " is not an isolated point");
      }
    }
    for (std::size_t k = 0; k < fam.size(); ++k) {
      auto const& f = C.per_v[k];
      if (f.index != k || f.V != fam[k]) {
        return fail("neighbourhood " + std::to_string(k) + " does not match the family");
      }
      if (f.seeds != forcing_seeds(C.p, f.V)) {
        return fail("seeds of neighbourhood " + std::to_string(k) + " differ");
      }
      for (auto const& step : f.chain) {
        auto const a = step.left ? S.mul(step.multiplier, step.pair.first)
                                 : S.mul(step.pair.first, step.multiplier);
        auto const b = step.left ? S.mul(step.multiplier, step.pair.second)
                                 : S.mul(step.pair.second, step.multiplier);
        if (step.derived != std::pair{a, b}) {
          return fail("chain step does not multiply out in neighbourhood "
                      + std::to_string(k));
        }
      }
      auto const tc = congruence_closure_traced(S, f.seeds, CongruenceKind::Right);
      if (tc.congruence.classes() != f.partition.classes()) {
        return fail("partition of neighbourhood " + std::to_string(k) + " differs");
      }
      if (tc.chain != f.chain) {
        return fail("chain of neighbourhood " + std::to_string(k) + " differs");
      }
      if (!f.escape || f.escape->target >= C.targets.size()) {
        return fail("neighbourhood " + std::to_string(k) + " has no escape");
      }
      auto const& w = *f.escape;
      auto const& t = C.targets[w.target];
      if (w.mode != t.mode) {
        return fail("escape mode does not match its target");
      }
      if (t.mode == TargetMode::ClassEscapes) {
        if (!tc.congruence.related(C.p, w.element) || t.open.test(w.element)) {
          return fail("escape element of neighbourhood " + std::to_string(k)
                      + " is not in [p] outside O");
        }
      } else if (!tc.congruence.related(*t.q, w.element) || w.element == *t.q) {
        return fail("collapse witness of neighbourhood " + std::to_string(k)
                    + " is not in [q]");
      }
    }
    return {};
  }

  ////////////////////////////////////////////////////////////////////////
  // Catalog
  ////////////////////////////////////////////////////////////////////////

  struct CatalogInstance {
    TruncatedPresentation presentation;
    Elem                  p;
    std::vector<Target>   targets;
  };

  struct CatalogOptions {
    std::size_t                window = 6;
    std::optional<std::size_t> guard;  // default window - 2
    std::string                group      = "Z2";  // right_simple_zero only
    std::size_t                rank_bound = 1;     // luke only
  };

  struct FamilyInfo {
    std::string id;
    std::string summary;
  };

  inline std::vector<FamilyInfo> catalog_families() {
    return {
        {"exB",
         "T x {1,-1} for the antichain with zero T; (0,1) has neighbourhoods "
         "{(0,1)} + {(x_i,1) : i >= k}; forcing collapses the isolated (0,-1)"},
        {"odd_chain",
         "{0} + {1/(k+1)} under min; 0 has neighbourhoods {0} + odd reciprocals "
         "past a cutoff; forcing pulls an even reciprocal into [0]"},
        {"right_simple_zero",
         "S^0 for right simple S in {Z2, R2, S3}; 0 is not isolated; forcing "
         "collapses an isolated point of S"},
        {"brandt",
         "partial bijections of rank <= 1; the empty map has neighbourhoods "
         "{empty} + {{(m,m)} : m >= k}; forcing leaves the idempotents"},
        {"luke",
         "partial bijections of rank <= r; the empty map has neighbourhoods "
         "{g : dom g, im g avoid [0,k)}; forcing puts 0 into an image"},
    };
  }

  namespace detail {
    inline std::size_t resolve_guard(CatalogOptions const& o, std::size_t min_window = 4) {
      if (o.window < min_window) {
        throw DomainError("window must be at least " + std::to_string(min_window) + " (got "
                          + std::to_string(o.window) + ")");
      }
      auto const c = o.guard.value_or(o.window - 2);
      if (c >= o.window) {
        throw DomainError("guard must be below the window");
      }
      return c;
    }

    inline Subset subset_where(std::size_t n, std::function<bool(Elem)> const& pred) {
      Subset s(n);
      for (Elem x = 0; x < n; ++x) {
        if (pred(x)) {
          s.set(x);
        }
      }
      return s;
    }

    inline Elem first_mentioning(std::vector<PartialPerm> const& elems, std::size_t c) {
      for (Elem i = 0; i < elems.size(); ++i) {
        if (std::get<0>(partial_perm_order_key(elems[i])) >= static_cast<long long>(c)) {
          return i;
        }
      }
      return static_cast<Elem>(elems.size());
    }

    inline CatalogInstance exb_instance(CatalogOptions const& o) {
      auto const c = resolve_guard(o);
      auto const n = o.window;
      auto const S = exb_semigroup(n);
      Elem const p = exb_index(std::nullopt, 1);
      std::vector<Subset> fam;
      for (std::size_t k = 0; k <= c; ++k) {
        Subset V(S.size());
        V.set(p);
        for (std::size_t i = k; i < n; ++i) {
          V.set(exb_index(i, 1));
        }
        fam.push_back(std::move(V));
      }
      auto const tail = static_cast<Elem>(2 + 2 * c);
      return {TruncatedPresentation("exB", S, {p}, {std::move(fam)}, c, tail),
              p,
              {Target::collapses(S.size(), exb_index(std::nullopt, -1))}};
    }

    inline CatalogInstance odd_chain_instance(CatalogOptions const& o) {
      auto const c = resolve_guard(o);
      auto const n = o.window;
      auto const S = reciprocal_chain(n);
      std::vector<Subset> fam;
      for (std::size_t m = 0; 2 * m <= c; ++m) {
        fam.push_back(subset_where(S.size(), [&](Elem x) {
          // index k + 1 holds 1/(k+1); odd reciprocals have even k
          return x == 0 || ((x - 1) % 2 == 0 && x - 1 >= 2 * m);
        }));
      }
      auto const O = fam.front();
      return {TruncatedPresentation("odd_chain", S, {0}, {std::move(fam)}, c,
                                    static_cast<Elem>(c + 1)),
              0,
              {Target::escapes(O)}};
    }

    inline FinSemigroup right_simple_group(std::string const& g) {
      if (g == "Z2") {
        return cyclic_group(2);
      }
      if (g == "R2") {
        return right_zero(2);
      }
      if (g == "S3") {
        return symmetric_group(3);
      }
      throw DomainError("unknown right simple semigroup '" + g + "' (Z2, R2 or S3)");
    }

    // S^0 with the zero first.
    inline FinSemigroup zero_first(FinSemigroup const& S) {
      auto const               n = S.size() + 1;
      std::vector<Elem>        table(n * n, 0);
      std::vector<std::string> labels{"0"};
      for (Elem a = 1; a < n; ++a) {
        labels.push_back(S.label(a - 1));
        for (Elem b = 1; b < n; ++b) {
          table[a * n + b] = S.mul(a - 1, b - 1) + 1;
        }
      }
      return FinSemigroup(n, std::move(table), std::move(labels), std::nullopt,
                          S.name() + "^0");
    }

    inline CatalogInstance right_simple_zero_instance(CatalogOptions const& o) {
      resolve_guard(o);
      auto const base = right_simple_group(o.group);
      if (!right_simple_check(base).holds) {
        throw TheoremViolation(o.group + " is not right simple");
      }
      auto const S = zero_first(base);
      Subset     all(S.size());
      all.set();
      return {TruncatedPresentation("right_simple_zero", S, {0}, {{all}}, 0, 1),
              0,
              {Target::collapses(S.size(), 1)}};
    }

    inline CatalogInstance brandt_instance(CatalogOptions const& o) {
      auto const c = resolve_guard(o);
      if (c < 1) {
        throw DomainError("guard must be at least 1");
      }
      auto const B = brandt_semigroup(o.window);
      auto const n = B.semigroup.size();
      std::vector<Subset> fam;
      for (std::size_t k = 0; k <= c; ++k) {
        fam.push_back(subset_where(n, [&](Elem x) {
          auto const& f = B.elements[x];
          if (f.rank() == 0) {
            return true;
          }
          auto const [a, b] = f.graph().front();
          return a == b && a >= k;
        }));
      }
      auto const O = fam.front();
      return {TruncatedPresentation("brandt", B.semigroup, {0}, {std::move(fam)}, c,
                                    first_mentioning(B.elements, c)),
              0,
              {Target::escapes(O)}};
    }

    inline CatalogInstance luke_instance(CatalogOptions const& o) {
      auto const c = resolve_guard(o, 3);
      if (c < 1) {
        throw DomainError("guard must be at least 1");
      }
      if (o.rank_bound < 1) {
        throw DomainError("rank bound must be at least 1");
      }
      auto const I = partial_perm_semigroup(
          o.window, std::min(o.rank_bound, o.window),
          "I" + std::to_string(o.window) + "(rank<=" + std::to_string(o.rank_bound) + ")");
      auto const n = I.semigroup.size();
      std::vector<Subset> fam;
      for (std::size_t k = 0; k <= c; ++k) {
        fam.push_back(subset_where(n, [&](Elem x) {
          for (auto [a, b] : I.elements[x].graph()) {
            if (a < k || b < k) {
              return false;
            }
          }
          return true;
        }));
      }
      auto const O = subset_where(n, [&](Elem x) {
        return !I.elements[x].im().test(0);
      });
      return {TruncatedPresentation("luke", I.semigroup, {0}, {std::move(fam)}, c,
                                    first_mentioning(I.elements, c)),
              0,
              {Target::escapes(O)}};
    }

    // Same carrier, with {p} appended to the family: the topology becomes
    // discrete and the trivial neighbourhood is admissible.
    inline CatalogInstance discrete_control(CatalogInstance const& inst) {
      auto const& P   = inst.presentation;
      auto        fam = P.families();
      for (std::size_t i = 0; i < fam.size(); ++i) {
        Subset single(P.base().size());
        single.set(P.limit_points()[i]);
        fam[i].push_back(std::move(single));
      }
      return {TruncatedPresentation(P.id() + "-discrete", P.base(), P.limit_points(),
                                    std::move(fam), P.guard(), P.tail_start(), true),
              inst.p,
              inst.targets};
    }
  }  // namespace detail

  // Family ids followed by their discrete controls.
  inline std::vector<std::string> catalog_ids() {
    std::vector<std::string> ids;
    for (auto const& f : catalog_families()) {
      ids.push_back(f.id);
    }
    for (auto const& f : catalog_families()) {
      ids.push_back(f.id + "-discrete");
    }
    return ids;
  }

  // Throws DomainError for unknown ids or invalid options.
  inline CatalogInstance build_instance(std::string const& id, CatalogOptions const& o = {}) {
    std::string base    = id;
    bool        control = false;
    if (auto const pos = id.rfind("-discrete");
        pos != std::string::npos && pos + 9 == id.size()) {
      base    = id.substr(0, pos);
      control = true;
    }
    std::optional<CatalogInstance> inst;
    if (base == "exB") {
      inst = detail::exb_instance(o);
    } else if (base == "odd_chain") {
      inst = detail::odd_chain_instance(o);
    } else if (base == "right_simple_zero") {
      inst = detail::right_simple_zero_instance(o);
    } else if (base == "brandt") {
      inst = detail::brandt_instance(o);
    } else if (base == "luke") {
      inst = detail::luke_instance(o);
    } else {
      throw DomainError("unknown catalog instance '" + id + "'");
    }
    return control ? detail::discrete_control(*inst) : std::move(*inst);
  }

  // Every bundled instance at one window: each family once, with
  // right_simple_zero for each of Z2, R2 and S3.
  inline std::vector<CatalogInstance> catalog(std::size_t window = 6, bool controls = false) {
    std::vector<CatalogInstance> out;
    for (auto const& f : catalog_families()) {
      std::vector<std::string> groups{"Z2"};
      if (f.id == "right_simple_zero") {
        groups = {"Z2", "R2", "S3"};
      }
      for (auto const& g : groups) {
        CatalogOptions o;
        o.window = window;
        o.group  = g;
        out.push_back(build_instance(controls ? f.id + "-discrete" : f.id, o));
      }
    }
    return out;
  }

  inline std::variant<ObstructionCertificate, NoObstruction>
  escape_certificate(CatalogInstance const& inst) {
    return escape_certificate(inst.presentation, inst.p, inst.targets);
  }

}  // namespace semitop
