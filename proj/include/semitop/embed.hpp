#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "semitop/fixtures.hpp"
#include "semitop/inverse.hpp"
#include "semitop/topo.hpp"
#include "semitop/transforms.hpp"

namespace semitop {

  // Finite windows of X^X and I_X, lazily evaluated elements of N^N and I_N,
  // and finite products of finite semigroups.
  enum class TargetSpace { Transformations, PartialPerms, NN, IN, Product };

  inline std::string to_string(TargetSpace t) {
    switch (t) {
      case TargetSpace::Transformations:
        return "transformations";
      case TargetSpace::PartialPerms:
        return "partial_perms";
      case TargetSpace::NN:
        return "NN";
      case TargetSpace::IN:
        return "IN";
      case TargetSpace::Product:
        return "product";
    }
    return "?";
  }

  // Coordinates in a product of finite semigroups.
  using ProductElem = std::vector<Elem>;
  using Image       = std::variant<Transformation, PartialPerm, LazyMap, ProductElem>;

  struct RepresentationMap {
    std::string               construction;
    FinSemigroup              source;
    TargetSpace               target = TargetSpace::Transformations;
    std::vector<Image>        images;
    std::size_t               window = 0;  // evaluation window of LazyMap images
    std::vector<FinSemigroup> factors;     // Product targets only
  };

  struct MapFailure {
    std::string what;
    Elem        a = 0;
    Elem        b = 0;
  };

  namespace detail {

    inline Image image_product(RepresentationMap const& R, Image const& a, Image const& b) {
      return std::visit(
          [&](auto const& x) -> Image {
            using T = std::decay_t<decltype(x)>;
            auto const& y = std::get<T>(b);
            if constexpr (std::is_same_v<T, LazyMap>) {
              return LazyMap::compose(x, y);
            } else if constexpr (std::is_same_v<T, ProductElem>) {
              ProductElem out(x.size());
              for (std::size_t i = 0; i < x.size(); ++i) {
                out[i] = R.factors[i].mul(x[i], y[i]);
              }
              return out;
            } else {
              return compose(x, y);
            }
          },
          a);
    }

    // A finite fingerprint: equal fingerprints iff equal images at the scale
    // the map is checked on.
    inline std::vector<std::optional<Point>> fingerprint(RepresentationMap const& R,
                                                         Image const&             a) {
      std::vector<std::optional<Point>> out;
      std::visit(
          [&](auto const& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, LazyMap>) {
              for (Point p = 0; p < R.window; ++p) {
                out.push_back(x(p));
              }
            } else if constexpr (std::is_same_v<T, ProductElem>) {
              out.assign(x.begin(), x.end());
            } else {
              for (Elem p = 0; p < x.window(); ++p) {
                if (x[p] == undefined) {
                  out.push_back(std::nullopt);
                } else {
                  out.push_back(x[p]);
                }
              }
            }
          },
          a);
      return out;
    }

    // Every pair for small sources, a fixed pseudo-random sample otherwise.
    inline std::vector<std::pair<Elem, Elem>> check_pairs(std::size_t n) {
      std::vector<std::pair<Elem, Elem>> out;
      if (n * n <= (std::size_t(1) << 16)) {
        for (Elem a = 0; a < n; ++a) {
          for (Elem b = 0; b < n; ++b) {
            out.emplace_back(a, b);
          }
        }
        return out;
      }
      std::mt19937_64                     rng(0x5e3d);
      std::uniform_int_distribution<Elem> d(0, static_cast<Elem>(n - 1));
      for (int i = 0; i < (1 << 14); ++i) {
        Elem const a = d(rng);
        out.emplace_back(a, d(rng));
      }
      return out;
    }

    inline std::size_t lazy_window(std::vector<Image> const& images) {
      Point mx = 0;
      for (auto const& im : images) {
        if (auto const* m = std::get_if<LazyMap>(&im)) {
          mx = std::max(mx, mentioned_max(*m));
        }
      }
      return static_cast<std::size_t>(2 * (mx + 1));
    }

  }  // namespace detail

  inline std::optional<MapFailure> homomorphism_failure(RepresentationMap const& R) {
    auto const& S = R.source;
    for (auto [a, b] : detail::check_pairs(S.size())) {
      auto const lhs = detail::fingerprint(R, R.images[S.mul(a, b)]);
      auto const rhs =
          detail::fingerprint(R, detail::image_product(R, R.images[a], R.images[b]));
      if (lhs != rhs) {
        return MapFailure{"image(ab) != image(a) image(b)", a, b};
      }
    }
    return std::nullopt;
  }

  inline std::optional<MapFailure> injectivity_failure(RepresentationMap const& R) {
    std::map<std::vector<std::optional<Point>>, Elem> seen;
    for (Elem a = 0; a < R.source.size(); ++a) {
      auto [it, fresh] = seen.emplace(detail::fingerprint(R, R.images[a]), a);
      if (!fresh) {
        return MapFailure{"equal images", it->second, a};
      }
    }
    return std::nullopt;
  }

  namespace detail {
    inline RepresentationMap certify(RepresentationMap R) {
      if (R.images.size() != R.source.size()) {
        throw TheoremViolation(R.construction + ": image count differs from source size");
      }
      for (auto const& check : {homomorphism_failure, injectivity_failure}) {
        if (auto f = check(R)) {
          throw TheoremViolation(R.construction + ": " + f->what + " at ("
                                 + R.source.label(f->a) + ", " + R.source.label(f->b)
                                 + ")");
        }
      }
      return R;
    }

    // The subsemigroup on `elems` (which must be closed), relabelled densely.
    inline FinSemigroup restrict_semigroup(FinSemigroup const&      S,
                                           std::vector<Elem> const& elems,
                                           std::optional<Elem>      identity,
                                           std::string              name) {
      std::vector<std::string> labels;
      for (auto x : elems) {
        labels.push_back(S.label(x));
      }
      return semigroup_from_elements(
          elems, [&](Elem a, Elem b) { return S.mul(a, b); }, std::move(labels), identity,
          std::move(name));
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Regular representations
  ////////////////////////////////////////////////////////////////////////

  // External: always act on S with an identity adjoined. IfNeeded: act on S
  // itself when it already has an identity.
  enum class AdjoinPolicy { External, IfNeeded };

  // s -> (x -> xs) on S^1.
  inline RepresentationMap cayley_right_regular(FinSemigroup const& S,
                                                AdjoinPolicy policy = AdjoinPolicy::External) {
    auto const          n = S.size();
    std::optional<Elem> one;
    if (policy == AdjoinPolicy::IfNeeded) {
      for (Elem e = 0; e < n && !one; ++e) {
        if (S.is_identity(e)) {
          one = e;
        }
      }
    }
    auto const        m = one ? n : n + 1;
    RepresentationMap R{"cayley_right_regular", S, TargetSpace::Transformations, {}, m, {}};
    for (Elem s = 0; s < n; ++s) {
      std::vector<Elem> t(m);
      for (Elem x = 0; x < n; ++x) {
        t[x] = S.mul(x, s);
      }
      if (!one) {
        t[n] = s;
      }
      R.images.emplace_back(Transformation(std::move(t)));
    }
    return detail::certify(std::move(R));
  }

  // a -> (x -> xa) with domain {x : x aa^{-1} = x}.
  inline RepresentationMap wagner_preston(InverseStructure const& S) {
    auto const        n = S.size();
    RepresentationMap R{"wagner_preston", S.base(), TargetSpace::PartialPerms, {}, n, {}};
    for (Elem a = 0; a < n; ++a) {
      auto const        aa = S.range_idem(a);
      std::vector<Elem> m(n, undefined);
      for (Elem x = 0; x < n; ++x) {
        if (S.mul(x, aa) == x) {
          m[x] = S.mul(x, a);
        }
      }
      try {
        R.images.emplace_back(PartialPerm(std::move(m)));
      } catch (MalformedInput const&) {
        throw TheoremViolation("wagner_preston: image of " + S.base().label(a)
                               + " is not injective");
      }
    }
    R = detail::certify(std::move(R));
    for (Elem a = 0; a < n; ++a) {
      if (std::get<PartialPerm>(R.images[S.inv(a)])
          != invert(std::get<PartialPerm>(R.images[a]))) {
        throw TheoremViolation("wagner_preston: inversion not preserved at "
                               + S.base().label(a));
      }
    }
    return R;
  }

  ////////////////////////////////////////////////////////////////////////
  // Products and adjoined elements
  ////////////////////////////////////////////////////////////////////////

  // Tuples act blockwise: inside A_i = {pair_index(i, j)} as factor i on j.
  inline RepresentationMap product_embed(std::vector<RepresentationMap> const& factors) {
    if (factors.empty()) {
      throw DomainError("product_embed needs at least one factor");
    }
    auto const kind = factors.front().target;
    if (kind != TargetSpace::Transformations && kind != TargetSpace::PartialPerms) {
      throw DomainError("product_embed factors must map into finite windows");
    }
    std::size_t total = 1;
    for (auto const& F : factors) {
      if (F.target != kind) {
        throw DomainError("product_embed factors must share a target space");
      }
      detail::certify(F);
      total *= F.source.size();
      if (total > 2048) {
        throw SizeError("product_embed: product has more than 2048 elements");
      }
    }
    FinSemigroup source = factors.front().source;
    for (std::size_t i = 1; i < factors.size(); ++i) {
      source = direct_product(source, factors[i].source);
    }

    RepresentationMap R{"product_embed",
                        source,
                        kind == TargetSpace::Transformations ? TargetSpace::NN : TargetSpace::IN,
                        {},
                        0,
                        {}};
    for (Elem t = 0; t < source.size(); ++t) {
      std::vector<LazyMap> blocks(factors.size());
      Elem                 rest = t;
      for (std::size_t i = factors.size(); i-- > 0;) {
        auto const& F = factors[i];
        Elem const  a = rest % F.source.size();
        rest /= F.source.size();
        blocks[i] = std::visit(
            [](auto const& x) -> LazyMap {
              if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Transformation>
                            || std::is_same_v<std::decay_t<decltype(x)>, PartialPerm>) {
                return lazy_from(x);
              } else {
                throw DomainError("product_embed factors must map into finite windows");
              }
            },
            F.images[a]);
      }
      while (!blocks.empty()
             && std::holds_alternative<IdentityNode>(blocks.back().node().v)) {
        blocks.pop_back();
      }
      R.images.emplace_back(blocks.empty() ? LazyMap::identity()
                                           : LazyMap::pair_block(std::move(blocks)));
    }
    R.window = detail::lazy_window(R.images);
    R        = detail::certify(std::move(R));
    // (A_i)f is inside A_i
    for (Elem t = 0; t < source.size(); ++t) {
      auto const& f = std::get<LazyMap>(R.images[t]);
      for (Point x = 0; x < R.window; ++x) {
        if (auto y = f(x); y && unpair_index(*y).first != unpair_index(x).first) {
          throw TheoremViolation("product_embed: block structure broken at "
                                 + std::to_string(x));
        }
      }
    }
    return R;
  }

  enum class Adjoined { Identity, Zero };

  // The image of t from a window-k transformation representation: t acts on
  // 2N by 2x -> 2(x)t (identity past the window), fixes 1 and sends every
  // other odd point to 3. The adjoined identity acts as the identity, the
  // adjoined zero as the constant 1.
  inline LazyMap adjoin_image(Transformation const& t) {
    std::map<Point, std::optional<Point>> e;
    for (Elem x = 0; x < t.window(); ++x) {
      if (t[x] != x) {
        e[2 * Point(x)] = 2 * Point(t[x]);
      }
    }
    e[1] = 1;
    return LazyMap::table(std::move(e), LazyMap::affine(2, {{1, 0}, {0, 3}}));
  }

  inline RepresentationMap adjoin_embed(RepresentationMap const& T, Adjoined kind) {
    if (T.target != TargetSpace::Transformations) {
      throw DomainError("adjoin_embed needs a representation by transformations");
    }
    detail::certify(T);
    auto source = kind == Adjoined::Identity ? adjoin_identity(T.source) : adjoin_zero(T.source);
    RepresentationMap R{kind == Adjoined::Identity ? "adjoin_embed_identity"
                                                   : "adjoin_embed_zero",
                        source,
                        TargetSpace::NN,
                        {},
                        0,
                        {}};
    for (auto const& im : T.images) {
      R.images.emplace_back(adjoin_image(std::get<Transformation>(im)));
    }
    R.images.emplace_back(kind == Adjoined::Identity ? LazyMap::identity()
                                                     : LazyMap::constant(1));
    R.window = detail::lazy_window(R.images);
    return detail::certify(std::move(R));
  }

  ////////////////////////////////////////////////////////////////////////
  // I_N into N^N
  ////////////////////////////////////////////////////////////////////////

  // 0 -> 0; x+1 -> y+1 for (x, y) in g; x+1 -> 0 for x outside dom g.
  inline LazyMap embcl_map(PartialPerm const& g) {
    std::map<Point, std::optional<Point>> e{{0, 0}};
    for (Elem x = 0; x < g.window(); ++x) {
      e[Point(x) + 1] = g[x] == undefined ? Point(0) : Point(g[x]) + 1;
    }
    return LazyMap::table(std::move(e), LazyMap::constant(0));
  }

  inline RepresentationMap embcl_embed(RepresentationMap const& R) {
    if (R.target != TargetSpace::PartialPerms) {
      throw DomainError("embcl_embed needs a representation by partial bijections");
    }
    RepresentationMap out{"embcl", R.source, TargetSpace::NN, {}, 0, {}};
    for (auto const& im : R.images) {
      out.images.emplace_back(embcl_map(std::get<PartialPerm>(im)));
    }
    out.window = detail::lazy_window(out.images);
    return detail::certify(std::move(out));
  }

  inline RepresentationMap embcl_embed(PartialPermSemigroup const& I) {
    RepresentationMap R{"inclusion", I.semigroup, TargetSpace::PartialPerms, {}, 0, {}};
    for (auto const& f : I.elements) {
      R.images.emplace_back(f);
      R.window = f.window();
    }
    return embcl_embed(detail::certify(std::move(R)));
  }

  ////////////////////////////////////////////////////////////////////////
  // Subgroups of transformation monoids
  ////////////////////////////////////////////////////////////////////////

  // The subsemigroup generated by `gens`, sorted.
  inline std::vector<Transformation> transformation_closure(
      std::vector<Transformation> const& gens) {
    std::set<Transformation>    seen(gens.begin(), gens.end());
    std::vector<Transformation> todo(seen.begin(), seen.end());
    while (!todo.empty()) {
      auto const f = todo.back();
      todo.pop_back();
      for (auto const& g : gens) {
        if (auto h = compose(f, g); seen.insert(h).second) {
          todo.push_back(h);
        }
      }
    }
    return {seen.begin(), seen.end()};
  }

  struct TransformationGroup {
    std::vector<Transformation> elements;  // sorted
    std::size_t                 identity = 0;
    std::vector<std::size_t>    inverse;
  };

  // Throws DomainError unless G is a group under composition.
  inline TransformationGroup require_transformation_group(std::vector<Transformation> G) {
    std::sort(G.begin(), G.end());
    G.erase(std::unique(G.begin(), G.end()), G.end());
    if (G.empty()) {
      throw DomainError("not a group: empty");
    }
    auto const index = [&](Transformation const& f) -> std::optional<std::size_t> {
      auto it = std::lower_bound(G.begin(), G.end(), f);
      if (it == G.end() || *it != f) {
        return std::nullopt;
      }
      return static_cast<std::size_t>(it - G.begin());
    };
    for (auto const& f : G) {
      if (f.window() != G.front().window()) {
        throw DomainError("not a group: mixed windows");
      }
    }
    for (auto const& f : G) {
      for (auto const& g : G) {
        if (!index(compose(f, g))) {
          throw DomainError("not a group: not closed under composition");
        }
      }
    }
    std::optional<std::size_t> e;
    for (std::size_t i = 0; i < G.size() && !e; ++i) {
      if (std::all_of(G.begin(), G.end(), [&](auto const& g) {
            return compose(G[i], g) == g && compose(g, G[i]) == g;
          })) {
        e = i;
      }
    }
    if (!e) {
      throw DomainError("not a group: no identity");
    }
    TransformationGroup out{G, *e, std::vector<std::size_t>(G.size())};
    for (std::size_t i = 0; i < G.size(); ++i) {
      bool found = false;
      for (std::size_t j = 0; j < G.size() && !found; ++j) {
        if (compose(G[i], G[j]) == G[*e] && compose(G[j], G[i]) == G[*e]) {
          out.inverse[i] = j;
          found          = true;
        }
      }
      if (!found) {
        throw DomainError("not a group: " + to_string(G[i]) + " has no inverse");
      }
    }
    return out;
  }

  inline PartialPerm restrict_to_image(Transformation const& g) {
    auto const        im = g.image_set();
    std::vector<Elem> m(g.window(), undefined);
    for (Elem x = 0; x < g.window(); ++x) {
      if (im.test(x)) {
        m[x] = g[x];
      }
    }
    return PartialPerm(std::move(m));
  }

  struct GroupRestriction {
    TransformationGroup group;
    Subset              support;  // im(e_G)
    RepresentationMap   map;
  };

  // g -> g restricted to im(g), a permutation of im(e_G).
  inline GroupRestriction group_restriction(std::vector<Transformation> const& gens_or_group) {
    auto       G = require_transformation_group(gens_or_group);
    auto const X = G.elements[G.identity].image_set();
    std::vector<std::string> labels;
    for (auto const& g : G.elements) {
      labels.push_back(to_string(g));
    }
    auto source = semigroup_from_elements(
        G.elements,
        [](auto const& f, auto const& g) { return compose(f, g); },
        std::move(labels),
        static_cast<Elem>(G.identity),
        "G");
    RepresentationMap R{
        "group_restriction", source, TargetSpace::PartialPerms, {}, X.size(), {}};
    for (auto const& g : G.elements) {
      if (g.image_set() != X) {
        throw TheoremViolation("group_restriction: image of " + to_string(g)
                               + " differs from im(e_G)");
      }
      PartialPerm p = [&] {
        try {
          return restrict_to_image(g);
        } catch (MalformedInput const&) {
          throw TheoremViolation("group_restriction: " + to_string(g)
                                 + " does not permute its image");
        }
      }();
      if (p.dom() != X || p.im() != X) {
        throw TheoremViolation("group_restriction: " + to_string(g)
                               + " does not permute its image");
      }
      R.images.emplace_back(std::move(p));
    }
    return {std::move(G), X, detail::certify(std::move(R))};
  }

  struct GroupLawReport {
    std::array<bool, 6>      holds{true, true, true, true, true, true};
    std::vector<std::string> failures;

    bool all() const {
      return std::all_of(holds.begin(), holds.end(), [](bool b) { return b; });
    }
  };

  // Six structural laws of a subgroup G of a transformation monoid with
  // identity e: (i) e fixes im(e); (ii) all elements share one image;
  // (iii) g permutes im(g); (iv) the inverse acts as the inverse permutation
  // on im(g); (v) g is determined by g on im(g); (vi) if (x)f = (x')f with x'
  // in im(f), then (x)f = (x)g iff (x')f = (x')g.
  inline GroupLawReport group_laws(std::vector<Transformation> const& group) {
    auto const      G = require_transformation_group(group);
    auto const&     E = G.elements;
    auto const&     e = E[G.identity];
    auto const      n = e.window();
    GroupLawReport  r;
    auto const fail = [&](int k, std::string why) {
      if (r.holds[k]) {
        r.failures.push_back("(" + std::to_string(k + 1) + ") " + std::move(why));
      }
      r.holds[k] = false;
    };
    auto const X = e.image_set();
    for (Elem x = 0; x < n; ++x) {
      if (X.test(x) && e[x] != x) {
        fail(0, "e moves " + std::to_string(x));
      }
    }
    for (std::size_t i = 0; i < E.size(); ++i) {
      auto const& g  = E[i];
      auto const  im = g.image_set();
      if (im != X) {
        fail(1, to_string(g) + " has a different image");
      }
      Subset hit(n);
      for (auto x : elements_of(im)) {
        if (!im.test(g[x]) || hit.test(g[x])) {
          fail(2, to_string(g) + " does not permute its image");
        }
        hit.set(g[x]);
      }
      auto const& h = E[G.inverse[i]];
      for (auto x : elements_of(im)) {
        if (!im.test(h[x]) || g[h[x]] != x || h[g[x]] != x) {
          fail(3, "inverse of " + to_string(g) + " is not the inverse permutation");
        }
      }
      for (std::size_t j = 0; j < E.size(); ++j) {
        auto const& f    = E[j];
        bool const  same = restrict_to_image(f).graph() == restrict_to_image(g).graph();
        if (same != (i == j)) {
          fail(4, to_string(f) + " and " + to_string(g));
        }
      }
    }
    for (auto const& f : E) {
      auto const imf = f.image_set();
      for (Elem x = 0; x < n; ++x) {
        for (auto xp : elements_of(imf)) {
          if (f[x] != f[xp]) {
            continue;
          }
          for (auto const& g : E) {
            if ((f[x] == g[x]) != (f[xp] == g[xp])) {
              fail(5, "at x = " + std::to_string(x) + ", x' = " + std::to_string(xp));
            }
          }
        }
      }
    }
    return r;
  }

  struct NamedTransformationGroup {
    std::string                 id;
    std::vector<Transformation> elements;
  };

  // Subgroups of small full transformation monoids; most have an identity
  // that is not the identity map.
  inline std::vector<NamedTransformationGroup> transformation_group_fixtures() {
    return {
        {"Z2-on-4", transformation_closure({Transformation({1, 0, 1, 0})})},
        {"Z3-on-5", transformation_closure({Transformation({1, 2, 0, 1, 1})})},
        {"S3-on-6",
         transformation_closure(
             {Transformation({1, 0, 2, 1, 0, 2}), Transformation({1, 2, 0, 1, 2, 0})})},
        {"V4-on-4",
         transformation_closure(
             {Transformation({1, 0, 3, 2}), Transformation({2, 3, 0, 1})})},
        {"Z2-on-6",
         transformation_closure({Transformation({5, 5, 5, 2, 2, 2})})},
    };
  }

  ////////////////////////////////////////////////////////////////////////
  // Clifford semigroups
  ////////////////////////////////////////////////////////////////////////

  struct CliffordDecomposition {
    InverseStructure                  S;
    std::vector<Elem>                 idempotents;  // ascending
    std::map<Elem, std::vector<Elem>> groups;       // H_e, ascending

    bool below(Elem e, Elem f) const {
      return S.mul(e, f) == e;
    }

    // x in H_f, e <= f: x -> xe
    Elem structure_map(Elem f, Elem e, Elem x) const {
      if (!below(e, f) || S.range_idem(x) != f) {
        throw DomainError("structure_map: arguments out of range");
      }
      return S.mul(x, e);
    }
  };

  inline CliffordDecomposition clifford_decompose(InverseStructure const& S) {
    if (auto c = is_clifford(S); !c.clifford) {
      throw DomainError("not a Clifford semigroup: " + S.base().label(*c.witness)
                        + " has xx^-1 != x^-1x");
    }
    CliffordDecomposition D{S, elements_of(S.idempotents()), {}};
    for (auto e : D.idempotents) {
      D.groups[e] = elements_of(maximal_subgroup(S, e));
    }
    auto const bad = [&](std::string const& what) {
      throw TheoremViolation("clifford_decompose: " + what);
    };
    for (auto f : D.idempotents) {
      for (auto e : D.idempotents) {
        if (!D.below(e, f)) {
          continue;
        }
        for (auto x : D.groups[f]) {
          auto const y = D.structure_map(f, e, x);
          if (S.range_idem(y) != e) {
            bad("structure map leaves H_" + S.base().label(e));
          }
          if (e == f && y != x) {
            bad("structure map on H_" + S.base().label(e) + " is not the identity");
          }
          for (auto g : D.idempotents) {
            if (D.below(g, e) && D.structure_map(e, g, y) != D.structure_map(f, g, x)) {
              bad("structure maps do not compose");
            }
          }
        }
      }
    }
    for (auto e : D.idempotents) {
      for (auto f : D.idempotents) {
        auto const ef = S.mul(e, f);
        for (auto x : D.groups[e]) {
          for (auto y : D.groups[f]) {
            if (S.mul(x, y)
                != S.mul(D.structure_map(e, ef, x), D.structure_map(f, ef, y))) {
              bad("strong semilattice law fails at (" + S.base().label(x) + ", "
                  + S.base().label(y) + ")");
            }
          }
        }
      }
    }
    return D;
  }

  // s -> (ss^{-1}, (s e if e <= ss^{-1} else 0)_e) in E(S) x prod_e H_e^0.
  inline RepresentationMap clifford_product_embed(CliffordDecomposition const& D,
                                                  std::optional<TopSpec> const& topology = {}) {
    if (topology && !topology->is_discrete()) {
      throw DomainError("clifford_product_embed is restricted to discrete sources");
    }
    auto const&       S = D.S;
    RepresentationMap R{"clifford_product_embed", S.base(), TargetSpace::Product, {}, 0, {}};
    R.factors.push_back(
        detail::restrict_semigroup(S.base(), D.idempotents, std::nullopt, "E"));
    for (auto e : D.idempotents) {
      auto const& H  = D.groups.at(e);
      auto const  id = static_cast<Elem>(std::find(H.begin(), H.end(), e) - H.begin());
      R.factors.push_back(adjoin_zero(
          detail::restrict_semigroup(S.base(), H, id, "H_" + S.base().label(e))));
    }
    auto const pos = [](std::vector<Elem> const& v, Elem x) {
      return static_cast<Elem>(std::find(v.begin(), v.end(), x) - v.begin());
    };
    for (Elem s = 0; s < S.size(); ++s) {
      auto const  ss = S.range_idem(s);
      ProductElem t{pos(D.idempotents, ss)};
      for (auto e : D.idempotents) {
        auto const& H = D.groups.at(e);
        t.push_back(D.below(e, ss) ? pos(H, S.mul(s, e)) : static_cast<Elem>(H.size()));
      }
      R.images.emplace_back(std::move(t));
    }
    return detail::certify(std::move(R));
  }

  // The characteristic vector of dom(e) for an idempotent e of I_n.
  inline Subset semil_iso(PartialPerm const& e) {
    if (!e.is_idempotent()) {
      throw DomainError("semil_iso: " + to_string(e) + " is not idempotent");
    }
    return e.dom();
  }

  ////////////////////////////////////////////////////////////////////////
  // Embedding verification
  ////////////////////////////////////////////////////////////////////////

  // The subbasic open sets mentioning points below `window`: {g : (x)g = y}
  // for N^N and finite X^X; U_{x,y}, W_x and W_x^{-1} for I_N and finite I_X.
  inline std::vector<BasicOpen> subbasic_opens(TargetSpace t, std::size_t window) {
    std::vector<BasicOpen> out;
    bool const             partial = t == TargetSpace::PartialPerms || t == TargetSpace::IN;
    for (Point x = 0; x < window; ++x) {
      for (Point y = 0; y < window; ++y) {
        out.push_back(partial ? BasicOpen::u(x, y) : BasicOpen::nn({{x, y}}));
      }
      if (partial) {
        out.push_back(BasicOpen::w(x));
        out.push_back(BasicOpen::w_inv(x));
      }
    }
    return out;
  }

  struct EmbeddingReport {
    bool                     homomorphism = true;
    bool                     injective    = true;
    bool                     continuous   = true;  // preimages of target opens are open
    bool                     open         = true;  // images of opens are relatively open
    std::vector<std::string> failures;

    bool ok() const {
      return homomorphism && injective && continuous && open;
    }
  };

  namespace detail {
    inline bool image_member(RepresentationMap const& R, Image const& im, BasicOpen const& b) {
      return std::visit(
          [&](auto const& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, LazyMap>) {
              return basic_open_member(x, R.window, b);
            } else if constexpr (std::is_same_v<T, ProductElem>) {
              throw DomainError("product targets are checked against coordinate cylinders");
            } else {
              return basic_open_member(x, b);
            }
          },
          im);
    }

    inline EmbeddingReport verify_with_preimages(RepresentationMap const&   R,
                                                 TopSpec const&             T,
                                                 std::vector<Subset> const& preimages) {
      EmbeddingReport rep;
      auto const&     S = R.source;
      if (T.size() != S.size()) {
        throw DomainError("verify_embedding: topology carrier differs from source");
      }
      if (auto f = homomorphism_failure(R)) {
        rep.homomorphism = false;
        rep.failures.push_back("homomorphism: " + f->what + " at (" + S.label(f->a) + ", "
                               + S.label(f->b) + ")");
      }
      if (auto f = injectivity_failure(R)) {
        rep.injective = false;
        rep.failures.push_back("injectivity: " + S.label(f->a) + " and " + S.label(f->b)
                               + " have equal images");
      }
      for (std::size_t i = 0; i < preimages.size(); ++i) {
        if (!T.is_open(preimages[i])) {
          rep.continuous = false;
          rep.failures.push_back("continuity: preimage of target open " + std::to_string(i)
                                 + " is not open");
          break;
        }
      }
      for (Elem s = 0; s < S.size(); ++s) {
        Subset N(S.size());
        N.set();
        for (auto const& P : preimages) {
          if (P.test(s)) {
            N &= P;
          }
        }
        if (!N.is_subset_of(T.minimal_open(s))) {
          rep.open = false;
          rep.failures.push_back("openness: image of the least neighbourhood of "
                                 + S.label(s) + " is not relatively open");
          break;
        }
      }
      return rep;
    }
  }  // namespace detail

  // Checks the map against a finite source topology and a finite list of
  // target basic opens, exhaustively.
  inline EmbeddingReport verify_embedding(RepresentationMap const&      R,
                                          TopSpec const&                T,
                                          std::vector<BasicOpen> const& target_opens) {
    std::vector<Subset> pre;
    for (auto const& b : target_opens) {
      Subset P(R.source.size());
      for (Elem s = 0; s < R.source.size(); ++s) {
        if (detail::image_member(R, R.images[s], b)) {
          P.set(s);
        }
      }
      pre.push_back(std::move(P));
    }
    return detail::verify_with_preimages(R, T, pre);
  }

  // Default target opens: subbasic opens on the evaluation window, or
  // coordinate cylinders for product targets (finite discrete factors).
  inline EmbeddingReport verify_embedding(RepresentationMap const& R, TopSpec const& T) {
    if (R.target == TargetSpace::Product) {
      std::map<std::pair<std::size_t, Elem>, Subset> cyl;
      for (Elem s = 0; s < R.source.size(); ++s) {
        auto const& t = std::get<ProductElem>(R.images[s]);
        for (std::size_t i = 0; i < t.size(); ++i) {
          auto [it, _] = cyl.try_emplace({i, t[i]}, Subset(R.source.size()));
          it->second.set(s);
        }
      }
      std::vector<Subset> pre;
      for (auto& [k, v] : cyl) {
        pre.push_back(std::move(v));
      }
      return detail::verify_with_preimages(R, T, pre);
    }
    std::size_t w = R.window;
    if (R.target == TargetSpace::Transformations || R.target == TargetSpace::PartialPerms) {
      w = std::visit(
          [](auto const& x) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Transformation>
                          || std::is_same_v<std::decay_t<decltype(x)>, PartialPerm>) {
              return x.window();
            } else {
              return 0;
            }
          },
          R.images.at(0));
    }
    return verify_embedding(R, T, subbasic_opens(R.target, w));
  }

}  // namespace semitop
