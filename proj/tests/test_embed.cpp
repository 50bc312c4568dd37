#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "semitop/embed.hpp"
#include "semitop/obstruct.hpp"

using namespace semitop;

namespace {

  Transformation const& tr(RepresentationMap const& R, Elem s) {
    return std::get<Transformation>(R.images[s]);
  }

  PartialPerm const& pp(RepresentationMap const& R, Elem s) {
    return std::get<PartialPerm>(R.images[s]);
  }

  LazyMap const& lz(RepresentationMap const& R, Elem s) {
    return std::get<LazyMap>(R.images[s]);
  }

  bool is_permutation_of(Transformation const& t, std::size_t n) {
    std::set<Elem> seen;
    for (Elem x = 0; x < n; ++x) {
      if (t[x] >= n) {
        return false;
      }
      seen.insert(t[x]);
    }
    return seen.size() == n;
  }

  std::vector<FinSemigroup> embedding_catalog() {
    std::vector<FinSemigroup> out{cyclic_group(2),
                                  symmetric_group(3),
                                  left_zero(2),
                                  right_zero(2),
                                  antichain_with_zero(2),
                                  symmetric_inverse_monoid(2).semigroup,
                                  brandt_semigroup(2).semigroup};
    for (std::size_t n = 1; n <= 5; ++n) {
      out.push_back(min_chain(n));
    }
    for (std::size_t w = 4; w <= 6; ++w) {
      out.push_back(build_instance("exB", {.window = w}).presentation.base());
    }
    return out;
  }

}  // namespace

TEST_CASE("right regular representation", "[embed]") {
  auto const Z2 = cyclic_group(2);
  auto const R  = cayley_right_regular(Z2);
  REQUIRE(tr(R, 0).window() == 3);
  for (Elem s = 0; s < 2; ++s) {
    for (Elem x = 0; x < 2; ++x) {
      CHECK(tr(R, s)[x] == Z2.mul(x, s));
    }
    CHECK(tr(R, s)[2] == s);
  }

  auto const Rm = cayley_right_regular(Z2, AdjoinPolicy::IfNeeded);
  CHECK(tr(Rm, 0) == Transformation::identity(2));
  CHECK(is_permutation_of(tr(Rm, 1), 2));
  CHECK(tr(Rm, 0) != tr(Rm, 1));

  auto const L2 = cayley_right_regular(left_zero(2));
  CHECK(tr(L2, 0) == Transformation({0, 1, 0}));
  CHECK(tr(L2, 1) == Transformation({0, 1, 1}));

  for (auto const& S : embedding_catalog()) {
    INFO(S.name());
    for (auto policy : {AdjoinPolicy::External, AdjoinPolicy::IfNeeded}) {
      auto const C = cayley_right_regular(S, policy);
      std::set<Transformation> distinct;
      for (Elem a = 0; a < S.size(); ++a) {
        distinct.insert(tr(C, a));
        for (Elem b = 0; b < S.size(); ++b) {
          CHECK(tr(C, S.mul(a, b)) == compose(tr(C, a), tr(C, b)));
        }
      }
      CHECK(distinct.size() == S.size());
      CHECK(verify_embedding(C, TopSpec::discrete(S.size())).ok());
    }
  }
}

TEST_CASE("Wagner-Preston representation", "[embed]") {
  auto const I2 = require_inverse(symmetric_inverse_monoid(2).semigroup);
  auto const W  = wagner_preston(I2);
  std::set<PartialPerm> distinct;
  for (Elem a = 0; a < 7; ++a) {
    distinct.insert(pp(W, a));
    CHECK(pp(W, a).window() == 7);
    if (I2.base().is_idempotent(a)) {
      CHECK(pp(W, a) == PartialPerm::identity_on(7, pp(W, a).dom()));
    }
  }
  CHECK(distinct.size() == 7);

  for (auto const& S : embedding_catalog()) {
    auto res = inverse_structure(S);
    if (!std::holds_alternative<InverseStructure>(res)) {
      continue;
    }
    auto const& IS = std::get<InverseStructure>(res);
    INFO(S.name());
    auto const WP = wagner_preston(IS);
    for (Elem a = 0; a < S.size(); ++a) {
      CHECK(pp(WP, IS.inv(a)) == invert(pp(WP, a)));
      for (Elem b = 0; b < S.size(); ++b) {
        CHECK(pp(WP, S.mul(a, b)) == compose(pp(WP, a), pp(WP, b)));
      }
    }
    CHECK(verify_embedding(WP, TopSpec::discrete(S.size())).ok());
  }
}

TEST_CASE("blockwise products", "[embed]") {
  auto const C = cayley_right_regular(cyclic_group(2));
  auto const P = product_embed({C, C});
  REQUIRE(P.source.size() == 4);
  // Tuple (a, b) has index 2a + b.
  for (Elem a = 0; a < 2; ++a) {
    for (Elem b = 0; b < 2; ++b) {
      auto const& f = lz(P, 2 * a + b);
      for (Point j = 0; j < 3; ++j) {
        CHECK(f(pair_index(0, j)) == pair_index(0, tr(C, a)[j]));
        CHECK(f(pair_index(1, j)) == pair_index(1, tr(C, b)[j]));
      }
      CHECK(f(pair_index(0, 7)) == pair_index(0, 7));
      CHECK(f(pair_index(4, 1)) == pair_index(4, 1));
    }
  }

  auto const Id = cayley_right_regular(trivial_semigroup(), AdjoinPolicy::IfNeeded);
  auto const PI = product_embed({Id, Id, Id});
  CHECK(std::holds_alternative<IdentityNode>(lz(PI, 0).node().v));

  auto const W  = wagner_preston(require_inverse(brandt_semigroup(2).semigroup));
  auto const PW = product_embed({W, W});
  CHECK(PW.target == TargetSpace::IN);
  for (Elem t = 0; t < PW.source.size(); ++t) {
    for (Point x = 0; x < PW.window; ++x) {
      if (auto y = lz(PW, t)(x)) {
        CHECK(unpair_index(*y).first == unpair_index(x).first);
      }
    }
  }
  CHECK_THROWS_AS(product_embed({C, W}), DomainError);
}

TEST_CASE("adjoined identity and zero", "[embed]") {
  auto const t = Transformation({1, 0, 2});
  auto const m = adjoin_image(t);
  CHECK(m(0) == Point(2));
  CHECK(m(1) == Point(1));
  CHECK(m(3) == Point(3));
  CHECK(m(5) == Point(3));
  CHECK(m(4) == Point(4));
  CHECK(m(100) == Point(100));
  CHECK(m(101) == Point(3));

  auto const C  = cayley_right_regular(left_zero(2));
  auto const S0 = adjoin_embed(C, Adjoined::Zero);
  auto const S1 = adjoin_embed(C, Adjoined::Identity);
  auto const z  = static_cast<Elem>(S0.source.size() - 1);
  for (Point x = 0; x < 20; ++x) {
    CHECK(lz(S0, z)(x) == Point(1));
    CHECK(lz(S1, z)(x) == x);
  }
  CHECK(S0.window >= 8);
  for (auto const* R : {&S0, &S1}) {
    for (Elem a = 0; a < R->source.size(); ++a) {
      for (Elem b = 0; b < R->source.size(); ++b) {
        CHECK(agree_on_window(lz(*R, R->source.mul(a, b)),
                              LazyMap::compose(lz(*R, a), lz(*R, b)), 64));
      }
    }
  }
  auto const disc = TopSpec::discrete(S0.source.size());
  CHECK(verify_embedding(S0, disc, subbasic_opens(TargetSpace::NN, 8)).ok());
  CHECK_THROWS_AS(adjoin_embed(wagner_preston(require_inverse(cyclic_group(2))), Adjoined::Zero),
                  DomainError);
}

TEST_CASE("I_n into N^N", "[embed]") {
  CHECK(agree_on_window(embcl_map(PartialPerm::empty(3)), LazyMap::constant(0), 50));
  auto const g = embcl_map(PartialPerm::from_pairs(3, {{0, 2}}));
  CHECK(g(0) == Point(0));
  CHECK(g(1) == Point(3));
  for (Point x = 2; x < 30; ++x) {
    CHECK(g(x) == Point(0));
  }
  auto const id = embcl_map(PartialPerm::from_pairs(3, {{0, 0}, {1, 1}}));
  CHECK(id(0) == Point(0));
  CHECK(id(1) == Point(1));
  CHECK(id(2) == Point(2));
  CHECK(id(3) == Point(0));

  for (std::size_t n = 1; n <= 4; ++n) {
    auto const all = all_partial_perms(n, n);
    std::set<Transformation> images;
    for (auto const& f : all) {
      images.insert(window_restrict(embcl_map(f), 2 * n + 2));
    }
    CHECK(images.size() == all.size());
  }

  auto const I3 = symmetric_inverse_monoid(3);
  auto const E  = embcl_embed(I3);
  CHECK(E.window == 8);
  for (auto const& a : I3.elements) {
    for (auto const& b : I3.elements) {
      CHECK(window_restrict(embcl_map(compose(a, b)), 8)
            == compose(window_restrict(embcl_map(a), 8), window_restrict(embcl_map(b), 8)));
    }
  }
  CHECK(verify_embedding(E, TopSpec::discrete(34)).ok());
}

TEST_CASE("subgroups of transformation monoids", "[embed]") {
  auto const triv = group_restriction({Transformation::identity(3)});
  CHECK(triv.map.images.size() == 1);
  CHECK(pp(triv.map, 0) == PartialPerm::identity_on(3, make_subset(3, {0, 1, 2})));

  auto const e  = Transformation({0, 1, 0, 1});
  auto const g  = Transformation({1, 0, 1, 0});
  CHECK(compose(g, e) == g);
  CHECK(compose(e, g) == g);
  auto const GR = group_restriction({e, g});
  CHECK(GR.support == make_subset(4, {0, 1}));
  auto const gi = static_cast<Elem>(std::find(GR.group.elements.begin(),
                                              GR.group.elements.end(), g)
                                    - GR.group.elements.begin());
  CHECK(pp(GR.map, gi) == PartialPerm::from_pairs(4, {{0, 1}, {1, 0}}));
  CHECK(group_laws({e, g}).all());

  std::size_t nontrivial = 0, non_identity_unit = 0;
  for (auto const& [id, G] : transformation_group_fixtures()) {
    INFO(id);
    auto const rep = group_laws(G);
    CHECK(rep.all());
    CHECK(rep.failures.empty());
    CHECK_NOTHROW(group_restriction(G));
    auto const TG = require_transformation_group(G);
    nontrivial += TG.elements.size() > 1;
    non_identity_unit += !(TG.elements[TG.identity] == Transformation::identity(TG.elements[0].window()));
  }
  CHECK(nontrivial >= 3);
  CHECK(non_identity_unit >= 1);

  CHECK_NOTHROW(group_restriction({Transformation({0, 0})}));
  CHECK_THROWS_AS(group_restriction({Transformation({1, 0})}), DomainError);
  CHECK_THROWS_AS(group_restriction({Transformation({0, 1}), Transformation({0, 0})}),
                  DomainError);
}

TEST_CASE("Clifford decompositions", "[embed]") {
  auto const C4 = require_inverse(min_chain(4));
  auto const D  = clifford_decompose(C4);
  for (auto const& [e, H] : D.groups) {
    CHECK(H == std::vector<Elem>{e});
  }

  auto const Z3 = require_inverse(cyclic_group(3));
  auto const DG = clifford_decompose(Z3);
  CHECK(DG.idempotents.size() == 1);
  CHECK(DG.groups.begin()->second.size() == 3);

  auto const exb = require_inverse(exb_semigroup(3));
  auto const DE  = clifford_decompose(exb);
  CHECK(DE.idempotents.size() == 4);
  for (auto const& [e, H] : DE.groups) {
    CHECK(H.size() == 2);
  }
  auto const zero_plus = exb_index(std::nullopt, 1);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(DE.structure_map(exb_index(i, 1), zero_plus, exb_index(i, -1))
          == exb_index(std::nullopt, -1));
  }

  for (auto const& [S, discrete] : std::vector<std::pair<FinSemigroup, bool>>{
           {exb_semigroup(3), true}, {min_chain(3), true}, {cyclic_group(4), true}}) {
    auto const IS = require_inverse(S);
    auto const P  = clifford_product_embed(clifford_decompose(IS));
    CHECK(verify_embedding(P, TopSpec::discrete(S.size())).ok());
    for (auto f : elements_of(IS.idempotents())) {
      auto const& t = std::get<ProductElem>(P.images[f]);
      auto const  D2 = clifford_decompose(IS);
      CHECK(D2.idempotents[t[0]] == f);
      for (std::size_t i = 0; i < D2.idempotents.size(); ++i) {
        auto const e = D2.idempotents[i];
        auto const& H = D2.groups.at(e);
        if (D2.below(e, f)) {
          CHECK(H[t[i + 1]] == e);
        } else {
          CHECK(t[i + 1] == H.size());
        }
      }
    }
  }

  CHECK_THROWS_AS(clifford_decompose(require_inverse(brandt_semigroup(2).semigroup)),
                  DomainError);
  auto const chain = require_inverse(min_chain(2));
  CHECK_THROWS_AS(clifford_product_embed(clifford_decompose(chain), TopSpec::indiscrete(2)),
                  DomainError);
}

TEST_CASE("idempotents of I_n as bit vectors", "[embed]") {
  CHECK(semil_iso(PartialPerm::identity_on(3, make_subset(3, {0, 1, 2})))
        == make_subset(3, {0, 1, 2}));
  CHECK(semil_iso(PartialPerm::empty(3)).none());
  auto const a = PartialPerm::from_pairs(3, {{0, 0}, {2, 2}});
  auto const b = PartialPerm::from_pairs(3, {{1, 1}, {2, 2}});
  CHECK(semil_iso(compose(a, b)) == make_subset(3, {2}));
  CHECK_THROWS_AS(semil_iso(PartialPerm::from_pairs(3, {{0, 1}})), DomainError);

  for (std::size_t n = 0; n <= 4; ++n) {
    std::vector<PartialPerm> E;
    for (auto const& f : all_partial_perms(n, n)) {
      if (f.is_idempotent()) {
        E.push_back(f);
      }
    }
    CHECK(E.size() == (std::size_t(1) << n));
    std::set<Subset> vectors;
    for (auto const& e : E) {
      vectors.insert(semil_iso(e));
      for (auto const& f : E) {
        CHECK(semil_iso(compose(e, f)) == (semil_iso(e) & semil_iso(f)));
      }
    }
    CHECK(vectors.size() == E.size());
  }
}

TEST_CASE("verification reports failures", "[embed]") {
  auto C = cayley_right_regular(cyclic_group(2));
  std::swap(C.images[0], C.images[1]);
  auto const rep = verify_embedding(C, TopSpec::discrete(2));
  CHECK_FALSE(rep.homomorphism);
  CHECK(rep.injective);

  auto D = cayley_right_regular(cyclic_group(2));
  D.images[1] = D.images[0];
  auto const rep2 = verify_embedding(D, TopSpec::discrete(2));
  CHECK_FALSE(rep2.injective);
  CHECK_FALSE(rep2.open);

  // A non-discrete source against separating target opens: not open.
  auto const E = cayley_right_regular(cyclic_group(2));
  auto const r3 = verify_embedding(E, TopSpec::indiscrete(2));
  CHECK(r3.homomorphism);
  CHECK_FALSE(r3.continuous);
  CHECK(r3.open);
}
