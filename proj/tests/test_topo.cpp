#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "semitop/fixtures.hpp"
#include "semitop/obstruct.hpp"
#include "semitop/topo.hpp"

using namespace semitop;

namespace {

  std::vector<Subset> family(std::size_t n, std::vector<std::vector<Elem>> const& sets) {
    std::vector<Subset> out;
    for (auto const& s : sets) {
      Subset b(n);
      for (auto x : s) {
        b.set(x);
      }
      out.push_back(b);
    }
    return out;
  }

  // Sierpinski-style chain topologies used throughout.
  TopSpec chain2_top() {
    return TopSpec::from_opens(2, family(2, {{}, {1}, {0, 1}}));
  }

  TopSpec chain3_top() {
    return TopSpec::from_opens(3, family(3, {{}, {2}, {1, 2}, {0, 1, 2}}));
  }

  // B2 with the empty map non-isolated: M(empty) = {empty, {(1,1)}}.
  TopSpec brandt2_top(PartialPermSemigroup const& B) {
    std::vector<Subset> m(B.semigroup.size(), Subset(B.semigroup.size()));
    for (Elem x = 0; x < m.size(); ++x) {
      m[x].set(x);
    }
    for (Elem x = 0; x < m.size(); ++x) {
      if (B.elements[x] == PartialPerm::from_pairs(2, {{1, 1}})) {
        m[0].set(x);
      }
    }
    return TopSpec::from_minimal(m);
  }

}  // namespace

TEST_CASE("finite topologies", "[topo]") {
  std::vector<Subset> disc;
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    disc.emplace_back(3, mask);
  }
  CHECK(is_topology(3, disc));
  CHECK(TopSpec::from_opens(3, disc) == TopSpec::discrete(3));

  auto const fam = family(2, {{}, {0}, {0, 1}});
  REQUIRE(is_topology(2, fam));
  auto const T = TopSpec::from_opens(2, fam);
  CHECK(T.closure(make_subset(2, {0})) == make_subset(2, {0, 1}));
  CHECK(T.interior(T.carrier()) == T.carrier());
  CHECK(T.opens() == fam);

  CHECK_FALSE(is_topology(2, family(2, {{}, {0}})));
  CHECK_FALSE(is_topology(3, family(3, {{}, {0}, {1}, {0, 1, 2}})));
  CHECK_THROWS_AS(TopSpec::from_opens(3, family(3, {{}, {0}, {1}, {0, 1, 2}})),
                  MalformedInput);

  // closure(A) = X \ interior(X \ A) on every subset of every small space
  for (auto const& top : {chain2_top(), T, TopSpec::discrete(2), TopSpec::indiscrete(2)}) {
    for (std::uint32_t mask = 0; mask < 4; ++mask) {
      Subset A(2, mask);
      CHECK(top.closure(A) == ~top.interior(~A));
    }
  }
  auto const C3 = chain3_top();
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    Subset A(3, mask);
    CHECK(C3.closure(A) == ~C3.interior(~A));
    CHECK(C3.is_open(A) == (C3.interior(A) == A));
  }
}

TEST_CASE("up-sets and their interiors", "[topo]") {
  auto const C3 = min_chain(3);
  CHECK(up_set(C3, 2) == make_subset(3, {2}));
  for (Elem x = 0; x < 3; ++x) {
    CHECK(uparrow(C3, TopSpec::discrete(3), x) == up_set(C3, x));
  }
  CHECK(uparrow(C3, chain3_top(), 0) == make_subset(3, {0, 1, 2}));
  CHECK(uparrow(C3, chain3_top(), 2) == make_subset(3, {2}));
  CHECK_THROWS_AS(up_set(cyclic_group(2), 0), DomainError);
}

TEST_CASE("clopen ideals", "[topo]") {
  auto const C3  = min_chain(3);
  auto const got = enumerate_clopen_ideals(C3, TopSpec::discrete(3));
  CHECK(got == family(3, {{}, {0}, {0, 1}, {0, 1, 2}}));
  CHECK(enumerate_clopen_ideals(C3, TopSpec::indiscrete(3)).size() == 2);

  for (std::size_t n = 1; n <= 5; ++n) {
    auto const T   = antichain_with_zero(n);
    auto const D   = TopSpec::discrete(T.size());
    auto const lib = enumerate_clopen_ideals(T, D);
    CHECK(lib.size() == (std::size_t(1) << n) + 1);
    auto const brute = oracle::clopen_ideals(T, oracle::space_of(D));
    CHECK(lib.size() == brute.size());
  }
}

namespace {

  struct NamedTop {
    std::string  id;
    FinSemigroup S;
    TopSpec      T;
  };

  // Semilattices with topologies, small enough for the literal oracles.
  std::vector<NamedTop> semilattice_spaces() {
    std::vector<NamedTop> out;
    for (std::size_t n = 1; n <= 5; ++n) {
      out.push_back({"C" + std::to_string(n), min_chain(n), TopSpec::discrete(n)});
      out.push_back({"C" + std::to_string(n) + "-indiscrete", min_chain(n),
                     TopSpec::indiscrete(n)});
    }
    out.push_back({"C2-sierpinski", min_chain(2), chain2_top()});
    out.push_back({"C3-upper", min_chain(3), chain3_top()});
    out.push_back({"C3-lower", min_chain(3),
                   TopSpec::from_opens(3, family(3, {{}, {0}, {0, 1}, {0, 1, 2}}))});
    for (std::size_t n = 1; n <= 4; ++n) {
      auto const T = antichain_with_zero(n);
      out.push_back({"T" + std::to_string(n), T, TopSpec::discrete(T.size())});
    }
    for (std::size_t w : {4, 5, 6}) {
      auto const inst = build_instance("odd_chain", {.window = w});
      out.push_back({"odd_chain-" + std::to_string(w), inst.presentation.base(),
                     inst.presentation.topology()});
    }
    // T_3 with 0 in the closure of x_1, x_2
    auto const T3 = antichain_with_zero(3);
    out.push_back({"T3-limit", T3,
                   TopSpec::from_minimal(family(4, {{0, 2, 3}, {1}, {2}, {3}}))});
    return out;
  }

}  // namespace

TEST_CASE("U and U2 checks agree with the definitions", "[topo]") {
  std::size_t discrete_points = 0;
  for (auto const& [id, S, T] : semilattice_spaces()) {
    auto const X      = oracle::space_of(T);
    auto const ideals = oracle::clopen_ideals(S, X);
    for (Elem x = 0; x < S.size(); ++x) {
      INFO(id << " at " << x);
      auto const u  = u_check(S, T, x);
      auto const u2 = u2_check(S, T, x);
      CHECK(u.holds == oracle::u_at(S, X, x));
      CHECK(u2.holds == oracle::u2_at(S, X, ideals, x));
      if (u2.holds) {
        CHECK(u.holds);
        // the witness satisfies the definition
        auto const& I = *u2.set;
        CHECK(T.is_clopen(I));
        CHECK(is_ideal(S, I));
        CHECK_FALSE(I.test(x));
        CHECK((~I).is_subset_of(up_set(S, *u2.y)));
      }
      if (u.holds) {
        CHECK(T.is_open(*u.set));
        CHECK(u.set->is_subset_of(up_set(S, *u.y)));
      }
      if (T.is_discrete()) {
        CHECK(u2.holds);
        ++discrete_points;
      }
    }
  }
  CHECK(discrete_points > 20);

  auto const r = u_check(min_chain(2), chain2_top(), 0);
  CHECK(r.holds);
  CHECK(r.y == Elem(0));
}

TEST_CASE("ditopological checks agree with the definitions", "[topo]") {
  auto const B2 = brandt_semigroup(2);
  std::vector<NamedTop> spaces{
      {"C2-sierpinski", min_chain(2), chain2_top()},
      {"C3-upper", min_chain(3), chain3_top()},
      {"B2-limit", B2.semigroup, brandt2_top(B2)},
      {"B2", B2.semigroup, TopSpec::discrete(5)},
      {"I2", symmetric_inverse_monoid(2).semigroup, TopSpec::discrete(7)},
      {"Z2^0-indiscrete", adjoin_zero(cyclic_group(2)), TopSpec::indiscrete(3)},
      {"Z2xC2", direct_product(cyclic_group(2), min_chain(2)),
       TopSpec::from_minimal(family(4, {{0}, {1}, {0, 2}, {1, 3}}))},
      {"Z2xC2-twisted", direct_product(cyclic_group(2), min_chain(2)),
       TopSpec::from_minimal(family(4, {{0}, {1}, {1, 2}, {0, 3}}))},
  };
  for (auto const& e : bundled_semigroups(8)) {
    if (std::holds_alternative<InverseStructure>(inverse_structure(e.semigroup))) {
      spaces.push_back({e.id, e.semigroup, TopSpec::discrete(e.semigroup.size())});
    }
  }
  auto const exb = build_instance("exB", {.window = 4});
  spaces.push_back({"exB-4", exb.presentation.base(), exb.presentation.topology()});

  for (auto const& [id, S, T] : spaces) {
    INFO(id);
    auto const IS   = require_inverse(S);
    auto const X    = oracle::space_of(T);
    auto const d    = ditopological_check(IS, T);
    auto const w    = weakly_ditopological_check(IS, T);
    auto const od   = oracle::ditop_first_failure(S, X, false);
    auto const ow   = oracle::ditop_first_failure(S, X, true);
    auto const code = [&](DitopResult const& r) {
      return r.holds ? Elem(S.size()) : r.inversion_failure ? Elem(S.size() + 1) : *r.x;
    };
    CHECK(code(d) == od);
    CHECK(code(w) == ow);
    if (d.holds) {
      CHECK(w.holds);
    }
    if (is_clifford(IS).clifford) {
      CHECK(d.holds == w.holds);
    }
    if (T.is_discrete()) {
      CHECK(d.holds);
    }
  }
}

TEST_CASE("Cantor-Bendixson derivative", "[topo]") {
  auto const D = TopSpec::discrete(4);
  CHECK(cb_derivative(D).none());
  CHECK(scattered_height(D).height == 1);

  auto const T = TopSpec::from_opens(2, family(2, {{}, {0}, {0, 1}}));
  CHECK(cb_derivative(T) == make_subset(2, {1}));
  auto const h = scattered_height(T);
  CHECK(h.scattered);
  CHECK(h.height == 2);

  auto const exb = build_instance("exB");
  CHECK(scattered_height(exb.presentation.topology()).height == 2);

  auto const I = scattered_height(TopSpec::indiscrete(2));
  CHECK_FALSE(I.scattered);

  // definition replay and monotonicity
  for (auto const& top : {T, chain3_top(), exb.presentation.topology(), D}) {
    auto const X = oracle::space_of(top);
    Subset     Y = top.carrier();
    while (Y.any()) {
      auto const next = cb_derivative(top, Y);
      CHECK(oracle::to_mask(next) == oracle::derivative(X, oracle::to_mask(Y)));
      CHECK(next.is_subset_of(Y));
      if (next == Y) {
        break;
      }
      Y = next;
    }
  }
}

TEST_CASE("continuity", "[topo]") {
  for (auto const& e : bundled_semigroups(8)) {
    auto const n = e.semigroup.size();
    CHECK(continuity_check(e.semigroup, TopSpec::discrete(n)).holds);
    CHECK(continuity_check(e.semigroup, TopSpec::indiscrete(n)).holds);
  }
  // literal oracle on small spaces
  for (auto const& [id, S, T] : semilattice_spaces()) {
    if (S.size() > 6) {
      continue;
    }
    INFO(id);
    CHECK(continuity_check(S, T).holds == oracle::continuous(S, oracle::space_of(T)));
  }
}

TEST_CASE("continuity of truncated presentations", "[topo]") {
  for (auto const& inst : catalog(6)) {
    auto const& P = inst.presentation;
    INFO(P.id());
    CHECK(guarded_continuity_check(P).holds);
  }
  // Past the guard the truncation is not continuous: (0,1)(x_j,-1) = (0,-1) is
  // isolated while M((0,1)) contains (x_j,1).
  auto const exb = build_instance("exB");
  auto const r   = continuity_check(exb.presentation.base(), exb.presentation.topology());
  REQUIRE_FALSE(r.holds);
  CHECK(r.witness->a == exb_index(std::nullopt, 1));
  CHECK(r.witness->b >= exb.presentation.tail_start());
  for (auto g : {"Z2", "R2", "S3"}) {
    auto const rs = build_instance("right_simple_zero", {.group = g});
    CHECK(continuity_check(rs.presentation.base(), rs.presentation.topology()).holds);
  }
}

TEST_CASE("right congruences with open classes", "[topo]") {
  for (auto const& e : bundled_semigroups(10)) {
    CHECK(congruence_basis_check(e.semigroup, TopSpec::discrete(e.semigroup.size())).holds);
  }

  auto const exb = build_instance("exB", {.window = 4});
  auto const r = congruence_basis_check(exb.presentation.base(), exb.presentation.topology());
  REQUIRE_FALSE(r.holds);
  CHECK(r.x == exb_index(std::nullopt, -1));
  CHECK(*r.O == make_subset(10, {exb_index(std::nullopt, -1)}));

  auto const odd = build_instance("odd_chain");
  auto const ro  = congruence_basis_check(odd.presentation.base(), odd.presentation.topology());
  REQUIRE_FALSE(ro.holds);
  CHECK(ro.x == Elem(0));
  CHECK(*ro.O == odd.presentation.family(0).back());
  // the escaping element is an even reciprocal 1/(2k+2), i.e. odd k
  CHECK((*ro.escaped - 1) % 2 == 1);

  // both routes and the literal definition agree
  std::vector<NamedTop> spaces = semilattice_spaces();
  spaces.push_back({"exB-4", exb.presentation.base(), exb.presentation.topology()});
  auto const rs = build_instance("right_simple_zero", {.group = "R2"});
  spaces.push_back({"R2^0", rs.presentation.base(), rs.presentation.topology()});
  for (auto const& [id, S, T] : spaces) {
    INFO(id);
    auto const v = congruence_basis_check(S, T).holds;
    CHECK(v == congruence_basis_check_enumerative(S, T));
    if (S.size() <= 8) {
      CHECK(v == oracle::congruence_basis(S, oracle::space_of(T)));
    }
  }
  CHECK_THROWS_AS(congruence_basis_check_enumerative(exb_semigroup(5), TopSpec::discrete(12)),
                  SizeError);
}

TEST_CASE("refining a topology never breaks the open-class criterion", "[topo]") {
  // For fixed (x, O) with O open in both, passing in the coarser topology
  // implies passing in the finer one.
  auto const S      = min_chain(3);
  auto const coarse = chain3_top();
  auto const fine   = TopSpec::discrete(3);
  REQUIRE(refines(fine, coarse));
  auto const rc = congruence_basis_check(S, coarse);
  auto const rf = congruence_basis_check(S, fine);
  for (Elem x = 0; x < 3; ++x) {
    if (rc.rho.class_subset(x).is_subset_of(coarse.minimal_open(x))) {
      CHECK(rf.rho.class_subset(x).is_subset_of(coarse.minimal_open(x)));
    }
  }
  auto const exb  = build_instance("exB", {.window = 4});
  auto const ctrl = build_instance("exB-discrete", {.window = 4});
  CHECK(refines(ctrl.presentation.topology(), exb.presentation.topology()));
  CHECK_FALSE(congruence_basis_check(exb.presentation.base(), exb.presentation.topology()).holds);
  CHECK(congruence_basis_check(ctrl.presentation.base(), ctrl.presentation.topology()).holds);
}
