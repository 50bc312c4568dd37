#include <catch_amalgamated.hpp>

#include <random>

#include "semitop/json_io.hpp"

using namespace semitop;

namespace {

  LazyMap random_lazy(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int>   pick(0, depth > 0 ? 5 : 2);
    std::uniform_int_distribution<Point> pt(0, 12);
    switch (pick(rng)) {
      case 0:
        return LazyMap::identity();
      case 1:
        return LazyMap::constant(pt(rng));
      case 2: {
        std::map<Point, std::optional<Point>> e;
        for (int i = 0; i < 3; ++i) {
          auto const y = pt(rng);
          e[pt(rng)]   = y % 5 == 0 ? std::nullopt : std::optional<Point>(y);
        }
        return LazyMap::table(std::move(e), LazyMap::identity());
      }
      case 3:
        return LazyMap::affine(2, {{1, 2}, {2, 1}});
      case 4:
        return LazyMap::pair_block({random_lazy(rng, depth - 1), random_lazy(rng, depth - 1)});
      default:
        return LazyMap::compose(random_lazy(rng, depth - 1), random_lazy(rng, depth - 1));
    }
  }

}  // namespace

TEST_CASE("semigroup files round-trip", "[json]") {
  for (auto const& [id, S] : bundled_semigroups()) {
    INFO(id);
    auto const j  = to_json(S);
    auto const S2 = semigroup_from_json(j);
    CHECK(S2.table() == S.table());
    CHECK(S2.labels() == S.labels());
    CHECK(S2.identity() == S.identity());
    CHECK(dump(to_json(S2)) == dump(j));
  }
}

TEST_CASE("malformed semigroup files are rejected", "[json]") {
  auto const good = to_json(cyclic_group(2));
  auto       bad  = good;
  bad["table"][0][0] = 5;
  CHECK_THROWS_AS(semigroup_from_json(bad), MalformedInput);
  bad = good;
  bad["elements"].push_back("x");
  CHECK_THROWS_AS(semigroup_from_json(bad), MalformedInput);
  bad = good;
  bad["identity"] = 1;
  CHECK_THROWS_AS(semigroup_from_json(bad), MalformedInput);
  bad = good;
  bad["inverse"] = {0, 0};
  CHECK_THROWS_AS(semigroup_from_json(bad), MalformedInput);
  bad = good;
  bad.erase("table");
  CHECK_THROWS_AS(semigroup_from_json(bad), MalformedInput);
  // Not associative: (1*1)*0 = 0*0 = 1 but 1*(1*0) = 1*0 = 0.
  json na{{"name", "na"},
          {"elements", {"a", "b"}},
          {"table", {{1, 0}, {0, 0}}},
          {"identity", nullptr},
          {"inverse", nullptr}};
  CHECK_THROWS_AS(semigroup_from_json(na), MalformedInput);
  auto const raw = raw_table_from_json(na);
  CHECK_FALSE(check_associativity(raw.n, raw.table).associative);
}

TEST_CASE("topologies round-trip", "[json]") {
  std::vector<TopSpec> specs{TopSpec::discrete(3), TopSpec::indiscrete(4),
                             build_instance("exB").presentation.topology(),
                             build_instance("luke").presentation.topology()};
  for (auto const& T : specs) {
    auto const j = to_json(T);
    CHECK(topspec_from_json(j) == T);
  }
  CHECK(to_json(TopSpec::discrete(3)).contains("opens"));
  CHECK(to_json(TopSpec::discrete(12)).contains("minimal_opens"));
  json bad{{"n", 2}, {"opens", {{0}}}};
  CHECK_THROWS_AS(topspec_from_json(bad), MalformedInput);
}

TEST_CASE("maps round-trip", "[json]") {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto const m  = random_lazy(rng, 3);
    auto const j  = to_json(m);
    auto const m2 = lazy_map_from_json(j);
    CHECK(dump(to_json(m2)) == dump(j));
    for (Point x = 0; x < 40; ++x) {
      CHECK(m(x) == m2(x));
    }
  }
  CHECK(to_json(LazyMap::identity()) == json{{"op", "identity"}});
  CHECK_THROWS_AS(lazy_map_from_json(json{{"op", "sqrt"}}), MalformedInput);
  CHECK_THROWS_AS(lazy_map_from_json(json{{"op", "affine"}, {"modulus", 2}, {"rules", {{1, 0}}}}),
                  MalformedInput);

  auto const f = PartialPerm::from_pairs(3, {{0, 2}});
  CHECK(to_json(f) == json::parse("[2, null, null]"));
  CHECK(partial_perm_from_json(to_json(f)) == f);
  CHECK_THROWS_AS(partial_perm_from_json(json::parse("[1, 1]")), MalformedInput);
  CHECK(transformation_from_json(to_json(Transformation({1, 1, 0}))) == Transformation({1, 1, 0}));
  CHECK_THROWS_AS(transformation_from_json(json::parse("[3, 0]")), MalformedInput);
}

TEST_CASE("representation maps round-trip", "[json]") {
  std::vector<RepresentationMap> maps{
      cayley_right_regular(symmetric_group(3)),
      wagner_preston(require_inverse(symmetric_inverse_monoid(2).semigroup)),
      embcl_embed(symmetric_inverse_monoid(2)),
      product_embed({cayley_right_regular(cyclic_group(2)), cayley_right_regular(left_zero(2))}),
      adjoin_embed(cayley_right_regular(left_zero(2)), Adjoined::Zero),
      clifford_product_embed(clifford_decompose(require_inverse(exb_semigroup(2))))};
  for (auto const& R : maps) {
    INFO(R.construction);
    auto const j  = to_json(R);
    CHECK(j["schema"] == 1);
    auto const R2 = representation_from_json(j);
    CHECK(dump(to_json(R2)) == dump(j));
  }
  auto j = to_json(cayley_right_regular(cyclic_group(2)));
  std::swap(j["images"][0], j["images"][1]);
  CHECK_THROWS_AS(representation_from_json(j), MalformedInput);
}

TEST_CASE("certificates round-trip and replay", "[json]") {
  for (std::size_t w = 4; w <= 6; ++w) {
    for (auto const& inst : catalog(w)) {
      INFO(inst.presentation.id() << " window " << w);
      auto const C  = std::get<ObstructionCertificate>(escape_certificate(inst));
      auto const j  = to_json(C);
      auto const C2 = certificate_from_json(j);
      CHECK(replay(C2).ok);
      CHECK(dump(to_json(C2)) == dump(j));
      CHECK(dump(to_json(std::get<ObstructionCertificate>(escape_certificate(inst)))) == dump(j));
    }
  }
  auto const inst = build_instance("exB-discrete");
  auto const N    = std::get<NoObstruction>(escape_certificate(inst));
  auto const jn   = to_json(N, "exB-discrete");
  CHECK(jn["kind"] == "no_obstruction");
  CHECK_THROWS_AS(certificate_from_json(jn), MalformedInput);

  auto j = to_json(std::get<ObstructionCertificate>(escape_certificate(build_instance("exB"))));
  j["schema"] = 2;
  CHECK_THROWS_AS(certificate_from_json(j), MalformedInput);
}
