#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "semitop/embed.hpp"
#include "semitop/inverse.hpp"
#include "semitop/obstruct.hpp"
#include "semitop/topo.hpp"
#include "semitop/transforms.hpp"

namespace semitop {

  using json = nlohmann::json;

  inline constexpr int schema_version = 1;

  namespace detail {
    template <typename T>
    T field(json const& j, char const* key) {
      if (!j.is_object() || !j.contains(key)) {
        throw MalformedInput(std::string("missing field \"") + key + "\"");
      }
      try {
        return j.at(key).get<T>();
      } catch (json::exception const& e) {
        throw MalformedInput(std::string("field \"") + key + "\": " + e.what());
      }
    }

    inline json const& sub(json const& j, char const* key) {
      if (!j.is_object() || !j.contains(key)) {
        throw MalformedInput(std::string("missing field \"") + key + "\"");
      }
      return j.at(key);
    }

    inline void check_schema(json const& j) {
      if (j.contains("schema") && j.at("schema") != schema_version) {
        throw MalformedInput("unsupported schema " + j.at("schema").dump());
      }
    }
  }  // namespace detail

  inline json read_json_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw MalformedInput("cannot open " + path);
    }
    try {
      return json::parse(in);
    } catch (json::parse_error const& e) {
      throw MalformedInput(path + ": " + e.what());
    }
  }

  // Two-space indentation, sorted keys, trailing newline.
  inline std::string dump(json const& j) {
    return j.dump(2) + "\n";
  }

  inline json subset_to_json(Subset const& s) {
    return elements_of(s);
  }

  inline Subset subset_from_json(json const& j, std::size_t n) {
    Subset s(n);
    try {
      for (auto x : j.get<std::vector<Elem>>()) {
        if (x >= n) {
          throw MalformedInput("element " + std::to_string(x) + " out of range");
        }
        s.set(x);
      }
    } catch (json::exception const& e) {
      throw MalformedInput(std::string("subset: ") + e.what());
    }
    return s;
  }

  ////////////////////////////////////////////////////////////////////////
  // Semigroups
  ////////////////////////////////////////////////////////////////////////

  inline json to_json(FinSemigroup const& S, bool with_inverse = true) {
    std::vector<std::vector<Elem>> rows(S.size());
    for (Elem a = 0; a < S.size(); ++a) {
      for (Elem b = 0; b < S.size(); ++b) {
        rows[a].push_back(S.mul(a, b));
      }
    }
    json j{{"name", S.name()}, {"elements", S.labels()}, {"table", rows}};
    j["identity"] = S.identity() ? json(*S.identity()) : json(nullptr);
    j["inverse"]  = nullptr;
    if (with_inverse) {
      auto const res = inverse_structure(S);
      if (auto const* IS = std::get_if<InverseStructure>(&res)) {
        j["inverse"] = IS->inverses();
      }
    }
    return j;
  }

  // The table as stored, before any semigroup invariant is checked.
  struct RawTable {
    std::string              name;
    std::vector<std::string> labels;
    std::size_t              n = 0;
    std::vector<Elem>        table;
  };

  inline RawTable raw_table_from_json(json const& j) {
    RawTable r;
    r.name   = j.value("name", std::string{});
    r.labels = detail::field<std::vector<std::string>>(j, "elements");
    auto const rows = detail::field<std::vector<std::vector<Elem>>>(j, "table");
    r.n             = rows.size();
    if (r.labels.size() != r.n) {
      throw MalformedInput("expected " + std::to_string(r.n) + " element labels, got "
                           + std::to_string(r.labels.size()));
    }
    for (std::size_t a = 0; a < r.n; ++a) {
      if (rows[a].size() != r.n) {
        throw MalformedInput("table row " + std::to_string(a) + " has "
                             + std::to_string(rows[a].size()) + " entries");
      }
      for (auto v : rows[a]) {
        if (v >= r.n) {
          throw MalformedInput("table entry " + std::to_string(v) + " out of range");
        }
      }
      r.table.insert(r.table.end(), rows[a].begin(), rows[a].end());
    }
    return r;
  }

  inline FinSemigroup semigroup_from_json(json const& j) {
    auto                r = raw_table_from_json(j);
    std::optional<Elem> id;
    if (j.contains("identity") && !j.at("identity").is_null()) {
      id = detail::field<Elem>(j, "identity");
    }
    FinSemigroup S(r.n, std::move(r.table), std::move(r.labels), id, std::move(r.name));
    if (j.contains("inverse") && !j.at("inverse").is_null()) {
      auto const inv = detail::field<std::vector<Elem>>(j, "inverse");
      auto const res = inverse_structure(S);
      if (auto const* ni = std::get_if<NotInverse>(&res)) {
        throw MalformedInput("inverse given but element " + std::to_string(ni->witness)
                             + " has " + std::to_string(ni->inverse_count) + " inverses");
      }
      if (std::get<InverseStructure>(res).inverses() != inv) {
        throw MalformedInput("declared inverse map is not the inversion");
      }
    }
    return S;
  }

  ////////////////////////////////////////////////////////////////////////
  // Topologies
  ////////////////////////////////////////////////////////////////////////

  // Small topologies list every open set; large ones list the least
  // neighbourhood of each point.
  inline json to_json(TopSpec const& T) {
    json j{{"n", T.size()}};
    try {
      auto const opens = T.opens(256);
      json       o     = json::array();
      for (auto const& U : opens) {
        o.push_back(subset_to_json(U));
      }
      j["opens"] = std::move(o);
    } catch (SizeError const&) {
      json m = json::array();
      for (auto const& U : T.minimal_opens()) {
        m.push_back(subset_to_json(U));
      }
      j["minimal_opens"] = std::move(m);
    }
    return j;
  }

  inline TopSpec topspec_from_json(json const& j) {
    auto const          n = detail::field<std::size_t>(j, "n");
    std::vector<Subset> sets;
    char const*         key = j.contains("opens") ? "opens" : "minimal_opens";
    for (auto const& s : detail::sub(j, key)) {
      sets.push_back(subset_from_json(s, n));
    }
    if (key[0] == 'o') {
      return TopSpec::from_opens(n, sets);
    }
    if (sets.size() != n) {
      throw MalformedInput("one least neighbourhood per point is required");
    }
    return TopSpec::from_minimal(std::move(sets));
  }

  // A semigroup file, optionally carrying a topology on its carrier.
  struct SemigroupFile {
    FinSemigroup           semigroup;
    std::optional<TopSpec> topology;
  };

  inline SemigroupFile semigroup_file_from_json(json const& j) {
    detail::check_schema(j);
    SemigroupFile f{semigroup_from_json(j), std::nullopt};
    if (j.contains("topology")) {
      f.topology = topspec_from_json(j.at("topology"));
      if (f.topology->size() != f.semigroup.size()) {
        throw MalformedInput("topology carrier differs from the semigroup");
      }
    }
    return f;
  }

  ////////////////////////////////////////////////////////////////////////
  // Maps
  ////////////////////////////////////////////////////////////////////////

  inline json to_json(Transformation const& t) {
    return t.images();
  }

  inline json to_json(PartialPerm const& f) {
    json a = json::array();
    for (Elem x = 0; x < f.window(); ++x) {
      a.push_back(f[x] == undefined ? json(nullptr) : json(f[x]));
    }
    return a;
  }

  inline Transformation transformation_from_json(json const& j) {
    try {
      auto m = j.get<std::vector<Elem>>();
      for (auto y : m) {
        if (y >= m.size()) {
          throw MalformedInput("transformation value " + std::to_string(y) + " out of range");
        }
      }
      return Transformation(std::move(m));
    } catch (json::exception const& e) {
      throw MalformedInput(std::string("transformation: ") + e.what());
    }
  }

  inline PartialPerm partial_perm_from_json(json const& j) {
    if (!j.is_array()) {
      throw MalformedInput("partial permutation must be an array");
    }
    std::vector<Elem> m;
    for (auto const& v : j) {
      if (v.is_null()) {
        m.push_back(undefined);
      } else if (v.is_number_unsigned() && v.get<std::uint64_t>() < j.size()) {
        m.push_back(v.get<Elem>());
      } else {
        throw MalformedInput("partial permutation value " + v.dump() + " out of range");
      }
    }
    return PartialPerm(std::move(m));
  }

  inline json to_json(LazyMap const& m) {
    return std::visit(
        [](auto const& n) -> json {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, IdentityNode>) {
            return {{"op", "identity"}};
          } else if constexpr (std::is_same_v<T, ConstNode>) {
            return {{"op", "const"}, {"value", n.value}};
          } else if constexpr (std::is_same_v<T, TableNode>) {
            json e = json::array();
            for (auto const& [x, y] : n.entries) {
              e.push_back({x, y ? json(*y) : json(nullptr)});
            }
            return {{"op", "table"},
                    {"entries", std::move(e)},
                    {"fallback", n.fallback ? to_json(*n.fallback) : json(nullptr)}};
          } else if constexpr (std::is_same_v<T, AffineNode>) {
            return {{"op", "affine"}, {"modulus", n.modulus}, {"rules", n.rules}};
          } else if constexpr (std::is_same_v<T, PairBlockNode>) {
            json b = json::array();
            for (auto const& x : n.blocks) {
              b.push_back(to_json(x));
            }
            return {{"op", "pair_block"}, {"blocks", std::move(b)}};
          } else {
            return {{"op", "compose"}, {"first", to_json(n.first)}, {"then", to_json(n.then)}};
          }
        },
        m.node().v);
  }

  inline LazyMap lazy_map_from_json(json const& j) {
    auto const op = detail::field<std::string>(j, "op");
    if (op == "identity") {
      return LazyMap::identity();
    }
    if (op == "const") {
      return LazyMap::constant(detail::field<Point>(j, "value"));
    }
    if (op == "table") {
      std::map<Point, std::optional<Point>> e;
      for (auto const& kv : detail::sub(j, "entries")) {
        if (!kv.is_array() || kv.size() != 2 || !kv[0].is_number_unsigned()
            || !(kv[1].is_null() || kv[1].is_number_unsigned())) {
          throw MalformedInput("table entry " + kv.dump() + " is not [point, point|null]");
        }
        auto const x = kv[0].get<Point>();
        if (!e.emplace(x, kv[1].is_null() ? std::nullopt
                                          : std::optional<Point>(kv[1].get<Point>()))
                 .second) {
          throw MalformedInput("duplicate table key " + std::to_string(x));
        }
      }
      std::optional<LazyMap> fb;
      if (j.contains("fallback") && !j.at("fallback").is_null()) {
        fb = lazy_map_from_json(j.at("fallback"));
      }
      return LazyMap::table(std::move(e), std::move(fb));
    }
    if (op == "affine") {
      return LazyMap::affine(
          detail::field<Point>(j, "modulus"),
          detail::field<std::vector<std::pair<std::int64_t, std::int64_t>>>(j, "rules"));
    }
    if (op == "pair_block") {
      std::vector<LazyMap> b;
      for (auto const& x : detail::sub(j, "blocks")) {
        b.push_back(lazy_map_from_json(x));
      }
      return LazyMap::pair_block(std::move(b));
    }
    if (op == "compose") {
      return LazyMap::compose(lazy_map_from_json(detail::sub(j, "first")),
                              lazy_map_from_json(detail::sub(j, "then")));
    }
    throw MalformedInput("unknown map op \"" + op + "\"");
  }

  ////////////////////////////////////////////////////////////////////////
  // Representation maps
  ////////////////////////////////////////////////////////////////////////

  inline json to_json(RepresentationMap const& R) {
    json images = json::array();
    for (auto const& im : R.images) {
      images.push_back(std::visit(
          [](auto const& x) -> json {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, ProductElem>) {
              return x;
            } else {
              return to_json(x);
            }
          },
          im));
    }
    json j{{"schema", schema_version},
           {"construction", R.construction},
           {"source", to_json(R.source)},
           {"target", to_string(R.target)},
           {"window", R.window},
           {"images", std::move(images)}};
    if (R.target == TargetSpace::Product) {
      json f = json::array();
      for (auto const& F : R.factors) {
        f.push_back(to_json(F, false));
      }
      j["factors"] = std::move(f);
    }
    return j;
  }

  // Loads and re-verifies (homomorphism and injectivity).
  inline RepresentationMap representation_from_json(json const& j) {
    detail::check_schema(j);
    RepresentationMap R{detail::field<std::string>(j, "construction"),
                        semigroup_from_json(detail::sub(j, "source")),
                        TargetSpace::Transformations,
                        {},
                        detail::field<std::size_t>(j, "window"),
                        {}};
    auto const t = detail::field<std::string>(j, "target");
    bool       known = false;
    for (auto s : {TargetSpace::Transformations, TargetSpace::PartialPerms, TargetSpace::NN,
                   TargetSpace::IN, TargetSpace::Product}) {
      if (to_string(s) == t) {
        R.target = s;
        known    = true;
      }
    }
    if (!known) {
      throw MalformedInput("unknown target space \"" + t + "\"");
    }
    if (R.target == TargetSpace::Product) {
      for (auto const& f : detail::sub(j, "factors")) {
        R.factors.push_back(semigroup_from_json(f));
      }
    }
    for (auto const& im : detail::sub(j, "images")) {
      switch (R.target) {
        case TargetSpace::Transformations:
          R.images.emplace_back(transformation_from_json(im));
          break;
        case TargetSpace::PartialPerms:
          R.images.emplace_back(partial_perm_from_json(im));
          break;
        case TargetSpace::NN:
        case TargetSpace::IN:
          R.images.emplace_back(lazy_map_from_json(im));
          break;
        case TargetSpace::Product: {
          auto v = im.get<ProductElem>();
          if (v.size() != R.factors.size()) {
            throw MalformedInput("product image has the wrong arity");
          }
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] >= R.factors[i].size()) {
              throw MalformedInput("product coordinate out of range");
            }
          }
          R.images.emplace_back(std::move(v));
          break;
        }
      }
    }
    if (R.images.size() != R.source.size()) {
      throw MalformedInput("image count differs from source size");
    }
    if (auto f = homomorphism_failure(R)) {
      throw MalformedInput("map is not a homomorphism at (" + std::to_string(f->a) + ", "
                           + std::to_string(f->b) + ")");
    }
    if (auto f = injectivity_failure(R)) {
      throw MalformedInput("map is not injective: " + std::to_string(f->a) + " and "
                           + std::to_string(f->b));
    }
    return R;
  }

  inline json to_json(EmbeddingReport const& r) {
    return {{"homomorphism", r.homomorphism},
            {"injective", r.injective},
            {"continuous", r.continuous},
            {"open", r.open},
            {"failures", r.failures}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Presentations and certificates
  ////////////////////////////////////////////////////////////////////////

  inline json to_json(TruncatedPresentation const& P) {
    json fams = json::array();
    for (auto const& fam : P.families()) {
      json f = json::array();
      for (auto const& V : fam) {
        f.push_back(subset_to_json(V));
      }
      fams.push_back(std::move(f));
    }
    return {{"id", P.id()},
            {"semigroup", to_json(P.base(), false)},
            {"limit_points", P.limit_points()},
            {"families", std::move(fams)},
            {"guard", P.guard()},
            {"tail_start", P.tail_start()},
            {"control", P.is_control()}};
  }

  inline TruncatedPresentation presentation_from_json(json const& j) {
    auto       S  = semigroup_from_json(detail::sub(j, "semigroup"));
    auto const n  = S.size();
    auto       lp = detail::field<std::vector<Elem>>(j, "limit_points");
    std::vector<std::vector<Subset>> fams;
    for (auto const& f : detail::sub(j, "families")) {
      std::vector<Subset> fam;
      for (auto const& V : f) {
        fam.push_back(subset_from_json(V, n));
      }
      fams.push_back(std::move(fam));
    }
    return TruncatedPresentation(detail::field<std::string>(j, "id"),
                                 std::move(S),
                                 std::move(lp),
                                 std::move(fams),
                                 detail::field<std::size_t>(j, "guard"),
                                 detail::field<Elem>(j, "tail_start"),
                                 j.value("control", false));
  }

  namespace detail {
    inline json pair_json(std::pair<Elem, Elem> p) {
      return json::array({p.first, p.second});
    }

    inline std::pair<Elem, Elem> pair_from(json const& j) {
      auto const v = j.get<std::vector<Elem>>();
      if (v.size() != 2) {
        throw MalformedInput("expected a pair, got " + j.dump());
      }
      return {v[0], v[1]};
    }

    inline TargetMode mode_from(std::string const& s) {
      if (s == to_string(TargetMode::ClassEscapes)) {
        return TargetMode::ClassEscapes;
      }
      if (s == to_string(TargetMode::IsolatedCollapses)) {
        return TargetMode::IsolatedCollapses;
      }
      throw MalformedInput("unknown target mode \"" + s + "\"");
    }

    inline json vforcing_json(VForcing const& v) {
      json seeds = json::array();
      for (auto p : v.seeds) {
        seeds.push_back(pair_json(p));
      }
      json chain = json::array();
      for (auto const& s : v.chain) {
        chain.push_back({{"pair", pair_json(s.pair)},
                         {"multiplier", s.multiplier},
                         {"derived", pair_json(s.derived)},
                         {"side", s.left ? "left" : "right"}});
      }
      json j{{"index", v.index},
             {"V", subset_to_json(v.V)},
             {"seeds", std::move(seeds)},
             {"chain", std::move(chain)},
             {"partition", v.partition.classes()}};
      if (v.escape) {
        j["escape"] = {{"target", v.escape->target},
                       {"mode", to_string(v.escape->mode)},
                       {"element", v.escape->element}};
      } else {
        j["escape"] = nullptr;
      }
      return j;
    }

    inline VForcing vforcing_from(json const& j, FinSemigroup const& S) {
      VForcing v{field<std::size_t>(j, "index"), subset_from_json(sub(j, "V"), S.size()),
                 {}, {}, {}, std::nullopt};
      for (auto const& p : sub(j, "seeds")) {
        v.seeds.push_back(pair_from(p));
      }
      for (auto const& s : sub(j, "chain")) {
        auto const side = field<std::string>(s, "side");
        if (side != "left" && side != "right") {
          throw MalformedInput("unknown chain side \"" + side + "\"");
        }
        v.chain.push_back({pair_from(sub(s, "pair")), field<Elem>(s, "multiplier"),
                           pair_from(sub(s, "derived")), side == "left"});
      }
      try {
        v.partition = Congruence(S, CongruenceKind::Right,
                                 field<std::vector<Elem>>(j, "partition"));
      } catch (KindError const& e) {
        throw MalformedInput(std::string("partition: ") + e.what());
      }
      if (j.contains("escape") && !j.at("escape").is_null()) {
        auto const& e = j.at("escape");
        v.escape = EscapeWitness{field<std::size_t>(e, "target"),
                                 mode_from(field<std::string>(e, "mode")),
                                 field<Elem>(e, "element")};
      }
      return v;
    }

    inline json target_json(Target const& t) {
      return {{"mode", to_string(t.mode)},
              {"open", subset_to_json(t.open)},
              {"q", t.q ? json(*t.q) : json(nullptr)}};
    }

    inline Target target_from(json const& t, std::size_t n) {
      Target tg{mode_from(field<std::string>(t, "mode")), subset_from_json(sub(t, "open"), n),
                std::nullopt};
      if (t.contains("q") && !t.at("q").is_null()) {
        tg.q = field<Elem>(t, "q");
        if (*tg.q >= n) {
          throw MalformedInput("target point out of range");
        }
      }
      return tg;
    }
  }  // namespace detail

  inline json to_json(ObstructionCertificate const& C) {
    json targets = json::array();
    for (auto const& t : C.targets) {
      targets.push_back(detail::target_json(t));
    }
    json per = json::array();
    for (auto const& v : C.per_v) {
      per.push_back(detail::vforcing_json(v));
    }
    return {{"schema", schema_version},
            {"kind", "obstruction"},
            {"presentation", to_json(C.presentation)},
            {"p", C.p},
            {"targets", std::move(targets)},
            {"per_v", std::move(per)}};
  }

  inline json to_json(NoObstruction const& N, std::string const& id) {
    json per = json::array();
    for (auto const& v : N.per_v) {
      per.push_back(detail::vforcing_json(v));
    }
    return {{"schema", schema_version},
            {"kind", "no_obstruction"},
            {"instance", id},
            {"surviving", N.surviving},
            {"per_v", std::move(per)}};
  }

  inline ObstructionCertificate certificate_from_json(json const& j) {
    detail::check_schema(j);
    if (j.value("kind", std::string{}) != "obstruction") {
      throw MalformedInput("not an obstruction certificate");
    }
    auto       P = presentation_from_json(detail::sub(j, "presentation"));
    auto const n = P.base().size();
    ObstructionCertificate C{P, detail::field<Elem>(j, "p"), {}, {}};
    if (C.p >= n) {
      throw MalformedInput("limit point out of range");
    }
    for (auto const& t : detail::sub(j, "targets")) {
      C.targets.push_back(detail::target_from(t, n));
    }
    for (auto const& v : detail::sub(j, "per_v")) {
      C.per_v.push_back(detail::vforcing_from(v, P.base()));
    }
    return C;
  }

  // An obstruction problem: presentation, limit point and targets.
  inline json to_json(CatalogInstance const& inst) {
    json targets = json::array();
    for (auto const& t : inst.targets) {
      targets.push_back(detail::target_json(t));
    }
    return {{"schema", schema_version},
            {"kind", "instance"},
            {"presentation", to_json(inst.presentation)},
            {"p", inst.p},
            {"targets", std::move(targets)}};
  }

  inline CatalogInstance instance_from_json(json const& j) {
    detail::check_schema(j);
    if (j.value("kind", std::string{}) != "instance") {
      throw MalformedInput("not an instance file");
    }
    auto       P = presentation_from_json(detail::sub(j, "presentation"));
    auto const n = P.base().size();
    CatalogInstance inst{P, detail::field<Elem>(j, "p"), {}};
    if (inst.p >= n) {
      throw MalformedInput("limit point out of range");
    }
    for (auto const& t : detail::sub(j, "targets")) {
      inst.targets.push_back(detail::target_from(t, n));
    }
    if (inst.targets.empty()) {
      throw MalformedInput("instance has no targets");
    }
    return inst;
  }

  // A right congruence stored as class labels, one per element.
  inline Congruence congruence_from_json(json const& j, FinSemigroup const& S) {
    auto const kind = j.value("kind", std::string("right"));
    if (kind != "right" && kind != "two_sided") {
      throw MalformedInput("unknown congruence kind \"" + kind + "\"");
    }
    auto const cls = detail::field<std::vector<Elem>>(j, "classes");
    if (cls.size() != S.size()) {
      throw MalformedInput("congruence has " + std::to_string(cls.size()) + " labels for "
                           + std::to_string(S.size()) + " elements");
    }
    try {
      return Congruence(S, kind == "right" ? CongruenceKind::Right : CongruenceKind::TwoSided,
                        cls);
    } catch (KindError const& e) {
      throw MalformedInput(std::string("congruence: ") + e.what());
    }
  }

  inline json to_json(Congruence const& rho) {
    return {{"kind", rho.kind() == CongruenceKind::Right ? "right" : "two_sided"},
            {"classes", rho.classes()}};
  }

  inline json catalog_json() {
    json fams = json::array();
    for (auto const& f : catalog_families()) {
      fams.push_back({{"id", f.id}, {"summary", f.summary}});
    }
    return {{"schema", schema_version}, {"families", std::move(fams)}, {"ids", catalog_ids()}};
  }

}  // namespace semitop
