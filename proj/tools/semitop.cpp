// semitop: command-line front end.
//
// Exit codes: 0 success (or a computed verdict for `check`), 1 malformed
// input, bad options or a failed verification, 2 no obstruction found.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "semitop/semitop.hpp"

using namespace semitop;

namespace {

  bool color_enabled() {
    char const* v = std::getenv("SEMITOP_COLOR");
    if (!v) {
      return false;
    }
    std::string const s(v);
    return s == "1" || s == "always" || s == "true" || s == "on";
  }

  std::string paint(std::string const& s, char const* code) {
    static bool const on = color_enabled();
    return on ? std::string("\x1b[") + code + "m" + s + "\x1b[0m" : s;
  }

  std::string verdict(bool b) {
    return b ? paint("true", "32") : paint("false", "31");
  }

  std::string set_str(FinSemigroup const& S, Subset const& A) {
    std::string out = "{";
    bool        first = true;
    for (auto x : elements_of(A)) {
      out += (first ? "" : ", ") + S.label(x);
      first = false;
    }
    return out + "}";
  }

  std::string pair_str(FinSemigroup const& S, std::pair<Elem, Elem> p) {
    return "(" + S.label(p.first) + ", " + S.label(p.second) + ")";
  }

  void write_file(std::string const& path, std::string const& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw MalformedInput("cannot write " + path);
    }
    out << text;
  }

  struct Options {
    bool        json = false;
    std::string out;
  };

  void emit(Options const& o, json const& j) {
    if (!o.out.empty()) {
      write_file(o.out, dump(j));
    }
    if (o.json) {
      std::cout << dump(j);
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // catalog
  ////////////////////////////////////////////////////////////////////////

  int cmd_catalog(Options const& o) {
    if (o.json) {
      std::cout << dump(catalog_json());
      return 0;
    }
    for (auto const& f : catalog_families()) {
      std::cout << f.id << "\n    " << f.summary << "\n";
    }
    std::cout << "controls: every id with -discrete appended\n";
    return 0;
  }

  ////////////////////////////////////////////////////////////////////////
  // obstruct / replay
  ////////////////////////////////////////////////////////////////////////

  void print_forcing(FinSemigroup const& S, VForcing const& v) {
    std::cout << "V[" << v.index << "] = " << set_str(S, v.V) << "\n";
    for (auto const& p : v.seeds) {
      std::cout << "  seed " << pair_str(S, p) << "\n";
    }
    for (auto const& st : v.chain) {
      std::cout << "  pair " << pair_str(S, st.derived) << " forced by multiplier "
                << S.label(st.multiplier) << (st.left ? " on the left" : "") << " from "
                << pair_str(S, st.pair) << "\n";
    }
    if (v.escape) {
      std::cout << "  " << paint("escape", "33") << ": target " << v.escape->target << " ("
                << to_string(v.escape->mode) << ") via " << S.label(v.escape->element)
                << "\n";
    } else {
      std::cout << "  no target fires\n";
    }
  }

  int cmd_obstruct(std::string const& source, CatalogOptions const& co, Options const& o) {
    auto const inst = std::filesystem::is_regular_file(source)
                          ? instance_from_json(read_json_file(source))
                          : build_instance(source, co);
    auto const& P   = inst.presentation;
    auto const& S   = P.base();
    auto const  res = escape_certificate(inst);
    if (!o.json) {
      std::cout << "instance " << P.id() << ": " << S.size() << " elements, guard "
                << P.guard() << ", limit point " << S.label(inst.p) << "\n";
      for (std::size_t i = 0; i < inst.targets.size(); ++i) {
        auto const& t = inst.targets[i];
        std::cout << "target " << i << " (" << to_string(t.mode) << "): "
                  << (t.q ? "q = " + S.label(*t.q) : "O = " + set_str(S, t.open)) << "\n";
      }
    }
    if (auto const* C = std::get_if<ObstructionCertificate>(&res)) {
      if (!o.json) {
        for (auto const& v : C->per_v) {
          print_forcing(S, v);
        }
        auto const rep = replay(*C);
        std::cout << "replay: " << (rep.ok ? "ok" : "FAILED " + rep.failure) << "\n";
        std::cout << "verdict: " << paint("obstruction", "32") << " (" << C->per_v.size()
                  << " neighbourhoods, every one forces an escape)\n";
      }
      emit(o, to_json(*C));
      return 0;
    }
    auto const& N = std::get<NoObstruction>(res);
    if (!o.json) {
      for (auto const& v : N.per_v) {
        print_forcing(S, v);
      }
      std::cout << "verdict: " << paint("no obstruction", "31") << " (" << N.surviving.size()
                << " neighbourhoods survive)\n";
    }
    emit(o, to_json(N, P.id()));
    return 2;
  }

  int cmd_replay(std::string const& path, Options const& o) {
    auto const C   = certificate_from_json(read_json_file(path));
    auto const rep = replay(C);
    if (o.json) {
      std::cout << dump({{"schema", schema_version},
                         {"instance", C.presentation.id()},
                         {"ok", rep.ok},
                         {"failure", rep.failure}});
    } else {
      std::cout << "replay " << C.presentation.id() << ": "
                << (rep.ok ? paint("ok", "32") : paint("FAILED", "31") + " " + rep.failure)
                << "\n";
    }
    return rep.ok ? 0 : 1;
  }

  ////////////////////////////////////////////////////////////////////////
  // check
  ////////////////////////////////////////////////////////////////////////

  struct Verdict {
    bool                     holds = true;
    std::vector<std::string> lines;
    json                     witness = json::object();
  };

  InverseStructure inverse_of(FinSemigroup const& S) {
    auto res = inverse_structure(S);
    if (auto const* ni = std::get_if<NotInverse>(&res)) {
      throw DomainError("not an inverse semigroup: " + S.label(ni->witness) + " has "
                        + std::to_string(ni->inverse_count) + " inverses");
    }
    return std::get<InverseStructure>(std::move(res));
  }

  TopSpec topology_or_discrete(SemigroupFile const& f, Verdict& v) {
    if (f.topology) {
      return *f.topology;
    }
    v.lines.push_back("no topology given, using the discrete one");
    return TopSpec::discrete(f.semigroup.size());
  }

  Verdict check_assoc(json const& j) {
    auto const r   = raw_table_from_json(j);
    auto const res = check_associativity(r.n, r.table);
    Verdict    v;
    v.holds = res.associative;
    if (res.violation) {
      auto const [a, b, c] = *res.violation;
      auto const mul       = [&](Elem x, Elem y) { return r.table[x * r.n + y]; };
      v.lines.push_back("(" + r.labels[a] + " " + r.labels[b] + ") " + r.labels[c] + " = "
                        + r.labels[mul(mul(a, b), c)] + " but " + r.labels[a] + " ("
                        + r.labels[b] + " " + r.labels[c] + ") = "
                        + r.labels[mul(a, mul(b, c))]);
      v.witness = {{"triple", {a, b, c}},
                   {"left", mul(mul(a, b), c)},
                   {"right", mul(a, mul(b, c))}};
    }
    return v;
  }

  Verdict check_file(std::string const& kind, json const& j) {
    if (kind == "assoc") {
      return check_assoc(j);
    }
    auto const  f = semigroup_file_from_json(j);
    auto const& S = f.semigroup;
    Verdict     v;

    if (kind == "inverse") {
      auto res = inverse_structure(S);
      if (auto const* ni = std::get_if<NotInverse>(&res)) {
        v.holds = false;
        v.lines.push_back(S.label(ni->witness) + " has " + std::to_string(ni->inverse_count)
                          + " inverses");
        v.witness = {{"element", ni->witness}, {"inverses", ni->inverse_count}};
      } else {
        v.witness = {{"inverse", std::get<InverseStructure>(res).inverses()}};
      }
    } else if (kind == "clifford") {
      auto const c = is_clifford(inverse_of(S));
      v.holds      = c.clifford;
      if (c.witness) {
        v.lines.push_back(S.label(*c.witness) + " has xx^-1 != x^-1x");
        v.witness = {{"element", *c.witness}};
      }
    } else if (kind == "vp") {
      if (!j.contains("congruence")) {
        throw MalformedInput("check vp needs a \"congruence\" field");
      }
      auto const M   = inverse_of(S);
      auto const rho = congruence_from_json(j.at("congruence"), S);
      v.holds        = is_vagner_preston(M, rho);
      v.lines.push_back(std::to_string(rho.number_of_classes()) + " classes");
      if (v.holds && S.is_commutative()) {
        auto const c = classify_vp_quotient(M, rho);
        v.lines.push_back(std::string("quotient is a ") + to_string(c.kind));
        v.witness = {{"quotient", to_string(c.kind)}};
      }
    } else if (kind == "ditop" || kind == "weak-ditop") {
      auto const M = inverse_of(S);
      auto const T = topology_or_discrete(f, v);
      auto const r = kind == "ditop" ? ditopological_check(M, T)
                                     : weakly_ditopological_check(M, T);
      v.holds      = r.holds;
      if (r.inversion_failure) {
        v.lines.push_back("inversion is not continuous at " + S.label(*r.inversion_failure));
        v.witness = {{"inversion_failure", *r.inversion_failure}};
      } else if (r.x) {
        v.lines.push_back("at x = " + S.label(*r.x) + ", O = " + set_str(S, *r.O)
                          + " but the forced set is " + set_str(S, *r.forced));
        v.witness = {{"x", *r.x}, {"O", subset_to_json(*r.O)},
                     {"forced", subset_to_json(*r.forced)}};
      } else {
        v.lines.push_back("every least neighbourhood is met");
      }
    } else if (kind == "u" || kind == "u2") {
      auto const T = topology_or_discrete(f, v);
      json       pts = json::array();
      for (Elem x = 0; x < S.size(); ++x) {
        auto const r = kind == "u" ? u_check(S, T, x) : u2_check(S, T, x);
        if (!r.holds) {
          v.holds = false;
          v.lines.push_back("fails at " + S.label(x));
          v.witness = {{"point", x}};
          break;
        }
        v.lines.push_back(S.label(x) + ": y = " + S.label(*r.y) + ", "
                          + (kind == "u" ? "V = " : "I = ") + set_str(S, *r.set));
        pts.push_back({{"x", x}, {"y", *r.y}, {"set", subset_to_json(*r.set)}});
      }
      if (v.holds) {
        v.witness = {{"points", std::move(pts)}};
      }
    } else if (kind == "chain-finite") {
      auto const r = chain_finite_check(S);
      std::string chain;
      for (auto e : r.chain) {
        chain += (chain.empty() ? "" : " < ") + S.label(e);
      }
      v.lines.push_back("longest chain has " + std::to_string(r.longest)
                        + " elements: " + chain);
      v.witness = {{"longest", r.longest}, {"chain", r.chain}};
    } else if (kind == "cong-basis") {
      auto const T = topology_or_discrete(f, v);
      auto const r = congruence_basis_check(S, T);
      v.holds      = r.holds;
      v.lines.push_back("least right congruence with open classes has "
                        + std::to_string(r.rho.number_of_classes()) + " classes");
      for (auto const& st : r.chain) {
        v.lines.push_back("pair " + pair_str(S, st.derived) + " forced by multiplier "
                          + S.label(st.multiplier));
      }
      if (r.x) {
        v.lines.push_back("class of " + S.label(*r.x) + " leaves " + set_str(S, *r.O)
                          + " via " + S.label(*r.escaped));
        v.witness = {{"x", *r.x}, {"O", subset_to_json(*r.O)}, {"escaped", *r.escaped}};
      }
    } else {
      throw MalformedInput("unknown check " + kind);
    }
    return v;
  }

  int cmd_check(std::string const& kind, std::string const& path, Options const& o) {
    auto const v = check_file(kind, read_json_file(path));
    if (o.json) {
      std::cout << dump({{"schema", schema_version},
                         {"check", kind},
                         {"holds", v.holds},
                         {"witness", v.witness}});
    } else {
      std::cout << verdict(v.holds) << "\n";
      for (auto const& l : v.lines) {
        std::cout << "  " << l << "\n";
      }
    }
    return 0;
  }

  ////////////////////////////////////////////////////////////////////////
  // embed
  ////////////////////////////////////////////////////////////////////////

  struct Built {
    RepresentationMap R;
    TopSpec           T;
    std::vector<std::string> notes;
  };

  Built build_embedding(std::string const& kind, json const& j, std::string const& adjoin) {
    if (kind == "product") {
      std::vector<RepresentationMap> factors;
      for (auto const& fj : detail::sub(j, "factors")) {
        factors.push_back(cayley_right_regular(semigroup_from_json(fj)));
      }
      auto R = product_embed(factors);
      auto T = TopSpec::discrete(R.source.size());
      return {std::move(R), std::move(T), {}};
    }
    if (kind == "group-restrict") {
      std::vector<Transformation> gens;
      for (auto const& g : detail::sub(j, "generators")) {
        gens.push_back(transformation_from_json(g));
      }
      auto gr = group_restriction(gens);
      auto const laws = group_laws(gr.group.elements);
      char const* const        roman[] = {"i", "ii", "iii", "iv", "v", "vi"};
      std::vector<std::string> notes;
      for (std::size_t i = 0; i < 6; ++i) {
        notes.push_back(std::string("law (") + roman[i] + "): " + (laws.holds[i] ? "holds" : "FAILS"));
      }
      if (!laws.all()) {
        throw TheoremViolation("group laws fail: " + laws.failures.front());
      }
      auto T = TopSpec::discrete(gr.map.source.size());
      return {std::move(gr.map), std::move(T), std::move(notes)};
    }

    auto const f = semigroup_file_from_json(j);
    auto const& S = f.semigroup;
    auto T = f.topology ? *f.topology : TopSpec::discrete(S.size());
    if (kind == "cayley") {
      return {cayley_right_regular(S), std::move(T), {}};
    }
    if (kind == "wp") {
      return {wagner_preston(inverse_of(S)), std::move(T), {}};
    }
    if (kind == "adjoin") {
      auto const which = adjoin == "zero" ? Adjoined::Zero : Adjoined::Identity;
      auto       R     = adjoin_embed(cayley_right_regular(S), which);
      auto       T1    = TopSpec::discrete(R.source.size());
      return {std::move(R), std::move(T1), {}};
    }
    if (kind == "embcl") {
      if (j.contains("partial_perms")) {
        RepresentationMap inc{"inclusion", S, TargetSpace::PartialPerms, {}, 0, {}};
        for (auto const& p : j.at("partial_perms")) {
          auto g     = partial_perm_from_json(p);
          inc.window = g.window();
          inc.images.emplace_back(std::move(g));
        }
        if (inc.images.size() != S.size()) {
          throw MalformedInput("need one partial permutation per element");
        }
        try {
          detail::certify(inc);
        } catch (TheoremViolation const& e) {
          throw MalformedInput(std::string("partial_perms: ") + e.what());
        }
        return {embcl_embed(inc), std::move(T), {"source given as partial bijections"}};
      }
      return {embcl_embed(wagner_preston(inverse_of(S))), std::move(T),
              {"source represented by its Wagner-Preston map first"}};
    }
    if (kind == "clifford-product") {
      return {clifford_product_embed(clifford_decompose(inverse_of(S)), f.topology),
              std::move(T), {}};
    }
    throw MalformedInput("unknown embedding " + kind);
  }

  int cmd_embed(std::string const& kind, std::string const& path, std::string const& adjoin,
                Options const& o) {
    auto const b   = build_embedding(kind, read_json_file(path), adjoin);
    auto const rep = verify_embedding(b.R, b.T);
    auto const n   = b.R.source.size();
    if (!o.json) {
      std::cout << "construction: " << b.R.construction << "\n"
                << "source: " << b.R.source.name() << " (" << n << " elements)\n"
                << "target: " << to_string(b.R.target);
      if (b.R.window) {
        std::cout << " (window " << b.R.window << ")";
      }
      std::cout << "\n";
      for (auto const& note : b.notes) {
        std::cout << note << "\n";
      }
      std::cout << "homomorphism: " << verdict(rep.homomorphism) << " ("
                << (n * n <= (std::size_t(1) << 16) ? "exhaustive, " + std::to_string(n * n)
                                                    : std::string("sampled, 16384"))
                << " pairs)\n"
                << "injective: " << verdict(rep.injective) << "\n"
                << "continuous: " << verdict(rep.continuous) << "\n"
                << "open: " << verdict(rep.open) << "\n";
      for (auto const& fl : rep.failures) {
        std::cout << "  " << fl << "\n";
      }
      std::cout << "verdict: " << (rep.ok() ? paint("verified", "32") : paint("FAILED", "31"))
                << "\n";
    }
    auto const mj = to_json(b.R);
    if (!o.out.empty()) {
      write_file(o.out, dump(mj));
    }
    if (o.json) {
      std::cout << dump({{"schema", schema_version}, {"map", mj}, {"report", to_json(rep)}});
    }
    return rep.ok() ? 0 : 1;
  }

  ////////////////////////////////////////////////////////////////////////
  // export
  ////////////////////////////////////////////////////////////////////////

  int cmd_export(std::string const& id, CatalogOptions const& co, Options o) {
    json j;
    for (auto const& [sid, S] : bundled_semigroups()) {
      if (sid == id) {
        j           = to_json(S);
        j["schema"] = schema_version;
      }
    }
    if (j.is_null()) {
      for (auto const& g : transformation_group_fixtures()) {
        if (g.id == id) {
          json gens = json::array();
          for (auto const& t : g.elements) {
            gens.push_back(to_json(t));
          }
          j = {{"schema", schema_version}, {"name", g.id}, {"generators", std::move(gens)}};
        }
      }
    }
    if (j.is_null()) {
      j = to_json(build_instance(id, co));
    }
    // Partial-bijection fixtures carry their elements.
    for (std::size_t n = 1; n <= 4; ++n) {
      for (auto const& I : {symmetric_inverse_monoid(n), brandt_semigroup(n)}) {
        if (I.semigroup.name() == id && j.contains("table")) {
          json pps = json::array();
          for (auto const& f : I.elements) {
            pps.push_back(to_json(f));
          }
          j["partial_perms"] = std::move(pps);
        }
      }
    }
    o.json = o.out.empty();
    emit(o, j);
    return 0;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semitop: finite semigroup topology workbench"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  Options        opts;
  CatalogOptions co;
  std::size_t    guard = 0;
  std::string    source, kind, path, adjoin = "identity";

  auto* cat = app.add_subcommand("catalog", "List the bundled obstruction instances");
  cat->add_flag("--json", opts.json, "Machine-readable listing");

  auto* obs = app.add_subcommand("obstruct", "Search for a forcing certificate");
  obs->add_option("source", source, "Catalog id or instance file")->required();
  obs->add_option("--window", co.window, "Window size (at least 4)");
  auto* guard_opt = obs->add_option("--guard", guard, "Guard (default window - 2)");
  obs->add_option("--group", co.group, "Group for right_simple_zero")
      ->check(CLI::IsMember({"Z2", "R2", "S3"}));
  obs->add_option("--rank-bound", co.rank_bound, "Rank bound for luke");
  obs->add_flag("--json", opts.json, "Print the certificate JSON instead of the transcript");
  obs->add_option("--out", opts.out, "Write the certificate JSON here");

  auto* rep = app.add_subcommand("replay", "Re-check a certificate file");
  rep->add_option("file", path, "Certificate file")->required();
  rep->add_flag("--json", opts.json, "JSON output");

  auto* chk = app.add_subcommand("check", "Run a checker on a semigroup file");
  chk->add_option("kind", kind, "Checker")
      ->required()
      ->check(CLI::IsMember({"assoc", "inverse", "clifford", "vp", "ditop", "weak-ditop", "u",
                             "u2", "chain-finite", "cong-basis"}));
  chk->add_option("file", path, "Semigroup file")->required();
  chk->add_flag("--json", opts.json, "JSON output");

  auto* emb = app.add_subcommand("embed", "Build and verify an embedding");
  emb->add_option("kind", kind, "Construction")
      ->required()
      ->check(CLI::IsMember(
          {"cayley", "wp", "product", "adjoin", "embcl", "clifford-product", "group-restrict"}));
  emb->add_option("file", path, "Input file")->required();
  emb->add_option("--adjoin", adjoin, "Element adjoined by `embed adjoin`")
      ->check(CLI::IsMember({"identity", "zero"}));
  emb->add_flag("--json", opts.json, "Print the map and report as JSON");
  emb->add_option("--out", opts.out, "Write the map JSON here");

  auto* exp = app.add_subcommand("export", "Write a bundled fixture as JSON");
  exp->add_option("id", source, "Semigroup, group fixture or catalog id")->required();
  exp->add_option("--window", co.window, "Window for catalog instances");
  exp->add_option("--out", opts.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 1;
  }
  if (guard_opt->count() > 0) {
    co.guard = guard;
  }

  try {
    if (*cat) {
      return cmd_catalog(opts);
    }
    if (*obs) {
      return cmd_obstruct(source, co, opts);
    }
    if (*rep) {
      return cmd_replay(path, opts);
    }
    if (*chk) {
      return cmd_check(kind, path, opts);
    }
    if (*emb) {
      return cmd_embed(kind, path, adjoin, opts);
    }
    if (*exp) {
      return cmd_export(source, co, opts);
    }
  } catch (TheoremViolation const& e) {
    std::cerr << "semitop: verification failed: " << e.what() << "\n";
    return 1;
  } catch (Error const& e) {
    std::cerr << "semitop: " << e.what() << "\n";
    return 1;
  } catch (std::exception const& e) {
    std::cerr << "semitop: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
