#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "semitop/error.hpp"
#include "semitop/semigroup.hpp"

namespace semitop {

  // Points of N. Windows are initial segments [0, n).
  using Point = std::uint64_t;

  ////////////////////////////////////////////////////////////////////////
  // Transformation: an element of X^X for X = [0, n)
  ////////////////////////////////////////////////////////////////////////

  // Maps are written to the right of their argument and composed left to
  // right: (x)(fg) = ((x)f)g.
  class Transformation {
   public:
    Transformation() = default;

    explicit Transformation(std::vector<Elem> images) : _map(std::move(images)) {
      for (auto y : _map) {
        if (y >= _map.size()) {
          throw MalformedInput("transformation value " + std::to_string(y)
                               + " outside window " + std::to_string(_map.size()));
        }
      }
    }

    static Transformation identity(std::size_t n) {
      std::vector<Elem> m(n);
      for (Elem i = 0; i < n; ++i) {
        m[i] = i;
      }
      return Transformation(std::move(m));
    }

    std::size_t window() const noexcept {
      return _map.size();
    }

    Elem operator[](Elem x) const {
      return _map.at(x);
    }

    std::vector<Elem> const& images() const noexcept {
      return _map;
    }

    Subset image_set() const {
      Subset s(_map.size());
      for (auto y : _map) {
        s.set(y);
      }
      return s;
    }

    bool is_idempotent() const {
      for (auto y : _map) {
        if (_map[y] != y) {
          return false;
        }
      }
      return true;
    }

    friend bool operator==(Transformation const&, Transformation const&) = default;
    friend auto operator<=>(Transformation const&, Transformation const&) = default;

   private:
    std::vector<Elem> _map;
  };

  inline Transformation compose(Transformation const& f, Transformation const& g) {
    if (f.window() != g.window()) {
      throw DomainError("compose: window mismatch (" + std::to_string(f.window())
                        + " vs " + std::to_string(g.window()) + ")");
    }
    std::vector<Elem> m(f.window());
    for (Elem x = 0; x < f.window(); ++x) {
      m[x] = g[f[x]];
    }
    return Transformation(std::move(m));
  }

  ////////////////////////////////////////////////////////////////////////
  // PartialPerm: an element of I_X for X = [0, n)
  ////////////////////////////////////////////////////////////////////////

  inline constexpr Elem undefined = std::numeric_limits<Elem>::max();

  class PartialPerm {
   public:
    PartialPerm() = default;

    // `images[x] == undefined` means x is not in the domain.
    explicit PartialPerm(std::vector<Elem> images) : _map(std::move(images)) {
      Subset seen(_map.size());
      for (auto y : _map) {
        if (y == undefined) {
          continue;
        }
        if (y >= _map.size()) {
          throw MalformedInput("partial permutation value " + std::to_string(y)
                               + " outside window " + std::to_string(_map.size()));
        }
        if (seen.test(y)) {
          throw MalformedInput("partial permutation is not injective at value "
                               + std::to_string(y));
        }
        seen.set(y);
      }
    }

    static PartialPerm from_pairs(std::size_t                               n,
                                  std::vector<std::pair<Elem, Elem>> const& graph) {
      std::vector<Elem> m(n, undefined);
      for (auto [x, y] : graph) {
        if (x >= n) {
          throw MalformedInput("partial permutation point outside window");
        }
        if (m[x] != undefined) {
          throw MalformedInput("partial permutation graph is not a function");
        }
        m[x] = y;
      }
      return PartialPerm(std::move(m));
    }

    static PartialPerm identity_on(std::size_t n, Subset const& A) {
      std::vector<Elem> m(n, undefined);
      for (auto x : elements_of(A)) {
        m[x] = x;
      }
      return PartialPerm(std::move(m));
    }

    static PartialPerm empty(std::size_t n) {
      return PartialPerm(std::vector<Elem>(n, undefined));
    }

    std::size_t window() const noexcept {
      return _map.size();
    }

    // `undefined` outside the domain.
    Elem operator[](Elem x) const {
      return _map.at(x);
    }

    bool defined(Elem x) const {
      return _map.at(x) != undefined;
    }

    std::vector<Elem> const& images() const noexcept {
      return _map;
    }

    Subset dom() const {
      Subset s(_map.size());
      for (Elem x = 0; x < _map.size(); ++x) {
        if (_map[x] != undefined) {
          s.set(x);
        }
      }
      return s;
    }

    Subset im() const {
      Subset s(_map.size());
      for (auto y : _map) {
        if (y != undefined) {
          s.set(y);
        }
      }
      return s;
    }

    std::size_t rank() const {
      return static_cast<std::size_t>(
          std::count_if(_map.begin(), _map.end(), [](Elem y) { return y != undefined; }));
    }

    std::vector<std::pair<Elem, Elem>> graph() const {
      std::vector<std::pair<Elem, Elem>> g;
      for (Elem x = 0; x < _map.size(); ++x) {
        if (_map[x] != undefined) {
          g.emplace_back(x, _map[x]);
        }
      }
      return g;
    }

    bool is_idempotent() const {
      for (Elem x = 0; x < _map.size(); ++x) {
        if (_map[x] != undefined && _map[x] != x) {
          return false;
        }
      }
      return true;
    }

    friend bool operator==(PartialPerm const&, PartialPerm const&) = default;
    friend auto operator<=>(PartialPerm const&, PartialPerm const&) = default;

   private:
    std::vector<Elem> _map;
  };

  // dom(fg) = {x in dom f : (x)f in dom g}
  inline PartialPerm compose(PartialPerm const& f, PartialPerm const& g) {
    if (f.window() != g.window()) {
      throw DomainError("compose: window mismatch (" + std::to_string(f.window())
                        + " vs " + std::to_string(g.window()) + ")");
    }
    std::vector<Elem> m(f.window(), undefined);
    for (Elem x = 0; x < f.window(); ++x) {
      if (f[x] != undefined) {
        m[x] = g[f[x]];
      }
    }
    return PartialPerm(std::move(m));
  }

  // Relational converse.
  inline PartialPerm invert(PartialPerm const& f) {
    std::vector<Elem> m(f.window(), undefined);
    for (Elem x = 0; x < f.window(); ++x) {
      if (f[x] != undefined) {
        m[f[x]] = x;
      }
    }
    return PartialPerm(std::move(m));
  }

  // Order used for partial-permutation carriers: the largest point mentioned,
  // then rank, then the graph. Elements mentioning only points below k form a
  // prefix.
  inline auto partial_perm_order_key(PartialPerm const& f) {
    auto const g   = f.graph();
    long long  mx  = -1;
    for (auto [x, y] : g) {
      mx = std::max<long long>(mx, std::max(x, y));
    }
    return std::make_tuple(mx, f.rank(), g);
  }

  inline std::string to_string(PartialPerm const& f) {
    std::string s = "{";
    bool        first = true;
    for (auto [x, y] : f.graph()) {
      if (!first) {
        s += ",";
      }
      first = false;
      s += "(" + std::to_string(x) + "," + std::to_string(y) + ")";
    }
    return s + "}";
  }

  inline std::string to_string(Transformation const& f) {
    std::string s = "[";
    for (std::size_t i = 0; i < f.window(); ++i) {
      s += (i ? "," : "") + std::to_string(f[static_cast<Elem>(i)]);
    }
    return s + "]";
  }

  // All partial permutations of [0, n) of rank at most max_rank, sorted by
  // partial_perm_order_key.
  inline std::vector<PartialPerm> all_partial_perms(std::size_t n, std::size_t max_rank) {
    std::vector<PartialPerm> out;
    std::vector<Elem>        m(n, undefined);
    Subset                   used(n);
    auto rec = [&](auto&& self, Elem x, std::size_t rank) -> void {
      if (x == n) {
        out.emplace_back(m);
        return;
      }
      m[x] = undefined;
      self(self, x + 1, rank);
      if (rank == max_rank) {
        return;
      }
      for (Elem y = 0; y < n; ++y) {
        if (!used.test(y)) {
          used.set(y);
          m[x] = y;
          self(self, x + 1, rank + 1);
          m[x] = undefined;
          used.reset(y);
        }
      }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) {
      return partial_perm_order_key(a) < partial_perm_order_key(b);
    });
    return out;
  }

  // All n^n transformations of [0, n), lexicographic.
  inline std::vector<Transformation> all_transformations(std::size_t n) {
    std::vector<Transformation> out;
    std::vector<Elem>           m(n, 0);
    while (true) {
      out.emplace_back(m);
      std::size_t i = n;
      while (i > 0) {
        --i;
        if (++m[i] < n) {
          break;
        }
        m[i] = 0;
        if (i == 0) {
          return out;
        }
      }
      if (n == 0) {
        return out;
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // LazyMap: window-evaluable elements of N^N and I_N
  ////////////////////////////////////////////////////////////////////////

  // Fixed pairing N x N -> N: (i, j) -> 2^i (2j + 1) - 1. Block A_i is the
  // image of {i} x N; the blocks partition N into infinite sets.
  inline Point pair_index(Point i, Point j) {
    if (i >= 63 || j > (std::numeric_limits<Point>::max() >> (i + 2))) {
      throw EvaluationError("pairing overflow at (" + std::to_string(i) + ", "
                            + std::to_string(j) + ")");
    }
    return (Point(1) << i) * (2 * j + 1) - 1;
  }

  inline std::pair<Point, Point> unpair_index(Point x) {
    Point v = x + 1;
    Point i = 0;
    while ((v & 1) == 0) {
      v >>= 1;
      ++i;
    }
    return {i, (v - 1) / 2};
  }

  struct LazyNode;

  // A closed combinator AST. Values are immutable and share structure.
  class LazyMap {
   public:
    LazyMap();  // identity
    explicit LazyMap(std::shared_ptr<LazyNode const> node) : _node(std::move(node)) {}

    static LazyMap identity();
    static LazyMap constant(Point c);
    // `fallback == nullopt` means undefined off the table; entries mapping to
    // nullopt are undefined points.
    static LazyMap table(std::map<Point, std::optional<Point>> entries,
                         std::optional<LazyMap>                fallback);
    // x -> rules[x % modulus].first * x + rules[x % modulus].second
    static LazyMap affine(Point                                          modulus,
                          std::vector<std::pair<std::int64_t, std::int64_t>> rules);
    // Acts as blocks[i] (on the second coordinate) inside block A_i; identity on
    // blocks past the list.
    static LazyMap pair_block(std::vector<LazyMap> blocks);
    // (x)(compose(f, g)) = ((x)f)g
    static LazyMap compose(LazyMap f, LazyMap g);

    std::optional<Point> operator()(Point x) const;

    LazyNode const& node() const noexcept {
      return *_node;
    }

   private:
    std::shared_ptr<LazyNode const> _node;
  };

  struct IdentityNode {};

  struct ConstNode {
    Point value;
  };

  struct TableNode {
    std::map<Point, std::optional<Point>> entries;
    std::optional<LazyMap>                fallback;
  };

  struct AffineNode {
    Point                                              modulus;
    std::vector<std::pair<std::int64_t, std::int64_t>> rules;
  };

  struct PairBlockNode {
    std::vector<LazyMap> blocks;
  };

  struct ComposeNode {
    LazyMap first;
    LazyMap then;
  };

  struct LazyNode {
    std::variant<IdentityNode, ConstNode, TableNode, AffineNode, PairBlockNode, ComposeNode>
        v;
  };

  inline LazyMap::LazyMap()
      : _node(std::make_shared<LazyNode const>(LazyNode{IdentityNode{}})) {}

  inline LazyMap LazyMap::identity() {
    return LazyMap();
  }

  inline LazyMap LazyMap::constant(Point c) {
    return LazyMap(std::make_shared<LazyNode const>(LazyNode{ConstNode{c}}));
  }

  inline LazyMap LazyMap::table(std::map<Point, std::optional<Point>> entries,
                                std::optional<LazyMap>                fallback) {
    return LazyMap(std::make_shared<LazyNode const>(
        LazyNode{TableNode{std::move(entries), std::move(fallback)}}));
  }

  inline LazyMap LazyMap::affine(Point                                          modulus,
                                 std::vector<std::pair<std::int64_t, std::int64_t>> rules) {
    if (modulus == 0 || rules.size() != modulus) {
      throw MalformedInput("affine map needs one rule per residue class");
    }
    return LazyMap(std::make_shared<LazyNode const>(
        LazyNode{AffineNode{modulus, std::move(rules)}}));
  }

  inline LazyMap LazyMap::pair_block(std::vector<LazyMap> blocks) {
    return LazyMap(
        std::make_shared<LazyNode const>(LazyNode{PairBlockNode{std::move(blocks)}}));
  }

  inline LazyMap LazyMap::compose(LazyMap f, LazyMap g) {
    return LazyMap(std::make_shared<LazyNode const>(
        LazyNode{ComposeNode{std::move(f), std::move(g)}}));
  }

  inline std::optional<Point> LazyMap::operator()(Point x) const {
    return std::visit(
        [x](auto const& n) -> std::optional<Point> {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, IdentityNode>) {
            return x;
          } else if constexpr (std::is_same_v<T, ConstNode>) {
            return n.value;
          } else if constexpr (std::is_same_v<T, TableNode>) {
            if (auto it = n.entries.find(x); it != n.entries.end()) {
              return it->second;
            }
            if (n.fallback) {
              return (*n.fallback)(x);
            }
            return std::nullopt;
          } else if constexpr (std::is_same_v<T, AffineNode>) {
            auto const [mul, add] = n.rules[x % n.modulus];
            auto const big        = static_cast<__int128>(mul) * static_cast<__int128>(x)
                             + static_cast<__int128>(add);
            if (big < 0 || big > static_cast<__int128>(std::numeric_limits<Point>::max())) {
              throw EvaluationError("affine rule leaves N at " + std::to_string(x));
            }
            return static_cast<Point>(big);
          } else if constexpr (std::is_same_v<T, PairBlockNode>) {
            auto const [i, j] = unpair_index(x);
            if (i >= n.blocks.size()) {
              return x;
            }
            auto const y = n.blocks[i](j);
            if (!y) {
              return std::nullopt;
            }
            return pair_index(i, *y);
          } else {
            auto const y = n.first(x);
            if (!y) {
              return std::nullopt;
            }
            return n.then(*y);
          }
        },
        _node->v);
  }

  // The largest point at which a map's definition is not uniform: table keys,
  // affine moduli, and for pair blocks the block structure of inner maps.
  // Used to pick verification windows.
  inline Point mentioned_max(LazyMap const& m) {
    return std::visit(
        [](auto const& n) -> Point {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, IdentityNode>) {
            return 0;
          } else if constexpr (std::is_same_v<T, ConstNode>) {
            return n.value;
          } else if constexpr (std::is_same_v<T, TableNode>) {
            Point mx = n.fallback ? mentioned_max(*n.fallback) : 0;
            for (auto const& [k, v] : n.entries) {
              mx = std::max(mx, k);
              if (v) {
                mx = std::max(mx, *v);
              }
            }
            return mx;
          } else if constexpr (std::is_same_v<T, AffineNode>) {
            Point mx = n.modulus;
            for (auto [a, b] : n.rules) {
              mx = std::max<Point>(mx, b < 0 ? Point(-b) : Point(b));
            }
            return mx;
          } else if constexpr (std::is_same_v<T, PairBlockNode>) {
            Point mx = 0;
            for (std::size_t i = 0; i < n.blocks.size(); ++i) {
              Point inner = mentioned_max(n.blocks[i]);
              mx          = std::max(mx, pair_index(i, inner));
            }
            return mx;
          } else {
            return std::max(mentioned_max(n.first), mentioned_max(n.then));
          }
        },
        m.node().v);
  }

  inline std::optional<Point> lazy_eval(LazyMap const& m, Point x) {
    return m(x);
  }

  // The restriction of a total map to [0, n). Throws EvaluationError at an
  // undefined point and WindowEscape at a point mapped outside the window.
  inline Transformation window_restrict(LazyMap const& m, std::size_t n) {
    std::vector<Elem> out(n);
    for (Point x = 0; x < n; ++x) {
      auto y = m(x);
      if (!y) {
        throw EvaluationError("map is undefined at " + std::to_string(x));
      }
      if (*y >= n) {
        throw WindowEscape("point " + std::to_string(x) + " escapes window "
                           + std::to_string(n) + " (maps to " + std::to_string(*y)
                           + ")");
      }
      out[x] = static_cast<Elem>(*y);
    }
    return Transformation(std::move(out));
  }

  // The restriction of a partial injective map to [0, n).
  inline PartialPerm window_restrict_partial(LazyMap const& m, std::size_t n) {
    std::vector<Elem> out(n, undefined);
    for (Point x = 0; x < n; ++x) {
      auto y = m(x);
      if (!y) {
        continue;
      }
      if (*y >= n) {
        throw WindowEscape("point " + std::to_string(x) + " escapes window "
                           + std::to_string(n) + " (maps to " + std::to_string(*y)
                           + ")");
      }
      out[x] = static_cast<Elem>(*y);
    }
    return PartialPerm(std::move(out));
  }

  inline bool agree_on_window(LazyMap const& f, LazyMap const& g, std::size_t n) {
    for (Point x = 0; x < n; ++x) {
      if (f(x) != g(x)) {
        return false;
      }
    }
    return true;
  }

  // LazyMap views of finite-window elements, extended by the identity past the
  // window (a window-closed map stays a homomorphic image this way).
  inline LazyMap lazy_from(Transformation const& t) {
    std::map<Point, std::optional<Point>> e;
    for (Elem x = 0; x < t.window(); ++x) {
      if (t[x] != x) {
        e[x] = t[x];
      }
    }
    if (e.empty()) {
      return LazyMap::identity();
    }
    return LazyMap::table(std::move(e), LazyMap::identity());
  }

  inline LazyMap lazy_from(PartialPerm const& f) {
    std::map<Point, std::optional<Point>> e;
    for (Elem x = 0; x < f.window(); ++x) {
      if (f[x] == undefined) {
        e[x] = std::nullopt;
      } else if (f[x] != x) {
        e[x] = f[x];
      }
    }
    if (e.empty()) {
      return LazyMap::identity();
    }
    return LazyMap::table(std::move(e), LazyMap::identity());
  }

  ////////////////////////////////////////////////////////////////////////
  // Basic open sets of N^N and I_N
  ////////////////////////////////////////////////////////////////////////

  enum class Space { NN, IN };

  // U_{x,y} = {h : (x,y) in h}; W_x = {h : x not in dom h};
  // W^{-1}_x = {h : x not in im h}.
  struct OpenAtom {
    enum class Kind { Pair, NotInDomain, NotInImage } kind;
    Point x;
    Point y = 0;

    friend bool operator==(OpenAtom const&, OpenAtom const&) = default;
  };

  // For NN, `atoms` holds only Pair atoms and denotes {g : f subset g} for the
  // finite function f they list. For IN it is a finite conjunction of atoms.
  struct BasicOpen {
    Space                 space = Space::NN;
    std::vector<OpenAtom> atoms;

    static BasicOpen nn(std::vector<std::pair<Point, Point>> const& f) {
      BasicOpen b{Space::NN, {}};
      for (auto [x, y] : f) {
        b.atoms.push_back({OpenAtom::Kind::Pair, x, y});
      }
      return b;
    }

    static BasicOpen u(Point x, Point y) {
      return {Space::IN, {{OpenAtom::Kind::Pair, x, y}}};
    }

    static BasicOpen w(Point x) {
      return {Space::IN, {{OpenAtom::Kind::NotInDomain, x, 0}}};
    }

    static BasicOpen w_inv(Point x) {
      return {Space::IN, {{OpenAtom::Kind::NotInImage, x, 0}}};
    }
  };

  namespace detail {
    // `eval` is only called on [0, window). With `undefined_beyond` the element
    // is a finite partial map, undefined past its window, so nothing throws.
    template <typename Eval>
    bool basic_open_member_impl(Eval&&           eval,
                                std::size_t      window,
                                BasicOpen const& b,
                                bool             undefined_beyond = false) {
      for (auto const& a : b.atoms) {
        if (undefined_beyond && a.kind != OpenAtom::Kind::NotInImage && a.x >= window) {
          if (a.kind == OpenAtom::Kind::Pair) {
            return false;
          }
          continue;
        }
        switch (a.kind) {
          case OpenAtom::Kind::Pair: {
            if (a.x >= window) {
              throw EvaluationError("element not evaluable at " + std::to_string(a.x));
            }
            if (eval(a.x) != std::optional<Point>(a.y)) {
              return false;
            }
            break;
          }
          case OpenAtom::Kind::NotInDomain: {
            if (a.x >= window) {
              throw EvaluationError("element not evaluable at " + std::to_string(a.x));
            }
            if (eval(a.x).has_value()) {
              return false;
            }
            break;
          }
          case OpenAtom::Kind::NotInImage: {
            for (Point x = 0; x < window; ++x) {
              if (eval(x) == std::optional<Point>(a.x)) {
                return false;
              }
            }
            break;
          }
        }
      }
      return true;
    }
  }  // namespace detail

  inline bool basic_open_member(Transformation const& h, BasicOpen const& b) {
    return detail::basic_open_member_impl(
        [&](Point x) { return std::optional<Point>(h[static_cast<Elem>(x)]); },
        h.window(),
        b);
  }

  inline bool basic_open_member(PartialPerm const& h, BasicOpen const& b) {
    return detail::basic_open_member_impl(
        [&](Point x) -> std::optional<Point> {
          auto y = h[static_cast<Elem>(x)];
          if (y == undefined) {
            return std::nullopt;
          }
          return y;
        },
        h.window(),
        b,
        true);
  }

  // A LazyMap is evaluated on [0, window); image atoms scan that window.
  inline bool basic_open_member(LazyMap const& h, std::size_t window, BasicOpen const& b) {
    return detail::basic_open_member_impl([&](Point x) { return h(x); }, window, b);
  }

}  // namespace semitop
