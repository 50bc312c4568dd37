#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "semitop/error.hpp"

namespace semitop {

  // Elements of a finite semigroup are dense 0-based indices.
  using Elem = std::uint32_t;

  // Subsets of a carrier.
  using Subset = boost::dynamic_bitset<>;

  inline Subset make_subset(std::size_t n, std::initializer_list<Elem> elems) {
    Subset s(n);
    for (Elem e : elems) {
      s.set(e);
    }
    return s;
  }

  inline std::vector<Elem> elements_of(Subset const& s) {
    std::vector<Elem> out;
    for (auto i = s.find_first(); i != Subset::npos; i = s.find_next(i)) {
      out.push_back(static_cast<Elem>(i));
    }
    return out;
  }

  struct AssociativityResult {
    bool                             associative = true;
    std::optional<std::array<Elem, 3>> violation;  // first (a,b,c), lexicographic
  };

  // Checks (ab)c == a(bc) for every triple. Throws MalformedInput if the table
  // has the wrong size or an entry outside [0, n).
  inline AssociativityResult check_associativity(std::size_t             n,
                                                 std::span<Elem const> table) {
    if (table.size() != n * n) {
      throw MalformedInput("table has " + std::to_string(table.size())
                           + " entries, expected " + std::to_string(n * n));
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (table[i] >= n) {
        throw MalformedInput("table entry (" + std::to_string(i / n) + ", "
                             + std::to_string(i % n) + ") = "
                             + std::to_string(table[i]) + " is out of range");
      }
    }
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        Elem const ab = table[a * n + b];
        for (Elem c = 0; c < n; ++c) {
          if (table[ab * n + c] != table[a * n + table[b * n + c]]) {
            return {false, std::array<Elem, 3>{a, b, c}};
          }
        }
      }
    }
    return {};
  }

  // A finite semigroup given by its multiplication table. Row = left factor.
  // Immutable after construction; the constructor rejects malformed or
  // non-associative tables.
  class FinSemigroup {
   public:
    FinSemigroup() = default;

    FinSemigroup(std::size_t              n,
                 std::vector<Elem>        table,
                 std::vector<std::string> labels   = {},
                 std::optional<Elem>      identity = std::nullopt,
                 std::string              name     = {})
        : _n(n),
          _table(std::move(table)),
          _labels(std::move(labels)),
          _identity(identity),
          _name(std::move(name)) {
      if (n == 0) {
        throw MalformedInput("a semigroup must have at least one element");
      }
      auto const res = check_associativity(_n, _table);
      if (!res.associative) {
        auto const& v = *res.violation;
        throw MalformedInput("table is not associative at (" + std::to_string(v[0])
                             + ", " + std::to_string(v[1]) + ", "
                             + std::to_string(v[2]) + ")");
      }
      if (_labels.empty()) {
        for (std::size_t i = 0; i < _n; ++i) {
          _labels.push_back(std::to_string(i));
        }
      } else if (_labels.size() != _n) {
        throw MalformedInput("expected " + std::to_string(_n) + " labels, got "
                             + std::to_string(_labels.size()));
      }
      if (_identity) {
        if (*_identity >= _n || !is_identity(*_identity)) {
          throw MalformedInput("declared identity "
                               + std::to_string(*_identity)
                               + " is not a two-sided identity");
        }
      }
    }

    static FinSemigroup from_rows(std::vector<std::vector<Elem>> const& rows,
                                  std::vector<std::string> labels   = {},
                                  std::optional<Elem>      identity = std::nullopt,
                                  std::string              name     = {}) {
      std::vector<Elem> table;
      for (auto const& row : rows) {
        if (row.size() != rows.size()) {
          throw MalformedInput("table is not square");
        }
        table.insert(table.end(), row.begin(), row.end());
      }
      return FinSemigroup(
          rows.size(), std::move(table), std::move(labels), identity, std::move(name));
    }

    std::size_t size() const noexcept {
      return _n;
    }

    Elem mul(Elem a, Elem b) const noexcept {
      return _table[a * _n + b];
    }

    std::vector<Elem> const& table() const noexcept {
      return _table;
    }

    std::vector<std::string> const& labels() const noexcept {
      return _labels;
    }

    std::string const& label(Elem a) const {
      return _labels.at(a);
    }

    std::optional<Elem> find_label(std::string const& l) const {
      for (std::size_t i = 0; i < _n; ++i) {
        if (_labels[i] == l) {
          return static_cast<Elem>(i);
        }
      }
      return std::nullopt;
    }

    // The declared identity, if any. Never inferred.
    std::optional<Elem> identity() const noexcept {
      return _identity;
    }

    std::string const& name() const noexcept {
      return _name;
    }

    bool is_identity(Elem e) const noexcept {
      for (Elem x = 0; x < _n; ++x) {
        if (mul(e, x) != x || mul(x, e) != x) {
          return false;
        }
      }
      return true;
    }

    bool is_commutative() const noexcept {
      for (Elem a = 0; a < _n; ++a) {
        for (Elem b = a + 1; b < _n; ++b) {
          if (mul(a, b) != mul(b, a)) {
            return false;
          }
        }
      }
      return true;
    }

    bool is_idempotent(Elem e) const noexcept {
      return mul(e, e) == e;
    }

    // Same carrier, table and labels with a declared identity.
    FinSemigroup with_identity(Elem e) const {
      return FinSemigroup(_n, _table, _labels, e, _name);
    }

    FinSemigroup renamed(std::string name) const {
      FinSemigroup out = *this;
      out._name        = std::move(name);
      return out;
    }

    // FNV-1a over the size and table; used to detect congruences on different
    // bases.
    std::uint64_t fingerprint() const noexcept {
      std::uint64_t h   = 1469598103934665603ULL;
      auto          mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
          h ^= (v >> (8 * i)) & 0xFF;
          h *= 1099511628211ULL;
        }
      };
      mix(_n);
      for (Elem e : _table) {
        mix(e);
      }
      return h;
    }

    friend bool operator==(FinSemigroup const& a, FinSemigroup const& b) {
      return a._n == b._n && a._table == b._table;
    }

   private:
    std::size_t              _n = 0;
    std::vector<Elem>        _table;
    std::vector<std::string> _labels;
    std::optional<Elem>      _identity;
    std::string              _name;
  };

  ////////////////////////////////////////////////////////////////////////
  // Elementary structure
  ////////////////////////////////////////////////////////////////////////

  // E(S) = {e : ee = e}.
  inline Subset idempotents(FinSemigroup const& S) {
    Subset out(S.size());
    for (Elem e = 0; e < S.size(); ++e) {
      if (S.is_idempotent(e)) {
        out.set(e);
      }
    }
    return out;
  }

  inline bool is_semilattice(FinSemigroup const& S) {
    return S.is_commutative() && idempotents(S).all();
  }

  // e <= f iff ef = e, for idempotents e, f.
  inline bool natural_order(FinSemigroup const& S, Elem e, Elem f) {
    if (!S.is_idempotent(e) || !S.is_idempotent(f)) {
      throw DomainError("natural_order: arguments must be idempotent");
    }
    return S.mul(e, f) == e;
  }

  // S^0: a new element, labelled "0" (or "0'" if taken), that absorbs
  // everything. The declared identity, if any, is kept.
  inline FinSemigroup adjoin_zero(FinSemigroup const& S) {
    auto const        n = S.size();
    Elem const        z = static_cast<Elem>(n);
    std::vector<Elem> table((n + 1) * (n + 1), z);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        table[a * (n + 1) + b] = S.mul(a, b);
      }
    }
    auto        labels = S.labels();
    std::string zl     = "0";
    while (S.find_label(zl)) {
      zl += "'";
    }
    labels.push_back(zl);
    return FinSemigroup(
        n + 1, std::move(table), std::move(labels), S.identity(), S.name() + "^0");
  }

  // S^1: a new element, labelled "1" (or "1'" if taken), declared as identity.
  inline FinSemigroup adjoin_identity(FinSemigroup const& S) {
    auto const        n   = S.size();
    Elem const        one = static_cast<Elem>(n);
    std::vector<Elem> table((n + 1) * (n + 1));
    for (Elem a = 0; a <= n; ++a) {
      for (Elem b = 0; b <= n; ++b) {
        Elem v;
        if (a == one) {
          v = b;
        } else if (b == one) {
          v = a;
        } else {
          v = S.mul(a, b);
        }
        table[a * (n + 1) + b] = v;
      }
    }
    auto        labels = S.labels();
    std::string il     = "1";
    while (S.find_label(il)) {
      il += "'";
    }
    labels.push_back(il);
    return FinSemigroup(
        n + 1, std::move(table), std::move(labels), one, S.name() + "^1");
  }

  // Direct product; element (a, b) has index a * |T| + b.
  inline FinSemigroup direct_product(FinSemigroup const& S, FinSemigroup const& T) {
    auto const        n = S.size() * T.size();
    std::vector<Elem> table(n * n);
    std::vector<std::string> labels;
    labels.reserve(n);
    for (Elem a = 0; a < S.size(); ++a) {
      for (Elem b = 0; b < T.size(); ++b) {
        labels.push_back("(" + S.label(a) + "," + T.label(b) + ")");
      }
    }
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        Elem const a = S.mul(x / T.size(), y / T.size());
        Elem const b = T.mul(x % T.size(), y % T.size());
        table[x * n + y] = static_cast<Elem>(a * T.size() + b);
      }
    }
    std::optional<Elem> id;
    if (S.identity() && T.identity()) {
      id = static_cast<Elem>(*S.identity() * T.size() + *T.identity());
    }
    return FinSemigroup(
        n, std::move(table), std::move(labels), id, S.name() + "x" + T.name());
  }

  // Right ideal generated by a: aS.
  inline Subset right_translate_image(FinSemigroup const& S, Elem a) {
    Subset out(S.size());
    for (Elem s = 0; s < S.size(); ++s) {
      out.set(S.mul(a, s));
    }
    return out;
  }

}  // namespace semitop
