#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "group_table.hpp"

namespace wsu {

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

/// A bijection of {0..degree-1}; images[i] is the image of point i.
/// Products apply the left factor first: (p*q)(i) = q(p(i)).
struct Permutation {
  std::vector<std::uint32_t> images;

  static Permutation identity(std::size_t degree) {
    Permutation p;
    p.images.resize(degree);
    std::iota(p.images.begin(), p.images.end(), 0U);
    return p;
  }

  std::size_t degree() const noexcept { return images.size(); }

  bool is_bijection() const {
    std::vector<bool> hit(images.size(), false);
    for (auto x : images) {
      if (x >= images.size() || hit[x]) return false;
      hit[x] = true;
    }
    return true;
  }

  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    Permutation r;
    r.images.resize(p.images.size());
    for (std::size_t i = 0; i < p.images.size(); ++i) r.images[i] = q.images[p.images[i]];
    return r;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  /// Cycle notation, fixed points omitted; the identity prints as "()".
  std::string to_cycles() const {
    std::string out;
    std::vector<bool> done(images.size(), false);
    for (std::size_t s = 0; s < images.size(); ++s) {
      if (done[s] || images[s] == s) continue;
      out += '(';
      std::size_t x = s;
      bool first = true;
      while (!done[x]) {
        done[x] = true;
        if (!first) out += ' ';
        out += std::to_string(x);
        first = false;
        x = images[x];
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  /// Parses cycle notation such as "(0 1)(2 3 4)" on `degree` points.
  static Permutation from_cycles(std::size_t degree, std::string_view text) {
    Permutation p = identity(degree);
    std::size_t i = 0;
    auto fail = [&](const std::string& why) { throw GroupError(ErrorCode::ParseError, "permutation '" + std::string(text) + "': " + why); };
    while (i < text.size()) {
      if (text[i] == ' ' || text[i] == '\t' || text[i] == '\r') {
        ++i;
        continue;
      }
      if (text[i] != '(') fail("expected '('");
      ++i;
      std::vector<std::uint32_t> cycle;
      while (true) {
        while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
        if (i >= text.size()) fail("unterminated cycle");
        if (text[i] == ')') {
          ++i;
          break;
        }
        if (text[i] < '0' || text[i] > '9') fail("expected a point");
        std::uint64_t v = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') v = v * 10 + static_cast<std::uint64_t>(text[i++] - '0');
        if (v >= degree) fail("point " + std::to_string(v) + " out of range");
        cycle.push_back(static_cast<std::uint32_t>(v));
      }
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        for (std::size_t l = k + 1; l < cycle.size(); ++l)
          if (cycle[k] == cycle[l]) fail("repeated point in cycle");
      }
      // Cycles compose left to right.
      Permutation c = identity(degree);
      for (std::size_t k = 0; k < cycle.size(); ++k) c.images[cycle[k]] = cycle[(k + 1) % cycle.size()];
      p = p * c;
    }
    return p;
  }
};

// ---------------------------------------------------------------------------
// Raw import
// ---------------------------------------------------------------------------

/// Validates an n x n multiplication table: Latin square, two-sided
/// identity, and the full associativity check.
inline GroupTable from_cayley_table(std::size_t n, const std::vector<std::vector<Element>>& rows) {
  if (n == 0) throw GroupError(ErrorCode::InvalidParameter, "order must be positive");
  if (rows.size() != n) throw GroupError(ErrorCode::InvalidParameter, "expected " + std::to_string(n) + " rows");
  std::vector<Element> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw GroupError(ErrorCode::InvalidParameter, "row " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j] >= n)
        throw GroupError(ErrorCode::InvalidParameter, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
      table[i * n + j] = rows[i][j];
    }
  }
  std::vector<std::size_t> seen(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = table[i * n + j];
      if (seen[v] != n)
        throw GroupError(ErrorCode::NotLatinSquare, "row " + std::to_string(i) + " repeats " + std::to_string(v) + " at column " + std::to_string(j));
      seen[v] = j;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(seen.begin(), seen.end(), n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = table[i * n + j];
      if (seen[v] != n)
        throw GroupError(ErrorCode::NotLatinSquare, "column " + std::to_string(j) + " repeats " + std::to_string(v) + " at row " + std::to_string(i));
      seen[v] = i;
    }
  }
  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = table[e * n + x] == x && table[x * n + e] == x;
    if (ok) identity = e;
  }
  if (!identity) throw GroupError(ErrorCode::NoIdentity, "no two-sided identity in table of order " + std::to_string(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto ab = table[a * n + b];
      for (std::size_t c = 0; c < n; ++c) {
        if (table[ab * n + c] != table[a * n + table[b * n + c]])
          throw GroupError(ErrorCode::NotAssociative,
                           "(" + std::to_string(a) + "*" + std::to_string(b) + ")*" + std::to_string(c) + " != " +
                               std::to_string(a) + "*(" + std::to_string(b) + "*" + std::to_string(c) + ")");
      }
    }
  return GroupTable::from_trusted(n, std::move(table));
}

// ---------------------------------------------------------------------------
// Permutation groups
// ---------------------------------------------------------------------------

namespace detail {

struct PermutationHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

/// Enumerates the closure of `gens` breadth-first from the identity, in the
/// order the generators are listed. Element 0 is the identity.
struct PermutationClosure {
  std::vector<Permutation> elements;
  GroupTable table;
};

inline PermutationClosure close_permutations(std::size_t degree, const std::vector<Permutation>& gens, std::size_t cap) {
  for (const auto& g : gens)
    if (g.degree() != degree || !g.is_bijection())
      throw GroupError(ErrorCode::InvalidParameter, "generator " + g.to_cycles() + " is not a permutation of degree " + std::to_string(degree));
  std::vector<Permutation> elems{Permutation::identity(degree)};
  std::unordered_map<std::vector<std::uint32_t>, Element, PermutationHash> index;
  index.emplace(elems[0].images, 0);
  std::vector<std::vector<Element>> rmul(gens.size());
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Permutation y = elems[head] * gens[k];
      auto [it, inserted] = index.emplace(y.images, static_cast<Element>(elems.size()));
      if (inserted) {
        if (elems.size() >= cap) throw GroupError(ErrorCode::OrderCapExceeded, "permutation closure exceeds " + std::to_string(cap));
        elems.push_back(std::move(y));
      }
      rmul[k].push_back(it->second);
    }
  }
  const std::size_t n = elems.size();
  // Every element is reached as parent * gen; reuse that to fill the table
  // with lookups instead of permutation products.
  std::vector<Element> parent(n, 0), via(n, 0);
  std::vector<bool> reached(n, false);
  reached[0] = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Element y = rmul[k][x];
      if (!reached[y]) {
        reached[y] = true;
        parent[y] = static_cast<Element>(x);
        via[y] = static_cast<Element>(k);
      }
    }
  std::vector<Element> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    table[i * n] = static_cast<Element>(i);
    // BFS order guarantees parents precede children.
    for (std::size_t j = 1; j < n; ++j) table[i * n + j] = rmul[via[j]][table[i * n + parent[j]]];
  }
  return PermutationClosure{std::move(elems), GroupTable::from_trusted(n, std::move(table))};
}

}  // namespace detail

/// The group generated by permutations of a common degree.
inline GroupTable from_permutation_generators(std::size_t degree, const std::vector<Permutation>& gens,
                                              std::size_t cap = order_cap().load()) {
  return detail::close_permutations(degree, gens, cap).table;
}

// ---------------------------------------------------------------------------
// Named groups
// ---------------------------------------------------------------------------

inline GroupTable cyclic(std::size_t m) {
  if (m == 0) throw GroupError(ErrorCode::InvalidParameter, "cyclic order must be positive");
  if (m > order_cap()) throw GroupError(ErrorCode::OrderCapExceeded, "cyclic " + std::to_string(m));
  std::vector<Element> t(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) t[i * m + j] = static_cast<Element>((i + j) % m);
  return GroupTable::from_trusted(m, std::move(t));
}

/// E_{p^t}: vectors over Z_p, indexed by their base-p digits.
inline GroupTable elementary_abelian(std::uint32_t p, std::uint32_t t) {
  if (!is_prime(p)) throw GroupError(ErrorCode::InvalidParameter, "elementary abelian needs a prime, got " + std::to_string(p));
  if (t == 0) throw GroupError(ErrorCode::InvalidParameter, "elementary abelian rank must be positive");
  std::size_t n = 1;
  for (std::uint32_t i = 0; i < t; ++i) {
    n *= p;
    if (n > order_cap()) throw GroupError(ErrorCode::OrderCapExceeded, "elementary abelian " + std::to_string(p) + "^" + std::to_string(t));
  }
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t x = a, y = b, r = 0, place = 1;
      for (std::uint32_t i = 0; i < t; ++i) {
        r += ((x % p + y % p) % p) * place;
        x /= p;
        y /= p;
        place *= p;
      }
      table[a * n + b] = static_cast<Element>(r);
    }
  return GroupTable::from_trusted(n, std::move(table));
}

inline GroupTable symmetric(std::size_t n) {
  if (n == 0) throw GroupError(ErrorCode::InvalidParameter, "symmetric degree must be positive");
  std::vector<Permutation> gens;
  if (n >= 2) {
    Permutation swap = Permutation::identity(n);
    std::swap(swap.images[0], swap.images[1]);
    gens.push_back(swap);
  }
  if (n >= 3) {
    Permutation cycle = Permutation::identity(n);
    for (std::size_t i = 0; i < n; ++i) cycle.images[i] = static_cast<std::uint32_t>((i + 1) % n);
    gens.push_back(cycle);
  }
  return from_permutation_generators(n, gens);
}

inline GroupTable alternating(std::size_t n) {
  if (n == 0) throw GroupError(ErrorCode::InvalidParameter, "alternating degree must be positive");
  std::vector<Permutation> gens;
  for (std::size_t i = 2; i < n; ++i) {
    Permutation c = Permutation::identity(n);
    c.images[0] = 1;
    c.images[1] = static_cast<std::uint32_t>(i);
    c.images[i] = 0;
    gens.push_back(c);
  }
  return from_permutation_generators(n, gens);
}

// ---------------------------------------------------------------------------
// Products
// ---------------------------------------------------------------------------

/// G x H with (g,h) stored at index g*|H| + h.
inline GroupTable direct_product(const GroupTable& g, const GroupTable& h) {
  const std::size_t a = g.order(), b = h.order(), n = a * b;
  if (n > order_cap()) throw GroupError(ErrorCode::OrderCapExceeded, "direct product of order " + std::to_string(n));
  std::vector<Element> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      t[x * n + y] = static_cast<Element>(g.mul(static_cast<Element>(x / b), static_cast<Element>(y / b)) * b +
                                          h.mul(static_cast<Element>(x % b), static_cast<Element>(y % b)));
  return GroupTable::from_trusted(n, std::move(t));
}

/// A homomorphism from `acting` into Aut(target): automorphism_of[h][x] is
/// the image of x under the automorphism assigned to h.
struct ActionSpec {
  GroupTable acting;
  GroupTable target;
  std::vector<std::vector<Element>> automorphism_of;

  static ActionSpec trivial(const GroupTable& target, const GroupTable& acting) {
    std::vector<Element> id(target.order());
    std::iota(id.begin(), id.end(), Element{0});
    return ActionSpec{acting, target, std::vector<std::vector<Element>>(acting.order(), id)};
  }

  /// Throws NotAutomorphism / NotHomomorphism on the first violation.
  void validate() const {
    const std::size_t n = target.order();
    if (automorphism_of.size() != acting.order())
      throw GroupError(ErrorCode::NotHomomorphism, "action must assign an automorphism to every acting element");
    for (std::size_t h = 0; h < automorphism_of.size(); ++h) {
      const auto& f = automorphism_of[h];
      std::vector<bool> hit(n, false);
      if (f.size() != n) throw GroupError(ErrorCode::NotAutomorphism, "map for element " + std::to_string(h) + " has wrong size");
      for (auto v : f) {
        if (v >= n || hit[v]) throw GroupError(ErrorCode::NotAutomorphism, "map for element " + std::to_string(h) + " is not a bijection");
        hit[v] = true;
      }
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
          if (f[target.mul(x, y)] != target.mul(f[x], f[y]))
            throw GroupError(ErrorCode::NotAutomorphism, "map for element " + std::to_string(h) + " breaks product " +
                                                              std::to_string(x) + "*" + std::to_string(y));
    }
    for (Element a = 0; a < acting.order(); ++a)
      for (Element b = 0; b < acting.order(); ++b) {
        const auto& fab = automorphism_of[acting.mul(a, b)];
        const auto& fa = automorphism_of[a];
        const auto& fb = automorphism_of[b];
        for (Element x = 0; x < n; ++x)
          if (fab[x] != fa[fb[x]])
            throw GroupError(ErrorCode::NotHomomorphism, "action of " + std::to_string(a) + "*" + std::to_string(b) +
                                                              " differs from the composite action");
      }
  }
};

/// N x| H with (n,h)(n',h') = (n * h(n'), h h'), stored at index n*|H| + h.
/// A trivial action gives exactly direct_product(N, H).
inline GroupTable semidirect_product(const GroupTable& n_group, const GroupTable& h_group, const ActionSpec& action) {
  if (action.target.order() != n_group.order() || action.acting.order() != h_group.order() ||
      !(action.target == n_group) || !(action.acting == h_group))
    throw GroupError(ErrorCode::InvalidParameter, "action does not match the factors");
  action.validate();
  const std::size_t a = n_group.order(), b = h_group.order(), n = a * b;
  if (n > order_cap()) throw GroupError(ErrorCode::OrderCapExceeded, "semidirect product of order " + std::to_string(n));
  std::vector<Element> t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto n1 = static_cast<Element>(x / b), h1 = static_cast<Element>(x % b);
    const auto& f = action.automorphism_of[h1];
    for (std::size_t y = 0; y < n; ++y) {
      const auto n2 = static_cast<Element>(y / b), h2 = static_cast<Element>(y % b);
      t[x * n + y] = static_cast<Element>(n_group.mul(n1, f[n2]) * b + h_group.mul(h1, h2));
    }
  }
  return GroupTable::from_trusted(n, std::move(t));
}

/// Dihedral group of the given (even) order, as Z_{order/2} x| Z_2 by inversion.
inline GroupTable dihedral(std::size_t order) {
  if (order < 2 || order % 2) throw GroupError(ErrorCode::InvalidParameter, "dihedral order must be even and positive");
  const std::size_t m = order / 2;
  const GroupTable rot = cyclic(m), flip = cyclic(2);
  ActionSpec act = ActionSpec::trivial(rot, flip);
  for (Element x = 0; x < m; ++x) act.automorphism_of[1][x] = rot.inv(x);
  return semidirect_product(rot, flip, act);
}

struct NamedGroupSpec {
  enum class Kind { Cyclic, ElementaryAbelian, Symmetric, Alternating, Dihedral };
  Kind kind;
  std::uint32_t a = 1;  // m, p, n, n, or the dihedral order 2n
  std::uint32_t b = 1;  // t for elementary abelian
};

inline GroupTable named_group(const NamedGroupSpec& spec) {
  switch (spec.kind) {
    case NamedGroupSpec::Kind::Cyclic: return cyclic(spec.a);
    case NamedGroupSpec::Kind::ElementaryAbelian: return elementary_abelian(spec.a, spec.b);
    case NamedGroupSpec::Kind::Symmetric: return symmetric(spec.a);
    case NamedGroupSpec::Kind::Alternating: return alternating(spec.a);
    case NamedGroupSpec::Kind::Dihedral: return dihedral(spec.a);
  }
  throw GroupError(ErrorCode::InvalidParameter, "unknown named group");
}

}  // namespace wsu
