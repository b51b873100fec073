#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "element_set.hpp"
#include "errors.hpp"

namespace wsu {

// ---------------------------------------------------------------------------
// Limits
// ---------------------------------------------------------------------------

inline constexpr std::size_t kDefaultOrderCap = 2000;
inline constexpr std::size_t kDefaultLatticeCap = 300;

/// Process-wide cap on the order of any constructed group.
inline std::atomic<std::size_t>& order_cap() {
  static std::atomic<std::size_t> cap{kDefaultOrderCap};
  return cap;
}

/// Process-wide cap on the order of groups whose subgroup lattice is built.
inline std::atomic<std::size_t>& lattice_cap() {
  static std::atomic<std::size_t> cap{kDefaultLatticeCap};
  return cap;
}

// ---------------------------------------------------------------------------
// Small number theory
// ---------------------------------------------------------------------------

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Distinct primes dividing n, ascending.
inline std::vector<std::uint32_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(static_cast<std::uint32_t>(d));
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
  return out;
}

/// Largest power of p dividing n.
inline std::uint64_t p_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t r = 1;
  while (n && n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline bool is_prime_power_of(std::uint64_t n, std::uint64_t p) { return n >= 1 && p_part(n, p) == n; }

// ---------------------------------------------------------------------------
// GroupTable
// ---------------------------------------------------------------------------

class LatticeCache;

/// A finite group stored as its multiplication table. Immutable; copies share
/// the table and a lazily filled cache (generating set, subgroup lattice,
/// classification memo), so a GroupTable can be passed around by value and
/// shared between threads.
class GroupTable {
 public:
  /// The trivial group.
  GroupTable() : GroupTable(1, std::vector<Element>{0}) {}

  std::size_t order() const noexcept { return data_->n; }
  Element identity() const noexcept { return data_->identity; }

  Element mul(Element a, Element b) const noexcept { return data_->table[static_cast<std::size_t>(a) * data_->n + b]; }
  Element inv(Element a) const noexcept { return data_->inverse[a]; }
  std::uint32_t element_order(Element a) const noexcept { return data_->element_order[a]; }

  /// g x g^-1
  Element conj(Element g, Element x) const noexcept { return mul(mul(g, x), inv(g)); }
  /// a^-1 b^-1 a b
  Element commutator(Element a, Element b) const noexcept { return mul(mul(inv(a), inv(b)), mul(a, b)); }

  Element power(Element a, std::uint64_t k) const noexcept {
    k %= element_order(a);
    Element r = identity();
    for (std::uint64_t i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  std::span<const Element> row(Element a) const noexcept {
    return {data_->table.data() + static_cast<std::size_t>(a) * data_->n, data_->n};
  }
  const std::vector<Element>& flat_table() const noexcept { return data_->table; }
  const std::vector<Element>& inverses() const noexcept { return data_->inverse; }
  const std::vector<std::uint32_t>& element_orders() const noexcept { return data_->element_order; }

  bool is_abelian() const noexcept {
    const auto n = order();
    for (Element a = 0; a < n; ++a)
      for (Element b = a + 1; b < n; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::uint32_t exponent() const noexcept {
    std::uint64_t e = 1;
    for (auto o : data_->element_order) e = std::lcm(e, static_cast<std::uint64_t>(o));
    return static_cast<std::uint32_t>(e);
  }

  std::vector<std::uint32_t> primes() const { return prime_divisors(order()); }

  /// A small generating set: greedy over elements of decreasing order.
  const std::vector<Element>& generators() const;

  /// Subgroup lattice, built on first use (see lattice.hpp).
  const LatticeCache& lattice() const;

  /// True when both handles share the same underlying table object.
  bool same_object(const GroupTable& o) const noexcept { return data_ == o.data_; }

  friend bool operator==(const GroupTable& a, const GroupTable& b) noexcept {
    return a.data_ == b.data_ || (a.order() == b.order() && a.data_->table == b.data_->table);
  }

  /// Builds a table the caller guarantees to be a group (associative Latin
  /// square with identity). Used by constructions that are groups by design.
  static GroupTable from_trusted(std::size_t n, std::vector<Element> table) { return GroupTable(n, std::move(table)); }

  // Memo slots for derived boolean properties (classification results).
  std::optional<bool> memo(std::size_t slot) const noexcept {
    const int v = cache_->memo[slot].load(std::memory_order_relaxed);
    if (v < 0) return std::nullopt;
    return v == 1;
  }
  void set_memo(std::size_t slot, bool value) const noexcept {
    cache_->memo[slot].store(value ? 1 : 0, std::memory_order_relaxed);
  }
  static constexpr std::size_t kMemoSlots = 16;

 private:
  struct Data {
    std::size_t n = 0;
    std::vector<Element> table;
    Element identity = 0;
    std::vector<Element> inverse;
    std::vector<std::uint32_t> element_order;
  };
  struct Cache {
    Cache() {
      for (auto& m : memo) m.store(-1);
    }
    std::once_flag gens_once;
    std::vector<Element> gens;
    std::once_flag lattice_once;
    std::shared_ptr<const LatticeCache> lattice;
    std::array<std::atomic<int>, kMemoSlots> memo;
  };

  GroupTable(std::size_t n, std::vector<Element> table) : cache_(std::make_shared<Cache>()) {
    auto built = std::make_shared<Data>();
    auto& d = *built;
    d.n = n;
    d.table = std::move(table);
    d.identity = 0;
    for (Element e = 0; e < n; ++e) {
      bool ok = true;
      for (Element x = 0; x < n && ok; ++x) ok = d.table[e * n + x] == x && d.table[x * n + e] == x;
      if (ok) {
        d.identity = e;
        break;
      }
    }
    d.inverse.assign(n, 0);
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        if (d.table[static_cast<std::size_t>(x) * n + y] == d.identity) {
          d.inverse[x] = y;
          break;
        }
    d.element_order.assign(n, 1);
    for (Element x = 0; x < n; ++x) {
      std::uint32_t k = 1;
      Element p = x;
      while (p != d.identity) {
        p = d.table[static_cast<std::size_t>(p) * n + x];
        ++k;
      }
      d.element_order[x] = k;
    }
    data_ = std::move(built);
  }

  std::shared_ptr<const Data> data_;
  std::shared_ptr<Cache> cache_;
};

// ---------------------------------------------------------------------------
// Subgroups and closure
// ---------------------------------------------------------------------------

/// A subgroup of some parent GroupTable: its member set plus a generating set.
struct Subgroup {
  ElementSet members;
  std::vector<Element> gens;

  std::size_t order() const noexcept { return members.count(); }
  bool contains(Element x) const noexcept { return members.test(x); }
  friend bool operator==(const Subgroup& a, const Subgroup& b) noexcept { return a.members == b.members; }
};

/// Closure of `gens` under multiplication (finite, so also under inverses).
inline ElementSet generate(const GroupTable& g, std::span<const Element> gens) {
  ElementSet seen(g.order());
  std::vector<Element> queue{g.identity()};
  seen.set(g.identity());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Element x = queue[head];
    for (Element s : gens) {
      const Element y = g.mul(x, s);
      if (!seen.test(y)) {
        seen.set(y);
        queue.push_back(y);
      }
    }
  }
  return seen;
}

/// Smallest subgroup containing `elements`.
inline Subgroup subgroup_generated(const GroupTable& g, std::span<const Element> elements) {
  std::vector<Element> gens;
  for (Element x : elements)
    if (x != g.identity()) gens.push_back(x);
  ElementSet members = generate(g, gens);
  return Subgroup{std::move(members), std::move(gens)};
}

/// Greedy generating set of a closed element set.
inline std::vector<Element> generators_of(const GroupTable& g, const ElementSet& members) {
  std::vector<Element> elems = members.elements();
  std::stable_sort(elems.begin(), elems.end(),
                   [&](Element a, Element b) { return g.element_order(a) > g.element_order(b); });
  std::vector<Element> gens;
  ElementSet current(g.order());
  current.set(g.identity());
  const std::size_t target = members.count();
  for (Element x : elems) {
    if (current.count() == target) break;
    if (current.test(x)) continue;
    gens.push_back(x);
    current = generate(g, gens);
  }
  return gens;
}

inline Subgroup as_subgroup(const GroupTable& g, ElementSet members) {
  auto gens = generators_of(g, members);
  return Subgroup{std::move(members), std::move(gens)};
}

inline Subgroup trivial_subgroup(const GroupTable& g) {
  ElementSet s(g.order());
  s.set(g.identity());
  return Subgroup{std::move(s), {}};
}

inline Subgroup whole_group(const GroupTable& g) {
  return Subgroup{ElementSet::full(g.order()), g.generators()};
}

inline const std::vector<Element>& GroupTable::generators() const {
  std::call_once(cache_->gens_once, [this] { cache_->gens = generators_of(*this, ElementSet::full(order())); });
  return cache_->gens;
}

/// True iff every conjugate of a generator of H by a generator of `by` lies in H.
inline bool normalized_by(const GroupTable& g, const Subgroup& h, std::span<const Element> by) {
  for (Element x : by)
    for (Element s : h.gens)
      if (!h.members.test(g.conj(x, s))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Embedded tables: subgroups and quotients as standalone groups
// ---------------------------------------------------------------------------

/// A subgroup re-tabled as a standalone group. embedding[i] is the parent
/// element represented by index i; the identity gets index 0.
struct EmbeddedSubgroup {
  GroupTable table;
  std::vector<Element> embedding;

  Element to_parent(Element x) const { return embedding[x]; }
  ElementSet to_parent(const ElementSet& s, std::size_t parent_order) const {
    ElementSet out(parent_order);
    s.for_each([&](Element x) { out.set(embedding[x]); });
    return out;
  }
};

inline EmbeddedSubgroup subgroup_table(const GroupTable& g, const ElementSet& members) {
  std::vector<Element> embedding{g.identity()};
  members.for_each([&](Element x) {
    if (x != g.identity()) embedding.push_back(x);
  });
  const std::size_t m = embedding.size();
  std::vector<Element> local(g.order(), 0);
  for (std::size_t i = 0; i < m; ++i) local[embedding[i]] = static_cast<Element>(i);
  std::vector<Element> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = local[g.mul(embedding[i], embedding[j])];
  return EmbeddedSubgroup{GroupTable::from_trusted(m, std::move(table)), std::move(embedding)};
}

struct QuotientGroup {
  GroupTable table;
  /// projection[x] = coset index of x; the identity coset is 0.
  std::vector<Element> projection;
  /// representatives[c] = smallest-index element of coset c (identity for 0).
  std::vector<Element> representatives;

  ElementSet image(const ElementSet& s) const {
    ElementSet out(table.order());
    s.for_each([&](Element x) { out.set(projection[x]); });
    return out;
  }
  /// Full preimage of a set of cosets.
  ElementSet preimage(const ElementSet& cosets) const {
    ElementSet out(projection.size());
    for (Element x = 0; x < projection.size(); ++x)
      if (cosets.test(projection[x])) out.set(x);
    return out;
  }
};

/// G/N. Throws NotNormal when N is not normal in G.
inline QuotientGroup quotient_group(const GroupTable& g, const Subgroup& n) {
  if (!normalized_by(g, n, g.generators())) throw GroupError(ErrorCode::NotNormal, "quotient by a non-normal subgroup");
  const std::size_t order = g.order();
  constexpr Element kUnset = ~Element{0};
  std::vector<Element> projection(order, kUnset);
  std::vector<Element> reps;
  const auto members = n.members.elements();
  auto add_coset = [&](Element x) {
    const auto c = static_cast<Element>(reps.size());
    reps.push_back(x);
    for (Element y : members) projection[g.mul(x, y)] = c;
  };
  add_coset(g.identity());
  for (Element x = 0; x < order; ++x)
    if (projection[x] == kUnset) add_coset(x);
  const std::size_t m = reps.size();
  std::vector<Element> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = projection[g.mul(reps[i], reps[j])];
  return QuotientGroup{GroupTable::from_trusted(m, std::move(table)), std::move(projection), std::move(reps)};
}

}  // namespace wsu
