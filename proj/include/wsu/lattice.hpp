#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "group_table.hpp"

namespace wsu {

// ---------------------------------------------------------------------------
// Elementwise subgroup operations (no lattice needed)
// ---------------------------------------------------------------------------

inline bool is_normal(const GroupTable& g, const Subgroup& h) { return normalized_by(g, h, g.generators()); }

/// N_G(H)
inline ElementSet normalizer(const GroupTable& g, const Subgroup& h) {
  ElementSet out(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Element s : h.gens)
      if (!h.members.test(g.conj(x, s))) {
        ok = false;
        break;
      }
    if (ok) out.set(x);
  }
  return out;
}

/// Subgroup generated by H together with extra elements.
inline Subgroup join(const GroupTable& g, const Subgroup& h, std::span<const Element> extra) {
  std::vector<Element> gens = h.gens;
  for (Element x : extra)
    if (!h.members.test(x)) gens.push_back(x);
  if (gens.size() == h.gens.size()) return h;
  ElementSet m = generate(g, gens);
  return Subgroup{std::move(m), std::move(gens)};
}

inline Subgroup join(const GroupTable& g, const Subgroup& a, const Subgroup& b) { return join(g, a, b.gens); }

inline Subgroup intersection(const GroupTable& g, const Subgroup& a, const Subgroup& b) {
  return as_subgroup(g, a.members & b.members);
}

/// x H x^-1 as an element set.
inline ElementSet conjugate_set(const GroupTable& g, const ElementSet& h, Element x) {
  ElementSet out(g.order());
  h.for_each([&](Element y) { out.set(g.conj(x, y)); });
  return out;
}

inline Subgroup conjugate(const GroupTable& g, const Subgroup& h, Element x) {
  Subgroup out{conjugate_set(g, h.members, x), {}};
  out.gens.reserve(h.gens.size());
  for (Element s : h.gens) out.gens.push_back(g.conj(x, s));
  return out;
}

/// Smallest subgroup of K containing H and normalized by K (H, K given as subgroups, H <= K).
inline Subgroup normal_closure_in(const GroupTable& g, const Subgroup& h, const Subgroup& k) {
  Subgroup cur = h;
  bool grew = true;
  while (grew) {
    grew = false;
    for (Element x : k.gens) {
      for (std::size_t i = 0; i < cur.gens.size(); ++i) {
        const Element c = g.conj(x, cur.gens[i]);
        if (!cur.members.test(c)) {
          const Element arr[1] = {c};
          cur = join(g, cur, arr);
          grew = true;
        }
      }
    }
  }
  return cur;
}

/// Derived subgroup of the subgroup H (as a subgroup of the parent).
inline Subgroup derived_of(const GroupTable& g, const Subgroup& h) {
  // [H,H] is the normal closure in H of commutators of generators.
  std::vector<Element> comms;
  for (std::size_t i = 0; i < h.gens.size(); ++i)
    for (std::size_t j = i + 1; j < h.gens.size(); ++j) {
      const Element c = g.commutator(h.gens[i], h.gens[j]);
      if (c != g.identity()) comms.push_back(c);
    }
  Subgroup seed = subgroup_generated(g, comms);
  return normal_closure_in(g, seed, h);
}

/// True iff the derived series of H reaches the trivial group.
inline bool is_soluble_subgroup(const GroupTable& g, const Subgroup& h) {
  Subgroup cur = h;
  while (cur.order() > 1) {
    Subgroup next = derived_of(g, cur);
    if (next.order() == cur.order()) return false;
    cur = std::move(next);
  }
  return true;
}

// ---------------------------------------------------------------------------
// LatticeCache
// ---------------------------------------------------------------------------

/// Every subgroup of a group, sorted by (order, member list), with the
/// covering relation and normality flags. Index 0 is the trivial subgroup
/// and the last index is the whole group.
class LatticeCache {
 public:
  explicit LatticeCache(const GroupTable& g) { build(g); }

  std::size_t size() const noexcept { return subgroups_.size(); }
  const Subgroup& operator[](std::size_t i) const { return subgroups_[i]; }
  const std::vector<Subgroup>& subgroups() const noexcept { return subgroups_; }
  std::size_t order_of(std::size_t i) const noexcept { return orders_[i]; }

  /// Minimal proper overgroups of subgroup i.
  const std::vector<std::size_t>& covers(std::size_t i) const { return up_[i]; }
  /// Maximal subgroups of subgroup i.
  const std::vector<std::size_t>& maximal_subgroups(std::size_t i) const { return down_[i]; }
  bool normal(std::size_t i) const { return normal_[i]; }

  std::size_t bottom() const noexcept { return 0; }
  std::size_t top() const noexcept { return subgroups_.size() - 1; }

  std::optional<std::size_t> find(const ElementSet& members) const {
    auto it = index_.find(members);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const ElementSet& members) const {
    auto i = find(members);
    if (!i) throw GroupError(ErrorCode::InvalidParameter, "element set is not a subgroup");
    return *i;
  }

  std::vector<std::size_t> normal_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (normal_[i]) out.push_back(i);
    return out;
  }

  /// Indices of subgroups contained in subgroup i, ascending.
  std::vector<std::size_t> contained_in(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j <= i; ++j)
      if (orders_[i] % orders_[j] == 0 && subgroups_[j].members.is_subset_of(subgroups_[i].members)) out.push_back(j);
    return out;
  }

 private:
  void build(const GroupTable& g);
  void add(Subgroup s, std::vector<Subgroup>& list) {
    auto [it, inserted] = index_.emplace(s.members, list.size());
    if (inserted) list.push_back(std::move(s));
  }

  std::vector<Subgroup> subgroups_;
  std::vector<std::size_t> orders_;
  std::vector<std::vector<std::size_t>> up_, down_;
  std::vector<bool> normal_;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index_;
};

inline void LatticeCache::build(const GroupTable& g) {
  const std::size_t n = g.order();
  std::vector<Subgroup> found;
  add(trivial_subgroup(g), found);

  // Cyclic extension: extend each known subgroup H by an element x of its
  // normalizer whose image in N_G(H)/H has prime order. The union of the
  // cosets x^i H is then a subgroup in which H has prime index. Every
  // soluble subgroup arises this way from a subgroup of prime index.
  for (std::size_t idx = 0; idx < found.size(); ++idx) {
    const Subgroup h = found[idx];
    const ElementSet norm = normalizer(g, h);
    ElementSet done = h.members;
    const auto h_elems = h.members.elements();
    norm.for_each([&](Element x) {
      if (done.test(x)) return;
      std::uint32_t k = 1;
      Element p = x;
      while (!h.members.test(p)) {
        p = g.mul(p, x);
        ++k;
      }
      if (!is_prime(k)) return;
      ElementSet k_set(n);
      Element xi = g.identity();
      for (std::uint32_t i = 0; i < k; ++i) {
        for (Element y : h_elems) k_set.set(g.mul(xi, y));
        xi = g.mul(xi, x);
      }
      done |= k_set;
      std::vector<Element> gens = h.gens;
      gens.push_back(x);
      add(Subgroup{std::move(k_set), std::move(gens)}, found);
    });
  }

  // Insoluble groups have subgroups (perfect ones at least) that the
  // extension misses; close the list under joins with cyclic subgroups of
  // prime-power order, which generate every subgroup.
  if (!is_soluble_subgroup(g, whole_group(g))) {
    std::vector<Element> cyclic_gens;
    {
      ElementSet covered(n);
      for (Element x = 0; x < n; ++x) {
        if (x == g.identity() || covered.test(x)) continue;
        const auto o = g.element_order(x);
        if (prime_divisors(o).size() != 1) continue;
        const Element arr[1] = {x};
        const ElementSet c = generate(g, arr);
        // Generators of the same cyclic subgroup are interchangeable.
        c.for_each([&](Element y) {
          if (g.element_order(y) == o) covered.set(y);
        });
        cyclic_gens.push_back(x);
      }
    }
    for (std::size_t idx = 0; idx < found.size(); ++idx) {
      for (Element x : cyclic_gens) {
        if (found[idx].members.test(x)) continue;
        const Element arr[1] = {x};
        Subgroup j = join(g, found[idx], arr);
        if (!index_.count(j.members)) add(std::move(j), found);
      }
    }
  }

  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    const auto oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob;
    return a.members < b.members;
  });
  subgroups_ = std::move(found);
  index_.clear();
  orders_.resize(subgroups_.size());
  for (std::size_t i = 0; i < subgroups_.size(); ++i) {
    index_.emplace(subgroups_[i].members, i);
    orders_[i] = subgroups_[i].order();
  }

  normal_.resize(subgroups_.size());
  for (std::size_t i = 0; i < subgroups_.size(); ++i) normal_[i] = normalized_by(g, subgroups_[i], g.generators());

  // A proper overgroup K of H is a cover iff no cover found so far (in
  // ascending order) lies inside K.
  up_.assign(subgroups_.size(), {});
  down_.assign(subgroups_.size(), {});
  for (std::size_t i = 0; i < subgroups_.size(); ++i) {
    const auto& hm = subgroups_[i].members;
    for (std::size_t j = i + 1; j < subgroups_.size(); ++j) {
      if (orders_[j] == orders_[i] || orders_[j] % orders_[i]) continue;
      if (!hm.is_subset_of(subgroups_[j].members)) continue;
      bool is_cover = true;
      for (std::size_t c : up_[i])
        if (orders_[j] % orders_[c] == 0 && subgroups_[c].members.is_subset_of(subgroups_[j].members)) {
          is_cover = false;
          break;
        }
      if (is_cover) up_[i].push_back(j);
    }
    for (std::size_t j : up_[i]) down_[j].push_back(i);
  }
}

inline const LatticeCache& GroupTable::lattice() const {
  std::call_once(cache_->lattice_once, [this] {
    if (order() > lattice_cap())
      throw GroupError(ErrorCode::OrderCapExceeded,
                       "lattice of a group of order " + std::to_string(order()) + " exceeds cap " + std::to_string(lattice_cap().load()));
    cache_->lattice = std::make_shared<const LatticeCache>(*this);
  });
  return *cache_->lattice;
}

/// The full subgroup lattice (cached on the group).
inline const LatticeCache& all_subgroups(const GroupTable& g) { return g.lattice(); }

// ---------------------------------------------------------------------------
// Selected subgroups
// ---------------------------------------------------------------------------

enum class SubgroupSelection { Maximal, Normal, MinimalNormal };

inline std::vector<Subgroup> select_subgroups(const GroupTable& g, SubgroupSelection kind) {
  const auto& lat = g.lattice();
  std::vector<Subgroup> out;
  switch (kind) {
    case SubgroupSelection::Maximal:
      for (std::size_t i : lat.maximal_subgroups(lat.top())) out.push_back(lat[i]);
      break;
    case SubgroupSelection::Normal:
      for (std::size_t i : lat.normal_indices()) out.push_back(lat[i]);
      break;
    case SubgroupSelection::MinimalNormal: {
      std::vector<std::size_t> chosen;
      for (std::size_t i : lat.normal_indices()) {
        if (i == lat.bottom()) continue;
        bool minimal = true;
        for (std::size_t c : chosen)
          if (lat[c].members.is_subset_of(lat[i].members)) minimal = false;
        if (minimal) chosen.push_back(i);
      }
      for (std::size_t i : chosen) out.push_back(lat[i]);
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sylow subgroups and characteristic subgroups
// ---------------------------------------------------------------------------

/// A Sylow p-subgroup, grown from the trivial group one factor p at a time
/// inside successive normalizers. p not dividing |G| gives the trivial group.
inline Subgroup sylow(const GroupTable& g, std::uint32_t p) {
  Subgroup cur = trivial_subgroup(g);
  const auto target = p_part(g.order(), p);
  while (cur.order() < target) {
    const ElementSet norm = normalizer(g, cur);
    bool extended = false;
    for (Element x = 0; x < g.order() && !extended; ++x) {
      if (!norm.test(x) || cur.members.test(x)) continue;
      if (!is_prime_power_of(g.element_order(x), p)) continue;
      if (!cur.members.test(g.power(x, p))) continue;
      const Element arr[1] = {x};
      cur = join(g, cur, arr);
      extended = true;
    }
    if (!extended) throw GroupError(ErrorCode::FormationAssertionFailed, "Sylow growth stalled");
  }
  return cur;
}

/// Intersection of all conjugates of H.
inline Subgroup core(const GroupTable& g, const Subgroup& h) {
  ElementSet acc = h.members;
  for (Element x = 0; x < g.order(); ++x) {
    acc &= conjugate_set(g, h.members, x);
    if (acc.count() == 1) break;
  }
  return as_subgroup(g, std::move(acc));
}

/// O_p(G): the core of a Sylow p-subgroup.
inline Subgroup o_p(const GroupTable& g, std::uint32_t p) { return core(g, sylow(g, p)); }

inline Subgroup center(const GroupTable& g) {
  ElementSet z(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    bool central = true;
    for (Element s : g.generators())
      if (g.mul(x, s) != g.mul(s, x)) {
        central = false;
        break;
      }
    if (central) z.set(x);
  }
  return as_subgroup(g, std::move(z));
}

inline Subgroup derived(const GroupTable& g) { return derived_of(g, whole_group(g)); }

/// Product of the O_p(G) over the primes dividing |G|.
inline Subgroup fitting(const GroupTable& g) {
  Subgroup acc = trivial_subgroup(g);
  for (auto p : g.primes()) acc = join(g, acc, o_p(g, p));
  return acc;
}

/// Intersection of the maximal subgroups (needs the lattice).
inline Subgroup frattini(const GroupTable& g) {
  const auto& lat = g.lattice();
  ElementSet acc = ElementSet::full(g.order());
  for (std::size_t m : lat.maximal_subgroups(lat.top())) acc &= lat[m].members;
  return as_subgroup(g, std::move(acc));
}

enum class CharacteristicKind { Center, Derived, Fitting, Frattini, OP };

inline Subgroup characteristic_subgroup(const GroupTable& g, CharacteristicKind kind, std::uint32_t p = 0) {
  switch (kind) {
    case CharacteristicKind::Center: return center(g);
    case CharacteristicKind::Derived: return derived(g);
    case CharacteristicKind::Fitting: return fitting(g);
    case CharacteristicKind::Frattini: return frattini(g);
    case CharacteristicKind::OP:
      if (!is_prime(p)) throw GroupError(ErrorCode::InvalidParameter, "O_p needs a prime");
      return o_p(g, p);
  }
  throw GroupError(ErrorCode::InvalidParameter, "unknown characteristic subgroup");
}

inline Subgroup centralizer(const GroupTable& g, const Subgroup& h) {
  ElementSet c(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Element s : h.gens)
      if (g.mul(x, s) != g.mul(s, x)) {
        ok = false;
        break;
      }
    if (ok) c.set(x);
  }
  return as_subgroup(g, std::move(c));
}

enum class RelativeKind { Core, NormalClosure, Centralizer };

inline Subgroup relative_subgroup(const GroupTable& g, const Subgroup& h, RelativeKind kind) {
  switch (kind) {
    case RelativeKind::Core: return core(g, h);
    case RelativeKind::NormalClosure: return normal_closure_in(g, h, whole_group(g));
    case RelativeKind::Centralizer: return centralizer(g, h);
  }
  throw GroupError(ErrorCode::InvalidParameter, "unknown relative subgroup");
}

// ---------------------------------------------------------------------------
// Complex products
// ---------------------------------------------------------------------------

struct ComplexProduct {
  ElementSet elements;
  bool is_subgroup = false;
  bool equals_parent = false;
};

inline ElementSet product_set(const GroupTable& g, const ElementSet& a, const ElementSet& b) {
  ElementSet out(g.order());
  const auto be = b.elements();
  a.for_each([&](Element x) {
    for (Element y : be) out.set(g.mul(x, y));
  });
  return out;
}

/// AB = {ab}; it is a subgroup iff AB = BA.
inline ComplexProduct complex_product(const GroupTable& g, const Subgroup& a, const Subgroup& b) {
  ComplexProduct r;
  r.elements = product_set(g, a.members, b.members);
  r.equals_parent = r.elements.count() == g.order();
  r.is_subgroup = r.equals_parent || r.elements == product_set(g, b.members, a.members);
  return r;
}

/// |AB| computed from orders alone.
inline std::size_t product_size(const Subgroup& a, const Subgroup& b) {
  return a.order() * b.order() / a.members.intersection_count(b.members);
}

// ---------------------------------------------------------------------------
// Text forms
// ---------------------------------------------------------------------------

inline std::string format_members(const ElementSet& s) {
  std::string out = "[";
  bool first = true;
  s.for_each([&](Element x) {
    if (!first) out += ',';
    out += std::to_string(x);
    first = false;
  });
  return out + "]";
}

/// One subgroup per line: index, order, members, normal flag.
inline std::string lattice_report(const GroupTable& g) {
  const auto& lat = g.lattice();
  std::ostringstream os;
  for (std::size_t i = 0; i < lat.size(); ++i)
    os << i << " order=" << lat.order_of(i) << " members=" << format_members(lat[i].members)
       << " normal=" << (lat.normal(i) ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace wsu
