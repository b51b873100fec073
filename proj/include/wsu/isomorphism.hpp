#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "lattice.hpp"

namespace wsu {

/// Cheap isomorphism invariants, compared before any search.
struct Fingerprint {
  std::size_t order = 0;
  std::uint32_t exponent = 0;
  bool abelian = false;
  std::map<std::uint32_t, std::size_t> order_histogram;
  std::size_t center_order = 0;
  std::size_t derived_order = 0;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;

  std::string to_string() const {
    std::string s = "n=" + std::to_string(order) + ";exp=" + std::to_string(exponent) + ";ab=" + (abelian ? "1" : "0") + ";orders=";
    bool first = true;
    for (auto [o, c] : order_histogram) {
      if (!first) s += ',';
      s += std::to_string(o) + ':' + std::to_string(c);
      first = false;
    }
    return s + ";z=" + std::to_string(center_order) + ";d=" + std::to_string(derived_order);
  }
};

inline Fingerprint fingerprint(const GroupTable& g) {
  Fingerprint f;
  f.order = g.order();
  f.exponent = g.exponent();
  f.abelian = g.is_abelian();
  for (auto o : g.element_orders()) ++f.order_histogram[o];
  f.center_order = f.abelian ? g.order() : center(g).order();
  f.derived_order = f.abelian ? 1 : derived(g).order();
  return f;
}

/// A homomorphism between tables: image[x] for every element x of the source.
using Homomorphism = std::vector<Element>;

namespace detail {

/// Extends generator images to <gens[0..k)>; returns false on any conflict
/// (or, when `injective`, on a collision of images).
inline bool extend_on_subgroup(const GroupTable& src, const GroupTable& dst, std::span<const Element> gens,
                               std::span<const Element> images, bool injective, std::vector<Element>& map,
                               std::vector<Element>& used_by) {
  constexpr Element kUnset = ~Element{0};
  std::fill(map.begin(), map.end(), kUnset);
  if (injective) std::fill(used_by.begin(), used_by.end(), kUnset);
  std::vector<Element> queue{src.identity()};
  map[src.identity()] = dst.identity();
  if (injective) used_by[dst.identity()] = src.identity();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Element x = queue[head];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Element y = src.mul(x, gens[k]);
      const Element fy = dst.mul(map[x], images[k]);
      if (map[y] == kUnset) {
        if (injective) {
          if (used_by[fy] != kUnset) return false;
          used_by[fy] = y;
        }
        map[y] = fy;
        queue.push_back(y);
      } else if (map[y] != fy) {
        return false;
      }
    }
  }
  return true;
}

/// Backtracking over generator images. `visit` returns false to stop.
inline void search_homomorphisms(const GroupTable& src, const GroupTable& dst, bool bijective,
                                 const std::function<bool(const Homomorphism&)>& visit) {
  if (bijective && src.order() != dst.order()) return;
  const auto& gens = src.generators();
  std::vector<std::vector<Element>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto o = src.element_order(gens[k]);
    for (Element y = 0; y < dst.order(); ++y) {
      const auto oy = dst.element_order(y);
      if (bijective ? oy == o : o % oy == 0) candidates[k].push_back(y);
    }
  }
  std::vector<Element> images(gens.size());
  std::vector<Element> map(src.order()), used(dst.order());
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (stop) return;
    if (k == gens.size()) {
      const std::span<const Element> gs(gens.data(), k), is(images.data(), k);
      if (!extend_on_subgroup(src, dst, gs, is, bijective, map, used)) return;
      if (!visit(map)) stop = true;
      return;
    }
    for (Element y : candidates[k]) {
      images[k] = y;
      const std::span<const Element> gs(gens.data(), k + 1), is(images.data(), k + 1);
      if (!extend_on_subgroup(src, dst, gs, is, bijective, map, used)) continue;
      rec(k + 1);
      if (stop) return;
    }
  };
  if (gens.empty()) {
    map.assign(src.order(), dst.identity());
    if (!bijective || dst.order() == 1) visit(map);
    return;
  }
  rec(0);
}

}  // namespace detail

struct IsomorphismResult {
  bool isomorphic = false;
  std::optional<Homomorphism> witness;
};

/// Fingerprint comparison, then generator-image backtracking.
inline IsomorphismResult is_isomorphic(const GroupTable& g, const GroupTable& h) {
  if (g.order() > order_cap() || h.order() > order_cap())
    throw GroupError(ErrorCode::OrderCapExceeded, "isomorphism test above the order cap");
  if (g.order() != h.order() || !(fingerprint(g) == fingerprint(h))) return {};
  IsomorphismResult r;
  detail::search_homomorphisms(g, h, true, [&](const Homomorphism& m) {
    r.isomorphic = true;
    r.witness = m;
    return false;
  });
  return r;
}

/// True iff `map` is a bijective homomorphism g -> h.
inline bool is_isomorphism(const GroupTable& g, const GroupTable& h, const Homomorphism& map) {
  if (g.order() != h.order() || map.size() != g.order()) return false;
  std::vector<bool> hit(h.order(), false);
  for (auto y : map) {
    if (y >= h.order() || hit[y]) return false;
    hit[y] = true;
  }
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      if (map[g.mul(a, b)] != h.mul(map[a], map[b])) return false;
  return true;
}

/// All homomorphisms src -> dst, in deterministic (generator-image lexicographic) order.
inline std::vector<Homomorphism> all_homomorphisms(const GroupTable& src, const GroupTable& dst) {
  std::vector<Homomorphism> out;
  detail::search_homomorphisms(src, dst, false, [&](const Homomorphism& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

/// All automorphisms of g, each as an image vector; the identity map first.
inline std::vector<Homomorphism> automorphisms(const GroupTable& g) {
  std::vector<Homomorphism> out;
  detail::search_homomorphisms(g, g, true, [&](const Homomorphism& m) {
    out.push_back(m);
    return true;
  });
  std::stable_partition(out.begin(), out.end(), [](const Homomorphism& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != i) return false;
    return true;
  });
  return out;
}

/// Aut(N) as a table; element k acts on N as maps[k]. Composition follows
/// the permutation convention: (a*b)(x) = b(a(x)).
struct AutomorphismGroup {
  GroupTable table;
  std::vector<Homomorphism> maps;
};

inline AutomorphismGroup automorphism_group(const GroupTable& n) {
  const auto autos = automorphisms(n);
  std::vector<Permutation> gens;
  {
    // Greedy generating subset, so the closure stays cheap.
    std::vector<Permutation> current;
    std::set<std::vector<std::uint32_t>> reached;
    reached.insert(Permutation::identity(n.order()).images);
    for (const auto& a : autos) {
      if (reached.size() == autos.size()) break;
      std::vector<std::uint32_t> images(a.begin(), a.end());
      if (reached.count(images)) continue;
      current.push_back(Permutation{std::move(images)});
      reached.clear();
      for (auto& p : detail::close_permutations(n.order(), current, order_cap()).elements) reached.insert(std::move(p.images));
    }
    gens = std::move(current);
  }
  auto closure = detail::close_permutations(n.order(), gens, order_cap());
  AutomorphismGroup out{closure.table, {}};
  out.maps.reserve(closure.elements.size());
  for (auto& p : closure.elements) out.maps.emplace_back(p.images.begin(), p.images.end());
  return out;
}

namespace detail {

inline Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner) {
  Homomorphism r(inner.size());
  for (std::size_t x = 0; x < inner.size(); ++x) r[x] = outer[inner[x]];
  return r;
}

}  // namespace detail

/// Every action of `acting` on `target`, in a deterministic order; the
/// trivial action comes first. Index k in this list is "action#k".
inline std::vector<ActionSpec> all_actions(const GroupTable& target, const GroupTable& acting) {
  std::vector<ActionSpec> out;
  const std::size_t m = acting.order();
  Element gen = acting.identity();
  for (Element x = 0; x < m; ++x)
    if (acting.element_order(x) == m) gen = x;
  if (acting.element_order(gen) == m) {
    // Cyclic acting group: an action is an automorphism phi with phi^m = 1,
    // assigned to the first generator; no table of Aut(N) is needed.
    for (const auto& phi : automorphisms(target)) {
      Homomorphism id(target.order());
      std::iota(id.begin(), id.end(), Element{0});
      std::vector<Homomorphism> powers{id};
      for (std::size_t k = 1; k < m; ++k) powers.push_back(detail::compose(phi, powers.back()));
      if (detail::compose(phi, powers.back()) != id) continue;
      ActionSpec spec{acting, target, std::vector<std::vector<Element>>(m)};
      Element h = acting.identity();
      for (std::size_t k = 0; k < m; ++k) {
        spec.automorphism_of[h] = powers[k];
        h = acting.mul(h, gen);
      }
      out.push_back(std::move(spec));
    }
    return out;
  }
  const AutomorphismGroup aut = automorphism_group(target);
  // Permutation products apply the left factor first, so x -> map_x is an
  // anti-homomorphism into composition; route through the inverse to get
  // a left action h -> phi_h with phi_{ab} = phi_a o phi_b.
  for (const auto& hom : all_homomorphisms(acting, aut.table)) {
    ActionSpec spec{acting, target, std::vector<std::vector<Element>>(acting.order())};
    for (Element h = 0; h < acting.order(); ++h) spec.automorphism_of[h] = aut.maps[aut.table.inv(hom[h])];
    out.push_back(std::move(spec));
  }
  return out;
}

}  // namespace wsu
