#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fault_injection.hpp"
#include "lattice.hpp"

namespace wsu {

/// H = H_0 < H_1 < ... < H_n = G with every index |H_i : H_{i-1}| prime.
struct ChainWitness {
  std::vector<Subgroup> chain;

  std::size_t length() const noexcept { return chain.empty() ? 0 : chain.size() - 1; }

  /// "H0 (order a) < H1 (order b) [p] < ... < G (order n) [q]"
  std::string render() const {
    std::string out;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const bool last = i + 1 == chain.size();
      if (i) out += " < ";
      out += (last ? std::string("G") : "H" + std::to_string(i)) + " (order " + std::to_string(chain[i].order()) + ")";
      if (i) out += " [" + std::to_string(chain[i].order() / chain[i - 1].order()) + "]";
    }
    return out;
  }
};

/// Re-checks a witness from scratch: starts at H, ends at G, strict
/// containments, prime indices, every term closed.
inline bool validate_witness(const GroupTable& g, const Subgroup& h, const ChainWitness& w) {
  if (w.chain.empty()) return false;
  if (!(w.chain.front().members == h.members)) return false;
  if (w.chain.back().order() != g.order()) return false;
  for (const auto& s : w.chain)
    if (!(generate(g, s.members.elements()) == s.members)) return false;
  for (std::size_t i = 1; i < w.chain.size(); ++i) {
    const auto& lo = w.chain[i - 1];
    const auto& hi = w.chain[i];
    if (!lo.members.is_subset_of(hi.members)) return false;
    if (hi.order() % lo.order() || !is_prime(hi.order() / lo.order())) return false;
  }
  return true;
}

/// Subnormality of H in the subgroup K via iterated normal closures:
/// K >= H^K >= H^(H^K) >= ... reaches H iff H is subnormal in K.
inline bool is_subnormal_in(const GroupTable& g, const Subgroup& h, const Subgroup& k) {
  Subgroup cur = k;
  while (true) {
    if (cur.order() == h.order()) return true;
    Subgroup next = normal_closure_in(g, h, cur);
    if (next.order() == cur.order()) return false;
    cur = std::move(next);
  }
}

inline bool is_subnormal(const GroupTable& g, const Subgroup& h) { return is_subnormal_in(g, h, whole_group(g)); }

namespace detail {

inline bool prime_index_step(const LatticeCache& lat, std::size_t lower, std::size_t upper) {
  if (testing::fault_is(testing::Fault::AnyCoverIndexAllowed)) return true;
  return is_prime(lat.order_of(upper) / lat.order_of(lower));
}

}  // namespace detail

/// Marks every subgroup of lattice entry `top` that is P-subnormal in it.
/// Top-down: a subgroup is marked iff some cover inside `top` is marked and
/// has prime index over it. Prime index forces a covering step, so scanning
/// covers is complete.
inline std::vector<bool> psn_marks_within(const LatticeCache& lat, std::size_t top) {
  std::vector<bool> marked(lat.size(), false);
  marked[top] = true;
  const auto& top_members = lat[top].members;
  for (std::size_t i = top; i-- > 0;) {
    if (lat.order_of(top) % lat.order_of(i) || !lat[i].members.is_subset_of(top_members)) continue;
    for (std::size_t c : lat.covers(i))
      if (c <= top && marked[c] && detail::prime_index_step(lat, i, c)) {
        marked[i] = true;
        break;
      }
  }
  return marked;
}

inline std::vector<bool> psn_marks(const GroupTable& g) {
  const auto& lat = g.lattice();
  return psn_marks_within(lat, lat.top());
}

inline bool is_p_subnormal(const GroupTable& g, const Subgroup& h) {
  const auto& lat = g.lattice();
  return psn_marks(g)[lat.index_of(h.members)];
}

/// Chain from lattice entry `sub` up to `top`, choosing at each step the
/// smallest valid parent (lowest lattice index: smallest order, then
/// smallest member list).
inline std::optional<ChainWitness> witness_from_marks(const LatticeCache& lat, const std::vector<bool>& marked, std::size_t sub,
                                                      std::size_t top) {
  if (!marked[sub]) return std::nullopt;
  ChainWitness w;
  std::size_t cur = sub;
  w.chain.push_back(lat[cur]);
  while (cur != top) {
    std::optional<std::size_t> next;
    for (std::size_t c : lat.covers(cur))
      if (c <= top && marked[c] && detail::prime_index_step(lat, cur, c) && lat[c].members.is_subset_of(lat[top].members)) {
        next = c;
        break;
      }
    if (!next) return std::nullopt;
    cur = *next;
    w.chain.push_back(lat[cur]);
  }
  return w;
}

inline std::optional<ChainWitness> p_subnormal_witness(const GroupTable& g, const Subgroup& h) {
  const auto& lat = g.lattice();
  return witness_from_marks(lat, psn_marks(g), lat.index_of(h.members), lat.top());
}

// ---------------------------------------------------------------------------
// Mutual sn-permutability
// ---------------------------------------------------------------------------

struct SnPermutability {
  bool holds = true;
  /// First failing pair: `factor` is "A" or "B" (the side whose subgroup
  /// is tested) and `witness` is the subnormal subgroup of the other factor.
  std::string factor;
  std::optional<Subgroup> witness;
};

/// Lattice indices of the subnormal subgroups of lattice entry k.
inline std::vector<std::size_t> subnormal_subgroups_of(const GroupTable& g, std::size_t k) {
  const auto& lat = g.lattice();
  std::vector<std::size_t> out;
  for (std::size_t i : lat.contained_in(k))
    if (is_subnormal_in(g, lat[i], lat[k])) out.push_back(i);
  return out;
}

inline SnPermutability mutually_sn_permutable(const GroupTable& g, const Subgroup& a, const Subgroup& b) {
  const auto& lat = g.lattice();
  const std::size_t ia = lat.index_of(a.members), ib = lat.index_of(b.members);
  auto permutes_with_all = [&](const Subgroup& x, std::size_t other, const char* name, SnPermutability& r) {
    for (std::size_t s : subnormal_subgroups_of(g, other)) {
      if (!complex_product(g, x, lat[s]).is_subgroup) {
        r.holds = false;
        r.factor = name;
        r.witness = lat[s];
        return false;
      }
    }
    return true;
  };
  SnPermutability r;
  if (!permutes_with_all(lat[ia], ib, "A", r)) return r;
  permutes_with_all(lat[ib], ia, "B", r);
  return r;
}

}  // namespace wsu
