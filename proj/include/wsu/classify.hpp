#pragma once

#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "chains.hpp"
#include "fault_injection.hpp"
#include "lattice.hpp"

namespace wsu {

enum class FormationTag { Abelian, AbelianSylow, Nilpotent, Soluble, Supersoluble, WSupersoluble, Metanilpotent };

inline constexpr std::array<FormationTag, 7> kAllFormations = {
    FormationTag::Abelian,       FormationTag::AbelianSylow,  FormationTag::Nilpotent,     FormationTag::Soluble,
    FormationTag::Supersoluble,  FormationTag::WSupersoluble, FormationTag::Metanilpotent,
};

inline std::string_view to_string(FormationTag f) {
  switch (f) {
    case FormationTag::Abelian: return "Abelian";
    case FormationTag::AbelianSylow: return "AbelianSylow";
    case FormationTag::Nilpotent: return "Nilpotent";
    case FormationTag::Soluble: return "Soluble";
    case FormationTag::Supersoluble: return "Supersoluble";
    case FormationTag::WSupersoluble: return "WSupersoluble";
    case FormationTag::Metanilpotent: return "Metanilpotent";
  }
  return "?";
}

/// Accepts the tag names (any case) and the short forms A, N, U, wU.
inline std::optional<FormationTag> parse_formation(std::string_view s) {
  if (s == "A") return FormationTag::AbelianSylow;
  if (s == "N") return FormationTag::Nilpotent;
  if (s == "U") return FormationTag::Supersoluble;
  if (s == "wU") return FormationTag::WSupersoluble;
  auto lower = [](std::string_view v) {
    std::string r(v);
    for (auto& c : r) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return r;
  };
  for (FormationTag f : kAllFormations)
    if (lower(to_string(f)) == lower(s)) return f;
  return std::nullopt;
}

namespace detail {

enum MemoSlot : std::size_t { kSlotSiding = 7, kSlotSylowTower = 8 };

template <class F>
bool memoized(const GroupTable& g, std::size_t slot, F&& compute) {
  if (testing::any_fault()) return compute();
  if (auto v = g.memo(slot)) return *v;
  const bool r = compute();
  g.set_memo(slot, r);
  return r;
}

inline bool commute_pairwise(const GroupTable& g, const std::vector<Element>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (g.mul(xs[i], xs[j]) != g.mul(xs[j], xs[i])) return false;
  return true;
}

/// Some x of prime order with <x> normal, if any.
inline std::optional<Subgroup> prime_order_normal(const GroupTable& g) {
  for (Element x = 0; x < g.order(); ++x) {
    if (!is_prime(g.element_order(x))) continue;
    const Element arr[1] = {x};
    Subgroup c = subgroup_generated(g, arr);
    if (is_normal(g, c)) return c;
  }
  return std::nullopt;
}

}  // namespace detail

inline bool in_formation(const GroupTable& g, FormationTag f);

inline bool is_nilpotent(const GroupTable& g) { return in_formation(g, FormationTag::Nilpotent); }
inline bool is_soluble(const GroupTable& g) { return in_formation(g, FormationTag::Soluble); }
inline bool is_supersoluble(const GroupTable& g) { return in_formation(g, FormationTag::Supersoluble); }
inline bool is_w_supersoluble(const GroupTable& g) { return in_formation(g, FormationTag::WSupersoluble); }

inline bool in_formation(const GroupTable& g, FormationTag f) {
  using testing::Fault;
  const auto slot = static_cast<std::size_t>(f);
  switch (f) {
    case FormationTag::Abelian: return detail::memoized(g, slot, [&] { return g.is_abelian(); });
    case FormationTag::AbelianSylow:
      return detail::memoized(g, slot, [&] {
        if (testing::fault_is(Fault::AbelianSylowAlwaysTrue)) return true;
        for (auto p : g.primes())
          if (!detail::commute_pairwise(g, sylow(g, p).gens)) return false;
        return true;
      });
    case FormationTag::Nilpotent:
      return detail::memoized(g, slot, [&] {
        if (testing::fault_is(Fault::NilpotentMeansAbelian)) return g.is_abelian();
        for (auto p : g.primes())
          if (!is_normal(g, sylow(g, p))) return false;
        return true;
      });
    case FormationTag::Soluble: return detail::memoized(g, slot, [&] { return is_soluble_subgroup(g, whole_group(g)); });
    case FormationTag::Supersoluble:
      // Any normal subgroup of prime order works: quotients of supersoluble
      // groups are supersoluble, and a prime-order normal subgroup under a
      // supersoluble quotient gives a supersoluble group.
      return detail::memoized(g, slot, [&] {
        if (g.order() == 1) return true;
        auto n = detail::prime_order_normal(g);
        if (!n) return false;
        if (testing::fault_is(Fault::SupersolubleSkipsQuotient)) return true;
        return in_formation(quotient_group(g, *n).table, FormationTag::Supersoluble);
      });
    case FormationTag::WSupersoluble:
      // w-supersoluble groups have Sylow towers, so insoluble input is out
      // before any chain search.
      return detail::memoized(g, slot, [&] {
        if (!in_formation(g, FormationTag::Soluble)) return false;
        if (testing::fault_is(Fault::WSupersolubleMeansSoluble)) return true;
        const auto& lat = g.lattice();
        const auto marks = psn_marks_within(lat, lat.top());
        for (auto p : g.primes())
          if (!marks[lat.index_of(sylow(g, p).members)]) return false;
        return true;
      });
    case FormationTag::Metanilpotent:
      return detail::memoized(g, slot, [&] {
        return in_formation(quotient_group(g, fitting(g)).table, FormationTag::Nilpotent);
      });
  }
  throw GroupError(ErrorCode::UnsupportedFormation, "unknown formation tag");
}

/// w-supersolubility of a subgroup read off the parent lattice: the Sylow
/// subgroups of H must be P-subnormal in H, and the interval below H in
/// the parent lattice is H's own lattice.
inline bool subgroup_is_w_supersoluble(const GroupTable& g, std::size_t lattice_index) {
  const auto& lat = g.lattice();
  const auto& h = lat[lattice_index];
  if (!is_soluble_subgroup(g, h)) return false;
  if (testing::fault_is(testing::Fault::WSupersolubleMeansSoluble)) return true;
  const auto marks = psn_marks_within(lat, lattice_index);
  const auto emb = subgroup_table(g, h.members);
  for (auto p : prime_divisors(h.order())) {
    const auto local = sylow(emb.table, p);
    if (!marks[lat.index_of(emb.to_parent(local.members, g.order()))]) return false;
  }
  return true;
}

enum class PKind { PClosed, PNilpotent };

inline bool p_predicate(const GroupTable& g, std::uint32_t p, PKind kind) {
  if (!is_prime(p)) throw GroupError(ErrorCode::InvalidParameter, "p must be prime");
  if (g.order() % p) return true;
  if (kind == PKind::PClosed) return is_normal(g, sylow(g, p));
  // A normal Hall p'-subgroup contains every p'-element, so it exists iff
  // the p'-elements number exactly |G|_{p'} and are closed.
  const std::size_t hall = g.order() / p_part(g.order(), p);
  ElementSet pprime(g.order());
  for (Element x = 0; x < g.order(); ++x)
    if (g.element_order(x) % p) pprime.set(x);
  if (pprime.count() != hall) return false;
  bool closed = true;
  pprime.for_each([&](Element x) {
    if (!closed) return;
    pprime.for_each([&](Element y) {
      if (closed && !pprime.test(g.mul(x, y))) closed = false;
    });
  });
  return closed;
}

/// Every subgroup of the derived subgroup is normal in G.
inline bool is_siding(const GroupTable& g) {
  return detail::memoized(g, detail::kSlotSiding, [&] {
    if (testing::fault_is(testing::Fault::SidingAlwaysTrue)) return true;
    const auto d = derived(g);
    const auto& lat = g.lattice();
    for (std::size_t i = 0; i < lat.size() && lat.order_of(i) <= d.order(); ++i)
      if (lat[i].members.is_subset_of(d.members) && !lat.normal(i)) return false;
    return true;
  });
}

/// The Sylow subgroup for the largest prime is normal, and so on in the quotient.
inline bool has_supersoluble_sylow_tower(const GroupTable& g) {
  return detail::memoized(g, detail::kSlotSylowTower, [&] {
    if (g.order() == 1) return true;
    const auto p = g.primes().back();
    const auto s = sylow(g, p);
    if (!is_normal(g, s)) return false;
    return has_supersoluble_sylow_tower(quotient_group(g, s).table);
  });
}

struct PrimitiveDecomposition {
  bool primitive = false;
  std::optional<Subgroup> primitivator;
  std::optional<Subgroup> unique_minimal_normal;
  /// For soluble primitive groups: Phi(G)=1, F(G)=C_G(F(G))=O_p(G) is the
  /// unique minimal normal subgroup, elementary abelian, G = F(G) x| M, O_p(M)=1.
  bool soluble_package_checked = false;
  bool soluble_package_holds = false;
};

inline PrimitiveDecomposition primitive_decomposition(const GroupTable& g) {
  PrimitiveDecomposition r;
  const auto& lat = g.lattice();
  for (std::size_t m : lat.maximal_subgroups(lat.top())) {
    if (core(g, lat[m]).order() == 1) {
      r.primitive = true;
      r.primitivator = lat[m];
      break;
    }
  }
  if (!r.primitive || !is_soluble(g)) return r;
  r.soluble_package_checked = true;
  const auto mins = select_subgroups(g, SubgroupSelection::MinimalNormal);
  if (mins.size() == 1) r.unique_minimal_normal = mins.front();
  const auto f = fitting(g);
  const auto& m = *r.primitivator;
  bool ok = mins.size() == 1 && mins.front() == f;
  ok = ok && frattini(g).order() == 1;
  ok = ok && centralizer(g, f) == f;
  const auto primes = prime_divisors(f.order());
  ok = ok && primes.size() == 1;
  if (ok) {
    const auto p = primes.front();
    ok = o_p(g, p) == f;
    const auto fe = subgroup_table(g, f.members);
    ok = ok && fe.table.is_abelian() && fe.table.exponent() == p;
    ok = ok && f.members.intersection_count(m.members) == 1 && f.order() * m.order() == g.order();
    const auto me = subgroup_table(g, m.members);
    ok = ok && o_p(me.table, p).order() == 1;
  }
  r.soluble_package_holds = ok;
  return r;
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

struct ClassificationReport {
  std::map<FormationTag, bool> formations;
  std::map<std::uint32_t, std::pair<bool, bool>> p_closed_nilpotent;
  bool siding = false;
  bool supersoluble_sylow_tower = false;
  PrimitiveDecomposition primitivity;

  /// Fixed-order text block, one predicate per line.
  std::string render_text() const {
    std::ostringstream os;
    for (auto f : kAllFormations) os << to_string(f) << ' ' << (formations.at(f) ? "true" : "false") << '\n';
    for (auto [p, v] : p_closed_nilpotent) {
      os << "p" << p << "_closed " << (v.first ? "true" : "false") << '\n';
      os << "p" << p << "_nilpotent " << (v.second ? "true" : "false") << '\n';
    }
    os << "Siding " << (siding ? "true" : "false") << '\n';
    os << "SupersolubleSylowTower " << (supersoluble_sylow_tower ? "true" : "false") << '\n';
    os << "Primitive " << (primitivity.primitive ? "true" : "false") << '\n';
    if (primitivity.primitivator) os << "PrimitivatorOrder " << primitivity.primitivator->order() << '\n';
    if (primitivity.unique_minimal_normal) os << "UniqueMinimalNormalOrder " << primitivity.unique_minimal_normal->order() << '\n';
    return os.str();
  }

  /// key=value form for structured reports.
  std::string render_structured(std::string_view group_name) const {
    std::ostringstream os;
    auto b = [](bool v) { return v ? "true" : "false"; };
    for (auto f : kAllFormations) os << "group=" << group_name << " predicate=" << to_string(f) << " value=" << b(formations.at(f)) << '\n';
    for (auto [p, v] : p_closed_nilpotent) {
      os << "group=" << group_name << " predicate=p_closed p=" << p << " value=" << b(v.first) << '\n';
      os << "group=" << group_name << " predicate=p_nilpotent p=" << p << " value=" << b(v.second) << '\n';
    }
    os << "group=" << group_name << " predicate=Siding value=" << b(siding) << '\n';
    os << "group=" << group_name << " predicate=SupersolubleSylowTower value=" << b(supersoluble_sylow_tower) << '\n';
    os << "group=" << group_name << " predicate=Primitive value=" << b(primitivity.primitive) << '\n';
    return os.str();
  }
};

inline ClassificationReport classify(const GroupTable& g) {
  ClassificationReport r;
  for (auto f : kAllFormations) r.formations[f] = in_formation(g, f);
  for (auto p : g.primes()) r.p_closed_nilpotent[p] = {p_predicate(g, p, PKind::PClosed), p_predicate(g, p, PKind::PNilpotent)};
  r.siding = is_siding(g);
  r.supersoluble_sylow_tower = has_supersoluble_sylow_tower(g);
  r.primitivity = primitive_decomposition(g);
  return r;
}

}  // namespace wsu
