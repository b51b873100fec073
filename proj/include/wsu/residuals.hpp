#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "chains.hpp"
#include "classify.hpp"
#include "lattice.hpp"

namespace wsu {

struct ResidualResult {
  FormationTag formation = FormationTag::Nilpotent;
  Subgroup residual;
  /// Inclusion-minimal normal N with G/N in the formation.
  std::vector<Subgroup> witness_normals;
};

/// G/N in F, short-circuiting the trivial and whole-group cases.
inline bool quotient_in(const GroupTable& g, const Subgroup& n, FormationTag f) {
  if (n.order() == g.order()) return true;
  if (n.order() == 1) return in_formation(g, f);
  return in_formation(quotient_group(g, n).table, f);
}

/// G^F: the intersection of the normal subgroups N with G/N in F.
/// Normal subgroups are scanned by ascending order; any N containing a
/// witness already found is a witness by quotient closure and is skipped.
inline ResidualResult residual(const GroupTable& g, FormationTag f) {
  const auto& lat = g.lattice();
  ResidualResult r;
  r.formation = f;
  std::vector<std::size_t> minimal;
  for (std::size_t i : lat.normal_indices()) {
    bool above = false;
    for (std::size_t w : minimal)
      if (lat.order_of(i) % lat.order_of(w) == 0 && lat[w].members.is_subset_of(lat[i].members)) {
        above = true;
        break;
      }
    if (above) continue;
    if (quotient_in(g, lat[i], f)) minimal.push_back(i);
  }
  ElementSet acc = ElementSet::full(g.order());
  for (std::size_t w : minimal) {
    acc &= lat[w].members;
    r.witness_normals.push_back(lat[w]);
  }
  r.residual = lat[lat.index_of(acc)];
  if (!quotient_in(g, r.residual, f))
    throw GroupError(ErrorCode::FormationAssertionFailed,
                     "quotient by the " + std::string(to_string(f)) + "-residual is not in the class");
  return r;
}

/// Residual of a subgroup H (computed in H's own table), as a subgroup of G.
inline Subgroup subgroup_residual(const GroupTable& g, const Subgroup& h, FormationTag f) {
  const auto emb = subgroup_table(g, h.members);
  const auto local = residual(emb.table, f).residual;
  return as_subgroup(g, emb.to_parent(local.members, g.order()));
}

/// (G^A)^N: the nilpotent residual of the AbelianSylow-residual, the latter
/// re-tabled as a standalone group.
inline Subgroup nilpotent_residual_of_abelian_sylow_residual(const GroupTable& g) {
  return subgroup_residual(g, residual(g, FormationTag::AbelianSylow).residual, FormationTag::Nilpotent);
}

/// Smallest normal N with (G/N)^A nilpotent, by direct scan over normal
/// subgroups (the residual for the product class NA).
inline Subgroup na_residual_by_scan(const GroupTable& g) {
  const auto& lat = g.lattice();
  auto in_na = [&](const GroupTable& q) {
    const auto ra = residual(q, FormationTag::AbelianSylow).residual;
    return in_formation(subgroup_table(q, ra.members).table, FormationTag::Nilpotent);
  };
  ElementSet acc = ElementSet::full(g.order());
  for (std::size_t i : lat.normal_indices()) {
    const bool member = lat.order_of(i) == g.order() || in_na(lat.order_of(i) == 1 ? g : quotient_group(g, lat[i]).table);
    if (member) acc &= lat[i].members;
  }
  return lat[lat.index_of(acc)];
}

// ---------------------------------------------------------------------------
// Factorized groups: the residual identity and its two corollaries
// ---------------------------------------------------------------------------

struct Theorem1Report {
  bool product_is_group = false;
  bool a_w_supersoluble = false;
  bool b_w_supersoluble = false;
  bool a_p_subnormal = false;
  bool b_p_subnormal = false;
  std::vector<std::string> missing_hypotheses;

  Subgroup wsu_residual;
  Subgroup na_residual;
  bool identity_holds = false;

  std::size_t clause2_checks = 0;
  std::size_t clause2_violations = 0;
  std::optional<std::string> clause2_counterexample;

  std::size_t a_quotient_order = 0;  // |A / A^A|
  std::size_t b_quotient_order = 0;
  bool coprime = false;
  bool g_w_supersoluble = false;
  bool clause3_holds = true;

  bool hypotheses_hold() const { return missing_hypotheses.empty(); }
  bool all_hold() const { return identity_holds && clause2_violations == 0 && clause3_holds; }

  std::string render_line(std::string_view name) const {
    return "G=" + std::string(name) + " |G^{wU}|=" + std::to_string(wsu_residual.order()) +
           " |(G^A)^N|=" + std::to_string(na_residual.order()) + " verdict=" + (identity_holds ? "equal" : "UNEQUAL");
  }
};

/// Evaluates every clause; hypothesis failures are recorded, not thrown.
inline Theorem1Report theorem1_report(const GroupTable& g, const Subgroup& a, const Subgroup& b) {
  Theorem1Report r;
  const auto& lat = g.lattice();
  r.product_is_group = product_size(a, b) == g.order();
  const auto ea = subgroup_table(g, a.members), eb = subgroup_table(g, b.members);
  r.a_w_supersoluble = is_w_supersoluble(ea.table);
  r.b_w_supersoluble = is_w_supersoluble(eb.table);
  const auto marks = psn_marks(g);
  r.a_p_subnormal = marks[lat.index_of(a.members)];
  r.b_p_subnormal = marks[lat.index_of(b.members)];
  if (!r.product_is_group) r.missing_hypotheses.emplace_back("G=AB");
  if (!r.a_w_supersoluble) r.missing_hypotheses.emplace_back("A w-supersoluble");
  if (!r.b_w_supersoluble) r.missing_hypotheses.emplace_back("B w-supersoluble");
  if (!r.a_p_subnormal) r.missing_hypotheses.emplace_back("A P-subnormal");
  if (!r.b_p_subnormal) r.missing_hypotheses.emplace_back("B P-subnormal");

  r.wsu_residual = residual(g, FormationTag::WSupersoluble).residual;
  r.na_residual = nilpotent_residual_of_abelian_sylow_residual(g);
  r.identity_holds = r.wsu_residual == r.na_residual;

  // Nilpotent normal subgroups are exactly the normal subgroups inside F(G).
  const auto fit = fitting(g);
  for (std::size_t n : lat.normal_indices()) {
    if (!lat[n].members.is_subset_of(fit.members)) continue;
    for (const auto* factor : {&a, &b}) {
      ++r.clause2_checks;
      const auto prod = product_set(g, factor->members, lat[n].members);
      if (!subgroup_is_w_supersoluble(g, lat.index_of(prod))) {
        ++r.clause2_violations;
        if (!r.clause2_counterexample)
          r.clause2_counterexample = std::string(factor == &a ? "A" : "B") + "N not w-supersoluble for N=" + format_members(lat[n].members);
      }
    }
  }

  r.a_quotient_order = a.order() / residual(ea.table, FormationTag::AbelianSylow).residual.order();
  r.b_quotient_order = b.order() / residual(eb.table, FormationTag::AbelianSylow).residual.order();
  r.coprime = std::gcd(r.a_quotient_order, r.b_quotient_order) == 1;
  r.g_w_supersoluble = is_w_supersoluble(g);
  r.clause3_holds = !r.coprime || r.g_w_supersoluble;
  return r;
}

/// As theorem1_report, but a missing hypothesis is an error naming it.
inline Theorem1Report theorem1_identity_check(const GroupTable& g, const Subgroup& a, const Subgroup& b) {
  auto r = theorem1_report(g, a, b);
  if (!r.hypotheses_hold()) throw GroupError(ErrorCode::HypothesisNotMet, r.missing_hypotheses.front());
  return r;
}

}  // namespace wsu
