#pragma once

// Library-versus-oracle comparisons shared by the unit tests and the
// acceptance binary. Each returns the first mismatch, if any.

#include <optional>
#include <string>

#include "oracles.hpp"
#include "wsu/wsu.hpp"

namespace oracle {

inline Set as_set(const wsu::Subgroup& s) { return s.members.elements(); }

inline std::optional<std::string> compare_lattice(const GroupTable& g) {
  const auto brute = all_subgroups_by_subsets(g);
  std::vector<Set> lib;
  for (const auto& s : g.lattice().subgroups()) lib.push_back(as_set(s));
  std::sort(lib.begin(), lib.end());
  if (lib == brute) return std::nullopt;
  return "lattice has " + std::to_string(lib.size()) + " subgroups, brute force finds " + std::to_string(brute.size());
}

/// Class membership of a quotient: the cheap classes by definition, the
/// rest through the classifier (checked against definitions separately).
inline bool quotient_in(const GroupTable& q, wsu::FormationTag f) {
  using wsu::FormationTag;
  switch (f) {
    case FormationTag::Abelian: return abelian(q);
    case FormationTag::Nilpotent: return nilpotent(q);
    case FormationTag::Soluble: return soluble(q);
    case FormationTag::Metanilpotent: return metanilpotent(q);
    default: return wsu::in_formation(q, f);
  }
}

/// Every residual against the smallest normal subgroup whose quotient is in
/// the class; normal subgroups and quotients are built once per group.
inline std::optional<std::string> compare_residuals(const GroupTable& g) {
  const auto normals = normal_subgroups(g);
  std::vector<std::vector<bool>> in(normals.size());
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const auto q = quotient(g, normals[i]);
    for (auto f : wsu::kAllFormations) in[i].push_back(quotient_in(q, f));
  }
  for (std::size_t k = 0; k < wsu::kAllFormations.size(); ++k) {
    const auto f = wsu::kAllFormations[k];
    std::optional<Set> smallest;
    for (std::size_t i = 0; i < normals.size(); ++i)
      if (in[i][k] && (!smallest || normals[i].size() < smallest->size())) smallest = normals[i];
    for (std::size_t i = 0; i < normals.size() && smallest; ++i)
      if (in[i][k] && !subset(*smallest, normals[i])) return std::string(wsu::to_string(f)) + ": minimal qualifying normal subgroups are not unique";
    const auto lib = as_set(wsu::residual(g, f).residual);
    if (!smallest || *smallest != lib)
      return std::string(wsu::to_string(f)) + ": residual order " + std::to_string(lib.size()) + ", scan finds " +
             (smallest ? std::to_string(smallest->size()) : std::string("none"));
  }
  return std::nullopt;
}

inline std::optional<std::string> compare_psn_marks(const GroupTable& g) {
  const auto marks = wsu::psn_marks(g);
  const auto& lat = g.lattice();
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (marks[i] != has_prime_index_chain(g, as_set(lat[i])))
      return "subgroup of order " + std::to_string(lat.order_of(i)) + " marked " + (marks[i] ? "true" : "false");
  return std::nullopt;
}

inline std::optional<std::string> compare_classes(const GroupTable& g) {
  const auto subs = all_subgroups_by_subsets(g);
  auto mismatch = [](const char* name, bool lib) { return std::string(name) + " classifier says " + (lib ? "true" : "false"); };
  if (wsu::in_formation(g, wsu::FormationTag::Abelian) != abelian(g)) return mismatch("abelian", wsu::in_formation(g, wsu::FormationTag::Abelian));
  if (wsu::is_nilpotent(g) != nilpotent(g)) return mismatch("nilpotent", wsu::is_nilpotent(g));
  if (wsu::is_soluble(g) != soluble(g)) return mismatch("soluble", wsu::is_soluble(g));
  if (wsu::is_supersoluble(g) != supersoluble(g, subs)) return mismatch("supersoluble", wsu::is_supersoluble(g));
  if (wsu::is_w_supersoluble(g) != w_supersoluble(g, subs)) return mismatch("w-supersoluble", wsu::is_w_supersoluble(g));
  const bool as = wsu::in_formation(g, wsu::FormationTag::AbelianSylow);
  if (as != abelian_sylow(g, subs)) return mismatch("abelian Sylow", as);
  const bool mn = wsu::in_formation(g, wsu::FormationTag::Metanilpotent);
  if (mn != metanilpotent(g)) return mismatch("metanilpotent", mn);
  return std::nullopt;
}

}  // namespace oracle
