#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "chains.hpp"
#include "classify.hpp"
#include "isomorphism.hpp"
#include "residuals.hpp"

namespace wsu {

// ---------------------------------------------------------------------------
// Structural helpers shared by the property bundles
// ---------------------------------------------------------------------------

inline bool subgroup_isomorphic_to(const GroupTable& g, const Subgroup& h, const GroupTable& model) {
  if (h.order() != model.order()) return false;
  return is_isomorphic(subgroup_table(g, h.members).table, model).isomorphic;
}

inline std::vector<std::size_t> subgroups_of_order(const LatticeCache& lat, std::size_t order) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (lat.order_of(i) == order) out.push_back(i);
  return out;
}

/// A prime-index chain from lattice entry `sub` to G passing through
/// subgroups of exactly the given orders (first |H|, last |G|).
inline std::optional<ChainWitness> chain_through_orders(const GroupTable& g, std::size_t sub, const std::vector<std::size_t>& orders) {
  const auto& lat = g.lattice();
  const auto marks = psn_marks(g);
  if (orders.empty() || lat.order_of(sub) != orders.front() || orders.back() != g.order()) return std::nullopt;
  std::vector<std::size_t> path{sub};
  std::function<bool(std::size_t)> dfs = [&](std::size_t k) {
    const std::size_t cur = path.back();
    if (k + 1 == orders.size()) return cur == lat.top();
    for (std::size_t c : lat.covers(cur)) {
      if (!marks[c] || lat.order_of(c) != orders[k + 1] || !is_prime(lat.order_of(c) / lat.order_of(cur))) continue;
      path.push_back(c);
      if (dfs(k + 1)) return true;
      path.pop_back();
    }
    return false;
  };
  if (!dfs(0)) return std::nullopt;
  ChainWitness w;
  for (std::size_t i : path) w.chain.push_back(lat[i]);
  return w;
}

inline bool is_cyclic(const GroupTable& g) {
  for (auto o : g.element_orders())
    if (o == g.order()) return true;
  return false;
}

/// A cyclic normal N with G/N cyclic.
inline bool is_metacyclic(const GroupTable& g) {
  const auto& lat = g.lattice();
  for (std::size_t i : lat.normal_indices()) {
    if (!is_cyclic(subgroup_table(g, lat[i].members).table)) continue;
    if (is_cyclic(quotient_group(g, lat[i]).table)) return true;
  }
  return false;
}

/// Every subnormal subgroup is normal.
inline bool is_t_group(const GroupTable& g) {
  const auto& lat = g.lattice();
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (!lat.normal(i) && is_subnormal(g, lat[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// The named example groups
// ---------------------------------------------------------------------------

enum class PaperGroupId { g18_3, g24_8, g72_40, g144_115, g216_157, a4, e25_z3 };

inline constexpr std::array<PaperGroupId, 7> kAllPaperGroups = {PaperGroupId::g18_3,    PaperGroupId::g24_8, PaperGroupId::g72_40,
                                                                 PaperGroupId::g144_115, PaperGroupId::g216_157, PaperGroupId::a4,
                                                                 PaperGroupId::e25_z3};

inline std::string_view to_string(PaperGroupId id) {
  switch (id) {
    case PaperGroupId::g18_3: return "g18_3";
    case PaperGroupId::g24_8: return "g24_8";
    case PaperGroupId::g72_40: return "g72_40";
    case PaperGroupId::g144_115: return "g144_115";
    case PaperGroupId::g216_157: return "g216_157";
    case PaperGroupId::a4: return "a4";
    case PaperGroupId::e25_z3: return "e25_z3";
  }
  return "?";
}

inline std::optional<PaperGroupId> parse_paper_group(std::string_view s) {
  for (auto id : kAllPaperGroups)
    if (to_string(id) == s) return id;
  return std::nullopt;
}

inline std::size_t paper_group_order(PaperGroupId id) {
  switch (id) {
    case PaperGroupId::g18_3: return 18;
    case PaperGroupId::g24_8: return 24;
    case PaperGroupId::g72_40: return 72;
    case PaperGroupId::g144_115: return 144;
    case PaperGroupId::g216_157: return 216;
    case PaperGroupId::a4: return 12;
    case PaperGroupId::e25_z3: return 75;
  }
  return 0;
}

struct BundleCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// A built example group with its evaluated property bundle and the
/// factor subgroups the bundle located.
struct PaperExample {
  PaperGroupId id = PaperGroupId::a4;
  GroupTable group;
  std::string construction;
  std::vector<BundleCheck> checks;
  std::optional<Subgroup> a, b;
  std::optional<ChainWitness> a_chain, b_chain;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }
  const BundleCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

namespace detail {

inline void check(PaperExample& ex, std::string name, bool ok, std::string detail = {}) {
  ex.checks.push_back({std::move(name), ok, std::move(detail)});
}

inline std::string orders_of(const Subgroup& a, const Subgroup& b) {
  return "|A|=" + std::to_string(a.order()) + " |B|=" + std::to_string(b.order());
}

/// Chooses (A, B) from the candidate lists: the first pair meeting every
/// predicate, else the pair meeting the most (so reports can show what failed).
struct PairPredicate {
  std::string name;
  std::function<bool(std::size_t, std::size_t)> test;
};

inline std::pair<std::size_t, std::size_t> choose_pair(const std::vector<std::size_t>& as, const std::vector<std::size_t>& bs,
                                                       const std::vector<PairPredicate>& preds, std::vector<bool>& outcome) {
  std::pair<std::size_t, std::size_t> best{as.empty() ? 0 : as.front(), bs.empty() ? 0 : bs.front()};
  std::size_t best_score = 0;
  outcome.assign(preds.size(), false);
  for (std::size_t a : as)
    for (std::size_t b : bs) {
      std::vector<bool> res;
      std::size_t score = 0;
      for (const auto& p : preds) {
        // Predicates are ordered cheap-first; stop at the first failure.
        const bool ok = p.test(a, b);
        res.push_back(ok);
        if (!ok) break;
        ++score;
      }
      res.resize(preds.size(), false);
      if (score == preds.size()) {
        outcome = res;
        return {a, b};
      }
      if (score > best_score) {
        best_score = score;
        best = {a, b};
        outcome = res;
      }
    }
  return best;
}

inline void record_pair(PaperExample& ex, const LatticeCache& lat, std::pair<std::size_t, std::size_t> ab,
                        const std::vector<PairPredicate>& preds, const std::vector<bool>& outcome, bool found) {
  if (found) {
    ex.a = lat[ab.first];
    ex.b = lat[ab.second];
  }
  for (std::size_t i = 0; i < preds.size(); ++i)
    check(ex, preds[i].name, found && outcome[i], found ? orders_of(lat[ab.first], lat[ab.second]) : "no candidate subgroups");
}

inline void evaluate_pair(PaperExample& ex, const std::vector<std::size_t>& as, const std::vector<std::size_t>& bs,
                          const std::vector<PairPredicate>& preds) {
  const auto& lat = ex.group.lattice();
  std::vector<bool> outcome;
  const bool any = !as.empty() && !bs.empty();
  const auto ab = any ? choose_pair(as, bs, preds, outcome) : std::pair<std::size_t, std::size_t>{0, 0};
  record_pair(ex, lat, ab, preds, outcome, any);
}

inline std::vector<std::size_t> isomorphic_subgroups(const GroupTable& g, const GroupTable& model) {
  const auto& lat = g.lattice();
  std::vector<std::size_t> out;
  for (std::size_t i : subgroups_of_order(lat, model.order()))
    if (subgroup_isomorphic_to(g, lat[i], model)) out.push_back(i);
  return out;
}

}  // namespace detail

/// Evaluates the property bundle of `id` on a candidate group.
inline PaperExample evaluate_bundle(PaperGroupId id, const GroupTable& g, std::string construction = {}) {
  using detail::check;
  using detail::PairPredicate;
  PaperExample ex;
  ex.id = id;
  ex.group = g;
  ex.construction = std::move(construction);
  const std::size_t n = g.order();
  check(ex, "order=" + std::to_string(paper_group_order(id)), n == paper_group_order(id), "order " + std::to_string(n));
  if (n != paper_group_order(id)) return ex;
  const auto& lat = g.lattice();
  auto marks = psn_marks(g);
  auto psn = [&](std::size_t i) { return static_cast<bool>(marks[i]); };
  auto product_is_g = [&](std::size_t a, std::size_t b) { return product_size(lat[a], lat[b]) == n; };
  auto wsu_sub = [&](std::size_t i) { return subgroup_is_w_supersoluble(g, i); };
  auto super_sub = [&](std::size_t i) { return is_supersoluble(subgroup_table(g, lat[i].members).table); };

  switch (id) {
    case PaperGroupId::a4: {
      check(ex, "AbelianSylow", in_formation(g, FormationTag::AbelianSylow));
      check(ex, "not WSupersoluble", !is_w_supersoluble(g));
      const auto v4 = detail::isomorphic_subgroups(g, elementary_abelian(2, 2));
      const auto z3 = subgroups_of_order(lat, 3);
      detail::evaluate_pair(ex, v4, z3,
                            {{"A~E4 B~Z3 AB=G", product_is_g},
                             {"A supersoluble", [&](std::size_t a, std::size_t) { return super_sub(a); }},
                             {"A P-subnormal", [&](std::size_t a, std::size_t) { return psn(a); }},
                             {"B nilpotent of index 4", [&](std::size_t, std::size_t b) { return n / lat.order_of(b) == 4; }},
                             {"B not P-subnormal", [&](std::size_t, std::size_t b) { return !psn(b); }}});
      const auto rw = residual(g, FormationTag::WSupersoluble).residual;
      const auto rna = nilpotent_residual_of_abelian_sylow_residual(g);
      check(ex, "residual(wU)=V4", ex.a && rw == *ex.a, "order " + std::to_string(rw.order()));
      check(ex, "(G^A)^N trivial", rna.order() == 1, "order " + std::to_string(rna.order()));
      break;
    }
    case PaperGroupId::e25_z3: {
      check(ex, "not WSupersoluble", !is_w_supersoluble(g));
      const auto e25 = detail::isomorphic_subgroups(g, elementary_abelian(5, 2));
      const auto z3 = subgroups_of_order(lat, 3);
      detail::evaluate_pair(ex, e25, z3,
                            {{"A~E25 B~Z3 AB=G", product_is_g},
                             {"A WSupersoluble", [&](std::size_t a, std::size_t) { return wsu_sub(a); }},
                             {"A P-subnormal", [&](std::size_t a, std::size_t) { return psn(a); }},
                             {"B nilpotent of index 25", [&](std::size_t, std::size_t b) { return n / lat.order_of(b) == 25; }}});
      break;
    }
    case PaperGroupId::g18_3: {
      const auto e9 = detail::isomorphic_subgroups(g, elementary_abelian(3, 2));
      const auto z2 = subgroups_of_order(lat, 2);
      detail::evaluate_pair(ex, e9, z2,
                            {{"A~E9 B~Z2 AB=G", product_is_g},
                             {"A P-subnormal", [&](std::size_t a, std::size_t) { return psn(a); }},
                             {"B P-subnormal", [&](std::size_t, std::size_t b) { return psn(b); }},
                             {"not mutually sn-permutable",
                              [&](std::size_t a, std::size_t b) { return !mutually_sn_permutable(g, lat[a], lat[b]).holds; }}});
      if (ex.a) ex.a_chain = p_subnormal_witness(g, *ex.a);
      if (ex.b) ex.b_chain = p_subnormal_witness(g, *ex.b);
      break;
    }
    case PaperGroupId::g24_8: {
      check(ex, "siding", is_siding(g));
      check(ex, "supersoluble", is_supersoluble(g));
      const auto p2 = sylow(g, 2);
      check(ex, "Sylow 2-subgroup nonabelian", !subgroup_table(g, p2.members).table.is_abelian());
      check(ex, "not metacyclic", !is_metacyclic(g));
      check(ex, "not a t-group", !is_t_group(g));
      break;
    }
    case PaperGroupId::g72_40: {
      check(ex, "not WSupersoluble", !is_w_supersoluble(g));
      const auto p2 = sylow(g, 2);
      const auto& maxes = lat.maximal_subgroups(lat.top());
      const auto ip2 = lat.index_of(p2.members);
      check(ex, "Sylow 2-subgroup maximal", std::find(maxes.begin(), maxes.end(), ip2) != maxes.end());
      const auto z3s3 = detail::isomorphic_subgroups(g, direct_product(cyclic(3), symmetric(3)));
      const std::vector<std::size_t> whole{lat.top()};
      detail::evaluate_pair(ex, z3s3, whole,
                            {{"A~Z3xS3 of index 4", [&](std::size_t a, std::size_t) { return n / lat.order_of(a) == 4; }},
                             {"A supersoluble", [&](std::size_t a, std::size_t) { return super_sub(a); }},
                             {"A P-subnormal", [&](std::size_t a, std::size_t) { return psn(a); }}});
      ex.b.reset();
      if (ex.a) ex.a_chain = p_subnormal_witness(g, *ex.a);
      break;
    }
    case PaperGroupId::g144_115: {
      check(ex, "not WSupersoluble", !is_w_supersoluble(g));
      const auto d12 = detail::isomorphic_subgroups(g, dihedral(12));
      const auto z12 = detail::isomorphic_subgroups(g, cyclic(12));
      const std::vector<std::size_t> pattern{12, 36, 72, 144};
      detail::evaluate_pair(
          ex, d12, z12,
          {{"A~D12 B~Z12 AB=G", product_is_g},
           {"A WSupersoluble", [&](std::size_t a, std::size_t) { return wsu_sub(a); }},
           {"B WSupersoluble", [&](std::size_t, std::size_t b) { return wsu_sub(b); }},
           {"A P-subnormal", [&](std::size_t a, std::size_t) { return psn(a); }},
           {"B P-subnormal", [&](std::size_t, std::size_t b) { return psn(b); }},
           {"A chain 12<36<72<144", [&](std::size_t a, std::size_t) { return chain_through_orders(g, a, pattern).has_value(); }},
           {"B chain 12<36<72<144", [&](std::size_t, std::size_t b) { return chain_through_orders(g, b, pattern).has_value(); }},
           {"B not normal", [&](std::size_t, std::size_t b) { return !lat.normal(b); }}});
      if (ex.a) ex.a_chain = chain_through_orders(g, lat.index_of(ex.a->members), pattern);
      if (ex.b) ex.b_chain = chain_through_orders(g, lat.index_of(ex.b->members), pattern);
      if (ex.a && ex.b) {
        const auto rw = residual(g, FormationTag::WSupersoluble).residual;
        const auto rna = nilpotent_residual_of_abelian_sylow_residual(g);
        check(ex, "residual(wU)=(G^A)^N nontrivial", rw == rna && rw.order() > 1,
              "|G^wU|=" + std::to_string(rw.order()) + " |(G^A)^N|=" + std::to_string(rna.order()));
      }
      break;
    }
    case PaperGroupId::g216_157: {
      check(ex, "not WSupersoluble", !is_w_supersoluble(g));
      const auto s3s3 = detail::isomorphic_subgroups(g, direct_product(symmetric(3), symmetric(3)));
      const auto z3z3s3 = detail::isomorphic_subgroups(g, direct_product(elementary_abelian(3, 2), symmetric(3)));
      detail::evaluate_pair(ex, s3s3, z3z3s3,
                            {{"A~S3xS3 B~Z3xZ3xS3 AB=G", product_is_g},
                             {"A supersoluble", [&](std::size_t a, std::size_t) { return super_sub(a); }},
                             {"A P-subnormal", [&](std::size_t a, std::size_t) { return psn(a); }},
                             {"B subnormal", [&](std::size_t, std::size_t b) { return is_subnormal(g, lat[b]); }},
                             {"B siding", [&](std::size_t, std::size_t b) { return is_siding(subgroup_table(g, lat[b].members).table); }},
                             {"B not normal", [&](std::size_t, std::size_t b) { return !lat.normal(b); }}});
      if (ex.a) ex.a_chain = p_subnormal_witness(g, *ex.a);
      break;
    }
  }
  return ex;
}

namespace detail {

struct Candidate {
  std::string construction;
  std::function<GroupTable()> build;
};

inline PaperExample search_candidates(PaperGroupId id, const std::vector<Candidate>& cands,
                                      const std::function<bool(const GroupTable&)>& prefilter = {}) {
  std::optional<PaperExample> last;
  for (const auto& c : cands) {
    GroupTable g = c.build();
    if (prefilter && !prefilter(g)) continue;
    auto ex = evaluate_bundle(id, g, c.construction);
    if (ex.passed()) return ex;
    if (!last) last = std::move(ex);
  }
  std::string why = "no candidate for " + std::string(to_string(id)) + " passes its property bundle";
  if (last && last->first_failure()) why += " (first candidate failed: " + last->first_failure()->name + ")";
  throw GroupError(ErrorCode::NoCandidatePassesBundle, why);
}

inline std::vector<Candidate> semidirect_candidates(const GroupTable& n, const std::string& n_expr, const GroupTable& h,
                                                    const std::string& h_expr, const std::vector<std::size_t>* only = nullptr) {
  auto acts = std::make_shared<std::vector<ActionSpec>>(all_actions(n, h));
  std::vector<Candidate> out;
  for (std::size_t k = 0; k < acts->size(); ++k) {
    if (only && std::find(only->begin(), only->end(), k) == only->end()) continue;
    out.push_back({"semidirect(" + n_expr + "," + h_expr + ",action#" + std::to_string(k) + ")",
                   [n, h, acts, k] { return semidirect_product(n, h, (*acts)[k]); }});
  }
  return out;
}

inline bool has_element_of_order(const GroupTable& g, std::uint32_t o) {
  for (auto x : g.element_orders())
    if (x == o) return true;
  return false;
}

}  // namespace detail

inline PaperExample paper_example(PaperGroupId id);

namespace detail {

inline PaperExample build_paper_example(PaperGroupId id) {
  switch (id) {
    case PaperGroupId::a4: return search_candidates(id, {{"alternating:4", [] { return alternating(4); }}});
    case PaperGroupId::g18_3:
      return search_candidates(id, semidirect_candidates(symmetric(3), "symmetric:3", cyclic(3), "cyclic:3"));
    case PaperGroupId::g24_8:
      return search_candidates(id, semidirect_candidates(direct_product(cyclic(6), cyclic(2)), "product(cyclic:6,cyclic:2)", cyclic(2),
                                                         "cyclic:2"));
    case PaperGroupId::g72_40:
      return search_candidates(id, semidirect_candidates(direct_product(symmetric(3), symmetric(3)), "product(symmetric:3,symmetric:3)",
                                                         cyclic(2), "cyclic:2"));
    case PaperGroupId::e25_z3:
      return search_candidates(id, semidirect_candidates(elementary_abelian(5, 2), "elementary:5:2", cyclic(3), "cyclic:3"));
    case PaperGroupId::g216_157: {
      const auto inner = paper_example(PaperGroupId::g72_40);
      return search_candidates(id, {{"product(cyclic:3," + inner.construction + ")",
                                     [g = inner.group] { return direct_product(cyclic(3), g); }}});
    }
    case PaperGroupId::g144_115: {
      // Inner block E9 x| Z4, one representative per isomorphism type.
      const auto e9 = elementary_abelian(3, 2);
      const auto z4 = cyclic(4);
      const auto inner_acts = all_actions(e9, z4);
      std::vector<std::pair<std::size_t, GroupTable>> inner;
      for (std::size_t k = 0; k < inner_acts.size(); ++k) {
        GroupTable k_group = semidirect_product(e9, z4, inner_acts[k]);
        bool seen = false;
        for (const auto& [_, other] : inner) seen = seen || is_isomorphic(other, k_group).isomorphic;
        if (!seen) inner.emplace_back(k, std::move(k_group));
      }
      std::vector<Candidate> cands;
      for (const auto& [k, k_group] : inner) {
        const auto m = direct_product(cyclic(2), k_group);
        const std::string m_expr = "product(cyclic:2,semidirect(elementary:3:2,cyclic:4,action#" + std::to_string(k) + "))";
        auto more = semidirect_candidates(m, m_expr, cyclic(2), "cyclic:2");
        cands.insert(cands.end(), more.begin(), more.end());
      }
      return search_candidates(id, cands, [](const GroupTable& g) {
        return has_element_of_order(g, 12) && !is_supersoluble(g);
      });
    }
  }
  throw GroupError(ErrorCode::InvalidParameter, "unknown example id");
}

struct PaperCache {
  std::mutex mu;
  std::map<PaperGroupId, PaperExample> built;
};

inline PaperCache& paper_cache() {
  static PaperCache c;
  return c;
}

}  // namespace detail

/// The example group for `id` with its evaluated bundle. Built once and
/// cached; with a classifier fault active the cache is bypassed.
inline PaperExample paper_example(PaperGroupId id) {
  if (testing::any_fault()) return detail::build_paper_example(id);
  auto& cache = detail::paper_cache();
  {
    std::lock_guard lock(cache.mu);
    if (auto it = cache.built.find(id); it != cache.built.end()) return it->second;
  }
  auto ex = detail::build_paper_example(id);
  std::lock_guard lock(cache.mu);
  return cache.built.emplace(id, std::move(ex)).first->second;
}

inline GroupTable paper_group(PaperGroupId id) { return paper_example(id).group; }

// ---------------------------------------------------------------------------
// Factorizations
// ---------------------------------------------------------------------------

struct FactorFlags {
  bool w_supersoluble = false;
  bool p_subnormal = false;
  bool subnormal = false;
  bool nilpotent = false;
  bool siding = false;
  bool normal = false;
  /// |H / H^A|
  std::size_t a_quotient_order = 1;
};

struct FactorizationRecord {
  std::size_t a_index = 0, b_index = 0;  // lattice indices, a_index >= b_index
  Subgroup a, b;
  FactorFlags a_flags, b_flags;
  bool coprime_a_quotients = false;

  bool theorem1_hypotheses() const {
    return a_flags.w_supersoluble && b_flags.w_supersoluble && a_flags.p_subnormal && b_flags.p_subnormal;
  }
};

using FactorizationFilter = std::function<bool(const FactorizationRecord&)>;

/// Residual of lattice entry i computed inside the parent lattice: normal
/// subgroups of H are the lattice entries below H normalized by H.
inline Subgroup residual_within(const GroupTable& g, std::size_t i, FormationTag f) {
  const auto& lat = g.lattice();
  const auto& h = lat[i];
  const auto emb = subgroup_table(g, h.members);
  std::vector<Element> local(g.order(), 0);
  for (std::size_t k = 0; k < emb.embedding.size(); ++k) local[emb.embedding[k]] = static_cast<Element>(k);
  std::vector<std::size_t> minimal;
  for (std::size_t j : lat.contained_in(i)) {
    if (!normalized_by(g, lat[j], h.gens)) continue;
    bool above = false;
    for (std::size_t w : minimal) above = above || lat[w].members.is_subset_of(lat[j].members);
    if (above) continue;
    bool in = j == i;
    if (!in) {
      ElementSet ls(emb.table.order());
      lat[j].members.for_each([&](Element x) { ls.set(local[x]); });
      in = in_formation(quotient_group(emb.table, as_subgroup(emb.table, ls)).table, f);
    }
    if (in) minimal.push_back(j);
  }
  ElementSet acc = h.members;
  for (std::size_t w : minimal) acc &= lat[w].members;
  return lat[lat.index_of(acc)];
}

/// Per-subgroup flags, computed on demand and kept for the group's lifetime.
class FactorFlagTable {
 public:
  explicit FactorFlagTable(const GroupTable& g) : g_(g), lat_(g.lattice()), marks_(psn_marks(g)), flags_(lat_.size()) {}

  const FactorFlags& operator()(std::size_t i) {
    if (flags_[i]) return *flags_[i];
    FactorFlags f;
    const auto& h = lat_[i];
    f.normal = lat_.normal(i);
    f.p_subnormal = marks_[i];
    f.subnormal = f.normal || is_subnormal(g_, h);
    f.w_supersoluble = subgroup_is_w_supersoluble(g_, i);
    const auto emb = subgroup_table(g_, h.members);
    f.nilpotent = is_nilpotent(emb.table);
    f.siding = siding_within(i);
    f.a_quotient_order = h.order() / residual_within(g_, i, FormationTag::AbelianSylow).order();
    flags_[i] = f;
    return *flags_[i];
  }

  const std::vector<bool>& marks() const { return marks_; }

 private:
  bool siding_within(std::size_t i) const {
    const auto& h = lat_[i];
    const auto d = derived_of(g_, h);
    for (std::size_t j = 0; j < lat_.size() && lat_.order_of(j) <= d.order(); ++j)
      if (lat_[j].members.is_subset_of(d.members) && !normalized_by(g_, lat_[j], h.gens)) return false;
    return true;
  }

  GroupTable g_;
  const LatticeCache& lat_;
  std::vector<bool> marks_;
  std::vector<std::optional<FactorFlags>> flags_;
};

/// Every unordered pair {A, B} of subgroups with AB = G, larger factor
/// first; only pairs with |A||B| >= |G| can qualify. The filter runs last.
inline std::vector<FactorizationRecord> factorization_scan(const GroupTable& g, const FactorizationFilter& filter = {}) {
  const auto& lat = g.lattice();
  const std::size_t n = g.order();
  FactorFlagTable flags(g);
  std::vector<FactorizationRecord> out;
  for (std::size_t a = lat.size(); a-- > 0;) {
    for (std::size_t b = a + 1; b-- > 0;) {
      const std::size_t oa = lat.order_of(a), ob = lat.order_of(b);
      if (oa * ob < n) break;  // orders ascend with the index
      if (lat[a].members.intersection_count(lat[b].members) * n != oa * ob) continue;
      FactorizationRecord r;
      r.a_index = a;
      r.b_index = b;
      r.a = lat[a];
      r.b = lat[b];
      r.a_flags = flags(a);
      r.b_flags = flags(b);
      r.coprime_a_quotients = std::gcd(r.a_flags.a_quotient_order, r.b_flags.a_quotient_order) == 1;
      if (!filter || filter(r)) out.push_back(std::move(r));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

struct CorpusEntry {
  std::string name;
  std::string construction;
  GroupTable group;
  Fingerprint fp;

  std::string manifest_line() const {
    return name + " " + std::to_string(group.order()) + " " + construction + " " + fp.to_string();
  }
};

namespace detail {

class CorpusBuilder {
 public:
  explicit CorpusBuilder(std::size_t max_order) : max_(max_order) {}

  void add(const std::string& name, const std::string& expr, const GroupTable& g) {
    if (g.order() > max_) return;
    // Composite 2-groups of order 64 have lattices of thousands of subgroups.
    if (g.order() >= 64 && is_prime_power_of(g.order(), 2) && expr.find('(') != std::string::npos) return;
    auto fp = fingerprint(g);
    auto& bucket = by_fp_[fp];
    for (std::size_t i : bucket)
      if (is_isomorphic(entries_[i].group, g).isomorphic) return;
    bucket.push_back(entries_.size());
    entries_.push_back({name, expr, g, std::move(fp)});
  }
  void add(const std::string& expr, const GroupTable& g) { add(expr, expr, g); }

  std::vector<CorpusEntry> take() { return std::move(entries_); }

 private:
  std::size_t max_;
  std::vector<CorpusEntry> entries_;
  std::map<Fingerprint, std::vector<std::size_t>> by_fp_;
};

struct Block {
  std::string expr;
  GroupTable group;
};

}  // namespace detail

/// Deterministic desk-scale corpus, duplicate-free up to isomorphism:
/// named groups, the example groups, products of pairs of small blocks,
/// then semidirect products of blocks by Z2, Z3, Z4.
inline std::vector<CorpusEntry> corpus_generate(std::size_t max_order) {
  if (max_order > lattice_cap())
    throw GroupError(ErrorCode::InvalidParameter, "corpus max order exceeds the lattice cap");
  detail::CorpusBuilder b(max_order);
  b.add("trivial", cyclic(1));

  std::vector<detail::Block> blocks;
  for (std::size_t m = 2; m <= max_order; ++m) {
    b.add("cyclic:" + std::to_string(m), cyclic(m));
    if (m <= max_order / 2) blocks.push_back({"cyclic:" + std::to_string(m), cyclic(m)});
  }
  for (std::uint32_t p = 2; p * p <= max_order; ++p) {
    if (!is_prime(p)) continue;
    std::size_t q = p;
    for (std::uint32_t t = 2; t <= 4 && q * p <= max_order; ++t) {
      q *= p;
      const auto expr = "elementary:" + std::to_string(p) + ":" + std::to_string(t);
      b.add(expr, elementary_abelian(p, t));
      if (t <= 2 || q == 8) blocks.push_back({expr, elementary_abelian(p, t)});
    }
  }
  std::size_t fact = 1;
  for (std::size_t d = 2; d <= 5; ++d) {
    fact *= d;
    if (fact <= max_order) {
      b.add("symmetric:" + std::to_string(d), symmetric(d));
      if (d <= 4) blocks.push_back({"symmetric:" + std::to_string(d), symmetric(d)});
    }
    if (d >= 4 && fact / 2 <= max_order) {
      b.add("alternating:" + std::to_string(d), alternating(d));
      if (d == 4) blocks.push_back({"alternating:4", alternating(4)});
    }
  }
  for (std::size_t o = 6; o <= max_order; o += 2) {
    b.add("dihedral:" + std::to_string(o), dihedral(o));
    if (o <= 16) blocks.push_back({"dihedral:" + std::to_string(o), dihedral(o)});
  }
  for (auto id : kAllPaperGroups)
    if (paper_group_order(id) <= max_order) {
      const auto ex = paper_example(id);
      b.add(std::string(to_string(id)), "paper:" + std::string(to_string(id)), ex.group);
    }

  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i; j < blocks.size(); ++j)
      if (blocks[i].group.order() * blocks[j].group.order() <= max_order)
        b.add("product(" + blocks[i].expr + "," + blocks[j].expr + ")", direct_product(blocks[i].group, blocks[j].group));

  for (std::uint32_t m : {2U, 3U, 4U}) {
    const auto h = cyclic(m);
    for (const auto& blk : blocks) {
      const auto& nb = blk.group;
      if (nb.order() * m > max_order || nb.order() < 3 || nb.order() > 32) continue;
      const auto acts = all_actions(nb, h);
      for (std::size_t k = 1; k < acts.size(); ++k)
        b.add("semidirect(" + blk.expr + ",cyclic:" + std::to_string(m) + ",action#" + std::to_string(k) + ")",
              semidirect_product(nb, h, acts[k]));
    }
  }
  return b.take();
}

}  // namespace wsu
