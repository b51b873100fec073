#pragma once

#include <algorithm>
#include <atomic>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "corpus.hpp"

namespace wsu {

/// The verification suites run per corpus group.
enum class Suite {
  Implications,
  Lattice,
  Witness,
  Lemma1_1,
  Lemma1_3,
  Lemma1_4,
  Lemma1_5,
  Lemma1_6,
  Lemma1_7,
  Lemma1_8,
  Lemma1_9,
  Lemma2_1,
  Lemma2_2,
  Lemma2_3,
  Theorem3_3,
  TheoremB1,
  SnPermutablePsn,
  TheoremA,
  Theorem1,
};

inline constexpr std::array<Suite, 19> kAllSuites = {
    Suite::Implications, Suite::Lattice,    Suite::Witness,   Suite::Lemma1_1,  Suite::Lemma1_3,       Suite::Lemma1_4,
    Suite::Lemma1_5,     Suite::Lemma1_6,   Suite::Lemma1_7,  Suite::Lemma1_8,  Suite::Lemma1_9,       Suite::Lemma2_1,
    Suite::Lemma2_2,     Suite::Lemma2_3,   Suite::Theorem3_3, Suite::TheoremB1, Suite::SnPermutablePsn, Suite::TheoremA,
    Suite::Theorem1,
};

inline std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::Implications: return "implications";
    case Suite::Lattice: return "lattice";
    case Suite::Witness: return "witness";
    case Suite::Lemma1_1: return "lemma1.1";
    case Suite::Lemma1_3: return "lemma1.3";
    case Suite::Lemma1_4: return "lemma1.4";
    case Suite::Lemma1_5: return "lemma1.5";
    case Suite::Lemma1_6: return "lemma1.6";
    case Suite::Lemma1_7: return "lemma1.7";
    case Suite::Lemma1_8: return "lemma1.8";
    case Suite::Lemma1_9: return "lemma1.9";
    case Suite::Lemma2_1: return "lemma2.1";
    case Suite::Lemma2_2: return "lemma2.2";
    case Suite::Lemma2_3: return "lemma2.3";
    case Suite::Theorem3_3: return "theorem3.3";
    case Suite::TheoremB1: return "theoremB1";
    case Suite::SnPermutablePsn: return "sn-permutable-psn";
    case Suite::TheoremA: return "theoremA";
    case Suite::Theorem1: return "theorem1";
  }
  return "?";
}

inline std::optional<Suite> parse_suite(std::string_view s) {
  for (auto x : kAllSuites)
    if (to_string(x) == s) return x;
  return std::nullopt;
}

struct SuiteOutcome {
  Suite suite = Suite::Implications;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::optional<std::string> counterexample;
};

/// Per-group results of a verification run.
struct GroupRun {
  std::string name;
  std::size_t order = 0;
  std::vector<SuiteOutcome> outcomes;
  /// Residual identity line, present when some factorization meets the hypotheses.
  std::optional<std::string> theorem1_line;
  bool theorem1_unequal = false;
  std::optional<std::string> error;
};

namespace detail {

class Tally {
 public:
  explicit Tally(Suite s) { out_.suite = s; }

  template <class Describe>
  void expect(bool ok, Describe&& describe) {
    ++out_.checks;
    if (ok) return;
    ++out_.violations;
    if (!out_.counterexample) out_.counterexample = describe();
  }

  SuiteOutcome take() { return std::move(out_); }

 private:
  SuiteOutcome out_;
};

}  // namespace detail

/// Everything the suites share for one group: lattice, P-subnormal marks,
/// factor flags, quotients and factorizations, all computed on demand.
class GroupContext {
 public:
  explicit GroupContext(const GroupTable& g)
      : g_(g), lat_(g.lattice()), marks_(psn_marks(g)), flags_(g), quotients_(lat_.size()), local_marks_(lat_.size()) {}

  const GroupTable& group() const { return g_; }
  const LatticeCache& lat() const { return lat_; }
  bool psn(std::size_t i) const { return marks_[i]; }
  const std::vector<bool>& marks() const { return marks_; }
  FactorFlagTable& flags() { return flags_; }

  std::string label(std::size_t i) const { return "H" + std::to_string(i) + "(order " + std::to_string(lat_.order_of(i)) + ")"; }

  std::size_t index(const ElementSet& s) const { return lat_.index_of(s); }

  const QuotientGroup& quotient(std::size_t n) {
    if (!quotients_[n]) quotients_[n] = quotient_group(g_, lat_[n]);
    return *quotients_[n];
  }

  /// Marks of subgroups P-subnormal inside lattice entry k.
  const std::vector<bool>& marks_within(std::size_t k) {
    if (!local_marks_[k]) local_marks_[k] = psn_marks_within(lat_, k);
    return *local_marks_[k];
  }

  const std::vector<FactorizationRecord>& records() {
    if (!records_) records_ = factorization_scan(g_);
    return *records_;
  }

  bool in(FormationTag f) const { return in_formation(g_, f); }

  const Subgroup& residual_of(FormationTag f) {
    auto& slot = residuals_[static_cast<std::size_t>(f)];
    if (!slot) slot = residual(g_, f).residual;
    return *slot;
  }

  /// Lattice entry i classified in its own table.
  GroupTable table_of(std::size_t i) {
    auto it = tables_.find(i);
    if (it != tables_.end()) return it->second;
    return tables_.emplace(i, subgroup_table(g_, lat_[i].members).table).first->second;
  }

  bool sub_w_supersoluble(std::size_t i) {
    auto it = wsu_.find(i);
    if (it != wsu_.end()) return it->second;
    return wsu_[i] = subgroup_is_w_supersoluble(g_, i);
  }

  bool sub_sylow_tower(std::size_t i) { return has_supersoluble_sylow_tower(table_of(i)); }

  const std::vector<std::size_t>& subnormal_in(std::size_t k) {
    auto it = subnormal_.find(k);
    if (it != subnormal_.end()) return it->second;
    return subnormal_[k] = subnormal_subgroups_of(g_, k);
  }

  /// X S is a subgroup, for lattice entries x and s.
  bool permutes(std::size_t x, std::size_t s) {
    if (lat_.normal(x) || lat_.normal(s)) return true;
    const auto& xm = lat_[x].members;
    const auto& sm = lat_[s].members;
    if (xm.is_subset_of(sm) || sm.is_subset_of(xm)) return true;
    const std::size_t size = lat_.order_of(x) * lat_.order_of(s) / xm.intersection_count(sm);
    if (g_.order() % size) return false;
    const std::size_t key = x * lat_.size() + s;
    auto it = permutes_.find(key);
    if (it != permutes_.end()) return it->second;
    return permutes_[key] = lat_.find(product_set(g_, xm, sm)).has_value();
  }

  bool mutually_sn_permutable(std::size_t a, std::size_t b) {
    for (std::size_t s : subnormal_in(b))
      if (!permutes(a, s)) return false;
    for (std::size_t s : subnormal_in(a))
      if (!permutes(b, s)) return false;
    return true;
  }

  /// Lattice index of H N for a normal N.
  std::size_t product_with_normal(std::size_t h, std::size_t n) {
    return lat_.index_of(product_set(g_, lat_[h].members, lat_[n].members));
  }

  std::vector<std::size_t> nilpotent_normals() {
    std::vector<std::size_t> out;
    const auto fit = fitting(g_);
    for (std::size_t n : lat_.normal_indices())
      if (lat_[n].members.is_subset_of(fit.members)) out.push_back(n);
    return out;
  }

 private:
  GroupTable g_;
  const LatticeCache& lat_;
  std::vector<bool> marks_;
  FactorFlagTable flags_;
  std::vector<std::optional<QuotientGroup>> quotients_;
  std::vector<std::optional<std::vector<bool>>> local_marks_;
  std::optional<std::vector<FactorizationRecord>> records_;
  std::array<std::optional<Subgroup>, 7> residuals_;
  std::unordered_map<std::size_t, GroupTable> tables_;
  std::unordered_map<std::size_t, bool> wsu_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> subnormal_;
  std::unordered_map<std::size_t, bool> permutes_;
};

namespace suites {

using detail::Tally;

inline SuiteOutcome implications(GroupContext& c) {
  Tally t(Suite::Implications);
  using F = FormationTag;
  const std::pair<F, F> chain[] = {{F::Abelian, F::Nilpotent},   {F::Nilpotent, F::Supersoluble}, {F::Supersoluble, F::WSupersoluble},
                                   {F::WSupersoluble, F::Soluble}, {F::Nilpotent, F::Metanilpotent}, {F::Abelian, F::AbelianSylow}};
  for (auto [lo, hi] : chain)
    t.expect(!c.in(lo) || c.in(hi), [&] { return std::string(to_string(lo)) + " but not " + std::string(to_string(hi)); });
  // Abelian Sylow subgroups, read off the Sylow tables themselves.
  bool sylows_abelian = true;
  for (auto p : c.group().primes())
    sylows_abelian = sylows_abelian && subgroup_table(c.group(), sylow(c.group(), p).members).table.is_abelian();
  t.expect(sylows_abelian == c.in(F::AbelianSylow), [&] {
    return std::string("AbelianSylow classifier says ") + (c.in(F::AbelianSylow) ? "true" : "false") + " but the Sylow tables disagree";
  });
  return t.take();
}

inline SuiteOutcome lattice(GroupContext& c) {
  Tally t(Suite::Lattice);
  const auto& g = c.group();
  const auto& lat = c.lat();
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const auto co = core(g, lat[i]).order(), cl = normal_closure_in(g, lat[i], whole_group(g)).order();
    const bool normal = lat.normal(i);
    t.expect(co <= lat.order_of(i) && lat.order_of(i) <= cl && ((co == lat.order_of(i)) == normal) && ((cl == lat.order_of(i)) == normal),
             [&] { return "core/closure bounds fail at " + c.label(i); });
  }
  for (auto p : g.primes()) {
    const auto s = sylow(g, p);
    t.expect(is_prime_power_of(s.order(), p) && (g.order() / s.order()) % p != 0, [&] { return "Sylow " + std::to_string(p) + " has wrong order"; });
    ElementSet covered(g.order());
    for (Element x = 0; x < g.order(); ++x) covered |= conjugate_set(g, s.members, x);
    bool all = true;
    for (Element x = 0; x < g.order(); ++x)
      if (is_prime_power_of(g.element_order(x), p) && !covered.test(x)) all = false;
    t.expect(all, [&] { return "conjugates of a Sylow " + std::to_string(p) + "-subgroup miss a p-element"; });
  }
  const auto phi = frattini(g), fit = fitting(g), z = center(g);
  t.expect(is_normal(g, phi), [] { return std::string("Frattini subgroup not normal"); });
  t.expect(is_normal(g, fit) && is_nilpotent(subgroup_table(g, fit.members).table), [] { return std::string("Fitting subgroup not normal nilpotent"); });
  t.expect(z.members.is_subset_of(fit.members), [] { return std::string("centre not inside the Fitting subgroup"); });
  for (std::size_t a = 0; a < lat.size(); ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      const auto prod = product_set(g, lat[a].members, lat[b].members).count();
      t.expect(prod * lat[a].members.intersection_count(lat[b].members) == lat.order_of(a) * lat.order_of(b),
               [&] { return "product formula fails for " + c.label(a) + "," + c.label(b); });
    }
  return t.take();
}

inline SuiteOutcome witness(GroupContext& c) {
  Tally t(Suite::Witness);
  const auto& g = c.group();
  const auto& lat = c.lat();
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const auto w = witness_from_marks(lat, c.marks(), i, lat.top());
    t.expect(w.has_value() == c.psn(i), [&] { return "witness presence disagrees with marking at " + c.label(i); });
    if (w) t.expect(validate_witness(g, lat[i], *w), [&] { return "invalid witness for " + c.label(i) + ": " + w->render(); });
  }
  return t.take();
}

/// Lemma 1.1 for the saturated classes N, U, wU, with the soluble
/// primitive structure of Lemma 1.2 checked on every primitive group.
inline SuiteOutcome lemma1_1(GroupContext& c) {
  Tally t(Suite::Lemma1_1);
  const auto& g = c.group();
  const auto& lat = c.lat();
  for (auto f : {FormationTag::Nilpotent, FormationTag::Supersoluble, FormationTag::WSupersoluble}) {
    if (c.in(f)) continue;
    bool critical = true;
    for (std::size_t n : lat.normal_indices())
      if (n != lat.bottom() && !in_formation(c.quotient(n).table, f)) critical = false;
    if (!critical) continue;
    t.expect(primitive_decomposition(g).primitive, [&] { return "critical for " + std::string(to_string(f)) + " but not primitive"; });
  }
  const auto pd = primitive_decomposition(g);
  if (pd.primitive && is_soluble(g))
    t.expect(pd.soluble_package_holds, [] { return std::string("soluble primitive group breaks the primitive structure package"); });
  return t.take();
}

inline SuiteOutcome lemma1_3(GroupContext& c) {
  Tally t(Suite::Lemma1_3);
  const auto& g = c.group();
  const auto& lat = c.lat();
  // (1) (G/K)^F = G^F K / K
  for (std::size_t k : lat.normal_indices()) {
    const auto& q = c.quotient(k);
    for (auto f : kAllFormations) {
      const auto lhs = residual(q.table, f).residual.members;
      const auto rhs = q.image(product_set(g, c.residual_of(f).members, lat[k].members));
      t.expect(lhs == rhs, [&] { return "(1) fails for " + std::string(to_string(f)) + " and K=" + c.label(k); });
    }
  }
  // (2) instance NA: the smallest N with (G/N)^A nilpotent is (G^A)^N.
  t.expect(na_residual_by_scan(g) == nilpotent_residual_of_abelian_sylow_residual(g), [] { return std::string("(2) NA residual mismatch"); });
  // (3) H inside F gives G^F inside G^H.
  using F = FormationTag;
  const std::pair<F, F> inclusions[] = {{F::Abelian, F::Nilpotent},   {F::Nilpotent, F::Supersoluble}, {F::Supersoluble, F::WSupersoluble},
                                        {F::WSupersoluble, F::Soluble}, {F::Nilpotent, F::Metanilpotent}, {F::Abelian, F::AbelianSylow}};
  for (auto [h, f] : inclusions)
    t.expect(c.residual_of(f).members.is_subset_of(c.residual_of(h).members),
             [&] { return "(3) residual for " + std::string(to_string(f)) + " not inside residual for " + std::string(to_string(h)); });
  // (4) G = HK with K normal gives H^F K = G^F K.
  std::unordered_map<std::size_t, Subgroup> local;
  for (std::size_t k : lat.normal_indices()) {
    for (std::size_t h = 0; h < lat.size(); ++h) {
      if (lat.order_of(h) * lat.order_of(k) < g.order()) continue;
      if (product_size(lat[h], lat[k]) != g.order()) continue;
      for (auto f : {F::Nilpotent, F::AbelianSylow, F::Supersoluble, F::WSupersoluble}) {
        const std::size_t key = h * 8 + static_cast<std::size_t>(f);
        auto it = local.find(key);
        if (it == local.end()) it = local.emplace(key, residual_within(g, h, f)).first;
        const auto lhs = product_set(g, it->second.members, lat[k].members);
        const auto rhs = product_set(g, c.residual_of(f).members, lat[k].members);
        t.expect(lhs == rhs, [&] { return "(4) fails for " + std::string(to_string(f)) + " H=" + c.label(h) + " K=" + c.label(k); });
      }
    }
  }
  return t.take();
}

inline SuiteOutcome lemma1_4(GroupContext& c) {
  Tally t(Suite::Lemma1_4);
  const auto& lat = c.lat();
  if (!is_siding(c.group())) return t.take();
  for (std::size_t n : lat.normal_indices())
    t.expect(is_siding(c.quotient(n).table), [&] { return "(1) quotient by " + c.label(n) + " not siding"; });
  for (std::size_t h = 0; h < lat.size(); ++h)
    t.expect(c.flags()(h).siding, [&] { return "(2) subgroup " + c.label(h) + " not siding"; });
  t.expect(is_supersoluble(c.group()), [] { return std::string("(3) siding group not supersoluble"); });
  return t.take();
}

inline SuiteOutcome lemma1_5(GroupContext& c) {
  Tally t(Suite::Lemma1_5);
  const auto& g = c.group();
  const auto& lat = c.lat();
  for (std::size_t n : lat.normal_indices()) {
    const auto& q = c.quotient(n);
    const auto& qlat = q.table.lattice();
    const auto qmarks = psn_marks(q.table);
    const auto& nmarks = c.marks_within(n);
    for (std::size_t h = 0; h < lat.size(); ++h) {
      const std::size_t img = qlat.index_of(q.image(lat[h].members));
      // (1)
      if (lat[n].members.is_subset_of(lat[h].members) && qmarks[img])
        t.expect(c.psn(h), [&] { return "(1) " + c.label(h) + " over N=" + c.label(n); });
      if (!c.psn(h)) continue;
      // (2)
      const auto meet = c.index(lat[h].members & lat[n].members);
      t.expect(nmarks[meet], [&] { return "(2) intersection of " + c.label(h) + " with N=" + c.label(n) + " not P-subnormal in N"; });
      t.expect(qmarks[img], [&] { return "(2) image of " + c.label(h) + " in G/" + c.label(n) + " not P-subnormal"; });
      t.expect(c.psn(c.product_with_normal(h, n)), [&] { return "(2) " + c.label(h) + "N not P-subnormal for N=" + c.label(n); });
    }
  }
  // (3) transitivity through K
  for (std::size_t k = 0; k < lat.size(); ++k) {
    if (!c.psn(k)) continue;
    const auto& km = c.marks_within(k);
    for (std::size_t h = 0; h < k; ++h)
      if (km[h] && lat[h].members.is_subset_of(lat[k].members))
        t.expect(c.psn(h), [&] { return "(3) " + c.label(h) + " in " + c.label(k); });
  }
  // (4) conjugates
  for (std::size_t h = 0; h < lat.size(); ++h) {
    if (!c.psn(h)) continue;
    for (Element x : g.generators())
      t.expect(c.psn(c.index(conjugate_set(g, lat[h].members, x))), [&] { return "(4) conjugate of " + c.label(h); });
  }
  return t.take();
}

inline SuiteOutcome lemma1_6(GroupContext& c) {
  Tally t(Suite::Lemma1_6);
  const auto& lat = c.lat();
  if (!is_soluble(c.group())) return t.take();
  std::vector<std::size_t> marked;
  for (std::size_t h = 0; h < lat.size(); ++h)
    if (c.psn(h)) marked.push_back(h);
  for (std::size_t k = 0; k < lat.size(); ++k) {
    const auto& km = c.marks_within(k);
    for (std::size_t h : marked)
      t.expect(km[c.index(lat[h].members & lat[k].members)], [&] { return "(1) " + c.label(h) + " meet " + c.label(k); });
  }
  for (std::size_t i = 0; i < marked.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      t.expect(c.psn(c.index(lat[marked[i]].members & lat[marked[j]].members)),
               [&] { return "(2) " + c.label(marked[i]) + " meet " + c.label(marked[j]); });
  return t.take();
}

inline SuiteOutcome lemma1_7(GroupContext& c) {
  Tally t(Suite::Lemma1_7);
  const auto& lat = c.lat();
  if (!is_soluble(c.group())) return t.take();
  for (std::size_t h = 0; h < lat.size(); ++h)
    if (c.flags()(h).subnormal) t.expect(c.psn(h), [&] { return "subnormal " + c.label(h) + " not P-subnormal"; });
  return t.take();
}

inline SuiteOutcome lemma1_8(GroupContext& c) {
  Tally t(Suite::Lemma1_8);
  const auto& g = c.group();
  const auto& lat = c.lat();
  const bool wsu = c.in(FormationTag::WSupersoluble);
  if (wsu) {
    for (std::size_t h = 0; h < lat.size(); ++h)
      t.expect(c.sub_w_supersoluble(h), [&] { return "heredity fails at " + c.label(h); });
    for (std::size_t n : lat.normal_indices())
      t.expect(is_w_supersoluble(c.quotient(n).table), [&] { return "quotient by " + c.label(n) + " not w-supersoluble"; });
  }
  const auto phi = c.index(frattini(g).members);
  if (is_w_supersoluble(c.quotient(phi).table))
    t.expect(wsu, [] { return std::string("saturation fails: G/Phi(G) w-supersoluble but G is not"); });
  return t.take();
}

inline SuiteOutcome lemma1_9(GroupContext& c) {
  Tally t(Suite::Lemma1_9);
  const auto& g = c.group();
  const auto& lat = c.lat();
  const bool wsu = c.in(FormationTag::WSupersoluble);
  if (wsu) {
    const auto& ra = c.residual_of(FormationTag::AbelianSylow);
    t.expect(is_nilpotent(subgroup_table(g, ra.members).table), [] { return std::string("(1) A-residual of a w-supersoluble group not nilpotent"); });
  }
  bool metanilpotent_supersoluble = true, biprimary_supersoluble = true;
  for (std::size_t h = 0; h < lat.size(); ++h) {
    const auto ht = c.table_of(h);
    const bool sup = is_supersoluble(ht);
    if (!sup && in_formation(ht, FormationTag::Metanilpotent)) metanilpotent_supersoluble = false;
    if (!sup && prime_divisors(lat.order_of(h)).size() == 2) biprimary_supersoluble = false;
  }
  t.expect(wsu == metanilpotent_supersoluble, [&] { return std::string("(2) w-supersoluble=") + (wsu ? "true" : "false") + " but metanilpotent subgroups disagree"; });
  const bool tower = has_supersoluble_sylow_tower(g);
  t.expect(wsu == (tower && biprimary_supersoluble), [&] { return std::string("(3) w-supersoluble=") + (wsu ? "true" : "false") + " disagrees with tower and biprimary subgroups"; });
  return t.take();
}

/// Records in both orientations: f(A, B) and f(B, A).
template <class F>
void both_ways(const FactorizationRecord& r, F&& f) {
  f(r.a_index, r.b_index);
  if (r.a_index != r.b_index) f(r.b_index, r.a_index);
}

inline SuiteOutcome lemma2_1(GroupContext& c) {
  Tally t(Suite::Lemma2_1);
  const bool tower = has_supersoluble_sylow_tower(c.group());
  for (const auto& r : c.records()) {
    if (!r.a_flags.p_subnormal || !r.b_flags.p_subnormal) continue;
    if (!c.sub_sylow_tower(r.a_index) || !c.sub_sylow_tower(r.b_index)) continue;
    t.expect(tower, [&] { return "G=" + c.label(r.a_index) + c.label(r.b_index) + " lacks a Sylow tower"; });
  }
  return t.take();
}

inline SuiteOutcome lemma2_2(GroupContext& c) {
  Tally t(Suite::Lemma2_2);
  const auto& g = c.group();
  const auto& lat = c.lat();
  const bool wsu = c.in(FormationTag::WSupersoluble);
  for (std::size_t a = 0; a + 1 < lat.size(); ++a) {
    if (!c.psn(a) || !c.sub_w_supersoluble(a)) continue;
    const auto index = g.order() / lat.order_of(a);
    const auto ps = prime_divisors(index);
    if (ps.size() != 1) continue;
    if (!p_predicate(g, ps.front(), PKind::PClosed)) continue;
    t.expect(wsu, [&] { return "A=" + c.label(a) + " of " + std::to_string(ps.front()) + "-power index in a p-closed group"; });
  }
  return t.take();
}

inline SuiteOutcome lemma2_3(GroupContext& c) {
  Tally t(Suite::Lemma2_3);
  const auto& g = c.group();
  const bool wsu = c.in(FormationTag::WSupersoluble);
  if (g.order() == 1) return t.take();
  const auto largest = g.primes().back();
  for (const auto& r : c.records()) {
    if (!r.theorem1_hypotheses()) continue;
    both_ways(r, [&](std::size_t a, std::size_t b) {
      const auto index = g.order() / c.lat().order_of(a);
      if (index == 1 || !is_prime_power_of(index, largest)) return;
      t.expect(wsu, [&] { return "A=" + c.label(a) + " B=" + c.label(b); });
    });
  }
  return t.take();
}

inline SuiteOutcome theorem3_3(GroupContext& c) {
  Tally t(Suite::Theorem3_3);
  const auto& g = c.group();
  const bool wsu = c.in(FormationTag::WSupersoluble);
  for (const auto& r : c.records()) {
    both_ways(r, [&](std::size_t a, std::size_t b) {
      const auto& fa = c.flags()(a);
      const auto& fb = c.flags()(b);
      if (!fa.w_supersoluble || !fa.p_subnormal) return;
      if (fb.nilpotent && fb.normal) t.expect(wsu, [&] { return "(1) A=" + c.label(a) + " B=" + c.label(b); });
      if (fb.nilpotent && is_prime(g.order() / c.lat().order_of(b)))
        t.expect(wsu, [&] { return "(2) A=" + c.label(a) + " B=" + c.label(b); });
      if (fb.normal && fb.siding) t.expect(wsu, [&] { return "(3) A=" + c.label(a) + " B=" + c.label(b); });
    });
  }
  return t.take();
}

inline SuiteOutcome theorem_b1(GroupContext& c) {
  Tally t(Suite::TheoremB1);
  const auto mins = select_subgroups(c.group(), SubgroupSelection::MinimalNormal);
  for (const auto& r : c.records()) {
    if (!r.a_flags.w_supersoluble || !r.b_flags.w_supersoluble) continue;
    if (!c.mutually_sn_permutable(r.a_index, r.b_index)) continue;
    for (const auto& m : mins) {
      const auto n = c.index(m.members);
      for (std::size_t x : {r.a_index, r.b_index})
        t.expect(c.sub_w_supersoluble(c.product_with_normal(x, n)), [&] { return c.label(x) + "N not w-supersoluble for N=" + c.label(n); });
    }
  }
  return t.take();
}

inline SuiteOutcome sn_permutable_psn(GroupContext& c) {
  Tally t(Suite::SnPermutablePsn);
  if (!is_soluble(c.group())) return t.take();
  for (const auto& r : c.records()) {
    if (!c.mutually_sn_permutable(r.a_index, r.b_index)) continue;
    t.expect(r.a_flags.p_subnormal && r.b_flags.p_subnormal, [&] { return "A=" + c.label(r.a_index) + " B=" + c.label(r.b_index); });
  }
  return t.take();
}

inline SuiteOutcome theorem_a(GroupContext& c) {
  Tally t(Suite::TheoremA);
  const auto& ra = c.residual_of(FormationTag::AbelianSylow);
  if (!is_nilpotent(subgroup_table(c.group(), ra.members).table)) return t.take();
  const bool wsu = c.in(FormationTag::WSupersoluble);
  for (const auto& r : c.records())
    if (r.theorem1_hypotheses()) t.expect(wsu, [&] { return "A=" + c.label(r.a_index) + " B=" + c.label(r.b_index); });
  return t.take();
}

inline SuiteOutcome theorem1(GroupContext& c, GroupRun& run) {
  Tally t(Suite::Theorem1);
  const auto& g = c.group();
  const bool wsu = c.in(FormationTag::WSupersoluble);
  bool any = false;
  std::vector<std::size_t> nil;
  std::unordered_map<std::size_t, bool> product_ok;
  for (const auto& r : c.records()) {
    if (!r.theorem1_hypotheses()) continue;
    if (!any) {
      any = true;
      nil = c.nilpotent_normals();
      const auto& rw = c.residual_of(FormationTag::WSupersoluble);
      const auto rna = nilpotent_residual_of_abelian_sylow_residual(g);
      const bool equal = rw == rna;
      run.theorem1_line = "G=" + run.name + " |G^{wU}|=" + std::to_string(rw.order()) + " |(G^A)^N|=" + std::to_string(rna.order()) +
                          " verdict=" + (equal ? "equal" : "UNEQUAL");
      run.theorem1_unequal = !equal;
      t.expect(equal, [&] { return "(1) |G^wU|=" + std::to_string(rw.order()) + " |(G^A)^N|=" + std::to_string(rna.order()); });
    }
    for (std::size_t n : nil)
      for (std::size_t x : {r.a_index, r.b_index}) {
        const std::size_t key = x * c.lat().size() + n;
        auto it = product_ok.find(key);
        if (it == product_ok.end()) it = product_ok.emplace(key, c.sub_w_supersoluble(c.product_with_normal(x, n))).first;
        t.expect(it->second, [&] { return "(2) " + c.label(x) + "N not w-supersoluble for N=" + c.label(n); });
      }
    if (r.coprime_a_quotients) t.expect(wsu, [&] { return "(3) coprime A-quotients but G not w-supersoluble"; });
  }
  return t.take();
}

}  // namespace suites

inline GroupRun run_group_suites(const CorpusEntry& e, const std::vector<Suite>& which) {
  GroupRun run;
  run.name = e.name;
  run.order = e.group.order();
  try {
    GroupContext c(e.group);
    for (Suite s : which) {
      switch (s) {
        case Suite::Implications: run.outcomes.push_back(suites::implications(c)); break;
        case Suite::Lattice: run.outcomes.push_back(suites::lattice(c)); break;
        case Suite::Witness: run.outcomes.push_back(suites::witness(c)); break;
        case Suite::Lemma1_1: run.outcomes.push_back(suites::lemma1_1(c)); break;
        case Suite::Lemma1_3: run.outcomes.push_back(suites::lemma1_3(c)); break;
        case Suite::Lemma1_4: run.outcomes.push_back(suites::lemma1_4(c)); break;
        case Suite::Lemma1_5: run.outcomes.push_back(suites::lemma1_5(c)); break;
        case Suite::Lemma1_6: run.outcomes.push_back(suites::lemma1_6(c)); break;
        case Suite::Lemma1_7: run.outcomes.push_back(suites::lemma1_7(c)); break;
        case Suite::Lemma1_8: run.outcomes.push_back(suites::lemma1_8(c)); break;
        case Suite::Lemma1_9: run.outcomes.push_back(suites::lemma1_9(c)); break;
        case Suite::Lemma2_1: run.outcomes.push_back(suites::lemma2_1(c)); break;
        case Suite::Lemma2_2: run.outcomes.push_back(suites::lemma2_2(c)); break;
        case Suite::Lemma2_3: run.outcomes.push_back(suites::lemma2_3(c)); break;
        case Suite::Theorem3_3: run.outcomes.push_back(suites::theorem3_3(c)); break;
        case Suite::TheoremB1: run.outcomes.push_back(suites::theorem_b1(c)); break;
        case Suite::SnPermutablePsn: run.outcomes.push_back(suites::sn_permutable_psn(c)); break;
        case Suite::TheoremA: run.outcomes.push_back(suites::theorem_a(c)); break;
        case Suite::Theorem1: run.outcomes.push_back(suites::theorem1(c, run)); break;
      }
    }
  } catch (const std::exception& ex) {
    run.error = ex.what();
  }
  return run;
}

struct SuiteTotals {
  std::size_t groups = 0, checks = 0, violations = 0;
  std::optional<std::string> first_counterexample;
};

struct VerifyReport {
  std::vector<Suite> suites;
  std::vector<GroupRun> groups;

  std::map<Suite, SuiteTotals> totals() const {
    std::map<Suite, SuiteTotals> out;
    for (Suite s : suites) out[s];
    for (const auto& g : groups)
      for (const auto& o : g.outcomes) {
        auto& t = out[o.suite];
        ++t.groups;
        t.checks += o.checks;
        t.violations += o.violations;
        if (o.counterexample && !t.first_counterexample) t.first_counterexample = "G=" + g.name + ": " + *o.counterexample;
      }
    return out;
  }

  std::size_t violations() const {
    std::size_t v = 0;
    for (const auto& [_, t] : totals()) v += t.violations;
    return v;
  }
  std::size_t errors() const {
    std::size_t e = 0;
    for (const auto& g : groups) e += g.error.has_value();
    return e;
  }
  bool ok() const { return violations() == 0 && errors() == 0; }

  /// First counterexample or error, for the failure message.
  std::optional<std::string> first_problem() const {
    for (const auto& g : groups)
      if (g.error) return "G=" + g.name + ": error: " + *g.error;
    for (const auto& [s, t] : totals())
      if (t.first_counterexample) return std::string(to_string(s)) + " " + *t.first_counterexample;
    return std::nullopt;
  }

  /// One key=value record per line; no timings, so reruns are byte-identical.
  std::string structured() const {
    std::ostringstream os;
    for (const auto& g : groups) {
      if (g.error) os << "record=error group=" << g.name << " message=\"" << *g.error << "\"\n";
      for (const auto& o : g.outcomes) {
        os << "record=check suite=" << to_string(o.suite) << " group=" << g.name << " order=" << g.order << " checks=" << o.checks
           << " violations=" << o.violations;
        if (o.counterexample) os << " counterexample=\"" << *o.counterexample << "\"";
        os << '\n';
      }
      if (g.theorem1_line) os << "record=identity " << *g.theorem1_line << '\n';
    }
    for (const auto& [s, t] : totals())
      os << "record=suite suite=" << to_string(s) << " groups=" << t.groups << " checks=" << t.checks << " violations=" << t.violations << '\n';
    os << "record=summary groups=" << groups.size() << " violations=" << violations() << " errors=" << errors()
       << " status=" << (ok() ? "pass" : "fail") << '\n';
    return os.str();
  }

  std::string text() const {
    std::ostringstream os;
    for (const auto& g : groups)
      if (g.theorem1_line) os << *g.theorem1_line << '\n';
    for (const auto& [s, t] : totals()) {
      os << to_string(s) << ": " << t.checks << " checks over " << t.groups << " groups, " << t.violations << " violations";
      if (t.first_counterexample) os << " (first: " << *t.first_counterexample << ")";
      os << '\n';
    }
    for (const auto& g : groups)
      if (g.error) os << "error in " << g.name << ": " << *g.error << '\n';
    os << (ok() ? "PASS" : "FAIL") << ": " << groups.size() << " groups, " << violations() << " violations, " << errors() << " errors\n";
    return os.str();
  }
};

/// Runs the suites on every corpus entry using up to `parallelism` threads;
/// results keep corpus order whatever the completion order.
inline VerifyReport verify_corpus(const std::vector<CorpusEntry>& corpus, const std::vector<Suite>& which, std::size_t parallelism) {
  VerifyReport report;
  report.suites = which;
  report.groups.resize(corpus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) report.groups[i] = run_group_suites(corpus[i], which);
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(parallelism, corpus.size()));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return report;
}

}  // namespace wsu
