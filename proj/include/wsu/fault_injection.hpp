#pragma once

#include <atomic>
#include <optional>
#include <string_view>

namespace wsu::testing {

/// Deliberate classifier faults used by mutation tests of the verification
/// suites. Production code never sets one.
enum class Fault {
  None,
  WSupersolubleMeansSoluble,
  SupersolubleSkipsQuotient,
  NilpotentMeansAbelian,
  AnyCoverIndexAllowed,
  SidingAlwaysTrue,
  AbelianSylowAlwaysTrue,
};

inline std::atomic<Fault>& active_fault() {
  static std::atomic<Fault> fault{Fault::None};
  return fault;
}

inline bool fault_is(Fault f) { return active_fault().load(std::memory_order_relaxed) == f; }
inline bool any_fault() { return active_fault().load(std::memory_order_relaxed) != Fault::None; }

inline std::string_view to_string(Fault f) {
  switch (f) {
    case Fault::None: return "none";
    case Fault::WSupersolubleMeansSoluble: return "wsupersoluble-means-soluble";
    case Fault::SupersolubleSkipsQuotient: return "supersoluble-skips-quotient";
    case Fault::NilpotentMeansAbelian: return "nilpotent-means-abelian";
    case Fault::AnyCoverIndexAllowed: return "any-cover-index-allowed";
    case Fault::SidingAlwaysTrue: return "siding-always-true";
    case Fault::AbelianSylowAlwaysTrue: return "abelian-sylow-always-true";
  }
  return "none";
}

inline std::optional<Fault> parse_fault(std::string_view s) {
  for (Fault f : {Fault::None, Fault::WSupersolubleMeansSoluble, Fault::SupersolubleSkipsQuotient, Fault::NilpotentMeansAbelian,
                  Fault::AnyCoverIndexAllowed, Fault::SidingAlwaysTrue, Fault::AbelianSylowAlwaysTrue})
    if (to_string(f) == s) return f;
  return std::nullopt;
}

class ScopedFault {
 public:
  explicit ScopedFault(Fault f) : previous_(active_fault().exchange(f)) {}
  ~ScopedFault() { active_fault().store(previous_); }
  ScopedFault(const ScopedFault&) = delete;
  ScopedFault& operator=(const ScopedFault&) = delete;

 private:
  Fault previous_;
};

}  // namespace wsu::testing
