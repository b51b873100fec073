#pragma once

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>

#include "corpus.hpp"
#include "io.hpp"

namespace wsu {

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  GroupTable parse_all() {
    GroupTable g = parse();
    skip_space();
    if (pos_ != s_.size()) fail("unexpected trailing text");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw GroupError(ErrorCode::ParseError, what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  void skip_space() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string word() {
    skip_space();
    const auto start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::uint32_t number() {
    skip_space();
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc{}) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  std::uint32_t colon_number() {
    expect(':');
    return number();
  }

  GroupTable parse() {
    const auto name = word();
    if (name == "trivial") return cyclic(1);
    if (name == "cyclic") return cyclic(colon_number());
    if (name == "elementary") {
      const auto p = colon_number();
      return elementary_abelian(p, colon_number());
    }
    if (name == "symmetric") return symmetric(colon_number());
    if (name == "alternating") return alternating(colon_number());
    if (name == "dihedral") return dihedral(colon_number());
    if (name == "paper") {
      expect(':');
      const auto id = word();
      const auto parsed = parse_paper_group(id);
      if (!parsed) fail("unknown example group \"" + id + "\"");
      return paper_group(*parsed);
    }
    if (name == "file") {
      expect(':');
      const auto start = pos_;
      while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ')') ++pos_;
      if (start == pos_) fail("expected a path");
      return load_group_file(std::string(s_.substr(start, pos_ - start)));
    }
    if (name == "product") {
      expect('(');
      const auto a = parse();
      expect(',');
      const auto b = parse();
      expect(')');
      return direct_product(a, b);
    }
    if (name == "semidirect") {
      expect('(');
      const auto n = parse();
      expect(',');
      const auto h = parse();
      expect(',');
      if (word() != "action") fail("expected action#k");
      expect('#');
      const auto k = number();
      expect(')');
      const auto acts = all_actions(n, h);
      if (k >= acts.size())
        throw GroupError(ErrorCode::InvalidParameter, "action#" + std::to_string(k) + " out of range; " + std::to_string(acts.size()) + " actions exist");
      return semidirect_product(n, h, acts[k]);
    }
    fail("unknown group \"" + name + "\"");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Builds a group from an expression such as "product(cyclic:3,paper:g72_40)"
/// or "semidirect(elementary:3:2,cyclic:4,action#2)".
inline GroupTable parse_group_expr(std::string_view expr) { return detail::ExprParser(expr).parse_all(); }

/// Subgroup selectors: "sylow:p", "gens:a,b,...", "derived", "center",
/// "fitting", "frattini", "whole", "trivial".
inline Subgroup parse_subgroup_spec(const GroupTable& g, std::string_view spec) {
  auto fail = [&](const std::string& why) -> Subgroup {
    throw GroupError(ErrorCode::ParseError, "subgroup \"" + std::string(spec) + "\": " + why);
  };
  auto to_number = [&](std::string_view s) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) fail("expected a number, got \"" + std::string(s) + "\"");
    return v;
  };
  if (spec == "derived") return derived(g);
  if (spec == "center") return center(g);
  if (spec == "fitting") return fitting(g);
  if (spec == "frattini") return frattini(g);
  if (spec == "whole") return whole_group(g);
  if (spec == "trivial") return trivial_subgroup(g);
  if (spec.starts_with("sylow:")) {
    const auto p = to_number(spec.substr(6));
    if (!is_prime(p)) fail("sylow needs a prime");
    return sylow(g, p);
  }
  if (spec.starts_with("gens:")) {
    std::vector<Element> gens;
    std::string_view rest = spec.substr(5);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto x = to_number(rest.substr(0, comma));
      if (x >= g.order()) fail("element " + std::to_string(x) + " out of range");
      gens.push_back(static_cast<Element>(x));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    return subgroup_generated(g, gens);
  }
  return fail("unknown selector");
}

}  // namespace wsu
