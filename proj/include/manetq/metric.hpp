#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "manetq/errors.hpp"

namespace manetq {

// The quality-parameter family, plus coveredness and exact k-disconnection.
class MetricKind {
 public:
  enum class Tag : std::uint8_t {
    Connectedness,
    Coveredness,
    Coverage,
    Segmentation,
    Vulnerability,
    Reachability,
    Disconnection,
  };

  static constexpr MetricKind connectedness() { return MetricKind(Tag::Connectedness); }
  static constexpr MetricKind coveredness() { return MetricKind(Tag::Coveredness); }
  static constexpr MetricKind coverage() { return MetricKind(Tag::Coverage); }
  static constexpr MetricKind segmentation() { return MetricKind(Tag::Segmentation); }
  static constexpr MetricKind vulnerability() { return MetricKind(Tag::Vulnerability); }
  static constexpr MetricKind reachability() { return MetricKind(Tag::Reachability); }
  static constexpr MetricKind disconnection(std::uint64_t k) { return MetricKind(Tag::Disconnection, k); }

  constexpr Tag tag() const noexcept { return tag_; }
  constexpr std::uint64_t k() const noexcept { return k_; }

  /// Intensive parameters have a limit in n*rho -> nu.
  constexpr bool intensive() const noexcept {
    return tag_ == Tag::Coverage || tag_ == Tag::Segmentation || tag_ == Tag::Vulnerability;
  }

  std::string name() const {
    switch (tag_) {
      case Tag::Connectedness: return "connectedness";
      case Tag::Coveredness: return "coveredness";
      case Tag::Coverage: return "coverage";
      case Tag::Segmentation: return "segmentation";
      case Tag::Vulnerability: return "vulnerability";
      case Tag::Reachability: return "reachability";
      case Tag::Disconnection: return "disc:" + std::to_string(k_);
    }
    return "?";
  }

  /// Accepts the full names above, "conn", and "disc:<k>".
  static MetricKind parse(std::string_view s) {
    if (s == "conn" || s == "connectedness") return connectedness();
    if (s == "covered" || s == "coveredness") return coveredness();
    if (s == "coverage") return coverage();
    if (s == "seg" || s == "segmentation") return segmentation();
    if (s == "vuln" || s == "vulnerability") return vulnerability();
    if (s == "reach" || s == "reachability") return reachability();
    if (s.starts_with("disc:")) {
      const auto digits = s.substr(5);
      if (digits.empty() || digits.size() > 18) throw ParseError("bad metric '" + std::string(s) + "'");
      std::uint64_t k = 0;
      for (char c : digits) {
        if (c < '0' || c > '9') throw ParseError("bad metric '" + std::string(s) + "'");
        k = k * 10 + static_cast<std::uint64_t>(c - '0');
      }
      return disconnection(k);
    }
    throw ParseError("unknown metric '" + std::string(s) + "'");
  }

  friend constexpr auto operator<=>(const MetricKind&, const MetricKind&) = default;

 private:
  constexpr explicit MetricKind(Tag tag, std::uint64_t k = 0) : tag_(tag), k_(k) {}

  Tag tag_;
  std::uint64_t k_;
};

}  // namespace manetq
