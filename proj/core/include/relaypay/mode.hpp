#pragma once

#include <optional>
#include <string_view>

namespace relaypay {

/// Direct transmission or cooperative (relay-assisted) transmission.
enum class Mode { DT, CT };

constexpr std::string_view to_string(Mode m) { return m == Mode::CT ? "CT" : "DT"; }

/// The five transmission schemes compared throughout the experiments.
enum class Scheme { DT, FullNSD, FullSD, PartNSD, PartSD };

inline constexpr Scheme kAllSchemes[] = {Scheme::DT, Scheme::PartNSD, Scheme::PartSD,
                                         Scheme::FullNSD, Scheme::FullSD};

constexpr std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::DT: return "DT";
    case Scheme::FullNSD: return "FullNSD";
    case Scheme::FullSD: return "FullSD";
    case Scheme::PartNSD: return "PartNSD";
    case Scheme::PartSD: return "PartSD";
  }
  return "?";
}

constexpr std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : kAllSchemes) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

constexpr bool is_splittable(Scheme s) { return s == Scheme::FullSD || s == Scheme::PartSD; }
constexpr bool is_full_info(Scheme s) { return s == Scheme::FullNSD || s == Scheme::FullSD; }
constexpr bool is_partial_info(Scheme s) { return s == Scheme::PartNSD || s == Scheme::PartSD; }

}  // namespace relaypay
