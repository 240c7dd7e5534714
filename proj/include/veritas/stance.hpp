// Binary stances and the sign convention used throughout the engine.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace veritas {

enum class Stance : std::uint8_t { Top, Bottom };

inline Stance negate(Stance s) {
  return s == Stance::Top ? Stance::Bottom : Stance::Top;
}

// Evidence sign to stance; zero resolves to Bottom so the map is total.
inline Stance sign_stance(double evidence) {
  return evidence > 0.0 ? Stance::Top : Stance::Bottom;
}

inline double stance_sign(Stance s) {
  return s == Stance::Top ? 1.0 : -1.0;
}

inline std::string_view to_string(Stance s) {
  return s == Stance::Top ? "top" : "bottom";
}

inline Stance stance_from_string(std::string_view text) {
  if (text == "top") return Stance::Top;
  if (text == "bottom") return Stance::Bottom;
  throw std::invalid_argument("stance_from_string: unknown stance '" + std::string(text) + "'");
}

}  // namespace veritas
