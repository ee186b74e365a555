#pragma once

#include <string_view>

namespace ptdyn {

// PT-symmetry phase of a parameter point.
enum class Regime { kUnbroken, kBroken, kExceptional };

constexpr std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::kUnbroken:
      return "unbroken";
    case Regime::kBroken:
      return "broken";
    case Regime::kExceptional:
      return "exceptional";
  }
  return "unknown";
}

}  // namespace ptdyn
