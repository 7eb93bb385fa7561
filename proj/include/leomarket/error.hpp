// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace leomarket {

enum class Errc {
  degenerate_geometry,
  zero_distance,
  singular_denominator,
  infeasible,
  no_eligible_users,
  non_finite_gradient,
  no_online_node,
  shape_mismatch,
  empty_update_set,
  missing_snapshot,
  invalid_config,
  io,
  parse,
};

std::string_view to_string(Errc code) noexcept;

/// Every recoverable failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::degenerate_geometry: return "DegenerateGeometry";
    case Errc::zero_distance: return "ZeroDistance";
    case Errc::singular_denominator: return "SingularDenominator";
    case Errc::infeasible: return "Infeasible";
    case Errc::no_eligible_users: return "NoEligibleUsers";
    case Errc::non_finite_gradient: return "NonFiniteGradient";
    case Errc::no_online_node: return "NoOnlineNode";
    case Errc::shape_mismatch: return "ShapeMismatch";
    case Errc::empty_update_set: return "EmptyUpdateSet";
    case Errc::missing_snapshot: return "MissingSnapshot";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::io: return "IoError";
    case Errc::parse: return "ParseError";
  }
  return "Unknown";
}

}  // namespace leomarket
