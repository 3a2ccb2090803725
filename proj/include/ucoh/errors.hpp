#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ucoh {

enum class ErrorKind {
  invalid_vertex,
  invalid_input,
  budget_exceeded,
  not_a_tiling,
  non_total_table,
  not_exchangeable,
  no_path,
  not_closed,
  ill_defined_pairing,
  window_too_small,
  cocycle_violated,
  splitting_infeasible,
  support_leaves_window,
  not_invariant,
  inconsistent_cocycle,
  decomposition_residual,
};

std::string_view kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ucoh
