#pragma once

#include <stdexcept>
#include <string>

namespace vetocore {

enum class ErrorCode {
  malformed_header,
  not_a_permutation,
  count_mismatch,
  empty_election,
  k_out_of_range,
  l_out_of_range,
  empty_subset,
  invalid_order,
  invalid_weights,
  budget_exceeded,
  subset_budget_exceeded,
  too_large,
  dimension_mismatch,
  invalid_assignment,
  infeasible_model,
  not_perfect,
  decomposition_failure,
  missing_edge,
  coalition_bound_violated,
  conservation_violated,
  cost_exceeded,
  bad_params,
  invalid_argument,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Refusals caused by a configured enumeration cap rather than bad input.
  bool is_budget_refusal() const noexcept {
    return code_ == ErrorCode::budget_exceeded || code_ == ErrorCode::subset_budget_exceeded;
  }

 private:
  ErrorCode code_;
};

/// Election text errors carry the 1-based line of the first offending line.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, int line, const std::string& detail)
      : Error(code, "line " + std::to_string(line) + ": " + detail), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace vetocore
