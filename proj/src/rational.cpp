#include "vetocore/rational.hpp"

#include <cctype>

#include "vetocore/error.hpp"

namespace vetocore {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::malformed_header: return "MalformedHeader";
    case ErrorCode::not_a_permutation: return "NotAPermutation";
    case ErrorCode::count_mismatch: return "CountMismatch";
    case ErrorCode::empty_election: return "EmptyElection";
    case ErrorCode::k_out_of_range: return "KOutOfRange";
    case ErrorCode::l_out_of_range: return "LOutOfRange";
    case ErrorCode::empty_subset: return "EmptySubset";
    case ErrorCode::invalid_order: return "InvalidOrder";
    case ErrorCode::invalid_weights: return "InvalidWeights";
    case ErrorCode::budget_exceeded: return "BudgetExceeded";
    case ErrorCode::subset_budget_exceeded: return "SubsetBudgetExceeded";
    case ErrorCode::too_large: return "TooLarge";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::invalid_assignment: return "InvalidAssignment";
    case ErrorCode::infeasible_model: return "InfeasibleModel";
    case ErrorCode::not_perfect: return "NotPerfect";
    case ErrorCode::decomposition_failure: return "DecompositionFailure";
    case ErrorCode::missing_edge: return "MissingEdge";
    case ErrorCode::coalition_bound_violated: return "CoalitionBoundViolated";
    case ErrorCode::conservation_violated: return "ConservationViolated";
    case ErrorCode::cost_exceeded: return "CostExceeded";
    case ErrorCode::bad_params: return "BadParams";
    case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view original) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw Error(ErrorCode::invalid_argument, "not a rational: '" + std::string(original) + "'");
  }
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) {
      throw Error(ErrorCode::invalid_argument, "not a rational: '" + std::string(text) + "'");
    }
    mpz_class den(std::string(den_text), 10);
    if (den == 0) throw Error(ErrorCode::invalid_argument, "zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
      throw Error(ErrorCode::invalid_argument, "not a rational: '" + std::string(text) + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class num = mpz_class(std::string(whole.empty() ? "0" : whole), 10) * scale +
                    mpz_class(std::string(frac), 10);
    Rational r(negative ? mpz_class(-num) : num, scale);
    r.canonicalize();
    return r;
  }
  return Rational(parse_integer(text, text));
}

mpz_class floor(const Rational& value) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

mpz_class ceil(const Rational& value) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace vetocore
