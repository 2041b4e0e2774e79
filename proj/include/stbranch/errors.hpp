#pragma once

#include <stdexcept>
#include <string>

namespace stbranch {

enum class errc {
  not_prime,
  even_characteristic,
  size_cap_exceeded,
  zero_input,
  search_cap_exceeded,
  split_failure,
  orthogonality_failure,
  lift_out_of_range,
  not_irreducible,
  not_in_table,
  hypothesis_violation,
  structure_failure,
  internal_mismatch,
  verification_failure,
  io_error,
  usage_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_prime: return "not_prime";
    case errc::even_characteristic: return "even_characteristic";
    case errc::size_cap_exceeded: return "size_cap_exceeded";
    case errc::zero_input: return "zero_input";
    case errc::search_cap_exceeded: return "search_cap_exceeded";
    case errc::split_failure: return "split_failure";
    case errc::orthogonality_failure: return "orthogonality_failure";
    case errc::lift_out_of_range: return "lift_out_of_range";
    case errc::not_irreducible: return "not_irreducible";
    case errc::not_in_table: return "not_in_table";
    case errc::hypothesis_violation: return "hypothesis_violation";
    case errc::structure_failure: return "structure_failure";
    case errc::internal_mismatch: return "internal_mismatch";
    case errc::verification_failure: return "verification_failure";
    case errc::io_error: return "io_error";
    case errc::usage_error: return "usage_error";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

  // Problems with the requested configuration, as opposed to internal failures.
  bool is_config_error() const {
    switch (code_) {
      case errc::not_prime:
      case errc::even_characteristic:
      case errc::size_cap_exceeded:
      case errc::usage_error:
        return true;
      default:
        return false;
    }
  }

 private:
  errc code_;
};

}  // namespace stbranch
