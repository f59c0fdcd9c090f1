#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace covarr {

/// Error kinds raised by the library. Tests match on the code, CLIs on the message.
enum class Errc {
  bad_argument,
  non_prime,
  degree_out_of_range,
  order_too_large,
  mixed_fields,
  zero_inverse,
  length_mismatch,
  strength_too_large,
  budget_exceeded,
  alphabet_grow,
  too_many_vectors,
  not_prime_power,
  k_less_than_t,
  gave_up,
  bad_epsilon,
  instance_too_large,
  illegal_weighting,
  empty_support,
  isolated_vertex,
  parse_error,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace covarr
