#pragma once

#include <stdexcept>
#include <string>

namespace fc {

// Error categories, mirrored one-to-one by fc_status in the public C header.
enum class errc {
  ok = 0,
  not_probability,
  empty_measure,
  non_finite_position,
  parse_error,
  io_error,
  bad_t,
  pole_hit,
  outside_omega,
  not_in_vplus,
  dirac_measure,
  empty_rho,
  bad_dimension,
  degenerate_density,
  unknown_law,
  null_argument,
  internal,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace fc
