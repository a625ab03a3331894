#pragma once

#include <stdexcept>
#include <string>

namespace gridtie {

enum class Errc {
    invalid_switch_state,
    degenerate_duty,
    infeasible_gain,
    invalid_power_factor,
    no_real_root,
    insufficient_points,
    window_too_short,
    numeric_blowup,
    bad_config,
    bad_argument,
};

// Library-wide error type. numerical() separates solver/integrator failures
// from argument and configuration mistakes; the CLI maps the two classes to
// exit codes 2 and 1.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

    bool numerical() const noexcept {
        return code_ == Errc::no_real_root || code_ == Errc::numeric_blowup;
    }

  private:
    Errc code_;
};

}  // namespace gridtie
