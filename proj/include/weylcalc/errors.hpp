#ifndef WEYLCALC_ERRORS_HPP
#define WEYLCALC_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace weylcalc {

/// Thrown when a computation would materialize more coordinates than the
/// configured cap allows.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what_for, std::uint64_t requested, std::uint64_t cap)
      : std::runtime_error(what_for + " needs " + std::to_string(requested) +
                           " coordinates, cap is " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}

  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t requested_;
  std::uint64_t cap_;
};

class UnsupportedRootSystem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Resource limits shared by the algebra engine and the calculus.
struct Limits {
  /// Upper bound on the number of coordinates a single elimination step may
  /// materialize.
  std::uint64_t monomial_cap = std::uint64_t{1} << 20;
};

}  // namespace weylcalc

#endif  // WEYLCALC_ERRORS_HPP
