#pragma once

#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace blocklat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different point sets.
class DegreeMismatch : public Error {
public:
  DegreeMismatch(std::size_t a, std::size_t b)
      : Error("degree mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

/// A computation would exceed one of the configured resource limits.
class CapExceeded : public Error {
public:
  CapExceeded(const std::string& what, std::size_t cap)
      : Error(what + " exceeds cap of " + std::to_string(cap)), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t cap_;
};

/// Input violates a documented precondition.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Resource limits shared by the enumeration-heavy operations.
struct Limits {
  std::size_t elements = 2'000'000;       // full group enumeration
  std::size_t lattice = std::size_t{1} << 16;
  std::size_t candidate_blocks = std::size_t{1} << 20;
  std::size_t poset_size = 20;            // down-set enumeration
  std::size_t linear_extensions = 10'000;
  std::size_t two_closure_degree = 16;
  std::size_t subgroup_order = 128;       // quasi-hamiltonian test
  std::size_t sublattice_search = 64;
  std::size_t points = 4096;              // dense relations and product domains

  /// Defaults, with BLOCKLAT_CAP_ELEMENTS overriding the element cap.
  static Limits from_environment() {
    Limits l;
    if (const char* v = std::getenv("BLOCKLAT_CAP_ELEMENTS")) {
      char* end = nullptr;
      const auto parsed = std::strtoull(v, &end, 10);
      if (end != v && *end == '\0' && parsed > 0) l.elements = parsed;
    }
    return l;
  }
};

}  // namespace blocklat
