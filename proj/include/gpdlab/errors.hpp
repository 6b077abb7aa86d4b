#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gpdlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A group or groupoid axiom failed. `kind` names the axiom, `witness` holds
/// the offending element indices (a triple for associativity, a pair for
/// composability, ...).
class AxiomViolation : public Error {
 public:
  AxiomViolation(std::string kind, std::vector<std::size_t> witness)
      : Error(describe(kind, witness)), kind_(std::move(kind)), witness_(std::move(witness)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  static std::string describe(const std::string& kind, const std::vector<std::size_t>& w) {
    std::string s = "axiom violation (" + kind + ")";
    if (!w.empty()) {
      s += " at [";
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w[i]);
      }
      s += "]";
    }
    return s;
  }

  std::string kind_;
  std::vector<std::size_t> witness_;
};

class OrderMismatch : public Error {
 public:
  OrderMismatch(std::size_t a, std::size_t b)
      : Error("group orders differ: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class UnsupportedSize : public Error {
 public:
  using Error::Error;
};

class NonAbelianVertex : public Error {
 public:
  explicit NonAbelianVertex(std::size_t object)
      : Error("vertex group at object " + std::to_string(object) + " is not abelian"), object_(object) {}
  std::size_t object() const noexcept { return object_; }

 private:
  std::size_t object_;
};

class TransportAmbiguity : public Error {
 public:
  using Error::Error;
};

/// Raised when an enumeration would exceed its configured budget. `size`
/// is the quantity that tripped the limit.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t size, std::size_t limit)
      : Error("budget exceeded: " + what + " = " + std::to_string(size) + " (limit " +
              std::to_string(limit) + ")"),
        size_(size) {}
  std::size_t size() const noexcept { return size_; }

 private:
  std::size_t size_;
};

class NotInvariant : public Error {
 public:
  using Error::Error;
};

class RegularityFailure : public Error {
 public:
  using Error::Error;
};

class DecompositionFailure : public Error {
 public:
  using Error::Error;
};

class NoProbeAvailable : public Error {
 public:
  using Error::Error;
};

/// Different probes gave different verdicts for the same pair of paths.
class ProbeDisagreement : public Error {
 public:
  using Error::Error;
};

class ClaimFailure : public Error {
 public:
  ClaimFailure(std::string claim, const std::string& witness)
      : Error("claim " + claim + " failed: " + witness), claim_(std::move(claim)) {}
  const std::string& claim() const noexcept { return claim_; }

 private:
  std::string claim_;
};

class TransitionNotEpi : public Error {
 public:
  using Error::Error;
};

class FunctorialityFailure : public Error {
 public:
  using Error::Error;
};

class NotDirected : public Error {
 public:
  using Error::Error;
};

class NotWellDefined : public Error {
 public:
  using Error::Error;
};

/// Malformed input (bad JSON shape, out-of-range index, unknown name).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace gpdlab
