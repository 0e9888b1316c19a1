#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pglob {

/// Elements of every finite carrier are dense 0-based indices.
using Elem = std::uint32_t;

/// Marks an undefined cell of a partial table. Distinct from every index.
inline constexpr Elem kUndefined = std::numeric_limits<Elem>::max();

inline bool is_defined(Elem e) noexcept { return e != kUndefined; }

enum class ViolationKind { structural, axiom };

/// One failed check. `witness` holds element indices whose meaning is fixed
/// per rule (e.g. the triple (a,b,c) for "associativity"); `message` is the
/// same witness rendered with element names.
struct Violation {
  ViolationKind kind = ViolationKind::axiom;
  std::string rule;
  std::vector<std::size_t> witness;
  std::string message;
};

class ValidationReport {
 public:
  [[nodiscard]] bool valid() const noexcept { return violations_.empty(); }
  [[nodiscard]] bool structurally_sound() const noexcept;
  [[nodiscard]] const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }
  [[nodiscard]] bool has_rule(std::string_view rule) const noexcept;
  [[nodiscard]] const Violation* find(std::string_view rule) const noexcept;

  void add(Violation v) { violations_.push_back(std::move(v)); }
  void structural(std::string rule, std::string message,
                  std::vector<std::size_t> witness = {});
  void axiom(std::string rule, std::string message,
             std::vector<std::size_t> witness = {});
  void merge(const ValidationReport& other);

  /// All messages joined by "; ".
  [[nodiscard]] std::string summary() const;

 private:
  std::vector<Violation> violations_;
};

/// Table shapes or indices are malformed.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structure is well-formed but violates one of its defining axioms.
class AxiomError : public std::runtime_error {
 public:
  explicit AxiomError(ValidationReport report)
      : std::runtime_error(report.summary()), report_(std::move(report)) {}
  [[nodiscard]] const ValidationReport& report() const noexcept {
    return report_;
  }

 private:
  ValidationReport report_;
};

/// An operation was called outside its precondition.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal cross-check failed. Indicates a bug, never bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool condition, const std::string& what) {
  if (!condition) {
    throw InvariantViolation(what);
  }
}

}  // namespace pglob
