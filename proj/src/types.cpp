#include "pglob/types.hpp"

#include <algorithm>

namespace pglob {

bool ValidationReport::structurally_sound() const noexcept {
  return std::none_of(violations_.begin(), violations_.end(), [](const Violation& v) {
    return v.kind == ViolationKind::structural;
  });
}

bool ValidationReport::has_rule(std::string_view rule) const noexcept {
  return find(rule) != nullptr;
}

const Violation* ValidationReport::find(std::string_view rule) const noexcept {
  for (const auto& v : violations_) {
    if (v.rule == rule) {
      return &v;
    }
  }
  return nullptr;
}

void ValidationReport::structural(std::string rule, std::string message,
                                  std::vector<std::size_t> witness) {
  violations_.push_back(
      {ViolationKind::structural, std::move(rule), std::move(witness), std::move(message)});
}

void ValidationReport::axiom(std::string rule, std::string message,
                             std::vector<std::size_t> witness) {
  violations_.push_back(
      {ViolationKind::axiom, std::move(rule), std::move(witness), std::move(message)});
}

void ValidationReport::merge(const ValidationReport& other) {
  violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
}

std::string ValidationReport::summary() const {
  if (violations_.empty()) {
    return "valid";
  }
  std::string out;
  for (const auto& v : violations_) {
    if (!out.empty()) {
      out += "; ";
    }
    out += v.rule + ": " + v.message;
  }
  return out;
}

}  // namespace pglob
