#pragma once

// JSON instance files.
//
//   {
//     "group":     {"kind": "group", "elements": [...], "table": [[...], ...]},
//     "semigroup": {"kind": "semigroup", "elements": [...], "table": [[...], ...]},
//     "algebra":   {"kind": "partial_algebra", "elements": [...],
//                   "signature": [2, 1], "ops": [{"table": ..., "undefined": "-"}]},
//     "carrier":   [...],
//     "theta":     {"x": {"u": "v", ...}, ...},
//     "relations": [{"arity": 3, "tuples": [["u", "t", "0"], ...]}],
//     "amalgam":   {"kind": "semigroup", "indices": [...], "members": [<structure>...],
//                   "maps": [{"from": "1", "to": "x", "map": {"0": "0", ...}}]}
//   }
//
// At most one of "semigroup" and "algebra" is given; the carrier defaults to
// its elements. Omitted theta entries are undefined and the identity's map
// may be omitted. Operation tables nest one level per argument, or are flat
// row-major lists; a nullary table is a single entry.

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pglob/amalgam.hpp"
#include "pglob/relational.hpp"

namespace pglob {

struct InstanceFile {
  std::optional<FiniteGroup> group;
  std::vector<std::string> carrier;
  std::optional<FiniteSemigroup> semigroup;
  /// The partial algebra, or the semigroup viewed as one binary operation.
  std::optional<FinitePartialAlgebra> algebra;
  std::optional<PartialAction> action;
  std::optional<RelationalSystem> relations;
  std::optional<Amalgam> amalgam;
  /// Unknown keys, as JSON pointers.
  std::vector<std::string> warnings;
};

struct InputIssue {
  /// JSON pointer to the offending value ("" for the whole document).
  std::string pointer;
  std::string message;
};

class InputError : public std::runtime_error {
 public:
  explicit InputError(std::vector<InputIssue> issues);
  InputError(std::string pointer, std::string message)
      : InputError(std::vector<InputIssue>{{std::move(pointer), std::move(message)}}) {}
  [[nodiscard]] const std::vector<InputIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<InputIssue> issues_;
};

/// Parses and validates an instance. Table shapes, name references and the
/// group, semigroup and partial action axioms are all checked; failures
/// throw InputError with one issue per problem found.
InstanceFile parse_instance(std::istream& in);
InstanceFile parse_instance_text(const std::string& text);
/// "-" reads standard input.
InstanceFile load_instance(const std::string& path);

}  // namespace pglob
