#ifndef CARNOT_GROUP_SPEC_IO_HPP
#define CARNOT_GROUP_SPEC_IO_HPP

#include "carnot/lie_algebra.hpp"

#include <string>

namespace carnot {

/// Raised on schema violations in a group spec file.
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when the file cannot be read at all.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Loads a group spec:
///   {"name": str, "dim": n, "weights": ["1","1","2"], "basis": ["X","Y","Z"],
///    "brackets": [{"i":1,"j":2,"k":3,"c":"1"}]}
/// Rationals are strings "p/q"; indices are 1-based. Entries with i > j are
/// folded through antisymmetry; conflicting duplicates raise SpecError.
/// Weights are rescaled so that min q_j = 1.
GradedLieAlgebra load_group_spec(const std::string& path);

GradedLieAlgebra parse_group_spec(const std::string& json_text, const std::string& origin);

}  // namespace carnot

#endif  // CARNOT_GROUP_SPEC_IO_HPP
