#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "ballot/ilp_model.hpp"

namespace ballot {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CPLEX-style LP text. Every variable appears in the objective (zero
/// coefficients included) so the declaration order survives a re-import.
/// Constraint tags are written as `\@tag` comment lines before their row.
std::string export_lp(const LinearProgram& model);

/// Reads the subset of LP format that export_lp writes: one objective,
/// rows with optional names, finite bounds, Binaries and Generals sections.
LinearProgram parse_lp(std::string_view text);

/// Fixed-field MPS with OBJSENSE, INTORG/INTEND markers and explicit bounds.
std::string export_mps(const LinearProgram& model);

/// Name as written to LP/MPS files; throws FormatError on collisions.
std::string sanitize_name(std::string_view name);

}  // namespace ballot
