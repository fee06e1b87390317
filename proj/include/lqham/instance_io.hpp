#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "lqham/matrix.hpp"
#include "lqham/synthesis.hpp"

namespace lqham {

/// Shortest form is not used: every double is written with 17 significant
/// digits ("%.17g"), which reproduces the value exactly when read back.
std::string format_double(double v);

/// JSON-style nested row-major array, one row per line at `indent`.
std::string format_matrix(const Matrix& mat, int indent);

/// Parses an instance document:
///
///   {"n": 2, "m": 1, "kf": 4, "A": [[..], [..]], "B": .., "Q": .., "R": ..,
///    "S": ..}
///
/// Syntax errors, missing fields and shape mismatches raise ParseError with
/// the line or field at fault. The parsed instance is then validated, so
/// asymmetric Q/R or an indefinite cost matrix raise InstanceInvalid.
ProblemInstance parse_instance(std::string_view text);

/// Inverse of parse_instance; byte-stable for a given instance.
std::string serialize_instance(const ProblemInstance& inst);

ProblemInstance load_instance(const std::string& path);
void save_text(const std::string& path, const std::string& text);

/// Deterministic random instance for a seed. A has uniform entries in
/// [−1, 1) rescaled to a spectral-radius estimate of 0.9; B is uniform;
/// [[Q, S], [Sᵀ, R]] = LLᵀ for uniform L, with 1e-6·I added to R.
ProblemInstance generate_instance(std::uint64_t seed, std::size_t n,
                                  std::size_t m, std::size_t kf);

}  // namespace lqham
