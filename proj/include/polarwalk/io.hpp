#pragma once

#include <string>
#include <variant>

#include "polarwalk/config.hpp"
#include "polarwalk/f2poly.hpp"
#include "polarwalk/truth_table.hpp"

namespace polarwalk {

using FunctionInput = std::variant<TruthTable, F2Polynomial>;

// Auto-detects the format: a leading "n=" header means a truth table,
// monomial lines mean a field polynomial. Raises IoError (with a line
// reference) on anything else.
FunctionInput parse_function_input(const std::string& path, const Caps& caps = Caps{});

// Convenience: the sign table behind either input kind.
TruthTable input_truth_table(const FunctionInput& input, const Caps& caps = Caps{});

}  // namespace polarwalk
