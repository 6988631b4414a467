#ifndef IMCAUG_LANG_PARSER_HPP
#define IMCAUG_LANG_PARSER_HPP

#include <optional>
#include <string>

#include "imcaug/lang/ast.hpp"

namespace imcaug::lang {

// Parses and validates a .slp program. Throws ParseError with line/column
// on syntax errors, undeclared or duplicate variables, width mismatches,
// constants that do not fit the width, or nondet() in a post-assertion.
// `width_override`, when set, replaces every declared width (the CLI's
// --width flag); it must be one of 4, 8, 16, 32.
Program parse(const std::string& source,
              std::optional<unsigned> width_override = std::nullopt);

// Renders a program back to parseable source.
std::string pretty_print(const Program& p);

}  // namespace imcaug::lang

#endif
