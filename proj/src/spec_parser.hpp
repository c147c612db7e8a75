#pragma once

#include <map>
#include <string>

#include "cuc/traceset.hpp"
#include "lexer.hpp"

namespace cuc::detail {

/// `true`, `false`, or an optionally negated decimal integer.
Value parse_value_literal(TokenStream& ts);

TracePattern parse_trace_pattern(TokenStream& ts, const std::map<std::string, TracePattern>& named);

}  // namespace cuc::detail
