#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace driftkit {

enum class CaseStyle { Camel, Snake, Pascal, ScreamingSnake };

std::string_view to_string(CaseStyle style);
std::optional<CaseStyle> parse_case_style(std::string_view name);

/// Full-match test against the style's pattern:
///   snake            [a-z0-9]+(?:_[A-Za-z0-9]+)+
///   camel            [a-z]+(?:[A-Z]+[A-Za-z0-9]+[A-Za-z0-9]*)+
///   pascal           [A-Z][a-z0-9]+(?:[A-Z][A-Za-z0-9]*)*
///   screaming_snake  [A-Z0-9]+(?:_[A-Z0-9]+)+
bool match_case_style(std::string_view identifier, CaseStyle style);

/// Splits an identifier into words. Snake styles split at underscores;
/// camel/pascal split before every upper-case run, so digits stay with the
/// preceding word and "parseURL" yields {"parse", "URL"}.
std::vector<std::string> segment_identifier(std::string_view identifier, CaseStyle style);

/// Re-joins the segments of `identifier` in `target`. Throws StyleError when
/// the identifier does not match `source` (pascal sources additionally need
/// at least two segments).
std::string convert_case(std::string_view identifier, CaseStyle source, CaseStyle target);

}  // namespace driftkit
