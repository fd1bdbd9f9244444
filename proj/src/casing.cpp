#include "driftkit/casing.hpp"

#include <cctype>
#include <regex>

#include "driftkit/errors.hpp"

namespace driftkit {

std::string_view to_string(CaseStyle style) {
  switch (style) {
    case CaseStyle::Camel: return "camel";
    case CaseStyle::Snake: return "snake";
    case CaseStyle::Pascal: return "pascal";
    case CaseStyle::ScreamingSnake: return "screaming_snake";
  }
  return "?";
}

std::optional<CaseStyle> parse_case_style(std::string_view name) {
  if (name == "camel") return CaseStyle::Camel;
  if (name == "snake") return CaseStyle::Snake;
  if (name == "pascal") return CaseStyle::Pascal;
  if (name == "screaming_snake") return CaseStyle::ScreamingSnake;
  return std::nullopt;
}

namespace {

const std::regex& pattern(CaseStyle style) {
  static const std::regex snake("[a-z0-9]+(?:_[A-Za-z0-9]+)+");
  static const std::regex camel("[a-z]+(?:[A-Z]+[A-Za-z0-9]+[A-Za-z0-9]*)+");
  static const std::regex pascal("[A-Z][a-z0-9]+(?:[A-Z][A-Za-z0-9]*)*");
  static const std::regex screaming("[A-Z0-9]+(?:_[A-Z0-9]+)+");
  switch (style) {
    case CaseStyle::Camel: return camel;
    case CaseStyle::Snake: return snake;
    case CaseStyle::Pascal: return pascal;
    case CaseStyle::ScreamingSnake: return screaming;
  }
  return snake;
}

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string capitalized(std::string_view s) {
  std::string out = lower(s);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

}  // namespace

bool match_case_style(std::string_view identifier, CaseStyle style) {
  // Identifiers are short; anything with non-ASCII bytes can never match.
  return std::regex_match(identifier.begin(), identifier.end(), pattern(style));
}

std::vector<std::string> segment_identifier(std::string_view identifier, CaseStyle style) {
  std::vector<std::string> out;
  if (style == CaseStyle::Snake || style == CaseStyle::ScreamingSnake) {
    std::size_t start = 0;
    while (start <= identifier.size()) {
      auto us = identifier.find('_', start);
      if (us == std::string_view::npos) us = identifier.size();
      if (us > start) out.emplace_back(identifier.substr(start, us - start));
      start = us + 1;
    }
    return out;
  }
  std::size_t start = 0;
  for (std::size_t i = 1; i < identifier.size(); ++i) {
    if (is_upper(identifier[i]) && !is_upper(identifier[i - 1])) {
      out.emplace_back(identifier.substr(start, i - start));
      start = i;
    }
  }
  if (start < identifier.size()) out.emplace_back(identifier.substr(start));
  return out;
}

std::string convert_case(std::string_view identifier, CaseStyle source, CaseStyle target) {
  if (!match_case_style(identifier, source)) {
    throw StyleError("'" + std::string(identifier) + "' is not " + std::string(to_string(source)) + " case");
  }
  auto segments = segment_identifier(identifier, source);
  if (source == CaseStyle::Pascal && segments.size() < 2) {
    throw StyleError("'" + std::string(identifier) + "' has no word boundary to convert");
  }
  std::string out;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const auto& seg = segments[k];
    switch (target) {
      case CaseStyle::Snake:
        if (k) out += '_';
        out += lower(seg);
        break;
      case CaseStyle::ScreamingSnake:
        if (k) out += '_';
        out += upper(seg);
        break;
      case CaseStyle::Camel:
        out += k == 0 ? lower(seg) : capitalized(seg);
        break;
      case CaseStyle::Pascal:
        out += capitalized(seg);
        break;
    }
  }
  return out;
}

}  // namespace driftkit
