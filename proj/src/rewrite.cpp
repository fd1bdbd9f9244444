#include "driftkit/rewrite.hpp"

#include <cctype>
#include <set>

#include "driftkit/errors.hpp"

namespace driftkit {

std::string_view to_string(EditType type) {
  return type == EditType::Underscore ? "underscore" : "whitespace";
}

namespace {

void require(const RewriteRule& rule, RuleKind kind, Language language) {
  if (rule.kind != kind) {
    throw ContractError("rule " + rule.id + " is not a " + (kind == RuleKind::Naming ? "naming" : "spacing") + " rule");
  }
  if (!rule.applies_to(language)) {
    throw ContractError("rule " + rule.id + " does not apply to " + std::string(to_string(language)));
  }
}

char fold(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

// Underscore insertions/deletions turning `from` into `to`, positioned in the
// original text (`base` is the identifier's offset there).
void diff_underscores(std::string_view from, std::string_view to, std::size_t base,
                      std::vector<EditEvent>& events) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < from.size() || j < to.size()) {
    const bool fu = i < from.size() && from[i] == '_';
    const bool tu = j < to.size() && to[j] == '_';
    if (fu && tu) {
      ++i;
      ++j;
    } else if (tu) {
      events.push_back({base + i, +1, EditType::Underscore});
      ++j;
    } else if (fu) {
      events.push_back({base + i, -1, EditType::Underscore});
      ++i;
    } else {
      if (i >= from.size() || j >= to.size() || fold(from[i]) != fold(to[j])) {
        throw ContractError("case conversion changed more than casing and underscores: '" +
                            std::string(from) + "' -> '" + std::string(to) + "'");
      }
      ++i;
      ++j;
    }
  }
}

}  // namespace

RewriteResult apply_naming_rewrite(const TokenIndex& index, const IdentifierContext& context,
                                   const RewriteRule& rule) {
  require(rule, RuleKind::Naming, index.language);

  std::set<std::string> existing;
  std::set<std::string> eligible;
  for (const auto& tok : index.tokens) {
    if (tok.kind != TokenKind::Identifier) continue;
    existing.insert(tok.lexeme);
    const bool mutable_name =
        !context.immutable.contains(tok.lexeme) || context.declarations.contains(tok.lexeme);
    if (mutable_name && match_case_style(tok.lexeme, rule.source_style)) eligible.insert(tok.lexeme);
  }

  RenameMap candidates;
  std::map<std::string, int> target_uses;
  for (const auto& name : eligible) {
    std::string target;
    try {
      target = convert_case(name, rule.source_style, rule.target_style);
    } catch (const StyleError&) {
      continue;
    }
    if (target == name || existing.contains(target) || is_keyword(target, index.language)) continue;
    ++target_uses[target];
    candidates.emplace(name, std::move(target));
  }

  RewriteResult result;
  for (auto& [from, to] : candidates) {
    if (target_uses[to] == 1) result.renames.emplace(from, to);
  }

  const std::string& src = index.source;
  std::size_t copied = 0;
  for (const auto& tok : index.tokens) {
    if (tok.kind != TokenKind::Identifier) continue;
    auto it = result.renames.find(tok.lexeme);
    if (it == result.renames.end()) continue;
    result.rewritten.append(src, copied, tok.span.begin - copied);
    result.rewritten += it->second;
    copied = tok.span.end;
    diff_underscores(tok.lexeme, it->second, tok.span.begin, result.events);
  }
  result.rewritten.append(src, copied, std::string::npos);
  return result;
}

RewriteResult apply_spacing_rewrite(const TokenIndex& index, const RewriteRule& rule) {
  require(rule, RuleKind::Spacing, index.language);
  RewriteResult result;
  const std::string& src = index.source;
  std::size_t copied = 0;
  for (std::size_t k = 0; k + 1 < index.tokens.size(); ++k) {
    const auto& first = index.tokens[k];
    const auto& last = index.tokens[k + 1];
    if (first.span.end != last.span.begin) continue;
    if (!rule.former.matches(first, rule.wildcard_exclude) || !rule.latter.matches(last, rule.wildcard_exclude)) {
      continue;
    }
    result.rewritten.append(src, copied, last.span.begin - copied);
    result.rewritten += ' ';
    copied = last.span.begin;
    result.events.push_back({last.span.begin, +1, EditType::Whitespace});
  }
  result.rewritten.append(src, copied, std::string::npos);
  return result;
}

RewriteResult apply_rule(const TokenIndex& index, const RewriteRule& rule, const ImmutableTypes& types) {
  if (rule.kind == RuleKind::Spacing) return apply_spacing_rewrite(index, rule);
  return apply_naming_rewrite(index, classify_identifiers(index, types), rule);
}

std::vector<std::string> propagate_renames(std::span<const std::string> patches, const RenameMap& renames,
                                           Language language) {
  std::vector<std::string> out;
  out.reserve(patches.size());
  for (const auto& patch : patches) {
    if (renames.empty()) {
      out.push_back(patch);
      continue;
    }
    TokenIndex index = lex(patch, language);
    std::string text;
    std::size_t copied = 0;
    for (const auto& tok : index.tokens) {
      if (tok.kind != TokenKind::Identifier) continue;
      auto it = renames.find(tok.lexeme);
      if (it == renames.end()) continue;
      text.append(patch, copied, tok.span.begin - copied);
      text += it->second;
      copied = tok.span.end;
    }
    text.append(patch, copied, std::string::npos);
    out.push_back(std::move(text));
  }
  return out;
}

std::string replay_events(std::string_view original, std::span<const EditEvent> events) {
  std::string out;
  std::size_t copied = 0;
  for (const auto& e : events) {
    if (e.pos < copied || e.pos > original.size()) throw ContractError("events are not ascending");
    out.append(original.substr(copied, e.pos - copied));
    copied = e.pos;
    if (e.delta > 0) {
      out += e.type == EditType::Underscore ? '_' : ' ';
    } else {
      if (e.pos >= original.size()) throw ContractError("deletion past end of text");
      copied = e.pos + 1;
    }
  }
  out.append(original.substr(copied));
  return out;
}

}  // namespace driftkit
