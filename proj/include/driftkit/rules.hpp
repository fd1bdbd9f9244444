#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "driftkit/casing.hpp"
#include "driftkit/lexer.hpp"

namespace driftkit {

enum class RuleKind { Naming, Spacing };

/// One side of a spacing bigram.
struct TokenMatcher {
  enum class Type { Lexeme, AnyOperator, Identifier, IdentifierOrOperator };
  Type type = Type::Lexeme;
  std::string lexeme;

  /// `excluded` lists lexemes the operator wildcard never matches.
  bool matches(const CodeToken& token, const std::set<std::string>& excluded) const;
  std::string describe() const;
  /// True when the matcher names one concrete lexeme or the identifier class.
  bool has_surface_form() const { return type == Type::Lexeme || type == Type::Identifier; }

  friend bool operator==(const TokenMatcher&, const TokenMatcher&) = default;
};

struct RewriteRule {
  std::string id;    // N1..N6, S1..S18
  std::string name;  // e.g. "rparentheses-period"
  RuleKind kind = RuleKind::Spacing;
  std::set<Language> languages;
  // naming
  CaseStyle source_style = CaseStyle::Camel;
  CaseStyle target_style = CaseStyle::Snake;
  // spacing
  TokenMatcher former;
  TokenMatcher latter;
  std::set<std::string> wildcard_exclude;

  bool applies_to(Language language) const { return languages.contains(language); }
  friend bool operator==(const RewriteRule&, const RewriteRule&) = default;
};

/// Ordered rule list as read from a catalog file.
///
/// Catalog lines (`#` comments):
///   <id> naming  <langs> <source-style> -> <target-style> [name=<n>]
///   <id> spacing <langs> <former> <latter> [name=<n>] [exclude=<lexeme>,...]
/// where <langs> is `java`, `python` or `java,python`, and a bigram side is a
/// literal lexeme, `OP` (any operator or punctuation), `ID`, or `ID|OP`.
class RuleCatalog {
 public:
  RuleCatalog() = default;
  explicit RuleCatalog(std::vector<RewriteRule> rules);

  /// The 24 rules N1-N6 and S1-S18.
  static const RuleCatalog& builtin();
  static std::string_view builtin_text();
  static RuleCatalog parse(std::string_view text);
  static RuleCatalog load(const std::filesystem::path& path);

  const std::vector<RewriteRule>& rules() const { return rules_; }
  const RewriteRule& at(std::string_view id) const;
  const RewriteRule* find(std::string_view id) const;
  /// Position of a rule in catalog order; used to sort outputs.
  std::size_t order(std::string_view id) const;

  /// Resolves a comma-separated selection: ids, `all`, `naming`, `spacing`.
  std::vector<const RewriteRule*> select(std::string_view selection) const;

 private:
  std::vector<RewriteRule> rules_;
};

}  // namespace driftkit
