#include "driftkit/rules.hpp"

#include <fstream>
#include <sstream>

#include "driftkit/errors.hpp"

namespace driftkit {

bool TokenMatcher::matches(const CodeToken& token, const std::set<std::string>& excluded) const {
  const bool is_op = (token.kind == TokenKind::Operator || token.kind == TokenKind::Punctuation) &&
                     !excluded.contains(token.lexeme);
  switch (type) {
    case Type::Lexeme:
      return token.kind != TokenKind::Literal && token.lexeme == lexeme;
    case Type::AnyOperator:
      return is_op;
    case Type::Identifier:
      return token.kind == TokenKind::Identifier;
    case Type::IdentifierOrOperator:
      return token.kind == TokenKind::Identifier || is_op;
  }
  return false;
}

std::string TokenMatcher::describe() const {
  switch (type) {
    case Type::Lexeme: return lexeme;
    case Type::AnyOperator: return "OP";
    case Type::Identifier: return "ID";
    case Type::IdentifierOrOperator: return "ID|OP";
  }
  return "?";
}

namespace {

constexpr std::string_view kBuiltinCatalog = R"(# Naming rules: convert identifiers from the dominant casing style.
N1  naming  java         camel -> snake            name=camel-case-snake-case
N2  naming  java         camel -> pascal           name=camel-case-pascal-case
N3  naming  java         camel -> screaming_snake  name=camel-case-screaming-snake-case
N4  naming  python       snake -> camel            name=snake-case-camel-case
N5  naming  python       snake -> pascal           name=snake-case-pascal-case
N6  naming  python       snake -> screaming_snake  name=snake-case-screaming-snake-case
# Spacing rules: insert one space between two adjacent tokens.
S1  spacing python       OP  -      name=op-dash
S2  spacing python       OP  [      name=op-lsquarebracket
S3  spacing java         )   .      name=rparentheses-period
S4  spacing python       ]   )      name=rsquarebracket-rparentheses
S5  spacing python       OP  ]      name=op-rsquarebracket
S6  spacing java         OP  (      name=op-lparentheses
S7  spacing python       [   ID     name=lsquarebracket-name
S8  spacing java         ++  )      name=double-plus-rparentheses
S9  spacing java         .   *      name=period-asterisk
S10 spacing python       )   :      name=rparentheses-colon
S11 spacing java         )   ;      name=rparentheses-semicolon
S12 spacing java         OP  ;      name=op-semicolon
S13 spacing java,python  )   )      name=rparentheses-rparentheses
S14 spacing java,python  (   (      name=lparentheses-rparentheses
S15 spacing java,python  .   ID     name=period-name
S16 spacing java,python  (   ID     name=lparentheses-name
S17 spacing java,python  OP  ID     name=op-name
S18 spacing java,python  OP  ID|OP  name=op-all
)";

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::vector<std::string> split_commas(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto c = s.find(',', start);
    if (c == std::string_view::npos) c = s.size();
    if (c > start) out.emplace_back(s.substr(start, c - start));
    start = c + 1;
  }
  return out;
}

TokenMatcher parse_matcher(const std::string& w) {
  if (w == "OP") return {TokenMatcher::Type::AnyOperator, {}};
  if (w == "ID") return {TokenMatcher::Type::Identifier, {}};
  if (w == "ID|OP" || w == "OP|ID") return {TokenMatcher::Type::IdentifierOrOperator, {}};
  return {TokenMatcher::Type::Lexeme, w};
}

}  // namespace

RuleCatalog::RuleCatalog(std::vector<RewriteRule> rules) : rules_(std::move(rules)) {}

std::string_view RuleCatalog::builtin_text() { return kBuiltinCatalog; }

const RuleCatalog& RuleCatalog::builtin() {
  static const RuleCatalog catalog = parse(kBuiltinCatalog);
  return catalog;
}

RuleCatalog RuleCatalog::parse(std::string_view text) {
  std::vector<RewriteRule> rules;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError("rule catalog line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos && (hash == 0 || line[hash - 1] == ' ')) {
      line.resize(hash);
    }
    auto w = words(line);
    if (w.empty()) continue;
    if (w.size() < 4) fail("too few fields");
    RewriteRule rule;
    rule.id = w[0];
    if (w[1] == "naming") {
      rule.kind = RuleKind::Naming;
    } else if (w[1] == "spacing") {
      rule.kind = RuleKind::Spacing;
    } else {
      fail("unknown rule kind '" + w[1] + "'");
    }
    for (const auto& l : split_commas(w[2])) {
      auto lang = parse_language(l);
      if (!lang) fail("unknown language '" + l + "'");
      rule.languages.insert(*lang);
    }
    if (rule.languages.empty()) fail("rule has no language");
    std::size_t next = 3;
    if (rule.kind == RuleKind::Naming) {
      if (w.size() < 6 || w[4] != "->") fail("naming rule needs '<source> -> <target>'");
      auto src = parse_case_style(w[3]);
      auto dst = parse_case_style(w[5]);
      if (!src || !dst) fail("unknown casing style");
      if (*src == *dst) fail("naming rule must change the style");
      rule.source_style = *src;
      rule.target_style = *dst;
      next = 6;
    } else {
      if (w.size() < 5) fail("spacing rule needs a token bigram");
      rule.former = parse_matcher(w[3]);
      rule.latter = parse_matcher(w[4]);
      next = 5;
    }
    for (; next < w.size(); ++next) {
      const auto& opt = w[next];
      if (opt.starts_with("name=")) {
        rule.name = opt.substr(5);
      } else if (opt.starts_with("exclude=") && rule.kind == RuleKind::Spacing) {
        for (auto& x : split_commas(std::string_view(opt).substr(8))) rule.wildcard_exclude.insert(x);
      } else {
        fail("unexpected field '" + opt + "'");
      }
    }
    for (const auto& r : rules) {
      if (r.id == rule.id) fail("duplicate rule id " + rule.id);
    }
    rules.push_back(std::move(rule));
  }
  return RuleCatalog(std::move(rules));
}

RuleCatalog RuleCatalog::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read rule catalog " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const RewriteRule* RuleCatalog::find(std::string_view id) const {
  for (const auto& r : rules_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

const RewriteRule& RuleCatalog::at(std::string_view id) const {
  if (const auto* r = find(id)) return *r;
  throw ConfigError("unknown rule id '" + std::string(id) + "'");
}

std::size_t RuleCatalog::order(std::string_view id) const {
  for (std::size_t k = 0; k < rules_.size(); ++k) {
    if (rules_[k].id == id) return k;
  }
  return rules_.size();
}

std::vector<const RewriteRule*> RuleCatalog::select(std::string_view selection) const {
  std::set<std::string> wanted;
  for (const auto& item : split_commas(selection)) {
    if (item == "all") {
      for (const auto& r : rules_) wanted.insert(r.id);
    } else if (item == "naming" || item == "spacing") {
      auto kind = item == "naming" ? RuleKind::Naming : RuleKind::Spacing;
      for (const auto& r : rules_) {
        if (r.kind == kind) wanted.insert(r.id);
      }
    } else {
      wanted.insert(at(item).id);
    }
  }
  std::vector<const RewriteRule*> out;
  for (const auto& r : rules_) {
    if (wanted.contains(r.id)) out.push_back(&r);
  }
  return out;
}

}  // namespace driftkit
