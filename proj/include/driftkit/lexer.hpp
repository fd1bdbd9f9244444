#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace driftkit {

enum class Language { Java, Python };

enum class TokenKind { Identifier, Operator, Keyword, Literal, Punctuation };

std::string_view to_string(Language language);
std::string_view to_string(TokenKind kind);
std::optional<Language> parse_language(std::string_view name);

/// Half-open byte interval [begin, end) into the lexed source.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const Span&, const Span&) = default;
};

struct CodeToken {
  std::string lexeme;
  TokenKind kind = TokenKind::Identifier;
  Span span;

  friend bool operator==(const CodeToken&, const CodeToken&) = default;
};

/// Grammar-level tokens of one source text. Comments and string literals are
/// single Literal tokens; whitespace lives only in the gaps between spans.
struct TokenIndex {
  std::vector<CodeToken> tokens;
  std::string source;
  Language language = Language::Python;

  /// Source bytes between token k-1 and token k (k == tokens.size() gives the tail).
  std::string_view gap_before(std::size_t k) const;
  friend bool operator==(const TokenIndex&, const TokenIndex&) = default;
};

/// Lexes Java or Python source. Operators are matched longest-first.
/// Throws LexError on unterminated strings/comments or characters outside the
/// language's lexical grammar.
TokenIndex lex(std::string_view source, Language language);

/// True for `//`, `/* */` (Java) and `#` (Python) comment tokens.
bool is_comment(const CodeToken& token, Language language);

bool is_keyword(std::string_view word, Language language);

}  // namespace driftkit
