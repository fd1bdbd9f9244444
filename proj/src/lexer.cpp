#include "driftkit/lexer.hpp"

#include <algorithm>
#include <unordered_set>

#include "driftkit/errors.hpp"

namespace driftkit {

std::string_view to_string(Language language) {
  return language == Language::Java ? "java" : "python";
}

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Operator: return "operator";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Literal: return "literal";
    case TokenKind::Punctuation: return "punctuation";
  }
  return "?";
}

std::optional<Language> parse_language(std::string_view name) {
  if (name == "java") return Language::Java;
  if (name == "python") return Language::Python;
  return std::nullopt;
}

std::string_view TokenIndex::gap_before(std::size_t k) const {
  std::size_t from = k == 0 ? 0 : tokens[k - 1].span.end;
  std::size_t to = k < tokens.size() ? tokens[k].span.begin : source.size();
  return std::string_view(source).substr(from, to - from);
}

namespace {

const std::unordered_set<std::string_view> kJavaKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",         "case",
    "catch",    "char",       "class",     "const",     "continue",     "default",
    "do",       "double",     "else",      "enum",      "extends",      "final",
    "finally",  "float",      "for",       "goto",      "if",           "implements",
    "import",   "instanceof", "int",       "interface", "long",         "native",
    "new",      "package",    "private",   "protected", "public",       "return",
    "short",    "static",     "strictfp",  "super",     "switch",       "synchronized",
    "this",     "throw",      "throws",    "transient", "try",          "void",
    "volatile", "while",      "var",       "record"};

const std::unordered_set<std::string_view> kJavaLiteralWords = {"true", "false", "null"};

const std::unordered_set<std::string_view> kPythonKeywords = {
    "False", "None",   "True",    "and",      "as",     "assert", "async",
    "await", "break",  "class",   "continue", "def",    "del",    "elif",
    "else",  "except", "finally", "for",      "from",   "global", "if",
    "import", "in",    "is",      "lambda",   "nonlocal", "not",  "or",
    "pass",  "raise",  "return",  "try",      "while",  "with",   "yield"};

// Longest first within each table.
const std::vector<std::string_view> kJavaSymbols = {
    ">>>=", ">>>", "<<=", ">>=", "...", "->", "::", "++", "--", "&&", "||",
    "==",   "!=",  "<=",  ">=",  "+=",  "-=", "*=", "/=", "&=", "|=", "^=",
    "%=",   "<<",  ">>",  "+",   "-",   "*",  "/",  "%",  "=",  "<",  ">",
    "!",    "~",   "?",   ":",   "&",   "|",  "^",  "(",  ")",  "[",  "]"};
const std::vector<std::string_view> kJavaExtraPunct = {"{", "}", ";", ",", ".", "@"};

const std::vector<std::string_view> kPythonSymbols = {
    "**=", "//=", ">>=", "<<=", "...", "->", ":=", "**", "//", "<<", ">>", "<=",
    ">=",  "==",  "!=",  "+=",  "-=",  "*=", "/=", "%=", "&=", "|=", "^=", "@=",
    "+",   "-",   "*",   "/",   "%",   "@",  "&",  "|",  "^",  "~",  "<",  ">",
    "=",   "(",   ")",   "[",   "]",   "{",  "}",  ",",  ":",  ";"};

bool is_punctuation(std::string_view s, Language language) {
  static const std::unordered_set<std::string_view> java = {"(", ")", "[", "]", "{", "}", ";",
                                                            ",", ".", "...", "@", "::"};
  static const std::unordered_set<std::string_view> python = {"(", ")", "[", "]", "{", "}",
                                                              ",", ":", ";", ".", "..."};
  return language == Language::Java ? java.contains(s) : python.contains(s);
}

bool is_ident_start(unsigned char c, Language language) {
  if (c >= 0x80) return true;  // non-ASCII identifier characters
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') return true;
  return language == Language::Java && c == '$';
}

bool is_ident_part(unsigned char c, Language language) {
  return is_ident_start(c, language) || (c >= '0' && c <= '9');
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_hex(unsigned char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

class Lexer {
 public:
  Lexer(std::string_view src, Language language) : src_(src), lang_(language) {}

  std::vector<CodeToken> run() {
    std::vector<CodeToken> out;
    while (true) {
      skip_whitespace();
      if (pos_ >= src_.size()) break;
      std::size_t begin = pos_;
      TokenKind kind = scan_token();
      out.push_back(CodeToken{std::string(src_.substr(begin, pos_ - begin)), kind, {begin, pos_}});
    }
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  bool starts_with(std::string_view s) const { return src_.substr(pos_).starts_with(s); }

  void skip_whitespace() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
        ++pos_;
      } else if (lang_ == Language::Python && c == '\\') {
        // explicit line joining
        if (peek(1) == '\n') {
          pos_ += 2;
        } else if (peek(1) == '\r' && peek(2) == '\n') {
          pos_ += 3;
        } else {
          throw LexError(pos_, "stray backslash");
        }
      } else {
        break;
      }
    }
  }

  TokenKind scan_token() {
    const unsigned char c = static_cast<unsigned char>(src_[pos_]);
    if (lang_ == Language::Java) {
      if (starts_with("//")) return scan_line_comment();
      if (starts_with("/*")) return scan_block_comment();
      if (c == '"') return scan_java_string();
      if (c == '\'') return scan_quoted('\'', "character literal");
    } else {
      if (c == '#') return scan_line_comment();
      if (c == '"' || c == '\'') return scan_python_string();
    }
    if (is_digit(c) || (c == '.' && is_digit(static_cast<unsigned char>(peek(1))))) {
      return scan_number();
    }
    if (is_ident_start(c, lang_)) return scan_word();
    return scan_symbol();
  }

  TokenKind scan_line_comment() {
    while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r') ++pos_;
    return TokenKind::Literal;
  }

  TokenKind scan_block_comment() {
    std::size_t start = pos_;
    auto end = src_.find("*/", pos_ + 2);
    if (end == std::string_view::npos) throw LexError(start, "unterminated block comment");
    pos_ = end + 2;
    return TokenKind::Literal;
  }

  // Single-line quoted literal with backslash escapes.
  TokenKind scan_quoted(char quote, const char* what) {
    std::size_t start = pos_++;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n' || src_[pos_] == '\r') {
        throw LexError(start, std::string("unterminated ") + what);
      }
      char c = src_[pos_];
      if (c == '\\') {
        pos_ += 2;
        continue;
      }
      ++pos_;
      if (c == quote) return TokenKind::Literal;
    }
  }

  TokenKind scan_java_string() {
    if (starts_with("\"\"\"")) {
      std::size_t start = pos_;
      pos_ += 3;
      while (true) {
        if (pos_ >= src_.size()) throw LexError(start, "unterminated text block");
        if (src_[pos_] == '\\') {
          pos_ += 2;
          continue;
        }
        if (starts_with("\"\"\"")) {
          pos_ += 3;
          return TokenKind::Literal;
        }
        ++pos_;
      }
    }
    return scan_quoted('"', "string literal");
  }

  TokenKind scan_python_string() {
    const char quote = src_[pos_];
    const bool triple = peek(1) == quote && peek(2) == quote;
    if (!triple) return scan_python_single(quote);
    std::size_t start = pos_;
    pos_ += 3;
    const std::string closing(3, quote);
    while (true) {
      if (pos_ >= src_.size()) throw LexError(start, "unterminated triple-quoted string");
      if (src_[pos_] == '\\') {
        pos_ += 2;
        continue;
      }
      if (starts_with(closing)) {
        pos_ += 3;
        return TokenKind::Literal;
      }
      ++pos_;
    }
  }

  TokenKind scan_python_single(char quote) {
    std::size_t start = pos_++;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        throw LexError(start, "unterminated string literal");
      }
      char c = src_[pos_];
      if (c == '\\') {
        // an escaped newline continues the literal
        pos_ += (peek(1) == '\r' && peek(2) == '\n') ? 3 : 2;
        continue;
      }
      ++pos_;
      if (c == quote) return TokenKind::Literal;
    }
  }

  void scan_digits(bool (*accept)(unsigned char)) {
    while (pos_ < src_.size()) {
      auto c = static_cast<unsigned char>(src_[pos_]);
      if (accept(c) || c == '_') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  TokenKind scan_number() {
    const char c0 = peek();
    const char c1 = static_cast<char>(peek(1) | 0x20);
    if (c0 == '0' && (c1 == 'x' || c1 == 'b' || c1 == 'o')) {
      pos_ += 2;
      scan_digits(is_hex);
    } else {
      scan_digits(is_digit);
      if (peek() == '.') {
        auto next = static_cast<unsigned char>(peek(1));
        if (is_digit(next)) {
          ++pos_;
          scan_digits(is_digit);
        } else if (!is_ident_start(next, lang_) && next != '.') {
          ++pos_;  // "1." is a complete floating literal
        }
      }
      const char e = peek();
      if (e == 'e' || e == 'E') {
        std::size_t save = pos_;
        ++pos_;
        if (peek() == '+' || peek() == '-') ++pos_;
        if (is_digit(static_cast<unsigned char>(peek()))) {
          scan_digits(is_digit);
        } else {
          pos_ = save;
        }
      }
    }
    const char s = peek();
    if (lang_ == Language::Java) {
      if (s == 'l' || s == 'L' || s == 'f' || s == 'F' || s == 'd' || s == 'D') ++pos_;
    } else if (s == 'j' || s == 'J') {
      ++pos_;
    }
    return TokenKind::Literal;
  }

  TokenKind scan_word() {
    std::size_t begin = pos_;
    while (pos_ < src_.size() && is_ident_part(static_cast<unsigned char>(src_[pos_]), lang_)) ++pos_;
    std::string_view word = src_.substr(begin, pos_ - begin);
    if (lang_ == Language::Java) {
      if (kJavaLiteralWords.contains(word)) return TokenKind::Literal;
      return kJavaKeywords.contains(word) ? TokenKind::Keyword : TokenKind::Identifier;
    }
    if (word.size() <= 2 && (peek() == '"' || peek() == '\'')) {
      std::string lower;
      for (char ch : word) lower += static_cast<char>(ch | 0x20);
      static const std::unordered_set<std::string_view> prefixes = {"r",  "u",  "b",  "f",
                                                                    "br", "rb", "fr", "rf"};
      if (prefixes.contains(lower)) return scan_python_string();
    }
    return kPythonKeywords.contains(word) ? TokenKind::Keyword : TokenKind::Identifier;
  }

  TokenKind scan_symbol() {
    auto try_table = [&](auto const& table) -> std::optional<std::string_view> {
      for (std::string_view sym : table) {
        if (starts_with(sym)) return sym;
      }
      return std::nullopt;
    };
    std::optional<std::string_view> sym;
    if (lang_ == Language::Java) {
      sym = try_table(kJavaSymbols);
      if (!sym) sym = try_table(kJavaExtraPunct);
    } else {
      sym = try_table(kPythonSymbols);
      if (!sym && peek() == '.') sym = ".";
    }
    if (!sym) {
      throw LexError(pos_, "illegal character '" + std::string(1, src_[pos_]) + "'");
    }
    pos_ += sym->size();
    return is_punctuation(*sym, lang_) ? TokenKind::Punctuation : TokenKind::Operator;
  }

  std::string_view src_;
  Language lang_;
  std::size_t pos_ = 0;
};

}  // namespace

TokenIndex lex(std::string_view source, Language language) {
  TokenIndex index;
  index.source = std::string(source);
  index.language = language;
  index.tokens = Lexer(index.source, language).run();
  return index;
}

bool is_comment(const CodeToken& token, Language language) {
  if (token.kind != TokenKind::Literal) return false;
  if (language == Language::Python) return token.lexeme.starts_with('#');
  return token.lexeme.starts_with("//") || token.lexeme.starts_with("/*");
}

bool is_keyword(std::string_view word, Language language) {
  if (language == Language::Java) return kJavaKeywords.contains(word) || kJavaLiteralWords.contains(word);
  return kPythonKeywords.contains(word);
}

}  // namespace driftkit
