#include "driftkit/identifiers.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "driftkit/errors.hpp"

namespace driftkit {

namespace {

const std::map<Language, std::set<std::string>>& known_contexts() {
  static const std::map<Language, std::set<std::string>> known = {
      {Language::Java,
       {"importDeclaration", "packageDeclaration", "methodCall", "methodReference", "annotation"}},
      {Language::Python, {"import_as_name", "trailer", "decorator"}},
  };
  return known;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Non-comment tokens with bounds-checked accessors.
class TokenView {
 public:
  explicit TokenView(const TokenIndex& index) : index_(index) {
    for (std::size_t k = 0; k < index.tokens.size(); ++k) {
      if (!is_comment(index.tokens[k], index.language)) {
        toks_.push_back(&index.tokens[k]);
      }
    }
  }

  std::ptrdiff_t size() const { return static_cast<std::ptrdiff_t>(toks_.size()); }
  bool valid(std::ptrdiff_t i) const { return i >= 0 && i < size(); }
  std::string_view lx(std::ptrdiff_t i) const {
    return valid(i) ? std::string_view(toks_[i]->lexeme) : std::string_view();
  }
  bool is(std::ptrdiff_t i, std::string_view s) const {
    return valid(i) && toks_[i]->kind != TokenKind::Literal && toks_[i]->lexeme == s;
  }
  bool ident(std::ptrdiff_t i) const { return valid(i) && toks_[i]->kind == TokenKind::Identifier; }
  TokenKind kind(std::ptrdiff_t i) const { return toks_[i]->kind; }
  const CodeToken& tok(std::ptrdiff_t i) const { return *toks_[i]; }

  // True when a line break (not a backslash continuation) separates i-1 and i.
  bool newline_before(std::ptrdiff_t i) const {
    if (i == 0) return true;
    std::size_t from = toks_[i - 1]->span.end;
    std::size_t to = toks_[i]->span.begin;
    std::string_view gap = std::string_view(index_.source).substr(from, to - from);
    for (std::size_t p = 0; p < gap.size(); ++p) {
      if (gap[p] != '\n') continue;
      std::size_t q = p;
      if (q > 0 && gap[q - 1] == '\r') --q;
      if (q == 0 || gap[q - 1] != '\\') return true;
    }
    return false;
  }

 private:
  const TokenIndex& index_;
  std::vector<const CodeToken*> toks_;
};

bool is_open(std::string_view s) { return s == "(" || s == "[" || s == "{"; }
bool is_close(std::string_view s) { return s == ")" || s == "]" || s == "}"; }

// ---------------------------------------------------------------------------
// Java

const std::unordered_set<std::string_view> kJavaPrimitive = {
    "int", "long", "short", "byte", "char", "boolean", "float", "double", "void", "var"};

class JavaAnalyzer {
 public:
  JavaAnalyzer(const TokenIndex& index, const ImmutableTypes& types)
      : v_(index), types_(types) {}

  IdentifierContext run() {
    IdentifierContext ctx;
    std::set<std::string> overrides;
    bool pending_override = false;
    int depth = 0;
    int decl_stmt_depth = -1;
    enum class Region { None, Import, Package } region = Region::None;

    for (std::ptrdiff_t i = 0; i < v_.size(); ++i) {
      const std::string_view s = v_.lx(i);
      if (v_.kind(i) == TokenKind::Keyword && (s == "import" || s == "package")) {
        region = s == "import" ? Region::Import : Region::Package;
      }
      if (region != Region::None) {
        if (v_.ident(i)) {
          const char* c = region == Region::Import ? "importDeclaration" : "packageDeclaration";
          if (enabled(c)) ctx.immutable.insert(std::string(s));
        }
        if (v_.is(i, ";")) region = Region::None;
        continue;
      }

      if (v_.is(i, "@") && v_.is(i + 1, "Override")) pending_override = true;

      if (v_.valid(i) && v_.kind(i) != TokenKind::Literal) {
        if (is_open(s)) ++depth;
        if (is_close(s)) {
          --depth;
          if (depth < decl_stmt_depth) decl_stmt_depth = -1;
        }
        if (s == ";" && depth == decl_stmt_depth) decl_stmt_depth = -1;
        if ((s == ";" || s == "{" || s == "}") && pending_override) pending_override = false;
      }

      if (!v_.ident(i)) continue;
      const std::string name(s);
      const std::string_view next = v_.lx(i + 1);

      if (v_.is(i - 1, "@")) {
        if (enabled("annotation")) ctx.immutable.insert(name);
        continue;
      }
      if (v_.is(i - 1, "::")) {
        if (enabled("methodReference")) ctx.immutable.insert(name);
        continue;
      }

      bool declared = false;
      bool method_decl = false;
      const std::string_view prev = v_.lx(i - 1);
      if (v_.valid(i - 1) && v_.kind(i - 1) == TokenKind::Keyword &&
          (prev == "class" || prev == "interface" || prev == "enum" || prev == "record")) {
        declared = true;
      } else if (v_.valid(i - 1) && !v_.is(i - 1, ".") && ends_type(i - 1) &&
                 (next == "=" || next == ";" || next == "," || next == ")" || next == ":" ||
                  next == "[" || next == "(")) {
        declared = true;
        if (next == "(") {
          method_decl = true;
        } else if (next != ")" && next != ":") {
          decl_stmt_depth = depth;
        }
      } else if (decl_stmt_depth == depth && v_.is(i - 1, ",") &&
                 (next == "=" || next == "," || next == ";" || next == "[")) {
        declared = true;  // further declarators: int a = 1, b = 2;
      } else if (next == "->" || lambda_group_param(i)) {
        declared = true;
      }

      if (method_decl && pending_override) {
        overrides.insert(name);
        pending_override = false;
        declared = false;
      } else if (method_decl) {
        pending_override = false;
      }
      if (declared) ctx.declarations.insert(name);

      if (next == "(" && !declared && !method_decl && enabled("methodCall")) {
        ctx.immutable.insert(name);
      }
    }

    for (const auto& o : overrides) {
      ctx.immutable.insert(o);
      ctx.declarations.erase(o);
    }
    return ctx;
  }

 private:
  bool enabled(std::string_view c) const { return types_.enabled(Language::Java, c); }

  // Does the token at j end a type expression (so an identifier after it is a new name)?
  bool ends_type(std::ptrdiff_t j) const {
    if (!v_.valid(j)) return false;
    const std::string_view s = v_.lx(j);
    if (v_.ident(j)) {
      return s != "yield" && !v_.is(j - 1, "@");
    }
    if (v_.kind(j) == TokenKind::Keyword) return kJavaPrimitive.contains(s);
    if (s == "]" && v_.is(j - 1, "[")) return ends_type(j - 2);
    if (s == "...") return ends_type(j - 1);
    if (s == ">" || s == ">>" || s == ">>>") return closes_generic(j);
    return false;
  }

  bool closes_generic(std::ptrdiff_t j) const {
    int depth = 0;
    for (std::ptrdiff_t k = j; k >= 0; --k) {
      const std::string_view s = v_.lx(k);
      if (s == ">") {
        depth += 1;
      } else if (s == ">>") {
        depth += 2;
      } else if (s == ">>>") {
        depth += 3;
      } else if (s == "<") {
        if (--depth == 0) return v_.ident(k - 1);
      } else if (!(v_.ident(k) || s == "," || s == "." || s == "?" || s == "&" || s == "[" ||
                   s == "]" || s == "extends" || s == "super" || kJavaPrimitive.contains(s))) {
        return false;
      }
      if (depth < 0) return false;
    }
    return false;
  }

  // `(a, b) -> ...`: identifier inside a parenthesised list of bare names followed by ->.
  bool lambda_group_param(std::ptrdiff_t i) const {
    std::ptrdiff_t k = i;
    while (v_.ident(k) || v_.is(k, ",")) --k;
    if (!v_.is(k, "(")) return false;
    std::ptrdiff_t m = i;
    while (v_.ident(m) || v_.is(m, ",")) ++m;
    return v_.is(m, ")") && v_.is(m + 1, "->");
  }

  TokenView v_;
  const ImmutableTypes& types_;
};

// ---------------------------------------------------------------------------
// Python

const std::unordered_set<std::string_view> kPyCompound = {
    "if", "elif", "else", "while", "for", "try", "except", "finally", "with", "def", "class", "async"};

const std::unordered_set<std::string_view> kPyAugmented = {
    "+=", "-=", "*=", "/=", "//=", "%=", "**=", ">>=", "<<=", "&=", "|=", "^=", "@="};

class PythonAnalyzer {
 public:
  PythonAnalyzer(const TokenIndex& index, const ImmutableTypes& types)
      : index_(index), v_(index), types_(types) {}

  IdentifierContext run() {
    split_statements();
    for (auto [b, e] : statements_) analyze_statement(b, e);
    scan_whole();
    std::set<std::string> fstring_names = fstring_references();
    for (const auto& n : fstring_names) {
      if (!has_identifier(n)) continue;
      ctx_.immutable.insert(n);
      ctx_.declarations.erase(n);
    }
    return ctx_;
  }

 private:
  bool enabled(std::string_view c) const { return types_.enabled(Language::Python, c); }

  void declare(std::ptrdiff_t i) { ctx_.declarations.insert(std::string(v_.lx(i))); }
  void immutable_if(std::ptrdiff_t i, std::string_view c) {
    if (enabled(c)) ctx_.immutable.insert(std::string(v_.lx(i)));
  }

  bool has_identifier(const std::string& n) const {
    for (std::ptrdiff_t i = 0; i < v_.size(); ++i) {
      if (v_.ident(i) && v_.lx(i) == n) return true;
    }
    return false;
  }

  // Logical statements: line breaks at bracket depth 0, `;`, and the colon that
  // ends a compound-statement header.
  void split_statements() {
    int depth = 0;
    std::ptrdiff_t start = 0;
    bool compound = false;
    int lambdas = 0;
    bool header_done = false;
    auto close = [&](std::ptrdiff_t end) {
      if (end > start) statements_.emplace_back(start, end);
      start = end;
      compound = false;
      lambdas = 0;
      header_done = false;
    };
    for (std::ptrdiff_t i = 0; i < v_.size(); ++i) {
      if (i > start && depth == 0 && v_.newline_before(i)) close(i);
      if (i == start) compound = v_.kind(i) == TokenKind::Keyword && kPyCompound.contains(v_.lx(i));
      const std::string_view s = v_.lx(i);
      if (v_.kind(i) != TokenKind::Literal) {
        if (is_open(s)) ++depth;
        if (is_close(s) && depth > 0) --depth;
      }
      if (depth == 0 && v_.is(i, "lambda")) ++lambdas;
      if (depth == 0 && v_.is(i, ";")) {
        close(i + 1);
        continue;
      }
      if (depth == 0 && compound && !header_done && v_.is(i, ":")) {
        if (lambdas > 0) {
          --lambdas;
        } else {
          header_done = true;
          close(i + 1);
        }
      }
    }
    close(v_.size());
  }

  void analyze_statement(std::ptrdiff_t b, std::ptrdiff_t e) {
    const std::string_view first = v_.lx(b);
    const bool kw = v_.kind(b) == TokenKind::Keyword;
    if (kw && (first == "import" || first == "from")) {
      for (auto i = b; i < e; ++i) {
        if (v_.ident(i)) immutable_if(i, "import_as_name");
      }
      return;
    }
    if (v_.is(b, "@")) {
      for (auto i = b; i < e; ++i) {
        if (v_.ident(i)) immutable_if(i, "decorator");
      }
      return;
    }
    std::ptrdiff_t head = b;
    if (v_.is(head, "async")) ++head;
    if (v_.is(head, "def") && v_.ident(head + 1)) {
      declare(head + 1);
      declare_params(head + 2, e);
      return;
    }
    if (v_.is(head, "class") && v_.ident(head + 1)) {
      declare(head + 1);
      return;
    }
    if (kw && (first == "global" || first == "nonlocal")) {
      for (auto i = b + 1; i < e; ++i) {
        if (v_.ident(i)) declare(i);
      }
      return;
    }
    if (kw) return;  // other keyword-led statements bind only through for/as/walrus/lambda

    // assignment, augmented and annotated assignment targets
    int depth = 0;
    std::ptrdiff_t seg = b;
    bool annotated = false;
    for (auto i = b; i < e; ++i) {
      const std::string_view s = v_.lx(i);
      if (v_.kind(i) == TokenKind::Literal) continue;
      if (is_open(s)) ++depth;
      if (is_close(s)) --depth;
      if (depth != 0) continue;
      if (v_.is(i, "lambda")) break;
      if (s == "=" && !annotated) {
        declare_targets(seg, i);
        seg = i + 1;
      } else if (kPyAugmented.contains(s) && !annotated) {
        declare_targets(seg, i);
        break;
      } else if (s == ":" && seg == b && !annotated) {
        declare_targets(seg, i);
        annotated = true;
      }
    }
  }

  void declare_params(std::ptrdiff_t open, std::ptrdiff_t e) {
    if (!v_.is(open, "(")) return;
    int depth = 0;
    for (auto i = open; i < e; ++i) {
      const std::string_view s = v_.lx(i);
      if (v_.kind(i) != TokenKind::Literal) {
        if (is_open(s)) ++depth;
        if (is_close(s) && --depth == 0) return;
      }
      if (depth == 1 && v_.ident(i)) {
        const std::string_view p = v_.lx(i - 1);
        if (p == "(" || p == "," || p == "*" || p == "**") declare(i);
      }
    }
  }

  void declare_targets(std::ptrdiff_t b, std::ptrdiff_t e) {
    // stack of "is this bracket an access (call/subscript)?"
    std::vector<bool> access;
    for (auto i = b; i < e; ++i) {
      const std::string_view s = v_.lx(i);
      if (v_.kind(i) != TokenKind::Literal && is_open(s)) {
        bool acc = v_.ident(i - 1) || v_.is(i - 1, ")") || v_.is(i - 1, "]");
        access.push_back(acc || (!access.empty() && access.back()));
        continue;
      }
      if (v_.kind(i) != TokenKind::Literal && is_close(s)) {
        if (!access.empty()) access.pop_back();
        continue;
      }
      if (!v_.ident(i) || (!access.empty() && access.back())) continue;
      const std::string_view next = i + 1 < e ? v_.lx(i + 1) : std::string_view();
      if (v_.is(i - 1, ".")) {
        if (i + 1 >= e || next == "," || next == ")" || next == "]") declare(i);
        continue;
      }
      if (next == "." || next == "(" || next == "[") continue;
      declare(i);
    }
  }

  // Constructs that can appear at any depth: for-targets, `as` names, walrus,
  // lambda parameters, attribute names and keyword arguments.
  void scan_whole() {
    struct Paren {
      bool call;
      bool def_params;
    };
    std::vector<Paren> parens;
    std::set<std::ptrdiff_t> import_tokens;
    for (auto [b, e] : statements_) {
      if (v_.kind(b) == TokenKind::Keyword && (v_.lx(b) == "import" || v_.lx(b) == "from")) {
        for (auto i = b; i < e; ++i) import_tokens.insert(i);
      }
    }
    for (std::ptrdiff_t i = 0; i < v_.size(); ++i) {
      const std::string_view s = v_.lx(i);
      if (v_.kind(i) != TokenKind::Literal) {
        if (is_open(s)) {
          bool def_params = v_.ident(i - 1) && v_.is(i - 2, "def");
          bool call = s == "(" && !def_params &&
                      (v_.ident(i - 1) || v_.is(i - 1, ")") || v_.is(i - 1, "]"));
          parens.push_back({call, def_params});
        } else if (is_close(s) && !parens.empty()) {
          parens.pop_back();
        }
      }
      if (v_.is(i, "for")) {
        for (auto k = i + 1; v_.valid(k) && !v_.is(k, "in"); ++k) {
          if (v_.ident(k) && !v_.is(k - 1, ".") && !v_.is(k + 1, ".") && !v_.is(k + 1, "(") &&
              !v_.is(k + 1, "[")) {
            declare(k);
          }
        }
      }
      if (v_.is(i, "as") && v_.ident(i + 1) && !import_tokens.contains(i)) declare(i + 1);
      if (v_.ident(i) && v_.is(i + 1, ":=")) declare(i);
      if (v_.is(i, "lambda")) {
        int depth = 0;
        for (auto k = i + 1; v_.valid(k); ++k) {
          const std::string_view t = v_.lx(k);
          if (is_open(t)) ++depth;
          if (is_close(t)) --depth;
          if (depth < 0 || (depth == 0 && t == ":")) break;
          if (depth == 0 && v_.ident(k)) {
            const std::string_view p = v_.lx(k - 1);
            if (p == "lambda" || p == "," || p == "*" || p == "**") declare(k);
          }
        }
      }
      if (!v_.ident(i) || import_tokens.contains(i)) continue;
      if (v_.is(i - 1, ".")) immutable_if(i, "trailer");
      if (!parens.empty() && parens.back().call && v_.is(i + 1, "=") &&
          (v_.is(i - 1, "(") || v_.is(i - 1, ","))) {
        immutable_if(i, "trailer");
      }
    }
  }

  std::set<std::string> fstring_references() const {
    std::set<std::string> names;
    for (const auto& tok : index_.tokens) {
      if (tok.kind != TokenKind::Literal) continue;
      std::size_t q = tok.lexeme.find_first_of("'\"");
      if (q == std::string::npos || q == 0) continue;
      std::string prefix = tok.lexeme.substr(0, q);
      bool f = false;
      for (char c : prefix) f = f || c == 'f' || c == 'F';
      if (!f) continue;
      const std::string& s = tok.lexeme;
      int depth = 0;
      for (std::size_t p = q; p < s.size(); ++p) {
        if (depth == 0 && s[p] == '{') {
          if (p + 1 < s.size() && s[p + 1] == '{') {
            ++p;
            continue;
          }
          depth = 1;
          continue;
        }
        if (depth > 0) {
          if (s[p] == '{') ++depth;
          if (s[p] == '}') --depth;
          auto c = static_cast<unsigned char>(s[p]);
          if (std::isalpha(c) || c == '_') {
            std::size_t w = p;
            while (w < s.size() && (std::isalnum(static_cast<unsigned char>(s[w])) || s[w] == '_')) ++w;
            names.insert(s.substr(p, w - p));
            p = w - 1;
          }
        }
      }
    }
    return names;
  }

  const TokenIndex& index_;
  TokenView v_;
  const ImmutableTypes& types_;
  IdentifierContext ctx_;
  std::vector<std::pair<std::ptrdiff_t, std::ptrdiff_t>> statements_;
};

}  // namespace

ImmutableTypes ImmutableTypes::defaults() {
  return ImmutableTypes{known_contexts()};
}

ImmutableTypes ImmutableTypes::parse(std::string_view text) {
  ImmutableTypes out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::string body = trim(line);
    if (body.empty()) continue;
    auto colon = body.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("immutable types line " + std::to_string(lineno) + ": expected '<language>: <contexts>'");
    }
    std::string lang_name = trim(std::string_view(body).substr(0, colon));
    auto lang = parse_language(lang_name);
    if (!lang) throw ConfigError("immutable types line " + std::to_string(lineno) + ": unknown language '" + lang_name + "'");
    auto& set = out.contexts[*lang];
    std::istringstream items(body.substr(colon + 1));
    std::string item;
    while (std::getline(items, item, ',')) {
      std::string name = trim(item);
      if (name.empty()) continue;
      if (!known_contexts().at(*lang).contains(name)) {
        throw ConfigError("unknown " + lang_name + " immutable context '" + name + "'");
      }
      set.insert(name);
    }
  }
  return out;
}

ImmutableTypes ImmutableTypes::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read immutable types config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool ImmutableTypes::enabled(Language language, std::string_view context) const {
  auto it = contexts.find(language);
  return it != contexts.end() && it->second.contains(std::string(context));
}

IdentifierContext classify_identifiers(const TokenIndex& index, const ImmutableTypes& types) {
  if (index.language == Language::Java) return JavaAnalyzer(index, types).run();
  return PythonAnalyzer(index, types).run();
}

}  // namespace driftkit
