#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "driftkit/lexer.hpp"

namespace driftkit {

/// Which syntactic contexts make an identifier immutable, per language.
///
/// Recognised context names:
///   java:   importDeclaration, packageDeclaration, methodCall, methodReference, annotation
///   python: import_as_name, trailer, decorator
///
/// Text form, one language per line (`#` starts a comment):
///   java: importDeclaration, methodCall
///   python: import_as_name, trailer
struct ImmutableTypes {
  std::map<Language, std::set<std::string>> contexts;

  static ImmutableTypes defaults();
  static ImmutableTypes parse(std::string_view text);
  static ImmutableTypes load(const std::filesystem::path& path);

  bool enabled(Language language, std::string_view context) const;
};

/// S_im and S_dec of the naming rewrite.
struct IdentifierContext {
  std::set<std::string> immutable;
  std::set<std::string> declarations;
};

/// Derives immutable and declared identifier sets from a token index.
///
/// Declaration sites (Java): variable, field, parameter, catch and for-each
/// bindings (a type followed by a name), method names, type names after
/// class/interface/enum/record, and lambda parameters. Methods annotated with
/// @Override are never declarations and are always immutable.
///
/// Declaration sites (Python): def/class names, def and lambda parameters,
/// assignment and augmented/annotated assignment targets (including attribute
/// targets such as `self.x`), for/comprehension targets, `with`/`except ... as`
/// names, walrus targets, global/nonlocal names. Names referenced inside
/// f-string replacement fields are always immutable and never declarations.
IdentifierContext classify_identifiers(const TokenIndex& index, const ImmutableTypes& types);

}  // namespace driftkit
