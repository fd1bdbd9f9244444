#include <gtest/gtest.h>

#include "driftkit/errors.hpp"
#include "driftkit/identifiers.hpp"

namespace driftkit {
namespace {

IdentifierContext classify(const std::string& source, Language language) {
  return classify_identifiers(lex(source, language), ImmutableTypes::defaults());
}

TEST(Identifiers, JavaImportIsImmutable) {
  const auto ctx = classify("import java.util.List;\nclass A { List<String> items; }", Language::Java);
  EXPECT_TRUE(ctx.immutable.contains("List"));
  EXPECT_TRUE(ctx.declarations.contains("items"));
  EXPECT_TRUE(ctx.declarations.contains("A"));
}

TEST(Identifiers, OverrideMethodIsNotDeclared) {
  const auto ctx = classify("class A { @Override public String toString() { return \"a\"; } }", Language::Java);
  EXPECT_FALSE(ctx.declarations.contains("toString"));
  EXPECT_TRUE(ctx.immutable.contains("toString"));
}

TEST(Identifiers, PythonFunctionDeclarations) {
  const auto ctx = classify("def my_func(a): return a", Language::Python);
  EXPECT_EQ(ctx.declarations, (std::set<std::string>{"my_func", "a"}));
  EXPECT_TRUE(ctx.immutable.empty());
}

TEST(Identifiers, JavaMethodCallIsImmutable) {
  const auto ctx = classify("int myVar = 0; use(myVar); obj.run();", Language::Java);
  EXPECT_TRUE(ctx.immutable.contains("use"));
  EXPECT_TRUE(ctx.immutable.contains("run"));
  EXPECT_TRUE(ctx.declarations.contains("myVar"));
}

TEST(Identifiers, PythonBindingForms) {
  const auto ctx = classify(
      "import os as operating_system\n"
      "for idx, val in enumerate(xs):\n"
      "    total_sum += val\n"
      "with open(p) as fh:\n"
      "    pass\n"
      "sq = [n_val * n_val for n_val in xs]\n"
      "f = lambda lam_arg: lam_arg\n"
      "if (walrus_val := 3): pass\n"
      "self.count_all = 0\n"
      "xs.append_item(key_arg=1)\n",
      Language::Python);
  for (const char* name : {"idx", "val", "total_sum", "fh", "sq", "n_val", "f", "lam_arg", "walrus_val", "count_all"}) {
    EXPECT_TRUE(ctx.declarations.contains(name)) << name;
  }
  EXPECT_TRUE(ctx.immutable.contains("operating_system"));
  EXPECT_TRUE(ctx.immutable.contains("append_item"));
  EXPECT_TRUE(ctx.immutable.contains("key_arg"));
}

TEST(Identifiers, FStringNamesAreImmutable) {
  const auto ctx = classify("row_count = 3\nprint(f'{row_count} rows')", Language::Python);
  EXPECT_TRUE(ctx.immutable.contains("row_count"));
  EXPECT_FALSE(ctx.declarations.contains("row_count"));
}

TEST(Identifiers, MembersOccurAsIdentifierTokens) {
  const std::string src = "import java.util.Map;\nclass Box { int sizeOf(Map m) { return m.size(); } }";
  const auto index = lex(src, Language::Java);
  const auto ctx = classify_identifiers(index, ImmutableTypes::defaults());
  std::set<std::string> ids;
  for (const auto& t : index.tokens) {
    if (t.kind == TokenKind::Identifier) ids.insert(t.lexeme);
  }
  for (const auto& s : ctx.immutable) EXPECT_TRUE(ids.contains(s)) << s;
  for (const auto& s : ctx.declarations) EXPECT_TRUE(ids.contains(s)) << s;
}

TEST(ImmutableTypesConfig, ParsesAndRejectsUnknownContexts) {
  const auto types = ImmutableTypes::parse("# comment\njava: importDeclaration\npython: trailer, decorator\n");
  EXPECT_TRUE(types.enabled(Language::Java, "importDeclaration"));
  EXPECT_FALSE(types.enabled(Language::Java, "methodCall"));
  EXPECT_TRUE(types.enabled(Language::Python, "decorator"));
  EXPECT_THROW(ImmutableTypes::parse("java: fancyContext\n"), ConfigError);
  EXPECT_THROW(ImmutableTypes::parse("cobol: importDeclaration\n"), ConfigError);
}

TEST(ImmutableTypesConfig, DisablingMethodCallMakesCalleesEligible) {
  const auto index = lex("int x = useThing(1);", Language::Java);
  const auto none = ImmutableTypes::parse("java: importDeclaration\n");
  EXPECT_FALSE(classify_identifiers(index, none).immutable.contains("useThing"));
  EXPECT_TRUE(classify_identifiers(index, ImmutableTypes::defaults()).immutable.contains("useThing"));
}

}  // namespace
}  // namespace driftkit
