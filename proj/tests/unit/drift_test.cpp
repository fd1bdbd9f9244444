#include <gtest/gtest.h>

#include <random>

#include "driftkit/drift.hpp"
#include "driftkit/errors.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace driftkit {
namespace {

using testing::oracle;
using testing::random_spec;

using Set = std::set<long long>;

Encoding with_starts(std::vector<std::size_t> starts) {
  Encoding e;
  e.starts = std::move(starts);
  e.tokens.resize(e.starts.size());
  e.ids.resize(e.starts.size());
  return e;
}

TEST(Classify, NoEventsNoChange) {
  const auto enc = with_starts({0, 3, 5});
  const auto c = classify_fragment_change(enc, enc, {}, EditType::Whitespace);
  EXPECT_EQ(c.label, FragmentLabel::Unchanged);
  EXPECT_TRUE(c.lost.empty());
  EXPECT_TRUE(c.gained.empty());
}

TEST(Classify, SortedLstTrace) {
  const std::vector<EditEvent> ev = {{7, +1, EditType::Underscore}};
  const auto state = trace_boundaries(with_starts({0, 7, 8}), with_starts({0, 7}), ev, EditType::Underscore);
  EXPECT_EQ(state.old_starts, (Set{0, 7, 9}));
  EXPECT_EQ(state.edits, (Set{7}));
  EXPECT_EQ(state.edits_plus, (Set{8}));
  EXPECT_EQ(state.offset, 1);
  const auto c = classify_fragment_change(with_starts({0, 7, 8}), with_starts({0, 7}), ev, EditType::Underscore);
  EXPECT_EQ(c.label, FragmentLabel::Merged);
  EXPECT_EQ(c.lost, (Set{9}));
  EXPECT_TRUE(c.gained.empty());
}

TEST(Classify, FactorialTrace) {
  const std::vector<EditEvent> ev = {{1, +1, EditType::Whitespace}};
  const auto state = trace_boundaries(with_starts({0, 7}), with_starts({0, 1}), ev, EditType::Whitespace);
  EXPECT_EQ(state.old_starts, (Set{0, 8}));
  EXPECT_EQ(state.new_starts, (Set{0}));
  const auto c = classify_fragment_change(with_starts({0, 7}), with_starts({0, 1}), ev, EditType::Whitespace);
  EXPECT_EQ(c.label, FragmentLabel::Merged);
  EXPECT_EQ(c.lost, (Set{8}));
  EXPECT_TRUE(c.gained.empty());
}

TEST(Classify, FooBarTrace) {
  const std::vector<EditEvent> ev = {{3, -1, EditType::Underscore}};
  const auto state = trace_boundaries(with_starts({0}), with_starts({0, 3}), ev, EditType::Underscore);
  EXPECT_EQ(state.edits_plus, (Set{3}));
  EXPECT_EQ(state.edits, (Set{3}));
  const auto c = classify_fragment_change(with_starts({0}), with_starts({0, 3}), ev, EditType::Underscore);
  EXPECT_EQ(c.label, FragmentLabel::Split);
  EXPECT_TRUE(c.lost.empty());
  EXPECT_EQ(c.gained, (Set{3}));
}

// "print(x)" -> "print( x)": the only new boundary is the inserted space.
TEST(Classify, SpaceAtEditSiteIsMasked) {
  const std::vector<EditEvent> ev = {{6, +1, EditType::Whitespace}};
  const auto c =
      classify_fragment_change(with_starts({0, 5, 7}), with_starts({0, 5, 6, 8}), ev, EditType::Whitespace);
  EXPECT_EQ(c.label, FragmentLabel::Unchanged);
}

TEST(Classify, LabelAlgebra) {
  EXPECT_EQ(label_for(false, false), FragmentLabel::Unchanged);
  EXPECT_EQ(label_for(true, false), FragmentLabel::Merged);
  EXPECT_EQ(label_for(false, true), FragmentLabel::Split);
  EXPECT_EQ(label_for(true, true), FragmentLabel::Mixed);
  for (auto l : {FragmentLabel::Unchanged, FragmentLabel::Merged, FragmentLabel::Split, FragmentLabel::Mixed}) {
    EXPECT_EQ(parse_fragment_label(to_string(l)), l);
  }
  EXPECT_FALSE(parse_fragment_label("shifted").has_value());
}

TEST(Classify, ContractViolations) {
  const auto enc = with_starts({0, 2});
  const std::vector<EditEvent> unsorted = {{3, +1, EditType::Whitespace}, {1, +1, EditType::Whitespace}};
  const std::vector<EditEvent> same_pos = {{1, +1, EditType::Whitespace}, {1, +1, EditType::Whitespace}};
  const std::vector<EditEvent> big_delta = {{1, 2, EditType::Whitespace}};
  const std::vector<EditEvent> wrong_type = {{1, 1, EditType::Underscore}};
  EXPECT_THROW(classify_fragment_change(enc, enc, unsorted, EditType::Whitespace), ContractError);
  EXPECT_THROW(classify_fragment_change(enc, enc, same_pos, EditType::Whitespace), ContractError);
  EXPECT_THROW(classify_fragment_change(enc, enc, big_delta, EditType::Whitespace), ContractError);
  EXPECT_THROW(classify_fragment_change(enc, enc, wrong_type, EditType::Whitespace), ContractError);
}

TEST(ClassifyProperties, MatchesOracleOnRandomCases) {
  std::mt19937 rng(20240611);
  static const std::string alphabet = "abcdLST_ .(";
  std::map<FragmentLabel, int> seen;
  const int cases = 3000;
  for (int trial = 0; trial < cases; ++trial) {
    const Tokenizer tok(random_spec(rng));
    std::string text;
    const int len = 1 + static_cast<int>(rng() % 16);
    for (int c = 0; c < len; ++c) text += alphabet[rng() % alphabet.size()];

    const EditType type = rng() % 2 ? EditType::Underscore : EditType::Whitespace;
    std::vector<EditEvent> events;
    for (std::size_t p = 0; p <= text.size(); ++p) {
      if (rng() % 4 != 0) continue;
      if (type == EditType::Underscore && p < text.size() && text[p] == '_' && rng() % 2) {
        events.push_back({p, -1, type});
      } else {
        events.push_back({p, +1, type});
      }
    }
    const auto rewritten = replay_events(text, events);
    const auto old_enc = tok.encode(text);
    const auto new_enc = tok.encode(rewritten);
    const auto got = classify_fragment_change(old_enc, new_enc, events, type);
    const auto want = oracle(text, old_enc, new_enc, events, type);
    ASSERT_EQ(got.lost, want.lost) << "trial " << trial << " '" << text << "' -> '" << rewritten << "'";
    ASSERT_EQ(got.gained, want.gained) << "trial " << trial;
    ASSERT_EQ(got.label, want.label) << "trial " << trial;
    ++seen[got.label];
  }
  EXPECT_EQ(seen.size(), 4u);
}

const RewriteRule& rule(const char* id) { return RuleCatalog::builtin().at(id); }

TEST(AnalyzeSample, UnaffectedSampleIsUnchanged) {
  const Tokenizer tok(testing::byte_spec({"ab"}));
  const auto r = analyze_sample("s1", lex("x = 1", Language::Python), rule("S15"), tok, ImmutableTypes::defaults());
  EXPECT_FALSE(r.affected);
  EXPECT_EQ(r.change.label, FragmentLabel::Unchanged);
  EXPECT_EQ(r.rewritten, r.original);
}

TEST(AnalyzeSample, SortedLstIsMerged) {
  // Merge order matters: "_lst" must outrank "st".
  const Tokenizer tok(testing::byte_spec({" sorted", "_lst", "st"}));
  const auto r = analyze_sample("s2", lex(" sortedLst", Language::Java), rule("N1"), tok, ImmutableTypes::defaults());
  EXPECT_EQ(r.rewritten, " sorted_lst");
  EXPECT_EQ(r.original_encoding.starts, (std::vector<std::size_t>{0, 7, 8}));
  EXPECT_EQ(r.rewritten_encoding.starts, (std::vector<std::size_t>{0, 7}));
  EXPECT_EQ(r.change.label, FragmentLabel::Merged);
}

TEST(AnalyzeSample, FactorialIsMerged) {
  const Tokenizer tok(testing::byte_spec({" factorial", ".factor", "ial"}));
  const auto r =
      analyze_sample("s3", lex("q.factorial(n)", Language::Java), rule("S15"), tok, ImmutableTypes::defaults());
  EXPECT_TRUE(r.affected);
  EXPECT_EQ(r.change.label, FragmentLabel::Merged);
  EXPECT_EQ(r.change.lost, (Set{9}));
}

TEST(AnalyzeSample, FooBarIsSplit) {
  const Tokenizer tok(testing::byte_spec({"foo_bar", "foo", "Bar"}, PretokenizerConfig{false}));
  const auto r = analyze_sample("s4", lex("foo_bar", Language::Python), rule("N4"), tok, ImmutableTypes::defaults());
  EXPECT_EQ(r.rewritten, "fooBar");
  EXPECT_EQ(r.original_encoding.tokens, (std::vector<std::string>{"foo_bar"}));
  EXPECT_EQ(r.rewritten_encoding.tokens, (std::vector<std::string>{"foo", "Bar"}));
  EXPECT_EQ(r.change.label, FragmentLabel::Split);
}

TEST(AnalyzeSample, CaseOnlyRenameStillCountsAsAffected) {
  const Tokenizer tok(testing::byte_spec({"my", "Var"}));
  const auto r = analyze_sample("s5", lex("int myVar = 1;", Language::Java), rule("N2"), tok, ImmutableTypes::defaults());
  EXPECT_TRUE(r.affected);
  EXPECT_TRUE(r.events.empty());
  EXPECT_EQ(r.change.label, FragmentLabel::Split);
}

TEST(AnalyzeSample, ErrorsCarrySampleId) {
  const Tokenizer tok(testing::char_spec({"a"}, {}));
  try {
    analyze_sample("bad-7", lex("x.y", Language::Java), rule("S15"), tok, ImmutableTypes::defaults());
    FAIL() << "expected SampleError";
  } catch (const SampleError& e) {
    EXPECT_EQ(e.sample_id(), "bad-7");
  }
}

}  // namespace
}  // namespace driftkit
