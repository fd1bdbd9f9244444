#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "driftkit/drift.hpp"
#include "driftkit/lexer.hpp"
#include "driftkit/rules.hpp"

namespace driftkit {

/// Exact fraction over 64-bit integers, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Accepts "p/q", integers and plain decimals such as "0.75".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// 1 iff every test passed. Throws RangeError outside [0, 1].
int correctness(const Rational& pass_fraction);

inline constexpr std::string_view kBaseline = "baseline";
inline constexpr std::string_view kDefaultModel = "default";

struct SampleLabel {
  std::string sample_id;
  std::string assignment;  // "baseline" or a rule id
  std::string model = std::string(kDefaultModel);
  std::optional<Rational> pass_fraction;
  int correct = 0;
};

/// Correctness labels keyed by (model, assignment, sample).
class LabelSet {
 public:
  /// Throws ConfigError on a duplicate key.
  void add(SampleLabel label);

  const SampleLabel* find(std::string_view model, std::string_view assignment, std::string_view sample) const;
  std::set<std::string> models() const;
  std::set<std::string> assignments(std::string_view model) const;
  std::vector<std::string> samples(std::string_view model, std::string_view assignment) const;
  std::size_t size() const { return labels_.size(); }

  /// One JSON object per line: sample_id, assignment, optional model, and at
  /// least one of r (pass fraction) and y (0/1). When both are given they must
  /// agree. `assignment` may be "baseline", a rule id, or an integer where 0 is
  /// the baseline and k >= 1 is the k-th rule of `catalog`.
  static LabelSet parse_jsonl(std::string_view text, const RuleCatalog& catalog);
  static LabelSet load(const std::filesystem::path& path, const RuleCatalog& catalog);

 private:
  std::map<std::tuple<std::string, std::string, std::string>, SampleLabel, std::less<>> labels_;
};

/// Mean correctness over `subset`. Throws MissingLabel or EmptySubset.
Rational accuracy(const LabelSet& labels, std::string_view model, std::string_view assignment,
                  std::span<const std::string> subset);

/// Variant accuracy minus baseline accuracy over the same subset.
Rational delta_accuracy(const LabelSet& labels, std::string_view model, std::string_view variant,
                        std::span<const std::string> subset);

struct FlipCounts {
  std::size_t to_wrong = 0;  // correct at baseline, wrong under the variant
  std::size_t to_right = 0;
  std::size_t total() const { return to_wrong + to_right; }
};

FlipCounts count_flips(std::span<const int> baseline, std::span<const int> variant);
FlipCounts count_flips(const LabelSet& labels, std::string_view model, std::string_view variant,
                       std::span<const std::string> affected);

/// Flip rate over paired correctness vectors; nullopt when empty.
std::optional<Rational> sensitivity(std::span<const int> baseline, std::span<const int> variant);
/// Flip rate over the affected samples. Throws MissingLabel naming the
/// assignment whose labels are absent.
std::optional<Rational> sensitivity(const LabelSet& labels, std::string_view model, std::string_view variant,
                                    std::span<const std::string> affected);

struct Stratum {
  std::size_t size = 0;
  std::optional<Rational> sensitivity;
};

/// Keys: unchanged, merged, split, mixed, and changed (union of the last three).
using StratifiedSensitivity = std::map<std::string, Stratum>;

StratifiedSensitivity stratified_sensitivity(const LabelSet& labels, std::string_view model, std::string_view variant,
                                             std::span<const std::string> affected,
                                             const std::map<std::string, FragmentLabel>& partition);

struct FrequencyCount {
  std::size_t lhs = 0;  // adjacent occurrences, e.g. "a.b"
  std::size_t rhs = 0;  // the same pair separated by exactly one space
  std::optional<Rational> ratio_percent;
};

/// Non-overlapping counts of a spacing rule's two surface forms. Only rules
/// whose sides are literal lexemes or identifiers are supported; others throw
/// ContractError. Indexes in a language the rule does not cover are ignored.
FrequencyCount frequency_ratio(std::span<const TokenIndex> corpus, const RewriteRule& rule);
bool supports_frequency_ratio(const RewriteRule& rule);

struct WilcoxonResult {
  std::size_t n = 0;        // pairs left after dropping zero differences
  double w_plus = 0.0;
  double w_minus = 0.0;
  double statistic = 0.0;   // min(w_plus, w_minus)
  double p_value = 1.0;     // two-sided
  bool exact = false;
  bool degenerate = false;  // every difference was zero
};

inline constexpr std::size_t kWilcoxonExactLimit = 25;

/// Two-sided signed-rank test on paired values. Zero differences are dropped
/// and ties get average ranks. Uses the exact null distribution for n <= 25,
/// otherwise the tie-corrected normal approximation without continuity
/// correction. Throws ContractError on empty input.
WilcoxonResult wilcoxon_signed_rank(std::span<const std::pair<double, double>> pairs);

}  // namespace driftkit
