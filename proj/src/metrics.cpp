#include "driftkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "driftkit/errors.hpp"

namespace driftkit {

// ---- Rational ---------------------------------------------------------------

namespace {

using i128 = __int128;

Rational make(i128 num, i128 den) {
  if (den == 0) throw RangeError("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr i128 lo = std::numeric_limits<std::int64_t>::min();
  constexpr i128 hi = std::numeric_limits<std::int64_t>::max();
  if (num < lo || num > hi || den > hi) throw RangeError("rational overflow");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw RangeError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational Rational::parse(std::string_view text) {
  auto bad = [&]() { return FormatError("not a rational number: '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto to_int = [&](std::string_view s) -> i128 {
    if (s.size() > 18) throw bad();
    i128 v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
  };
  bool negative = false;
  std::string_view s = text;
  if (s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  i128 num;
  i128 den = 1;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    if (!digits(s.substr(0, slash)) || !digits(s.substr(slash + 1))) throw bad();
    num = to_int(s.substr(0, slash));
    den = to_int(s.substr(slash + 1));
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if (!(whole.empty() || digits(whole)) || !digits(frac)) throw bad();
    num = to_int(std::string(whole) + std::string(frac));
    for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
  } else {
    if (!digits(s)) throw bad();
    num = to_int(s);
  }
  return make(negative ? -num : num, den);
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) {
  return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}
Rational operator*(const Rational& a, const Rational& b) {
  return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
  return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}
std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const i128 l = i128(a.num_) * b.den_;
  const i128 r = i128(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int correctness(const Rational& pass_fraction) {
  if (pass_fraction < Rational(0) || pass_fraction > Rational(1)) {
    throw RangeError("pass fraction " + pass_fraction.str() + " is outside [0, 1]");
  }
  return pass_fraction == Rational(1) ? 1 : 0;
}

// ---- labels -----------------------------------------------------------------

void LabelSet::add(SampleLabel label) {
  auto key = std::make_tuple(label.model, label.assignment, label.sample_id);
  if (labels_.contains(key)) {
    throw ConfigError("duplicate label for sample " + label.sample_id + ", assignment " + label.assignment +
                      ", model " + label.model);
  }
  labels_.emplace(std::move(key), std::move(label));
}

const SampleLabel* LabelSet::find(std::string_view model, std::string_view assignment, std::string_view sample) const {
  auto it = labels_.find(std::make_tuple(std::string(model), std::string(assignment), std::string(sample)));
  return it == labels_.end() ? nullptr : &it->second;
}

std::set<std::string> LabelSet::models() const {
  std::set<std::string> out;
  for (const auto& [key, l] : labels_) out.insert(std::get<0>(key));
  return out;
}

std::set<std::string> LabelSet::assignments(std::string_view model) const {
  std::set<std::string> out;
  for (const auto& [key, l] : labels_) {
    if (std::get<0>(key) == model) out.insert(std::get<1>(key));
  }
  return out;
}

std::vector<std::string> LabelSet::samples(std::string_view model, std::string_view assignment) const {
  std::vector<std::string> out;
  for (const auto& [key, l] : labels_) {
    if (std::get<0>(key) == model && std::get<1>(key) == assignment) out.push_back(std::get<2>(key));
  }
  return out;
}

LabelSet LabelSet::parse_jsonl(std::string_view text, const RuleCatalog& catalog) {
  using nlohmann::json;
  LabelSet set;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "labels line " + std::to_string(lineno);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError(where + ": " + e.what());
    }
    if (!j.is_object()) throw FormatError(where + ": not an object");
    SampleLabel label;
    try {
      const auto& sid = j.at("sample_id");
      label.sample_id = sid.is_string() ? sid.get<std::string>() : sid.dump();
      const auto& a = j.at("assignment");
      if (a.is_number_integer()) {
        const auto k = a.get<std::int64_t>();
        if (k < 0 || k > static_cast<std::int64_t>(catalog.rules().size())) {
          throw FormatError(where + ": assignment index " + std::to_string(k) + " out of range");
        }
        label.assignment = k == 0 ? std::string(kBaseline) : catalog.rules()[k - 1].id;
      } else {
        label.assignment = a.get<std::string>();
        if (label.assignment != kBaseline && !catalog.find(label.assignment)) {
          throw FormatError(where + ": unknown assignment '" + label.assignment + "'");
        }
      }
      if (j.contains("model")) label.model = j.at("model").get<std::string>();
      std::optional<int> y;
      if (j.contains("r")) {
        const auto& r = j.at("r");
        label.pass_fraction = Rational::parse(r.is_string() ? r.get<std::string>() : r.dump());
        y = correctness(*label.pass_fraction);
      }
      if (j.contains("y")) {
        const auto& yv = j.at("y");
        const int given = yv.is_boolean() ? static_cast<int>(yv.get<bool>()) : yv.get<int>();
        if (given != 0 && given != 1) throw FormatError(where + ": y must be 0 or 1");
        if (y && *y != given) throw FormatError(where + ": y disagrees with r");
        y = given;
      }
      if (!y) throw FormatError(where + ": needs r or y");
      label.correct = *y;
    } catch (const json::exception& e) {
      throw FormatError(where + ": " + e.what());
    } catch (const RangeError& e) {
      throw FormatError(where + ": " + e.what());
    }
    set.add(std::move(label));
  }
  return set;
}

LabelSet LabelSet::load(const std::filesystem::path& path, const RuleCatalog& catalog) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read labels " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_jsonl(buf.str(), catalog);
}

// ---- accuracy and flips -----------------------------------------------------

namespace {

std::vector<int> gather(const LabelSet& labels, std::string_view model, std::string_view assignment,
                        std::span<const std::string> ids) {
  std::vector<int> out;
  std::vector<std::string> missing;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    if (const auto* l = labels.find(model, assignment, id)) {
      out.push_back(l->correct);
    } else {
      missing.push_back(id);
    }
  }
  if (!missing.empty()) throw MissingLabel(std::string(assignment) + " (model " + std::string(model) + ")", missing);
  return out;
}

}  // namespace

Rational accuracy(const LabelSet& labels, std::string_view model, std::string_view assignment,
                  std::span<const std::string> subset) {
  if (subset.empty()) throw EmptySubset();
  const auto y = gather(labels, model, assignment, subset);
  return Rational(std::accumulate(y.begin(), y.end(), std::int64_t{0}), static_cast<std::int64_t>(y.size()));
}

Rational delta_accuracy(const LabelSet& labels, std::string_view model, std::string_view variant,
                        std::span<const std::string> subset) {
  const auto base = accuracy(labels, model, kBaseline, subset);
  return accuracy(labels, model, variant, subset) - base;
}

FlipCounts count_flips(std::span<const int> baseline, std::span<const int> variant) {
  if (baseline.size() != variant.size()) throw ContractError("correctness vectors differ in length");
  FlipCounts f;
  for (std::size_t k = 0; k < baseline.size(); ++k) {
    if (baseline[k] == 1 && variant[k] == 0) ++f.to_wrong;
    if (baseline[k] == 0 && variant[k] == 1) ++f.to_right;
  }
  return f;
}

FlipCounts count_flips(const LabelSet& labels, std::string_view model, std::string_view variant,
                       std::span<const std::string> affected) {
  const auto base = gather(labels, model, kBaseline, affected);
  return count_flips(base, gather(labels, model, variant, affected));
}

std::optional<Rational> sensitivity(std::span<const int> baseline, std::span<const int> variant) {
  const auto flips = count_flips(baseline, variant);
  if (baseline.empty()) return std::nullopt;
  return Rational(static_cast<std::int64_t>(flips.total()), static_cast<std::int64_t>(baseline.size()));
}

std::optional<Rational> sensitivity(const LabelSet& labels, std::string_view model, std::string_view variant,
                                    std::span<const std::string> affected) {
  const auto base = gather(labels, model, kBaseline, affected);
  return sensitivity(base, gather(labels, model, variant, affected));
}

StratifiedSensitivity stratified_sensitivity(const LabelSet& labels, std::string_view model, std::string_view variant,
                                             std::span<const std::string> affected,
                                             const std::map<std::string, FragmentLabel>& partition) {
  std::vector<std::string> gaps;
  std::map<std::string, std::vector<std::string>> members;
  for (const auto& id : affected) {
    auto it = partition.find(id);
    if (it == partition.end()) {
      gaps.push_back(id);
      continue;
    }
    members[std::string(to_string(it->second))].push_back(id);
    if (it->second != FragmentLabel::Unchanged) members["changed"].push_back(id);
  }
  if (!gaps.empty()) throw PartitionGap(gaps);
  StratifiedSensitivity out;
  for (const char* key : {"unchanged", "merged", "split", "mixed", "changed"}) {
    const auto& ids = members[key];
    out[key] = Stratum{ids.size(), sensitivity(labels, model, variant, ids)};
  }
  return out;
}

// ---- frequency ratio --------------------------------------------------------

bool supports_frequency_ratio(const RewriteRule& rule) {
  return rule.kind == RuleKind::Spacing && rule.former.has_surface_form() && rule.latter.has_surface_form();
}

FrequencyCount frequency_ratio(std::span<const TokenIndex> corpus, const RewriteRule& rule) {
  if (!supports_frequency_ratio(rule)) {
    throw ContractError("rule " + rule.id + " has no literal surface form to count");
  }
  FrequencyCount count;
  for (const auto& index : corpus) {
    if (!rule.applies_to(index.language)) continue;
    const auto& toks = index.tokens;
    auto pair_at = [&](std::size_t k) {
      return rule.former.matches(toks[k], rule.wildcard_exclude) &&
             rule.latter.matches(toks[k + 1], rule.wildcard_exclude);
    };
    for (std::string_view gap : {std::string_view(""), std::string_view(" ")}) {
      std::size_t& n = gap.empty() ? count.lhs : count.rhs;
      for (std::size_t k = 0; k + 1 < toks.size();) {
        if (index.gap_before(k + 1) == gap && pair_at(k)) {
          ++n;
          k += 2;
        } else {
          ++k;
        }
      }
    }
  }
  if (count.lhs > 0) {
    count.ratio_percent = Rational(100 * static_cast<std::int64_t>(count.rhs), static_cast<std::int64_t>(count.lhs));
  }
  return count;
}

// ---- Wilcoxon signed-rank ---------------------------------------------------

WilcoxonResult wilcoxon_signed_rank(std::span<const std::pair<double, double>> pairs) {
  if (pairs.empty()) throw ContractError("signed-rank test needs at least one pair");
  std::vector<double> diffs;
  for (const auto& [a, b] : pairs) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw ContractError("signed-rank test needs finite values");
    if (a != b) diffs.push_back(a - b);
  }
  WilcoxonResult r;
  r.n = diffs.size();
  if (diffs.empty()) {
    r.degenerate = true;
    r.exact = true;
    return r;
  }
  const std::size_t n = diffs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return std::abs(diffs[x]) < std::abs(diffs[y]); });

  // Doubled ranks keep tied averages integral.
  std::vector<long long> rank2(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]])) ++j;
    const long long avg2 = static_cast<long long>(i + 1 + j + 1);
    for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = avg2;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  long long plus2 = 0;
  long long minus2 = 0;
  for (std::size_t k = 0; k < n; ++k) (diffs[k] > 0 ? plus2 : minus2) += rank2[k];
  r.w_plus = plus2 / 2.0;
  r.w_minus = minus2 / 2.0;
  r.statistic = std::min(r.w_plus, r.w_minus);

  if (n <= kWilcoxonExactLimit) {
    r.exact = true;
    const long long total2 = plus2 + minus2;
    std::vector<double> ways(static_cast<std::size_t>(total2) + 1, 0.0);
    ways[0] = 1.0;
    long long reach = 0;
    for (auto w : rank2) {
      for (long long s = reach; s >= 0; --s) {
        if (ways[s] != 0.0) ways[s + w] += ways[s];
      }
      reach += w;
    }
    const long long stat2 = std::min(plus2, minus2);
    double tail = 0.0;
    for (long long s = 0; s <= stat2; ++s) tail += ways[s];
    r.p_value = std::min(1.0, 2.0 * tail / std::ldexp(1.0, static_cast<int>(n)));
  } else {
    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1) / 4.0;
    const double var = nn * (nn + 1) * (2 * nn + 1) / 24.0 - tie_term / 48.0;
    if (var <= 0) {
      r.p_value = 1.0;
    } else {
      const double z = (r.statistic - mean) / std::sqrt(var);
      r.p_value = std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
    }
  }
  return r;
}

}  // namespace driftkit
