#pragma once

// Independent reference implementations shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "driftkit/drift.hpp"
#include "driftkit/rewrite.hpp"
#include "support.hpp"

namespace driftkit::testing {

using Set = std::set<long long>;

// Brute-force oracle: replay the edits character by character, recording
// where every original position lands, then diff boundary sets directly.
inline FragmentChange oracle(std::string_view original, const Encoding& old_enc, const Encoding& new_enc,
                      const std::vector<EditEvent>& events, EditType type) {
  std::vector<long long> landing(original.size() + 1);
  std::vector<long long> event_at(events.size());
  long long out = 0;
  std::size_t k = 0;
  for (std::size_t p = 0; p <= original.size(); ++p) {
    landing[p] = out;
    bool deleted = false;
    while (k < events.size() && events[k].pos == p) {
      event_at[k] = out;
      if (events[k].delta > 0) {
        ++out;
      } else {
        deleted = true;
      }
      ++k;
    }
    if (p < original.size() && !deleted) ++out;
  }
  Set old_set;
  for (auto s : old_enc.starts) old_set.insert(landing[s]);
  Set edits;
  Set after_edit;
  for (std::size_t i = 0; i < events.size(); ++i) {
    edits.insert(event_at[i]);
    after_edit.insert(event_at[i] + (events[i].delta > 0 ? 1 : 0));
  }
  Set new_set(new_enc.starts.begin(), new_enc.starts.end());
  for (auto s : type == EditType::Underscore ? after_edit : edits) {
    const bool masked = type == EditType::Underscore ? !edits.contains(s) : !old_set.contains(s);
    if (masked) new_set.erase(s);
  }
  FragmentChange c;
  for (auto s : old_set) {
    if (!new_set.contains(s)) c.lost.insert(s);
  }
  for (auto s : new_set) {
    if (!old_set.contains(s)) c.gained.insert(s);
  }
  c.label = label_for(!c.lost.empty(), !c.gained.empty());
  return c;
}

inline TokenizerSpec random_spec(std::mt19937& rng) {
  static const std::string alphabet = "abcdLST_ .(";
  std::vector<std::string> words;
  const int n = 4 + static_cast<int>(rng() % 20);
  for (int w = 0; w < n; ++w) {
    std::string word;
    const int len = 2 + static_cast<int>(rng() % 5);
    for (int c = 0; c < len; ++c) word += alphabet[rng() % alphabet.size()];
    words.push_back(word);
  }
  static const PretokenizerConfig layouts[] = {PretokenizerConfig::llama3(), PretokenizerConfig::gpt2(),
                                               PretokenizerConfig{false}};
  return byte_spec(words, layouts[rng() % 3]);
}

inline std::string random_text(std::mt19937& rng, bool raw_bytes) {
  static const std::vector<std::string> atoms = {
      "a", "b", "Z", "q", "_", "0", "7", " ", "  ", "\n", "\t", "\r\n", ".", "(", ")", "'s", "'", "\"",
      "+", "=", "==", "->", "é", "ß", "中", "文", "🦙", "\xC2\xA0", "def", "return", "sorted", "Lst", "123"};
  std::string out;
  const int n = static_cast<int>(rng() % 24);
  for (int k = 0; k < n; ++k) {
    if (raw_bytes && rng() % 16 == 0) {
      out += static_cast<char>(rng() % 256);
    } else {
      out += atoms[rng() % atoms.size()];
    }
  }
  return out;
}

/// Empty when decode(encode(text)) == text and every token's start offset
/// covers exactly its own bytes; otherwise a description of the first fault.
inline std::string soundness_fault(const Tokenizer& tok, const std::string& text) {
  const auto e = tok.encode(text);
  if (e.tokens.size() != e.ids.size() || e.tokens.size() != e.starts.size()) return "parallel arrays differ in length";
  if (tok.decode(e.tokens) != text) return "decode(tokens) differs";
  if (tok.decode_ids(e.ids) != text) return "decode(ids) differs";
  if (text.empty()) return e.empty() ? "" : "empty text gave tokens";
  if (e.starts.front() != 0) return "first start is not 0";
  for (std::size_t k = 0; k < e.size(); ++k) {
    const std::size_t end = k + 1 < e.size() ? e.starts[k + 1] : text.size();
    if (e.starts[k] >= end) return "starts not strictly increasing";
    if (text.substr(e.starts[k], end - e.starts[k]) != tok.token_bytes(e.tokens[k])) {
      return "token " + std::to_string(k) + " does not cover its own bytes";
    }
  }
  return "";
}

inline std::vector<std::pair<double, double>> from_differences(const std::vector<double>& d) {
  std::vector<std::pair<double, double>> out;
  for (double x : d) out.emplace_back(x, 0.0);
  return out;
}

// Exact p-value against all 2^n sign assignments of the observed ranks.
inline double enumerate_p(const std::vector<double>& diffs) {
  std::vector<double> nz;
  for (double d : diffs) {
    if (d != 0) nz.push_back(d);
  }
  const std::size_t n = nz.size();
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return std::fabs(nz[a]) < std::fabs(nz[b]); });
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::fabs(nz[order[j + 1]]) == std::fabs(nz[order[i]])) ++j;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = (i + j) / 2.0 + 1.0;
    i = j + 1;
  }
  double w_plus = 0, total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    total += rank[k];
    if (nz[k] > 0) w_plus += rank[k];
  }
  const double stat = std::min(w_plus, total - w_plus);
  std::size_t low = 0, high = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double w = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1u << k)) w += rank[k];
    }
    if (w <= stat + 1e-9) ++low;
    if (w >= total - stat - 1e-9) ++high;
  }
  return std::min(1.0, 2.0 * static_cast<double>(std::min(low, high)) / static_cast<double>(1u << n));
}

}  // namespace driftkit::testing
