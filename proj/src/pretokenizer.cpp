#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "driftkit/bpe.hpp"
#include "driftkit/errors.hpp"

namespace driftkit {

PretokenizerConfig PretokenizerConfig::gpt2() { return {}; }

PretokenizerConfig PretokenizerConfig::llama3() {
  PretokenizerConfig c;
  c.clitics = CliticMode::CaseInsensitive;
  c.word_prefix = WordPrefix::AnyNonAlnum;
  c.digit_run = 3;
  c.digit_prefix_space = false;
  c.punct_trailing_newlines = true;
  c.newline_blocks = true;
  return c;
}

PretokenizerConfig PretokenizerConfig::per_digit() {
  PretokenizerConfig c = llama3();
  c.digit_run = 1;
  return c;
}

PretokenizerConfig PretokenizerConfig::preset(std::string_view name) {
  if (name == "gpt2") return gpt2();
  if (name == "llama3") return llama3();
  if (name == "per_digit" || name == "qwen2") return per_digit();
  if (name == "none") {
    PretokenizerConfig c;
    c.enabled = false;
    return c;
  }
  throw FormatError("unknown pre-tokenizer preset '" + std::string(name) + "'");
}

namespace {

enum : unsigned char { kLetter = 1, kNumber = 2, kSpace = 4, kNewline = 8 };

struct Unit {
  std::size_t begin;
  UChar32 cp;
  unsigned char cls;
};

std::vector<Unit> decode_units(std::string_view text) {
  std::vector<Unit> units;
  units.reserve(text.size());
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const auto begin = static_cast<std::size_t>(i);
    UChar32 c;
    U8_NEXT(s, i, length, c);
    unsigned char cls = 0;
    if (c >= 0) {
      const auto mask = U_GET_GC_MASK(c);
      if (mask & U_GC_L_MASK) cls |= kLetter;
      if (mask & U_GC_N_MASK) cls |= kNumber;
      if (u_isUWhiteSpace(c)) cls |= kSpace;
      if (c == '\r' || c == '\n') cls |= kNewline;
    }
    units.push_back({begin, c, cls});
  }
  return units;
}

class Splitter {
 public:
  Splitter(const std::vector<Unit>& u, const PretokenizerConfig& c) : u_(u), c_(c), n_(u.size()) {}

  std::size_t match(std::size_t i) const {
    if (auto j = clitic(i)) return j;
    if (auto j = word(i)) return j;
    if (auto j = digits(i)) return j;
    if (auto j = punct(i)) return j;
    if (auto j = newline_block(i)) return j;
    if (is(i, kSpace)) {
      const std::size_t w = run(i, kSpace);
      if (w == n_) return w;
      if (w - 1 > i) return w - 1;
      return w;
    }
    return i + 1;
  }

 private:
  bool is(std::size_t k, unsigned char cls) const { return k < n_ && (u_[k].cls & cls); }
  bool is_punct(std::size_t k) const { return k < n_ && !(u_[k].cls & (kLetter | kNumber | kSpace)); }
  bool is_char(std::size_t k, char ch) const { return k < n_ && u_[k].cp == ch; }

  std::size_t run(std::size_t k, unsigned char cls) const {
    while (is(k, cls)) ++k;
    return k;
  }

  std::size_t clitic(std::size_t i) const {
    if (c_.clitics == CliticMode::None || !is_char(i, '\'')) return 0;
    static constexpr std::string_view kSuffixes[] = {"s", "t", "re", "ve", "m", "ll", "d"};
    const bool fold = c_.clitics == CliticMode::CaseInsensitive;
    for (auto suffix : kSuffixes) {
      std::size_t k = i + 1;
      bool ok = true;
      for (char ch : suffix) {
        if (k >= n_) {
          ok = false;
          break;
        }
        UChar32 cp = u_[k].cp;
        if (fold && cp >= 'A' && cp <= 'Z') cp += 'a' - 'A';
        if (cp != ch) {
          ok = false;
          break;
        }
        ++k;
      }
      if (ok) return k;
    }
    return 0;
  }

  std::size_t word(std::size_t i) const {
    if (is(i, kLetter)) return run(i, kLetter);
    bool prefix = false;
    switch (c_.word_prefix) {
      case WordPrefix::None: break;
      case WordPrefix::Space: prefix = is_char(i, ' '); break;
      case WordPrefix::AnyNonAlnum: prefix = i < n_ && !(u_[i].cls & (kLetter | kNumber | kNewline)); break;
    }
    if (prefix && is(i + 1, kLetter)) return run(i + 1, kLetter);
    return 0;
  }

  std::size_t digits(std::size_t i) const {
    std::size_t start = i;
    if (c_.digit_prefix_space && is_char(i, ' ') && is(i + 1, kNumber)) start = i + 1;
    if (!is(start, kNumber)) return 0;
    std::size_t end = run(start, kNumber);
    if (c_.digit_run > 0) end = std::min(end, start + static_cast<std::size_t>(c_.digit_run));
    return end;
  }

  std::size_t punct(std::size_t i) const {
    std::size_t start = i;
    if (c_.punct_prefix_space && is_char(i, ' ') && is_punct(i + 1)) start = i + 1;
    if (!is_punct(start)) return 0;
    std::size_t end = start;
    while (is_punct(end)) ++end;
    if (c_.punct_trailing_newlines) end = run(end, kNewline);
    return end;
  }

  std::size_t newline_block(std::size_t i) const {
    if (!c_.newline_blocks || !is(i, kSpace)) return 0;
    const std::size_t w = run(i, kSpace);
    for (std::size_t k = w; k > i; --k) {
      if (u_[k - 1].cls & kNewline) return k;
    }
    return 0;
  }

  const std::vector<Unit>& u_;
  const PretokenizerConfig& c_;
  std::size_t n_;
};

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> pretokenize(std::string_view text, const PretokenizerConfig& config) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (text.empty()) return out;
  if (!config.enabled) {
    out.emplace_back(0, text.size());
    return out;
  }
  const auto units = decode_units(text);
  Splitter splitter(units, config);
  std::size_t i = 0;
  while (i < units.size()) {
    const std::size_t j = splitter.match(i);
    const std::size_t end = j < units.size() ? units[j].begin : text.size();
    out.emplace_back(units[i].begin, end);
    i = j;
  }
  return out;
}

}  // namespace driftkit
