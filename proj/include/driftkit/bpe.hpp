#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace driftkit {

enum class CliticMode { None, CaseSensitive, CaseInsensitive };

/// What may precede a run of letters inside the same pre-token.
enum class WordPrefix {
  None,
  Space,         // one optional ' '
  AnyNonAlnum,   // one optional char that is not a letter, digit, CR or LF
};

/// Composable pre-tokenizer behaviour. Pre-tokens are produced by trying, in
/// order: English clitics ('s 't 're 've 'm 'll 'd), a letter run, a digit
/// run, a punctuation run, a newline block, whitespace not followed by a
/// non-space, and finally any whitespace run.
struct PretokenizerConfig {
  bool enabled = true;
  CliticMode clitics = CliticMode::CaseSensitive;
  WordPrefix word_prefix = WordPrefix::Space;
  int digit_run = 0;                  // max digits per pre-token, 0 = unlimited
  bool digit_prefix_space = true;     // ' ?\p{N}+'
  bool punct_prefix_space = true;     // ' ?[^\s\p{L}\p{N}]+'
  bool punct_trailing_newlines = false;
  bool newline_blocks = false;        // '\s*[\r\n]+'

  static PretokenizerConfig gpt2();
  static PretokenizerConfig llama3();
  /// Llama-3 layout with single-digit numbers (Qwen2 family).
  static PretokenizerConfig per_digit();
  static PretokenizerConfig preset(std::string_view name);

  friend bool operator==(const PretokenizerConfig&, const PretokenizerConfig&) = default;
};

struct TokenizerSpec {
  std::string name;
  std::map<std::string, std::int64_t> vocab;
  std::vector<std::pair<std::string, std::string>> merges;  // priority order
  PretokenizerConfig pretokenizer;
  bool byte_level = false;
  /// Emit a whole pre-token as one token when it is already in the vocabulary.
  bool ignore_merges = false;
  /// Reserved strings matched verbatim before pre-tokenization; each must be in `vocab`.
  std::set<std::string> specials;
};

struct Encoding {
  std::vector<std::string> tokens;
  std::vector<std::int64_t> ids;
  std::vector<std::size_t> starts;  // byte offsets into the encoded text

  bool empty() const { return tokens.empty(); }
  std::size_t size() const { return tokens.size(); }
};

/// Every invariant violation of `spec`; empty when valid.
std::vector<std::string> validate(const TokenizerSpec& spec);

/// Reads a tokenizer from disk. Accepted layouts:
///  - a native JSON file (`"format": "driftkit-bpe/1"`),
///  - a Hugging Face `tokenizer.json` with a BPE model,
///  - a directory holding `tokenizer.json`, or `vocab.json` + `merges.txt`
///    with an optional `pretokenizer.json` sidecar,
///  - `"<vocab.json>,<merges.txt>"`.
/// Throws FormatError, ValidationError or IoError.
TokenizerSpec load_tokenizer(const std::filesystem::path& path);
TokenizerSpec parse_tokenizer_json(std::string_view text);
TokenizerSpec import_vocab_merges(const std::filesystem::path& vocab_json, const std::filesystem::path& merges_txt,
                                  const PretokenizerConfig& pretokenizer = PretokenizerConfig::gpt2());
void save_tokenizer(const TokenizerSpec& spec, const std::filesystem::path& path);
std::string tokenizer_to_json(const TokenizerSpec& spec);

/// Symbol used for byte `b` in byte-level vocabularies.
std::string byte_symbol(unsigned char b);

/// Splits `text` into pre-tokens; returns [begin, end) byte ranges covering it.
std::vector<std::pair<std::size_t, std::size_t>> pretokenize(std::string_view text, const PretokenizerConfig& config);

/// Compiled, immutable BPE encoder. Safe to share between threads.
class Tokenizer {
 public:
  /// Throws ValidationError listing every violated invariant.
  explicit Tokenizer(TokenizerSpec spec);

  const TokenizerSpec& spec() const { return spec_; }
  Encoding encode(std::string_view text) const;
  /// Concatenates the decoded bytes of `tokens`.
  std::string decode(const std::vector<std::string>& tokens) const;
  std::string decode_ids(const std::vector<std::int64_t>& ids) const;
  /// Raw bytes a single token stands for.
  std::string token_bytes(std::string_view token) const;

 private:
  struct MergeTarget {
    std::uint32_t rank;
    std::int64_t product;
  };
  void encode_piece(std::string_view text, std::size_t offset, Encoding& out) const;

  TokenizerSpec spec_;
  std::unordered_map<std::int64_t, std::string> id_to_token_;
  std::unordered_map<std::uint64_t, MergeTarget> merge_ranks_;
  std::vector<std::string> specials_by_length_;
  std::array<bool, 256> special_lead_{};
  std::vector<std::int64_t> byte_ids_;
};

struct VocabComparison {
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  std::size_t shared = 0;
  std::size_t union_size = 0;
  double distance = 0.0;  // 1 - shared / union
};

/// Jaccard distance over token-string sets (special tokens included).
VocabComparison compare_vocabularies(const TokenizerSpec& a, const TokenizerSpec& b);
double vocab_distance(const TokenizerSpec& a, const TokenizerSpec& b);

}  // namespace driftkit
