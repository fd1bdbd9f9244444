#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "driftkit/bpe.hpp"
#include "driftkit/identifiers.hpp"
#include "driftkit/lexer.hpp"
#include "driftkit/rules.hpp"

namespace driftkit {

struct SampleRecord {
  std::string id;
  Language language = Language::Python;
  std::string source;
  std::vector<std::string> patches;  // tests or entry points that follow renames
};

/// Reads a JSONL corpus ({id, language, source, patches?} per line) or a
/// directory tree of .java/.py files (ids are relative paths). Samples come
/// back sorted by id. Throws ConfigError on duplicate ids, FormatError on
/// malformed records, IoError on unreadable input.
std::vector<SampleRecord> load_corpus(const std::filesystem::path& path);
std::vector<SampleRecord> parse_corpus_jsonl(std::string_view text);

struct RunConfig {
  std::string rules = "all";                        // selection: ids, all, naming, spacing
  std::optional<std::filesystem::path> catalog;     // default: built-in rules
  std::optional<std::filesystem::path> immutable_types;
  std::optional<std::filesystem::path> tokenizer;
  std::filesystem::path corpus;
  std::filesystem::path out;
  unsigned workers = 1;
  std::uint64_t seed = 0;
  bool with_tokens = false;  // include token strings and starts in drift records

  /// Throws ConfigError when a referenced input is missing.
  void validate(bool needs_tokenizer) const;
  RuleCatalog load_catalog() const;
  ImmutableTypes load_immutable_types() const;
};

struct RunSummary {
  std::size_t samples = 0;
  std::size_t records = 0;
  std::size_t affected = 0;
  std::size_t skipped = 0;
  std::size_t errors = 0;
};

/// Writes rewrites.jsonl, errors.jsonl and run.json into `config.out`.
RunSummary cmd_rewrite(const RunConfig& config);

/// Writes drift.jsonl, errors.jsonl and run.json into `config.out`.
RunSummary cmd_analyze(const RunConfig& config);

struct MetricsConfig {
  std::filesystem::path drift;    // drift.jsonl from cmd_analyze
  std::filesystem::path labels;   // label JSONL
  std::filesystem::path out;
  std::optional<std::filesystem::path> catalog;
  std::vector<std::pair<std::string, std::string>> compare;  // model pairs for the signed-rank test
};

/// Writes metrics.json, accuracy.tsv, sensitivity.tsv and stratified.tsv.
/// Throws MissingLabel when labels cover a rule only partially.
void cmd_metrics(const MetricsConfig& config);

/// Returns the comparison JSON that is printed and, if `out` is set, written.
std::string cmd_vocab(const std::filesystem::path& a, const std::filesystem::path& b,
                      const std::optional<std::filesystem::path>& out);

/// Writes freq.tsv and freq.json; returns the TSV text.
std::string cmd_freq(const RunConfig& config);

}  // namespace driftkit
