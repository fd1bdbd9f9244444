#include <iostream>

#include <CLI11.hpp>

#include "driftkit/errors.hpp"
#include "driftkit/harness.hpp"
#include "driftkit/rules.hpp"

namespace fs = std::filesystem;
using namespace driftkit;

namespace {

struct Flags {
  std::string corpus;
  std::string rules = "all";
  std::vector<std::string> tokenizers;
  std::string out;
  std::string catalog;
  std::string immutable_types;
  unsigned workers = 1;
  std::uint64_t seed = 0;
  bool with_tokens = false;
};

void add_common(CLI::App* cmd, Flags& f, bool needs_out, const char* default_rules = "all") {
  cmd->add_option("--corpus", f.corpus, "JSONL corpus or directory of .java/.py files")->required();
  cmd->add_option("--rules", f.rules, "Rule ids, or all / naming / spacing")->default_str(default_rules);
  cmd->add_option("--catalog", f.catalog, "Rule catalog file (default: built-in rules)");
  cmd->add_option("--workers", f.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "Seed recorded in run.json")->capture_default_str();
  auto* out = cmd->add_option("--out", f.out, "Output directory");
  if (needs_out) out->required();
}

RunConfig to_config(const Flags& f) {
  RunConfig c;
  c.corpus = f.corpus;
  c.rules = f.rules;
  c.out = f.out;
  c.workers = f.workers;
  c.seed = f.seed;
  c.with_tokens = f.with_tokens;
  if (!f.catalog.empty()) c.catalog = fs::path(f.catalog);
  if (!f.immutable_types.empty()) c.immutable_types = fs::path(f.immutable_types);
  if (!f.tokenizers.empty()) c.tokenizer = fs::path(f.tokenizers.front());
  return c;
}

void report(const char* what, const RunSummary& s) {
  std::cerr << what << ": " << s.samples << " samples, " << s.records << " records, " << s.affected << " affected, "
            << s.skipped << " skipped, " << s.errors << " errors\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantics-preserving code rewrites and subword boundary drift analysis"};
  app.require_subcommand(1);
  Flags f;

  auto* rewrite = app.add_subcommand("rewrite", "Apply rewrite rules to a corpus");
  add_common(rewrite, f, true);
  rewrite->add_option("--immutable-types", f.immutable_types, "Immutable identifier contexts file");

  auto* analyze = app.add_subcommand("analyze", "Rewrite, tokenize and classify boundary changes");
  add_common(analyze, f, true);
  analyze->add_option("--immutable-types", f.immutable_types, "Immutable identifier contexts file");
  analyze->add_option("--tokenizer", f.tokenizers, "Tokenizer file or directory")->required()->expected(1);
  analyze->add_flag("--with-tokens", f.with_tokens, "Include token strings and starts in drift.jsonl");

  std::string drift;
  std::string labels;
  std::vector<std::string> compare;
  auto* metrics = app.add_subcommand("metrics", "Accuracy, sensitivity and stratified sensitivity from labels");
  metrics->add_option("--drift", drift, "drift.jsonl written by analyze")->required()->check(CLI::ExistingFile);
  metrics->add_option("--labels", labels, "Correctness label JSONL")->required()->check(CLI::ExistingFile);
  metrics->add_option("--out", f.out, "Output directory")->required();
  metrics->add_option("--catalog", f.catalog, "Rule catalog file (default: built-in rules)");
  metrics->add_option("--compare", compare, "MODEL_A:MODEL_B pairs for a signed-rank test over rule sensitivities");

  auto* vocab = app.add_subcommand("vocab", "Vocabulary distance between two tokenizers");
  vocab->add_option("--tokenizer", f.tokenizers, "Tokenizer file or directory (give twice)")->required()->expected(2);
  vocab->add_option("--out", f.out, "Output directory");

  auto* freq = app.add_subcommand("freq", "Left/right-hand side frequencies of spacing rules");
  add_common(freq, f, false, "spacing");

  CLI11_PARSE(app, argc, argv);
  if (freq->parsed() && freq->count("--rules") == 0) f.rules = "spacing";

  try {
    if (rewrite->parsed()) {
      report("rewrite", cmd_rewrite(to_config(f)));
    } else if (analyze->parsed()) {
      report("analyze", cmd_analyze(to_config(f)));
    } else if (metrics->parsed()) {
      MetricsConfig m;
      m.drift = drift;
      m.labels = labels;
      m.out = f.out;
      if (!f.catalog.empty()) m.catalog = fs::path(f.catalog);
      for (const auto& pair : compare) {
        const auto colon = pair.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == pair.size()) {
          throw ConfigError("--compare expects MODEL_A:MODEL_B, got '" + pair + "'");
        }
        m.compare.emplace_back(pair.substr(0, colon), pair.substr(colon + 1));
      }
      cmd_metrics(m);
      std::cerr << "metrics written to " << f.out << "\n";
    } else if (vocab->parsed()) {
      std::optional<fs::path> out;
      if (!f.out.empty()) out = fs::path(f.out);
      std::cout << cmd_vocab(f.tokenizers.at(0), f.tokenizers.at(1), out);
    } else if (freq->parsed()) {
      std::cout << cmd_freq(to_config(f));
    }
  } catch (const IdListError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
