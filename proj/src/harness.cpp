#include "driftkit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "driftkit/drift.hpp"
#include "driftkit/errors.hpp"
#include "driftkit/metrics.hpp"
#include "driftkit/rewrite.hpp"

namespace driftkit {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr std::string_view kVersion = "0.1.0";

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void prepare_out(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw IoError("cannot create output directory " + out.string());
}

std::string dump(const ojson& j) { return j.dump(-1, ' ', false, ojson::error_handler_t::replace); }

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const LexError*>(&e)) return "LexError";
  if (dynamic_cast<const EncodingError*>(&e)) return "EncodingError";
  if (dynamic_cast<const StyleError*>(&e)) return "StyleError";
  if (dynamic_cast<const ContractError*>(&e)) return "ContractError";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "InternalError";
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  const std::size_t count = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
  if (count <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

ojson events_json(const std::vector<EditEvent>& events) {
  ojson out = ojson::array();
  for (const auto& e : events) out.push_back({e.pos, e.delta});
  return out;
}

ojson renames_json(const RenameMap& renames) {
  ojson out = ojson::object();
  for (const auto& [from, to] : renames) out[from] = to;
  return out;
}

ojson record_head(const SampleRecord& s, const RewriteRule& rule, std::string_view status) {
  ojson j;
  j["sample_id"] = s.id;
  j["rule_id"] = rule.id;
  j["language"] = to_string(s.language);
  j["status"] = status;
  return j;
}

struct SampleOutput {
  std::vector<std::string> lines;
  std::vector<std::string> errors;
  std::size_t affected = 0;
  std::size_t skipped = 0;
};

enum class Mode { Rewrite, Analyze };

struct Pipeline {
  Mode mode;
  std::vector<const RewriteRule*> rules;
  ImmutableTypes types;
  const Tokenizer* tokenizer = nullptr;
  bool with_tokens = false;

  void fail(const SampleRecord& s, const RewriteRule& rule, std::string_view stage, const std::exception& e,
            SampleOutput& out) const {
    auto line = record_head(s, rule, "error");
    line["error"] = e.what();
    out.lines.push_back(dump(line));
    ojson err;
    err["sample_id"] = s.id;
    err["rule_id"] = rule.id;
    err["stage"] = stage;
    err["kind"] = error_kind(e);
    err["message"] = e.what();
    out.errors.push_back(dump(err));
  }

  SampleOutput run(const SampleRecord& s) const {
    SampleOutput out;
    std::vector<const RewriteRule*> applicable;
    for (const auto* rule : rules) {
      if (rule->applies_to(s.language)) {
        applicable.push_back(rule);
      }
    }

    std::optional<TokenIndex> index;
    std::optional<IdentifierContext> context;
    std::optional<Encoding> original;
    const char* stage = "lex";
    std::optional<std::string> setup_error;
    try {
      index = lex(s.source, s.language);
      stage = "identifiers";
      const bool any_naming = std::any_of(applicable.begin(), applicable.end(),
                                          [](const RewriteRule* r) { return r->kind == RuleKind::Naming; });
      if (any_naming) context = classify_identifiers(*index, types);
      stage = "encode";
      if (mode == Mode::Analyze && !applicable.empty()) original = tokenizer->encode(s.source);
    } catch (const std::exception& e) {
      for (const auto* rule : rules) {
        if (rule->applies_to(s.language)) {
          fail(s, *rule, stage, e, out);
        } else {
          skip(s, *rule, out);
        }
      }
      return out;
    }

    for (const auto* rule : rules) {
      if (!rule->applies_to(s.language)) {
        skip(s, *rule, out);
        continue;
      }
      try {
        auto result = rule->kind == RuleKind::Naming ? apply_naming_rewrite(*index, *context, *rule)
                                                     : apply_spacing_rewrite(*index, *rule);
        if (mode == Mode::Rewrite) {
          emit_rewrite(s, *rule, std::move(result), out);
        } else {
          auto record = analyze_rewrite(s.id, s.source, std::move(result), *rule, *tokenizer, &*original);
          emit_drift(s, *rule, record, out);
        }
      } catch (const std::exception& e) {
        fail(s, *rule, mode == Mode::Rewrite ? "rewrite" : "analyze", e, out);
      }
    }
    return out;
  }

  void skip(const SampleRecord& s, const RewriteRule& rule, SampleOutput& out) const {
    auto line = record_head(s, rule, "skipped");
    line["reason"] = "language-mismatch";
    out.lines.push_back(dump(line));
    ++out.skipped;
  }

  void emit_rewrite(const SampleRecord& s, const RewriteRule& rule, RewriteResult result, SampleOutput& out) const {
    const bool affected = result.rewritten != s.source;
    auto line = record_head(s, rule, "ok");
    line["affected"] = affected;
    line["edit_type"] = to_string(edit_type_for(rule));
    line["events"] = events_json(result.events);
    line["renames"] = renames_json(result.renames);
    line["rewritten"] = result.rewritten;
    if (!s.patches.empty()) {
      line["patches"] = propagate_renames(s.patches, result.renames, s.language);
    }
    out.lines.push_back(dump(line));
    if (affected) ++out.affected;
  }

  void emit_drift(const SampleRecord& s, const RewriteRule& rule, const DriftRecord& r, SampleOutput& out) const {
    auto line = record_head(s, rule, "ok");
    line["affected"] = r.affected;
    line["label"] = to_string(r.change.label);
    line["lost"] = r.change.lost;
    line["gained"] = r.change.gained;
    line["edit_type"] = to_string(edit_type_for(rule));
    line["events"] = events_json(r.events);
    line["original_token_count"] = r.original_encoding.size();
    line["rewritten_token_count"] = r.rewritten_encoding.size();
    if (with_tokens) {
      line["original_tokens"] = r.original_encoding.tokens;
      line["original_starts"] = r.original_encoding.starts;
      line["rewritten_tokens"] = r.rewritten_encoding.tokens;
      line["rewritten_starts"] = r.rewritten_encoding.starts;
    }
    out.lines.push_back(dump(line));
    if (r.affected) ++out.affected;
  }
};

RunSummary run_pipeline(const RunConfig& config, Mode mode) {
  config.validate(mode == Mode::Analyze);
  const auto catalog = config.load_catalog();
  Pipeline pipeline{mode, catalog.select(config.rules), config.load_immutable_types(), nullptr, config.with_tokens};
  std::optional<Tokenizer> tokenizer;
  if (mode == Mode::Analyze) {
    tokenizer.emplace(load_tokenizer(*config.tokenizer));
    pipeline.tokenizer = &*tokenizer;
  }
  const auto samples = load_corpus(config.corpus);
  prepare_out(config.out);

  std::vector<SampleOutput> outputs(samples.size());
  parallel_for(samples.size(), config.workers, [&](std::size_t i) { outputs[i] = pipeline.run(samples[i]); });

  RunSummary summary;
  summary.samples = samples.size();
  std::string records;
  std::string errors;
  for (const auto& o : outputs) {
    for (const auto& l : o.lines) records += l + '\n';
    for (const auto& e : o.errors) errors += e + '\n';
    summary.records += o.lines.size();
    summary.errors += o.errors.size();
    summary.affected += o.affected;
    summary.skipped += o.skipped;
  }
  write_file(config.out / (mode == Mode::Rewrite ? "rewrites.jsonl" : "drift.jsonl"), records);
  write_file(config.out / "errors.jsonl", errors);

  ojson run;
  run["tool"] = "driftkit";
  run["version"] = kVersion;
  run["command"] = mode == Mode::Rewrite ? "rewrite" : "analyze";
  run["corpus"] = config.corpus.generic_string();
  run["samples"] = samples.size();
  ojson ids = ojson::array();
  for (const auto* r : pipeline.rules) ids.push_back(r->id);
  run["rules"] = ids;
  run["immutable_types"] = config.immutable_types ? config.immutable_types->generic_string() : "builtin";
  if (tokenizer) {
    run["tokenizer"] = config.tokenizer->generic_string();
    run["tokenizer_name"] = tokenizer->spec().name;
    run["vocab_size"] = tokenizer->spec().vocab.size();
  }
  run["seed"] = config.seed;
  run["records"] = summary.records;
  run["affected"] = summary.affected;
  run["skipped"] = summary.skipped;
  run["errors"] = summary.errors;
  write_file(config.out / "run.json", run.dump(2) + '\n');
  return summary;
}

}  // namespace

// ---- corpus -----------------------------------------------------------------

std::vector<SampleRecord> parse_corpus_jsonl(std::string_view text) {
  std::vector<SampleRecord> samples;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "corpus line " + std::to_string(lineno);
    try {
      const auto j = ojson::parse(line);
      SampleRecord s;
      const auto& id = j.at("id");
      s.id = id.is_string() ? id.get<std::string>() : id.dump();
      const auto lang = parse_language(j.at("language").get<std::string>());
      if (!lang) throw FormatError(where + ": unknown language " + j.at("language").dump());
      s.language = *lang;
      s.source = j.at("source").get<std::string>();
      if (j.contains("patches")) s.patches = j.at("patches").get<std::vector<std::string>>();
      samples.push_back(std::move(s));
    } catch (const ojson::exception& e) {
      throw FormatError(where + ": " + e.what());
    }
  }
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t k = 1; k < samples.size(); ++k) {
    if (samples[k].id == samples[k - 1].id) throw ConfigError("duplicate sample id " + samples[k].id);
  }
  return samples;
}

std::vector<SampleRecord> load_corpus(const fs::path& path) {
  if (!fs::exists(path)) throw IoError("corpus does not exist: " + path.string());
  if (!fs::is_directory(path)) return parse_corpus_jsonl(read_file(path));
  std::vector<SampleRecord> samples;
  for (const auto& entry : fs::recursive_directory_iterator(path)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    std::optional<Language> lang;
    if (ext == ".java") lang = Language::Java;
    if (ext == ".py") lang = Language::Python;
    if (!lang) continue;
    samples.push_back({fs::relative(entry.path(), path).generic_string(), *lang, read_file(entry.path()), {}});
  }
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return samples;
}

// ---- configuration ----------------------------------------------------------

void RunConfig::validate(bool needs_tokenizer) const {
  auto require = [](const std::optional<fs::path>& p, const char* what) {
    if (p && !fs::exists(*p) && p->string().find(',') == std::string::npos) {
      throw ConfigError(std::string(what) + " not found: " + p->string());
    }
  };
  if (corpus.empty() || !fs::exists(corpus)) throw ConfigError("corpus not found: " + corpus.string());
  if (out.empty()) throw ConfigError("an output directory is required");
  if (workers == 0) throw ConfigError("workers must be at least 1");
  require(catalog, "rule catalog");
  require(immutable_types, "immutable-types file");
  if (needs_tokenizer) {
    if (!tokenizer) throw ConfigError("a tokenizer is required");
    require(tokenizer, "tokenizer");
  }
}

RuleCatalog RunConfig::load_catalog() const { return catalog ? RuleCatalog::load(*catalog) : RuleCatalog::builtin(); }

ImmutableTypes RunConfig::load_immutable_types() const {
  return immutable_types ? ImmutableTypes::load(*immutable_types) : ImmutableTypes::defaults();
}

RunSummary cmd_rewrite(const RunConfig& config) { return run_pipeline(config, Mode::Rewrite); }

RunSummary cmd_analyze(const RunConfig& config) { return run_pipeline(config, Mode::Analyze); }

// ---- metrics ----------------------------------------------------------------

namespace {

struct RuleRecords {
  std::vector<std::string> subset;
  std::vector<std::string> affected;
  std::map<std::string, FragmentLabel> partition;
};

ojson fraction(const std::optional<Rational>& r) {
  if (!r) return nullptr;
  ojson j;
  j["exact"] = r->str();
  j["value"] = r->to_double();
  return j;
}

std::string tsv(const std::optional<Rational>& r) {
  if (!r) return "null";
  std::ostringstream s;
  s.precision(6);
  s << std::fixed << r->to_double();
  return s.str();
}

std::optional<Rational> mean(const std::vector<Rational>& values) {
  if (values.empty()) return std::nullopt;
  Rational sum(0);
  for (const auto& v : values) sum = sum + v;
  return sum / Rational(static_cast<std::int64_t>(values.size()));
}

}  // namespace

void cmd_metrics(const MetricsConfig& config) {
  const RuleCatalog catalog = config.catalog ? RuleCatalog::load(*config.catalog) : RuleCatalog::builtin();
  const LabelSet labels = LabelSet::load(config.labels, catalog);

  std::map<std::string, RuleRecords> by_rule;
  {
    std::istringstream in(read_file(config.drift));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        const auto j = ojson::parse(line);
        if (j.at("status") != "ok") continue;
        const auto id = j.at("sample_id").get<std::string>();
        auto& rr = by_rule[j.at("rule_id").get<std::string>()];
        rr.subset.push_back(id);
        if (j.at("affected").get<bool>()) {
          rr.affected.push_back(id);
          const auto label = parse_fragment_label(j.at("label").get<std::string>());
          if (!label) throw FormatError("unknown fragment label");
          rr.partition.emplace(id, *label);
        }
      } catch (const ojson::exception& e) {
        throw FormatError("drift line " + std::to_string(lineno) + ": " + e.what());
      }
    }
  }
  prepare_out(config.out);

  std::vector<const RewriteRule*> rules;
  for (const auto& r : catalog.rules()) {
    if (by_rule.contains(r.id)) rules.push_back(&r);
  }

  ojson report;
  report["models"] = ojson::array();
  std::string acc_tsv = "model\tassignment\trule\tsubset\taccuracy\n";
  std::string sens_tsv =
      "model\trule\tkind\tsubset\taffected\tbaseline_accuracy\tvariant_accuracy\tdelta_accuracy\tflips_to_wrong\t"
      "flips_to_right\tsensitivity\n";
  std::string strat_tsv = "model\trule\tcategory\tsize\tsensitivity\n";
  std::map<std::string, std::map<std::string, std::optional<Rational>>> sens_by_model;

  for (const auto& model : labels.models()) {
    const auto present = labels.assignments(model);
    ojson m;
    m["model"] = model;
    m["rules"] = ojson::array();
    std::map<std::string, std::vector<Rational>> unweighted;
    std::map<std::string, std::pair<std::size_t, std::size_t>> weighted;  // flips, affected
    for (const auto* rule : rules) {
      if (!present.contains(rule->id)) continue;
      const auto& rr = by_rule.at(rule->id);
      if (rr.subset.empty()) continue;
      const auto base_acc = accuracy(labels, model, kBaseline, rr.subset);
      const auto var_acc = accuracy(labels, model, rule->id, rr.subset);
      const auto flips = count_flips(labels, model, rule->id, rr.affected);
      const auto sens = sensitivity(labels, model, rule->id, rr.affected);
      const auto strata = stratified_sensitivity(labels, model, rule->id, rr.affected, rr.partition);
      sens_by_model[model][rule->id] = sens;

      const std::string kind = rule->kind == RuleKind::Naming ? "naming" : "spacing";
      for (const auto& group : {kind, std::string("all")}) {
        if (sens) unweighted[group].push_back(*sens);
        weighted[group].first += flips.total();
        weighted[group].second += rr.affected.size();
      }

      ojson r;
      r["rule_id"] = rule->id;
      r["kind"] = kind;
      r["subset"] = rr.subset.size();
      r["affected"] = rr.affected.size();
      r["baseline_accuracy"] = fraction(base_acc);
      r["variant_accuracy"] = fraction(var_acc);
      r["delta_accuracy"] = fraction(var_acc - base_acc);
      r["flips_to_wrong"] = flips.to_wrong;
      r["flips_to_right"] = flips.to_right;
      r["sensitivity"] = fraction(sens);
      ojson st;
      for (const auto& [cat, stratum] : strata) {
        st[cat] = {{"size", stratum.size}, {"sensitivity", fraction(stratum.sensitivity)}};
        strat_tsv += model + '\t' + rule->id + '\t' + cat + '\t' + std::to_string(stratum.size) + '\t' +
                     tsv(stratum.sensitivity) + '\n';
      }
      r["stratified"] = st;
      m["rules"].push_back(r);

      acc_tsv += model + "\tbaseline\t" + rule->id + '\t' + std::to_string(rr.subset.size()) + '\t' + tsv(base_acc) + '\n';
      acc_tsv += model + '\t' + rule->id + '\t' + rule->id + '\t' + std::to_string(rr.subset.size()) + '\t' +
                 tsv(var_acc) + '\n';
      sens_tsv += model + '\t' + rule->id + '\t' + kind + '\t' + std::to_string(rr.subset.size()) + '\t' +
                  std::to_string(rr.affected.size()) + '\t' + tsv(base_acc) + '\t' + tsv(var_acc) + '\t' +
                  tsv(var_acc - base_acc) + '\t' + std::to_string(flips.to_wrong) + '\t' +
                  std::to_string(flips.to_right) + '\t' + tsv(sens) + '\n';
    }
    ojson avg;
    for (const char* group : {"naming", "spacing", "all"}) {
      std::optional<Rational> w;
      if (weighted[group].second > 0) {
        w = Rational(static_cast<std::int64_t>(weighted[group].first), static_cast<std::int64_t>(weighted[group].second));
      }
      avg[group] = {{"unweighted", fraction(mean(unweighted[group]))}, {"weighted", fraction(w)}};
    }
    m["average_sensitivity"] = avg;
    report["models"].push_back(m);
  }

  report["comparisons"] = ojson::array();
  for (const auto& [a, b] : config.compare) {
    if (!sens_by_model.contains(a) || !sens_by_model.contains(b)) {
      throw ConfigError("cannot compare " + a + " with " + b + ": model has no labelled rules");
    }
    std::vector<std::pair<double, double>> pairs;
    ojson used = ojson::array();
    for (const auto* rule : rules) {
      const auto& sa = sens_by_model[a];
      const auto& sb = sens_by_model[b];
      auto ia = sa.find(rule->id);
      auto ib = sb.find(rule->id);
      if (ia == sa.end() || ib == sb.end() || !ia->second || !ib->second) continue;
      pairs.emplace_back(ia->second->to_double(), ib->second->to_double());
      used.push_back(rule->id);
    }
    ojson c;
    c["a"] = a;
    c["b"] = b;
    c["paired_by"] = "rule sensitivity";
    c["rules"] = used;
    if (pairs.empty()) {
      c["result"] = nullptr;
    } else {
      const auto w = wilcoxon_signed_rank(pairs);
      c["result"] = {{"n", w.n},         {"w_plus", w.w_plus}, {"w_minus", w.w_minus}, {"statistic", w.statistic},
                     {"p_value", w.p_value}, {"exact", w.exact},   {"degenerate", w.degenerate}};
    }
    report["comparisons"].push_back(c);
  }

  write_file(config.out / "metrics.json", report.dump(2) + '\n');
  write_file(config.out / "accuracy.tsv", acc_tsv);
  write_file(config.out / "sensitivity.tsv", sens_tsv);
  write_file(config.out / "stratified.tsv", strat_tsv);
}

// ---- vocab and frequency ----------------------------------------------------

std::string cmd_vocab(const fs::path& a, const fs::path& b, const std::optional<fs::path>& out) {
  const auto ta = load_tokenizer(a);
  const auto tb = load_tokenizer(b);
  const auto c = compare_vocabularies(ta, tb);
  ojson j;
  j["a"] = {{"path", a.generic_string()}, {"name", ta.name}, {"size", c.size_a}};
  j["b"] = {{"path", b.generic_string()}, {"name", tb.name}, {"size", c.size_b}};
  j["shared"] = c.shared;
  j["union"] = c.union_size;
  j["shared_fraction"] = c.union_size ? static_cast<double>(c.shared) / static_cast<double>(c.union_size) : 1.0;
  j["distance"] = c.distance;
  const std::string text = j.dump(2) + '\n';
  if (out) {
    prepare_out(*out);
    write_file(*out / "vocab.json", text);
  }
  return text;
}

std::string cmd_freq(const RunConfig& config) {
  if (config.corpus.empty() || !fs::exists(config.corpus)) throw ConfigError("corpus not found: " + config.corpus.string());
  const auto catalog = config.load_catalog();
  const auto samples = load_corpus(config.corpus);
  std::vector<TokenIndex> indexes(samples.size());
  std::vector<std::string> failures(samples.size());
  parallel_for(samples.size(), config.workers, [&](std::size_t i) {
    try {
      indexes[i] = lex(samples[i].source, samples[i].language);
    } catch (const LexError& e) {
      failures[i] = e.what();
    }
  });
  std::vector<TokenIndex> lexed;
  ojson skipped = ojson::array();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (failures[i].empty()) {
      lexed.push_back(std::move(indexes[i]));
    } else {
      skipped.push_back({{"sample_id", samples[i].id}, {"message", failures[i]}});
    }
  }

  std::string text = "rule\tname\tlanguages\tlhs\trhs\tratio_percent\n";
  ojson j;
  j["corpus"] = config.corpus.generic_string();
  j["samples"] = samples.size();
  j["unlexable"] = skipped;
  j["rules"] = ojson::array();
  for (const auto* rule : catalog.select(config.rules)) {
    if (rule->kind != RuleKind::Spacing) continue;
    std::string langs;
    for (auto l : rule->languages) langs += std::string(langs.empty() ? "" : ",") + std::string(to_string(l));
    ojson r;
    r["rule_id"] = rule->id;
    r["name"] = rule->name;
    r["lhs_pattern"] = rule->former.describe() + rule->latter.describe();
    r["rhs_pattern"] = rule->former.describe() + " " + rule->latter.describe();
    if (!supports_frequency_ratio(*rule)) {
      r["supported"] = false;
      text += rule->id + '\t' + rule->name + '\t' + langs + "\tn/a\tn/a\tn/a\n";
    } else {
      const auto f = frequency_ratio(lexed, *rule);
      r["supported"] = true;
      r["lhs"] = f.lhs;
      r["rhs"] = f.rhs;
      r["ratio_percent"] = fraction(f.ratio_percent);
      text += rule->id + '\t' + rule->name + '\t' + langs + '\t' + std::to_string(f.lhs) + '\t' + std::to_string(f.rhs) +
              '\t' + tsv(f.ratio_percent) + '\n';
    }
    j["rules"].push_back(r);
  }
  if (!config.out.empty()) {
    prepare_out(config.out);
    write_file(config.out / "freq.tsv", text);
    write_file(config.out / "freq.json", j.dump(2) + '\n');
  }
  return text;
}

}  // namespace driftkit
