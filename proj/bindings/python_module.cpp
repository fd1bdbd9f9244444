#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "driftkit/bpe.hpp"
#include "driftkit/casing.hpp"
#include "driftkit/drift.hpp"
#include "driftkit/errors.hpp"
#include "driftkit/harness.hpp"
#include "driftkit/lexer.hpp"
#include "driftkit/metrics.hpp"
#include "driftkit/rewrite.hpp"
#include "driftkit/rules.hpp"

namespace py = pybind11;
using namespace driftkit;

namespace {

Language language_arg(const std::string& name) {
  auto lang = parse_language(name);
  if (!lang) throw ConfigError("unknown language '" + name + "'");
  return *lang;
}

CaseStyle style_arg(const std::string& name) {
  auto style = parse_case_style(name);
  if (!style) throw StyleError("unknown case style '" + name + "'");
  return *style;
}

py::tuple fraction(const Rational& r) { return py::make_tuple(r.num(), r.den()); }

py::object optional_fraction(const std::optional<Rational>& r) {
  if (!r) return py::none();
  return fraction(*r);
}

std::vector<std::pair<std::size_t, int>> event_pairs(const std::vector<EditEvent>& events) {
  std::vector<std::pair<std::size_t, int>> out;
  for (const auto& e : events) out.emplace_back(e.pos, e.delta);
  return out;
}

std::vector<EditEvent> events_from(const std::vector<std::pair<std::size_t, int>>& pairs, EditType type) {
  std::vector<EditEvent> out;
  for (const auto& [pos, delta] : pairs) out.push_back({pos, delta, type});
  return out;
}

EditType edit_type_arg(const std::string& name) {
  if (name == "underscore") return EditType::Underscore;
  if (name == "whitespace") return EditType::Whitespace;
  throw ConfigError("edit type must be 'underscore' or 'whitespace'");
}

Encoding encoding_from_starts(const std::vector<std::size_t>& starts) {
  Encoding e;
  e.starts = starts;
  e.tokens.resize(starts.size());
  e.ids.resize(starts.size());
  return e;
}

}  // namespace

PYBIND11_MODULE(_driftkit, m) {
  m.doc() = "Code rewrites, BPE tokenization and boundary drift analysis";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<LexError>(m, "LexError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<StyleError>(m, "StyleError", base.ptr());
  py::register_exception<ContractError>(m, "ContractError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<EncodingError>(m, "EncodingError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  auto id_list = py::register_exception<IdListError>(m, "IdListError", base.ptr());
  py::register_exception<MissingLabel>(m, "MissingLabel", id_list.ptr());
  py::register_exception<PartitionGap>(m, "PartitionGap", id_list.ptr());
  py::register_exception<EmptySubset>(m, "EmptySubset", base.ptr());

  // lexer
  py::class_<CodeToken>(m, "CodeToken")
      .def_readonly("lexeme", &CodeToken::lexeme)
      .def_property_readonly("kind", [](const CodeToken& t) { return std::string(to_string(t.kind)); })
      .def_property_readonly("span", [](const CodeToken& t) { return py::make_tuple(t.span.begin, t.span.end); })
      .def("__repr__", [](const CodeToken& t) {
        return "CodeToken(" + std::string(to_string(t.kind)) + ", '" + t.lexeme + "')";
      });

  py::class_<TokenIndex>(m, "TokenIndex")
      .def_readonly("tokens", &TokenIndex::tokens)
      .def_readonly("source", &TokenIndex::source)
      .def_property_readonly("language", [](const TokenIndex& i) { return std::string(to_string(i.language)); })
      .def("__len__", [](const TokenIndex& i) { return i.tokens.size(); });

  m.def("lex", [](const std::string& source, const std::string& language) {
    return lex(source, language_arg(language));
  }, py::arg("source"), py::arg("language"));

  // casing
  m.def("match_case_style", [](const std::string& id, const std::string& style) {
    return match_case_style(id, style_arg(style));
  });
  m.def("convert_case", [](const std::string& id, const std::string& source, const std::string& target) {
    return convert_case(id, style_arg(source), style_arg(target));
  });

  // rules and rewrites
  py::class_<RewriteRule>(m, "RewriteRule")
      .def_readonly("id", &RewriteRule::id)
      .def_readonly("name", &RewriteRule::name)
      .def_property_readonly("kind", [](const RewriteRule& r) {
        return std::string(r.kind == RuleKind::Naming ? "naming" : "spacing");
      })
      .def_property_readonly("languages", [](const RewriteRule& r) {
        std::vector<std::string> out;
        for (auto l : r.languages) out.emplace_back(to_string(l));
        return out;
      });

  py::class_<RuleCatalog>(m, "RuleCatalog")
      .def_static("builtin", &RuleCatalog::builtin, py::return_value_policy::reference)
      .def_static("parse", &RuleCatalog::parse)
      .def_static("load", &RuleCatalog::load)
      .def_property_readonly("rules", &RuleCatalog::rules)
      .def("at", &RuleCatalog::at, py::return_value_policy::reference_internal)
      .def("select", [](const RuleCatalog& c, const std::string& selection) {
        std::vector<std::string> ids;
        for (const auto* r : c.select(selection)) ids.push_back(r->id);
        return ids;
      });

  py::class_<RewriteResult>(m, "RewriteResult")
      .def_readonly("rewritten", &RewriteResult::rewritten)
      .def_readonly("renames", &RewriteResult::renames)
      .def_property_readonly("events", [](const RewriteResult& r) { return event_pairs(r.events); });

  m.def("rewrite", [](const std::string& source, const std::string& language, const std::string& rule_id) {
    const auto& rule = RuleCatalog::builtin().at(rule_id);
    return apply_rule(lex(source, language_arg(language)), rule, ImmutableTypes::defaults());
  }, py::arg("source"), py::arg("language"), py::arg("rule_id"));

  // tokenizer
  py::class_<Encoding>(m, "Encoding")
      .def_readonly("tokens", &Encoding::tokens)
      .def_readonly("ids", &Encoding::ids)
      .def_readonly("starts", &Encoding::starts)
      .def("__len__", &Encoding::size);

  py::class_<Tokenizer>(m, "Tokenizer")
      .def_static("load", [](const std::filesystem::path& path) { return Tokenizer(load_tokenizer(path)); })
      .def_static("from_json", [](const std::string& text) { return Tokenizer(parse_tokenizer_json(text)); })
      .def_property_readonly("name", [](const Tokenizer& t) { return t.spec().name; })
      .def_property_readonly("vocab_size", [](const Tokenizer& t) { return t.spec().vocab.size(); })
      .def("encode", &Tokenizer::encode, py::arg("text"))
      .def("decode", &Tokenizer::decode)
      .def("decode_ids", &Tokenizer::decode_ids)
      .def("token_bytes", [](const Tokenizer& t, const std::string& token) { return py::bytes(t.token_bytes(token)); });

  m.def("vocab_distance", [](const std::filesystem::path& a, const std::filesystem::path& b) {
    return vocab_distance(load_tokenizer(a), load_tokenizer(b));
  });

  // drift
  m.def("classify", [](const std::vector<std::size_t>& old_starts, const std::vector<std::size_t>& new_starts,
                       const std::vector<std::pair<std::size_t, int>>& events, const std::string& type) {
    const auto t = edit_type_arg(type);
    const auto ev = events_from(events, t);
    auto change = classify_fragment_change(encoding_from_starts(old_starts), encoding_from_starts(new_starts), ev, t);
    return py::make_tuple(std::string(to_string(change.label)), change.lost, change.gained);
  }, py::arg("old_starts"), py::arg("new_starts"), py::arg("events"), py::arg("edit_type"));

  m.def("analyze", [](const std::string& source, const std::string& language, const std::string& rule_id,
                      const Tokenizer& tokenizer) {
    const auto& rule = RuleCatalog::builtin().at(rule_id);
    auto record = analyze_sample("sample", lex(source, language_arg(language)), rule, tokenizer,
                                 ImmutableTypes::defaults());
    py::dict out;
    out["rewritten"] = record.rewritten;
    out["affected"] = record.affected;
    out["label"] = std::string(to_string(record.change.label));
    out["lost"] = record.change.lost;
    out["gained"] = record.change.gained;
    out["events"] = event_pairs(record.events);
    out["original_tokens"] = record.original_encoding.tokens;
    out["rewritten_tokens"] = record.rewritten_encoding.tokens;
    return out;
  });

  // metrics
  m.def("sensitivity", [](const std::vector<int>& baseline, const std::vector<int>& variant) {
    return optional_fraction(sensitivity(baseline, variant));
  });
  m.def("wilcoxon", [](const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw ContractError("paired samples differ in length");
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t k = 0; k < a.size(); ++k) pairs.emplace_back(a[k], b[k]);
    auto r = wilcoxon_signed_rank(pairs);
    py::dict out;
    out["n"] = r.n;
    out["w_plus"] = r.w_plus;
    out["w_minus"] = r.w_minus;
    out["statistic"] = r.statistic;
    out["p_value"] = r.p_value;
    out["exact"] = r.exact;
    out["degenerate"] = r.degenerate;
    return out;
  });

  // pipeline
  m.def("run_rewrite", [](const std::filesystem::path& corpus, const std::filesystem::path& out,
                          const std::string& rules, unsigned workers) {
    RunConfig c;
    c.corpus = corpus;
    c.out = out;
    c.rules = rules;
    c.workers = workers;
    auto s = cmd_rewrite(c);
    return py::make_tuple(s.records, s.affected, s.errors);
  }, py::arg("corpus"), py::arg("out"), py::arg("rules") = "all", py::arg("workers") = 1);

  m.def("run_analyze", [](const std::filesystem::path& corpus, const std::filesystem::path& tokenizer,
                          const std::filesystem::path& out, const std::string& rules, unsigned workers) {
    RunConfig c;
    c.corpus = corpus;
    c.tokenizer = tokenizer;
    c.out = out;
    c.rules = rules;
    c.workers = workers;
    auto s = cmd_analyze(c);
    return py::make_tuple(s.records, s.affected, s.errors);
  }, py::arg("corpus"), py::arg("tokenizer"), py::arg("out"), py::arg("rules") = "all", py::arg("workers") = 1);
}
