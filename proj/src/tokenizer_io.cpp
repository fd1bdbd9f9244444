#include <fstream>
#include <sstream>

#include <json.hpp>

#include "driftkit/bpe.hpp"
#include "driftkit/errors.hpp"

namespace driftkit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kFormat = "driftkit-bpe/1";

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(what + ": " + e.what());
  }
}

// Splits a regex on top-level '|' (outside groups and classes).
std::vector<std::string> alternatives(std::string_view re) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  bool in_class = false;
  for (std::size_t i = 0; i < re.size(); ++i) {
    const char c = re[i];
    if (c == '\\' && i + 1 < re.size()) {
      cur += c;
      cur += re[++i];
      continue;
    }
    if (in_class) {
      if (c == ']') in_class = false;
    } else if (c == '[') {
      in_class = true;
    } else if (c == '(') {
      ++depth;
    } else if (c == ')') {
      --depth;
    } else if (c == '|' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  out.push_back(cur);
  return out;
}

// Recognizes the split patterns used by the GPT-2, Llama-3 and Qwen2
// tokenizer families and their composable variants.
PretokenizerConfig config_from_pattern(std::string_view pattern) {
  auto alts = alternatives(pattern);
  PretokenizerConfig c;
  c.clitics = CliticMode::None;
  std::size_t k = 0;
  auto fail = [&](const std::string& why) -> PretokenizerConfig {
    throw FormatError("unsupported pre-tokenizer pattern (" + why + "): " + std::string(pattern));
  };
  auto at = [&](std::string_view s) { return k < alts.size() && alts[k] == s; };

  if (at("(?i:'s|'t|'re|'ve|'m|'ll|'d)")) {
    c.clitics = CliticMode::CaseInsensitive;
    ++k;
  } else if (alts.size() >= 7 && alts[0] == "'s" && alts[1] == "'t" && alts[2] == "'re" && alts[3] == "'ve" &&
             alts[4] == "'m" && alts[5] == "'ll" && alts[6] == "'d") {
    c.clitics = CliticMode::CaseSensitive;
    k = 7;
  }

  if (at(R"([^\r\n\p{L}\p{N}]?\p{L}+)")) {
    c.word_prefix = WordPrefix::AnyNonAlnum;
  } else if (at(R"( ?\p{L}+)")) {
    c.word_prefix = WordPrefix::Space;
  } else if (at(R"(\p{L}+)")) {
    c.word_prefix = WordPrefix::None;
  } else {
    return fail("letter run");
  }
  ++k;

  if (k >= alts.size()) return fail("digit run");
  std::string_view d = alts[k];
  c.digit_prefix_space = d.starts_with(" ?");
  if (c.digit_prefix_space) d.remove_prefix(2);
  if (d == R"(\p{N}+)") {
    c.digit_run = 0;
  } else if (d == R"(\p{N})") {
    c.digit_run = 1;
  } else if (d.starts_with(R"(\p{N}{1,)") && d.ends_with("}") && d.size() == 10) {
    c.digit_run = d[8] - '0';
    if (c.digit_run < 1 || c.digit_run > 9) return fail("digit run");
  } else {
    return fail("digit run");
  }
  ++k;

  if (at(R"( ?[^\s\p{L}\p{N}]+[\r\n]*)")) {
    c.punct_prefix_space = true;
    c.punct_trailing_newlines = true;
  } else if (at(R"( ?[^\s\p{L}\p{N}]+)")) {
    c.punct_prefix_space = true;
  } else if (at(R"([^\s\p{L}\p{N}]+)")) {
    c.punct_prefix_space = false;
  } else {
    return fail("punctuation run");
  }
  ++k;

  if (at(R"(\s*[\r\n]+)")) {
    c.newline_blocks = true;
    ++k;
  }
  if (!at(R"(\s+(?!\S))")) return fail("trailing whitespace");
  ++k;
  if (!at(R"(\s+)")) return fail("whitespace run");
  ++k;
  if (k != alts.size()) return fail("extra alternatives");
  return c;
}

std::string_view clitic_name(CliticMode m) {
  switch (m) {
    case CliticMode::None: return "none";
    case CliticMode::CaseSensitive: return "case_sensitive";
    case CliticMode::CaseInsensitive: return "case_insensitive";
  }
  return "none";
}

std::string_view prefix_name(WordPrefix p) {
  switch (p) {
    case WordPrefix::None: return "none";
    case WordPrefix::Space: return "space";
    case WordPrefix::AnyNonAlnum: return "any_non_alnum";
  }
  return "none";
}

template <typename T>
T get_field(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(where + ": bad field '" + key + "': " + e.what());
  }
}

PretokenizerConfig pretokenizer_from_json(const json& j) {
  if (j.is_string()) return PretokenizerConfig::preset(j.get<std::string>());
  if (!j.is_object()) throw FormatError("pretokenizer must be a preset name or an object");
  PretokenizerConfig c;
  if (j.contains("preset")) c = PretokenizerConfig::preset(get_field<std::string>(j, "preset", "pretokenizer"));
  if (j.contains("pattern")) c = config_from_pattern(get_field<std::string>(j, "pattern", "pretokenizer"));
  for (const auto& [key, value] : j.items()) {
    const std::string where = "pretokenizer";
    if (key == "preset" || key == "pattern") continue;
    if (key == "enabled") {
      c.enabled = get_field<bool>(j, "enabled", where);
    } else if (key == "clitics") {
      const auto v = get_field<std::string>(j, "clitics", where);
      if (v == "none") c.clitics = CliticMode::None;
      else if (v == "case_sensitive") c.clitics = CliticMode::CaseSensitive;
      else if (v == "case_insensitive") c.clitics = CliticMode::CaseInsensitive;
      else throw FormatError("pretokenizer.clitics: unknown value '" + v + "'");
    } else if (key == "word_prefix") {
      const auto v = get_field<std::string>(j, "word_prefix", where);
      if (v == "none") c.word_prefix = WordPrefix::None;
      else if (v == "space") c.word_prefix = WordPrefix::Space;
      else if (v == "any_non_alnum") c.word_prefix = WordPrefix::AnyNonAlnum;
      else throw FormatError("pretokenizer.word_prefix: unknown value '" + v + "'");
    } else if (key == "digit_run") {
      c.digit_run = get_field<int>(j, "digit_run", where);
    } else if (key == "digit_prefix_space") {
      c.digit_prefix_space = get_field<bool>(j, "digit_prefix_space", where);
    } else if (key == "punct_prefix_space") {
      c.punct_prefix_space = get_field<bool>(j, "punct_prefix_space", where);
    } else if (key == "punct_trailing_newlines") {
      c.punct_trailing_newlines = get_field<bool>(j, "punct_trailing_newlines", where);
    } else if (key == "newline_blocks") {
      c.newline_blocks = get_field<bool>(j, "newline_blocks", where);
    } else {
      throw FormatError("pretokenizer: unknown field '" + key + "'");
    }
  }
  return c;
}

json pretokenizer_to_json(const PretokenizerConfig& c) {
  return json{{"enabled", c.enabled},
              {"clitics", clitic_name(c.clitics)},
              {"word_prefix", prefix_name(c.word_prefix)},
              {"digit_run", c.digit_run},
              {"digit_prefix_space", c.digit_prefix_space},
              {"punct_prefix_space", c.punct_prefix_space},
              {"punct_trailing_newlines", c.punct_trailing_newlines},
              {"newline_blocks", c.newline_blocks}};
}

std::pair<std::string, std::string> merge_from_json(const json& m) {
  if (m.is_array() && m.size() == 2 && m[0].is_string() && m[1].is_string()) {
    return {m[0].get<std::string>(), m[1].get<std::string>()};
  }
  if (m.is_string()) {
    const auto s = m.get<std::string>();
    const auto sp = s.find(' ');
    if (sp == std::string::npos || sp == 0 || sp + 1 >= s.size() || s.find(' ', sp + 1) != std::string::npos) {
      throw FormatError("merge entry '" + s + "' is not 'left right'");
    }
    return {s.substr(0, sp), s.substr(sp + 1)};
  }
  throw FormatError("merge entry must be [left, right] or \"left right\"");
}

void read_vocab(const json& v, TokenizerSpec& spec) {
  if (!v.is_object()) throw FormatError("vocab must be an object of token -> id");
  for (const auto& [token, id] : v.items()) {
    if (!id.is_number_integer()) throw FormatError("vocab id of '" + token + "' is not an integer");
    spec.vocab.emplace(token, id.get<std::int64_t>());
  }
}

void read_merges(const json& m, TokenizerSpec& spec) {
  if (!m.is_array()) throw FormatError("merges must be a list");
  spec.merges.reserve(m.size());
  for (const auto& entry : m) spec.merges.push_back(merge_from_json(entry));
}

TokenizerSpec from_native(const json& j) {
  static const std::set<std::string> known = {"format", "name", "byte_level", "ignore_merges", "pretokenizer",
                                              "specials", "vocab", "merges"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw FormatError("unknown tokenizer field '" + key + "'");
  }
  TokenizerSpec spec;
  spec.name = j.value("name", "");
  spec.byte_level = j.contains("byte_level") ? get_field<bool>(j, "byte_level", "tokenizer") : false;
  spec.ignore_merges = j.contains("ignore_merges") ? get_field<bool>(j, "ignore_merges", "tokenizer") : false;
  if (j.contains("pretokenizer")) spec.pretokenizer = pretokenizer_from_json(j.at("pretokenizer"));
  if (!j.contains("vocab") || !j.contains("merges")) throw FormatError("tokenizer needs 'vocab' and 'merges'");
  read_vocab(j.at("vocab"), spec);
  read_merges(j.at("merges"), spec);
  if (j.contains("specials")) {
    for (const auto& s : j.at("specials")) {
      if (!s.is_string()) throw FormatError("specials must be strings");
      spec.specials.insert(s.get<std::string>());
    }
  }
  return spec;
}

// Maps a Hugging Face pre_tokenizer node; returns whether it is byte-level.
bool apply_hf_pretokenizer(const json& node, TokenizerSpec& spec, bool& have_split) {
  if (node.is_null()) return false;
  const auto type = node.value("type", "");
  if (type == "Sequence") {
    bool byte_level = false;
    for (const auto& child : node.at("pretokenizers")) byte_level |= apply_hf_pretokenizer(child, spec, have_split);
    return byte_level;
  }
  if (type == "Split") {
    if (have_split) throw FormatError("more than one Split pre-tokenizer");
    const auto& pattern = node.at("pattern");
    if (!pattern.contains("Regex")) throw FormatError("Split pre-tokenizer needs a Regex pattern");
    if (node.value("behavior", "Isolated") != "Isolated" || node.value("invert", false)) {
      throw FormatError("only isolated, non-inverted Split pre-tokenizers are supported");
    }
    spec.pretokenizer = config_from_pattern(pattern.at("Regex").get<std::string>());
    have_split = true;
    return false;
  }
  if (type == "ByteLevel") {
    if (node.value("add_prefix_space", false)) throw FormatError("ByteLevel add_prefix_space is not supported");
    if (node.value("use_regex", true)) {
      if (have_split) throw FormatError("ByteLevel regex after a Split pre-tokenizer");
      spec.pretokenizer = PretokenizerConfig::gpt2();
      have_split = true;
    }
    return true;
  }
  throw FormatError("unsupported pre-tokenizer type '" + type + "'");
}

TokenizerSpec from_hugging_face(const json& j) {
  TokenizerSpec spec;
  const auto& model = j.at("model");
  if (model.value("type", "BPE") != "BPE") throw FormatError("only BPE models are supported");
  if (model.value("byte_fallback", false)) throw FormatError("byte_fallback models are not supported");
  for (const char* key : {"continuing_subword_prefix", "end_of_word_suffix"}) {
    if (model.contains(key) && !model.at(key).is_null() && model.at(key) != "") {
      throw FormatError(std::string("BPE option '") + key + "' is not supported");
    }
  }
  if (j.contains("normalizer") && !j.at("normalizer").is_null()) {
    const auto type = j.at("normalizer").value("type", "");
    if (type != "NFC") throw FormatError("unsupported normalizer '" + type + "'");
  }
  read_vocab(model.at("vocab"), spec);
  read_merges(model.at("merges"), spec);
  spec.ignore_merges = model.value("ignore_merges", false);

  bool have_split = false;
  spec.pretokenizer.enabled = false;
  bool byte_level = j.contains("pre_tokenizer") && apply_hf_pretokenizer(j.at("pre_tokenizer"), spec, have_split);
  if (j.contains("decoder") && !j.at("decoder").is_null() && j.at("decoder").value("type", "") == "ByteLevel") {
    byte_level = true;
  }
  spec.byte_level = byte_level;
  if (j.contains("added_tokens")) {
    for (const auto& t : j.at("added_tokens")) {
      const auto content = t.at("content").get<std::string>();
      spec.vocab.emplace(content, t.at("id").get<std::int64_t>());
      spec.specials.insert(content);
    }
  }
  return spec;
}

TokenizerSpec checked(TokenizerSpec spec) {
  if (auto problems = validate(spec); !problems.empty()) throw ValidationError(std::move(problems));
  return spec;
}

}  // namespace

TokenizerSpec parse_tokenizer_json(std::string_view text) {
  const json j = parse_json(text, "tokenizer file");
  if (!j.is_object()) throw FormatError("tokenizer file is not a JSON object");
  try {
    if (j.contains("format")) {
      if (j.at("format") != kFormat) throw FormatError("unknown tokenizer format " + j.at("format").dump());
      return checked(from_native(j));
    }
    if (j.contains("model")) return checked(from_hugging_face(j));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed tokenizer file: ") + e.what());
  }
  throw FormatError("tokenizer file has neither 'format' nor 'model'");
}

TokenizerSpec import_vocab_merges(const fs::path& vocab_json, const fs::path& merges_txt,
                                  const PretokenizerConfig& pretokenizer) {
  TokenizerSpec spec;
  spec.name = vocab_json.parent_path().filename().string();
  spec.byte_level = true;
  spec.pretokenizer = pretokenizer;
  read_vocab(parse_json(read_file(vocab_json), vocab_json.string()), spec);
  std::istringstream in(read_file(merges_txt));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (lineno == 1 && line.starts_with("#version"))) continue;
    try {
      spec.merges.push_back(merge_from_json(json(line)));
    } catch (const FormatError& e) {
      throw FormatError(merges_txt.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return checked(std::move(spec));
}

TokenizerSpec load_tokenizer(const fs::path& path) {
  const std::string s = path.string();
  if (!fs::exists(path)) {
    if (auto comma = s.find(','); comma != std::string::npos) {
      return import_vocab_merges(s.substr(0, comma), s.substr(comma + 1));
    }
    throw IoError("tokenizer path does not exist: " + s);
  }
  if (fs::is_directory(path)) {
    if (fs::exists(path / "tokenizer.json")) return load_tokenizer(path / "tokenizer.json");
    if (!fs::exists(path / "vocab.json") || !fs::exists(path / "merges.txt")) {
      throw IoError("directory " + s + " holds neither tokenizer.json nor vocab.json + merges.txt");
    }
    PretokenizerConfig pre = PretokenizerConfig::gpt2();
    json sidecar = json::object();
    if (fs::exists(path / "pretokenizer.json")) {
      sidecar = parse_json(read_file(path / "pretokenizer.json"), "pretokenizer.json");
      for (const auto& [key, value] : sidecar.items()) {
        if (key != "pretokenizer" && key != "ignore_merges" && key != "name" && key != "specials") {
          throw FormatError("pretokenizer.json: unknown field '" + key + "'");
        }
      }
      try {
        if (sidecar.contains("pretokenizer")) pre = pretokenizer_from_json(sidecar.at("pretokenizer"));
      } catch (const json::exception& e) {
        throw FormatError(std::string("pretokenizer.json: ") + e.what());
      }
    }
    TokenizerSpec spec = import_vocab_merges(path / "vocab.json", path / "merges.txt", pre);
    try {
      spec.ignore_merges = sidecar.value("ignore_merges", false);
      spec.name = sidecar.value("name", spec.name);
      if (sidecar.contains("specials")) {
        for (const auto& t : sidecar.at("specials")) spec.specials.insert(t.get<std::string>());
      }
    } catch (const json::exception& e) {
      throw FormatError(std::string("pretokenizer.json: ") + e.what());
    }
    return checked(std::move(spec));
  }
  TokenizerSpec spec = parse_tokenizer_json(read_file(path));
  if (spec.name.empty()) spec.name = path.stem().string();
  return spec;
}

std::string tokenizer_to_json(const TokenizerSpec& spec) {
  json j;
  j["format"] = kFormat;
  j["name"] = spec.name;
  j["byte_level"] = spec.byte_level;
  j["ignore_merges"] = spec.ignore_merges;
  j["pretokenizer"] = pretokenizer_to_json(spec.pretokenizer);
  j["specials"] = spec.specials;
  j["vocab"] = spec.vocab;
  json merges = json::array();
  for (const auto& [a, b] : spec.merges) merges.push_back({a, b});
  j["merges"] = std::move(merges);
  try {
    return j.dump(1);
  } catch (const json::type_error& e) {
    throw FormatError(std::string("tokenizer cannot be serialized: ") + e.what());
  }
}

void save_tokenizer(const TokenizerSpec& spec, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << tokenizer_to_json(spec) << '\n';
}

}  // namespace driftkit
