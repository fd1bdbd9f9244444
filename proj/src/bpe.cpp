#include "driftkit/bpe.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <unordered_set>

#include "driftkit/errors.hpp"

namespace driftkit {

namespace {

std::string utf8(std::uint32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return out;
}

struct ByteTable {
  std::array<std::string, 256> symbol;
  std::array<int, 512> byte;  // code point -> byte, -1 when unused

  ByteTable() {
    auto printable = [](int b) { return (b >= '!' && b <= '~') || (b >= 0xA1 && b <= 0xAC) || (b >= 0xAE && b <= 0xFF); };
    byte.fill(-1);
    int extra = 0;
    for (int b = 0; b < 256; ++b) {
      const int cp = printable(b) ? b : 256 + extra++;
      symbol[b] = utf8(static_cast<std::uint32_t>(cp));
      byte[cp] = b;
    }
  }
};

const ByteTable& bytes() {
  static const ByteTable table;
  return table;
}

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

// Byte-level symbols are code points below 0x144, so one or two UTF-8 bytes.
bool byte_level_decode(std::string_view token, std::string& out) {
  const auto& table = bytes().byte;
  std::size_t i = 0;
  while (i < token.size()) {
    const auto lead = static_cast<unsigned char>(token[i]);
    int cp;
    if (lead < 0x80) {
      cp = lead;
      i += 1;
    } else if ((lead >> 5) == 0x6 && i + 1 < token.size()) {
      cp = ((lead & 0x1F) << 6) | (static_cast<unsigned char>(token[i + 1]) & 0x3F);
      i += 2;
    } else {
      return false;
    }
    if (cp >= static_cast<int>(table.size()) || table[cp] < 0) return false;
    out += static_cast<char>(table[cp]);
  }
  return true;
}

std::uint64_t pair_key(std::int64_t a, std::int64_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

std::string byte_symbol(unsigned char b) { return bytes().symbol[b]; }

std::vector<std::string> validate(const TokenizerSpec& spec) {
  std::vector<std::string> problems;
  std::unordered_map<std::int64_t, std::string> seen;
  for (const auto& [token, id] : spec.vocab) {
    if (id < 0 || id > std::numeric_limits<std::uint32_t>::max()) {
      problems.push_back("token '" + token + "' has out-of-range id " + std::to_string(id));
      continue;
    }
    auto [it, fresh] = seen.emplace(id, token);
    if (!fresh) problems.push_back("id " + std::to_string(id) + " is shared by '" + it->second + "' and '" + token + "'");
  }
  std::unordered_set<std::string> products;
  for (std::size_t k = 0; k < spec.merges.size(); ++k) {
    const auto& [left, right] = spec.merges[k];
    auto where = [&] { return "merge #" + std::to_string(k) + " ('" + left + "', '" + right + "')"; };
    if (!spec.vocab.contains(left)) problems.push_back(where() + ": left part not in vocab");
    if (!spec.vocab.contains(right)) problems.push_back(where() + ": right part not in vocab");
    auto product = left + right;
    if (!spec.vocab.contains(product)) problems.push_back(where() + ": product '" + product + "' not in vocab");
    products.insert(std::move(product));
  }
  for (const auto& special : spec.specials) {
    if (special.empty()) problems.push_back("empty special token");
    if (!spec.vocab.contains(special)) problems.push_back("special '" + special + "' not in vocab");
    if (products.contains(special)) problems.push_back("special '" + special + "' is also a merge product");
  }
  if (spec.byte_level) {
    for (int b = 0; b < 256; ++b) {
      if (!spec.vocab.contains(byte_symbol(static_cast<unsigned char>(b)))) {
        problems.push_back("byte-level vocab lacks the symbol for byte " + std::to_string(b));
      }
    }
    for (const auto& [token, id] : spec.vocab) {
      std::string raw;
      if (!spec.specials.contains(token) && !byte_level_decode(token, raw)) {
        problems.push_back("token '" + token + "' is not made of byte-level symbols");
      }
    }
  }
  if (spec.pretokenizer.digit_run < 0) problems.push_back("pre-tokenizer digit_run must be >= 0");
  return problems;
}

Tokenizer::Tokenizer(TokenizerSpec spec) : spec_(std::move(spec)) {
  if (auto problems = validate(spec_); !problems.empty()) throw ValidationError(std::move(problems));
  id_to_token_.reserve(spec_.vocab.size());
  for (const auto& [token, id] : spec_.vocab) id_to_token_.emplace(id, token);
  merge_ranks_.reserve(spec_.merges.size());
  for (std::size_t k = 0; k < spec_.merges.size(); ++k) {
    const auto& [left, right] = spec_.merges[k];
    merge_ranks_.emplace(pair_key(spec_.vocab.at(left), spec_.vocab.at(right)),
                         MergeTarget{static_cast<std::uint32_t>(k), spec_.vocab.at(left + right)});
  }
  specials_by_length_.assign(spec_.specials.begin(), spec_.specials.end());
  std::stable_sort(specials_by_length_.begin(), specials_by_length_.end(),
                   [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  for (const auto& s : specials_by_length_) special_lead_[static_cast<unsigned char>(s[0])] = true;
  if (spec_.byte_level) {
    byte_ids_.resize(256);
    for (int b = 0; b < 256; ++b) byte_ids_[b] = spec_.vocab.at(byte_symbol(static_cast<unsigned char>(b)));
  }
}

void Tokenizer::encode_piece(std::string_view text, std::size_t offset, Encoding& out) const {
  std::vector<std::int64_t> ids;
  std::vector<std::size_t> starts;
  std::string whole;
  if (spec_.byte_level) {
    for (std::size_t k = 0; k < text.size(); ++k) {
      const auto b = static_cast<unsigned char>(text[k]);
      ids.push_back(byte_ids_[b]);
      starts.push_back(offset + k);
      if (spec_.ignore_merges) whole += byte_symbol(b);
    }
  } else {
    std::size_t k = 0;
    while (k < text.size()) {
      const std::size_t len = std::min(utf8_length(static_cast<unsigned char>(text[k])), text.size() - k);
      auto it = spec_.vocab.find(std::string(text.substr(k, len)));
      if (it == spec_.vocab.end()) {
        throw EncodingError("character at offset " + std::to_string(offset + k) + " is not in the vocabulary");
      }
      ids.push_back(it->second);
      starts.push_back(offset + k);
      k += len;
    }
    if (spec_.ignore_merges) whole = std::string(text);
  }

  if (spec_.ignore_merges && ids.size() > 1) {
    if (auto it = spec_.vocab.find(whole); it != spec_.vocab.end()) {
      ids.assign(1, it->second);
      starts.assign(1, offset);
    }
  }

  // Apply the best-ranked merge everywhere it occurs (leftmost first), repeat.
  std::vector<std::int64_t> next_ids;
  std::vector<std::size_t> next_starts;
  while (ids.size() > 1) {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t k = 0; k + 1 < ids.size(); ++k) {
      auto it = merge_ranks_.find(pair_key(ids[k], ids[k + 1]));
      if (it != merge_ranks_.end() && it->second.rank < best) best = it->second.rank;
    }
    if (best == std::numeric_limits<std::uint32_t>::max()) break;
    next_ids.clear();
    next_starts.clear();
    for (std::size_t k = 0; k < ids.size();) {
      if (k + 1 < ids.size()) {
        auto it = merge_ranks_.find(pair_key(ids[k], ids[k + 1]));
        if (it != merge_ranks_.end() && it->second.rank == best) {
          next_ids.push_back(it->second.product);
          next_starts.push_back(starts[k]);
          k += 2;
          continue;
        }
      }
      next_ids.push_back(ids[k]);
      next_starts.push_back(starts[k]);
      ++k;
    }
    ids.swap(next_ids);
    starts.swap(next_starts);
  }

  for (std::size_t k = 0; k < ids.size(); ++k) {
    out.tokens.push_back(id_to_token_.at(ids[k]));
    out.ids.push_back(ids[k]);
    out.starts.push_back(starts[k]);
  }
}

Encoding Tokenizer::encode(std::string_view text) const {
  Encoding out;
  auto encode_segment = [&](std::size_t begin, std::size_t end) {
    if (begin == end) return;
    const auto segment = text.substr(begin, end - begin);
    if (!spec_.pretokenizer.enabled) {
      encode_piece(segment, begin, out);
      return;
    }
    for (const auto& [b, e] : pretokenize(segment, spec_.pretokenizer)) {
      encode_piece(segment.substr(b, e - b), begin + b, out);
    }
  };

  std::size_t segment_start = 0;
  std::size_t i = 0;
  while (i < text.size() && !specials_by_length_.empty()) {
    const std::string* hit = nullptr;
    if (!special_lead_[static_cast<unsigned char>(text[i])]) {
      ++i;
      continue;
    }
    for (const auto& s : specials_by_length_) {
      if (text.substr(i).starts_with(s)) {
        hit = &s;
        break;
      }
    }
    if (!hit) {
      ++i;
      continue;
    }
    encode_segment(segment_start, i);
    out.tokens.push_back(*hit);
    out.ids.push_back(spec_.vocab.at(*hit));
    out.starts.push_back(i);
    i += hit->size();
    segment_start = i;
  }
  encode_segment(segment_start, text.size());
  return out;
}

std::string Tokenizer::token_bytes(std::string_view token) const {
  if (!spec_.byte_level || spec_.specials.contains(std::string(token))) return std::string(token);
  std::string raw;
  if (!byte_level_decode(token, raw)) throw EncodingError("token '" + std::string(token) + "' is not byte-level");
  return raw;
}

std::string Tokenizer::decode(const std::vector<std::string>& tokens) const {
  std::string out;
  for (const auto& t : tokens) out += token_bytes(t);
  return out;
}

std::string Tokenizer::decode_ids(const std::vector<std::int64_t>& ids) const {
  std::string out;
  for (auto id : ids) {
    auto it = id_to_token_.find(id);
    if (it == id_to_token_.end()) throw EncodingError("unknown token id " + std::to_string(id));
    out += token_bytes(it->second);
  }
  return out;
}

VocabComparison compare_vocabularies(const TokenizerSpec& a, const TokenizerSpec& b) {
  VocabComparison c;
  c.size_a = a.vocab.size();
  c.size_b = b.vocab.size();
  for (const auto& [token, id] : a.vocab) {
    if (b.vocab.contains(token)) ++c.shared;
  }
  c.union_size = c.size_a + c.size_b - c.shared;
  c.distance = c.union_size == 0 ? 0.0 : 1.0 - static_cast<double>(c.shared) / static_cast<double>(c.union_size);
  return c;
}

double vocab_distance(const TokenizerSpec& a, const TokenizerSpec& b) { return compare_vocabularies(a, b).distance; }

}  // namespace driftkit
