#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "driftkit/bpe.hpp"
#include "driftkit/rewrite.hpp"

namespace driftkit {

enum class FragmentLabel { Unchanged, Merged, Split, Mixed };

std::string_view to_string(FragmentLabel label);
std::optional<FragmentLabel> parse_fragment_label(std::string_view name);

/// Label from emptiness of the lost/gained boundary sets.
FragmentLabel label_for(bool lost_any, bool gained_any);

/// Working sets of the boundary classification.
struct BoundaryState {
  std::set<long long> old_starts;
  std::set<long long> new_starts;
  std::set<long long> edits;
  std::set<long long> edits_plus;
  long long offset = 0;
};

struct FragmentChange {
  FragmentLabel label = FragmentLabel::Unchanged;
  std::set<long long> lost;    // old boundaries missing after the rewrite
  std::set<long long> gained;  // new boundaries absent before it
};

/// Compares token boundaries before and after a rewrite. Old boundaries and
/// edit sites are shifted into new-text coordinates event by event; new
/// boundaries produced by the edit itself are then masked out (the character
/// after an inserted underscore, or an inserted space).
///
/// Throws ContractError when events are not strictly ascending by position,
/// when a delta is not +1/-1, or when an event's type differs from `type`.
FragmentChange classify_fragment_change(const Encoding& old_encoding, const Encoding& new_encoding,
                                        std::span<const EditEvent> events, EditType type);

/// Same computation, exposing the final working sets.
BoundaryState trace_boundaries(const Encoding& old_encoding, const Encoding& new_encoding,
                               std::span<const EditEvent> events, EditType type);

struct DriftRecord {
  std::string sample_id;
  std::string rule_id;
  std::string original;
  std::string rewritten;
  Encoding original_encoding;
  Encoding rewritten_encoding;
  std::vector<EditEvent> events;
  RenameMap renames;
  FragmentChange change;
  bool affected = false;
};

EditType edit_type_for(const RewriteRule& rule);

/// Encodes both texts of an already computed rewrite and classifies the
/// boundary change. `original_encoding` may be passed to skip re-encoding.
DriftRecord analyze_rewrite(std::string sample_id, std::string_view original, RewriteResult rewrite,
                            const RewriteRule& rule, const Tokenizer& tokenizer,
                            const Encoding* original_encoding = nullptr);

/// Rewrite, encode and classify one sample. Library errors are rethrown as
/// SampleError carrying `sample_id`.
DriftRecord analyze_sample(std::string sample_id, const TokenIndex& index, const RewriteRule& rule,
                           const Tokenizer& tokenizer, const ImmutableTypes& types);

}  // namespace driftkit
