#include "driftkit/drift.hpp"

#include <algorithm>
#include <iterator>

#include "driftkit/errors.hpp"

namespace driftkit {

std::string_view to_string(FragmentLabel label) {
  switch (label) {
    case FragmentLabel::Unchanged: return "unchanged";
    case FragmentLabel::Merged: return "merged";
    case FragmentLabel::Split: return "split";
    case FragmentLabel::Mixed: return "mixed";
  }
  return "?";
}

std::optional<FragmentLabel> parse_fragment_label(std::string_view name) {
  if (name == "unchanged") return FragmentLabel::Unchanged;
  if (name == "merged") return FragmentLabel::Merged;
  if (name == "split") return FragmentLabel::Split;
  if (name == "mixed") return FragmentLabel::Mixed;
  return std::nullopt;
}

FragmentLabel label_for(bool lost_any, bool gained_any) {
  if (lost_any && gained_any) return FragmentLabel::Mixed;
  if (lost_any) return FragmentLabel::Merged;
  if (gained_any) return FragmentLabel::Split;
  return FragmentLabel::Unchanged;
}

namespace {

std::set<long long> shifted(const std::set<long long>& s, long long after, int delta) {
  std::set<long long> out;
  for (auto p : s) out.insert(p > after ? p + delta : p);
  return out;
}

std::set<long long> difference(const std::set<long long>& a, const std::set<long long>& b) {
  std::set<long long> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

}  // namespace

BoundaryState trace_boundaries(const Encoding& old_encoding, const Encoding& new_encoding,
                               std::span<const EditEvent> events, EditType type) {
  for (std::size_t k = 0; k < events.size(); ++k) {
    const auto& e = events[k];
    if (e.delta != 1 && e.delta != -1) throw ContractError("edit delta must be +1 or -1");
    if (e.type != type) throw ContractError("edit event type does not match the classification type");
    if (k > 0 && events[k - 1].pos >= e.pos) {
      throw ContractError("edit events must be strictly ascending by position");
    }
  }
  BoundaryState s;
  s.old_starts.insert(old_encoding.starts.begin(), old_encoding.starts.end());
  s.new_starts.insert(new_encoding.starts.begin(), new_encoding.starts.end());
  for (const auto& e : events) s.edits.insert(static_cast<long long>(e.pos));

  for (const auto& e : events) {
    const long long a = static_cast<long long>(e.pos) + s.offset;
    s.old_starts = shifted(s.old_starts, a, e.delta);
    s.edits = shifted(s.edits, a, e.delta);
    s.edits_plus.insert(a + std::max(e.delta, 0));
    s.offset += e.delta;
  }

  const auto mask = type == EditType::Underscore ? difference(s.edits_plus, s.edits) : difference(s.edits, s.old_starts);
  s.new_starts = difference(s.new_starts, mask);
  return s;
}

FragmentChange classify_fragment_change(const Encoding& old_encoding, const Encoding& new_encoding,
                                        std::span<const EditEvent> events, EditType type) {
  const auto s = trace_boundaries(old_encoding, new_encoding, events, type);
  FragmentChange change;
  change.lost = difference(s.old_starts, s.new_starts);
  change.gained = difference(s.new_starts, s.old_starts);
  change.label = label_for(!change.lost.empty(), !change.gained.empty());
  return change;
}

EditType edit_type_for(const RewriteRule& rule) {
  return rule.kind == RuleKind::Naming ? EditType::Underscore : EditType::Whitespace;
}

DriftRecord analyze_rewrite(std::string sample_id, std::string_view original, RewriteResult rewrite,
                            const RewriteRule& rule, const Tokenizer& tokenizer, const Encoding* original_encoding) {
  DriftRecord r;
  r.sample_id = std::move(sample_id);
  r.rule_id = rule.id;
  r.original = std::string(original);
  r.rewritten = std::move(rewrite.rewritten);
  r.events = std::move(rewrite.events);
  r.renames = std::move(rewrite.renames);
  r.affected = r.rewritten != r.original;
  r.original_encoding = original_encoding ? *original_encoding : tokenizer.encode(r.original);
  r.rewritten_encoding = r.affected ? tokenizer.encode(r.rewritten) : r.original_encoding;
  if (r.affected) r.change = classify_fragment_change(r.original_encoding, r.rewritten_encoding, r.events, edit_type_for(rule));
  return r;
}

DriftRecord analyze_sample(std::string sample_id, const TokenIndex& index, const RewriteRule& rule,
                           const Tokenizer& tokenizer, const ImmutableTypes& types) {
  try {
    auto rewrite = apply_rule(index, rule, types);
    return analyze_rewrite(sample_id, index.source, std::move(rewrite), rule, tokenizer);
  } catch (const SampleError&) {
    throw;
  } catch (const Error& e) {
    throw SampleError(sample_id, e.what());
  }
}

}  // namespace driftkit
