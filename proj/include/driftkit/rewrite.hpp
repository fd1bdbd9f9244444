#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "driftkit/identifiers.hpp"
#include "driftkit/lexer.hpp"
#include "driftkit/rules.hpp"

namespace driftkit {

enum class EditType { Underscore, Whitespace };

std::string_view to_string(EditType type);

/// One inserted (+1) or removed (-1) character, positioned in the original text.
struct EditEvent {
  std::size_t pos = 0;
  int delta = 0;
  EditType type = EditType::Whitespace;

  friend bool operator==(const EditEvent&, const EditEvent&) = default;
};

using RenameMap = std::map<std::string, std::string>;

struct RewriteResult {
  std::string rewritten;
  std::vector<EditEvent> events;
  RenameMap renames;
};

/// Renames every eligible identifier of `index` from the rule's source style to
/// its target style. An identifier is eligible when it matches the source
/// style and is either declared in the sample or not immutable. Conversions
/// that would collide with another identifier or a keyword are skipped so the
/// rename map stays injective.
RewriteResult apply_naming_rewrite(const TokenIndex& index, const IdentifierContext& context,
                                   const RewriteRule& rule);

/// Inserts one space between every strictly adjacent token pair matching the
/// rule's bigram.
RewriteResult apply_spacing_rewrite(const TokenIndex& index, const RewriteRule& rule);

/// Dispatches on rule kind; classifies identifiers with `types` for naming rules.
RewriteResult apply_rule(const TokenIndex& index, const RewriteRule& rule, const ImmutableTypes& types);

/// Applies a rename map to auxiliary texts (tests, entry points) token by token.
std::vector<std::string> propagate_renames(std::span<const std::string> patches, const RenameMap& renames,
                                           Language language);

/// Replays the character insertions/deletions of `events` on `original`.
/// Inserted characters are '_' or ' ' according to the event type. Naming
/// rewrites also change letter case, which events do not record.
std::string replay_events(std::string_view original, std::span<const EditEvent> events);

}  // namespace driftkit
