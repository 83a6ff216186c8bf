#pragma once

#include <string>
#include <vector>

#include "trend/model.hpp"
#include "trend/text.hpp"

namespace trend::verbal {

/// Lowercase surface form of an identifier: camel-case and underscore runs
/// split, all-caps runs preserved, joined by the given separator.
/// "PreviousCustomer" → "previous-customer", "VIPCustomer" → "VIP-customer",
/// "ArrivalTime" with ' ' → "arrival time".
std::string name_to_surface(const std::string& identifier, char separator);

/// Class surface (hyphen-joined).
std::string class_surface(const std::string& identifier);
/// Attribute / relationship surface (space-joined).
std::string phrase_surface(const std::string& identifier);

/// "a" or "an" chosen by the first letter of the following word.
std::string article(const std::string& word);

/// Controlled-natural-language verbalization: one sentence per construct,
/// grouped as classes, isa, temporality, class transitions, relationships,
/// relationship transitions, attributes. Templates with no exemplar in the
/// source corpus (optional past transitions, quantitative optional
/// variants, mixed classes, disjointness, covers, cardinalities,
/// identifiers) are extrapolations of the corpus patterns.
/// Styles differ only where a template would embed a transition keyword;
/// the templates here are keyword-free, so both styles coincide.
std::vector<std::string> verbalize(const Schema& schema,
                                   KeywordStyle style = KeywordStyle::ChgExt);

/// Comparison normalization for golden tests: case-folded, whitespace
/// collapsed, trailing period dropped, articles unified.
std::string normalize_sentence(const std::string& sentence);

}  // namespace trend::verbal
