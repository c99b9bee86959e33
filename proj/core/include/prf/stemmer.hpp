#pragma once

#include <string>
#include <string_view>

namespace prf {

/// Classic Porter stemmer for English (the algorithm as distributed with the
/// snowball project). Expects a folded lowercase word; pass-through for
/// anything containing characters outside [a-z0-9].
std::string porter_en_stem(std::string_view word);

/// Snowball Spanish stemmer. Expects folded lowercase UTF-8. Acute accents
/// are removed from stemmed endings per the algorithm's final step.
std::string porter_es_stem(std::string_view word);

} // namespace prf
