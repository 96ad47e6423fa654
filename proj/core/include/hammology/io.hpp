#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "hammology/filtration.hpp"
#include "hammology/matching.hpp"
#include "hammology/separation.hpp"

namespace hammology {

using Json = nlohmann::json;

// Canonical interchange: JSON documents with rationals as "p/q" strings
// ("inf" is the only non-rational token). Discrete letters render as digit
// strings for n <= 9 and bracketed integer lists otherwise. Vertex ids are
// 1-based outside the library.

struct InputDocument {
    int alphabet = 0;
    int length = 0;
    Mode mode = Mode::Generalized;
    StringSet set;
};

/// "12244131" for n <= 9, "[1,12,3]" otherwise.
std::string letters_to_text(const DiscreteString& s);

/// Inverse of letters_to_text; alphabet 0 means "use the largest letter".
DiscreteString text_to_letters(const std::string& text, int alphabet);

InputDocument parse_input_json(const Json& document);

/// One string per line; blank lines and '#' comments ignored; discrete only.
InputDocument parse_input_text(const std::string& content, std::optional<int> alphabet);

/// Loads JSON ('{'-leading content) or the plain-text line format.
InputDocument load_input(const std::string& path, std::optional<int> alphabet = {});

Json input_to_json(const InputDocument& input);

/// "s1,s3" or "1,3" (1-based) into a Simplex.
Simplex parse_simplex_spec(const std::string& text, int set_size);

Json rational_json(const Rational& value);
Json simplex_json(const Simplex& simplex);
Json filtration_json(const Filtration& filtration);
Json barcodes_json(const BarcodeSet& barcodes, const Filtration& filtration,
                   std::optional<int> max_dimension = {});
Json matching_json(const BarMatching& matching);
Json separation_json(const SeparationResult& result);
Json similarity_json(const SimilarityReport& report);
Json isometry_json(const HammingIsometry& isometry);

/// Inverse of the "steps" array in separation_json, for --replay.
std::vector<SeparationStep> parse_separation_trace(const Json& steps);

/// Barcode plot: one horizontal line per bar, dimensions grouped and
/// color-coded, x ticks at the filtration levels. Byte-deterministic.
void write_svg_barcode(const BarcodeSet& barcodes, const std::vector<Rational>& levels,
                       std::ostream& out, std::optional<int> max_dimension = {});

} // namespace hammology
