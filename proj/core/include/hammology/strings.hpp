#pragma once

#include <cstdint>
#include <vector>

#include "hammology/rational.hpp"

namespace hammology {

// Letters are integers 1..n throughout; external rendering (digit strings for
// n <= 9, bracketed lists otherwise) lives in the io layer.

struct DiscreteString {
    int alphabet = 0;              // n
    std::vector<int> symbols;      // each in 1..n

    int length() const { return static_cast<int>(symbols.size()); }
    bool operator==(const DiscreteString&) const = default;
};

// A generalized string carries one distribution over the alphabet per
// position; ordinary strings embed as point masses.
struct GeneralizedString {
    int alphabet = 0;
    std::vector<std::vector<Rational>> positions;  // l rows of n weights

    int length() const { return static_cast<int>(positions.size()); }
    bool operator==(const GeneralizedString&) const = default;

    /// True when position i puts weight 1 on a single letter; that letter
    /// (1-based) is stored in *letter when non-null.
    bool point_mass_at(int position, int* letter = nullptr) const;
};

/// Number of positions where the symbols differ. Throws InputError on
/// length/alphabet mismatch.
int hamming_distance(const DiscreteString& s, const DiscreteString& t);

/// Generalized Hamming distance: sum over positions of one minus the
/// distribution overlap. Restricts to hamming_distance on embedded strings.
Rational gh_distance(const GeneralizedString& s, const GeneralizedString& t);

/// Point-mass embedding of a discrete string into S'(n,l).
GeneralizedString embed(const DiscreteString& s);

enum class Mode { Discrete, Generalized };

// A finite set of strings with stable vertex ids (input order). Duplicates
// are rejected: they would force an inseparable radius-0 collision later.
class StringSet {
public:
    /// Empty placeholder; every populated set comes from the factories.
    StringSet() = default;

    static StringSet discrete(int alphabet, int length, std::vector<DiscreteString> elements);
    static StringSet generalized(int alphabet, int length, std::vector<GeneralizedString> elements);

    Mode mode() const { return mode_; }
    int alphabet() const { return alphabet_; }
    int length() const { return length_; }
    int size() const { return static_cast<int>(elements_.size()); }

    const GeneralizedString& element(int vertex) const { return elements_[vertex]; }
    const std::vector<GeneralizedString>& elements() const { return elements_; }
    const DiscreteString& discrete_element(int vertex) const;

    /// Pairwise distance under the active metric (d_H in discrete mode, d_GH
    /// otherwise; the two agree on embedded strings).
    Rational distance(int v, int w) const;

    /// The same elements re-tagged as generalized (identity on the data).
    StringSet embedded() const;

private:
    int alphabet_ = 0;
    int length_ = 0;
    Mode mode_ = Mode::Generalized;
    std::vector<DiscreteString> discrete_;       // populated in discrete mode
    std::vector<GeneralizedString> elements_;    // always populated
};

/// Hausdorff distance between two sets over the same ambient space.
Rational hausdorff_distance(const StringSet& a, const StringSet& b);

} // namespace hammology
