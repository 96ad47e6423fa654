#pragma once

#include <optional>
#include <vector>

#include "hammology/miniball.hpp"
#include "hammology/simplex.hpp"
#include "hammology/strings.hpp"

namespace hammology {

// The Cech filtration adjoined to a string set: every nonempty subset with
// its exact miniball radius, sorted by (radius, dimension, lexicographic
// vertices) so faces always precede cofaces.

struct FiltrationEntry {
    Simplex simplex;
    Rational radius;
};

struct BuildOptions {
    int max_set_size = 12;  // 2^m blow-up guard
};

class Filtration {
public:
    const StringSet& string_set() const { return set_; }
    Mode mode() const { return mode_; }
    const std::vector<FiltrationEntry>& entries() const { return entries_; }
    const std::vector<Rational>& levels() const { return levels_; }

    /// Entry index of a simplex mask, or -1 when absent.
    int entry_index(VertexMask mask) const { return index_of_mask_[mask]; }
    const Rational& radius_of(VertexMask mask) const;

    /// True when every nonempty subset of the vertex set is present.
    bool full() const {
        return entries_.size() + 1 == (std::size_t(1) << set_.size());
    }

    friend Filtration build_filtration(const StringSet&, Mode, const BuildOptions&);
    friend Filtration filtration_from_radius_table(StringSet, Mode, std::vector<Rational>);
    friend Filtration filtration_from_entries(StringSet, Mode,
                                              std::vector<std::pair<VertexMask, Rational>>);

private:
    Filtration() = default;
    void assemble(std::vector<std::pair<VertexMask, Rational>> rows, bool expect_full);

    StringSet set_;
    Mode mode_ = Mode::Generalized;
    std::vector<FiltrationEntry> entries_;
    std::vector<Rational> levels_;
    std::vector<int> index_of_mask_;
};

/// Computes all 2^m - 1 radii and assembles the adjoined filtration.
Filtration build_filtration(const StringSet& set, Mode mode, const BuildOptions& options = {});

/// Assembles a filtration from precomputed radii (all nonempty masks).
Filtration filtration_from_radius_table(StringSet set, Mode mode,
                                        std::vector<Rational> radius_by_mask);

/// Assembles a face-closed sub-filtration from explicit (mask, radius) rows.
Filtration filtration_from_entries(StringSet set, Mode mode,
                                   std::vector<std::pair<VertexMask, Rational>> rows);

struct LevelComplex {
    const Filtration* filtration;
    Rational level;
    std::size_t entry_count;  // prefix length of filtration->entries()
};

/// All simplices with radius <= r; a prefix of the filtration order.
LevelComplex sublevel(const Filtration& filtration, const Rational& r);

struct IsoOptions {
    int max_search_size = 9;  // m! guard
};

/// Searches for a vertex bijection preserving membership at every level,
/// i.e. preserving every simplex radius; none when the level sets differ.
std::optional<std::vector<int>> filtration_isomorphism(const Filtration& a, const Filtration& b,
                                                       const IsoOptions& options = {});

// An isometry of (S(n,l), d_H): a position permutation composed with one
// letter permutation per position. Target position q reads source position
// source_position[q] through letter_map[q].
struct HammingIsometry {
    std::vector<int> source_position;
    std::vector<std::vector<int>> letter_map;  // letter_map[q][a-1] = image of letter a

    DiscreteString apply(const DiscreteString& s) const;
    StringSet apply(const StringSet& set) const;
};

/// Searches the isometry group S_l x (S_n)^l for an automorphism mapping A
/// onto B (a d_H(A -> B)-isomorphism).
std::optional<HammingIsometry> hamming_isomorphism(const StringSet& a, const StringSet& b,
                                                   const IsoOptions& options = {});

} // namespace hammology
