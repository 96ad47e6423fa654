#pragma once

#include <optional>
#include <vector>

#include "hammology/filtration.hpp"
#include "hammology/miniball.hpp"

namespace hammology {

// Separation of simplex radii: repeatedly append a coordinate that perturbs
// one vertex by 1/j, until no two non-~-equivalent simplices share a
// positive radius. Every radius moves by less than epsilon in total and the
// resulting filtration is Morse. Vertices themselves stay at radius 0; two
// distinct singletons can never be separated (a point is its own center),
// which matches the convention that level 0 is the initial complex.

struct SeparationStep {
    int moved_vertex = -1;          // z
    Integer denominator;            // j, a power of two; the shift is 1/j
    VertexMask kept = 0;            // pair member whose radius is preserved
    VertexMask raised = 0;          // pair member whose radius strictly grows
    int appended_position = -1;     // 0-based index of the new coordinate

    // The Lemma bounds 1/j was chosen strictly below.
    Rational epsilon_share;                        // epsilon / 2^i at step i
    Rational min_radius_gap;                       // min nonzero |r(t) - r(s)|
    std::optional<Rational> min_generator_margin;  // min positive r(s) - D(s, z)
};

struct SeparationOptions {
    int max_set_size = 12;
};

struct SeparationResult {
    StringSet original;   // generalized (embedded) input
    StringSet separated;  // over (n, l + steps)
    Rational epsilon;
    std::vector<SeparationStep> steps;
    std::vector<Rational> original_radii;     // by vertex mask
    std::vector<Rational> separated_radii;    // by vertex mask
    std::vector<VertexMask> generator_masks;  // minimal generators of the separated set

    int appended_positions() const { return static_cast<int>(steps.size()); }
};

struct PairSeparation {
    StringSet result;
    int moved_vertex = -1;
    VertexMask kept = 0;
    VertexMask raised = 0;
};

/// One Lemma application for an explicitly chosen denominator j. The two
/// simplices must share a positive radius and must not be ~-equivalent.
PairSeparation separate_pair(const StringSet& set, const Simplex& sigma1, const Simplex& sigma2,
                             const Integer& denominator);

/// Smallest power-of-two j with 1/j strictly below all given bounds.
Integer choose_denominator(const Rational& epsilon_share, const Rational& min_radius_gap,
                           const std::optional<Rational>& min_generator_margin);

SeparationResult separate_radii(const StringSet& input, const Rational& epsilon,
                                const SeparationOptions& options = {});

/// Re-applies a recorded trace; bit-exact replay of the separated set.
StringSet replay_separation(const StringSet& input, const std::vector<SeparationStep>& steps);

struct UnionSeparation {
    SeparationResult unioned;        // separation of A unified with B
    std::vector<int> a_vertices;     // union vertex ids of A's elements
    std::vector<int> b_vertices;     // union vertex ids of B's elements
    Rational epsilon;

    StringSet separated_side(const std::vector<int>& ids) const;
    StringSet original_side(const std::vector<int>& ids) const;
    std::vector<Rational> side_table(const std::vector<Rational>& union_table,
                                     const std::vector<int>& ids) const;
};

/// One separation run over A ∪ B that visits A-internal collision pairs
/// first, then B-internal, then mixed; Sep(A) and Sep(B) are the images of
/// the sides, so Sep(A), Sep(B) ⊆ Sep(A ∪ B) by construction. When epsilon
/// is not given it defaults to min(gap/4, 1/8) where gap is the smallest
/// nonzero difference between radii of C_{A∪B}.
UnionSeparation separate_union(const StringSet& a, const StringSet& b,
                               std::optional<Rational> epsilon,
                               const SeparationOptions& options = {});

struct ClassInvariance {
    bool vacuous = false;  // no ~-class with at least two members
    bool holds = true;     // nonzero-length bars agree with and without E
    std::vector<int> disagreeing_dimensions;
};

/// Removes each multi-member ~-equivalence class E from its level r0 of the
/// separated filtration and compares barcodes of C^(r0) with and without E.
ClassInvariance equivalent_class_invariance(const SeparationResult& result);

} // namespace hammology
