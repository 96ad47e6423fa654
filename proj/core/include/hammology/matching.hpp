#pragma once

#include <optional>
#include <vector>

#include "hammology/persistence.hpp"
#include "hammology/separation.hpp"

namespace hammology {

// Bottleneck matching of barcodes, cycle registration through the union
// filtration, and the hybrid distances d_0, d_k, d_new built from them.

struct Interval {
    Rational birth;
    Rational death;

    Rational length() const { return death - birth; }
    bool operator==(const Interval&) const = default;
};

/// d_BOT between two one-bar barcodes:
/// min(max(|b1-b2|, |d1-d2|), max(len1/2, len2/2)).
Rational single_bar_bottleneck(const Interval& a, const Interval& b);

struct BarMatching {
    Rational delta;
    std::vector<std::pair<int, int>> pairs;  // (left index, right index)
    std::vector<int> left_unmatched;         // matched to the diagonal
    std::vector<int> right_unmatched;
};

/// Exact bottleneck distance between finite-bar multisets. The optimum is
/// attained on the finite candidate set of endpoint differences and
/// half-lengths; feasibility per candidate is a bipartite matching.
BarMatching bottleneck_matching(const std::vector<Interval>& left,
                                const std::vector<Interval>& right);

struct BottleneckResult {
    bool is_infinite = false;  // mismatched infinite-bar counts
    Rational delta;
};

/// Bottleneck over one dimension's bars: zero-length bars are dropped,
/// infinite bars are pre-paired by sorted births.
BottleneckResult barcode_bottleneck(const std::vector<Bar>& left, const std::vector<Bar>& right);

struct RegistrationSide {
    const Filtration& filtration;          // separated side filtration
    const PersistenceResult& persistence;
    const std::vector<int>& vertex_ids;    // local vertex -> union vertex
    std::vector<int> bars;                 // candidate bar indices in dimension k
};

struct RegisteredPair {
    int left_bar = -1;   // index into the left side's dimension-k bars
    int right_bar = -1;
    Rational union_death;
};

struct RegistrationReport {
    int dimension = 0;
    std::vector<RegisteredPair> pairs;
    std::vector<int> residual_left;   // candidate bars without a partner
    std::vector<int> residual_right;
};

/// Pairs bars whose representative cycles are fresh at their birth level in
/// the union module and become boundaries there at exactly the same level.
/// All three filtrations must be Morse; the union's Morse property makes a
/// partner unique when it exists.
RegistrationReport register_cycles(const RegistrationSide& left, const RegistrationSide& right,
                                   const Filtration& union_filtration,
                                   const PersistenceResult& union_persistence, int dimension);

/// Sorted finite BC_0 lengths compared componentwise; the infinite bars are
/// perfectly matched and ignored.
Rational d0_distance(const BarcodeSet& a, const BarcodeSet& b);

struct SimilarityOptions {
    std::optional<Rational> epsilon;
    int max_set_size = 12;
};

// One bar of a separated barcode together with its endpoints pulled back to
// the original (pre-separation) radii of its birth/death simplices. All
// matching costs are charged at the original radii: the separation's tiny
// tie-breaking shifts are scaffolding for registration, not signal, and
// bars that collapse to zero length at original granularity are artifacts
// and take no part in any distance.
struct ReportedBar {
    int bar_index = -1;
    Interval reported;   // original radii
    Interval separated;  // the bar's own endpoints
};

struct DimensionReport {
    int dimension = 0;
    Rational value;  // d_k
    std::vector<ReportedBar> left_bars, right_bars;
    RegistrationReport registration;
    BarMatching residual_matching;  // over the residual reported intervals
    Rational residual_bottleneck;
};

struct SimilarityReport {
    Rational epsilon;
    int k0 = 0;
    Rational d0;
    std::vector<DimensionReport> higher;  // k = 1..k0
    std::vector<Rational> weights;        // k = 0..k0, summing to exactly 1
    Rational d_new;
    UnionSeparation separation;
    PersistenceResult original_a, original_b;  // unseparated generalized barcodes
};

/// The full d_new pipeline: shared separation of A, B and A∪B, cycle
/// registration per dimension, and the weighted sum over k = 0..k0.
SimilarityReport d_new_distance(const StringSet& a, const StringSet& b,
                                const SimilarityOptions& options = {});

} // namespace hammology
