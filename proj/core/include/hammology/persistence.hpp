#pragma once

#include <optional>
#include <vector>

#include "hammology/filtration.hpp"
#include "hammology/z2.hpp"

namespace hammology {

// Z2 persistence via column reduction of the boundary matrix, maintaining
// R = D * V so V-columns provide representative cycles.

struct Chain {
    int dimension = 0;
    std::vector<int> entries;  // filtration entry indices, increasing

    bool operator==(const Chain&) const = default;
};

struct Bar {
    int dimension = 0;
    Rational birth;
    std::optional<Rational> death;  // nullopt = infinite
    int birth_entry = -1;
    std::optional<int> death_entry;

    // For finite bars the reduced death column (a cycle born at the birth
    // entry that becomes a boundary exactly at death); for infinite bars the
    // birth V-column.
    Chain representative;
    // The V-column of the birth entry, kept for every bar: positive columns'
    // cycles span the cycle space of any sublevel prefix.
    Chain birth_cycle;

    bool finite() const { return death.has_value(); }
    bool zero_length() const { return death.has_value() && *death == birth; }
};

class BarcodeSet {
public:
    explicit BarcodeSet(int max_dimension = 0) : by_dim_(max_dimension + 1) {}

    int max_dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
    const std::vector<Bar>& dimension(int k) const {
        static const std::vector<Bar> none;
        return k >= 0 && k <= max_dimension() ? by_dim_[k] : none;
    }
    std::vector<Bar>& mutable_dimension(int k) { return by_dim_[k]; }

    std::size_t total() const {
        std::size_t n = 0;
        for (const auto& bars : by_dim_) n += bars.size();
        return n;
    }

private:
    std::vector<std::vector<Bar>> by_dim_;
};

struct PersistenceResult {
    BarcodeSet barcodes{0};
    std::vector<bool> positive;  // per filtration entry: created a class
};

PersistenceResult compute_persistence(const Filtration& filtration);

/// Morse test: every birth of a nonzero-length bar at a positive level and
/// every death occupies a level of its own. Level-0 births (the initial
/// complex) and zero-length bars are not events.
bool is_morse(const Filtration& filtration, const PersistenceResult& persistence);

/// Weaker than Morse: no level hosts two deaths of nonzero-length bars.
/// This is the part of the Morse property that makes "same death level"
/// pin down a single class.
bool single_termination(const Filtration& filtration, const PersistenceResult& persistence);

/// Euler characteristic cross-check at one level: alternating simplex count
/// equals the alternating sum of Betti numbers from bars alive at r.
bool euler_consistent_at(const Filtration& filtration, const PersistenceResult& persistence,
                         const Rational& r);

/// Boundary of a filtration entry as a bit column over entry indices.
BitColumn boundary_column(const Filtration& filtration, int entry);

BitColumn chain_to_column(const Chain& chain, std::size_t bits);
Chain column_to_chain(const BitColumn& column, int dimension);

} // namespace hammology
