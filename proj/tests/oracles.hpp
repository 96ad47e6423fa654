#pragma once

// Test-only oracles, kept independent of the library's solver paths:
// plain enumerations and a fresh int-based GF(2) elimination.

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "hammology/filtration.hpp"
#include "hammology/matching.hpp"
#include "hammology/strings.hpp"

namespace oracles {

using namespace hammology;

// Closest-string radius by full enumeration of the column-restricted center
// space (letters occurring at each position among the simplex's strings).
inline int discrete_radius(const StringSet& set, const std::vector<int>& vertices) {
    const int l = set.length();
    std::vector<std::vector<int>> columns(l);
    for (int i = 0; i < l; ++i) {
        for (int v : vertices) {
            const int letter = set.discrete_element(v).symbols[i];
            if (std::find(columns[i].begin(), columns[i].end(), letter) == columns[i].end())
                columns[i].push_back(letter);
        }
    }
    std::vector<int> choice(l, 0);
    int best = set.length() + 1;
    auto walk = [&](auto&& self, int pos) -> void {
        if (pos == l) {
            int worst = 0;
            for (int v : vertices) {
                int mismatches = 0;
                for (int i = 0; i < l; ++i)
                    if (set.discrete_element(v).symbols[i] != choice[i]) ++mismatches;
                worst = std::max(worst, mismatches);
            }
            best = std::min(best, worst);
            return;
        }
        for (int letter : columns[pos]) {
            choice[pos] = letter;
            self(self, pos + 1);
        }
    };
    walk(walk, 0);
    return best;
}

// Best max-distance over a dense rational grid of centers (weights that are
// multiples of 1/g at every position, full alphabet). An upper bound on the
// true radius that is exact once the optimum lies on the grid.
inline Rational grid_radius(const StringSet& set, const std::vector<int>& vertices, int g) {
    const int n = set.alphabet(), l = set.length();
    std::vector<std::vector<Rational>> cells;  // all distributions with denominator g
    std::vector<int> parts(n, 0);
    auto build = [&](auto&& self, int letter, int remaining) -> void {
        if (letter == n - 1) {
            parts[letter] = remaining;
            std::vector<Rational> cell(n);
            for (int j = 0; j < n; ++j) {
                cell[j] = Rational(parts[j], g);
                cell[j].canonicalize();
            }
            cells.push_back(std::move(cell));
            return;
        }
        for (int take = 0; take <= remaining; ++take) {
            parts[letter] = take;
            self(self, letter + 1, remaining - take);
        }
    };
    build(build, 0, g);

    GeneralizedString center;
    center.alphabet = n;
    center.positions.assign(l, cells.front());
    Rational best(-1);
    auto walk = [&](auto&& self, int pos) -> void {
        if (pos == l) {
            Rational worst(0);
            for (int v : vertices) {
                const Rational d = gh_distance(center, set.element(v));
                if (d > worst) worst = d;
            }
            if (best < 0 || worst < best) best = worst;
            return;
        }
        for (const auto& cell : cells) {
            center.positions[pos] = cell;
            self(self, pos + 1);
        }
    };
    walk(walk, 0);
    return best;
}

// Bottleneck by enumeration over all partial injections plus diagonal kills.
inline Rational bottleneck(const std::vector<Interval>& left, const std::vector<Interval>& right) {
    const int nl = static_cast<int>(left.size());
    std::vector<int> assignment(nl, -1);
    std::vector<bool> used(right.size(), false);
    Rational best(-1);
    auto walk = [&](auto&& self, int i) -> void {
        if (i == nl) {
            Rational worst(0);
            for (int a = 0; a < nl; ++a) {
                const Rational cost =
                    assignment[a] < 0
                        ? left[a].length() / 2
                        : std::max(rational_abs(left[a].birth - right[assignment[a]].birth),
                                   rational_abs(left[a].death - right[assignment[a]].death));
                if (cost > worst) worst = cost;
            }
            for (std::size_t b = 0; b < right.size(); ++b)
                if (!used[b] && right[b].length() / 2 > worst) worst = right[b].length() / 2;
            if (best < 0 || worst < best) best = worst;
            return;
        }
        assignment[i] = -1;
        self(self, i + 1);
        for (std::size_t b = 0; b < right.size(); ++b) {
            if (used[b]) continue;
            used[b] = true;
            assignment[i] = static_cast<int>(b);
            self(self, i + 1);
            used[b] = false;
        }
        assignment[i] = -1;
    };
    walk(walk, 0);
    return best;
}

// Column-style GF(2) elimination over plain int vectors, one basis column
// per pivot (the largest index of the column).
class Gf2Span {
public:
    // Reduces v against the basis; true if it was dependent (now zero).
    bool reduces(std::vector<int> v) const {
        std::sort(v.begin(), v.end());
        while (!v.empty()) {
            auto it = by_pivot_.find(v.back());
            if (it == by_pivot_.end()) return false;
            v = add(v, it->second);
        }
        return true;
    }

    void insert(std::vector<int> v) {
        std::sort(v.begin(), v.end());
        while (!v.empty()) {
            auto it = by_pivot_.find(v.back());
            if (it == by_pivot_.end()) {
                const int pivot = v.back();
                by_pivot_.emplace(pivot, std::move(v));
                return;
            }
            v = add(v, it->second);
        }
    }

    std::size_t rank() const { return by_pivot_.size(); }

private:
    static std::vector<int> add(const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> out;
        std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                      std::back_inserter(out));
        return out;
    }

    std::map<int, std::vector<int>> by_pivot_;
};

// Betti numbers of a sublevel complex by rank computations.
inline std::vector<long> betti_at(const Filtration& filtration, const Rational& level) {
    int max_dim = 0;
    std::vector<const FiltrationEntry*> present;
    for (const auto& entry : filtration.entries()) {
        if (entry.radius > level) break;
        present.push_back(&entry);
        max_dim = std::max(max_dim, entry.simplex.dimension());
    }
    std::vector<long> cells(max_dim + 1, 0), ranks(max_dim + 2, 0);
    for (int k = 1; k <= max_dim; ++k) {
        Gf2Span span;
        for (const auto* entry : present) {
            if (entry->simplex.dimension() != k) continue;
            std::vector<int> boundary;
            const VertexMask mask = entry->simplex.mask();
            for (int v : entry->simplex.vertices)
                boundary.push_back(static_cast<int>(mask & ~(VertexMask(1) << v)));
            span.insert(std::move(boundary));
        }
        ranks[k] = static_cast<long>(span.rank());
    }
    for (const auto* entry : present) ++cells[entry->simplex.dimension()];

    std::vector<long> betti(max_dim + 1, 0);
    for (int k = 0; k <= max_dim; ++k) betti[k] = cells[k] - ranks[k] - ranks[k + 1];
    return betti;
}

inline DiscreteString random_string(std::mt19937& rng, int n, int l) {
    DiscreteString s;
    s.alphabet = n;
    std::uniform_int_distribution<int> letter(1, n);
    for (int i = 0; i < l; ++i) s.symbols.push_back(letter(rng));
    return s;
}

inline StringSet random_set(std::mt19937& rng, int n, int l, int m) {
    std::vector<DiscreteString> elements;
    while (static_cast<int>(elements.size()) < m) {
        DiscreteString candidate = random_string(rng, n, l);
        if (std::find(elements.begin(), elements.end(), candidate) == elements.end())
            elements.push_back(std::move(candidate));
    }
    return StringSet::discrete(n, l, std::move(elements));
}

inline HammingIsometry random_isometry(std::mt19937& rng, int n, int l) {
    HammingIsometry iso;
    iso.source_position.resize(l);
    for (int i = 0; i < l; ++i) iso.source_position[i] = i;
    std::shuffle(iso.source_position.begin(), iso.source_position.end(), rng);
    for (int q = 0; q < l; ++q) {
        std::vector<int> letters(n);
        for (int a = 0; a < n; ++a) letters[a] = a + 1;
        std::shuffle(letters.begin(), letters.end(), rng);
        iso.letter_map.push_back(std::move(letters));
    }
    return iso;
}

} // namespace oracles
