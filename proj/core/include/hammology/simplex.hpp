#pragma once

#include <cstdint>
#include <vector>

#include "hammology/errors.hpp"

namespace hammology {

// Simplices over a StringSet are subsets of its vertex ids. Bitmasks index
// the per-set tables (radius, generators); the struct form is the API
// currency. Set sizes are capped well below 32 vertices.
using VertexMask = std::uint32_t;

struct Simplex {
    std::vector<int> vertices;  // strictly increasing

    int dimension() const { return static_cast<int>(vertices.size()) - 1; }
    int size() const { return static_cast<int>(vertices.size()); }

    VertexMask mask() const {
        VertexMask m = 0;
        for (int v : vertices) m |= VertexMask(1) << v;
        return m;
    }

    static Simplex of(std::vector<int> vertices);
    static Simplex from_mask(VertexMask mask);

    bool operator==(const Simplex&) const = default;
    /// Lexicographic on the vertex sequence.
    bool operator<(const Simplex& other) const { return vertices < other.vertices; }
};

inline Simplex Simplex::of(std::vector<int> vertices) {
    Simplex s{std::move(vertices)};
    for (std::size_t i = 0; i + 1 < s.vertices.size(); ++i)
        if (s.vertices[i] >= s.vertices[i + 1])
            throw InputError("simplex vertices must be strictly increasing");
    if (s.vertices.empty()) throw InputError("simplex must be nonempty");
    return s;
}

inline Simplex Simplex::from_mask(VertexMask mask) {
    if (mask == 0) throw InputError("simplex must be nonempty");
    Simplex s;
    for (int v = 0; mask != 0; ++v, mask >>= 1)
        if (mask & 1) s.vertices.push_back(v);
    return s;
}

} // namespace hammology
