#pragma once

#include <optional>
#include <vector>

#include "hammology/simplex.hpp"
#include "hammology/strings.hpp"

namespace hammology {

// Minimum enclosing balls in (S(n,l), d_H) and (S'(n,l), d_GH): simplex
// radii with center witnesses, minimal generator sets, and the derived
// center-set distance D(sigma, u) used by the separation technique.

struct RadiusCertificate {
    Rational radius;
    GeneralizedString center;                     // witness, verified exactly
    std::optional<DiscreteString> discrete_center;  // set in discrete mode
    Mode mode = Mode::Generalized;
};

/// Exact closest-string radius: binary search over integer r with a
/// branch-and-bound search restricted to the per-position column alphabets.
RadiusCertificate discrete_simplex_radius(const StringSet& set, const Simplex& simplex);

/// Exact rational radius over S'(n,l) via a linear program: the min terms of
/// d_GH make the distance convex piecewise-linear in the center, so the
/// miniball problem is an LP after introducing per-vertex overlap variables.
RadiusCertificate generalized_simplex_radius(const StringSet& set, const Simplex& simplex);

/// Dispatches on the set's mode.
RadiusCertificate simplex_radius(const StringSet& set, const Simplex& simplex);

/// True iff every vertex of the simplex is within r of c (exact comparison).
bool is_center(const GeneralizedString& c, const StringSet& set, const Simplex& simplex,
               const Rational& r);

struct GeneratorSet {
    Simplex simplex;
    std::vector<int> generators;      // subset of simplex.vertices
    GeneralizedString witness_center;  // exactly the generators on its boundary
    Rational radius;

    VertexMask generator_mask() const {
        VertexMask m = 0;
        for (int v : generators) m |= VertexMask(1) << v;
        return m;
    }
};

/// The minimal set of generators: vertices that lie at distance exactly
/// r(sigma) from every center. Decided per vertex by minimizing d_GH(c, x)
/// over the center polytope.
GeneratorSet minimal_generators(const StringSet& set, const Simplex& simplex);

/// Same, with the radius already known (callers holding a radius table).
GeneratorSet minimal_generators_at(const StringSet& set, const Simplex& simplex,
                                   const Rational& radius);

/// sigma ~ tau iff their minimal generator sets coincide.
bool approx_equivalent(const StringSet& set, const Simplex& sigma, const Simplex& tau);

/// D(sigma, u) = min { d_GH(c, u) : c a center of sigma }.
Rational center_set_distance(const StringSet& set, const Simplex& simplex, int vertex);
Rational center_set_distance_at(const StringSet& set, const Simplex& simplex, int vertex,
                                const Rational& radius);

} // namespace hammology
