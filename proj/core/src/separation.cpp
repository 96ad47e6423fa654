#include "hammology/separation.hpp"

#include <algorithm>
#include <map>

#include "hammology/persistence.hpp"

namespace hammology {

namespace {

int popcount(VertexMask mask) { return __builtin_popcount(mask); }

std::vector<GeneralizedString> appended(const std::vector<GeneralizedString>& elements, int z,
                                        const Integer& j) {
    const Rational shift = Rational(1) / Rational(j);
    std::vector<GeneralizedString> out = elements;
    for (std::size_t v = 0; v < out.size(); ++v) {
        std::vector<Rational> coordinate(out[v].alphabet, Rational(0));
        if (static_cast<int>(v) == z) {
            coordinate[0] = 1 - shift;
            coordinate[1] = shift;
        } else {
            coordinate[0] = 1;
        }
        out[v].positions.push_back(std::move(coordinate));
    }
    return out;
}

StringSet rebuilt(const StringSet& old, std::vector<GeneralizedString> elements) {
    const int length = elements.front().length();
    return StringSet::generalized(old.alphabet(), length, std::move(elements));
}

// z comes from the set difference of the lexicographically smaller minimal
// generator set (smallest vertex id first); ties in the paper's proof allow
// either difference.
int choose_moved_vertex(VertexMask g1, VertexMask g2) {
    const VertexMask d1 = g1 & ~g2;
    const VertexMask d2 = g2 & ~g1;
    VertexMask source;
    if (d1 == 0)
        source = d2;
    else if (d2 == 0)
        source = d1;
    else {
        // Lexicographic comparison of the sorted vertex lists = numeric
        // comparison of the lowest differing bit.
        const VertexMask diff = g1 ^ g2;
        const VertexMask lowest = diff & (~diff + 1);
        source = (g1 & lowest) ? d1 : d2;
    }
    return __builtin_ctz(source & (~source + 1));
}

struct Engine {
    Engine(const StringSet& input, const SeparationOptions& options)
        : set(input.embedded()), m(input.size()) {
        if (m > options.max_set_size)
            throw CapError("set size " + std::to_string(m) + " exceeds the separation cap " +
                           std::to_string(options.max_set_size));
        all_masks = (VertexMask(1) << m) - 1;
        radii.assign(all_masks + 1, Rational(0));
        generators.assign(all_masks + 1, std::optional<VertexMask>());
        for (VertexMask mask = 1; mask <= all_masks; ++mask)
            radii[mask] = generalized_simplex_radius(set, Simplex::from_mask(mask)).radius;
    }

    VertexMask generator_mask(VertexMask mask) {
        if (!generators[mask]) {
            generators[mask] =
                minimal_generators_at(set, Simplex::from_mask(mask), radii[mask]).generator_mask();
        }
        return *generators[mask];
    }

    // A collision is a pair of non-equivalent simplices at a shared positive
    // radius. Order: side class (for union runs), then lowest radius, then
    // (dimension, vertices) of each member.
    struct Collision {
        int side_class;
        Rational radius;
        VertexMask first, second;
    };

    int side_class(VertexMask mask) const {
        if (side_a == 0) return 0;
        const bool in_a = (mask & ~side_a) == 0;
        const bool in_b = (mask & ~side_b) == 0;
        if (in_a) return 0;
        if (in_b) return 1;
        return 2;
    }

    static bool simplex_before(VertexMask a, VertexMask b) {
        if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
        return Simplex::from_mask(a).vertices < Simplex::from_mask(b).vertices;
    }

    // Side class dominates (union runs visit A-internal pairs, then
    // B-internal, then mixed), then the lowest shared radius; within one
    // (class, radius) the pair scan is already in (dimension, vertices)
    // order, so the first candidate found is the lexicographic one.
    std::optional<Collision> next_collision() {
        std::map<Rational, std::vector<VertexMask>> groups;
        for (VertexMask mask = 1; mask <= all_masks; ++mask)
            if (radii[mask] > 0) groups[radii[mask]].push_back(mask);

        std::optional<Collision> best;
        for (auto& [radius, masks] : groups) {
            if (masks.size() < 2) continue;
            std::sort(masks.begin(), masks.end(), simplex_before);
            for (std::size_t i = 0; i < masks.size(); ++i) {
                for (std::size_t j = i + 1; j < masks.size(); ++j) {
                    if (generator_mask(masks[i]) == generator_mask(masks[j])) continue;
                    const int cls = std::max(side_class(masks[i]), side_class(masks[j]));
                    if (!best || cls < best->side_class)
                        best = Collision{cls, radius, masks[i], masks[j]};
                }
            }
            // Groups iterate in ascending radius, so a class-0 hit is final.
            if (best && best->side_class == 0) break;
        }
        return best;
    }

    Rational min_radius_gap() const {
        std::vector<Rational> distinct;
        for (VertexMask mask = 1; mask <= all_masks; ++mask) distinct.push_back(radii[mask]);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        Rational gap;
        bool first = true;
        for (std::size_t i = 1; i < distinct.size(); ++i) {
            Rational d = distinct[i] - distinct[i - 1];
            if (first || d < gap) {
                gap = d;
                first = false;
            }
        }
        if (first) throw InternalError("radius gap undefined with a single level");
        return gap;
    }

    std::optional<Rational> min_generator_margin(int z) {
        std::optional<Rational> margin;
        for (VertexMask mask = 1; mask <= all_masks; ++mask) {
            if (popcount(mask) < 2) continue;
            const Rational d =
                center_set_distance_at(set, Simplex::from_mask(mask), z, radii[mask]);
            const Rational value = radii[mask] - d;
            if (value > 0 && (!margin || value < *margin)) margin = value;
        }
        return margin;
    }

    void apply_step(int z, const Integer& j, VertexMask kept, VertexMask raised) {
        const Rational shift = Rational(1) / Rational(j);
        std::vector<Rational> before = radii;
        set = rebuilt(set, appended(set.elements(), z, j));

        const VertexMask zbit = VertexMask(1) << z;
        for (VertexMask mask = 1; mask <= all_masks; ++mask) {
            if (!(mask & zbit) || popcount(mask) < 2) continue;
            radii[mask] = generalized_simplex_radius(set, Simplex::from_mask(mask)).radius;
            generators[mask].reset();
            if (radii[mask] < before[mask] || radii[mask] > before[mask] + shift)
                throw InternalError("separation step broke the Lemma radius bounds");
        }
        if (radii[kept] != before[kept])
            throw InternalError("separation step moved the kept simplex");
        if (radii[raised] <= before[raised])
            throw InternalError("separation step failed to raise the target simplex");

        for (VertexMask mask = 1; mask <= all_masks; ++mask)
            for (int v = 0; v < m; ++v) {
                const VertexMask facet = mask & ~(VertexMask(1) << v);
                if (facet != 0 && facet != mask && radii[facet] > radii[mask])
                    throw InternalError("separation step broke face monotonicity");
            }
    }

    StringSet set;
    int m;
    VertexMask all_masks = 0;
    VertexMask side_a = 0, side_b = 0;  // zero when not a union run
    std::vector<Rational> radii;
    std::vector<std::optional<VertexMask>> generators;
};

SeparationResult run_separation(Engine& engine, const StringSet& original, const Rational& epsilon) {
    if (epsilon <= 0) throw InputError("separation needs a positive epsilon");

    SeparationResult result;
    result.original = original.embedded();
    result.epsilon = epsilon;
    result.original_radii = engine.radii;

    Rational epsilon_share = epsilon;
    while (auto collision = engine.next_collision()) {
        if (static_cast<int>(result.steps.size()) >= engine.m)
            throw InternalError("separation exceeded the vertex-count step bound");
        epsilon_share /= 2;

        const VertexMask g1 = engine.generator_mask(collision->first);
        const VertexMask g2 = engine.generator_mask(collision->second);
        const int z = choose_moved_vertex(g1, g2);
        const VertexMask zbit = VertexMask(1) << z;
        const VertexMask kept = (g1 & zbit) ? collision->second : collision->first;
        const VertexMask raised = (g1 & zbit) ? collision->first : collision->second;

        SeparationStep step;
        step.moved_vertex = z;
        step.kept = kept;
        step.raised = raised;
        step.appended_position = engine.set.length();
        step.epsilon_share = epsilon_share;
        step.min_radius_gap = engine.min_radius_gap();
        step.min_generator_margin = engine.min_generator_margin(z);
        step.denominator =
            choose_denominator(step.epsilon_share, step.min_radius_gap, step.min_generator_margin);

        engine.apply_step(z, step.denominator, kept, raised);
        result.steps.push_back(std::move(step));
    }

    result.separated = engine.set;
    result.separated_radii = engine.radii;
    result.generator_masks.assign(engine.all_masks + 1, 0);
    for (VertexMask mask = 1; mask <= engine.all_masks; ++mask) {
        result.generator_masks[mask] = engine.generator_mask(mask);
        const Rational shift = result.separated_radii[mask] - result.original_radii[mask];
        if (shift < 0 || shift >= epsilon)
            throw InternalError("separation shifted a radius outside [0, epsilon)");
    }
    return result;
}

} // namespace

Integer choose_denominator(const Rational& epsilon_share, const Rational& min_radius_gap,
                           const std::optional<Rational>& min_generator_margin) {
    Rational bound = std::min(epsilon_share, min_radius_gap);
    if (min_generator_margin && *min_generator_margin < bound) bound = *min_generator_margin;
    if (bound <= 0) throw InputError("separation bounds must be positive");
    Integer j = 1;
    while (Rational(1) / Rational(j) >= bound) j *= 2;
    return j;
}

PairSeparation separate_pair(const StringSet& set, const Simplex& sigma1, const Simplex& sigma2,
                             const Integer& denominator) {
    if (denominator < 1) throw InputError("the denominator j must be positive");
    const StringSet working = set.embedded();
    if (working.alphabet() < 2) throw InputError("separation needs an alphabet of size at least 2");

    const Rational r1 = generalized_simplex_radius(working, sigma1).radius;
    const Rational r2 = generalized_simplex_radius(working, sigma2).radius;
    if (r1 != r2) throw InputError("separate_pair needs simplices of equal radius");
    if (r1 == 0) throw InputError("radius-0 simplices cannot be separated");

    const VertexMask g1 = minimal_generators_at(working, sigma1, r1).generator_mask();
    const VertexMask g2 = minimal_generators_at(working, sigma2, r2).generator_mask();
    if (g1 == g2)
        throw InputError("~-equivalent simplices admit no separating vertex");

    const int z = choose_moved_vertex(g1, g2);
    const VertexMask zbit = VertexMask(1) << z;

    PairSeparation out{rebuilt(working, appended(working.elements(), z, denominator)), z, 0, 0};
    out.kept = (g1 & zbit) ? sigma2.mask() : sigma1.mask();
    out.raised = (g1 & zbit) ? sigma1.mask() : sigma2.mask();
    return out;
}

SeparationResult separate_radii(const StringSet& input, const Rational& epsilon,
                                const SeparationOptions& options) {
    Engine engine(input, options);
    return run_separation(engine, input, epsilon);
}

StringSet replay_separation(const StringSet& input, const std::vector<SeparationStep>& steps) {
    StringSet set = input.embedded();
    for (const auto& step : steps) {
        if (step.appended_position != set.length())
            throw InputError("separation trace does not match the input length");
        set = rebuilt(set, appended(set.elements(), step.moved_vertex, step.denominator));
    }
    return set;
}

StringSet UnionSeparation::separated_side(const std::vector<int>& ids) const {
    std::vector<GeneralizedString> elements;
    for (int v : ids) elements.push_back(unioned.separated.element(v));
    return StringSet::generalized(unioned.separated.alphabet(), unioned.separated.length(),
                                  std::move(elements));
}

StringSet UnionSeparation::original_side(const std::vector<int>& ids) const {
    std::vector<GeneralizedString> elements;
    for (int v : ids) elements.push_back(unioned.original.element(v));
    return StringSet::generalized(unioned.original.alphabet(), unioned.original.length(),
                                  std::move(elements));
}

std::vector<Rational> UnionSeparation::side_table(const std::vector<Rational>& union_table,
                                                  const std::vector<int>& ids) const {
    const VertexMask all = (VertexMask(1) << ids.size()) - 1;
    std::vector<Rational> table(all + 1, Rational(0));
    for (VertexMask mask = 1; mask <= all; ++mask) {
        VertexMask union_mask = 0;
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (mask & (VertexMask(1) << i)) union_mask |= VertexMask(1) << ids[i];
        table[mask] = union_table[union_mask];
    }
    return table;
}

UnionSeparation separate_union(const StringSet& a, const StringSet& b,
                               std::optional<Rational> epsilon,
                               const SeparationOptions& options) {
    if (a.alphabet() != b.alphabet() || a.length() != b.length())
        throw InputError("separate_union needs a common ambient space");

    const StringSet ea = a.embedded(), eb = b.embedded();
    std::vector<GeneralizedString> elements = ea.elements();
    std::vector<int> a_ids(ea.size()), b_ids(eb.size());
    for (int v = 0; v < ea.size(); ++v) a_ids[v] = v;
    for (int w = 0; w < eb.size(); ++w) {
        int found = -1;
        for (std::size_t v = 0; v < elements.size(); ++v)
            if (elements[v] == eb.element(w)) found = static_cast<int>(v);
        if (found < 0) {
            found = static_cast<int>(elements.size());
            elements.push_back(eb.element(w));
        }
        b_ids[w] = found;
    }
    StringSet union_set =
        StringSet::generalized(a.alphabet(), a.length(), std::move(elements));

    Engine engine(union_set, options);
    for (int v : a_ids) engine.side_a |= VertexMask(1) << v;
    for (int v : b_ids) engine.side_b |= VertexMask(1) << v;

    if (!epsilon) {
        // Default: a quarter of the smallest positive radius gap of the
        // unseparated union complex, capped at 1/8.
        if (union_set.size() == 1) {
            epsilon = Rational(1, 8);
        } else {
            Rational gap = engine.min_radius_gap() / 4;
            epsilon = std::min(gap, Rational(1, 8));
        }
    }

    UnionSeparation result{run_separation(engine, union_set, *epsilon), std::move(a_ids),
                           std::move(b_ids), *epsilon};
    return result;
}

ClassInvariance equivalent_class_invariance(const SeparationResult& result) {
    const VertexMask all = (VertexMask(1) << result.separated.size()) - 1;
    std::map<VertexMask, std::vector<VertexMask>> classes;
    for (VertexMask mask = 1; mask <= all; ++mask)
        if (result.separated_radii[mask] > 0)
            classes[result.generator_masks[mask]].push_back(mask);

    ClassInvariance report;
    report.vacuous = true;

    using BarKey = std::tuple<int, Rational, Rational, bool>;  // dim, birth, death, finite
    auto nonzero_bars = [](const Filtration& f) {
        std::vector<BarKey> keys;
        const PersistenceResult persistence = compute_persistence(f);
        for (int k = 0; k <= persistence.barcodes.max_dimension(); ++k)
            for (const Bar& bar : persistence.barcodes.dimension(k)) {
                if (bar.zero_length()) continue;
                keys.push_back({k, bar.birth, bar.finite() ? *bar.death : Rational(0), bar.finite()});
            }
        std::sort(keys.begin(), keys.end());
        return keys;
    };

    for (const auto& [generator, members] : classes) {
        if (members.size() < 2) continue;
        report.vacuous = false;
        const Rational r0 = result.separated_radii[members.front()];
        for (VertexMask mask : members)
            if (result.separated_radii[mask] != r0)
                throw InternalError("~-equivalent simplices ended on different radii");

        std::vector<std::pair<VertexMask, Rational>> with_class, without_class;
        for (VertexMask mask = 1; mask <= all; ++mask) {
            if (result.separated_radii[mask] > r0) continue;
            with_class.push_back({mask, result.separated_radii[mask]});
            if (std::find(members.begin(), members.end(), mask) == members.end())
                without_class.push_back({mask, result.separated_radii[mask]});
        }
        const auto bars_with = nonzero_bars(
            filtration_from_entries(result.separated, Mode::Generalized, with_class));
        const auto bars_without = nonzero_bars(
            filtration_from_entries(result.separated, Mode::Generalized, without_class));

        if (bars_with != bars_without) {
            report.holds = false;
            std::vector<int> dims;
            for (const auto& key : bars_with)
                if (std::find(bars_without.begin(), bars_without.end(), key) == bars_without.end())
                    dims.push_back(std::get<0>(key));
            for (const auto& key : bars_without)
                if (std::find(bars_with.begin(), bars_with.end(), key) == bars_with.end())
                    dims.push_back(std::get<0>(key));
            std::sort(dims.begin(), dims.end());
            dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
            for (int d : dims)
                if (std::find(report.disagreeing_dimensions.begin(),
                              report.disagreeing_dimensions.end(),
                              d) == report.disagreeing_dimensions.end())
                    report.disagreeing_dimensions.push_back(d);
        }
    }
    return report;
}

} // namespace hammology
