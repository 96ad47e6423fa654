#include <doctest.h>

#include <random>

#include "hammology/persistence.hpp"
#include "oracles.hpp"

using namespace hammology;

namespace {

DiscreteString ds(const std::string& digits, int alphabet) {
    DiscreteString s;
    s.alphabet = alphabet;
    for (char c : digits) s.symbols.push_back(c - '0');
    return s;
}

StringSet example21() {
    return StringSet::discrete(4, 8,
                               {ds("12244131", 4), ds("22223443", 4), ds("32143431", 4),
                                ds("14443214", 4), ds("22134222", 4)});
}

std::vector<std::pair<Rational, Rational>> finite_nonzero(const BarcodeSet& barcodes, int k) {
    std::vector<std::pair<Rational, Rational>> out;
    for (const Bar& bar : barcodes.dimension(k))
        if (bar.finite() && !bar.zero_length()) out.push_back({bar.birth, *bar.death});
    std::sort(out.begin(), out.end());
    return out;
}

int infinite_count(const BarcodeSet& barcodes, int k) {
    int count = 0;
    for (const Bar& bar : barcodes.dimension(k))
        if (!bar.finite()) ++count;
    return count;
}

// Boundary of a chain via plain symmetric differences; empty means cycle.
std::vector<int> chain_boundary(const Filtration& f, const Chain& chain) {
    std::vector<int> result;
    for (int e : chain.entries) {
        const auto& simplex = f.entries()[e].simplex;
        if (simplex.dimension() == 0) continue;
        for (int v : simplex.vertices) {
            const int face = f.entry_index(simplex.mask() & ~(VertexMask(1) << v));
            std::vector<int> one{face};
            std::vector<int> merged;
            std::set_symmetric_difference(result.begin(), result.end(), one.begin(), one.end(),
                                          std::back_inserter(merged));
            result = std::move(merged);
        }
    }
    return result;
}

// Is the chain a sum of boundaries of (k+1)-entries with radius <= level?
bool bounds_at(const Filtration& f, const Chain& chain, const Rational& level) {
    oracles::Gf2Span span;
    for (std::size_t e = 0; e < f.entries().size(); ++e) {
        const auto& entry = f.entries()[e];
        if (entry.radius > level || entry.simplex.dimension() != chain.dimension + 1) continue;
        std::vector<int> boundary;
        for (int v : entry.simplex.vertices)
            boundary.push_back(f.entry_index(entry.simplex.mask() & ~(VertexMask(1) << v)));
        span.insert(std::move(boundary));
    }
    return span.reduces(chain.entries);
}

} // namespace

TEST_SUITE_BEGIN("persistence");

TEST_CASE("barcodes of the worked five-string set, discrete mode") {
    const Filtration f = build_filtration(example21(), Mode::Discrete);
    const PersistenceResult p = compute_persistence(f);

    CHECK(p.barcodes.dimension(0).size() == 5);
    CHECK(infinite_count(p.barcodes, 0) == 1);
    CHECK(finite_nonzero(p.barcodes, 0) ==
          std::vector<std::pair<Rational, Rational>>{{0, 2}, {0, 3}, {0, 3}, {0, 3}});

    CHECK(finite_nonzero(p.barcodes, 1) == std::vector<std::pair<Rational, Rational>>{{3, 4}});
    const Bar* blue = nullptr;
    for (const Bar& bar : p.barcodes.dimension(1))
        if (!bar.zero_length()) blue = &bar;
    REQUIRE(blue);
    // The documented cycle s1s2 + s2s5 + s1s5, killed by [s1, s2, s5].
    CHECK(f.entries()[*blue->death_entry].simplex == Simplex::of({0, 1, 4}));
    std::vector<Simplex> rep;
    for (int e : blue->representative.entries) rep.push_back(f.entries()[e].simplex);
    CHECK(rep == std::vector<Simplex>{Simplex::of({0, 1}), Simplex::of({0, 4}), Simplex::of({1, 4})});

    // With the corrected radius of [s1, s3, s4, s5] every 2-class dies at
    // its own level; the four positive triangles pair with the four
    // tetrahedra present at level 4.
    CHECK(finite_nonzero(p.barcodes, 2).empty());
    int zero_length2 = 0;
    for (const Bar& bar : p.barcodes.dimension(2))
        if (bar.zero_length()) ++zero_length2;
    CHECK(zero_length2 == 4);

    // Classification: vertices create; [s1, s2, s5] kills the 1-cycle.
    for (int v = 0; v < 5; ++v) CHECK(p.positive[f.entry_index(VertexMask(1) << v)]);
    CHECK_FALSE(p.positive[f.entry_index(Simplex::of({0, 1, 4}).mask())]);
    CHECK(p.positive[blue->birth_entry]);

    CHECK_FALSE(is_morse(f, p));  // three deaths share level 3
}

TEST_CASE("singleton and pair barcodes") {
    const Filtration single =
        build_filtration(StringSet::discrete(2, 3, {ds("111", 2)}), Mode::Discrete);
    const PersistenceResult ps = compute_persistence(single);
    CHECK(ps.barcodes.dimension(0).size() == 1);
    CHECK(infinite_count(ps.barcodes, 0) == 1);
    CHECK(is_morse(single, ps));

    const StringSet pair = StringSet::discrete(2, 4, {ds("1111", 2), ds("2222", 2)});
    const Filtration f = build_filtration(pair, Mode::Generalized);
    const PersistenceResult p = compute_persistence(f);
    CHECK(infinite_count(p.barcodes, 0) == 1);
    CHECK(finite_nonzero(p.barcodes, 0) == std::vector<std::pair<Rational, Rational>>{{0, 2}});
}

TEST_CASE("representatives are cycles born at birth and dying at death") {
    std::mt19937 rng(73);
    for (int trial = 0; trial < 5; ++trial) {
        const StringSet set = oracles::random_set(rng, 2 + trial % 3, 4 + trial % 3, 4);
        const Filtration f = build_filtration(set, Mode::Generalized);
        const PersistenceResult p = compute_persistence(f);
        for (int k = 0; k <= p.barcodes.max_dimension(); ++k) {
            for (const Bar& bar : p.barcodes.dimension(k)) {
                CHECK(chain_boundary(f, bar.representative).empty());
                CHECK(chain_boundary(f, bar.birth_cycle).empty());
                // Born at birth: the birth entry is the latest one used.
                REQUIRE(!bar.representative.entries.empty());
                CHECK(bar.representative.entries.back() == bar.birth_entry);
                for (int e : bar.representative.entries)
                    CHECK(f.entries()[e].radius <= bar.birth);
                if (!bar.finite() || k == 0) continue;
                // Becomes a boundary exactly at the death level.
                CHECK(bounds_at(f, bar.representative, *bar.death));
                const auto& levels = f.levels();
                for (std::size_t i = 1; i < levels.size(); ++i)
                    if (levels[i] == *bar.death)
                        CHECK_FALSE(bounds_at(f, bar.representative, levels[i - 1]));
            }
        }
    }
}

TEST_CASE("barcode cardinalities and Betti numbers match rank oracles") {
    std::mt19937 rng(79);
    for (int trial = 0; trial < 5; ++trial) {
        const int m = 3 + trial % 3;
        const StringSet set = oracles::random_set(rng, 2 + trial % 2, 5, m);
        const Filtration f = build_filtration(set, Mode::Generalized);
        const PersistenceResult p = compute_persistence(f);

        CHECK(p.barcodes.dimension(0).size() == static_cast<std::size_t>(m));
        CHECK(infinite_count(p.barcodes, 0) == 1);
        for (int k = 1; k <= p.barcodes.max_dimension(); ++k) {
            CHECK(infinite_count(p.barcodes, k) == 0);
            if (k > m - 1) CHECK(p.barcodes.dimension(k).empty());
        }

        for (const Rational& level : f.levels()) {
            const auto betti = oracles::betti_at(f, level);
            for (int k = 0; k < static_cast<int>(betti.size()); ++k) {
                long alive = 0;
                for (const Bar& bar : p.barcodes.dimension(k))
                    if (bar.birth <= level && (!bar.finite() || *bar.death > level)) ++alive;
                CHECK(alive == betti[k]);
            }
            CHECK(euler_consistent_at(f, p, level));
        }
    }
}

TEST_CASE("Euler characteristic at the worked levels") {
    const Filtration f = build_filtration(example21(), Mode::Discrete);
    const PersistenceResult p = compute_persistence(f);
    // r = 3: 5 vertices - 8 edges + 3 triangles = 0 = b0 - b1 = 1 - 1.
    CHECK(euler_consistent_at(f, p, Rational(3)));
    const auto betti3 = oracles::betti_at(f, Rational(3));
    CHECK(betti3[0] == 1);
    CHECK(betti3[1] == 1);
    // r = 5: the full complex on five vertices is contractible.
    const auto betti5 = oracles::betti_at(f, Rational(5));
    CHECK(betti5[0] == 1);
    CHECK(euler_consistent_at(f, p, Rational(5)));
    CHECK(euler_consistent_at(f, p, Rational(0)));
}

TEST_SUITE_END();
