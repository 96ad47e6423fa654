// Acceptance suite: one check per numbered criterion, each printing a
// PASS/FAIL line with its runtime against the stated budget. Expected
// values are asserted literally; failures print the exact divergence.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hammology/io.hpp"
#include "hammology/matching.hpp"
#include "hammology/persistence.hpp"
#include "hammology/separation.hpp"

using namespace hammology;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void fail(const std::string& note) {
        pass = false;
        notes.push_back(note);
    }
    void require(bool condition, const std::string& note) {
        if (!condition) fail(note);
    }
};

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

std::string simplex_text(const Simplex& simplex) {
    std::string out = "[";
    for (std::size_t i = 0; i < simplex.vertices.size(); ++i) {
        if (i) out += ",";
        out += "s" + std::to_string(simplex.vertices[i] + 1);
    }
    return out + "]";
}

// ---------------------------------------------------------------- 1 & 2

VertexMask mask_of(const std::vector<int>& one_based) {
    VertexMask m = 0;
    for (int v : one_based) m |= VertexMask(1) << (v - 1);
    return m;
}

// The 31 rows of the paper's Example 2.1 table, exactly as printed there.
std::map<VertexMask, Rational> example21_listed_table() {
    std::map<VertexMask, Rational> table;
    for (int v = 1; v <= 5; ++v) table[mask_of({v})] = 0;
    table[mask_of({1, 3})] = 2;
    for (const auto& vs : std::vector<std::vector<int>>{
             {1, 2}, {2, 3}, {1, 2, 3}, {1, 4}, {3, 4}, {1, 3, 4}, {1, 5}, {2, 5}, {3, 5},
             {1, 3, 5}})
        table[mask_of(vs)] = 3;
    for (const auto& vs : std::vector<std::vector<int>>{
             {2, 4}, {1, 2, 4}, {2, 3, 4}, {1, 2, 3, 4}, {1, 2, 5}, {2, 3, 5},
             {1, 2, 3, 5}, {4, 5}, {2, 4, 5}, {3, 4, 5}, {2, 3, 4, 5}, {1, 4, 5}})
        table[mask_of(vs)] = 4;
    for (const auto& vs : std::vector<std::vector<int>>{{1, 2, 4, 5}, {1, 3, 4, 5},
                                                        {1, 2, 3, 4, 5}})
        table[mask_of(vs)] = 5;
    return table;
}

void criterion_radius_table(Outcome& outcome) {
    const Filtration f = build_filtration(example21(), Mode::Discrete);
    const auto listed = example21_listed_table();
    outcome.require(f.entries().size() == listed.size(), "expected 31 simplices");
    for (const auto& [mask, radius] : listed) {
        const Rational computed = f.radius_of(mask);
        if (computed != radius)
            outcome.fail("simplex " + simplex_text(Simplex::from_mask(mask)) +
                         ": computed radius " + rational_str(computed) + ", listed " +
                         rational_str(radius));
    }
    const std::vector<Rational> expected_levels{0, 2, 3, 4, 5};
    if (f.levels() != expected_levels) {
        std::string got = "levels {";
        for (const auto& level : f.levels()) got += rational_str(level) + " ";
        outcome.fail(got + "} differ from the listed {0 2 3 4 5}");
    }
}

void criterion_barcodes(Outcome& outcome) {
    const Filtration f = build_filtration(example21(), Mode::Discrete);
    const PersistenceResult p = compute_persistence(f);

    auto nonzero = [&](int k) {
        std::vector<std::pair<Rational, std::optional<Rational>>> bars;
        for (const Bar& bar : p.barcodes.dimension(k))
            if (!bar.zero_length()) bars.push_back({bar.birth, bar.death});
        std::sort(bars.begin(), bars.end(), [](const auto& a, const auto& b) {
            const Rational da = a.second ? *a.second : Rational(-1);
            const Rational db = b.second ? *b.second : Rational(-1);
            return std::tie(a.first, da) < std::tie(b.first, db);
        });
        return bars;
    };
    auto text = [](const std::vector<std::pair<Rational, std::optional<Rational>>>& bars) {
        std::string out = "{";
        for (const auto& [birth, death] : bars)
            out += "[" + rational_str(birth) + "," + (death ? rational_str(*death) : "inf") + ") ";
        return out + "}";
    };

    using Bars = std::vector<std::pair<Rational, std::optional<Rational>>>;
    // Sorted with the infinite bar first (death key -1 in the sort above).
    const Bars expected0{{0, std::nullopt},
                         {0, Rational(2)},
                         {0, Rational(3)},
                         {0, Rational(3)},
                         {0, Rational(3)}};
    if (nonzero(0) != expected0)
        outcome.fail("BC_0 is " + text(nonzero(0)) + ", listed {[0,inf) [0,2) [0,3)x3}");
    if (nonzero(1) != Bars{{Rational(3), Rational(4)}})
        outcome.fail("BC_1 is " + text(nonzero(1)) + ", listed {[3,4)}");
    if (nonzero(2) != Bars{{Rational(4), Rational(5)}})
        outcome.fail("BC_2 is " + text(nonzero(2)) + ", listed {[4,5)}");
}

// ---------------------------------------------------------------- 3

void criterion_center_example(Outcome& outcome) {
    const StringSet set = StringSet::discrete(
        3, 6, {ds("111112", 3), ds("111113", 3), ds("222221", 3), ds("333331", 3)});
    const Simplex sigma = Simplex::of({0, 1, 2, 3});
    const auto cert = generalized_simplex_radius(set.embedded(), sigma);
    outcome.require(cert.radius == Rational(11, 3),
                    "radius is " + rational_str(cert.radius) + ", expected 11/3");

    GeneralizedString b;
    b.alphabet = 3;
    for (int i = 0; i < 5; ++i)
        b.positions.push_back({Rational(7, 15), Rational(4, 15), Rational(4, 15)});
    b.positions.push_back({Rational(1), Rational(0), Rational(0)});
    GeneralizedString b2 = b;
    b2.positions[0] = {Rational(5, 15), Rational(5, 15), Rational(5, 15)};
    b2.positions[1] = {Rational(9, 15), Rational(3, 15), Rational(3, 15)};
    outcome.require(is_center(b, set.embedded(), sigma, Rational(11, 3)),
                    "the first worked center fails is_center at 11/3");
    outcome.require(is_center(b2, set.embedded(), sigma, Rational(11, 3)),
                    "the second worked center fails is_center at 11/3");
}

// ---------------------------------------------------------------- 4

void criterion_generators(Outcome& outcome) {
    const StringSet set = StringSet::discrete(
        2, 4, {ds("1111", 2), ds("2222", 2), ds("1222", 2), ds("1212", 2)});
    const Simplex sigma = Simplex::of({0, 1});
    const Simplex tau = Simplex::of({0, 1, 2});    // adds 1222
    const Simplex theta = Simplex::of({0, 1, 3});  // adds 1212
    for (const Simplex& simplex : {sigma, tau, theta}) {
        const auto generators = minimal_generators(set, simplex);
        if (generators.generators != std::vector<int>{0, 1})
            outcome.fail("minimal generators of " + simplex_text(simplex) +
                         " are not {1111, 2222}");
    }
    outcome.require(approx_equivalent(set, sigma, tau), "sigma !~ tau");
    outcome.require(approx_equivalent(set, sigma, theta), "sigma !~ theta");
}

// ---------------------------------------------------------------- 5

void criterion_isomorphisms(Outcome& outcome) {
    const StringSet s1 = StringSet::discrete(3, 5, {ds("11113", 3), ds("22223", 3), ds("33333", 3)});
    const StringSet s2 = StringSet::discrete(3, 5, {ds("11113", 3), ds("22223", 3), ds("33122", 3)});
    const auto mapping = filtration_isomorphism(build_filtration(s1, Mode::Discrete),
                                                build_filtration(s2, Mode::Discrete));
    outcome.require(mapping.has_value(), "no filtration isomorphism found");
    if (mapping)
        outcome.require(*mapping == std::vector<int>{0, 1, 2},
                        "mapping differs from s1->s1, s2->s2, s3->s4");
    outcome.require(!hamming_isomorphism(s1, s2).has_value(),
                    "an isometry was found although none exists");
}

// ---------------------------------------------------------------- 6 & 7

struct SeparationCase {
    StringSet set;
    SeparationResult result;
};

const std::vector<SeparationCase>& separation_suite() {
    static std::vector<SeparationCase> cases = [] {
        std::vector<SeparationCase> out;
        std::mt19937 rng(2024);
        std::uniform_int_distribution<int> letter_count(2, 4), length(4, 6), size(3, 6);
        for (int trial = 0; trial < 20; ++trial) {
            const int n = letter_count(rng), l = length(rng), m = size(rng);
            std::vector<DiscreteString> elements;
            std::uniform_int_distribution<int> letter(1, n);
            while (static_cast<int>(elements.size()) < m) {
                DiscreteString s;
                s.alphabet = n;
                for (int i = 0; i < l; ++i) s.symbols.push_back(letter(rng));
                if (std::find(elements.begin(), elements.end(), s) == elements.end())
                    elements.push_back(std::move(s));
            }
            StringSet set = StringSet::discrete(n, l, std::move(elements));
            SeparationResult result = separate_radii(set, Rational(1, 10));
            out.push_back(SeparationCase{std::move(set), std::move(result)});
        }
        StringSet worked = example21();
        SeparationResult result = separate_radii(worked, Rational(1, 10));
        out.push_back(SeparationCase{std::move(worked), std::move(result)});
        return out;
    }();
    return cases;
}

void criterion_separation(Outcome& outcome) {
    int index = 0;
    for (const auto& item : separation_suite()) {
        ++index;
        const std::string tag = "set " + std::to_string(index) + ": ";
        const int m = item.set.size();
        const VertexMask all = (VertexMask(1) << m) - 1;
        outcome.require(static_cast<int>(item.result.steps.size()) <= m,
                        tag + "more steps than vertices");

        for (VertexMask mask = 1; mask <= all; ++mask) {
            const Rational shift =
                item.result.separated_radii[mask] - item.result.original_radii[mask];
            if (shift < 0 || shift >= item.result.epsilon) {
                outcome.fail(tag + "shift of " + simplex_text(Simplex::from_mask(mask)) +
                             " is " + rational_str(shift));
                break;
            }
        }
        bool distinct = true;
        for (VertexMask a = 1; a <= all && distinct; ++a)
            for (VertexMask b = a + 1; b <= all && distinct; ++b) {
                if (item.result.separated_radii[a] != item.result.separated_radii[b]) continue;
                if (item.result.separated_radii[a] == 0) continue;  // vertices stay at 0
                if (item.result.generator_masks[a] != item.result.generator_masks[b]) {
                    outcome.fail(tag + "non-equivalent simplices " +
                                 simplex_text(Simplex::from_mask(a)) + " and " +
                                 simplex_text(Simplex::from_mask(b)) + " share radius " +
                                 rational_str(item.result.separated_radii[a]));
                    distinct = false;
                }
            }
        const Filtration f = filtration_from_radius_table(
            item.result.separated, Mode::Generalized, item.result.separated_radii);
        const PersistenceResult p = compute_persistence(f);
        if (!is_morse(f, p)) {
            // Name the offending level: an equivalence class that changes
            // homology twice at once (separation cannot split such classes,
            // since no vertex distinguishes their minimal generators).
            std::string detail = tag + "separated set is not Morse";
            std::map<Rational, int> events;
            for (int k = 0; k <= p.barcodes.max_dimension(); ++k)
                for (const Bar& bar : p.barcodes.dimension(k)) {
                    if (bar.zero_length()) continue;
                    if (bar.birth > 0) ++events[bar.birth];
                    if (bar.finite()) ++events[*bar.death];
                }
            for (const auto& [level, count] : events)
                if (count > 1)
                    detail += "; " + std::to_string(count) + " events at level " +
                              rational_str(level) + " inside one ~-class";
            outcome.fail(detail);
        }
    }
}

void criterion_stability(Outcome& outcome) {
    int index = 0;
    for (const auto& item : separation_suite()) {
        ++index;
        const Filtration before = filtration_from_radius_table(
            item.result.original, Mode::Generalized, item.result.original_radii);
        const Filtration after = filtration_from_radius_table(
            item.result.separated, Mode::Generalized, item.result.separated_radii);
        const PersistenceResult pb = compute_persistence(before);
        const PersistenceResult pa = compute_persistence(after);
        const int top = std::max(pb.barcodes.max_dimension(), pa.barcodes.max_dimension());
        for (int k = 0; k <= top; ++k) {
            const BottleneckResult d =
                barcode_bottleneck(pb.barcodes.dimension(k), pa.barcodes.dimension(k));
            if (d.is_infinite || d.delta > item.result.epsilon)
                outcome.fail("set " + std::to_string(index) + ": d_BOT in dimension " +
                             std::to_string(k) + " exceeds epsilon");
        }
    }
}

// ---------------------------------------------------------------- 8

void criterion_class_invariance(Outcome& outcome) {
    const std::vector<StringSet> instances{
        StringSet::discrete(2, 4, {ds("1111", 2), ds("2222", 2), ds("1212", 2)}),
        StringSet::discrete(3, 4, {ds("1111", 3), ds("2222", 3), ds("1212", 3), ds("3333", 3)})};
    int index = 0;
    for (const StringSet& set : instances) {
        ++index;
        const ClassInvariance report =
            equivalent_class_invariance(separate_radii(set, Rational(1, 10)));
        outcome.require(!report.vacuous,
                        "instance " + std::to_string(index) + " has no multi-member class");
        if (!report.holds) {
            std::string dims;
            for (int d : report.disagreeing_dimensions) dims += std::to_string(d) + " ";
            outcome.fail("instance " + std::to_string(index) +
                         ": barcodes disagree in dimensions " + dims);
        }
    }
}

// ---------------------------------------------------------------- 9

void criterion_bottleneck_oracle(Outcome& outcome) {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> count(0, 5), endpoint(0, 9), stretch(1, 7);
    auto random_barcode = [&] {
        std::vector<Interval> bars;
        const int total = count(rng);
        for (int i = 0; i < total; ++i) {
            const int birth = endpoint(rng);
            bars.push_back(Interval{Rational(birth), Rational(birth + stretch(rng))});
        }
        return bars;
    };
    // Enumeration over all injections plus diagonal assignments.
    std::function<Rational(const std::vector<Interval>&, const std::vector<Interval>&,
                           std::vector<int>&, std::vector<bool>&, std::size_t)>
        enumerate = [&](const std::vector<Interval>& left, const std::vector<Interval>& right,
                        std::vector<int>& assignment, std::vector<bool>& used,
                        std::size_t i) -> Rational {
        if (i == left.size()) {
            Rational worst(0);
            for (std::size_t a = 0; a < left.size(); ++a) {
                Rational cost =
                    assignment[a] < 0
                        ? left[a].length() / 2
                        : std::max(rational_abs(left[a].birth - right[assignment[a]].birth),
                                   rational_abs(left[a].death - right[assignment[a]].death));
                if (cost > worst) worst = cost;
            }
            for (std::size_t b = 0; b < right.size(); ++b)
                if (!used[b] && right[b].length() / 2 > worst) worst = right[b].length() / 2;
            return worst;
        }
        assignment[i] = -1;
        Rational best = enumerate(left, right, assignment, used, i + 1);
        for (std::size_t b = 0; b < right.size(); ++b) {
            if (used[b]) continue;
            used[b] = true;
            assignment[i] = static_cast<int>(b);
            const Rational value = enumerate(left, right, assignment, used, i + 1);
            if (value < best) best = value;
            used[b] = false;
        }
        assignment[i] = -1;
        return best;
    };

    for (int trial = 0; trial < 100; ++trial) {
        const auto left = random_barcode(), right = random_barcode();
        const Rational computed = bottleneck_matching(left, right).delta;
        std::vector<int> assignment(left.size(), -1);
        std::vector<bool> used(right.size(), false);
        const Rational expected = enumerate(left, right, assignment, used, 0);
        if (computed != expected) {
            outcome.fail("trial " + std::to_string(trial) + ": bottleneck " +
                         rational_str(computed) + " vs enumeration " + rational_str(expected));
            return;
        }
    }
}

// ---------------------------------------------------------------- 10

void criterion_isometry_invariance(Outcome& outcome) {
    std::mt19937 rng(777);
    const std::vector<std::tuple<int, int, int>> shapes{
        {2, 4, 2}, {3, 4, 3}, {2, 4, 3}, {4, 5, 3}, {3, 5, 4},
        {2, 4, 4}, {4, 4, 4}, {3, 6, 4}, {2, 6, 4}, {3, 4, 4}};
    int with_higher_dimensions = 0;
    int index = 0;
    for (const auto& [n, l, m] : shapes) {
        ++index;
        std::vector<DiscreteString> elements;
        std::uniform_int_distribution<int> letter(1, n);
        while (static_cast<int>(elements.size()) < m) {
            DiscreteString s;
            s.alphabet = n;
            for (int i = 0; i < l; ++i) s.symbols.push_back(letter(rng));
            if (std::find(elements.begin(), elements.end(), s) == elements.end())
                elements.push_back(std::move(s));
        }
        const StringSet a = StringSet::discrete(n, l, std::move(elements));

        HammingIsometry phi;
        phi.source_position.resize(l);
        for (int i = 0; i < l; ++i) phi.source_position[i] = i;
        std::shuffle(phi.source_position.begin(), phi.source_position.end(), rng);
        for (int q = 0; q < l; ++q) {
            std::vector<int> letters(n);
            for (int x = 0; x < n; ++x) letters[x] = x + 1;
            std::shuffle(letters.begin(), letters.end(), rng);
            phi.letter_map.push_back(std::move(letters));
        }
        const StringSet b = phi.apply(a);

        const SimilarityReport self = d_new_distance(a, a, {});
        const SimilarityReport mapped = d_new_distance(a, b, {});
        if (self.d_new != 0)
            outcome.fail("set " + std::to_string(index) + ": d_new(A, A) = " +
                         rational_str(self.d_new));
        if (mapped.d_new != 0)
            outcome.fail("set " + std::to_string(index) + ": d_new(A, phi[A]) = " +
                         rational_str(mapped.d_new));
        Rational weight_sum = 0;
        for (const Rational& w : mapped.weights) weight_sum += w;
        outcome.require(weight_sum == 1, "weights do not sum to one");
        if (mapped.k0 >= 1) ++with_higher_dimensions;
    }
    outcome.notes.push_back("note: " + std::to_string(with_higher_dimensions) +
                            "/10 instances exercised dimensions beyond zero");
}

// ---------------------------------------------------------------- 11

void criterion_restriction(Outcome& outcome) {
    for (int n = 1; n <= 3; ++n) {
        for (int l = 1; l <= 4; ++l) {
            std::vector<DiscreteString> all;
            DiscreteString current;
            current.alphabet = n;
            current.symbols.assign(l, 1);
            for (;;) {
                all.push_back(current);
                int i = l - 1;
                while (i >= 0 && current.symbols[i] == n) current.symbols[i--] = 1;
                if (i < 0) break;
                ++current.symbols[i];
            }
            for (const auto& s : all)
                for (const auto& t : all)
                    if (gh_distance(embed(s), embed(t)) != hamming_distance(s, t)) {
                        outcome.fail("mismatch at n=" + std::to_string(n) +
                                     " l=" + std::to_string(l));
                        return;
                    }
        }
    }
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<void(Outcome&)> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "example-2.1-radius-table", 5.0, criterion_radius_table},
        {2, "example-barcodes-discrete", 5.0, criterion_barcodes},
        {3, "generalized-center-11-3", 10.0, criterion_center_example},
        {4, "minimal-generators", 5.0, criterion_generators},
        {5, "isomorphism-pair", 10.0, criterion_isomorphisms},
        {6, "separation-theorem-suite", 120.0, criterion_separation},
        {7, "separation-stability", 120.0, criterion_stability},
        {8, "equivalent-class-invariance", 30.0, criterion_class_invariance},
        {9, "bottleneck-oracle", 60.0, criterion_bottleneck_oracle},
        {10, "isometry-invariance", 120.0, criterion_isometry_invariance},
        {11, "restriction-property", 30.0, criterion_restriction},
    };

    std::optional<int> selected;
    if (argc > 1) selected = std::atoi(argv[1]);

    int failures = 0;
    for (const auto& criterion : criteria) {
        if (selected && *selected != criterion.id) continue;
        Outcome outcome;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(outcome);
        } catch (const std::exception& error) {
            outcome.fail(std::string("exception: ") + error.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > criterion.budget_seconds)
            outcome.fail("runtime " + std::to_string(seconds) + "s exceeds the budget");

        std::printf("%s  criterion %2d  %-28s  %6.2fs (budget %.0fs)\n",
                    outcome.pass ? "PASS" : "FAIL", criterion.id, criterion.name, seconds,
                    criterion.budget_seconds);
        for (const auto& note : outcome.notes) std::printf("      %s\n", note.c_str());
        if (!outcome.pass) ++failures;
    }
    if (!selected)
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
