#include <doctest.h>

#include <random>

#include "hammology/strings.hpp"
#include "oracles.hpp"

using namespace hammology;

namespace {

DiscreteString ds(const std::string& digits, int alphabet) {
    DiscreteString s;
    s.alphabet = alphabet;
    for (char c : digits) s.symbols.push_back(c - '0');
    return s;
}

GeneralizedString uniformish(std::mt19937& rng, int n, int l, int denominator) {
    GeneralizedString s;
    s.alphabet = n;
    std::uniform_int_distribution<int> cut(0, denominator);
    for (int i = 0; i < l; ++i) {
        std::vector<int> parts(n, 0);
        int remaining = denominator;
        for (int j = 0; j + 1 < n; ++j) {
            std::uniform_int_distribution<int> take(0, remaining);
            parts[j] = take(rng);
            remaining -= parts[j];
        }
        parts[n - 1] = remaining;
        std::vector<Rational> weights(n);
        for (int j = 0; j < n; ++j) {
            weights[j] = Rational(parts[j], denominator);
            weights[j].canonicalize();
        }
        s.positions.push_back(std::move(weights));
    }
    return s;
}

} // namespace

TEST_SUITE_BEGIN("metrics");

TEST_CASE("rational parsing and printing") {
    CHECK(rational_str(parse_rational("2/4")) == "1/2");
    CHECK(rational_str(parse_rational("-6/4")) == "-3/2");
    CHECK(rational_str(parse_rational("7")) == "7");
    CHECK(parse_rational("11/3") == Rational(11, 3));
    CHECK_THROWS_AS(parse_rational(""), InputError);
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("x/2"), InputError);
    CHECK_THROWS_AS(parse_rational("1.5"), InputError);
}

TEST_CASE("hamming distance") {
    const auto s1 = ds("12244131", 4), s3 = ds("32143431", 4);
    CHECK(hamming_distance(s1, s1) == 0);
    CHECK(hamming_distance(s1, s3) == 4);
    CHECK(hamming_distance(s3, s1) == 4);
    CHECK(hamming_distance(ds("11113", 3), ds("33122", 3)) == 4);
    CHECK_THROWS_AS(hamming_distance(ds("11", 2), ds("111", 2)), InputError);
    CHECK_THROWS_AS(hamming_distance(ds("11", 2), ds("11", 3)), InputError);
}

TEST_CASE("embedding") {
    const GeneralizedString one = embed(ds("1", 2));
    CHECK(one.positions == std::vector<std::vector<Rational>>{{Rational(1), Rational(0)}});
    const GeneralizedString two = embed(ds("12", 2));
    CHECK(two.positions[0] == std::vector<Rational>{Rational(1), Rational(0)});
    CHECK(two.positions[1] == std::vector<Rational>{Rational(0), Rational(1)});
    int letter = 0;
    CHECK(two.point_mass_at(1, &letter));
    CHECK(letter == 2);
}

TEST_CASE("generalized Hamming distance restricts to the Hamming distance") {
    const auto s1 = ds("12244131", 4), s3 = ds("32143431", 4);
    CHECK(gh_distance(embed(s1), embed(s1)) == 0);
    CHECK(gh_distance(embed(s1), embed(s3)) == 4);

    // Exhaustive over S(2,3).
    std::vector<DiscreteString> all;
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
            for (int c = 1; c <= 2; ++c)
                all.push_back(DiscreteString{2, {a, b, c}});
    for (const auto& s : all)
        for (const auto& t : all)
            CHECK(gh_distance(embed(s), embed(t)) == hamming_distance(s, t));
}

TEST_CASE("the worked center is at distance 11/3 from its vertices") {
    GeneralizedString b;
    b.alphabet = 3;
    for (int i = 0; i < 5; ++i)
        b.positions.push_back({Rational(7, 15), Rational(4, 15), Rational(4, 15)});
    b.positions.push_back({Rational(1), Rational(0), Rational(0)});
    for (const char* text : {"111112", "111113", "222221", "333331"})
        CHECK(gh_distance(b, embed(ds(text, 3))) == Rational(11, 3));
}

TEST_CASE("metric axioms hold exactly on random triples") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 3, l = 1 + trial % 4;
        const GeneralizedString x = uniformish(rng, n, l, 12);
        const GeneralizedString y = uniformish(rng, n, l, 12);
        const GeneralizedString z = uniformish(rng, n, l, 12);
        const Rational xy = gh_distance(x, y);
        CHECK(xy == gh_distance(y, x));
        CHECK(xy >= 0);
        CHECK(xy <= l);
        CHECK(gh_distance(x, x) == 0);
        CHECK(xy <= gh_distance(x, z) + gh_distance(z, y));
        if (x == y) CHECK(xy == 0);
        if (xy == 0) CHECK(x == y);
    }
}

TEST_CASE("hausdorff distance") {
    const StringSet a = StringSet::discrete(2, 2, {ds("11", 2), ds("22", 2)});
    const StringSet b = StringSet::discrete(2, 2, {ds("12", 2), ds("22", 2)});
    CHECK(hausdorff_distance(a, a) == 0);
    CHECK(hausdorff_distance(a, b) == 1);
    CHECK(hausdorff_distance(b, a) == 1);

    const StringSet sa = StringSet::discrete(3, 5, {ds("11113", 3)});
    const StringSet sb = StringSet::discrete(3, 5, {ds("33122", 3)});
    CHECK(hausdorff_distance(sa, sb) == 4);

    CHECK_THROWS_AS(hausdorff_distance(a, sa), InputError);
}

TEST_CASE("hausdorff is zero exactly for equal sets") {
    // All one- and two-element subsets of S(2,2).
    std::vector<DiscreteString> space;
    for (int x = 1; x <= 2; ++x)
        for (int y = 1; y <= 2; ++y) space.push_back(DiscreteString{2, {x, y}});
    std::vector<StringSet> sets;
    for (std::size_t i = 0; i < space.size(); ++i) {
        sets.push_back(StringSet::discrete(2, 2, {space[i]}));
        for (std::size_t j = i + 1; j < space.size(); ++j)
            sets.push_back(StringSet::discrete(2, 2, {space[i], space[j]}));
    }
    for (const auto& a : sets)
        for (const auto& b : sets) {
            std::vector<DiscreteString> ea, eb;
            for (int v = 0; v < a.size(); ++v) ea.push_back(a.discrete_element(v));
            for (int v = 0; v < b.size(); ++v) eb.push_back(b.discrete_element(v));
            std::sort(ea.begin(), ea.end(), [](auto& x, auto& y) { return x.symbols < y.symbols; });
            std::sort(eb.begin(), eb.end(), [](auto& x, auto& y) { return x.symbols < y.symbols; });
            const bool equal = ea == eb;
            CHECK((hausdorff_distance(a, b) == 0) == equal);
        }
}

TEST_CASE("string set validation") {
    CHECK_THROWS_AS(StringSet::discrete(2, 2, {ds("11", 2), ds("11", 2)}), InputError);
    CHECK_THROWS_AS(StringSet::discrete(2, 2, {}), InputError);
    CHECK_THROWS_AS(StringSet::discrete(2, 2, {ds("13", 2)}), InputError);
    CHECK_THROWS_AS(StringSet::discrete(2, 2, {ds("111", 2)}), InputError);

    GeneralizedString bad;
    bad.alphabet = 2;
    bad.positions = {{Rational(1, 2), Rational(1, 3)}};
    CHECK_THROWS_AS(StringSet::generalized(2, 1, {bad}), InputError);
    bad.positions = {{Rational(3, 2), Rational(-1, 2)}};
    CHECK_THROWS_AS(StringSet::generalized(2, 1, {bad}), InputError);
}

TEST_SUITE_END();
