#include "hammology/strings.hpp"

#include <algorithm>
#include <cctype>

namespace hammology {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw InputError("empty rational literal");
    std::size_t slash = text.find('/');
    auto check_int = [&](std::size_t from, std::size_t to) {
        if (from >= to) throw InputError("malformed rational '" + text + "'");
        std::size_t i = from;
        if (text[i] == '-') ++i;
        if (i >= to) throw InputError("malformed rational '" + text + "'");
        for (; i < to; ++i)
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw InputError("malformed rational '" + text + "'");
    };
    check_int(0, slash == std::string::npos ? text.size() : slash);
    if (slash != std::string::npos) check_int(slash + 1, text.size());

    Rational value;
    if (mpq_set_str(value.get_mpq_t(), text.c_str(), 10) != 0)
        throw InputError("malformed rational '" + text + "'");
    if (mpz_sgn(mpq_denref(value.get_mpq_t())) == 0)
        throw InputError("zero denominator in '" + text + "'");
    value.canonicalize();
    return value;
}

std::string rational_str(const Rational& value) {
    Rational canonical = value;
    canonical.canonicalize();
    return canonical.get_str();
}

bool GeneralizedString::point_mass_at(int position, int* letter) const {
    const auto& weights = positions[position];
    for (int j = 0; j < alphabet; ++j) {
        if (weights[j] == 1) {
            if (letter) *letter = j + 1;
            return true;
        }
        if (weights[j] != 0) return false;
    }
    return false;
}

int hamming_distance(const DiscreteString& s, const DiscreteString& t) {
    if (s.length() != t.length() || s.alphabet != t.alphabet)
        throw InputError("hamming distance needs equal lengths and alphabets");
    int count = 0;
    for (int i = 0; i < s.length(); ++i)
        if (s.symbols[i] != t.symbols[i]) ++count;
    return count;
}

Rational gh_distance(const GeneralizedString& s, const GeneralizedString& t) {
    if (s.length() != t.length() || s.alphabet != t.alphabet)
        throw InputError("generalized Hamming distance needs equal shapes");
    Rational total = 0;
    for (int i = 0; i < s.length(); ++i) {
        Rational overlap = 0;
        for (int j = 0; j < s.alphabet; ++j)
            overlap += std::min(s.positions[i][j], t.positions[i][j]);
        total += 1 - overlap;
    }
    return total;
}

GeneralizedString embed(const DiscreteString& s) {
    GeneralizedString out;
    out.alphabet = s.alphabet;
    out.positions.resize(s.length());
    for (int i = 0; i < s.length(); ++i) {
        out.positions[i].assign(s.alphabet, Rational(0));
        out.positions[i][s.symbols[i] - 1] = 1;
    }
    return out;
}

namespace {

void validate_ambient(int alphabet, int length) {
    if (alphabet < 1) throw InputError("alphabet size must be at least 1");
    if (length < 1) throw InputError("string length must be at least 1");
}

void validate_discrete(const DiscreteString& s, int alphabet, int length) {
    if (s.alphabet != alphabet || s.length() != length)
        throw InputError("string does not match the ambient (n, l)");
    for (int symbol : s.symbols)
        if (symbol < 1 || symbol > alphabet)
            throw InputError("letter out of range 1..n");
}

void validate_generalized(const GeneralizedString& s, int alphabet, int length) {
    if (s.alphabet != alphabet || s.length() != length)
        throw InputError("generalized string does not match the ambient (n, l)");
    for (const auto& weights : s.positions) {
        if (static_cast<int>(weights.size()) != alphabet)
            throw InputError("distribution arity does not match the alphabet");
        Rational sum = 0;
        for (const Rational& w : weights) {
            if (w < 0 || w > 1) throw InputError("distribution weight outside [0,1]");
            sum += w;
        }
        if (sum != 1) throw InputError("distribution weights must sum to exactly 1");
    }
}

template <typename T>
void reject_duplicates(const std::vector<T>& elements) {
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = i + 1; j < elements.size(); ++j)
            if (elements[i] == elements[j])
                throw InputError("duplicate strings in a set are rejected");
}

} // namespace

StringSet StringSet::discrete(int alphabet, int length, std::vector<DiscreteString> elements) {
    validate_ambient(alphabet, length);
    if (elements.empty()) throw InputError("a string set needs at least one element");
    for (const auto& s : elements) validate_discrete(s, alphabet, length);
    reject_duplicates(elements);

    StringSet set;
    set.alphabet_ = alphabet;
    set.length_ = length;
    set.mode_ = Mode::Discrete;
    set.elements_.reserve(elements.size());
    for (const auto& s : elements) set.elements_.push_back(embed(s));
    set.discrete_ = std::move(elements);
    return set;
}

StringSet StringSet::generalized(int alphabet, int length, std::vector<GeneralizedString> elements) {
    validate_ambient(alphabet, length);
    if (elements.empty()) throw InputError("a string set needs at least one element");
    // GMP comparisons assume canonical form; normalize caller-built weights.
    for (auto& s : elements)
        for (auto& weights : s.positions)
            for (auto& w : weights) w.canonicalize();
    for (const auto& s : elements) validate_generalized(s, alphabet, length);
    reject_duplicates(elements);

    StringSet set;
    set.alphabet_ = alphabet;
    set.length_ = length;
    set.mode_ = Mode::Generalized;
    set.elements_ = std::move(elements);
    return set;
}

const DiscreteString& StringSet::discrete_element(int vertex) const {
    if (mode_ != Mode::Discrete)
        throw InputError("discrete elements are only available in discrete mode");
    return discrete_[vertex];
}

Rational StringSet::distance(int v, int w) const {
    if (mode_ == Mode::Discrete)
        return Rational(hamming_distance(discrete_[v], discrete_[w]));
    return gh_distance(elements_[v], elements_[w]);
}

StringSet StringSet::embedded() const {
    if (mode_ == Mode::Generalized) return *this;
    return StringSet::generalized(alphabet_, length_, elements_);
}

Rational hausdorff_distance(const StringSet& a, const StringSet& b) {
    if (a.alphabet() != b.alphabet() || a.length() != b.length())
        throw InputError("hausdorff distance needs a common ambient space");
    const bool discrete = a.mode() == Mode::Discrete && b.mode() == Mode::Discrete;

    auto cross = [&](int v, int w) -> Rational {
        if (discrete)
            return Rational(hamming_distance(a.discrete_element(v), b.discrete_element(w)));
        return gh_distance(a.element(v), b.element(w));
    };

    Rational result = 0;
    auto directed = [&](const StringSet& from, const StringSet& to, bool a_to_b) {
        for (int v = 0; v < from.size(); ++v) {
            Rational best;
            bool first = true;
            for (int w = 0; w < to.size(); ++w) {
                Rational d = a_to_b ? cross(v, w) : cross(w, v);
                if (first || d < best) {
                    best = d;
                    first = false;
                }
            }
            if (best > result) result = best;
        }
    };
    directed(a, b, true);
    directed(b, a, false);
    return result;
}

} // namespace hammology
