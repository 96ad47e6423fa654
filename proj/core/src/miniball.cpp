#include "hammology/miniball.hpp"

#include <algorithm>
#include <map>

#include "hammology/linprog.hpp"

namespace hammology {

namespace {

std::vector<int> simplex_vertices(const StringSet& set, const Simplex& simplex) {
    for (int v : simplex.vertices)
        if (v < 0 || v >= set.size())
            throw InputError("simplex vertex id out of range");
    return simplex.vertices;
}

GeneralizedString average(const std::vector<const GeneralizedString*>& strings) {
    GeneralizedString out = *strings.front();
    const Rational k(static_cast<long>(strings.size()));
    for (int i = 0; i < out.length(); ++i)
        for (int j = 0; j < out.alphabet; ++j) {
            Rational sum = 0;
            for (const auto* s : strings) sum += s->positions[i][j];
            out.positions[i][j] = sum / k;
        }
    return out;
}

// Shared LP scaffolding for the three center problems. Positions where all
// relevant strings carry identical distributions contribute zero once the
// center copies them, so only the differing positions enter the program;
// center support is restricted to letters appearing in some relevant string
// (mass on unused letters can always be moved onto used ones without
// increasing any distance).
class CenterLp {
public:
    CenterLp(const StringSet& set, const std::vector<int>& relevant) : set_(set) {
        const int l = set.length();
        for (int i = 0; i < l; ++i) {
            bool all_equal = true;
            const auto& first = set.element(relevant.front()).positions[i];
            for (std::size_t v = 1; v < relevant.size() && all_equal; ++v)
                if (set.element(relevant[v]).positions[i] != first) all_equal = false;
            if (all_equal) continue;

            std::vector<int> letters;
            for (int j = 0; j < set.alphabet(); ++j) {
                bool used = false;
                for (int v : relevant)
                    if (set.element(v).positions[i][j] > 0) {
                        used = true;
                        break;
                    }
                if (used) letters.push_back(j);
            }
            active_.push_back(i);
            letters_.push_back(std::move(letters));
        }

        c_var_.resize(active_.size());
        for (std::size_t a = 0; a < active_.size(); ++a) {
            std::vector<LinearTerm> row;
            for (std::size_t t = 0; t < letters_[a].size(); ++t) {
                int var = lp.add_variable();
                c_var_[a].push_back(var);
                row.push_back({var, Rational(1)});
            }
            lp.add_constraint(std::move(row), RowSense::Eq, Rational(1));
        }
    }

    int active_count() const { return static_cast<int>(active_.size()); }

    // Linear terms summing the overlap of the center with y over the active
    // positions. Point masses read a single center weight; mixtures get a
    // bounded auxiliary variable per supported letter.
    std::vector<LinearTerm> overlap_terms(const GeneralizedString& y) {
        std::vector<LinearTerm> terms;
        for (std::size_t a = 0; a < active_.size(); ++a) {
            const int i = active_[a];
            int letter = 0;
            if (y.point_mass_at(i, &letter)) {
                terms.push_back({c_of(a, letter - 1), Rational(1)});
                continue;
            }
            for (std::size_t t = 0; t < letters_[a].size(); ++t) {
                const Rational& weight = y.positions[i][letters_[a][t]];
                if (weight == 0) continue;
                int m = lp.add_variable();
                lp.add_constraint({{m, Rational(1)}, {c_var_[a][t], Rational(-1)}},
                                  RowSense::LessEq, Rational(0));
                lp.add_constraint({{m, Rational(1)}}, RowSense::LessEq, weight);
                terms.push_back({m, Rational(1)});
            }
        }
        return terms;
    }

    GeneralizedString center_from(const LpSolution& solution, const GeneralizedString& pattern) const {
        GeneralizedString center = pattern;
        for (std::size_t a = 0; a < active_.size(); ++a) {
            auto& weights = center.positions[active_[a]];
            weights.assign(set_.alphabet(), Rational(0));
            for (std::size_t t = 0; t < letters_[a].size(); ++t)
                weights[letters_[a][t]] = solution.values[c_var_[a][t]];
        }
        return center;
    }

    LinearProgram lp;

private:
    int c_of(std::size_t a, int letter) const {
        for (std::size_t t = 0; t < letters_[a].size(); ++t)
            if (letters_[a][t] == letter) return c_var_[a][t];
        throw InternalError("point mass letter missing from the column support");
    }

    const StringSet& set_;
    std::vector<int> active_;
    std::vector<std::vector<int>> letters_;
    std::vector<std::vector<int>> c_var_;
};

LpSolution solve_or_throw(const LinearProgram& lp, const char* what) {
    LpSolution solution = solve(lp);
    if (solution.status != LpStatus::Optimal)
        throw InternalError(std::string("center LP unexpectedly ") +
                            (solution.status == LpStatus::Infeasible ? "infeasible" : "unbounded") +
                            " in " + what);
    return solution;
}

} // namespace

bool is_center(const GeneralizedString& c, const StringSet& set, const Simplex& simplex,
               const Rational& r) {
    for (int v : simplex_vertices(set, simplex))
        if (gh_distance(c, set.element(v)) > r) return false;
    return true;
}

RadiusCertificate discrete_simplex_radius(const StringSet& set, const Simplex& simplex) {
    if (set.mode() != Mode::Discrete)
        throw InputError("discrete radius needs a discrete string set");
    const auto vertices = simplex_vertices(set, simplex);
    const int k = static_cast<int>(vertices.size());
    const int l = set.length();

    if (k == 1) {
        const auto& s = set.discrete_element(vertices[0]);
        return RadiusCertificate{Rational(0), embed(s), s, Mode::Discrete};
    }

    int max_pair = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            max_pair = std::max(max_pair, hamming_distance(set.discrete_element(vertices[i]),
                                                           set.discrete_element(vertices[j])));

    // Column alphabets: only letters occurring at a position among the
    // simplex's strings can appear in an optimal center.
    std::vector<std::vector<int>> columns(l);
    std::vector<int> min_increment(l, 0);
    for (int i = 0; i < l; ++i) {
        std::map<int, int> counts;
        for (int v : vertices) ++counts[set.discrete_element(v).symbols[i]];
        int best = 0;
        for (const auto& [letter, count] : counts) {
            columns[i].push_back(letter);
            best = std::max(best, count);
        }
        min_increment[i] = k - best;
    }
    std::vector<int> suffix_min(l + 1, 0);
    for (int i = l - 1; i >= 0; --i) suffix_min[i] = suffix_min[i + 1] + min_increment[i];

    std::vector<int> chosen(l, 0), mismatches(k, 0);
    auto feasible = [&](int r) {
        auto dfs = [&](auto&& self, int pos, int total) -> bool {
            if (pos == l) return true;
            if (total + suffix_min[pos] > k * r) return false;
            for (int letter : columns[pos]) {
                bool ok = true;
                int added = 0;
                for (int v = 0; v < k; ++v) {
                    if (set.discrete_element(vertices[v]).symbols[pos] != letter) {
                        ++mismatches[v];
                        ++added;
                        if (mismatches[v] > r) ok = false;
                    }
                }
                if (ok && self(self, pos + 1, total + added)) {
                    chosen[pos] = letter;
                    return true;
                }
                for (int v = 0; v < k; ++v)
                    if (set.discrete_element(vertices[v]).symbols[pos] != letter) --mismatches[v];
            }
            return false;
        };
        std::fill(mismatches.begin(), mismatches.end(), 0);
        return dfs(dfs, 0, 0);
    };

    int lo = (max_pair + 1) / 2, hi = max_pair;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (feasible(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    if (!feasible(lo)) throw InternalError("closest-string search lost its upper bound");

    DiscreteString center{set.alphabet(), chosen};
    RadiusCertificate cert{Rational(lo), embed(center), center, Mode::Discrete};
    if (!is_center(cert.center, set, simplex, cert.radius))
        throw InternalError("closest-string certificate failed verification");
    return cert;
}

RadiusCertificate generalized_simplex_radius(const StringSet& set, const Simplex& simplex) {
    const auto vertices = simplex_vertices(set, simplex);

    if (vertices.size() == 1) {
        return RadiusCertificate{Rational(0), set.element(vertices[0]), std::nullopt,
                                 Mode::Generalized};
    }
    if (vertices.size() == 2) {
        // The pointwise midpoint realizes half the distance exactly; the
        // triangle inequality rules out anything smaller.
        const auto& s = set.element(vertices[0]);
        const auto& t = set.element(vertices[1]);
        RadiusCertificate cert{gh_distance(s, t) / 2, average({&s, &t}), std::nullopt,
                               Mode::Generalized};
        if (!is_center(cert.center, set, simplex, cert.radius))
            throw InternalError("midpoint certificate failed verification");
        return cert;
    }

    CenterLp builder(set, vertices);
    const int r = builder.lp.add_variable();
    builder.lp.set_objective(r, Rational(1));
    for (int v : vertices) {
        auto terms = builder.overlap_terms(set.element(v));
        terms.push_back({r, Rational(1)});
        builder.lp.add_constraint(std::move(terms), RowSense::GreaterEq,
                                  Rational(builder.active_count()));
    }
    LpSolution solution = solve_or_throw(builder.lp, "generalized_simplex_radius");

    RadiusCertificate cert{solution.objective,
                           builder.center_from(solution, set.element(vertices[0])), std::nullopt,
                           Mode::Generalized};
    if (!is_center(cert.center, set, simplex, cert.radius))
        throw InternalError("radius LP certificate failed verification");
    return cert;
}

RadiusCertificate simplex_radius(const StringSet& set, const Simplex& simplex) {
    return set.mode() == Mode::Discrete ? discrete_simplex_radius(set, simplex)
                                        : generalized_simplex_radius(set, simplex);
}

namespace {

// Minimum of d_GH(c, target) over the center polytope {c : d_GH(c, y) <= r
// for all y in sigma}, together with an optimal center.
std::pair<Rational, GeneralizedString> polytope_distance(const StringSet& set,
                                                         const std::vector<int>& vertices,
                                                         const Rational& r, int target) {
    std::vector<int> relevant = vertices;
    if (std::find(relevant.begin(), relevant.end(), target) == relevant.end())
        relevant.push_back(target);

    CenterLp builder(set, relevant);
    const Rational base(builder.active_count());

    std::vector<LinearTerm> objective_terms;
    bool target_constrained = false;
    for (int v : vertices) {
        auto terms = builder.overlap_terms(set.element(v));
        if (v == target) {
            objective_terms = terms;
            target_constrained = true;
        }
        builder.lp.add_constraint(std::move(terms), RowSense::GreaterEq, base - r);
    }
    if (!target_constrained) objective_terms = builder.overlap_terms(set.element(target));

    for (const auto& [var, coeff] : objective_terms)
        builder.lp.set_objective(var, -coeff);

    LpSolution solution = solve_or_throw(builder.lp, "polytope_distance");
    Rational distance = base + solution.objective;  // objective minimized -overlap
    GeneralizedString center = builder.center_from(solution, set.element(vertices.front()));
    return {distance, center};
}

} // namespace

GeneratorSet minimal_generators_at(const StringSet& set, const Simplex& simplex,
                                   const Rational& radius) {
    const auto vertices = simplex_vertices(set, simplex);

    if (vertices.size() == 1) {
        return GeneratorSet{simplex, vertices, set.element(vertices[0]), Rational(0)};
    }
    if (vertices.size() == 2) {
        // Both endpoints sit on the boundary of every miniball: the triangle
        // inequality forces d(c, s) = d(c, t) = d(s, t)/2 for any center.
        const auto& s = set.element(vertices[0]);
        const auto& t = set.element(vertices[1]);
        return GeneratorSet{simplex, vertices, average({&s, &t}), gh_distance(s, t) / 2};
    }

    std::vector<int> generators;
    std::vector<GeneralizedString> interior_centers;
    for (int x : vertices) {
        auto [distance, center] = polytope_distance(set, vertices, radius, x);
        if (distance > radius)
            throw InternalError("vertex farther than the radius from every center");
        if (distance == radius)
            generators.push_back(x);
        else
            interior_centers.push_back(std::move(center));
    }
    if (generators.empty())
        throw InternalError("minimal generator set cannot be empty");

    GeneralizedString witness;
    if (!interior_centers.empty()) {
        // Averaging centers that pull each non-generator strictly inside
        // yields one ball with exactly the generators on its boundary.
        std::vector<const GeneralizedString*> pointers;
        for (const auto& c : interior_centers) pointers.push_back(&c);
        witness = average(pointers);
    } else {
        witness = generalized_simplex_radius(set, simplex).center;
    }
    for (int x : vertices) {
        const Rational d = gh_distance(witness, set.element(x));
        const bool generator = std::find(generators.begin(), generators.end(), x) != generators.end();
        if (generator ? (d != radius) : (d >= radius))
            throw InternalError("generator witness failed its boundary check");
    }
    return GeneratorSet{simplex, std::move(generators), std::move(witness), radius};
}

GeneratorSet minimal_generators(const StringSet& set, const Simplex& simplex) {
    if (simplex.size() <= 2) return minimal_generators_at(set, simplex, Rational(0));
    return minimal_generators_at(set, simplex, generalized_simplex_radius(set, simplex).radius);
}

bool approx_equivalent(const StringSet& set, const Simplex& sigma, const Simplex& tau) {
    return minimal_generators(set, sigma).generator_mask() ==
           minimal_generators(set, tau).generator_mask();
}

Rational center_set_distance_at(const StringSet& set, const Simplex& simplex, int vertex,
                                const Rational& radius) {
    const auto vertices = simplex_vertices(set, simplex);
    if (vertex < 0 || vertex >= set.size()) throw InputError("vertex id out of range");
    if (vertices.size() == 1)
        return gh_distance(set.element(vertices[0]), set.element(vertex));
    return polytope_distance(set, vertices, radius, vertex).first;
}

Rational center_set_distance(const StringSet& set, const Simplex& simplex, int vertex) {
    const Rational radius =
        simplex.size() == 1 ? Rational(0) : generalized_simplex_radius(set, simplex).radius;
    return center_set_distance_at(set, simplex, vertex, radius);
}

} // namespace hammology
