#include "hammology/matching.hpp"

#include <algorithm>
#include <map>

namespace hammology {

Rational single_bar_bottleneck(const Interval& a, const Interval& b) {
    const Rational match = std::max(rational_abs(a.birth - b.birth), rational_abs(a.death - b.death));
    const Rational diagonal = std::max(a.length() / 2, b.length() / 2);
    return std::min(match, diagonal);
}

namespace {

bool bipartite_match(const std::vector<std::vector<int>>& adjacency, int right_count,
                     std::vector<int>& match_right) {
    match_right.assign(right_count, -1);
    std::vector<int> seen(right_count, -1);
    auto augment = [&](auto&& self, int left, int stamp) -> bool {
        for (int right : adjacency[left]) {
            if (seen[right] == stamp) continue;
            seen[right] = stamp;
            if (match_right[right] == -1 || self(self, match_right[right], stamp)) {
                match_right[right] = left;
                return true;
            }
        }
        return false;
    };
    for (std::size_t left = 0; left < adjacency.size(); ++left)
        if (!augment(augment, static_cast<int>(left), static_cast<int>(left))) return false;
    return true;
}

Rational pair_cost(const Interval& a, const Interval& b) {
    return std::max(rational_abs(a.birth - b.birth), rational_abs(a.death - b.death));
}

// Feasibility of a delta-matching: left bars and right-diagonal slots versus
// right bars and left-diagonal slots; a perfect matching uses each real bar
// once, either paired within delta or killed when its half-length fits.
bool feasible_matching(const std::vector<Interval>& left, const std::vector<Interval>& right,
                       const Rational& delta, BarMatching* out) {
    const int nl = static_cast<int>(left.size());
    const int nr = static_cast<int>(right.size());
    std::vector<std::vector<int>> adjacency(nl + nr);
    for (int i = 0; i < nl; ++i) {
        for (int j = 0; j < nr; ++j)
            if (pair_cost(left[i], right[j]) <= delta) adjacency[i].push_back(j);
        if (left[i].length() <= 2 * delta) adjacency[i].push_back(nr + i);
    }
    for (int j = 0; j < nr; ++j) {
        if (right[j].length() <= 2 * delta) adjacency[nl + j].push_back(j);
        for (int i = 0; i < nl; ++i) adjacency[nl + j].push_back(nr + i);
    }

    std::vector<int> match_right;
    if (!bipartite_match(adjacency, nl + nr, match_right)) return false;
    if (out) {
        out->delta = delta;
        out->pairs.clear();
        out->left_unmatched.clear();
        out->right_unmatched.clear();
        std::vector<int> left_to(nl, -1);
        for (int right = 0; right < nl + nr; ++right) {
            const int l = match_right[right];
            if (l >= 0 && l < nl && right < nr) left_to[l] = right;
        }
        for (int i = 0; i < nl; ++i) {
            if (left_to[i] >= 0)
                out->pairs.push_back({i, left_to[i]});
            else
                out->left_unmatched.push_back(i);
        }
        std::vector<bool> right_used(nr, false);
        for (const auto& [i, j] : out->pairs) right_used[j] = true;
        for (int j = 0; j < nr; ++j)
            if (!right_used[j]) out->right_unmatched.push_back(j);
    }
    return true;
}

} // namespace

BarMatching bottleneck_matching(const std::vector<Interval>& left,
                                const std::vector<Interval>& right) {
    std::vector<Rational> candidates{Rational(0)};
    for (const auto& bar : left) candidates.push_back(bar.length() / 2);
    for (const auto& bar : right) candidates.push_back(bar.length() / 2);
    for (const auto& a : left)
        for (const auto& b : right) {
            candidates.push_back(rational_abs(a.birth - b.birth));
            candidates.push_back(rational_abs(a.death - b.death));
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // Feasibility is monotone in delta; the optimum is one of the candidates.
    std::size_t lo = 0, hi = candidates.size() - 1;
    if (!feasible_matching(left, right, candidates[hi], nullptr))
        throw InternalError("bottleneck feasibility must hold at the largest candidate");
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (feasible_matching(left, right, candidates[mid], nullptr))
            hi = mid;
        else
            lo = mid + 1;
    }
    BarMatching matching;
    if (!feasible_matching(left, right, candidates[lo], &matching))
        throw InternalError("bottleneck optimum lost between candidates");
    return matching;
}

BottleneckResult barcode_bottleneck(const std::vector<Bar>& left, const std::vector<Bar>& right) {
    std::vector<Interval> fl, fr;
    std::vector<Rational> il, ir;
    for (const Bar& bar : left) {
        if (bar.zero_length()) continue;
        if (bar.finite())
            fl.push_back({bar.birth, *bar.death});
        else
            il.push_back(bar.birth);
    }
    for (const Bar& bar : right) {
        if (bar.zero_length()) continue;
        if (bar.finite())
            fr.push_back({bar.birth, *bar.death});
        else
            ir.push_back(bar.birth);
    }
    if (il.size() != ir.size()) return BottleneckResult{true, Rational(0)};

    Rational delta = bottleneck_matching(fl, fr).delta;
    std::sort(il.begin(), il.end());
    std::sort(ir.begin(), ir.end());
    for (std::size_t i = 0; i < il.size(); ++i)
        delta = std::max(delta, rational_abs(il[i] - ir[i]));
    return BottleneckResult{false, delta};
}

namespace {

// Union-module queries shared by both sides of a registration.
class UnionContext {
public:
    UnionContext(const Filtration& filtration, const PersistenceResult& persistence, int dimension)
        : filtration_(filtration), persistence_(persistence), k_(dimension),
          bits_(filtration.entries().size()) {}

    BitColumn to_union_column(const Filtration& side, const std::vector<int>& ids,
                              const Chain& chain) const {
        BitColumn column(bits_);
        for (int e : chain.entries) {
            const Simplex& simplex = side.entries()[e].simplex;
            VertexMask mask = 0;
            for (int v : simplex.vertices) mask |= VertexMask(1) << ids[v];
            const int index = filtration_.entry_index(mask);
            if (index < 0) throw InternalError("side simplex missing from the union filtration");
            column.set(static_cast<std::size_t>(index));
        }
        return column;
    }

    /// Born at level b in the union: not a sum of a cycle from the previous
    /// level and a boundary at b.
    bool fresh_at(const BitColumn& cycle, const Rational& birth) const {
        const auto& levels = filtration_.levels();
        Rational prev(-1);
        for (const Rational& level : levels) {
            if (level >= birth) break;
            prev = level;
        }
        if (prev < 0) throw InternalError("no union level precedes the birth under test");

        Z2Echelon span(bits_);
        for (const Bar& bar : persistence_.barcodes.dimension(k_)) {
            if (bar.birth <= prev) span.insert(chain_to_column(bar.birth_cycle, bits_));
            if (bar.finite() && *bar.death <= birth)
                span.insert(chain_to_column(bar.representative, bits_));
        }
        return !span.contains(cycle);
    }

    /// Smallest union level at which the cycle becomes a boundary. The
    /// reduced death columns have pairwise distinct lows, so the expansion
    /// is unique and its largest death level is the answer.
    Rational death_level(BitColumn cycle) const {
        ensure_boundary_basis();
        Rational death(-1);
        while (!cycle.empty()) {
            const int low = cycle.low();
            auto it = boundary_by_low_.find(low);
            if (it == boundary_by_low_.end())
                throw InternalError("cycle never bounds in the full union complex");
            death = std::max(death, it->second.first);
            cycle.add(it->second.second);
        }
        if (death < 0) throw InternalError("empty cycle has no death level");
        return death;
    }

private:
    void ensure_boundary_basis() const {
        if (!boundary_by_low_.empty()) return;
        for (const Bar& bar : persistence_.barcodes.dimension(k_)) {
            if (!bar.finite()) continue;
            BitColumn column = chain_to_column(bar.representative, bits_);
            const int low = column.low();
            boundary_by_low_.emplace(low, std::make_pair(*bar.death, std::move(column)));
        }
    }

    const Filtration& filtration_;
    const PersistenceResult& persistence_;
    int k_;
    std::size_t bits_;
    mutable std::map<int, std::pair<Rational, BitColumn>> boundary_by_low_;
};

struct SideOutcome {
    std::vector<int> passing;            // candidate bars fresh in the union
    std::vector<Rational> union_deaths;  // aligned with passing
};

SideOutcome evaluate_side(const RegistrationSide& side, const UnionContext& context,
                          const Filtration& union_filtration, int dimension) {
    SideOutcome outcome;
    const auto& bars = side.persistence.barcodes.dimension(dimension);
    for (int index : side.bars) {
        const Bar& bar = bars[index];
        const Simplex& birth_simplex = side.filtration.entries()[bar.birth_entry].simplex;
        VertexMask union_mask = 0;
        for (int v : birth_simplex.vertices) union_mask |= VertexMask(1) << side.vertex_ids[v];
        if (union_filtration.radius_of(union_mask) != bar.birth)
            throw InternalError("simplex radius changed between side and union");

        BitColumn cycle = context.to_union_column(side.filtration, side.vertex_ids,
                                                  bar.representative);
        if (!context.fresh_at(cycle, bar.birth)) continue;
        outcome.passing.push_back(index);
        outcome.union_deaths.push_back(context.death_level(std::move(cycle)));
    }
    return outcome;
}

} // namespace

RegistrationReport register_cycles(const RegistrationSide& left, const RegistrationSide& right,
                                   const Filtration& union_filtration,
                                   const PersistenceResult& union_persistence, int dimension) {
    // Separated filtrations can still stack a birth and a death of one
    // equivalence class onto a shared level, so full Morse-ness is too
    // strong a gate; what the uniqueness argument needs is that no level
    // hosts two deaths.
    if (!single_termination(left.filtration, left.persistence) ||
        !single_termination(right.filtration, right.persistence) ||
        !single_termination(union_filtration, union_persistence))
        throw InputError("cycle registration needs unique death levels on both sides and the union");

    UnionContext context(union_filtration, union_persistence, dimension);
    const SideOutcome lo = evaluate_side(left, context, union_filtration, dimension);
    const SideOutcome ro = evaluate_side(right, context, union_filtration, dimension);

    // In a Morse union two fresh classes with one death level are one class,
    // so deaths are unique per side and a partner is unique when it exists.
    std::map<Rational, int> left_by_death, right_by_death;
    for (std::size_t i = 0; i < lo.passing.size(); ++i)
        if (!left_by_death.emplace(lo.union_deaths[i], lo.passing[i]).second)
            throw InternalError("two left cycles registered one union death");
    for (std::size_t i = 0; i < ro.passing.size(); ++i)
        if (!right_by_death.emplace(ro.union_deaths[i], ro.passing[i]).second)
            throw InternalError("two right cycles registered one union death");

    RegistrationReport report;
    report.dimension = dimension;
    std::vector<bool> left_taken(left.bars.size(), false), right_taken(right.bars.size(), false);
    for (const auto& [death, left_bar] : left_by_death) {
        auto it = right_by_death.find(death);
        if (it == right_by_death.end()) continue;
        report.pairs.push_back({left_bar, it->second, death});
    }
    auto mark = [](const std::vector<int>& bars, int bar) {
        return std::find(bars.begin(), bars.end(), bar) - bars.begin();
    };
    for (const auto& pair : report.pairs) {
        left_taken[mark(left.bars, pair.left_bar)] = true;
        right_taken[mark(right.bars, pair.right_bar)] = true;
    }
    for (std::size_t i = 0; i < left.bars.size(); ++i)
        if (!left_taken[i]) report.residual_left.push_back(left.bars[i]);
    for (std::size_t i = 0; i < right.bars.size(); ++i)
        if (!right_taken[i]) report.residual_right.push_back(right.bars[i]);
    return report;
}

Rational d0_distance(const BarcodeSet& a, const BarcodeSet& b) {
    auto finite_lengths = [](const BarcodeSet& barcodes) {
        std::vector<Rational> lengths;
        int infinite = 0;
        for (const Bar& bar : barcodes.dimension(0)) {
            if (bar.finite())
                lengths.push_back(*bar.death - bar.birth);
            else
                ++infinite;
        }
        if (infinite != 1)
            throw InternalError("a connected final complex has exactly one infinite bar");
        std::sort(lengths.begin(), lengths.end());
        return lengths;
    };
    const auto la = finite_lengths(a), lb = finite_lengths(b);
    if (la.size() != lb.size()) throw InputError("d_0 needs sets of equal cardinality");
    if (la.empty()) throw InputError("d_0 needs sets with at least two strings");
    Rational result = 0;
    for (std::size_t i = 0; i < la.size(); ++i)
        result = std::max(result, rational_abs(la[i] - lb[i]));
    return result;
}

SimilarityReport d_new_distance(const StringSet& a, const StringSet& b,
                                const SimilarityOptions& options) {
    if (a.size() != b.size()) throw InputError("d_new needs sets of equal cardinality");
    if (a.size() < 2) throw InputError("d_new needs at least two strings per set");
    if (a.alphabet() != b.alphabet() || a.length() != b.length())
        throw InputError("d_new needs a common ambient space");

    SimilarityReport report{.epsilon = Rational(0),
                            .k0 = 0,
                            .d0 = Rational(0),
                            .higher = {},
                            .weights = {},
                            .d_new = Rational(0),
                            .separation = separate_union(a, b, options.epsilon,
                                                         SeparationOptions{options.max_set_size}),
                            .original_a = {},
                            .original_b = {}};
    UnionSeparation& sep = report.separation;
    report.epsilon = sep.epsilon;

    // Side filtrations come from the union tables: radii are intrinsic to
    // the vertex strings, so restriction is a mask remap, not a recompute.
    const Filtration orig_a = filtration_from_radius_table(
        sep.original_side(sep.a_vertices), Mode::Generalized,
        sep.side_table(sep.unioned.original_radii, sep.a_vertices));
    const Filtration orig_b = filtration_from_radius_table(
        sep.original_side(sep.b_vertices), Mode::Generalized,
        sep.side_table(sep.unioned.original_radii, sep.b_vertices));
    const Filtration sep_a = filtration_from_radius_table(
        sep.separated_side(sep.a_vertices), Mode::Generalized,
        sep.side_table(sep.unioned.separated_radii, sep.a_vertices));
    const Filtration sep_b = filtration_from_radius_table(
        sep.separated_side(sep.b_vertices), Mode::Generalized,
        sep.side_table(sep.unioned.separated_radii, sep.b_vertices));
    const Filtration sep_union = filtration_from_radius_table(
        sep.unioned.separated, Mode::Generalized, sep.unioned.separated_radii);

    report.original_a = compute_persistence(orig_a);
    report.original_b = compute_persistence(orig_b);
    const PersistenceResult pers_a = compute_persistence(sep_a);
    const PersistenceResult pers_b = compute_persistence(sep_b);
    const PersistenceResult pers_union = compute_persistence(sep_union);

    report.d0 = d0_distance(report.original_a.barcodes, report.original_b.barcodes);

    const auto orig_table_a = sep.side_table(sep.unioned.original_radii, sep.a_vertices);
    const auto orig_table_b = sep.side_table(sep.unioned.original_radii, sep.b_vertices);
    auto reported_bars = [](const Filtration& filtration, const PersistenceResult& persistence,
                            const std::vector<Rational>& original, int k) {
        std::vector<ReportedBar> out;
        const auto& bars = persistence.barcodes.dimension(k);
        for (std::size_t i = 0; i < bars.size(); ++i) {
            const Bar& bar = bars[i];
            if (!bar.finite()) throw InternalError("positive-dimensional bars must be finite");
            const VertexMask birth = filtration.entries()[bar.birth_entry].simplex.mask();
            const VertexMask death = filtration.entries()[*bar.death_entry].simplex.mask();
            if (original[birth] == original[death]) continue;  // tie-break artifact
            out.push_back(ReportedBar{static_cast<int>(i),
                                      Interval{original[birth], original[death]},
                                      Interval{bar.birth, *bar.death}});
        }
        return out;
    };

    const int max_k = std::max(a.size(), b.size()) - 1;
    std::vector<std::vector<ReportedBar>> cand_a(max_k + 1), cand_b(max_k + 1);
    for (int k = 1; k <= max_k; ++k) {
        cand_a[k] = reported_bars(sep_a, pers_a, orig_table_a, k);
        cand_b[k] = reported_bars(sep_b, pers_b, orig_table_b, k);
        if (!cand_a[k].empty() || !cand_b[k].empty()) report.k0 = k;
    }

    for (int k = 1; k <= report.k0; ++k) {
        DimensionReport dim;
        dim.dimension = k;
        dim.left_bars = cand_a[k];
        dim.right_bars = cand_b[k];
        dim.value = 0;
        dim.residual_bottleneck = 0;

        if (!dim.left_bars.empty() || !dim.right_bars.empty()) {
            RegistrationSide side_l{sep_a, pers_a, sep.a_vertices, {}};
            RegistrationSide side_r{sep_b, pers_b, sep.b_vertices, {}};
            for (const auto& rb : dim.left_bars) side_l.bars.push_back(rb.bar_index);
            for (const auto& rb : dim.right_bars) side_r.bars.push_back(rb.bar_index);
            dim.registration = register_cycles(side_l, side_r, sep_union, pers_union, k);

            auto reported_of = [](const std::vector<ReportedBar>& bars, int bar_index) {
                for (const auto& rb : bars)
                    if (rb.bar_index == bar_index) return rb.reported;
                throw InternalError("registered bar missing from the candidate list");
            };
            for (const auto& pair : dim.registration.pairs)
                dim.value += single_bar_bottleneck(reported_of(dim.left_bars, pair.left_bar),
                                                   reported_of(dim.right_bars, pair.right_bar));

            std::vector<Interval> residual_l, residual_r;
            for (int bar : dim.registration.residual_left)
                residual_l.push_back(reported_of(dim.left_bars, bar));
            for (int bar : dim.registration.residual_right)
                residual_r.push_back(reported_of(dim.right_bars, bar));
            dim.residual_matching = bottleneck_matching(residual_l, residual_r);
            dim.residual_bottleneck = dim.residual_matching.delta;
            dim.value += dim.residual_bottleneck;
        }
        report.higher.push_back(std::move(dim));
    }

    // Weights 2^k / (2^(k0+1) - 1) over k = 0..k0 sum to exactly one.
    const Rational denominator = Rational((Integer(1) << (report.k0 + 1)) - 1);
    Rational weight_sum = 0;
    for (int k = 0; k <= report.k0; ++k) {
        const Rational weight = Rational(Integer(1) << k) / denominator;
        report.weights.push_back(weight);
        weight_sum += weight;
        const Rational& dk = k == 0 ? report.d0 : report.higher[k - 1].value;
        report.d_new += weight * dk;
    }
    if (weight_sum != 1) throw InternalError("d_new weights must sum to one");
    return report;
}

} // namespace hammology
