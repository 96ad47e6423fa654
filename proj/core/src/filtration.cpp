#include "hammology/filtration.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace hammology {

const Rational& Filtration::radius_of(VertexMask mask) const {
    int index = index_of_mask_[mask];
    if (index < 0) throw InputError("simplex is not part of this filtration");
    return entries_[index].radius;
}

void Filtration::assemble(std::vector<std::pair<VertexMask, Rational>> rows, bool expect_full) {
    std::vector<std::pair<Simplex, Rational>> staged;
    staged.reserve(rows.size());
    for (auto& [mask, radius] : rows) staged.push_back({Simplex::from_mask(mask), std::move(radius)});

    std::sort(staged.begin(), staged.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        if (a.first.dimension() != b.first.dimension()) return a.first.dimension() < b.first.dimension();
        return a.first < b.first;
    });

    entries_.clear();
    entries_.reserve(staged.size());
    index_of_mask_.assign(std::size_t(1) << set_.size(), -1);
    for (auto& [simplex, radius] : staged) {
        index_of_mask_[simplex.mask()] = static_cast<int>(entries_.size());
        entries_.push_back(FiltrationEntry{std::move(simplex), std::move(radius)});
    }

    levels_.clear();
    for (const auto& entry : entries_)
        if (levels_.empty() || levels_.back() != entry.radius) levels_.push_back(entry.radius);

    // Face monotonicity: every facet present, never at a later radius.
    for (const auto& entry : entries_) {
        const VertexMask mask = entry.simplex.mask();
        for (int v : entry.simplex.vertices) {
            const VertexMask facet = mask & ~(VertexMask(1) << v);
            if (facet == 0) continue;
            const int facet_index = index_of_mask_[facet];
            if (facet_index < 0)
                throw InternalError("filtration entry is missing a face");
            if (entries_[facet_index].radius > entry.radius)
                throw InternalError("face monotonicity violated");
        }
    }
    if (expect_full && !full())
        throw InternalError("adjoined filtration must contain every nonempty subset");
}

Filtration build_filtration(const StringSet& set, Mode mode, const BuildOptions& options) {
    if (set.size() > options.max_set_size)
        throw CapError("set size " + std::to_string(set.size()) + " exceeds the filtration cap " +
                       std::to_string(options.max_set_size));
    if (mode == Mode::Discrete && set.mode() != Mode::Discrete)
        throw InputError("discrete filtrations need a discrete string set");

    const StringSet working = mode == Mode::Discrete ? set : set.embedded();
    const VertexMask all = (VertexMask(1) << set.size()) - 1;
    std::vector<std::pair<VertexMask, Rational>> rows;
    rows.reserve(all);
    for (VertexMask mask = 1; mask <= all; ++mask)
        rows.push_back({mask, simplex_radius(working, Simplex::from_mask(mask)).radius});

    Filtration filtration;
    filtration.set_ = working;
    filtration.mode_ = mode;
    filtration.assemble(std::move(rows), true);
    return filtration;
}

Filtration filtration_from_radius_table(StringSet set, Mode mode,
                                        std::vector<Rational> radius_by_mask) {
    const VertexMask all = (VertexMask(1) << set.size()) - 1;
    if (radius_by_mask.size() != std::size_t(all) + 1)
        throw InputError("radius table size does not match the vertex count");
    std::vector<std::pair<VertexMask, Rational>> rows;
    rows.reserve(all);
    for (VertexMask mask = 1; mask <= all; ++mask)
        rows.push_back({mask, std::move(radius_by_mask[mask])});

    Filtration filtration;
    filtration.set_ = std::move(set);
    filtration.mode_ = mode;
    filtration.assemble(std::move(rows), true);
    return filtration;
}

Filtration filtration_from_entries(StringSet set, Mode mode,
                                   std::vector<std::pair<VertexMask, Rational>> rows) {
    Filtration filtration;
    filtration.set_ = std::move(set);
    filtration.mode_ = mode;
    filtration.assemble(std::move(rows), false);
    return filtration;
}

LevelComplex sublevel(const Filtration& filtration, const Rational& r) {
    if (r < 0) throw InputError("sublevel radius must be nonnegative");
    const auto& entries = filtration.entries();
    std::size_t count = 0;
    while (count < entries.size() && entries[count].radius <= r) ++count;
    return LevelComplex{&filtration, r, count};
}

std::optional<std::vector<int>> filtration_isomorphism(const Filtration& a, const Filtration& b,
                                                       const IsoOptions& options) {
    if (!a.full() || !b.full())
        throw InputError("filtration isomorphism needs full adjoined filtrations");
    if (a.mode() != b.mode())
        throw InputError("filtration isomorphism needs filtrations of the same mode");
    const int m = a.string_set().size();
    if (m != b.string_set().size()) return std::nullopt;
    if (m > options.max_search_size)
        throw CapError("isomorphism search capped at " + std::to_string(options.max_search_size) +
                       " vertices");

    // Equal level sets (in fact equal radius multisets) are necessary.
    {
        std::vector<Rational> ra, rb;
        for (const auto& e : a.entries()) ra.push_back(e.radius);
        for (const auto& e : b.entries()) rb.push_back(e.radius);
        if (ra != rb) return std::nullopt;  // both sorted by construction
    }

    // A bijection works iff it preserves every simplex radius; prune vertex
    // candidates by the multiset of (dimension, radius) over cofaces.
    using Profile = std::vector<std::pair<int, Rational>>;
    auto profile = [m](const Filtration& f, int v) {
        Profile p;
        const VertexMask all = (VertexMask(1) << m) - 1;
        for (VertexMask mask = 1; mask <= all; ++mask)
            if (mask & (VertexMask(1) << v))
                p.push_back({Simplex::from_mask(mask).dimension(), f.radius_of(mask)});
        std::sort(p.begin(), p.end());
        return p;
    };
    std::vector<Profile> pa(m), pb(m);
    for (int v = 0; v < m; ++v) {
        pa[v] = profile(a, v);
        pb[v] = profile(b, v);
    }

    std::vector<int> image(m, -1);
    std::vector<bool> used(m, false);
    auto dfs = [&](auto&& self, int v) -> bool {
        if (v == m) return true;
        for (int w = 0; w < m; ++w) {
            if (used[w] || pa[v] != pb[w]) continue;
            // Check all subsets of the assigned prefix that contain v.
            bool ok = true;
            const VertexMask vbit = VertexMask(1) << v;
            const VertexMask assigned = (VertexMask(1) << v) - 1;
            for (VertexMask rest = assigned;; rest = (rest - 1) & assigned) {
                VertexMask mask = rest | vbit;
                VertexMask mapped = VertexMask(1) << w;
                for (int u = 0; u < v; ++u)
                    if (rest & (VertexMask(1) << u)) mapped |= VertexMask(1) << image[u];
                if (a.radius_of(mask) != b.radius_of(mapped)) {
                    ok = false;
                    break;
                }
                if (rest == 0) break;
            }
            if (!ok) continue;
            image[v] = w;
            used[w] = true;
            if (self(self, v + 1)) return true;
            used[w] = false;
            image[v] = -1;
        }
        return false;
    };
    if (dfs(dfs, 0)) return image;
    return std::nullopt;
}

DiscreteString HammingIsometry::apply(const DiscreteString& s) const {
    DiscreteString out;
    out.alphabet = s.alphabet;
    out.symbols.resize(s.symbols.size());
    for (std::size_t q = 0; q < s.symbols.size(); ++q)
        out.symbols[q] = letter_map[q][s.symbols[source_position[q]] - 1];
    return out;
}

StringSet HammingIsometry::apply(const StringSet& set) const {
    std::vector<DiscreteString> images;
    for (int v = 0; v < set.size(); ++v) images.push_back(apply(set.discrete_element(v)));
    return StringSet::discrete(set.alphabet(), set.length(), std::move(images));
}

namespace {

// Letter-count signature of one position, with letters anonymized.
std::vector<int> position_signature(const StringSet& set, int position) {
    std::map<int, int> counts;
    for (int v = 0; v < set.size(); ++v) ++counts[set.discrete_element(v).symbols[position]];
    std::vector<int> signature;
    for (const auto& [letter, count] : counts) signature.push_back(count);
    std::sort(signature.begin(), signature.end());
    return signature;
}

// Does mapping source position i to target position q extend to a letter
// permutation, given the vertex bijection? Returns the partial letter map.
std::optional<std::vector<int>> letter_injection(const StringSet& a, const StringSet& b,
                                                 const std::vector<int>& beta, int i, int q) {
    const int n = a.alphabet();
    std::vector<int> image(n, 0);    // letter -> letter, 0 = unassigned
    std::vector<bool> taken(n, false);
    for (int v = 0; v < a.size(); ++v) {
        const int from = a.discrete_element(v).symbols[i];
        const int to = b.discrete_element(beta[v]).symbols[q];
        if (image[from - 1] == 0) {
            if (taken[to - 1]) return std::nullopt;
            image[from - 1] = to;
            taken[to - 1] = true;
        } else if (image[from - 1] != to) {
            return std::nullopt;
        }
    }
    // Extend the injection to a full permutation of 1..n.
    for (int letter = 1; letter <= n; ++letter) {
        if (image[letter - 1] != 0) continue;
        for (int to = 1; to <= n; ++to)
            if (!taken[to - 1]) {
                image[letter - 1] = to;
                taken[to - 1] = true;
                break;
            }
    }
    return image;
}

bool kuhn_match(const std::vector<std::vector<int>>& adjacency, std::vector<int>& match_right) {
    const int l = static_cast<int>(adjacency.size());
    match_right.assign(l, -1);
    std::vector<int> seen(l, -1);
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
    for (int left = 0; left < l; ++left)
        if (!augment(augment, left, left)) return false;
    return true;
}

} // namespace

std::optional<HammingIsometry> hamming_isomorphism(const StringSet& a, const StringSet& b,
                                                   const IsoOptions& options) {
    if (a.mode() != Mode::Discrete || b.mode() != Mode::Discrete)
        throw InputError("d_H-isomorphism search needs discrete sets");
    if (a.alphabet() != b.alphabet() || a.length() != b.length())
        throw InputError("d_H-isomorphism needs a common ambient space");
    const int m = a.size(), l = a.length();
    if (m != b.size()) return std::nullopt;
    if (m > options.max_search_size)
        throw CapError("isomorphism search capped at " + std::to_string(options.max_search_size) +
                       " vertices");

    // Signature pre-filter: any isometry maps positions onto positions with
    // the same anonymized letter-count pattern.
    {
        std::vector<std::vector<int>> sa, sb;
        for (int i = 0; i < l; ++i) {
            sa.push_back(position_signature(a, i));
            sb.push_back(position_signature(b, i));
        }
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }

    std::vector<std::vector<int>> da(m, std::vector<int>(m)), db(m, std::vector<int>(m));
    for (int v = 0; v < m; ++v)
        for (int w = 0; w < m; ++w) {
            da[v][w] = hamming_distance(a.discrete_element(v), a.discrete_element(w));
            db[v][w] = hamming_distance(b.discrete_element(v), b.discrete_element(w));
        }

    std::vector<int> beta(m, -1);
    std::vector<bool> used(m, false);
    std::optional<HammingIsometry> found;

    auto try_positions = [&]() -> bool {
        // compat[q] lists source positions i that can feed target position q.
        std::vector<std::vector<int>> compat(l);
        std::vector<std::vector<std::vector<int>>> maps(l, std::vector<std::vector<int>>(l));
        for (int q = 0; q < l; ++q)
            for (int i = 0; i < l; ++i)
                if (auto image = letter_injection(a, b, beta, i, q)) {
                    compat[q].push_back(i);
                    maps[q][i] = std::move(*image);
                }
        std::vector<int> match_source;  // match_source[source i] = target q
        if (!kuhn_match(compat, match_source)) return false;

        HammingIsometry iso;
        iso.source_position.assign(l, -1);
        iso.letter_map.assign(l, {});
        for (int i = 0; i < l; ++i) {
            const int q = match_source[i];
            iso.source_position[q] = i;
            iso.letter_map[q] = maps[q][i];
        }
        found = std::move(iso);
        return true;
    };

    auto dfs = [&](auto&& self, int v) -> bool {
        if (v == m) return try_positions();
        for (int w = 0; w < m; ++w) {
            if (used[w]) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                if (da[v][u] != db[w][beta[u]]) ok = false;
            if (!ok) continue;
            beta[v] = w;
            used[w] = true;
            if (self(self, v + 1)) return true;
            used[w] = false;
            beta[v] = -1;
        }
        return false;
    };

    if (!dfs(dfs, 0)) return std::nullopt;

    StringSet mapped = found->apply(a);
    for (int v = 0; v < m; ++v) {
        bool hit = false;
        for (int w = 0; w < m; ++w)
            if (mapped.discrete_element(v) == b.discrete_element(w)) hit = true;
        if (!hit) throw InternalError("isometry search returned a non-mapping");
    }
    return found;
}

} // namespace hammology
