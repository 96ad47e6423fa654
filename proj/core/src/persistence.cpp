#include "hammology/persistence.hpp"

#include <algorithm>
#include <map>

namespace hammology {

BitColumn boundary_column(const Filtration& filtration, int entry) {
    const auto& simplex = filtration.entries()[entry].simplex;
    BitColumn column(filtration.entries().size());
    if (simplex.dimension() == 0) return column;
    const VertexMask mask = simplex.mask();
    for (int v : simplex.vertices) {
        const int face = filtration.entry_index(mask & ~(VertexMask(1) << v));
        if (face < 0) throw InternalError("boundary face missing from filtration");
        column.set(static_cast<std::size_t>(face));
    }
    return column;
}

BitColumn chain_to_column(const Chain& chain, std::size_t bits) {
    BitColumn column(bits);
    for (int e : chain.entries) column.set(static_cast<std::size_t>(e));
    return column;
}

Chain column_to_chain(const BitColumn& column, int dimension) {
    return Chain{dimension, column.indices()};
}

PersistenceResult compute_persistence(const Filtration& filtration) {
    const auto& entries = filtration.entries();
    const std::size_t n = entries.size();

    std::vector<BitColumn> reduced(n), basis(n);
    std::vector<int> owner_of_low(n, -1);
    for (std::size_t j = 0; j < n; ++j) {
        reduced[j] = boundary_column(filtration, static_cast<int>(j));
        basis[j] = BitColumn(n);
        basis[j].set(j);
        for (int low = reduced[j].low(); low >= 0; low = reduced[j].low()) {
            const int k = owner_of_low[low];
            if (k < 0) break;
            reduced[j].add(reduced[k]);
            basis[j].add(basis[k]);
        }
        if (const int low = reduced[j].low(); low >= 0) owner_of_low[low] = static_cast<int>(j);
    }

    int max_dim = 0;
    for (const auto& entry : entries) max_dim = std::max(max_dim, entry.simplex.dimension());

    PersistenceResult result;
    result.barcodes = BarcodeSet(max_dim);
    result.positive.assign(n, false);
    for (std::size_t j = 0; j < n; ++j) result.positive[j] = reduced[j].empty();

    for (std::size_t j = 0; j < n; ++j) {
        if (result.positive[j]) continue;
        const int i = reduced[j].low();
        Bar bar;
        bar.dimension = entries[i].simplex.dimension();
        bar.birth = entries[i].radius;
        bar.death = entries[j].radius;
        bar.birth_entry = i;
        bar.death_entry = static_cast<int>(j);
        bar.representative = column_to_chain(reduced[j], bar.dimension);
        bar.birth_cycle = column_to_chain(basis[i], bar.dimension);
        result.barcodes.mutable_dimension(bar.dimension).push_back(std::move(bar));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!result.positive[i] || owner_of_low[i] >= 0) continue;
        Bar bar;
        bar.dimension = entries[i].simplex.dimension();
        bar.birth = entries[i].radius;
        bar.birth_entry = static_cast<int>(i);
        bar.representative = column_to_chain(basis[i], bar.dimension);
        bar.birth_cycle = bar.representative;
        result.barcodes.mutable_dimension(bar.dimension).push_back(std::move(bar));
    }

    for (int k = 0; k <= max_dim; ++k) {
        auto& bars = result.barcodes.mutable_dimension(k);
        std::sort(bars.begin(), bars.end(),
                  [](const Bar& a, const Bar& b) { return a.birth_entry < b.birth_entry; });
    }
    return result;
}

bool is_morse(const Filtration& filtration, const PersistenceResult& persistence) {
    (void)filtration;
    std::map<Rational, int> events;
    for (int k = 0; k <= persistence.barcodes.max_dimension(); ++k) {
        for (const Bar& bar : persistence.barcodes.dimension(k)) {
            if (bar.zero_length()) continue;
            if (bar.birth > 0) ++events[bar.birth];
            if (bar.finite()) ++events[*bar.death];
        }
    }
    for (const auto& [level, count] : events)
        if (count > 1) return false;
    return true;
}

bool single_termination(const Filtration& filtration, const PersistenceResult& persistence) {
    (void)filtration;
    std::map<Rational, int> deaths;
    for (int k = 0; k <= persistence.barcodes.max_dimension(); ++k)
        for (const Bar& bar : persistence.barcodes.dimension(k))
            if (bar.finite() && !bar.zero_length()) ++deaths[*bar.death];
    for (const auto& [level, count] : deaths)
        if (count > 1) return false;
    return true;
}

bool euler_consistent_at(const Filtration& filtration, const PersistenceResult& persistence,
                         const Rational& r) {
    long chi = 0;
    for (const auto& entry : filtration.entries()) {
        if (entry.radius > r) break;
        chi += entry.simplex.dimension() % 2 == 0 ? 1 : -1;
    }
    long betti = 0;
    for (int k = 0; k <= persistence.barcodes.max_dimension(); ++k)
        for (const Bar& bar : persistence.barcodes.dimension(k))
            if (bar.birth <= r && (!bar.finite() || *bar.death > r))
                betti += k % 2 == 0 ? 1 : -1;
    return chi == betti;
}

} // namespace hammology
