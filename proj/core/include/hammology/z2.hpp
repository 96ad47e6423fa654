#pragma once

#include <cstdint>
#include <vector>

namespace hammology {

// Bit-packed Z2 column vectors. The highest set bit ("low" in reduction
// terminology, the pivot) drives both the persistence reduction and the
// echelon solves used by cycle registration.
class BitColumn {
public:
    BitColumn() = default;
    explicit BitColumn(std::size_t bits) : words_((bits + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    bool empty() const {
        for (std::uint64_t w : words_)
            if (w) return false;
        return true;
    }

    /// Index of the highest set bit; -1 when empty.
    int low() const {
        for (int w = static_cast<int>(words_.size()) - 1; w >= 0; --w)
            if (words_[w]) return (w << 6) + 63 - __builtin_clzll(words_[w]);
        return -1;
    }

    void add(const BitColumn& other) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    }

    std::vector<int> indices() const {
        std::vector<int> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                out.push_back(static_cast<int>((w << 6) + __builtin_ctzll(bits)));
                bits &= bits - 1;
            }
        }
        return out;
    }

private:
    std::vector<std::uint64_t> words_;
};

// Incremental echelon basis over Z2: columns keyed by their low bit.
class Z2Echelon {
public:
    explicit Z2Echelon(std::size_t bits) : bits_(bits), pivot_(bits, -1) {}

    /// Reduces the column against the basis; returns the residue.
    BitColumn reduce(BitColumn column) const {
        for (int low = column.low(); low >= 0; low = column.low()) {
            if (pivot_[low] < 0) break;
            column.add(columns_[pivot_[low]]);
        }
        return column;
    }

    /// True iff the column lies in the span of the basis.
    bool contains(const BitColumn& column) const { return reduce(column).empty(); }

    /// Inserts a column; returns false (no-op) when it is dependent.
    bool insert(BitColumn column) {
        column = reduce(std::move(column));
        const int low = column.low();
        if (low < 0) return false;
        pivot_[low] = static_cast<int>(columns_.size());
        columns_.push_back(std::move(column));
        return true;
    }

    std::size_t rank() const { return columns_.size(); }
    std::size_t bits() const { return bits_; }

private:
    std::size_t bits_;
    std::vector<int> pivot_;
    std::vector<BitColumn> columns_;
};

} // namespace hammology
