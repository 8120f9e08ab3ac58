#pragma once

#include <cstdint>
#include <vector>

namespace t310::gf2 {

// Dense bit vector; rows of GF(2) matrices.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool b = true) {
        if (b) w_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void operator^=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    }
    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    // First set position, or size() if none.
    std::size_t lowest() const;
    int popcount() const;
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator<(const BitVec& o) const;   // lexicographic, position 0 most significant

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct Rref {
    std::vector<BitVec> rows;        // nonzero rows in echelon order
    std::vector<std::size_t> pivot;  // pivot column per row
    std::size_t cols = 0;
    int rank() const { return static_cast<int>(rows.size()); }

    // Reduce v by the pivots; result has no pivot-column bits.
    BitVec reduce(BitVec v) const;
    bool in_span(const BitVec& v) const;
};

Rref rref(std::vector<BitVec> rows, std::size_t cols);

// Basis of { x : M x = 0 } for the row-major matrix `m`.
std::vector<BitVec> nullspace(const Rref& m);

// Basis of row combinations summing to zero: { c : c^T M = 0 }.
// Computed by rref over rows augmented with tracking bits.
std::vector<BitVec> left_nullspace(const std::vector<BitVec>& rows, std::size_t cols);

}  // namespace t310::gf2
