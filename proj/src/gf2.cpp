#include "t310/gf2.hpp"

#include <algorithm>
#include <bit>

namespace t310::gf2 {

std::size_t BitVec::lowest() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
    return n_;
}

int BitVec::popcount() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
}

bool BitVec::operator<(const BitVec& o) const {
    // Treat position 0 as the most significant coordinate.
    for (std::size_t i = 0; i < std::min(n_, o.n_); ++i) {
        bool a = get(i), b = o.get(i);
        if (a != b) return b;   // 0 before 1
    }
    return n_ < o.n_;
}

Rref rref(std::vector<BitVec> rows, std::size_t cols) {
    Rref out;
    out.cols = cols;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && !rows[piv].get(col)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i].get(col)) rows[i] ^= rows[r];
        out.pivot.push_back(col);
        ++r;
    }
    // Rows keep being reduced as later pivots are processed; only now are the
    // first r rows in fully reduced form.
    out.rows.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(r));
    return out;
}

BitVec Rref::reduce(BitVec v) const {
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (v.get(pivot[i])) v ^= rows[i];
    return v;
}

bool Rref::in_span(const BitVec& v) const { return !reduce(v).any(); }

std::vector<BitVec> nullspace(const Rref& m) {
    std::vector<bool> is_pivot(m.cols, false);
    for (auto p : m.pivot) is_pivot[p] = true;
    std::vector<BitVec> basis;
    for (std::size_t free_col = 0; free_col < m.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        BitVec v(m.cols);
        v.set(free_col);
        for (std::size_t i = 0; i < m.rows.size(); ++i)
            if (m.rows[i].get(free_col)) v.set(m.pivot[i]);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<BitVec> left_nullspace(const std::vector<BitVec>& rows, std::size_t cols) {
    std::size_t n = rows.size();
    std::vector<BitVec> aug;
    aug.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        BitVec v(cols + n);
        for (std::size_t j = 0; j < cols; ++j)
            if (rows[i].get(j)) v.set(j);
        v.set(cols + i);
        aug.push_back(std::move(v));
    }
    Rref r = rref(std::move(aug), cols + n);
    std::vector<BitVec> basis;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        if (r.pivot[i] < cols) continue;   // row still touches a real column
        BitVec combo(n);
        for (std::size_t j = 0; j < n; ++j)
            if (r.rows[i].get(cols + j)) combo.set(j);
        basis.push_back(std::move(combo));
    }
    return basis;
}

}  // namespace t310::gf2
