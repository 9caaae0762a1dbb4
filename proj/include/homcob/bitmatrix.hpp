#pragma once

// Dense bit-packed linear algebra over GF(2).  Rows are arrays of 64-bit
// words; everything is exact and deterministic (fixed pivot convention).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace homcob {

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec unit(int n, int i) {
        BitVec v(n);
        v.set(i);
        return v;
    }

    int size() const { return n_; }

    bool get(int i) const {
        check(i);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(int i, bool v = true) {
        check(i);
        if (v)
            w_[i >> 6] |= (uint64_t{1} << (i & 63));
        else
            w_[i >> 6] &= ~(uint64_t{1} << (i & 63));
    }
    void flip(int i) {
        check(i);
        w_[i >> 6] ^= (uint64_t{1} << (i & 63));
    }

    BitVec& operator^=(const BitVec& o) {
        if (o.n_ != n_) throw DimensionError("BitVec xor: size mismatch");
        for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }
    bool operator<(const BitVec& o) const {  // for ordered containers
        if (n_ != o.n_) return n_ < o.n_;
        return w_ < o.w_;
    }

    bool is_zero() const {
        for (uint64_t w : w_)
            if (w) return false;
        return true;
    }

    int lowest_set() const {  // -1 when zero
        for (int i = 0; i < n_; ++i)
            if (get(i)) return i;
        return -1;
    }

    std::vector<int> support() const {
        std::vector<int> s;
        for (int i = 0; i < n_; ++i)
            if (get(i)) s.push_back(i);
        return s;
    }

    std::string to_string() const {
        std::string s(n_, '0');
        for (int i = 0; i < n_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

private:
    void check(int i) const {
        if (i < 0 || i >= n_) throw DimensionError("BitVec index out of range");
    }
    int n_ = 0;
    std::vector<uint64_t> w_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols) : r_(rows), c_(cols), rows_(rows, BitVec(cols)) {
        if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
    }

    static BitMatrix identity(int n) {
        BitMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i);
        return m;
    }
    static BitMatrix zero(int rows, int cols) { return BitMatrix(rows, cols); }

    int rows() const { return r_; }
    int cols() const { return c_; }

    bool get(int r, int c) const { return rows_.at(r).get(c); }
    void set(int r, int c, bool v = true) { rows_.at(r).set(c, v); }
    void flip(int r, int c) { rows_.at(r).flip(c); }

    const BitVec& row(int r) const { return rows_.at(r); }
    void set_row(int r, const BitVec& v) {
        if (v.size() != c_) throw DimensionError("set_row width mismatch");
        rows_.at(r) = v;
    }

    BitVec col(int c) const {
        BitVec v(r_);
        for (int r = 0; r < r_; ++r)
            if (get(r, c)) v.set(r);
        return v;
    }
    void set_col(int c, const BitVec& v) {
        if (v.size() != r_) throw DimensionError("set_col height mismatch");
        for (int r = 0; r < r_; ++r) set(r, c, v.get(r));
    }
    void xor_col(int c, const BitVec& v) {
        if (v.size() != r_) throw DimensionError("xor_col height mismatch");
        for (int r = 0; r < r_; ++r)
            if (v.get(r)) flip(r, c);
    }

    // matrix * column vector
    BitVec apply(const BitVec& x) const {
        if (x.size() != c_) throw DimensionError("apply: vector size mismatch");
        BitVec y(r_);
        for (int r = 0; r < r_; ++r) {
            int parity = 0;
            for (int c : x.support()) parity ^= (int)get(r, c);
            if (parity) y.set(r);
        }
        return y;
    }

    BitMatrix operator*(const BitMatrix& o) const {
        if (c_ != o.r_) throw DimensionError("matmul dimension mismatch");
        BitMatrix out(r_, o.c_);
        for (int r = 0; r < r_; ++r)
            for (int k = 0; k < c_; ++k)
                if (get(r, k)) out.rows_[r] ^= o.rows_[k];
        return out;
    }

    BitMatrix operator+(const BitMatrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw DimensionError("matadd dimension mismatch");
        BitMatrix out = *this;
        for (int r = 0; r < r_; ++r) out.rows_[r] ^= o.rows_[r];
        return out;
    }

    bool operator==(const BitMatrix& o) const {
        return r_ == o.r_ && c_ == o.c_ && rows_ == o.rows_;
    }
    bool operator!=(const BitMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& r : rows_)
            if (!r.is_zero()) return false;
        return true;
    }

    BitMatrix transpose() const {
        BitMatrix t(c_, r_);
        for (int r = 0; r < r_; ++r)
            for (int c : rows_[r].support()) t.set(c, r);
        return t;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<BitVec> rows_;
};

// Row reduction with the fixed convention: sweep columns left to right,
// pivot row = first unprocessed row with a 1 in that column.
BitMatrix rref(BitMatrix m);
int rank(const BitMatrix& m);

// Basis of { x : m x = 0 } from the RREF free-variable construction,
// ordered by free-column index.
std::vector<BitVec> kernel_basis(const BitMatrix& m);

// Basis of the column space, in RREF row order of the transpose.
std::vector<BitVec> column_space_basis(const BitMatrix& m);

// One solution of A x = b (free variables set to 0), or nullopt.
std::optional<BitVec> solve(const BitMatrix& a, const BitVec& b);

// Simultaneous solve A X = B column by column; nullopt if any column fails.
std::optional<BitMatrix> solve_matrix(const BitMatrix& a, const BitMatrix& b);

std::optional<BitMatrix> inverse(const BitMatrix& m);

bool is_invertible(const BitMatrix& m);

} // namespace homcob
