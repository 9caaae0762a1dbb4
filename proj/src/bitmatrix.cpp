#include "homcob/bitmatrix.hpp"

namespace homcob {

BitMatrix rref(BitMatrix m) {
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.get(i, c)) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) {
            BitVec tmp = m.row(piv);
            m.set_row(piv, m.row(r));
            m.set_row(r, tmp);
        }
        for (int i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c)) m.set_row(i, m.row(i) ^ m.row(r));
        ++r;
    }
    return m;
}

int rank(const BitMatrix& m) {
    BitMatrix e = rref(m);
    int rk = 0;
    for (int r = 0; r < e.rows(); ++r)
        if (!e.row(r).is_zero()) ++rk;
    return rk;
}

std::vector<BitVec> kernel_basis(const BitMatrix& m) {
    BitMatrix e = rref(m);
    std::vector<int> pivot_col_of_row;
    std::vector<bool> is_pivot(m.cols(), false);
    for (int r = 0; r < e.rows(); ++r) {
        int c = e.row(r).lowest_set();
        if (c < 0) break;
        pivot_col_of_row.push_back(c);
        is_pivot[c] = true;
    }
    std::vector<BitVec> basis;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        BitVec v(m.cols());
        v.set(c);
        for (size_t r = 0; r < pivot_col_of_row.size(); ++r)
            if (e.get((int)r, c)) v.set(pivot_col_of_row[r]);
        basis.push_back(v);
    }
    return basis;
}

std::vector<BitVec> column_space_basis(const BitMatrix& m) {
    BitMatrix e = rref(m.transpose());
    std::vector<BitVec> basis;
    for (int r = 0; r < e.rows(); ++r)
        if (!e.row(r).is_zero()) basis.push_back(e.row(r));
    return basis;
}

std::optional<BitVec> solve(const BitMatrix& a, const BitVec& b) {
    if (b.size() != a.rows()) throw DimensionError("solve: rhs size mismatch");
    // Gaussian elimination on [A | b].
    BitMatrix aug(a.rows(), a.cols() + 1);
    for (int r = 0; r < a.rows(); ++r) {
        BitVec row(a.cols() + 1);
        for (int c : a.row(r).support()) row.set(c);
        if (b.get(r)) row.set(a.cols());
        aug.set_row(r, row);
    }
    aug = rref(aug);
    BitVec x(a.cols());
    for (int r = 0; r < aug.rows(); ++r) {
        int c = aug.row(r).lowest_set();
        if (c < 0) continue;
        if (c == a.cols()) return std::nullopt;  // inconsistent row 0 .. 0 | 1
        if (aug.get(r, a.cols())) x.set(c);
    }
    return x;
}

std::optional<BitMatrix> solve_matrix(const BitMatrix& a, const BitMatrix& b) {
    if (b.rows() != a.rows()) throw DimensionError("solve_matrix: rhs rows mismatch");
    BitMatrix x(a.cols(), b.cols());
    for (int c = 0; c < b.cols(); ++c) {
        auto col = solve(a, b.col(c));
        if (!col) return std::nullopt;
        x.set_col(c, *col);
    }
    return x;
}

std::optional<BitMatrix> inverse(const BitMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto inv = solve_matrix(m, BitMatrix::identity(m.rows()));
    if (!inv) return std::nullopt;
    if (!((*inv) * m == BitMatrix::identity(m.rows()))) return std::nullopt;
    return inv;
}

bool is_invertible(const BitMatrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

} // namespace homcob
