#pragma once

#include <optional>

#include "matrix.hpp"

namespace cpslice {

/* U * A * Vt = D, U and Vt unimodular, D diagonal with d_i >= 0 and d_i | d_{i+1}.
   Uinv tracks the inverse of U so column-space bases come out for free. */
struct SmithDecomposition {
    IntMatrix U, D, Vt, Uinv;
};

inline SmithDecomposition smith_normal_form(const IntMatrix& a) {
    SmithDecomposition s;
    s.D = a;
    s.U = IntMatrix::identity(a.rows);
    s.Uinv = IntMatrix::identity(a.rows);
    s.Vt = IntMatrix::identity(a.cols);
    IntMatrix& D = s.D;
    int rows = a.rows, cols = a.cols;

    auto row_swap = [&](int i, int j) {
        for (int c = 0; c < cols; c++) std::swap(D.at(i, c), D.at(j, c));
        for (int c = 0; c < rows; c++) std::swap(s.U.at(i, c), s.U.at(j, c));
        for (int r = 0; r < rows; r++) std::swap(s.Uinv.at(r, i), s.Uinv.at(r, j));
    };
    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < rows; r++) std::swap(D.at(r, i), D.at(r, j));
        for (int r = 0; r < cols; r++) std::swap(s.Vt.at(r, i), s.Vt.at(r, j));
    };
    // row dst -= q * row src
    auto row_axpy = [&](int dst, int src, const Int& q) {
        for (int c = 0; c < cols; c++) D.at(dst, c) -= q * D.at(src, c);
        for (int c = 0; c < rows; c++) s.U.at(dst, c) -= q * s.U.at(src, c);
        for (int r = 0; r < rows; r++) s.Uinv.at(r, src) += q * s.Uinv.at(r, dst);
    };
    // col dst -= q * col src
    auto col_axpy = [&](int dst, int src, const Int& q) {
        for (int r = 0; r < rows; r++) D.at(r, dst) -= q * D.at(r, src);
        for (int r = 0; r < cols; r++) s.Vt.at(r, dst) -= q * s.Vt.at(r, src);
    };
    auto row_negate = [&](int i) {
        for (int c = 0; c < cols; c++) D.at(i, c) = -D.at(i, c);
        for (int c = 0; c < rows; c++) s.U.at(i, c) = -s.U.at(i, c);
        for (int r = 0; r < rows; r++) s.Uinv.at(r, i) = -s.Uinv.at(r, i);
    };

    int n = std::min(rows, cols);
    int k = 0;
    while (k < n) {
        // smallest nonzero |entry| in the trailing submatrix, row-major tie-break
        int pi = -1, pj = -1;
        Int best;
        for (int i = k; i < rows; i++)
            for (int j = k; j < cols; j++) {
                if (D.at(i, j) == 0) continue;
                Int e = abs(D.at(i, j));
                if (pi < 0 || e < best) { best = e; pi = i; pj = j; }
            }
        if (pi < 0) break;
        if (pi != k) row_swap(k, pi);
        if (pj != k) col_swap(k, pj);

        bool changed = false;
        for (int i = k + 1; i < rows; i++) {
            if (D.at(i, k) == 0) continue;
            Int q = D.at(i, k) / D.at(k, k);  // mpz truncated division
            if (q != 0) row_axpy(i, k, q);
            if (D.at(i, k) != 0) changed = true;
        }
        for (int j = k + 1; j < cols; j++) {
            if (D.at(k, j) == 0) continue;
            Int q = D.at(k, j) / D.at(k, k);
            if (q != 0) col_axpy(j, k, q);
            if (D.at(k, j) != 0) changed = true;
        }
        if (changed) continue;

        bool fixed = false;
        for (int i = k + 1; i < rows && !fixed; i++)
            for (int j = k + 1; j < cols && !fixed; j++)
                if (D.at(i, j) % D.at(k, k) != 0) {
                    row_axpy(k, i, Int(-1));  // row k += row i, breaks divisibility gap
                    fixed = true;
                }
        if (fixed) continue;
        k++;
    }
    for (int i = 0; i < n; i++)
        if (D.at(i, i) < 0) row_negate(i);
    return s;
}

inline int snf_rank(const SmithDecomposition& s) {
    int n = std::min(s.D.rows, s.D.cols), r = 0;
    while (r < n && s.D.at(r, r) != 0) r++;
    return r;
}

/* integral solve A x = b (each column of b independently); nullopt if unsolvable */
inline std::optional<IntMatrix> solve_integer(const SmithDecomposition& s, const IntMatrix& b) {
    int rank = snf_rank(s);
    IntMatrix ub = s.U.mul(b);
    IntMatrix y(s.D.cols, b.cols);
    for (int c = 0; c < b.cols; c++) {
        for (int i = 0; i < s.D.rows; i++) {
            if (i < rank) {
                if (ub.at(i, c) % s.D.at(i, i) != 0) return std::nullopt;
                y.at(i, c) = ub.at(i, c) / s.D.at(i, i);
            } else if (ub.at(i, c) != 0) {
                return std::nullopt;
            }
        }
    }
    return s.Vt.mul(y);
}

inline std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& b) {
    return solve_integer(smith_normal_form(a), b);
}

/* columns form a basis of {x : A x = 0} */
inline IntMatrix kernel_basis(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    int rank = snf_rank(s);
    return s.Vt.take_cols(rank, a.cols - rank);
}

/* columns form a basis of the column span lattice of A */
inline IntMatrix column_lattice_basis(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    int rank = snf_rank(s);
    IntMatrix basis(a.rows, rank);
    for (int j = 0; j < rank; j++)
        for (int i = 0; i < a.rows; i++) basis.at(i, j) = s.Uinv.at(i, j) * s.D.at(j, j);
    return basis;
}

}  // namespace cpslice
