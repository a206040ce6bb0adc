#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpslice {

using Int = mpz_class;

/* dense integer matrix, row-major, arbitrary precision entries */
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Int> data;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), data((size_t)r * c) {
        if (r < 0 || c < 0) throw std::invalid_argument("matrix: negative dimension");
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; i++) m.at(i, i) = 1;
        return m;
    }

    Int& at(int i, int j) { return data[(size_t)i * cols + j]; }
    const Int& at(int i, int j) const { return data[(size_t)i * cols + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows == o.rows && cols == o.cols && data == o.data;
    }

    bool is_zero() const {
        for (const Int& x : data)
            if (x != 0) return false;
        return true;
    }

    IntMatrix mul(const IntMatrix& o) const {
        if (cols != o.rows) throw std::invalid_argument("matrix: mul shape mismatch");
        IntMatrix r(rows, o.cols);
        for (int i = 0; i < rows; i++)
            for (int k = 0; k < cols; k++) {
                const Int& a = at(i, k);
                if (a == 0) continue;
                for (int j = 0; j < o.cols; j++) r.at(i, j) += a * o.at(k, j);
            }
        return r;
    }

    IntMatrix add(const IntMatrix& o) const {
        if (rows != o.rows || cols != o.cols) throw std::invalid_argument("matrix: add shape mismatch");
        IntMatrix r = *this;
        for (size_t i = 0; i < data.size(); i++) r.data[i] += o.data[i];
        return r;
    }

    IntMatrix sub(const IntMatrix& o) const {
        if (rows != o.rows || cols != o.cols) throw std::invalid_argument("matrix: sub shape mismatch");
        IntMatrix r = *this;
        for (size_t i = 0; i < data.size(); i++) r.data[i] -= o.data[i];
        return r;
    }

    IntMatrix scaled(const Int& c) const {
        IntMatrix r = *this;
        for (Int& x : r.data) x *= c;
        return r;
    }

    IntMatrix transpose() const {
        IntMatrix r(cols, rows);
        for (int i = 0; i < rows; i++)
            for (int j = 0; j < cols; j++) r.at(j, i) = at(i, j);
        return r;
    }

    IntMatrix col(int j) const {
        IntMatrix r(rows, 1);
        for (int i = 0; i < rows; i++) r.at(i, 0) = at(i, j);
        return r;
    }

    /* columns side by side */
    IntMatrix hstack(const IntMatrix& o) const {
        if (o.rows != rows && o.cols != 0 && cols != 0)
            throw std::invalid_argument("matrix: hstack shape mismatch");
        int r = cols == 0 ? o.rows : rows;
        IntMatrix m(r, cols + o.cols);
        for (int i = 0; i < rows; i++)
            for (int j = 0; j < cols; j++) m.at(i, j) = at(i, j);
        for (int i = 0; i < o.rows; i++)
            for (int j = 0; j < o.cols; j++) m.at(i, cols + j) = o.at(i, j);
        return m;
    }

    IntMatrix vstack(const IntMatrix& o) const {
        if (o.cols != cols && o.rows != 0 && rows != 0)
            throw std::invalid_argument("matrix: vstack shape mismatch");
        int c = rows == 0 ? o.cols : cols;
        IntMatrix m(rows + o.rows, c);
        for (int i = 0; i < rows; i++)
            for (int j = 0; j < cols; j++) m.at(i, j) = at(i, j);
        for (int i = 0; i < o.rows; i++)
            for (int j = 0; j < o.cols; j++) m.at(rows + i, j) = o.at(i, j);
        return m;
    }

    IntMatrix take_cols(int from, int count) const {
        IntMatrix m(rows, count);
        for (int i = 0; i < rows; i++)
            for (int j = 0; j < count; j++) m.at(i, j) = at(i, from + j);
        return m;
    }

    IntMatrix take_rows(int from, int count) const {
        IntMatrix m(count, cols);
        for (int i = 0; i < count; i++)
            for (int j = 0; j < cols; j++) m.at(i, j) = at(from + i, j);
        return m;
    }
};

inline IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows + b.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; i++)
        for (int j = 0; j < a.cols; j++) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows; i++)
        for (int j = 0; j < b.cols; j++) m.at(a.rows + i, a.cols + j) = b.at(i, j);
    return m;
}

inline IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows * b.rows, a.cols * b.cols);
    for (int i = 0; i < a.rows; i++)
        for (int j = 0; j < a.cols; j++) {
            if (a.at(i, j) == 0) continue;
            for (int k = 0; k < b.rows; k++)
                for (int l = 0; l < b.cols; l++)
                    m.at(i * b.rows + k, j * b.cols + l) = a.at(i, j) * b.at(k, l);
        }
    return m;
}

inline IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    IntMatrix m((int)rows.size(), rows.size() ? (int)rows.begin()->size() : 0);
    int i = 0;
    for (const auto& row : rows) {
        if ((int)row.size() != m.cols) throw std::invalid_argument("matrix: ragged rows");
        int j = 0;
        for (long v : row) m.at(i, j++) = v;
        i++;
    }
    return m;
}

/* Bareiss fraction-free elimination; exact for arbitrary size */
inline Int determinant(IntMatrix a) {
    if (a.rows != a.cols) throw std::invalid_argument("matrix: determinant of non-square");
    int n = a.rows;
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; k++) {
        if (a.at(k, k) == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; i++)
                if (a.at(i, k) != 0) { swap = i; break; }
            if (swap < 0) return 0;
            for (int j = 0; j < n; j++) std::swap(a.at(k, j), a.at(swap, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; i++)
            for (int j = k + 1; j < n; j++) {
                Int v = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a.at(i, j) = v;
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

inline std::string to_string(const IntMatrix& m) {
    std::string s = "[";
    for (int i = 0; i < m.rows; i++) {
        s += i ? "; " : "";
        for (int j = 0; j < m.cols; j++) s += (j ? "," : "") + m.at(i, j).get_str();
    }
    return s + "]";
}

}  // namespace cpslice
