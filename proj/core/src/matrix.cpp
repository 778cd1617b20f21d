#include "opcat/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace opcat {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols != rhs.rows) throw StructuralError("matrix product shape mismatch");
    Matrix out(rows, rhs.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Rat& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < rhs.cols; ++j) {
                const Rat& y = rhs.at(k, j);
                if (y != 0) out.at(i, j) += x * y;
            }
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows != rhs.rows || cols != rhs.cols) throw StructuralError("matrix sum shape mismatch");
    Matrix out(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] + rhs.a[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows != rhs.rows || cols != rhs.cols) throw StructuralError("matrix diff shape mismatch");
    Matrix out(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] - rhs.a[i];
    return out;
}

Matrix Matrix::scaled(const Rat& c) const {
    Matrix out(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] * c;
    return out;
}

bool Matrix::operator==(const Matrix& rhs) const {
    return rows == rhs.rows && cols == rhs.cols && a == rhs.a;
}

RatVec Matrix::apply(const RatVec& v) const {
    if (static_cast<int>(v.size()) != cols) throw StructuralError("matrix apply shape mismatch");
    RatVec out(rows);
    for (int i = 0; i < rows; ++i) {
        Rat s = 0;
        for (int j = 0; j < cols; ++j)
            if (at(i, j) != 0 && v[j] != 0) s += at(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

Matrix Matrix::transposed() const {
    Matrix out(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out.at(j, i) = at(i, j);
    return out;
}

std::string Matrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) os << (j ? " " : "") << rat_str(at(i, j));
        os << "\n";
    }
    return os.str();
}

namespace {

// In-place forward elimination; returns pivot (row, col) pairs.
std::vector<std::pair<int, int>> eliminate(Matrix& m) {
    std::vector<std::pair<int, int>> piv;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int sel = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        Rat inv = 1 / m.at(r, c);
        for (int j = c; j < m.cols; ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            const Rat f = m.at(i, c);
            if (f == 0) continue;
            for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        piv.emplace_back(r, c);
        ++r;
    }
    return piv;
}

}  // namespace

int rank(Matrix m) {
    return static_cast<int>(eliminate(m).size());
}

std::vector<RatVec> kernel_basis(const Matrix& m) {
    Matrix e = m;
    auto piv = eliminate(e);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto& [r, c] : piv) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        RatVec v(m.cols);
        v[c] = 1;
        for (auto& [pr, pc] : piv) v[pc] = -e.at(pr, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

int kernel_dim(const Matrix& m) {
    return m.cols - rank(m);
}

bool solve(const Matrix& A, const RatVec& b, RatVec& x) {
    if (static_cast<int>(b.size()) != A.rows) throw StructuralError("solve shape mismatch");
    Matrix aug(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[i];
    }
    Matrix e = aug;
    auto piv = eliminate(e);
    for (auto& [r, c] : piv)
        if (c == A.cols) return false;  // inconsistent
    x.assign(A.cols, Rat(0));
    for (auto& [r, c] : piv) x[c] = e.at(r, A.cols);
    return true;
}

RatVec RowSpan::reduce(RatVec v) const {
    for (size_t i = 0; i < rows.size(); ++i) {
        const Rat& f = v[pivots[i]];
        if (f == 0) continue;
        const Rat c = f;
        for (int j = 0; j < n; ++j)
            if (rows[i][j] != 0) v[j] -= c * rows[i][j];
    }
    return v;
}

bool RowSpan::contains(const RatVec& v) const {
    RatVec r = reduce(v);
    for (const auto& x : r)
        if (x != 0) return false;
    return true;
}

bool RowSpan::add(RatVec v) {
    v = reduce(std::move(v));
    int p = -1;
    for (int j = 0; j < n; ++j)
        if (v[j] != 0) {
            p = j;
            break;
        }
    if (p < 0) return false;
    Rat inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    // back-reduce existing rows against the new one
    for (size_t i = 0; i < rows.size(); ++i) {
        const Rat f = rows[i][p];
        if (f == 0) continue;
        for (int j = 0; j < n; ++j)
            if (v[j] != 0) rows[i][j] -= f * v[j];
    }
    rows.push_back(std::move(v));
    pivots.push_back(p);
    return true;
}

Quotient make_quotient(const RowSpan& span) {
    Quotient q;
    q.n = span.n;
    std::vector<bool> is_pivot(span.n, false);
    for (int p : span.pivots) is_pivot[p] = true;
    for (int j = 0; j < span.n; ++j)
        if (!is_pivot[j]) q.keep.push_back(j);
    int k = static_cast<int>(q.keep.size());
    q.proj = Matrix(k, span.n);
    // class coords of e_j: reduce e_j mod span, read kept coordinates
    for (int j = 0; j < span.n; ++j) {
        RatVec e(span.n);
        e[j] = 1;
        RatVec r = span.reduce(std::move(e));
        for (int i = 0; i < k; ++i) q.proj.at(i, j) = r[q.keep[i]];
    }
    q.sect = Matrix(span.n, k);
    for (int i = 0; i < k; ++i) q.sect.at(q.keep[i], i) = 1;
    return q;
}

}  // namespace opcat
