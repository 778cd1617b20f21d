#pragma once

#include <string>
#include <vector>

#include "opcat/common.hpp"

namespace opcat {

using RatVec = std::vector<Rat>;

// Dense matrix over exact rationals. Desk-scale dimensions; no pivoting
// heuristics needed beyond nonzero search.
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    static Matrix identity(int n);

    Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool is_zero() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(const Rat& c) const;
    bool operator==(const Matrix& rhs) const;

    RatVec apply(const RatVec& v) const;  // matrix * column vector
    Matrix transposed() const;
    std::string str() const;
};

int rank(Matrix m);  // by value: elimination is destructive

// columns of the kernel, as vectors of length m.cols
std::vector<RatVec> kernel_basis(const Matrix& m);
int kernel_dim(const Matrix& m);

// Solve A x = b; returns false if inconsistent. When the solution is not
// unique an arbitrary representative (free vars = 0) is produced.
bool solve(const Matrix& A, const RatVec& b, RatVec& x);

// Incrementally maintained row span in reduced echelon form.
struct RowSpan {
    int n = 0;
    std::vector<RatVec> rows;    // reduced, pivot entries 1
    std::vector<int> pivots;     // pivot column per row, increasing order not guaranteed
    explicit RowSpan(int ncols) : n(ncols) {}
    // reduce v against the span in place; returns residual
    RatVec reduce(RatVec v) const;
    bool contains(const RatVec& v) const;
    bool add(RatVec v);  // true if dimension grew
    int dim() const { return static_cast<int>(rows.size()); }
};

// Quotient of Q^n by a RowSpan: coordinates = non-pivot indices.
struct Quotient {
    int n = 0;
    std::vector<int> keep;  // non-pivot coordinate indices, increasing
    Matrix proj;            // keep.size() x n : v -> class coords
    Matrix sect;            // n x keep.size() : class coords -> representative
};
Quotient make_quotient(const RowSpan& span);

}  // namespace opcat
