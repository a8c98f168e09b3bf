#pragma once

#include "period_strata/ring.hpp"

#include <string>
#include <vector>

namespace period_strata {

// Dense matrix over one of the supported rings. Entries are stored as
// canonical polynomial representatives of the ring.
class Matrix {
public:
    Matrix(Ring ring, size_t rows, size_t cols);
    Matrix(Ring ring, size_t rows, size_t cols, const std::vector<Poly>& row_major);

    static Matrix identity(const Ring& ring, size_t n);
    static Matrix diagonal(const Ring& ring, const std::vector<Poly>& d);

    const Ring& ring() const { return ring_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const Poly& operator()(size_t i, size_t j) const { return e_[i * cols_ + j]; }
    void set(size_t i, size_t j, const Poly& v) { e_[i * cols_ + j] = ring_.reduce(v); }
    RingElement element(size_t i, size_t j) const { return {ring_, (*this)(i, j)}; }

    bool is_zero() const;
    Matrix transpose() const;
    Matrix block(size_t r0, size_t c0, size_t nr, size_t nc) const;
    void set_block(size_t r0, size_t c0, const Matrix& b);
    Matrix column(size_t j) const { return block(0, j, rows_, 1); }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator*(const Poly& s) const;
    Matrix operator-() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

    std::string to_string() const;

    // row ops used by elimination; no reduction checks beyond the ring's
    void swap_rows(size_t a, size_t b);
    void swap_cols(size_t a, size_t b);
    void add_row_multiple(size_t target, size_t src, const Poly& f);
    void add_col_multiple(size_t target, size_t src, const Poly& f);
    void scale_row(size_t r, const Poly& f);

private:
    void check_shape(const Matrix& o) const;
    Ring ring_;
    size_t rows_, cols_;
    std::vector<Poly> e_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);
Matrix map_entries(const Matrix& a, const RingMap& m);
// evaluate a polynomial with Q coefficients at a square matrix
Matrix eval_at_matrix(const Poly& p, const Matrix& a);

// Dense matrix over Q for the finite-dimensional computations.
struct QMatrix {
    size_t rows = 0, cols = 0;
    std::vector<Rational> e;

    QMatrix() = default;
    QMatrix(size_t r, size_t c) : rows(r), cols(c), e(r * c) {}
    Rational& operator()(size_t i, size_t j) { return e[i * cols + j]; }
    const Rational& operator()(size_t i, size_t j) const { return e[i * cols + j]; }
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
size_t rank(QMatrix a);
// basis of the right null space, one column per vector
QMatrix nullspace(const QMatrix& a);
// column concatenation
QMatrix hstack(const QMatrix& a, const QMatrix& b);

// Q-linear expansion: a matrix over Q[x]/(f) of degree d becomes a
// (rows*d) x (cols*d) rational matrix in the basis 1, x, ..., x^{d-1}.
// Matrices over Q are returned as is. Polynomial rings are rejected.
QMatrix expand_over_q(const Matrix& a);

}  // namespace period_strata
