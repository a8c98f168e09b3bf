#include "period_strata/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace period_strata {

Matrix::Matrix(Ring ring, size_t rows, size_t cols) : ring_(std::move(ring)), rows_(rows), cols_(cols), e_(rows * cols) {}

Matrix::Matrix(Ring ring, size_t rows, size_t cols, const std::vector<Poly>& row_major)
    : Matrix(std::move(ring), rows, cols)
{
    if (row_major.size() != rows * cols)
        throw std::invalid_argument("matrix entry count does not match shape");
    for (size_t i = 0; i < e_.size(); ++i)
        e_[i] = ring_.reduce(row_major[i]);
}

Matrix Matrix::identity(const Ring& ring, size_t n)
{
    Matrix m(ring, n, n);
    for (size_t i = 0; i < n; ++i)
        m.e_[i * n + i] = Poly(1);
    return m;
}

Matrix Matrix::diagonal(const Ring& ring, const std::vector<Poly>& d)
{
    Matrix m(ring, d.size(), d.size());
    for (size_t i = 0; i < d.size(); ++i)
        m.set(i, i, d[i]);
    return m;
}

bool Matrix::is_zero() const
{
    for (const auto& p : e_)
        if (!p.is_zero())
            return false;
    return true;
}

Matrix Matrix::transpose() const
{
    Matrix t(ring_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            t.e_[j * rows_ + i] = (*this)(i, j);
    return t;
}

Matrix Matrix::block(size_t r0, size_t c0, size_t nr, size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw std::out_of_range("matrix block out of range");
    Matrix b(ring_, nr, nc);
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j)
            b.e_[i * nc + j] = (*this)(r0 + i, c0 + j);
    return b;
}

void Matrix::set_block(size_t r0, size_t c0, const Matrix& b)
{
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
        throw std::out_of_range("matrix block out of range");
    for (size_t i = 0; i < b.rows_; ++i)
        for (size_t j = 0; j < b.cols_; ++j)
            set(r0 + i, c0 + j, b(i, j));
}

void Matrix::check_shape(const Matrix& o) const
{
    if (!(ring_ == o.ring_))
        throw std::invalid_argument("matrix ring mismatch");
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix shape mismatch");
}

Matrix Matrix::operator+(const Matrix& o) const
{
    check_shape(o);
    Matrix r = *this;
    for (size_t i = 0; i < e_.size(); ++i)
        r.e_[i] += o.e_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const
{
    check_shape(o);
    Matrix r = *this;
    for (size_t i = 0; i < e_.size(); ++i)
        r.e_[i] -= o.e_[i];
    return r;
}

Matrix Matrix::operator-() const
{
    Matrix r = *this;
    for (auto& p : r.e_)
        p = -p;
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const
{
    if (!(ring_ == o.ring_))
        throw std::invalid_argument("matrix ring mismatch");
    if (cols_ != o.rows_)
        throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(ring_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < o.cols_; ++j) {
            Poly acc;
            for (size_t k = 0; k < cols_; ++k) {
                const Poly& a = (*this)(i, k);
                if (a.is_zero())
                    continue;
                acc += a * o(k, j);
            }
            r.set(i, j, acc);
        }
    return r;
}

Matrix Matrix::operator*(const Poly& s) const
{
    Matrix r = *this;
    for (size_t i = 0; i < e_.size(); ++i)
        r.e_[i] = ring_.reduce(e_[i] * s);
    return r;
}

std::string Matrix::to_string() const
{
    std::ostringstream out;
    out << "[";
    for (size_t i = 0; i < rows_; ++i) {
        out << (i ? ", [" : "[");
        for (size_t j = 0; j < cols_; ++j)
            out << (j ? ", " : "") << (*this)(i, j).to_string(ring_.var());
        out << "]";
    }
    out << "]";
    return out.str();
}

void Matrix::swap_rows(size_t a, size_t b)
{
    if (a == b)
        return;
    for (size_t j = 0; j < cols_; ++j)
        std::swap(e_[a * cols_ + j], e_[b * cols_ + j]);
}

void Matrix::swap_cols(size_t a, size_t b)
{
    if (a == b)
        return;
    for (size_t i = 0; i < rows_; ++i)
        std::swap(e_[i * cols_ + a], e_[i * cols_ + b]);
}

void Matrix::add_row_multiple(size_t target, size_t src, const Poly& f)
{
    if (f.is_zero())
        return;
    for (size_t j = 0; j < cols_; ++j) {
        const Poly& s = e_[src * cols_ + j];
        if (!s.is_zero())
            e_[target * cols_ + j] = ring_.reduce(e_[target * cols_ + j] + f * s);
    }
}

void Matrix::add_col_multiple(size_t target, size_t src, const Poly& f)
{
    if (f.is_zero())
        return;
    for (size_t i = 0; i < rows_; ++i) {
        const Poly& s = e_[i * cols_ + src];
        if (!s.is_zero())
            e_[i * cols_ + target] = ring_.reduce(e_[i * cols_ + target] + f * s);
    }
}

void Matrix::scale_row(size_t r, const Poly& f)
{
    for (size_t j = 0; j < cols_; ++j)
        e_[r * cols_ + j] = ring_.reduce(e_[r * cols_ + j] * f);
}

Matrix hstack(const Matrix& a, const Matrix& b)
{
    if (!(a.ring() == b.ring()) || a.rows() != b.rows())
        throw std::invalid_argument("hstack shape mismatch");
    Matrix r(a.ring(), a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

Matrix direct_sum(const Matrix& a, const Matrix& b)
{
    if (!(a.ring() == b.ring()))
        throw std::invalid_argument("direct sum ring mismatch");
    Matrix r(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

Matrix map_entries(const Matrix& a, const RingMap& m)
{
    if (!(a.ring() == m.source()))
        throw std::invalid_argument("matrix over " + a.ring().to_string() + " given to map from " +
                                    m.source().to_string());
    Matrix r(m.target(), a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            r.set(i, j, m.apply(a(i, j)));
    return r;
}

Matrix eval_at_matrix(const Poly& p, const Matrix& a)
{
    if (!a.is_square())
        throw std::invalid_argument("polynomial of a non-square matrix");
    Matrix r(a.ring(), a.rows(), a.cols());
    Matrix id = Matrix::identity(a.ring(), a.rows());
    for (int i = p.degree(); i >= 0; --i)
        r = r * a + id * Poly(p.coeff(i));
    return r;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b)
{
    if (a.cols != b.rows)
        throw std::invalid_argument("rational matrix product shape mismatch");
    QMatrix r(a.rows, b.cols);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t k = 0; k < a.cols; ++k) {
            const Rational& x = a(i, k);
            if (x == 0)
                continue;
            for (size_t j = 0; j < b.cols; ++j)
                r(i, j) += x * b(k, j);
        }
    return r;
}

namespace {

// in-place reduced row echelon form; returns pivot columns
std::vector<size_t> rref(QMatrix& a)
{
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < a.cols && row < a.rows; ++col) {
        size_t p = row;
        while (p < a.rows && a(p, col) == 0)
            ++p;
        if (p == a.rows)
            continue;
        if (p != row)
            for (size_t j = 0; j < a.cols; ++j)
                std::swap(a(p, j), a(row, j));
        Rational inv = 1 / a(row, col);
        for (size_t j = col; j < a.cols; ++j)
            a(row, j) *= inv;
        for (size_t i = 0; i < a.rows; ++i) {
            if (i == row || a(i, col) == 0)
                continue;
            Rational f = a(i, col);
            for (size_t j = col; j < a.cols; ++j)
                if (a(row, j) != 0)
                    a(i, j) -= f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

size_t rank(QMatrix a)
{
    return rref(a).size();
}

QMatrix nullspace(const QMatrix& a)
{
    QMatrix r = a;
    auto pivots = rref(r);
    std::vector<bool> is_pivot(a.cols, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    QMatrix basis(a.cols, a.cols - pivots.size());
    size_t k = 0;
    for (size_t free = 0; free < a.cols; ++free) {
        if (is_pivot[free])
            continue;
        basis(free, k) = 1;
        for (size_t i = 0; i < pivots.size(); ++i)
            basis(pivots[i], k) = -r(i, free);
        ++k;
    }
    return basis;
}

QMatrix hstack(const QMatrix& a, const QMatrix& b)
{
    if (a.rows != b.rows)
        throw std::invalid_argument("hstack shape mismatch");
    QMatrix r(a.rows, a.cols + b.cols);
    for (size_t i = 0; i < a.rows; ++i) {
        for (size_t j = 0; j < a.cols; ++j)
            r(i, j) = a(i, j);
        for (size_t j = 0; j < b.cols; ++j)
            r(i, a.cols + j) = b(i, j);
    }
    return r;
}

QMatrix expand_over_q(const Matrix& a)
{
    const Ring& ring = a.ring();
    if (ring.kind() == RingKind::polynomials)
        throw std::invalid_argument("Q-expansion of a matrix over a polynomial ring");
    const size_t d = ring.qdim();
    QMatrix q(a.rows() * d, a.cols() * d);
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            const Poly& v = a(i, j);
            if (v.is_zero())
                continue;
            // column c of the block holds v * x^c reduced
            Poly cur = v;
            for (size_t c = 0; c < d; ++c) {
                for (size_t r = 0; r < d; ++r)
                    q(i * d + r, j * d + c) = cur.coeff(static_cast<int>(r));
                if (c + 1 < d)
                    cur = ring.reduce(cur * Poly::x());
            }
        }
    return q;
}

}  // namespace period_strata
