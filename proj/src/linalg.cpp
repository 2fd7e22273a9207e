#include "semistatic/linalg.hpp"

#include <utility>

#include "semistatic/errors.hpp"

namespace semistatic {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols)
{
    if (!rows.empty()) cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw ShapeMismatch("Matrix::from_rows: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows)
{
    if (!cols.empty()) rows = cols.front().size();
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw ShapeMismatch("Matrix::from_columns: ragged columns");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const { return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }

Vector Matrix::column(std::size_t c) const
{
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& cols) const
{
    Matrix m(rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j) m(r, j) = (*this)(r, cols[j]);
    return m;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Vector Matrix::multiply(const Vector& x) const
{
    if (x.size() != cols_) throw ShapeMismatch("Matrix::multiply: length mismatch");
    Vector y = zeros(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (sgn(x[c]) != 0) y[r] += (*this)(r, c) * x[c];
    return y;
}

EchelonForm reduced_row_echelon(Matrix m)
{
    EchelonForm out;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
        std::size_t p = lead;
        while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != lead)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(lead, j));
        const Rational inv = 1 / m(lead, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(lead, j) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || sgn(m(r, c)) == 0) continue;
            const Rational f = m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(r, j) -= f * m(lead, j);
        }
        out.pivots.push_back(c);
        ++lead;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const Matrix& m) { return reduced_row_echelon(m).pivots.size(); }

std::size_t rank_of(const std::vector<Vector>& family)
{
    if (family.empty()) return 0;
    return rank(Matrix::from_rows(family));
}

std::vector<Vector> null_space(const Matrix& m)
{
    const EchelonForm e = reduced_row_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vector v = zeros(m.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
        basis.push_back(primitive(v));
    }
    return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b)
{
    if (b.size() != m.rows()) throw ShapeMismatch("solve: rhs length mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    const EchelonForm e = reduced_row_echelon(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    Vector x = zeros(m.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
    return x;
}

Projection project(const std::vector<Vector>& family, const Vector& x, const Vector& weights)
{
    const std::size_t n = family.size();
    Matrix gram(n, n);
    Vector rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            gram(i, j) = weighted_dot(weights, family[i], family[j]);
            gram(j, i) = gram(i, j);
        }
        rhs[i] = weighted_dot(weights, family[i], x);
    }
    Projection p;
    p.coefficients = n == 0 ? Vector{} : *solve(gram, rhs);
    p.fitted = zeros(x.size());
    for (std::size_t i = 0; i < n; ++i)
        if (sgn(p.coefficients[i]) != 0) p.fitted = add(p.fitted, scale(family[i], p.coefficients[i]));
    p.residual = subtract(x, p.fitted);
    return p;
}

}  // namespace semistatic
