#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "semistatic/rational.hpp"

namespace semistatic {

// Dense row-major matrix of exact rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols = 0);
    static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows = 0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    Matrix select_columns(const std::vector<std::size_t>& cols) const;
    Matrix transpose() const;
    Vector multiply(const Vector& x) const;

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct EchelonForm {
    Matrix reduced;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row, ascending
};

EchelonForm reduced_row_echelon(Matrix m);
std::size_t rank(const Matrix& m);
// Rank of a family of equal-length vectors.
std::size_t rank_of(const std::vector<Vector>& family);

// Basis of {x : m x = 0}, one vector per free column, each primitive.
std::vector<Vector> null_space(const Matrix& m);

// Basic solution of m x = b (free variables set to zero), or nullopt if inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

// Orthogonal projection of x onto span(family) under <u,v> = sum_i w_i u_i v_i.
struct Projection {
    Vector coefficients;  // one per family member, basic solution of the normal equations
    Vector fitted;
    Vector residual;
};
Projection project(const std::vector<Vector>& family, const Vector& x, const Vector& weights);

}  // namespace semistatic
