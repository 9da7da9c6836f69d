#pragma once

#include "projposet/finite_field.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace projposet {

/// Dense row-major matrix over a finite field.
///
/// Convention used throughout the library: vectors are rows, a subspace is the
/// row space of a basis matrix, and a matrix M acts on the right, v -> v * M.
/// Hence A * B is "apply A, then apply B".
class Matrix {
public:
    Matrix() = default;
    Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
    Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

    static Matrix identity(FieldPtr field, std::size_t n);
    static Matrix zero(FieldPtr field, std::size_t rows, std::size_t cols) { return Matrix(std::move(field), rows, cols); }
    /// E_ij: a single one at (i, j).
    static Matrix unit(FieldPtr field, std::size_t n, std::size_t i, std::size_t j);
    static Matrix scalar(FieldPtr field, std::size_t n, Elem value);

    const FieldPtr & field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Elem & operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Elem> & entries() const { return data_; }

    Matrix transposed() const;
    /// Applies a field automorphism entrywise.
    Matrix twisted(FieldAutomorphism sigma) const;
    Matrix scaled(Elem s) const;
    /// Rows [begin, end).
    Matrix row_block(std::size_t begin, std::size_t end) const;

    bool is_zero() const;

    friend Matrix operator*(const Matrix & a, const Matrix & b);
    friend Matrix operator+(const Matrix & a, const Matrix & b);
    friend Matrix operator-(const Matrix & a, const Matrix & b);

    friend bool operator==(const Matrix & a, const Matrix & b);
    /// Shape first, then entries lexicographically by element code.
    friend bool operator<(const Matrix & a, const Matrix & b);

private:
    FieldPtr field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

struct RrefResult {
    Matrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Unique reduced row echelon form; zero rows are kept at the bottom.
RrefResult rref(const Matrix & m);
std::size_t rank(const Matrix & m);

/// Rows spanning {x : M x^T = 0}; count = cols - rank, returned in RREF.
Matrix kernel_basis(const Matrix & m);
/// Rows spanning the row space of M in RREF (the image of v -> v * M).
Matrix image_basis(const Matrix & m);
/// Rows spanning {v : v * M = 0}, the kernel of the map v -> v * M.
Matrix map_kernel_basis(const Matrix & m);

/// Throws SingularMatrix on rank-deficient input.
Matrix inverse(const Matrix & m);
bool is_invertible(const Matrix & m);
bool is_idempotent(const Matrix & m);

Matrix vstack(const Matrix & top, const Matrix & bottom);

/// v * M
std::vector<Elem> row_times(std::span<const Elem> v, const Matrix & m);

/// Scales so that the first nonzero entry of the first row is 1. Zero matrices
/// are returned unchanged.
Matrix normalize_first_nonzero(const Matrix & m);

/// Bijection between matrices of a fixed shape and integers in [0, q^(rows*cols)):
/// entries read as base-q digits, row-major, first entry most significant.
std::uint64_t matrix_code(const Matrix & m);
Matrix matrix_from_code(FieldPtr field, std::size_t rows, std::size_t cols, std::uint64_t code);
std::uint64_t matrix_count(const Field & field, std::size_t rows, std::size_t cols);

/// Every invertible n x n matrix whose first row has leading nonzero entry 1,
/// i.e. one representative per scalar class, in increasing code order.
std::vector<Matrix> normalized_invertible_matrices(FieldPtr field, std::size_t n);

} // namespace projposet
