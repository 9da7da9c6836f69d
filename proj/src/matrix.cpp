#include "projposet/matrix.hpp"

#include "projposet/error.hpp"

#include <algorithm>
#include <functional>

namespace projposet {

namespace {

    void require_same_field(const Matrix & a, const Matrix & b, const char * op)
    {
        if (!same_field(a.field(), b.field()))
            throw InvalidArgument(std::string(op) + ": matrices over different fields");
    }

    std::uint64_t vector_code(std::span<const Elem> v, unsigned q)
    {
        std::uint64_t c = 0;
        for (auto x : v)
            c = c * q + x;
        return c;
    }
}

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols) :
    field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0)
{
}

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> entries) :
    field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries))
{
    if (data_.size() != rows * cols)
        throw InvalidArgument("matrix entry count does not match its shape");
    for (auto x : data_)
        if (x >= field_->order())
            throw InvalidArgument("matrix entry outside GF(" + field_->name() + ")");
}

Matrix Matrix::identity(FieldPtr field, std::size_t n)
{
    Matrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::unit(FieldPtr field, std::size_t n, std::size_t i, std::size_t j)
{
    Matrix m(std::move(field), n, n);
    m(i, j) = 1;
    return m;
}

Matrix Matrix::scalar(FieldPtr field, std::size_t n, Elem value)
{
    Matrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = value;
    return m;
}

Matrix Matrix::transposed() const
{
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::twisted(FieldAutomorphism sigma) const
{
    Matrix t = *this;
    if (sigma.power != 0)
        for (auto & x : t.data_)
            x = field_->apply(sigma, x);
    return t;
}

Matrix Matrix::scaled(Elem s) const
{
    Matrix t = *this;
    for (auto & x : t.data_)
        x = field_->mul(s, x);
    return t;
}

Matrix Matrix::row_block(std::size_t begin, std::size_t end) const
{
    Matrix t(field_, end - begin, cols_);
    std::copy(data_.begin() + begin * cols_, data_.begin() + end * cols_, t.data_.begin());
    return t;
}

bool Matrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x == 0; });
}

Matrix operator*(const Matrix & a, const Matrix & b)
{
    require_same_field(a, b, "multiply");
    if (a.cols_ != b.rows_)
        throw InvalidArgument("multiply: shape mismatch");
    const Field & f = *a.field_;
    Matrix c(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Elem x = a(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
        }
    return c;
}

Matrix operator+(const Matrix & a, const Matrix & b)
{
    require_same_field(a, b, "add");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw InvalidArgument("add: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] = a.field_->add(a.data_[i], b.data_[i]);
    return c;
}

Matrix operator-(const Matrix & a, const Matrix & b)
{
    require_same_field(a, b, "subtract");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw InvalidArgument("subtract: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] = a.field_->sub(a.data_[i], b.data_[i]);
    return c;
}

bool operator==(const Matrix & a, const Matrix & b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ && same_field(a.field_, b.field_);
}

bool operator<(const Matrix & a, const Matrix & b)
{
    if (a.rows_ != b.rows_)
        return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_)
        return a.cols_ < b.cols_;
    return a.data_ < b.data_;
}

RrefResult rref(const Matrix & m)
{
    RrefResult out {m, 0, {}};
    Matrix & r = out.reduced;
    const Field & f = *m.field();
    std::size_t lead = 0;
    for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
        std::size_t piv = lead;
        while (piv < m.rows() && r(piv, c) == 0)
            ++piv;
        if (piv == m.rows())
            continue;
        if (piv != lead)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(r(piv, j), r(lead, j));
        const Elem s = f.inv(r(lead, c));
        for (std::size_t j = c; j < m.cols(); ++j)
            r(lead, j) = f.mul(s, r(lead, j));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == lead || r(i, c) == 0)
                continue;
            const Elem factor = r(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                r(i, j) = f.sub(r(i, j), f.mul(factor, r(lead, j)));
        }
        out.pivots.push_back(c);
        ++lead;
    }
    out.rank = lead;
    return out;
}

std::size_t rank(const Matrix & m)
{
    return rref(m).rank;
}

Matrix kernel_basis(const Matrix & m)
{
    auto [r, rk, pivots] = rref(m);
    const Field & f = *m.field();
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0, p = 0; c < m.cols(); ++c) {
        if (p < pivots.size() && pivots[p] == c)
            ++p;
        else
            free_cols.push_back(c);
    }
    Matrix k(m.field(), free_cols.size(), m.cols());
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        const std::size_t fc = free_cols[t];
        k(t, fc) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            k(t, pivots[i]) = f.neg(r(i, fc));
    }
    return rref(k).reduced;
}

Matrix image_basis(const Matrix & m)
{
    auto res = rref(m);
    return res.reduced.row_block(0, res.rank);
}

Matrix map_kernel_basis(const Matrix & m)
{
    return kernel_basis(m.transposed());
}

Matrix inverse(const Matrix & m)
{
    if (!m.square())
        throw SingularMatrix("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(m.field(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto res = rref(aug);
    if (res.rank < n || res.pivots[n - 1] != n - 1)
        throw SingularMatrix("matrix is singular");
    Matrix inv(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = res.reduced(i, n + j);
    return inv;
}

bool is_invertible(const Matrix & m)
{
    return m.square() && rank(m) == m.rows();
}

bool is_idempotent(const Matrix & m)
{
    return m.square() && m * m == m;
}

Matrix vstack(const Matrix & top, const Matrix & bottom)
{
    if (top.cols() != bottom.cols())
        throw InvalidArgument("vstack: column mismatch");
    require_same_field(top, bottom, "vstack");
    std::vector<Elem> e = top.entries();
    e.insert(e.end(), bottom.entries().begin(), bottom.entries().end());
    return Matrix(top.field(), top.rows() + bottom.rows(), top.cols(), std::move(e));
}

std::vector<Elem> row_times(std::span<const Elem> v, const Matrix & m)
{
    if (v.size() != m.rows())
        throw InvalidArgument("row_times: length mismatch");
    const Field & f = *m.field();
    std::vector<Elem> out(m.cols(), 0);
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0)
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[j] = f.add(out[j], f.mul(v[k], m(k, j)));
    }
    return out;
}

Matrix normalize_first_nonzero(const Matrix & m)
{
    if (m.rows() == 0)
        return m;
    for (auto x : m.row(0))
        if (x != 0)
            return m.scaled(m.field()->inv(x));
    return m;
}

std::uint64_t matrix_code(const Matrix & m)
{
    return vector_code(m.entries(), m.field()->order());
}

Matrix matrix_from_code(FieldPtr field, std::size_t rows, std::size_t cols, std::uint64_t code)
{
    const unsigned q = field->order();
    std::vector<Elem> e(rows * cols);
    for (std::size_t i = e.size(); i-- > 0;) {
        e[i] = static_cast<Elem>(code % q);
        code /= q;
    }
    return Matrix(std::move(field), rows, cols, std::move(e));
}

std::uint64_t matrix_count(const Field & field, std::size_t rows, std::size_t cols)
{
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < rows * cols; ++i)
        c *= field.order();
    return c;
}

std::vector<Matrix> normalized_invertible_matrices(FieldPtr field, std::size_t n)
{
    const Field & f = *field;
    const unsigned q = f.order();
    std::uint64_t vcount = 1;
    for (std::size_t i = 0; i < n; ++i)
        vcount *= q;

    auto vec_of = [&](std::uint64_t code) {
        std::vector<Elem> v(n);
        for (std::size_t i = n; i-- > 0;) {
            v[i] = static_cast<Elem>(code % q);
            code /= q;
        }
        return v;
    };
    std::vector<std::vector<Elem>> all(vcount);
    for (std::uint64_t c = 0; c < vcount; ++c)
        all[c] = vec_of(c);

    std::vector<Matrix> out;
    std::vector<Elem> rows;
    std::function<void(std::size_t, const std::vector<std::uint64_t> &)> extend = [&](std::size_t depth, const std::vector<std::uint64_t> & span) {
        if (depth == n) {
            out.emplace_back(field, n, n, rows);
            return;
        }
        std::vector<bool> in_span(vcount, false);
        for (auto s : span)
            in_span[s] = true;
        for (std::uint64_t c = 0; c < vcount; ++c) {
            if (in_span[c])
                continue;
            const auto & v = all[c];
            if (depth == 0) {
                auto lead = std::find_if(v.begin(), v.end(), [](Elem x) { return x != 0; });
                if (*lead != 1)
                    continue;
            }
            std::vector<std::uint64_t> next;
            next.reserve(span.size() * q);
            for (auto s : span)
                for (unsigned lambda = 0; lambda < q; ++lambda) {
                    std::vector<Elem> w = all[s];
                    for (std::size_t i = 0; i < n; ++i)
                        w[i] = f.add(w[i], f.mul(static_cast<Elem>(lambda), v[i]));
                    next.push_back(vector_code(w, q));
                }
            rows.insert(rows.end(), v.begin(), v.end());
            extend(depth + 1, next);
            rows.resize(rows.size() - n);
        }
    };
    extend(0, {0});
    return out;
}

} // namespace projposet
