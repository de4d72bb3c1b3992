#pragma once

#include "ladderpoly/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ladderpoly {

/// Small row-major dense matrix; Gram matrices and truncated ladder operators.
template <Scalar T>
class DenseMatrix
{
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows)
        , cols_(cols)
        , data_(rows * cols, T(0))
    {
    }

    static DenseMatrix identity(std::size_t n)
    {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    DenseMatrix transposed() const
    {
        DenseMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix dimension mismatch");
        DenseMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (is_zero(aik))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix dimension mismatch");
        DenseMatrix out = a;
        for (std::size_t i = 0; i < out.data_.size(); ++i)
            out.data_[i] -= b.data_[i];
        return out;
    }

    friend DenseMatrix operator*(const T& s, DenseMatrix a)
    {
        for (T& v : a.data_)
            v *= s;
        return a;
    }

    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

} // namespace ladderpoly
