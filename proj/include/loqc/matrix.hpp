// Small dense complex matrices for mode transformations.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

namespace loqc {

using cplx = std::complex<double>;

class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}
    Matrix(int rows, int cols, std::vector<cplx> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != static_cast<size_t>(rows) * cols)
            throw std::invalid_argument("Matrix: data size mismatch");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const cplx& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    Matrix adjoint() const {
        Matrix m(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix product: shape mismatch");
        Matrix m(a.rows_, b.cols_);
        for (int r = 0; r < a.rows_; ++r)
            for (int k = 0; k < a.cols_; ++k) {
                cplx ark = a(r, k);
                if (ark == cplx{}) continue;
                for (int c = 0; c < b.cols_; ++c) m(r, c) += ark * b(k, c);
            }
        return m;
    }

    // max |(U U^dag - I)_{rc}|; zero for exact unitaries.
    double unitarity_deviation() const {
        if (rows_ != cols_) return 1.0;
        Matrix p = (*this) * adjoint();
        double dev = 0.0;
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) {
                cplx want = (r == c) ? cplx{1.0} : cplx{};
                dev = std::max(dev, std::abs(p(r, c) - want));
            }
        return dev;
    }

    double max_abs_diff(const Matrix& other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_) return 1.0 / 0.0;
        double dev = 0.0;
        for (size_t i = 0; i < data_.size(); ++i)
            dev = std::max(dev, std::abs(data_[i] - other.data_[i]));
        return dev;
    }

  private:
    int rows_, cols_;
    std::vector<cplx> data_;
};

// Haar-ish random unitary: Gaussian matrix orthonormalized column by column.
template <class Rng>
Matrix random_unitary(int n, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix u(n, n);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) u(r, c) = cplx(gauss(rng), gauss(rng));
        for (int prev = 0; prev < c; ++prev) {
            cplx overlap{};
            for (int r = 0; r < n; ++r) overlap += std::conj(u(r, prev)) * u(r, c);
            for (int r = 0; r < n; ++r) u(r, c) -= overlap * u(r, prev);
        }
        double norm = 0.0;
        for (int r = 0; r < n; ++r) norm += std::norm(u(r, c));
        norm = std::sqrt(norm);
        for (int r = 0; r < n; ++r) u(r, c) /= norm;
    }
    return u;
}

}  // namespace loqc
