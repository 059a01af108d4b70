#pragma once

// Small dense double-precision helpers: LU inversion for the Krawczyk
// preconditioner and a balanced Hessenberg + shifted-QR eigenvalue solver
// for the (non-rigorous) stability scan.

#include <complex>
#include <optional>
#include <vector>

namespace ccs {

class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

// Inverse via LU with partial pivoting; nullopt when (numerically) singular.
std::optional<Matrix> lu_inverse(const Matrix& a);

// Eigenvalues of a general real square matrix (balance, elimination to
// Hessenberg form, Francis double-shift QR).  Eigenvalues only.
std::vector<std::complex<double>> eig_nonsymmetric(Matrix a);

} // namespace ccs
