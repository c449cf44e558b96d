#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace qtel {

using cdouble = std::complex<double>;

// Dense complex matrix for small dimensions (states and operators up to 16x16).
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cdouble& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    ComplexMatrix operator+(const ComplexMatrix& o) const;
    ComplexMatrix operator-(const ComplexMatrix& o) const;
    ComplexMatrix operator*(const ComplexMatrix& o) const;
    ComplexMatrix& operator+=(const ComplexMatrix& o);

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix scaled(cdouble s) const;
    cdouble trace() const;

private:
    std::size_t rows_, cols_;
    std::vector<cdouble> a_;
};

ComplexMatrix operator*(cdouble s, const ComplexMatrix& m);

// Largest entrywise absolute difference; matrices must have equal shape.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& m, double tol);

// Kronecker product, row-major convention: (A kron B)(i*p+k, j*q+l) = A(i,j)B(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out the subsystems not listed in `keep`. `dims` are the subsystem
// dimensions in tensor order; `keep` holds indices into `dims`, ascending.
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

struct EigResult {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // eigenvectors as columns, matching `values`
};

// Cyclic Jacobi diagonalization for Hermitian matrices of dimension 2..16.
// Converges when every off-diagonal magnitude drops below 1e-14; throws after
// 100 sweeps without convergence or for non-Hermitian input.
EigResult hermitian_eig(const ComplexMatrix& h);

// Principal square root of a positive semidefinite Hermitian matrix.
// Eigenvalues in [-1e-10, 0) are clamped to zero; anything lower throws.
ComplexMatrix psd_sqrt(const ComplexMatrix& rho);

// Gauss-Legendre nodes and weights on [a, b], ascending nodes.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b);

}  // namespace qtel
