#include "qtel/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qtel {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix shape mismatch");
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
    require_same_shape(*this, o);
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
    require_same_shape(*this, o);
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    ComplexMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cdouble v = a_[i * cols_ + k];
            if (v == cdouble{}) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.a_[i * o.cols_ + j] += v * o.a_[k * o.cols_ + j];
        }
    return r;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = std::conj(a_[i]);
    return r;
}

ComplexMatrix ComplexMatrix::scaled(cdouble s) const {
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = s * a_[i];
    return r;
}

cdouble ComplexMatrix::trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
    cdouble t{};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix operator*(cdouble s, const ComplexMatrix& m) { return m.scaled(s); }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b);
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            d = std::max(d, std::abs(a(i, j) - b(i, j)));
    return d;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cdouble v = a(i, j);
            if (v == cdouble{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = v * b(k, l);
        }
    return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
    const std::size_t n = std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                                          std::multiplies<>());
    if (rho.rows() != n || rho.cols() != n)
        throw std::invalid_argument("partial_trace: dims do not match matrix size");
    for (std::size_t k : keep)
        if (k >= dims.size()) throw std::invalid_argument("partial_trace: keep index out of range");

    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) kept[k] = true;

    std::size_t m = 1;
    for (std::size_t k : keep) m *= dims[k];

    // Decode a flat index into per-subsystem digits (tensor order, row-major).
    auto digits = [&](std::size_t idx) {
        std::vector<std::size_t> d(dims.size());
        for (std::size_t s = dims.size(); s-- > 0;) {
            d[s] = idx % dims[s];
            idx /= dims[s];
        }
        return d;
    };

    ComplexMatrix out(m, m);
    for (std::size_t r = 0; r < n; ++r) {
        const auto rd = digits(r);
        for (std::size_t c = 0; c < n; ++c) {
            const auto cd = digits(c);
            bool diag = true;
            for (std::size_t s = 0; s < dims.size(); ++s)
                if (!kept[s] && rd[s] != cd[s]) { diag = false; break; }
            if (!diag) continue;
            std::size_t ro = 0, co = 0;
            for (std::size_t k : keep) {
                ro = ro * dims[k] + rd[k];
                co = co * dims[k] + cd[k];
            }
            out(ro, co) += rho(r, c);
        }
    }
    return out;
}

EigResult hermitian_eig(const ComplexMatrix& h) {
    const std::size_t n = h.rows();
    if (n < 2 || n > 16) throw std::invalid_argument("hermitian_eig: dimension must be 2..16");
    if (!is_hermitian(h, 1e-12)) throw std::invalid_argument("hermitian_eig: input not Hermitian");

    ComplexMatrix a = h;
    // Symmetrize exactly so roundoff in the input cannot bias the iteration.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cdouble mean = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = mean;
            a(j, i) = std::conj(mean);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    constexpr double kOffTol = 1e-14;
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off = std::max(off, std::abs(a(i, j)));
        if (off < kOffTol) {
            EigResult res;
            res.values.resize(n);
            for (std::size_t i = 0; i < n; ++i) res.values[i] = a(i, i).real();
            std::vector<std::size_t> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](std::size_t x, std::size_t y) { return res.values[x] < res.values[y]; });
            std::vector<double> sorted(n);
            ComplexMatrix vs(n, n);
            for (std::size_t c = 0; c < n; ++c) {
                sorted[c] = res.values[order[c]];
                for (std::size_t r = 0; r < n; ++r) vs(r, c) = v(r, order[c]);
            }
            res.values = std::move(sorted);
            res.vectors = std::move(vs);
            return res;
        }

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble g = a(p, q);
                const double ag = std::abs(g);
                if (ag == 0.0) continue;
                const cdouble phase = g / ag;
                const double tau = (a(p, p).real() - a(q, q).real()) / (2.0 * ag);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cdouble s = std::conj(phase) * (t * c);

                // a <- J^dag a J with J acting on rows/columns p,q.
                for (std::size_t j = 0; j < n; ++j) {
                    const cdouble ap = a(p, j), aq = a(q, j);
                    a(p, j) = c * ap + std::conj(s) * aq;
                    a(q, j) = -s * ap + c * aq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cdouble ap = a(i, p), aq = a(i, q);
                    a(i, p) = c * ap + s * aq;
                    a(i, q) = -std::conj(s) * ap + c * aq;
                    const cdouble vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp + s * vq;
                    v(i, q) = -std::conj(s) * vp + c * vq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }
    throw std::runtime_error("hermitian_eig: no convergence in 100 sweeps");
}

ComplexMatrix psd_sqrt(const ComplexMatrix& rho) {
    const EigResult e = hermitian_eig(rho);
    const std::size_t n = rho.rows();
    ComplexMatrix r(n, n);
    std::vector<double> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        double lam = e.values[i];
        if (lam < -1e-10) throw std::invalid_argument("psd_sqrt: matrix not positive semidefinite");
        if (lam < 0.0) lam = 0.0;
        roots[i] = std::sqrt(lam);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cdouble acc{};
            for (std::size_t k = 0; k < n; ++k)
                acc += e.vectors(i, k) * roots[k] * std::conj(e.vectors(j, k));
            r(i, j) = acc;
        }
    return r;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    std::vector<double> x(n), w(n);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration on P_n from the asymptotic root estimate.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double deriv = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double pk = 1.0, pk1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double pk2 = pk1;
                pk1 = pk;
                pk = ((2.0 * j + 1.0) * z * pk1 - j * pk2) / (j + 1.0);
            }
            deriv = n * (z * pk - pk1) / (z * z - 1.0);
            const double dz = pk / deriv;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = mid - half * z;
        x[n - 1 - i] = mid + half * z;
        w[i] = w[n - 1 - i] = 2.0 * half / ((1.0 - z * z) * deriv * deriv);
    }
    return {x, w};
}

}  // namespace qtel
