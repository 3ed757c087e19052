#include "qmi/random.hpp"

#include <cmath>

#include "qmi/linalg.hpp"

namespace qmi::rng {

ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rng.complex_normal();
    return m;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
    return random_matrix(rng, n, n).hermitian_part();
}

namespace {

ComplexMatrix conjugate_diag(Rng& rng, std::size_t n, const std::vector<Complex>& d) {
    const ComplexMatrix v = random_unitary(rng, n);
    return (v * ComplexMatrix::diagonal(d) * v.adjoint()).hermitian_part();
}

} // namespace

ComplexMatrix random_hermitian_nonsingular(Rng& rng, std::size_t n) {
    std::vector<Complex> d(n);
    for (auto& e : d) {
        const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        e = Complex(sign * rng.uniform(0.3, 2.0), 0.0);
    }
    return conjugate_diag(rng, n, d);
}

ComplexMatrix random_pd(Rng& rng, std::size_t n) {
    std::vector<Complex> d(n);
    for (auto& e : d)
        e = Complex(rng.uniform(0.5, 2.0), 0.0);
    return conjugate_diag(rng, n, d);
}

ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
    ComplexMatrix g = random_matrix(rng, n, n);
    // modified Gram-Schmidt over columns, resampling degenerate ones
    for (std::size_t j = 0; j < n; ++j) {
        for (int attempt = 0;; ++attempt) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex dot = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    dot += std::conj(g(i, k)) * g(i, j);
                for (std::size_t i = 0; i < n; ++i)
                    g(i, j) -= dot * g(i, k);
            }
            double norm = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                norm += std::norm(g(i, j));
            norm = std::sqrt(norm);
            if (norm > 1e-8) {
                for (std::size_t i = 0; i < n; ++i)
                    g(i, j) /= norm;
                break;
            }
            if (attempt > 16)
                throw Error("random_unitary: repeated degenerate draws");
            for (std::size_t i = 0; i < n; ++i)
                g(i, j) = rng.complex_normal();
        }
    }
    return g;
}

ComplexMatrix random_contraction(Rng& rng, std::size_t n, double norm_bound) {
    if (!(norm_bound >= 0.0))
        throw Error("random_contraction: norm bound must be non-negative");
    const ComplexMatrix u = random_unitary(rng, n);
    const ComplexMatrix v = random_unitary(rng, n);
    std::vector<Complex> d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = Complex(i == 0 ? norm_bound : rng.uniform(0.0, norm_bound), 0.0);
    return u * ComplexMatrix::diagonal(d) * v.adjoint();
}

ComplexMatrix random_stable(Rng& rng, std::size_t n) {
    const ComplexMatrix b = random_matrix(rng, n, n);
    const double shift = spectral_norm(b) + rng.uniform(0.1, 1.0);
    return b + ComplexMatrix::identity(n) * Complex(shift, 0.0);
}

} // namespace qmi::rng
