#include "qmi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qmi {

namespace {

void require_square(const ComplexMatrix& a, const char* what) {
    if (!a.is_square())
        throw DimensionMismatchError(std::string(what) + ": matrix must be square");
}

void require_hermitian(const ComplexMatrix& a, const Tolerances& tol, const char* what) {
    require_square(a, what);
    const double scale = a.frobenius_norm();
    double off = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            off += std::norm(a(i, j) - std::conj(a(j, i)));
    if (std::sqrt(off) > tol.sym * std::max(scale, 1e-300))
        throw NotHermitianError(std::string(what) + ": matrix is not Hermitian");
}

double offdiag_mass(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j)
                s += std::norm(a(i, j));
    return std::sqrt(s);
}

struct LuFactors {
    ComplexMatrix lu;          // packed L (unit diag) and U
    std::vector<std::size_t> perm;
    int swaps = 0;
};

LuFactors lu_factor(const ComplexMatrix& a, const Tolerances& tol) {
    require_square(a, "solve");
    const std::size_t n = a.rows();
    const double scale = a.frobenius_norm();
    if (scale == 0.0)
        throw SingularError("solve: zero matrix");
    const double pivot_floor = tol.pivot * scale;

    LuFactors f{a, std::vector<std::size_t>(n), 0};
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(f.lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(f.lu(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best < pivot_floor)
            throw SingularError("solve: pivot below threshold, matrix singular to working precision");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(f.lu(k, j), f.lu(p, j));
            std::swap(f.perm[k], f.perm[p]);
            ++f.swaps;
        }
        const Complex piv = f.lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex m = f.lu(i, k) / piv;
            f.lu(i, k) = m;
            if (m == Complex(0.0, 0.0))
                continue;
            for (std::size_t j = k + 1; j < n; ++j)
                f.lu(i, j) -= m * f.lu(k, j);
        }
    }
    return f;
}

ComplexMatrix lu_solve(const LuFactors& f, const ComplexMatrix& b) {
    const std::size_t n = f.lu.rows();
    if (b.rows() != n)
        throw DimensionMismatchError("solve: right-hand side row count mismatch");
    const std::size_t m = b.cols();
    ComplexMatrix x(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            x(i, j) = b(f.perm[i], j);
    // forward substitution, unit lower triangle
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex m_ik = f.lu(i, k);
            if (m_ik == Complex(0.0, 0.0))
                continue;
            for (std::size_t j = 0; j < m; ++j)
                x(i, j) -= m_ik * x(k, j);
        }
    // back substitution
    for (std::size_t k = n; k-- > 0;) {
        const Complex piv = f.lu(k, k);
        for (std::size_t j = 0; j < m; ++j)
            x(k, j) /= piv;
        for (std::size_t i = 0; i < k; ++i) {
            const Complex u_ik = f.lu(i, k);
            if (u_ik == Complex(0.0, 0.0))
                continue;
            for (std::size_t j = 0; j < m; ++j)
                x(i, j) -= u_ik * x(k, j);
        }
    }
    x.check_finite();
    return x;
}

} // namespace

HermitianEig hermitian_eig(const ComplexMatrix& input, const Tolerances& tol) {
    require_hermitian(input, tol, "hermitian_eig");
    const std::size_t n = input.rows();
    ComplexMatrix a = input.hermitian_part(); // exact Hermitian working copy
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double norm_a = a.frobenius_norm();
    const double off_target = tol.jacobi_off * std::max(norm_a, 1e-300);

    int sweep = 0;
    while (offdiag_mass(a) > off_target) {
        if (sweep++ >= tol.jacobi_max_sweeps)
            throw NoConvergenceError("hermitian_eig: Jacobi sweep cap exceeded");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0)
                    continue;
                // unitary rotation zeroing a(p,q); phase carries apq's argument
                const Complex phase = apq / r;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex sp = s * phase;

                for (std::size_t i = 0; i < n; ++i) {
                    const Complex aip = a(i, p);
                    const Complex aiq = a(i, q);
                    a(i, p) = c * aip - std::conj(sp) * aiq;
                    a(i, q) = sp * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex apj = a(p, j);
                    const Complex aqj = a(q, j);
                    a(p, j) = c * apj - sp * aqj;
                    a(q, j) = std::conj(sp) * apj + c * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);

                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vip = v(i, p);
                    const Complex viq = v(i, q);
                    v(i, p) = c * vip - std::conj(sp) * viq;
                    v(i, q) = sp * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEig out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i)
            out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

PdResult is_positive_definite(const ComplexMatrix& q, DefMode mode, const Tolerances& tol) {
    const HermitianEig eig = hermitian_eig(q, tol);
    const double lo = eig.eigenvalues.front();
    const double hi = eig.eigenvalues.back();
    const double scale = std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    const bool ok = (mode == DefMode::Open) ? lo > tol.pd * scale : lo >= -tol.pd * scale;
    return {ok, lo};
}

namespace {

ComplexMatrix pd_power(const ComplexMatrix& p, double exponent, const Tolerances& tol,
                       const char* what) {
    const HermitianEig eig = hermitian_eig(p, tol);
    const double lo = eig.eigenvalues.front();
    const double hi = eig.eigenvalues.back();
    const double scale = std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    if (lo <= tol.pd * scale)
        throw NotPositiveDefiniteError(std::string(what) + ": matrix is not positive definite");
    const std::size_t n = p.rows();
    ComplexMatrix scaled = eig.eigenvectors;
    for (std::size_t j = 0; j < n; ++j) {
        const double f = std::pow(eig.eigenvalues[j], exponent);
        for (std::size_t i = 0; i < n; ++i)
            scaled(i, j) *= f;
    }
    return (scaled * eig.eigenvectors.adjoint()).hermitian_part();
}

} // namespace

ComplexMatrix sqrt_pd(const ComplexMatrix& p, const Tolerances& tol) {
    return pd_power(p, 0.5, tol, "sqrt_pd");
}

ComplexMatrix inv_sqrt_pd(const ComplexMatrix& p, const Tolerances& tol) {
    return pd_power(p, -0.5, tol, "inv_sqrt_pd");
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
    return lu_solve(lu_factor(a, tol), b);
}

ComplexMatrix inverse(const ComplexMatrix& a, const Tolerances& tol) {
    return solve(a, ComplexMatrix::identity(a.rows()), tol);
}

Complex determinant(const ComplexMatrix& a, const Tolerances& tol) {
    LuFactors f = [&] {
        try {
            return lu_factor(a, tol);
        } catch (const SingularError&) {
            return LuFactors{ComplexMatrix(a.rows(), a.cols()), {}, -1};
        }
    }();
    if (f.swaps < 0)
        return Complex(0.0, 0.0);
    Complex det = (f.swaps % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        det *= f.lu(i, i);
    return det;
}

double spectral_norm(const ComplexMatrix& a, const Tolerances& tol) {
    const ComplexMatrix gram = (a.adjoint() * a).hermitian_part();
    const HermitianEig eig = hermitian_eig(gram, tol);
    return std::sqrt(std::max(0.0, eig.eigenvalues.back()));
}

double rho_pd_pencil(const ComplexMatrix& x, const ComplexMatrix& y, const Tolerances& tol) {
    require_hermitian(x, tol, "rho_pd_pencil");
    const ComplexMatrix ih = inv_sqrt_pd(y, tol);
    const PdResult x_pd = is_positive_definite(x, DefMode::Open, tol);
    if (!x_pd.positive)
        throw NotPositiveDefiniteError("rho_pd_pencil: left argument is not positive definite");
    const ComplexMatrix reduced = (ih * x * ih).hermitian_part();
    const HermitianEig eig = hermitian_eig(reduced, tol);
    return eig.eigenvalues.back();
}

} // namespace qmi
