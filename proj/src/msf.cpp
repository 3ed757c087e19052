#include "qmi/msf.hpp"

#include <cassert>
#include <cmath>

#include "qmi/inclusions.hpp"

namespace qmi::msf {

ComplexMatrix cayley(const ComplexMatrix& a, const Tolerances& tol) {
    if (!a.is_square())
        throw DimensionMismatchError("cayley: matrix must be square");
    const ComplexMatrix eye = ComplexMatrix::identity(a.rows());
    ComplexMatrix shifted_inv(a.rows(), a.cols());
    try {
        shifted_inv = inverse(eye + a, tol);
    } catch (const SingularError&) {
        throw MinusOneInSpectrumError("cayley: I + A is singular, -1 in spectrum");
    }
    const ComplexMatrix c = (eye - a) * shifted_inv;
#ifndef NDEBUG
    // (I - A)(I + A)^{-1} == -I + 2 (I + A)^{-1}
    const ComplexMatrix alt = shifted_inv * Complex(2.0, 0.0) - eye;
    assert((c - alt).frobenius_norm() <= 1e-12 * std::max(1.0, c.frobenius_norm()));
#endif
    return c;
}

double cayley_involution_check(const ComplexMatrix& a, const Tolerances& tol) {
    return (cayley(cayley(a, tol), tol) - a).frobenius_norm();
}

ComplexMatrix newton_sign_step(const ComplexMatrix& x, const Tolerances& tol) {
    return (x + inverse(x, tol)) * Complex(0.5, 0.0);
}

SignResult sign(const ComplexMatrix& a, const SignOptions& opts, const Tolerances& tol) {
    if (!a.is_square())
        throw DimensionMismatchError("sign: matrix must be square");
    const std::size_t n = a.rows();
    const double norm_a = a.frobenius_norm();

    SignResult result{a, 0, {}, false};
    ComplexMatrix x = a;
    for (int k = 0; k < opts.max_iter; ++k) {
        ComplexMatrix x_next(n, n);
        try {
            if (opts.scaling && (result.residual_history.empty() ||
                                 result.residual_history.back() > 1e-2)) {
                const Complex det = determinant(x, tol);
                const double mu = std::pow(std::abs(det), -1.0 / double(n));
                if (std::isfinite(mu) && mu > 0.0)
                    x = x * Complex(mu, 0.0);
            }
            x_next = newton_sign_step(x, tol);
        } catch (const SingularError&) {
            throw SingularIterateError("sign: singular iterate, spectrum touches the imaginary axis");
        }
        const double denom = x_next.frobenius_norm();
        const double step = (x_next - x).frobenius_norm() / std::max(denom, 1e-300);
        result.residual_history.push_back(step);
        x = x_next;
        result.iterations = k + 1;
        if (step <= tol.sign_step) {
            result.converged = true;
            break;
        }
    }
    if (!result.converged)
        throw NoConvergenceError("sign: iteration cap reached without convergence");

    result.sign = x;
    if ((x * x - ComplexMatrix::identity(n)).frobenius_norm() > 1e-8 * double(n))
        throw NoConvergenceError("sign: limit fails the involution contract E^2 = I");
    if ((x * a - a * x).frobenius_norm() > 1e-8 * std::max(norm_a, 1e-300))
        throw NoConvergenceError("sign: limit fails to commute with the input");

    // Positive stability of E*A, certified the Lyapunov way: P(EA) + (EA)*P = I
    // must have a PD solution. A bounded ||P|| certifies the spectrum stays
    // at least 1/(2 ||P||_2) away from the imaginary axis; 5e9 encodes the
    // 1e-10 separation rule. Above the dense Lyapunov solver's size cap only
    // the involution and commutation contracts are enforced.
    if (n <= 30) {
        try {
            const ComplexMatrix ea = x * a;
            const ComplexMatrix p =
                inclusions::solve_lyapunov(ea, ComplexMatrix::identity(n), tol);
            const HermitianEig p_eig = hermitian_eig(p, tol);
            const double p_min = p_eig.eigenvalues.front();
            const double p_max = p_eig.eigenvalues.back();
            if (p_min <= tol.pd * std::max(1.0, std::abs(p_max)) || p_max > 5e9)
                throw SingularIterateError(
                    "sign: stability certificate failed, spectrum within 1e-10 of the imaginary axis");
        } catch (const SingularError&) {
            throw SingularIterateError(
                "sign: stability certificate failed, spectrum within 1e-10 of the imaginary axis");
        }
    }
    return result;
}

int predicted_iterations(const disks::EtaParam& eta0, double target_origin_radius) {
    if (!(target_origin_radius > 0.0))
        throw Error("predicted_iterations: target radius must be positive");
    // same e = eta - 1 recursion as the disk trace
    double e = eta0.value() - 1.0;
    int j = 0;
    while (std::sqrt(e / (e + 2.0)) > target_origin_radius) {
        e = e * (e / (2.0 * (1.0 + e)));
        if (++j > 1000)
            throw NoConvergenceError("predicted_iterations: target not reached in 1000 steps");
    }
    return j;
}

IdentityResiduals sign_identities_check(const ComplexMatrix& a, const Tolerances& tol) {
    const ComplexMatrix c = cayley(a, tol);
    const ComplexMatrix a_inv = inverse(a, tol);
    const double res1 = (-c - cayley(a_inv, tol)).frobenius_norm();
    const ComplexMatrix half = (a + a_inv) * Complex(0.5, 0.0);
    const double res2 = (-(c * c) - cayley(half, tol)).frobenius_norm();
    return IdentityResiduals{res1, res2};
}

} // namespace qmi::msf
