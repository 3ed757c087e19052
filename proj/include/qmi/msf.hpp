#pragma once

#include <vector>

#include "qmi/disks.hpp"
#include "qmi/linalg.hpp"
#include "qmi/matrix.hpp"

namespace qmi::msf {

/// Cayley transform (I - A)(I + A)^{-1}. Throws MinusOneInSpectrumError
/// when I + A is singular to working precision.
ComplexMatrix cayley(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

/// ||C(C(A)) - A||_F — the involution residual.
double cayley_involution_check(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

/// One Newton step (X + X^{-1})/2.
ComplexMatrix newton_sign_step(const ComplexMatrix& x, const Tolerances& tol = default_tolerances());

struct SignResult {
    ComplexMatrix sign;
    int iterations;
    std::vector<double> residual_history; // ||X_{k+1} - X_k||_F / ||X_{k+1}||_F
    bool converged;
};

struct SignOptions {
    int max_iter = 100;
    /// Determinantal scaling acceleration. Off by default so the disk
    /// envelope predictions stay valid for the plain iteration.
    bool scaling = false;
};

/// Newton iteration X_{k+1} = (X_k + X_k^{-1})/2 from X_0 = A, stopping when
/// the relative Frobenius step drops below tol.sign_step.
///
/// On convergence the result satisfies ||E^2 - I||_F <= 1e-8 n and
/// ||EA - AE||_F <= 1e-8 ||A||_F, and positive stability of E*A is certified
/// by solving P(EA) + (EA)*P = I for a positive definite P. Failure of the
/// certificate (including eigenvalues within 1e-10 of the imaginary axis)
/// raises SingularIterateError; exceeding max_iter raises NoConvergenceError.
SignResult sign(const ComplexMatrix& a, const SignOptions& opts = {},
                const Tolerances& tol = default_tolerances());

/// Smallest j with origin_radius_0^(2^j) <= target, from the disk trace.
int predicted_iterations(const disks::EtaParam& eta0, double target_origin_radius);

struct IdentityResiduals {
    double inversion; // ||-C(A) - C(A^{-1})||_F
    double square;    // ||-C(A)^2 - C((A + A^{-1})/2)||_F
};

IdentityResiduals sign_identities_check(const ComplexMatrix& a,
                                        const Tolerances& tol = default_tolerances());

} // namespace qmi::msf
