#pragma once

#include <vector>

#include "qmi/matrix.hpp"
#include "qmi/tolerances.hpp"

namespace qmi {

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and
/// a unitary matrix whose columns are the matching eigenvectors.
struct HermitianEig {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

enum class DefMode { Open, Closed };

struct PdResult {
    bool positive;
    double min_eigenvalue;
};

/// Cyclic Jacobi on a Hermitian matrix. Converges when the off-diagonal
/// Frobenius mass drops below tol.jacobi_off * ||A||_F, capped at
/// tol.jacobi_max_sweeps sweeps.
///
/// Throws NotHermitianError if ||A - A*||_F > tol.sym * ||A||_F, and
/// NoConvergenceError past the sweep cap.
HermitianEig hermitian_eig(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

/// Open:   lambda_min >  tol.pd * max(1, ||Q||_2)
/// Closed: lambda_min >= -tol.pd * max(1, ||Q||_2)
/// The minimal eigenvalue is reported either way.
PdResult is_positive_definite(const ComplexMatrix& q, DefMode mode,
                              const Tolerances& tol = default_tolerances());

/// Hermitian PD square root via eigendecomposition.
ComplexMatrix sqrt_pd(const ComplexMatrix& p, const Tolerances& tol = default_tolerances());

/// Hermitian PD inverse square root (same eigendecomposition route).
ComplexMatrix inv_sqrt_pd(const ComplexMatrix& p, const Tolerances& tol = default_tolerances());

/// X with A X = B by LU with partial pivoting. Throws SingularError when a
/// pivot magnitude falls below tol.pivot * ||A||_F.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b,
                    const Tolerances& tol = default_tolerances());

ComplexMatrix inverse(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

/// det(A) from the LU factorization (product of pivots, swap-signed).
Complex determinant(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

/// sqrt(lambda_max(A* A)); works for rectangular A.
double spectral_norm(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

/// rho(X Y^{-1}) for Hermitian PD X, Y, computed as
/// lambda_max(Y^{-1/2} X Y^{-1/2}) — the Hermitian reduction, no general
/// eigensolver involved.
double rho_pd_pencil(const ComplexMatrix& x, const ComplexMatrix& y,
                     const Tolerances& tol = default_tolerances());

} // namespace qmi
