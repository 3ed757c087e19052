#pragma once

namespace qmi {

/// All numerical thresholds in one place. Each is relative to the scale of
/// its input (Frobenius or spectral norm) unless noted otherwise.
struct Tolerances {
    double sym = 1e-12;        // Hermitian symmetry check, vs ||A||_F
    double eig = 1e-12;        // eigendecomposition residual, vs max(1, ||A||_F)
    double pd = 1e-10;         // definiteness band, vs max(1, ||Q||_2)
    double pivot = 1e-13;      // LU pivot magnitude, vs ||A||_F
    double jacobi_off = 1e-13; // Jacobi off-diagonal mass, vs ||A||_F
    int jacobi_max_sweeps = 40;
    double sign_step = 1e-13;  // Newton sign relative step size
};

inline const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

} // namespace qmi
