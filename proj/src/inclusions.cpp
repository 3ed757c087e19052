#include "qmi/inclusions.hpp"

#include <cmath>
#include <limits>

namespace qmi::inclusions {

const disks::EtaParam& InclusionKind::eta() const {
    if (!eta_)
        throw Error("inclusion kind carries no eta parameter");
    return *eta_;
}

double InclusionKind::ratio() const {
    if (!is_hyper() || eta_->is_infinite())
        return 1.0;
    return eta_->origin_radius_sq();
}

double InclusionKind::inv_eta() const {
    if (!is_hyper() || eta_->is_infinite())
        return 0.0;
    return 1.0 / eta_->value();
}

std::string InclusionKind::name() const {
    switch (family_) {
    case InclusionFamily::Lyapunov: return "lyapunov";
    case InclusionFamily::Stein: return "stein";
    case InclusionFamily::HyperStein: return "hyper-stein";
    case InclusionFamily::HyperLyapunov: return "hyper-lyapunov";
    }
    return "?";
}

namespace {

void require_hermitian_base(const ComplexMatrix& base, const Tolerances& tol) {
    if (!base.is_square())
        throw DimensionMismatchError("base matrix must be square");
    const double scale = std::max(base.frobenius_norm(), 1e-300);
    if ((base - base.adjoint()).frobenius_norm() > tol.sym * scale)
        throw NotHermitianError("base matrix is not Hermitian");
}

} // namespace

QmiSpec build_qmi(const InclusionKind& kind, const ComplexMatrix& base,
                  bool allow_indefinite_base, const Tolerances& tol) {
    require_hermitian_base(base, tol);
    const std::size_t n = base.rows();
    const ComplexMatrix h = base.hermitian_part();

    const HermitianEig base_eig = hermitian_eig(h, tol);
    double max_abs = 0.0, min_abs = std::numeric_limits<double>::infinity();
    for (double ev : base_eig.eigenvalues) {
        max_abs = std::max(max_abs, std::abs(ev));
        min_abs = std::min(min_abs, std::abs(ev));
    }
    if (min_abs <= tol.pd * std::max(1.0, max_abs))
        throw SingularBaseError("build_qmi: base matrix is singular to working precision");
    if (kind.is_hyper() && !allow_indefinite_base && base_eig.eigenvalues.front() <= 0.0)
        throw NotPositiveDefiniteError("build_qmi: hyper kinds require a positive definite base");

    ComplexMatrix m(2 * n, 2 * n);
    switch (kind.family()) {
    case InclusionFamily::Lyapunov:
        m.set_block(0, n, h);
        m.set_block(n, 0, h);
        break;
    case InclusionFamily::Stein:
        m.set_block(0, 0, -h);
        m.set_block(n, n, h);
        break;
    case InclusionFamily::HyperStein:
        m.set_block(0, 0, -h);
        m.set_block(n, n, h * Complex(kind.ratio(), 0.0));
        break;
    case InclusionFamily::HyperLyapunov: {
        const ComplexMatrix diag = h * Complex(-kind.inv_eta(), 0.0);
        m.set_block(0, 0, diag);
        m.set_block(n, n, diag);
        m.set_block(0, n, h);
        m.set_block(n, 0, h);
        break;
    }
    }

    // signature invariant: n positive and n negative eigenvalues
    const HermitianEig m_eig = hermitian_eig(m, tol);
    std::size_t pos = 0, neg = 0;
    for (double ev : m_eig.eigenvalues)
        (ev > 0.0 ? pos : neg)++;
    if (pos != n || neg != n)
        throw Error("build_qmi: block matrix signature is not (n, n)");

    return QmiSpec{m, kind, h};
}

ComplexMatrix evaluate_qmi(const QmiSpec& spec, const ComplexMatrix& a) {
    const std::size_t n = spec.n();
    if (!a.is_square() || a.rows() != n)
        throw DimensionMismatchError("evaluate_qmi: argument size does not match the block form");
    const ComplexMatrix ra = spec.r() * a;
    return (a.adjoint() * spec.w() * a + ra + ra.adjoint() + spec.y()).hermitian_part();
}

MembershipResult is_member(const QmiSpec& spec, const ComplexMatrix& a, DefMode mode,
                           const Tolerances& tol) {
    const ComplexMatrix q = evaluate_qmi(spec, a);
    const PdResult open = is_positive_definite(q, DefMode::Open, tol);
    const PdResult wanted =
        (mode == DefMode::Open) ? open : is_positive_definite(q, DefMode::Closed, tol);
    return MembershipResult{wanted.positive,
                            InclusionCertificate{spec.kind, spec.base, q, wanted.min_eigenvalue,
                                                 open.positive}};
}

double stein_norm_form(const ComplexMatrix& p, const ComplexMatrix& a, const Tolerances& tol) {
    if (!a.is_square() || a.rows() != p.rows())
        throw DimensionMismatchError("stein_norm_form: dimension mismatch");
    const ComplexMatrix s = sqrt_pd(p, tol);
    const ComplexMatrix s_inv = inv_sqrt_pd(p, tol);
    return spectral_norm(s * a * s_inv, tol);
}

std::optional<double> eta_star_lyapunov(const ComplexMatrix& p, const ComplexMatrix& a,
                                        const Tolerances& tol) {
    if (!is_positive_definite(p, DefMode::Open, tol).positive)
        throw NotPositiveDefiniteError("eta_star_lyapunov: P is not positive definite");
    const ComplexMatrix g = (p * a + a.adjoint() * p).hermitian_part();
    if (!is_positive_definite(g, DefMode::Open, tol).positive)
        return std::nullopt; // A outside the classical Lyapunov set
    const ComplexMatrix k = (a.adjoint() * p * a + p).hermitian_part();
    return rho_pd_pencil(k, g, tol);
}

std::optional<double> eta_star_stein(const ComplexMatrix& p, const ComplexMatrix& a,
                                     const Tolerances& tol) {
    const double s = stein_norm_form(p, a, tol);
    if (s >= 1.0)
        return std::nullopt;
    const double s2 = s * s;
    return (1.0 + s2) / (1.0 - s2);
}

ComplexMatrix solve_lyapunov(const ComplexMatrix& a, const ComplexMatrix& q,
                             const Tolerances& tol) {
    if (!a.is_square())
        throw DimensionMismatchError("solve_lyapunov: A must be square");
    const std::size_t n = a.rows();
    if (n > 30)
        throw Error("solve_lyapunov: dense flattened solve capped at n <= 30");
    if (!q.is_square() || q.rows() != n)
        throw DimensionMismatchError("solve_lyapunov: Q size mismatch");
    const double q_scale = std::max(q.frobenius_norm(), 1e-300);
    if ((q - q.adjoint()).frobenius_norm() > tol.sym * q_scale)
        throw NotHermitianError("solve_lyapunov: Q is not Hermitian");

    // (A^T (x) I + I (x) A*) vec(P) = vec(Q), columns stacked
    const std::size_t nn = n * n;
    ComplexMatrix op(nn, nn);
    const ComplexMatrix astar = a.adjoint();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t row = i + j * n;
            for (std::size_t l = 0; l < n; ++l)
                op(row, i + l * n) += a(l, j); // (A^T (x) I)
            for (std::size_t k = 0; k < n; ++k)
                op(row, k + j * n) += astar(i, k); // (I (x) A*)
        }

    ComplexMatrix rhs(nn, 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rhs(i + j * n, 0) = q(i, j);

    const ComplexMatrix vec_p = solve(op, rhs, tol);
    ComplexMatrix pmat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            pmat(i, j) = vec_p(i + j * n, 0);
    return pmat.hermitian_part();
}

std::optional<SynthesizedCertificate> synthesize_certificate(const ComplexMatrix& a,
                                                             const Tolerances& tol) {
    ComplexMatrix p(a.rows(), a.cols());
    try {
        p = solve_lyapunov(a, ComplexMatrix::identity(a.rows()), tol);
    } catch (const SingularError&) {
        // A and -A* share an eigenvalue: spectrum meets the imaginary axis
        return std::nullopt;
    }
    if (!is_positive_definite(p, DefMode::Open, tol).positive)
        return std::nullopt;
    const std::optional<double> eta = eta_star_lyapunov(p, a, tol);
    if (!eta)
        return std::nullopt;
    return SynthesizedCertificate{p, *eta};
}

ComplexMatrix hyper_lyapunov_slack(const ComplexMatrix& p, const ComplexMatrix& a,
                                   double inv_eta) {
    const ComplexMatrix pa = p * a;
    ComplexMatrix q = pa + pa.adjoint();
    if (inv_eta != 0.0)
        q = q - (a.adjoint() * p * a + p) * Complex(inv_eta, 0.0);
    return q.hermitian_part();
}

bool half_step_eta_check(const ComplexMatrix& a, const ComplexMatrix& p, double eta,
                         double theta, const Tolerances& tol) {
    if (!(eta >= 1.0))
        throw Error("half_step_eta_check: eta must be >= 1");
    if (!(theta >= 0.0 && theta <= 1.0))
        throw Error("half_step_eta_check: theta must lie in [0, 1]");
    const ComplexMatrix a_inv = inverse(a, tol);
    const ComplexMatrix a_theta = a * Complex(theta, 0.0) + a_inv * Complex(1.0 - theta, 0.0);

    // Disk-product envelope: C(A) lives in the origin disk of radius r;
    // theta*A + (1-theta)*A^{-1} maps through z -> -z(z+s)/(1+sz) with
    // s = |1-2theta|, whose image stays within radius r(r+s)/(1+rs).
    const double r = std::isfinite(eta) ? std::sqrt((eta - 1.0) / (eta + 1.0)) : 1.0;
    const double s = std::abs(1.0 - 2.0 * theta);
    const double r_target = r * (r + s) / (1.0 + r * s);
    const double eta_target = (1.0 + r_target * r_target) / (1.0 - r_target * r_target);

    const ComplexMatrix q = hyper_lyapunov_slack(p, a_theta, 1.0 / eta_target);
    return is_positive_definite(q, DefMode::Closed, tol).positive;
}

ComplexMatrix similarity_transport(const ComplexMatrix& p, const ComplexMatrix& phat,
                                   const Tolerances& tol) {
    if (p.rows() != phat.rows() || !p.is_square() || !phat.is_square())
        throw DimensionMismatchError("similarity_transport: size mismatch");
    return inv_sqrt_pd(p, tol) * sqrt_pd(phat, tol);
}

bool product_contractivity_check(const ComplexMatrix& p, const ComplexMatrix& a_a,
                                 const disks::EtaParam& eta_a, const ComplexMatrix& a_b,
                                 const disks::EtaParam& eta_b, const Tolerances& tol) {
    const disks::EtaParam eta_c = disks::eta_product(eta_a, eta_b);
    const QmiSpec spec = build_qmi(InclusionKind::hyper_stein(eta_c), p, false, tol);
    return is_member(spec, a_a * a_b, DefMode::Closed, tol).member;
}

bool convex_combination_check(const ComplexMatrix& p, const disks::EtaParam& eta,
                              const ComplexMatrix& a0, const ComplexMatrix& a1, double theta,
                              const Tolerances& tol) {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw Error("convex_combination_check: theta must lie in [0, 1]");
    const double inv_eta = eta.is_infinite() ? 0.0 : 1.0 / eta.value();
    const ComplexMatrix a_theta = a1 * Complex(theta, 0.0) + a0 * Complex(1.0 - theta, 0.0);

    const ComplexMatrix q0 = hyper_lyapunov_slack(p, a0, inv_eta);
    const ComplexMatrix q1 = hyper_lyapunov_slack(p, a1, inv_eta);
    const ComplexMatrix q_theta = hyper_lyapunov_slack(p, a_theta, inv_eta);

    const ComplexMatrix diff = a0 - a1;
    const ComplexMatrix reconstructed =
        q1 * Complex(theta, 0.0) + q0 * Complex(1.0 - theta, 0.0) +
        (diff.adjoint() * p * diff) * Complex(theta * (1.0 - theta) * inv_eta, 0.0);

    const double residual = (reconstructed - q_theta).frobenius_norm();
    const bool identity_ok = residual <= 1e-11 * std::max(1.0, q_theta.frobenius_norm());
    const bool member = is_positive_definite(q_theta, DefMode::Closed, tol).positive;
    return identity_ok && member;
}

bool matrix_convex_combination_check(const InclusionKind& kind,
                                     const std::vector<ComplexMatrix>& blocks,
                                     const std::vector<ComplexMatrix>& isometries,
                                     const Tolerances& tol) {
    if (blocks.empty() || blocks.size() != isometries.size())
        throw DimensionMismatchError("matrix_convex_combination_check: one isometry per block");
    const std::size_t n = isometries.front().cols();
    std::size_t stacked = 0;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        if (isometries[j].cols() != n)
            throw DimensionMismatchError("matrix_convex_combination_check: isometry width mismatch");
        if (!blocks[j].is_square() || blocks[j].rows() != isometries[j].rows())
            throw DimensionMismatchError("matrix_convex_combination_check: block/isometry mismatch");
        if (blocks[j].rows() > n)
            throw DimensionMismatchError("matrix_convex_combination_check: block larger than target size");
        stacked += isometries[j].rows();
    }

    ComplexMatrix gram(n, n);
    for (const auto& v : isometries)
        gram = gram + v.adjoint() * v;
    if ((gram - ComplexMatrix::identity(n)).frobenius_norm() > 1e-12 * std::sqrt(double(n)))
        throw NotIsometryFamilyError("matrix_convex_combination_check: sum v_j* v_j != I");

    // scalar-block coefficients of M for the kind with identity base
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    switch (kind.family()) {
    case InclusionFamily::Lyapunov:
        beta = 1.0;
        break;
    case InclusionFamily::Stein:
        alpha = -1.0;
        gamma = 1.0;
        break;
    case InclusionFamily::HyperStein:
        alpha = -1.0;
        gamma = kind.ratio();
        break;
    case InclusionFamily::HyperLyapunov:
        alpha = -kind.inv_eta();
        beta = 1.0;
        gamma = -kind.inv_eta();
        break;
    }
    const auto slack = [&](const ComplexMatrix& x) {
        const std::size_t m = x.rows();
        return (x.adjoint() * x * Complex(alpha, 0.0) + (x + x.adjoint()) * Complex(beta, 0.0) +
                ComplexMatrix::identity(m) * Complex(gamma, 0.0))
            .hermitian_part();
    };

    ComplexMatrix combination(n, n);
    ComplexMatrix transported(n, n);
    bool blocks_member = true;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        const ComplexMatrix qj = slack(blocks[j]);
        blocks_member = blocks_member && is_positive_definite(qj, DefMode::Closed, tol).positive;
        combination = combination + isometries[j].adjoint() * blocks[j] * isometries[j];
        transported = transported + isometries[j].adjoint() * qj * isometries[j];
    }

    const ComplexMatrix q = slack(combination);
    const bool member = is_positive_definite(q, DefMode::Closed, tol).positive;

    // Slack decomposition: Q = sum v_j* Q_j v_j + (-alpha) G*G with
    // G = (I - VV*) D V; exact, and the correction term vanishes whenever
    // the stacked isometry is square (a single unitary).
    ComplexMatrix v_stack(stacked, n);
    ComplexMatrix d_stack(stacked, stacked);
    std::size_t offset = 0;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        v_stack.set_block(offset, 0, isometries[j]);
        d_stack.set_block(offset, offset, blocks[j]);
        offset += isometries[j].rows();
    }
    const ComplexMatrix dv = d_stack * v_stack;
    const ComplexMatrix g = dv - v_stack * (v_stack.adjoint() * dv);
    const ComplexMatrix identity_rhs =
        (transported + g.adjoint() * g * Complex(-alpha, 0.0)).hermitian_part();
    const double residual = (q - identity_rhs).frobenius_norm();
    const bool identity_ok = residual <= 1e-11 * std::max(1.0, q.frobenius_norm());

    return blocks_member && member && identity_ok;
}

bool inversion_closure_check(const ComplexMatrix& p, const disks::EtaParam& eta,
                             const ComplexMatrix& a, const Tolerances& tol) {
    const double inv_eta = eta.is_infinite() ? 0.0 : 1.0 / eta.value();
    const ComplexMatrix a_inv = inverse(a, tol);
    const ComplexMatrix q = hyper_lyapunov_slack(p, a, inv_eta);
    const ComplexMatrix q_inv = hyper_lyapunov_slack(p, a_inv, inv_eta);
    const ComplexMatrix transported = (a_inv.adjoint() * q * a_inv).hermitian_part();
    const double residual = (q_inv - transported).frobenius_norm();
    const bool identity_ok = residual <= 1e-11 * std::max(1.0, q_inv.frobenius_norm());
    const bool member = is_positive_definite(q_inv, DefMode::Closed, tol).positive;
    return identity_ok && member;
}

} // namespace qmi::inclusions
