#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmi/disks.hpp"
#include "qmi/linalg.hpp"
#include "qmi/matrix.hpp"

namespace qmi::inclusions {

enum class InclusionFamily { Lyapunov, Stein, HyperStein, HyperLyapunov };

/// One of the four inclusion families; the hyper families carry an eta
/// parameter whose infinity variant reduces them to the classical sets.
class InclusionKind {
public:
    static InclusionKind lyapunov() { return InclusionKind(InclusionFamily::Lyapunov, {}); }
    static InclusionKind stein() { return InclusionKind(InclusionFamily::Stein, {}); }
    static InclusionKind hyper_stein(disks::EtaParam eta) {
        return InclusionKind(InclusionFamily::HyperStein, eta);
    }
    static InclusionKind hyper_lyapunov(disks::EtaParam eta) {
        return InclusionKind(InclusionFamily::HyperLyapunov, eta);
    }

    InclusionFamily family() const { return family_; }
    bool is_hyper() const {
        return family_ == InclusionFamily::HyperStein || family_ == InclusionFamily::HyperLyapunov;
    }
    const disks::EtaParam& eta() const;

    /// (eta-1)/(eta+1) for hyper-Stein style coefficients; 1 for the
    /// classical/infinite cases.
    double ratio() const;
    /// 1/eta for hyper-Lyapunov style coefficients; 0 for classical/infinite.
    double inv_eta() const;

    std::string name() const;

private:
    InclusionKind(InclusionFamily f, std::optional<disks::EtaParam> eta)
        : family_(f), eta_(eta) {}
    InclusionFamily family_;
    std::optional<disks::EtaParam> eta_;
};

/// The 2n x 2n Hermitian parameter M of the quadratic form
/// (A; I)* M (A; I) = Q, partitioned into blocks [[W, R*], [R, Y]].
struct QmiSpec {
    ComplexMatrix m;
    InclusionKind kind;
    ComplexMatrix base;

    std::size_t n() const { return base.rows(); }
    ComplexMatrix w() const { return m.block(0, 0, n(), n()); }
    ComplexMatrix r() const { return m.block(n(), 0, n(), n()); }
    ComplexMatrix y() const { return m.block(n(), n(), n(), n()); }
};

struct InclusionCertificate {
    InclusionKind kind;
    ComplexMatrix base;
    ComplexMatrix slack; // the Q of the quadratic form
    double min_eig_slack;
    bool strict;
};

struct MembershipResult {
    bool member;
    InclusionCertificate certificate;
};

/// Builds the block matrix M for the given kind:
///   Lyapunov       [[0, H], [H, 0]]
///   Stein          [[-H, 0], [0, H]]
///   HyperStein     [[-P, 0], [0, ((eta-1)/(eta+1)) P]]
///   HyperLyapunov  [[-P/eta, P], [P, -P/eta]]
/// The base must be Hermitian and nonsingular; hyper kinds additionally
/// require a positive definite base unless allow_indefinite_base is set
/// (which admits the general indefinite-H form for evaluation only).
/// For every nonsingular base the signature of M (n positive, n negative
/// eigenvalues) is checked eagerly.
QmiSpec build_qmi(const InclusionKind& kind, const ComplexMatrix& base,
                  bool allow_indefinite_base = false,
                  const Tolerances& tol = default_tolerances());

/// Q = A*WA + RA + (RA)* + Y, symmetrized.
ComplexMatrix evaluate_qmi(const QmiSpec& spec, const ComplexMatrix& a);

/// Membership of A in the kind's set (mode selects the open set or its
/// closure); the certificate carries the slack and its minimal eigenvalue
/// either way.
MembershipResult is_member(const QmiSpec& spec, const ComplexMatrix& a, DefMode mode,
                           const Tolerances& tol = default_tolerances());

/// ||P^{1/2} A P^{-1/2}||_2; A is in the hyper-Stein set S_P(eta) exactly
/// when this is below sqrt((eta-1)/(eta+1)).
double stein_norm_form(const ComplexMatrix& p, const ComplexMatrix& a,
                       const Tolerances& tol = default_tolerances());

/// Minimal eta admitting A into the closed hyper-Lyapunov set of P:
/// rho((A*PA + P)(PA + A*P)^{-1}), or nullopt when PA + A*P is not positive
/// definite (A outside the classical Lyapunov set). Always >= 1.
std::optional<double> eta_star_lyapunov(const ComplexMatrix& p, const ComplexMatrix& a,
                                        const Tolerances& tol = default_tolerances());

/// Minimal eta admitting A into the closed hyper-Stein set of P:
/// (1 + s^2)/(1 - s^2) for s = stein_norm_form(p, a), or nullopt when s >= 1.
std::optional<double> eta_star_stein(const ComplexMatrix& p, const ComplexMatrix& a,
                                     const Tolerances& tol = default_tolerances());

/// Hermitian P with PA + A*P = Q, by LU on the n^2 x n^2 flattened system.
/// Throws SingularError when A and -A* share an eigenvalue (which covers
/// imaginary-axis spectra). Capped at n <= 30.
ComplexMatrix solve_lyapunov(const ComplexMatrix& a, const ComplexMatrix& q,
                             const Tolerances& tol = default_tolerances());

struct SynthesizedCertificate {
    ComplexMatrix p;
    double eta; // the minimal eta; any eta' > eta certifies strictly
};

/// For a positively stable A, a pair (P, eta) with A in the closed
/// hyper-Lyapunov set of P at the minimal eta: P solves PA + A*P = I.
/// Returns nullopt (not stable) when the Lyapunov solve degenerates or P
/// fails to be positive definite.
std::optional<SynthesizedCertificate> synthesize_certificate(
    const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

/// Checks theta*A + (1-theta)*A^{-1} against the transported parameter:
/// the half-iteration (eta + 1/eta)/2 for theta = 1/2, and the disk-product
/// envelope for general theta in [0, 1]. Expects A in the closed
/// hyper-Lyapunov set of (P, eta); eta may be any real >= 1.
bool half_step_eta_check(const ComplexMatrix& a, const ComplexMatrix& p, double eta,
                         double theta = 0.5, const Tolerances& tol = default_tolerances());

/// T = P^{-1/2} Phat^{1/2}, which carries the hyper-Lyapunov set of P onto
/// that of Phat by A -> T^{-1} A T.
ComplexMatrix similarity_transport(const ComplexMatrix& p, const ComplexMatrix& phat,
                                   const Tolerances& tol = default_tolerances());

/// A_a in S_P(eta_a), A_b in S_P(eta_b) implies A_a A_b in
/// S_P(eta_product(eta_a, eta_b)); returns that closed membership bit.
bool product_contractivity_check(const ComplexMatrix& p, const ComplexMatrix& a_a,
                                 const disks::EtaParam& eta_a, const ComplexMatrix& a_b,
                                 const disks::EtaParam& eta_b,
                                 const Tolerances& tol = default_tolerances());

/// Membership of theta*A1 + (1-theta)*A0 in the hyper-Lyapunov set of
/// (P, eta) together with the convexity identity
///   Q_theta = theta Q_1 + (1-theta) Q_0
///             + (theta(1-theta)/eta) (A0 - A1)* P (A0 - A1)
/// verified to 1e-11.
bool convex_combination_check(const ComplexMatrix& p, const disks::EtaParam& eta,
                              const ComplexMatrix& a0, const ComplexMatrix& a1, double theta,
                              const Tolerances& tol = default_tolerances());

/// Matrix-convex combination check for a kind with identity base: given
/// blocks A_j (each gamma_j x gamma_j, members at their size) and isometries
/// v_j (gamma_j x n) with sum v_j* v_j = I_n, verifies that sum v_j* A_j v_j
/// is a member at size n, and verifies the slack decomposition
///   Q = sum v_j* Q_j v_j + (-alpha) G*G,     G = (I - VV*) D V,
/// where D = diag(A_j), V is the stacked isometry and alpha is the kind's
/// quadratic coefficient (the correction vanishes for a single unitary).
bool matrix_convex_combination_check(const InclusionKind& kind,
                                     const std::vector<ComplexMatrix>& blocks,
                                     const std::vector<ComplexMatrix>& isometries,
                                     const Tolerances& tol = default_tolerances());

/// A strictly in the hyper-Lyapunov set of (P, eta) implies A^{-1} is a
/// member as well, with slack transported by congruence:
/// Q(A^{-1}) = (A^{-1})* Q(A) A^{-1}, verified to 1e-11.
bool inversion_closure_check(const ComplexMatrix& p, const disks::EtaParam& eta,
                             const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

/// Slack of the hyper-Lyapunov form with a raw 1/eta coefficient
/// (inv_eta in [0, 1]; 0 recovers the classical Lyapunov slack):
/// -(inv_eta)(A*PA + P) + PA + A*P, symmetrized.
ComplexMatrix hyper_lyapunov_slack(const ComplexMatrix& p, const ComplexMatrix& a,
                                   double inv_eta);

} // namespace qmi::inclusions
