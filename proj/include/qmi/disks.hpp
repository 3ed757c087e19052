#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qmi/errors.hpp"

namespace qmi::disks {

using Complex = std::complex<double>;

/// The parameter eta, a finite real strictly greater than 1 or the explicit
/// infinity case that recovers the classical Lyapunov/Stein sets.
class EtaParam {
public:
    explicit EtaParam(double v);
    static EtaParam infinity();

    bool is_infinite() const { return infinite_; }

    /// Finite value; throws InfiniteEtaError on the infinity variant.
    double value() const;

    /// Finite value, or +inf for the infinity variant (for limit formulas).
    double value_or_inf() const;

    /// (eta - 1)/(eta + 1), with limit 1 at infinity.
    double origin_radius_sq() const;

private:
    EtaParam() : value_(0.0), infinite_(true) {}
    double value_;
    bool infinite_;
};

/// Closed disk in the complex plane.
struct Disk {
    Complex center;
    double radius;
};

struct DiskTraceRecord {
    int j;
    double eta;
    double inv_center;    // eta_j
    double inv_radius;    // sqrt(eta_j^2 - 1)
    double origin_radius; // sqrt((eta_j - 1)/(eta_j + 1))
    int sign;             // (-1)^j
};

/// Successive half-iterations of an invertible disk, one record per step.
struct DiskTrace {
    std::vector<DiskTraceRecord> records;

    /// CSV with header `j,eta,inv_center,inv_radius,origin_radius,sign`.
    std::string to_csv() const;
};

/// Sub-unit disk centered at the origin with radius sqrt((eta-1)/(eta+1));
/// the unit disk for eta = infinity.
Disk d_origin(const EtaParam& eta);

/// Invertible disk centered at eta on the real axis with radius
/// sqrt(eta^2 - 1). Undefined at eta = infinity (the image would be the
/// whole right half-plane).
Disk d_inv(const EtaParam& eta);

/// Smallest eta whose invertible disk contains c, i.e. (|c|^2+1)/(2 Re c);
/// c belongs to d_inv(eta) exactly when eta >= eta_of_point(c).
/// Requires Re(c) > 0.
double eta_of_point(Complex c);

/// Parameter of the product disk: (1 + eta_a eta_b)/(eta_a + eta_b), with
/// the continuity limits when either argument is infinite.
EtaParam eta_product(const EtaParam& eta_a, const EtaParam& eta_b);

/// (eta + 1/eta)/2 — equals eta_product(eta, eta).
EtaParam half_iteration(const EtaParam& eta);

struct EtaBounds {
    double lower;
    double value;
    double upper;
};

/// The sandwich half(eta_a) <= eta_product(eta_a, eta_b) <= half(eta_b),
/// valid for eta_b >= eta_a (OrderViolationError otherwise).
EtaBounds eta_bounds_check(const EtaParam& eta_a, const EtaParam& eta_b);

struct ConvexDecomposition {
    double theta;
    double value;
    bool check;
};

/// theta = eta_b/(eta_a + eta_b) with
/// theta*eta_a + (1-theta)/eta_a == eta_product(eta_a, eta_b);
/// check reports whether the identity holds to 1e-14.
ConvexDecomposition convex_decomposition(const EtaParam& eta_a, const EtaParam& eta_b);

/// Cayley image of an origin-centered sub-unit disk: the invertible disk
/// with eta = (1 + r^2)/(1 - r^2). Radius 0 degenerates to the point {1}.
Disk cayley_disk(const Disk& d);

/// Trace of j = 0..steps half-iterations starting from a finite eta0.
DiskTrace iterate_trace(const EtaParam& eta0, int steps);

} // namespace qmi::disks
