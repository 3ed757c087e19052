#include "qmi/disks.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace qmi::disks {

EtaParam::EtaParam(double v) : value_(v), infinite_(false) {
    if (!std::isfinite(v) || v <= 1.0)
        throw Error("eta must be a finite real strictly greater than 1");
}

EtaParam EtaParam::infinity() {
    return EtaParam();
}

double EtaParam::value() const {
    if (infinite_)
        throw InfiniteEtaError("eta is infinite");
    return value_;
}

double EtaParam::value_or_inf() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

double EtaParam::origin_radius_sq() const {
    if (infinite_)
        return 1.0;
    return (value_ - 1.0) / (value_ + 1.0);
}

Disk d_origin(const EtaParam& eta) {
    return Disk{Complex(0.0, 0.0), std::sqrt(eta.origin_radius_sq())};
}

Disk d_inv(const EtaParam& eta) {
    const double v = eta.value(); // throws on infinity
    return Disk{Complex(v, 0.0), std::sqrt(v * v - 1.0)};
}

double eta_of_point(Complex c) {
    if (!(c.real() > 0.0))
        throw NotInRightHalfPlaneError("eta_of_point: point is not in the open right half-plane");
    return (std::norm(c) + 1.0) / (2.0 * c.real());
}

EtaParam eta_product(const EtaParam& eta_a, const EtaParam& eta_b) {
    if (eta_a.is_infinite() && eta_b.is_infinite())
        return EtaParam::infinity();
    if (eta_a.is_infinite())
        return eta_b; // limit of the formula
    if (eta_b.is_infinite())
        return eta_a;
    const double a = eta_a.value();
    const double b = eta_b.value();
    return EtaParam((1.0 + a * b) / (a + b));
}

EtaParam half_iteration(const EtaParam& eta) {
    const double v = eta.value(); // throws on infinity
    return EtaParam(0.5 * (v + 1.0 / v));
}

EtaBounds eta_bounds_check(const EtaParam& eta_a, const EtaParam& eta_b) {
    const double a = eta_a.value();
    const double b = eta_b.value();
    if (b < a)
        throw OrderViolationError("eta_bounds_check: requires eta_b >= eta_a");
    return EtaBounds{half_iteration(eta_a).value(), eta_product(eta_a, eta_b).value(),
                     half_iteration(eta_b).value()};
}

ConvexDecomposition convex_decomposition(const EtaParam& eta_a, const EtaParam& eta_b) {
    const double a = eta_a.value();
    const double b = eta_b.value();
    const double theta = b / (a + b);
    const double value = theta * a + (1.0 - theta) / a;
    const double product = eta_product(eta_a, eta_b).value();
    return ConvexDecomposition{theta, value, std::abs(value - product) <= 1e-14 * product};
}

Disk cayley_disk(const Disk& d) {
    if (d.center != Complex(0.0, 0.0))
        throw Error("cayley_disk: disk must be centered at the origin");
    if (!(d.radius >= 0.0) || d.radius >= 1.0)
        throw RadiusNotSubUnitError("cayley_disk: radius must lie in [0, 1)");
    const double r2 = d.radius * d.radius;
    const double eta = (1.0 + r2) / (1.0 - r2);
    return Disk{Complex(eta, 0.0), std::sqrt(std::max(0.0, eta * eta - 1.0))};
}

DiskTrace iterate_trace(const EtaParam& eta0, int steps) {
    if (steps < 0)
        throw Error("iterate_trace: steps must be non-negative");
    DiskTrace trace;
    trace.records.reserve(static_cast<std::size_t>(steps) + 1);
    // Track e = eta - 1: e' = e^2/(2(1+e)) keeps full relative precision all
    // the way down, where iterating eta itself cancels near 1.
    double e = eta0.value() - 1.0;
    for (int j = 0; j <= steps; ++j) {
        const double eta = 1.0 + e;
        trace.records.push_back(DiskTraceRecord{
            j, eta, eta, std::sqrt(e) * std::sqrt(e + 2.0),
            std::sqrt(e / (e + 2.0)), (j % 2 == 0) ? 1 : -1});
        e = e * (e / (2.0 * (1.0 + e)));
    }
    return trace;
}

std::string DiskTrace::to_csv() const {
    std::string out = "j,eta,inv_center,inv_radius,origin_radius,sign\n";
    char line[256];
    for (const auto& r : records) {
        std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g,%d\n", r.j, r.eta,
                      r.inv_center, r.inv_radius, r.origin_radius, r.sign);
        out += line;
    }
    return out;
}

} // namespace qmi::disks
