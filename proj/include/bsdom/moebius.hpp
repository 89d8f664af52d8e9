#pragma once

// Quasi-inverse, the transitive automorphisms phi_u / psi_u and their
// derivatives.

#include "bsdom/spectral.hpp"

#include <optional>

namespace bsdom {

namespace detail {
inline double condition_number(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m);
    double smin = svd.singularValues()[svd.singularValues().size() - 1];
    if (smin <= 0) return std::numeric_limits<double>::infinity();
    return svd.singularValues()[0] / smin;
}
}  // namespace detail

// z^u = B(z,u)^{-1} (z - Q(z) u)
inline Element quasi_inverse(const DomainSpec& s, const Element& z, const Element& u,
                             double cond_limit = 1e12) {
    check_same_spec(s, z.spec);
    check_same_spec(s, u.spec);
    RealLinearOp b = bergman_operator(s, z, u);
    double cond = detail::condition_number(b.lin);
    if (!(cond < cond_limit)) {
        std::ostringstream os;
        os << "quasi_inverse: B(z,u) is numerically singular (cond " << cond
           << ", |z|=" << spectral_norm(s, z) << ", |u|=" << spectral_norm(s, u) << ")";
        throw std::domain_error(os.str());
    }
    Element rhs = z - q_operator(s, z).apply(u);
    return Element(s, b.lin.partialPivLu().solve(rhs.coords));
}

enum class MapDirection { to_origin, from_origin };

// phi_u (to_origin) or psi_u (from_origin), optionally with a linear
// automorphism composed on the left.
struct Automorphism {
    DomainSpec spec;
    Element base;
    MapDirection direction{MapDirection::to_origin};
    std::optional<RealLinearOp> linear_twist;
    RealLinearOp half_power;  // B(u,u)^{-1/2} or B(u,u)^{1/2}
};

inline Element apply_automorphism(const Automorphism& a, const Element& z);

inline Automorphism make_automorphism(const DomainSpec& s, const Element& u,
                                      MapDirection dir,
                                      std::optional<RealLinearOp> twist = std::nullopt) {
    check_same_spec(s, u.spec);
    if (!(spectral_norm(s, u) < 1.0))
        throw std::domain_error("automorphism base point must lie inside the domain");
    Automorphism a;
    a.spec = s;
    a.base = u;
    a.direction = dir;
    a.linear_twist = std::move(twist);
    a.half_power = bergman_power(s, u, dir == MapDirection::to_origin ? -0.5 : 0.5);

    // fixed-point contract
    if (dir == MapDirection::to_origin) {
        double res = spectral_norm(s, apply_automorphism(a, u));
        detail::require(res <= 1e-10, "phi_u does not send u to 0");
    } else {
        Element img = apply_automorphism(a, Element::zero(s));
        Element want = a.linear_twist ? a.linear_twist->apply(u) : u;
        detail::require((img - want).max_abs() <= 1e-10, "psi_u does not send 0 to u");
    }
    if (a.linear_twist) {
        // a linear automorphism must preserve the spectral norm
        for (int k = 0; k < s.dim; ++k) {
            Element e = Element::basis(s, k);
            double before = spectral_norm(s, e);
            double after = spectral_norm(s, a.linear_twist->apply(e));
            detail::require(std::abs(before - after) <= 1e-9,
                            "linear twist does not preserve the spectral norm");
        }
    }
    return a;
}

inline Element apply_automorphism(const Automorphism& a, const Element& z) {
    check_same_spec(a.spec, z.spec);
    if (!(spectral_norm(a.spec, z) < 1.0))
        throw std::domain_error("automorphism argument lies outside the open domain");
    Element res = Element::zero(a.spec);
    if (a.direction == MapDirection::to_origin) {
        Element w = a.half_power.apply(z - a.base);
        res = quasi_inverse(a.spec, w, a.base);
    } else {
        Element minus_u = Complex(-1, 0) * a.base;
        Element w = quasi_inverse(a.spec, z, minus_u);
        res = a.base + a.half_power.apply(w);
    }
    if (a.linear_twist) res = a.linear_twist->apply(res);
    return res;
}

// Analytic derivative via the chain rule; d(quasi-inverse w.r.t. u) at w is
// B(w,u)^{-1}.
inline RealLinearOp automorphism_derivative(const Automorphism& a, const Element& z) {
    check_same_spec(a.spec, z.spec);
    if (!(spectral_norm(a.spec, z) < 1.0))
        throw std::domain_error("automorphism argument lies outside the open domain");
    RealLinearOp d = RealLinearOp::identity(a.spec);
    if (a.direction == MapDirection::to_origin) {
        Element w = a.half_power.apply(z - a.base);
        RealLinearOp bw = bergman_operator(a.spec, w, a.base);
        d = compose(RealLinearOp::linear(a.spec, bw.lin.inverse()), a.half_power);
    } else {
        Element minus_u = Complex(-1, 0) * a.base;
        RealLinearOp bz = bergman_operator(a.spec, z, minus_u);
        d = compose(a.half_power, RealLinearOp::linear(a.spec, bz.lin.inverse()));
    }
    if (a.linear_twist) d = compose(*a.linear_twist, d);
    return d;
}

struct DerivativeNorms {
    double dphi_norm;          // ||dphi(u)||
    double dphi_u_image_norm;  // ||dphi(u) u||
    double inverse_norm;       // ||dphi(u)^{-1}||
};

// Closed forms for the derivative norms of any automorphism killing u.
inline DerivativeNorms derivative_norms(const DomainSpec& s, const Element& u) {
    double n = spectral_norm(s, u);
    if (!(n < 1.0))
        throw std::domain_error("derivative_norms: point is outside the open domain");
    double denom = 1.0 - n * n;
    return {1.0 / denom, n / denom, std::sqrt(beta_case_formula(s, u))};
}

// z -> e^{i theta} z, a linear automorphism of every circled domain.
inline RealLinearOp make_phase_twist(const DomainSpec& s, double theta) {
    Mat a = std::exp(Complex(0, theta)) * Mat::Identity(s.dim, s.dim);
    return RealLinearOp::linear(s, std::move(a));
}

// Central finite-difference Jacobian of a self-map, realified.
template <typename F>
Eigen::MatrixXd fd_real_jacobian(const DomainSpec& s, F&& f, const Element& z,
                                 double step = 1e-5) {
    const int d = s.dim;
    Eigen::MatrixXd jac(2 * d, 2 * d);
    auto realvec = [&](const Element& e) {
        Eigen::VectorXd v(2 * d);
        v.head(d) = e.coords.real();
        v.tail(d) = e.coords.imag();
        return v;
    };
    for (int k = 0; k < 2 * d; ++k) {
        Vec dz = Vec::Zero(d);
        if (k < d)
            dz[k] = step;
        else
            dz[k - d] = Complex(0, step);
        Element zp(s, z.coords + dz), zm(s, z.coords - dz);
        jac.col(k) = (realvec(f(zp)) - realvec(f(zm))) / (2 * step);
    }
    return jac;
}

}  // namespace bsdom
