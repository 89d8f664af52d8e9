#pragma once

// The Jordan triple product {xyz} for the six supported kinds and the
// operator calculus built on it: D(x,y), Q(x), B(x,y) and the defining
// identities evaluated as residuals.

#include "bsdom/domain.hpp"
#include "bsdom/linop.hpp"

namespace bsdom {

// {xyz}: bilinear symmetric in (x,z), conjugate-linear in y.
inline Element triple_product(const DomainSpec& s, const Element& x, const Element& y,
                              const Element& z) {
    check_same_spec(s, x.spec);
    check_same_spec(s, y.spec);
    check_same_spec(s, z.spec);
    switch (s.kind) {
        case DomainKind::type_i:
        case DomainKind::type_ii:
        case DomainKind::type_iii: {
            Mat mx = expand_matrix(x), my = expand_matrix(y), mz = expand_matrix(z);
            Mat yh = my.adjoint();
            return pack_matrix(s, mx * yh * mz + mz * yh * mx);
        }
        case DomainKind::polydisc: {
            Vec c = 2.0 * (x.coords.array() * y.coords.array().conjugate() *
                           z.coords.array())
                              .matrix();
            return Element(s, std::move(c));
        }
        case DomainKind::hermitian_ball: {
            Complex xy = coord_inner(x, y), zy = coord_inner(z, y);
            return Element(s, xy * z.coords + zy * x.coords);
        }
        case DomainKind::type_iv: {
            Complex xy = coord_inner(x, y), zy = coord_inner(z, y);
            Complex qxz = spin_bilinear(x, z);
            Vec c = 2.0 * (xy * z.coords + zy * x.coords - qxz * y.coords.conjugate());
            return Element(s, std::move(c));
        }
    }
    throw std::logic_error("unreachable");
}

// D(x,y) z = {xyz}, assembled column-by-column on the packed basis.
inline RealLinearOp d_operator(const DomainSpec& s, const Element& x, const Element& y) {
    Mat a(s.dim, s.dim);
    for (int k = 0; k < s.dim; ++k)
        a.col(k) = triple_product(s, x, y, Element::basis(s, k)).coords;
    return RealLinearOp::linear(s, std::move(a));
}

// Q(x) y = {xyx}/2, a conjugate-linear operator.
inline RealLinearOp q_operator(const DomainSpec& s, const Element& x) {
    Mat c(s.dim, s.dim);
    for (int k = 0; k < s.dim; ++k)
        c.col(k) = 0.5 * triple_product(s, x, Element::basis(s, k), x).coords;
    return RealLinearOp::antilinear(s, std::move(c));
}

// Polarized Q(x,z) y = {xyz}, via Q(x+z) - Q(x) - Q(z). Independent of the
// direct D-route and used to cross-check the two sides of {xyz}=D(x,y)z=Q(x,z)y.
inline RealLinearOp q_operator_polarized(const DomainSpec& s, const Element& x,
                                         const Element& z) {
    return q_operator(s, x + z) - q_operator(s, x) - q_operator(s, z);
}

// B(x,y) = I - D(x,y) + Q(x)Q(y), assembled from the parts; no per-type
// closed form is used.
inline RealLinearOp bergman_operator(const DomainSpec& s, const Element& x,
                                     const Element& y) {
    RealLinearOp d = d_operator(s, x, y);
    RealLinearOp qq = compose(q_operator(s, x), q_operator(s, y));
    return RealLinearOp(s, Mat::Identity(s.dim, s.dim) - d.lin + qq.lin, -d.conj + qq.conj);
}

namespace detail {
// (x|y) = tr D(x,y) is a fixed positive multiple of the packed coordinate
// inner product; the multiplier per kind.
inline double gram_scale(const DomainSpec& s) {
    switch (s.kind) {
        case DomainKind::type_i: return double(s.p + s.q);
        case DomainKind::type_ii: return double(s.q - 1);
        case DomainKind::type_iii: return double(s.q + 1);
        case DomainKind::type_iv: return 2.0 * s.q;
        case DomainKind::polydisc: return 2.0;
        case DomainKind::hermitian_ball: return double(s.q + 1);
    }
    throw std::logic_error("unreachable");
}
}  // namespace detail

// Hermitian inner product (x|y) = tr D(x,y).
inline Complex hermitian_inner(const DomainSpec& s, const Element& x, const Element& y) {
    return detail::gram_scale(s) * coord_inner(x, y);
}

// Reference route: assemble D(x,y) and take the complex trace.
inline Complex hermitian_inner_via_trace(const DomainSpec& s, const Element& x,
                                         const Element& y) {
    return d_operator(s, x, y).lin.trace();
}

inline double hermitian_norm(const DomainSpec& s, const Element& x) {
    return std::sqrt(std::max(0.0, hermitian_inner(s, x, x).real()));
}

struct IdentityResiduals {
    double jordan;  // {xy{uvw}} - {uv{xyw}} = {{xyu}vw} - {u{vxy}w}
    double a4;      // Q(Q(x)y) = Q(x)Q(y)Q(x)
    double a5;      // Q(B(x,y)z) = B(x,y)Q(z)B(y,x)
};

inline IdentityResiduals identity_residuals(const DomainSpec& s, const Element& x,
                                            const Element& y, const Element& u,
                                            const Element& v, const Element& w) {
    IdentityResiduals r{};

    Element lhs = triple_product(s, x, y, triple_product(s, u, v, w)) -
                  triple_product(s, u, v, triple_product(s, x, y, w));
    Element rhs = triple_product(s, triple_product(s, x, y, u), v, w) -
                  triple_product(s, u, triple_product(s, v, x, y), w);
    r.jordan = (lhs - rhs).max_abs();

    RealLinearOp qx = q_operator(s, x);
    RealLinearOp qy = q_operator(s, y);
    Element qxy = qx.apply(y);
    RealLinearOp a4_lhs = q_operator(s, qxy);
    RealLinearOp a4_rhs = compose(qx, compose(qy, qx));
    r.a4 = (a4_lhs - a4_rhs).max_abs();

    RealLinearOp bxy = bergman_operator(s, x, y);
    RealLinearOp byx = bergman_operator(s, y, x);
    RealLinearOp a5_lhs = q_operator(s, bxy.apply(u));
    RealLinearOp a5_rhs = compose(bxy, compose(q_operator(s, u), byx));
    r.a5 = (a5_lhs - a5_rhs).max_abs();

    return r;
}

}  // namespace bsdom
