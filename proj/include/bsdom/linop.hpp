#pragma once

// R-linear endomorphisms of V stored as a (complex-linear, conjugate-linear)
// pair: z -> lin*z + conj*zbar. Composition and inversion respect the split.

#include "bsdom/domain.hpp"

namespace bsdom {

struct RealLinearOp {
    DomainSpec spec;
    Mat lin;   // complex-linear part
    Mat conj;  // conjugate-linear part

    RealLinearOp() = default;
    RealLinearOp(const DomainSpec& s, Mat a, Mat c)
        : spec(s), lin(std::move(a)), conj(std::move(c)) {
        detail::require(lin.rows() == s.dim && lin.cols() == s.dim &&
                            conj.rows() == s.dim && conj.cols() == s.dim,
                        "operator shape mismatch");
    }

    static RealLinearOp identity(const DomainSpec& s) {
        return RealLinearOp(s, Mat::Identity(s.dim, s.dim), Mat::Zero(s.dim, s.dim));
    }
    static RealLinearOp zero(const DomainSpec& s) {
        return RealLinearOp(s, Mat::Zero(s.dim, s.dim), Mat::Zero(s.dim, s.dim));
    }
    static RealLinearOp linear(const DomainSpec& s, Mat a) {
        Mat c = Mat::Zero(s.dim, s.dim);
        return RealLinearOp(s, std::move(a), std::move(c));
    }
    static RealLinearOp antilinear(const DomainSpec& s, Mat c) {
        Mat a = Mat::Zero(s.dim, s.dim);
        return RealLinearOp(s, std::move(a), std::move(c));
    }

    Vec apply(const Vec& z) const { return lin * z + conj * z.conjugate(); }
    Element apply(const Element& x) const {
        check_same_spec(spec, x.spec);
        return Element(spec, apply(x.coords));
    }

    bool is_linear(double tol = 0.0) const {
        return conj.cwiseAbs().maxCoeff() <= tol;
    }
    bool is_antilinear(double tol = 0.0) const {
        return lin.cwiseAbs().maxCoeff() <= tol;
    }

    RealLinearOp operator+(const RealLinearOp& o) const {
        return RealLinearOp(spec, lin + o.lin, conj + o.conj);
    }
    RealLinearOp operator-(const RealLinearOp& o) const {
        return RealLinearOp(spec, lin - o.lin, conj - o.conj);
    }
    RealLinearOp scaled(double a) const { return RealLinearOp(spec, a * lin, a * conj); }

    double max_abs() const {
        return std::max(lin.cwiseAbs().maxCoeff(), conj.cwiseAbs().maxCoeff());
    }
};

// a after b: (a o b)(z)
inline RealLinearOp compose(const RealLinearOp& a, const RealLinearOp& b) {
    check_same_spec(a.spec, b.spec);
    Mat lin = a.lin * b.lin + a.conj * b.conj.conjugate();
    Mat conj = a.lin * b.conj + a.conj * b.lin.conjugate();
    return RealLinearOp(a.spec, std::move(lin), std::move(conj));
}

// Realification on (Re z, Im z) stacked coordinates. The packed coordinate
// basis is orthonormal for the Hermitian product up to one global scalar,
// so operator norms and spectra read off the realified matrix directly.
inline Eigen::MatrixXd realify(const RealLinearOp& op) {
    const int d = op.spec.dim;
    Eigen::MatrixXd r(2 * d, 2 * d);
    r.topLeftCorner(d, d) = op.lin.real() + op.conj.real();
    r.topRightCorner(d, d) = -op.lin.imag() + op.conj.imag();
    r.bottomLeftCorner(d, d) = op.lin.imag() + op.conj.imag();
    r.bottomRightCorner(d, d) = op.lin.real() - op.conj.real();
    return r;
}

inline RealLinearOp derealify(const DomainSpec& s, const Eigen::MatrixXd& r) {
    const int d = s.dim;
    detail::require(r.rows() == 2 * d && r.cols() == 2 * d, "realified shape mismatch");
    Eigen::MatrixXd a11 = r.topLeftCorner(d, d), a12 = r.topRightCorner(d, d);
    Eigen::MatrixXd a21 = r.bottomLeftCorner(d, d), a22 = r.bottomRightCorner(d, d);
    Mat lin = 0.5 * ((a11 + a22).cast<Complex>() + Complex(0, 1) * (a21 - a12).cast<Complex>());
    Mat conj = 0.5 * ((a11 - a22).cast<Complex>() + Complex(0, 1) * (a21 + a12).cast<Complex>());
    return RealLinearOp(s, std::move(lin), std::move(conj));
}

inline RealLinearOp inverse(const RealLinearOp& op) {
    if (op.is_linear()) {
        return RealLinearOp::linear(op.spec, op.lin.inverse());
    }
    Eigen::MatrixXd r = realify(op);
    return derealify(op.spec, r.inverse());
}

}  // namespace bsdom
