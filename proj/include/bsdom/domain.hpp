#pragma once

// Concrete positive Hermitian Jordan triple systems for the classical
// bounded symmetric domains: domain descriptors and packed point storage.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsdom {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr double kSqrt2 = 1.4142135623730951;

enum class DomainKind {
    type_i,         // p x q complex matrices
    type_ii,        // antisymmetric n x n matrices
    type_iii,       // symmetric n x n matrices
    type_iv,        // spin factor on C^n
    polydisc,       // product of n discs
    hermitian_ball  // Euclidean ball in C^n
};

inline const char* kind_name(DomainKind k) {
    switch (k) {
        case DomainKind::type_i: return "typeI";
        case DomainKind::type_ii: return "typeII";
        case DomainKind::type_iii: return "typeIII";
        case DomainKind::type_iv: return "typeIV";
        case DomainKind::polydisc: return "polydisc";
        case DomainKind::hermitian_ball: return "ball";
    }
    return "?";
}

// Descriptor of one concrete triple system. `dim` is the packed coordinate
// count, which for every kind equals the complex dimension of the underlying
// vector space V (types II/III use orthonormal triangular packing).
struct DomainSpec {
    DomainKind kind{DomainKind::type_i};
    int p{1};  // rows (type I only)
    int q{1};  // cols (type I) / n for the square and vector kinds
    int dim{1};
    int rank{1};
    int mult_a{0};
    int mult_b{0};
    bool tube{true};

    bool operator==(const DomainSpec& o) const {
        return kind == o.kind && p == o.p && q == o.q;
    }
    bool operator!=(const DomainSpec& o) const { return !(*this == o); }

    std::string name() const {
        std::ostringstream os;
        os << kind_name(kind);
        if (kind == DomainKind::type_i)
            os << "(" << p << "," << q << ")";
        else
            os << "(" << q << ")";
        return os.str();
    }
};

namespace detail {
inline void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}
}  // namespace detail

inline DomainSpec make_type_i(int p, int q) {
    detail::require(p >= 1 && q >= 1, "typeI requires p,q >= 1");
    DomainSpec s;
    s.kind = DomainKind::type_i;
    s.p = p;
    s.q = q;
    s.dim = p * q;
    s.rank = std::min(p, q);
    s.mult_a = 2;
    s.mult_b = std::abs(q - p);
    s.tube = (s.mult_b == 0);
    return s;
}

inline DomainSpec make_type_ii(int n) {
    detail::require(n >= 2, "typeII requires n >= 2");
    DomainSpec s;
    s.kind = DomainKind::type_ii;
    s.p = n;
    s.q = n;
    s.dim = n * (n - 1) / 2;
    s.rank = n / 2;
    s.mult_a = 4;
    s.mult_b = (n % 2 == 0) ? 0 : 2;
    s.tube = (s.mult_b == 0);
    return s;
}

inline DomainSpec make_type_iii(int n) {
    detail::require(n >= 1, "typeIII requires n >= 1");
    DomainSpec s;
    s.kind = DomainKind::type_iii;
    s.p = n;
    s.q = n;
    s.dim = n * (n + 1) / 2;
    s.rank = n;
    s.mult_a = 1;
    s.mult_b = 0;
    s.tube = true;
    return s;
}

inline DomainSpec make_type_iv(int n) {
    detail::require(n >= 2, "typeIV requires n >= 2");
    DomainSpec s;
    s.kind = DomainKind::type_iv;
    s.p = n;
    s.q = n;
    s.dim = n;
    s.rank = 2;
    s.mult_a = n - 2;
    s.mult_b = 0;
    s.tube = true;
    return s;
}

inline DomainSpec make_polydisc(int n) {
    detail::require(n >= 1, "polydisc requires n >= 1");
    DomainSpec s;
    s.kind = DomainKind::polydisc;
    s.p = n;
    s.q = n;
    s.dim = n;
    s.rank = n;
    s.mult_a = 0;
    s.mult_b = 0;
    s.tube = true;
    return s;
}

inline DomainSpec make_hermitian_ball(int n) {
    detail::require(n >= 1, "ball requires n >= 1");
    DomainSpec s;
    s.kind = DomainKind::hermitian_ball;
    s.p = 1;
    s.q = n;
    s.dim = n;
    s.rank = 1;
    s.mult_a = 2;
    s.mult_b = n - 1;
    s.tube = (n == 1);
    return s;
}

inline DomainSpec make_disc() { return make_type_i(1, 1); }

inline DomainSpec make_domain(DomainKind kind, const std::vector<int>& dims) {
    switch (kind) {
        case DomainKind::type_i:
            detail::require(dims.size() == 2, "typeI takes two dimensions");
            return make_type_i(dims[0], dims[1]);
        case DomainKind::type_ii:
            detail::require(dims.size() == 1, "typeII takes one dimension");
            return make_type_ii(dims[0]);
        case DomainKind::type_iii:
            detail::require(dims.size() == 1, "typeIII takes one dimension");
            return make_type_iii(dims[0]);
        case DomainKind::type_iv:
            detail::require(dims.size() == 1, "typeIV takes one dimension");
            return make_type_iv(dims[0]);
        case DomainKind::polydisc:
            detail::require(dims.size() == 1, "polydisc takes one dimension");
            return make_polydisc(dims[0]);
        case DomainKind::hermitian_ball:
            detail::require(dims.size() == 1, "ball takes one dimension");
            return make_hermitian_ball(dims[0]);
    }
    throw std::invalid_argument("unknown domain kind");
}

// A point of V in packed coordinates.
struct Element {
    DomainSpec spec;
    Vec coords;

    Element() = default;
    Element(const DomainSpec& s, Vec c) : spec(s), coords(std::move(c)) {
        detail::require(coords.size() == spec.dim, "coordinate length mismatch");
    }

    static Element zero(const DomainSpec& s) { return Element(s, Vec::Zero(s.dim)); }

    // k-th packed basis vector
    static Element basis(const DomainSpec& s, int k) {
        Vec c = Vec::Zero(s.dim);
        c[k] = 1.0;
        return Element(s, c);
    }

    Element& operator+=(const Element& o) {
        coords += o.coords;
        return *this;
    }
    Element& operator-=(const Element& o) {
        coords -= o.coords;
        return *this;
    }
    Element& operator*=(Complex a) {
        coords *= a;
        return *this;
    }

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(Complex a, Element x) { return x *= a; }
    friend Element operator*(Element x, Complex a) { return x *= a; }

    double max_abs() const {
        double m = 0;
        for (int i = 0; i < coords.size(); ++i) m = std::max(m, std::abs(coords[i]));
        return m;
    }
};

inline void check_same_spec(const DomainSpec& a, const DomainSpec& b) {
    detail::require(a == b, "domain spec mismatch between arguments");
}

// Coordinate inner product, linear in the first slot.
inline Complex coord_inner(const Element& x, const Element& y) {
    return y.coords.dot(x.coords);  // Eigen conjugates its receiver
}

// --- triangular packing for types II / III ------------------------------
//
// Packed coordinates are coefficients with respect to the orthonormal
// (Frobenius) basis of the symmetric / antisymmetric subspace:
//   type III:  E_ii  and  (E_ij + E_ji)/sqrt(2)   (i < j)
//   type II:   (E_ij - E_ji)/sqrt(2)              (i < j)
// so that expanding and re-packing are mutually inverse isometries.

inline Mat expand_matrix(const Element& x) {
    const DomainSpec& s = x.spec;
    switch (s.kind) {
        case DomainKind::type_i: {
            Mat m(s.p, s.q);
            for (int i = 0; i < s.p; ++i)
                for (int j = 0; j < s.q; ++j) m(i, j) = x.coords[i * s.q + j];
            return m;
        }
        case DomainKind::type_iii: {
            const int n = s.q;
            Mat m = Mat::Zero(n, n);
            int k = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j, ++k) {
                    if (i == j) {
                        m(i, i) = x.coords[k];
                    } else {
                        m(i, j) = x.coords[k] / kSqrt2;
                        m(j, i) = x.coords[k] / kSqrt2;
                    }
                }
            return m;
        }
        case DomainKind::type_ii: {
            const int n = s.q;
            Mat m = Mat::Zero(n, n);
            int k = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j, ++k) {
                    m(i, j) = x.coords[k] / kSqrt2;
                    m(j, i) = -x.coords[k] / kSqrt2;
                }
            return m;
        }
        default:
            throw std::logic_error("expand_matrix: not a matrix kind");
    }
}

inline Element pack_matrix(const DomainSpec& s, const Mat& m) {
    switch (s.kind) {
        case DomainKind::type_i: {
            Vec c(s.dim);
            for (int i = 0; i < s.p; ++i)
                for (int j = 0; j < s.q; ++j) c[i * s.q + j] = m(i, j);
            return Element(s, std::move(c));
        }
        case DomainKind::type_iii: {
            const int n = s.q;
            Vec c(s.dim);
            int k = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j, ++k)
                    c[k] = (i == j) ? m(i, i) : (m(i, j) + m(j, i)) / kSqrt2;
            return Element(s, std::move(c));
        }
        case DomainKind::type_ii: {
            const int n = s.q;
            Vec c(s.dim);
            int k = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j, ++k) c[k] = (m(i, j) - m(j, i)) / kSqrt2;
            return Element(s, std::move(c));
        }
        default:
            throw std::logic_error("pack_matrix: not a matrix kind");
    }
}

// Builds an element from a full matrix, rejecting symmetry violations.
inline Element element_from_matrix(const DomainSpec& s, const Mat& m, double tol = 1e-12) {
    detail::require(m.rows() == s.p && m.cols() == s.q, "matrix shape mismatch");
    if (s.kind == DomainKind::type_iii)
        detail::require((m - m.transpose()).cwiseAbs().maxCoeff() <= tol,
                        "matrix is not symmetric");
    if (s.kind == DomainKind::type_ii)
        detail::require((m + m.transpose()).cwiseAbs().maxCoeff() <= tol,
                        "matrix is not antisymmetric");
    return pack_matrix(s, m);
}

// Standard bilinear form q(x,z) = sum x_k z_k of the spin factor.
inline Complex spin_bilinear(const Element& x, const Element& z) {
    return (x.coords.array() * z.coords.array()).sum();
}

}  // namespace bsdom
