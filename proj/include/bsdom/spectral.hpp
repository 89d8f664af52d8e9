#pragma once

// Spectral decomposition x = sum lambda_i c_i, frames, Peirce projectors,
// the spectral norm, fractional Bergman powers and the two operator norms.

#include "bsdom/triple.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <optional>
#include <random>

namespace bsdom {

struct SpectralDecomposition {
    DomainSpec spec;
    std::vector<Element> tripotents;   // merged clusters, one per distinct value
    std::vector<double> values;        // strictly decreasing, > 0
    std::vector<Element> frame;        // rank primitive tripotents, values desc
    std::vector<double> frame_values;  // length rank, padded with zeros
    double merged_tolerance{1e-10};

    Element reconstruct() const {
        Element x = Element::zero(spec);
        for (std::size_t i = 0; i < tripotents.size(); ++i)
            x += values[i] * tripotents[i];
        return x;
    }
};

namespace detail {

// Gram-Schmidt keeping an orthonormal subset of prescribed size.
inline std::vector<Vec> complex_orthonormalize(const std::vector<Vec>& in,
                                               std::size_t want) {
    std::vector<Vec> out;
    for (const Vec& v0 : in) {
        if (out.size() == want) break;
        Vec v = v0;
        for (const Vec& u : out) v -= u.dot(v) * u;
        double n = v.norm();
        if (n > 0.3) out.push_back(v / n);
    }
    return out;
}

// Takagi vectors of a complex symmetric matrix: A conj(u_i) = sigma_i u_i
// with complex-orthonormal u_i, via the real-symmetric embedding of the
// conjugate-linear map z -> A zbar.
inline void takagi(const Mat& a, std::vector<double>& sigma, std::vector<Vec>& vecs) {
    const int n = int(a.rows());
    Eigen::MatrixXd r(2 * n, 2 * n);
    r.topLeftCorner(n, n) = a.real();
    r.topRightCorner(n, n) = a.imag();
    r.bottomLeftCorner(n, n) = a.imag();
    r.bottomRightCorner(n, n) = -a.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);

    std::vector<int> order(2 * n);
    for (int i = 0; i < 2 * n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return es.eigenvalues()[i] > es.eigenvalues()[j];
    });

    const double top = std::max(es.eigenvalues()[order[0]], 0.0);
    const double zero_tol = 1e-12 * std::max(top, 1e-300);

    sigma.clear();
    vecs.clear();
    std::vector<Vec> null_candidates;
    for (int idx : order) {
        double ev = es.eigenvalues()[idx];
        Eigen::VectorXd w = es.eigenvectors().col(idx);
        Vec u = w.head(n).cast<Complex>() + Complex(0, 1) * w.tail(n).cast<Complex>();
        if (ev > zero_tol) {
            if (int(vecs.size()) < n) {
                sigma.push_back(ev);
                vecs.push_back(u);
            }
        } else if (std::abs(ev) <= zero_tol) {
            null_candidates.push_back(u);
        }
    }
    // The zero eigenspace is i-invariant; extract a complex-orthonormal basis.
    std::size_t missing = std::size_t(n) - vecs.size();
    for (Vec& u : complex_orthonormalize(null_candidates, missing)) {
        sigma.push_back(0.0);
        vecs.push_back(std::move(u));
    }
}

// Canonical pairs of a complex antisymmetric matrix: orthonormal (u_k, w_k)
// with A conj(u_k) = -sigma_k w_k, A conj(w_k) = sigma_k u_k.
inline void youla(const Mat& a, std::vector<double>& sigma,
                  std::vector<std::pair<Vec, Vec>>& pairs) {
    const int n = int(a.rows());
    Mat h = a * a.adjoint();
    Eigen::SelfAdjointEigenSolver<Mat> es(h);

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return es.eigenvalues()[i] > es.eigenvalues()[j];
    });
    const double top = std::max(es.eigenvalues()[order[0]], 0.0);
    const double zero_tol = 1e-12 * std::max(top, 1e-300);
    const double cluster_tol = 1e-9 * std::max(top, 1e-300);

    sigma.clear();
    pairs.clear();
    std::size_t i = 0;
    while (i < order.size()) {
        double ev = es.eigenvalues()[order[i]];
        std::vector<Vec> cluster;
        std::size_t j = i;
        while (j < order.size() &&
               std::abs(es.eigenvalues()[order[j]] - ev) <= cluster_tol) {
            cluster.push_back(es.eigenvectors().col(order[j]));
            ++j;
        }
        i = j;
        if (ev <= zero_tol) {
            // Null pairs: any orthonormal couple works, value 0.
            for (std::size_t k = 0; k + 1 < cluster.size(); k += 2) {
                sigma.push_back(0.0);
                pairs.emplace_back(cluster[k], cluster[k + 1]);
            }
            continue;
        }
        double s = std::sqrt(ev);
        while (cluster.size() >= 2) {
            Vec u = cluster.front();
            Vec w = -(a * u.conjugate()) / s;
            w.normalize();
            sigma.push_back(s);
            pairs.emplace_back(u, w);
            std::vector<Vec> rest;
            for (std::size_t k = 1; k < cluster.size(); ++k) {
                Vec v = cluster[k];
                v -= u.dot(v) * u;
                v -= w.dot(v) * w;
                rest.push_back(std::move(v));
            }
            cluster = complex_orthonormalize(rest, cluster.size() - 2);
        }
    }
}

// Deterministic real unit vector orthogonal to a given real unit vector.
inline Eigen::VectorXd orthogonal_real_unit(const Eigen::VectorXd& u) {
    int k = 0;
    for (int i = 1; i < u.size(); ++i)
        if (std::abs(u[i]) < std::abs(u[k])) k = i;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(u.size());
    v[k] = 1.0;
    v -= u.dot(v) * u;
    return v / v.norm();
}

// Frame and frame values (descending, zero padded) per kind.
inline void frame_kernel(const DomainSpec& s, const Element& x,
                         std::vector<double>& vals, std::vector<Element>& frame) {
    vals.clear();
    frame.clear();
    switch (s.kind) {
        case DomainKind::type_i: {
            Mat m = expand_matrix(x);
            Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
            for (int i = 0; i < s.rank; ++i) {
                vals.push_back(svd.singularValues()[i]);
                Mat c = svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
                frame.push_back(pack_matrix(s, c));
            }
            return;
        }
        case DomainKind::type_iii: {
            std::vector<double> sg;
            std::vector<Vec> u;
            takagi(expand_matrix(x), sg, u);
            for (int i = 0; i < s.rank; ++i) {
                vals.push_back(sg[i]);
                frame.push_back(pack_matrix(s, u[i] * u[i].transpose()));
            }
            return;
        }
        case DomainKind::type_ii: {
            std::vector<double> sg;
            std::vector<std::pair<Vec, Vec>> pr;
            youla(expand_matrix(x), sg, pr);
            for (int i = 0; i < s.rank; ++i) {
                vals.push_back(sg[i]);
                Mat c = pr[i].first * pr[i].second.transpose() -
                        pr[i].second * pr[i].first.transpose();
                frame.push_back(pack_matrix(s, c));
            }
            return;
        }
        case DomainKind::type_iv: {
            const int n = s.dim;
            double snorm = x.coords.squaredNorm();
            Complex qq = spin_bilinear(x, x);
            if (snorm == 0.0) {
                Vec c1 = Vec::Zero(n), c2 = Vec::Zero(n);
                c1[0] = 0.5;
                c1[1] = Complex(0, 0.5);
                c2[0] = 0.5;
                c2[1] = Complex(0, -0.5);
                vals = {0.0, 0.0};
                frame = {Element(s, c1), Element(s, c2)};
                return;
            }
            if (std::abs(qq) <= 1e-14 * snorm) {
                // isotropic direction: x = l1 (u+iv)/2 with u,v real orthonormal
                double l1 = std::sqrt(2.0 * snorm);
                Vec c1 = x.coords / l1;
                Vec c2 = c1.conjugate();
                vals = {l1, 0.0};
                frame = {Element(s, std::move(c1)), Element(s, std::move(c2))};
                return;
            }
            Complex phase = std::exp(Complex(0, 0.5 * std::arg(qq)));
            Vec y = (x.coords.array() / phase).matrix();
            Eigen::VectorXd a = y.real(), b = y.imag();
            double na = a.norm(), nb = b.norm();
            Eigen::VectorXd u = a / na;
            Eigen::VectorXd v = (nb > 1e-14 * na) ? Eigen::VectorXd(b / nb)
                                                  : orthogonal_real_unit(u);
            Vec c_plus = 0.5 * phase * (u.cast<Complex>() + Complex(0, 1) * v.cast<Complex>());
            Vec c_minus = 0.5 * phase * (u.cast<Complex>() - Complex(0, 1) * v.cast<Complex>());
            vals = {na + nb, na - nb};
            frame = {Element(s, c_plus), Element(s, c_minus)};
            return;
        }
        case DomainKind::polydisc: {
            std::vector<int> order(s.dim);
            for (int i = 0; i < s.dim; ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](int i, int j) {
                return std::abs(x.coords[i]) > std::abs(x.coords[j]);
            });
            for (int i : order) {
                double m = std::abs(x.coords[i]);
                Vec c = Vec::Zero(s.dim);
                c[i] = (m > 0) ? x.coords[i] / m : Complex(1, 0);
                vals.push_back(m);
                frame.push_back(Element(s, std::move(c)));
            }
            return;
        }
        case DomainKind::hermitian_ball: {
            double m = x.coords.norm();
            Vec c;
            if (m > 0) {
                c = x.coords / m;
            } else {
                c = Vec::Zero(s.dim);
                c[0] = 1.0;
            }
            vals = {m};
            frame = {Element(s, std::move(c))};
            return;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace detail

// All frame spectral values of x, descending, zero padded to the rank.
inline std::vector<double> spectral_values(const DomainSpec& s, const Element& x) {
    check_same_spec(s, x.spec);
    switch (s.kind) {
        case DomainKind::type_i: {
            Eigen::JacobiSVD<Mat> svd(expand_matrix(x));
            std::vector<double> v(s.rank);
            for (int i = 0; i < s.rank; ++i) v[i] = svd.singularValues()[i];
            return v;
        }
        case DomainKind::type_ii: {
            Mat m = expand_matrix(x);
            Eigen::SelfAdjointEigenSolver<Mat> es(m * m.adjoint(),
                                                  Eigen::EigenvaluesOnly);
            std::vector<double> v;
            for (int i = int(es.eigenvalues().size()) - 1; i >= 0 && int(v.size()) < s.rank;
                 i -= 2)
                v.push_back(std::sqrt(std::max(0.0, es.eigenvalues()[i])));
            while (int(v.size()) < s.rank) v.push_back(0.0);
            return v;
        }
        case DomainKind::type_iii: {
            Eigen::JacobiSVD<Mat> svd(expand_matrix(x));
            std::vector<double> v(s.rank);
            for (int i = 0; i < s.rank; ++i) v[i] = svd.singularValues()[i];
            return v;
        }
        case DomainKind::type_iv: {
            double sn = x.coords.squaredNorm();
            double aq = std::abs(spin_bilinear(x, x));
            double root = std::sqrt(std::max(0.0, sn * sn - aq * aq));
            return {std::sqrt(sn + root), std::sqrt(std::max(0.0, sn - root))};
        }
        case DomainKind::polydisc: {
            std::vector<double> v(s.dim);
            for (int i = 0; i < s.dim; ++i) v[i] = std::abs(x.coords[i]);
            std::sort(v.rbegin(), v.rend());
            return v;
        }
        case DomainKind::hermitian_ball:
            return {x.coords.norm()};
    }
    throw std::logic_error("unreachable");
}

inline double spectral_norm(const DomainSpec& s, const Element& x) {
    return spectral_values(s, x)[0];
}

inline SpectralDecomposition spectral_decompose(const DomainSpec& s, const Element& x,
                                                double merged_tolerance = 1e-10) {
    check_same_spec(s, x.spec);
    SpectralDecomposition sd;
    sd.spec = s;
    sd.merged_tolerance = merged_tolerance;
    detail::frame_kernel(s, x, sd.frame_values, sd.frame);

    const double top = sd.frame_values.empty() ? 0.0 : sd.frame_values[0];
    if (top <= 0.0) return sd;
    const double zero_tol = merged_tolerance * top;

    std::size_t i = 0;
    while (i < sd.frame_values.size() && sd.frame_values[i] > zero_tol) {
        double head = sd.frame_values[i];
        Element c = sd.frame[i];
        double acc = head;
        std::size_t count = 1;
        std::size_t j = i + 1;
        while (j < sd.frame_values.size() &&
               head - sd.frame_values[j] < merged_tolerance * top &&
               sd.frame_values[j] > zero_tol) {
            c += sd.frame[j];
            acc += sd.frame_values[j];
            ++count;
            ++j;
        }
        sd.values.push_back(acc / double(count));
        sd.tripotents.push_back(std::move(c));
        i = j;
    }
    return sd;
}

// Max residual of the decomposition contract: tripotency, orthogonality,
// reconstruction and the norm identity.
inline double decomposition_residual(const SpectralDecomposition& sd, const Element& x) {
    const DomainSpec& s = sd.spec;
    double r = 0;
    auto check_set = [&](const std::vector<Element>& cs) {
        for (std::size_t i = 0; i < cs.size(); ++i) {
            Element ttt = triple_product(s, cs[i], cs[i], cs[i]);
            r = std::max(r, (ttt - 2.0 * cs[i]).max_abs());
            for (std::size_t j = i + 1; j < cs.size(); ++j)
                r = std::max(r, d_operator(s, cs[i], cs[j]).max_abs());
        }
    };
    check_set(sd.tripotents);
    check_set(sd.frame);
    r = std::max(r, (sd.reconstruct() - x).max_abs());
    Element xf = Element::zero(s);
    for (std::size_t i = 0; i < sd.frame.size(); ++i)
        xf += sd.frame_values[i] * sd.frame[i];
    r = std::max(r, (xf - x).max_abs());
    double l1 = sd.values.empty() ? 0.0 : sd.values[0];
    r = std::max(r, std::abs(l1 - spectral_norm(s, x)));
    return r;
}

// --- Peirce projectors ---------------------------------------------------

struct ProjectorFamily {
    DomainSpec spec;
    std::vector<Element> frame;
    int rank{0};
    std::vector<Mat> store;  // dense (rank+1)^2, upper triangle filled

    const Mat& projector(int i, int j) const { return store[i * (rank + 1) + j]; }
    RealLinearOp op(int i, int j) const {
        return RealLinearOp::linear(spec, projector(i, j));
    }
};

inline ProjectorFamily peirce_projectors(const DomainSpec& s,
                                         const std::vector<Element>& frame,
                                         double frame_tol = 1e-8) {
    detail::require(int(frame.size()) == s.rank, "frame length must equal the rank");
    for (std::size_t i = 0; i < frame.size(); ++i) {
        Element ttt = triple_product(s, frame[i], frame[i], frame[i]);
        detail::require((ttt - 2.0 * frame[i]).max_abs() <= frame_tol,
                        "frame entry is not a tripotent");
        for (std::size_t j = i + 1; j < frame.size(); ++j)
            detail::require(d_operator(s, frame[i], frame[j]).max_abs() <= frame_tol,
                            "frame entries are not orthogonal");
    }

    const int r = s.rank;
    const int d = s.dim;
    // spectral projectors of D(e_k, e_k) onto eigenvalues {0, 1, 2}
    std::vector<std::array<Mat, 3>> pk(r);
    for (int k = 0; k < r; ++k) {
        Mat dk = d_operator(s, frame[k], frame[k]).lin;
        Eigen::SelfAdjointEigenSolver<Mat> es(dk);
        pk[k] = {Mat::Zero(d, d), Mat::Zero(d, d), Mat::Zero(d, d)};
        for (int m = 0; m < d; ++m) {
            double ev = es.eigenvalues()[m];
            int snapped = int(std::lround(ev));
            if (snapped < 0 || snapped > 2 || std::abs(ev - snapped) > 1e-8)
                throw std::runtime_error(
                    "Peirce eigenvalue failed to snap to {0,1,2}; invalid frame");
            Vec v = es.eigenvectors().col(m);
            pk[k][snapped] += v * v.adjoint();
        }
        // primitivity: the eigenvalue-2 space of a primitive tripotent is a line
        double dim2 = pk[k][2].trace().real();
        detail::require(std::abs(dim2 - 1.0) <= 1e-6, "frame entry is not primitive");
    }

    ProjectorFamily pf;
    pf.spec = s;
    pf.frame = frame;
    pf.rank = r;
    pf.store.assign((r + 1) * (r + 1), Mat());
    for (int i = 0; i <= r; ++i) {
        for (int j = i; j <= r; ++j) {
            Mat p = Mat::Identity(d, d);
            for (int k = 1; k <= r; ++k) {
                int pattern = (k == i ? 1 : 0) + (k == j ? 1 : 0);
                p = p * pk[k - 1][pattern];
            }
            pf.store[i * (r + 1) + j] = std::move(p);
        }
    }
    return pf;
}

// B(u,u)^t from the Peirce expansion over the completed frame of u.
inline RealLinearOp bergman_power(const DomainSpec& s, const Element& u, double t) {
    check_same_spec(s, u.spec);
    SpectralDecomposition sd = spectral_decompose(s, u);
    double norm = sd.frame_values.empty() ? 0.0 : sd.frame_values[0];
    if (norm >= 1.0)
        throw std::domain_error("bergman_power: point is outside the open domain");
    ProjectorFamily pf = peirce_projectors(s, sd.frame);
    const int r = s.rank;
    std::vector<double> lam(r + 1, 0.0);
    for (int i = 1; i <= r; ++i) lam[i] = sd.frame_values[i - 1];
    Mat b = Mat::Zero(s.dim, s.dim);
    for (int i = 0; i <= r; ++i)
        for (int j = i; j <= r; ++j) {
            double w = std::pow((1.0 - lam[i] * lam[i]) * (1.0 - lam[j] * lam[j]), t);
            b += w * pf.projector(i, j);
        }
    return RealLinearOp::linear(s, std::move(b));
}

// Greatest eigenvalue of B(u,u) by the case formula on the invariants.
inline double beta_case_formula(const DomainSpec& s, const Element& u) {
    std::vector<double> lam = spectral_values(s, u);
    double l1 = lam.front(), lr = lam.back();
    if (l1 >= 1.0) throw std::domain_error("beta: point is outside the open domain");
    if (s.rank == 1) {
        return s.tube ? (1 - l1 * l1) * (1 - l1 * l1) : 1 - l1 * l1;
    }
    return s.tube ? (1 - lr * lr) * (1 - lr * lr) : 1 - lr * lr;
}

// Greatest eigenvalue of the assembled B(u,u); must agree with the case
// formula, which is checked here.
inline double beta_max_eig(const DomainSpec& s, const Element& u) {
    double formula = beta_case_formula(s, u);
    Mat b = bergman_operator(s, u, u).lin;
    Eigen::SelfAdjointEigenSolver<Mat> es(b, Eigen::EigenvaluesOnly);
    double numeric = es.eigenvalues().maxCoeff();
    if (std::abs(numeric - formula) > 1e-9)
        throw std::runtime_error("beta_max_eig: eigenvalue and case formula disagree");
    return numeric;
}

// Operator norm with respect to the Hermitian norm: largest singular value
// of the realified action (the packed basis is Hermitian-orthonormal up to
// one global scale, which cancels).
inline double op_norm_hermitian(const RealLinearOp& op) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(realify(op));
    return svd.singularValues()[0];
}

struct OpNormEstimate {
    double value{0};
    long budget{0};
};

// Lower-bound estimate of sup { ||op z||_spec : ||z||_spec = 1 } by seeded
// boundary sampling plus local hill climbing.
inline OpNormEstimate op_norm_spectral(const DomainSpec& s, const RealLinearOp& op,
                                       std::mt19937_64& rng, long budget = 4096) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_dir = [&]() {
        Vec z(s.dim);
        for (int i = 0; i < s.dim; ++i) z[i] = Complex(gauss(rng), gauss(rng));
        return z;
    };
    auto boundary = [&](Vec z) -> std::optional<Element> {
        Element e(s, std::move(z));
        double n = spectral_norm(s, e);
        if (n <= 0) return std::nullopt;
        e *= 1.0 / n;
        return e;
    };
    auto objective = [&](const Element& z) { return spectral_norm(s, op.apply(z)); };

    double best = 0;
    Element best_z = Element::basis(s, 0);

    // candidate from the Hermitian-norm maximizer
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(realify(op), Eigen::ComputeThinV);
    Eigen::VectorXd v = svd.matrixV().col(0);
    Vec z0 = v.head(s.dim).cast<Complex>() + Complex(0, 1) * v.tail(s.dim).cast<Complex>();
    if (auto e = boundary(z0)) {
        best = objective(*e);
        best_z = *e;
    }

    for (long i = 0; i < budget; ++i) {
        auto e = boundary(random_dir());
        if (!e) continue;
        double val = objective(*e);
        if (val > best) {
            best = val;
            best_z = *e;
        }
    }

    double step = 0.3;
    const int refine_steps = 200;
    for (int it = 0; it < refine_steps && step > 1e-10; ++it) {
        bool improved = false;
        for (int trial = 0; trial < 4; ++trial) {
            auto e = boundary(best_z.coords + step * random_dir());
            if (!e) continue;
            double val = objective(*e);
            if (val > best) {
                best = val;
                best_z = *e;
                improved = true;
            }
        }
        if (!improved) step *= 0.6;
    }
    return {best, budget};
}

// Independent route for the spectral norm: ||x||^2 = ||Q(x)||.
inline double spectral_norm_quadratic(const DomainSpec& s, const Element& x) {
    return std::sqrt(op_norm_hermitian(q_operator(s, x)));
}

}  // namespace bsdom
