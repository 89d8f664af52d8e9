#pragma once

// Holomorphic self-maps of a domain, homogeneous-component extraction by
// circle quadrature, and normalized Bohr sums with rigorous tail brackets.

#include "bsdom/moebius.hpp"

namespace bsdom {

enum class MapKind { extremal_diagonal, constant, identity, polynomial, composition };

// Evaluatable self-map of the domain. The extremal family acts diagonally
// on a set of orthogonal tripotents through scalar Moebius factors; the
// polynomial family is  f(z) = sum_k (z|w)^k v_k  for a fixed direction w.
struct HolomorphicMap {
    DomainSpec spec;
    MapKind kind{MapKind::identity};

    // extremal_diagonal
    std::vector<double> values;          // lambda_i in [0,1)
    std::vector<Element> tripotents;     // pairwise orthogonal
    std::vector<double> pairing_norms;   // (c_i|c_i), cached

    // constant
    Element constant_value;

    // polynomial
    Element direction;                   // pairing direction, usually a tripotent
    double direction_norm{1.0};          // (w|w), cached
    std::vector<Element> poly_coeffs;    // v_0 .. v_d

    // composition, outermost first
    std::vector<HolomorphicMap> chain;

    Element base_point;                  // f(0), cached at construction
};

inline Element eval_map(const HolomorphicMap& f, const Element& z);

namespace detail {
inline Element eval_extremal(const HolomorphicMap& f, const Element& z) {
    const DomainSpec& s = f.spec;
    Element out = Element::zero(s);
    for (std::size_t i = 0; i < f.tripotents.size(); ++i) {
        Complex pairing =
            hermitian_inner(s, z, f.tripotents[i]) / f.pairing_norms[i];
        if (!(std::abs(pairing) < 1.0))
            throw std::domain_error(
                "extremal map: pairing |(z|e_i)| reached 1; the normalized frame "
                "pairing left the unit disc");
        double lam = f.values[i];
        Complex factor = (lam - pairing) / (1.0 - lam * pairing);
        out += factor * f.tripotents[i];
    }
    return out;
}
}  // namespace detail

inline Element eval_map(const HolomorphicMap& f, const Element& z) {
    check_same_spec(f.spec, z.spec);
    switch (f.kind) {
        case MapKind::identity: return z;
        case MapKind::constant: return f.constant_value;
        case MapKind::extremal_diagonal: return detail::eval_extremal(f, z);
        case MapKind::polynomial: {
            Complex t = hermitian_inner(f.spec, z, f.direction) / f.direction_norm;
            Element out = Element::zero(f.spec);
            Complex power(1, 0);
            for (const Element& v : f.poly_coeffs) {
                out += power * v;
                power *= t;
            }
            return out;
        }
        case MapKind::composition: {
            Element w = z;
            for (auto it = f.chain.rbegin(); it != f.chain.rend(); ++it)
                w = eval_map(*it, w);
            return w;
        }
    }
    throw std::logic_error("unreachable");
}

inline HolomorphicMap make_identity_map(const DomainSpec& s) {
    HolomorphicMap f;
    f.spec = s;
    f.kind = MapKind::identity;
    f.base_point = Element::zero(s);
    return f;
}

inline HolomorphicMap make_constant_map(const DomainSpec& s, const Element& u) {
    check_same_spec(s, u.spec);
    detail::require(spectral_norm(s, u) < 1.0, "constant map value must be interior");
    HolomorphicMap f;
    f.spec = s;
    f.kind = MapKind::constant;
    f.constant_value = u;
    f.base_point = u;
    return f;
}

// f(z) = sum_k (z|w)^k v_k with the normalized pairing (z|w) = (z,w)/(w,w).
// With a tripotent direction the pairing stays inside the unit disc on the
// whole domain, so sum ||v_k|| <= 1 yields a self-map.
inline HolomorphicMap make_polynomial_map(const DomainSpec& s, const Element& w,
                                          std::vector<Element> coeffs) {
    detail::require(!coeffs.empty(), "polynomial map needs at least one coefficient");
    HolomorphicMap f;
    f.spec = s;
    f.kind = MapKind::polynomial;
    double n = hermitian_inner(s, w, w).real();
    detail::require(n > 0, "polynomial map direction must be nonzero");
    f.direction = w;
    f.direction_norm = n;
    f.poly_coeffs = std::move(coeffs);
    f.base_point = f.poly_coeffs[0];
    return f;
}

inline HolomorphicMap make_composition(std::vector<HolomorphicMap> chain) {
    detail::require(!chain.empty(), "composition needs at least one map");
    HolomorphicMap f;
    f.spec = chain.front().spec;
    f.kind = MapKind::composition;
    f.chain = std::move(chain);
    f.base_point = eval_map(f, Element::zero(f.spec));
    return f;
}

// The diagonal extremal family attached to the spectral decomposition of u:
//   f(z) = sum (lambda_i - (z|e_i)) / (1 - lambda_i (z|e_i)) e_i,  f(0) = u,
// over the merged tripotents of u, completed by the zero-value frame entries.
inline HolomorphicMap make_extremal_map(const DomainSpec& s, const Element& u) {
    check_same_spec(s, u.spec);
    detail::require(spectral_norm(s, u) < 1.0, "extremal map base must be interior");
    SpectralDecomposition sd = spectral_decompose(s, u);

    HolomorphicMap f;
    f.spec = s;
    f.kind = MapKind::extremal_diagonal;
    for (std::size_t i = 0; i < sd.tripotents.size(); ++i) {
        f.values.push_back(sd.values[i]);
        f.tripotents.push_back(sd.tripotents[i]);
    }
    // complete with the frame primitives not absorbed into merged tripotents
    const double top = sd.frame_values.empty() ? 0.0 : sd.frame_values[0];
    const double zero_tol = sd.merged_tolerance * top;
    std::size_t used = 0;
    for (double v : sd.frame_values)
        if (v > zero_tol) ++used;
    for (std::size_t i = used; i < sd.frame.size(); ++i) {
        f.values.push_back(0.0);
        f.tripotents.push_back(sd.frame[i]);
    }
    for (const Element& c : f.tripotents)
        f.pairing_norms.push_back(hermitian_inner(s, c, c).real());
    f.base_point = u;

    Element f0 = eval_map(f, Element::zero(s));
    detail::require((f0 - u).max_abs() <= 1e-10, "extremal map must fix f(0)=u");
    return f;
}

// --- homogeneous components ----------------------------------------------

// One shared ring of evaluations f(e^{2 pi i j/N} z), j = 0..N-1.
inline std::vector<Element> evaluate_ring(const HolomorphicMap& f, const Element& z,
                                          int quad_points) {
    std::vector<Element> ring;
    ring.reserve(quad_points);
    for (int j = 0; j < quad_points; ++j) {
        Complex w = std::exp(Complex(0, 2.0 * M_PI * j / quad_points));
        ring.push_back(eval_map(f, w * z));
    }
    return ring;
}

inline Element component_from_ring(const DomainSpec& s, const std::vector<Element>& ring,
                                   int k) {
    const int n = int(ring.size());
    Element acc = Element::zero(s);
    for (int j = 0; j < n; ++j) {
        Complex w = std::exp(Complex(0, -2.0 * M_PI * j * k / n));
        acc += w * ring[j];
    }
    return (1.0 / double(n)) * acc;
}

// f_k(z) by N-point circle quadrature; exact for polynomial maps of degree
// below N - k.
inline Element homogeneous_component(const HolomorphicMap& f, int k, const Element& z,
                                     int quad_points) {
    detail::require(quad_points >= 4 * (k + 1), "quadrature needs at least 4(k+1) points");
    return component_from_ring(f.spec, evaluate_ring(f, z, quad_points), k);
}

// --- Bohr sums ------------------------------------------------------------

enum class BohrVerdict { below_one, above_one, inconclusive };

inline const char* verdict_name(BohrVerdict v) {
    switch (v) {
        case BohrVerdict::below_one: return "below_one";
        case BohrVerdict::above_one: return "above_one";
        case BohrVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct BohrReport {
    std::vector<double> terms;  // ||dphi(u) f_k(z)|| / ||dphi(u)||
    double partial_sum{0};
    double tail_bound{0};
    int k_max{0};
    double threshold_lower{0};  // 1/(2+|u|)
    double threshold_upper{0};  // 1/(1+2|u|)
    double base_norm{0};        // |f(0)|
    double z_norm{0};
    BohrVerdict verdict{BohrVerdict::inconclusive};
};

struct ThresholdBounds {
    double p1_radius;
    double p2_radius;
};

inline ThresholdBounds threshold_bounds(const DomainSpec& s, const Element& u) {
    double n = spectral_norm(s, u);
    return {1.0 / (2.0 + n), 1.0 / (1.0 + 2.0 * n)};
}

// Normalized Bohr sum of f at z. The denominator is the closed form
// 1/(1-|u|^2); every term uses the exact spectral norm; the tail is the
// geometric bound (1-|u|^2) |z|^{K+1} / (1-|z|).
inline BohrReport bohr_sum(const DomainSpec& s, const HolomorphicMap& f, const Element& z,
                           int k_max = 64, int quad_points = 0) {
    check_same_spec(s, z.spec);
    double zn = spectral_norm(s, z);
    if (!(zn < 1.0)) throw std::domain_error("bohr_sum: |z| must be below 1");
    if (quad_points <= 0) quad_points = 4 * (k_max + 1);
    detail::require(quad_points >= 4 * (k_max + 1), "quadrature ring too coarse");

    const Element u = f.base_point;
    double un = spectral_norm(s, u);
    if (!(un < 1.0)) throw std::domain_error("bohr_sum: f(0) must be interior");
    RealLinearOp dphi = bergman_power(s, u, -0.5);
    double dphi_norm = 1.0 / (1.0 - un * un);

    BohrReport rep;
    rep.k_max = k_max;
    rep.base_norm = un;
    rep.z_norm = zn;
    auto th = threshold_bounds(s, u);
    rep.threshold_lower = th.p1_radius;
    rep.threshold_upper = th.p2_radius;

    std::vector<Element> ring = evaluate_ring(f, z, quad_points);
    for (int k = 0; k <= k_max; ++k) {
        Element fk = component_from_ring(s, ring, k);
        double num = spectral_norm(s, dphi.apply(fk));
        rep.terms.push_back(num / dphi_norm);
        rep.partial_sum += rep.terms.back();
    }
    rep.tail_bound = (1.0 - un * un) * std::pow(zn, k_max + 1) / (1.0 - zn);

    if (rep.partial_sum > 1.0)
        rep.verdict = BohrVerdict::above_one;
    else if (rep.partial_sum + rep.tail_bound < 1.0)
        rep.verdict = BohrVerdict::below_one;
    else
        rep.verdict = BohrVerdict::inconclusive;
    return rep;
}

struct TheoremBoundReport {
    double worst_margin{std::numeric_limits<double>::infinity()};
    double bound{0};
    bool all_within{true};
    std::vector<double> sums;
};

// Checks the proof bound: at |z| = 1/3 the normalized Bohr sum stays below
// 1 - (1-|f(0)|)^2 / 2.
inline TheoremBoundReport theorem_bound_check(const DomainSpec& s, const HolomorphicMap& f,
                                              const std::vector<Element>& samples,
                                              double tolerance = 1e-9, int k_max = 64) {
    TheoremBoundReport rep;
    double un = spectral_norm(s, f.base_point);
    rep.bound = 1.0 - 0.5 * (1.0 - un) * (1.0 - un);
    for (const Element& z : samples) {
        detail::require(std::abs(spectral_norm(s, z) - 1.0 / 3.0) <= 1e-6,
                        "theorem_bound_check samples must sit on |z| = 1/3");
        BohrReport br = bohr_sum(s, f, z, k_max);
        double total = br.partial_sum + br.tail_bound;
        rep.sums.push_back(total);
        double margin = rep.bound + tolerance - total;
        rep.worst_margin = std::min(rep.worst_margin, rep.bound - total);
        if (margin < 0) rep.all_within = false;
    }
    return rep;
}

}  // namespace bsdom
