#pragma once

// One-dimensional Bohr theory: coefficient extraction and bounds, majorant
// sums with rigorous tails, the extremal Moebius family, Ricci's bound and
// grid bracketing of Bohr numbers for Blaschke-type search families.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsdom::disc {

using Complex = std::complex<double>;
using DiscMap = std::function<Complex(Complex)>;

enum class SeriesSource { closed_form, quadrature };

struct CoefficientSeries {
    std::vector<Complex> coeffs;  // a_0 .. a_K
    SeriesSource source{SeriesSource::closed_form};
    int quad_points{0};
};

// Taylor coefficients of (alpha - z)/(1 - alpha z):
//   a_0 = alpha, a_k = alpha^{k+1} - alpha^{k-1}.
inline CoefficientSeries moebius_coeffs(double alpha, int k_max) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("moebius_coeffs: alpha must lie in (0,1)");
    if (k_max < 1) throw std::invalid_argument("moebius_coeffs: K must be >= 1");
    CoefficientSeries s;
    s.source = SeriesSource::closed_form;
    s.coeffs.push_back(alpha);
    for (int k = 1; k <= k_max; ++k)
        s.coeffs.push_back(std::pow(alpha, k + 1) - std::pow(alpha, k - 1));
    return s;
}

inline DiscMap moebius_map(double alpha) {
    return [alpha](Complex z) { return (alpha - z) / (1.0 - alpha * z); };
}

// Finite Blaschke product with the given zeros and a unimodular factor.
inline DiscMap blaschke_product(std::vector<Complex> zeros, double phase = 0.0) {
    return [zeros = std::move(zeros), phase](Complex z) {
        Complex w = std::exp(Complex(0, phase));
        for (Complex a : zeros) w *= (z - a) / (1.0 - std::conj(a) * z);
        return w;
    };
}

// Taylor coefficients by trapezoid quadrature on |z| = r_eval, rescaled.
inline CoefficientSeries coeffs_from_map(const DiscMap& f, int k_max, int quad_points,
                                         double r_eval = 0.5) {
    if (quad_points < 4 * (k_max + 1))
        throw std::invalid_argument("coeffs_from_map: need at least 4(K+1) points");
    if (!(r_eval > 0.0 && r_eval < 1.0))
        throw std::invalid_argument("coeffs_from_map: r_eval must lie in (0,1)");
    std::vector<Complex> ring(quad_points);
    for (int j = 0; j < quad_points; ++j)
        ring[j] = f(r_eval * std::exp(Complex(0, 2.0 * M_PI * j / quad_points)));
    CoefficientSeries s;
    s.source = SeriesSource::quadrature;
    s.quad_points = quad_points;
    double rk = 1.0;
    for (int k = 0; k <= k_max; ++k) {
        Complex acc = 0;
        for (int j = 0; j < quad_points; ++j)
            acc += ring[j] * std::exp(Complex(0, -2.0 * M_PI * j * k / quad_points));
        s.coeffs.push_back(acc / (double(quad_points) * rk));
        rk *= r_eval;
    }
    return s;
}

struct MajorantBracket {
    double partial;  // sum_{k<=K} |a_k| r^k
    double upper;    // partial + Wiener tail (1-|a_0|^2) r^{K+1}/(1-r)
};

inline MajorantBracket majorant_sum(const CoefficientSeries& s, double r) {
    if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("majorant_sum: r must be < 1");
    double partial = 0;
    double rk = 1.0;
    for (const Complex& a : s.coeffs) {
        partial += std::abs(a) * rk;
        rk *= r;
    }
    double a0 = std::abs(s.coeffs.front());
    double tail = (1.0 - a0 * a0) * rk / (1.0 - r);
    return {partial, partial + tail};
}

struct CoefficientBoundsReport {
    double wiener_worst_slack;         // min over k of (1-|a_0|^2) - |a_k|
    double caratheodory_worst_slack;   // min over k of 2(1-|a_0|) - |a_k|
    int wiener_worst_k{0};
    int caratheodory_worst_k{0};
};

inline CoefficientBoundsReport coefficient_bounds_check(const CoefficientSeries& s) {
    double a0 = std::abs(s.coeffs.front());
    CoefficientBoundsReport rep;
    rep.wiener_worst_slack = std::numeric_limits<double>::infinity();
    rep.caratheodory_worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < s.coeffs.size(); ++k) {
        double ak = std::abs(s.coeffs[k]);
        double wiener = (1.0 - a0 * a0) - ak;
        double cara = 2.0 * (1.0 - a0) - ak;
        if (wiener < rep.wiener_worst_slack) {
            rep.wiener_worst_slack = wiener;
            rep.wiener_worst_k = int(k);
        }
        if (cara < rep.caratheodory_worst_slack) {
            rep.caratheodory_worst_slack = cara;
            rep.caratheodory_worst_k = int(k);
        }
    }
    return rep;
}

struct RicciReport {
    double majorant_upper;  // upper bracket of M_f(3/5)
    double bound;           // 1 - (9/10)(1/3 - |a_1|)^2
    double a1_abs;
    bool pass;
};

// For f with f(0) = 0 verifies M_f(3/5) <= 1 - (9/10)(1/3 - |a_1|)^2.
// The tail above K uses the Wiener bound for g = f/z.
inline RicciReport ricci_check(const DiscMap& f, double tolerance = 1e-9, int k_max = 32,
                               double r_eval = 0.5) {
    CoefficientSeries s = coeffs_from_map(f, k_max, 4 * (k_max + 1), r_eval);
    if (std::abs(s.coeffs[0]) > 1e-12)
        throw std::invalid_argument("ricci_check requires f(0) = 0");
    const double r = 0.6;
    double partial = 0, rk = 1.0;
    for (const Complex& a : s.coeffs) {
        partial += std::abs(a) * rk;
        rk *= r;
    }
    double a1 = std::abs(s.coeffs[1]);
    double tail = (1.0 - a1 * a1) * rk / (1.0 - r);
    RicciReport rep;
    rep.majorant_upper = partial + tail;
    rep.a1_abs = a1;
    rep.bound = 1.0 - 0.9 * (1.0 / 3.0 - a1) * (1.0 / 3.0 - a1);
    rep.pass = rep.majorant_upper <= rep.bound + tolerance;
    return rep;
}

// --- Bohr number search ----------------------------------------------------

enum class DiscClass { f0, f0_alpha, fm, fm_alpha };

struct DiscFamilySpec {
    DiscClass cls{DiscClass::f0};
    int m{0};
    double alpha{0.0};
};

struct Grid {
    double lo{0};
    double hi{0};
    int count{1};

    double at(int i) const {
        if (count <= 1) return lo;
        return lo + (hi - lo) * double(i) / double(count - 1);
    }
};

struct FamilyMember {
    DiscMap map;
    std::string description;
};

// Blaschke-type generators per class; every member maps the disc into
// itself by construction.
inline std::vector<FamilyMember> generate_family(const DiscFamilySpec& fam,
                                                 const Grid& params) {
    std::vector<FamilyMember> members;
    auto param_values = [&]() {
        std::vector<double> v;
        for (int i = 0; i < params.count; ++i) v.push_back(params.at(i));
        return v;
    }();
    // secondary factor used to sharpen the degree-(m+2) search
    const std::vector<double> tail_factors = {0.9, 0.99, 0.999, 0.9999};

    switch (fam.cls) {
        case DiscClass::f0:
            for (double a : param_values) {
                if (!(a > 0 && a < 1)) continue;
                members.push_back({moebius_map(a), "moebius(alpha=" + std::to_string(a) + ")"});
            }
            break;
        case DiscClass::f0_alpha:
            for (double b : param_values) {
                if (!(b > 0 && b <= 1)) continue;
                double a = fam.alpha;
                members.push_back({[a, b](Complex z) { return (a - b * z) / (1.0 - a * b * z); },
                                   "moebius(alpha)∘scale(" + std::to_string(b) + ")"});
            }
            break;
        case DiscClass::fm:
            for (double t : param_values) {
                if (!(t > 0 && t < 1)) continue;
                int m = fam.m;
                members.push_back({[t, m](Complex z) {
                                       return std::pow(z, m) * (t - z) / (1.0 - t * z);
                                   },
                                   "z^m*moebius(t=" + std::to_string(t) + ")"});
                for (double sfac : tail_factors) {
                    members.push_back(
                        {[t, m, sfac](Complex z) {
                             return std::pow(z, m) * (t - z) / (1.0 - t * z) * (sfac - z) /
                                    (1.0 - sfac * z);
                         },
                         "z^m*moebius(t=" + std::to_string(t) + ")*moebius(s=" +
                             std::to_string(sfac) + ")"});
                }
            }
            break;
        case DiscClass::fm_alpha:
            for (double eta : param_values) {
                if (!(eta > 0 && eta <= 1)) continue;
                double a = fam.alpha;
                int m = fam.m;
                members.push_back({[a, eta, m](Complex z) {
                                       return std::pow(z, m) * (a - eta * z) /
                                              (1.0 - a * eta * z);
                                   },
                                   "z^m*moebius(alpha)∘scale(" + std::to_string(eta) + ")"});
            }
            break;
    }
    if (members.empty()) throw std::invalid_argument("empty search family");
    return members;
}

struct BohrBracket {
    double upper_witness{std::numeric_limits<double>::quiet_NaN()};
    double lower_certificate{std::numeric_limits<double>::quiet_NaN()};
    bool sampled_only{true};  // the certificate covers the sampled members only
    std::string witness_description;
    double witness_majorant{0};
};

// Grid bracketing of the Bohr number of a class, restricted to the family:
// the witness side is rigorous (some member exceeds 1 at that radius), the
// certificate side is heuristic over the sampled members.
inline BohrBracket bohr_number_bracket(const DiscFamilySpec& fam, const Grid& r_grid,
                                       const Grid& param_grid, int k_max = 48,
                                       double r_eval = 0.7) {
    if (r_grid.count < 1 || param_grid.count < 1)
        throw std::invalid_argument("bohr_number_bracket: empty grid");
    std::vector<FamilyMember> members = generate_family(fam, param_grid);
    std::vector<CoefficientSeries> series;
    series.reserve(members.size());
    for (const FamilyMember& m : members)
        series.push_back(coeffs_from_map(m.map, k_max, 4 * (k_max + 1), r_eval));

    BohrBracket out;
    for (int i = 0; i < r_grid.count; ++i) {
        double r = r_grid.at(i);
        bool any_above = false;
        bool all_below = true;
        for (std::size_t j = 0; j < series.size(); ++j) {
            MajorantBracket mb = majorant_sum(series[j], r);
            if (mb.partial > 1.0) {
                any_above = true;
                if (std::isnan(out.upper_witness)) {
                    out.witness_description = members[j].description;
                    out.witness_majorant = mb.partial;
                }
            }
            if (!(mb.upper <= 1.0)) all_below = false;
        }
        if (any_above && std::isnan(out.upper_witness)) out.upper_witness = r;
        if (all_below) {
            if (std::isnan(out.lower_certificate) || r > out.lower_certificate)
                out.lower_certificate = r;
        }
    }
    return out;
}

}  // namespace bsdom::disc
