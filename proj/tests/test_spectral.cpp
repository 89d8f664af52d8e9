#include "bsdom/sampling.hpp"
#include "bsdom/spectral.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace bsdom;
using Catch::Approx;

namespace {
const std::vector<DomainSpec> kAllKinds = {
    make_disc(),     make_polydisc(3), make_type_i(2, 3),       make_type_ii(3),
    make_type_ii(4), make_type_iii(3), make_type_iv(4),         make_hermitian_ball(3),
};

Element scalar(const DomainSpec& s, Complex v) {
    Vec c = Vec::Zero(s.dim);
    c[0] = v;
    return Element(s, c);
}

// element with prescribed frame values on a fresh frame
Element from_values(const DomainSpec& s, const std::vector<double>& vals,
                    std::uint64_t seed) {
    auto rng = counter_rng(seed, 99);
    Element x = random_element(s, rng);
    SpectralDecomposition sd = spectral_decompose(s, x);
    Element out = Element::zero(s);
    for (std::size_t i = 0; i < vals.size() && i < sd.frame.size(); ++i)
        out += vals[i] * sd.frame[i];
    return out;
}
}  // namespace

TEST_CASE("polydisc decomposition is the componentwise polar form") {
    DomainSpec s = make_polydisc(2);
    Vec c(2);
    c << Complex(0.5, 0), Complex(0, -0.3);
    Element x(s, c);
    SpectralDecomposition sd = spectral_decompose(s, x);
    REQUIRE(sd.values.size() == 2);
    CHECK(sd.values[0] == Approx(0.5));
    CHECK(sd.values[1] == Approx(0.3));
    CHECK(std::abs(sd.tripotents[0].coords[0] - Complex(1, 0)) <= 1e-15);
    CHECK(std::abs(sd.tripotents[1].coords[1] - Complex(0, -1)) <= 1e-15);
}

TEST_CASE("diagonal matrices decompose into matrix units") {
    DomainSpec s = make_type_i(2, 2);
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = 0.9;
    m(1, 1) = 0.4;
    Element x = element_from_matrix(s, m);
    SpectralDecomposition sd = spectral_decompose(s, x);
    REQUIRE(sd.values.size() == 2);
    CHECK(sd.values[0] == Approx(0.9));
    CHECK(sd.values[1] == Approx(0.4));
    Mat c1 = expand_matrix(sd.tripotents[0]);
    CHECK(std::abs(std::abs(c1(0, 0)) - 1.0) <= 1e-12);
    CHECK(std::abs(c1(1, 1)) <= 1e-12);
}

TEST_CASE("spin factor closed form") {
    SECTION("isotropic direction has a single spectral value") {
        DomainSpec s = make_type_iv(2);
        Vec c(2);
        c << Complex(0.3, 0), Complex(0, 0.3);
        Element x(s, c);
        SpectralDecomposition sd = spectral_decompose(s, x);
        REQUIRE(sd.values.size() == 1);
        CHECK(sd.values[0] == Approx(0.6));
        // cross-check against the operator route |x|^2 = |Q(x)|
        CHECK(sd.values[0] * sd.values[0] ==
              Approx(op_norm_hermitian(q_operator(s, x))).margin(1e-12));
    }
    SECTION("real directions are scaled maximal tripotents") {
        DomainSpec s = make_type_iv(3);
        Element x = 0.7 * Element::basis(s, 0);
        SpectralDecomposition sd = spectral_decompose(s, x);
        REQUIRE(sd.values.size() == 1);
        CHECK(sd.values[0] == Approx(0.7));
        CHECK(sd.frame_values[1] == Approx(0.7));
        CHECK(sd.tripotents.size() == 1);  // merged pair
    }
}

TEST_CASE("spectral norm golden values") {
    CHECK(spectral_norm(make_polydisc(3),
                        Element(make_polydisc(3), (Vec(3) << Complex(0.5, 0),
                                                   Complex(0, -0.3), Complex(0.1, 0))
                                                      .finished())) == Approx(0.5));
    DomainSpec s = make_type_i(2, 2);
    CHECK(spectral_norm(s, 0.7 * Element::basis(s, 0)) == Approx(0.7));
    Mat m(2, 2);
    m << Complex(0, 0), Complex(0.6, 0), Complex(0.6, 0), Complex(0, 0);
    // hand-computed singular values of [[0, 0.6], [0.6, 0]] are (0.6, 0.6)
    CHECK(spectral_norm(s, element_from_matrix(s, m)) == Approx(0.6));
}

TEST_CASE("decomposition contract on random elements of every kind") {
    for (const DomainSpec& s : kAllKinds) {
        for (int i = 0; i < 12; ++i) {
            auto rng = counter_rng(21, std::uint64_t(s.dim) * 100 + i);
            Element x = random_element(s, rng);
            SpectralDecomposition sd = spectral_decompose(s, x);
            CHECK(int(sd.frame.size()) == s.rank);
            CHECK(decomposition_residual(sd, x) <= 1e-10 * std::max(1.0, x.max_abs()));
            for (std::size_t k = 1; k < sd.values.size(); ++k)
                CHECK(sd.values[k - 1] > sd.values[k]);
            CHECK(std::is_sorted(sd.frame_values.rbegin(), sd.frame_values.rend()));
        }
    }
}

TEST_CASE("near-equal spectral values merge into one tripotent") {
    DomainSpec s = make_type_i(2, 2);
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = 0.7;
    m(1, 1) = 0.7;
    Element x = element_from_matrix(s, m);
    SpectralDecomposition sd = spectral_decompose(s, x);
    REQUIRE(sd.values.size() == 1);
    CHECK(sd.values[0] == Approx(0.7));
    Element t = triple_product(s, sd.tripotents[0], sd.tripotents[0], sd.tripotents[0]);
    CHECK((t - 2.0 * sd.tripotents[0]).max_abs() <= 1e-12);
    CHECK(sd.frame.size() == 2);  // the frame keeps primitives apart
}

TEST_CASE("peirce projectors") {
    SECTION("disc: everything is the (1,1) space") {
        DomainSpec d = make_disc();
        ProjectorFamily pf = peirce_projectors(d, {scalar(d, 1)});
        CHECK(std::abs(pf.projector(1, 1)(0, 0) - Complex(1, 0)) <= 1e-14);
        CHECK(std::abs(pf.projector(0, 0)(0, 0)) <= 1e-14);
        CHECK(std::abs(pf.projector(0, 1)(0, 0)) <= 1e-14);
    }
    SECTION("polydisc: coordinate projectors, no off-diagonal spaces") {
        DomainSpec s = make_polydisc(2);
        ProjectorFamily pf =
            peirce_projectors(s, {Element::basis(s, 0), Element::basis(s, 1)});
        CHECK(std::abs(pf.projector(1, 1)(0, 0) - Complex(1, 0)) <= 1e-14);
        CHECK(std::abs(pf.projector(2, 2)(1, 1) - Complex(1, 0)) <= 1e-14);
        CHECK(pf.projector(1, 2).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK(pf.projector(0, 1).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK(pf.projector(0, 2).cwiseAbs().maxCoeff() <= 1e-14);
    }
    SECTION("rank-one rectangle keeps a b-multiplicity space") {
        DomainSpec s = make_type_i(1, 2);
        ProjectorFamily pf = peirce_projectors(s, {Element::basis(s, 0)});
        CHECK(pf.projector(1, 1).trace().real() == Approx(1.0));
        CHECK(pf.projector(0, 1).trace().real() == Approx(1.0));
        Mat sum = pf.projector(1, 1) + pf.projector(0, 1) + pf.projector(0, 0);
        CHECK((sum - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-13);
    }
    SECTION("family contract on random frames") {
        for (const DomainSpec& s : kAllKinds) {
            auto rng = counter_rng(22, s.dim);
            Element x = random_element(s, rng);
            SpectralDecomposition sd = spectral_decompose(s, x);
            ProjectorFamily pf = peirce_projectors(s, sd.frame);
            Mat sum = Mat::Zero(s.dim, s.dim);
            const int r = s.rank;
            std::vector<Mat> dk;
            for (int k = 0; k < r; ++k)
                dk.push_back(d_operator(s, sd.frame[k], sd.frame[k]).lin);
            for (int i = 0; i <= r; ++i)
                for (int j = i; j <= r; ++j) {
                    const Mat& p = pf.projector(i, j);
                    CHECK((p * p - p).cwiseAbs().maxCoeff() <= 1e-12);
                    CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
                    sum += p;
                    for (int i2 = 0; i2 <= r; ++i2)
                        for (int j2 = i2; j2 <= r; ++j2)
                            if (i2 != i || j2 != j)
                                CHECK((p * pf.projector(i2, j2)).cwiseAbs().maxCoeff() <=
                                      1e-12);
                    // the image lies in the joint eigenspace
                    for (int k = 1; k <= r; ++k) {
                        double want = (k == i ? 1.0 : 0.0) + (k == j ? 1.0 : 0.0);
                        CHECK((dk[k - 1] * p - want * p).cwiseAbs().maxCoeff() <= 1e-11);
                    }
                }
            CHECK((sum - Mat::Identity(s.dim, s.dim)).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
    SECTION("rejects a non-frame") {
        DomainSpec s = make_polydisc(2);
        Vec c(2);
        c << Complex(1, 0), Complex(1, 0);
        CHECK_THROWS_AS(peirce_projectors(s, {Element(s, c), Element::basis(s, 1)}),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            peirce_projectors(s, {Element::basis(s, 0), 0.5 * Element::basis(s, 1)}),
            std::invalid_argument);
    }
}

TEST_CASE("peirce reconstruction identities") {
    for (const DomainSpec& s : kAllKinds) {
        auto rng = counter_rng(23, s.dim);
        Element x = random_with_spectral_norm(s, rng, 0.8);
        SpectralDecomposition sd = spectral_decompose(s, x);
        ProjectorFamily pf = peirce_projectors(s, sd.frame);
        const int r = s.rank;
        std::vector<double> lam(r + 1, 0.0);
        for (int k = 1; k <= r; ++k) lam[k] = sd.frame_values[k - 1];
        Mat dsum = Mat::Zero(s.dim, s.dim), qsum = dsum, bsum = dsum;
        for (int i = 0; i <= r; ++i)
            for (int j = i; j <= r; ++j) {
                const Mat& p = pf.projector(i, j);
                dsum += (lam[i] * lam[i] + lam[j] * lam[j]) * p;
                qsum += lam[i] * lam[i] * lam[j] * lam[j] * p;
                bsum += (1 - lam[i] * lam[i]) * (1 - lam[j] * lam[j]) * p;
            }
        RealLinearOp q = q_operator(s, x);
        CHECK((d_operator(s, x, x).lin - dsum).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK((compose(q, q).lin - qsum).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK((bergman_operator(s, x, x).lin - bsum).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("bergman powers") {
    SECTION("t = 0 gives the identity") {
        for (const DomainSpec& s : kAllKinds) {
            auto rng = counter_rng(24, s.dim);
            Element u = random_interior(s, rng);
            RealLinearOp b = bergman_power(s, u, 0.0);
            CHECK((b - RealLinearOp::identity(s)).max_abs() <= 1e-12);
        }
    }
    SECTION("disc golden value at u = 0.6, t = -1/2") {
        DomainSpec d = make_disc();
        RealLinearOp b = bergman_power(d, scalar(d, 0.6), -0.5);
        CHECK(b.lin(0, 0).real() == Approx(1.5625).margin(1e-12));
    }
    SECTION("half power squares to the bergman operator") {
        DomainSpec s = make_type_iii(2);
        auto rng = counter_rng(25, 1);
        Element u = random_interior(s, rng);
        RealLinearOp h = bergman_power(s, u, 0.5);
        CHECK((compose(h, h) - bergman_operator(s, u, u)).max_abs() <= 1e-10);
    }
    SECTION("power 1 equals the assembled operator, including degenerate points") {
        for (const DomainSpec& s : kAllKinds) {
            auto rng = counter_rng(26, s.dim);
            Element u = random_interior(s, rng);
            CHECK((bergman_power(s, u, 1.0) - bergman_operator(s, u, u)).max_abs() <=
                  1e-10);
            // rank-deficient base point
            SpectralDecomposition sd = spectral_decompose(s, u);
            Element v = 0.55 * sd.frame[0];
            CHECK((bergman_power(s, v, 1.0) - bergman_operator(s, v, v)).max_abs() <=
                  1e-10);
        }
    }
    SECTION("inverse power inverts") {
        DomainSpec s = make_type_ii(4);
        auto rng = counter_rng(27, 2);
        Element u = random_interior(s, rng);
        RealLinearOp prod = compose(bergman_power(s, u, -1.0), bergman_power(s, u, 1.0));
        CHECK((prod - RealLinearOp::identity(s)).max_abs() <= 1e-10);
    }
    SECTION("rejects boundary points") {
        DomainSpec d = make_disc();
        CHECK_THROWS_AS(bergman_power(d, scalar(d, 1.0), 0.5), std::domain_error);
    }
}

TEST_CASE("greatest eigenvalue of B(u,u)") {
    SECTION("disc") {
        DomainSpec d = make_disc();
        CHECK(beta_max_eig(d, scalar(d, 0.6)) == Approx(0.4096).margin(1e-12));
    }
    SECTION("hermitian ball above dimension one") {
        DomainSpec s = make_hermitian_ball(2);
        Element u = 0.5 * Element::basis(s, 0);
        CHECK(beta_max_eig(s, u) == Approx(0.75).margin(1e-12));
    }
    SECTION("non-tube rectangle with frame values 0.9, 0.2") {
        DomainSpec s = make_type_i(2, 3);
        Element u = from_values(s, {0.9, 0.2}, 31);
        CHECK(beta_max_eig(s, u) == Approx(0.96).margin(1e-10));
    }
    SECTION("the eigen route and the case formula agree") {
        for (const DomainSpec& s : kAllKinds) {
            auto rng = counter_rng(32, s.dim);
            Element u = random_interior(s, rng);
            Mat b = bergman_operator(s, u, u).lin;
            Eigen::SelfAdjointEigenSolver<Mat> es(b, Eigen::EigenvaluesOnly);
            CHECK(std::abs(es.eigenvalues().maxCoeff() - beta_case_formula(s, u)) <=
                  1e-10);
        }
    }
}

TEST_CASE("operator norms") {
    SECTION("identity has norm one in both senses") {
        DomainSpec s = make_type_i(2, 2);
        RealLinearOp id = RealLinearOp::identity(s);
        CHECK(op_norm_hermitian(id) == Approx(1.0));
        auto rng = counter_rng(33, 0);
        CHECK(op_norm_spectral(s, id, rng, 256).value == Approx(1.0).margin(1e-12));
    }
    SECTION("disc Q(x) realizes the squared spectral norm") {
        DomainSpec d = make_disc();
        CHECK(op_norm_hermitian(q_operator(d, scalar(d, 0.5))) ==
              Approx(0.25).margin(1e-14));
    }
    SECTION("scalar operators") {
        DomainSpec d = make_disc();
        RealLinearOp b = bergman_power(d, scalar(d, 0.6), -0.5);
        CHECK(op_norm_hermitian(b) == Approx(1.5625).margin(1e-12));
        auto rng = counter_rng(34, 0);
        RealLinearOp c = RealLinearOp::linear(d, Complex(0.3, -0.4) * Mat::Identity(1, 1));
        CHECK(op_norm_spectral(d, c, rng, 64).value == Approx(0.5).margin(1e-12));
    }
    SECTION("two-norm equality for bergman powers") {
        for (const DomainSpec& s : {make_type_i(2, 2), make_type_iv(4), make_type_ii(3)}) {
            auto rng = counter_rng(35, s.dim);
            Element u = random_interior(s, rng);
            for (double t : {-0.5, 0.5, 1.0, 2.0}) {
                RealLinearOp bt = bergman_power(s, u, t);
                double h = op_norm_hermitian(bt);
                OpNormEstimate est = op_norm_spectral(s, bt, rng, 2048);
                CHECK(std::abs(est.value - h) / h <= 1e-3);
                CHECK(est.budget == 2048);
            }
        }
    }
    SECTION("estimator never exceeds a true upper bound for bergman powers") {
        DomainSpec s = make_type_iii(3);
        auto rng = counter_rng(36, 0);
        Element u = random_interior(s, rng);
        RealLinearOp bt = bergman_power(s, u, -0.5);
        OpNormEstimate est = op_norm_spectral(s, bt, rng, 1024);
        CHECK(est.value <= op_norm_hermitian(bt) + 1e-9);
    }
}

TEST_CASE("fractional powers commute with the quadratic map") {
    for (const DomainSpec& s : kAllKinds) {
        auto rng = counter_rng(37, s.dim);
        Element u = random_interior(s, rng);
        Element z = random_unit_hermitian(s, rng);
        RealLinearOp qz = q_operator(s, z);
        for (double t : {-1.0, -0.5, 0.5, 1.0}) {
            RealLinearOp bt = bergman_power(s, u, t);
            RealLinearOp lhs = q_operator(s, bt.apply(z));
            RealLinearOp rhs = compose(bt, compose(qz, bt));
            CHECK((lhs - rhs).max_abs() <= 1e-9);
        }
    }
}

TEST_CASE("norm inequalities") {
    for (const DomainSpec& s : kAllKinds) {
        auto rng = counter_rng(38, s.dim);
        for (int i = 0; i < 10; ++i) {
            Element x = random_element(s, rng), y = random_element(s, rng);
            double sx = spectral_norm(s, x), sy = spectral_norm(s, y);
            CHECK(sx <= hermitian_norm(s, x) / kSqrt2 + 1e-12);
            CHECK(spectral_norm(s, x + y) <= sx + sy + 1e-12);
            Complex a(0.7, -1.1);
            CHECK(std::abs(spectral_norm(s, a * x) - std::abs(a) * sx) <= 1e-12);
            CHECK(std::abs(sx - spectral_norm_quadratic(s, x)) <= 1e-9);
        }
    }
}

TEST_CASE("degenerate spectra across all kinds") {
    SECTION("scaled maximal tripotents merge to one cluster") {
        for (const DomainSpec& s : kAllKinds) {
            auto rng = counter_rng(71, s.dim);
            Element x = random_element(s, rng);
            SpectralDecomposition base = spectral_decompose(s, x);
            Element maximal = Element::zero(s);
            for (const Element& e : base.frame) maximal += e;
            Element u = 0.62 * maximal;
            SpectralDecomposition sd = spectral_decompose(s, u);
            REQUIRE(sd.values.size() == 1);
            CHECK(sd.values[0] == Approx(0.62).margin(1e-12));
            CHECK(decomposition_residual(sd, u) <= 1e-10);
            CHECK((bergman_power(s, u, 1.0) - bergman_operator(s, u, u)).max_abs() <=
                  1e-10);
        }
    }
    SECTION("rank-deficient elements keep a full frame") {
        for (const DomainSpec& s : kAllKinds) {
            if (s.rank < 2) continue;
            auto rng = counter_rng(72, s.dim);
            Element x = random_element(s, rng);
            SpectralDecomposition base = spectral_decompose(s, x);
            Element u = 0.8 * base.frame[0];
            SpectralDecomposition sd = spectral_decompose(s, u);
            CHECK(int(sd.frame.size()) == s.rank);
            CHECK(sd.values.size() == 1);
            CHECK(decomposition_residual(sd, u) <= 1e-10);
            ProjectorFamily pf = peirce_projectors(s, sd.frame);
            Mat sum = Mat::Zero(s.dim, s.dim);
            for (int i = 0; i <= s.rank; ++i)
                for (int j = i; j <= s.rank; ++j) sum += pf.projector(i, j);
            CHECK((sum - Mat::Identity(s.dim, s.dim)).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
    SECTION("near-degenerate values still satisfy the contract") {
        for (const DomainSpec& s : kAllKinds) {
            if (s.rank < 2) continue;
            auto rng = counter_rng(73, s.dim);
            Element x = random_element(s, rng);
            SpectralDecomposition base = spectral_decompose(s, x);
            Element u = 0.7 * base.frame[0] + (0.7 - 1e-7) * base.frame[1];
            SpectralDecomposition sd = spectral_decompose(s, u);
            CHECK(decomposition_residual(sd, u) <= 1e-7);
        }
    }
    SECTION("odd antisymmetric size exercises the unpaired direction") {
        DomainSpec s = make_type_ii(5);
        auto rng = counter_rng(74, 0);
        for (int i = 0; i < 5; ++i) {
            Element x = random_element(s, rng);
            SpectralDecomposition sd = spectral_decompose(s, x);
            CHECK(int(sd.frame.size()) == 2);
            CHECK(decomposition_residual(sd, x) <= 1e-10 * std::max(1.0, x.max_abs()));
        }
    }
    SECTION("spin factor near the isotropic cone") {
        DomainSpec s = make_type_iv(4);
        auto rng = counter_rng(75, 0);
        Vec c(4);
        c << Complex(0.4, 0), Complex(0, 0.4), Complex(1e-9, 0), Complex(0, 0);
        Element x(s, c);
        SpectralDecomposition sd = spectral_decompose(s, x);
        CHECK(decomposition_residual(sd, x) <= 1e-9);
    }
    SECTION("zero decomposes to an empty value list with a full frame") {
        for (const DomainSpec& s : kAllKinds) {
            SpectralDecomposition sd = spectral_decompose(s, Element::zero(s));
            CHECK(sd.values.empty());
            CHECK(int(sd.frame.size()) == s.rank);
            CHECK(decomposition_residual(sd, Element::zero(s)) <= 1e-12);
            CHECK(spectral_norm(s, Element::zero(s)) == 0.0);
        }
    }
}
