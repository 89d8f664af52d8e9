#include "bsdom/sampling.hpp"
#include "bsdom/triple.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace bsdom;
using Catch::Approx;

namespace {
const std::vector<DomainSpec> kAllKinds = {
    make_disc(),     make_polydisc(3),       make_type_i(2, 3), make_type_ii(3),
    make_type_ii(4), make_type_iii(3),       make_type_iv(4),   make_hermitian_ball(3),
};

Element scalar(const DomainSpec& s, Complex v) {
    Vec c = Vec::Zero(s.dim);
    c[0] = v;
    return Element(s, c);
}
}  // namespace

TEST_CASE("disc triple product is {xyz} = 2 x ybar z") {
    DomainSpec d = make_disc();
    Element one = scalar(d, 1);
    CHECK(triple_product(d, one, one, one).coords[0] == Complex(2, 0));
    Element x = scalar(d, Complex(0.3, 0.1)), y = scalar(d, Complex(-0.2, 0.5)),
            z = scalar(d, Complex(0.8, -0.4));
    Complex expect = 2.0 * x.coords[0] * std::conj(y.coords[0]) * z.coords[0];
    CHECK(std::abs(triple_product(d, x, y, z).coords[0] - expect) < 1e-15);
}

TEST_CASE("primitive matrix units are tripotents") {
    DomainSpec s = make_type_i(2, 2);
    Element e11 = Element::basis(s, 0);
    Element t = triple_product(s, e11, e11, e11);
    CHECK((t - 2.0 * e11).max_abs() == 0.0);
}

TEST_CASE("spin factor normalization satisfies the tripotent axiom") {
    for (int n : {2, 4, 6}) {
        DomainSpec s = make_type_iv(n);
        Element c = Element::basis(s, 0);
        CHECK((triple_product(s, c, c, c) - 2.0 * c).max_abs() <= 1e-15);
    }
}

TEST_CASE("the two routes {xyz} = D(x,y)z = Q(x,z)y agree") {
    DomainSpec s = make_type_iii(3);
    for (int i = 0; i < 10; ++i) {
        auto rng = counter_rng(11, i);
        Element x = random_unit_hermitian(s, rng);
        Element y = random_unit_hermitian(s, rng);
        Element z = random_unit_hermitian(s, rng);
        Element via_d = d_operator(s, x, y).apply(z);
        Element via_q = q_operator_polarized(s, x, z).apply(y);
        Element direct = triple_product(s, x, y, z);
        CHECK((via_d - direct).max_abs() <= 1e-14);
        CHECK((via_q - direct).max_abs() <= 1e-14);
    }
}

TEST_CASE("triple product is symmetric in the outer slots") {
    for (const DomainSpec& s : kAllKinds) {
        auto rng = counter_rng(12, s.dim);
        Element x = random_unit_hermitian(s, rng);
        Element y = random_unit_hermitian(s, rng);
        Element z = random_unit_hermitian(s, rng);
        CHECK((triple_product(s, x, y, z) - triple_product(s, z, y, x)).max_abs() <= 1e-14);
    }
}

TEST_CASE("operator structure matches linearity classes") {
    DomainSpec s = make_type_ii(4);
    auto rng = counter_rng(13, 0);
    Element x = random_unit_hermitian(s, rng);
    Element y = random_unit_hermitian(s, rng);
    CHECK(d_operator(s, x, y).is_linear());
    CHECK(bergman_operator(s, x, y).is_linear());
    CHECK(q_operator(s, x).is_antilinear());
}

TEST_CASE("bergman operator golden values") {
    SECTION("B(x,0) is the identity") {
        for (const DomainSpec& s : kAllKinds) {
            auto rng = counter_rng(14, s.dim);
            Element x = random_unit_hermitian(s, rng);
            RealLinearOp b = bergman_operator(s, x, Element::zero(s));
            CHECK((b - RealLinearOp::identity(s)).max_abs() <= 1e-15);
        }
    }
    SECTION("disc B(u,u) at u = 0.6 multiplies by 0.4096") {
        DomainSpec d = make_disc();
        Element u = scalar(d, 0.6);
        RealLinearOp b = bergman_operator(d, u, u);
        CHECK(b.lin(0, 0).real() == Approx(0.4096).margin(1e-15));
        CHECK(std::abs(b.lin(0, 0).imag()) <= 1e-15);
    }
}

TEST_CASE("hermitian inner product") {
    SECTION("disc (1|1) = 2") {
        DomainSpec d = make_disc();
        CHECK(hermitian_inner(d, scalar(d, 1), scalar(d, 1)) == Complex(2, 0));
    }
    SECTION("zero gives zero") {
        for (const DomainSpec& s : kAllKinds)
            CHECK(std::abs(hermitian_inner(s, Element::zero(s), Element::zero(s))) == 0.0);
    }
    SECTION("coordinate axes of a polydisc are orthogonal") {
        DomainSpec s = make_polydisc(2);
        Element x = Element::basis(s, 0), y = Element::basis(s, 1);
        CHECK(std::abs(hermitian_inner(s, x, y)) == 0.0);
        CHECK(d_operator(s, x, y).max_abs() == 0.0);
    }
    SECTION("hermitian symmetry and positivity") {
        for (const DomainSpec& s : kAllKinds) {
            auto rng = counter_rng(15, s.dim);
            Element x = random_element(s, rng), y = random_element(s, rng);
            Complex a = hermitian_inner(s, x, y);
            Complex b = hermitian_inner(s, y, x);
            CHECK(std::abs(a - std::conj(b)) <= 1e-12 * std::abs(a));
            CHECK(hermitian_inner(s, x, x).real() > 0);
            CHECK(std::abs(hermitian_inner(s, x, x).imag()) <= 1e-14);
        }
    }
    SECTION("closed multiplier matches the trace route") {
        for (const DomainSpec& s : kAllKinds) {
            auto rng = counter_rng(16, s.dim);
            for (int i = 0; i < 5; ++i) {
                Element x = random_unit_hermitian(s, rng), y = random_unit_hermitian(s, rng);
                Complex fast = hermitian_inner(s, x, y);
                Complex slow = hermitian_inner_via_trace(s, x, y);
                CHECK(std::abs(fast - slow) <= 1e-12);
            }
        }
    }
}

TEST_CASE("defining identities hold at rounding level") {
    SECTION("all-zero inputs") {
        DomainSpec s = make_type_i(2, 2);
        Element z = Element::zero(s);
        IdentityResiduals r = identity_residuals(s, z, z, z, z, z);
        CHECK(r.jordan == 0.0);
        CHECK(r.a4 == 0.0);
        CHECK(r.a5 == 0.0);
    }
    SECTION("random unit-scale tuples on every kind") {
        for (const DomainSpec& s : kAllKinds) {
            for (int i = 0; i < 30; ++i) {
                auto rng = counter_rng(17, std::uint64_t(s.dim) * 1000 + i);
                Element x = random_unit_hermitian(s, rng);
                Element y = random_unit_hermitian(s, rng);
                Element u = random_unit_hermitian(s, rng);
                Element v = random_unit_hermitian(s, rng);
                Element w = random_unit_hermitian(s, rng);
                IdentityResiduals r = identity_residuals(s, x, y, u, v, w);
                CHECK(r.jordan <= 1e-10);
                CHECK(r.a4 <= 1e-10);
                CHECK(r.a5 <= 1e-10);
            }
        }
    }
}

TEST_CASE("quadratic commutation with the other bergman argument order") {
    // Q(B(x,y)z) = B(x,y) Q(z) B(y,x) with distinct x and y
    DomainSpec s = make_type_i(2, 2);
    auto rng = counter_rng(18, 0);
    Element x = random_unit_hermitian(s, rng);
    Element y = random_unit_hermitian(s, rng);
    Element z = random_unit_hermitian(s, rng);
    RealLinearOp bxy = bergman_operator(s, x, y);
    RealLinearOp byx = bergman_operator(s, y, x);
    RealLinearOp lhs = q_operator(s, bxy.apply(z));
    RealLinearOp rhs = compose(bxy, compose(q_operator(s, z), byx));
    CHECK((lhs - rhs).max_abs() <= 1e-12);
}
