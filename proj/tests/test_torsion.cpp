#include <catch2/catch_amalgamated.hpp>

#include <jfcell/torsion.hpp>

using namespace jfcell;

TEST_CASE("n = 1 consistency: torsion of a is restrict_z0(a) = 0")
{
    auto a = gen_a(10);
    auto R = torsion_restrict(a, 1);
    REQUIRE(R.components().size() == 1);
    CHECK(R.component(0, 0).is_zero());
    CHECK(R.degree() == -2);

    auto rep = torsion_sum(R, 1);
    CHECK(rep.sum.is_zero());
    REQUIRE(rep.membership.in_span);
    CHECK(rep.membership.coordinates.empty());
}

TEST_CASE("a^4 at n = 2: components")
{
    auto a = gen_a(20);
    auto a4 = a * a * a * a;
    REQUIRE(a4.k() == 4);
    auto R = torsion_restrict(a4, 2);
    REQUIRE(R.components().size() == 4);

    // (0,0): a(0) = 0
    CHECK(R.component(0, 0).is_zero());

    // (0,1): constant term (2 zeta_4)^4 = 16, landing in Q
    const auto& c01 = R.component(0, 1);
    CHECK(c01.cyclotomic_order() == 1);
    CHECK(c01.coefficient(rat(0), rat(0)) == CycScalar(rat(16)));

    // all components have coefficients in the cyclotomic integers
    CHECK(R.components_integral());
}

TEST_CASE("twist gate: torsion a 2 raises, raw mode accepts")
{
    auto a = gen_a(10);
    CHECK_THROWS_AS(torsion_restrict(a, 2), TwistNotTrivialized);
    auto raw = torsion_restrict(a, 2, true);
    CHECK(raw.components().size() == 4);
    CHECK_THROWS_AS(torsion_sum(raw, 1), std::invalid_argument);
}

TEST_CASE("missing certificate propagates")
{
    QYSeries s(rat(5));
    s.add_monomial(0, 1, CycScalar(rat(1)));
    JacobiForm f(std::move(s), 1, 0);
    // n = 1 needs no certificate (alpha = 0 only); n = 2 does
    auto c00 = torsion_restrict(f, 1).component(0, 0);
    CHECK(c00.coefficient(rat(0), rat(0)) == CycScalar(rat(1)));
    CHECK_THROWS_AS(torsion_restrict(f, 2, true), NoSlopeCertificate);
}

TEST_CASE("composite-null: a(nz) * psi vanishes at n-torsion")
{
    const Int T = 48;
    auto a = gen_a(T);
    auto b = gen_b(T);
    auto one = JacobiForm(QYSeries::one(rat(T)), 0, 0);
    {
        QYSeries s = one.series();
        s.set_slope(SlopeCert{rat(0), rat(0)});
        one = JacobiForm(std::move(s), 0, 0);
    }

    for (Int n : {Int(2), Int(3)}) {
        auto anz = scale_z(a, n);
        std::vector<JacobiForm> psis = {one, a, b, a * a};
        for (const auto& psi : psis) {
            auto phi = anz * psi;
            const bool normalized = (phi.k() == n * n);
            auto R = torsion_restrict(phi, n, !normalized);
            for (const auto& [key, comp] : R.components()) {
                INFO("n=" << n << " psi-k=" << psi.k() << " component (" << key.first << ","
                          << key.second << ")");
                REQUIRE(comp.truncation() >= rat(10));
                CHECK(comp.truncated(rat(10)).is_zero());
            }
        }
    }
}

TEST_CASE("normalized torsion sums of k = 4 monomials are modular at n = 2")
{
    const Int T = 26;
    auto a = gen_a(T);
    auto b = gen_b(T);
    auto c = gen_c(T);

    struct Case {
        JacobiForm form;
        const char* name;
    };
    std::vector<Case> cases = {{a * a * a * a, "a^4"},
                               {a * a * b, "a^2 b"},
                               {b * b, "b^2"},
                               {a * c, "a c"}};
    for (const auto& [phi, name] : cases) {
        INFO(name);
        REQUIRE(phi.k() == 4);
        auto R = torsion_restrict(phi, 2);
        auto rep = torsion_sum(R, 2);
        REQUIRE(rep.sum.truncation() >= rat(12));
        CHECK(rep.degree == phi.degree() - 8);
        CHECK(rep.membership.in_span);
        CHECK(rep.membership.integral);
        CHECK(rep.sum_integral);
        CHECK(rep.components_integral);
    }
}

TEST_CASE("torsion sum of the zero restriction has zero coordinates")
{
    const Int T = 40;
    auto a = gen_a(T);
    auto phi = scale_z(a, 2) * JacobiForm(QYSeries::one(rat(T)), 0, 0);
    // scale_z(a,2) has k = 4 = n^2: normalized mode applies
    auto R = torsion_restrict(phi, 2);
    auto rep = torsion_sum(R, 2);
    CHECK(rep.sum.is_zero());
    REQUIRE(rep.membership.in_span);
    CHECK(rep.membership.coordinates.empty());
}
