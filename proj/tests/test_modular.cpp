#include <catch2/catch_amalgamated.hpp>

#include <jfcell/modular.hpp>

using namespace jfcell;

namespace {

// Independent oracle for Delta: expand q*prod(1-q^m)^24 with a naive dense
// integer polynomial, no QYSeries machinery involved.
std::vector<mpz_class> delta_oracle(int T)
{
    std::vector<mpz_class> p(T, 0);
    p[0] = 1;
    for (int m = 1; m < T; ++m) {
        for (int rep = 0; rep < 24; ++rep) {
            std::vector<mpz_class> q(T, 0);
            for (int e = 0; e < T; ++e) {
                if (p[e] == 0)
                    continue;
                q[e] += p[e];
                if (e + m < T)
                    q[e + m] -= p[e];
            }
            p = std::move(q);
        }
    }
    // shift by one for the leading q
    std::vector<mpz_class> out(T + 1, 0);
    for (int e = 0; e < T; ++e)
        out[e + 1] = p[e];
    return out;
}

// Independent oracle for c4^3/Delta = j via naive dense arithmetic.
std::vector<mpz_class> j_oracle(int T)
{
    std::vector<mpz_class> c4(T + 2, 0);
    c4[0] = 1;
    for (int n = 1; n < T + 2; ++n)
        c4[n] = 240 * detail::sigma_power(n, 3);
    auto mul = [&](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
        std::vector<mpz_class> r(T + 2, 0);
        for (int i = 0; i < T + 2; ++i) {
            if (a[i] == 0)
                continue;
            for (int j = 0; j + i < T + 2; ++j)
                r[i + j] += a[i] * b[j];
        }
        return r;
    };
    auto c43 = mul(mul(c4, c4), c4);
    auto dl = delta_oracle(T + 1); // dl[e] = coefficient of q^e, dl[1] = 1
    // long division by Delta (valuation 1): j[i] = coefficient of q^(i-1)
    std::vector<mpz_class> j(T + 1, 0);
    std::vector<mpz_class> rem = c43;
    for (int i = 0; i < T + 1; ++i) {
        mpz_class c = rem[i];
        j[i] = c;
        for (int e = 1; e < static_cast<int>(dl.size()) && e + i - 1 < T + 2; ++e)
            if (e + i - 1 >= 0)
                rem[e + i - 1] -= c * dl[e];
    }
    return j;
}

} // namespace

TEST_CASE("delta coefficients vs oracle")
{
    auto oracle = delta_oracle(8);
    auto d = mf_delta(9);
    CHECK(oracle[1] == 1);
    CHECK(oracle[2] == -24);
    CHECK(oracle[3] == 252);
    CHECK(oracle[4] == -1472);
    for (int e = 0; e <= 8; ++e)
        CHECK(d.series().coefficient(rat(e), rat(0)) == CycScalar(Rat(oracle[e])));
    CHECK(d.degree() == 24);
}

TEST_CASE("eisenstein leading coefficients")
{
    auto c4 = mf_c4(6);
    CHECK(c4.series().coefficient(rat(0), rat(0)) == CycScalar(rat(1)));
    CHECK(c4.series().coefficient(rat(1), rat(0)) == CycScalar(rat(240)));
    CHECK(c4.degree() == 8);
    auto c6 = mf_c6(6);
    CHECK(c6.series().coefficient(rat(0), rat(0)) == CycScalar(rat(1)));
    CHECK(c6.series().coefficient(rat(1), rat(0)) == CycScalar(rat(-504)));
    CHECK(c6.degree() == 12);
    CHECK(c4.series().is_integral());
    CHECK(c6.series().is_integral());
}

TEST_CASE("defining relation c4^3 - c6^2 - 1728 Delta = 0")
{
    const Int T = 50;
    auto c4 = mf_c4(T), c6 = mf_c6(T), d = mf_delta(T);
    auto rel = c4 * c4 * c4;
    auto c62 = c6 * c6;
    auto lhs = rel.series() - c62.series() - d.series().scaled(CycScalar(rat(1728)));
    CHECK(lhs.truncation() >= rat(T));
    CHECK(lhs.is_zero());
}

TEST_CASE("delta inverse")
{
    auto d = mf_delta(12);
    auto di = mf_delta_inverse(12);
    auto prod = d.series() * di.series();
    CHECK(prod.coefficient(rat(0), rat(0)) == CycScalar(rat(1)));
    for (const auto& [e, p] : prod.terms())
        if (e != 0)
            FAIL("Delta * Delta^{-1} has extra terms");
    CHECK(di.series().coefficient(rat(-1), rat(0)) == CycScalar(rat(1)));
    CHECK(di.series().is_integral());
    CHECK(di.degree() == -24);
}

TEST_CASE("mf_monomial")
{
    // (0,0,0) is the constant 1 of degree 0
    auto one = mf_monomial(0, 0, 0, 5);
    CHECK(one.degree() == 0);
    CHECK(one.series().coefficient(rat(0), rat(0)) == CycScalar(rat(1)));

    // (1,0,-1) = c4/Delta, degree -16, lowest term q^-1
    auto m = mf_monomial(1, 0, -1, 6);
    CHECK(m.degree() == -16);
    CHECK(m.series().coefficient(rat(-1), rat(0)) == CycScalar(rat(1)));

    // grading arithmetic
    CHECK(mf_monomial(0, 1, 0, 4).degree() == 12);

    // degree additivity under multiplication
    auto p = mf_monomial(1, 1, 0, 8) * mf_monomial(2, 0, -1, 8);
    CHECK(p.degree() == (8 + 12) + (16 - 24));
}

TEST_CASE("membership: exact generators")
{
    auto m = mf_monomial(1, 0, -1, 8);
    auto res = mf_membership(m.series(), -16, 1);
    REQUIRE(res.in_span);
    REQUIRE(res.coordinates.size() == 1);
    CHECK(res.coordinates[0].first == MonomialKey{1, 0, -1});
    CHECK(res.coordinates[0].second == rat(1));
    CHECK(res.integral);

    auto two = QYSeries::constant(CycScalar(rat(2)), rat(8));
    auto r2 = mf_membership(two, 0, 0);
    REQUIRE(r2.in_span);
    REQUIRE(r2.coordinates.size() == 1);
    CHECK(r2.coordinates[0].first == MonomialKey{0, 0, 0});
    CHECK(r2.coordinates[0].second == rat(2));
}

TEST_CASE("membership: j - 744 in the basis {1, c4^3/Delta}")
{
    const int T = 10;
    auto j = j_oracle(T); // j[i] = coefficient of q^(i-1)
    CHECK(j[0] == 1);
    CHECK(j[1] == 744);
    CHECK(j[2] == 196884);

    QYSeries f(rat(T - 1));
    for (int i = 0; i < T; ++i) {
        mpz_class c = j[i];
        if (i == 1)
            c -= 744;
        f.add_monomial(i - 1, 0, CycScalar(Rat(c)));
    }
    f.set_slope(SlopeCert{rat(0), rat(0)});
    auto res = mf_membership(f, 0, 1);
    REQUIRE(res.in_span);
    REQUIRE(res.coordinates.size() == 2);
    // sorted by (l, j, i): (3,0,-1) before (0,0,0)
    CHECK(res.coordinates[0].first == MonomialKey{3, 0, -1});
    CHECK(res.coordinates[0].second == rat(1));
    CHECK(res.coordinates[1].first == MonomialKey{0, 0, 0});
    CHECK(res.coordinates[1].second == rat(-744));
    CHECK(res.integral);
}

TEST_CASE("membership: NotInSpan and InsufficientTruncation")
{
    // a pole too deep for the allowed bound
    QYSeries f(rat(8));
    f.add_monomial(-2, 0, CycScalar(rat(1)));
    f.set_slope(SlopeCert{rat(0), rat(0)});
    auto res = mf_membership(f, -48, 1); // only l >= -1 monomials allowed
    CHECK_FALSE(res.in_span);
    REQUIRE(res.residual_exponent.has_value());
    CHECK(*res.residual_exponent == rat(-2));

    // truncation too small to pin the coordinates down
    QYSeries tiny(rat(-1));
    CHECK_THROWS_AS(mf_membership(tiny, 0, 2), InsufficientTruncation);
}

TEST_CASE("membership coordinates convolve under multiplication")
{
    // f = 2*c4/Delta + 3*c4^4/Delta^2 (degree -16), g = c4:
    // coordinates of f*g are the shifted coordinates of f
    auto f = mf_monomial(1, 0, -1, 10).series().scaled(CycScalar(rat(2))) +
             mf_monomial(4, 0, -2, 10).series().scaled(CycScalar(rat(3)));
    auto g = mf_monomial(1, 0, 0, 10).series();
    auto res = mf_membership(f * g, -8, 2);
    REQUIRE(res.in_span);
    REQUIRE(res.coordinates.size() == 2);
    CHECK(res.coordinates[0].first == MonomialKey{5, 0, -2});
    CHECK(res.coordinates[0].second == rat(3));
    CHECK(res.coordinates[1].first == MonomialKey{2, 0, -1});
    CHECK(res.coordinates[1].second == rat(2));
}

TEST_CASE("membership round-trip on random span elements")
{
    std::vector<std::pair<MonomialKey, Rat>> combos = {
        {{2, 0, -1}, rat(3)}, {{5, 0, -2}, rat(-1, 2)}};
    QYSeries acc(rat(9));
    acc.set_slope(SlopeCert{rat(0), rat(0)});
    for (const auto& [k, c] : combos) {
        auto m = mf_monomial(k.i, k.j, k.l, 9);
        acc = acc + m.series().scaled(CycScalar(c));
    }
    auto res = mf_membership(acc, -8, 2);
    REQUIRE(res.in_span);
    CHECK_FALSE(res.integral);
    REQUIRE(res.coordinates.size() == 2);
    CHECK(res.coordinates[0].first == MonomialKey{5, 0, -2});
    CHECK(res.coordinates[0].second == rat(-1, 2));
    CHECK(res.coordinates[1].first == MonomialKey{2, 0, -1});
    CHECK(res.coordinates[1].second == rat(3));
}
