#include <catch2/catch_amalgamated.hpp>

#include <jfcell/qyseries.hpp>

#include <random>

using namespace jfcell;

namespace {

QYSeries monomial(Rat trunc, Int qnum, Int qden, Int ydoubled, Int value)
{
    QYSeries s(std::move(trunc), 1, qden);
    s.add_monomial(qnum, ydoubled, CycScalar(rat(value)));
    return s;
}

// Deterministic random sparse series over Q for the property suites.
QYSeries random_series(std::mt19937_64& rng, bool with_slope = true)
{
    std::uniform_int_distribution<int> nterms(0, 5), qe(-3, 6), coeff(-5, 5), den(1, 2);
    QYSeries s(rat(8), 1, den(rng));
    std::uniform_int_distribution<Int> ye(-4, 4);
    for (int i = 0, n = nterms(rng); i < n; ++i) {
        Int e = qe(rng);
        Int d = ye(rng);
        Int c = coeff(rng);
        if (s.q_exponent(e) < s.truncation())
            s.add_monomial(e, d, CycScalar(rat(c)));
    }
    if (with_slope) {
        // a certificate wide enough for everything generated above
        s.set_slope(SlopeCert{rat(0), rat(10)});
    }
    return s;
}

} // namespace

TEST_CASE("series_add basics")
{
    auto f = monomial(rat(10), -1, 1, 0, 1) + monomial(rat(10), 0, 1, 0, 1); // q^-1 + 1
    auto zero_sum = f + (-f);
    CHECK(zero_sum.is_zero());

    // (q^-1 + 1) + (-q^-1) = 1; the cancelled term is not stored
    auto g = monomial(rat(10), -1, 1, 0, -1);
    auto h = f + g;
    CHECK(h.terms().size() == 1);
    CHECK(h.coefficient(rat(0), rat(0)) == CycScalar(rat(1)));

    // truncation bookkeeping: min rule
    QYSeries a(rat(10)), b(rat(6));
    CHECK((a + b).truncation() == rat(6));

    // f + 0 = f
    CHECK(f + QYSeries::zero(rat(10)) == f);

    // coefficients past the certified bound are not answered
    CHECK_THROWS_AS(f.coefficient(rat(10), rat(0)), BeyondTruncation);
}

TEST_CASE("series_mul basics")
{
    // (y^(1/2) - y^(-1/2))^2 = y - 2 + y^(-1)
    QYSeries u(rat(10));
    u.add_monomial(0, 1, CycScalar(rat(1)));
    u.add_monomial(0, -1, CycScalar(rat(-1)));
    auto sq = u * u;
    CHECK(sq.coefficient(rat(0), rat(1)) == CycScalar(rat(1)));
    CHECK(sq.coefficient(rat(0), rat(0)) == CycScalar(rat(-2)));
    CHECK(sq.coefficient(rat(0), rat(-1)) == CycScalar(rat(1)));

    // q^(1/2) * q^(1/2) = q, with the denominator reduced to 1
    auto h = monomial(rat(10), 1, 2, 0, 1);
    auto q = h * h;
    CHECK(q.q_denominator() == 1);
    CHECK(q.coefficient(rat(1), rat(0)) == CycScalar(rat(1)));

    // f * 1 = f
    auto f = monomial(rat(5), 2, 1, 3, 7);
    CHECK((f * QYSeries::one(rat(50))).coefficient(rat(2), rat(3, 2)) == CycScalar(rat(7)));
}

TEST_CASE("mul truncation rule")
{
    // T = min(T_f + v_g, T_g + v_f)
    auto f = monomial(rat(10), -2, 1, 0, 1); // v_f = -2, T_f = 10
    auto g = monomial(rat(6), 3, 1, 0, 1);   // v_g = 3, T_g = 6
    CHECK((f * g).truncation() == rat(4));   // min(13, 4)
}

TEST_CASE("series_div_exact")
{
    // f / f = 1
    std::mt19937_64 rng(7);
    for (int i = 0; i < 30; ++i) {
        auto f = random_series(rng);
        if (f.is_zero())
            continue;
        auto q = QYSeries::div_exact(f, f);
        CHECK(q.coefficient(rat(0), rat(0)) == CycScalar(rat(1)));
        for (const auto& [e, p] : q.terms())
            if (e != 0)
                FAIL("f/f has extra terms");
    }

    // (1 + q y) / (1 + q): the divisor's lowest coefficient is the unit 1,
    // so the quotient exists as a series and satisfies g*h = f
    auto f = monomial(rat(8), 0, 1, 0, 1) + monomial(rat(8), 1, 1, 2, 1);
    auto g = monomial(rat(8), 0, 1, 0, 1) + monomial(rat(8), 1, 1, 0, 1);
    auto h = QYSeries::div_exact(f, g);
    CHECK(QYSeries::agree_below(g * h, f, h.truncation()));
    CHECK(h.coefficient(rat(1), rat(1)) == CycScalar(rat(1)));
    CHECK(h.coefficient(rat(1), rat(0)) == CycScalar(rat(-1)));

    // a y-dependent lowest coefficient that fails to divide: 1 / (y - 1)
    auto one = monomial(rat(8), 0, 1, 0, 1);
    QYSeries ym1(rat(8));
    ym1.add_monomial(0, 2, CycScalar(rat(1)));
    ym1.add_monomial(0, 0, CycScalar(rat(-1)));
    CHECK_THROWS_AS(QYSeries::div_exact(one, ym1), NotDivisible);

    // product round-trip: (f*g)/g = f on the certified window
    for (int i = 0; i < 40; ++i) {
        auto f = random_series(rng);
        auto g = random_series(rng);
        if (g.is_zero())
            continue;
        auto prod = f * g;
        auto back = QYSeries::div_exact(prod, g);
        Rat window = std::min(back.truncation(), f.truncation());
        CHECK(QYSeries::agree_below(back, f, window));
    }
}

TEST_CASE("ring axioms on certified windows")
{
    std::mt19937_64 rng(20240817u);
    for (int i = 0; i < 300; ++i) {
        auto f = random_series(rng), g = random_series(rng), h = random_series(rng);
        auto lhs = (f + g) + h;
        auto rhs = f + (g + h);
        CHECK(QYSeries::agree_below(lhs, rhs, std::min(lhs.truncation(), rhs.truncation())));
        auto dl = f * (g + h);
        auto dr = f * g + f * h;
        Rat w = std::min(dl.truncation(), dr.truncation());
        CHECK(QYSeries::agree_below(dl, dr, w));
        auto cm = f * g;
        auto cm2 = g * f;
        CHECK(QYSeries::agree_below(cm, cm2, cm.truncation()));
    }
}

TEST_CASE("slope certificate soundness under ops")
{
    std::mt19937_64 rng(424242u);
    for (int i = 0; i < 300; ++i) {
        auto f = random_series(rng), g = random_series(rng);
        auto s = f + g;
        auto p = f * g;
        CHECK(s.slope_holds());
        CHECK(p.slope_holds());
    }
}

TEST_CASE("substitute_y")
{
    // termwise y -> 1 at n = 1, alpha = beta = 0
    QYSeries f(rat(6));
    f.add_monomial(0, 1, CycScalar(rat(1)));
    f.add_monomial(0, -1, CycScalar(rat(-1)));
    f.add_monomial(2, 4, CycScalar(rat(5)));
    f.set_slope(SlopeCert{rat(1), rat(1)});
    auto g = f.substitute_y(0, 0, 1);
    CHECK(g.coefficient(rat(0), rat(0)).is_zero());
    CHECK(g.coefficient(rat(2), rat(0)) == CycScalar(rat(5)));
    CHECK_FALSE(g.has_y_dependence());

    // y^(1/2) -> zeta_4 at n = 2, alpha = 0: (y^(1/2) - y^(-1/2)) -> 2*zeta_4
    QYSeries a0(rat(6));
    a0.add_monomial(0, 1, CycScalar(rat(1)));
    a0.add_monomial(0, -1, CycScalar(rat(-1)));
    a0.set_slope(SlopeCert{rat(1), rat(1, 2)});
    auto at_i = a0.substitute_y(1, 0, 2);
    auto expect = CycScalar(rat(2)) * CycScalar::root_of_unity(4, 1);
    CHECK(at_i.coefficient(rat(0), rat(0)) == expect);

    // missing certificate
    QYSeries bare(rat(4));
    bare.add_monomial(0, 0, CycScalar(rat(1)));
    CHECK_THROWS_AS(bare.substitute_y(0, 1, 2), NoSlopeCertificate);

    // sigma*|alpha|/n >= 1 is rejected
    QYSeries steep(rat(4));
    steep.add_monomial(0, 0, CycScalar(rat(1)));
    steep.set_slope(SlopeCert{rat(2), rat(0)});
    CHECK_THROWS_AS(steep.substitute_y(0, 1, 2), NoSlopeCertificate);
}

TEST_CASE("substitute_y truncation certificate")
{
    QYSeries f(rat(12));
    for (Int e = 0; e < 12; ++e)
        for (Int d = -2 * e - 1; d <= 2 * e + 1; d += 2)
            f.add_monomial(e, d, CycScalar(rat((e + 1) * d)));
    f.set_slope(SlopeCert{rat(1), rat(1, 2)});
    auto g = f.substitute_y(1, 1, 4);
    // T' = T(1 - sigma/4) - r0/4
    Rat tprime = rat(12) * rat(3, 4) - rat(1, 2) * rat(1, 4);
    CHECK(g.truncation() == tprime);
    for (const auto& [e, p] : g.terms())
        CHECK(g.q_exponent(e) < g.truncation());
}

TEST_CASE("truncation soundness: recomputation at higher truncation")
{
    std::mt19937_64 rng(99u);
    for (int i = 0; i < 120; ++i) {
        auto f = random_series(rng);
        auto g = random_series(rng);
        auto lo = f * g;
        // same data, wider certified window
        QYSeries fw(f.truncation() + 5, f.cyclotomic_order(), f.q_denominator());
        for (const auto& [e, p] : f.terms())
            fw.set_term(e, p);
        fw.set_slope(f.slope());
        QYSeries gw(g.truncation() + 5, g.cyclotomic_order(), g.q_denominator());
        for (const auto& [e, p] : g.terms())
            gw.set_term(e, p);
        gw.set_slope(g.slope());
        auto hi = fw * gw;
        CHECK(QYSeries::agree_below(lo, hi, lo.truncation()));
    }
}

TEST_CASE("exactness: integer inputs stay integer under + and *")
{
    std::mt19937_64 rng(5u);
    for (int i = 0; i < 100; ++i) {
        auto f = random_series(rng);
        auto g = random_series(rng);
        CHECK(f.is_integral());
        CHECK((f + g).is_integral());
        CHECK((f * g).is_integral());
    }
}
