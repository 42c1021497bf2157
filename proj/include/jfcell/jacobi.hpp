#ifndef JFCELL_JACOBI_HPP
#define JFCELL_JACOBI_HPP

#include <jfcell/modular.hpp>

namespace jfcell {

// Integral Jacobi Form of index k/2: series with y-support in Z + k/2, graded
// by the subscript k >= 0 and the internal degree m (weight m/2 - k).
class JacobiForm {
  public:
    JacobiForm(QYSeries series, Int k, Int degree)
        : series_(std::move(series)), k_(k), degree_(degree)
    {
        if (k_ < 0)
            throw std::invalid_argument("JacobiForm: negative subscript");
        for (const auto& [e, p] : series_.terms())
            for (const auto& [d, c] : p.terms())
                if (((d % 2) + 2) % 2 != ((k_ % 2) + 2) % 2)
                    throw std::invalid_argument("JacobiForm: y-support parity violates Z + k/2");
    }

    const QYSeries& series() const { return series_; }
    Int k() const { return k_; }
    Int degree() const { return degree_; }
    Rat weight() const { return rat(degree_, 2) - rat(k_); }

    friend JacobiForm operator*(const JacobiForm& a, const JacobiForm& b)
    {
        return JacobiForm(a.series_ * b.series_, a.k_ + b.k_, a.degree_ + b.degree_);
    }

  private:
    QYSeries series_;
    Int k_;
    Int degree_;
};

inline JacobiForm jf_mul(const JacobiForm& a, const JacobiForm& b)
{
    return a * b;
}

namespace detail {

// prod_{m=1..T-1} (1 - q^m y)(1 - q^m y^{-1}) (1 - q^m)^{-2}, truncated at T.
// Support satisfies |r| <= sqrt(2e): every y-power at order e costs at least
// a fresh exponent m, the cheapest packing being 1 + 2 + ... .
inline QYSeries theta_tail(Int T)
{
    QYSeries s = QYSeries::one(rat(T));
    for (Int m = 1; m < T; ++m) {
        QYSeries f(rat(T));
        f.add_monomial(0, 0, CycScalar(rat(1)));
        f.add_monomial(m, 2, CycScalar(rat(-1)));
        f.add_monomial(m, -2, CycScalar(rat(-1)));
        if (2 * m < T)
            f.add_monomial(2 * m, 0, CycScalar(rat(1)));
        s = s * f;
        // (1 - q^m)^{-2} = sum (j+1) q^{mj}
        QYSeries g(rat(T));
        for (Int j = 0; m * j < T; ++j)
            g.add_monomial(m * j, 0, CycScalar(rat(j + 1)));
        s = s * g;
    }
    return s.truncated(rat(T));
}

} // namespace detail

// a = phi_{-1,1/2}: (y^(1/2) - y^(-1/2)) prod (1-q^m y)(1-q^m y^-1)(1-q^m)^-2.
// JF_1, degree 0. The theta expansion pins the support to r^2 <= 2e + 1/4, so
// the attached certificate uses sigma = 1/3 with r0 covering the parabola
// (max of sqrt(2e + 1/4) - e/3 is 37/24; 5/3 leaves margin).
inline JacobiForm gen_a(Int T)
{
    QYSeries pre(rat(T));
    pre.add_monomial(0, 1, CycScalar(rat(1)));
    pre.add_monomial(0, -1, CycScalar(rat(-1)));
    QYSeries s = pre * detail::theta_tail(T);
    s = s.truncated(rat(T));
    s.set_slope(SlopeCert{rat(1, 3), rat(5, 3)});
    return JacobiForm(std::move(s), 1, 0);
}

// b = phi_{0,1} = -(3/pi^2) wp theta_11^2 / eta^6, realized pi-free as
//   b = a^2 + 12 A^2 + 12 a^2 E,
// where A is the theta tail above and E = sum_{n>=1} q^n sum_{d|n} d (y^d - 2 + y^-d);
// the rational term y/(1-y)^2 of wp cancels against (y^(1/2)-y^(-1/2))^2 since
// a^2 y/(1-y)^2 = A^2. JF_2, degree 4. Weak index-1 support r^2 <= 4e + 1
// gives the certificate (1/3, 19/6).
inline JacobiForm gen_b(Int T)
{
    QYSeries A = detail::theta_tail(T);
    QYSeries pre(rat(T));
    pre.add_monomial(0, 1, CycScalar(rat(1)));
    pre.add_monomial(0, -1, CycScalar(rat(-1)));
    QYSeries a2 = (pre * A);
    a2 = (a2 * a2).truncated(rat(T));
    QYSeries E(rat(T));
    for (Int n = 1; n < T; ++n)
        for (Int d = 1; d <= n; ++d) {
            if (n % d != 0)
                continue;
            E.add_monomial(n, 2 * d, CycScalar(rat(d)));
            E.add_monomial(n, 0, CycScalar(rat(-2 * d)));
            E.add_monomial(n, -2 * d, CycScalar(rat(d)));
        }
    QYSeries twelve = QYSeries::constant(CycScalar(rat(12)), rat(T));
    QYSeries s = a2 + twelve * (A * A) + twelve * (a2 * E);
    s = s.truncated(rat(T));
    s.set_slope(SlopeCert{rat(1, 3), rat(19, 6)});
    return JacobiForm(std::move(s), 2, 4);
}

// y -> y^n on a Jacobi form: realizes z -> nz. k' = k n^2 and the degree moves
// to m + 2k(n^2 - 1), preserving the weight m/2 - k.
inline JacobiForm scale_z(const JacobiForm& phi, Int n)
{
    if (n < 1)
        throw std::invalid_argument("scale_z: n must be positive");
    QYSeries s = phi.series().y_scaled(n);
    return JacobiForm(std::move(s), phi.k() * n * n, phi.degree() + 2 * phi.k() * (n * n - 1));
}

// c = phi_{0,3/2} = theta_11(2z)/theta_11(z) = a(2z)/a(z), by exact division.
// JF_3, degree 6. Duplication rewrites c as 2 theta_10 theta_00 theta_01 (z)
// over its z = 0 value; packing the cheapest y-gains of those products bounds
// the support by |r| <= sqrt(24e + 1)/2, giving the certificate (1/3, 14/3).
inline JacobiForm gen_c(Int T)
{
    JacobiForm a = gen_a(T);
    JacobiForm a2z = scale_z(a, 2);
    QYSeries s = QYSeries::div_exact(a2z.series(), a.series());
    s.set_slope(SlopeCert{rat(1, 3), rat(14, 3)});
    return JacobiForm(std::move(s), 3, 6);
}

enum class JFName { a, b, c };

inline JacobiForm jf_generator(JFName name, Int T)
{
    switch (name) {
    case JFName::a:
        return gen_a(T);
    case JFName::b:
        return gen_b(T);
    case JFName::c:
        return gen_c(T);
    }
    throw std::logic_error("jf_generator: bad name");
}

// z = 0 restriction: termwise y -> 1; lands in MF of degree m - 2k.
inline ModularForm restrict_z0(const JacobiForm& phi)
{
    QYSeries s = phi.series().substitute_y(0, 0, 1);
    return ModularForm(std::move(s), phi.degree() - 2 * phi.k());
}

} // namespace jfcell

#endif
