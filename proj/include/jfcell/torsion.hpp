#ifndef JFCELL_TORSION_HPP
#define JFCELL_TORSION_HPP

#include <jfcell/jacobi.hpp>

#include <map>

namespace jfcell {

struct TwistNotTrivialized : std::runtime_error {
    TwistNotTrivialized(Int k, Int n)
        : std::runtime_error("normalized torsion restriction needs k = n^2 (k = " +
                             std::to_string(k) + ", n = " + std::to_string(n) + ")")
    {
    }
};

struct FractionalResidue : std::runtime_error {
    explicit FractionalResidue(const std::string& what) : std::runtime_error(what) {}
};

// The (Z/n)^2-indexed family of trivial-y series obtained by evaluating a
// Jacobi form at the n-torsion points z = (alpha tau + beta)/n.
class TorsionRestriction {
  public:
    TorsionRestriction(Int n, Int degree, bool normalized)
        : n_(n), degree_(degree), normalized_(normalized)
    {
    }

    Int n() const { return n_; }
    Int degree() const { return degree_; }
    bool normalized() const { return normalized_; }

    const QYSeries& component(Int alpha, Int beta) const
    {
        return components_.at({alpha, beta});
    }
    const std::map<std::pair<Int, Int>, QYSeries>& components() const { return components_; }

    void set_component(Int alpha, Int beta, QYSeries s)
    {
        components_[{alpha, beta}] = std::move(s);
    }

    bool all_zero() const
    {
        for (const auto& [k, s] : components_)
            if (!s.is_zero())
                return false;
        return true;
    }

    bool components_integral() const
    {
        for (const auto& [k, s] : components_)
            if (!s.is_integral())
                return false;
        return true;
    }

  private:
    Int n_;
    Int degree_;
    bool normalized_;
    std::map<std::pair<Int, Int>, QYSeries> components_;
};

// Evaluation at the n-torsion points. In normalized mode (the untwisted
// restriction) k = n^2 is required; each component is the slash-translated
// value
//
//   N(alpha, beta) = q^(alpha^2/2) * (-1)^(alpha beta) * phi|_{y^(1/2) = zeta_{2n}^beta q^(alpha/(2n))},
//
// i.e. (phi |_{k/2} t_{(alpha/n, beta/n)})(tau, 0) with the full translation
// factor e^{2 pi i (k/2)(lambda^2 tau + 2 lambda z + lambda mu)} of the
// elliptic transformation law. The q-power makes the component independent of
// the representative alpha mod n; the cross term (-1)^(alpha beta) is what
// lets the fiberwise sum collapse onto the integer q-grid. alpha is
// re-centered to the minimal-absolute representative for truncation
// soundness. Raw mode evaluates at the given representatives with no factors.
//
// For odd n the half-integral index leaves a residual sign: shifting beta by
// n flips every odd y-power (theta_11 is antiperiodic), and the cross term is
// itself representative-dependent. Components are therefore reported exactly
// at the stated representatives.
inline TorsionRestriction torsion_restrict(const JacobiForm& phi, Int n, bool raw = false)
{
    if (n < 1)
        throw std::invalid_argument("torsion_restrict: n must be positive");
    if (!raw && phi.k() != n * n)
        throw TwistNotTrivialized(phi.k(), n);
    TorsionRestriction out(n, phi.degree() - 2 * phi.k(), !raw);
    const bool even_k = phi.k() % 2 == 0;
    for (Int alpha = 0; alpha < n; ++alpha) {
        for (Int beta = 0; beta < n; ++beta) {
            Int a = alpha;
            if (!raw && 2 * a > n)
                a = alpha - n; // minimal absolute representative in (-n/2, n/2]
            QYSeries comp = phi.series().substitute_y(beta, a, n);
            if (!raw && a != 0) {
                comp = comp.q_shifted(a * a, 2);
                if ((a * beta) % 2 != 0)
                    comp = comp.scaled(CycScalar(rat(-1)));
            }
            if (!comp.try_downgrade_order(1) && even_k)
                comp.try_downgrade_order(static_cast<int>(n));
            if (alpha == 0 && beta == 0 && comp.q_denominator() != 1)
                throw std::logic_error("torsion_restrict: (0,0) component not integral in q");
            out.set_component(alpha, beta, std::move(comp));
        }
    }
    return out;
}

struct TorsionSumReport {
    QYSeries sum;
    Int degree = 0;
    MembershipResult membership;
    bool components_integral = false;
    bool sum_integral = false;
};

// Fiberwise sum over all n^2 torsion components, landing in MF. Fractional
// q-exponents must cancel across components; a survivor is surfaced as
// FractionalResidue, never dropped.
inline TorsionSumReport torsion_sum(const TorsionRestriction& R, Int pole_bound)
{
    if (!R.normalized())
        throw std::invalid_argument("torsion_sum: restriction must be normalized");
    QYSeries sum(Rat(0));
    bool first = true;
    for (const auto& [key, s] : R.components()) {
        if (first) {
            sum = s;
            first = false;
        } else {
            sum = sum + s;
        }
    }
    if (sum.q_denominator() != 1)
        throw FractionalResidue("fractional q-exponents survive the fiberwise sum (D = " +
                                std::to_string(sum.q_denominator()) + ")");
    if (!sum.try_downgrade_order(1))
        throw FractionalResidue("irrational coefficients survive the fiberwise sum");

    TorsionSumReport rep;
    rep.sum = sum;
    rep.degree = R.degree();
    rep.components_integral = R.components_integral();
    rep.sum_integral = sum.is_integral();
    rep.membership = mf_membership(sum, R.degree(), pole_bound);
    return rep;
}

} // namespace jfcell

#endif
