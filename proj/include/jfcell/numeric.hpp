#ifndef JFCELL_NUMERIC_HPP
#define JFCELL_NUMERIC_HPP

#include <jfcell/jacobi.hpp>

#include <array>
#include <cmath>
#include <complex>

namespace jfcell {

struct TailBoundViolated : std::runtime_error {
    explicit TailBoundViolated(double estimate, double tol)
        : std::runtime_error("truncation tail estimate " + std::to_string(estimate) +
                             " exceeds tolerance " + std::to_string(tol))
    {
    }
};

namespace detail {

inline std::complex<double> cexp2pi(std::complex<double> w)
{
    const double two_pi = 6.283185307179586476925286766559;
    return std::exp(std::complex<double>(0.0, two_pi) * w);
}

} // namespace detail

// Floating-point evaluation of the truncated series at (tau, z), plus a
// geometric tail estimate: per-q-order magnitude sums are extrapolated by the
// worst consecutive growth ratio over the top quarter of the window.
inline std::complex<double> eval_series(const QYSeries& f, std::complex<double> tau,
                                        std::complex<double> z, double* tail_estimate)
{
    std::complex<double> total(0.0, 0.0);
    std::map<Int, double> magnitude;
    for (const auto& [e, p] : f.terms()) {
        std::complex<double> qpow =
            detail::cexp2pi(tau * (static_cast<double>(e) / static_cast<double>(f.q_denominator())));
        for (const auto& [d, c] : p.terms()) {
            std::complex<double> ypow = detail::cexp2pi(z * (static_cast<double>(d) / 2.0));
            std::complex<double> term = c.to_complex() * qpow * ypow;
            total += term;
            magnitude[e] += std::abs(term);
        }
    }
    if (tail_estimate) {
        *tail_estimate = 0.0;
        std::vector<std::pair<double, double>> mags; // (order, magnitude > 0)
        for (const auto& [e, m] : magnitude)
            if (m > 0.0)
                mags.emplace_back(static_cast<double>(e) / static_cast<double>(f.q_denominator()),
                                  m);
        if (mags.size() >= 3) {
            // envelope growth ratio measured from the start of the top
            // quarter; single-order jumps (new extreme y-exponents entering)
            // average out over the window
            std::size_t start = mags.size() - std::max<std::size_t>(3, mags.size() / 4);
            double ratio = 0.0;
            for (std::size_t i = start + 1; i < mags.size(); ++i) {
                double span = mags[i].first - mags[start].first;
                ratio = std::max(ratio, std::pow(mags[i].second / mags[start].second, 1.0 / span));
            }
            if (ratio >= 1.0)
                *tail_estimate = HUGE_VAL;
            else
                *tail_estimate = mags.back().second * ratio / (1.0 - ratio);
        } else if (!mags.empty()) {
            *tail_estimate = mags.back().second;
        }
    }
    return total;
}

struct CovarianceReport {
    bool pass = false;
    double residual = 0.0;
    double tail_estimate = 0.0;
};

// Checks the transformation laws numerically: first the modular law for
// gamma = (a,b;c,d) in SL(2,Z) with weight w = m/2 - k and index k/2,
//   phi((a tau + b)/(c tau + d), z/(c tau + d)) = (c tau + d)^w e^{pi i k c z^2/(c tau + d)} phi(tau, z),
// then the lattice shift z -> z + lambda tau + mu with the factor
//   (-1)^{k (lambda + mu)} e^{-pi i k (lambda^2 tau + 2 lambda z)}.
// The sign is the half-integral-index multiplier (theta_11 is antiperiodic);
// it is invisible for even k.
inline CovarianceReport numeric_covariance_check(const JacobiForm& phi,
                                                 std::array<Int, 4> gamma,
                                                 std::pair<Int, Int> lambda_mu,
                                                 std::complex<double> tau,
                                                 std::complex<double> z, double tol)
{
    const Int a = gamma[0], b = gamma[1], c = gamma[2], d = gamma[3];
    if (a * d - b * c != 1)
        throw std::invalid_argument("numeric_covariance_check: gamma not in SL(2,Z)");
    const Int lambda = lambda_mu.first, mu = lambda_mu.second;
    const double pi = 3.14159265358979323846264338328;

    // weight is integral for everything generated from a, b, c
    Rat w_rat = phi.weight();
    if (!rat_is_integer(w_rat))
        throw std::invalid_argument("numeric_covariance_check: non-integral weight");
    const double w = w_rat.get_d();
    const double k = static_cast<double>(phi.k());

    std::complex<double> denom = static_cast<double>(c) * tau + static_cast<double>(d);
    std::complex<double> tau1 = (static_cast<double>(a) * tau + static_cast<double>(b)) / denom;
    std::complex<double> z1 = z / denom;
    std::complex<double> z2 =
        z1 + static_cast<double>(lambda) * tau1 + static_cast<double>(mu);

    double tail_rhs = 0.0, tail_lhs = 0.0;
    std::complex<double> base = eval_series(phi.series(), tau, z, &tail_rhs);
    std::complex<double> moved = eval_series(phi.series(), tau1, z2, &tail_lhs);

    std::complex<double> factor = std::pow(denom, w) *
        std::exp(std::complex<double>(0.0, pi) * k * static_cast<double>(c) * z * z / denom);
    std::complex<double> shift_factor =
        std::exp(std::complex<double>(0.0, -pi) * k *
                 (static_cast<double>(lambda * lambda) * tau1 + 2.0 * static_cast<double>(lambda) * z1));
    double sign = (phi.k() % 2 != 0 && (lambda + mu) % 2 != 0) ? -1.0 : 1.0;

    CovarianceReport rep;
    rep.tail_estimate = std::max(tail_lhs, tail_rhs);
    if (!(rep.tail_estimate < tol))
        throw TailBoundViolated(rep.tail_estimate, tol);
    std::complex<double> rhs = sign * shift_factor * factor * base;
    rep.residual = std::abs(moved - rhs);
    rep.pass = rep.residual <= tol;
    return rep;
}

} // namespace jfcell

#endif
