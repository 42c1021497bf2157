#ifndef JFCELL_CYCLOTOMIC_HPP
#define JFCELL_CYCLOTOMIC_HPP

#include <jfcell/rational.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <vector>

namespace jfcell {

namespace detail {

inline int euler_phi(int n)
{
    int result = n, m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0)
                m /= p;
            result -= result / p;
        }
    }
    if (m > 1)
        result -= result / m;
    return result;
}

// Exact division of integer polynomials by a monic-leading divisor; the
// remainder is known to vanish. Coefficients ascending.
inline std::vector<mpz_class> zpoly_divexact(std::vector<mpz_class> rem,
                                             const std::vector<mpz_class>& den)
{
    const std::size_t dn = den.size() - 1;
    std::vector<mpz_class> quot(rem.size() - dn, 0);
    for (std::size_t top = rem.size() - 1; top >= dn; --top) {
        mpz_class c = rem[top] / den[dn];
        quot[top - dn] = c;
        for (std::size_t j = 0; j <= dn; ++j)
            rem[top - dn + j] -= c * den[j];
        if (top == dn)
            break;
    }
    return quot;
}

} // namespace detail

// N-th cyclotomic polynomial, monic, coefficients ascending. Cached.
inline const std::vector<mpz_class>& cyclotomic_polynomial(int n)
{
    static std::map<int, std::vector<mpz_class>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;
    // Phi_m = (x^m - 1) / prod_{d|m, d<m} Phi_d, filled in ascending order of
    // the divisors of n so every lookup below is a hit.
    for (int m = 1; m <= n; ++m) {
        if (n % m != 0 || cache.count(m))
            continue;
        std::vector<mpz_class> p(m + 1, 0);
        p[0] = -1;
        p[m] = 1;
        for (int d = 1; d < m; ++d)
            if (m % d == 0)
                p = detail::zpoly_divexact(std::move(p), cache.at(d));
        cache.emplace(m, std::move(p));
    }
    return cache.at(n);
}

// An element of the N-th cyclotomic field Q(zeta_N), stored as the canonical
// residue modulo Phi_N in the power basis 1, zeta, ..., zeta^(phi(N)-1).
// N = 1 degenerates to plain rationals. All arithmetic is exact.
class CycScalar {
  public:
    CycScalar() : order_(1), rep_(1, Rat(0)) {}

    explicit CycScalar(const Rat& r) : order_(1), rep_(1, r) {}
    explicit CycScalar(Int n) : order_(1), rep_(1, rat(n)) {}

    // Reduce an arbitrary polynomial in zeta_N (coefficients ascending).
    static CycScalar from_poly(int order, std::vector<Rat> raw)
    {
        CycScalar c;
        c.order_ = order;
        c.rep_ = reduce(order, std::move(raw));
        return c;
    }

    // zeta_order^exp
    static CycScalar root_of_unity(int order, Int exp)
    {
        exp %= order;
        if (exp < 0)
            exp += order;
        std::vector<Rat> raw(static_cast<std::size_t>(exp) + 1, Rat(0));
        raw.back() = Rat(1);
        return from_poly(order, std::move(raw));
    }

    int order() const { return order_; }
    const std::vector<Rat>& rep() const { return rep_; }

    bool is_zero() const
    {
        for (const auto& c : rep_)
            if (c != 0)
                return false;
        return true;
    }

    bool is_rational() const
    {
        for (std::size_t i = 1; i < rep_.size(); ++i)
            if (rep_[i] != 0)
                return false;
        return true;
    }

    Rat rational_value() const
    {
        if (!is_rational())
            throw std::logic_error("CycScalar: not rational");
        return rep_[0];
    }

    // Integer coordinates in the power basis, which is an integral basis of
    // the cyclotomic field.
    bool is_integral() const
    {
        for (const auto& c : rep_)
            if (!rat_is_integer(c))
                return false;
        return true;
    }

    CycScalar embedded(int target_order) const
    {
        if (target_order == order_)
            return *this;
        if (target_order % order_ != 0)
            throw std::invalid_argument("CycScalar::embedded: order does not divide target");
        const int step = target_order / order_;
        std::vector<Rat> raw(static_cast<std::size_t>(rep_.size() - 1) * step + 1, Rat(0));
        for (std::size_t i = 0; i < rep_.size(); ++i)
            raw[i * step] = rep_[i];
        return from_poly(target_order, std::move(raw));
    }

    // The reduced representation is supported on powers of zeta_N^(N/M), so
    // the element visibly lies in Q(zeta_M). Sufficient, not complete.
    bool supported_on_suborder(int suborder) const
    {
        if (order_ % suborder != 0)
            return false;
        const std::size_t step = static_cast<std::size_t>(order_ / suborder);
        for (std::size_t i = 0; i < rep_.size(); ++i)
            if (rep_[i] != 0 && i % step != 0)
                return false;
        return true;
    }

    CycScalar restricted_to_suborder(int suborder) const
    {
        if (!supported_on_suborder(suborder))
            throw std::logic_error("CycScalar: not supported on suborder");
        const std::size_t step = static_cast<std::size_t>(order_ / suborder);
        std::vector<Rat> raw;
        for (std::size_t i = 0; i < rep_.size(); i += step)
            raw.push_back(rep_[i]);
        return from_poly(suborder, std::move(raw));
    }

    friend CycScalar operator+(const CycScalar& a, const CycScalar& b)
    {
        auto [x, y] = aligned(a, b);
        for (std::size_t i = 0; i < y.rep_.size(); ++i)
            x.rep_[i] += y.rep_[i];
        return x;
    }

    friend CycScalar operator-(const CycScalar& a, const CycScalar& b)
    {
        auto [x, y] = aligned(a, b);
        for (std::size_t i = 0; i < y.rep_.size(); ++i)
            x.rep_[i] -= y.rep_[i];
        return x;
    }

    CycScalar operator-() const
    {
        CycScalar c = *this;
        for (auto& v : c.rep_)
            v = -v;
        return c;
    }

    friend CycScalar operator*(const CycScalar& a, const CycScalar& b)
    {
        auto [x, y] = aligned(a, b);
        std::vector<Rat> prod(x.rep_.size() + y.rep_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < x.rep_.size(); ++i) {
            if (x.rep_[i] == 0)
                continue;
            for (std::size_t j = 0; j < y.rep_.size(); ++j) {
                if (y.rep_[j] == 0)
                    continue;
                Rat t = x.rep_[i] * y.rep_[j];
                prod[i + j] += t;
            }
        }
        CycScalar c;
        c.order_ = x.order_;
        c.rep_ = reduce(x.order_, std::move(prod));
        return c;
    }

    friend CycScalar operator*(const Rat& s, const CycScalar& a)
    {
        CycScalar c = a;
        for (auto& v : c.rep_)
            v *= s;
        return c;
    }

    CycScalar& operator+=(const CycScalar& b) { return *this = *this + b; }
    CycScalar& operator-=(const CycScalar& b) { return *this = *this - b; }
    CycScalar& operator*=(const CycScalar& b) { return *this = *this * b; }

    // Field inverse via the extended Euclidean algorithm against Phi_N.
    CycScalar inverse() const
    {
        if (is_zero())
            throw std::domain_error("CycScalar::inverse: zero");
        if (is_rational()) {
            CycScalar c;
            c.order_ = order_;
            c.rep_.assign(rep_.size(), Rat(0));
            c.rep_[0] = Rat(1) / rep_[0];
            return c;
        }
        using Poly = std::vector<Rat>;
        const auto& phiz = cyclotomic_polynomial(order_);
        Poly r0(phiz.size());
        for (std::size_t i = 0; i < phiz.size(); ++i)
            r0[i] = Rat(phiz[i]);
        Poly r1 = rep_;
        trim(r1);
        Poly s0 = {Rat(0)}, s1 = {Rat(1)}; // Bezout coefficients of *this
        while (true) {
            if (r1.size() == 1) {
                if (r1[0] == 0)
                    throw std::logic_error("CycScalar::inverse: gcd degenerate");
                Poly inv = s1;
                for (auto& c : inv)
                    c /= r1[0];
                return from_poly(order_, std::move(inv));
            }
            auto [q, r] = poly_divmod(r0, r1);
            Poly snew = s0;
            snew.resize(std::max(snew.size(), q.size() + s1.size() - 1), Rat(0));
            for (std::size_t i = 0; i < q.size(); ++i) {
                if (q[i] == 0)
                    continue;
                for (std::size_t j = 0; j < s1.size(); ++j)
                    snew[i + j] -= q[i] * s1[j];
            }
            r0 = std::move(r1);
            r1 = std::move(r);
            trim(r1);
            s0 = std::move(s1);
            s1 = std::move(snew);
        }
    }

    friend CycScalar operator/(const CycScalar& a, const CycScalar& b) { return a * b.inverse(); }

    friend bool operator==(const CycScalar& a, const CycScalar& b)
    {
        auto [x, y] = aligned(a, b);
        return x.rep_ == y.rep_;
    }
    friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

    friend bool operator<(const CycScalar& a, const CycScalar& b)
    {
        auto [x, y] = aligned(a, b);
        return x.rep_ < y.rep_;
    }

    std::complex<double> to_complex() const
    {
        const double two_pi = 6.283185307179586476925286766559;
        std::complex<double> z(0.0, 0.0);
        for (std::size_t i = 0; i < rep_.size(); ++i) {
            if (rep_[i] == 0)
                continue;
            double arg = two_pi * static_cast<double>(i) / order_;
            z += rep_[i].get_d() * std::complex<double>(std::cos(arg), std::sin(arg));
        }
        return z;
    }

  private:
    int order_;
    std::vector<Rat> rep_; // length phi(order_)

    static void trim(std::vector<Rat>& p)
    {
        while (p.size() > 1 && p.back() == 0)
            p.pop_back();
    }

    static std::pair<std::vector<Rat>, std::vector<Rat>> poly_divmod(std::vector<Rat> r,
                                                                     const std::vector<Rat>& d)
    {
        trim(r);
        const std::size_t dd = d.size() - 1;
        if (r.size() <= dd)
            return {{Rat(0)}, std::move(r)};
        std::vector<Rat> q(r.size() - dd, Rat(0));
        for (std::size_t top = r.size() - 1; top >= dd; --top) {
            Rat c = r[top] / d[dd];
            if (c != 0) {
                q[top - dd] = c;
                for (std::size_t j = 0; j <= dd; ++j)
                    r[top - dd + j] -= c * d[j];
            }
            if (top == dd)
                break;
        }
        trim(r);
        return {std::move(q), std::move(r)};
    }

    static std::vector<Rat> reduce(int order, std::vector<Rat> raw)
    {
        const auto& phi = cyclotomic_polynomial(order);
        const std::size_t deg = phi.size() - 1;
        if (raw.size() > deg) {
            for (std::size_t top = raw.size() - 1; top >= deg; --top) {
                Rat c = raw[top];
                if (c != 0) {
                    raw[top] = 0;
                    for (std::size_t j = 0; j < deg; ++j)
                        raw[top - deg + j] -= c * Rat(phi[j]);
                }
                if (top == deg)
                    break;
            }
        }
        raw.resize(deg, Rat(0));
        for (auto& c : raw)
            c.canonicalize();
        return raw;
    }

    static std::pair<CycScalar, CycScalar> aligned(const CycScalar& a, const CycScalar& b)
    {
        if (a.order_ == b.order_)
            return {a, b};
        int l = static_cast<int>(lcm_ll(a.order_, b.order_));
        return {a.embedded(l), b.embedded(l)};
    }
};

} // namespace jfcell

#endif
