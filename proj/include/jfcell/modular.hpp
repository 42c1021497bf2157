#ifndef JFCELL_MODULAR_HPP
#define JFCELL_MODULAR_HPP

#include <jfcell/qyseries.hpp>

#include <vector>

namespace jfcell {

struct InsufficientTruncation : std::runtime_error {
    InsufficientTruncation()
        : std::runtime_error("membership system underdetermined at this truncation")
    {
    }
};

// Weakly holomorphic integral modular form: trivial-y series with q-denominator
// 1, graded by even degree m (weight m/2).
class ModularForm {
  public:
    ModularForm(QYSeries series, Int degree) : series_(std::move(series)), degree_(degree)
    {
        if (series_.has_y_dependence())
            throw std::invalid_argument("ModularForm: series has y-dependence");
        if (series_.q_denominator() != 1)
            throw std::invalid_argument("ModularForm: fractional q-exponents");
    }

    const QYSeries& series() const { return series_; }
    Int degree() const { return degree_; }
    Rat weight() const { return rat(degree_, 2); }

    friend ModularForm operator*(const ModularForm& a, const ModularForm& b)
    {
        return ModularForm(a.series_ * b.series_, a.degree_ + b.degree_);
    }
    friend ModularForm operator+(const ModularForm& a, const ModularForm& b)
    {
        if (a.degree_ != b.degree_)
            throw std::invalid_argument("ModularForm: degree mismatch in sum");
        return ModularForm(a.series_ + b.series_, a.degree_);
    }

    ModularForm scaled(const Rat& c) const
    {
        return ModularForm(series_.scaled(CycScalar(c)), degree_);
    }

  private:
    QYSeries series_;
    Int degree_;
};

namespace detail {

inline mpz_class sigma_power(Int n, int k)
{
    mpz_class total = 0;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        mpz_class dd(static_cast<long>(d)), ee(static_cast<long>(n / d));
        mpz_class dp, ep;
        mpz_pow_ui(dp.get_mpz_t(), dd.get_mpz_t(), k);
        total += dp;
        if (d != n / d) {
            mpz_pow_ui(ep.get_mpz_t(), ee.get_mpz_t(), k);
            total += ep;
        }
    }
    return total;
}

inline QYSeries eisenstein(Int T, int k, Int scale)
{
    QYSeries s(rat(T));
    s.add_monomial(0, 0, CycScalar(rat(1)));
    for (Int n = 1; n < T; ++n) {
        mpz_class c = sigma_power(n, k) * static_cast<long>(scale);
        s.add_monomial(n, 0, CycScalar(Rat(c)));
    }
    s.set_slope(SlopeCert{rat(0), rat(0)});
    return s;
}

} // namespace detail

// c4 = 1 + 240 sum sigma_3(n) q^n, degree 8
inline ModularForm mf_c4(Int T)
{
    return ModularForm(detail::eisenstein(T, 3, 240), 8);
}

// c6 = 1 - 504 sum sigma_5(n) q^n, degree 12
inline ModularForm mf_c6(Int T)
{
    return ModularForm(detail::eisenstein(T, 5, -504), 12);
}

// Delta = q prod (1-q^m)^24, degree 24
inline ModularForm mf_delta(Int T)
{
    QYSeries s = QYSeries::one(rat(T - 1));
    for (Int m = 1; m < T; ++m) {
        QYSeries f(rat(T - 1));
        f.add_monomial(0, 0, CycScalar(rat(1)));
        if (m < T - 1)
            f.add_monomial(m, 0, CycScalar(rat(-1)));
        for (int rep = 0; rep < 24; ++rep)
            s = s * f;
    }
    s = s.q_shifted(1, 1);
    s.set_slope(SlopeCert{rat(0), rat(0)});
    return ModularForm(s.truncated(rat(T)), 24);
}

inline ModularForm mf_delta_inverse(Int T)
{
    // Delta has valuation 1; pad the inputs so the quotient certifies T.
    ModularForm delta = mf_delta(T + 2);
    QYSeries one = QYSeries::one(rat(T + 1));
    QYSeries inv = QYSeries::div_exact(one, delta.series());
    inv.set_slope(SlopeCert{rat(0), rat(0)});
    return ModularForm(inv.truncated(rat(T)), -24);
}

enum class MFName { c4, c6, delta, delta_inverse };

inline ModularForm mf_generator(MFName name, Int T)
{
    switch (name) {
    case MFName::c4:
        return mf_c4(T);
    case MFName::c6:
        return mf_c6(T);
    case MFName::delta:
        return mf_delta(T);
    case MFName::delta_inverse:
        return mf_delta_inverse(T);
    }
    throw std::logic_error("mf_generator: bad name");
}

// c4^i c6^j Delta^l, degree 8i + 12j + 24l
inline ModularForm mf_monomial(Int i, Int j, Int l, Int T)
{
    // generous input truncation: negative Delta powers shift valuations down
    Int pad = (l < 0 ? -l : 0) + 1;
    ModularForm r(QYSeries::one(rat(T + pad)), 0);
    if (i > 0) {
        ModularForm f = mf_c4(T + pad);
        for (Int t = 0; t < i; ++t)
            r = r * f;
    }
    if (j > 0) {
        ModularForm f = mf_c6(T + pad);
        for (Int t = 0; t < j; ++t)
            r = r * f;
    }
    if (l > 0) {
        ModularForm f = mf_delta(T + pad);
        for (Int t = 0; t < l; ++t)
            r = r * f;
    }
    if (l < 0) {
        ModularForm f = mf_delta_inverse(T + pad);
        for (Int t = 0; t < -l; ++t)
            r = r * f;
    }
    QYSeries s = r.series().truncated(std::min(rat(T), r.series().truncation()));
    s.set_slope(SlopeCert{rat(0), rat(0)});
    return ModularForm(s, 8 * i + 12 * j + 24 * l);
}

struct MonomialKey {
    Int i, j, l;
    friend bool operator<(const MonomialKey& a, const MonomialKey& b)
    {
        return std::tie(a.l, a.j, a.i) < std::tie(b.l, b.j, b.i);
    }
    friend bool operator==(const MonomialKey& a, const MonomialKey& b)
    {
        return a.i == b.i && a.j == b.j && a.l == b.l;
    }
};

struct MembershipResult {
    bool in_span = false;
    std::vector<std::pair<MonomialKey, Rat>> coordinates; // nonzero entries
    bool integral = false;                                // all coordinates integers
    std::optional<Rat> residual_exponent;                 // first failing row
    std::optional<Rat> residual_value;
};

// Monomials c4^i c6^j Delta^l of the given degree with j in {0,1} (using the
// relation c6^2 = c4^3 - 1728 Delta) and q-valuation l >= -pole_bound.
inline std::vector<MonomialKey> mf_spanning_monomials(Int degree, Int pole_bound)
{
    std::vector<MonomialKey> keys;
    for (Int j = 0; j <= 1; ++j) {
        for (Int l = -pole_bound;; ++l) {
            Int rem = degree - 12 * j - 24 * l;
            if (rem < 0)
                break;
            if (rem % 8 != 0)
                continue;
            keys.push_back(MonomialKey{rem / 8, j, l});
        }
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

// Exact coordinates of f in the spanning set, certified up to f's truncation.
inline MembershipResult mf_membership(const QYSeries& f, Int degree, Int pole_bound)
{
    if (f.has_y_dependence())
        throw std::invalid_argument("mf_membership: series has y-dependence");
    if (f.q_denominator() != 1)
        throw std::invalid_argument("mf_membership: fractional q-exponents");
    if (degree % 2 != 0)
        throw std::invalid_argument("mf_membership: degree must be even");

    const auto keys = mf_spanning_monomials(degree, pole_bound);
    const Rat& T = f.truncation();
    mpz_class top_z = rat_floor(T);
    Int top = static_cast<Int>(top_z.get_si());
    if (rat(top) < T)
        ++top; // exclusive upper bound on integer rows

    std::vector<QYSeries> basis;
    basis.reserve(keys.size());
    for (const auto& k : keys)
        basis.push_back(mf_monomial(k.i, k.j, k.l, top).series());

    // rows must also cover any pole of f below the allowed bound
    Int lo = -pole_bound;
    if (!f.is_zero()) {
        mpz_class v = rat_floor(f.valuation());
        lo = std::min(lo, static_cast<Int>(v.get_si()));
    }
    const std::size_t rows = static_cast<std::size_t>(top > lo ? top - lo : 0);
    const std::size_t cols = keys.size();

    // dense exact system [basis | f]
    std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(cols + 1, Rat(0)));
    for (std::size_t r = 0; r < rows; ++r) {
        Int e = lo + static_cast<Int>(r);
        for (std::size_t c = 0; c < cols; ++c)
            m[r][c] = basis[c].coefficient(rat(e), rat(0)).rational_value();
        CycScalar fc = f.coefficient(rat(e), rat(0));
        if (!fc.is_rational())
            throw std::invalid_argument("mf_membership: non-rational coefficient");
        m[r][cols] = fc.rational_value();
    }

    // Gaussian elimination with column pivots
    std::vector<std::size_t> pivot_row(cols, SIZE_MAX);
    std::size_t next_row = 0;
    for (std::size_t c = 0; c < cols && next_row < rows; ++c) {
        std::size_t p = SIZE_MAX;
        for (std::size_t r = next_row; r < rows; ++r)
            if (m[r][c] != 0) {
                p = r;
                break;
            }
        if (p == SIZE_MAX)
            continue;
        std::swap(m[p], m[next_row]);
        Rat inv = Rat(1) / m[next_row][c];
        for (std::size_t cc = c; cc <= cols; ++cc)
            m[next_row][cc] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == next_row || m[r][c] == 0)
                continue;
            Rat factor = m[r][c];
            for (std::size_t cc = c; cc <= cols; ++cc)
                m[r][cc] -= factor * m[next_row][cc];
        }
        pivot_row[c] = next_row;
        ++next_row;
    }

    for (std::size_t c = 0; c < cols; ++c)
        if (pivot_row[c] == SIZE_MAX)
            throw InsufficientTruncation();

    // candidate solution from the pivots, then a direct check of every row
    // against the original data; the first mismatch is the residual
    MembershipResult res;
    std::vector<Rat> x(cols, Rat(0));
    for (std::size_t c = 0; c < cols; ++c)
        x[c] = m[pivot_row[c]][cols];
    res.in_span = true;
    for (Int e = lo; e < top; ++e) {
        Rat acc(0);
        for (std::size_t c = 0; c < cols; ++c) {
            if (x[c] == 0)
                continue;
            acc += x[c] * basis[c].coefficient(rat(e), rat(0)).rational_value();
        }
        Rat fe = f.coefficient(rat(e), rat(0)).rational_value();
        if (acc != fe) {
            res.in_span = false;
            res.residual_exponent = rat(e);
            res.residual_value = fe - acc;
            break;
        }
    }
    if (res.in_span) {
        for (std::size_t c = 0; c < cols; ++c)
            if (x[c] != 0)
                res.coordinates.emplace_back(keys[c], x[c]);
        res.integral = true;
        for (const auto& [k, v] : res.coordinates)
            if (!rat_is_integer(v)) {
                res.integral = false;
                break;
            }
    }
    return res;
}

} // namespace jfcell

#endif
