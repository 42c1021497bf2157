#ifndef JFCELL_QYSERIES_HPP
#define JFCELL_QYSERIES_HPP

#include <jfcell/ylaurent.hpp>

#include <optional>
#include <stdexcept>

namespace jfcell {

struct NotDivisible : std::runtime_error {
    Rat at;
    explicit NotDivisible(Rat where)
        : std::runtime_error("series not exactly divisible at q-exponent " + rat_str(where)),
          at(std::move(where))
    {
    }
};

struct BeyondTruncation : std::runtime_error {
    BeyondTruncation() : std::runtime_error("coefficient requested beyond certified truncation") {}
};

struct NoSlopeCertificate : std::runtime_error {
    explicit NoSlopeCertificate(const std::string& why)
        : std::runtime_error("no usable slope certificate: " + why)
    {
    }
};

// Support-slope certificate: every stored or future term satisfies
// |y-exponent| <= sigma * q-exponent + r0.
struct SlopeCert {
    Rat sigma;
    Rat r0;
};

// Truncated Laurent series in q^(1/D) with YLaurent coefficients over a fixed
// cyclotomic order. Coefficients are certified complete for q-exponents
// strictly below the truncation bound. Values are immutable in practice: all
// operations return fresh series.
class QYSeries {
  public:
    explicit QYSeries(Rat truncation = Rat(0), int cyc_order = 1, Int qden = 1)
        : cyc_order_(cyc_order), qden_(qden), trunc_(std::move(truncation))
    {
    }

    static QYSeries zero(Rat truncation) { return QYSeries(std::move(truncation)); }

    static QYSeries constant(const CycScalar& c, Rat truncation)
    {
        QYSeries s(std::move(truncation), c.order());
        if (s.trunc_ > 0)
            s.set_term(0, YLaurent::constant(c));
        s.slope_ = SlopeCert{Rat(0), Rat(0)};
        return s;
    }

    static QYSeries one(Rat truncation) { return constant(CycScalar(Rat(1)), std::move(truncation)); }

    int cyclotomic_order() const { return cyc_order_; }
    Int q_denominator() const { return qden_; }
    const Rat& truncation() const { return trunc_; }
    const std::optional<SlopeCert>& slope() const { return slope_; }
    const std::map<Int, YLaurent>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    bool has_y_dependence() const
    {
        for (const auto& [e, p] : terms_)
            for (const auto& [d, c] : p.terms())
                if (d != 0)
                    return true;
        return false;
    }

    Rat q_exponent(Int numerator) const { return rat(numerator, qden_); }

    // Lowest certified q-exponent with a nonzero coefficient; T when empty.
    Rat valuation() const
    {
        if (terms_.empty())
            return trunc_;
        return rat(terms_.begin()->first, qden_);
    }

    void set_slope(std::optional<SlopeCert> s) { slope_ = std::move(s); }

    void set_term(Int numerator, YLaurent coeff)
    {
        if (coeff.is_zero()) {
            terms_.erase(numerator);
            return;
        }
        terms_[numerator] = std::move(coeff);
    }

    // Adds c * q^(num/qden_) * y^(doubled/2).
    void add_monomial(Int numerator, Int doubled_y, const CycScalar& c)
    {
        auto& p = terms_[numerator];
        p.add_term(doubled_y, c);
        if (p.is_zero())
            terms_.erase(numerator);
    }

    CycScalar coefficient(const Rat& q_exp, const Rat& y_exp) const
    {
        if (q_exp >= trunc_)
            throw BeyondTruncation();
        Rat scaled = q_exp * rat(qden_);
        Rat doubled = y_exp * 2;
        if (!rat_is_integer(scaled) || !rat_is_integer(doubled))
            return CycScalar();
        auto it = terms_.find(static_cast<Int>(scaled.get_num().get_si()));
        if (it == terms_.end())
            return CycScalar();
        return it->second.at(static_cast<Int>(doubled.get_num().get_si()));
    }

    // --- ring operations -------------------------------------------------

    friend QYSeries operator+(const QYSeries& a, const QYSeries& b)
    {
        auto [x, y] = aligned(a, b);
        QYSeries r(std::min(x.trunc_, y.trunc_), x.cyc_order_, x.qden_);
        for (const auto& [e, p] : x.terms_)
            if (x.q_exponent(e) < r.trunc_)
                r.terms_.emplace(e, p);
        for (const auto& [e, p] : y.terms_) {
            if (y.q_exponent(e) >= r.trunc_)
                continue;
            auto [it, fresh] = r.terms_.emplace(e, p);
            if (!fresh) {
                it->second = it->second + p;
                if (it->second.is_zero())
                    r.terms_.erase(it);
            }
        }
        r.slope_ = add_slope(a, b);
        r.normalize();
        return r;
    }

    friend QYSeries operator-(const QYSeries& a, const QYSeries& b) { return a + (-b); }

    QYSeries operator-() const
    {
        QYSeries r = *this;
        for (auto& [e, p] : r.terms_)
            p = -p;
        return r;
    }

    friend QYSeries operator*(const QYSeries& a, const QYSeries& b)
    {
        auto [x, y] = aligned(a, b);
        // T = min(T_f + v_g, T_g + v_f), v = lowest exponent of the other factor
        Rat tr = std::min(x.trunc_ + y.valuation(), y.trunc_ + x.valuation());
        QYSeries r(tr, x.cyc_order_, x.qden_);
        for (const auto& [ea, pa] : x.terms_) {
            for (const auto& [eb, pb] : y.terms_) {
                const Int e = ea + eb;
                if (r.q_exponent(e) >= tr)
                    continue;
                YLaurent prod = pa * pb;
                if (prod.is_zero())
                    continue;
                auto [it, fresh] = r.terms_.emplace(e, prod);
                if (!fresh) {
                    it->second = it->second + prod;
                    if (it->second.is_zero())
                        r.terms_.erase(it);
                }
            }
        }
        r.slope_ = mul_slope(a, b);
        r.normalize();
        return r;
    }

    QYSeries scaled(const CycScalar& c) const
    {
        QYSeries r(trunc_, std::max(cyc_order_, c.order()), qden_);
        if (c.is_zero())
            return r;
        int ord = static_cast<int>(lcm_ll(cyc_order_, c.order()));
        r.cyc_order_ = ord;
        CycScalar ce = c.embedded(ord);
        for (const auto& [e, p] : terms_) {
            YLaurent q = p.embedded(ord).scaled(ce);
            if (!q.is_zero())
                r.terms_.emplace(e, std::move(q));
        }
        r.slope_ = slope_;
        r.normalize();
        return r;
    }

    // y -> y^n on exponents; certifies sigma' = n sigma, r0' = n r0.
    QYSeries y_scaled(Int n) const
    {
        QYSeries r(trunc_, cyc_order_, qden_);
        for (const auto& [e, p] : terms_)
            r.terms_.emplace(e, p.exponents_scaled(n));
        if (slope_)
            r.slope_ = SlopeCert{slope_->sigma * rat(n), slope_->r0 * rat(n)};
        return r;
    }

    // Exact division: h with g*h = f to the certified truncation.
    // Throws NotDivisible (with the first failing q-exponent) when the
    // leading YLaurent of g fails to divide an intermediate remainder.
    static QYSeries div_exact(const QYSeries& f, const QYSeries& g)
    {
        if (g.is_zero())
            throw std::domain_error("QYSeries::div_exact: zero divisor");
        auto [x, d] = aligned(f, g);
        const Int vg = d.terms_.begin()->first; // numerator over shared D
        const YLaurent& glead = d.terms_.begin()->second;
        const Rat vg_exp = d.q_exponent(vg);
        Rat tr = x.trunc_ - vg_exp;
        if (!x.is_zero()) {
            Rat alt = d.trunc_ + x.valuation() - vg_exp - vg_exp;
            tr = std::min(tr, alt);
        }
        QYSeries h(tr, x.cyc_order_, x.qden_);
        if (x.is_zero()) {
            h.normalize();
            return h;
        }
        const Int vh = x.terms_.begin()->first - vg;
        // walk the shared-denominator grid
        Rat tr_num_r = tr * rat(h.qden_);
        // ceil of tr*D as exclusive bound on numerators
        mpz_class fl = rat_floor(tr_num_r);
        Int w_end = static_cast<Int>(fl.get_si());
        if (rat(w_end, 1) < tr_num_r)
            ++w_end; // exclusive upper bound: smallest integer >= tr*D
        for (Int w = vh; w < w_end; ++w) {
            // rem = f_{w+vg} - sum_{u > vg} g_u h_{w+vg-u}
            YLaurent rem;
            auto ft = x.terms_.find(w + vg);
            if (ft != x.terms_.end())
                rem = ft->second;
            for (auto gt = std::next(d.terms_.begin()); gt != d.terms_.end(); ++gt) {
                const Int u = gt->first;
                if (u - vg > w - vh)
                    break;
                auto ht = h.terms_.find(w + vg - u);
                if (ht == h.terms_.end())
                    continue;
                rem = rem - gt->second * ht->second;
            }
            if (rem.is_zero())
                continue;
            auto q = YLaurent::divide_exact(rem, glead);
            if (!q)
                throw NotDivisible(x.q_exponent(w + vg));
            h.terms_.emplace(w, std::move(*q));
        }
        h.normalize();
        return h;
    }

    // Evaluation y^(1/2) -> zeta_{2n}^beta * q^(alpha/(2n)), realizing
    // z = (alpha*tau + beta)/n on the series. alpha is used as given; callers
    // wanting minimal-|alpha| representatives re-center before the call.
    // The output is certified strictly below
    //   T' = T*(1 - sigma*|alpha|/n) - |alpha|*r0/n,
    // the largest bound unreachable by terms beyond the input truncation.
    QYSeries substitute_y(Int beta, Int alpha, Int n) const
    {
        if (n < 1)
            throw std::invalid_argument("substitute_y: n must be positive");
        Rat tprime = trunc_;
        if (alpha != 0) {
            // q-exponents move by r*alpha/n, so a support bound is required
            // for the output to have a sound completeness window at all
            if (!slope_)
                throw NoSlopeCertificate("substitute_y with alpha != 0 requires a certificate");
            const Rat s = slope_->sigma * rat(alpha < 0 ? -alpha : alpha, n);
            if (s >= 1)
                throw NoSlopeCertificate("sigma*|alpha|/n = " + rat_str(s) + " is not < 1");
            const Rat abs_a = rat(alpha < 0 ? -alpha : alpha);
            tprime = trunc_ * (Rat(1) - s) - abs_a * slope_->r0 / rat(n);
        }
        const int ord = static_cast<int>(lcm_ll(cyc_order_, 2 * n));
        const Int dprime = lcm_ll(qden_, 2 * n);
        QYSeries r(tprime, ord, dprime);
        const Int scale_q = dprime / qden_;
        for (const auto& [e, p] : terms_) {
            for (const auto& [rho, c] : p.terms()) {
                // exponent e/D + rho*alpha/(2n), over denominator dprime
                const Int num = e * scale_q + rho * alpha * (dprime / (2 * n));
                if (r.q_exponent(num) >= tprime)
                    continue;
                CycScalar phase = CycScalar::root_of_unity(2 * static_cast<int>(n), rho * beta);
                r.add_monomial(num, 0, c.embedded(ord) * phase.embedded(ord));
            }
        }
        r.slope_ = SlopeCert{Rat(0), Rat(0)};
        r.normalize();
        return r;
    }

    // Multiply by q^(num/den) exactly (exponent shift).
    QYSeries q_shifted(Int num, Int den) const
    {
        const Int d = lcm_ll(qden_, den);
        QYSeries r(trunc_ + rat(num, den), cyc_order_, d);
        const Int sq = d / qden_;
        const Int shift = num * (d / den);
        for (const auto& [e, p] : terms_)
            r.terms_.emplace(e * sq + shift, p);
        if (slope_) {
            // a term (e, r) moves to (e + t, r): |r| <= sigma*(e+t) + (r0 - sigma*t)
            Rat t = rat(num, den);
            r.slope_ = SlopeCert{slope_->sigma, slope_->r0 - slope_->sigma * t};
        }
        r.normalize();
        return r;
    }

    // Re-truncate downward (forgetting data past the new bound).
    QYSeries truncated(const Rat& t) const
    {
        if (t >= trunc_)
            return *this;
        QYSeries r(t, cyc_order_, qden_);
        for (const auto& [e, p] : terms_)
            if (q_exponent(e) < t)
                r.terms_.emplace(e, p);
        r.slope_ = slope_;
        r.normalize();
        return r;
    }

    // Attempt to rewrite every coefficient in the suborder field; returns
    // false (leaving *this untouched) when a coefficient visibly fails.
    bool try_downgrade_order(int suborder)
    {
        if (cyc_order_ % suborder != 0)
            return false;
        if (cyc_order_ == suborder)
            return true;
        for (const auto& [e, p] : terms_)
            for (const auto& [d, c] : p.terms())
                if (!c.supported_on_suborder(suborder))
                    return false;
        std::map<Int, YLaurent> out;
        for (const auto& [e, p] : terms_) {
            YLaurent q;
            for (const auto& [d, c] : p.terms())
                q.add_term(d, c.restricted_to_suborder(suborder));
            out.emplace(e, std::move(q));
        }
        terms_ = std::move(out);
        cyc_order_ = suborder;
        return true;
    }

    bool is_integral() const
    {
        for (const auto& [e, p] : terms_)
            if (!p.is_integral())
                return false;
        return true;
    }

    // Every stored term obeys the certificate (test hook).
    bool slope_holds() const
    {
        if (!slope_)
            return true;
        for (const auto& [e, p] : terms_) {
            const Rat qe = q_exponent(e);
            for (const auto& [d, c] : p.terms()) {
                Rat r = rat(d < 0 ? -d : d, 2);
                if (r > slope_->sigma * qe + slope_->r0)
                    return false;
            }
        }
        return true;
    }

    friend bool operator==(const QYSeries& a, const QYSeries& b)
    {
        auto [x, y] = aligned(a, b);
        return x.terms_ == y.terms_ && x.trunc_ == y.trunc_;
    }

    // Equality of coefficients on the overlap window, ignoring certificates.
    static bool agree_below(const QYSeries& a, const QYSeries& b, const Rat& bound)
    {
        auto [x, y] = aligned(a, b);
        if (x.trunc_ < bound || y.trunc_ < bound)
            throw BeyondTruncation();
        for (const auto& [e, p] : x.terms_)
            if (x.q_exponent(e) < bound && y.terms_.count(e) == 0)
                return false;
        for (const auto& [e, p] : y.terms_) {
            if (y.q_exponent(e) >= bound)
                continue;
            auto it = x.terms_.find(e);
            if (it == x.terms_.end() || !(it->second == p))
                return false;
        }
        return true;
    }

  private:
    int cyc_order_;
    Int qden_;
    std::map<Int, YLaurent> terms_;
    Rat trunc_;
    std::optional<SlopeCert> slope_;

    // Lowest exponent any present-or-future term can have: stored minimum, or
    // the truncation bound when nothing is stored.
    Rat support_floor() const
    {
        if (terms_.empty())
            return trunc_;
        Rat v = rat(terms_.begin()->first, qden_);
        return std::min(v, trunc_);
    }

    static Rat neg_part(const Rat& v) { return v < 0 ? Rat(-v) : Rat(0); }

    static std::optional<SlopeCert> add_slope(const QYSeries& a, const QYSeries& b)
    {
        if (!a.slope_ || !b.slope_)
            return std::nullopt;
        Rat sigma = std::max(a.slope_->sigma, b.slope_->sigma);
        Rat ra = a.slope_->r0 + (sigma - a.slope_->sigma) * neg_part(a.support_floor());
        Rat rb = b.slope_->r0 + (sigma - b.slope_->sigma) * neg_part(b.support_floor());
        return SlopeCert{sigma, std::max(ra, rb)};
    }

    static std::optional<SlopeCert> mul_slope(const QYSeries& a, const QYSeries& b)
    {
        if (!a.slope_ || !b.slope_)
            return std::nullopt;
        Rat sigma = std::max(a.slope_->sigma, b.slope_->sigma);
        Rat r0 = a.slope_->r0 + b.slope_->r0 +
                 (sigma - a.slope_->sigma) * neg_part(a.support_floor()) +
                 (sigma - b.slope_->sigma) * neg_part(b.support_floor());
        return SlopeCert{sigma, r0};
    }

    void normalize()
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second.is_zero() || q_exponent(it->first) >= trunc_)
                it = terms_.erase(it);
            else
                ++it;
        }
        if (qden_ > 1) {
            Int g = qden_;
            for (const auto& [e, p] : terms_) {
                g = gcd_ll(g, e < 0 ? -e : e);
                if (g == 1)
                    break;
            }
            if (terms_.empty())
                g = qden_;
            if (g > 1) {
                std::map<Int, YLaurent> out;
                for (auto& [e, p] : terms_)
                    out.emplace(e / g, std::move(p));
                terms_ = std::move(out);
                qden_ /= g;
            }
        }
    }

    static std::pair<QYSeries, QYSeries> aligned(const QYSeries& a, const QYSeries& b)
    {
        QYSeries x = a, y = b;
        const int ord = static_cast<int>(lcm_ll(a.cyc_order_, b.cyc_order_));
        const Int den = lcm_ll(a.qden_, b.qden_);
        x.rescale(ord, den);
        y.rescale(ord, den);
        return {std::move(x), std::move(y)};
    }

    void rescale(int ord, Int den)
    {
        if (ord != cyc_order_) {
            for (auto& [e, p] : terms_)
                p = p.embedded(ord);
            cyc_order_ = ord;
        }
        if (den != qden_) {
            const Int s = den / qden_;
            std::map<Int, YLaurent> out;
            for (auto& [e, p] : terms_)
                out.emplace(e * s, std::move(p));
            terms_ = std::move(out);
            qden_ = den;
        }
    }
};

} // namespace jfcell

#endif
