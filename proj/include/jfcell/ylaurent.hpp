#ifndef JFCELL_YLAURENT_HPP
#define JFCELL_YLAURENT_HPP

#include <jfcell/cyclotomic.hpp>

#include <map>
#include <optional>

namespace jfcell {

// Sparse Laurent polynomial in y^(1/2): doubled exponent -> coefficient.
// No stored zeros. Exponent d stands for y^(d/2).
class YLaurent {
  public:
    YLaurent() = default;

    static YLaurent monomial(Int doubled_exp, CycScalar c)
    {
        YLaurent p;
        if (!c.is_zero())
            p.terms_.emplace(doubled_exp, std::move(c));
        return p;
    }

    static YLaurent constant(CycScalar c) { return monomial(0, std::move(c)); }
    static YLaurent one() { return constant(CycScalar(Rat(1))); }

    const std::map<Int, CycScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Int min_exp() const { return terms_.begin()->first; }
    Int max_exp() const { return terms_.rbegin()->first; }

    CycScalar at(Int doubled_exp) const
    {
        auto it = terms_.find(doubled_exp);
        return it == terms_.end() ? CycScalar() : it->second;
    }

    void add_term(Int doubled_exp, const CycScalar& c)
    {
        if (c.is_zero())
            return;
        auto [it, fresh] = terms_.emplace(doubled_exp, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    friend YLaurent operator+(const YLaurent& a, const YLaurent& b)
    {
        YLaurent r = a;
        for (const auto& [e, c] : b.terms_)
            r.add_term(e, c);
        return r;
    }

    friend YLaurent operator-(const YLaurent& a, const YLaurent& b)
    {
        YLaurent r = a;
        for (const auto& [e, c] : b.terms_)
            r.add_term(e, -c);
        return r;
    }

    YLaurent operator-() const
    {
        YLaurent r;
        for (const auto& [e, c] : terms_)
            r.terms_.emplace(e, -c);
        return r;
    }

    friend YLaurent operator*(const YLaurent& a, const YLaurent& b)
    {
        YLaurent r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.add_term(ea + eb, ca * cb);
        return r;
    }

    YLaurent scaled(const CycScalar& s) const
    {
        YLaurent r;
        if (s.is_zero())
            return r;
        for (const auto& [e, c] : terms_) {
            CycScalar p = c * s;
            if (!p.is_zero())
                r.terms_.emplace(e, std::move(p));
        }
        return r;
    }

    // y^(1/2) -> y^(n/2) (used by the z -> nz map on the series level).
    YLaurent exponents_scaled(Int n) const
    {
        YLaurent r;
        for (const auto& [e, c] : terms_)
            r.terms_.emplace(e * n, c);
        return r;
    }

    // Exact Laurent-polynomial division: returns a/b, or nullopt when the
    // remainder is nonzero. In a Laurent ring over a field, lowest terms
    // multiply, so an exact quotient has valuation a.min - b.min; dividing
    // from the top with that floor is ordinary polynomial division.
    static std::optional<YLaurent> divide_exact(const YLaurent& a, const YLaurent& b)
    {
        if (b.is_zero())
            throw std::domain_error("YLaurent::divide_exact: division by zero");
        if (a.is_zero())
            return YLaurent();
        const Int quot_val = a.min_exp() - b.min_exp();
        const Int bmax = b.max_exp();
        const CycScalar lead_inv = b.terms_.rbegin()->second.inverse();
        YLaurent rem = a;
        YLaurent quot;
        while (!rem.is_zero() && rem.max_exp() - bmax >= quot_val) {
            const Int shift = rem.max_exp() - bmax;
            CycScalar c = rem.terms_.rbegin()->second * lead_inv;
            quot.add_term(shift, c);
            for (const auto& [eb, cb] : b.terms_)
                rem.add_term(eb + shift, -(cb * c));
        }
        if (!rem.is_zero())
            return std::nullopt;
        return quot;
    }

    bool is_integral() const
    {
        for (const auto& [e, c] : terms_)
            if (!c.is_integral())
                return false;
        return true;
    }

    YLaurent embedded(int order) const
    {
        YLaurent r;
        for (const auto& [e, c] : terms_)
            r.terms_.emplace(e, c.embedded(order));
        return r;
    }

    friend bool operator==(const YLaurent& a, const YLaurent& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const YLaurent& a, const YLaurent& b) { return !(a == b); }

  private:
    std::map<Int, CycScalar> terms_;
};

} // namespace jfcell

#endif
