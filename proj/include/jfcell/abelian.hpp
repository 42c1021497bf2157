#ifndef JFCELL_ABELIAN_HPP
#define JFCELL_ABELIAN_HPP

#include <jfcell/rational.hpp>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

namespace jfcell {

// Finitely generated abelian group as a list of cyclic orders; 0 means Z.
// Canonical form: invariant factors ascending, free factors last.
struct AbGroup {
    std::vector<Int> orders;

    bool is_trivial() const { return orders.empty(); }
    std::size_t gens() const { return orders.size(); }

    Int free_rank() const
    {
        Int r = 0;
        for (Int o : orders)
            if (o == 0)
                ++r;
        return r;
    }

    bool is_finite() const { return free_rank() == 0; }

    // product of the torsion orders' prime support
    Int torsion_exponent() const
    {
        Int e = 1;
        for (Int o : orders)
            if (o != 0)
                e = lcm_ll(e, o);
        return e;
    }

    std::string str() const
    {
        if (orders.empty())
            return "0";
        std::string s;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            if (i)
                s += " + ";
            s += orders[i] == 0 ? "Z" : "Z/" + std::to_string(orders[i]);
        }
        return s;
    }

    friend bool operator==(const AbGroup& a, const AbGroup& b) { return a.orders == b.orders; }
};

using IntMat = std::vector<std::vector<Int>>; // m[row][col]

namespace snf {

inline IntMat identity(std::size_t n)
{
    IntMat m(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

inline IntMat multiply(const IntMat& a, const IntMat& b)
{
    if (a.empty() || b.empty())
        return {};
    IntMat r(a.size(), std::vector<Int>(b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0)
                continue;
            for (std::size_t j = 0; j < b[0].size(); ++j)
                r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

inline std::vector<Int> mat_apply(const IntMat& a, const std::vector<Int>& v)
{
    std::vector<Int> r(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            r[i] += a[i][j] * v[j];
    return r;
}

struct SmithForm {
    IntMat d;       // U * A * V = D, diagonal
    IntMat u;       // rows x rows, unimodular
    IntMat v;       // cols x cols, unimodular
    std::size_t rank = 0;
};

// Smith normal form by integer row/column reduction. Matrices here are tiny
// (table windows), so no pivot-size cleverness is needed.
inline SmithForm smith(IntMat a)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    SmithForm f;
    f.u = identity(rows);
    f.v = identity(cols);

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        std::swap(f.u[i], f.u[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& row : a)
            std::swap(row[i], row[j]);
        for (auto& row : f.v)
            std::swap(row[i], row[j]);
    };
    auto addmul_row = [&](std::size_t dst, std::size_t src, Int c) {
        for (std::size_t j = 0; j < cols; ++j)
            a[dst][j] += c * a[src][j];
        for (std::size_t j = 0; j < rows; ++j)
            f.u[dst][j] += c * f.u[src][j];
    };
    auto addmul_col = [&](std::size_t dst, std::size_t src, Int c) {
        for (std::size_t i = 0; i < rows; ++i)
            a[i][dst] += c * a[i][src];
        for (std::size_t i = 0; i < cols; ++i)
            f.v[i][dst] += c * f.v[i][src];
    };
    auto negate_row = [&](std::size_t i) {
        for (std::size_t j = 0; j < cols; ++j)
            a[i][j] = -a[i][j];
        for (std::size_t j = 0; j < rows; ++j)
            f.u[i][j] = -f.u[i][j];
    };

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // find a nonzero pivot
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < rows && !found; ++i)
            for (std::size_t j = t; j < cols && !found; ++j)
                if (a[i][j] != 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found)
            break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        // clear row and column t
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0)
                    continue;
                Int q = a[i][t] / a[t][t];
                addmul_row(i, t, -q);
                if (a[i][t] != 0) { // remainder smaller than pivot: swap up
                    swap_rows(t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0)
                    continue;
                Int q = a[t][j] / a[t][t];
                addmul_col(j, t, -q);
                if (a[t][j] != 0) {
                    swap_cols(t, j);
                    dirty = true;
                }
            }
        }
        if (a[t][t] < 0)
            negate_row(t);
        ++t;
    }
    // diagonal, not necessarily divisibility-chained; callers that need
    // invariant factors canonicalize the diagonal arithmetically
    f.rank = 0;
    for (std::size_t i = 0; i < std::min(rows, cols); ++i)
        if (a[i][i] != 0)
            ++f.rank;
    f.d = std::move(a);
    return f;
}

// Lattice basis of { x in Z^cols : A x = 0 }, as columns.
inline IntMat integer_kernel(const IntMat& a)
{
    if (a.empty() || a[0].empty()) {
        std::size_t n = a.empty() ? 0 : a[0].size();
        return identity(n);
    }
    SmithForm f = smith(a);
    const std::size_t cols = a[0].size();
    IntMat basis; // column vectors
    for (std::size_t j = f.rank; j < cols; ++j) {
        std::vector<Int> col(cols);
        for (std::size_t i = 0; i < cols; ++i)
            col[i] = f.v[i][j];
        basis.push_back(std::move(col));
    }
    return basis; // list of column vectors
}

// Solve A y = v over Z; returns false when no integer solution exists.
inline bool solve(const IntMat& a, const std::vector<Int>& v, std::vector<Int>& y)
{
    if (a.empty()) {
        for (Int c : v)
            if (c != 0)
                return false;
        y.clear();
        return true;
    }
    SmithForm f = smith(a);
    std::vector<Int> uv = mat_apply(f.u, v);
    const std::size_t cols = a[0].size();
    std::vector<Int> w(cols, 0);
    for (std::size_t i = 0; i < uv.size(); ++i) {
        Int d = (i < std::min(a.size(), cols)) ? f.d[i][i] : 0;
        if (d == 0) {
            if (uv[i] != 0)
                return false;
        } else {
            if (uv[i] % d != 0)
                return false;
            if (i < cols)
                w[i] = uv[i] / d;
        }
    }
    y = mat_apply(f.v, w);
    return true;
}

} // namespace snf

// Canonical group from a presentation: ngens generators, relations given as
// column vectors.
// Pairwise gcd/lcm passes turn any multiset of cyclic orders into the
// invariant-factor chain.
inline std::vector<Int> invariant_factors(std::vector<Int> torsion)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < torsion.size(); ++i)
            for (std::size_t j = i + 1; j < torsion.size(); ++j) {
                Int g = gcd_ll(torsion[i], torsion[j]);
                if (g == torsion[i] || g == torsion[j])
                    continue;
                Int l = torsion[i] / g * torsion[j];
                torsion[i] = g;
                torsion[j] = l;
                changed = true;
            }
    }
    torsion.erase(std::remove(torsion.begin(), torsion.end(), Int(1)), torsion.end());
    std::sort(torsion.begin(), torsion.end());
    return torsion;
}

inline AbGroup group_from_relations(std::size_t ngens, const IntMat& relation_columns)
{
    if (ngens == 0)
        return AbGroup{};
    IntMat rel(ngens, std::vector<Int>(relation_columns.size(), 0));
    for (std::size_t c = 0; c < relation_columns.size(); ++c)
        for (std::size_t r = 0; r < ngens; ++r)
            rel[r][c] = relation_columns[c][r];
    auto f = snf::smith(rel);
    AbGroup g;
    std::vector<Int> torsion;
    std::size_t free = ngens;
    for (std::size_t i = 0; i < f.rank; ++i) {
        Int d = std::llabs(f.d[i][i]);
        --free;
        if (d != 1)
            torsion.push_back(d);
    }
    g.orders = invariant_factors(std::move(torsion));
    for (std::size_t i = 0; i < free; ++i)
        g.orders.push_back(0);
    return g;
}

inline AbGroup canonical_group(const std::vector<Int>& orders)
{
    IntMat cols;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] == 0)
            continue;
        std::vector<Int> c(orders.size(), 0);
        c[i] = orders[i];
        cols.push_back(std::move(c));
    }
    return group_from_relations(orders.size(), cols);
}

// Homomorphism G -> H between groups presented by their order vectors;
// m[row][col]: image of G's col-th generator in H's generators.
struct AbMap {
    std::vector<Int> src_orders;
    std::vector<Int> dst_orders;
    IntMat m;

    static AbMap zero(std::vector<Int> src, std::vector<Int> dst)
    {
        AbMap f;
        f.m.assign(dst.size(), std::vector<Int>(src.size(), 0));
        f.src_orders = std::move(src);
        f.dst_orders = std::move(dst);
        return f;
    }

    bool well_defined() const
    {
        for (std::size_t c = 0; c < src_orders.size(); ++c) {
            if (src_orders[c] == 0)
                continue;
            for (std::size_t r = 0; r < dst_orders.size(); ++r) {
                Int v = src_orders[c] * m[r][c];
                if (dst_orders[r] == 0 ? v != 0 : v % dst_orders[r] != 0)
                    return false;
            }
        }
        return true;
    }
};

// Subquotient ker(out)/im(in) for maps  in: A -> G,  out: G -> B, assuming
// im(in) lies inside ker(out) (the d1 chain condition); verified.
// Presented by a lattice basis of the kernel with the in-image and the order
// relations expressed in that basis.
inline AbGroup homology_at(const AbMap& in, const AbMap& out)
{
    const std::size_t n = out.src_orders.size();
    if (n == 0)
        return AbGroup{};
    // L = { x in Z^n : out.m x = 0 mod dst_orders }: kernel of [out.m | diag],
    // projected back to the x-coordinates. No targets means no constraint.
    IntMat proj; // generating columns of L
    if (out.dst_orders.empty()) {
        proj = snf::identity(n);
    } else {
        IntMat ext(out.dst_orders.size(), std::vector<Int>(n + out.dst_orders.size(), 0));
        for (std::size_t r = 0; r < out.dst_orders.size(); ++r) {
            for (std::size_t c = 0; c < n; ++c)
                ext[r][c] = out.m[r][c];
            ext[r][n + r] = out.dst_orders[r];
        }
        IntMat kb = snf::integer_kernel(ext); // columns of length n + t
        for (const auto& col : kb)
            proj.emplace_back(col.begin(), col.begin() + static_cast<long>(n));
    }
    // basis matrix B: n x k
    IntMat b(n, std::vector<Int>(proj.size(), 0));
    for (std::size_t c = 0; c < proj.size(); ++c)
        for (std::size_t r = 0; r < n; ++r)
            b[r][c] = proj[c][r];

    // relations: in-image columns and the order relations g_i e_i
    IntMat relation_columns;
    for (std::size_t c = 0; c < in.src_orders.size(); ++c) {
        std::vector<Int> v(n, 0);
        for (std::size_t r = 0; r < n; ++r)
            v[r] = in.m[r][c];
        relation_columns.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (out.src_orders[i] == 0)
            continue;
        std::vector<Int> v(n, 0);
        v[i] = out.src_orders[i];
        relation_columns.push_back(std::move(v));
    }

    IntMat rels_in_basis;
    for (const auto& v : relation_columns) {
        std::vector<Int> y;
        if (!snf::solve(b, v, y))
            throw std::logic_error("homology_at: relation not inside the kernel lattice "
                                   "(chain condition violated)");
        rels_in_basis.push_back(std::move(y));
    }
    // the projected generators need not be independent (free factors of the
    // target drop out of the projection); their syzygies are relations too
    for (auto& syz : snf::integer_kernel(b))
        rels_in_basis.push_back(std::move(syz));
    return group_from_relations(proj.size(), rels_in_basis);
}

} // namespace jfcell

#endif
