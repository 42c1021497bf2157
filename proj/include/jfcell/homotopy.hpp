#ifndef JFCELL_HOMOTOPY_HPP
#define JFCELL_HOMOTOPY_HPP

#include <jfcell/tables.hpp>

namespace jfcell {

struct AmbiguousInput : std::runtime_error {
    explicit AmbiguousInput(const std::string& what) : std::runtime_error(what) {}
};

// Outcome of one graded computation. Extensions are resolved only when
// forced: a free quotient splits, trivial pieces are absorbed, and finite
// pieces with coprime exponents split. Everything else is reported as an
// unresolved extension with both pieces.
struct GradedGroupResult {
    Int degree = 0;
    bool determined = false;
    AbGroup group;    // when determined
    AbGroup sub;      // when ambiguous: the lower filtration piece
    AbGroup quotient; // when ambiguous: the remaining pieces, summed formally
    std::string note; // extension site / missing-data reason

    std::string str() const
    {
        if (determined)
            return group.str();
        std::string s = "ambiguous: 0 -> " + sub.str() + " -> ? -> " + quotient.str() + " -> 0";
        if (!note.empty())
            s += " (" + note + ")";
        return s;
    }
};

namespace detail {

// Graded coefficients for the filtration engine: per-degree groups plus
// label actions. Groups may be undetermined (unresolved extensions upstream);
// actions may be unknown (exotic data the d1-model cannot supply).
struct CoeffGroup {
    bool determined = true;
    std::vector<Int> orders;
    bool known_zero() const { return determined && orders.empty(); }
};

struct ModuleCoeffs {
    virtual ~ModuleCoeffs() = default;
    virtual CoeffGroup group(Int degree) = 0;
    virtual std::optional<IntMat> action(Label l, Int degree) = 0;
    virtual std::string describe() const = 0;
};

struct TableCoeffs final : ModuleCoeffs {
    const CoefficientTable& table;
    explicit TableCoeffs(const CoefficientTable& t) : table(t) {}
    CoeffGroup group(Int d) override { return {true, table.orders_at(d)}; }
    std::optional<IntMat> action(Label l, Int d) override { return table.action_at(l, d); }
    std::string describe() const override { return "table " + table.name; }
};

struct ShiftedOverrideCoeffs final : ModuleCoeffs {
    const CoefficientTable::Override& ov;
    Int shift;
    ShiftedOverrideCoeffs(const CoefficientTable::Override& o, Int s) : ov(o), shift(s) {}
    CoeffGroup group(Int d) override
    {
        auto it = ov.groups.find(d - shift);
        if (it == ov.groups.end())
            throw TableRangeExceeded("override for '" + ov.complex.name() +
                                     "' has no degree " + std::to_string(d - shift));
        return {true, it->second.orders};
    }
    std::optional<IntMat> action(Label l, Int d) override
    {
        CoeffGroup src = group(d);
        CoeffGroup dst = group(d + label_stem(l));
        return CoefficientTable::resolve_action(l, d - shift, src.orders, dst.orders, ov.actions);
    }
    std::string describe() const override { return "override " + ov.complex.name(); }
};

} // namespace detail

namespace detail {

// pieces of the skeletal filtration at one degree, in fold order
struct Piece {
    Int cell_id;
    Int cell_degree;
    AbGroup group;
};

inline bool extension_forced(const AbGroup& sub, const AbGroup& quot)
{
    if (sub.is_trivial() || quot.is_trivial())
        return true;
    bool quot_free = true;
    for (Int o : quot.orders)
        if (o != 0)
            quot_free = false;
    if (quot_free)
        return true; // free quotients split
    if (sub.is_finite()) {
        Int es = sub.torsion_exponent();
        Int eq = 1;
        for (Int o : quot.orders)
            if (o != 0)
                eq = lcm_ll(eq, o);
        if (gcd_ll(es, eq) == 1)
            return true; // coprime finite extension splits
    }
    return false;
}

inline AbGroup forced_sum(const AbGroup& a, const AbGroup& b)
{
    std::vector<Int> orders = a.orders;
    orders.insert(orders.end(), b.orders.begin(), b.orders.end());
    return canonical_group(orders);
}

inline GradedGroupResult fold_pieces(Int degree, const std::vector<Piece>& pieces)
{
    GradedGroupResult res;
    res.degree = degree;
    AbGroup acc;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const AbGroup& p = pieces[i].group;
        if (extension_forced(acc, p)) {
            acc = forced_sum(acc, p);
            continue;
        }
        res.determined = false;
        res.sub = acc;
        AbGroup rest;
        for (std::size_t j = i; j < pieces.size(); ++j)
            rest = forced_sum(rest, pieces[j].group);
        res.quotient = rest;
        res.note = "extension at the degree-" + std::to_string(pieces[i].cell_degree) + " cell";
        return res;
    }
    res.determined = true;
    res.group = acc;
    return res;
}

// One degree of pi_*(X (x) coefficients) in the d1-model: per cell,
// homology of the label-action maps, then the iterated extension in
// ascending cell order.
inline GradedGroupResult compute_degree(const CellComplex& x, ModuleCoeffs& coeffs, Int n)
{
    std::vector<Piece> pieces;
    for (const auto& c : x.cells()) {
        CoeffGroup gc = coeffs.group(n - c.degree);
        if (!gc.determined)
            return GradedGroupResult{n, false, {}, {}, {},
                                     "coefficient group at internal degree " +
                                         std::to_string(n - c.degree) + " is ambiguous (" +
                                         coeffs.describe() + ")"};
        if (gc.orders.empty())
            continue;

        // out-map: stack the label actions over attachments with source c
        AbMap out;
        out.src_orders = gc.orders;
        for (const auto& a : x.attachments()) {
            if (a.source != c.id || a.label == Label::zero)
                continue;
            CoeffGroup gt = coeffs.group(n - 1 - x.cell(a.target).degree);
            if (!gt.determined)
                return GradedGroupResult{n, false, {}, {}, {},
                                         "coefficient group feeding the out-map is ambiguous"};
            if (gt.orders.empty())
                continue;
            auto m = coeffs.action(a.label, n - c.degree);
            if (!m)
                return GradedGroupResult{n, false, {}, {}, {},
                                         std::string("missing ") + label_name(a.label) +
                                             "-action at internal degree " +
                                             std::to_string(n - c.degree) + " (" +
                                             coeffs.describe() + ")"};
            std::size_t base = out.dst_orders.size();
            out.dst_orders.insert(out.dst_orders.end(), gt.orders.begin(), gt.orders.end());
            out.m.resize(out.dst_orders.size(), std::vector<Int>(out.src_orders.size(), 0));
            for (std::size_t r = 0; r < gt.orders.size(); ++r)
                for (std::size_t cc = 0; cc < gc.orders.size(); ++cc)
                    out.m[base + r][cc] = (*m)[r][cc];
        }

        // in-map: stack over attachments with target c
        AbMap in;
        in.dst_orders = gc.orders;
        for (const auto& a : x.attachments()) {
            if (a.target != c.id || a.label == Label::zero)
                continue;
            CoeffGroup gs = coeffs.group(n + 1 - x.cell(a.source).degree);
            if (!gs.determined)
                return GradedGroupResult{n, false, {}, {}, {},
                                         "coefficient group feeding the in-map is ambiguous"};
            if (gs.orders.empty())
                continue;
            auto m = coeffs.action(a.label, n + 1 - x.cell(a.source).degree);
            if (!m)
                return GradedGroupResult{n, false, {}, {}, {},
                                         std::string("missing ") + label_name(a.label) +
                                             "-action at internal degree " +
                                             std::to_string(n + 1 - x.cell(a.source).degree) +
                                             " (" + coeffs.describe() + ")"};
            std::size_t base = in.src_orders.size();
            in.src_orders.insert(in.src_orders.end(), gs.orders.begin(), gs.orders.end());
            for (auto& row : in.m)
                row.resize(in.src_orders.size(), 0);
            if (in.m.empty())
                in.m.assign(gc.orders.size(), std::vector<Int>(in.src_orders.size(), 0));
            for (std::size_t r = 0; r < gc.orders.size(); ++r)
                for (std::size_t cc = 0; cc < gs.orders.size(); ++cc)
                    in.m[r][base + cc] = (*m)[r][cc];
        }
        if (in.m.empty())
            in = AbMap::zero({}, gc.orders);
        if (out.m.empty())
            out = AbMap::zero(gc.orders, {});

        AbGroup h = homology_at(in, out);
        if (!h.is_trivial())
            pieces.push_back({c.id, c.degree, std::move(h)});
    }
    return fold_pieces(n, pieces);
}

} // namespace detail

// pi_n(X (x) R) for n in [lo, hi] over the table's ring coefficients; the
// complex is localized first when the table is p-local.
namespace detail {

inline CellComplex align_with_table(const CellComplex& x, const CoefficientTable& table)
{
    if (table.prime)
        return localize(x, *table.prime);
    for (const auto& a : x.attachments())
        if (!label_integral(a.label))
            throw LocalityMismatch(std::string("label ") + label_name(a.label) +
                                   " has no action in the integral table '" + table.name + "'");
    return x;
}

} // namespace detail

inline std::vector<GradedGroupResult> homotopy_groups(const CellComplex& x,
                                                      const CoefficientTable& table, Int lo,
                                                      Int hi)
{
    CellComplex xl = detail::align_with_table(x, table);
    detail::TableCoeffs coeffs(table);
    std::vector<GradedGroupResult> out;
    for (Int n = lo; n <= hi; ++n)
        out.push_back(detail::compute_degree(xl, coeffs, n));
    return out;
}

namespace detail {

// Coefficients of one simplified Y-component: a single cell reads the table
// directly; a component matching a bundled override (up to shift) uses the
// override data; anything else is computed degree by degree, with only the
// forced-zero actions available.
struct ComponentCoeffs final : ModuleCoeffs {
    const CellComplex y;
    const CoefficientTable& table;
    std::optional<ShiftedOverrideCoeffs> override_coeffs;
    std::optional<Int> single_cell_degree;

    ComponentCoeffs(CellComplex yy, const CoefficientTable& t) : y(std::move(yy)), table(t)
    {
        if (y.cells().size() == 1) {
            single_cell_degree = y.cells().front().degree;
            return;
        }
        for (const auto& ov : table.overrides) {
            if (ov.complex.cells().size() != y.cells().size())
                continue;
            Int s = y.cells().front().degree - ov.complex.cells().front().degree;
            if (diagram_compare(y, shift(ov.complex, s)).iso) {
                override_coeffs.emplace(ov, s);
                return;
            }
        }
    }

    CoeffGroup group(Int d) override
    {
        if (single_cell_degree)
            return {true, table.orders_at(d - *single_cell_degree)};
        if (override_coeffs)
            return override_coeffs->group(d);
        TableCoeffs tc(table);
        GradedGroupResult r = compute_degree(y, tc, d);
        if (!r.determined)
            return {false, {}};
        return {true, r.group.orders};
    }

    std::optional<IntMat> action(Label l, Int d) override
    {
        if (single_cell_degree)
            return table.action_at(l, d - *single_cell_degree);
        if (override_coeffs)
            return override_coeffs->action(l, d);
        // derived coefficients: only the forced cases are known
        CoeffGroup src = group(d), dst = group(d + label_stem(l));
        if (!src.determined || !dst.determined)
            return std::nullopt;
        static const std::map<Label, std::map<Int, IntMat>> none;
        return CoefficientTable::resolve_action(l, d, src.orders, dst.orders, none);
    }

    std::string describe() const override
    {
        if (override_coeffs)
            return override_coeffs->describe();
        return "coefficients of a " + std::to_string(y.cells().size()) + "-cell module";
    }
};

} // namespace detail

// The group of degree-d TMF-module maps X -> Y (x) R, i.e. [Sigma^d X, Y (x) R],
// computed by the cell filtration of X with coefficients pi_*(Y (x) R):
// equivalently pi_d of dual(X) (x) Y-coefficients. Ambiguity propagates; an
// ambiguous summand whose pieces are both zero is determined zero.
inline GradedGroupResult hom_groups(const CellComplex& x, const CellComplex& y,
                                    const CoefficientTable& table, Int d)
{
    CellComplex xl = detail::align_with_table(x, table);
    CellComplex yl = detail::align_with_table(y, table);
    CellComplex dx = dual(xl);

    GradedGroupResult total;
    total.degree = d;
    total.determined = true;
    for (const auto& yj : simplify(yl)) {
        detail::ComponentCoeffs coeffs(yj, table);
        GradedGroupResult r = detail::compute_degree(dx, coeffs, d);
        if (!r.determined && r.sub.is_trivial() && r.quotient.is_trivial() &&
            r.note.find("missing") == std::string::npos) {
            r.determined = true;
            r.group = AbGroup{};
        }
        if (!r.determined) {
            if (r.note.find("missing") != std::string::npos ||
                r.note.find("ambiguous") != std::string::npos)
                throw AmbiguousInput("hom_groups: " + r.note);
            total.determined = false;
            total.sub = detail::forced_sum(total.sub, r.sub);
            total.quotient = detail::forced_sum(total.quotient, r.quotient);
            total.note = r.note;
            continue;
        }
        if (total.determined)
            total.group = detail::forced_sum(total.group, r.group);
        else
            total.sub = detail::forced_sum(total.sub, r.group);
    }
    return total;
}

} // namespace jfcell

#endif
