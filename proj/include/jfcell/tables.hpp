#ifndef JFCELL_TABLES_HPP
#define JFCELL_TABLES_HPP

#include <jfcell/abelian.hpp>
#include <jfcell/cells.hpp>

#include <json.hpp>

#include <fstream>
#include <optional>

namespace jfcell {

struct TableRangeExceeded : std::runtime_error {
    explicit TableRangeExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Ingested coefficient data: per-degree abelian groups with named generators
// and the multiplication action of the attaching-map labels. Optional
// per-module overrides carry facts (with provenance) that the skeletal
// d1-model cannot derive, e.g. exotic alpha-extensions.
struct CoefficientTable {
    struct GroupEntry {
        std::vector<Int> orders;
        std::vector<std::string> gens;
    };
    struct Override {
        CellComplex complex;
        std::map<Int, GroupEntry> groups; // explicit degrees only
        std::map<Label, std::map<Int, IntMat>> actions;
        std::string note;
    };

    std::string name;
    std::optional<int> prime; // nullopt = integral
    Int lo = 0, hi = -1;
    std::map<Int, GroupEntry> groups;
    std::map<Label, std::map<Int, IntMat>> actions;
    std::string provenance;
    std::vector<Override> overrides;

    const std::vector<Int>& orders_at(Int d) const
    {
        if (d < lo || d > hi)
            throw TableRangeExceeded("table '" + name + "' has no degree " + std::to_string(d) +
                                     " (range " + std::to_string(lo) + ".." + std::to_string(hi) +
                                     ")");
        static const std::vector<Int> empty;
        auto it = groups.find(d);
        return it == groups.end() ? empty : it->second.orders;
    }

    // Stored or derivable action matrix group(d) -> group(d + stem(l)).
    // Derivations: 2 acts as multiplication by 2; 2nu/2alpha double the
    // stored nu/alpha matrices; maps from or to the trivial group and maps
    // from finite groups into free groups are forced zero.
    std::optional<IntMat> action_at(Label l, Int d) const
    {
        if (l == Label::zero)
            throw std::invalid_argument("action_at: zero attachments carry no action");
        const auto& src = orders_at(d);
        const auto& dst = orders_at(d + label_stem(l));
        return resolve_action(l, d, src, dst, actions);
    }

    static std::optional<IntMat> resolve_action(Label l, Int d, const std::vector<Int>& src,
                                                const std::vector<Int>& dst,
                                                const std::map<Label, std::map<Int, IntMat>>& acts)
    {
        auto zero = [&]() { return IntMat(dst.size(), std::vector<Int>(src.size(), 0)); };
        if (l == Label::zero || src.empty() || dst.empty())
            return zero();
        if (l == Label::two) {
            IntMat m = zero();
            for (std::size_t i = 0; i < src.size() && i < dst.size(); ++i)
                m[i][i] = 2;
            return m;
        }
        Label base = l;
        Int scale = 1;
        if (l == Label::two_nu) {
            base = Label::nu;
            scale = 2;
        } else if (l == Label::two_alpha) {
            base = Label::alpha;
            scale = 2;
        }
        auto lt = acts.find(base);
        if (lt != acts.end()) {
            auto dt = lt->second.find(d);
            if (dt != lt->second.end()) {
                IntMat m = dt->second;
                for (auto& row : m)
                    for (auto& v : row)
                        v *= scale;
                return m;
            }
        }
        // finite into free is forced zero
        bool src_finite = true;
        for (Int o : src)
            if (o == 0)
                src_finite = false;
        bool dst_free = true;
        for (Int o : dst)
            if (o != 0)
                dst_free = false;
        if (src_finite && dst_free)
            return zero();
        return std::nullopt;
    }
};

// --- JSON ingestion ----------------------------------------------------------

namespace detail {

inline CoefficientTable::GroupEntry parse_group_entry(const nlohmann::json& j)
{
    CoefficientTable::GroupEntry e;
    for (const auto& item : j) {
        e.orders.push_back(item.at(0).get<Int>());
        e.gens.push_back(item.at(1).get<std::string>());
    }
    return e;
}

inline std::map<Label, std::map<Int, IntMat>> parse_actions(const nlohmann::json& j)
{
    std::map<Label, std::map<Int, IntMat>> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto l = label_from_name(it.key());
        if (!l)
            throw std::invalid_argument("table: unknown label '" + it.key() + "'");
        for (auto dt = it.value().begin(); dt != it.value().end(); ++dt) {
            IntMat m;
            for (const auto& row : dt.value())
                m.push_back(row.get<std::vector<Int>>());
            out[*l][std::stoll(dt.key())] = std::move(m);
        }
    }
    return out;
}

inline CellComplex parse_complex(const nlohmann::json& j)
{
    std::vector<Cell> cells;
    for (const auto& c : j.at("cells"))
        cells.push_back({c.at(0).get<Int>(), c.at(1).get<Int>()});
    std::vector<Attachment> att;
    if (j.contains("attachments"))
        for (const auto& a : j.at("attachments")) {
            auto l = label_from_name(a.at(2).get<std::string>());
            if (!l)
                throw std::invalid_argument("complex: unknown label");
            att.push_back({a.at(0).get<Int>(), a.at(1).get<Int>(), *l});
        }
    return CellComplex(j.value("name", ""), std::move(cells), std::move(att));
}

inline nlohmann::json complex_to_json(const CellComplex& x)
{
    nlohmann::json j;
    j["name"] = x.name();
    j["cells"] = nlohmann::json::array();
    for (const auto& c : x.cells())
        j["cells"].push_back({c.id, c.degree});
    j["attachments"] = nlohmann::json::array();
    for (const auto& a : x.attachments())
        j["attachments"].push_back({a.source, a.target, std::string(label_name(a.label))});
    return j;
}

} // namespace detail

inline CoefficientTable parse_table(const nlohmann::json& j)
{
    CoefficientTable t;
    t.name = j.at("name").get<std::string>();
    if (!j.at("prime").is_null())
        t.prime = j.at("prime").get<int>();
    t.lo = j.at("range").at(0).get<Int>();
    t.hi = j.at("range").at(1).get<Int>();
    t.provenance = j.at("provenance").get<std::string>();
    if (t.provenance.empty())
        throw std::invalid_argument("table '" + t.name + "' lacks provenance");
    for (auto it = j.at("groups").begin(); it != j.at("groups").end(); ++it)
        t.groups[std::stoll(it.key())] = detail::parse_group_entry(it.value());
    if (j.contains("actions"))
        t.actions = detail::parse_actions(j.at("actions"));
    if (j.contains("overrides")) {
        for (const auto& o : j.at("overrides")) {
            CoefficientTable::Override ov;
            ov.complex = detail::parse_complex(o.at("complex"));
            for (auto it = o.at("groups").begin(); it != o.at("groups").end(); ++it)
                ov.groups[std::stoll(it.key())] = detail::parse_group_entry(it.value());
            if (o.contains("actions"))
                ov.actions = detail::parse_actions(o.at("actions"));
            ov.note = o.at("note").get<std::string>();
            if (ov.note.empty())
                throw std::invalid_argument("table override lacks a provenance note");
            t.overrides.push_back(std::move(ov));
        }
    }
    // validate stored actions against the group data
    for (const auto& [l, per_degree] : t.actions) {
        if (t.prime && !label_alive_at(l, *t.prime))
            throw std::invalid_argument("table: label dead at the table prime");
        if (!t.prime && !label_integral(l))
            throw std::invalid_argument("table: 3-local label in an integral table");
        for (const auto& [d, m] : per_degree) {
            AbMap f;
            f.src_orders = t.orders_at(d);
            f.dst_orders = t.orders_at(d + label_stem(l));
            f.m = m;
            if (m.size() != f.dst_orders.size() ||
                (!m.empty() && m[0].size() != f.src_orders.size()))
                throw std::invalid_argument("table: action matrix shape mismatch at degree " +
                                            std::to_string(d));
            if (!f.well_defined())
                throw std::invalid_argument("table: action at degree " + std::to_string(d) +
                                            " is not a well-defined homomorphism");
        }
    }
    return t;
}

inline CoefficientTable load_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open table file " + path);
    nlohmann::json j;
    in >> j;
    return parse_table(j);
}

} // namespace jfcell

#endif
