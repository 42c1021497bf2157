#ifndef JFCELL_IO_HPP
#define JFCELL_IO_HPP

#include <jfcell/tables.hpp>
#include <jfcell/torsion.hpp>

#include <json.hpp>

namespace jfcell {

// --- QYSeries JSON: bit-exact round trip -------------------------------------
// { "cyclotomic_order": N, "q_denominator": D, "truncation": "p/q",
//   "slope": ["p/q","p/q"] | null,
//   "terms": [[q_num, [[doubled_y, ["p/q", ...]], ...]], ...] }

inline nlohmann::ordered_json series_to_json(const QYSeries& s)
{
    nlohmann::ordered_json j;
    j["cyclotomic_order"] = s.cyclotomic_order();
    j["q_denominator"] = s.q_denominator();
    j["truncation"] = rat_str(s.truncation());
    if (s.slope())
        j["slope"] = {rat_str(s.slope()->sigma), rat_str(s.slope()->r0)};
    else
        j["slope"] = nullptr;
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [e, p] : s.terms()) {
        auto coeffs = nlohmann::ordered_json::array();
        for (const auto& [d, c] : p.terms()) {
            auto vec = nlohmann::ordered_json::array();
            for (const auto& r : c.rep())
                vec.push_back(rat_str(r));
            coeffs.push_back(nlohmann::ordered_json::array({d, vec}));
        }
        terms.push_back(nlohmann::ordered_json::array({e, coeffs}));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline QYSeries series_from_json(const nlohmann::json& j)
{
    const int order = j.at("cyclotomic_order").get<int>();
    QYSeries s(rat_parse(j.at("truncation").get<std::string>()), order,
               j.at("q_denominator").get<Int>());
    if (!j.at("slope").is_null())
        s.set_slope(SlopeCert{rat_parse(j.at("slope").at(0).get<std::string>()),
                              rat_parse(j.at("slope").at(1).get<std::string>())});
    for (const auto& term : j.at("terms")) {
        Int e = term.at(0).get<Int>();
        YLaurent p;
        for (const auto& entry : term.at(1)) {
            std::vector<Rat> rep;
            for (const auto& r : entry.at(1))
                rep.push_back(rat_parse(r.get<std::string>()));
            p.add_term(entry.at(0).get<Int>(), CycScalar::from_poly(order, std::move(rep)));
        }
        s.set_term(e, std::move(p));
    }
    return s;
}

inline nlohmann::ordered_json jacobi_to_json(const JacobiForm& f)
{
    nlohmann::ordered_json j = series_to_json(f.series());
    j["k"] = f.k();
    j["degree"] = f.degree();
    return j;
}

inline JacobiForm jacobi_from_json(const nlohmann::json& j)
{
    return JacobiForm(series_from_json(j), j.at("k").get<Int>(), j.at("degree").get<Int>());
}

inline nlohmann::ordered_json modular_to_json(const ModularForm& f)
{
    nlohmann::ordered_json j = series_to_json(f.series());
    j["degree"] = f.degree();
    return j;
}

// TorsionRestriction: components keyed by "alpha,beta".
inline nlohmann::ordered_json torsion_to_json(const TorsionRestriction& r)
{
    nlohmann::ordered_json j;
    j["n"] = r.n();
    j["degree"] = r.degree();
    j["normalized"] = r.normalized();
    auto comps = nlohmann::ordered_json::object();
    for (const auto& [key, s] : r.components())
        comps[std::to_string(key.first) + "," + std::to_string(key.second)] = series_to_json(s);
    j["components"] = std::move(comps);
    return j;
}

// --- CellComplex JSON ---------------------------------------------------------

inline nlohmann::ordered_json cells_to_json(const CellComplex& x)
{
    nlohmann::ordered_json j;
    j["name"] = x.name();
    j["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : x.cells())
        j["cells"].push_back({c.id, c.degree});
    j["attachments"] = nlohmann::ordered_json::array();
    for (const auto& a : x.attachments())
        j["attachments"].push_back({a.source, a.target, std::string(label_name(a.label))});
    return j;
}

inline CellComplex cells_from_json(const nlohmann::json& j)
{
    return detail::parse_complex(j);
}

inline CellComplex load_complex(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open complex file " + path);
    nlohmann::json j;
    in >> j;
    return cells_from_json(j);
}

// --- CSV ---------------------------------------------------------------------

// rows: q-exponent; one column per y-exponent of the form.
inline std::string series_to_csv(const QYSeries& s)
{
    std::set<Int> ycols;
    for (const auto& [e, p] : s.terms())
        for (const auto& [d, c] : p.terms())
            ycols.insert(d);
    if (ycols.empty())
        ycols.insert(0);
    std::string out = "q_exponent";
    auto ylabel = [](Int d) {
        if (d % 2 == 0)
            return "y^" + std::to_string(d / 2);
        return "y^" + std::to_string(d) + "/2";
    };
    for (Int d : ycols)
        out += "," + ylabel(d);
    out += "\n";
    for (const auto& [e, p] : s.terms()) {
        out += rat_str(s.q_exponent(e));
        for (Int d : ycols) {
            CycScalar c = p.at(d);
            out += ",";
            if (c.is_rational())
                out += rat_str(c.rational_value());
            else {
                // cyclotomic entries: power-basis vector
                std::string v = "[";
                for (std::size_t i = 0; i < c.rep().size(); ++i) {
                    if (i)
                        v += ";";
                    v += rat_str(c.rep()[i]);
                }
                out += v + "]";
            }
        }
        out += "\n";
    }
    return out;
}

// membership coordinates as CSV (rows: monomial; columns: i, j, l, value)
inline std::string membership_to_csv(const MembershipResult& m)
{
    std::string out = "c4_power,c6_power,delta_power,coordinate\n";
    for (const auto& [k, v] : m.coordinates)
        out += std::to_string(k.i) + "," + std::to_string(k.j) + "," + std::to_string(k.l) +
               "," + rat_str(v) + "\n";
    return out;
}

// coefficient table of the degree-m spanning set next to f:
// rows are q-exponents, one column per monomial plus the input.
inline std::string mf_span_table_csv(const QYSeries& f, Int degree, Int pole_bound)
{
    const auto keys = mf_spanning_monomials(degree, pole_bound);
    mpz_class top_z = rat_floor(f.truncation());
    Int top = static_cast<Int>(top_z.get_si());
    std::string out = "q_exponent";
    std::vector<QYSeries> basis;
    for (const auto& k : keys) {
        out += ",c4^" + std::to_string(k.i) + "c6^" + std::to_string(k.j) + "D^" +
               std::to_string(k.l);
        basis.push_back(mf_monomial(k.i, k.j, k.l, top).series());
    }
    out += ",input\n";
    for (Int e = -pole_bound; e < top; ++e) {
        out += std::to_string(e);
        for (const auto& b : basis)
            out += "," + rat_str(b.coefficient(rat(e), rat(0)).rational_value());
        out += "," + rat_str(f.coefficient(rat(e), rat(0)).rational_value()) + "\n";
    }
    return out;
}

} // namespace jfcell

#endif
