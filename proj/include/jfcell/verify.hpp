#ifndef JFCELL_VERIFY_HPP
#define JFCELL_VERIFY_HPP

#include <jfcell/homotopy.hpp>
#include <jfcell/io.hpp>
#include <jfcell/numeric.hpp>
#include <jfcell/render.hpp>

#include <chrono>
#include <functional>
#include <random>

namespace jfcell {

struct CheckResult {
    std::string id;
    enum Status { pass, fail, skipped } status = skipped;
    std::string detail;
    double elapsed_seconds = 0.0;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool ok() const
    {
        for (const auto& c : checks)
            if (c.status == CheckResult::fail)
                return false;
        return true;
    }

    int exit_status() const { return ok() ? 0 : 1; }
};

struct VerifyOptions {
    Int truncation_identity = 30; // identity checks
    Int truncation_torsion = 10;  // certified torsion window
    std::string data_dir;
    int cases = 1000; // randomized cases per property suite
};

namespace verify_detail {

using CheckFn = std::function<std::pair<bool, std::string>(const VerifyOptions&)>;

struct Check {
    std::string suite;
    std::string id;
    CheckFn fn;
};

inline QYSeries random_series(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> nterms(0, 5), qe(-3, 6), coeff(-5, 5), den(1, 2);
    QYSeries s(rat(8), 1, den(rng));
    std::uniform_int_distribution<Int> ye(-4, 4);
    for (int i = 0, n = nterms(rng); i < n; ++i) {
        Int e = qe(rng), d = ye(rng), c = coeff(rng);
        if (s.q_exponent(e) < s.truncation())
            s.add_monomial(e, d, CycScalar(rat(c)));
    }
    s.set_slope(SlopeCert{rat(0), rat(10)});
    return s;
}

inline CellComplex random_complex(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> ncells(1, 5), basedeg(-6, 6), pick(0, 3);
    std::vector<Cell> cells;
    std::vector<Attachment> att;
    Int id = 0;
    cells.push_back({id++, basedeg(rng)});
    int n = ncells(rng);
    for (int i = 1; i < n; ++i) {
        const Cell t = cells[rng() % cells.size()];
        Label l = std::vector<Label>{Label::two, Label::eta, Label::nu, Label::two_nu}[pick(rng)];
        cells.push_back({id, t.degree + label_stem(l) + 1});
        att.push_back({id, t.id, l});
        ++id;
    }
    return CellComplex("", cells, att);
}

inline const std::vector<Check>& registry()
{
    static const std::vector<Check> checks = [] {
        std::vector<Check> v;
        auto add = [&](std::string suite, std::string id, CheckFn fn) {
            v.push_back({std::move(suite), std::move(id), std::move(fn)});
        };

        // --- series ----------------------------------------------------
        add("series", "series.ring_axioms", [](const VerifyOptions& o) {
            std::mt19937_64 rng(101u);
            for (int i = 0; i < o.cases; ++i) {
                auto f = random_series(rng), g = random_series(rng), h = random_series(rng);
                auto l = f * (g + h);
                auto r = f * g + f * h;
                if (!QYSeries::agree_below(l, r, std::min(l.truncation(), r.truncation())))
                    return std::make_pair(false, "distributivity failed at case " +
                                                     std::to_string(i));
                auto a1 = (f + g) + h, a2 = f + (g + h);
                if (!QYSeries::agree_below(a1, a2, std::min(a1.truncation(), a2.truncation())))
                    return std::make_pair(false, "associativity failed at case " +
                                                     std::to_string(i));
            }
            return std::make_pair(true, std::to_string(o.cases) + " cases");
        });
        add("series", "series.truncation_soundness", [](const VerifyOptions& o) {
            std::mt19937_64 rng(102u);
            for (int i = 0; i < o.cases; ++i) {
                auto f = random_series(rng), g = random_series(rng);
                auto lo = f * g;
                QYSeries fw(f.truncation() + 4, f.cyclotomic_order(), f.q_denominator());
                for (const auto& [e, p] : f.terms())
                    fw.set_term(e, p);
                fw.set_slope(f.slope());
                QYSeries gw(g.truncation() + 4, g.cyclotomic_order(), g.q_denominator());
                for (const auto& [e, p] : g.terms())
                    gw.set_term(e, p);
                gw.set_slope(g.slope());
                if (!QYSeries::agree_below(lo, fw * gw, lo.truncation()))
                    return std::make_pair(false, "recomputation changed certified data at case " +
                                                     std::to_string(i));
            }
            return std::make_pair(true, std::to_string(o.cases) + " cases");
        });
        add("series", "series.slope_soundness", [](const VerifyOptions& o) {
            std::mt19937_64 rng(103u);
            for (int i = 0; i < o.cases; ++i) {
                auto f = random_series(rng), g = random_series(rng);
                if (!(f + g).slope_holds() || !(f * g).slope_holds())
                    return std::make_pair(false, "certificate violated at case " +
                                                     std::to_string(i));
            }
            return std::make_pair(true, std::to_string(o.cases) + " cases");
        });
        add("series", "series.json_round_trip", [](const VerifyOptions& o) {
            std::mt19937_64 rng(104u);
            int cases = std::max(1, o.cases / 5);
            for (int i = 0; i < cases; ++i) {
                auto f = random_series(rng);
                auto j = series_to_json(f);
                auto back = series_from_json(nlohmann::json::parse(j.dump()));
                if (series_to_json(back).dump() != j.dump())
                    return std::make_pair(false, "round trip not bit-exact at case " +
                                                     std::to_string(i));
            }
            return std::make_pair(true, std::to_string(cases) + " cases");
        });

        // --- jacobi ------------------------------------------------------
        add("jacobi", "jacobi.mf_relation", [](const VerifyOptions&) {
            const Int T = 50;
            auto c4 = mf_c4(T), c6 = mf_c6(T), d = mf_delta(T);
            auto lhs = (c4 * c4 * c4).series() - (c6 * c6).series() -
                       d.series().scaled(CycScalar(rat(1728)));
            if (lhs.truncation() < rat(T) || !lhs.is_zero())
                return std::make_pair(false, std::string("relation fails"));
            return std::make_pair(true, std::string("c4^3 - c6^2 - 1728 Delta = 0 to order 50"));
        });
        add("jacobi", "jacobi.ac_equals_a2z", [](const VerifyOptions& o) {
            const Int T = o.truncation_identity;
            auto a = gen_a(T);
            auto lhs = a * gen_c(T);
            auto rhs = scale_z(a, 2);
            bool ok = lhs.k() == rhs.k() && lhs.degree() == rhs.degree() &&
                      QYSeries::agree_below(lhs.series(), rhs.series(), rat(T));
            return std::make_pair(ok, "a*c = a(2z) to order " + std::to_string(T));
        });
        add("jacobi", "jacobi.restrictions", [](const VerifyOptions& o) {
            const Int T = o.truncation_identity;
            auto ra = restrict_z0(gen_a(T));
            auto rb = restrict_z0(gen_b(T));
            auto rc = restrict_z0(gen_c(T));
            bool ok = ra.series().is_zero() && ra.degree() == -2;
            ok = ok && rc.degree() == 0 &&
                 rc.series().coefficient(rat(0), rat(0)) == CycScalar(rat(2)) &&
                 rc.series().terms().size() == 1;
            ok = ok && rb.degree() == 0 &&
                 rb.series().coefficient(rat(0), rat(0)) == CycScalar(rat(12)) &&
                 rb.series().terms().size() == 1;
            return std::make_pair(ok, std::string("a -> 0, b -> 12, c -> 2"));
        });
        add("jacobi", "jacobi.b_q0", [](const VerifyOptions& o) {
            auto b = gen_b(std::max<Int>(4, o.truncation_torsion));
            bool ok = b.series().coefficient(rat(0), rat(1)) == CycScalar(rat(1)) &&
                      b.series().coefficient(rat(0), rat(0)) == CycScalar(rat(10)) &&
                      b.series().coefficient(rat(0), rat(-1)) == CycScalar(rat(1));
            return std::make_pair(ok, std::string("q^0 coefficient is y + 10 + y^-1"));
        });
        add("jacobi", "jacobi.b_wp_oracle", [](const VerifyOptions&) {
            using cplx = std::complex<double>;
            const cplx tau(0.0, 1.3), z(0.21, 0.13);
            const cplx q = detail::cexp2pi(tau), y = detail::cexp2pi(z);
            cplx wp = 1.0 / 12.0 + y / ((1.0 - y) * (1.0 - y));
            for (int n = 1; n < 60; ++n) {
                cplx qn = std::pow(q, n);
                for (int dd = 1; dd <= n; ++dd)
                    if (n % dd == 0)
                        wp += qn * static_cast<double>(dd) *
                              (std::pow(y, dd) - 2.0 + std::pow(y, -dd));
            }
            cplx sqy = detail::cexp2pi(z / 2.0);
            cplx prod = sqy - 1.0 / sqy;
            for (int m = 1; m < 60; ++m) {
                cplx qm = std::pow(q, m);
                prod *= (1.0 - qm * y) * (1.0 - qm / y) / ((1.0 - qm) * (1.0 - qm));
            }
            cplx oracle = 12.0 * wp * prod * prod;
            double tail = 0.0;
            cplx engine = eval_series(gen_b(40).series(), tau, z, &tail);
            bool ok = tail < 1e-7 && std::abs(engine - oracle) < 1e-6;
            return std::make_pair(ok, "residual " + std::to_string(std::abs(engine - oracle)));
        });
        add("jacobi", "jacobi.numeric_covariance", [](const VerifyOptions&) {
            using cplx = std::complex<double>;
            const cplx tau(0.0, 2.0), z(0.1, 0.05);
            const std::array<Int, 4> S = {0, -1, 1, 0}, I = {1, 0, 0, 1};
            double worst = 0.0;
            for (const auto& g : {gen_a(40), gen_b(40), gen_c(40)}) {
                auto s = numeric_covariance_check(g, S, {0, 0}, tau, z, 1e-6);
                std::pair<Int, Int> shift =
                    g.k() < 3 ? std::pair<Int, Int>{1, 0} : std::pair<Int, Int>{0, 1};
                auto e = numeric_covariance_check(g, I, shift, tau, z, 1e-6);
                if (!s.pass || !e.pass)
                    return std::make_pair(false, std::string("law violated for k = ") +
                                                     std::to_string(g.k()));
                worst = std::max({worst, s.residual, e.residual});
            }
            return std::make_pair(true, "worst residual " + std::to_string(worst));
        });
        add("jacobi", "jacobi.grading", [](const VerifyOptions&) {
            auto a = gen_a(8);
            auto b = gen_b(8);
            bool ok = scale_z(a, 3).k() == 9 && scale_z(a, 3).degree() == 16;
            ok = ok && (a * b).k() == 3 && (a * b).degree() == 4;
            auto s6 = scale_z(scale_z(a, 2), 3);
            ok = ok && s6.k() == scale_z(a, 6).k() && s6.degree() == scale_z(a, 6).degree();
            ok = ok && s6.weight() == a.weight();
            return std::make_pair(ok, std::string("k, degree and weight bookkeeping"));
        });

        // --- torsion -----------------------------------------------------
        add("torsion", "torsion.composite_null", [](const VerifyOptions& o) {
            const Int target = o.truncation_torsion;
            const Int T = 4 * target + 8; // inputs sized so outputs certify `target`
            auto a = gen_a(T);
            auto b = gen_b(T);
            JacobiForm one(QYSeries::one(rat(T)), 0, 0);
            for (Int n : {Int(2), Int(3)}) {
                auto anz = scale_z(a, n);
                for (const auto& psi : {one, a, b, a * a}) {
                    auto phi = anz * psi;
                    auto R = torsion_restrict(phi, n, phi.k() != n * n);
                    for (const auto& [key, comp] : R.components()) {
                        if (comp.truncation() < rat(target))
                            return std::make_pair(false, std::string("window too small"));
                        if (!comp.truncated(rat(target)).is_zero())
                            return std::make_pair(
                                false, "nonzero component at n = " + std::to_string(n));
                    }
                }
            }
            return std::make_pair(true, std::string("a(nz) psi vanishes at n-torsion, n = 2, 3"));
        });
        add("torsion", "torsion.k4_membership", [](const VerifyOptions& o) {
            const Int target = std::max<Int>(12, o.truncation_torsion);
            const Int T = 2 * target + 4;
            auto a = gen_a(T);
            auto b = gen_b(T);
            auto c = gen_c(T);
            struct Case {
                JacobiForm f;
                const char* n;
            };
            for (const auto& [phi, nm] : std::vector<Case>{{a * a * a * a, "a^4"},
                                                           {a * a * b, "a^2b"},
                                                           {b * b, "b^2"},
                                                           {a * c, "ac"}}) {
                auto rep = torsion_sum(torsion_restrict(phi, 2), 2);
                if (rep.sum.truncation() < rat(target))
                    return std::make_pair(false, std::string("window too small for ") + nm);
                if (!rep.membership.in_span || !rep.membership.integral || !rep.sum_integral ||
                    !rep.components_integral)
                    return std::make_pair(false, std::string("membership failed for ") + nm);
            }
            return std::make_pair(true,
                                  std::string("a^4, a^2b, b^2, ac land in MF with integer "
                                              "coordinates at n = 2"));
        });
        add("torsion", "torsion.n1_consistency", [](const VerifyOptions& o) {
            auto a = gen_a(o.truncation_torsion + 2);
            auto R = torsion_restrict(a, 1);
            bool ok = R.components().size() == 1 && R.component(0, 0).is_zero();
            auto z0 = restrict_z0(a);
            ok = ok && z0.series().is_zero();
            return std::make_pair(ok, std::string("n = 1 torsion equals restrict_z0"));
        });

        // --- cells -------------------------------------------------------
        add("cells", "cells.golden_catalog", [](const VerifyOptions& o) {
            std::vector<std::string> names = {"C", "cofib_c", "tmf_c2", "tmf_c3_3local"};
            for (Int k = -4; k <= 4; ++k)
                names.push_back("tjf_" + std::to_string(k));
            for (Int n = 0; n < 8; ++n)
                names.push_back("tmf_c2_" + std::to_string(n) + "lambda");
            for (const auto& name : names) {
                CellComplex golden = load_complex(o.data_dir + "/goldens/" + name + ".json");
                auto rep = diagram_compare(catalog(name), golden);
                if (!rep.iso)
                    return std::make_pair(false, name + ": " + rep.mismatch);
            }
            return std::make_pair(true, std::to_string(names.size()) + " golden diagrams");
        });
        add("cells", "cells.dual_shift_identity", [](const VerifyOptions&) {
            auto rep = diagram_compare(shift(dual(catalog("C")), -8), catalog("tmf_c2_7lambda"));
            return std::make_pair(rep.iso, std::string("shift(dual(C), -8) = tmf_c2_7lambda"));
        });
        add("cells", "cells.dual_involution", [](const VerifyOptions& o) {
            std::mt19937_64 rng(105u);
            for (int i = 0; i < o.cases; ++i) {
                auto r = random_complex(rng);
                if (!diagram_compare(dual(dual(r)), r).iso)
                    return std::make_pair(false, "involution failed at case " + std::to_string(i));
                if (!diagram_compare(dual(shift(r, 3)), shift(dual(r), -3)).iso)
                    return std::make_pair(false, "shift exchange failed at case " +
                                                     std::to_string(i));
            }
            return std::make_pair(true, std::to_string(o.cases) + " cases");
        });
        add("cells", "cells.simplify_sum", [](const VerifyOptions& o) {
            std::mt19937_64 rng(106u);
            for (int i = 0; i < o.cases; ++i) {
                auto a = random_complex(rng), b = random_complex(rng);
                auto parts = simplify(direct_sum(a, b));
                std::size_t total = 0;
                for (const auto& p : parts)
                    total += p.cells().size();
                if (total != a.cells().size() + b.cells().size() || parts.size() < 2)
                    return std::make_pair(false, "summands lost at case " + std::to_string(i));
            }
            return std::make_pair(true, std::to_string(o.cases) + " cases");
        });

        // --- homotopy ----------------------------------------------------
        add("homotopy", "homotopy.pi7_tjf2", [](const VerifyOptions& o) {
            auto t = load_table(o.data_dir + "/tmf.table");
            auto r = homotopy_groups(p_complex(2), t, 7, 7);
            bool ok = r[0].determined && r[0].group.orders == std::vector<Int>{12};
            return std::make_pair(ok, "pi_7 TJF_2 = " + r[0].str());
        });
        add("homotopy", "homotopy.pi7_tjf3", [](const VerifyOptions& o) {
            auto t = load_table(o.data_dir + "/tmf.table");
            auto r = homotopy_groups(p_complex(3), t, 7, 7);
            bool ok = r[0].determined && r[0].group.orders == std::vector<Int>{6};
            return std::make_pair(ok, "pi_7 TJF_3 = " + r[0].str());
        });
        add("homotopy", "homotopy.hom_vanishing", [](const VerifyOptions& o) {
            auto t = load_table(o.data_dir + "/tmf_3local.table");
            auto r = hom_groups(shift(catalog("tjf_-3"), 5), shift(catalog("tjf_6_3local"), -11),
                                t, 0);
            bool ok = r.determined && r.group.is_trivial();
            return std::make_pair(ok, "[TJF_-3[5], TJF_6[-11]] = " + r.str());
        });
        add("homotopy", "homotopy.shift_reindex", [](const VerifyOptions& o) {
            auto t = load_table(o.data_dir + "/tmf.table");
            auto base = homotopy_groups(p_complex(3), t, 0, 8);
            auto moved = homotopy_groups(shift(p_complex(3), 2), t, 2, 10);
            for (std::size_t i = 0; i < base.size(); ++i) {
                if (base[i].determined != moved[i].determined)
                    return std::make_pair(false, std::string("status changed under shift"));
                if (base[i].determined && !(base[i].group == moved[i].group))
                    return std::make_pair(false, std::string("groups changed under shift"));
            }
            return std::make_pair(true, std::string("re-indexing matches"));
        });
        add("homotopy", "homotopy.local_consistency", [](const VerifyOptions& o) {
            auto t = load_table(o.data_dir + "/tmf.table");
            auto t3 = load_table(o.data_dir + "/tmf_3local.table");
            auto localize3 = [](const AbGroup& g) {
                std::vector<Int> orders;
                for (Int x : g.orders) {
                    if (x == 0) {
                        orders.push_back(0);
                        continue;
                    }
                    Int three = 1;
                    while (x % 3 == 0) {
                        three *= 3;
                        x /= 3;
                    }
                    if (three > 1)
                        orders.push_back(three);
                }
                return canonical_group(orders);
            };
            for (Int k = 0; k <= 4; ++k) {
                auto gi = homotopy_groups(p_complex(k), t, 0, 10);
                auto gl = homotopy_groups(p_complex(k), t3, 0, 10);
                for (std::size_t i = 0; i < gi.size(); ++i) {
                    if (!gi[i].determined || !gl[i].determined)
                        continue;
                    if (!(localize3(gi[i].group) == gl[i].group))
                        return std::make_pair(false,
                                              "mismatch at k = " + std::to_string(k) +
                                                  ", degree " + std::to_string(gi[i].degree));
                }
            }
            return std::make_pair(true, std::string("P_0..P_4 over degrees 0..10"));
        });

        return v;
    }();
    return checks;
}

} // namespace verify_detail

// Runs the named suite ("series", "jacobi", "torsion", "cells", "homotopy" or
// "all") in declaration order.
inline VerificationReport run_verification(const std::string& suite, const VerifyOptions& opts)
{
    VerificationReport report;
    for (const auto& check : verify_detail::registry()) {
        CheckResult res;
        res.id = check.id;
        if (suite != "all" && suite != check.suite) {
            res.status = CheckResult::skipped;
            report.checks.push_back(std::move(res));
            continue;
        }
        auto start = std::chrono::steady_clock::now();
        try {
            auto [ok, detail] = check.fn(opts);
            res.status = ok ? CheckResult::pass : CheckResult::fail;
            res.detail = detail;
        } catch (const std::exception& e) {
            res.status = CheckResult::fail;
            res.detail = std::string("exception: ") + e.what();
        }
        res.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.checks.push_back(std::move(res));
    }
    return report;
}

} // namespace jfcell

#endif
