#include <catch2/catch_amalgamated.hpp>

#include <jfcell/homotopy.hpp>

using namespace jfcell;

namespace {

std::string data_dir()
{
    return JFCELL_SOURCE_DATA_DIR;
}

const CoefficientTable& tmf_table()
{
    static CoefficientTable t = load_table(data_dir() + "/tmf.table");
    return t;
}

const CoefficientTable& tmf3_table()
{
    static CoefficientTable t = load_table(data_dir() + "/tmf_3local.table");
    return t;
}

const CoefficientTable& sphere_table()
{
    static CoefficientTable t = load_table(data_dir() + "/sphere.table");
    return t;
}

} // namespace

TEST_CASE("table loading and validation")
{
    const auto& t = tmf_table();
    CHECK(t.orders_at(3) == std::vector<Int>{24});
    CHECK(t.orders_at(8) == std::vector<Int>{0, 2});
    CHECK_THROWS_AS(t.orders_at(40), TableRangeExceeded);

    // derived actions: two = multiplication by 2, two_nu = doubled nu
    auto two = t.action_at(Label::two, 3);
    REQUIRE(two.has_value());
    CHECK((*two)[0][0] == 2);
    auto tn = t.action_at(Label::two_nu, 3);
    REQUIRE(tn.has_value());
    CHECK((*tn)[0][0] == 2);

    // provenance required
    nlohmann::json bad = {{"name", "x"},   {"prime", nullptr},     {"range", {0, 1}},
                          {"groups", nlohmann::json::object()}, {"provenance", ""}};
    CHECK_THROWS_AS(parse_table(bad), std::invalid_argument);
}

TEST_CASE("single cell reads the table through")
{
    auto r = homotopy_groups(sphere(0), tmf_table(), 0, 8);
    for (const auto& g : r)
        CHECK(g.determined);
    CHECK(r[0].group.orders == std::vector<Int>{0});
    CHECK(r[3].group.orders == std::vector<Int>{24});
    CHECK(r[7].group.is_trivial());

    // sphere table at degree 3: Z/24
    auto s = homotopy_groups(sphere(0), sphere_table(), 3, 3);
    CHECK(s[0].group.orders == std::vector<Int>{24});
}

TEST_CASE("pi_7 TJF_2 = Z/12")
{
    auto r = homotopy_groups(p_complex(2), tmf_table(), 7, 7);
    REQUIRE(r.size() == 1);
    REQUIRE(r[0].determined);
    CHECK(r[0].group.orders == std::vector<Int>{12});
}

TEST_CASE("pi_7 TJF_3 = Z/6")
{
    auto r = homotopy_groups(p_complex(3), tmf_table(), 7, 7);
    REQUIRE(r.size() == 1);
    REQUIRE(r[0].determined);
    CHECK(r[0].group.orders == std::vector<Int>{6});
}

TEST_CASE("shifted complex re-indexes")
{
    for (Int k : {Int(-3), Int(2), Int(5)}) {
        auto base = homotopy_groups(p_complex(3), tmf_table(), 0, 8);
        auto moved = homotopy_groups(shift(p_complex(3), k), tmf_table(), k, 8 + k);
        REQUIRE(base.size() == moved.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK(base[i].determined == moved[i].determined);
            if (base[i].determined)
                CHECK(base[i].group == moved[i].group);
        }
    }
}

TEST_CASE("3-local consistency on the catalog suite")
{
    // 3-localization of the determined integral results agrees with the
    // 3-local computation, in degrees where both are determined
    auto localize_group = [](const AbGroup& g) {
        std::vector<Int> orders;
        for (Int o : g.orders) {
            if (o == 0) {
                orders.push_back(0);
                continue;
            }
            Int three_part = 1;
            Int m = o;
            while (m % 3 == 0) {
                three_part *= 3;
                m /= 3;
            }
            if (three_part > 1)
                orders.push_back(three_part);
        }
        return canonical_group(orders);
    };
    for (Int k = 0; k <= 4; ++k) {
        auto integral = homotopy_groups(p_complex(k), tmf_table(), 0, 10);
        auto local = homotopy_groups(p_complex(k), tmf3_table(), 0, 10);
        for (std::size_t i = 0; i < integral.size(); ++i) {
            if (!integral[i].determined || !local[i].determined)
                continue;
            INFO("k=" << k << " degree=" << integral[i].degree);
            CHECK(localize_group(integral[i].group) == local[i].group);
        }
    }
}

TEST_CASE("odd homotopy of TMF_1(2) dies in the d1-model")
{
    // pi_13: the alpha*beta class on the bottom cell is killed by the image
    // of beta under the alpha-attachment from the 4-cell
    auto x = catalog("tmf12_3local");
    auto r = homotopy_groups(x, tmf3_table(), 13, 13);
    REQUIRE(r.size() == 1);
    CHECK(r[0].determined);
    CHECK(r[0].group.is_trivial());

    // and the even classes survive: pi_8 contains Z{c4} plus the 4-cell unit
    auto r8 = homotopy_groups(x, tmf3_table(), 8, 8);
    REQUIRE(r8[0].determined);
    CHECK(r8[0].group.free_rank() == 2);
}

TEST_CASE("ambiguous extension is reported with both pieces")
{
    // over the sphere table: S^0 u_eta S^2 at degree 2:
    // cell0: coker(eta: pi_1 -> pi_2) = 0... pick degree 3:
    // cell0: pi_3 = Z/24 mod im(eta: pi_... in: from cell2 at level 4:
    // eta-action pi_2 -> pi_3: image 12Z/24; piece0 = Z/24 / <12 eta^2...>
    // = Z/12; cell2: ker(eta: pi_1 -> pi_2) = 0: determined.
    // Horizontal case that genuinely stacks: S^0 u_two S^1 at degree 1:
    // cell0: coker(2: pi_2...) hmm pi_1 = Z/2: in from cell1 at level 2:
    // 2: pi_1 -> pi_1 is zero on Z/2: piece0 = Z/2;
    // cell1: ker(2: pi_0 = Z -> pi_0) = 0: determined Z/2.
    // Use S^1 u_two S^2 at degree 3: cell1: pi_2 = Z/2 (in: 2*pi_2 = 0:
    // piece Z/2); cell2: ker(2: pi_1 -> pi_1) = pi_1 = Z/2: two Z/2 pieces
    // stack: extension NOT forced: ambiguous.
    auto x = CellComplex("", {{0, 1}, {1, 2}}, {{1, 0, Label::two}});
    auto r = homotopy_groups(x, sphere_table(), 3, 3);
    REQUIRE(r.size() == 1);
    CHECK_FALSE(r[0].determined);
    CHECK(r[0].sub.orders == std::vector<Int>{2});
    CHECK(r[0].quotient.orders == std::vector<Int>{2});
    CHECK(r[0].note.find("extension") != std::string::npos);
}

TEST_CASE("hom_groups: table entry for sphere against sphere")
{
    for (Int d = 0; d <= 8; ++d) {
        auto r = hom_groups(sphere(0), sphere(0), tmf_table(), d);
        REQUIRE(r.determined);
        CHECK(r.group == canonical_group(tmf_table().orders_at(d)));
    }
}

TEST_CASE("hom_groups: the alpha-LES window at pi_7")
{
    // [TMF/alpha, TMF[-7]]: pi_8 -a-> pi_11 -> [.] -> pi_7 -a-> pi_10,
    // 3-locally pi_8 = Z (torsion-free target of alpha kills it), pi_11 = 0,
    // pi_7 = 0: determined 0
    auto x = localize(p_complex(2), 3);
    auto r = hom_groups(x, sphere(0), tmf3_table(), -7);
    REQUIRE(r.determined);
    CHECK(r.group.is_trivial());

    // a nonzero value through the same sequence: [TMF/alpha, TMF[0]] at
    // degree 0: coker(alpha: pi_1 -> pi_4) + ker(alpha: pi_0 -> pi_3):
    // ker(1 -> alpha) = 3Z = Z: free: plus coker 0: total Z
    auto r0 = hom_groups(x, sphere(0), tmf3_table(), 0);
    REQUIRE(r0.determined);
    CHECK(r0.group.orders == std::vector<Int>{0});
}

TEST_CASE("hom vanishing: [TJF_-3[5], TJF_6[-11]] = 0 over the 3-local table")
{
    auto x = shift(catalog("tjf_-3"), 5);
    auto y = shift(catalog("tjf_6_3local"), -11);
    auto r = hom_groups(x, y, tmf3_table(), 0);
    REQUIRE(r.determined);
    CHECK(r.group.is_trivial());
}

TEST_CASE("hom_groups AmbiguousInput on missing actions")
{
    // a 2-cell Y with no override and nonzero groups on both sides of a
    // needed action: the beta action on computed coefficients is unknown
    auto y = CellComplex("", {{0, 0}, {1, 11}}, {{1, 0, Label::beta}});
    auto x = localize(p_complex(2), 3); // forces an alpha action on pi_*(Y)
    bool threw = false;
    try {
        for (Int d = -2; d <= 14; ++d)
            (void)hom_groups(x, y, tmf3_table(), d);
    } catch (const AmbiguousInput&) {
        threw = true;
    } catch (const TableRangeExceeded&) {
        // acceptable alternative outcome at window edges
        threw = true;
    }
    CHECK(threw);
}

TEST_CASE("integral table refuses 3-local complexes")
{
    auto x = localize(p_complex(2), 3);
    CHECK_THROWS_AS(homotopy_groups(x, tmf_table(), 0, 1), LocalityMismatch);
}
