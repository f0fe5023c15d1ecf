#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "heiskit/symplectic.hpp"

#include "catalogue.hpp"

using namespace heiskit;

namespace {

SelfDuality scrambled(const SelfDuality& d, const Homomorphism& xi) {
    // nabla'(x)(y) = nabla(xi x)(xi y): still a symplectic self-duality
    REQUIRE(xi.is_bijective());
    DualGroup dk = dual_group(d.K());
    std::vector<std::vector<std::int64_t>> cols;
    for (std::size_t i = 0; i < d.K().rank(); ++i) {
        std::vector<std::int64_t> c(d.K().rank(), 0);
        c[i] = 1;
        GroupElement ui = d.K().element(std::move(c));
        std::vector<std::vector<std::int64_t>> chi(dk.homs.target.rank(),
                                                   std::vector<std::int64_t>(d.K().rank(), 0));
        for (std::size_t j = 0; j < d.K().rank(); ++j) {
            std::vector<std::int64_t> cj(d.K().rank(), 0);
            cj[j] = 1;
            RationalResidue v = d.pair(xi.apply(ui), xi.apply(d.K().element(std::move(cj))));
            if (dk.homs.target.rank() > 0 && !v.is_zero())
                chi[0][j] = v.num() * (dk.modulus / v.den());
        }
        cols.push_back(dk.homs.index_of(Homomorphism(d.K(), dk.homs.target, std::move(chi)))
                           .coords());
    }
    std::vector<std::vector<std::int64_t>> entries(dk.group().rank(),
                                                   std::vector<std::int64_t>(d.K().rank(), 0));
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (std::size_t t = 0; t < dk.group().rank(); ++t) entries[t][i] = cols[i][t];
    return SelfDuality(d.K(), Homomorphism(d.K(), dk.group(), std::move(entries)));
}

} // namespace

TEST_CASE("standard self-dualities") {
    SUBCASE("trivial A gives the trivial duality") {
        SelfDuality d = standard_self_duality(FiniteAbelianGroup());
        CHECK(d.K().is_trivial());
        CHECK(is_symplectic(d));
    }
    SUBCASE("A = Z2: b((x,f),(y,g)) = (gx - fy)/2") {
        SelfDuality d = standard_self_duality(FiniteAbelianGroup::cyclic(2));
        CHECK(d.K() == FiniteAbelianGroup({2, 2}));
        for (std::int64_t r = 0; r < 4; ++r)
            for (std::int64_t s = 0; s < 4; ++s) {
                GroupElement u = d.K().element_at(r), v = d.K().element_at(s);
                std::int64_t want = v.coord(1) * u.coord(0) - u.coord(1) * v.coord(0);
                CHECK(d.pair(u, v) == RationalResidue(want, 2));
            }
    }
    SUBCASE("A = Z3: b((1,0),(0,1)) = 1/3") {
        SelfDuality d = standard_self_duality(FiniteAbelianGroup::cyclic(3));
        CHECK(d.pair(d.K().element({1, 0}), d.K().element({0, 1})) == RationalResidue(1, 3));
        CHECK(d.pair(d.K().element({0, 1}), d.K().element({1, 0})) == RationalResidue(2, 3));
    }
    SUBCASE("standard dualities are symplectic for every small A") {
        for (const auto& a : testcat::abelian_groups_up_to(8))
            CHECK(is_symplectic(standard_self_duality(a)));
    }
}

TEST_CASE("is_symplectic rejects the multiplication duality on Z3") {
    FiniteAbelianGroup z3 = FiniteAbelianGroup::cyclic(3);
    DualGroup d3 = dual_group(z3);
    SelfDuality d(z3, Homomorphism(z3, d3.group(), {{1}}));
    CHECK(d.pair(z3.element({1}), z3.element({1})) == RationalResidue(1, 3));
    CHECK_FALSE(is_symplectic(d));
}

TEST_CASE("maximal isotropic extension") {
    SUBCASE("A x {0} and {0} x dual(A) are already maximal") {
        for (const auto& a : testcat::abelian_groups_up_to(6)) {
            SelfDuality d = standard_self_duality(a);
            std::vector<GroupElement> agens, dgens;
            for (std::size_t i = 0; i < a.rank(); ++i) {
                std::vector<std::int64_t> c(d.K().rank(), 0);
                c[i] = 1;
                agens.push_back(d.K().element(std::move(c)));
            }
            for (std::size_t j = a.rank(); j < d.K().rank(); ++j) {
                std::vector<std::int64_t> c(d.K().rank(), 0);
                c[j] = 1;
                dgens.push_back(d.K().element(std::move(c)));
            }
            SubgroupView ha = subgroup_closure(d.K(), agens);
            CHECK(maximal_isotropic_extend(d, ha).elements() == ha.elements());
            SubgroupView hd = subgroup_closure(d.K(), dgens);
            CHECK(maximal_isotropic_extend(d, hd).elements() == hd.elements());
            // Lagrangian size |A| on standard dualities
            CHECK(ha.order() == a.order());
            CHECK(hd.order() == a.order());
        }
    }
    SUBCASE("{0} extends to a maximal isotropic of Lagrangian size") {
        SelfDuality d = standard_self_duality(FiniteAbelianGroup::cyclic(2));
        SubgroupView m = maximal_isotropic_extend(d, subgroup_closure(d.K(), {}));
        CHECK(m.order() == 2);
    }
    SUBCASE("non-isotropic input is rejected") {
        SelfDuality d = standard_self_duality(FiniteAbelianGroup::cyclic(2));
        SubgroupView full = subgroup_closure(
            d.K(), {d.K().element({1, 0}), d.K().element({0, 1})});
        CHECK_THROWS_AS(maximal_isotropic_extend(d, full), input_error);
    }
    SUBCASE("trivial K") {
        SelfDuality d = standard_self_duality(FiniteAbelianGroup());
        CHECK(maximal_isotropic_extend(d, subgroup_closure(d.K(), {})).order() == 1);
    }
}

TEST_CASE("symplectic decomposition") {
    SUBCASE("trivial K") {
        SymplecticDecomposition dec = symplectic_decompose(
            FiniteAbelianGroup(), standard_self_duality(FiniteAbelianGroup()).form());
        CHECK(dec.A.is_trivial());
    }
    SUBCASE("K = Z2 x Z2 with b(e1, e2) = 1/2 gives A = Z2") {
        FiniteAbelianGroup k({2, 2});
        FiniteAbelianGroup z2 = FiniteAbelianGroup::cyclic(2);
        std::vector<std::vector<GroupElement>> w(2, std::vector<GroupElement>(2, z2.zero()));
        w[0][1] = z2.element({1});
        w[1][0] = z2.element({1});
        SymplecticDecomposition dec = symplectic_decompose(k, BilinearForm(k, k, z2, w));
        CHECK(dec.A == FiniteAbelianGroup::cyclic(2));
    }
    SUBCASE("K = Z4 x Z4 standard form gives A = Z4") {
        SymplecticDecomposition dec = symplectic_decompose(
            standard_self_duality(FiniteAbelianGroup::cyclic(4)).K(),
            standard_self_duality(FiniteAbelianGroup::cyclic(4)).form());
        CHECK(dec.A == FiniteAbelianGroup::cyclic(4));
    }
    SUBCASE("non-alternating or non-separated forms are rejected") {
        CHECK_THROWS_AS(symplectic_decompose(FiniteAbelianGroup::cyclic(3),
                                             testcat::mult_form(3)),
                        input_error);
        FiniteAbelianGroup k({2, 2});
        FiniteAbelianGroup z2 = FiniteAbelianGroup::cyclic(2);
        CHECK_THROWS_AS(symplectic_decompose(k, BilinearForm::zero(k, k, z2)), input_error);
    }
    SUBCASE("every standard duality decomposes back to A, scrambles included") {
        for (const auto& a : testcat::abelian_groups_up_to(8)) {
            SelfDuality d = standard_self_duality(a);
            SymplecticDecomposition dec = symplectic_decompose(d.K(), d.form());
            CHECK(canonical_form(dec.A).group == canonical_form(a).group);
            CHECK(dec.A.order() * dec.A.order() == d.K().order());
            // A x dual(A) is abstractly K
            CHECK(canonical_form(product(dec.A, dec.a_dual.group())).group ==
                  canonical_form(d.K()).group);
        }
    }
    SUBCASE("step (ii) of the peeling: the character b(x,.) attains the full order") {
        for (const auto& a : testcat::abelian_groups_up_to(9)) {
            SelfDuality d = standard_self_duality(a);
            if (d.K().is_trivial()) continue;
            std::int64_t m = d.K().exponent();
            for (std::int64_t r = 0; r < d.K().order(); ++r) {
                GroupElement x = d.K().element_at(r);
                if (x.order() != m) continue;
                std::int64_t best = 1;
                for (std::int64_t s = 0; s < d.K().order(); ++s)
                    best = std::max(best, d.pair(x, d.K().element_at(s)).order());
                CHECK(best == m);
            }
        }
    }
    SUBCASE("oracle: |K| <= 16, the decomposed A is the unique base group") {
        for (const auto& a : testcat::abelian_groups_up_to(4)) {
            SelfDuality d = standard_self_duality(a);
            SymplecticDecomposition dec = symplectic_decompose(d.K(), d.form());
            std::int64_t root = dec.A.order();
            REQUIRE(root * root == d.K().order());
            for (const auto& cand : testcat::abelian_groups_of_order(root)) {
                SelfDuality ref = standard_self_duality(cand);
                auto ref_pair = [&](const GroupElement& x, const GroupElement& y) {
                    return ref.pair(x, y);
                };
                auto tgt_pair = [&](const GroupElement& x, const GroupElement& y) {
                    return d.pair(x, y);
                };
                bool witness = testcat::exists_pairing_witness(ref.K(), ref_pair, d.K(), tgt_pair);
                bool same = canonical_form(cand).group == canonical_form(dec.A).group;
                CHECK(witness == same);
            }
        }
    }
}

TEST_CASE("duality isomorphism") {
    SUBCASE("a duality is isomorphic to itself") {
        SelfDuality d = standard_self_duality(FiniteAbelianGroup({2, 2}));
        DualityIsomorphism iso = dualities_isomorphic(d, d);
        CHECK(iso.isomorphic);
        REQUIRE(iso.witness.has_value());
        CHECK(iso.witness->is_bijective());
    }
    SUBCASE("scrambled presentations stay isomorphic") {
        SelfDuality d = standard_self_duality(FiniteAbelianGroup::cyclic(2));
        // shear automorphism of Z2 x Z2
        Homomorphism xi(d.K(), d.K(), {{1, 1}, {0, 1}});
        SelfDuality ds = scrambled(d, xi);
        CHECK(is_symplectic(ds));
        CHECK(dualities_isomorphic(d, ds).isomorphic);
    }
    SUBCASE("Z4 vs Z2 x Z2 base groups are not isomorphic, oracle agrees") {
        SelfDuality d1 = standard_self_duality(FiniteAbelianGroup::cyclic(4));
        SelfDuality d2 = standard_self_duality(FiniteAbelianGroup({2, 2}));
        CHECK(d1.K().order() == d2.K().order());
        DualityIsomorphism iso = dualities_isomorphic(d1, d2);
        CHECK_FALSE(iso.isomorphic);
        auto p1 = [&](const GroupElement& x, const GroupElement& y) { return d1.pair(x, y); };
        auto p2 = [&](const GroupElement& x, const GroupElement& y) { return d2.pair(x, y); };
        CHECK_FALSE(testcat::exists_pairing_witness(d1.K(), p1, d2.K(), p2));
    }
    SUBCASE("oracle agreement for |K| <= 16") {
        auto small = testcat::abelian_groups_up_to(4);
        for (const auto& a1 : small)
            for (const auto& a2 : small) {
                SelfDuality d1 = standard_self_duality(a1);
                SelfDuality d2 = standard_self_duality(a2);
                if (d1.K().order() != d2.K().order()) continue;
                auto p1 = [&](const GroupElement& x, const GroupElement& y) {
                    return d1.pair(x, y);
                };
                auto p2 = [&](const GroupElement& x, const GroupElement& y) {
                    return d2.pair(x, y);
                };
                CHECK(dualities_isomorphic(d1, d2).isomorphic ==
                      testcat::exists_pairing_witness(d1.K(), p1, d2.K(), p2));
            }
    }
}

TEST_CASE("mumford group from duality") {
    SUBCASE("the trivial duality degenerates") {
        MumfordRealization r =
            mumford_group_from_duality(standard_self_duality(FiniteAbelianGroup()));
        CHECK(r.degenerate);
        CHECK(r.group.order() == 1);
    }
    SUBCASE("standard Z2 duality: a group of order 8 carrying the duality") {
        SelfDuality d = standard_self_duality(FiniteAbelianGroup::cyclic(2));
        MumfordRealization r = mumford_group_from_duality(d);
        CHECK_FALSE(r.degenerate);
        CHECK(r.group.order() == 8);
        CHECK(dualities_isomorphic(r.mumford_duality, d).isomorphic);
    }
    SUBCASE("round trip on the small catalogue, scrambles included") {
        for (const auto& a : testcat::abelian_groups_up_to(6)) {
            SelfDuality d = standard_self_duality(a);
            MumfordRealization r = mumford_group_from_duality(d);
            CHECK(r.group.order() == d.K().order() * r.decomposition.A.exponent());
            CHECK(dualities_isomorphic(r.mumford_duality, d).isomorphic);
        }
    }
    SUBCASE("non-symplectic input is rejected") {
        FiniteAbelianGroup z3 = FiniteAbelianGroup::cyclic(3);
        SelfDuality d(z3, Homomorphism(z3, dual_group(z3).group(), {{1}}));
        CHECK_THROWS_AS(mumford_group_from_duality(d), input_error);
    }
}
