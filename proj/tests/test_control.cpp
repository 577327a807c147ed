#include <catch2/catch_amalgamated.hpp>

#include "fusys/catalog.hpp"
#include "fusys/control.hpp"

using namespace fusys;

namespace {
Catalog cat = builtin_catalog();
}

TEST_CASE("elementary abelian enumeration") {
    SECTION("C_p") {
        FusionSystem f = FusionSystem::of_group(cat.group("C3"), 3);
        REQUIRE(elementary_abelians(f).size() == 2);
    }
    SECTION("Q8: only 1 and the center") {
        FusionSystem f = FusionSystem::of_group(cat.group("Q8"), 2);
        auto elems = elementary_abelians(f);
        REQUIRE(elems.size() == 2);
        REQUIRE(elems[0].order() == 1);
        REQUIRE(elems[1].order() == 2);
    }
    SECTION("D8: trivial, five C2, two Klein fours") {
        FusionSystem f = FusionSystem::of_group(cat.group("D8"), 2);
        auto elems = elementary_abelians(f);
        REQUIRE(elems.size() == 8);
        std::size_t rank2 = 0;
        for (const Subgroup& e : elems)
            if (e.order() == 4) ++rank2;
        REQUIRE(rank2 == 2);
    }
}

TEST_CASE("controls_elementary_fusion") {
    SECTION("a system controls itself") {
        FusionSystem f = FusionSystem::of_group(cat.group("S4"), 2);
        ControlVerdict v = controls_elementary_fusion(f, f);
        REQUIRE(v.controls);
        REQUIRE_FALSE(v.witness.has_value());
    }
    SECTION("Q8 controls elementary fusion in SL(2,3) at p = 2") {
        auto sl = cat.group("SL(2,3)");
        FusionSystem f = FusionSystem::of_group(sl, 2);
        FusionSystem g(2, f.base(), f.base());
        REQUIRE(controls_elementary_fusion(g, f).controls);
    }
    SECTION("C3 does not control fusion in S3 at p = 3; witness is the inversion") {
        auto s3 = cat.group("S3");
        FusionSystem f = FusionSystem::of_group(s3, 3);
        FusionSystem g(3, f.base(), f.base());
        ControlVerdict v = controls_elementary_fusion(g, f);
        REQUIRE_FALSE(v.controls);
        REQUIRE(v.witness.has_value());
        REQUIRE(v.witness->e1.order() == 3);
        REQUIRE(v.witness->e2.order() == 3);
        REQUIRE_FALSE(v.witness->missing == GroupHom::identity(v.witness->e1));
    }
    SECTION("non-subsystem input is rejected") {
        FusionSystem f2 = FusionSystem::of_group(cat.group("S4"), 2);
        FusionSystem f3 = FusionSystem::of_group(cat.group("S4"), 3);
        REQUIRE_THROWS_AS(controls_elementary_fusion(f3, f2), InputError);
    }
}

TEST_CASE("mislin verdict") {
    SECTION("identity case") {
        FusionSystem f = FusionSystem::of_group(cat.group("C7:C3"), 7);
        MislinVerdict v = mislin_verdict(f, f);
        REQUIRE(v.controls_elem);
        REQUIRE(v.systems_equal);
        REQUIRE(v.consistent_with_theorem);
    }
    SECTION("p = 3: C3 inside S3") {
        auto s3 = cat.group("S3");
        FusionSystem f = FusionSystem::of_group(s3, 3);
        FusionSystem g(3, f.base(), f.base());
        MislinVerdict v = mislin_verdict(g, f);
        REQUIRE(v.p == 3);
        REQUIRE_FALSE(v.controls_elem);
        REQUIRE_FALSE(v.systems_equal);
        REQUIRE(v.consistent_with_theorem);
        REQUIRE(v.witness.has_value());
    }
    SECTION("p = 2: Q8 inside SL(2,3) shows the odd-p hypothesis is necessary") {
        auto sl = cat.group("SL(2,3)");
        FusionSystem f = FusionSystem::of_group(sl, 2);
        FusionSystem g(2, f.base(), f.base());
        MislinVerdict v = mislin_verdict(g, f);
        REQUIRE(v.p == 2);
        REQUIRE(v.controls_elem);
        REQUIRE_FALSE(v.systems_equal);
        REQUIRE(v.consistent_with_theorem); // vacuous at p = 2, recorded only
    }
    SECTION("p = 7: C7 inside the Frobenius group") {
        auto frob = cat.group("C7:C3");
        FusionSystem f = FusionSystem::of_group(frob, 7);
        FusionSystem g(7, f.base(), f.base());
        MislinVerdict v = mislin_verdict(g, f);
        REQUIRE_FALSE(v.controls_elem);
        REQUIRE_FALSE(v.systems_equal);
        REQUIRE(v.consistent_with_theorem);
    }
    SECTION("unsaturated inputs are rejected unless overridden") {
        auto s4 = cat.group("S4");
        Subgroup c4 = Subgroup::generated(s4, {cycle(4, {0, 1, 2, 3})});
        FusionSystem f(2, Subgroup::full(s4), c4);
        FusionSystem g(2, c4, c4);
        REQUIRE_THROWS_AS(mislin_verdict(g, f), InputError);
        MislinVerdict v = mislin_verdict(g, f, false);
        REQUIRE(v.p == 2);
    }
}

TEST_CASE("weyl groups") {
    SECTION("trivial subgroup") {
        FusionSystem f = FusionSystem::of_group(cat.group("S3"), 3);
        REQUIRE(weyl_group(f, Subgroup::trivial(cat.group("S3")))->order() == 1);
    }
    SECTION("C3 in S3: order 2") {
        auto s3 = cat.group("S3");
        FusionSystem f = FusionSystem::of_group(s3, 3);
        REQUIRE(weyl_group(f, f.base())->order() == 2);
    }
    SECTION("the normal Klein four in S4 carries the full GL(2,2)") {
        auto s4 = cat.group("S4");
        FusionSystem f = FusionSystem::of_group(s4, 2);
        Subgroup diag = Subgroup::generated(
            s4, {cycle(4, {0, 1}) * cycle(4, {2, 3}), cycle(4, {0, 2}) * cycle(4, {1, 3})});
        REQUIRE(diag.order() == 4);
        REQUIRE(weyl_group(f, diag)->order() == 6);
    }
    SECTION("non-elementary-abelian input is rejected") {
        auto s4 = cat.group("S4");
        FusionSystem f = FusionSystem::of_group(s4, 2);
        Subgroup c4 = Subgroup::generated(s4, {cycle(4, {0, 1, 2, 3})});
        REQUIRE_THROWS_AS(weyl_group(f, c4), InputError);
    }
}

TEST_CASE("strata skeleton") {
    SECTION("C_p: two rows with trivial automizers") {
        FusionSystem f = FusionSystem::of_group(cat.group("C5"), 5);
        auto rows = strata_skeleton(f);
        REQUIRE(rows.size() == 2);
        REQUIRE(rows[0].rank == 0);
        REQUIRE(rows[0].automizer_order == 1);
        REQUIRE(rows[1].rank == 1);
        REQUIRE(rows[1].automizer_order == 1);
    }
    SECTION("F_{C3}(S3): automizer of C3 has order 2") {
        FusionSystem f = FusionSystem::of_group(cat.group("S3"), 3);
        auto rows = strata_skeleton(f);
        REQUIRE(rows.size() == 2);
        REQUIRE(rows[1].automizer_order == 2);
    }
    SECTION("F_{Q8}(SL(2,3)): rows (1,1) and (Z,1)") {
        FusionSystem f = FusionSystem::of_group(cat.group("SL(2,3)"), 2);
        auto rows = strata_skeleton(f);
        REQUIRE(rows.size() == 2);
        REQUIRE(rows[0].automizer_order == 1);
        REQUIRE(rows[1].automizer_order == 1);
        REQUIRE(rows[1].rank == 1);
    }
    SECTION("rows partition the elementary abelians") {
        FusionSystem f = FusionSystem::of_group(cat.group("S4"), 2);
        auto rows = strata_skeleton(f);
        std::size_t total = 0;
        for (const auto& r : rows) total += r.members.size();
        REQUIRE(total == elementary_abelians(f).size());
    }
}

TEST_CASE("aut_via_normalizer") {
    SECTION("abelian ambient gives trivial automizers") {
        auto v4 = cat.group("C2xC2");
        Subgroup sub = Subgroup::generated(v4, {v4->generators()[0]});
        REQUIRE(aut_via_normalizer(v4, sub)->order() == 1);
    }
    SECTION("S3 on C3: order 2") {
        auto s3 = cat.group("S3");
        Subgroup c3 = sylow(s3, 3);
        REQUIRE(aut_via_normalizer(s3, c3)->order() == 2);
    }
    SECTION("S4 on the diagonal Klein four: order 6") {
        auto s4 = cat.group("S4");
        Subgroup diag = Subgroup::generated(
            s4, {cycle(4, {0, 1}) * cycle(4, {2, 3}), cycle(4, {0, 2}) * cycle(4, {1, 3})});
        GroupPtr w = aut_via_normalizer(s4, diag);
        REQUIRE(w->order() == 6);
        REQUIRE_FALSE(w->is_abelian());
    }
    SECTION("matches aut_f on every elementary abelian across sample groups") {
        for (const char* name : {"S3", "S4", "A4", "SL(2,3)", "C7:C3"}) {
            auto g = cat.group(name);
            for (unsigned p : {2u, 3u, 7u}) {
                if (g->order() % p != 0) continue;
                FusionSystem f = FusionSystem::of_group(g, p);
                for (const Subgroup& e : elementary_abelians(f)) {
                    INFO(name << " p=" << p << " |E|=" << e.order());
                    REQUIRE(aut_via_normalizer(g, e)->elements() == aut_f(f, e)->elements());
                }
            }
        }
    }
}

TEST_CASE("transport of classes") {
    SECTION("identity case") {
        FusionSystem f = FusionSystem::of_group(cat.group("S4"), 2);
        REQUIRE(transport_classes(f, f).holds);
    }
    SECTION("Q8 inside SL(2,3)") {
        auto sl = cat.group("SL(2,3)");
        FusionSystem f = FusionSystem::of_group(sl, 2);
        FusionSystem g(2, f.base(), f.base());
        REQUIRE(transport_classes(g, f).holds);
    }
    SECTION("precondition violations are rejected") {
        auto s3 = cat.group("S3");
        FusionSystem f = FusionSystem::of_group(s3, 3);
        FusionSystem g(3, f.base(), f.base());
        REQUIRE_THROWS_AS(transport_classes(g, f), InputError); // no control
    }
}
