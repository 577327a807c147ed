#include <catch2/catch_amalgamated.hpp>

#include "fusys/catalog.hpp"
#include "fusys/fusion.hpp"

using namespace fusys;

namespace {
Catalog cat = builtin_catalog();

FusionSystem sub_system(const GroupPtr& g, unsigned p, const std::vector<Perm>& hgens) {
    Subgroup h = Subgroup::generated(g, hgens);
    return FusionSystem(p, h, sylow(g, p));
}
} // namespace

TEST_CASE("hom sets of realized systems") {
    SECTION("abelian S: self-fusion has only inclusions") {
        auto v4 = cat.group("C2xC2");
        FusionSystem f = FusionSystem::of_group(v4, 2);
        auto subs = f.subgroups();
        for (const Subgroup& q : subs) {
            for (const Subgroup& r : subs) {
                const auto& homs = f.homs(q, r);
                if (r.contains_subgroup(q)) {
                    REQUIRE(homs.size() == 1);
                    REQUIRE(homs[0] == GroupHom::inclusion(q, r));
                } else {
                    REQUIRE(homs.empty());
                }
            }
        }
    }
    SECTION("F_{C3}(S3): identity and inversion") {
        auto s3 = cat.group("S3");
        FusionSystem f = FusionSystem::of_group(s3, 3);
        REQUIRE(f.base().order() == 3);
        REQUIRE(f.homs(f.base(), f.base()).size() == 2);
    }
    SECTION("F_{Q8}(SL(2,3)): 12 automorphisms of Q8") {
        auto sl = cat.group("SL(2,3)");
        FusionSystem f = FusionSystem::of_group(sl, 2);
        REQUIRE(f.homs(f.base(), f.base()).size() == 12);
    }
    SECTION("hom requests outside the object set are rejected") {
        auto s4 = cat.group("S4");
        FusionSystem f = FusionSystem::of_group(s4, 2);
        Subgroup c3 = Subgroup::generated(s4, {cycle(4, {0, 1, 2})});
        REQUIRE_THROWS_AS(f.homs(c3, f.base()), InputError);
    }
}

TEST_CASE("aut_f") {
    auto s3 = cat.group("S3");
    FusionSystem f = FusionSystem::of_group(s3, 3);
    REQUIRE(aut_f(f, Subgroup::trivial(s3))->order() == 1);
    REQUIRE(aut_f(f, f.base())->order() == 2);

    auto q8 = cat.group("Q8");
    FusionSystem fq = FusionSystem::of_group(q8, 2);
    REQUIRE(aut_f(fq, fq.base())->order() == 4); // Inn(Q8)
}

TEST_CASE("F-conjugacy") {
    SECTION("reflexive") {
        auto s3 = cat.group("S3");
        FusionSystem f = FusionSystem::of_group(s3, 3);
        REQUIRE(are_f_conjugate(f, f.base(), f.base()));
    }
    SECTION("D8 in S4: transpositions fuse with nothing else, double transpositions all fuse") {
        auto s4 = cat.group("S4");
        FusionSystem f = FusionSystem::of_group(s4, 2);
        auto classes = f_classes(f);
        // count classes of order-2 subgroups
        std::vector<std::size_t> c2_class_sizes;
        for (const auto& cls : classes)
            if (cls.front().order() == 2) c2_class_sizes.push_back(cls.size());
        std::sort(c2_class_sizes.begin(), c2_class_sizes.end());
        REQUIRE(c2_class_sizes == std::vector<std::size_t>{2, 3});
        // the two Klein fours of D8 are not F-conjugate (different cycle types)
        std::size_t v4_classes = 0;
        for (const auto& cls : classes)
            if (cls.front().order() == 4 && cls.front().is_elementary_abelian(2))
                ++v4_classes;
        REQUIRE(v4_classes == 2);
    }
    SECTION("Q8 in SL(2,3): the three C4 subgroups form one class") {
        auto sl = cat.group("SL(2,3)");
        FusionSystem f = FusionSystem::of_group(sl, 2);
        auto classes = f_classes(f);
        std::size_t c4_classes = 0, c4_class_size = 0;
        for (const auto& cls : classes)
            if (cls.front().order() == 4) { ++c4_classes; c4_class_size = cls.size(); }
        REQUIRE(c4_classes == 1);
        REQUIRE(c4_class_size == 3);
        // inside Q8 itself they do not fuse
        FusionSystem inner(2, f.base(), f.base());
        std::size_t inner_c4_classes = 0;
        for (const auto& cls : f_classes(inner))
            if (cls.front().order() == 4) ++inner_c4_classes;
        REQUIRE(inner_c4_classes == 3);
    }
    SECTION("F-conjugate subgroups have equal automizer orders") {
        auto s4 = cat.group("S4");
        FusionSystem f = FusionSystem::of_group(s4, 2);
        for (const auto& cls : f_classes(f)) {
            std::size_t expect = f.homs(cls.front(), cls.front()).size();
            for (const Subgroup& m : cls)
                REQUIRE(f.homs(m, m).size() == expect);
        }
    }
}

TEST_CASE("F-conjugacy is an equivalence relation") {
    for (const char* name : {"S4", "SL(2,3)"}) {
        FusionSystem f = FusionSystem::of_group(cat.group(name), 2);
        const auto& subs = f.subgroups();
        auto classes = f_classes(f);
        auto class_of = [&](const Subgroup& q) -> std::size_t {
            for (std::size_t i = 0; i < classes.size(); ++i)
                for (const Subgroup& m : classes[i])
                    if (m.same_elements(q)) return i;
            FAIL("subgroup missing from partition");
            return 0;
        };
        for (const Subgroup& q : subs) {
            REQUIRE(are_f_conjugate(f, q, q));
            for (const Subgroup& r : subs) {
                bool qr = are_f_conjugate(f, q, r);
                REQUIRE(qr == are_f_conjugate(f, r, q));
                REQUIRE(qr == (class_of(q) == class_of(r)));
            }
        }
    }
}

TEST_CASE("fully_automized") {
    SECTION("self-fusion: always") {
        auto d8 = cat.group("D8");
        FusionSystem f = FusionSystem::of_group(d8, 2);
        for (const Subgroup& q : f.subgroups())
            REQUIRE(fully_automized(f, q));
    }
    SECTION("C4 realized in S4 is not fully automized") {
        auto s4 = cat.group("S4");
        Subgroup c4 = Subgroup::generated(s4, {cycle(4, {0, 1, 2, 3})});
        FusionSystem f(2, Subgroup::full(s4), c4);
        REQUIRE(aut_s(f, c4).size() == 1);
        REQUIRE(f.homs(c4, c4).size() == 2);
        REQUIRE_FALSE(fully_automized(f, c4));
    }
    SECTION("Q8 in SL(2,3) is fully automized") {
        auto sl = cat.group("SL(2,3)");
        FusionSystem f = FusionSystem::of_group(sl, 2);
        REQUIRE(aut_s(f, f.base()).size() == 4);
        REQUIRE(f.homs(f.base(), f.base()).size() == 12);
        REQUIRE(fully_automized(f, f.base()));
    }
}

TEST_CASE("n_phi") {
    SECTION("identity gives the full normalizer") {
        auto s4 = cat.group("S4");
        FusionSystem f = FusionSystem::of_group(s4, 2);
        for (const Subgroup& q : f.subgroups()) {
            Subgroup n = n_phi(f, GroupHom::identity(q));
            REQUIRE(n.same_elements(normalizer(f.base(), q)));
        }
    }
    SECTION("abelian S: N_phi = S always") {
        auto v4 = cat.group("A4");
        FusionSystem f = FusionSystem::of_group(v4, 2);
        for (const Subgroup& q : f.subgroups())
            for (const Subgroup& r : f.subgroups())
                for (const GroupHom& phi : f.homs(q, r)) {
                    if (!phi.is_surjective()) continue;
                    REQUIRE(n_phi(f, phi).same_elements(f.base()));
                }
    }
    SECTION("inversion on C3 in S3") {
        auto s3 = cat.group("S3");
        FusionSystem f = FusionSystem::of_group(s3, 3);
        for (const GroupHom& phi : f.homs(f.base(), f.base()))
            REQUIRE(n_phi(f, phi).same_elements(f.base()));
    }
    SECTION("N_phi always contains Q C_S(Q)") {
        auto sl = cat.group("SL(2,3)");
        FusionSystem f = FusionSystem::of_group(sl, 2);
        for (const Subgroup& q : f.subgroups())
            for (const Subgroup& r : f.subgroups())
                for (const GroupHom& phi : f.homs(q, r)) {
                    if (!phi.is_surjective()) continue;
                    Subgroup n = n_phi(f, phi);
                    REQUIRE(n.contains_subgroup(q));
                    REQUIRE(n.contains_subgroup(centralizer(f.base(), q)));
                }
    }
    SECTION("morphisms outside F are rejected") {
        auto s3 = cat.group("S3");
        FusionSystem fs3 = FusionSystem::of_group(s3, 3);
        // inversion is a morphism of F_{C3}(S3) but not of F_{C3}(C3)
        FusionSystem inner(3, fs3.base(), fs3.base());
        GroupHom inversion = GroupHom::identity(fs3.base());
        for (const GroupHom& phi : fs3.homs(fs3.base(), fs3.base()))
            if (!(phi == GroupHom::identity(fs3.base()))) inversion = phi;
        REQUIRE_THROWS_AS(n_phi(inner, inversion), InputError);
    }
}

TEST_CASE("receptive") {
    SECTION("self-fusion: everything receptive") {
        auto q8 = cat.group("Q8");
        FusionSystem f = FusionSystem::of_group(q8, 2);
        for (const Subgroup& q : f.subgroups())
            REQUIRE(receptive(f, q));
    }
    SECTION("C3 in S3 is receptive") {
        auto s3 = cat.group("S3");
        FusionSystem f = FusionSystem::of_group(s3, 3);
        REQUIRE(receptive(f, f.base()));
    }
    SECTION("C4 in S4: receptive, though saturation fails elsewhere") {
        auto s4 = cat.group("S4");
        Subgroup c4 = Subgroup::generated(s4, {cycle(4, {0, 1, 2, 3})});
        FusionSystem f(2, Subgroup::full(s4), c4);
        REQUIRE(receptive(f, c4));
    }
}

TEST_CASE("is_saturated") {
    SECTION("Sylow-realized systems are saturated") {
        for (const char* name : {"S3", "S4", "A4", "SL(2,3)"}) {
            auto g = cat.group(name);
            for (unsigned p : {2u, 3u}) {
                if (g->order() % p != 0) continue;
                INFO(name << " at p=" << p);
                REQUIRE(is_saturated(FusionSystem::of_group(g, p)).saturated);
            }
        }
    }
    SECTION("self-fusion of p-groups is saturated") {
        for (const char* name : {"C4", "C2xC2", "D8", "Q8", "C3xC3"}) {
            auto g = cat.group(name);
            unsigned p = g->order() % 2 == 0 ? 2 : 3;
            REQUIRE(is_saturated(FusionSystem::of_group(g, p)).saturated);
        }
    }
    SECTION("C4 realized in S4 is not saturated, witnessed by the C4 class") {
        auto s4 = cat.group("S4");
        Subgroup c4 = Subgroup::generated(s4, {cycle(4, {0, 1, 2, 3})});
        FusionSystem f(2, Subgroup::full(s4), c4);
        SaturationReport rep = is_saturated(f);
        REQUIRE_FALSE(rep.saturated);
        bool found_c4_failure = false;
        for (const auto& cls : rep.classes) {
            if (cls.representative.order() == 4) {
                REQUIRE_FALSE(cls.witness.has_value());
                REQUIRE_FALSE(cls.fully_automized_member.has_value());
                REQUIRE(cls.receptive_member.has_value());
                found_c4_failure = true;
            }
        }
        REQUIRE(found_c4_failure);
    }
}

TEST_CASE("subsystems and equality") {
    auto s3 = cat.group("S3");
    FusionSystem f = FusionSystem::of_group(s3, 3);
    FusionSystem g = sub_system(s3, 3, {cycle(3, {0, 1, 2})});

    REQUIRE(is_subsystem(f, f));
    REQUIRE(systems_equal(f, f));
    REQUIRE(is_subsystem(g, f));
    REQUIRE_FALSE(is_subsystem(f, g)); // inversion missing from F_{C3}(C3)
    REQUIRE_FALSE(systems_equal(g, f));

    auto sl = cat.group("SL(2,3)");
    FusionSystem fsl = FusionSystem::of_group(sl, 2);
    FusionSystem gq8(2, fsl.base(), fsl.base());
    REQUIRE(is_subsystem(gq8, fsl));
    REQUIRE_FALSE(systems_equal(gq8, fsl));
}

TEST_CASE("morphism family properties") {
    auto sl = cat.group("SL(2,3)");
    FusionSystem f = FusionSystem::of_group(sl, 2);
    const auto& subs = f.subgroups();

    SECTION("restriction of morphisms stays in the hom sets") {
        for (const Subgroup& r : subs) {
            for (const Subgroup& t : subs) {
                for (const GroupHom& phi : f.homs(r, t)) {
                    for (const Subgroup& q : subs) {
                        if (!r.contains_subgroup(q)) continue;
                        GroupHom res = restrict_hom(phi, q);
                        bool found = false;
                        for (const GroupHom& m : f.homs(q, t))
                            if (m == res) { found = true; break; }
                        REQUIRE(found);
                    }
                }
            }
        }
    }
    SECTION("decomposition axiom holds constructively") {
        for (const Subgroup& q : subs) {
            for (const Subgroup& r : subs) {
                for (const GroupHom& phi : f.homs(q, r)) {
                    auto [iso, img] = iso_onto_image(phi);
                    bool iso_in = false;
                    for (const GroupHom& m : f.homs(q, img))
                        if (m == iso) { iso_in = true; break; }
                    REQUIRE(iso_in);
                    bool incl_in = false;
                    for (const GroupHom& m : f.homs(img, r))
                        if (m == GroupHom::inclusion(img, r)) { incl_in = true; break; }
                    REQUIRE(incl_in);
                    REQUIRE(compose(GroupHom::inclusion(img, r), iso) == phi);
                }
            }
        }
    }
}

TEST_CASE("explicit-table validation") {
    SECTION("realized systems always pass") {
        for (const char* name : {"S3", "Q8", "S4"}) {
            auto g = cat.group(name);
            unsigned p = 2;
            if (std::string(name) == "S3") p = 3;
            FusionAxiomCheck chk = is_fusion_system(FusionSystem::of_group(g, p));
            INFO(name << ": " << chk.violated_axiom << " " << chk.detail);
            REQUIRE(chk.ok);
        }
    }
    SECTION("missing inclusion is caught") {
        auto s3 = cat.group("S3");
        FusionSystem f = FusionSystem::of_group(s3, 3);
        ExplicitFusionSystem table = to_explicit(f);
        // drop the inclusion 1 -> C3
        Subgroup triv = Subgroup::trivial(s3);
        table.homs[{triv.elements(), f.base().elements()}].clear();
        FusionAxiomCheck chk = is_fusion_system(table);
        REQUIRE_FALSE(chk.ok);
        REQUIRE(chk.violated_axiom == "Hom_S not contained");
    }
    SECTION("non-injective map is caught") {
        auto s3 = cat.group("S3");
        FusionSystem f = FusionSystem::of_group(s3, 3);
        ExplicitFusionSystem table = to_explicit(f);
        Subgroup c3 = f.base();
        // constant map to the identity is a homomorphism but not injective
        std::vector<Perm> const_id(c3.order(), Perm::identity(3));
        table.homs[{c3.elements(), c3.elements()}].push_back(GroupHom(c3, c3, const_id));
        FusionAxiomCheck chk = is_fusion_system(table);
        REQUIRE_FALSE(chk.ok);
        REQUIRE(chk.violated_axiom == "not in Inj");
    }
}
