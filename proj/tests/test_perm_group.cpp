#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fusys/catalog.hpp"
#include "fusys/group.hpp"

using namespace fusys;

TEST_CASE("permutation basics") {
    Perm id = Perm::identity(4);
    REQUIRE(id.is_identity());
    REQUIRE(id.order() == 1);

    Perm c = cycle(4, {0, 1, 2, 3});
    REQUIRE(c.images() == std::vector<unsigned>{1, 2, 3, 0});
    REQUIRE(c.order() == 4);
    REQUIRE((c * c.inverse()).is_identity());
    REQUIRE(c.str() == "(0 1 2 3)");

    // composition acts right-to-left
    Perm t = cycle(4, {0, 1});
    REQUIRE((t * c)(0) == t(c(0)));

    REQUIRE_THROWS_AS(Perm(std::vector<unsigned>{0, 0, 1}), InputError);
}

TEST_CASE("closure of generating sets") {
    auto c3 = closure({cycle(3, {0, 1, 2})});
    REQUIRE(c3.size() == 3);

    // empty generating set gives the trivial group
    auto triv = closure({}, 3);
    REQUIRE(triv.size() == 1);
    REQUIRE(triv[0].is_identity());

    // brute-force oracle: <(0 1 2 3), (0 1)> is all of S4
    auto s4 = closure({cycle(4, {0, 1, 2, 3}), cycle(4, {0, 1})});
    REQUIRE(s4.size() == 24);
    std::set<Perm> uniq(s4.begin(), s4.end());
    REQUIRE(uniq.size() == 24);

    REQUIRE(std::is_sorted(s4.begin(), s4.end()));

    REQUIRE_THROWS_AS(closure({cycle(3, {0, 1, 2}), cycle(4, {0, 1})}), InputError);
    REQUIRE_THROWS_AS(closure({cycle(9, {0, 1, 2, 3, 4, 5, 6, 7, 8}), cycle(9, {0, 1})}, 9, 100),
                      CapError);
}

TEST_CASE("conjugation of subgroups") {
    auto s4 = Group::make(4, {cycle(4, {0, 1, 2, 3}), cycle(4, {0, 1})}, "S4");
    Subgroup c4 = Subgroup::generated(s4, {cycle(4, {0, 1, 2, 3})});

    SECTION("identity fixes everything") {
        REQUIRE(conjugate(Perm::identity(4), c4).same_elements(c4));
    }
    SECTION("direct element-wise conjugation") {
        Subgroup conj = conjugate(cycle(4, {0, 1}), c4);
        REQUIRE(conj.order() == 4);
        REQUIRE(conj.same_elements(Subgroup::generated(s4, {cycle(4, {0, 1, 3, 2})})));
        REQUIRE_FALSE(conj.same_elements(c4));
    }
    SECTION("conjugation is an action: (gh).Q = g.(h.Q)") {
        Perm g = cycle(4, {0, 2}), h = cycle(4, {1, 2, 3});
        REQUIRE(conjugate(g * h, c4).same_elements(conjugate(g, conjugate(h, c4))));
    }
    SECTION("central elements act trivially") {
        auto q8 = builtin_catalog().group("Q8");
        Subgroup sub = Subgroup::generated(q8, {q8->generators()[0]});
        Subgroup center = centralizer(q8, Subgroup::full(q8));
        REQUIRE(center.order() == 2);
        for (const Perm& z : center.elements())
            REQUIRE(conjugate(z, sub).same_elements(sub));
    }
}

TEST_CASE("normalizer and centralizer") {
    auto s4 = Group::make(4, {cycle(4, {0, 1, 2, 3}), cycle(4, {0, 1})}, "S4");
    Subgroup c4 = Subgroup::generated(s4, {cycle(4, {0, 1, 2, 3})});

    // brute-force scan over all 24 elements
    Subgroup n = normalizer(s4, c4);
    Subgroup c = centralizer(s4, c4);
    REQUIRE(n.order() == 8);
    REQUIRE(c.order() == 4);
    REQUIRE(n.contains_subgroup(c));

    REQUIRE(normalizer(s4, Subgroup::full(s4)).order() == 24);

    auto c6 = Group::make(6, {cycle(6, {0, 1, 2, 3, 4, 5})}, "C6");
    Subgroup sub = Subgroup::generated(c6, {cycle(6, {0, 2, 4}) * cycle(6, {1, 3, 5})});
    REQUIRE(centralizer(c6, sub).order() == 6); // abelian ambient
}

TEST_CASE("sylow subgroups") {
    SECTION("C6 at p = 3: the unique C3") {
        auto c6 = Group::make(6, {cycle(6, {0, 1, 2, 3, 4, 5})}, "C6");
        Subgroup syl = sylow(c6, 3);
        REQUIRE(syl.order() == 3);
        for (const Perm& e : syl.elements())
            REQUIRE((e.order() == 1 || e.order() == 3));
    }
    SECTION("S4 at p = 2: order 8, dihedral") {
        auto s4 = Group::make(4, {cycle(4, {0, 1, 2, 3}), cycle(4, {0, 1})}, "S4");
        Subgroup syl = sylow(s4, 2);
        REQUIRE(syl.order() == 8);
        REQUIRE_FALSE(syl.is_abelian());
        // D8 has five involutions, Q8 only one
        int involutions = 0;
        for (const Perm& e : syl.elements())
            if (e.order() == 2) ++involutions;
        REQUIRE(involutions == 5);
    }
    SECTION("SL(2,3) at p = 2: the unique normal Q8") {
        auto sl = builtin_catalog().group("SL(2,3)");
        REQUIRE(sl->order() == 24);
        Subgroup syl = sylow(sl, 2);
        REQUIRE(syl.order() == 8);
        int involutions = 0;
        for (const Perm& e : syl.elements())
            if (e.order() == 2) ++involutions;
        REQUIRE(involutions == 1); // quaternion
        // normal, hence unique
        for (const Perm& g : sl->elements())
            REQUIRE(conjugate(g, syl).same_elements(syl));
    }
    SECTION("p not dividing the order gives the trivial subgroup") {
        auto c6 = Group::make(6, {cycle(6, {0, 1, 2, 3, 4, 5})}, "C6");
        REQUIRE(sylow(c6, 5).order() == 1);
    }
    SECTION("sylow order is the exact p-part across the catalog") {
        Catalog cat = builtin_catalog();
        for (const GroupSpec& spec : cat.specs()) {
            GroupPtr g = spec.build();
            for (unsigned p : {2u, 3u, 5u, 7u}) {
                if (g->order() % p != 0) continue;
                REQUIRE(sylow(g, p).order() == p_part(g->order(), p));
            }
        }
    }
}

namespace {

// Independent oracle: every subset of P containing the identity whose size
// divides |P|, tested for closure under the group operations.
std::vector<std::vector<Perm>> subgroups_by_subsets(const Subgroup& p) {
    const auto& elems = p.elements();
    const std::size_t n = elems.size();
    REQUIRE(n <= 16);
    std::vector<std::vector<Perm>> found;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<Perm> subset;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) subset.push_back(elems[i]);
        if (subset.empty() || n % subset.size() != 0) continue;
        bool has_id = false;
        for (const Perm& e : subset)
            if (e.is_identity()) has_id = true;
        if (!has_id) continue;
        bool closed = true;
        for (const Perm& a : subset) {
            for (const Perm& b : subset) {
                if (!std::binary_search(subset.begin(), subset.end(), a * b)) {
                    closed = false;
                    break;
                }
            }
            if (!closed) break;
        }
        if (closed) found.push_back(subset);
    }
    return found;
}

} // namespace

TEST_CASE("all_subgroups enumeration") {
    Catalog cat = builtin_catalog();

    SECTION("C_p has exactly two subgroups") {
        auto c3 = cat.group("C3");
        REQUIRE(all_subgroups(Subgroup::full(c3)).size() == 2);
    }
    SECTION("C2xC2 has five subgroups") {
        auto v4 = cat.group("C2xC2");
        auto subs = all_subgroups(Subgroup::full(v4));
        REQUIRE(subs.size() == 5);
    }
    SECTION("Q8 has six subgroups") {
        auto q8 = cat.group("Q8");
        auto subs = all_subgroups(Subgroup::full(q8));
        REQUIRE(subs.size() == 6);
        std::vector<std::size_t> orders;
        for (const auto& s : subs) orders.push_back(s.order());
        REQUIRE(orders == std::vector<std::size_t>{1, 2, 4, 4, 4, 8});
    }
    SECTION("matches the subset-closure oracle on small p-groups") {
        for (const char* name : {"C2", "C3", "C4", "C5", "C2xC2", "C3xC3", "D8", "Q8"}) {
            auto g = cat.group(name);
            Subgroup full = Subgroup::full(g);
            auto fast = all_subgroups(full);
            auto oracle = subgroups_by_subsets(full);
            std::set<std::vector<Perm>> fast_sets, oracle_sets;
            for (const auto& s : fast) fast_sets.insert(s.elements());
            for (auto& s : oracle) oracle_sets.insert(s);
            REQUIRE(fast_sets == oracle_sets);
        }
    }
    SECTION("Lagrange holds for every enumerated subgroup") {
        auto d8 = cat.group("D8");
        for (const Subgroup& s : all_subgroups(Subgroup::full(d8)))
            REQUIRE(8 % s.order() == 0);
    }
    SECTION("cap is enforced") {
        auto s4 = cat.group("S4");
        Subgroup syl = sylow(s4, 2);
        REQUIRE_THROWS_AS(all_subgroups(syl, 4), CapError);
    }
}

TEST_CASE("built-in catalog sanity") {
    Catalog cat = builtin_catalog();
    REQUIRE(cat.spec("S3").degree == 3);
    REQUIRE(cat.spec("S3").generators ==
            std::vector<std::vector<unsigned>>{{1, 0, 2}, {1, 2, 0}});

    const std::map<std::string, std::size_t> orders{
        {"C2", 2},  {"C3", 3},  {"C4", 4},      {"C5", 5},      {"C2xC2", 4},
        {"C3xC3", 9}, {"S3", 6},  {"S4", 24},     {"A4", 12},     {"D8", 8},
        {"Q8", 8},  {"SL(2,3)", 24}, {"C7:C3", 21}};
    for (const auto& [name, order] : orders) {
        INFO(name);
        REQUIRE(cat.group(name)->order() == order);
    }

    // elementary abelian recognition
    REQUIRE(Subgroup::full(cat.group("C2xC2")).is_elementary_abelian(2));
    REQUIRE(Subgroup::full(cat.group("C3xC3")).is_elementary_abelian(3));
    REQUIRE_FALSE(Subgroup::full(cat.group("C4")).is_elementary_abelian(2));
    REQUIRE_FALSE(Subgroup::full(cat.group("Q8")).is_elementary_abelian(2));
}
