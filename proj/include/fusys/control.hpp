#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fusys/fusion.hpp"

namespace fusys {

// All elementary abelian subgroups of S, including the trivial one (rank 0).
inline std::vector<Subgroup> elementary_abelians(const FusionSystem& f) {
    std::vector<Subgroup> out;
    for (const Subgroup& q : f.subgroups())
        if (q.is_elementary_abelian(f.prime())) out.push_back(q);
    return out;
}

struct ControlWitness {
    Subgroup e1, e2;    // an ordered pair with differing hom sets
    GroupHom missing;   // a morphism of F absent from G
};

struct ControlVerdict {
    bool controls = false;
    std::optional<ControlWitness> witness;
};

// G controls p-fusion in F on elementary abelians: Hom_G(E1,E2) equals
// Hom_F(E1,E2) for every ordered pair. Since G is a subsystem, only the
// direction F-minus-G can fail; the first missing morphism is the witness.
inline ControlVerdict controls_elementary_fusion(const FusionSystem& gsys,
                                                 const FusionSystem& fsys) {
    if (!is_subsystem(gsys, fsys))
        throw InputError("controls_elementary_fusion requires a subsystem pair");
    auto elems = elementary_abelians(fsys);
    for (const Subgroup& e1 : elems) {
        for (const Subgroup& e2 : elems) {
            const auto& hf = fsys.homs(e1, e2);
            const auto& hg = gsys.homs(e1, e2);
            for (const GroupHom& m : hf) {
                bool found = false;
                for (const GroupHom& n : hg)
                    if (m == n) { found = true; break; }
                if (!found)
                    return ControlVerdict{false, ControlWitness{e1, e2, m}};
            }
        }
    }
    return ControlVerdict{true, std::nullopt};
}

struct MislinVerdict {
    unsigned p = 0;
    bool controls_elem = false;
    bool systems_equal = false;
    // (p odd) => (controls_elem <=> systems_equal); vacuously true at p = 2,
    // where the counterexamples live and no assertion is made.
    bool consistent_with_theorem = false;
    std::optional<ControlWitness> witness;
};

inline MislinVerdict mislin_verdict(const FusionSystem& gsys, const FusionSystem& fsys,
                                    bool require_saturated = true) {
    if (!is_subsystem(gsys, fsys))
        throw InputError("mislin_verdict requires a subsystem pair");
    if (require_saturated) {
        if (!is_saturated(gsys).saturated)
            throw InputError("mislin_verdict: subsystem is not saturated "
                             "(pass require_saturated=false to probe anyway)");
        if (!is_saturated(fsys).saturated)
            throw InputError("mislin_verdict: ambient system is not saturated "
                             "(pass require_saturated=false to probe anyway)");
    }
    MislinVerdict v;
    v.p = fsys.prime();
    ControlVerdict cv = controls_elementary_fusion(gsys, fsys);
    v.controls_elem = cv.controls;
    v.witness = cv.witness;
    v.systems_equal = systems_equal(gsys, fsys);
    v.consistent_with_theorem =
        (v.p % 2 == 0) || (v.controls_elem == v.systems_equal);
    return v;
}

// W_F(E) = Aut_F(E), the group indexing a stratum; only the group itself is
// computed here (no varieties).
inline GroupPtr weyl_group(const FusionSystem& f, const Subgroup& e) {
    if (!e.is_elementary_abelian(f.prime()))
        throw InputError("weyl_group: subgroup is not elementary abelian");
    return aut_f(f, e);
}

struct ElementaryClassRow {
    Subgroup representative;
    std::vector<Subgroup> members;
    std::size_t automizer_order = 0; // |W_F(E)|
    unsigned rank = 0;               // log_p |E|
};

using ElementaryClassTable = std::vector<ElementaryClassRow>;

// Index data of the Quillen stratification: one row per F-class of
// elementary abelian subgroups with rank and automizer order.
inline ElementaryClassTable strata_skeleton(const FusionSystem& f) {
    auto elems = elementary_abelians(f);
    std::vector<bool> used(elems.size(), false);
    ElementaryClassTable rows;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (used[i]) continue;
        ElementaryClassRow row;
        row.representative = elems[i];
        row.members.push_back(elems[i]);
        used[i] = true;
        for (std::size_t j = i + 1; j < elems.size(); ++j) {
            if (used[j] || elems[j].order() != elems[i].order()) continue;
            if (are_f_conjugate(f, elems[i], elems[j])) {
                row.members.push_back(elems[j]);
                used[j] = true;
            }
        }
        row.automizer_order = f.homs(elems[i], elems[i]).size();
        row.rank = elems[i].rank(f.prime());
        rows.push_back(std::move(row));
    }
    return rows;
}

// Aut groups computed two ways must agree (the N_G(E)/C_G(E) identification):
// the image of N_A(E) acting on E by conjugation, as explicit permutations
// of E's elements.
inline GroupPtr aut_via_normalizer(const Subgroup& a, const Subgroup& e) {
    Subgroup n = normalizer(a, e);
    return automorphism_group(e, homs_by_conjugation(n, e, e));
}

inline GroupPtr aut_via_normalizer(const GroupPtr& a, const Subgroup& e) {
    return aut_via_normalizer(Subgroup::full(a), e);
}

struct TransportVerdict {
    bool holds = false;
    std::optional<std::pair<Subgroup, Subgroup>> witness; // F-conjugate but not G-conjugate
};

// F-isomorphic elementary abelians must be G-isomorphic when G controls
// fusion on elementary abelians.
inline TransportVerdict transport_classes(const FusionSystem& gsys, const FusionSystem& fsys) {
    if (!is_subsystem(gsys, fsys))
        throw InputError("transport_classes requires a subsystem pair");
    if (!controls_elementary_fusion(gsys, fsys).controls)
        throw InputError("transport_classes requires control of elementary fusion");
    auto elems = elementary_abelians(fsys);
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = 0; j < elems.size(); ++j) {
            if (i == j) continue;
            if (are_f_conjugate(fsys, elems[i], elems[j]) &&
                !are_f_conjugate(gsys, elems[i], elems[j]))
                return TransportVerdict{false, std::make_pair(elems[i], elems[j])};
        }
    }
    return TransportVerdict{true, std::nullopt};
}

} // namespace fusys
