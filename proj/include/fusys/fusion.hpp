#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fusys/hom.hpp"

namespace fusys {

// A fusion system on a finite p-group S, realized by conjugation inside an
// ambient subgroup of a fixed permutation group. Morphism sets are memoized
// per (domain, codomain) pair; instances are immutable and cheap to copy
// (copies share the memo).
class FusionSystem {
public:
    FusionSystem(unsigned p, Subgroup realizing, Subgroup s,
                 std::size_t subgroup_order_cap = kDefaultSubgroupOrderCap)
        : p_(p), ambient_(std::move(realizing)), s_(std::move(s)),
          order_cap_(subgroup_order_cap), memo_(std::make_shared<Memo>()) {
        if (!is_prime(p_)) throw InputError("fusion system prime " + std::to_string(p_));
        if (!ambient_.contains_subgroup(s_))
            throw InputError("fusion system: S not contained in realizing group");
        if (!s_.is_p_group(p_))
            throw InputError("fusion system: S is not a " + std::to_string(p_) + "-group");
    }

    // F_S(A) for the whole ambient group A with S its Sylow p-subgroup.
    static FusionSystem of_group(const GroupPtr& a, unsigned p) {
        return FusionSystem(p, Subgroup::full(a), sylow(a, p));
    }

    unsigned prime() const { return p_; }
    const Subgroup& base() const { return s_; }                // S
    const Subgroup& realizing_group() const { return ambient_; } // conjugation source

    bool object_of(const Subgroup& q) const { return s_.contains_subgroup(q); }

    // Hom_F(Q, R): all conjugation maps Q -> R by elements of the realizing
    // group, deduplicated by table. Deterministically ordered.
    const std::vector<GroupHom>& homs(const Subgroup& q, const Subgroup& r) const {
        if (!object_of(q) || !object_of(r))
            throw InputError("hom set requested for non-objects of the fusion system");
        Key key{q.elements(), r.elements()};
        std::lock_guard<std::mutex> lock(memo_->mu);
        auto it = memo_->homs.find(key);
        if (it == memo_->homs.end())
            it = memo_->homs.emplace(std::move(key), homs_by_conjugation(ambient_, q, r)).first;
        return it->second;
    }

    // All subgroups of S (the objects), cached.
    const std::vector<Subgroup>& subgroups() const {
        std::lock_guard<std::mutex> lock(memo_->mu);
        if (!memo_->subgroups)
            memo_->subgroups = all_subgroups(s_, order_cap_);
        return *memo_->subgroups;
    }

    // Same underlying S (element-wise) and same prime.
    bool same_base(const FusionSystem& other) const {
        return p_ == other.p_ && s_.same_elements(other.s_);
    }

private:
    struct Memo {
        std::mutex mu;
        std::map<std::pair<std::vector<Perm>, std::vector<Perm>>, std::vector<GroupHom>> homs;
        std::optional<std::vector<Subgroup>> subgroups;
    };
    using Key = std::pair<std::vector<Perm>, std::vector<Perm>>;

    unsigned p_;
    Subgroup ambient_;
    Subgroup s_;
    std::size_t order_cap_;
    std::shared_ptr<Memo> memo_;
};

inline const std::vector<GroupHom>& hom_f(const FusionSystem& f, const Subgroup& q,
                                          const Subgroup& r) {
    return f.homs(q, r);
}

// Aut_F(Q) assembled into an explicit group of permutations of Q's elements.
inline GroupPtr aut_f(const FusionSystem& f, const Subgroup& q) {
    return automorphism_group(q, f.homs(q, q));
}

inline bool are_f_conjugate(const FusionSystem& f, const Subgroup& q, const Subgroup& r) {
    if (q.order() != r.order()) return false;
    for (const GroupHom& phi : f.homs(q, r))
        if (phi.is_surjective()) return true;
    return false;
}

// Partition of all subgroups of S into F-conjugacy classes. Classes are
// ordered by their smallest member; members are sorted within each class.
inline std::vector<std::vector<Subgroup>> f_classes(const FusionSystem& f) {
    const auto& subs = f.subgroups();
    std::vector<bool> used(subs.size(), false);
    std::vector<std::vector<Subgroup>> classes;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (used[i]) continue;
        std::vector<Subgroup> cls{subs[i]};
        used[i] = true;
        for (std::size_t j = i + 1; j < subs.size(); ++j) {
            if (used[j] || subs[j].order() != subs[i].order()) continue;
            if (are_f_conjugate(f, subs[i], subs[j])) {
                cls.push_back(subs[j]);
                used[j] = true;
            }
        }
        classes.push_back(std::move(cls));
    }
    return classes;
}

// Aut_S(Q): conjugation maps Q -> Q induced by N_S(Q).
inline std::vector<GroupHom> aut_s(const FusionSystem& f, const Subgroup& q) {
    return homs_by_conjugation(f.base(), q, q);
}

// Definition: Aut_S(Q) is a Sylow p-subgroup of Aut_F(Q). For explicit
// tables that amounts to: Aut_S(Q) is contained in Aut_F(Q) and its order
// equals the p-part of |Aut_F(Q)|.
inline bool fully_automized(const FusionSystem& f, const Subgroup& q) {
    auto auts_s = aut_s(f, q);
    const auto& auts_f = f.homs(q, q);
    for (const GroupHom& a : auts_s) {
        bool found = false;
        for (const GroupHom& b : auts_f)
            if (a == b) { found = true; break; }
        if (!found) return false;
    }
    return auts_s.size() == p_part(auts_f.size(), f.prime());
}

// N_phi = { g in N_S(Q) : phi c_g phi^{-1} in Aut_S(phi(Q)) } for an
// F-isomorphism phi from Q onto a subgroup of S.
inline Subgroup n_phi(const FusionSystem& f, const GroupHom& phi) {
    const Subgroup& q = phi.domain();
    if (!f.object_of(q))
        throw InputError("n_phi: domain is not an object of the fusion system");
    Subgroup img = phi.image();
    if (!f.object_of(img))
        throw InputError("n_phi: image is not a subgroup of S");
    {
        bool in_f = false;
        for (const GroupHom& m : f.homs(q, img))
            if (m.images() == phi.images()) { in_f = true; break; }
        if (!in_f) throw InputError("n_phi: phi is not a morphism of the fusion system");
    }
    GroupHom phi_iso = iso_onto_image(phi).first;
    GroupHom phi_inv = invert_iso(phi_iso);
    auto auts_s_img = homs_by_conjugation(f.base(), img, img);

    Subgroup ns_q = normalizer(f.base(), q);
    std::vector<Perm> result;
    for (const Perm& g : ns_q.elements()) {
        GroupHom cg = GroupHom::conjugation(g, q, q);
        GroupHom transported = compose(phi_iso, compose(cg, phi_inv)); // phi c_g phi^{-1}
        bool in_aut_s = false;
        for (const GroupHom& a : auts_s_img)
            if (a.images() == transported.images()) { in_aut_s = true; break; }
        if (in_aut_s) result.push_back(g);
    }
    return Subgroup(q.ambient(), std::move(result));
}

// R is receptive if every F-isomorphism onto R extends over its N_phi.
// The extension search is brute force over Hom_F(N_phi, S).
inline bool receptive(const FusionSystem& f, const Subgroup& r) {
    for (const Subgroup& q : f.subgroups()) {
        if (q.order() != r.order()) continue;
        for (const GroupHom& phi : f.homs(q, r)) {
            if (!phi.is_surjective()) continue;
            Subgroup nphi = n_phi(f, phi);
            bool extends = false;
            for (const GroupHom& ext : f.homs(nphi, f.base())) {
                if (restrict_hom(ext, q).images() == phi.images()) { extends = true; break; }
            }
            if (!extends) return false;
        }
    }
    return true;
}

struct SaturationClassVerdict {
    Subgroup representative;
    std::optional<Subgroup> witness;            // member both fully automized and receptive
    std::optional<Subgroup> fully_automized_member;
    std::optional<Subgroup> receptive_member;
};

struct SaturationReport {
    bool saturated = false;
    std::vector<SaturationClassVerdict> classes;
};

// Saturation: every F-class must contain a member that is simultaneously
// fully automized and receptive.
inline SaturationReport is_saturated(const FusionSystem& f) {
    SaturationReport report;
    report.saturated = true;
    for (const auto& cls : f_classes(f)) {
        SaturationClassVerdict v{cls.front(), std::nullopt, std::nullopt, std::nullopt};
        for (const Subgroup& member : cls) {
            bool fa = fully_automized(f, member);
            bool rc = receptive(f, member);
            if (fa && !v.fully_automized_member) v.fully_automized_member = member;
            if (rc && !v.receptive_member) v.receptive_member = member;
            if (fa && rc && !v.witness) v.witness = member;
        }
        if (!v.witness) report.saturated = false;
        report.classes.push_back(std::move(v));
    }
    return report;
}

// G <= F: every morphism of G is a morphism of F, over all object pairs.
inline bool is_subsystem(const FusionSystem& gsys, const FusionSystem& fsys) {
    if (!gsys.same_base(fsys)) return false;
    const auto& subs = fsys.subgroups();
    for (const Subgroup& q : subs) {
        for (const Subgroup& r : subs) {
            const auto& hg = gsys.homs(q, r);
            const auto& hf = fsys.homs(q, r);
            for (const GroupHom& m : hg) {
                bool found = false;
                for (const GroupHom& n : hf)
                    if (m == n) { found = true; break; }
                if (!found) return false;
            }
        }
    }
    return true;
}

inline bool systems_equal(const FusionSystem& gsys, const FusionSystem& fsys) {
    return is_subsystem(gsys, fsys) && is_subsystem(fsys, gsys);
}

// ---------------------------------------------------------------------------
// Explicit-table systems: accepted only for validation against the fusion
// system axioms. Realized systems pass by construction; hand-built tables may
// fail with a named axiom.

struct ExplicitFusionSystem {
    unsigned p = 0;
    Subgroup s;
    // keyed by (domain elements, codomain elements)
    std::map<std::pair<std::vector<Perm>, std::vector<Perm>>, std::vector<GroupHom>> homs;

    const std::vector<GroupHom>* find(const Subgroup& q, const Subgroup& r) const {
        auto it = homs.find({q.elements(), r.elements()});
        return it == homs.end() ? nullptr : &it->second;
    }
};

struct FusionAxiomCheck {
    bool ok = true;
    std::string violated_axiom; // empty when ok
    std::string detail;
};

namespace detail {
inline bool table_listed(const ExplicitFusionSystem& sys, const Subgroup& q, const Subgroup& r,
                         const std::vector<Perm>& images) {
    const auto* hs = sys.find(q, r);
    if (!hs) return false;
    for (const GroupHom& m : *hs)
        if (m.images() == images) return true;
    return false;
}
} // namespace detail

inline FusionAxiomCheck is_fusion_system(const ExplicitFusionSystem& sys) {
    auto fail = [](std::string axiom, std::string detail) {
        return FusionAxiomCheck{false, std::move(axiom), std::move(detail)};
    };
    auto subs = all_subgroups(sys.s);

    // Every listed morphism must be an injective homomorphism with the
    // stated domain and codomain.
    for (const auto& [key, morphisms] : sys.homs) {
        for (const GroupHom& m : morphisms) {
            if (m.domain().elements() != key.first || m.codomain().elements() != key.second)
                return fail("table shape", "morphism filed under wrong (Q,R) pair");
            if (!m.is_homomorphism())
                return fail("not a homomorphism", "table violates f(xy) = f(x)f(y)");
            if (!m.is_injective())
                return fail("not in Inj", "non-injective table from subgroup of order " +
                                              std::to_string(m.domain().order()));
        }
    }

    // Hom_S(Q,R) <= Mor(Q,R).
    for (const Subgroup& q : subs) {
        for (const Subgroup& r : subs) {
            for (const GroupHom& c : homs_by_conjugation(sys.s, q, r)) {
                if (!detail::table_listed(sys, q, r, c.images()))
                    return fail("Hom_S not contained",
                                "conjugation map missing on a pair with |Q| = " +
                                    std::to_string(q.order()) + ", |R| = " +
                                    std::to_string(r.order()));
            }
        }
    }

    // Decomposition: each morphism factors as an F-isomorphism followed by
    // an inclusion, with both factors present in the table.
    for (const auto& [key, morphisms] : sys.homs) {
        (void)key;
        for (const GroupHom& m : morphisms) {
            auto [iso, img] = iso_onto_image(m);
            if (!detail::table_listed(sys, m.domain(), img, iso.images()))
                return fail("decomposition fails", "iso-onto-image factor missing");
            if (!detail::table_listed(sys, img, m.codomain(), img.elements()))
                return fail("decomposition fails", "inclusion factor missing");
        }
    }

    // Closure under composition and restriction.
    for (const auto& [key1, ms1] : sys.homs) {
        (void)key1;
        for (const GroupHom& m : ms1) {
            for (const auto& [key2, ms2] : sys.homs) {
                if (key2.first != m.codomain().elements()) continue;
                for (const GroupHom& n : ms2) {
                    GroupHom comp = compose(n, m);
                    if (!detail::table_listed(sys, comp.domain(), comp.codomain(), comp.images()))
                        return fail("composition not closed", "composite morphism missing");
                }
            }
            for (const Subgroup& q2 : subs) {
                if (!m.domain().contains_subgroup(q2)) continue;
                GroupHom res = restrict_hom(m, q2);
                if (!detail::table_listed(sys, q2, m.codomain(), res.images()))
                    return fail("restriction not closed", "restricted morphism missing");
            }
        }
    }
    return {};
}

// Export a realized system as an explicit table (regression guard: the
// result must always satisfy the axioms).
inline ExplicitFusionSystem to_explicit(const FusionSystem& f) {
    ExplicitFusionSystem out;
    out.p = f.prime();
    out.s = f.base();
    const auto& subs = f.subgroups();
    for (const Subgroup& q : subs)
        for (const Subgroup& r : subs)
            out.homs[{q.elements(), r.elements()}] = f.homs(q, r);
    return out;
}

inline FusionAxiomCheck is_fusion_system(const FusionSystem& f) {
    return is_fusion_system(to_explicit(f));
}

} // namespace fusys
