#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "fusys/group.hpp"

namespace fusys {

// An injective homomorphism between subgroups, stored as a full table: the
// i-th sorted domain element maps to images()[i]. Full tables make function
// equality (and therefore morphism deduplication) a plain vector compare.
class GroupHom {
public:
    GroupHom() = default;

    GroupHom(Subgroup domain, Subgroup codomain, std::vector<Perm> images)
        : dom_(std::move(domain)), cod_(std::move(codomain)), imgs_(std::move(images)) {
        if (imgs_.size() != dom_.order())
            throw InputError("hom table size does not match domain order");
        for (const Perm& y : imgs_)
            if (!cod_.contains(y))
                throw InputError("hom image " + y.str() + " outside codomain");
    }

    // The map x -> g x g^{-1} restricted to q, landing in r.
    static GroupHom conjugation(const Perm& g, const Subgroup& q, const Subgroup& r) {
        Perm ginv = g.inverse();
        std::vector<Perm> imgs;
        imgs.reserve(q.order());
        for (const Perm& x : q.elements())
            imgs.push_back(g * x * ginv);
        return GroupHom(q, r, std::move(imgs));
    }

    static GroupHom inclusion(const Subgroup& q, const Subgroup& r) {
        if (!r.contains_subgroup(q))
            throw InputError("inclusion requires domain contained in codomain");
        return GroupHom(q, r, q.elements());
    }

    static GroupHom identity(const Subgroup& q) { return inclusion(q, q); }

    const Subgroup& domain() const { return dom_; }
    const Subgroup& codomain() const { return cod_; }
    const std::vector<Perm>& images() const { return imgs_; }

    Perm apply(const Perm& x) const {
        const auto& d = dom_.elements();
        auto it = std::lower_bound(d.begin(), d.end(), x);
        if (it == d.end() || *it != x)
            throw InputError("hom applied outside its domain");
        return imgs_[static_cast<std::size_t>(it - d.begin())];
    }

    bool is_homomorphism() const {
        const auto& d = dom_.elements();
        for (const Perm& x : d)
            for (const Perm& y : d)
                if (apply(x * y) != apply(x) * apply(y)) return false;
        return true;
    }

    bool is_injective() const {
        auto sorted = imgs_;
        std::sort(sorted.begin(), sorted.end());
        return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    }

    bool is_surjective() const {
        if (imgs_.size() != cod_.order()) return false;
        auto sorted = imgs_;
        std::sort(sorted.begin(), sorted.end());
        return sorted == cod_.elements();
    }

    Subgroup image() const { return Subgroup(cod_.ambient(), imgs_); }

    // Tables are compared as functions: same domain set, same values.
    friend bool operator==(const GroupHom& a, const GroupHom& b) {
        return a.dom_.elements() == b.dom_.elements() && a.imgs_ == b.imgs_;
    }
    friend bool operator<(const GroupHom& a, const GroupHom& b) {
        if (a.dom_.elements() != b.dom_.elements()) return a.dom_.elements() < b.dom_.elements();
        return a.imgs_ < b.imgs_;
    }

private:
    Subgroup dom_;
    Subgroup cod_;
    std::vector<Perm> imgs_;
};

// f after g; requires image(g) contained in domain(f).
inline GroupHom compose(const GroupHom& f, const GroupHom& g) {
    std::vector<Perm> imgs;
    imgs.reserve(g.domain().order());
    for (const Perm& y : g.images()) {
        if (!f.domain().contains(y))
            throw InputError("compose: image of inner map escapes domain of outer map");
        imgs.push_back(f.apply(y));
    }
    return GroupHom(g.domain(), f.codomain(), std::move(imgs));
}

inline GroupHom restrict_hom(const GroupHom& f, const Subgroup& sub) {
    if (!f.domain().contains_subgroup(sub))
        throw InputError("restrict: subgroup not contained in hom domain");
    std::vector<Perm> imgs;
    imgs.reserve(sub.order());
    for (const Perm& x : sub.elements())
        imgs.push_back(f.apply(x));
    return GroupHom(sub, f.codomain(), std::move(imgs));
}

// Split f as (isomorphism onto its image, image subgroup). Composing the
// returned iso with the inclusion of the image into f's codomain gives f back.
inline std::pair<GroupHom, Subgroup> iso_onto_image(const GroupHom& f) {
    Subgroup img = f.image();
    return {GroupHom(f.domain(), img, f.images()), img};
}

// Inverse of an isomorphism onto its image.
inline GroupHom invert_iso(const GroupHom& f) {
    if (!f.is_injective())
        throw InputError("invert_iso: map is not injective");
    Subgroup img = f.image();
    std::vector<std::pair<Perm, Perm>> pairs;
    pairs.reserve(f.images().size());
    const auto& d = f.domain().elements();
    for (std::size_t i = 0; i < d.size(); ++i)
        pairs.emplace_back(f.images()[i], d[i]);
    std::sort(pairs.begin(), pairs.end());
    std::vector<Perm> imgs;
    imgs.reserve(pairs.size());
    for (auto& pr : pairs) imgs.push_back(pr.second);
    return GroupHom(img, f.domain(), std::move(imgs));
}

// { c_g|_Q : g in A, g Q g^{-1} <= R }, deduplicated by table.
// A is any subgroup of the shared ambient group.
inline std::vector<GroupHom> homs_by_conjugation(const Subgroup& a, const Subgroup& q,
                                                 const Subgroup& r) {
    std::set<std::vector<Perm>> tables;
    for (const Perm& g : a.elements()) {
        Perm ginv = g.inverse();
        std::vector<Perm> imgs;
        imgs.reserve(q.order());
        bool ok = true;
        for (const Perm& x : q.elements()) {
            Perm y = g * x * ginv;
            if (!r.contains(y)) { ok = false; break; }
            imgs.push_back(std::move(y));
        }
        if (ok) tables.insert(std::move(imgs));
    }
    std::vector<GroupHom> out;
    out.reserve(tables.size());
    for (const auto& t : tables)
        out.emplace_back(q, r, t);
    return out;
}

inline std::vector<GroupHom> homs_by_conjugation(const GroupPtr& a, const Subgroup& q,
                                                 const Subgroup& r) {
    return homs_by_conjugation(Subgroup::full(a), q, r);
}

// The automorphisms in `auts` assembled into an explicit permutation group
// acting on the sorted elements of q (degree = |q|).
inline GroupPtr automorphism_group(const Subgroup& q, const std::vector<GroupHom>& auts,
                                   std::string name = "") {
    const auto& elems = q.elements();
    std::set<Perm> perms;
    for (const GroupHom& f : auts) {
        std::vector<unsigned> imgs(elems.size());
        for (std::size_t i = 0; i < elems.size(); ++i) {
            const Perm& y = f.images()[i];
            auto it = std::lower_bound(elems.begin(), elems.end(), y);
            imgs[i] = static_cast<unsigned>(it - elems.begin());
        }
        perms.insert(Perm(std::move(imgs)));
    }
    return Group::from_elements(static_cast<unsigned>(elems.size()),
                                {perms.begin(), perms.end()}, std::move(name));
}

} // namespace fusys
