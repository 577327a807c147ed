#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fusys/perm.hpp"

namespace fusys {

inline constexpr std::size_t kDefaultElementCap = 50000;
inline constexpr std::size_t kDefaultSubgroupOrderCap = 64;

// Closure of a generating set under products and inverses.
// Returns the elements sorted lexicographically by image array.
inline std::vector<Perm> closure(const std::vector<Perm>& generators,
                                 unsigned degree,
                                 std::size_t element_cap = kDefaultElementCap) {
    for (const Perm& g : generators)
        if (g.degree() != degree)
            throw InputError("generator degree " + std::to_string(g.degree()) +
                             " does not match group degree " + std::to_string(degree));
    std::set<Perm> elems;
    std::deque<Perm> todo;
    elems.insert(Perm::identity(degree));
    for (const Perm& g : generators)
        if (elems.insert(g).second) todo.push_back(g);
    while (!todo.empty()) {
        Perm cur = todo.front();
        todo.pop_front();
        for (const Perm& g : generators) {
            for (Perm next : {cur * g, g * cur}) {
                if (elems.insert(next).second) {
                    if (elems.size() > element_cap)
                        throw CapError("group closure exceeds element cap of " +
                                       std::to_string(element_cap));
                    todo.push_back(std::move(next));
                }
            }
        }
    }
    return {elems.begin(), elems.end()};
}

inline std::vector<Perm> closure(const std::vector<Perm>& generators) {
    if (generators.empty())
        throw InputError("closure with no generators needs an explicit degree");
    return closure(generators, generators.front().degree());
}

// An explicit finite permutation group: generators plus the cached element
// closure. Immutable after construction; shared by reference everywhere.
class Group {
public:
    static std::shared_ptr<const Group> make(unsigned degree, std::vector<Perm> generators,
                                             std::string name = "",
                                             std::size_t element_cap = kDefaultElementCap) {
        auto g = std::shared_ptr<Group>(new Group());
        g->degree_ = degree;
        g->name_ = std::move(name);
        g->gens_ = std::move(generators);
        g->elems_ = closure(g->gens_, degree, element_cap);
        return g;
    }

    // Wrap an element list that is already known to be a group.
    static std::shared_ptr<const Group> from_elements(unsigned degree, std::vector<Perm> elements,
                                                      std::string name = "") {
        auto g = std::shared_ptr<Group>(new Group());
        g->degree_ = degree;
        g->name_ = std::move(name);
        std::sort(elements.begin(), elements.end());
        g->gens_ = elements; // every element generates; callers rarely need gens here
        g->elems_ = std::move(elements);
        return g;
    }

    unsigned degree() const { return degree_; }
    const std::string& name() const { return name_; }
    const std::vector<Perm>& generators() const { return gens_; }
    const std::vector<Perm>& elements() const { return elems_; }
    std::size_t order() const { return elems_.size(); }

    bool contains(const Perm& p) const {
        return std::binary_search(elems_.begin(), elems_.end(), p);
    }

    bool is_abelian() const {
        for (const Perm& a : gens_)
            for (const Perm& b : gens_)
                if (a * b != b * a) return false;
        return true;
    }

private:
    Group() = default;
    unsigned degree_ = 0;
    std::string name_;
    std::vector<Perm> gens_;
    std::vector<Perm> elems_;
};

using GroupPtr = std::shared_ptr<const Group>;

// A subgroup: sorted element subset of an ambient group.
class Subgroup {
public:
    Subgroup() = default;

    Subgroup(GroupPtr ambient, std::vector<Perm> elements)
        : ambient_(std::move(ambient)), elems_(std::move(elements)) {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
        for (const Perm& e : elems_)
            if (!ambient_->contains(e))
                throw InputError("subgroup element " + e.str() + " outside ambient group");
    }

    static Subgroup generated(GroupPtr ambient, const std::vector<Perm>& gens,
                              std::size_t element_cap = kDefaultElementCap) {
        auto elems = closure(gens, ambient->degree(), element_cap);
        return Subgroup(std::move(ambient), std::move(elems));
    }

    static Subgroup full(GroupPtr g) {
        auto elems = g->elements();
        return Subgroup(std::move(g), std::move(elems));
    }

    static Subgroup trivial(GroupPtr g) {
        std::vector<Perm> e{Perm::identity(g->degree())};
        return Subgroup(std::move(g), std::move(e));
    }

    const GroupPtr& ambient() const { return ambient_; }
    const std::vector<Perm>& elements() const { return elems_; }
    std::size_t order() const { return elems_.size(); }
    unsigned degree() const { return ambient_->degree(); }

    bool contains(const Perm& p) const {
        return std::binary_search(elems_.begin(), elems_.end(), p);
    }

    bool contains_subgroup(const Subgroup& other) const {
        return std::includes(elems_.begin(), elems_.end(),
                             other.elems_.begin(), other.elems_.end());
    }

    bool same_elements(const Subgroup& other) const { return elems_ == other.elems_; }

    bool is_abelian() const {
        for (const Perm& a : elems_)
            for (const Perm& b : elems_)
                if (a * b != b * a) return false;
        return true;
    }

    bool is_p_group(unsigned p) const {
        std::size_t n = order();
        while (n % p == 0) n /= p;
        return n == 1;
    }

    // Abelian of exponent dividing p. The trivial subgroup counts (rank 0).
    bool is_elementary_abelian(unsigned p) const {
        if (!is_abelian()) return false;
        for (const Perm& e : elems_) {
            unsigned o = e.order();
            if (o != 1 && o != p) return false;
        }
        return true;
    }

    // log_p of the order; only meaningful for elementary abelian subgroups.
    unsigned rank(unsigned p) const {
        unsigned r = 0;
        std::size_t n = order();
        while (n % p == 0) { n /= p; ++r; }
        return r;
    }

    // Deterministic total order: by order, then by element list.
    friend bool operator<(const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elems_ < b.elems_;
    }
    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.elems_ == b.elems_;
    }

private:
    GroupPtr ambient_;
    std::vector<Perm> elems_;
};

// {g q g^{-1} : q in Q}, as a subgroup of Q's ambient group.
inline Subgroup conjugate(const Perm& g, const Subgroup& q) {
    if (!q.ambient()->contains(g))
        throw InputError("conjugating element " + g.str() + " not in ambient group");
    std::vector<Perm> elems;
    elems.reserve(q.order());
    Perm ginv = g.inverse();
    for (const Perm& x : q.elements())
        elems.push_back(g * x * ginv);
    return Subgroup(q.ambient(), std::move(elems));
}

// N_G(Q) computed inside an arbitrary subgroup G of Q's ambient group.
inline Subgroup normalizer(const Subgroup& g, const Subgroup& q) {
    std::vector<Perm> res;
    for (const Perm& x : g.elements()) {
        Perm xinv = x.inverse();
        bool ok = true;
        for (const Perm& e : q.elements()) {
            if (!q.contains(x * e * xinv)) { ok = false; break; }
        }
        if (ok) res.push_back(x);
    }
    return Subgroup(q.ambient(), std::move(res));
}

inline Subgroup normalizer(const GroupPtr& g, const Subgroup& q) {
    return normalizer(Subgroup::full(g), q);
}

inline Subgroup centralizer(const Subgroup& g, const Subgroup& q) {
    std::vector<Perm> res;
    for (const Perm& x : g.elements()) {
        bool ok = true;
        for (const Perm& e : q.elements()) {
            if (x * e != e * x) { ok = false; break; }
        }
        if (ok) res.push_back(x);
    }
    return Subgroup(q.ambient(), std::move(res));
}

inline Subgroup centralizer(const GroupPtr& g, const Subgroup& q) {
    return centralizer(Subgroup::full(g), q);
}

inline std::size_t p_part(std::size_t n, unsigned p) {
    std::size_t pp = 1;
    while (n % p == 0) { n /= p; pp *= p; }
    return pp;
}

inline bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// A Sylow p-subgroup. Grown from a p-element of maximal order by repeatedly
// adjoining p-elements of the normalizer; deterministic given the sorted
// element order. Returns the trivial subgroup when p does not divide |G|.
inline Subgroup sylow(const GroupPtr& g, unsigned p) {
    if (!is_prime(p)) throw InputError("sylow: " + std::to_string(p) + " is not prime");
    const std::size_t target = p_part(g->order(), p);
    Subgroup cur = Subgroup::trivial(g);
    if (target == 1) return cur;

    std::map<Perm, unsigned> p_orders;
    unsigned max_order = 1;
    for (const Perm& e : g->elements()) {
        unsigned o = e.order();
        std::size_t q = o;
        while (q % p == 0) q /= p;
        if (q == 1 && o > 1) {
            p_orders.emplace(e, o);
            max_order = std::max(max_order, o);
        }
    }
    for (const Perm& e : g->elements()) {
        auto it = p_orders.find(e);
        if (it != p_orders.end() && it->second == max_order) {
            cur = Subgroup::generated(g, {e});
            break;
        }
    }
    while (cur.order() < target) {
        Subgroup norm = normalizer(g, cur);
        bool grew = false;
        for (const Perm& e : norm.elements()) {
            if (cur.contains(e) || !p_orders.count(e)) continue;
            auto gens = cur.elements();
            gens.push_back(e);
            Subgroup bigger = Subgroup::generated(g, gens);
            if (p_part(bigger.order(), p) == bigger.order()) {
                cur = std::move(bigger);
                grew = true;
                break;
            }
        }
        if (!grew)
            throw Error("sylow construction stalled; group data is inconsistent");
    }
    return cur;
}

// Every subgroup of a p-group P, found by BFS over one-element extensions.
// Complete and duplicate-free; sorted by (order, elements).
inline std::vector<Subgroup> all_subgroups(const Subgroup& p_group,
                                           std::size_t order_cap = kDefaultSubgroupOrderCap) {
    if (p_group.order() > order_cap)
        throw CapError("subgroup enumeration cap exceeded: |P| = " +
                       std::to_string(p_group.order()) + " > " + std::to_string(order_cap));
    const GroupPtr& amb = p_group.ambient();
    std::set<std::vector<Perm>> seen;
    std::deque<std::vector<Perm>> todo;
    std::vector<Perm> triv{Perm::identity(amb->degree())};
    seen.insert(triv);
    todo.push_back(triv);
    while (!todo.empty()) {
        std::vector<Perm> cur = todo.front();
        todo.pop_front();
        for (const Perm& x : p_group.elements()) {
            if (std::binary_search(cur.begin(), cur.end(), x)) continue;
            auto gens = cur;
            gens.push_back(x);
            auto ext = closure(gens, amb->degree());
            if (seen.insert(ext).second) todo.push_back(std::move(ext));
        }
    }
    std::vector<Subgroup> out;
    out.reserve(seen.size());
    for (auto& elems : seen)
        out.emplace_back(amb, elems);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace fusys
