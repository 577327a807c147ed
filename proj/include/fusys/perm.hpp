#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fusys/errors.hpp"

namespace fusys {

// A permutation of {0, ..., degree-1}, stored as its image array.
// Ordering is lexicographic on images so element lists sort deterministically.
class Perm {
public:
    Perm() = default;

    explicit Perm(std::vector<unsigned> images) : imgs_(std::move(images)) {
        if (!is_bijection(imgs_))
            throw InputError("permutation images are not a bijection: " + to_string_raw(imgs_));
    }

    static Perm identity(unsigned degree) {
        std::vector<unsigned> v(degree);
        std::iota(v.begin(), v.end(), 0u);
        Perm p;
        p.imgs_ = std::move(v);
        return p;
    }

    unsigned degree() const { return static_cast<unsigned>(imgs_.size()); }
    unsigned operator()(unsigned point) const { return imgs_[point]; }
    const std::vector<unsigned>& images() const { return imgs_; }

    bool is_identity() const {
        for (unsigned i = 0; i < imgs_.size(); ++i)
            if (imgs_[i] != i) return false;
        return true;
    }

    // (a * b)(x) = a(b(x)): b acts first.
    friend Perm operator*(const Perm& a, const Perm& b) {
        if (a.degree() != b.degree())
            throw InputError("degree mismatch in permutation product");
        Perm r;
        r.imgs_.resize(a.imgs_.size());
        for (unsigned i = 0; i < b.imgs_.size(); ++i)
            r.imgs_[i] = a.imgs_[b.imgs_[i]];
        return r;
    }

    Perm inverse() const {
        Perm r;
        r.imgs_.resize(imgs_.size());
        for (unsigned i = 0; i < imgs_.size(); ++i)
            r.imgs_[imgs_[i]] = i;
        return r;
    }

    unsigned order() const {
        Perm p = *this;
        unsigned n = 1;
        while (!p.is_identity()) {
            p = p * *this;
            ++n;
        }
        return n;
    }

    friend auto operator<=>(const Perm& a, const Perm& b) = default;

    // Cycle notation, e.g. "(0 1 2)(3 4)"; "()" for the identity.
    std::string str() const {
        std::ostringstream os;
        std::vector<bool> seen(imgs_.size(), false);
        bool any = false;
        for (unsigned i = 0; i < imgs_.size(); ++i) {
            if (seen[i] || imgs_[i] == i) continue;
            any = true;
            os << '(' << i;
            seen[i] = true;
            for (unsigned j = imgs_[i]; j != i; j = imgs_[j]) {
                os << ' ' << j;
                seen[j] = true;
            }
            os << ')';
        }
        return any ? os.str() : "()";
    }

private:
    static bool is_bijection(const std::vector<unsigned>& v) {
        std::vector<bool> hit(v.size(), false);
        for (unsigned x : v) {
            if (x >= v.size() || hit[x]) return false;
            hit[x] = true;
        }
        return true;
    }

    static std::string to_string_raw(const std::vector<unsigned>& v) {
        std::string s = "[";
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(v[i]);
        }
        return s + "]";
    }

    std::vector<unsigned> imgs_;
};

// Convenience for tests and built-in data: permutation from one cycle.
inline Perm cycle(unsigned degree, const std::vector<unsigned>& pts) {
    std::vector<unsigned> v(degree);
    std::iota(v.begin(), v.end(), 0u);
    for (size_t i = 0; i < pts.size(); ++i)
        v[pts[i]] = pts[(i + 1) % pts.size()];
    return Perm(std::move(v));
}

} // namespace fusys
