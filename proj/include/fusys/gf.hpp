#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fusys/errors.hpp"

namespace fusys::gf {

// Scalar arithmetic mod a small prime (p <= 251; in practice p <= 7 here).

inline std::uint8_t add(std::uint8_t a, std::uint8_t b, unsigned p) {
    unsigned s = a + b;
    return static_cast<std::uint8_t>(s >= p ? s - p : s);
}

inline std::uint8_t sub(std::uint8_t a, std::uint8_t b, unsigned p) {
    return static_cast<std::uint8_t>(a >= b ? a - b : a + p - b);
}

inline std::uint8_t mul(std::uint8_t a, std::uint8_t b, unsigned p) {
    return static_cast<std::uint8_t>((unsigned(a) * b) % p);
}

inline std::uint8_t neg(std::uint8_t a, unsigned p) {
    return static_cast<std::uint8_t>(a == 0 ? 0 : p - a);
}

inline std::uint8_t inv(std::uint8_t a, unsigned p) {
    if (a == 0) throw Error("division by zero in GF(p)");
    std::uint8_t r = 1, base = a;
    unsigned e = p - 2; // Fermat
    while (e) {
        if (e & 1) r = mul(r, base, p);
        base = mul(base, base, p);
        e >>= 1;
    }
    return r;
}

using SparseEntry = std::pair<std::uint32_t, std::uint8_t>;

// --- Row engines -----------------------------------------------------------
//
// An engine owns a fixed row width and provides dense row storage plus the
// handful of operations Gaussian elimination needs. Three layouts:
//   Gf2Rows - one bit per entry, axpy is XOR
//   Gf3Rows - two bit planes per entry, branch-free mod-3 adder
//   GfpRows - one byte per entry, any small prime

class Gf2Rows {
public:
    using Row = std::vector<std::uint64_t>;

    explicit Gf2Rows(std::size_t width) : width_(width), words_((width + 63) / 64) {}

    std::size_t width() const { return width_; }
    unsigned prime() const { return 2; }

    Row from_sparse(const std::vector<SparseEntry>& entries) const {
        Row r(words_, 0);
        for (auto [c, v] : entries)
            if (v & 1) r[c >> 6] ^= (std::uint64_t{1} << (c & 63));
        return r;
    }

    Row from_dense(const std::vector<std::uint8_t>& v) const {
        Row r(words_, 0);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] & 1) r[i >> 6] |= (std::uint64_t{1} << (i & 63));
        return r;
    }

    std::vector<std::uint8_t> to_dense(const Row& r) const {
        std::vector<std::uint8_t> v(width_, 0);
        for (std::size_t i = 0; i < width_; ++i)
            v[i] = static_cast<std::uint8_t>((r[i >> 6] >> (i & 63)) & 1);
        return v;
    }

    std::ptrdiff_t lead(const Row& r) const {
        for (std::size_t w = 0; w < words_; ++w)
            if (r[w]) return static_cast<std::ptrdiff_t>(w * 64 + std::countr_zero(r[w]));
        return -1;
    }

    std::uint8_t get(const Row& r, std::size_t i) const {
        return static_cast<std::uint8_t>((r[i >> 6] >> (i & 63)) & 1);
    }

    void scale(Row&, std::uint8_t) const {} // only nonzero scalar is 1

    void axpy(Row& dst, const Row& src, std::uint8_t c) const {
        if (!(c & 1)) return;
        for (std::size_t w = 0; w < words_; ++w) dst[w] ^= src[w];
    }

private:
    std::size_t width_, words_;
};

class Gf3Rows {
public:
    // value 0 -> (lo,hi) = (0,0); 1 -> (1,0); 2 -> (0,1)
    struct Row {
        std::vector<std::uint64_t> lo, hi;
    };

    explicit Gf3Rows(std::size_t width) : width_(width), words_((width + 63) / 64) {}

    std::size_t width() const { return width_; }
    unsigned prime() const { return 3; }

    Row zero() const { return Row{std::vector<std::uint64_t>(words_, 0), std::vector<std::uint64_t>(words_, 0)}; }

    Row from_sparse(const std::vector<SparseEntry>& entries) const {
        Row r = zero();
        for (auto [c, v] : entries) {
            std::uint64_t bit = std::uint64_t{1} << (c & 63);
            if (v % 3 == 1) r.lo[c >> 6] |= bit;
            else if (v % 3 == 2) r.hi[c >> 6] |= bit;
        }
        return r;
    }

    Row from_dense(const std::vector<std::uint8_t>& v) const {
        Row r = zero();
        for (std::size_t i = 0; i < v.size(); ++i) {
            std::uint64_t bit = std::uint64_t{1} << (i & 63);
            if (v[i] == 1) r.lo[i >> 6] |= bit;
            else if (v[i] == 2) r.hi[i >> 6] |= bit;
        }
        return r;
    }

    std::vector<std::uint8_t> to_dense(const Row& r) const {
        std::vector<std::uint8_t> v(width_, 0);
        for (std::size_t i = 0; i < width_; ++i) v[i] = get(r, i);
        return v;
    }

    std::ptrdiff_t lead(const Row& r) const {
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t any = r.lo[w] | r.hi[w];
            if (any) return static_cast<std::ptrdiff_t>(w * 64 + std::countr_zero(any));
        }
        return -1;
    }

    std::uint8_t get(const Row& r, std::size_t i) const {
        std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (r.lo[i >> 6] & bit) return 1;
        if (r.hi[i >> 6] & bit) return 2;
        return 0;
    }

    // Multiplication by 2 = negation swaps the planes.
    void scale(Row& r, std::uint8_t c) const {
        if (c % 3 == 2) r.lo.swap(r.hi);
    }

    void axpy(Row& dst, const Row& src, std::uint8_t c) const {
        c %= 3;
        if (c == 0) return;
        const std::vector<std::uint64_t>& s1 = (c == 1) ? src.lo : src.hi;
        const std::vector<std::uint64_t>& s2 = (c == 1) ? src.hi : src.lo;
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t a0 = dst.lo[w], a1 = dst.hi[w];
            std::uint64_t b0 = s1[w], b1 = s2[w];
            std::uint64_t t = (a0 | b1) ^ (a1 | b0);
            dst.lo[w] = (a1 | b1) ^ t;
            dst.hi[w] = (a0 | b0) ^ t;
        }
    }

private:
    std::size_t width_, words_;
};

class GfpRows {
public:
    using Row = std::vector<std::uint8_t>;

    // p < 128 so that a+p-b and the scalar tables fit in a byte.
    GfpRows(std::size_t width, unsigned p) : width_(width), p_(p) {
        if (p >= 128) throw Error("GF(p) rows support primes below 128");
    }

    std::size_t width() const { return width_; }
    unsigned prime() const { return p_; }

    Row from_sparse(const std::vector<SparseEntry>& entries) const {
        Row r(width_, 0);
        for (auto [c, v] : entries) r[c] = static_cast<std::uint8_t>(v % p_);
        return r;
    }

    Row from_dense(const std::vector<std::uint8_t>& v) const { return v; }
    std::vector<std::uint8_t> to_dense(const Row& r) const { return r; }

    std::ptrdiff_t lead(const Row& r) const {
        for (std::size_t i = 0; i < width_; ++i)
            if (r[i]) return static_cast<std::ptrdiff_t>(i);
        return -1;
    }

    std::uint8_t get(const Row& r, std::size_t i) const { return r[i]; }

    void scale(Row& r, std::uint8_t c) const {
        if (c == 1) return;
        std::uint8_t table[128];
        for (unsigned v = 0; v < p_; ++v) table[v] = mul(static_cast<std::uint8_t>(v), c, p_);
        for (auto& x : r) x = table[x];
    }

    void axpy(Row& dst, const Row& src, std::uint8_t c) const {
        c %= p_;
        if (c == 0) return;
        const std::uint8_t p8 = static_cast<std::uint8_t>(p_);
        if (c == 1) {
            for (std::size_t i = 0; i < width_; ++i) {
                std::uint8_t s = dst[i] + src[i];
                dst[i] = s >= p8 ? s - p8 : s;
            }
        } else if (c == p_ - 1) {
            for (std::size_t i = 0; i < width_; ++i) {
                std::uint8_t s = dst[i] + p8 - src[i];
                dst[i] = s >= p8 ? s - p8 : s;
            }
        } else {
            std::uint8_t table[128];
            for (unsigned v = 0; v < p_; ++v) table[v] = mul(static_cast<std::uint8_t>(v), c, p_);
            for (std::size_t i = 0; i < width_; ++i) {
                std::uint8_t s = dst[i] + table[src[i]];
                dst[i] = s >= p8 ? s - p8 : s;
            }
        }
    }

private:
    std::size_t width_;
    unsigned p_;
};

// --- Incremental row echelon ------------------------------------------------
//
// Rows are inserted one at a time and reduced against the pivots found so
// far; pivot selection is leftmost. Stored pivot rows are normalized to a
// leading 1. Optional per-row tags carry coordinates of the inserted vector
// relative to a caller-chosen basis (used for the coordinate solver).

template <class Engine>
class EchelonT {
public:
    using Row = typename Engine::Row;

    EchelonT(Engine eng, std::size_t tag_dim = 0)
        : eng_(std::move(eng)), tag_dim_(tag_dim), row_of_col_(eng_.width(), -1) {}

    const Engine& engine() const { return eng_; }
    std::size_t rank() const { return rows_.size(); }
    std::size_t width() const { return eng_.width(); }
    unsigned prime() const { return eng_.prime(); }

    bool insert_sparse(const std::vector<SparseEntry>& entries,
                       std::vector<std::uint8_t> tag = {}) {
        return insert_row(eng_.from_sparse(entries), std::move(tag));
    }

    bool insert_dense(const std::vector<std::uint8_t>& v, std::vector<std::uint8_t> tag = {}) {
        return insert_row(eng_.from_dense(v), std::move(tag));
    }

    // Reduce r against the pivots; commit if a new pivot remains.
    bool insert_row(Row r, std::vector<std::uint8_t> tag = {}) {
        if (tag.empty()) tag.assign(tag_dim_, 0);
        const unsigned p = eng_.prime();
        std::ptrdiff_t l;
        while ((l = eng_.lead(r)) >= 0) {
            std::int64_t pr = row_of_col_[static_cast<std::size_t>(l)];
            if (pr < 0) break;
            std::uint8_t c = neg(eng_.get(r, static_cast<std::size_t>(l)), p);
            eng_.axpy(r, rows_[static_cast<std::size_t>(pr)], c);
            axpy_tag(tag, tags_[static_cast<std::size_t>(pr)], c, p);
        }
        if (l < 0) return false;
        std::uint8_t leadval = eng_.get(r, static_cast<std::size_t>(l));
        std::uint8_t s = inv(leadval, p);
        eng_.scale(r, s);
        scale_tag(tag, s, p);
        row_of_col_[static_cast<std::size_t>(l)] = static_cast<std::int64_t>(rows_.size());
        pivot_cols_.push_back(static_cast<std::size_t>(l));
        rows_.push_back(std::move(r));
        tags_.push_back(std::move(tag));
        return true;
    }

    // Is v in the row span? Does not modify the structure.
    bool contains_dense(const std::vector<std::uint8_t>& v) const {
        Row r = eng_.from_dense(v);
        reduce_only(r);
        return eng_.lead(r) < 0;
    }

    // Express v in the tag basis: v reduced to zero yields the accumulated
    // tag combination; nullopt when v is outside the span.
    std::optional<std::vector<std::uint8_t>> solve_dense(const std::vector<std::uint8_t>& v) const {
        const unsigned p = eng_.prime();
        Row r = eng_.from_dense(v);
        std::vector<std::uint8_t> acc(tag_dim_, 0);
        std::ptrdiff_t l;
        while ((l = eng_.lead(r)) >= 0) {
            std::int64_t pr = row_of_col_[static_cast<std::size_t>(l)];
            if (pr < 0) return std::nullopt;
            std::uint8_t c = eng_.get(r, static_cast<std::size_t>(l));
            // r -= c * pivot, acc += c * pivot_tag
            eng_.axpy(r, rows_[static_cast<std::size_t>(pr)], neg(c, p));
            axpy_tag(acc, tags_[static_cast<std::size_t>(pr)], c, p);
        }
        return acc;
    }

    // Basis of the null space of the matrix whose rows were inserted,
    // as dense byte vectors. Free columns are taken in ascending order.
    std::vector<std::vector<std::uint8_t>> kernel_basis() const {
        const unsigned p = eng_.prime();
        const std::size_t w = eng_.width();
        // pivot rows ordered by pivot column
        std::vector<std::size_t> order(rows_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return pivot_cols_[a] < pivot_cols_[b];
        });
        std::vector<std::vector<std::uint8_t>> out;
        std::vector<std::uint8_t> x(w, 0);
        std::vector<std::size_t> support;
        for (std::size_t fc = 0; fc < w; ++fc) {
            if (row_of_col_[fc] >= 0) continue;
            // back-substitute pivot coordinates, right to left
            for (std::size_t s : support) x[s] = 0;
            support.clear();
            x[fc] = 1;
            support.push_back(fc);
            for (std::size_t k = order.size(); k-- > 0;) {
                const std::size_t ri = order[k];
                const std::size_t pc = pivot_cols_[ri];
                if (pc > fc) continue; // columns right of fc are all zero here
                std::uint8_t dot = 0;
                for (std::size_t s : support)
                    if (s > pc) dot = add(dot, mul(eng_.get(rows_[ri], s), x[s], p), p);
                if (dot) {
                    x[pc] = neg(dot, p);
                    support.push_back(pc);
                }
            }
            out.emplace_back(x.begin(), x.end());
        }
        return out;
    }

private:
    void reduce_only(Row& r) const {
        const unsigned p = eng_.prime();
        std::ptrdiff_t l;
        while ((l = eng_.lead(r)) >= 0) {
            std::int64_t pr = row_of_col_[static_cast<std::size_t>(l)];
            if (pr < 0) return;
            eng_.axpy(r, rows_[static_cast<std::size_t>(pr)],
                      neg(eng_.get(r, static_cast<std::size_t>(l)), p));
        }
    }

    static void axpy_tag(std::vector<std::uint8_t>& dst, const std::vector<std::uint8_t>& src,
                         std::uint8_t c, unsigned p) {
        for (std::size_t i = 0; i < dst.size(); ++i)
            dst[i] = add(dst[i], mul(src[i], c, p), p);
    }

    static void scale_tag(std::vector<std::uint8_t>& t, std::uint8_t c, unsigned p) {
        for (auto& x : t) x = mul(x, c, p);
    }

    Engine eng_;
    std::size_t tag_dim_;
    std::vector<Row> rows_;
    std::vector<std::vector<std::uint8_t>> tags_;
    std::vector<std::size_t> pivot_cols_;
    std::vector<std::int64_t> row_of_col_;
};

// --- Runtime-prime facade ----------------------------------------------------

class Echelon {
public:
    Echelon(unsigned p, std::size_t width, std::size_t tag_dim = 0) : p_(p) {
        if (p == 2) e2_.emplace(Gf2Rows(width), tag_dim);
        else if (p == 3) e3_.emplace(Gf3Rows(width), tag_dim);
        else ep_.emplace(GfpRows(width, p), tag_dim);
    }

    unsigned prime() const { return p_; }

    std::size_t rank() const {
        if (e2_) return e2_->rank();
        if (e3_) return e3_->rank();
        return ep_->rank();
    }

    std::size_t width() const {
        if (e2_) return e2_->width();
        if (e3_) return e3_->width();
        return ep_->width();
    }

    bool insert_sparse(const std::vector<SparseEntry>& entries,
                       std::vector<std::uint8_t> tag = {}) {
        if (e2_) return e2_->insert_sparse(entries, std::move(tag));
        if (e3_) return e3_->insert_sparse(entries, std::move(tag));
        return ep_->insert_sparse(entries, std::move(tag));
    }

    bool insert_dense(const std::vector<std::uint8_t>& v, std::vector<std::uint8_t> tag = {}) {
        if (e2_) return e2_->insert_dense(v, std::move(tag));
        if (e3_) return e3_->insert_dense(v, std::move(tag));
        return ep_->insert_dense(v, std::move(tag));
    }

    bool contains_dense(const std::vector<std::uint8_t>& v) const {
        if (e2_) return e2_->contains_dense(v);
        if (e3_) return e3_->contains_dense(v);
        return ep_->contains_dense(v);
    }

    std::optional<std::vector<std::uint8_t>> solve_dense(const std::vector<std::uint8_t>& v) const {
        if (e2_) return e2_->solve_dense(v);
        if (e3_) return e3_->solve_dense(v);
        return ep_->solve_dense(v);
    }

    std::vector<std::vector<std::uint8_t>> kernel_basis() const {
        if (e2_) return e2_->kernel_basis();
        if (e3_) return e3_->kernel_basis();
        return ep_->kernel_basis();
    }

private:
    unsigned p_;
    std::optional<EchelonT<Gf2Rows>> e2_;
    std::optional<EchelonT<Gf3Rows>> e3_;
    std::optional<EchelonT<GfpRows>> ep_;
};

// Small dense matrix over GF(p), row major. Used for restriction maps and
// other narrow linear algebra; never for the big differentials.
struct Matrix {
    unsigned p = 2;
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint8_t> a;

    Matrix() = default;
    Matrix(unsigned prime, std::size_t r, std::size_t c)
        : p(prime), rows(r), cols(c), a(r * c, 0) {}

    std::uint8_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    std::vector<std::uint8_t> apply(const std::vector<std::uint8_t>& x) const {
        std::vector<std::uint8_t> y(rows, 0);
        for (std::size_t r = 0; r < rows; ++r) {
            unsigned acc = 0;
            for (std::size_t c = 0; c < cols; ++c) acc += unsigned(at(r, c)) * x[c];
            y[r] = static_cast<std::uint8_t>(acc % p);
        }
        return y;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols != b.rows || a.p != b.p) throw Error("matrix product shape mismatch");
        Matrix c(a.p, a.rows, b.cols);
        for (std::size_t i = 0; i < a.rows; ++i)
            for (std::size_t k = 0; k < a.cols; ++k) {
                std::uint8_t v = a.at(i, k);
                if (!v) continue;
                for (std::size_t j = 0; j < b.cols; ++j)
                    c.at(i, j) = add(c.at(i, j), mul(v, b.at(k, j), a.p), a.p);
            }
        return c;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.p == y.p && x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

} // namespace fusys::gf
