#pragma once

#include <cstdint>
#include <vector>

#include "fusys/gf.hpp"
#include "fusys/group.hpp"
#include "fusys/hom.hpp"

namespace fusys {

// Multiplication table of a subgroup. Elements are indexed by their position
// in the sorted element list; the identity is lexicographically minimal, so
// index 0 is always the identity.
class GroupTable {
public:
    explicit GroupTable(const Subgroup& q) : elems_(q.elements()) {
        const std::size_t n = elems_.size();
        mult_.resize(n * n);
        inv_.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b)
                mult_[a * n + b] = index_of(elems_[a] * elems_[b]);
            inv_[a] = index_of(elems_[a].inverse());
        }
    }

    std::size_t order() const { return elems_.size(); }
    std::size_t q() const { return elems_.size() - 1; } // non-identity count
    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const {
        return mult_[std::size_t(a) * elems_.size() + b];
    }
    std::uint16_t inverse(std::uint16_t a) const { return inv_[a]; }
    const std::vector<Perm>& elements() const { return elems_; }

    std::uint16_t index_of(const Perm& x) const {
        auto it = std::lower_bound(elems_.begin(), elems_.end(), x);
        if (it == elems_.end() || *it != x)
            throw Error("element outside the tabulated subgroup");
        return static_cast<std::uint16_t>(it - elems_.begin());
    }

private:
    std::vector<Perm> elems_;
    std::vector<std::uint16_t> mult_;
    std::vector<std::uint16_t> inv_;
};

// Degree-n slice of the normalized bar cochain complex of a group: basis
// indexed by n-tuples of non-identity elements, dimension q^n with
// q = |Q| - 1. Tuples are mixed-radix numbers, first slot most significant,
// element indices shifted down by one (values 0..q-1 encode indices 1..q).
class BarSlice {
public:
    BarSlice(const GroupTable& table, unsigned p, unsigned degree,
             std::size_t dim_cap = 500000)
        : table_(&table), p_(p), n_(degree) {
        dim_ = 1;
        const std::size_t q = table.q();
        for (unsigned i = 0; i < n_; ++i) {
            dim_ *= q;
            if (dim_ > dim_cap)
                throw CapError("bar complex slice exceeds dimension cap (" +
                               std::to_string(dim_cap) + ")");
        }
        if (q == 0 && n_ > 0) dim_ = 0; // trivial group has no non-identity tuples
    }

    unsigned prime() const { return p_; }
    unsigned degree() const { return n_; }
    std::size_t dim() const { return dim_; }
    const GroupTable& table() const { return *table_; }

    void decode(std::size_t idx, std::vector<std::uint16_t>& tuple) const {
        const std::size_t q = table_->q();
        tuple.resize(n_);
        for (unsigned i = n_; i-- > 0;) {
            tuple[i] = static_cast<std::uint16_t>(idx % q + 1);
            idx /= q;
        }
    }

    std::size_t encode(const std::vector<std::uint16_t>& tuple) const {
        const std::size_t q = table_->q();
        std::size_t idx = 0;
        for (unsigned i = 0; i < n_; ++i)
            idx = idx * q + (tuple[i] - 1);
        return idx;
    }

private:
    const GroupTable* table_;
    unsigned p_;
    unsigned n_;
    std::size_t dim_;
};

// Row `row_index` of the differential d^n as a sparse functional on degree-n
// cochains: the alternating sum over the faces of the (n+1)-tuple, with
// faces that hit the identity dropped (normalization). Coefficients of
// coinciding faces are accumulated mod p.
inline std::vector<gf::SparseEntry> differential_row(const BarSlice& from, std::size_t row_index) {
    const GroupTable& t = from.table();
    const unsigned p = from.prime();
    const unsigned n = from.degree();
    std::vector<std::uint16_t> tuple;
    BarSlice above(t, p, n + 1, static_cast<std::size_t>(-1));
    above.decode(row_index, tuple);

    std::vector<gf::SparseEntry> entries;
    std::vector<std::uint16_t> face(n);
    auto push = [&](std::uint8_t coef) {
        // encode face and accumulate
        std::size_t q = t.q(), idx = 0;
        for (unsigned i = 0; i < n; ++i) idx = idx * q + (face[i] - 1);
        for (auto& e : entries)
            if (e.first == idx) {
                e.second = gf::add(e.second, coef, p);
                return;
            }
        entries.emplace_back(static_cast<std::uint32_t>(idx), coef);
    };

    // face 0: drop the first entry
    for (unsigned i = 0; i < n; ++i) face[i] = tuple[i + 1];
    push(1);
    // faces 1..n: multiply adjacent entries, dropped if the product is 1
    for (unsigned i = 1; i <= n; ++i) {
        std::uint16_t prod = t.mul(tuple[i - 1], tuple[i]);
        if (prod != 0) {
            unsigned k = 0;
            for (unsigned j = 0; j + 1 < i; ++j) face[k++] = tuple[j];
            face[k++] = prod;
            for (unsigned j = i + 1; j <= n; ++j) face[k++] = tuple[j];
            push(i % 2 ? gf::neg(1, p) : 1);
        }
    }
    // face n+1: drop the last entry
    for (unsigned i = 0; i < n; ++i) face[i] = tuple[i];
    push((n + 1) % 2 ? gf::neg(1, p) : 1);

    std::erase_if(entries, [](const gf::SparseEntry& e) { return e.second == 0; });
    return entries;
}

// Sparse matrix of d^n: rows indexed by (n+1)-tuples, columns by n-tuples.
struct SparseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<gf::SparseEntry>> row_entries;
};

inline SparseMatrix differential_matrix(const GroupTable& table, unsigned p, unsigned degree,
                                        std::size_t dim_cap = 500000) {
    BarSlice slice(table, p, degree, dim_cap);
    BarSlice above(table, p, degree + 1, dim_cap);
    SparseMatrix m;
    m.rows = above.dim();
    m.cols = slice.dim();
    m.row_entries.reserve(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
        m.row_entries.push_back(differential_row(slice, r));
    return m;
}

// d^n applied to a dense degree-n cochain, evaluated row by row.
inline std::vector<std::uint8_t> apply_differential(const BarSlice& slice,
                                                    const std::vector<std::uint8_t>& cochain) {
    const GroupTable& t = slice.table();
    const unsigned p = slice.prime();
    BarSlice above(t, p, slice.degree() + 1, static_cast<std::size_t>(-1));
    std::vector<std::uint8_t> out(above.dim(), 0);
    for (std::size_t r = 0; r < above.dim(); ++r) {
        std::uint8_t acc = 0;
        for (const auto& [col, coef] : differential_row(slice, r))
            acc = gf::add(acc, gf::mul(coef, cochain[col], p), p);
        out[r] = acc;
    }
    return out;
}

// Pullback of a degree-n cochain on the codomain group through a hom,
// componentwise on tuples. Injective maps send non-identity elements to
// non-identity elements, so normalized cochains pull back to normalized ones.
inline std::vector<std::uint8_t> pullback_cochain(const GroupHom& phi,
                                                  const GroupTable& dom_table,
                                                  const BarSlice& dom_slice,
                                                  const GroupTable& cod_table,
                                                  const std::vector<std::uint8_t>& cochain) {
    const unsigned n = dom_slice.degree();
    // index-level map: domain element index -> codomain element index
    std::vector<std::uint16_t> imap(dom_table.order());
    for (std::size_t i = 0; i < dom_table.order(); ++i)
        imap[i] = cod_table.index_of(phi.apply(dom_table.elements()[i]));

    std::vector<std::uint8_t> out(dom_slice.dim(), 0);
    if (n == 0) {
        if (!out.empty()) out[0] = cochain[0];
        return out;
    }
    std::vector<std::uint16_t> tuple(n);
    const std::size_t qc = cod_table.q();
    for (std::size_t idx = 0; idx < dom_slice.dim(); ++idx) {
        dom_slice.decode(idx, tuple);
        bool normalized_zero = false;
        std::size_t cidx = 0;
        for (unsigned i = 0; i < n; ++i) {
            std::uint16_t im = imap[tuple[i]];
            if (im == 0) { normalized_zero = true; break; }
            cidx = cidx * qc + (im - 1);
        }
        out[idx] = normalized_zero ? 0 : cochain[cidx];
    }
    return out;
}

// Cup product of normalized cochains by the front-face/back-face formula:
// (a cup b)(g_1..g_{m+n}) = a(g_1..g_m) b(g_{m+1}..g_{m+n}). With the
// big-endian tuple encoding this is an outer product.
inline std::vector<std::uint8_t> cup_cochain(unsigned p, const std::vector<std::uint8_t>& a,
                                             const std::vector<std::uint8_t>& b) {
    std::vector<std::uint8_t> out(a.size() * b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        const std::size_t base = i * b.size();
        for (std::size_t j = 0; j < b.size(); ++j)
            out[base + j] = gf::mul(a[i], b[j], p);
    }
    return out;
}

} // namespace fusys
