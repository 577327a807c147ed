#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fusys/bar.hpp"
#include "fusys/fusion.hpp"
#include "fusys/gf.hpp"

namespace fusys {

struct CohomConfig {
    // cap on q^{n+1}, the row count of the differential being eliminated
    std::size_t max_cochain_dim = 500000;
    // cap on q^n, the width of the kernel elimination. The default admits
    // every degree-4 slice of the order-8 and order-9 groups while refusing
    // widths whose elimination runs beyond desk scale.
    std::size_t max_kernel_width = 5000;
};

// Basis of H^n(Q, GF(p)): cocycle representatives in the normalized bar
// complex plus a coordinate solver. The solver spans the full cocycle space
// Z^n, built from the coboundaries (tag 0) followed by the representatives
// (tag e_i), so solving expresses any cocycle as basis combination modulo
// a coboundary.
class CohomologyBasis {
public:
    CohomologyBasis(std::shared_ptr<const GroupTable> table, unsigned p, unsigned degree,
                    const CohomConfig& cfg)
        : table_(std::move(table)), p_(p), n_(degree),
          slice_(*table_, p, degree, cfg.max_cochain_dim) {
        const std::size_t width = slice_.dim();
        if (n_ == 0) {
            reps_.push_back({1});
            solver_ = std::make_unique<gf::Echelon>(p_, 1, 1);
            solver_->insert_dense({1}, {1});
            cocycle_dim_ = 1;
            boundary_rank_ = 0;
            return;
        }
        if (width == 0) { // trivial group in positive degree
            solver_ = std::make_unique<gf::Echelon>(p_, 0, 0);
            cocycle_dim_ = 0;
            boundary_rank_ = 0;
            return;
        }
        if (width > cfg.max_kernel_width)
            throw CapError("cohomology kernel width " + std::to_string(width) +
                           " exceeds cap " + std::to_string(cfg.max_kernel_width));
        BarSlice above(*table_, p_, n_ + 1, cfg.max_cochain_dim);

        // cocycles: kernel of d^n
        gf::Echelon rows_of_d(p_, width);
        for (std::size_t r = 0; r < above.dim(); ++r)
            rows_of_d.insert_sparse(differential_row(slice_, r));
        auto kernel = rows_of_d.kernel_basis();
        cocycle_dim_ = kernel.size();

        // coboundaries: columns of d^{n-1}, gathered from its sparse rows
        BarSlice below(*table_, p_, n_ - 1, cfg.max_cochain_dim);
        std::vector<std::vector<gf::SparseEntry>> columns(below.dim());
        for (std::size_t r = 0; r < width; ++r)
            for (const auto& [col, coef] : differential_row(below, r))
                columns[col].emplace_back(static_cast<std::uint32_t>(r), coef);

        gf::Echelon b_rank(p_, width);
        for (const auto& col : columns) b_rank.insert_sparse(col);
        boundary_rank_ = b_rank.rank();

        const std::size_t h = cocycle_dim_ - boundary_rank_;
        solver_ = std::make_unique<gf::Echelon>(p_, width, h);
        for (const auto& col : columns) solver_->insert_sparse(col);
        std::size_t next_rep = 0;
        for (auto& k : kernel) {
            std::vector<std::uint8_t> tag(h, 0);
            if (next_rep < h) tag[next_rep] = 1;
            if (solver_->insert_dense(k, std::move(tag))) {
                reps_.push_back(std::move(k));
                ++next_rep;
            }
        }
        if (reps_.size() != h)
            throw Error("cohomology basis construction is inconsistent");
    }

    unsigned prime() const { return p_; }
    unsigned degree() const { return n_; }
    std::size_t dim() const { return reps_.size(); }
    std::size_t cochain_dim() const { return slice_.dim(); }
    std::size_t cocycle_dim() const { return cocycle_dim_; }
    std::size_t boundary_rank() const { return boundary_rank_; }
    const std::vector<std::vector<std::uint8_t>>& representatives() const { return reps_; }
    const GroupTable& table() const { return *table_; }
    const BarSlice& slice() const { return slice_; }

    // Coordinates of a cocycle's class in this basis.
    std::vector<std::uint8_t> coords(const std::vector<std::uint8_t>& cocycle) const {
        auto sol = solver_->solve_dense(cocycle);
        if (!sol)
            throw Error("cochain is not a cocycle (or lies outside the computed span)");
        return *sol;
    }

    // Dense cochain representative of the class with the given coordinates.
    std::vector<std::uint8_t> representative(const std::vector<std::uint8_t>& cls) const {
        std::vector<std::uint8_t> out(slice_.dim(), 0);
        for (std::size_t i = 0; i < cls.size(); ++i) {
            if (!cls[i]) continue;
            for (std::size_t j = 0; j < out.size(); ++j)
                out[j] = gf::add(out[j], gf::mul(cls[i], reps_[i][j], p_), p_);
        }
        return out;
    }

private:
    std::shared_ptr<const GroupTable> table_;
    unsigned p_, n_;
    BarSlice slice_;
    std::vector<std::vector<std::uint8_t>> reps_;
    std::unique_ptr<gf::Echelon> solver_;
    std::size_t cocycle_dim_ = 0, boundary_rank_ = 0;
};

// A cohomology class of a fixed subgroup: degree plus coordinates in the
// CohomologyBasis of that degree.
struct CohClass {
    unsigned degree = 0;
    std::vector<std::uint8_t> coords;

    bool is_zero() const {
        for (auto c : coords)
            if (c) return false;
        return true;
    }
};

// The subspace H^n(F) of H^n(S) cut out by all stability constraints.
class StableSubspace {
public:
    StableSubspace(unsigned p, unsigned degree, std::size_t ambient_dim,
                   std::vector<std::vector<std::uint8_t>> basis)
        : degree_(degree), ambient_dim_(ambient_dim), basis_(std::move(basis)),
          membership_(p, ambient_dim) {
        for (const auto& v : basis_) membership_.insert_dense(v);
    }

    unsigned degree() const { return degree_; }
    std::size_t dim() const { return basis_.size(); }
    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<std::vector<std::uint8_t>>& basis() const { return basis_; }

    bool contains(const CohClass& cls) const {
        if (cls.degree != degree_ || cls.coords.size() != ambient_dim_)
            throw InputError("stable-subspace membership test at wrong degree");
        return membership_.contains_dense(cls.coords);
    }

    // Subspace containment, both sides expressed in the same H^n(S) basis.
    bool contains_subspace(const StableSubspace& other) const {
        for (const auto& v : other.basis_)
            if (!membership_.contains_dense(v)) return false;
        return true;
    }

private:
    unsigned degree_;
    std::size_t ambient_dim_;
    std::vector<std::vector<std::uint8_t>> basis_;
    gf::Echelon membership_;
};

// Owns all cohomology computations for one prime: group tables, bases per
// (subgroup, degree), restriction maps, cup products and stable subspaces.
// Not synchronized; use one context per scenario or thread.
class CohomologyContext {
public:
    explicit CohomologyContext(unsigned p, CohomConfig cfg = {}) : p_(p), cfg_(cfg) {
        if (!is_prime(p)) throw InputError("cohomology prime " + std::to_string(p));
    }

    unsigned prime() const { return p_; }
    const CohomConfig& config() const { return cfg_; }

    std::shared_ptr<const GroupTable> table(const Subgroup& q) {
        auto it = tables_.find(q.elements());
        if (it == tables_.end())
            it = tables_.emplace(q.elements(), std::make_shared<GroupTable>(q)).first;
        return it->second;
    }

    const CohomologyBasis& basis(const Subgroup& q, unsigned degree) {
        BasisKey key{q.elements(), degree};
        auto it = bases_.find(key);
        if (it == bases_.end()) {
            auto b = std::make_shared<CohomologyBasis>(table(q), p_, degree, cfg_);
            it = bases_.emplace(std::move(key), std::move(b)).first;
            slice_log_.emplace_back(q, degree);
        }
        return *it->second;
    }

    // Every (subgroup, degree) pair computed so far; the property suites use
    // this to re-check d(d(f)) = 0 on exactly the slices that were built.
    const std::vector<std::pair<Subgroup, unsigned>>& computed_slices() const {
        return slice_log_;
    }

    // Matrix of the pullback H^n(codomain) -> H^n(domain) along phi,
    // acting on class coordinate vectors.
    gf::Matrix restriction_along(const GroupHom& phi, unsigned degree) {
        const CohomologyBasis& dom = basis(phi.domain(), degree);
        const CohomologyBasis& cod = basis(phi.codomain(), degree);
        gf::Matrix m(p_, dom.dim(), cod.dim());
        auto dom_table = table(phi.domain());
        auto cod_table = table(phi.codomain());
        for (std::size_t j = 0; j < cod.dim(); ++j) {
            auto pulled = pullback_cochain(phi, *dom_table, dom.slice(), *cod_table,
                                           cod.representatives()[j]);
            auto c = dom.coords(pulled);
            for (std::size_t i = 0; i < dom.dim(); ++i) m.at(i, j) = c[i];
        }
        return m;
    }

    CohClass cup(const Subgroup& q, const CohClass& a, const CohClass& b) {
        const CohomologyBasis& ba = basis(q, a.degree);
        const CohomologyBasis& bb = basis(q, b.degree);
        const CohomologyBasis& bc = basis(q, a.degree + b.degree);
        auto za = ba.representative(a.coords);
        auto zb = bb.representative(b.coords);
        auto zc = cup_cochain(p_, za, zb);
        return CohClass{a.degree + b.degree, bc.coords(zc)};
    }

    // zeta^(p^r) by iterated cup product.
    CohClass frobenius_power(const Subgroup& q, const CohClass& zeta, unsigned r) {
        std::size_t e = 1;
        for (unsigned i = 0; i < r; ++i) e *= p_;
        CohClass cur = zeta;
        for (std::size_t i = 1; i < e; ++i) cur = cup(q, cur, zeta);
        return cur;
    }

    // Intersection over all subgroups Q of S and all phi in Hom_F(Q, S) of
    // ker(res^S_Q - res_phi) inside H^n(S).
    StableSubspace stable_subspace(const FusionSystem& f, unsigned degree) {
        const Subgroup& s = f.base();
        const CohomologyBasis& hs = basis(s, degree);
        const std::size_t hdim = hs.dim();
        gf::Echelon constraints(p_, hdim);
        for (const Subgroup& q : f.subgroups()) {
            GroupHom incl = GroupHom::inclusion(q, s);
            gf::Matrix m_incl = restriction_along(incl, degree);
            for (const GroupHom& phi : f.homs(q, s)) {
                if (phi.images() == incl.images()) continue;
                gf::Matrix m_phi = restriction_along(phi, degree);
                for (std::size_t r = 0; r < m_incl.rows; ++r) {
                    std::vector<std::uint8_t> row(hdim);
                    bool nonzero = false;
                    for (std::size_t c = 0; c < hdim; ++c) {
                        row[c] = gf::sub(m_incl.at(r, c), m_phi.at(r, c), p_);
                        nonzero |= row[c] != 0;
                    }
                    if (nonzero) constraints.insert_dense(row);
                }
            }
        }
        return StableSubspace(p_, degree, hdim, constraints.kernel_basis());
    }

    std::vector<std::size_t> dims_table(const FusionSystem& f, unsigned max_degree) {
        std::vector<std::size_t> dims;
        dims.reserve(max_degree + 1);
        for (unsigned n = 0; n <= max_degree; ++n)
            dims.push_back(stable_subspace(f, n).dim());
        return dims;
    }

private:
    using BasisKey = std::pair<std::vector<Perm>, unsigned>;
    unsigned p_;
    CohomConfig cfg_;
    std::map<std::vector<Perm>, std::shared_ptr<const GroupTable>> tables_;
    std::map<BasisKey, std::shared_ptr<const CohomologyBasis>> bases_;
    std::vector<std::pair<Subgroup, unsigned>> slice_log_;
};

// ---------------------------------------------------------------------------
// Frobenius-power membership probe: for every basis class zeta of H^n(G),
// find the least r <= rmax with zeta^(p^r) in H^{n p^r}(F) viewed inside
// H^*(S), or report that none works.

struct FrobeniusProbeEntry {
    std::size_t basis_index = 0;
    std::optional<unsigned> least_r;
};

struct FrobeniusProbeReport {
    unsigned degree = 0;
    unsigned rmax = 0;
    std::vector<FrobeniusProbeEntry> entries;

    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.least_r) return false;
        return true;
    }
};

inline FrobeniusProbeReport mislin_hypothesis_probe(CohomologyContext& ctx,
                                                    const FusionSystem& gsys,
                                                    const FusionSystem& fsys, unsigned degree,
                                                    unsigned rmax) {
    if (!is_subsystem(gsys, fsys))
        throw InputError("mislin_hypothesis_probe requires a subsystem pair");
    const Subgroup& s = fsys.base();
    FrobeniusProbeReport report{degree, rmax, {}};
    StableSubspace stable_g = ctx.stable_subspace(gsys, degree);
    std::map<unsigned, StableSubspace> stable_f_by_degree;
    auto stable_f = [&](unsigned d) -> const StableSubspace& {
        auto it = stable_f_by_degree.find(d);
        if (it == stable_f_by_degree.end())
            it = stable_f_by_degree.emplace(d, ctx.stable_subspace(fsys, d)).first;
        return it->second;
    };
    for (std::size_t i = 0; i < stable_g.dim(); ++i) {
        CohClass zeta{degree, stable_g.basis()[i]};
        FrobeniusProbeEntry entry{i, std::nullopt};
        for (unsigned r = 0; r <= rmax; ++r) {
            CohClass power = ctx.frobenius_power(s, zeta, r);
            if (stable_f(power.degree).contains(power)) {
                entry.least_r = r;
                break;
            }
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

} // namespace fusys
