#pragma once

// Exact additive character sums over W = M_{m×t}(F_q). The character group of
// W is identified with W itself through the trace pairing <X, Y> = tr(X·Yᵀ);
// a character value ζ^j is recorded as a count in bucket j, never as a float.

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "modext/budget.hpp"
#include "modext/errors.hpp"
#include "modext/linalg.hpp"
#include "modext/modcode.hpp"

namespace modext {

/// ∑ ζ^{j} with counts[j] summands in bucket j, ζ a primitive q-th root of unity.
struct RootVector {
    std::vector<BigInt> counts;

    /// All mass at exponent 0: the sum equals counts[0].
    bool is_concentrated() const
    {
        for (std::size_t j = 1; j < counts.size(); ++j)
            if (counts[j] != 0) return false;
        return true;
    }

    /// Equal counts in every bucket: the sum vanishes.
    bool is_balanced() const
    {
        for (const auto& c : counts)
            if (c != counts.front()) return false;
        return true;
    }

    bool operator==(const RootVector&) const = default;
};

/// tr(X·Yᵀ) mod q.
inline Residue pairing(const FqMatrix& x, const FqMatrix& y)
{
    if (x.field() != y.field() || x.rows() != y.rows() || x.cols() != y.cols())
        throw DimensionMismatch("pairing: shapes " + x.shape() + " and " + y.shape() + " differ");
    const auto& f = x.field();
    Residue acc = 0;
    for (std::size_t i = 0; i < x.entries().size(); ++i) acc = f.add(acc, f.mul(x.entries()[i], y.entries()[i]));
    return acc;
}

/// ℱ(1_{N_S})(Y) = ∑_{X ∈ N_S} ζ^{<X,Y>}, bucketed by exponent.
inline RootVector fourier_of_indicator(const Submodule& sub, const FqMatrix& y, const Budget& budget = {})
{
    if (y.field() != sub.space.field || y.rows() != sub.space.m || y.cols() != sub.space.t)
        throw DimensionMismatch("fourier_of_indicator: evaluation point is not an element of W");
    RootVector rv{std::vector<BigInt>(sub.space.field.q(), 0)};
    for_each_element(sub, budget, [&](const FqMatrix& x) { rv.counts[pairing(x, y)] += 1; });
    return rv;
}

/// V^⊥ = {Y : <X, Y> = 0 for all X ∈ V}, a submodule of the character module.
struct DualSubmodule {
    ModuleSpace space;
    Subspace support;

    BigInt cardinality() const { return big_pow(space.field.q(), space.m * support.dim()); }
    bool operator==(const DualSubmodule&) const = default;
};

/// Row-wise the trace pairing is the dot product, so N_S^⊥ = N_{S^⊥}.
inline DualSubmodule orthogonal_submodule(const Submodule& sub) { return {sub.space, orthogonal(sub.support)}; }

/// The annihilator of a dual submodule, back in W (V^⊥⊥).
inline Submodule annihilator(const DualSubmodule& dual) { return Submodule(dual.space, orthogonal(dual.support)); }

/// Evaluates ∑ |V_i|·1_{V_i^⊥} − ∑ |U_i|·1_{U_i^⊥} at every Y ∈ Ŵ ≅ W via the
/// row space T of Y: Y ∈ V^⊥ iff T ⊆ supp(V)^⊥. Row spaces of m×t matrices have
/// dimension ≤ m, so those T are the evaluation points.
inline bool dual_sums_equal(const ModuleSpace& space, const std::vector<Subspace>& v, const std::vector<Subspace>& u,
                            const Budget& budget = {})
{
    const auto points = subspaces_up_to_dim(space.field, space.t, space.m, budget);
    auto weighted = [&](const std::vector<Subspace>& supports) {
        std::vector<std::pair<Subspace, BigInt>> duals;
        duals.reserve(supports.size());
        for (const auto& s : supports) duals.emplace_back(orthogonal(s), big_pow(space.field.q(), space.m * s.dim()));
        std::vector<BigInt> out;
        out.reserve(points.size());
        for (const auto& p : points) {
            BigInt total = 0;
            for (const auto& [dual, weight] : duals)
                if (contains(dual, p)) total += weight;
            out.push_back(std::move(total));
        }
        return out;
    };
    return weighted(v) == weighted(u);
}

inline bool verify_dual_equation(const KernelTuple& v, const KernelTuple& u, const Budget& budget = {})
{
    if (v.space != u.space) throw DimensionMismatch("verify_dual_equation: kernel tuples over different spaces");
    return dual_sums_equal(v.space, v.supports, u.supports, budget);
}

/// (Ker σ)^⊥ = Img σ̂ for σ: X ↦ X·G. The adjoint is σ̂: Y ↦ Y·Gᵀ since
/// <X·G, Y> = <X, Y·Gᵀ>, and its image is N_{colspace(G)}. Checks the support
/// identity, adjointness on all pairs, and the image by enumeration.
inline bool image_kernel_duality_check(const Hom& h, const Budget& budget = {})
{
    const auto& space = h.source;
    const auto& g = h.generator;
    const auto gt = g.transpose();
    const auto annihilator_of_kernel = orthogonal(row_kernel(g));
    const auto column_space = Subspace::span(gt);
    if (annihilator_of_kernel != column_space) return false;

    const auto q = space.field.q();
    budget.require_vectors(saturating_pow(q, space.m * (space.t + h.target.k)), "image_kernel_duality_check");
    bool ok = true;
    std::set<std::vector<Residue>> image;
    for_each_matrix(space.field, space.m, h.target.k, budget, [&](const FqMatrix& y) {
        const auto z = y * gt;
        if (!contains(annihilator_of_kernel, Subspace::span(z))) ok = false;
        image.insert(z.entries());
        for_each_matrix(space.field, space.m, space.t, budget, [&](const FqMatrix& x) {
            if (pairing(x * g, y) != pairing(x, z)) ok = false;
        });
    });
    return ok && BigInt(image.size()) == big_pow(q, space.m * annihilator_of_kernel.dim());
}

}  // namespace modext
