#pragma once

// Matrix-module alphabets A = M_{m×k}(F_q) over R = M_m(F_q), codes given by
// parametrizations λ: W → A^n, the kernel-multiset extension criterion and
// constructive monomial extension.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "modext/budget.hpp"
#include "modext/errors.hpp"
#include "modext/linalg.hpp"

namespace modext {

/// A = M_{m×k}(F_q) as a left module over R = M_m(F_q).
struct Alphabet {
    PrimeField field;
    std::size_t m;
    std::size_t k;

    Alphabet(PrimeField f, std::size_t m_, std::size_t k_) : field(f), m(m_), k(k_)
    {
        if (m == 0 || k == 0) throw InvalidInput("alphabet needs m >= 1 and k >= 1");
    }

    auto operator<=>(const Alphabet&) const = default;
};

/// W = M_{m×t}(F_q); its elements are m×t matrices.
struct ModuleSpace {
    PrimeField field;
    std::size_t m;
    std::size_t t;

    ModuleSpace(PrimeField f, std::size_t m_, std::size_t t_) : field(f), m(m_), t(t_)
    {
        if (m == 0) throw InvalidInput("module space needs m >= 1");
    }

    std::uint64_t element_count() const { return saturating_pow(field.q(), m * t); }

    auto operator<=>(const ModuleSpace&) const = default;
};

/// N_S = {X ∈ M_{m×t} : rowspace(X) ⊆ S}. Every submodule of W has this form.
struct Submodule {
    ModuleSpace space;
    Subspace support;

    Submodule(ModuleSpace sp, Subspace s) : space(sp), support(std::move(s))
    {
        if (support.field() != space.field || support.ambient() != space.t)
            throw DimensionMismatch("submodule support does not live in F_q^t");
    }

    std::size_t dim() const { return support.dim(); }
    BigInt cardinality() const { return big_pow(space.field.q(), space.m * support.dim()); }

    auto operator<=>(const Submodule&) const = default;
};

/// Calls fn(X) for every X ∈ N_S, written as X = C·B with B the support basis.
inline void for_each_element(const Submodule& sub, const Budget& budget,
                             const std::function<void(const FqMatrix&)>& fn)
{
    const auto& basis = sub.support.basis();
    const auto d = sub.support.dim();
    budget.require_vectors(saturating_pow(sub.space.field.q(), sub.space.m * d), "submodule elements");
    if (d == 0) {
        fn(FqMatrix(sub.space.field, sub.space.m, sub.space.t));
        return;
    }
    for_each_matrix(sub.space.field, sub.space.m, d, budget, [&](const FqMatrix& coeffs) { fn(coeffs * basis); });
}

/// X ↦ X·G from W = M_{m×t} to A = M_{m×k}; left R-linear for every G.
struct Hom {
    ModuleSpace source;
    Alphabet target;
    FqMatrix generator;

    Hom(ModuleSpace s, Alphabet a, FqMatrix g) : source(s), target(a), generator(std::move(g))
    {
        if (source.field != target.field || source.m != target.m)
            throw DimensionMismatch("hom source and target are modules over different rings");
        if (generator.field() != source.field || generator.rows() != source.t || generator.cols() != target.k)
            throw DimensionMismatch("hom generator must be t x k, got " + generator.shape());
    }

    FqMatrix apply(const FqMatrix& x) const { return x * generator; }
    Subspace kernel_support() const { return row_kernel(generator); }
};

using Word = std::vector<FqMatrix>;

/// C = λ(W) with λ = (λ_1, …, λ_n), each λ_i given by its t×k generator.
class Code {
public:
    Code(Alphabet alphabet, ModuleSpace space, std::vector<FqMatrix> generators)
        : alphabet_(alphabet), space_(space), generators_(std::move(generators))
    {
        if (alphabet_.field != space_.field || alphabet_.m != space_.m)
            throw DimensionMismatch("code alphabet and message space disagree on the ring");
        if (generators_.empty()) throw InvalidInput("a code needs at least one column");
        for (const auto& g : generators_)
            if (g.field() != space_.field || g.rows() != space_.t || g.cols() != alphabet_.k)
                throw DimensionMismatch("every generator must be t x k (" + std::to_string(space_.t) + "x" +
                                        std::to_string(alphabet_.k) + "), got " + g.shape());
    }

    const Alphabet& alphabet() const { return alphabet_; }
    const ModuleSpace& space() const { return space_; }
    const PrimeField& field() const { return space_.field; }
    std::size_t length() const { return generators_.size(); }
    const std::vector<FqMatrix>& generators() const { return generators_; }
    const FqMatrix& generator(std::size_t i) const { return generators_.at(i); }
    Hom column(std::size_t i) const { return Hom(space_, alphabet_, generators_.at(i)); }

    Word encode(const FqMatrix& x) const
    {
        Word w;
        w.reserve(generators_.size());
        for (const auto& g : generators_) w.push_back(x * g);
        return w;
    }

    bool operator==(const Code&) const = default;

private:
    Alphabet alphabet_;
    ModuleSpace space_;
    std::vector<FqMatrix> generators_;
};

/// Number of nonzero blocks.
inline std::size_t hamming_weight(const Word& word)
{
    std::size_t w = 0;
    for (const auto& block : word) {
        if (block.rows() != word.front().rows() || block.cols() != word.front().cols() ||
            block.field() != word.front().field())
            throw DimensionMismatch("word blocks have inconsistent shapes");
        if (!block.is_zero()) ++w;
    }
    return w;
}

/// Ordered tuple of kernel supports (V_1, …, V_n), V_i = Ker λ_i.
struct KernelTuple {
    ModuleSpace space;
    std::vector<Subspace> supports;

    std::size_t size() const { return supports.size(); }
    Submodule at(std::size_t i) const { return Submodule(space, supports.at(i)); }

    std::map<Subspace, std::size_t> multiset() const
    {
        std::map<Subspace, std::size_t> out;
        for (const auto& s : supports) ++out[s];
        return out;
    }
};

inline KernelTuple kernel_tuple(const Code& code)
{
    KernelTuple kt{code.space(), {}};
    kt.supports.reserve(code.length());
    for (const auto& g : code.generators()) kt.supports.push_back(row_kernel(g));
    return kt;
}

namespace detail {
inline void require_same_shape(const Code& lam, const Code& mu)
{
    if (lam.space() != mu.space() || lam.alphabet() != mu.alphabet())
        throw DimensionMismatch("codes have different message spaces or alphabets");
    if (lam.length() != mu.length())
        throw DimensionMismatch("codes have different lengths (" + std::to_string(lam.length()) + " vs " +
                                std::to_string(mu.length()) + ")");
}
}  // namespace detail

/// Compares wt(λ(w)) and wt(μ(w)) at every w ∈ W.
inline bool is_isometry_bruteforce(const Code& lam, const Code& mu, const Budget& budget = {})
{
    detail::require_same_shape(lam, mu);
    budget.require_vectors(lam.space().element_count(), "is_isometry_bruteforce");
    bool equal = true;
    for_each_matrix(lam.field(), lam.space().m, lam.space().t, budget, [&](const FqMatrix& w) {
        if (equal && hamming_weight(lam.encode(w)) != hamming_weight(mu.encode(w))) equal = false;
    });
    return equal;
}

/// Containment counts |{i : S ⊆ V_i}| at every S with dim S ≤ m. An element
/// with row space S lies in exactly those kernels, so these counts determine
/// the function ∑ 1_{V_i} on W.
inline std::vector<std::size_t> containment_profile(const std::vector<Subspace>& supports,
                                                    const std::vector<Subspace>& points)
{
    std::vector<std::size_t> out;
    out.reserve(points.size());
    for (const auto& s : points) {
        std::size_t n = 0;
        for (const auto& v : supports)
            if (contains(v, s)) ++n;
        out.push_back(n);
    }
    return out;
}

/// Decides ∑ 1_{V_i} = ∑ 1_{U_i} for two kernel tuples over the same W.
inline bool indicator_sums_equal(const ModuleSpace& space, const std::vector<Subspace>& v,
                                 const std::vector<Subspace>& u, const Budget& budget = {})
{
    const auto points = subspaces_up_to_dim(space.field, space.t, space.m, budget);
    return containment_profile(v, points) == containment_profile(u, points);
}

inline bool is_isometry_criterion(const Code& lam, const Code& mu, const Budget& budget = {})
{
    detail::require_same_shape(lam, mu);
    return indicator_sums_equal(lam.space(), kernel_tuple(lam).supports, kernel_tuple(mu).supports, budget);
}

inline bool is_trivial_solution(const KernelTuple& v, const KernelTuple& u)
{
    if (v.space != u.space || v.size() != u.size()) throw DimensionMismatch("kernel tuples have different shapes");
    return v.multiset() == u.multiset();
}

/// x ↦ (g_1(x_{π(1)}), …, g_n(x_{π(n)})) with g_i(a) = a·autos[i].
struct MonomialMap {
    std::vector<std::size_t> permutation;
    std::vector<FqMatrix> autos;

    std::size_t size() const { return permutation.size(); }
    bool operator==(const MonomialMap&) const = default;
};

/// Supports present on one side but not the other, with surplus multiplicities.
struct KernelDiff {
    std::map<Subspace, std::size_t> lambda_only;
    std::map<Subspace, std::size_t> mu_only;
};

struct Unextendable {
    KernelDiff diff;
};

using Extension = std::variant<MonomialMap, Unextendable>;

inline KernelDiff kernel_diff(const KernelTuple& v, const KernelTuple& u)
{
    KernelDiff d;
    auto mv = v.multiset();
    auto mu = u.multiset();
    for (const auto& [s, c] : mv) {
        auto it = mu.find(s);
        const std::size_t other = it == mu.end() ? 0 : it->second;
        if (c > other) d.lambda_only[s] = c - other;
    }
    for (const auto& [s, c] : mu) {
        auto it = mv.find(s);
        const std::size_t other = it == mv.end() ? 0 : it->second;
        if (c > other) d.mu_only[s] = c - other;
    }
    return d;
}

inline Code apply_monomial(const MonomialMap& map, const Code& code)
{
    const std::size_t n = code.length();
    if (map.permutation.size() != n || map.autos.size() != n)
        throw DimensionMismatch("monomial map size differs from code length");
    std::vector<bool> seen(n, false);
    for (auto p : map.permutation) {
        if (p >= n || seen[p]) throw InvalidInput("monomial map permutation is not a permutation");
        seen[p] = true;
    }
    const auto k = code.alphabet().k;
    std::vector<FqMatrix> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& g = map.autos[i];
        if (g.field() != code.field() || g.rows() != k || g.cols() != k || rank(g) != k)
            throw PreconditionFailed("monomial map automorphism " + std::to_string(i) + " is not an invertible " +
                                     std::to_string(k) + "x" + std::to_string(k) + " matrix");
        out.push_back(code.generator(map.permutation[i]) * g);
    }
    return Code(code.alphabet(), code.space(), std::move(out));
}

/// Unit vectors completing `s` to a basis of F_q^t, chosen greedily in index order.
inline FqMatrix complement_units(const Subspace& s)
{
    const auto t = s.ambient();
    std::vector<std::size_t> chosen;
    FqMatrix current = s.basis();
    for (std::size_t i = 0; i < t && current.rows() < t; ++i) {
        FqMatrix e(s.field(), 1, t);
        e.set(0, i, 1);
        auto grown = FqMatrix::vstack(current, e);
        if (rank(grown) > current.rows()) {
            current = std::move(grown);
            chosen.push_back(i);
        }
    }
    FqMatrix out(s.field(), chosen.size(), t);
    for (std::size_t r = 0; r < chosen.size(); ++r) out.set(r, chosen[r], 1);
    return out;
}

/// Invertible P with G·P = H, for t×k generators with equal row kernels.
/// On a complement of the kernel, the images b·G are sent to b·H; a complement
/// of rowspace(G) in F_q^k is sent to a complement of rowspace(H).
inline FqMatrix matching_automorphism(const FqMatrix& g, const FqMatrix& h)
{
    const auto kernel = row_kernel(g);
    if (kernel != row_kernel(h)) throw PreconditionFailed("generators have different kernels");
    const auto comp = complement_units(kernel);
    FqMatrix src = comp * g;
    FqMatrix dst = comp * h;
    FqMatrix source_basis = FqMatrix::vstack(src, complement_units(Subspace::span(src)));
    FqMatrix target_basis = FqMatrix::vstack(dst, complement_units(Subspace::span(dst)));
    FqMatrix p = inverse(source_basis) * target_basis;
    if (g * p != h) throw Error("internal: matching automorphism does not map G to H");
    return p;
}

/// Returns a monomial map f with apply_monomial(f, lam) = mu when the kernel
/// multisets agree, and the multiset difference otherwise. Columns are
/// matched in sorted order of (support, original index).
inline Extension extend_to_monomial(const Code& lam, const Code& mu, const Budget& budget = {})
{
    detail::require_same_shape(lam, mu);
    if (!is_isometry_criterion(lam, mu, budget))
        throw NotAnIsometry("extend_to_monomial: the codes are not Hamming-isometric");
    const auto kv = kernel_tuple(lam);
    const auto ku = kernel_tuple(mu);
    if (!is_trivial_solution(kv, ku)) return Unextendable{kernel_diff(kv, ku)};

    const std::size_t n = lam.length();
    auto sorted_indices = [n](const KernelTuple& kt) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return kt.supports[a] < kt.supports[b]; });
        return idx;
    };
    const auto lam_order = sorted_indices(kv);
    const auto mu_order = sorted_indices(ku);

    MonomialMap map;
    map.permutation.assign(n, 0);
    map.autos.assign(n, FqMatrix(lam.field(), 0, 0));
    for (std::size_t p = 0; p < n; ++p) {
        const auto a = lam_order[p];
        const auto b = mu_order[p];
        map.permutation[b] = a;
        map.autos[b] = matching_automorphism(lam.generator(a), mu.generator(b));
    }
    return map;
}

inline bool alphabet_has_extension_property(const Alphabet& alphabet) { return alphabet.k <= alphabet.m; }

/// A submodule is cyclic iff its support has dimension at most m.
inline bool is_cyclic_submodule(const Submodule& sub) { return sub.dim() <= sub.space.m; }

/// For a non-cyclic submodule, the hyperplanes of its support cover it: every
/// element has row space of dimension ≤ m < dim S. Cyclic submodules admit no
/// covering by proper submodules (nullopt).
inline std::optional<std::vector<Submodule>> covering_by_proper_submodules(const Submodule& sub,
                                                                           const Budget& budget = {})
{
    if (is_cyclic_submodule(sub)) return std::nullopt;
    const auto d = sub.dim();
    std::vector<Submodule> out;
    for (const auto& h : enumerate_subspaces(sub.space.field, d, d - 1, budget))
        out.emplace_back(sub.space, Subspace::span(h.basis() * sub.support.basis()));
    std::sort(out.begin(), out.end());
    return out;
}

/// Element-wise check that `covering` covers `sub`.
inline bool is_covering(const Submodule& sub, const std::vector<Submodule>& covering, const Budget& budget = {})
{
    bool covered = true;
    for_each_element(sub, budget, [&](const FqMatrix& x) {
        if (!covered) return;
        const auto rs = Subspace::span(x);
        covered = std::any_of(covering.begin(), covering.end(),
                              [&](const Submodule& e) { return contains(e.support, rs); });
    });
    return covered;
}

}  // namespace modext
