#pragma once

// Singleton bound, MDS detection for module codes, and a checker for the MDS
// extension theorem (every isometry of an MDS code of dimension ≠ 2 is monomial).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "modext/budget.hpp"
#include "modext/errors.hpp"
#include "modext/linalg.hpp"
#include "modext/modcode.hpp"

namespace modext {

struct MdsReport {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t kappa = 0;  // n − d + 1
    bool is_mds = false;
    /// Restriction to any κ columns is an isomorphism onto A^κ: every column
    /// surjective, the κ column duals of total size |A|^κ = |W| (so their sum
    /// is direct), and every κ columns with trivially intersecting kernels.
    bool lemma_conditions = false;
    /// |C| = |A|^κ.
    bool cardinality_equality = false;
    BigInt code_size;
    BigInt singleton_bound;
    /// Failing column subset when not MDS: a single column when it is not
    /// surjective, empty when |W| ≠ |A|^κ.
    std::vector<std::size_t> witnesses;
};

inline Subspace code_kernel(const Code& code)
{
    Subspace meet = Subspace::full(code.field(), code.space().t);
    for (const auto& s : kernel_tuple(code).supports) meet = intersect(meet, s);
    return meet;
}

/// Minimum Hamming weight of λ(w) over w with λ(w) ≠ 0.
inline std::size_t min_distance(const Code& code, const Budget& budget = {})
{
    budget.require_vectors(code.space().element_count(), "min_distance");
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for_each_matrix(code.field(), code.space().m, code.space().t, budget, [&](const FqMatrix& w) {
        const auto wt = hamming_weight(code.encode(w));
        if (wt != 0) best = std::min(best, wt);
    });
    if (best == std::numeric_limits<std::size_t>::max()) throw PreconditionFailed("min_distance of the zero code");
    return best;
}

namespace detail {
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r)
{
    BigInt b = 1;
    for (std::uint64_t i = 0; i < r; ++i) b = b * (n - i) / (i + 1);
    return to_u64_saturating(b);
}

/// Calls fn(subset) for each size-r subset of {0..n-1} in lexicographic order
/// until fn returns false.
template <class Fn>
bool for_each_subset(std::size_t n, std::size_t r, Fn&& fn)
{
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        if (!fn(idx)) return false;
        std::size_t i = r;
        while (i > 0 && idx[i - 1] == n - r + (i - 1)) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}
}  // namespace detail

inline MdsReport is_mds(const Code& code, const Budget& budget = {})
{
    if (code_kernel(code).dim() != 0) throw PreconditionFailed("is_mds: the parametrization is not injective");
    const auto& sp = code.space();
    const auto q = sp.field.q();
    MdsReport rep;
    rep.n = code.length();
    rep.d = min_distance(code, budget);
    rep.kappa = rep.n - rep.d + 1;
    rep.code_size = big_pow(q, sp.m * sp.t);
    rep.singleton_bound = big_pow(q, sp.m * code.alphabet().k * rep.kappa);
    if (rep.code_size > rep.singleton_bound) throw Error("internal: Singleton bound violated");
    rep.cardinality_equality = rep.code_size == rep.singleton_bound;

    // restricting to κ columns can only be onto A^κ when |W| = |A|^κ
    rep.lemma_conditions = sp.t == code.alphabet().k * rep.kappa;
    for (std::size_t i = 0; i < rep.n && rep.lemma_conditions; ++i)
        if (rank(code.generator(i)) != code.alphabet().k) {
            rep.lemma_conditions = false;
            rep.witnesses = {i};
            break;
        }
    if (rep.lemma_conditions) {
        budget.require_subspaces(detail::binomial(rep.n, rep.kappa), "is_mds: column subsets");
        const auto kernels = kernel_tuple(code).supports;
        detail::for_each_subset(rep.n, rep.kappa, [&](const std::vector<std::size_t>& subset) {
            Subspace meet = Subspace::full(sp.field, sp.t);
            for (auto i : subset) meet = intersect(meet, kernels[i]);
            if (meet.dim() != 0) {
                rep.lemma_conditions = false;
                rep.witnesses = subset;
                return false;
            }
            return true;
        });
    }
    rep.is_mds = rep.lemma_conditions;
    return rep;
}

/// Returned when an isometry of an MDS code with κ ≠ 2 has unequal kernel
/// multisets. The theorem excludes this; an occurrence signals a defect.
struct TheoremViolation {
    KernelDiff diff;
};

using MdsExtension = std::variant<MonomialMap, TheoremViolation>;

inline MdsExtension mds_extension_check(const Code& lam, const Code& mu, const Budget& budget = {})
{
    const auto rep = is_mds(lam, budget);
    if (!rep.is_mds) throw PreconditionFailed("mds_extension_check: the code is not MDS");
    if (rep.kappa == 2) throw PreconditionFailed("mds_extension_check: MDS codes of dimension 2 are excluded");
    if (!is_isometry_criterion(lam, mu, budget)) throw NotAnIsometry("mds_extension_check: not an isometry");
    auto ext = extend_to_monomial(lam, mu, budget);
    if (auto* map = std::get_if<MonomialMap>(&ext)) return *map;
    return TheoremViolation{std::get<Unextendable>(ext).diff};
}

struct ScanEntry {
    Code mu;
    bool extendable;
};

/// Every tuple of t×k generators μ that is a Hamming isometry image of `code`
/// (checked by brute force), with its extendability. Candidates are sharded
/// over `jobs` threads; output order is the enumeration order.
inline std::vector<ScanEntry> exhaustive_isometry_scan(const Code& code, const Budget& budget = {},
                                                       unsigned jobs = 1)
{
    const auto& sp = code.space();
    const auto k = code.alphabet().k;
    const auto n = code.length();
    const auto q = sp.field.q();
    const std::size_t entries_per_col = sp.t * k;
    const std::uint64_t total = saturating_pow(q, entries_per_col * n);
    budget.require_vectors(total, "exhaustive_isometry_scan");
    budget.require_vectors(sp.element_count(), "exhaustive_isometry_scan");

    auto candidate = [&](std::uint64_t index) {
        std::vector<FqMatrix> gens;
        gens.reserve(n);
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<Residue> e(entries_per_col);
            for (auto it = e.rbegin(); it != e.rend(); ++it) {
                *it = static_cast<Residue>(index % q);
                index /= q;
            }
            gens.emplace_back(sp.field, sp.t, k, std::move(e));
        }
        std::reverse(gens.begin(), gens.end());
        return Code(code.alphabet(), sp, std::move(gens));
    };

    jobs = std::max(1U, jobs);
    std::vector<std::vector<std::pair<std::uint64_t, ScanEntry>>> shards(jobs);
    std::vector<std::exception_ptr> failures(jobs);
    auto work = [&](unsigned shard) {
        try {
            for (std::uint64_t i = shard; i < total; i += jobs) {
                auto mu = candidate(i);
                if (!is_isometry_bruteforce(code, mu, budget)) continue;
                const bool ext = std::holds_alternative<MonomialMap>(extend_to_monomial(code, mu, budget));
                shards[shard].emplace_back(i, ScanEntry{std::move(mu), ext});
            }
        } catch (...) {
            failures[shard] = std::current_exception();
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned s = 0; s < jobs; ++s) threads.emplace_back(work, s);
        for (auto& th : threads) th.join();
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);
    std::vector<std::pair<std::uint64_t, ScanEntry>> merged;
    for (auto& s : shards)
        for (auto& e : s) merged.push_back(std::move(e));
    std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<ScanEntry> out;
    out.reserve(merged.size());
    for (auto& e : merged) out.push_back(std::move(e.second));
    return out;
}

}  // namespace modext
