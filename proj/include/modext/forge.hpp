#pragma once

// Nontrivial solutions of ∑ 1_{V_i} = ∑ 1_{U_i}: inclusion–exclusion from
// coverings, the layered minimum-length solution and the unextendable isometry
// built from it, and the incidence-matrix search for the minimum length.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "modext/budget.hpp"
#include "modext/errors.hpp"
#include "modext/linalg.hpp"
#include "modext/modcode.hpp"

namespace modext {

using SubspaceMultiset = std::map<Subspace, std::uint64_t>;

inline std::uint64_t total_multiplicity(const SubspaceMultiset& ms)
{
    std::uint64_t n = 0;
    for (const auto& [s, c] : ms) n += c;
    return n;
}

/// ∑_{V ∈ ms} mult(V)·1[S ⊆ V] at each evaluation point S.
inline std::vector<std::int64_t> weighted_containment(const SubspaceMultiset& ms, const std::vector<Subspace>& points)
{
    std::vector<std::int64_t> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        std::int64_t n = 0;
        for (const auto& [s, c] : ms)
            if (contains(s, p)) n += static_cast<std::int64_t>(c);
        out.push_back(n);
    }
    return out;
}

inline bool satisfies_indicator_equation(const ModuleSpace& space, const SubspaceMultiset& v,
                                         const SubspaceMultiset& u, const Budget& budget = {})
{
    const auto points = subspaces_up_to_dim(space.field, space.t, space.m, budget);
    return weighted_containment(v, points) == weighted_containment(u, points);
}

/// Two multisets of subspaces of F_q^t that solve the indicator equation over
/// W = M_{m×t}(F_q). Validated on construction.
class SolutionPair {
public:
    SolutionPair(ModuleSpace space, SubspaceMultiset v, SubspaceMultiset u, const Budget& budget = {})
        : space_(space), v_(std::move(v)), u_(std::move(u))
    {
        std::erase_if(v_, [](const auto& e) { return e.second == 0; });
        std::erase_if(u_, [](const auto& e) { return e.second == 0; });
        for (const auto* side : {&v_, &u_})
            for (const auto& [s, c] : *side)
                if (s.field() != space_.field || s.ambient() != space_.t)
                    throw DimensionMismatch("solution support outside F_q^t");
        if (total_multiplicity(v_) != total_multiplicity(u_))
            throw PreconditionFailed("solution sides have different total multiplicity");
        if (!satisfies_indicator_equation(space_, v_, u_, budget))
            throw PreconditionFailed("multisets do not satisfy the indicator equation");
    }

    const ModuleSpace& space() const { return space_; }
    const SubspaceMultiset& v() const { return v_; }
    const SubspaceMultiset& u() const { return u_; }
    std::uint64_t length() const { return total_multiplicity(v_); }
    bool is_trivial() const { return v_ == u_; }

    /// Removes common terms from both sides.
    SolutionPair cancelled() const
    {
        SubspaceMultiset v = v_, u = u_;
        for (auto& [s, c] : v) {
            auto it = u.find(s);
            if (it == u.end()) continue;
            const auto common = std::min(c, it->second);
            c -= common;
            it->second -= common;
        }
        return SolutionPair(space_, std::move(v), std::move(u));
    }

    bool operator==(const SolutionPair& other) const
    {
        return space_ == other.space_ && v_ == other.v_ && u_ == other.u_;
    }

private:
    ModuleSpace space_;
    SubspaceMultiset v_;
    SubspaceMultiset u_;
};

inline SubspaceMultiset to_multiset(const std::vector<Subspace>& supports)
{
    SubspaceMultiset ms;
    for (const auto& s : supports) ++ms[s];
    return ms;
}

/// ∑_{|I| even} 1_{M_I} = ∑_{|I| odd} 1_{M_I} with M_I = ∩_{i∈I} E_i and
/// M_∅ = M, returned before cancellation (2^{r−1} terms per side).
inline SolutionPair inclusion_exclusion_solution(const Submodule& whole, const std::vector<Submodule>& covering,
                                                 const Budget& budget = {})
{
    const auto r = covering.size();
    if (r == 0) throw PreconditionFailed("empty covering");
    if (r >= 63) throw BudgetExceeded("inclusion_exclusion_solution: covering too large");
    budget.require_vectors(std::uint64_t{1} << r, "inclusion_exclusion_solution");
    for (const auto& e : covering) {
        if (e.space != whole.space) throw DimensionMismatch("covering member lives in a different module");
        if (!contains(whole.support, e.support) || e.support == whole.support || e.dim() == 0)
            throw PreconditionFailed("covering members must be proper nonzero submodules of M");
    }
    if (!is_covering(whole, covering, budget)) throw PreconditionFailed("the submodules do not cover M");

    SubspaceMultiset even, odd;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
        Subspace meet = whole.support;
        int bits = 0;
        for (std::size_t i = 0; i < r; ++i)
            if ((mask >> i) & 1U) {
                meet = intersect(meet, covering[i].support);
                ++bits;
            }
        ++(bits % 2 == 0 ? even : odd)[meet];
    }
    return SolutionPair(whole.space, std::move(even), std::move(odd), budget);
}

/// X ↦ X·G with row kernel exactly S: a complement of S (unit vectors chosen
/// greedily) is sent to the first t − dim S unit rows of F_q^k.
inline Hom hom_with_kernel(const ModuleSpace& space, const Subspace& s, std::size_t k)
{
    if (s.field() != space.field || s.ambient() != space.t) throw DimensionMismatch("kernel outside F_q^t");
    const auto rank_needed = space.t - s.dim();
    if (rank_needed > k)
        throw RankInfeasible("a kernel of codimension " + std::to_string(rank_needed) +
                             " needs an alphabet with k >= " + std::to_string(rank_needed) + ", got k = " +
                             std::to_string(k));
    const auto basis = FqMatrix::vstack(s.basis(), complement_units(s));
    FqMatrix targets(space.field, space.t, k);
    for (std::size_t j = 0; j < rank_needed; ++j) targets.set(s.dim() + j, j, 1);
    return Hom(space, Alphabet(space.field, space.m, k), inverse(basis) * targets);
}

/// Codes whose kernel tuples are the two sides of the solution.
struct CodePair {
    Code lambda;
    Code mu;
};

inline CodePair solution_to_codes(const SolutionPair& sol, std::size_t k)
{
    auto build = [&](const SubspaceMultiset& side) {
        std::vector<FqMatrix> gens;
        for (const auto& [s, c] : side) {
            const auto g = hom_with_kernel(sol.space(), s, k).generator;
            for (std::uint64_t i = 0; i < c; ++i) gens.push_back(g);
        }
        return Code(Alphabet(sol.space().field, sol.space().m, k), sol.space(), std::move(gens));
    };
    return {build(sol.v()), build(sol.u())};
}

/// ∏_{i=1}^{m} (1 + q^i).
inline BigInt forged_length(std::uint64_t q, std::size_t m)
{
    BigInt n = 1;
    for (std::size_t i = 1; i <= m; ++i) n *= 1 + big_pow(q, i);
    return n;
}

/// The layered solution on W = M_{m×(m+1)}: every subspace of codimension j
/// with multiplicity q^{C(j,2)}, on the V side for even j and the U side for odd j.
inline SolutionPair layered_solution(PrimeField field, std::size_t m, const Budget& budget = {})
{
    const std::size_t t = m + 1;
    const ModuleSpace space(field, m, t);
    SubspaceMultiset v, u;
    for (std::size_t j = 0; j <= t; ++j) {
        const auto mult = to_u64_saturating(big_pow(field.q(), choose2(j)));
        for (auto& s : enumerate_subspaces(field, t, t - j, budget)) (j % 2 == 0 ? v : u)[std::move(s)] = mult;
    }
    return SolutionPair(space, std::move(v), std::move(u), budget);
}

/// Unextendable isometry of length ∏_{i=1}^{m}(1+q^i) over A = M_{m×k}(F_q),
/// k > m. Columns are built over M_{m×(m+1)} and embedded into A by appending
/// zero columns to each generator.
inline CodePair wood_counterexample(std::uint32_t q, std::size_t m, std::size_t k, const Budget& budget = {})
{
    const PrimeField field(q);
    if (m == 0) throw InvalidInput("m must be at least 1");
    if (k <= m)
        throw DomainRejection("k = " + std::to_string(k) + " <= m = " + std::to_string(m) +
                              ": the alphabet has the extension property, no unextendable isometry exists");
    const auto inner = solution_to_codes(layered_solution(field, m, budget), m + 1);
    auto pad = [&](const Code& c) {
        std::vector<FqMatrix> gens;
        for (const auto& g : c.generators()) gens.push_back(g.pad_columns(k));
        return Code(Alphabet(field, m, k), c.space(), std::move(gens));
    };
    return {pad(inner.lambda), pad(inner.mu)};
}

// ---------------------------------------------------------------------------
// Incidence system

/// Z[S, K] = 1 iff S ⊆ K, rows S over subspaces with dim ≤ m, columns K over
/// subspaces with dim ≤ max_column_dim. Integer vectors c with Z·c = 0 are the
/// solutions: positive entries on the V side, negative on the U side.
struct IncidenceSystem {
    ModuleSpace space;
    std::vector<Subspace> rows;
    std::vector<Subspace> cols;
    std::vector<std::uint8_t> z;

    std::uint8_t at(std::size_t r, std::size_t c) const { return z[r * cols.size() + c]; }

    std::vector<std::int64_t> apply(const std::vector<std::int64_t>& c) const
    {
        if (c.size() != cols.size()) throw DimensionMismatch("vector length differs from column count");
        std::vector<std::int64_t> out(rows.size(), 0);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t j = 0; j < cols.size(); ++j)
                if (at(r, j) != 0) out[r] += c[j];
        return out;
    }
};

inline IncidenceSystem incidence_matrix(std::uint32_t q, std::size_t m, std::size_t t, const Budget& budget = {},
                                        std::optional<std::size_t> max_column_dim = std::nullopt)
{
    const PrimeField field(q);
    IncidenceSystem sys{ModuleSpace(field, m, t), subspaces_up_to_dim(field, t, m, budget),
                        subspaces_up_to_dim(field, t, max_column_dim.value_or(t), budget), {}};
    budget.require_vectors(saturating_pow(sys.rows.size(), 1) * sys.cols.size(), "incidence_matrix");
    sys.z.assign(sys.rows.size() * sys.cols.size(), 0);
    for (std::size_t r = 0; r < sys.rows.size(); ++r)
        for (std::size_t c = 0; c < sys.cols.size(); ++c)
            sys.z[r * sys.cols.size() + c] = contains(sys.cols[c], sys.rows[r]) ? 1 : 0;
    return sys;
}

inline SolutionPair to_solution(const IncidenceSystem& sys, const std::vector<std::int64_t>& c,
                                const Budget& budget = {})
{
    if (c.size() != sys.cols.size()) throw DimensionMismatch("vector length differs from column count");
    SubspaceMultiset v, u;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] > 0) v[sys.cols[j]] = static_cast<std::uint64_t>(c[j]);
        if (c[j] < 0) u[sys.cols[j]] = static_cast<std::uint64_t>(-c[j]);
    }
    return SolutionPair(sys.space, std::move(v), std::move(u), budget);
}

inline std::vector<std::int64_t> to_kernel_vector(const IncidenceSystem& sys, const SolutionPair& sol)
{
    if (sol.space() != sys.space) throw DimensionMismatch("solution and system live over different spaces");
    std::vector<std::int64_t> c(sys.cols.size(), 0);
    auto add = [&](const SubspaceMultiset& side, std::int64_t sign) {
        for (const auto& [s, mult] : side) {
            auto it = std::lower_bound(sys.cols.begin(), sys.cols.end(), s);
            if (it == sys.cols.end() || *it != s) throw InvalidInput("solution support is not a column of the system");
            c[static_cast<std::size_t>(it - sys.cols.begin())] += sign * static_cast<std::int64_t>(mult);
        }
    };
    add(sol.v(), 1);
    add(sol.u(), -1);
    return c;
}

/// Exact rank of Z over the rationals.
inline std::size_t integer_rank(const IncidenceSystem& sys)
{
    using Rational = boost::multiprecision::cpp_rational;
    const auto nr = sys.rows.size(), nc = sys.cols.size();
    std::vector<std::vector<Rational>> a(nr, std::vector<Rational>(nc));
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) a[r][c] = sys.at(r, c);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t p = rank;
        while (p < nr && a[p][col] == 0) ++p;
        if (p == nr) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = rank + 1; r < nr; ++r) {
            if (a[r][col] == 0) continue;
            const Rational factor = a[r][col] / a[rank][col];
            for (std::size_t c = col; c < nc; ++c) a[r][c] -= factor * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

struct SearchOptions {
    /// Restricts the candidate supports to dimension ≤ this value.
    std::optional<std::size_t> max_column_dim;
};

struct SearchResult {
    /// ½‖c‖₁ of the best kernel vector; empty when none was found.
    std::optional<std::uint64_t> min_length;
    std::vector<std::int64_t> witness;
    /// True when min_length is proven minimal, or when the kernel is provably zero.
    bool exhausted = false;
    std::uint64_t nodes = 0;
    IncidenceSystem system;
};

/// Minimum ½‖c‖₁ over nonzero integer c with Z·c = 0.
///
/// Rows and columns of dimension ≤ m pair up into a unitriangular block, so a
/// kernel vector is determined by its entries on the non-cyclic columns (dim > m):
/// the cyclic entries follow by back-substitution in decreasing dimension. The
/// search enumerates the non-cyclic part by increasing L1 norm s (columns in
/// decreasing dimension) and stops once s exceeds the incumbent, since the
/// total norm is at least s. Optimal ties are broken towards the
/// lexicographically smallest vector.
inline SearchResult min_nontrivial_length(std::uint32_t q, std::size_t m, std::size_t t, std::uint64_t length_bound,
                                          const SearchOptions& options = {}, const Budget& budget = {})
{
    if (t == 0) throw InvalidInput("min_nontrivial_length requires t >= 1");
    if (length_bound == 0) throw InvalidInput("min_nontrivial_length requires a positive bound");
    SearchResult result{std::nullopt, {}, false, 0, incidence_matrix(q, m, t, budget, options.max_column_dim)};
    const auto& sys = result.system;
    const auto nc = sys.cols.size();

    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < nc; ++j)
        if (sys.cols[j].dim() > m) free_cols.push_back(j);
    std::stable_sort(free_cols.begin(), free_cols.end(),
                     [&](std::size_t a, std::size_t b) { return sys.cols[a].dim() > sys.cols[b].dim(); });

    // Back-substitution plan: rows by decreasing dimension; each row either owns
    // the column equal to it or is a pure consistency check.
    struct RowPlan {
        std::optional<std::size_t> own;
        std::vector<std::size_t> strict_supersets;
    };
    std::vector<RowPlan> plan;
    std::vector<std::size_t> row_order(sys.rows.size());
    std::iota(row_order.begin(), row_order.end(), std::size_t{0});
    std::stable_sort(row_order.begin(), row_order.end(),
                     [&](std::size_t a, std::size_t b) { return sys.rows[a].dim() > sys.rows[b].dim(); });
    for (auto r : row_order) {
        RowPlan p;
        for (std::size_t j = 0; j < nc; ++j) {
            if (sys.at(r, j) == 0) continue;
            if (sys.cols[j] == sys.rows[r])
                p.own = j;
            else
                p.strict_supersets.push_back(j);
        }
        plan.push_back(std::move(p));
    }

    if (free_cols.empty()) {
        result.exhausted = true;
        return result;
    }

    std::vector<std::int64_t> c(nc, 0);
    std::optional<std::uint64_t> best_norm;
    const std::uint64_t norm_cap = 2 * length_bound;

    auto evaluate = [&]() {
        for (const auto& p : plan) {
            std::int64_t acc = 0;
            for (auto j : p.strict_supersets) acc += c[j];
            if (p.own)
                c[*p.own] = -acc;
            else if (acc != 0)
                return;
        }
        std::uint64_t norm = 0;
        for (auto v : c) norm += static_cast<std::uint64_t>(std::llabs(v));
        if (!best_norm || norm < *best_norm || (norm == *best_norm && c < result.witness)) {
            best_norm = norm;
            result.witness = c;
        }
    };

    std::function<void(std::size_t, std::uint64_t)> descend = [&](std::size_t i, std::uint64_t remaining) {
        if (++result.nodes > budget.max_vectors)
            throw BudgetExceeded("min_nontrivial_length: search exceeded " + std::to_string(budget.max_vectors) +
                                 " nodes");
        if (i == free_cols.size()) {
            if (remaining == 0) evaluate();
            return;
        }
        const auto col = free_cols[i];
        if (i + 1 == free_cols.size()) {
            // the last coordinate absorbs the remaining norm
            if (remaining == 0) {
                descend(i + 1, 0);
            } else {
                for (int sign : {-1, 1}) {
                    c[col] = sign * static_cast<std::int64_t>(remaining);
                    descend(i + 1, 0);
                }
                c[col] = 0;
            }
            return;
        }
        for (std::uint64_t mag = 0; mag <= remaining; ++mag) {
            for (int sign : {-1, 1}) {
                if (mag == 0 && sign == 1) continue;
                c[col] = sign * static_cast<std::int64_t>(mag);
                descend(i + 1, remaining - mag);
            }
        }
        c[col] = 0;
    };

    for (std::uint64_t s = 1; s <= norm_cap && (!best_norm || s <= *best_norm); ++s) descend(0, s);

    if (best_norm) {
        result.min_length = *best_norm / 2;
        result.exhausted = *best_norm <= norm_cap;
    }
    return result;
}

}  // namespace modext
