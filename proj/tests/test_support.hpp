#pragma once

// Random generators and enumeration oracles shared by the test suites. The
// oracles work on explicit vector sets and do not call the library's
// elimination or lattice routines.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "modext/modext.hpp"

#include <algorithm>

namespace modext::testing {

using Vec = std::vector<Residue>;

inline FqMatrix random_matrix(PrimeField f, std::size_t rows, std::size_t cols, std::mt19937_64& rng)
{
    std::uniform_int_distribution<Residue> d(0, f.q() - 1);
    FqMatrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, d(rng));
    return m;
}

inline FqMatrix random_invertible(PrimeField f, std::size_t n, std::mt19937_64& rng)
{
    while (true) {
        auto m = random_matrix(f, n, n, rng);
        if (rank(m) == n) return m;
    }
}

inline Code random_code(PrimeField f, std::size_t m, std::size_t k, std::size_t t, std::size_t n,
                        std::mt19937_64& rng)
{
    std::vector<FqMatrix> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back(random_matrix(f, t, k, rng));
    return Code(Alphabet(f, m, k), ModuleSpace(f, m, t), std::move(gens));
}

inline MonomialMap random_monomial(PrimeField f, std::size_t n, std::size_t k, std::mt19937_64& rng)
{
    MonomialMap map;
    map.permutation.resize(n);
    for (std::size_t i = 0; i < n; ++i) map.permutation[i] = i;
    std::shuffle(map.permutation.begin(), map.permutation.end(), rng);
    for (std::size_t i = 0; i < n; ++i) map.autos.push_back(random_invertible(f, k, rng));
    return map;
}

/// Layered nontrivial solution living inside a random (m+1)-dimensional
/// subspace of F_q^t, realized as a code pair over A = M_{m×k}. Requires
/// t ≥ m+1 and k ≥ t.
inline CodePair random_layered_pair(PrimeField f, std::size_t m, std::size_t k, std::size_t t, std::mt19937_64& rng)
{
    const ModuleSpace space(f, m, t);
    const auto hosts = enumerate_subspaces(f, t, m + 1);
    const auto& host = hosts[rng() % hosts.size()];
    std::vector<FqMatrix> lam, mu;
    for (std::size_t j = 0; j <= m + 1; ++j) {
        const auto mult = to_u64_saturating(big_pow(f.q(), choose2(j)));
        for (const auto& local : enumerate_subspaces(f, m + 1, m + 1 - j)) {
            const auto s = Subspace::span(local.basis() * host.basis());
            const auto g = hom_with_kernel(space, s, k).generator;
            for (std::uint64_t i = 0; i < mult; ++i) (j % 2 == 0 ? lam : mu).push_back(g);
        }
    }
    return {Code(Alphabet(f, m, k), space, lam), Code(Alphabet(f, m, k), space, mu)};
}

enum class PairKind { independent, monomial, perturbed, layered };

/// A code pair over the same alphabet and length, drawn from a mix of
/// constructions so that isometric and non-isometric, extendable and
/// unextendable pairs all occur.
inline CodePair random_pair(PrimeField f, std::size_t m, std::size_t k, std::size_t t, std::size_t n, PairKind kind,
                            std::mt19937_64& rng)
{
    if (kind == PairKind::layered && t >= m + 1 && k >= t) {
        auto base = random_layered_pair(f, m, k, t, rng);
        if (base.lambda.length() <= n) {
            auto lam = base.lambda.generators();
            auto mu = base.mu.generators();
            while (lam.size() < n) {
                auto g = random_matrix(f, t, k, rng);
                lam.push_back(g);
                mu.push_back(g);
            }
            Code l(Alphabet(f, m, k), ModuleSpace(f, m, t), lam);
            Code u(Alphabet(f, m, k), ModuleSpace(f, m, t), mu);
            return {l, apply_monomial(random_monomial(f, n, k, rng), u)};
        }
    }
    auto lam = random_code(f, m, k, t, n, rng);
    switch (kind) {
    case PairKind::independent:
        return {lam, random_code(f, m, k, t, n, rng)};
    case PairKind::perturbed: {
        auto gens = apply_monomial(random_monomial(f, n, k, rng), lam).generators();
        gens[rng() % n] = random_matrix(f, t, k, rng);
        return {lam, Code(lam.alphabet(), lam.space(), gens)};
    }
    default:
        return {lam, apply_monomial(random_monomial(f, n, k, rng), lam)};
    }
}

/// Every linear combination of the rows of m.
inline std::set<Vec> row_space_set(const FqMatrix& m)
{
    std::set<Vec> out;
    const auto q = m.field().q();
    std::vector<Residue> coeffs(m.rows(), 0);
    while (true) {
        Vec v(m.cols(), 0);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) v[c] = (v[c] + coeffs[r] * m(r, c)) % q;
        out.insert(v);
        std::size_t i = 0;
        while (i < coeffs.size() && ++coeffs[i] == q) coeffs[i++] = 0;
        if (i == coeffs.size()) break;
    }
    return out;
}

inline std::set<Vec> all_vectors(PrimeField f, std::size_t len)
{
    std::set<Vec> out;
    for_each_vector(f, len, Budget{}, [&](std::span<const Residue> v) { out.insert(Vec(v.begin(), v.end())); });
    return out;
}

inline Residue dot(const Vec& a, const Vec& b, std::uint32_t q)
{
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::uint64_t{a[i]} * b[i];
    return static_cast<Residue>(s % q);
}

/// Number of d-dimensional subspaces of F_q^t as (ordered bases)/(ordered bases of one subspace).
inline std::uint64_t subspace_count_by_bases(std::uint64_t q, std::uint64_t t, std::uint64_t d)
{
    std::uint64_t num = 1, den = 1;
    std::uint64_t qt = 1, qd = 1;
    for (std::uint64_t i = 0; i < t; ++i) qt *= q;
    for (std::uint64_t i = 0; i < d; ++i) qd *= q;
    std::uint64_t qi = 1;
    for (std::uint64_t i = 0; i < d; ++i) {
        num *= qt - qi;
        den *= qd - qi;
        qi *= q;
    }
    return num / den;
}

}  // namespace modext::testing
