#include "catch_amalgamated.hpp"

#include "modext/modext.hpp"
#include "test_support.hpp"

using namespace modext;
using namespace modext::testing;

namespace {
const PrimeField F2{2}, F3{3};

std::size_t zero_columns(const Code& code)
{
    return static_cast<std::size_t>(
        std::count_if(code.generators().begin(), code.generators().end(), [](const FqMatrix& g) { return g.is_zero(); }));
}

std::vector<std::int64_t> negated(std::vector<std::int64_t> c)
{
    for (auto& v : c) v = -v;
    return c;
}
}  // namespace

TEST_CASE("inclusion-exclusion over a covering", "[forge]")
{
    for (auto f : {F2, F3}) {
        const ModuleSpace space(f, 1, 2);
        const Submodule whole(space, Subspace::full(f, 2));
        const auto cover = covering_by_proper_submodules(whole);
        REQUIRE(cover.has_value());
        const auto r = cover->size();
        CHECK(r == f.q() + 1);

        const auto sol = inclusion_exclusion_solution(whole, *cover);
        CHECK(sol.length() == std::uint64_t{1} << (r - 1));
        CHECK(total_multiplicity(sol.u()) == std::uint64_t{1} << (r - 1));
        CHECK(satisfies_indicator_equation(space, sol.v(), sol.u()));
        CHECK_FALSE(sol.is_trivial());

        // the odd side carries every line once; the rest is the zero subspace
        for (const auto& e : *cover) CHECK(sol.u().at(e.support) == 1);
        CHECK(sol.v().at(whole.support) == 1);

        const auto reduced = sol.cancelled();
        CHECK(satisfies_indicator_equation(space, reduced.v(), reduced.u()));
        CHECK_FALSE(reduced.is_trivial());
        CHECK(reduced.length() <= sol.length());
    }
    const ModuleSpace space(F2, 1, 2);
    const Submodule whole(space, Subspace::full(F2, 2));
    const auto cover = *covering_by_proper_submodules(whole);
    REQUIRE_THROWS_AS(inclusion_exclusion_solution(whole, {cover[0], cover[1]}), PreconditionFailed);
    REQUIRE_THROWS_AS(inclusion_exclusion_solution(whole, {}), PreconditionFailed);
}

TEST_CASE("solution pairs are validated", "[forge]")
{
    const ModuleSpace space(F2, 1, 2);
    SubspaceMultiset v{{Subspace::zero(F2, 2), 1}};
    SubspaceMultiset u{{Subspace::full(F2, 2), 1}};
    REQUIRE_THROWS_AS(SolutionPair(space, v, u), PreconditionFailed);
    u = {{Subspace::zero(F2, 2), 2}};
    REQUIRE_THROWS_AS(SolutionPair(space, v, u), PreconditionFailed);
    const SolutionPair trivial(space, v, v);
    CHECK(trivial.is_trivial());
    const auto codes = solution_to_codes(trivial, 2);
    CHECK(std::holds_alternative<MonomialMap>(extend_to_monomial(codes.lambda, codes.mu)));
}

TEST_CASE("hom_with_kernel", "[forge]")
{
    const ModuleSpace space(F3, 1, 3);
    for (const auto& s : all_subspaces(F3, 3)) {
        const auto h = hom_with_kernel(space, s, 3);
        CHECK(h.kernel_support() == s);
        CHECK(rank(h.generator) == 3 - s.dim());
    }
    const auto line = Subspace::span(FqMatrix::from_rows(F3, {{1, 2, 0}}, 3));
    CHECK(hom_with_kernel(space, line, 2).kernel_support() == line);
    REQUIRE_THROWS_AS(hom_with_kernel(space, line, 1), RankInfeasible);
    REQUIRE_THROWS_AS(hom_with_kernel(space, Subspace::zero(F3, 2), 3), DimensionMismatch);
}

TEST_CASE("layered solution and its length", "[forge]")
{
    CHECK(forged_length(2, 1) == 3);
    CHECK(forged_length(3, 1) == 4);
    CHECK(forged_length(2, 2) == 15);
    CHECK(forged_length(5, 1) == 6);

    for (std::uint64_t q : {2, 3, 5}) {
        for (std::size_t m = 1; m <= 3; ++m) {
            // half of ∑_i q^{C(i,2)} [m+1 choose i]_q
            BigInt total = 0;
            for (std::size_t i = 0; i <= m + 1; ++i)
                total += big_pow(q, choose2(i)) * gaussian_binomial(static_cast<std::int64_t>(m + 1),
                                                                     static_cast<std::int64_t>(i), q);
            CHECK(total == 2 * forged_length(q, m));
        }
    }

    for (auto [q, m] : {std::pair{2U, std::size_t{1}}, std::pair{3U, std::size_t{1}}, std::pair{2U, std::size_t{2}},
                        std::pair{5U, std::size_t{1}}}) {
        const auto sol = layered_solution(PrimeField(q), m);
        CHECK(BigInt(sol.length()) == forged_length(q, m));
        CHECK_FALSE(sol.is_trivial());
        CHECK(sol.v().contains(Subspace::full(PrimeField(q), m + 1)));
        CHECK(sol.v().contains(Subspace::zero(PrimeField(q), m + 1)) == ((m + 1) % 2 == 0));
    }
}

TEST_CASE("forged unextendable isometry", "[forge]")
{
    for (auto [q, m, k] : {std::tuple{2U, std::size_t{1}, std::size_t{2}}, std::tuple{3U, std::size_t{1}, std::size_t{2}},
                           std::tuple{2U, std::size_t{1}, std::size_t{3}}, std::tuple{2U, std::size_t{2}, std::size_t{3}}}) {
        const auto pair = wood_counterexample(q, m, k);
        CHECK(BigInt(pair.lambda.length()) == forged_length(q, m));
        CHECK(pair.mu.length() == pair.lambda.length());
        CHECK(pair.lambda.alphabet() == Alphabet(PrimeField(q), m, k));
        // the whole space is a kernel on the λ side only
        CHECK(zero_columns(pair.lambda) == 1);
        CHECK(zero_columns(pair.mu) == 0);
        CHECK(is_isometry_bruteforce(pair.lambda, pair.mu));
        CHECK(std::holds_alternative<Unextendable>(extend_to_monomial(pair.lambda, pair.mu)));
    }
    REQUIRE_THROWS_AS(wood_counterexample(2, 2, 2), DomainRejection);
    REQUIRE_THROWS_AS(wood_counterexample(2, 2, 1), DomainRejection);
    REQUIRE_THROWS_AS(wood_counterexample(4, 1, 2), InvalidInput);
}

TEST_CASE("solution_to_codes round trip", "[forge][property]")
{
    for (auto [q, m] : {std::pair{2U, std::size_t{1}}, std::pair{3U, std::size_t{1}}, std::pair{2U, std::size_t{2}}}) {
        const auto sol = layered_solution(PrimeField(q), m);
        const auto codes = solution_to_codes(sol, m + 1);
        CHECK(to_multiset(kernel_tuple(codes.lambda).supports) == sol.v());
        CHECK(to_multiset(kernel_tuple(codes.mu).supports) == sol.u());
        CHECK(is_isometry_criterion(codes.lambda, codes.mu));
    }
}

TEST_CASE("incidence matrix examples", "[forge]")
{
    auto sys = incidence_matrix(2, 1, 2);
    CHECK(sys.rows.size() == 4);
    CHECK(sys.cols.size() == 5);
    sys = incidence_matrix(2, 2, 3);
    CHECK(sys.rows.size() == 15);
    CHECK(sys.cols.size() == 16);
    CHECK(incidence_matrix(3, 1, 2).cols.size() == 6);

    const auto zero_row = std::find(sys.rows.begin(), sys.rows.end(), Subspace::zero(F2, 3)) - sys.rows.begin();
    for (std::size_t c = 0; c < sys.cols.size(); ++c) CHECK(sys.at(zero_row, c) == 1);
    for (std::size_t r = 0; r < sys.rows.size(); ++r)
        for (std::size_t c = 0; c < sys.cols.size(); ++c)
            CHECK(sys.at(r, c) == (contains(sys.cols[c], sys.rows[r]) ? 1 : 0));

    CHECK(incidence_matrix(2, 1, 2, {}, 1).cols.size() == 4);
    Budget tiny;
    tiny.max_subspaces = 3;
    REQUIRE_THROWS_AS(incidence_matrix(2, 2, 3, tiny), BudgetExceeded);
}

TEST_CASE("kernel vectors and solutions correspond", "[forge][property]")
{
    for (auto [q, m] : {std::pair{2U, std::size_t{1}}, std::pair{3U, std::size_t{1}}, std::pair{2U, std::size_t{2}}}) {
        const auto sol = layered_solution(PrimeField(q), m);
        const auto sys = incidence_matrix(q, m, m + 1);
        const auto c = to_kernel_vector(sys, sol);
        for (auto v : sys.apply(c)) CHECK(v == 0);
        CHECK(to_solution(sys, c) == sol);
        CHECK(to_solution(sys, negated(c)).v() == sol.u());
        CHECK(integer_rank(sys) + 1 == sys.cols.size());
    }
    const auto sys = incidence_matrix(2, 1, 2);
    std::vector<std::int64_t> bad(sys.cols.size(), 0);
    bad.front() = 1;
    bad.back() = -1;
    REQUIRE_THROWS_AS(to_solution(sys, bad), PreconditionFailed);
    REQUIRE_THROWS_AS(to_solution(sys, {1}), DimensionMismatch);
}

TEST_CASE("minimum nontrivial length", "[forge]")
{
    for (auto [q, m, expected] : {std::tuple{2U, std::size_t{1}, 3ULL}, std::tuple{3U, std::size_t{1}, 4ULL},
                                  std::tuple{5U, std::size_t{1}, 6ULL}, std::tuple{2U, std::size_t{2}, 15ULL}}) {
        const auto n = to_u64_saturating(forged_length(q, m));
        const auto res = min_nontrivial_length(q, m, m + 1, n + 5);
        REQUIRE(res.min_length.has_value());
        CHECK(*res.min_length == expected);
        CHECK(res.exhausted);
        for (auto v : res.system.apply(res.witness)) CHECK(v == 0);

        // the minimizer is the layered solution, up to which side is called V
        const auto layered = to_kernel_vector(res.system, layered_solution(PrimeField(q), m));
        CHECK((res.witness == layered || res.witness == negated(layered)));
    }
}

TEST_CASE("minimum length beyond t = m + 1", "[forge]")
{
    // a non-cyclic plane inside F_2^3 carries the same length-3 solution
    const auto res = min_nontrivial_length(2, 1, 3, 8);
    REQUIRE(res.min_length.has_value());
    CHECK(*res.min_length == 3);
    CHECK(res.exhausted);
}

TEST_CASE("cyclic supports alone admit no nontrivial solution", "[forge]")
{
    for (auto [q, m] : {std::pair{2U, std::size_t{1}}, std::pair{3U, std::size_t{1}}, std::pair{2U, std::size_t{2}}}) {
        const auto res = min_nontrivial_length(q, m, m + 1, 10, SearchOptions{m});
        CHECK_FALSE(res.min_length.has_value());
        CHECK(res.exhausted);
        CHECK(integer_rank(res.system) == res.system.cols.size());
    }
}

TEST_CASE("search respects the bound and budget", "[forge]")
{
    // the true minimum 15 lies beyond the bound: whatever is reported is unproven
    auto res = min_nontrivial_length(2, 2, 3, 10);
    CHECK_FALSE(res.exhausted);
    if (res.min_length) CHECK(*res.min_length > 10);

    Budget tiny;
    tiny.max_vectors = 10;
    REQUIRE_THROWS_AS(min_nontrivial_length(2, 2, 3, 20, {}, tiny), BudgetExceeded);
    REQUIRE_THROWS_AS(min_nontrivial_length(2, 1, 2, 0), InvalidInput);
}
