#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it in-process.
//
// Exit codes: 0 success, 2 domain rejection, 3 budget (or search bound hit
// without exhaustion), 4 input error, 5 defect signal (theorem violation,
// criterion/oracle disagreement, failed identity).

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "modext/codefile.hpp"
#include "modext/modext.hpp"

namespace modext::cli {

enum ExitCode : int { kOk = 0, kDomain = 2, kBudget = 3, kInput = 4, kDefect = 5 };

struct Context {
    std::ostream& out;
    std::ostream& err;
    bool json_output = false;
    unsigned jobs = 1;
    Budget budget;
};

namespace detail {

inline const char* yes_no(bool b) { return b ? "yes" : "no"; }

inline json budget_json(const Budget& b)
{
    return {{"max_vectors", b.max_vectors}, {"max_subspaces", b.max_subspaces}};
}

class Stopwatch {
public:
    double elapsed_ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::size_t zero_columns(const Code& c)
{
    std::size_t n = 0;
    for (const auto& g : c.generators()) n += g.is_zero() ? 1 : 0;
    return n;
}

inline void print_diff(std::ostream& os, const KernelDiff& d)
{
    auto side = [&](const char* name, const std::map<Subspace, std::size_t>& ms) {
        os << "  " << name << ":";
        if (ms.empty()) os << " (none)";
        os << '\n';
        for (const auto& [s, c] : ms) os << "    dim " << s.dim() << " support " << s.to_string() << " x" << c << '\n';
    };
    os << "kernel multiset difference:\n";
    side("lambda only", d.lambda_only);
    side("mu only", d.mu_only);
}

inline void print_map(std::ostream& os, const MonomialMap& map)
{
    os << "monomial map:\n  permutation:";
    for (auto p : map.permutation) os << ' ' << p;
    os << '\n';
    for (std::size_t i = 0; i < map.autos.size(); ++i) os << "  g" << i << " = " << map.autos[i].to_string() << '\n';
}

/// Oracle verdict when the element space fits the budget.
inline std::optional<bool> oracle_if_affordable(const Code& lam, const Code& mu, const Budget& budget)
{
    if (lam.space().element_count() > budget.max_vectors) return std::nullopt;
    return is_isometry_bruteforce(lam, mu, budget);
}

}  // namespace detail

struct ForgeArgs {
    std::uint32_t q = 2;
    std::size_t m = 1;
    std::size_t k = 2;
    std::string out_lambda;
    std::string out_mu;
};

inline int cmd_forge(const Context& ctx, const ForgeArgs& a)
{
    using namespace detail;
    Stopwatch sw;
    const auto pair = wood_counterexample(a.q, a.m, a.k, ctx.budget);
    const bool criterion = is_isometry_criterion(pair.lambda, pair.mu, ctx.budget);
    const auto oracle = oracle_if_affordable(pair.lambda, pair.mu, ctx.budget);
    const auto ext = extend_to_monomial(pair.lambda, pair.mu, ctx.budget);
    const bool extendable = std::holds_alternative<MonomialMap>(ext);
    if (!a.out_lambda.empty()) store_code(pair.lambda, a.out_lambda);
    if (!a.out_mu.empty()) store_code(pair.mu, a.out_mu);
    const auto n = pair.lambda.length();
    const bool defect = !criterion || (oracle && !*oracle) || extendable;

    if (ctx.json_output) {
        json rep{{"command", "forge"},
                 {"args", {{"q", a.q}, {"m", a.m}, {"k", a.k}, {"out_lambda", a.out_lambda}, {"out_mu", a.out_mu}}},
                 {"N", n},
                 {"lambda_zero_columns", zero_columns(pair.lambda)},
                 {"mu_zero_columns", zero_columns(pair.mu)},
                 {"isometry", criterion},
                 {"oracle", oracle ? json(*oracle) : json(nullptr)},
                 {"extendable", extendable},
                 {"elapsed_ms", sw.elapsed_ms()},
                 {"budget", budget_json(ctx.budget)}};
        if (const auto* u = std::get_if<Unextendable>(&ext)) rep["kernel_diff"] = kernel_diff_to_json(u->diff);
        ctx.out << rep.dump(2) << '\n';
    } else {
        ctx.out << "forge q=" << a.q << " m=" << a.m << " k=" << a.k << '\n';
        ctx.out << "N=" << n << ", " << (extendable ? "extendable" : "unextendable") << '\n';
        ctx.out << "lambda zero columns: " << zero_columns(pair.lambda) << ", mu zero columns: "
                << zero_columns(pair.mu) << '\n';
        ctx.out << "isometry: " << yes_no(criterion) << '\n';
        ctx.out << "oracle: " << (oracle ? yes_no(*oracle) : "skipped (budget)") << '\n';
        ctx.out << "extendable: " << yes_no(extendable) << '\n';
        if (const auto* u = std::get_if<Unextendable>(&ext)) print_diff(ctx.out, u->diff);
    }
    return defect ? kDefect : kOk;
}

struct CheckArgs {
    std::string lambda;
    std::string mu;
    bool oracle = false;
};

inline int cmd_check(const Context& ctx, const CheckArgs& a)
{
    using namespace detail;
    Stopwatch sw;
    const auto lam = load_code(a.lambda);
    const auto mu = load_code(a.mu);
    const bool criterion = is_isometry_criterion(lam, mu, ctx.budget);
    std::optional<bool> oracle;
    if (a.oracle) oracle = is_isometry_bruteforce(lam, mu, ctx.budget);
    std::optional<Extension> ext;
    if (criterion) ext = extend_to_monomial(lam, mu, ctx.budget);
    const bool disagreement = oracle && *oracle != criterion;

    if (ctx.json_output) {
        json rep{{"command", "check"},
                 {"args", {{"lambda", a.lambda}, {"mu", a.mu}, {"oracle", a.oracle}}},
                 {"isometry", criterion},
                 {"oracle", oracle ? json(*oracle) : json(nullptr)},
                 {"extendable", ext ? json(std::holds_alternative<MonomialMap>(*ext)) : json(nullptr)},
                 {"elapsed_ms", sw.elapsed_ms()},
                 {"budget", budget_json(ctx.budget)}};
        if (ext) {
            if (const auto* map = std::get_if<MonomialMap>(&*ext)) rep["monomial_map"] = monomial_map_to_json(*map);
            if (const auto* u = std::get_if<Unextendable>(&*ext)) rep["kernel_diff"] = kernel_diff_to_json(u->diff);
        }
        ctx.out << rep.dump(2) << '\n';
    } else {
        ctx.out << "isometry: " << yes_no(criterion) << '\n';
        if (oracle) ctx.out << "oracle: " << yes_no(*oracle) << (disagreement ? "  (DISAGREES WITH CRITERION)" : "")
                            << '\n';
        if (!ext) {
            ctx.out << "extendable: n/a\n";
        } else if (const auto* map = std::get_if<MonomialMap>(&*ext)) {
            ctx.out << "extendable: yes\n";
            print_map(ctx.out, *map);
        } else {
            ctx.out << "extendable: no\n";
            print_diff(ctx.out, std::get<Unextendable>(*ext).diff);
        }
    }
    return disagreement ? kDefect : kOk;
}

struct MinlenArgs {
    std::uint32_t q = 2;
    std::size_t m = 1;
    std::optional<std::size_t> t;
    std::optional<std::uint64_t> bound;
    bool cyclic_only = false;
};

inline int cmd_minlen(const Context& ctx, const MinlenArgs& a)
{
    using namespace detail;
    Stopwatch sw;
    const std::size_t t = a.t.value_or(a.m + 1);
    const auto n_formula = forged_length(a.q, a.m);
    const std::uint64_t bound = a.bound.value_or(to_u64_saturating(n_formula) + 5);
    SearchOptions opts;
    if (a.cyclic_only) opts.max_column_dim = a.m;
    const auto res = min_nontrivial_length(a.q, a.m, t, bound, opts, ctx.budget);
    const auto& sys = res.system;
    const auto rank = integer_rank(sys);

    // witness summary: per side, multiplicity totals by subspace dimension
    std::map<std::size_t, std::int64_t> v_by_dim, u_by_dim;
    for (std::size_t j = 0; j < res.witness.size(); ++j) {
        if (res.witness[j] > 0) v_by_dim[sys.cols[j].dim()] += res.witness[j];
        if (res.witness[j] < 0) u_by_dim[sys.cols[j].dim()] -= res.witness[j];
    }
    const int code = res.exhausted ? kOk : kBudget;

    if (ctx.json_output) {
        json w = json::array();
        for (std::size_t j = 0; j < res.witness.size(); ++j)
            if (res.witness[j] != 0)
                w.push_back({{"dim", sys.cols[j].dim()},
                             {"basis", matrix_to_json(sys.cols[j].basis())},
                             {"coefficient", res.witness[j]}});
        json rep{{"command", "minlen"},
                 {"args", {{"q", a.q}, {"m", a.m}, {"t", t}, {"bound", bound}, {"cyclic_only", a.cyclic_only}}},
                 {"rows", sys.rows.size()},
                 {"cols", sys.cols.size()},
                 {"rank", rank},
                 {"kernel_dimension", sys.cols.size() - rank},
                 {"min_length", res.min_length ? json(*res.min_length) : json(nullptr)},
                 {"formula_N", n_formula.str()},
                 {"exhausted", res.exhausted},
                 {"nodes", res.nodes},
                 {"witness", std::move(w)},
                 {"elapsed_ms", sw.elapsed_ms()},
                 {"budget", budget_json(ctx.budget)}};
        ctx.out << rep.dump(2) << '\n';
    } else {
        ctx.out << "incidence system: " << sys.rows.size() << " x " << sys.cols.size() << ", rank " << rank
                << ", kernel dimension " << sys.cols.size() - rank << '\n';
        if (res.min_length)
            ctx.out << "min_length: " << *res.min_length << '\n';
        else
            ctx.out << "min_length: none" << (res.exhausted ? " (kernel is zero)" : " within bound") << '\n';
        ctx.out << "formula N: " << n_formula << '\n';
        ctx.out << "exhausted: " << yes_no(res.exhausted) << '\n';
        if (!res.witness.empty()) {
            ctx.out << "witness V side (dim: multiplicity):";
            for (const auto& [d, c] : v_by_dim) ctx.out << ' ' << d << ':' << c;
            ctx.out << "\nwitness U side (dim: multiplicity):";
            for (const auto& [d, c] : u_by_dim) ctx.out << ' ' << d << ':' << c;
            ctx.out << '\n';
        }
        ctx.out << "nodes: " << res.nodes << '\n';
    }
    return code;
}

struct MdsArgs {
    std::string code;
    bool scan = false;
};

inline int cmd_mds(const Context& ctx, const MdsArgs& a)
{
    using namespace detail;
    Stopwatch sw;
    const auto code = load_code(a.code);
    const auto rep = is_mds(code, ctx.budget);
    json out{{"command", "mds"}, {"args", {{"code", a.code}, {"scan", a.scan}}}, {"report", mds_report_to_json(rep)}};
    int exit_code = kOk;
    if (a.scan) {
        const auto entries = exhaustive_isometry_scan(code, ctx.budget, ctx.jobs);
        std::size_t unextendable = 0, violations = 0;
        for (const auto& e : entries) unextendable += e.extendable ? 0 : 1;
        json scan{{"isometries", entries.size()}, {"unextendable", unextendable}};
        if (rep.is_mds && rep.kappa != 2) {
            for (const auto& e : entries)
                if (std::holds_alternative<TheoremViolation>(mds_extension_check(code, e.mu, ctx.budget)))
                    ++violations;
            scan["theorem_checked"] = true;
            scan["theorem_violations"] = violations;
        } else {
            scan["theorem_checked"] = false;
            scan["theorem_refusal"] = rep.is_mds ? "MDS codes of dimension 2 are excluded" : "code is not MDS";
        }
        out["scan"] = std::move(scan);
        if (violations != 0) exit_code = kDefect;
    }
    out["elapsed_ms"] = sw.elapsed_ms();
    out["budget"] = budget_json(ctx.budget);
    ctx.out << out.dump(2) << '\n';
    return exit_code;
}

struct IdentitiesArgs {
    std::uint64_t q = 2;
    std::int64_t tmax = 8;
    std::int64_t count_tmax = 4;
};

inline int cmd_identities(const Context& ctx, const IdentitiesArgs& a)
{
    using namespace detail;
    Stopwatch sw;
    if (!PrimeField::is_prime(a.q)) throw InvalidInput("q must be prime");
    const PrimeField field(static_cast<std::uint32_t>(a.q));
    bool all_ok = true;
    json cauchy = json::array(), counts = json::array();
    for (std::int64_t t = 1; t <= a.tmax; ++t) {
        const bool ok = cauchy_identities_check(t, a.q);
        all_ok = all_ok && ok;
        cauchy.push_back({{"t", t}, {"q", a.q}, {"pass", ok}});
        if (!ctx.json_output) ctx.out << "cauchy t=" << t << " q=" << a.q << ": " << (ok ? "pass" : "FAIL") << '\n';
    }
    for (std::int64_t t = 1; t <= std::min(a.tmax, a.count_tmax); ++t) {
        bool ok = true;
        const auto ut = static_cast<std::size_t>(t);
        for (const auto& x : all_subspaces(field, ut, ctx.budget))
            for (std::size_t i = x.dim(); i <= ut; ++i)
                if (BigInt(count_subspaces_containing_by_enumeration(x, i, ctx.budget)) !=
                    count_subspaces_containing(x, i))
                    ok = false;
        all_ok = all_ok && ok;
        counts.push_back({{"t", t}, {"q", a.q}, {"pass", ok}});
        if (!ctx.json_output)
            ctx.out << "submodule count t=" << t << " q=" << a.q << ": " << (ok ? "pass" : "FAIL") << '\n';
    }
    if (ctx.json_output)
        ctx.out << json{{"command", "identities"},
                        {"args", {{"q", a.q}, {"tmax", a.tmax}, {"count_tmax", a.count_tmax}}},
                        {"cauchy", cauchy},
                        {"submodule_counts", counts},
                        {"pass", all_ok},
                        {"elapsed_ms", sw.elapsed_ms()},
                        {"budget", budget_json(ctx.budget)}}
                       .dump(2)
                << '\n';
    else
        ctx.out << (all_ok ? "all identities pass" : "IDENTITY FAILURE") << '\n';
    return all_ok ? kOk : kDefect;
}

/// Parses argv and runs one subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"modext: extension of Hamming isometries for codes over matrix-module alphabets"};
    app.require_subcommand(1);
    bool json_output = false;
    unsigned jobs = 1;
    app.add_flag("--json", json_output, "Emit a JSON report");
    app.add_option("--jobs", jobs, "Worker threads for exhaustive scans")->check(CLI::Range(1U, 1024U));

    ForgeArgs forge;
    auto* f = app.add_subcommand("forge", "Build the minimum-length unextendable isometry");
    f->add_option("--q", forge.q, "Prime field order")->required();
    f->add_option("--m", forge.m, "Ring parameter, R = M_m(F_q)")->required();
    f->add_option("--k", forge.k, "Alphabet parameter, A = M_{m x k}(F_q)")->required();
    f->add_option("--out-lambda", forge.out_lambda, "Write the source code here");
    f->add_option("--out-mu", forge.out_mu, "Write the image code here");

    CheckArgs check;
    auto* c = app.add_subcommand("check", "Decide isometry and extendability of a code pair");
    c->add_option("--lambda", check.lambda, "Source code file")->required();
    c->add_option("--mu", check.mu, "Image code file")->required();
    c->add_flag("--oracle", check.oracle, "Also run the brute-force isometry oracle");

    MinlenArgs minlen;
    auto* ml = app.add_subcommand("minlen", "Minimum length of a nontrivial solution");
    ml->add_option("--q", minlen.q, "Prime field order")->required();
    ml->add_option("--m", minlen.m, "Ring parameter")->required();
    ml->add_option("--t", minlen.t, "Dimension of W (default m+1)");
    ml->add_option("--bound", minlen.bound, "Length bound (default N+5)");
    ml->add_flag("--cyclic-only", minlen.cyclic_only, "Restrict supports to dimension <= m");

    MdsArgs mds;
    auto* md = app.add_subcommand("mds", "MDS report and optional exhaustive isometry scan");
    md->add_option("--code", mds.code, "Code file")->required();
    md->add_flag("--scan", mds.scan, "Enumerate all isometric images and check extendability");

    IdentitiesArgs ids;
    auto* id = app.add_subcommand("identities", "Gaussian binomial identity suite");
    id->add_option("--q", ids.q, "Prime field order")->required();
    id->add_option("--tmax", ids.tmax, "Largest t for the binomial identities")->check(CLI::Range(1, 64));
    id->add_option("--count-tmax", ids.count_tmax, "Largest t for the enumerated submodule counts")
        ->check(CLI::Range(0, 8));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInput;
    }

    try {
        Context ctx{out, err, json_output, jobs, Budget::from_env()};
        if (f->parsed()) return cmd_forge(ctx, forge);
        if (c->parsed()) return cmd_check(ctx, check);
        if (ml->parsed()) return cmd_minlen(ctx, minlen);
        if (md->parsed()) return cmd_mds(ctx, mds);
        if (id->parsed()) return cmd_identities(ctx, ids);
    } catch (const DomainRejection& e) {
        err << "rejected: " << e.what() << '\n';
        return kDomain;
    } catch (const PreconditionFailed& e) {
        err << "rejected: " << e.what() << '\n';
        return kDomain;
    } catch (const NotAnIsometry& e) {
        err << "rejected: " << e.what() << '\n';
        return kDomain;
    } catch (const BudgetExceeded& e) {
        err << "budget: " << e.what() << '\n';
        return kBudget;
    } catch (const InvalidInput& e) {
        err << "input error: " << e.what() << '\n';
        return kInput;
    } catch (const DimensionMismatch& e) {
        err << "input error: " << e.what() << '\n';
        return kInput;
    } catch (const RankInfeasible& e) {
        err << "input error: " << e.what() << '\n';
        return kInput;
    } catch (const Error& e) {
        err << "defect: " << e.what() << '\n';
        return kDefect;
    }
    return kInput;
}

}  // namespace modext::cli
