#pragma once

// JSON form of codes and of the library's verdict types.
//
//   { "q": 2, "m": 1, "k": 2, "t": 2,
//     "generators": [ [[1,0],[0,1]], [[0,0],[0,0]], ... ] }
//
// Each generator is a t×k matrix given row by row with entries in [0, q).

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "modext/errors.hpp"
#include "modext/linalg.hpp"
#include "modext/mds.hpp"
#include "modext/modcode.hpp"

namespace modext {

using json = nlohmann::json;

inline json matrix_to_json(const FqMatrix& m)
{
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(std::vector<Residue>(m.row(r).begin(), m.row(r).end()));
    return rows;
}

inline FqMatrix matrix_from_json(const json& j, PrimeField field, std::size_t rows, std::size_t cols,
                                 const std::string& where)
{
    if (!j.is_array() || j.size() != rows)
        throw InvalidInput(where + ": expected " + std::to_string(rows) + " rows");
    std::vector<Residue> entries;
    entries.reserve(rows * cols);
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols)
            throw InvalidInput(where + ": expected rows of length " + std::to_string(cols));
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw InvalidInput(where + ": entries must be integers");
            const auto x = v.get<std::int64_t>();
            if (x < 0 || x >= static_cast<std::int64_t>(field.q()))
                throw InvalidInput(where + ": entry " + std::to_string(x) + " outside [0, " +
                                   std::to_string(field.q()) + ")");
            entries.push_back(static_cast<Residue>(x));
        }
    }
    return FqMatrix(field, rows, cols, std::move(entries));
}

inline json code_to_json(const Code& code)
{
    json gens = json::array();
    for (const auto& g : code.generators()) gens.push_back(matrix_to_json(g));
    return {{"q", code.field().q()},
            {"m", code.space().m},
            {"k", code.alphabet().k},
            {"t", code.space().t},
            {"generators", std::move(gens)}};
}

inline Code code_from_json(const json& j)
{
    if (!j.is_object()) throw InvalidInput("code file: top level must be an object");
    auto field_of = [&](const char* key) -> std::size_t {
        if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<std::int64_t>() < 0)
            throw InvalidInput(std::string("code file: missing or invalid '") + key + "'");
        return j[key].get<std::size_t>();
    };
    const auto q = field_of("q");
    const auto m = field_of("m");
    const auto k = field_of("k");
    const auto t = field_of("t");
    if (q > 0xFFFFFFFFULL) throw InvalidInput("code file: q too large");
    const PrimeField field(static_cast<std::uint32_t>(q));
    if (!j.contains("generators") || !j["generators"].is_array())
        throw InvalidInput("code file: missing 'generators' array");
    std::vector<FqMatrix> gens;
    std::size_t i = 0;
    for (const auto& g : j["generators"])
        gens.push_back(matrix_from_json(g, field, t, k, "generator " + std::to_string(i++)));
    return Code(Alphabet(field, m, k), ModuleSpace(field, m, t), std::move(gens));
}

inline Code load_code(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open code file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidInput("code file '" + path + "': " + e.what());
    }
    return code_from_json(j);
}

inline void store_code(const Code& code, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write code file '" + path + "'");
    out << code_to_json(code).dump(2) << '\n';
}

inline json multiset_to_json(const std::map<Subspace, std::size_t>& ms)
{
    json out = json::array();
    for (const auto& [s, c] : ms)
        out.push_back({{"dim", s.dim()}, {"basis", matrix_to_json(s.basis())}, {"multiplicity", c}});
    return out;
}

inline json kernel_diff_to_json(const KernelDiff& d)
{
    return {{"lambda_only", multiset_to_json(d.lambda_only)}, {"mu_only", multiset_to_json(d.mu_only)}};
}

inline json monomial_map_to_json(const MonomialMap& map)
{
    json autos = json::array();
    for (const auto& a : map.autos) autos.push_back(matrix_to_json(a));
    return {{"permutation", map.permutation}, {"automorphisms", std::move(autos)}};
}

inline json mds_report_to_json(const MdsReport& r)
{
    return {{"n", r.n},
            {"d", r.d},
            {"kappa", r.kappa},
            {"is_mds", r.is_mds},
            {"lemma_conditions", r.lemma_conditions},
            {"cardinality_equality", r.cardinality_equality},
            {"code_size", r.code_size.str()},
            {"singleton_bound", r.singleton_bound.str()},
            {"witnesses", r.witnesses}};
}

}  // namespace modext
