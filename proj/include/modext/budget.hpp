#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>

#include "modext/errors.hpp"

namespace modext {

/// Upper limits for every exhaustive enumeration in the library. Exceeding a
/// limit raises BudgetExceeded; nothing is ever silently truncated.
struct Budget {
    std::uint64_t max_subspaces = 1'000'000;
    std::uint64_t max_vectors = 10'000'000;

    /// Reads `MODCODE_BUDGET=<vectors>[,<subspaces>]`; unset fields keep defaults.
    static Budget from_env()
    {
        Budget b;
        const char* raw = std::getenv("MODCODE_BUDGET");
        if (raw == nullptr || *raw == '\0') return b;
        std::string text(raw);
        auto parse = [&](const std::string& s) -> std::uint64_t {
            try {
                std::size_t used = 0;
                auto v = std::stoull(s, &used);
                if (used != s.size() || v == 0) throw InvalidInput("");
                return v;
            } catch (const std::exception&) {
                throw InvalidInput("MODCODE_BUDGET: expected <vectors>[,<subspaces>], got '" + text + "'");
            }
        };
        auto comma = text.find(',');
        b.max_vectors = parse(text.substr(0, comma));
        if (comma != std::string::npos) b.max_subspaces = parse(text.substr(comma + 1));
        return b;
    }

    void require_vectors(std::uint64_t count, const char* what) const
    {
        if (count > max_vectors)
            throw BudgetExceeded(std::string(what) + ": " + std::to_string(count) +
                                 " elements exceed the vector budget of " + std::to_string(max_vectors));
    }

    void require_subspaces(std::uint64_t count, const char* what) const
    {
        if (count > max_subspaces)
            throw BudgetExceeded(std::string(what) + ": " + std::to_string(count) +
                                 " subspaces exceed the subspace budget of " + std::to_string(max_subspaces));
    }
};

/// base^exp, saturating at UINT64_MAX so callers can compare against a budget.
inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp)
{
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && result > kMax / base) return kMax;
        result *= base;
    }
    return result;
}

}  // namespace modext
