#pragma once

// Exact linear algebra over prime fields, canonical subspaces of F_q^t and
// Gaussian binomial combinatorics.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "modext/budget.hpp"
#include "modext/errors.hpp"

namespace modext {

using Residue = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;

class PrimeField {
public:
    explicit PrimeField(std::uint32_t q) : q_(q)
    {
        if (!is_prime(q)) throw InvalidInput("field order " + std::to_string(q) + " is not prime");
    }

    std::uint32_t q() const { return q_; }

    Residue reduce(std::int64_t v) const
    {
        auto r = v % static_cast<std::int64_t>(q_);
        return static_cast<Residue>(r < 0 ? r + q_ : r);
    }
    Residue add(Residue a, Residue b) const { return static_cast<Residue>((std::uint64_t{a} + b) % q_); }
    Residue sub(Residue a, Residue b) const { return static_cast<Residue>((std::uint64_t{a} + q_ - b) % q_); }
    Residue mul(Residue a, Residue b) const { return static_cast<Residue>((std::uint64_t{a} * b) % q_); }
    Residue neg(Residue a) const { return a == 0 ? 0 : q_ - a; }

    Residue inv(Residue a) const
    {
        if (a == 0) throw InvalidInput("inverse of zero");
        // Fermat: a^(q-2)
        std::uint64_t result = 1, base = a, e = q_ - 2;
        while (e != 0) {
            if (e & 1U) result = result * base % q_;
            base = base * base % q_;
            e >>= 1U;
        }
        return static_cast<Residue>(result);
    }

    static bool is_prime(std::uint64_t n)
    {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    auto operator<=>(const PrimeField&) const = default;

private:
    std::uint32_t q_;
};

/// Dense row-major matrix over a prime field. Entries are always reduced.
class FqMatrix {
public:
    FqMatrix(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0)
    {
    }

    FqMatrix(PrimeField field, std::size_t rows, std::size_t cols, std::vector<Residue> entries)
        : field_(field), rows_(rows), cols_(cols), data_(std::move(entries))
    {
        if (data_.size() != rows_ * cols_)
            throw InvalidInput("matrix entry count " + std::to_string(data_.size()) + " does not match shape " +
                               std::to_string(rows_) + "x" + std::to_string(cols_));
        for (auto v : data_)
            if (v >= field_.q()) throw InvalidInput("matrix entry " + std::to_string(v) + " outside [0, q)");
    }

    /// Builds a matrix from integer rows, reducing every entry mod q.
    static FqMatrix from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows,
                              std::size_t cols_if_empty = 0)
    {
        const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
        FqMatrix m(field, rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw InvalidInput("ragged matrix literal");
            for (std::size_t c = 0; c < cols; ++c) m.set(r, c, field.reduce(rows[r][c]));
        }
        return m;
    }

    static FqMatrix identity(PrimeField field, std::size_t n)
    {
        FqMatrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<Residue>& entries() const { return data_; }

    Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Residue v) { data_[r * cols_ + c] = v; }

    std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](Residue v) { return v == 0; });
    }

    FqMatrix transpose() const
    {
        FqMatrix t(field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, (*this)(r, c));
        return t;
    }

    /// Rows [begin, end).
    FqMatrix row_range(std::size_t begin, std::size_t end) const
    {
        FqMatrix out(field_, end - begin, cols_);
        std::copy(data_.begin() + static_cast<std::ptrdiff_t>(begin * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>(end * cols_), out.data_.begin());
        return out;
    }

    /// Appends zero columns on the right up to `cols` columns.
    FqMatrix pad_columns(std::size_t cols) const
    {
        if (cols < cols_) throw DimensionMismatch("pad_columns cannot shrink a matrix");
        FqMatrix out(field_, rows_, cols);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out.set(r, c, (*this)(r, c));
        return out;
    }

    static FqMatrix vstack(const FqMatrix& top, const FqMatrix& bottom)
    {
        if (top.field_ != bottom.field_ || top.cols_ != bottom.cols_)
            throw DimensionMismatch("vstack: column counts differ");
        FqMatrix out(top.field_, top.rows_ + bottom.rows_, top.cols_);
        std::copy(top.data_.begin(), top.data_.end(), out.data_.begin());
        std::copy(bottom.data_.begin(), bottom.data_.end(),
                  out.data_.begin() + static_cast<std::ptrdiff_t>(top.data_.size()));
        return out;
    }

    friend FqMatrix operator*(const FqMatrix& a, const FqMatrix& b)
    {
        if (a.field_ != b.field_ || a.cols_ != b.rows_)
            throw DimensionMismatch("matrix product: " + a.shape() + " * " + b.shape());
        const auto q = std::uint64_t{a.field_.q()};
        FqMatrix out(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t l = 0; l < a.cols_; ++l) {
                const std::uint64_t x = a(i, l);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out.data_[i * b.cols_ + j] =
                        static_cast<Residue>((out.data_[i * b.cols_ + j] + x * b(l, j)) % q);
            }
        }
        return out;
    }

    friend FqMatrix operator+(const FqMatrix& a, const FqMatrix& b)
    {
        a.require_same_shape(b, "matrix sum");
        FqMatrix out = a;
        for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
        return out;
    }

    friend FqMatrix operator-(const FqMatrix& a, const FqMatrix& b)
    {
        a.require_same_shape(b, "matrix difference");
        FqMatrix out = a;
        for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
        return out;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    std::string to_string() const
    {
        std::ostringstream os;
        os << '[';
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r != 0) os << "; ";
            for (std::size_t c = 0; c < cols_; ++c) os << (c != 0 ? " " : "") << (*this)(r, c);
        }
        os << ']';
        return os.str();
    }

    auto operator<=>(const FqMatrix&) const = default;

private:
    void require_same_shape(const FqMatrix& other, const char* what) const
    {
        if (field_ != other.field_ || rows_ != other.rows_ || cols_ != other.cols_)
            throw DimensionMismatch(std::string(what) + ": " + shape() + " vs " + other.shape());
    }

    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Residue> data_;
};

/// Row vector times matrix.
inline std::vector<Residue> row_times(std::span<const Residue> v, const FqMatrix& m)
{
    if (v.size() != m.rows()) throw DimensionMismatch("row_times: vector length differs from row count");
    const auto q = std::uint64_t{m.field().q()};
    std::vector<std::uint64_t> acc(m.cols(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) acc[j] = (acc[j] + std::uint64_t{v[i]} * m(i, j)) % q;
    }
    return {acc.begin(), acc.end()};
}

struct Rref {
    FqMatrix reduced;
    std::size_t rank;
    std::vector<std::size_t> pivots;
};

inline Rref rref(FqMatrix m)
{
    const auto& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
        std::size_t pivot_row = lead;
        while (pivot_row < m.rows() && m(pivot_row, col) == 0) ++pivot_row;
        if (pivot_row == m.rows()) continue;
        if (pivot_row != lead)
            for (std::size_t c = 0; c < m.cols(); ++c) {
                auto tmp = m(lead, c);
                m.set(lead, c, m(pivot_row, c));
                m.set(pivot_row, c, tmp);
            }
        const Residue scale = f.inv(m(lead, col));
        for (std::size_t c = col; c < m.cols(); ++c) m.set(lead, c, f.mul(m(lead, c), scale));
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || m(r, col) == 0) continue;
            const Residue factor = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m.set(r, c, f.sub(m(r, c), f.mul(factor, m(lead, c))));
        }
        pivots.push_back(col);
        ++lead;
    }
    return {std::move(m), pivots.size(), std::move(pivots)};
}

inline std::size_t rank(const FqMatrix& m) { return rref(m).rank; }

/// Inverse of a square matrix; throws PreconditionFailed when singular.
inline FqMatrix inverse(const FqMatrix& m)
{
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix " + m.shape());
    const std::size_t n = m.rows();
    if (n == 0) return m;
    FqMatrix aug(m.field(), n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.set(r, c, m(r, c));
        aug.set(r, n + r, 1);
    }
    auto red = rref(std::move(aug));
    if (red.rank < n || red.pivots[n - 1] != n - 1) throw PreconditionFailed("matrix is singular");
    FqMatrix out(m.field(), n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out.set(r, c, red.reduced(r, n + c));
    return out;
}

/// A subspace of F_q^t stored by its reduced row-echelon basis (no zero rows),
/// so equal subspaces compare equal structurally.
class Subspace {
public:
    /// Row space of `generators`.
    static Subspace span(const FqMatrix& generators)
    {
        auto red = rref(generators);
        return Subspace(red.reduced.row_range(0, red.rank));
    }

    static Subspace zero(PrimeField field, std::size_t ambient) { return Subspace(FqMatrix(field, 0, ambient)); }
    static Subspace full(PrimeField field, std::size_t ambient)
    {
        return Subspace(FqMatrix::identity(field, ambient));
    }

    const PrimeField& field() const { return basis_.field(); }
    std::size_t ambient() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const FqMatrix& basis() const { return basis_; }

    std::vector<std::size_t> pivots() const
    {
        std::vector<std::size_t> out;
        for (std::size_t r = 0; r < dim(); ++r) {
            std::size_t c = 0;
            while (basis_(r, c) == 0) ++c;
            out.push_back(c);
        }
        return out;
    }

    bool contains_vector(std::span<const Residue> v) const
    {
        if (v.size() != ambient()) throw DimensionMismatch("vector length differs from ambient dimension");
        const auto& f = field();
        std::vector<Residue> w(v.begin(), v.end());
        auto piv = pivots();
        for (std::size_t r = 0; r < dim(); ++r) {
            const Residue coef = w[piv[r]];
            if (coef == 0) continue;
            for (std::size_t c = 0; c < ambient(); ++c) w[c] = f.sub(w[c], f.mul(coef, basis_(r, c)));
        }
        return std::all_of(w.begin(), w.end(), [](Residue x) { return x == 0; });
    }

    std::string to_string() const { return "<" + basis_.to_string() + ">"; }

    auto operator<=>(const Subspace&) const = default;

private:
    explicit Subspace(FqMatrix basis) : basis_(std::move(basis)) {}

    FqMatrix basis_;
};

/// {v : v M = 0} for row vectors v of length rows(M).
inline Subspace row_kernel(const FqMatrix& m)
{
    const auto& f = m.field();
    auto red = rref(m.transpose());
    std::vector<bool> is_pivot(m.rows(), false);
    for (auto p : red.pivots) is_pivot[p] = true;
    FqMatrix gens(f, m.rows() - red.rank, m.rows());
    std::size_t g = 0;
    for (std::size_t free = 0; free < m.rows(); ++free) {
        if (is_pivot[free]) continue;
        gens.set(g, free, 1);
        for (std::size_t r = 0; r < red.rank; ++r) gens.set(g, red.pivots[r], f.neg(red.reduced(r, free)));
        ++g;
    }
    return Subspace::span(gens);
}

namespace detail {
inline void require_compatible(const Subspace& s, const Subspace& t, const char* what)
{
    if (s.field() != t.field() || s.ambient() != t.ambient())
        throw DimensionMismatch(std::string(what) + ": subspaces live in different ambient spaces");
}
}  // namespace detail

/// T ⊆ S.
inline bool contains(const Subspace& s, const Subspace& t)
{
    detail::require_compatible(s, t, "contains");
    if (t.dim() > s.dim()) return false;
    for (std::size_t r = 0; r < t.dim(); ++r)
        if (!s.contains_vector(t.basis().row(r))) return false;
    return true;
}

inline Subspace sum(const Subspace& s, const Subspace& t)
{
    detail::require_compatible(s, t, "sum");
    return Subspace::span(FqMatrix::vstack(s.basis(), t.basis()));
}

/// Computed from the relations a·S + b·T = 0 between the two bases, so it does
/// not depend on orthogonal complements.
inline Subspace intersect(const Subspace& s, const Subspace& t)
{
    detail::require_compatible(s, t, "intersect");
    const auto relations = row_kernel(FqMatrix::vstack(s.basis(), t.basis()));
    FqMatrix coeffs(s.field(), relations.dim(), s.dim());
    for (std::size_t r = 0; r < relations.dim(); ++r)
        for (std::size_t c = 0; c < s.dim(); ++c) coeffs.set(r, c, relations.basis()(r, c));
    return Subspace::span(coeffs * s.basis());
}

/// Orthogonal complement under the standard dot product on F_q^t.
inline Subspace orthogonal(const Subspace& s) { return row_kernel(s.basis().transpose()); }

// ---------------------------------------------------------------------------
// Gaussian binomials

inline BigInt big_pow(std::uint64_t base, std::uint64_t exp)
{
    BigInt result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) result *= base;
    return result;
}

/// Number of i-dimensional subspaces of F_q^t; 0 outside 0 ≤ i ≤ t.
inline BigInt gaussian_binomial(std::int64_t t, std::int64_t i, std::uint64_t q)
{
    if (i < 0 || t < 0 || i > t) return 0;
    BigInt num = 1, den = 1;
    for (std::int64_t j = 0; j < i; ++j) {
        num *= big_pow(q, static_cast<std::uint64_t>(t - j)) - 1;
        den *= big_pow(q, static_cast<std::uint64_t>(j + 1)) - 1;
    }
    return num / den;
}

inline std::uint64_t choose2(std::uint64_t i) { return i < 2 ? 0 : i * (i - 1) / 2; }

/// Checks the alternating and plain q-binomial sums obtained from the Cauchy
/// binomial theorem at x = -1 and x = 1.
inline bool cauchy_identities_check(std::int64_t t, std::uint64_t q)
{
    if (t < 1) throw InvalidInput("cauchy_identities_check requires t >= 1");
    BigInt alternating = 0;
    for (std::int64_t i = 0; i < t; ++i) {
        BigInt term = big_pow(q, choose2(static_cast<std::uint64_t>(i))) * gaussian_binomial(t, i, q);
        alternating += (i % 2 == 0) ? term : BigInt(-term);
    }
    BigInt expected_alt = big_pow(q, choose2(static_cast<std::uint64_t>(t)));
    if ((t - 1) % 2 != 0) expected_alt = -expected_alt;

    BigInt plain = 0;
    for (std::int64_t i = 0; i <= t; ++i)
        plain += big_pow(q, choose2(static_cast<std::uint64_t>(i))) * gaussian_binomial(t, i, q);
    BigInt product = 1;
    for (std::int64_t i = 0; i < t; ++i) product *= 1 + big_pow(q, static_cast<std::uint64_t>(i));

    return alternating == expected_alt && plain == product;
}

inline std::uint64_t to_u64_saturating(const BigInt& v)
{
    if (v > BigInt(std::numeric_limits<std::uint64_t>::max())) return std::numeric_limits<std::uint64_t>::max();
    return v.convert_to<std::uint64_t>();
}

// ---------------------------------------------------------------------------
// Enumeration

/// Calls fn(v) for every v ∈ F_q^len in lexicographic order.
inline void for_each_vector(PrimeField field, std::size_t len, const Budget& budget,
                            const std::function<void(std::span<const Residue>)>& fn)
{
    budget.require_vectors(saturating_pow(field.q(), len), "vector enumeration");
    std::vector<Residue> v(len, 0);
    while (true) {
        fn(v);
        std::size_t i = len;
        while (i > 0) {
            --i;
            if (++v[i] < field.q()) break;
            v[i] = 0;
            if (i == 0) return;
        }
        if (len == 0) return;
    }
}

/// Calls fn(M) for every rows×cols matrix over the field.
inline void for_each_matrix(PrimeField field, std::size_t rows, std::size_t cols, const Budget& budget,
                            const std::function<void(const FqMatrix&)>& fn)
{
    FqMatrix m(field, rows, cols);
    for_each_vector(field, rows * cols, budget, [&](std::span<const Residue> v) {
        for (std::size_t i = 0; i < v.size(); ++i) m.set(i / cols, i % cols, v[i]);
        fn(m);
    });
}

/// All d-dimensional subspaces of F_q^t in canonical (sorted) order.
inline std::vector<Subspace> enumerate_subspaces(PrimeField field, std::size_t t, std::size_t d,
                                                 const Budget& budget = {})
{
    if (d > t) throw InvalidInput("enumerate_subspaces: dimension exceeds ambient");
    budget.require_vectors(saturating_pow(field.q(), t), "enumerate_subspaces");
    budget.require_subspaces(to_u64_saturating(gaussian_binomial(static_cast<std::int64_t>(t),
                                                                 static_cast<std::int64_t>(d), field.q())),
                             "enumerate_subspaces");
    std::vector<Subspace> out;
    std::vector<std::size_t> piv(d);
    for (std::size_t i = 0; i < d; ++i) piv[i] = i;
    while (true) {
        // Free slots: row r, column c > piv[r] that is not a pivot column.
        std::vector<bool> is_pivot(t, false);
        for (auto p : piv) is_pivot[p] = true;
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = piv[r] + 1; c < t; ++c)
                if (!is_pivot[c]) slots.emplace_back(r, c);
        FqMatrix basis(field, d, t);
        for (std::size_t r = 0; r < d; ++r) basis.set(r, piv[r], 1);
        for_each_vector(field, slots.size(), budget, [&](std::span<const Residue> fill) {
            for (std::size_t s = 0; s < slots.size(); ++s) basis.set(slots[s].first, slots[s].second, fill[s]);
            out.push_back(Subspace::span(basis));
        });
        // next combination
        std::size_t i = d;
        while (i > 0 && piv[i - 1] == t - d + (i - 1)) --i;
        if (i == 0) break;
        ++piv[i - 1];
        for (std::size_t j = i; j < d; ++j) piv[j] = piv[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Every subspace of F_q^t with dimension ≤ max_dim, ordered by dimension and
/// canonically within a dimension.
inline std::vector<Subspace> subspaces_up_to_dim(PrimeField field, std::size_t t, std::size_t max_dim,
                                                 const Budget& budget = {})
{
    std::vector<Subspace> out;
    for (std::size_t d = 0; d <= std::min(max_dim, t); ++d) {
        auto layer = enumerate_subspaces(field, t, d, budget);
        out.insert(out.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
        budget.require_subspaces(out.size(), "subspace lattice");
    }
    return out;
}

inline std::vector<Subspace> all_subspaces(PrimeField field, std::size_t t, const Budget& budget = {})
{
    return subspaces_up_to_dim(field, t, t, budget);
}

/// |{V : X ⊆ V, dim V = i}| = (t−p choose i−p)_q with p = dim X.
inline BigInt count_subspaces_containing(const Subspace& x, std::size_t i)
{
    if (i < x.dim() || i > x.ambient())
        throw InvalidInput("count_subspaces_containing: dimension " + std::to_string(i) + " outside [" +
                           std::to_string(x.dim()) + ", " + std::to_string(x.ambient()) + "]");
    return gaussian_binomial(static_cast<std::int64_t>(x.ambient() - x.dim()),
                             static_cast<std::int64_t>(i - x.dim()), x.field().q());
}

/// Enumeration counterpart of count_subspaces_containing.
inline std::uint64_t count_subspaces_containing_by_enumeration(const Subspace& x, std::size_t i,
                                                               const Budget& budget = {})
{
    if (i < x.dim() || i > x.ambient()) throw InvalidInput("count_subspaces_containing: dimension out of range");
    std::uint64_t n = 0;
    for (const auto& v : enumerate_subspaces(x.field(), x.ambient(), i, budget))
        if (contains(v, x)) ++n;
    return n;
}

}  // namespace modext
