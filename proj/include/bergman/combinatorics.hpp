#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bergman {

using BigInt = boost::multiprecision::cpp_int;

/// Ambient complex dimension n and weight m of the polynomial space P_m(C^n).
struct SpaceParams {
    int n = 1;
    int m = 0;

    SpaceParams() = default;
    SpaceParams(int n_, int m_);

    /// C(n+m, n)
    std::size_t space_dimension() const;

    friend bool operator==(const SpaceParams&, const SpaceParams&) = default;
};

/// Exponent vector p = (p_1, ..., p_n) of the monomial z^p.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);
    MultiIndex(std::initializer_list<int> entries);

    static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0)); }

    int size() const { return static_cast<int>(entries_.size()); }
    int degree() const { return degree_; }
    int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
    std::span<const int> entries() const { return entries_; }

    /// Multi-index with entry i increased by one.
    MultiIndex raised(int i) const;

    std::string to_string(char sep = ',') const;

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.entries_ == b.entries_; }
    /// Graded lexicographic comparison.
    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

private:
    std::vector<int> entries_;
    int degree_ = 0;
};

/// Enumeration of J_n(m) = { p : |p| <= m } in graded lexicographic order.
///
/// Alongside the sequence it keeps two lookup tables used by the polynomial
/// arithmetic elsewhere: raise(pos, i) gives the position of p + e_i (or -1
/// when that would exceed degree m), and parent(pos) a pair (position of
/// p - e_i, i) for the last nonzero coordinate i of p.
class BasisOrder {
public:
    explicit BasisOrder(SpaceParams params);

    const SpaceParams& params() const { return params_; }
    std::size_t size() const { return indices_.size(); }
    const MultiIndex& operator[](std::size_t pos) const { return indices_[pos]; }
    const std::vector<MultiIndex>& indices() const { return indices_; }

    /// Position of p in the sequence; throws std::out_of_range when p is not in J_n(m).
    std::size_t position(const MultiIndex& p) const;
    bool contains(const MultiIndex& p) const { return position_.count(p) != 0; }

    long raise(std::size_t pos, int i) const { return raise_[pos * static_cast<std::size_t>(params_.n) + static_cast<std::size_t>(i)]; }
    std::pair<std::size_t, int> parent(std::size_t pos) const { return parent_[pos]; }

    /// First position of each degree level; level k occupies [level_begin(k), level_begin(k+1)).
    std::size_t level_begin(int k) const { return level_begin_[static_cast<std::size_t>(k)]; }

private:
    SpaceParams params_;
    std::vector<MultiIndex> indices_;
    std::map<MultiIndex, std::size_t> position_;
    std::vector<long> raise_;
    std::vector<std::pair<std::size_t, int>> parent_;
    std::vector<std::size_t> level_begin_;
};

/// All multi-indices of length n with |p| = k, lexicographically ascending.
std::vector<MultiIndex> multi_indices_of_degree(int n, int k);

BasisOrder enumerate_multi_indices(int n, int m);

BigInt factorial(int k);
BigInt binomial(int n, int k);

/// k! / (p_1! ... p_n!); requires |p| = k.
BigInt multinomial(int k, const MultiIndex& p);

/// dim P^k(C^n) = C(n+k-1, k)
std::size_t homogeneous_dimension(int n, int k);

/// log(k!); exact below the threshold, log-gamma above it.
double log_factorial(int k);

/// Arguments up to this value go through exact integer arithmetic.
inline constexpr int exact_factorial_limit = 60;

/// p! = prod_i p_i!
BigInt multi_factorial(const MultiIndex& p);

/// Ratio prod(num_i!) / prod(den_j!) as a double, exact-then-rounded when all
/// arguments stay within exact_factorial_limit.
double factorial_ratio(std::span<const int> numerator, std::span<const int> denominator);

} // namespace bergman
