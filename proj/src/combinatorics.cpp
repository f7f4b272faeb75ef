#include "bergman/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace bergman {

namespace mp = boost::multiprecision;

SpaceParams::SpaceParams(int n_, int m_) : n(n_), m(m_) {
    if (n < 1) throw std::invalid_argument("SpaceParams: n must be >= 1, got " + std::to_string(n));
    if (m < 0) throw std::invalid_argument("SpaceParams: m must be >= 0, got " + std::to_string(m));
}

std::size_t SpaceParams::space_dimension() const {
    return binomial(n + m, n).convert_to<std::size_t>();
}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_) {
        if (e < 0) throw std::invalid_argument("MultiIndex: negative entry");
        degree_ += e;
    }
}

MultiIndex::MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

MultiIndex MultiIndex::raised(int i) const {
    MultiIndex out = *this;
    ++out.entries_[static_cast<std::size_t>(i)];
    ++out.degree_;
    return out;
}

std::string MultiIndex::to_string(char sep) const {
    std::ostringstream os;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << sep;
        os << entries_[i];
    }
    return os.str();
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(),
                                                  b.entries_.begin(), b.entries_.end());
}

std::vector<MultiIndex> multi_indices_of_degree(int n, int k) {
    if (n < 1) throw std::invalid_argument("multi_indices_of_degree: n must be >= 1");
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    // fill positions left to right; the remainder lands in the last slot
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == n - 1) {
            cur[static_cast<std::size_t>(i)] = left;
            out.emplace_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[static_cast<std::size_t>(i)] = v;
            self(self, i + 1, left - v);
        }
    };
    rec(rec, 0, k);
    return out;
}

BasisOrder::BasisOrder(SpaceParams params) : params_(params) {
    const int n = params_.n;
    for (int k = 0; k <= params_.m; ++k) {
        level_begin_.push_back(indices_.size());
        auto level = multi_indices_of_degree(n, k);
        indices_.insert(indices_.end(), level.begin(), level.end());
    }
    level_begin_.push_back(indices_.size());

    for (std::size_t pos = 0; pos < indices_.size(); ++pos) position_.emplace(indices_[pos], pos);

    raise_.assign(indices_.size() * static_cast<std::size_t>(n), -1);
    parent_.assign(indices_.size(), {0, -1});
    for (std::size_t pos = 0; pos < indices_.size(); ++pos) {
        const MultiIndex& p = indices_[pos];
        if (p.degree() < params_.m) {
            for (int i = 0; i < n; ++i)
                raise_[pos * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
                    static_cast<long>(position_.at(p.raised(i)));
        }
        if (p.degree() > 0) {
            int last = n - 1;
            while (p[last] == 0) --last;
            std::vector<int> e(p.entries().begin(), p.entries().end());
            --e[static_cast<std::size_t>(last)];
            parent_[pos] = {position_.at(MultiIndex(std::move(e))), last};
        }
    }
}

std::size_t BasisOrder::position(const MultiIndex& p) const {
    auto it = position_.find(p);
    if (it == position_.end())
        throw std::out_of_range("BasisOrder: multi-index (" + p.to_string() + ") not in J_n(m)");
    return it->second;
}

BasisOrder enumerate_multi_indices(int n, int m) {
    if (n < 1) throw std::invalid_argument("enumerate_multi_indices: n must be >= 1");
    return BasisOrder(SpaceParams(n, m));
}

BigInt factorial(int k) {
    if (k < 0) throw std::invalid_argument("factorial: negative argument");
    BigInt r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

BigInt binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigInt multinomial(int k, const MultiIndex& p) {
    if (p.degree() != k)
        throw std::invalid_argument("multinomial: |p| = " + std::to_string(p.degree()) + " but k = " + std::to_string(k));
    // product of binomials C(p_1+...+p_i, p_i); every partial product is an integer
    BigInt r = 1;
    int acc = 0;
    for (int e : p.entries()) {
        acc += e;
        r *= binomial(acc, e);
    }
    return r;
}

std::size_t homogeneous_dimension(int n, int k) {
    if (n < 1) throw std::invalid_argument("homogeneous_dimension: n must be >= 1");
    if (k < 0) return 0;
    return binomial(n + k - 1, k).convert_to<std::size_t>();
}

double log_factorial(int k) {
    if (k < 0) throw std::invalid_argument("log_factorial: negative argument");
    if (k <= exact_factorial_limit) return std::log(factorial(k).convert_to<double>());
    return std::lgamma(static_cast<double>(k) + 1.0);
}

BigInt multi_factorial(const MultiIndex& p) {
    BigInt r = 1;
    for (int e : p.entries()) r *= factorial(e);
    return r;
}

double factorial_ratio(std::span<const int> numerator, std::span<const int> denominator) {
    auto within = [](std::span<const int> xs) {
        return std::all_of(xs.begin(), xs.end(), [](int x) { return x >= 0 && x <= exact_factorial_limit; });
    };
    if (within(numerator) && within(denominator)) {
        BigInt num = 1, den = 1;
        for (int x : numerator) num *= factorial(x);
        for (int x : denominator) den *= factorial(x);
        return mp::cpp_rational(num, den).convert_to<double>();
    }
    double lr = 0.0;
    for (int x : numerator) lr += log_factorial(x);
    for (int x : denominator) lr -= log_factorial(x);
    return std::exp(lr);
}

} // namespace bergman
