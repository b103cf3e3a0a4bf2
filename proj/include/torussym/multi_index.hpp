#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace torussym {

/// Exponent tuple of a holomorphic monomial z^alpha, entries >= 0.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> exps) : exps_(std::move(exps)) {
        for (int e : exps_)
            if (e < 0) throw std::invalid_argument("MultiIndex: negative exponent");
    }
    MultiIndex(std::initializer_list<int> exps) : MultiIndex(std::vector<int>(exps)) {}

    int size() const { return static_cast<int>(exps_.size()); }
    int operator[](int j) const { return exps_[static_cast<size_t>(j)]; }
    int degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }
    const std::vector<int>& exps() const { return exps_; }

    auto operator<=>(const MultiIndex&) const = default;

private:
    std::vector<int> exps_;
};

/// Elementwise difference alpha - beta of two equal-length multi-indices.
class DifferenceVector {
public:
    DifferenceVector() = default;
    DifferenceVector(const MultiIndex& alpha, const MultiIndex& beta) {
        if (alpha.size() != beta.size())
            throw std::invalid_argument("DifferenceVector: length mismatch");
        entries_.reserve(static_cast<size_t>(alpha.size()));
        for (int j = 0; j < alpha.size(); ++j) entries_.push_back(alpha[j] - beta[j]);
    }
    explicit DifferenceVector(std::vector<int> entries) : entries_(std::move(entries)) {}

    int size() const { return static_cast<int>(entries_.size()); }
    int operator[](int j) const { return entries_[static_cast<size_t>(j)]; }
    const std::vector<int>& entries() const { return entries_; }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(), [](int v) { return v == 0; });
    }

    /// Sign-canonical representative: first nonzero entry made positive.
    DifferenceVector canonical() const {
        for (int v : entries_) {
            if (v > 0) return *this;
            if (v < 0) {
                std::vector<int> neg(entries_.size());
                std::transform(entries_.begin(), entries_.end(), neg.begin(),
                               [](int x) { return -x; });
                return DifferenceVector(std::move(neg));
            }
        }
        return *this;
    }

    auto operator<=>(const DifferenceVector&) const = default;

private:
    std::vector<int> entries_;
};

/// All multi-indices of length n with |alpha| <= degree_bound, in lexicographic order.
inline std::vector<MultiIndex> multi_indices_up_to(int n, int degree_bound) {
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<size_t>(n), 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == n) {
            out.emplace_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[static_cast<size_t>(pos)] = e;
            self(self, pos + 1, remaining - e);
        }
        cur[static_cast<size_t>(pos)] = 0;
    };
    rec(rec, 0, degree_bound);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace torussym
