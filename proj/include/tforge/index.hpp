#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tforge {

/// A composition (a_1, ..., a_r) of positive integers: the argument of a
/// multiple t-value. Nonempty, every part >= 1.
class Index {
public:
    using Part = std::uint32_t;

    Index(std::initializer_list<Part> parts);
    explicit Index(std::vector<Part> parts);

    /// Accepts "2,1,2" and "t(2,1,2)" (whitespace tolerated).
    static Index parse(std::string_view text);

    [[nodiscard]] std::span<const Part> parts() const noexcept { return parts_; }
    [[nodiscard]] Part operator[](std::size_t i) const { return parts_[i]; }
    [[nodiscard]] std::size_t depth() const noexcept { return parts_.size(); }
    [[nodiscard]] std::uint64_t weight() const noexcept;
    [[nodiscard]] bool admissible() const noexcept { return parts_.front() >= 2; }

    /// "2,1,2"
    [[nodiscard]] std::string to_string() const;
    /// "t(2,1,2)"
    [[nodiscard]] std::string display() const;

    friend auto operator<=>(const Index&, const Index&) = default;
    friend bool operator==(const Index&, const Index&) = default;

private:
    std::vector<Part> parts_;
};

/// Throws UsageError naming the a_1 >= 2 requirement when `a` is not admissible.
void require_admissible(const Index& a);

/// Hyperplane s_1 + ... + s_i = i - k.
struct Hyperplane {
    std::uint32_t i;
    std::uint32_t k;
};

/// All compositions of n with parts drawn from `allowed`, ascending
/// lexicographic. n = 0 yields the empty list. The output size grows
/// exponentially in n.
std::vector<std::vector<Index::Part>> compositions(std::uint32_t n,
                                                   const std::set<Index::Part>& allowed);

/// The conjectural basis of the weight-k space: (a_1 + 1, a_2, ..., a_r) for
/// every {1,2}-composition (a_1, ..., a_r) of k - 1. Requires k >= 2.
std::vector<Index> conjectural_basis(std::uint32_t k);

/// Hoffman's MZV basis indices: {2,3}-compositions of k. Requires k >= 2.
std::vector<Index> mzv_basis_indices(std::uint32_t k);

/// Every composition of k with first part >= 2; 2^(k-2) entries. Requires k >= 2.
std::vector<Index> admissible_indices(std::uint32_t k);

struct PredictedDims {
    std::uint64_t fibonacci; // f_k: f_2 = 1, f_3 = 2, f_k = f_{k-1} + f_{k-2}
    std::uint64_t zagier;    // d_k: d_2 = d_3 = d_4 = 1, d_k = d_{k-2} + d_{k-3}
    friend bool operator==(const PredictedDims&, const PredictedDims&) = default;
};

/// Requires 2 <= k <= 92 (f_k must fit in 64 bits).
PredictedDims predicted_dims(std::uint32_t k);

/// Whether H_{i,k} is a polar hyperplane of the depth-r multiple t-function.
/// Requires 1 <= h.i <= r.
bool is_polar(std::uint32_t r, Hyperplane h);

} // namespace tforge
