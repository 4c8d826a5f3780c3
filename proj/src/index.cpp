#include "tforge/index.hpp"

#include "tforge/errors.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace tforge {

namespace {

void validate_parts(const std::vector<Index::Part>& parts) {
    if (parts.empty()) {
        throw UsageError("index must have at least one part");
    }
    if (std::ranges::any_of(parts, [](Index::Part p) { return p == 0; })) {
        throw UsageError("index parts must be positive integers");
    }
}

void require_weight(std::uint32_t k) {
    if (k < 2) {
        throw UsageError("weight must be at least 2, got " + std::to_string(k));
    }
}

void compose(std::uint32_t remaining, const std::set<Index::Part>& allowed,
             std::vector<Index::Part>& prefix,
             std::vector<std::vector<Index::Part>>& out) {
    if (remaining == 0) {
        out.push_back(prefix);
        return;
    }
    for (Index::Part p : allowed) {
        if (p > remaining) {
            break;
        }
        prefix.push_back(p);
        compose(remaining - p, allowed, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

Index::Index(std::initializer_list<Part> parts) : parts_(parts) { validate_parts(parts_); }

Index::Index(std::vector<Part> parts) : parts_(std::move(parts)) { validate_parts(parts_); }

Index Index::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    std::string_view body = trim(text);
    if (body.starts_with("t(")) {
        if (!body.ends_with(")")) {
            throw UsageError("malformed index '" + std::string(text) + "'");
        }
        body = body.substr(2, body.size() - 3);
    }
    std::vector<Part> parts;
    while (true) {
        const auto comma = body.find(',');
        const std::string_view field = trim(body.substr(0, comma));
        Part value = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
            throw UsageError("malformed index '" + std::string(text) + "'");
        }
        parts.push_back(value);
        if (comma == std::string_view::npos) {
            break;
        }
        body.remove_prefix(comma + 1);
    }
    return Index(std::move(parts));
}

std::uint64_t Index::weight() const noexcept {
    return std::accumulate(parts_.begin(), parts_.end(), std::uint64_t{0});
}

std::string Index::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i != 0) s += ',';
        s += std::to_string(parts_[i]);
    }
    return s;
}

std::string Index::display() const { return "t(" + to_string() + ")"; }

void require_admissible(const Index& a) {
    if (!a.admissible()) {
        throw UsageError("index " + a.display() +
                         " is not admissible: the first part must satisfy a_1 >= 2");
    }
}

std::vector<std::vector<Index::Part>> compositions(std::uint32_t n,
                                                   const std::set<Index::Part>& allowed) {
    if (allowed.empty()) {
        throw UsageError("allowed part set must be nonempty");
    }
    if (allowed.contains(0)) {
        throw UsageError("allowed parts must be positive");
    }
    std::vector<std::vector<Index::Part>> out;
    if (n == 0) {
        return out;
    }
    std::vector<Index::Part> prefix;
    compose(n, allowed, prefix, out);
    return out;
}

std::vector<Index> conjectural_basis(std::uint32_t k) {
    require_weight(k);
    std::vector<Index> out;
    for (auto& parts : compositions(k - 1, {1, 2})) {
        parts.front() += 1;
        out.emplace_back(std::move(parts));
    }
    return out;
}

std::vector<Index> mzv_basis_indices(std::uint32_t k) {
    require_weight(k);
    std::vector<Index> out;
    for (auto& parts : compositions(k, {2, 3})) {
        out.emplace_back(std::move(parts));
    }
    return out;
}

std::vector<Index> admissible_indices(std::uint32_t k) {
    require_weight(k);
    std::vector<Index> out;
    // Leading part a >= 2 followed by any composition of k - a.
    std::set<Index::Part> any;
    for (Index::Part p = 1; p <= k; ++p) any.insert(p);
    std::vector<std::vector<Index::Part>> all;
    std::vector<Index::Part> prefix;
    compose(k, any, prefix, all);
    for (auto& parts : all) {
        if (parts.front() >= 2) {
            out.emplace_back(std::move(parts));
        }
    }
    return out;
}

PredictedDims predicted_dims(std::uint32_t k) {
    require_weight(k);
    if (k > 92) {
        throw UsageError("predicted_dims supports k <= 92");
    }
    // f indexed from 2, d indexed from 2.
    std::vector<std::uint64_t> f{1, 2};
    std::vector<std::uint64_t> d{1, 1, 1};
    for (std::uint32_t j = 4; j <= k; ++j) f.push_back(f[j - 3] + f[j - 4]);
    for (std::uint32_t j = 5; j <= k; ++j) d.push_back(d[j - 4] + d[j - 5]);
    return {f[k - 2], d[k - 2]};
}

bool is_polar(std::uint32_t r, Hyperplane h) {
    if (h.i < 1 || h.i > r) {
        throw UsageError("hyperplane H_{" + std::to_string(h.i) + "," + std::to_string(h.k) +
                         "} is not in the depth-" + std::to_string(r) + " argument space");
    }
    if (h.i == 1) return h.k == 0;
    if (h.i == 2) return h.k == 1 || h.k % 2 == 0;
    return true;
}

} // namespace tforge
