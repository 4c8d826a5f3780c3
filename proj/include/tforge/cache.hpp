#pragma once

#include "tforge/index.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace tforge {

/// One cached evaluation: decimal midpoint plus a radius of 10^err_exp.
struct CacheEntry {
    std::string value;
    long err_exp;
    std::string backend;
};

/// On-disk cache laid out as <root>/<weight>/<index>@<digits>.json.
/// Writers go through a temporary file and an atomic rename, so concurrent
/// writers never expose a partial entry.
class EvalCache {
public:
    explicit EvalCache(std::filesystem::path root);

    [[nodiscard]] const std::filesystem::path& root() const noexcept { return root_; }
    [[nodiscard]] std::filesystem::path entry_path(const Index& a, long digits) const;

    /// Missing, unreadable or mismatching entries read as a miss.
    [[nodiscard]] std::optional<CacheEntry> load(const Index& a, long digits) const;
    void store(const Index& a, long digits, const CacheEntry& entry) const;

private:
    std::filesystem::path root_;
};

} // namespace tforge
