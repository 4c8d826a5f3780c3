#include "tforge/cache.hpp"

#include <json.hpp>

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace tforge {

EvalCache::EvalCache(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path EvalCache::entry_path(const Index& a, long digits) const {
    return root_ / std::to_string(a.weight()) /
           (a.to_string() + "@" + std::to_string(digits) + ".json");
}

std::optional<CacheEntry> EvalCache::load(const Index& a, long digits) const {
    std::ifstream in(entry_path(a, digits));
    if (!in) return std::nullopt;
    try {
        const auto j = nlohmann::json::parse(in);
        if (j.at("index").get<std::string>() != a.to_string() ||
            j.at("digits").get<long>() != digits) {
            return std::nullopt;
        }
        return CacheEntry{j.at("value").get<std::string>(), j.at("err_exp").get<long>(),
                          j.at("backend").get<std::string>()};
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
}

void EvalCache::store(const Index& a, long digits, const CacheEntry& entry) const {
    static std::atomic<unsigned long> counter{0};
    const auto target = entry_path(a, digits);
    std::filesystem::create_directories(target.parent_path());
    nlohmann::ordered_json j;
    j["index"] = a.to_string();
    j["digits"] = digits;
    j["value"] = entry.value;
    j["err_exp"] = entry.err_exp;
    j["backend"] = entry.backend;

    std::ostringstream tmp_name;
    tmp_name << '.' << target.filename().string() << '.' << ::getpid() << '.'
             << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.' << counter++;
    const auto tmp = target.parent_path() / tmp_name.str();
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << j.dump(1) << '\n';
        if (!out) {
            std::filesystem::remove(tmp);
            return;
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

} // namespace tforge
