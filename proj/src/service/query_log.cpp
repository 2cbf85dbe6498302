#include "sparqlsec/service/query_log.hpp"

#include "json.hpp"

namespace sparqlsec::service {

void query_log::open(const std::filesystem::path &path)
{
    std::lock_guard lock(mutex_);
    file_.open(path, std::ios::app);
    if (!file_) {
        throw std::runtime_error("cannot open query log " + path.string());
    }
}

std::uint64_t query_log::append(log_entry entry)
{
    std::lock_guard lock(mutex_);
    entry.sequence = next_++;
    if (file_.is_open()) {
        nlohmann::json j{{"sequence", entry.sequence}, {"endpoint", entry.endpoint}, {"mode", entry.mode},
            {"effective_query", entry.effective_query}, {"outcome", entry.outcome}};
        file_ << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
        file_.flush();
    }
    entries_.push_back(std::move(entry));
    while (entries_.size() > capacity_) {
        entries_.pop_front();
    }
    return entries_.back().sequence;
}

std::vector<log_entry> query_log::entries() const
{
    std::lock_guard lock(mutex_);
    return {entries_.begin(), entries_.end()};
}

std::optional<log_entry> query_log::last() const
{
    std::lock_guard lock(mutex_);
    if (entries_.empty()) {
        return std::nullopt;
    }
    return entries_.back();
}

std::optional<log_entry> query_log::find(std::uint64_t sequence) const
{
    std::lock_guard lock(mutex_);
    for (const auto &e : entries_) {
        if (e.sequence == sequence) {
            return e;
        }
    }
    return std::nullopt;
}

} // namespace sparqlsec::service
