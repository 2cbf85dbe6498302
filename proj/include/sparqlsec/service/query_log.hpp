#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace sparqlsec::service {

struct log_entry {
    std::uint64_t sequence = 0;
    std::string endpoint;
    std::string mode;
    /// Exact text handed to the parser; empty when nothing was built.
    std::string effective_query;
    std::string outcome;
};

/// In-memory record of effective queries, optionally mirrored to a file as
/// one JSON object per line.
class query_log {
public:
    explicit query_log(std::size_t capacity = 10000) : capacity_(capacity) {}

    void open(const std::filesystem::path &path);

    /// Returns the sequence number assigned to the entry.
    std::uint64_t append(log_entry entry);

    [[nodiscard]] std::vector<log_entry> entries() const;
    [[nodiscard]] std::optional<log_entry> last() const;
    [[nodiscard]] std::optional<log_entry> find(std::uint64_t sequence) const;

private:
    mutable std::mutex mutex_;
    std::size_t capacity_;
    std::uint64_t next_ = 1;
    std::deque<log_entry> entries_;
    std::ofstream file_;
};

} // namespace sparqlsec::service
