#pragma once

#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sparqlsec::filter {

enum class entry_kind {
    /// Compared against the lexemes of the input lexed as if spliced after
    /// an opening quote.
    token,
    /// Case-insensitive raw substring.
    substring,
};

struct blacklist_entry {
    entry_kind kind;
    std::string text;

    auto operator<=>(const blacklist_entry &) const = default;
};

class blacklist_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class blacklist {
public:
    blacklist() = default;
    explicit blacklist(std::vector<blacklist_entry> entries);

    /// `# " \ { } ; ". ."` as substrings and SELECT WHERE SERVICE FILTER
    /// DELETE INSERT PREFIX as tokens.
    static blacklist defaults();

    /// One `token:X` or `substring:X` per line; blank lines are skipped.
    static blacklist parse(std::string_view text);
    static blacklist load(const std::filesystem::path &path);

    /// Throws blacklist_error on an empty entry.
    void add(blacklist_entry entry);

    [[nodiscard]] const std::vector<blacklist_entry> &entries() const noexcept { return entries_; }

private:
    std::vector<blacklist_entry> entries_;
};

enum class threat_class { comment_termination, quote_escape, keyword_smuggle, structure_punctuation, clean };

std::string_view to_string(threat_class c) noexcept;

/// The class an entry stands for: anything with `#` ends the template line,
/// a keyword token smuggles structure, entries made only of `"` and `\`
/// escape the literal, everything else is punctuation.
threat_class classify(const blacklist_entry &entry);

struct offense {
    blacklist_entry entry;
    std::size_t position = 0;
    threat_class cls = threat_class::clean;
};

enum class decision { accept, reject };

struct filter_verdict {
    decision outcome = decision::accept;
    /// Sorted by position, then entry.
    std::vector<offense> offending;
    std::set<threat_class> classification{threat_class::clean};

    [[nodiscard]] bool accepted() const noexcept { return outcome == decision::accept; }
};

filter_verdict filter_input(std::string_view input, const blacklist &bl);

/// "input accepted", or one line per offense.
std::string explain_verdict(const filter_verdict &v);

} // namespace sparqlsec::filter
