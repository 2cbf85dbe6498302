#pragma once

#include <string>
#include <string_view>

#include "sparqlsec/safe/query_template.hpp"

namespace sparqlsec::service {

enum class template_layout { single_line, multiline };

/// Doctor name spliced between quotes; the rest of the query follows on the
/// same line (single_line) or on later lines (multiline).
std::string splice_search(std::string_view doctor_name, template_layout layout);

/// Rename of a patient. `paper_exact` hardcodes the INSERT subject hc:P2 and
/// the WHERE name "Gareath".
std::string splice_update(
    std::string_view old_name, std::string_view new_name, template_layout layout, bool paper_exact = false);

/// Deletion of every first name triple with the given value. `paper_exact`
/// restricts WHERE to subjects named "Ethan".
std::string splice_delete(std::string_view name, template_layout layout, bool paper_exact = false);

/// Parameterized counterparts, placeholders @{doctor}, @{old}/@{new} and
/// @{name}.
const safe::query_template &search_template();
const safe::query_template &update_template();
const safe::query_template &delete_template();

} // namespace sparqlsec::service
