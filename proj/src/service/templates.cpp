#include "sparqlsec/service/templates.hpp"

#include "sparqlsec/rdf/term.hpp"

namespace sparqlsec::service {

namespace {

std::string s(std::string_view v) { return std::string(v); }

} // namespace

std::string splice_search(std::string_view doctor_name, template_layout layout)
{
    if (layout == template_layout::single_line) {
        return "SELECT DISTINCT ?name\nWHERE {?s foaf:firstName \"" + s(doctor_name) +
               "\". ?r hc:editedBy ?s. ?r hc:reportFor ?p. ?p foaf:firstName ?name.}\n";
    }
    return "SELECT DISTINCT ?name\nWHERE {?s foaf:firstName \"" + s(doctor_name) +
           "\".\n?r hc:editedBy ?s.\n?r hc:reportFor ?p.\n?p foaf:firstName ?name.\n}\n";
}

std::string splice_update(std::string_view old_name, std::string_view new_name, template_layout layout, bool paper_exact)
{
    std::string insert_subject = paper_exact ? "hc:P2" : "?p";
    std::string where_name = paper_exact ? "Gareath" : s(old_name);
    if (layout == template_layout::single_line) {
        return "DELETE {\n?p foaf:firstName \"" + s(old_name) + "\".\n}\nINSERT {\n" + insert_subject +
               " foaf:firstName \"" + s(new_name) + "\".} WHERE {?p foaf:firstName \"" + where_name + "\".}\n";
    }
    return "DELETE {\n?p foaf:firstName \"" + s(old_name) + "\".\n}\nINSERT {\n" + insert_subject +
           " foaf:firstName \"" + s(new_name) + "\".\n}\nWHERE {\n?p foaf:firstName \"" + where_name + "\".\n}\n";
}

std::string splice_delete(std::string_view name, template_layout layout, bool paper_exact)
{
    std::string where_object = paper_exact ? "\"Ethan\"" : "?o";
    if (layout == template_layout::single_line) {
        return "DELETE {\n?p foaf:firstName \"" + s(name) + "\".} WHERE{?p foaf:firstName " + where_object + ".}\n";
    }
    return "DELETE {\n?p foaf:firstName \"" + s(name) + "\".\n}\nWHERE {\n?p foaf:firstName " + where_object +
           ".\n}\n";
}

const safe::query_template &search_template()
{
    static const safe::query_template t(
        "SELECT DISTINCT ?name\nWHERE {?s foaf:firstName @{doctor}. ?r hc:editedBy ?s. ?r hc:reportFor ?p. "
        "?p foaf:firstName ?name.}\n",
        safe::template_kind::query, rdf::standard_prefixes());
    return t;
}

const safe::query_template &update_template()
{
    static const safe::query_template t(
        "DELETE {?p foaf:firstName @{old}} INSERT {?p foaf:firstName @{new}} WHERE {?p foaf:firstName @{old}}\n",
        safe::template_kind::update, rdf::standard_prefixes());
    return t;
}

const safe::query_template &delete_template()
{
    static const safe::query_template t("DELETE {?p foaf:firstName @{name}} WHERE {?p foaf:firstName @{name}}\n",
        safe::template_kind::update, rdf::standard_prefixes());
    return t;
}

} // namespace sparqlsec::service
