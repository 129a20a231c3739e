#include "opkan/report.hpp"

#include <algorithm>

namespace opkan {

const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skipped: return "skipped";
        case Status::NotChecked: return "not checked";
    }
    return "?";
}

void Report::add(std::string name, bool ok, std::string witness) {
    add(std::move(name), ok ? Status::Pass : Status::Fail, std::move(witness));
}

void Report::add(std::string name, Status s, std::string witness) {
    entries.push_back({std::move(name), s, std::move(witness), 0.0});
}

void Report::merge(const Report& o, const std::string& prefix) {
    for (const auto& n : o.notes)
        if (std::find(notes.begin(), notes.end(), n) == notes.end()) notes.push_back(n);
    for (const auto& e : o.entries) {
        CheckEntry c = e;
        if (!prefix.empty()) c.name = prefix + e.name;
        entries.push_back(std::move(c));
    }
}

std::size_t Report::count(Status s) const {
    std::size_t n = 0;
    for (const auto& e : entries)
        if (e.status == s) ++n;
    return n;
}

std::string Report::first_failure() const {
    for (const auto& e : entries)
        if (e.status == Status::Fail) return e.name + (e.witness.empty() ? "" : ": " + e.witness);
    return "";
}

}  // namespace opkan
