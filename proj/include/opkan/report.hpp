#ifndef OPKAN_REPORT_HPP
#define OPKAN_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace opkan {

enum class Status { Pass, Fail, Skipped, NotChecked };
const char* to_string(Status s);

struct CheckEntry {
    std::string name;
    Status status = Status::Pass;
    std::string witness;
    double seconds = 0.0;
};

/** Named list of checks; failed() drives the exit code. */
struct Report {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> notes;
    std::vector<CheckEntry> entries;

    void add(std::string name, bool ok, std::string witness = "");
    void add(std::string name, Status s, std::string witness = "");
    void merge(const Report& o, const std::string& prefix = "");

    std::size_t count(Status s) const;
    std::size_t failed() const { return count(Status::Fail); }
    bool ok() const { return failed() == 0; }
    /** First failing entry's name and witness, or empty. */
    std::string first_failure() const;
};

}  // namespace opkan

#endif
