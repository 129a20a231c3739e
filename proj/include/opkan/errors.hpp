#ifndef OPKAN_ERRORS_HPP
#define OPKAN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace opkan {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedWord : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

struct ForeignSimplex : Error {
    using Error::Error;
};

struct InvalidStructure : Error {
    using Error::Error;
};

struct HypothesisViolation : Error {
    using Error::Error;
};

struct ModelDefect : Error {
    using Error::Error;
};

struct ResourceLimit : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t line;
    std::size_t column;
    ParseError(const std::string& msg, std::size_t l, std::size_t c)
        : Error(msg + " at line " + std::to_string(l) + ", column " + std::to_string(c)),
          line(l), column(c) {}
};

/** Hard cap on the number of generators any single construction may create.
 *  Read once from OPKAN_MAX_GEN; overridable at runtime. */
std::size_t generator_ceiling();
void set_generator_ceiling(std::size_t n);

/** Throws ResourceLimit when count exceeds the ceiling. */
void guard_generators(std::size_t count, const char* what);

}  // namespace opkan

#endif
