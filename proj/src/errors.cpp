#include "opkan/errors.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace opkan {

namespace {

std::size_t initial_ceiling() {
    const char* env = std::getenv("OPKAN_MAX_GEN");
    if (env && *env) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 5000000;
}

std::atomic<std::size_t>& ceiling_slot() {
    static std::atomic<std::size_t> slot{initial_ceiling()};
    return slot;
}

}  // namespace

std::size_t generator_ceiling() { return ceiling_slot().load(); }

void set_generator_ceiling(std::size_t n) { ceiling_slot().store(n); }

void guard_generators(std::size_t count, const char* what) {
    if (count > generator_ceiling())
        throw ResourceLimit(std::string(what) + ": generator count " + std::to_string(count) +
                            " exceeds ceiling " + std::to_string(generator_ceiling()));
}

}  // namespace opkan
