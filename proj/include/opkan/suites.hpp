#ifndef OPKAN_SUITES_HPP
#define OPKAN_SUITES_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "opkan/errors.hpp"
#include "opkan/operad.hpp"
#include "opkan/report.hpp"

namespace opkan {

struct UnknownSuite : Error {
    using Error::Error;
};

/** Unset values fall back to each suite's own default. */
struct SuiteParams {
    std::optional<int> K;
    std::optional<int> n;
    std::optional<int> m;
    std::optional<int> D;
    std::optional<int> bound;
    std::size_t max_gen = 0;  // 0 keeps the current ceiling
    double timeout = 0.0;     // seconds; 0 means no limit
    std::string instance;
    std::string model = "comm";
};

const std::vector<std::string>& suite_names();
/** Throws UnknownSuite for names outside suite_names(). */
Report run_suite(const std::string& name, const SuiteParams& p = {});

/** comm, triv, monoid (Z/2) or monoid:<table-file>. */
OperadModel make_model(const std::string& spec, int K);

/** rho_shriek_env(phi_section(sizes), i) against the i-th component, for all size
 *  tuples with n blocks, n <= max_n and total at most max_total. */
Report section_identity_check(int max_total, int max_n);

}  // namespace opkan

#endif
