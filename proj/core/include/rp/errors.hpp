// Exception hierarchy shared by every module.
#ifndef RP_ERRORS_HPP
#define RP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rp {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic between elements of unrelated extension towers.
struct tower_mismatch_error : error {
    using error::error;
};

struct division_by_zero_error : error {
    using error::error;
};

// Adjoining a non-monic or degree < 2 minimal polynomial.
struct invalid_extension_error : error {
    using error::error;
};

// Zero polynomial / zero operator where a nonzero one is required, and
// other violated preconditions.
struct domain_error : error {
    using error::error;
};

// Monomial-expansion oracle asked beyond its configured size cap.
struct cap_error : error {
    using error::error;
};

// Characteristic polynomial requested for an edge that does not belong
// to the operator's current polygon.
struct edge_mismatch_error : error {
    using error::error;
};

struct parse_error : error {
    using error::error;
};

struct internal_error : error {
    using error::error;
};

} // namespace rp

#endif
