#pragma once

#include <stdexcept>
#include <string>

namespace iwa {

// Base class for all domain errors raised by the toolkit. Infrastructure
// errors that make a verdict undecidable (precision, truncation window)
// derive from undecidable_error so suites can report them separately.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct undecidable_error : error {
    using error::error;
};

#define IWA_DEFINE_ERROR(name, base)                                          \
    struct name : base {                                                      \
        explicit name(const std::string& msg) : base(#name ": " + msg) {}     \
    }

IWA_DEFINE_ERROR(mixed_precision, error);
IWA_DEFINE_ERROR(mixed_algebra, error);
IWA_DEFINE_ERROR(not_a_unit, error);
IWA_DEFINE_ERROR(entry_not_small_enough, error);
IWA_DEFINE_ERROR(precision_exhausted, undecidable_error);
IWA_DEFINE_ERROR(not_congruent_to_identity, error);
IWA_DEFINE_ERROR(realization_not_injective, error);
IWA_DEFINE_ERROR(unsupported_parameters, error);
IWA_DEFINE_ERROR(hypothesis_failed, error);
IWA_DEFINE_ERROR(zero_element, error);
IWA_DEFINE_ERROR(zero_divisor, error);
IWA_DEFINE_ERROR(zero_ideal, error);
IWA_DEFINE_ERROR(index_out_of_range, error);
IWA_DEFINE_ERROR(degree_bound_too_small, error);
IWA_DEFINE_ERROR(window_exceeded, undecidable_error);
IWA_DEFINE_ERROR(in_subalgebra, error);
IWA_DEFINE_ERROR(premise_failed, error);
IWA_DEFINE_ERROR(not_in_closure, error);
IWA_DEFINE_ERROR(coprimality_failed, error);
IWA_DEFINE_ERROR(search_space_too_large, error);
IWA_DEFINE_ERROR(invalid_parameter, error);
IWA_DEFINE_ERROR(io_error, error);
IWA_DEFINE_ERROR(not_normal, error);

#undef IWA_DEFINE_ERROR

} // namespace iwa
