#pragma once

#include <stdexcept>
#include <string>

namespace czkit {

// Exception taxonomy. Every named failure mode of the library maps to one of
// these so callers (and the CLI exit-code logic) can discriminate without
// string matching.

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent user input (bad rational text, non-homogeneous
// polynomial, wrong dimension, ...).
struct validation_error : error {
    using error::error;
};

struct dimension_mismatch : validation_error {
    explicit dimension_mismatch(const std::string& what) : validation_error(what) {}
};

struct degree_mismatch : validation_error {
    explicit degree_mismatch(const std::string& what) : validation_error(what) {}
};

struct division_by_zero : validation_error {
    explicit division_by_zero(const std::string& what) : validation_error(what) {}
};

struct zero_divisor : validation_error {
    explicit zero_divisor(const std::string& what) : validation_error(what) {}
};

struct cancellation_violation : validation_error {
    explicit cancellation_violation(const std::string& what) : validation_error(what) {}
};

struct odd_component : validation_error {
    explicit odd_component(const std::string& what) : validation_error(what) {}
};

struct index_out_of_range : validation_error {
    explicit index_out_of_range(const std::string& what) : validation_error(what) {}
};

struct quadrature_under_resolved : error {
    explicit quadrature_under_resolved(const std::string& what) : error(what) {}
};

// A cross-check that must hold by theorem failed: a bug signal, never a user
// error. The CLI maps this to its own exit code.
struct internal_error : error {
    explicit internal_error(const std::string& what) : error(what) {}
};

inline void internal_check(bool ok, const std::string& what) {
    if (!ok) throw internal_error(what);
}

}  // namespace czkit
