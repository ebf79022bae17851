#pragma once

#include <stdexcept>
#include <string>

namespace tiltcover {

// Base for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed user input (bad JSON, inconsistent quiver data, non-group table...).
// The CLI maps this to exit code 2.
struct InvalidInput : Error {
    using Error::Error;
};

// A documented cap was hit before the computation could be certified
// ("resolution exceeds cap", "enumeration incomplete", nilpotency cap...).
struct CapExceeded : Error {
    using Error::Error;
};

// Indecomposability over Q could not be decided: the endomorphism ring is a
// division ring bigger than Q (or none of the splitting engines produced an
// idempotent).  Raised loudly instead of guessing.
struct NonSplitError : Error {
    using Error::Error;
};

// Second-kind reduction step: no summand satisfies the admissibility
// conditions ("no admissible M").
struct NoAdmissible : Error {
    using Error::Error;
};

// An internal certification failed (covering property, replay mismatch,
// lifted relation inconsistency...).  Always indicates a real defect in the
// input assumptions or in this library; never swallowed.
struct VerificationFailure : Error {
    using Error::Error;
};

}  // namespace tiltcover
