// Exact rational arithmetic for the division engine.  Thin helpers over GMP's
// mpq_class: strict parsing/printing in canonical "num/den" form plus the
// integer rounding ops the instance generators need.  Shares, payments and LP
// pivots all run on Rat so no rounding ever happens inside the engine; floats
// only appear in the Nash solver and in tolerance-based report rendering.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace budgetdiv {

using Rat = mpq_class;
using Int = mpz_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Bad profiles, mismatched candidate universes, out-of-range indices.
struct ModelError : Error {
    using Error::Error;
};
// Invalid willingness tables, solver configs, generator parameters.
struct ValidationError : Error {
    using Error::Error;
};
// Unreadable or malformed input files.
struct IoError : Error {
    using Error::Error;
};

// Accepts "-?digits" or "-?digits/digits" with nonzero denominator.
Rat parse_rational(const std::string& text);

// Canonical rendering: lowest terms, positive denominator, "3/8" or "2".
std::string rat_str(const Rat& r);

inline double to_double(const Rat& r) { return r.get_d(); }

Int floor_rat(const Rat& r);
Int ceil_rat(const Rat& r);

// Throws if the value does not fit (generator sanity guard).
long to_long(const Int& z);

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace budgetdiv
