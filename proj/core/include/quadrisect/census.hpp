#pragma once

#include <cstdint>

namespace quadrisect {

/// Counts of 4-edge subsets of an n-cycle by component structure, and the
/// induced quadrisecant bound u = s22 + s3 + 2*s4. All entries exact
/// integers; s1 + s21 + s22 + s3 + s4 == C(n,4).
struct CensusTable {
    int n = 0;
    std::int64_t s1 = 0;
    std::int64_t s21 = 0;
    std::int64_t s22 = 0;
    std::int64_t s3 = 0;
    std::int64_t s4 = 0;
    std::int64_t u = 0;

    std::int64_t total() const { return s1 + s21 + s22 + s3 + s4; }
    bool operator==(const CensusTable&) const = default;
};

/// C(n,4) in exact integer arithmetic.
std::int64_t binomial4(int n);

/// Closed-form census:
///   s1  = 0, 1, n            (n = 3, n = 4, n >= 5)
///   s21 = n(n-5)             (n >= 6)
///   s22 = n(n-5)/2           (n >= 6)
///   s3  = n(n-5)(n-6)/2      (n >= 7)
///   s4  = C(n,4) - rest      (n >= 8)
/// Throws PreconditionError for n < 3.
CensusTable census_closed_form(int n);

/// Direct enumeration of all C(n,4) subsets through classify_subset; the
/// independent oracle for the closed forms. Throws PreconditionError for
/// n < 4.
CensusTable census_bruteforce(int n);

/// n(n-3)(n-4)(n-5)/12, exact; equals the census u for every n.
/// Throws PreconditionError for n < 3.
std::int64_t upper_bound(int n);

} // namespace quadrisect
