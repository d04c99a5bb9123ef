#include "quadrisect/census.hpp"

#include <array>

#include "quadrisect/errors.hpp"
#include "quadrisect/knot.hpp"

namespace quadrisect {

namespace {

std::int64_t exact_div(std::int64_t value, std::int64_t divisor) {
    if (value % divisor != 0) {
        throw DegenerateError("census: expected exact divisibility");
    }
    return value / divisor;
}

} // namespace

std::int64_t binomial4(int n) {
    if (n < 4) return 0;
    const std::int64_t m = n;
    return exact_div(m * (m - 1) * (m - 2) * (m - 3), 24);
}

CensusTable census_closed_form(int n) {
    if (n < 3) {
        throw PreconditionError("census_closed_form: need n >= 3");
    }
    const std::int64_t m = n;
    CensusTable t;
    t.n = n;
    t.s1 = (n == 3) ? 0 : (n == 4 ? 1 : m);
    t.s21 = (n >= 6) ? m * (m - 5) : 0;
    t.s22 = (n >= 6) ? exact_div(m * (m - 5), 2) : 0;
    t.s3 = (n >= 7) ? exact_div(m * (m - 5) * (m - 6), 2) : 0;
    t.s4 = (n >= 8) ? binomial4(n) - t.s3 - t.s22 - t.s21 - t.s1 : 0;
    t.u = t.s22 + t.s3 + 2 * t.s4;
    return t;
}

CensusTable census_bruteforce(int n) {
    if (n < 4) {
        throw PreconditionError("census_bruteforce: need n >= 4");
    }
    CensusTable t;
    t.n = n;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = b + 1; c < n; ++c) {
                for (int d = c + 1; d < n; ++d) {
                    switch (classify_subset(n, {a, b, c, d})) {
                        case SubsetCase::C1: ++t.s1; break;
                        case SubsetCase::C2a: ++t.s21; break;
                        case SubsetCase::C2b: ++t.s22; break;
                        case SubsetCase::C3: ++t.s3; break;
                        case SubsetCase::C4: ++t.s4; break;
                    }
                }
            }
        }
    }
    t.u = t.s22 + t.s3 + 2 * t.s4;
    return t;
}

std::int64_t upper_bound(int n) {
    if (n < 3) {
        throw PreconditionError("upper_bound: need n >= 3");
    }
    const std::int64_t m = n;
    return exact_div(m * (m - 3) * (m - 4) * (m - 5), 12);
}

} // namespace quadrisect
