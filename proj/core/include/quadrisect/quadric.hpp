#pragma once

#include <array>
#include <vector>

#include "quadrisect/geom.hpp"

namespace quadrisect {

/// Degree-2 surface x^T Q x = 0 in homogeneous coordinates (x, y, z, 1).
/// Q is symmetric, Frobenius norm 1, largest-magnitude entry positive.
class Quadric {
public:
    Quadric() = default;
    explicit Quadric(const std::array<double, 16>& coeffs);

    double operator()(int row, int col) const { return q_[row * 4 + col]; }
    const std::array<double, 16>& coefficients() const { return q_; }

    /// Value of the quadratic form at an affine point.
    double evaluate(const Point3& p) const;

    /// Worst relative residual over held-out generator-line samples, set by
    /// quadric_through_three_skew_lines.
    double fit_residual() const { return fit_residual_; }

private:
    friend Quadric fit_quadric_through_lines(const std::array<Segment3, 3>&,
                                             const Tolerance&);
    std::array<double, 16> q_{};
    double fit_residual_ = 0.0;
};

/// The unique quadric containing three pairwise-skew lines, from the
/// one-dimensional nullspace of the homogeneous system built on three sample
/// points per line. Throws PreconditionError when the lines are not pairwise
/// skew and DegenerateError when the nullspace is not one-dimensional or the
/// held-out residual exceeds 1e-8.
Quadric quadric_through_three_skew_lines(const PluckerLine& l1,
                                         const PluckerLine& l2,
                                         const PluckerLine& l3,
                                         const Tolerance& tol);

/// Same surface, sampled on the spans of three segments (better conditioned
/// when the lines of interest carry segments).
Quadric quadric_through_three_skew_lines(const Segment3& e1, const Segment3& e2,
                                         const Segment3& e3, const Tolerance& tol);

/// Coefficients of q(t) = a t^2 + b t + c with q(t) the quadratic form along
/// the segment, plus the magnitude envelope used for identically-zero tests.
struct QuadraticCoeffs {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double scale = 1.0;
};

QuadraticCoeffs restrict_quadric_to_segment(const Quadric& q, const Segment3& s);

/// Roots of a t^2 + b t + c in the open unit interval.
struct RootSet {
    int count = 0;
    std::array<double, 2> roots{};  // ascending; [0, count) valid
    bool identically_zero = false;  // all coefficients below tolerance: the
                                    // segment lies on the quadric
    bool tangential = false;        // double root (discriminant within
                                    // tolerance of zero); count == 1
};

/// Numerically stable resolution of the restricted quadratic. coeff_scale is
/// the envelope the coefficients are measured against for the
/// identically-zero decision (QuadraticCoeffs::scale for restrictions).
RootSet solve_restricted_quadratic(double a, double b, double c,
                                   const Tolerance& tol,
                                   double coeff_scale = 1.0);

/// A line meeting all four input segments at strictly interior points.
struct TransversalHit {
    enum class Source { Skew, CoplanarPair };

    PluckerLine line;
    std::array<Hit, 4> hits;  // one per input segment, input order
    Source source = Source::Skew;
    bool near_degenerate = false;  // tangential root: the count is unstable
                                   // under perturbation
};

/// Every line meeting the four segments in strictly interior points.
///
/// When all six segment pairs are skew the candidates are the second-ruling
/// lines of the quadric through three of the segments, cut out by the fourth;
/// at most two exist. When some pair is coplanar every transversal lies in
/// that pair's plane and is pinned by the piercing points of the other two
/// segments; at most one exists.
///
/// Throws PreconditionError on degenerate segments, DegenerateError when the
/// restriction is identically zero (a segment lies on the quadric), when
/// more than one coplanar pair with four distinct coplanar endpoints is
/// present, or when a remaining segment lies in the coplanar pair's plane.
std::vector<TransversalHit> transversals_of_four_segments(
    const std::array<Segment3, 4>& segments, const Tolerance& tol);

} // namespace quadrisect
