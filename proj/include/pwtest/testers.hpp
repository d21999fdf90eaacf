#pragma once

#include <optional>
#include <span>

#include "pwtest/base_class.hpp"
#include "pwtest/ns.hpp"
#include "pwtest/oracle.hpp"
#include "pwtest/params.hpp"
#include "pwtest/piecewise.hpp"
#include "pwtest/report.hpp"

namespace pwtest {

/// How a label used by several anchors is charged to q.
enum class QueryCounting {
    Distinct, ///< once per sample point
    PerUse,   ///< once per use
};

/// Accept iff the general estimate is at most (k-1)(delta/2)(1+eps/8).
/// The oracle must allow s samples and min(q, s) labels.
TesterReport active_test_general(TargetOracle& oracle, const BaseClass& h, const ActiveParams& params,
                                 QueryCounting counting = QueryCounting::Distinct);

/// Accept iff the pairing estimate is at most (k-1)(delta/2)(1+eps/8).
/// The oracle must allow s' samples and 2m' (active) or s' (passive) labels.
TesterReport constant_test(TargetOracle& oracle, const ConstantParams& params, LabelMode mode,
                           ValueEquality eq = {});

/// Some member of F_k(H) agreeing with every point, or nullopt if none
/// exists. Points must be sorted by x with distinct x (std::invalid_argument
/// otherwise).
///
/// Consistency of a run of points is hereditary, so covering the points
/// greedily with maximal consistent runs uses the fewest pieces. A run is
/// consistent when: constants, all labels equal; degree-p polynomials, the
/// interpolant of its first min(p+1, len) points matches the rest; shifted
/// sines, one of the two phases through its first point matches the rest.
/// Breakpoints sit at midpoints between neighbouring runs.
std::optional<PiecewiseFunction> fit_consistent_piecewise(std::span<const ValuePoint> points,
                                                          const BaseClass& h, int k);

/// Fits on the first train_size points, then accepts iff the fit agrees with
/// at least (1 - eps/2) * validate_size of the remaining points. Rejects
/// when no consistent fit exists. The statistic is the validation
/// disagreement fraction (1 with no fit) against threshold eps/2.
TesterReport learn_validate_test(TargetOracle& oracle, const BaseClass& h,
                                 const LearnValidateParams& params);

/// Interpolates a degree-p polynomial through the first p+1 samples and
/// accepts iff it matches all ceil(ln(3)/eps) further samples. The
/// statistic is the validation disagreement fraction against threshold 0.
/// Throws std::runtime_error if the fitting points repeat an x.
TesterReport poly_exact_test(TargetOracle& oracle, int p, double eps, ValueEquality eq = {});

} // namespace pwtest
