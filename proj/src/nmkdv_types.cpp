#include "nmkdv_types.hpp"

#include <algorithm>
#include <cmath>

namespace nmkdv {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ok: return "Ok";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::io_failure: return "IoFailure";
    case Errc::not_converged: return "NotConverged";
    case Errc::pole_at_nonpositive_integer: return "PoleAtNonPositiveInteger";
    case Errc::out_of_validated_range: return "OutOfValidatedRange";
    case Errc::non_decaying_tail: return "NonDecayingTail";
    case Errc::pole_outside_domain: return "PoleOutsideDomain";
    case Errc::evaluation_on_contour_without_side_flag: return "EvaluationOnContourWithoutSideFlag";
    case Errc::singular_at_origin: return "SingularAtOrigin";
    case Errc::overflow_gauge: return "OverflowGauge";
    case Errc::non_analytic_column_request: return "NonAnalyticColumnRequest";
    case Errc::too_close_to_origin: return "TooCloseToOrigin";
    case Errc::spectral_zero_on_real_axis: return "SpectralZeroOnRealAxis";
    case Errc::asymmetric_grid: return "AsymmetricGrid";
    case Errc::ambiguous_classification: return "AmbiguousClassification";
    case Errc::no_sign_change: return "NoSignChange";
    case Errc::multiple_zeros: return "MultipleZeros";
    case Errc::log_branch_jump: return "LogBranchJump";
    case Errc::proportionality_violated: return "ProportionalityViolated";
    case Errc::winding_out_of_range: return "WindingOutOfRange";
    case Errc::endpoint_divergence: return "EndpointDivergence";
    case Errc::nu_out_of_range: return "NuOutOfRange";
    case Errc::wrong_sector: return "WrongSector";
    case Errc::singular_denominator: return "SingularDenominator";
    case Errc::on_singular_line: return "OnSingularLine";
    case Errc::on_time_axis: return "OnTimeAxis";
    case Errc::degenerate_jump: return "DegenerateJump";
    case Errc::grid_too_small: return "GridTooSmall";
    case Errc::grid_too_narrow: return "GridTooNarrow";
  }
  return "Unknown";
}

double Mat2::max_abs() const {
  return std::max(std::max(std::abs(m00), std::abs(m01)), std::max(std::abs(m10), std::abs(m11)));
}

}  // namespace nmkdv
