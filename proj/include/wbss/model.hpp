#ifndef WBSS_MODEL_HPP
#define WBSS_MODEL_HPP

#include "wbss/types.hpp"

namespace wbss {

/// Stacks >= 2 equally sized images as signal rows, flattened row-major.
SignalMatrix images_to_signals(const std::vector<ImagePlane>& images);

/// Renders each signal row as an image: min-max rescale to [0, 255] and
/// round. With sign_fix, a row with negative skewness is negated first,
/// resolving the inherent sign ambiguity deterministically. A constant row
/// renders as the all-zero image.
std::vector<ImagePlane> signals_to_images(const SignalMatrix& y, int width, int height,
                                          bool sign_fix);

/// X = A * S.
SignalMatrix mix(const SignalMatrix& s, const MixingModel& a);

/// Sample skewness (population moments). Zero for a constant row.
double skewness(const Eigen::Ref<const Eigen::RowVectorXd>& row);

}  // namespace wbss

#endif  // WBSS_MODEL_HPP
