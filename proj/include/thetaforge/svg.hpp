#pragma once

#include <string>
#include <vector>

#include "thetaforge/scatter.hpp"

namespace thetaforge {

struct SvgOptions {
  int size = 480;        ///< width and height in px
  int label_terms = 3;   ///< wall-function terms shown per label
};

/// Support half-lines drawn from the origin with their wall functions.
/// Chambers flagged is_cluster are shaded. Output is byte-deterministic.
std::string export_svg(const ScatteringDiagram& d, const std::vector<Chamber>& chambers,
                       const SvgOptions& options = {});

}  // namespace thetaforge
