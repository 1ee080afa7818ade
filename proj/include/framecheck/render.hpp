#pragma once

#include <vector>

#include "framecheck/fidelity.hpp"
#include "framecheck/scene.hpp"

namespace framecheck {

/// Flat-shaded orthographic preview of the member boxes from one canonical
/// camera. Deterministic; background alpha is 0. Not a photometric render.
RasterView render_view(const Scene& scene, ViewId view, int size = kScoringSize);

/// All five canonical views in kAllViews order.
std::vector<RasterView> render_views(const Scene& scene, int size = kScoringSize);

}  // namespace framecheck
