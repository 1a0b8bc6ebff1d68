#pragma once

#include "output.hpp"

#include "henon/currents.hpp"
#include "henon/equidist.hpp"
#include "henon/nevanlinna.hpp"
#include "henon/periodic.hpp"

#include <vector>

namespace henon::cli {

/// `re_t,im_t,mass` rows plus total mass, error estimate, negative mass and pole count footers.
Csv slice_table(const SliceMeasure& m);
/// `n,e_n,bound_model` rows plus the fit in footers.
Csv equidist_table(const EquidistReport& r);
Csv periodic_table(const std::vector<PeriodicPoint>& pts);
Csv rigidity_table(const std::vector<RigidityRow>& rows);

}  // namespace henon::cli
