#ifndef SNS_HELMHOLTZ_HPP
#define SNS_HELMHOLTZ_HPP

#include <span>
#include <vector>

#include "sns/grid.hpp"

namespace sns {

// Tensor F' with P(div F) = div F' for a symmetric F whose normal row
// vanishes on x_n = 0. Writing S^E_{ab}, S^O_{ab} for d_a d_b of the
// Newtonian potential of the even and odd extensions:
//   F'_{nm} = F_{nm} - delta_{nm} F_{nn}
//   F'_{bc} = F_{bc} - delta_{bc} F_{nn} - sum_q S^E_{cq} F_{bq}
//             - 2 S^O_{cn} F_{bn} + S^E_{cb} F_{nn}
//   F'_{bn} = -sum_c S^E_{cn} F_{bc} + S^E_{bn} F_{nn} - F_{bn}
//             + 2 sum_c S^O_{cc} F_{bn}
// with b, c, q tangential. The divergence contracts the first index.
struct ProjectedTensor {
  TensorField fprime;
};

ProjectedTensor project_tensor(const TensorField& F);
VectorField helmholtz_apply(const TensorField& F);

struct ProjectionBoundReport {
  std::vector<double> ratios;
  double max_ratio = 0.0;
};

ProjectionBoundReport verify_projection_bound(std::span<const TensorField> corpus, double p);

}  // namespace sns

#endif
