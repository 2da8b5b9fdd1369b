#pragma once

#include <string>
#include <vector>

#include "qorder/ordering.h"

namespace qorder {

/// One panel (one curve family or surface) of a figure data set.
struct FigurePanel {
    std::string label;
    Surface surface;
};

/// Data behind figures 1-6: post-channel coherence over (t, n_z) with n_y = 0.
///   1: C_r, amplitude damping, p in {1/4, 1/2, 3/4}; surfaces t, n_z in [0,1] step 0.05
///   2: same channel and p, curves over t (step 0.01) at n_z in {0.3, 0.6, 0.9}
///   3: same channel and p, curves over n_z (step 0.01) at t in {0.3, 0.6, 0.9}
///   4: C_2, amplitude damping, p in {1/8, 3/8, 5/8, 7/8}
///   5: C_alpha, amplitude damping, p = 1/2, alpha in {1/4, 3/4, 5/4, 7/4}
///   6: C_alpha, phase damping, p = 1/2, same alpha set
/// Throws Error(DomainError) for other ids.
std::vector<FigurePanel> figure_panels(int id);

}  // namespace qorder
