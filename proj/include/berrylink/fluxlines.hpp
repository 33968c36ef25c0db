#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "berrylink/topo.hpp"

namespace berrylink {

/// Components of the dual curvature B^mu = eps^{mu nu lambda} F_{nu lambda}
/// with eps^{t a b} = +1.
struct DualFieldSample {
    double B_t, B_alpha, B_beta;
};

DualFieldSample dual_field(const MapSpec& hopf, const AngleCoordS3& p);

/// One field line t = t0, alpha - beta = delta0, traced in the chart and
/// stereographically projected to R^3. The polyline repeats its first point.
struct FluxLoop {
    double t0 = 0.0;
    double delta0 = 0.0;
    double beta_offset = 0.0;  // recorded pole-avoidance rotation
    double alignment = 0.0;    // min |cos| between loop tangent and B (chart)
    Polyline3 line;
};

/// Trace the closed B-field line through (t0, delta0). n_samples >= 64.
/// Tangency against dual_field(spec) is checked at 8 points; the projection
/// pole is avoided by a recorded beta rotation when necessary.
FluxLoop trace_loop(double t0, double delta0, int n_samples,
                    const MapSpec& spec = MapSpec::hopf(1, true));

/// Pairwise Gauss linking numbers of the traced loops (zero diagonal).
Eigen::MatrixXd linking_matrix(const std::vector<FluxLoop>& loops);

/// Loops for every (t0, delta0) pair of the two lists; all pairs must be
/// distinct. Returns loops and their linking matrix.
struct LinkingDemo {
    std::vector<FluxLoop> loops;
    Eigen::MatrixXd matrix;
};
LinkingDemo linking_demo(const std::vector<double>& t_list,
                         const std::vector<double>& delta_list,
                         const MapSpec& spec = MapSpec::hopf(1, true),
                         int n_samples = 512);

/// The 12 loops of the reference figure: the delta = 0, 0.2pi, ..., 1.8pi
/// family on the t = 0.3pi torus plus one loop on each of t = 0.2pi, 0.7pi.
std::vector<FluxLoop> fig1_loops(int n_samples = 512);

/// JSON: [{t0, delta0, beta_offset, points:[[x,y,z],...]}] (closing duplicate
/// dropped on write, restored on read). OBJ: v/l records, one object per loop.
void export_loops_json(const std::vector<FluxLoop>& loops, std::ostream& os);
std::vector<FluxLoop> import_loops_json(std::istream& is);
void export_loops_obj(const std::vector<FluxLoop>& loops, std::ostream& os);

}  // namespace berrylink
