#pragma once

#include <vector>

#include "berrylink/harmonics.hpp"
#include "berrylink/manifold.hpp"

namespace berrylink {

/// Hopf winding m of the background field plus the particle mass M.
struct FieldStrength {
    int m = 0;
    double mass = 1.0;

    FieldStrength(int m_ = 0, double mass_ = 1.0) : m(m_), mass(mass_) {
        if (m < 0) throw ConfigError("FieldStrength: m must be >= 0");
        if (mass <= 0.0) throw ConfigError("FieldStrength: mass must be positive");
    }
};

/// Exact eigenvalue lambda = j(j+1) - (m/2)(m1+m2) + m^2/4; E = 2 lambda / M.
Rational eigenvalue_formula(const HarmonicLabel& label, int m);

/// H Psi with
/// H = -(2/M){d_t^2 + (cos t/sin t) d_t
///            + [d_a - i m cos^2(t/2)]^2 / (4 cos^2(t/2))
///            + [d_b - i m sin^2(t/2)]^2 / (4 sin^2(t/2))}.
GridFn magnetic_laplacian_apply(const FieldStrength& field, const GridFn& psi,
                                const QuadratureGrid& grid);

/// ||H Psi - E Psi|| / ||Psi|| with Psi the exact harmonic and E from the
/// closed-form eigenvalue.
double residual(const HarmonicLabel& label, const FieldStrength& field,
                const QuadratureGrid& grid);

/// Lowest k eigenvalues of the radial operator in the substitution u = cos t
/// (self-adjoint flux form, cell-centered grid, one Richardson step).
std::vector<double> radial_ode_solve(int m1, int m2, const FieldStrength& field,
                                     int k, int n_cells = 1024);

struct SpectrumEntry {
    HarmonicLabel label;
    Rational lambda;
    double energy;
    double residual;  // negative when not verified
    int level_id;
};

/// All labels with two_j <= two_j_max, grouped into exactly-degenerate levels
/// (rational comparison); residuals filled when a verification grid is given.
std::vector<SpectrumEntry> spectrum_table(int two_j_max, const FieldStrength& field,
                                          const QuadratureGrid* verify_grid = nullptr);

/// Worst relative deviation over the two_j <= 2 harmonics between H applied
/// directly and the composition (2/M)[(I^2 + K^2)/2 - m I_3 + m^2/4] built
/// from apply_generator.
double operator_identity_check(const FieldStrength& field, const QuadratureGrid& grid);

}  // namespace berrylink
