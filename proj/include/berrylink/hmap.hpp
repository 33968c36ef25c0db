#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>

#include "berrylink/manifold.hpp"

namespace berrylink {

using UnitVec3 = Eigen::Vector3d;

/// Declarative description of the unit-vector fields used as Hamiltonian
/// data: h(r) with r on S^2 (Pontrjagin family) or S^3 (Hopf family).
struct MapSpec {
    enum class Kind { PontrjaginS2, HopfS3, ConstantNorth };

    Kind kind = Kind::ConstantNorth;
    int degree = 0;        // n (Pontrjagin) or m (Hopf), >= 0
    bool deformed = false; // Hopf only: theta(t) = t instead of the cot^m profile

    static MapSpec pontrjagin(int n);
    static MapSpec hopf(int m, bool deformed);
    static MapSpec constant_north();

    /// Parse "pontrjagin:n=2", "hopf:m=1,deformed", "hopf:m=2,deformed=false",
    /// "constant-north". Throws ConfigError on malformed input.
    static MapSpec parse(const std::string& text);
    std::string to_string() const;

    bool is_s2() const { return kind != Kind::HopfS3; }
    bool is_s3() const { return kind != Kind::PontrjaginS2; }
};

/// Monotone profile angle theta = 2*atan(tan^m(u/2)) on [0, pi], evaluated
/// through the half-angle tangent on [0, pi/2] and its mirror above to avoid
/// overflow of tan^m near u = pi. Returns {theta, dtheta/du}.
struct ProfileJet {
    double value;
    double slope;
};
ProfileJet profile_angle(int m, double u);

UnitVec3 eval_map(const MapSpec& spec, const AngleCoordS2& p);
UnitVec3 eval_map(const MapSpec& spec, const AngleCoordS3& p);

/// Map value plus closed-form chart partials.
struct MapJetS2 {
    UnitVec3 h, d_theta, d_phi;
};
struct MapJetS3 {
    UnitVec3 h, d_t, d_alpha, d_beta;
};
MapJetS2 eval_map_jet(const MapSpec& spec, const AngleCoordS2& p);
MapJetS3 eval_map_jet(const MapSpec& spec, const AngleCoordS3& p);

/// Pontrjagin index P = (1/8pi) Int eps^{mu nu} h . (d_mu h x d_nu h) with
/// eps^{theta phi} = +1; +n for the built-in n-fold covering maps.
double pontrjagin_index(const MapSpec& spec, const GridS2& grid);

/// Same integral for an arbitrary smooth field, derivatives by centered
/// finite differences (cross-check path).
double pontrjagin_index(const std::function<UnitVec3(const AngleCoordS2&)>& field,
                        const GridS2& grid, double step = 1e-3);

}  // namespace berrylink
