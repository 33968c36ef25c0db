#include "berrylink/hmap.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <numbers>
#include <sstream>

namespace berrylink {

namespace {
constexpr double kPi = std::numbers::pi;

int parse_nonneg_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size() || v < 0) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("map spec: bad integer for " + what + ": '" + s + "'");
    }
}
}  // namespace

MapSpec MapSpec::pontrjagin(int n) {
    if (n < 0) throw ConfigError("PontrjaginS2: n must be >= 0");
    return {Kind::PontrjaginS2, n, false};
}

MapSpec MapSpec::hopf(int m, bool deformed) {
    if (m < 0) throw ConfigError("HopfS3: m must be >= 0");
    return {Kind::HopfS3, m, deformed};
}

MapSpec MapSpec::constant_north() { return {Kind::ConstantNorth, 0, false}; }

MapSpec MapSpec::parse(const std::string& text) {
    const std::size_t colon = text.find(':');
    const std::string head = text.substr(0, colon);
    std::string args = (colon == std::string::npos) ? "" : text.substr(colon + 1);

    if (head == "constant-north") {
        if (!args.empty()) throw ConfigError("map spec: constant-north takes no arguments");
        return constant_north();
    }

    // split "k=v,k=v" (bare "deformed" allowed)
    int degree = -1;
    bool deformed = false;
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const std::size_t eq = item.find('=');
        const std::string key = item.substr(0, eq);
        const std::string val = (eq == std::string::npos) ? "" : item.substr(eq + 1);
        if (key == "n" || key == "m") {
            degree = parse_nonneg_int(val, key);
        } else if (key == "deformed") {
            if (val.empty() || val == "true" || val == "1") deformed = true;
            else if (val == "false" || val == "0") deformed = false;
            else throw ConfigError("map spec: deformed must be true/false");
        } else {
            throw ConfigError("map spec: unknown key '" + key + "'");
        }
    }

    if (head == "pontrjagin") {
        if (degree < 0) throw ConfigError("map spec: pontrjagin requires n=<int>");
        return pontrjagin(degree);
    }
    if (head == "hopf") {
        if (degree < 0) throw ConfigError("map spec: hopf requires m=<int>");
        return hopf(degree, deformed);
    }
    throw ConfigError("map spec: unknown map '" + head + "'");
}

std::string MapSpec::to_string() const {
    switch (kind) {
        case Kind::PontrjaginS2:
            return "pontrjagin:n=" + std::to_string(degree);
        case Kind::HopfS3:
            return "hopf:m=" + std::to_string(degree) +
                   (deformed ? ",deformed=true" : ",deformed=false");
        case Kind::ConstantNorth:
            return "constant-north";
    }
    return "?";
}

ProfileJet profile_angle(int m, double u) {
    if (m == 0) return {0.5 * kPi, 0.0};  // cot^0 = 1
    if (u <= 0.5 * kPi) {
        const double tau = std::tan(0.5 * u);
        const double tm = std::pow(tau, m);
        const double theta = 2.0 * std::atan(tm);
        const double slope =
            m * std::pow(tau, m - 1) * (1.0 + tau * tau) / (1.0 + tm * tm);
        return {theta, slope};
    }
    const double rho = std::tan(0.5 * (kPi - u));
    const double rm = std::pow(rho, m);
    const double theta = kPi - 2.0 * std::atan(rm);
    const double slope = m * std::pow(rho, m - 1) * (1.0 + rho * rho) / (1.0 + rm * rm);
    return {theta, slope};
}

namespace {

UnitVec3 sphere_point(double polar, double azimuth) {
    const double s = std::sin(polar);
    return {s * std::cos(azimuth), s * std::sin(azimuth), std::cos(polar)};
}

}  // namespace

UnitVec3 eval_map(const MapSpec& spec, const AngleCoordS2& p) {
    switch (spec.kind) {
        case MapSpec::Kind::ConstantNorth:
            return {0.0, 0.0, 1.0};
        case MapSpec::Kind::PontrjaginS2: {
            const ProfileJet a = profile_angle(spec.degree, p.theta);
            return sphere_point(a.value, spec.degree * p.phi);
        }
        case MapSpec::Kind::HopfS3:
            throw DomainMismatch("eval_map: Hopf variant needs an S^3 point");
    }
    return {0.0, 0.0, 1.0};
}

UnitVec3 eval_map(const MapSpec& spec, const AngleCoordS3& p) {
    switch (spec.kind) {
        case MapSpec::Kind::ConstantNorth:
            return {0.0, 0.0, 1.0};
        case MapSpec::Kind::HopfS3: {
            const double theta =
                spec.deformed ? p.t : profile_angle(spec.degree, p.t).value;
            return sphere_point(theta, spec.degree * (p.alpha - p.beta));
        }
        case MapSpec::Kind::PontrjaginS2:
            throw DomainMismatch("eval_map: Pontrjagin variant needs an S^2 point");
    }
    return {0.0, 0.0, 1.0};
}

MapJetS2 eval_map_jet(const MapSpec& spec, const AngleCoordS2& p) {
    MapJetS2 jet;
    switch (spec.kind) {
        case MapSpec::Kind::ConstantNorth:
            jet.h = {0.0, 0.0, 1.0};
            jet.d_theta.setZero();
            jet.d_phi.setZero();
            return jet;
        case MapSpec::Kind::PontrjaginS2: {
            const int n = spec.degree;
            const ProfileJet a = profile_angle(n, p.theta);
            const double b = n * p.phi;
            const double sa = std::sin(a.value), ca = std::cos(a.value);
            const double cb = std::cos(b), sb = std::sin(b);
            jet.h = {sa * cb, sa * sb, ca};
            jet.d_theta = a.slope * UnitVec3{ca * cb, ca * sb, -sa};
            jet.d_phi = n * sa * UnitVec3{-sb, cb, 0.0};
            return jet;
        }
        case MapSpec::Kind::HopfS3:
            throw DomainMismatch("eval_map_jet: Hopf variant needs an S^3 point");
    }
    return jet;
}

MapJetS3 eval_map_jet(const MapSpec& spec, const AngleCoordS3& p) {
    MapJetS3 jet;
    switch (spec.kind) {
        case MapSpec::Kind::ConstantNorth:
            jet.h = {0.0, 0.0, 1.0};
            jet.d_t.setZero();
            jet.d_alpha.setZero();
            jet.d_beta.setZero();
            return jet;
        case MapSpec::Kind::HopfS3: {
            const int m = spec.degree;
            double theta, slope;
            if (spec.deformed) {
                theta = p.t;
                slope = 1.0;
            } else {
                const ProfileJet pj = profile_angle(m, p.t);
                theta = pj.value;
                slope = pj.slope;
            }
            const double phi = m * (p.alpha - p.beta);
            const double st = std::sin(theta), ct = std::cos(theta);
            const double cp = std::cos(phi), sp = std::sin(phi);
            jet.h = {st * cp, st * sp, ct};
            jet.d_t = slope * UnitVec3{ct * cp, ct * sp, -st};
            jet.d_alpha = m * st * UnitVec3{-sp, cp, 0.0};
            jet.d_beta = -jet.d_alpha;
            return jet;
        }
        case MapSpec::Kind::PontrjaginS2:
            throw DomainMismatch("eval_map_jet: Pontrjagin variant needs an S^2 point");
    }
    return jet;
}

double pontrjagin_index(const MapSpec& spec, const GridS2& grid) {
    if (!spec.is_s2())
        throw DomainMismatch("pontrjagin_index: spec is not an S^2 map");
    double acc = 0.0;
    for (int i = 0; i < grid.ntheta(); ++i) {
        double row = 0.0;
        for (int j = 0; j < grid.nphi(); ++j) {
            const MapJetS2 jet =
                eval_map_jet(spec, AngleCoordS2(grid.theta_node(i), grid.phi_node(j)));
            row += jet.h.dot(jet.d_theta.cross(jet.d_phi));
        }
        acc += grid.theta_weight(i) * grid.dphi() * row;
    }
    return acc / (4.0 * kPi);
}

double pontrjagin_index(const std::function<UnitVec3(const AngleCoordS2&)>& field,
                        const GridS2& grid, double step) {
    double acc = 0.0;
    for (int i = 0; i < grid.ntheta(); ++i) {
        const double th = grid.theta_node(i);
        const double h = std::min({step, 0.25 * th, 0.25 * (kPi - th)});
        double row = 0.0;
        for (int j = 0; j < grid.nphi(); ++j) {
            const double ph = grid.phi_node(j);
            auto at = [&](double a, double b) { return field(AngleCoordS2(a, b)); };
            const UnitVec3 hc = at(th, ph);
            const UnitVec3 dth =
                (at(th - 2 * h, ph) - 8.0 * at(th - h, ph) + 8.0 * at(th + h, ph) -
                 at(th + 2 * h, ph)) /
                (12.0 * h);
            const UnitVec3 dph =
                (at(th, ph - 2 * h) - 8.0 * at(th, ph - h) + 8.0 * at(th, ph + h) -
                 at(th, ph + 2 * h)) /
                (12.0 * h);
            row += hc.dot(dth.cross(dph));
        }
        acc += grid.theta_weight(i) * grid.dphi() * row;
    }
    return acc / (4.0 * kPi);
}

}  // namespace berrylink
