#pragma once

#include <map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "berrylink/exact.hpp"
#include "berrylink/manifold.hpp"

namespace berrylink {

/// Label (j, m_I, m_K) stored through the phase exponents m1 = m_I + m_K,
/// m2 = m_I - m_K and the doubled weight two_j = 2j.
struct HarmonicLabel {
    int two_j = 0;
    int m1 = 0;
    int m2 = 0;

    HarmonicLabel() = default;
    HarmonicLabel(int two_j_, int m1_, int m2_);

    static bool is_valid(int two_j, int m1, int m2);

    int two_mI() const { return m1 + m2; }
    int two_mK() const { return m1 - m2; }

    bool operator==(const HarmonicLabel& o) const {
        return two_j == o.two_j && m1 == o.m1 && m2 == o.m2;
    }
    bool operator<(const HarmonicLabel& o) const {
        if (two_j != o.two_j) return two_j < o.two_j;
        if (m1 != o.m1) return m1 < o.m1;
        return m2 < o.m2;
    }
};

/// Exact trigonometric polynomial sum_{a,b} c_ab cos^a(t/2) sin^b(t/2),
/// coefficients in units of 1/pi (the common normalization factor of every
/// SO(4) harmonic). All monomials of one harmonic share a + b = two_j.
class TrigPoly {
public:
    using Monomials = std::map<std::pair<int, int>, SqrtRational>;

    const Monomials& monomials() const { return mono_; }
    bool empty() const { return mono_.empty(); }

    void add(int a, int b, const SqrtRational& c);

    TrigPoly scaled(const SqrtRational& c) const;
    double eval(double t) const;  // without the 1/pi factor

    bool operator==(const TrigPoly& o) const { return mono_ == o.mono_; }

private:
    Monomials mono_;
};

/// Exact SO(4) spherical harmonic
///   Y(t,alpha,beta) = (1/pi) * radial(t) * e^{i m1 alpha} e^{i m2 beta}.
struct Harmonic {
    HarmonicLabel label;
    TrigPoly radial;

    Cplx eval(const AngleCoordS3& p) const;
};

/// Normalized highest-weight state (m_I = m_K = j):
/// (1/pi) sqrt((1+2j)/2) cos^{2j}(t/2) e^{2ij alpha}.
Harmonic highest_weight(int two_j);

/// Ladder steps: apply I_- (resp. K_-) symbolically and divide by the exact
/// ladder coefficient, lowering m_I (resp. m_K) by one. Throws LadderBottom
/// at the bottom of the ladder.
Harmonic lower_I(const Harmonic& h);
Harmonic lower_K(const Harmonic& h);

/// Exact harmonic for an arbitrary valid label, generated from the highest
/// weight by ladder descent ([I_-, K_-] = 0, so the order is immaterial).
Harmonic generate(const HarmonicLabel& label);

/// All labels with the given two_j (there are (two_j+1)^2).
std::vector<HarmonicLabel> labels_for(int two_j);

GridFn sample(const Harmonic& h, const QuadratureGrid& grid);

/// L^2(S^3) pairing <h1, h2> with the volume measure v dt da db.
Cplx inner_product(const Harmonic& h1, const Harmonic& h2, const QuadratureGrid& grid);
Cplx inner_product(const GridFn& f, const GridFn& g, const QuadratureGrid& grid);

/// Numerical application of the SO(4) generators in the (t, alpha, beta)
/// chart: spectral in alpha/beta, finite differences in t.
enum class Generator { L1, L2, L3, M1, M2, M3, I3, K3, Iplus, Iminus, Kplus, Kminus };

GridFn apply_generator(Generator g, const GridFn& f, const QuadratureGrid& grid);

/// {two_j, m1, m2, monomials: [{a, b, coeff_rational, coeff_radicand}]};
/// coefficients are exact and carry the implicit 1/pi.
nlohmann::ordered_json harmonic_to_json(const Harmonic& h);
Harmonic harmonic_from_json(const nlohmann::ordered_json& j);

}  // namespace berrylink
