#include "berrylink/harmonics.hpp"

#include <cmath>
#include <numbers>

#include "berrylink/errors.hpp"

namespace berrylink {

namespace {
constexpr double kPi = std::numbers::pi;
}

HarmonicLabel::HarmonicLabel(int two_j_, int m1_, int m2_)
    : two_j(two_j_), m1(m1_), m2(m2_) {
    if (!is_valid(two_j, m1, m2))
        throw InvalidLabel("HarmonicLabel: (" + std::to_string(two_j) + ", " +
                           std::to_string(m1) + ", " + std::to_string(m2) + ")");
}

bool HarmonicLabel::is_valid(int two_j, int m1, int m2) {
    if (two_j < 0) return false;
    if (std::abs(m1 + m2) > two_j || std::abs(m1 - m2) > two_j) return false;
    if (((m1 + m2) - two_j) % 2 != 0) return false;
    return true;
}

void TrigPoly::add(int a, int b, const SqrtRational& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(a, b);
    auto it = mono_.find(key);
    if (it == mono_.end()) {
        mono_.emplace(key, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) mono_.erase(it);
    }
}

TrigPoly TrigPoly::scaled(const SqrtRational& c) const {
    TrigPoly out;
    if (c.is_zero()) return out;
    for (const auto& [key, coeff] : mono_) out.mono_.emplace(key, coeff * c);
    return out;
}

double TrigPoly::eval(double t) const {
    const double c = std::cos(0.5 * t), s = std::sin(0.5 * t);
    double acc = 0.0;
    for (const auto& [key, coeff] : mono_)
        acc += coeff.to_double() * std::pow(c, key.first) * std::pow(s, key.second);
    return acc;
}

Cplx Harmonic::eval(const AngleCoordS3& p) const {
    const double r = radial.eval(p.t) / kPi;
    return std::polar(r, label.m1 * p.alpha + label.m2 * p.beta);
}

Harmonic highest_weight(int two_j) {
    if (two_j < 0) throw InvalidLabel("highest_weight: two_j must be >= 0");
    Harmonic h;
    h.label = HarmonicLabel(two_j, two_j, 0);
    h.radial.add(two_j, 0, SqrtRational::sqrt_of(Rational(1 + two_j, 2)));
    return h;
}

namespace {

// Radial action shared by I_- and K_-:
//   P' - (m1/2) tan(t/2) P  [+/-] (m2/2) cot(t/2) P,
// which maps the monomial (a,b) to
//   (a-1, b+1) with factor -(a + m1)/2 and (a+1, b-1) with (b [+/-] m2)/2.
// The combinations that would produce negative exponents carry a vanishing
// exact factor; anything else is an internal error.
TrigPoly ladder_radial(const TrigPoly& p, int m1, int m2, bool cot_plus) {
    TrigPoly out;
    for (const auto& [key, c] : p.monomials()) {
        const int a = key.first, b = key.second;
        const Rational down(-(a + m1), 2);
        const Rational up(cot_plus ? (b + m2) : (b - m2), 2);
        if (!down.is_zero()) {
            if (a - 1 < 0) throw std::logic_error("ladder_radial: negative exponent");
            out.add(a - 1, b + 1, c * SqrtRational(down));
        }
        if (!up.is_zero()) {
            if (b - 1 < 0) throw std::logic_error("ladder_radial: negative exponent");
            out.add(a + 1, b - 1, c * SqrtRational(up));
        }
    }
    return out;
}

SqrtRational ladder_coefficient(int two_j, int two_m) {
    // sqrt((j + m)(j - m + 1)) for a lowering step from m
    return SqrtRational::sqrt_of(
        Rational(static_cast<long long>(two_j + two_m) * (two_j - two_m + 2), 4));
}

}  // namespace

Harmonic lower_I(const Harmonic& h) {
    const int two_mI = h.label.two_mI();
    if (two_mI <= -h.label.two_j)
        throw LadderBottom("lower_I: m_I already at -j");
    Harmonic out;
    out.label = HarmonicLabel(h.label.two_j, h.label.m1 - 1, h.label.m2 - 1);
    const TrigPoly num = ladder_radial(h.radial, h.label.m1, h.label.m2, true);
    out.radial = num.scaled(SqrtRational(Rational(1)) / ladder_coefficient(h.label.two_j, two_mI));
    return out;
}

Harmonic lower_K(const Harmonic& h) {
    const int two_mK = h.label.two_mK();
    if (two_mK <= -h.label.two_j)
        throw LadderBottom("lower_K: m_K already at -j");
    Harmonic out;
    out.label = HarmonicLabel(h.label.two_j, h.label.m1 - 1, h.label.m2 + 1);
    const TrigPoly num = ladder_radial(h.radial, h.label.m1, h.label.m2, false);
    out.radial = num.scaled(SqrtRational(Rational(1)) / ladder_coefficient(h.label.two_j, two_mK));
    return out;
}

Harmonic generate(const HarmonicLabel& label) {
    if (!HarmonicLabel::is_valid(label.two_j, label.m1, label.m2))
        throw InvalidLabel("generate: invalid label");
    Harmonic h = highest_weight(label.two_j);
    const int steps_I = (label.two_j - label.two_mI()) / 2;
    const int steps_K = (label.two_j - label.two_mK()) / 2;
    for (int i = 0; i < steps_I; ++i) h = lower_I(h);
    for (int k = 0; k < steps_K; ++k) h = lower_K(h);
    return h;
}

std::vector<HarmonicLabel> labels_for(int two_j) {
    std::vector<HarmonicLabel> out;
    for (int two_mI = -two_j; two_mI <= two_j; two_mI += 2)
        for (int two_mK = -two_j; two_mK <= two_j; two_mK += 2)
            out.emplace_back(two_j, (two_mI + two_mK) / 2, (two_mI - two_mK) / 2);
    return out;
}

GridFn sample(const Harmonic& h, const QuadratureGrid& grid) {
    // radial profile depends on t only; phases factorize
    std::vector<double> radial(grid.nt());
    for (int it = 0; it < grid.nt(); ++it)
        radial[it] = h.radial.eval(grid.t_node(it)) / kPi;
    GridFn out(grid.size());
    for (int it = 0; it < grid.nt(); ++it)
        for (int ia = 0; ia < grid.na(); ++ia) {
            const Cplx pa = std::polar(radial[it], h.label.m1 * grid.alpha_node(ia));
            for (int ib = 0; ib < grid.nb(); ++ib)
                out[grid.index(it, ia, ib)] =
                    pa * std::polar(1.0, h.label.m2 * grid.beta_node(ib));
        }
    return out;
}

Cplx inner_product(const GridFn& f, const GridFn& g, const QuadratureGrid& grid) {
    Cplx acc(0.0, 0.0);
    for (int it = 0; it < grid.nt(); ++it) {
        Cplx slab(0.0, 0.0);
        const std::size_t base = grid.index(it, 0, 0);
        const std::size_t n = static_cast<std::size_t>(grid.na()) * grid.nb();
        for (std::size_t r = 0; r < n; ++r) slab += std::conj(f[base + r]) * g[base + r];
        acc += grid.volume_weight(it) * slab;
    }
    return acc;
}

Cplx inner_product(const Harmonic& h1, const Harmonic& h2, const QuadratureGrid& grid) {
    return inner_product(sample(h1, grid), sample(h2, grid), grid);
}

GridFn apply_generator(Generator g, const GridFn& f, const QuadratureGrid& grid) {
    const Cplx I(0.0, 1.0);

    switch (g) {
        case Generator::L3:
            [[fallthrough]];
        case Generator::M3:
        case Generator::I3:
        case Generator::K3: {
            GridFn fa = (g == Generator::M3) ? grid.d_beta(f) : grid.d_alpha(f);
            if (g == Generator::L3 || g == Generator::M3) {
                for (auto& v : fa) v /= I;
                return fa;
            }
            GridFn fb = grid.d_beta(f);
            GridFn out(f.size());
            const double sign = (g == Generator::I3) ? 1.0 : -1.0;
            for (std::size_t q = 0; q < f.size(); ++q)
                out[q] = (fa[q] + sign * fb[q]) / (2.0 * I);
            return out;
        }
        default:
            break;
    }

    GridFn ft = grid.d_t(f);
    GridFn fa = grid.d_alpha(f);
    GridFn fb = grid.d_beta(f);
    GridFn out(f.size());

    for (int it = 0; it < grid.nt(); ++it) {
        const double t = grid.t_node(it);
        const double tn = std::tan(0.5 * t);
        const double ct = 1.0 / tn;
        for (int ia = 0; ia < grid.na(); ++ia) {
            const double al = grid.alpha_node(ia);
            const double ca = std::cos(al), sa = std::sin(al);
            for (int ib = 0; ib < grid.nb(); ++ib) {
                const double be = grid.beta_node(ib);
                const double cb = std::cos(be), sb = std::sin(be);
                const std::size_t q = grid.index(it, ia, ib);
                Cplx v(0.0, 0.0);
                switch (g) {
                    case Generator::L1:
                        v = (2.0 * sa * cb * ft[q] - tn * ca * cb * fa[q] -
                             ct * sa * sb * fb[q]) / I;
                        break;
                    case Generator::L2:
                        v = (-2.0 * ca * cb * ft[q] - tn * sa * cb * fa[q] +
                             ct * ca * sb * fb[q]) / I;
                        break;
                    case Generator::M1:
                        v = (2.0 * ca * sb * ft[q] + tn * sa * sb * fa[q] +
                             ct * ca * cb * fb[q]) / I;
                        break;
                    case Generator::M2:
                        v = (2.0 * sa * sb * ft[q] - tn * ca * sb * fa[q] +
                             ct * sa * cb * fb[q]) / I;
                        break;
                    case Generator::Iplus:
                        v = std::polar(1.0, al + be) *
                            (-2.0 * I * ft[q] - tn * fa[q] + ct * fb[q]) / (2.0 * I);
                        break;
                    case Generator::Iminus:
                        v = std::polar(1.0, -(al + be)) *
                            (2.0 * I * ft[q] - tn * fa[q] + ct * fb[q]) / (2.0 * I);
                        break;
                    case Generator::Kplus:
                        v = std::polar(1.0, al - be) *
                            (-2.0 * I * ft[q] - tn * fa[q] - ct * fb[q]) / (2.0 * I);
                        break;
                    case Generator::Kminus:
                        v = std::polar(1.0, -(al - be)) *
                            (2.0 * I * ft[q] - tn * fa[q] - ct * fb[q]) / (2.0 * I);
                        break;
                    default:
                        break;
                }
                out[q] = v;
            }
        }
    }
    return out;
}

nlohmann::ordered_json harmonic_to_json(const Harmonic& h) {
    nlohmann::ordered_json j;
    j["two_j"] = h.label.two_j;
    j["m1"] = h.label.m1;
    j["m2"] = h.label.m2;
    nlohmann::ordered_json monos = nlohmann::ordered_json::array();
    for (const auto& [key, c] : h.radial.monomials()) {
        nlohmann::ordered_json m;
        m["a"] = key.first;
        m["b"] = key.second;
        m["coeff_rational"] = c.factor().str();
        m["coeff_radicand"] = c.radicand();
        monos.push_back(m);
    }
    j["monomials"] = monos;
    return j;
}

Harmonic harmonic_from_json(const nlohmann::ordered_json& j) {
    Harmonic h;
    h.label = HarmonicLabel(j.at("two_j").get<int>(), j.at("m1").get<int>(),
                            j.at("m2").get<int>());
    for (const auto& m : j.at("monomials")) {
        const Rational q = Rational::parse(m.at("coeff_rational").get<std::string>());
        const long long r = m.at("coeff_radicand").get<long long>();
        h.radial.add(m.at("a").get<int>(), m.at("b").get<int>(),
                     SqrtRational(q) * SqrtRational::sqrt_of(Rational(r)));
    }
    return h;
}

}  // namespace berrylink
