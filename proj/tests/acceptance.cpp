// Acceptance suite: one line per criterion, PASS/FAIL with the measured
// value against its pinned tolerance. Exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "berrylink/berry.hpp"
#include "berrylink/fluxlines.hpp"
#include "berrylink/harmonics.hpp"
#include "berrylink/spectra.hpp"
#include "berrylink/topo.hpp"

using namespace berrylink;

namespace {

constexpr double kPi = std::numbers::pi;
int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name,
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

// 1. Chern quantization on a 128x256 grid, < 2 s per map.
void criterion_1() {
    const GridS2 grid(128, 256);
    double worst = 0.0, worst_time = 0.0;
    for (int n = 0; n <= 4; ++n) {
        const auto t0 = std::chrono::steady_clock::now();
        const InvariantResult c = chern_number(MapSpec::pontrjagin(n), grid);
        worst_time = std::max(worst_time, seconds_since(t0));
        worst = std::max(worst, std::abs(c.raw - 0.5 * n));
    }
    report(1, "chern_number(PontrjaginS2(n)) = n/2, n = 0..4", worst < 1e-8 && worst_time < 2.0,
           fmt("max |C - n/2| = %.3e (tol 1e-8), max %.2f s (limit 2 s)", worst, worst_time));
}

// 2. Spin-1 band Chern number via the plaquette method.
void criterion_2() {
    const InvariantResult c = chern_number_plaquette(spin1_identity_field(), 2, 64, 64);
    report(2, "spin-1 identity map, lambda=+1 band: C = 1", std::abs(c.raw - 1.0) < 1e-6,
           fmt("|C - 1| = %.3e (tol 1e-6)", std::abs(c.raw - 1.0)));
}

// 3. Curvature theorem: F from A vs F from h.
void criterion_3() {
    double worst = 0.0;
    for (int m : {1, 2, 3})
        for (bool deformed : {true, false}) {
            const MapSpec spec = MapSpec::hopf(m, deformed);
            for (int i = 0; i < 16; ++i)
                for (int j = 0; j < 16; ++j)
                    for (int k = 0; k < 16; ++k) {
                        const AngleCoordS3 p(kPi * (i + 0.5) / 16, 2 * kPi * j / 16,
                                             2 * kPi * k / 16);
                        const CurvatureS3 fa = curvature_from_A(spec, p);
                        const CurvatureS3 fh = curvature_from_h(spec, p);
                        worst = std::max({worst, std::abs(fa.F_ta - fh.F_ta),
                                          std::abs(fa.F_tb - fh.F_tb),
                                          std::abs(fa.F_ab - fh.F_ab)});
                    }
        }
    for (int n : {1, 2, 3}) {
        const MapSpec spec = MapSpec::pontrjagin(n);
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) {
                const AngleCoordS2 p(kPi * (i + 0.5) / 16, 2 * kPi * j / 16);
                worst = std::max(worst, std::abs(curvature_from_A(spec, p).F_theta_phi -
                                                 curvature_from_h(spec, p).F_theta_phi));
            }
    }
    report(3, "curvature_from_A == curvature_from_h (Hopf m=1..3, Pontrjagin n=1..3)",
           worst < 1e-6, fmt("max deviation = %.3e (tol 1e-6)", worst));
}

// 4. Chern-Simons scaling, deformation invariance, raw value; < 10 s at 64^3.
void criterion_4() {
    const auto t0 = std::chrono::steady_clock::now();
    const QuadratureGrid grid(64, 64, 64);
    std::map<int, double> raw_def;
    for (int m = 1; m <= 4; ++m)
        raw_def[m] = chern_simons_raw(MapSpec::hopf(m, true), grid).raw;

    double worst_ratio = 0.0;
    for (int m = 1; m <= 4; ++m)
        worst_ratio = std::max(worst_ratio, std::abs(raw_def[m] / raw_def[1] - m * m));

    double worst_inv = 0.0;
    for (int m : {1, 2, 3})
        worst_inv = std::max(worst_inv,
                             std::abs(chern_simons_raw(MapSpec::hopf(m, false), grid).raw -
                                      raw_def[m]));

    const double raw_err = std::abs(raw_def[1] - (-4.0 * kPi * kPi));
    const double elapsed = seconds_since(t0);
    report(4, "CS: I(m)/I(1) = m^2, deformed == undeformed, I(1) = -4 pi^2",
           worst_ratio < 1e-8 && worst_inv < 1e-6 && raw_err < 1e-8 && elapsed < 10.0,
           fmt("ratio err %.3e (1e-8), invariance %.3e (1e-6), |I(1)+4pi^2| %.3e (1e-8), %.2f s (10 s)",
               worst_ratio, worst_inv, raw_err, elapsed));
}

// 5. Harmonic tables exact + Gram identity within 1e-9.
void criterion_5() {
    auto c = [](long long n, long long d, long long r) {
        return SqrtRational(Rational(n, d)) * SqrtRational::sqrt_of(Rational(r));
    };
    auto poly = [](std::initializer_list<std::tuple<int, int, SqrtRational>> monos) {
        TrigPoly p;
        for (const auto& [a, b, cc] : monos) p.add(a, b, cc);
        return p;
    };
    const std::vector<std::pair<HarmonicLabel, TrigPoly>> table = {
        {HarmonicLabel(0, 0, 0), poly({{0, 0, c(1, 2, 2)}})},
        {HarmonicLabel(1, 1, 0), poly({{1, 0, c(1, 1, 1)}})},
        {HarmonicLabel(1, 0, 1), poly({{0, 1, c(-1, 1, 1)}})},
        {HarmonicLabel(1, 0, -1), poly({{0, 1, c(-1, 1, 1)}})},
        {HarmonicLabel(1, -1, 0), poly({{1, 0, c(-1, 1, 1)}})},
        {HarmonicLabel(2, 2, 0), poly({{2, 0, c(1, 2, 6)}})},
        {HarmonicLabel(2, 1, 1), poly({{1, 1, c(-1, 1, 3)}})},
        {HarmonicLabel(2, 0, 2), poly({{0, 2, c(1, 2, 6)}})},
        {HarmonicLabel(2, 1, -1), poly({{1, 1, c(-1, 1, 3)}})},
        {HarmonicLabel(2, 0, 0), poly({{2, 0, c(-1, 2, 6)}, {0, 2, c(1, 2, 6)}})},
        {HarmonicLabel(2, -1, 1), poly({{1, 1, c(1, 1, 3)}})},
        {HarmonicLabel(2, 0, -2), poly({{0, 2, c(1, 2, 6)}})},
        {HarmonicLabel(2, -1, -1), poly({{1, 1, c(1, 1, 3)}})},
        {HarmonicLabel(2, -2, 0), poly({{2, 0, c(1, 2, 6)}})},
    };
    bool exact = true;
    for (const auto& [label, expected] : table)
        if (!(generate(label).radial == expected)) exact = false;

    const QuadratureGrid grid(32, 32, 32);
    std::vector<GridFn> fields;
    for (int two_j = 0; two_j <= 4; ++two_j)
        for (const HarmonicLabel& label : labels_for(two_j))
            fields.push_back(sample(generate(label), grid));
    double gram_err = 0.0;
    for (std::size_t i = 0; i < fields.size(); ++i)
        for (std::size_t j = i; j < fields.size(); ++j) {
            const Cplx g = inner_product(fields[i], fields[j], grid);
            gram_err = std::max(gram_err, std::abs(g - (i == j ? 1.0 : 0.0)));
        }

    report(5, "harmonic tables exact (two_j <= 2), Gram identity (two_j <= 4)",
           exact && gram_err < 1e-9,
           fmt("tables %s, Gram max err %.3e (tol 1e-9)", exact ? "exact" : "MISMATCH",
               gram_err));
}

// 6. Residuals < 1e-6 for two_j <= 4, m = 0..3; radial agreement; multiplicities.
void criterion_6() {
    const auto t0 = std::chrono::steady_clock::now();
    const QuadratureGrid grid(96, 12, 12);
    double worst_res = 0.0;
    for (int m = 0; m <= 3; ++m)
        for (int two_j = 0; two_j <= 4; ++two_j)
            for (const HarmonicLabel& label : labels_for(two_j))
                worst_res = std::max(worst_res, residual(label, FieldStrength(m), grid));

    double worst_radial = 0.0;
    for (int m1 = -2; m1 <= 2; ++m1)
        for (int m2 = -2; m2 <= 2; ++m2) {
            const std::vector<double> num = radial_ode_solve(m1, m2, FieldStrength(1), 3);
            const int start = std::max(std::abs(m1 + m2), std::abs(m1 - m2));
            for (int k = 0; k < 3; ++k) {
                const double exact =
                    eigenvalue_formula(HarmonicLabel(start + 2 * k, m1, m2), 1).to_double();
                worst_radial = std::max(worst_radial, std::abs(num[k] - exact));
            }
        }

    bool mult_ok = true;
    const std::vector<SpectrumEntry> table = spectrum_table(4, FieldStrength(0));
    std::map<int, int> mult;
    for (const SpectrumEntry& e : table) ++mult[e.level_id];
    for (const SpectrumEntry& e : table)
        if (mult[e.level_id] != (e.label.two_j + 1) * (e.label.two_j + 1)) mult_ok = false;

    const double elapsed = seconds_since(t0);
    report(6, "spectrum: residuals, radial ODE agreement, m=0 multiplicities",
           worst_res < 1e-6 && worst_radial < 1e-5 && mult_ok && elapsed < 30.0,
           fmt("max residual %.3e (1e-6), radial err %.3e (1e-5), mult %s, %.1f s (30 s)",
               worst_res, worst_radial, mult_ok ? "ok" : "BAD", elapsed));
}

// 7. Zeeman splitting of the two_j = 1 block at m = 1, exact rational grouping.
void criterion_7() {
    std::map<std::pair<long long, long long>, int> counts;
    for (const SpectrumEntry& e : spectrum_table(1, FieldStrength(1)))
        if (e.label.two_j == 1) ++counts[{e.lambda.num(), e.lambda.den()}];
    const bool ok = counts.size() == 2 && counts.count({1, 2}) && counts.at({1, 2}) == 2 &&
                    counts.count({3, 2}) && counts.at({3, 2}) == 2;
    report(7, "Zeeman: two_j = 1 at m = 1 splits into {1/2, 3/2} x2", ok,
           ok ? "exact rational degeneracies {1/2: 2, 3/2: 2}" : "unexpected grouping");
}

// 8. Fig-1 linking: 12 loops, all pairs |Lk| = 1; circle control; < 20 s.
void criterion_8() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<FluxLoop> loops = fig1_loops(512);
    const Eigen::MatrixXd lk = linking_matrix(loops);
    double worst = 0.0;
    for (int i = 0; i < lk.rows(); ++i)
        for (int j = 0; j < lk.cols(); ++j)
            if (i != j) worst = std::max(worst, std::abs(std::abs(lk(i, j)) - 1.0));

    Polyline3 c1, c2;
    for (int k = 0; k <= 256; ++k) {
        const double a = 2.0 * kPi * (k % 256) / 256;
        c1.pts.emplace_back(std::cos(a), std::sin(a), 0.0);
        c2.pts.emplace_back(10.0 + std::cos(a), std::sin(a), 0.0);
    }
    const double control = std::abs(linking_number(c1, c2));
    const double elapsed = seconds_since(t0);
    report(8, "linking: 12 reference loops all |Lk| = 1, disjoint circles 0",
           worst < 1e-3 && control < 1e-6 && elapsed < 20.0,
           fmt("max ||Lk|-1| = %.3e (1e-3), control %.3e (1e-6), %.1f s (20 s)", worst,
               control, elapsed));
}

// 9. Christoffel bridge on the unit sphere over a 32^2 sample.
void criterion_9() {
    const SurfacePatch sphere = SurfacePatch::unit_sphere();
    double worst = 0.0;
    const double margin = 0.15;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) {
            const double u = margin + (kPi - 2 * margin) * (i + 0.5) / 32;
            const double v = 2 * kPi * j / 32;
            worst = std::max(worst, riemann_vs_curvature(sphere, u, v));
        }
    report(9, "bridge: max |R + F| on the unit sphere", worst < 1e-5,
           fmt("max |R + F| = %.3e (tol 1e-5)", worst));
}

// 10. Operator identity H = (2/M)[ (I^2+K^2)/2 - m I3 + m^2/4 ].
void criterion_10() {
    const QuadratureGrid grid(64, 12, 12);
    double worst = 0.0;
    for (int m : {0, 1, 2})
        worst = std::max(worst, operator_identity_check(FieldStrength(m), grid));
    report(10, "operator identity pipelines agree for m = 0, 1, 2", worst < 1e-6,
           fmt("max relative deviation = %.3e (tol 1e-6)", worst));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
