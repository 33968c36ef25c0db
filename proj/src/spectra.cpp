#include "berrylink/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace berrylink {

Rational eigenvalue_formula(const HarmonicLabel& label, int m) {
    if (m < 0) throw ConfigError("eigenvalue_formula: m must be >= 0");
    const long long tj = label.two_j;
    return Rational(tj * (tj + 2) - 2LL * m * (label.m1 + label.m2) + 1LL * m * m, 4);
}

GridFn magnetic_laplacian_apply(const FieldStrength& field, const GridFn& psi,
                                const QuadratureGrid& grid) {
    const double m = field.m;
    const Cplx I(0.0, 1.0);
    GridFn ft = grid.d_t(psi);
    GridFn ftt = grid.d2_t(psi);
    GridFn fa = grid.d_alpha(psi);
    GridFn faa = grid.d2_alpha(psi);
    GridFn fb = grid.d_beta(psi);
    GridFn fbb = grid.d2_beta(psi);

    GridFn out(psi.size());
    const double pref = -2.0 / field.mass;
    for (int it = 0; it < grid.nt(); ++it) {
        const double t = grid.t_node(it);
        const double c2 = MetricDiagS3::g_aa(t);  // cos^2(t/2)
        const double s2 = MetricDiagS3::g_bb(t);  // sin^2(t/2)
        const double cot = std::cos(t) / std::sin(t);
        const double Aa = m * c2, Ab = m * s2;
        const std::size_t base = grid.index(it, 0, 0);
        const std::size_t n = static_cast<std::size_t>(grid.na()) * grid.nb();
        for (std::size_t r = 0; r < n; ++r) {
            const std::size_t q = base + r;
            const Cplx cov_a = faa[q] - 2.0 * I * Aa * fa[q] - Aa * Aa * psi[q];
            const Cplx cov_b = fbb[q] - 2.0 * I * Ab * fb[q] - Ab * Ab * psi[q];
            out[q] = pref * (ftt[q] + cot * ft[q] + cov_a / (4.0 * c2) + cov_b / (4.0 * s2));
        }
    }
    return out;
}

double residual(const HarmonicLabel& label, const FieldStrength& field,
                const QuadratureGrid& grid) {
    const GridFn psi = sample(generate(label), grid);
    const GridFn hpsi = magnetic_laplacian_apply(field, psi, grid);
    const double energy = 2.0 * eigenvalue_formula(label, field.m).to_double() / field.mass;
    GridFn diff(psi.size());
    for (std::size_t q = 0; q < psi.size(); ++q) diff[q] = hpsi[q] - energy * psi[q];
    return grid.norm_l2(diff) / grid.norm_l2(psi);
}

namespace {

std::vector<double> radial_eigs_at(int m1, int m2, const FieldStrength& field, int n) {
    // Cell-centered grid in u = cos t. The raw operator has 1/(1 +- u)
    // potentials whose eigenfunctions vanish like (1 +- u)^{|m|/2}, which
    // ruins plain second-order convergence; factoring that boundary behavior
    // out, Theta = (1+u)^{a/2} (1-u)^{b/2} g with a = |m1|, b = |m2|, turns
    // the problem into the Jacobi-weight form
    //   -(1/rho) d/du[ rho (1-u^2) dg/du ] + s(s+1) g = lambda' g,
    // rho = (1+u)^a (1-u)^b, s = (a+b)/2, with smooth eigenfunctions g.
    const int a = std::abs(m1), b = std::abs(m2);
    const double s = 0.5 * (a + b);
    const double shift =
        s * (s + 1.0) + field.m * (field.m - 2.0 * m1 - 2.0 * m2) / 4.0;

    const double h = 2.0 / n;
    auto rho = [&](double u) { return std::pow(1.0 + u, a) * std::pow(1.0 - u, b); };
    auto p = [&](double u) {
        return std::pow(1.0 + u, a + 1) * std::pow(1.0 - u, b + 1);
    };

    Eigen::VectorXd diag(n), sub(n - 1);
    std::vector<double> rho_c(n);
    for (int i = 0; i < n; ++i) rho_c[i] = rho(-1.0 + (i + 0.5) * h);
    for (int i = 0; i < n; ++i) {
        const double u = -1.0 + (i + 0.5) * h;
        const double pl = p(u - 0.5 * h), pr = p(u + 0.5 * h);
        diag(i) = (pl + pr) / (h * h * rho_c[i]) + shift;
        if (i + 1 < n) sub(i) = -pr / (h * h * std::sqrt(rho_c[i] * rho_c[i + 1]));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("radial_ode_solve: tridiagonal eigensolve failed");
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace

std::vector<double> radial_ode_solve(int m1, int m2, const FieldStrength& field,
                                     int k, int n_cells) {
    if (k < 1) throw ConfigError("radial_ode_solve: k must be >= 1");
    if (n_cells < 8) throw SizeError("radial_ode_solve: n_cells too small");
    const std::vector<double> coarse = radial_eigs_at(m1, m2, field, n_cells / 2);
    const std::vector<double> fine = radial_eigs_at(m1, m2, field, n_cells);
    std::vector<double> out(k);
    for (int i = 0; i < k; ++i)
        out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;  // h^2 Richardson
    return out;
}

std::vector<SpectrumEntry> spectrum_table(int two_j_max, const FieldStrength& field,
                                          const QuadratureGrid* verify_grid) {
    if (two_j_max < 0) throw ConfigError("spectrum_table: two_j_max must be >= 0");
    std::vector<SpectrumEntry> entries;
    for (int two_j = 0; two_j <= two_j_max; ++two_j)
        for (const HarmonicLabel& label : labels_for(two_j)) {
            SpectrumEntry e;
            e.label = label;
            e.lambda = eigenvalue_formula(label, field.m);
            e.energy = 2.0 * e.lambda.to_double() / field.mass;
            e.residual = verify_grid ? residual(label, field, *verify_grid) : -1.0;
            e.level_id = -1;
            entries.push_back(e);
        }

    std::sort(entries.begin(), entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        if (a.label.two_j != b.label.two_j) return a.label.two_j < b.label.two_j;
        if (a.label.m1 != b.label.m1) return a.label.m1 < b.label.m1;
        return a.label.m2 < b.label.m2;
    });

    int level = -1;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i == 0 || entries[i].lambda != entries[i - 1].lambda) ++level;
        entries[i].level_id = level;
    }
    return entries;
}

double operator_identity_check(const FieldStrength& field, const QuadratureGrid& grid) {
    auto apply = [&](Generator g, const GridFn& f) { return apply_generator(g, f, grid); };

    double worst = 0.0;
    for (int two_j = 0; two_j <= 2; ++two_j)
        for (const HarmonicLabel& label : labels_for(two_j)) {
            const GridFn psi = sample(generate(label), grid);
            const GridFn direct = magnetic_laplacian_apply(field, psi, grid);

            // (I^2 + K^2)/2 - m I3 + m^2/4 via ladder compositions:
            // I^2 = (I+ I- + I- I+)/2 + I3^2, same for K.
            auto casimir = [&](Generator plus, Generator minus, Generator third) {
                const GridFn up = apply(plus, psi);
                const GridFn dn = apply(minus, psi);
                const GridFn a = apply(minus, up);
                const GridFn b = apply(plus, dn);
                const GridFn t3 = apply(third, apply(third, psi));
                GridFn out(psi.size());
                for (std::size_t q = 0; q < psi.size(); ++q)
                    out[q] = 0.5 * (a[q] + b[q]) + t3[q];
                return out;
            };
            const GridFn i2 = casimir(Generator::Iplus, Generator::Iminus, Generator::I3);
            const GridFn k2 = casimir(Generator::Kplus, Generator::Kminus, Generator::K3);
            const GridFn i3 = apply(Generator::I3, psi);

            const double m = field.m;
            GridFn composed(psi.size());
            for (std::size_t q = 0; q < psi.size(); ++q)
                composed[q] = (2.0 / field.mass) *
                              (0.5 * (i2[q] + k2[q]) - m * i3[q] + 0.25 * m * m * psi[q]);

            GridFn diff(psi.size());
            for (std::size_t q = 0; q < psi.size(); ++q) diff[q] = direct[q] - composed[q];
            worst = std::max(worst, grid.norm_l2(diff) / grid.norm_l2(psi));
        }
    return worst;
}

}  // namespace berrylink
