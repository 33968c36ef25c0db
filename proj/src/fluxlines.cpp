#include "berrylink/fluxlines.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "berrylink/berry.hpp"

namespace berrylink {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

DualFieldSample dual_field(const MapSpec& hopf, const AngleCoordS3& p) {
    const CurvatureS3 F = curvature_from_h(hopf, p);
    return {2.0 * F.F_ab, -2.0 * F.F_tb, 2.0 * F.F_ta};
}

FluxLoop trace_loop(double t0, double delta0, int n_samples, const MapSpec& spec) {
    if (t0 <= 0.0 || t0 >= kPi)
        throw ConfigError("trace_loop: t0 must lie in (0, pi)");
    if (n_samples < 64) throw SizeError("trace_loop: n_samples must be >= 64");
    if (spec.kind != MapSpec::Kind::HopfS3)
        throw DomainMismatch("trace_loop: tangency spec must be a Hopf variant");

    const double s_half = std::sin(0.5 * t0);
    if (1.0 - s_half < 1e-9)
        throw PoleError("trace_loop: the whole loop runs through the projection pole");

    // pick a beta offset whose samples all clear the pole denominator
    double offset = 0.0;
    const double ds = kTwoPi / n_samples;
    for (int attempt = 0; attempt < 8; ++attempt) {
        bool ok = true;
        for (int k = 0; k < n_samples; ++k) {
            const double beta = -0.5 * delta0 + k * ds + offset;
            if (1.0 - s_half * std::sin(beta) < 1e-12) {
                ok = false;
                break;
            }
        }
        if (ok) break;
        offset += 0.125 * ds;
        if (attempt == 7) throw PoleError("trace_loop: cannot rotate clear of the pole");
    }

    FluxLoop loop;
    loop.t0 = t0;
    loop.delta0 = delta0;
    loop.beta_offset = offset;
    loop.line.closed = true;
    loop.line.pts.reserve(n_samples + 1);

    // The offset shifts alpha and beta together, i.e. re-phases the sample
    // points along the same geometric curve (alpha - beta stays delta0), so
    // no ambient un-rotation is needed; the offset is recorded in the export.
    for (int k = 0; k < n_samples; ++k) {
        const double s = k * ds;
        const AngleCoordS3 q(t0, 0.5 * delta0 + s + offset, -0.5 * delta0 + s + offset);
        loop.line.pts.push_back(stereographic_project(q));
    }
    loop.line.pts.push_back(loop.line.pts.front());

    // tangency of the traced direction (0, 1, 1)/sqrt(2) against B in chart
    double min_align = 1.0;
    for (int c = 0; c < 8; ++c) {
        const double s = c * kTwoPi / 8.0 + 0.1;
        const AngleCoordS3 q(t0, 0.5 * delta0 + s, -0.5 * delta0 + s);
        const DualFieldSample B = dual_field(spec, q);
        const double norm =
            std::sqrt(B.B_t * B.B_t + B.B_alpha * B.B_alpha + B.B_beta * B.B_beta);
        if (norm == 0.0) {
            min_align = 0.0;
            continue;
        }
        const double cosine = (B.B_alpha + B.B_beta) / (std::sqrt(2.0) * norm);
        min_align = std::min(min_align, std::abs(cosine));
    }
    loop.alignment = min_align;
    return loop;
}

Eigen::MatrixXd linking_matrix(const std::vector<FluxLoop>& loops) {
    const int n = static_cast<int>(loops.size());
    Eigen::MatrixXd lk = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = linking_number(loops[i].line, loops[j].line);
            lk(i, j) = v;
            lk(j, i) = v;
        }
    return lk;
}

LinkingDemo linking_demo(const std::vector<double>& t_list,
                         const std::vector<double>& delta_list, const MapSpec& spec,
                         int n_samples) {
    std::vector<std::pair<double, double>> params;
    for (double t0 : t_list)
        for (double d0 : delta_list) params.emplace_back(t0, d0);
    for (std::size_t i = 0; i < params.size(); ++i)
        for (std::size_t j = i + 1; j < params.size(); ++j) {
            const bool same_t = std::abs(params[i].first - params[j].first) < 1e-12;
            const double dd = std::remainder(params[i].second - params[j].second, kTwoPi);
            if (same_t && std::abs(dd) < 1e-12)
                throw CurvesTooClose("linking_demo: coincident (t0, delta0) pair");
        }

    LinkingDemo demo;
    demo.loops.reserve(params.size());
    for (const auto& [t0, d0] : params)
        demo.loops.push_back(trace_loop(t0, d0, n_samples, spec));
    demo.matrix = linking_matrix(demo.loops);
    return demo;
}

std::vector<FluxLoop> fig1_loops(int n_samples) {
    std::vector<FluxLoop> loops;
    for (int k = 0; k < 10; ++k)
        loops.push_back(trace_loop(0.3 * kPi, 0.2 * kPi * k, n_samples));
    loops.push_back(trace_loop(0.2 * kPi, 0.0, n_samples));
    loops.push_back(trace_loop(0.7 * kPi, 0.0, n_samples));
    return loops;
}

void export_loops_json(const std::vector<FluxLoop>& loops, std::ostream& os) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const FluxLoop& loop : loops) {
        nlohmann::ordered_json rec;
        rec["t0"] = loop.t0;
        rec["delta0"] = loop.delta0;
        rec["beta_offset"] = loop.beta_offset;
        nlohmann::ordered_json pts = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i + 1 < loop.line.pts.size(); ++i) {
            const Eigen::Vector3d& p = loop.line.pts[i];
            pts.push_back({p.x(), p.y(), p.z()});
        }
        rec["points"] = pts;
        arr.push_back(rec);
    }
    os << arr.dump(2) << '\n';
    if (!os) throw IoError("export_loops_json: write failed");
}

std::vector<FluxLoop> import_loops_json(std::istream& is) {
    nlohmann::ordered_json arr;
    try {
        is >> arr;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("import_loops_json: ") + e.what());
    }
    std::vector<FluxLoop> loops;
    for (const auto& rec : arr) {
        FluxLoop loop;
        loop.t0 = rec.at("t0").get<double>();
        loop.delta0 = rec.at("delta0").get<double>();
        loop.beta_offset = rec.value("beta_offset", 0.0);
        for (const auto& p : rec.at("points"))
            loop.line.pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>(),
                                       p.at(2).get<double>());
        if (!loop.line.pts.empty()) loop.line.pts.push_back(loop.line.pts.front());
        loop.line.closed = true;
        loops.push_back(std::move(loop));
    }
    return loops;
}

void export_loops_obj(const std::vector<FluxLoop>& loops, std::ostream& os) {
    int base = 1;
    int id = 0;
    for (const FluxLoop& loop : loops) {
        os << "o loop_" << id++ << "\n";
        const std::size_t n = loop.line.pts.size() - 1;
        for (std::size_t i = 0; i < n; ++i) {
            const Eigen::Vector3d& p = loop.line.pts[i];
            os << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << "\n";
        }
        os << "l";
        for (std::size_t i = 0; i < n; ++i) os << ' ' << base + static_cast<int>(i);
        os << ' ' << base << "\n";
        base += static_cast<int>(n);
    }
    if (!os) throw IoError("export_loops_obj: write failed");
}

}  // namespace berrylink
