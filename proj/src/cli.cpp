#include "berrylink/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>

#include "berrylink/berry.hpp"
#include "berrylink/fluxlines.hpp"
#include "berrylink/harmonics.hpp"
#include "berrylink/hmap.hpp"
#include "berrylink/manifold.hpp"
#include "berrylink/spectra.hpp"
#include "berrylink/topo.hpp"

namespace berrylink::cli {

namespace {

using nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

ordered_json conventions_block() {
    ordered_json c;
    c["orientation_s3"] = "dt^dalpha^dbeta > 0";
    c["orientation_s2"] = "eps^{theta phi} = +1";
    c["gauge"] = "hopf-Z: A_t = 0, A_alpha = m cos^2(theta/2), A_beta = m sin^2(theta/2)";
    c["chern_normalization"] = "C = P/2 (half-integer quantized)";
    c["cs_raw"] = "integral of A ^ dA over S^3";
    return c;
}

ordered_json meta_block(const std::string& command, ordered_json config) {
    ordered_json m;
    m["tool"] = "berrylink";
    m["version"] = kVersion;
    m["command"] = command;
    m["config"] = std::move(config);
    m["conventions"] = conventions_block();
    return m;
}

ordered_json invariant_json(const InvariantResult& r) {
    ordered_json j;
    j["raw"] = r.raw;
    j["normalized"] = r.normalized;
    j["rounded"] = r.rounded;
    j["residual"] = r.residual;
    return j;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw IoError("cannot open output file: " + out_path);
    os << text;
    if (!os) throw IoError("write failed: " + out_path);
}

std::vector<double> parse_angle_list(const std::vector<std::string>& tokens) {
    std::vector<double> out;
    for (const std::string& tok : tokens) {
        std::stringstream ss(tok);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.push_back(parse_angle(item));
    }
    return out;
}

// ---------------------------------------------------------------- chern
int cmd_chern(const std::string& map_str, int ntheta, int nphi,
              const std::string& method, int band, double tol,
              const std::string& format, const std::string& out_path) {
    InvariantResult result;
    std::string used_method = method;

    if (map_str == "spin1-identity") {
        used_method = "plaquette";
        const int b = (band < 0) ? 2 : band;
        result = chern_number_plaquette(spin1_identity_field(), b, ntheta, nphi);
    } else {
        const MapSpec spec = MapSpec::parse(map_str);
        if (method == "plaquette") {
            const int b = (band < 0) ? 1 : band;
            result = chern_number_plaquette(hsigma_field(spec), b, ntheta, nphi);
        } else {
            used_method = "hformula";
            result = chern_number(spec, GridS2(ntheta, nphi));
        }
    }

    ordered_json config;
    config["map"] = map_str;
    config["ntheta"] = ntheta;
    config["nphi"] = nphi;
    config["method"] = used_method;
    config["tol"] = tol;
    ordered_json doc;
    doc["meta"] = meta_block("chern", config);
    doc["result"] = invariant_json(result);
    if (format != "json") throw ConfigError("chern: only json output is supported");
    write_output(doc.dump(2) + "\n", out_path);
    if (result.residual > tol)
        throw NumericalError("chern: raw value is not half-integer quantized within " +
                             std::to_string(tol));
    return 0;
}

// ---------------------------------------------------------------- cs
int cmd_cs(const std::string& map_str, int nt, int na, int nb, double tol,
           const std::string& out_path) {
    const MapSpec spec = MapSpec::parse(map_str);
    const QuadratureGrid grid(nt, na, nb);
    const InvariantResult result = chern_simons_raw(spec, grid);
    const double msq = result.raw / (-4.0 * kPi * kPi);

    ordered_json config;
    config["map"] = map_str;
    config["nt"] = nt;
    config["na"] = na;
    config["nb"] = nb;
    config["tol"] = tol;
    ordered_json doc;
    doc["meta"] = meta_block("cs", config);
    doc["result"] = invariant_json(result);
    doc["result"]["msq_units"] = msq;
    write_output(doc.dump(2) + "\n", out_path);
    if (std::abs(msq - result.rounded) > tol)
        throw NumericalError("cs: raw integral is not an m^2 multiple of -4 pi^2 within " +
                             std::to_string(tol));
    return 0;
}

// ---------------------------------------------------------------- spectrum
int cmd_spectrum(int m, int two_j_max, double mass, bool verify, int nt, int na,
                 int nb, const std::string& format, const std::string& out_path) {
    if (na == 0) na = std::max(8, 2 * two_j_max + 4);
    if (nb == 0) nb = na;

    const FieldStrength field(m, mass);
    std::unique_ptr<QuadratureGrid> grid;
    if (verify) grid = std::make_unique<QuadratureGrid>(nt, na, nb);
    const std::vector<SpectrumEntry> entries =
        spectrum_table(two_j_max, field, grid.get());

    ordered_json config;
    config["m"] = m;
    config["two_j_max"] = two_j_max;
    config["mass"] = mass;
    config["verify"] = verify;
    if (verify) {
        config["nt"] = nt;
        config["na"] = na;
        config["nb"] = nb;
    }

    if (format == "csv") {
        std::ostringstream os;
        os << "two_j,m1,m2,mI,mK,lambda,energy,residual,level_id\n";
        for (const SpectrumEntry& e : entries) {
            os << e.label.two_j << ',' << e.label.m1 << ',' << e.label.m2 << ','
               << 0.5 * e.label.two_mI() << ',' << 0.5 * e.label.two_mK() << ','
               << e.lambda.to_double() << ',' << e.energy << ',';
            if (e.residual >= 0.0) os << e.residual;
            os << ',' << e.level_id << '\n';
        }
        write_output(os.str(), out_path);
        return 0;
    }

    ordered_json rows = ordered_json::array();
    for (const SpectrumEntry& e : entries) {
        ordered_json r;
        r["two_j"] = e.label.two_j;
        r["m1"] = e.label.m1;
        r["m2"] = e.label.m2;
        r["mI"] = 0.5 * e.label.two_mI();
        r["mK"] = 0.5 * e.label.two_mK();
        r["lambda"] = e.lambda.to_double();
        r["lambda_exact"] = e.lambda.str();
        r["energy"] = e.energy;
        if (e.residual >= 0.0) r["residual"] = e.residual;
        r["level_id"] = e.level_id;
        rows.push_back(r);
    }

    // level summary: multiplicities per exact lambda
    ordered_json levels = ordered_json::array();
    for (std::size_t i = 0; i < entries.size();) {
        std::size_t j = i;
        while (j < entries.size() && entries[j].level_id == entries[i].level_id) ++j;
        ordered_json lv;
        lv["level_id"] = entries[i].level_id;
        lv["lambda"] = entries[i].lambda.to_double();
        lv["lambda_exact"] = entries[i].lambda.str();
        lv["multiplicity"] = j - i;
        levels.push_back(lv);
        i = j;
    }

    ordered_json doc;
    doc["meta"] = meta_block("spectrum", config);
    doc["levels"] = levels;
    doc["entries"] = rows;
    write_output(doc.dump(2) + "\n", out_path);
    return 0;
}

// ---------------------------------------------------------------- harmonics
int cmd_harmonics(int two_j, const std::string& format, const std::string& out_path) {
    if (two_j < 0) throw ConfigError("harmonics: two_j must be >= 0");
    if (format != "json") throw ConfigError("harmonics: only json output is supported");

    ordered_json arr = ordered_json::array();
    for (const HarmonicLabel& label : labels_for(two_j))
        arr.push_back(harmonic_to_json(generate(label)));

    ordered_json config;
    config["two_j"] = two_j;
    ordered_json doc;
    doc["meta"] = meta_block("harmonics", config);
    doc["coefficient_units"] = "1/pi";
    doc["harmonics"] = arr;
    write_output(doc.dump(2) + "\n", out_path);
    return 0;
}

// ---------------------------------------------------------------- fluxlines
int cmd_fluxlines(bool fig1, const std::vector<double>& t_list,
                  const std::vector<double>& delta_list, int samples,
                  const std::string& map_str, bool with_linking,
                  const std::string& format, const std::string& out_path) {
    const MapSpec spec = MapSpec::parse(map_str);
    std::vector<FluxLoop> loops;
    if (fig1) {
        loops = fig1_loops(samples);
    } else {
        if (t_list.empty() || delta_list.empty())
            throw ConfigError("fluxlines: provide --fig1 or both --t-list and --delta-list");
        for (double t0 : t_list)
            for (double d0 : delta_list) loops.push_back(trace_loop(t0, d0, samples, spec));
    }

    if (format == "obj") {
        std::ostringstream os;
        export_loops_obj(loops, os);
        write_output(os.str(), out_path);
        return 0;
    }

    ordered_json config;
    config["fig1"] = fig1;
    config["samples"] = samples;
    config["map"] = map_str;
    ordered_json doc;
    doc["meta"] = meta_block("fluxlines", config);
    doc["loop_count"] = loops.size();
    ordered_json loop_meta = ordered_json::array();
    for (const FluxLoop& l : loops) {
        ordered_json rec;
        rec["t0"] = l.t0;
        rec["delta0"] = l.delta0;
        rec["beta_offset"] = l.beta_offset;
        rec["alignment"] = l.alignment;
        loop_meta.push_back(rec);
    }
    doc["loops"] = loop_meta;

    if (with_linking && loops.size() >= 2) {
        const Eigen::MatrixXd lk = linking_matrix(loops);
        ordered_json mat = ordered_json::array(), rounded = ordered_json::array();
        for (int i = 0; i < lk.rows(); ++i) {
            ordered_json row = ordered_json::array(), rrow = ordered_json::array();
            for (int j = 0; j < lk.cols(); ++j) {
                row.push_back(lk(i, j));
                rrow.push_back(static_cast<int>(std::lround(lk(i, j))));
            }
            mat.push_back(row);
            rounded.push_back(rrow);
        }
        doc["linking_matrix"] = mat;
        doc["linking_rounded"] = rounded;
    }

    if (!out_path.empty()) {
        // the loops file keeps the bare-array geometry schema; the report
        // (with the linking matrix) goes to stdout
        std::ofstream os(out_path);
        if (!os) throw IoError("cannot open output file: " + out_path);
        export_loops_json(loops, os);
        doc["loops_file"] = out_path;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ostringstream geo;
        export_loops_json(loops, geo);
        doc["geometry"] = ordered_json::parse(geo.str());
        std::cout << doc.dump(2) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- linking
int cmd_linking(const std::string& in_path, const std::string& demo,
                const std::string& out_path) {
    std::vector<FluxLoop> loops;
    ordered_json config;
    if (!in_path.empty()) {
        std::ifstream is(in_path);
        if (!is) throw IoError("cannot open input file: " + in_path);
        loops = import_loops_json(is);
        config["in"] = in_path;
    } else if (demo == "hopf") {
        loops.push_back(trace_loop(0.2 * kPi, 0.0, 512));
        loops.push_back(trace_loop(0.7 * kPi, 0.0, 512));
        config["demo"] = demo;
    } else if (demo == "circles") {
        auto circle = [](const Eigen::Vector3d& center, int n) {
            Polyline3 c;
            for (int k = 0; k <= n; ++k) {
                const double a = 2.0 * kPi * (k % n) / n;
                c.pts.push_back(center + Eigen::Vector3d(std::cos(a), std::sin(a), 0.0));
            }
            c.closed = true;
            return c;
        };
        FluxLoop l1, l2;
        l1.line = circle({0, 0, 0}, 256);
        l2.line = circle({10, 0, 0}, 256);
        loops = {l1, l2};
        config["demo"] = demo;
    } else {
        throw ConfigError("linking: provide --in FILE or --demo hopf|circles");
    }
    if (loops.size() < 2) throw ConfigError("linking: need at least two loops");

    const Eigen::MatrixXd lk = linking_matrix(loops);
    ordered_json mat = ordered_json::array();
    for (int i = 0; i < lk.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < lk.cols(); ++j) row.push_back(lk(i, j));
        mat.push_back(row);
    }
    ordered_json doc;
    doc["meta"] = meta_block("linking", config);
    doc["loop_count"] = loops.size();
    doc["linking_matrix"] = mat;
    write_output(doc.dump(2) + "\n", out_path);
    return 0;
}

// ---------------------------------------------------------------- bridge
int cmd_bridge(const std::string& surface, int ntheta, int nphi, double step,
               const std::string& out_path) {
    SurfacePatch surf = (surface == "plane") ? SurfacePatch::flat_plane()
                                             : SurfacePatch::unit_sphere();
    if (surface != "plane" && surface != "sphere")
        throw ConfigError("bridge: surface must be sphere or plane");

    double worst = 0.0;
    const double margin = 0.15;
    for (int i = 0; i < ntheta; ++i)
        for (int j = 0; j < nphi; ++j) {
            double u, v;
            if (surface == "sphere") {
                u = margin + (kPi - 2.0 * margin) * (i + 0.5) / ntheta;
                v = 2.0 * kPi * j / nphi;
            } else {
                u = -1.0 + 2.0 * (i + 0.5) / ntheta;
                v = -1.0 + 2.0 * (j + 0.5) / nphi;
            }
            worst = std::max(worst, riemann_vs_curvature(surf, u, v, step));
        }

    ordered_json config;
    config["surface"] = surface;
    config["ntheta"] = ntheta;
    config["nphi"] = nphi;
    config["step"] = step;
    ordered_json doc;
    doc["meta"] = meta_block("bridge", config);
    doc["max_abs_R_plus_F"] = worst;
    if (surface == "sphere") {
        const BridgeSample s = projector_connection(surf, 0.25 * kPi, 0.3, step);
        ordered_json probe;
        probe["theta"] = 0.25 * kPi;
        probe["Gamma^phi_{phi theta}"] = s.A[0](1, 1);
        probe["cot(theta)"] = 1.0 / std::tan(0.25 * kPi);
        doc["probe"] = probe;
    }
    write_output(doc.dump(2) + "\n", out_path);
    return 0;
}

}  // namespace

double parse_angle(const std::string& token) {
    std::string t = token;
    double factor = 1.0;
    if (t.size() >= 2 && t.substr(t.size() - 2) == "pi") {
        factor = kPi;
        t = t.substr(0, t.size() - 2);
        if (t.empty()) t = "1";
    }
    try {
        std::size_t pos = 0;
        const double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument(token);
        return v * factor;
    } catch (const std::exception&) {
        throw ConfigError("bad angle token '" + token + "' (use radians or e.g. 0.3pi)");
    }
}

int run(const std::vector<std::string>& args) {
    std::vector<std::string> copy = args;
    std::vector<char*> argv;
    static const std::string prog = "berrylink";
    argv.push_back(const_cast<char*>(prog.c_str()));
    for (std::string& s : copy) argv.push_back(s.data());
    return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, char** argv) {
    CLI::App app{"Berry connections, topological invariants, SO(4) harmonics and "
                 "magnetic spectra on S^2/S^3"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "Optional config file (flags take precedence)");
    app.require_subcommand(1);

    // chern
    auto* chern = app.add_subcommand("chern", "Chern number of the +1 band over S^2");
    std::string ch_map;
    int ch_ntheta = 128, ch_nphi = 256, ch_band = -1;
    double ch_tol = 1e-6;
    std::string ch_method = "auto", ch_format = "json", ch_out;
    chern->add_option("--map", ch_map, "Map spec or spin1-identity")->required();
    chern->add_option("--ntheta", ch_ntheta, "theta resolution");
    chern->add_option("--nphi", ch_nphi, "phi resolution");
    chern->add_option("--method", ch_method, "auto|hformula|plaquette");
    chern->add_option("--band", ch_band, "band index (ascending); default top");
    chern->add_option("--tol", ch_tol, "quantization tolerance (exit 3 beyond it)");
    chern->add_option("--format", ch_format, "json");
    chern->add_option("--out", ch_out, "output path (default stdout)");

    // cs
    auto* cs = app.add_subcommand("cs", "Chern-Simons integral of the Hopf connection");
    std::string cs_map;
    int cs_nt = 64, cs_na = 64, cs_nb = 64;
    double cs_tol = 1e-6;
    std::string cs_out;
    cs->add_option("--map", cs_map, "hopf:m=...,deformed=...")->required();
    cs->add_option("--nt", cs_nt, "t resolution");
    cs->add_option("--na", cs_na, "alpha resolution");
    cs->add_option("--nb", cs_nb, "beta resolution");
    cs->add_option("--tol", cs_tol, "m^2-quantization tolerance (exit 3 beyond it)");
    cs->add_option("--out", cs_out, "output path (default stdout)");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "Magnetic spectrum tables on S^3");
    int sp_m = 0, sp_two_j_max = 2, sp_nt = 64, sp_na = 0, sp_nb = 0;
    double sp_mass = 1.0;
    bool sp_verify = false;
    std::string sp_format = "json", sp_out;
    spectrum->add_option("--m", sp_m, "Hopf winding of the background field");
    spectrum->add_option("--two-j-max", sp_two_j_max, "largest 2j in the table");
    spectrum->add_option("--mass", sp_mass, "particle mass M");
    spectrum->add_flag("--verify", sp_verify, "verify residuals on a grid");
    spectrum->add_option("--nt", sp_nt, "verification t resolution");
    spectrum->add_option("--na", sp_na, "verification alpha resolution (0 = auto)");
    spectrum->add_option("--nb", sp_nb, "verification beta resolution (0 = auto)");
    spectrum->add_option("--format", sp_format, "json|csv");
    spectrum->add_option("--out", sp_out, "output path (default stdout)");

    // harmonics
    auto* harm = app.add_subcommand("harmonics", "Exact SO(4) harmonics for one 2j level");
    int ha_two_j = 0;
    std::string ha_format = "json", ha_out;
    harm->add_option("--two-j", ha_two_j, "doubled weight 2j")->required();
    harm->add_option("--format", ha_format, "json");
    harm->add_option("--out", ha_out, "output path (default stdout)");

    // fluxlines
    auto* flux = app.add_subcommand("fluxlines", "Trace flux loops and their linking");
    bool fl_fig1 = false, fl_nolink = false;
    std::vector<std::string> fl_t, fl_d;
    int fl_samples = 512;
    std::string fl_map = "hopf:m=1,deformed=true", fl_format = "json", fl_out;
    flux->add_flag("--fig1", fl_fig1, "the reference 12-loop parameter set");
    flux->add_option("--t-list", fl_t, "comma-separated t0 values (radians or '0.3pi')");
    flux->add_option("--delta-list", fl_d, "comma-separated alpha-beta offsets");
    flux->add_option("--samples", fl_samples, "samples per loop");
    flux->add_option("--map", fl_map, "Hopf spec used for the tangency check");
    flux->add_flag("--no-linking", fl_nolink, "skip the pairwise linking matrix");
    flux->add_option("--format", fl_format, "json|obj");
    flux->add_option("--out", fl_out, "loops file (report goes to stdout)");

    // linking
    auto* link = app.add_subcommand("linking", "Pairwise Gauss linking numbers");
    std::string lk_in, lk_demo, lk_out;
    link->add_option("--in", lk_in, "loops JSON produced by fluxlines");
    link->add_option("--demo", lk_demo, "hopf|circles");
    link->add_option("--out", lk_out, "output path (default stdout)");

    // bridge
    auto* bridge = app.add_subcommand("bridge", "Christoffel/Riemann vs Berry curvature");
    std::string br_surface = "sphere", br_out;
    int br_ntheta = 32, br_nphi = 32;
    double br_step = 1e-5;
    bridge->add_option("--surface", br_surface, "sphere|plane");
    bridge->add_option("--ntheta", br_ntheta, "sample resolution in u");
    bridge->add_option("--nphi", br_nphi, "sample resolution in v");
    bridge->add_option("--step", br_step, "finite-difference step");
    bridge->add_option("--out", br_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (chern->parsed())
            return cmd_chern(ch_map, ch_ntheta, ch_nphi, ch_method, ch_band, ch_tol, ch_format, ch_out);
        if (cs->parsed()) return cmd_cs(cs_map, cs_nt, cs_na, cs_nb, cs_tol, cs_out);
        if (spectrum->parsed())
            return cmd_spectrum(sp_m, sp_two_j_max, sp_mass, sp_verify, sp_nt, sp_na,
                                sp_nb, sp_format, sp_out);
        if (harm->parsed()) return cmd_harmonics(ha_two_j, ha_format, ha_out);
        if (flux->parsed())
            return cmd_fluxlines(fl_fig1, parse_angle_list(fl_t), parse_angle_list(fl_d),
                                 fl_samples, fl_map, !fl_nolink, fl_format, fl_out);
        if (link->parsed()) return cmd_linking(lk_in, lk_demo, lk_out);
        if (bridge->parsed())
            return cmd_bridge(br_surface, br_ntheta, br_nphi, br_step, br_out);
        throw ConfigError("no subcommand given");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace berrylink::cli
