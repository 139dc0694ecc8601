// santalo-lab: command-line driver for the convex-separation library.
// Subcommands compute lp-ball volumes, mixed volumes, hull centroids,
// intersection volumes, section profiles, the polar centroid pipeline,
// Santalo searches, the half-ball sweep, and the full constant table.
// Reports are JSON (default) or CSV on stdout or --out; progress goes to
// stderr only, and a fixed --seed makes every report byte-reproducible.

#include "CLI11.hpp"

#include "santalo/moments.hpp"
#include "santalo/profile.hpp"
#include "santalo/report.hpp"
#include "santalo/santalo.hpp"
#include "santalo/specfun.hpp"
#include "santalo/version.hpp"
#include "santalo/volmc.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

using namespace santalo;
using report::Value;

namespace {

struct RunConfig {
    std::string command;
    int dim = 200;
    Real a = 1.0;
    Real b = 1.0 / (std::numbers::e - 1.0);
    long samples = 100000;
    int grid_points = 64;
    std::uint64_t seed = 20240001;
    Real gamma = 0.05;
    std::string format = "json";
    std::string out;

    // command-specific extras
    std::string p = "2";
    std::string q = "1";
    Real s = 1.0;
    Real t = 1.0;
    std::string body = "half-ball";
    Real tolerance = 1e-4;
    std::vector<int> dims{4, 16, 64, 256};

    HullBodyParams hull() const { return HullBodyParams{dim, a, b}; }
};

LpExponent parse_exponent(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "oo") return LpExponent::infinity();
    return LpExponent(std::stod(text));
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--dim", cfg.dim, "ambient dimension n")->capture_default_str();
    cmd->add_option("--a", cfg.a, "lower face height a > 0")->capture_default_str();
    cmd->add_option("--b", cfg.b, "upper face height b > 0 (default 1/(e-1))")
        ->capture_default_str();
    cmd->add_option("--samples", cfg.samples, "Monte Carlo samples per estimate")
        ->capture_default_str();
    cmd->add_option("--grid-points", cfg.grid_points, "quadrature grid points")
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "random seed; fixes all stochastic output")
        ->capture_default_str();
    cmd->add_option("--gamma", cfg.gamma, "concentration window padding")->capture_default_str();
    cmd->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", cfg.out, "write the report to this path instead of stdout");
}

Value config_value(const RunConfig& cfg, bool with_pq, bool with_s, bool with_t, bool with_body,
                   bool with_dims) {
    Value c = Value::object();
    c.set("command", Value::of(cfg.command));
    c.set("version", Value::of(kVersion));
    c.set("dim", Value::of(cfg.dim));
    c.set("a", Value::of(cfg.a));
    c.set("b", Value::of(cfg.b));
    c.set("samples", Value::of(static_cast<long long>(cfg.samples)));
    c.set("grid_points", Value::of(cfg.grid_points));
    c.set("seed", Value::of(static_cast<unsigned long long>(cfg.seed)));
    c.set("gamma", Value::of(cfg.gamma));
    c.set("format", Value::of(cfg.format));
    c.set("out", Value::of(cfg.out));
    if (with_pq) {
        c.set("p", Value::of(cfg.p));
        if (cfg.command == "intersect") c.set("q", Value::of(cfg.q));
    }
    if (with_s) c.set("s", Value::of(cfg.s));
    if (with_t) c.set("t", Value::of(cfg.t));
    if (with_body) {
        c.set("body", Value::of(cfg.body));
        c.set("tolerance", Value::of(cfg.tolerance));
    }
    if (with_dims) {
        Value d = Value::array();
        for (int n : cfg.dims) d.push(Value::of(n));
        c.set("dims", std::move(d));
    }
    return c;
}

Value estimate_value(const VolumeEstimate& est) {
    Value v = Value::object();
    v.set("log_volume", Value::of(est.log_value.log_magnitude));
    v.set("std_err_log", Value::of(est.std_err_log));
    v.set("samples", Value::of(static_cast<long long>(est.samples)));
    v.set("method", Value::of(to_string(est.method)));
    return v;
}

void write_text(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + cfg.out);
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
    }
}

void emit(const RunConfig& cfg, const Value& report) {
    write_text(cfg, cfg.format == "csv" ? report.to_csv() : report.to_json());
}

void progress(const char* what, int done, int total) {
    std::fprintf(stderr, "%s %d/%d done\n", what, done, total);
}

// ---------------------------------------------------------------------------
// subcommand handlers

void run_ball_volume(const RunConfig& cfg) {
    const LpExponent p = parse_exponent(cfg.p);
    const LogValue lv = lp_ball_log_volume(p, cfg.dim);
    Value r = Value::object();
    r.set("config", config_value(cfg, true, false, false, false, false));
    Value payload = Value::object();
    payload.set("log_volume", Value::of(lv.log_magnitude));
    if (cfg.dim <= 30) payload.set("volume", Value::of(lv.value()));
    payload.set("root", Value::of(std::exp(lv.log_magnitude / cfg.dim)));
    if (cfg.dim >= 3 && !p.is_infinite() && p.value() == 2.0) {
        const RootBounds b = euclid_ball_root_bounds(cfg.dim);
        payload.set("root_lower_bound", Value::of(b.lower));
        payload.set("root_upper_bound", Value::of(b.upper));
    }
    r.set("result", std::move(payload));
    emit(cfg, r);
}

void run_mixed_volume(const RunConfig& cfg) {
    const MixedVolumeTable table = mixed_volume_table(cfg.dim);
    const LogValue total = minkowski_volume(cfg.dim, cfg.t);
    Value r = Value::object();
    r.set("config", config_value(cfg, false, false, true, false, false));
    Value rows = Value::array();
    for (int k = 0; k <= cfg.dim; ++k) {
        Value row = Value::object();
        row.set("k", Value::of(k));
        row.set("log_mixed_volume", Value::of(table.entry(k).log_magnitude));
        if (cfg.dim <= 30) row.set("mixed_volume", Value::of(table.entry(k).value()));
        rows.push(std::move(row));
    }
    Value payload = Value::object();
    payload.set("log_minkowski_volume", Value::of(total.log_magnitude));
    if (cfg.dim <= 30) payload.set("minkowski_volume", Value::of(total.value()));
    payload.set("table", std::move(rows));
    r.set("result", std::move(payload));
    emit(cfg, r);
}

void run_centroid_hull(const RunConfig& cfg) {
    const Real c = cfg.a + cfg.b;
    const Real ratio = centroid_ratio_sequence(cfg.dim);
    const Real limit = 1.0 - 1.0 / std::numbers::e;
    Value r = Value::object();
    r.set("config", config_value(cfg, false, false, false, false, false));
    Value payload = Value::object();
    payload.set("centroid_ratio", Value::of(ratio));
    payload.set("height_over_lower_face", Value::of(hull_centroid_height(cfg.dim, c)));
    payload.set("hull_centroid", Value::of(ratio * c - cfg.a));
    payload.set("hull_centroid_limit", Value::of(hull_centroid_limit(cfg.a, cfg.b)));
    payload.set("one_minus_inv_e", Value::of(limit));
    payload.set("limit_gap", Value::of(std::abs(ratio - limit)));
    r.set("result", std::move(payload));
    emit(cfg, r);
}

void run_intersect(const RunConfig& cfg) {
    const LpExponent pe = parse_exponent(cfg.p), qe = parse_exponent(cfg.q);
    if (pe.is_infinite() || qe.is_infinite())
        throw std::domain_error("intersect: p and q must be finite (sampling exponents)");
    const Real p = pe.value();
    const Real q = qe.value();
    const RandomStream stream(cfg.seed, 0);
    const VolumeEstimate est = intersect_volume(p, q, cfg.dim, cfg.s, cfg.samples, stream);
    Value r = Value::object();
    r.set("config", config_value(cfg, true, true, false, false, false));
    Value payload = estimate_value(est);
    if (cfg.dim <= 30 && !est.log_value.is_zero())
        payload.set("volume", Value::of(est.log_value.value()));
    r.set("result", std::move(payload));
    emit(cfg, r);
}

void run_sections(const RunConfig& cfg) {
    const HullBodyParams params = cfg.hull();
    const RandomStream stream(cfg.seed, 0);
    const Real lo = -1.0 / params.a, hi = 1.0 / params.b;
    std::vector<Real> grid(static_cast<std::size_t>(cfg.grid_points));
    for (int i = 0; i < cfg.grid_points; ++i)
        grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (cfg.grid_points - 1.0);
    ProfileOptions opts;
    opts.on_section_done = [](int done, int total) { progress("section", done, total); };
    const SectionProfile prof = section_profile(params, grid, cfg.samples, stream, opts);

    if (cfg.format == "csv") {
        // fixed column order, config echoed as comment lines
        std::string text;
        text += "# command=sections version=" + std::string(kVersion) + "\n";
        text += "# dim=" + std::to_string(cfg.dim) + " a=" + report::format_double(cfg.a) +
                " b=" + report::format_double(cfg.b) +
                " samples=" + std::to_string(cfg.samples) +
                " grid_points=" + std::to_string(cfg.grid_points) +
                " seed=" + std::to_string(cfg.seed) + "\n";
        text += "s,log_volume,std_err_log,samples,method,log_envelope\n";
        for (std::size_t i = 0; i < prof.s_grid.size(); ++i) {
            const auto& v = prof.log_vols[i];
            text += report::format_double(prof.s_grid[i]) + "," +
                    report::format_double(v.log_value.log_magnitude) + "," +
                    report::format_double(v.std_err_log) + "," + std::to_string(v.samples) + "," +
                    to_string(v.method) + "," +
                    report::format_double(prof.envelope[i].log_magnitude) + "\n";
        }
        write_text(cfg, text);
        return;
    }

    Value r = Value::object();
    r.set("config", config_value(cfg, false, false, false, false, false));
    Value rows = Value::array();
    for (std::size_t i = 0; i < prof.s_grid.size(); ++i) {
        Value full = Value::object();
        full.set("s", Value::of(prof.s_grid[i]));
        full.set("log_volume", Value::of(prof.log_vols[i].log_value.log_magnitude));
        full.set("std_err_log", Value::of(prof.log_vols[i].std_err_log));
        full.set("samples", Value::of(static_cast<long long>(prof.log_vols[i].samples)));
        full.set("method", Value::of(to_string(prof.log_vols[i].method)));
        full.set("log_envelope", Value::of(prof.envelope[i].log_magnitude));
        rows.push(std::move(full));
    }
    r.set("sections", std::move(rows));
    emit(cfg, r);
}

Value window_value(const WindowConstants& w) {
    Value v = Value::object();
    v.set("s0", Value::of(w.s0));
    v.set("s1", Value::of(w.s1));
    return v;
}

Value centroid_value(const CentroidHeightResult& h) {
    Value v = Value::object();
    v.set("value", Value::of(h.value));
    v.set("error_bar", Value::of(h.error_bar));
    v.set("mc_err", Value::of(h.mc_err));
    v.set("tail_err", Value::of(h.tail_err));
    v.set("tail_fraction", Value::of(h.tail_fraction));
    v.set("window_mass_log", Value::of(h.window_mass_log));
    v.set("grid_points", Value::of(h.grid_points));
    v.set("samples_per_section", Value::of(static_cast<long long>(h.samples_per_section)));
    return v;
}

void run_polar_centroid(const RunConfig& cfg) {
    const RandomStream stream(cfg.seed, 0);
    ProfileOptions opts;
    opts.on_section_done = [](int done, int total) { progress("section", done, total); };
    const CentroidHeightResult h =
        polar_centroid_height(cfg.hull(), cfg.grid_points, cfg.samples, stream, opts);
    Value r = Value::object();
    r.set("config", config_value(cfg, false, false, false, false, false));
    r.set("window", window_value(window_constants(cfg.a, cfg.b)));
    r.set("centroid_height", centroid_value(h));
    emit(cfg, r);
}

Body make_named_body(const RunConfig& cfg) {
    if (cfg.body == "half-ball") return make_half_ball(cfg.dim);
    if (cfg.body == "ball") return make_lp_ball(2.0, cfg.dim);
    if (cfg.body == "cross") return make_lp_ball(1.0, cfg.dim);
    if (cfg.body == "cube") return make_lp_ball(LpExponent::infinity(), cfg.dim);
    if (cfg.body == "lp") return make_lp_ball(parse_exponent(cfg.p), cfg.dim);
    throw std::domain_error("unknown body: " + cfg.body);
}

void run_santalo(const RunConfig& cfg) {
    const RandomStream stream(cfg.seed, 0);
    const Body body = make_named_body(cfg);
    const SantaloReport rep = santalo_axis_search(body, cfg.tolerance, cfg.samples, stream);
    Value r = Value::object();
    r.set("config", config_value(cfg, cfg.body == "lp", false, false, true, false));
    Value payload = Value::object();
    Value point = Value::array();
    for (Index i = 0; i < rep.point.size(); ++i) point.push(Value::of(rep.point[i]));
    payload.set("point", std::move(point));
    payload.set("axis_coordinate", Value::of(rep.point.size() ? rep.point[0] : 0.0));
    payload.set("polar_log_volume", Value::of(rep.polar_log_volume.log_magnitude));
    payload.set("iterations", Value::of(rep.iterations));
    payload.set("residual", Value::of(rep.residual));
    payload.set("residual_std_err", Value::of(rep.residual_std_err));
    payload.set("method", Value::of(rep.method == SantaloMethod::axis_golden_section
                                        ? "axis-golden-section"
                                        : "grid-2d"));
    r.set("santalo", std::move(payload));
    emit(cfg, r);
}

void run_half_ball(const RunConfig& cfg) {
    const RandomStream stream(cfg.seed, 0);
    Value rows = Value::array();
    Real gamma_fit = 0;
    int done = 0;
    for (int n : cfg.dims) {
        const SantaloReport rep = santalo_axis_search(make_half_ball(n), cfg.tolerance,
                                                      cfg.samples, stream.substream(n));
        const Real g = half_ball_centroid(n);
        const Real s = rep.point[0];
        const Real root_n = std::sqrt(static_cast<Real>(n));
        Value row = Value::object();
        row.set("n", Value::of(n));
        row.set("centroid", Value::of(g));
        row.set("santalo", Value::of(s));
        row.set("gap", Value::of(g - s));
        row.set("sqrt_n_gap", Value::of(root_n * (g - s)));
        row.set("sqrt_n_santalo", Value::of(root_n * s));
        row.set("residual", Value::of(rep.residual));
        rows.push(std::move(row));
        gamma_fit = std::max(gamma_fit, root_n * s);
        progress("dimension", ++done, static_cast<int>(cfg.dims.size()));
    }
    Value r = Value::object();
    r.set("config", config_value(cfg, false, false, false, true, true));
    Value payload = Value::object();
    payload.set("sweep", std::move(rows));
    payload.set("gamma_fit", Value::of(gamma_fit));
    r.set("half_ball", std::move(payload));
    emit(cfg, r);
}

void run_reproduce(const RunConfig& cfg) {
    const Real one_minus_inv_e = 1.0 - 1.0 / std::numbers::e;
    ProfileOptions opts;
    opts.on_section_done = [](int done, int total) { progress("section", done, total); };
    const RandomStream stream(cfg.seed, 0);
    const SeparationReport sep =
        separation_report(cfg.hull(), cfg.grid_points, cfg.samples, cfg.gamma, stream, opts);
    const WindowConstants& w = sep.window;

    Value r = Value::object();
    r.set("config", config_value(cfg, false, false, false, false, false));

    Value constants = Value::object();
    constants.set("s0", Value::of(w.s0));
    constants.set("s1", Value::of(w.s1));
    constants.set("one_minus_inv_e", Value::of(one_minus_inv_e));
    constants.set("target_lo", Value::of(sep.target_lo));
    constants.set("target_hi", Value::of(sep.target_hi));
    r.set("constants", std::move(constants));

    Value measured = Value::object();
    measured.set("polar_centroid_height", Value::of(sep.height.value));
    measured.set("err", Value::of(sep.height.error_bar));
    measured.set("ratio_over_polar_chord", Value::of(sep.ratio_over_polar_chord));
    measured.set("ratio_over_hull_height", Value::of(sep.ratio_over_hull_height));
    r.set("measured", std::move(measured));

    Value checks = Value::array();
    auto add_check = [&checks](const std::string& name, bool pass, const std::string& detail) {
        Value c = Value::object();
        c.set("name", Value::of(name));
        c.set("pass", Value::of(pass));
        c.set("detail", Value::of(detail));
        checks.push(std::move(c));
    };
    char buf[256];

    std::snprintf(buf, sizeof buf, "s0 = %.9f", w.s0);
    add_check("s0_six_decimals", std::abs(w.s0 - (-0.290815)) < 1e-6, buf);
    std::snprintf(buf, sizeof buf, "s1 = %.9f", w.s1);
    add_check("s1_six_decimals", std::abs(w.s1 - (-0.225705)) < 1e-6, buf);
    std::snprintf(buf, sizeof buf, "(1-1/e)|s1| = %.9f, (1-1/e)|s0| = %.9f",
                  one_minus_inv_e * std::abs(w.s1), one_minus_inv_e * std::abs(w.s0));
    add_check("targets_match_hull_normalization",
              std::abs(one_minus_inv_e * std::abs(w.s1) - sep.target_lo) < 1e-6 &&
                  std::abs(one_minus_inv_e * std::abs(w.s0) - sep.target_hi) < 1e-5,
              buf);
    add_check("window_ordering", w.s0 < w.s1 && w.s1 < 0, "s0 < s1 < 0");

    const Real ratio2000 = centroid_ratio_sequence(2000);
    std::snprintf(buf, sizeof buf, "ratio(2000) = %.7f vs 1-1/e = %.7f", ratio2000,
                  one_minus_inv_e);
    add_check("centroid_ratio_limit", std::abs(ratio2000 - one_minus_inv_e) < 0.01, buf);

    std::snprintf(buf, sizeof buf, "height = %.6f, window [%.6f, %.6f]", sep.height.value,
                  w.s0 - 0.06, w.s1 + 0.06);
    add_check("height_within_widened_window",
              sep.height.value >= w.s0 - 0.06 && sep.height.value <= w.s1 + 0.06, buf);

    std::snprintf(buf, sizeof buf,
                  "ratio_over_hull_height = %.6f, band [%.6f, %.6f] contains targets",
                  sep.ratio_over_hull_height, one_minus_inv_e * 0.165, one_minus_inv_e * 0.351);
    add_check("separation_ratio_band",
              sep.ratio_over_hull_height >= one_minus_inv_e * 0.165 &&
                  sep.ratio_over_hull_height <= one_minus_inv_e * 0.351 &&
                  one_minus_inv_e * 0.165 <= sep.target_lo &&
                  sep.target_hi <= one_minus_inv_e * 0.351,
              buf);

    const ConcentrationReport& con = sep.concentration;
    std::snprintf(buf, sizeof buf, "tail mass fraction = %.3e", con.tail_mass_fraction);
    add_check("concentration_total_vs_window", con.total_vs_window, buf);
    std::snprintf(buf, sizeof buf, "weighted left tail / (gamma * window) = %.3e",
                  con.weighted_left_fraction);
    add_check("concentration_weighted_left_tail", con.left_tail, buf);
    std::snprintf(buf, sizeof buf, "weighted right tail / (gamma * window) = %.3e",
                  con.weighted_right_fraction);
    add_check("concentration_weighted_right_tail", con.right_tail, buf);

    std::snprintf(buf, sizeof buf,
                  "targets equal (1-1/e)*|s1..s0| (hull height a+b), not the polar chord "
                  "1/a+1/b; both ratios reported: hull=%.6f chord=%.6f",
                  sep.ratio_over_hull_height, sep.ratio_over_polar_chord);
    add_check("normalization_convention_flag", sep.normalization_discrepancy, buf);

    r.set("checks", std::move(checks));
    emit(cfg, r);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"convex-separation laboratory: volumes, centroids and Santalo points"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    RunConfig cfg;

    auto* ball = app.add_subcommand("ball-volume", "lp ball volume and volume-root bounds");
    add_common(ball, cfg);
    ball->add_option("--p", cfg.p, "norm exponent (number or 'inf')")->capture_default_str();

    auto* mixed = app.add_subcommand("mixed-volume", "mixed volumes of ball and cube");
    add_common(mixed, cfg);
    mixed->add_option("--t", cfg.t, "cube dilation factor")->capture_default_str();

    auto* hull = app.add_subcommand("centroid-hull", "centroid height of the two-face hull");
    add_common(hull, cfg);

    auto* inter = app.add_subcommand("intersect", "volume of B_p^n cap s B_q^n");
    add_common(inter, cfg);
    inter->add_option("--p", cfg.p, "outer exponent")->capture_default_str();
    inter->add_option("--q", cfg.q, "inner exponent")->capture_default_str();
    inter->add_option("--s", cfg.s, "inner scale")->capture_default_str();

    auto* sections = app.add_subcommand("sections", "section profile of the polar hull body");
    add_common(sections, cfg);

    auto* pc = app.add_subcommand("polar-centroid", "centroid height of the polar hull body");
    add_common(pc, cfg);

    auto* sant = app.add_subcommand("santalo", "axis-restricted Santalo search");
    add_common(sant, cfg);
    sant->add_option("--body", cfg.body, "half-ball | ball | cross | cube | lp")
        ->capture_default_str();
    sant->add_option("--p", cfg.p, "exponent when --body lp")->capture_default_str();
    sant->add_option("--tolerance", cfg.tolerance, "axis search tolerance")
        ->capture_default_str();

    auto* hb = app.add_subcommand("half-ball", "half-ball centroid/Santalo sweep");
    add_common(hb, cfg);
    hb->add_option("--dims", cfg.dims, "dimensions to sweep")
        ->delimiter(',')
        ->capture_default_str();
    hb->add_option("--tolerance", cfg.tolerance, "axis search tolerance")->capture_default_str();

    auto* rep = app.add_subcommand("reproduce", "full constant table with checks");
    add_common(rep, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit with 2
    }

    try {
        if (ball->parsed()) {
            cfg.command = "ball-volume";
            run_ball_volume(cfg);
        } else if (mixed->parsed()) {
            cfg.command = "mixed-volume";
            run_mixed_volume(cfg);
        } else if (hull->parsed()) {
            cfg.command = "centroid-hull";
            run_centroid_hull(cfg);
        } else if (inter->parsed()) {
            cfg.command = "intersect";
            run_intersect(cfg);
        } else if (sections->parsed()) {
            cfg.command = "sections";
            run_sections(cfg);
        } else if (pc->parsed()) {
            cfg.command = "polar-centroid";
            run_polar_centroid(cfg);
        } else if (sant->parsed()) {
            cfg.command = "santalo";
            run_santalo(cfg);
        } else if (hb->parsed()) {
            cfg.command = "half-ball";
            run_half_ball(cfg);
        } else if (rep->parsed()) {
            cfg.command = "reproduce";
            run_reproduce(cfg);
        }
    } catch (const std::exception& e) {
        // numeric failures: diagnostic JSON on stdout, exit 1
        Value err = Value::object();
        err.set("error", Value::of(std::string(e.what())));
        err.set("config", config_value(cfg, false, false, false, false, false));
        const std::string text = err.to_json();
        std::fwrite(text.data(), 1, text.size(), stdout);
        return 1;
    }
    return 0;
}
