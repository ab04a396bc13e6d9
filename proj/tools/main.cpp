// Command-line front end: estimator sweeps, exact and perturbative
// evolutions, causality audits, experiment-regime reports, and the
// slow-switching energy diagnostic. Emits deterministic CSV/JSON.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qcfield/causality_audit.hpp"
#include "qcfield/dynamics_nonpert.hpp"
#include "qcfield/dynamics_pert.hpp"
#include "qcfield/estimators.hpp"
#include "qcfield/gme.hpp"
#include "qcfield/propagators.hpp"

using json = nlohmann::ordered_json;
using namespace qcfield;

namespace {

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Dim parse_dim(const std::string& s) {
    if (s == "1p1") return Dim::one_plus_one;
    if (s == "3p1") return Dim::three_plus_one;
    throw std::invalid_argument("--dim must be 1p1 or 3p1");
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output path: " + path);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

json complex_json(const cplx& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

template <typename Mat>
json matrix_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json setup_json(const SetupGeometry& setup) {
    return json{{"dim", setup.dim == Dim::one_plus_one ? "1p1" : "3p1"},
                {"L", setup.separation},
                {"T", setup.duration_a},
                {"S", setup.extra_b},
                {"t_b_on", setup.t_b_on}};
}

std::string dump_doc(const json& body) {
    json doc;
    doc["schema"] = "qcc-1";
    for (auto& [key, value] : body.items()) doc[key] = value;
    return doc.dump(2) + "\n";
}

// All flag-settable values, loadable from a JSON config file.
struct Options {
    std::string dim = "3p1";
    std::string out;
    std::string format;
    std::string config;
    double separation = 1.0;
    double duration = 4.0;
    double tail = 0.0;
    double t_min = 0.0;
    double t_max = 10.0;
    int steps = 200;
    std::string mode = "estimate";
    double coupling = 0.1;
    double omega_a = 0.0;
    double omega_b = 0.0;
    double alpha_a = 1.0;
    double beta_re_a = 0.0;
    double beta_im_a = 0.0;
    double alpha_b = 0.5;
    double beta_re_b = 0.5;
    double beta_im_b = 0.0;
    std::string model = "qc";
    std::string geometry = "fig2";
    double duration_b = 4.0;
    int grid = 64;
    std::vector<double> timescales;
    double shape_width = 1.0;
    double box = 0.0;
    double phase = 1.0;
    double mass1 = 1e-14;
    double mass2 = 1e-14;
    double epsilon = 1e-6;
    double resolution = 1e-3;
};

// Registry so values from --config back-fill flags that were not given on the
// command line; explicit flags always win.
struct Registry {
    std::map<std::string, std::pair<CLI::Option*, std::function<void(const json&)>>> entries;
    std::set<std::string> from_config;

    void add(const std::string& key, CLI::Option* option, std::function<void(const json&)> set) {
        entries[key] = {option, std::move(set)};
    }

    void apply(const json& config) {
        for (auto& [key, entry] : entries) {
            if (!config.contains(key)) continue;
            from_config.insert(key);
            if (entry.first->count() == 0) entry.second(config.at(key));
        }
    }

    bool provided(const std::string& key) const {
        const auto it = entries.find(key);
        if (it == entries.end()) return false;
        return it->second.first->count() > 0 || from_config.count(key) > 0;
    }

    void require(std::initializer_list<const char*> keys) const {
        for (const char* key : keys) {
            if (!provided(key)) {
                throw std::invalid_argument(std::string("missing required option --") + key);
            }
        }
    }
};

void load_config(const Options& opt, Registry& reg) {
    if (opt.config.empty()) return;
    std::ifstream in(opt.config);
    if (!in) throw std::runtime_error("cannot read config: " + opt.config);
    reg.apply(json::parse(in));
}

void add_common(CLI::App* cmd, Options& opt, Registry& reg) {
    reg.add("dim", cmd->add_option("--dim", opt.dim, "spacetime dimension: 1p1 or 3p1"),
            [&opt](const json& v) { opt.dim = v.get<std::string>(); });
    reg.add("out", cmd->add_option("--out", opt.out, "output path (default stdout)"),
            [&opt](const json& v) { opt.out = v.get<std::string>(); });
    reg.add("format", cmd->add_option("--format", opt.format, "csv or json"),
            [&opt](const json& v) { opt.format = v.get<std::string>(); });
    cmd->add_option("--config", opt.config, "JSON config file; flags override its values");
}

void add_geometry(CLI::App* cmd, Options& opt, Registry& reg) {
    reg.add("L", cmd->add_option("--L", opt.separation, "spatial separation"),
            [&opt](const json& v) { opt.separation = v.get<double>(); });
    reg.add("T", cmd->add_option("--T", opt.duration, "interaction duration of A"),
            [&opt](const json& v) { opt.duration = v.get<double>(); });
    reg.add("S", cmd->add_option("--S", opt.tail, "extra future duration of B (1+1)"),
            [&opt](const json& v) { opt.tail = v.get<double>(); });
}

void add_detector_b(CLI::App* cmd, Options& opt, Registry& reg) {
    reg.add("alpha_b", cmd->add_option("--alpha-b", opt.alpha_b, "B population"),
            [&opt](const json& v) { opt.alpha_b = v.get<double>(); });
    reg.add("beta_re_b", cmd->add_option("--beta-re-b", opt.beta_re_b, "B coherence, real part"),
            [&opt](const json& v) { opt.beta_re_b = v.get<double>(); });
    reg.add("beta_im_b", cmd->add_option("--beta-im-b", opt.beta_im_b, "B coherence, imag part"),
            [&opt](const json& v) { opt.beta_im_b = v.get<double>(); });
}

SetupGeometry setup_from(const Options& opt) {
    const Dim dim = parse_dim(opt.dim);
    return standard_setup(dim == Dim::three_plus_one ? SetupKind::fig2 : SetupKind::fig4,
                          opt.separation, opt.duration, opt.tail);
}

Detector detector_a(const Options& opt, const Smearing& s) {
    Detector d;
    d.gap = opt.omega_a;
    d.coupling = opt.coupling;
    d.smearing = s;
    d.alpha = opt.alpha_a;
    d.beta = cplx(opt.beta_re_a, opt.beta_im_a);
    return d;
}

Detector detector_b(const Options& opt, const Smearing& s) {
    Detector d;
    d.gap = opt.omega_b;
    d.coupling = opt.coupling;
    d.smearing = s;
    d.alpha = opt.alpha_b;
    d.beta = cplx(opt.beta_re_b, opt.beta_im_b);
    return d;
}

int run_estimate(const Options& opt) {
    const auto rep = estimator_split(setup_from(opt));
    if (opt.format == "json") {
        json doc;
        doc["setup"] = setup_json(rep.setup);
        doc["C_total"] = rep.total;
        doc["C_causal"] = rep.causal;
        doc["C_retro"] = rep.retro;
        doc["ratio_rc"] = rep.ratio_retro_causal;
        doc["ratio_rtotal"] = rep.ratio_retro_total;
        write_output(opt.out, dump_doc(doc));
    } else {
        std::string csv = "C_total,C_causal,C_retro,ratio_rc,ratio_rtotal\n";
        csv += fmt12(rep.total) + "," + fmt12(rep.causal) + "," + fmt12(rep.retro) + "," +
               fmt12(rep.ratio_retro_causal) + "," + fmt12(rep.ratio_retro_total) + "\n";
        write_output(opt.out, csv);
    }
    return 0;
}

int run_sweep(const Options& opt) {
    if (opt.format == "json") throw std::invalid_argument("sweep emits CSV only");
    if (!(opt.t_min < opt.t_max)) throw std::invalid_argument("sweep: need Tmin < Tmax");
    if (opt.steps < 2) throw std::invalid_argument("sweep: need at least 2 steps");
    const Dim dim = parse_dim(opt.dim);
    const SetupKind kind = dim == Dim::three_plus_one ? SetupKind::fig2 : SetupKind::fig4;
    const bool nonpert = opt.mode == "nonpert";
    if (!nonpert && opt.mode != "estimate") {
        throw std::invalid_argument("sweep: mode must be estimate or nonpert");
    }
    std::string csv = nonpert ? "T,N_a,N_a_causal,theta_a,theta_c,theta_r\n"
                              : "T,C_total,C_causal,C_retro,ratio_rc,ratio_rtotal\n";
    for (int i = 0; i < opt.steps; ++i) {
        const double t = opt.t_min + (opt.t_max - opt.t_min) * i / (opt.steps - 1);
        const auto setup = standard_setup(kind, opt.separation, t, opt.tail);
        csv += fmt12(t);
        if (nonpert) {
            const auto rep = np_report(setup, opt.coupling);
            for (double v : {rep.n_total, rep.n_causal, rep.theta_total, rep.theta_causal,
                             rep.theta_retro}) {
                csv += "," + fmt12(v);
            }
        } else {
            const auto rep = estimator_split(setup);
            for (double v : {rep.total, rep.causal, rep.retro, rep.ratio_retro_causal,
                             rep.ratio_retro_total}) {
                csv += "," + fmt12(v);
            }
        }
        csv += "\n";
    }
    write_output(opt.out, csv);
    return 0;
}

int run_evolve(const Options& opt) {
    const auto setup = setup_from(opt);
    const auto [sa, sb] = setup_smearings(setup);
    const auto da = detector_a(opt, sa);
    const auto db = detector_b(opt, sb);
    da.validate();
    db.validate();

    Matrix4c joint = Matrix4c::Zero();
    const Matrix2c ra = da.initial_matrix();
    const Matrix2c rb = db.initial_matrix();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    joint(2 * i + k, 2 * j + l) = ra(i, j) * rb(k, l);
    PairState rho0;
    rho0.rho = energy_to_monopole_basis(joint);

    const double delta = da.coupling * db.coupling * smeared_symmetric(sa, sb, setup.dim);
    const auto rho1 = evolve(delta, rho0);
    const auto rho_a = reduce_a(rho1);
    const auto res = resolution_report(setup.separation, opt.coupling);

    json doc;
    doc["setup"] = setup_json(setup);
    doc["coupling"] = opt.coupling;
    doc["delta_ab"] = delta;
    doc["N_a"] = norm_estimator(delta);
    doc["theta_a"] = arg_estimator(delta);
    doc["period"] = res.period;
    doc["shift"] = res.shift;
    doc["rho_initial"] = matrix_json(rho0.rho);
    doc["rho_final"] = matrix_json(rho1.rho);
    doc["rho_a"] = matrix_json(rho_a.rho);
    write_output(opt.out, dump_doc(doc));
    return 0;
}

int run_audit(const Options& opt) {
    const Dim dim = parse_dim(opt.dim);
    SmearingPair pair;
    if (opt.geometry == "fig1") {
        pair = one_way_smearings(opt.separation, opt.duration, opt.duration_b);
    } else if (opt.geometry == "fig2") {
        pair = setup_smearings(standard_setup(SetupKind::fig2, opt.separation, opt.duration));
    } else if (opt.geometry == "fig4") {
        pair = setup_smearings(
            standard_setup(SetupKind::fig4, opt.separation, opt.duration, opt.tail));
    } else {
        throw std::invalid_argument("audit: geometry must be fig1, fig2 or fig4");
    }
    if (opt.model != "qft" && opt.model != "qc") {
        throw std::invalid_argument("audit: model must be qc or qft");
    }
    const Model model = opt.model == "qft" ? Model::qft : Model::qc;
    const auto verdict = audit(model, detector_a(opt, pair.a), detector_b(opt, pair.b), dim,
                               opt.grid);

    json doc;
    doc["model"] = opt.model;
    doc["geometry"] = opt.geometry;
    doc["dim"] = opt.dim;
    switch (verdict.geometry_class) {
        case GeometryClass::no_retro_subregion:
            doc["geometry_class"] = "no_retro_subregion";
            break;
        case GeometryClass::retro_subregion_inert:
            doc["geometry_class"] = "retro_subregion_inert";
            break;
        case GeometryClass::retro_subregion_active:
            doc["geometry_class"] = "retro_subregion_active";
            break;
    }
    doc["witness_norm"] = verdict.witness_norm;
    if (verdict.retro_window) {
        doc["retro_window"] =
            json{{"lo", verdict.retro_window->lo}, {"hi", verdict.retro_window->hi}};
    } else {
        doc["retro_window"] = nullptr;
    }
    write_output(opt.out, dump_doc(doc));
    return 0;
}

int run_gme(const Options& opt) {
    gme::GmeParameters params;
    params.mass1_kg = opt.mass1;
    params.mass2_kg = opt.mass2;
    params.separation_m = opt.separation;
    params.duration_s = opt.duration;
    params.epsilon = opt.epsilon;
    params.resolution_s = opt.resolution;
    const auto rep = gme::regime_report(params);
    json doc;
    doc["m1_kg"] = params.mass1_kg;
    doc["m2_kg"] = params.mass2_kg;
    doc["L_m"] = params.separation_m;
    doc["T_s"] = params.duration_s;
    doc["epsilon"] = params.epsilon;
    doc["resolution_s"] = params.resolution_s;
    doc["lambda_sq"] = rep.lambda_sq;
    doc["T_over_Lc"] = rep.t_over_lc;
    doc["required_resolution_s"] = rep.required_resolution_s;
    doc["qc_indistinguishable"] = rep.qc_indistinguishable;
    write_output(opt.out, dump_doc(doc));
    return 0;
}

int run_hdiff(const Options& opt) {
    if (opt.timescales.empty()) throw std::invalid_argument("hdiff: give at least one --T");
    const auto source = Smearing::pointlike_gaussian(0.0, 0.0, opt.shape_width);
    HdiffOptions hopts;
    hopts.box_halfwidth = opt.box;
    hopts.eval_phase = opt.phase;
    json values = json::array();
    json ratios = json::array();
    double box_used = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < opt.timescales.size(); ++i) {
        const auto res = hdiff(opt.timescales[i], source, hopts);
        values.push_back(res.value);
        box_used = res.box_halfwidth;
        if (i > 0) ratios.push_back(prev != 0.0 ? res.value / prev : 0.0);
        prev = res.value;
    }
    json doc;
    doc["timescales"] = opt.timescales;
    doc["values"] = values;
    doc["ratios"] = ratios;
    doc["box_halfwidth"] = box_used;
    doc["eval_phase"] = opt.phase;
    write_output(opt.out, dump_doc(doc));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"massless-scalar direct-coupling signalling toolkit"};
    app.require_subcommand(1);

    Options opt;
    std::map<CLI::App*, Registry> registries;

    auto* estimate = app.add_subcommand("estimate", "signalling estimator and its split");
    {
        Registry& reg = registries[estimate];
        add_common(estimate, opt, reg);
        add_geometry(estimate, opt, reg);
    }

    auto* sweep = app.add_subcommand("sweep", "estimator or modulus/phase sweep over durations");
    {
        Registry& reg = registries[sweep];
        add_common(sweep, opt, reg);
        add_geometry(sweep, opt, reg);
        reg.add("mode", sweep->add_option("--mode", opt.mode, "estimate or nonpert"),
                [&opt](const json& v) { opt.mode = v.get<std::string>(); });
        reg.add("Tmin", sweep->add_option("--Tmin", opt.t_min, "sweep start"),
                [&opt](const json& v) { opt.t_min = v.get<double>(); });
        reg.add("Tmax", sweep->add_option("--Tmax", opt.t_max, "sweep end"),
                [&opt](const json& v) { opt.t_max = v.get<double>(); });
        reg.add("steps", sweep->add_option("--steps", opt.steps, "number of rows"),
                [&opt](const json& v) { opt.steps = v.get<int>(); });
        reg.add("lambda", sweep->add_option("--lambda", opt.coupling, "coupling strength"),
                [&opt](const json& v) { opt.coupling = v.get<double>(); });
    }

    auto* evolve_cmd = app.add_subcommand("evolve", "exact gapless pair evolution");
    {
        Registry& reg = registries[evolve_cmd];
        add_common(evolve_cmd, opt, reg);
        add_geometry(evolve_cmd, opt, reg);
        reg.add("lambda", evolve_cmd->add_option("--lambda", opt.coupling, "coupling strength"),
                [&opt](const json& v) { opt.coupling = v.get<double>(); });
        reg.add("alpha_a", evolve_cmd->add_option("--alpha-a", opt.alpha_a, "A population"),
                [&opt](const json& v) { opt.alpha_a = v.get<double>(); });
        reg.add("beta_re_a", evolve_cmd->add_option("--beta-re-a", opt.beta_re_a,
                                                    "A coherence, real part"),
                [&opt](const json& v) { opt.beta_re_a = v.get<double>(); });
        reg.add("beta_im_a", evolve_cmd->add_option("--beta-im-a", opt.beta_im_a,
                                                    "A coherence, imag part"),
                [&opt](const json& v) { opt.beta_im_a = v.get<double>(); });
        add_detector_b(evolve_cmd, opt, reg);
    }

    auto* audit_cmd = app.add_subcommand("audit", "classify a setup per the retrocausality rules");
    {
        Registry& reg = registries[audit_cmd];
        add_common(audit_cmd, opt, reg);
        add_geometry(audit_cmd, opt, reg);
        reg.add("model", audit_cmd->add_option("--model", opt.model, "qc or qft"),
                [&opt](const json& v) { opt.model = v.get<std::string>(); });
        reg.add("geometry", audit_cmd->add_option("--geometry", opt.geometry,
                                                  "fig1, fig2 or fig4"),
                [&opt](const json& v) { opt.geometry = v.get<std::string>(); });
        reg.add("Tb", audit_cmd->add_option("--Tb", opt.duration_b, "B duration (fig1 only)"),
                [&opt](const json& v) { opt.duration_b = v.get<double>(); });
        reg.add("grid", audit_cmd->add_option("--grid", opt.grid, "sub-window search grid"),
                [&opt](const json& v) { opt.grid = v.get<int>(); });
        reg.add("lambda", audit_cmd->add_option("--lambda", opt.coupling, "coupling strength"),
                [&opt](const json& v) { opt.coupling = v.get<double>(); });
        reg.add("omega_a", audit_cmd->add_option("--omega-a", opt.omega_a, "A gap"),
                [&opt](const json& v) { opt.omega_a = v.get<double>(); });
        reg.add("omega_b", audit_cmd->add_option("--omega-b", opt.omega_b, "B gap"),
                [&opt](const json& v) { opt.omega_b = v.get<double>(); });
        add_detector_b(audit_cmd, opt, reg);
    }

    auto* gme_cmd = app.add_subcommand("gme", "experiment-regime report from SI parameters");
    {
        Registry& reg = registries[gme_cmd];
        add_common(gme_cmd, opt, reg);
        reg.add("m1", gme_cmd->add_option("--m1", opt.mass1, "first mass [kg]"),
                [&opt](const json& v) { opt.mass1 = v.get<double>(); });
        reg.add("m2", gme_cmd->add_option("--m2", opt.mass2, "second mass [kg]"),
                [&opt](const json& v) { opt.mass2 = v.get<double>(); });
        reg.add("L", gme_cmd->add_option("--L", opt.separation, "separation [m]"),
                [&opt](const json& v) { opt.separation = v.get<double>(); });
        reg.add("T", gme_cmd->add_option("--T", opt.duration, "interaction time [s]"),
                [&opt](const json& v) { opt.duration = v.get<double>(); });
        reg.add("epsilon", gme_cmd->add_option("--epsilon", opt.epsilon, "tolerance"),
                [&opt](const json& v) { opt.epsilon = v.get<double>(); });
        reg.add("resolution",
                gme_cmd->add_option("--resolution", opt.resolution,
                                    "experimental time resolution [s]"),
                [&opt](const json& v) { opt.resolution = v.get<double>(); });
    }

    auto* hdiff_cmd = app.add_subcommand("hdiff", "slow-switching energy mismatch scaling");
    {
        Registry& reg = registries[hdiff_cmd];
        add_common(hdiff_cmd, opt, reg);
        reg.add("T", hdiff_cmd->add_option("--T", opt.timescales,
                                           "switching timescale (repeatable)"),
                [&opt](const json& v) { opt.timescales = v.get<std::vector<double>>(); });
        reg.add("width", hdiff_cmd->add_option("--width", opt.shape_width,
                                               "switching shape width"),
                [&opt](const json& v) { opt.shape_width = v.get<double>(); });
        reg.add("box", hdiff_cmd->add_option("--box", opt.box, "spatial box half-width"),
                [&opt](const json& v) { opt.box = v.get<double>(); });
        reg.add("phase", hdiff_cmd->add_option("--phase", opt.phase, "evaluation phase"),
                [&opt](const json& v) { opt.phase = v.get<double>(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        Registry& reg = registries.at(cmd);
        load_config(opt, reg);
        if (cmd == estimate || cmd == sweep || cmd == evolve_cmd || cmd == audit_cmd) {
            reg.require({"L"});
        } else if (cmd == gme_cmd) {
            reg.require({"m1", "m2", "L", "T"});
        }
        if (opt.format.empty()) {
            opt.format = (cmd == estimate || cmd == sweep) ? "csv" : "json";
        }
        if (cmd != estimate && cmd != sweep && opt.format == "csv") {
            throw std::invalid_argument(cmd->get_name() + " emits JSON only");
        }
        if (opt.format != "csv" && opt.format != "json") {
            throw std::invalid_argument("--format must be csv or json");
        }
        if (cmd == estimate) return run_estimate(opt);
        if (cmd == sweep) return run_sweep(opt);
        if (cmd == evolve_cmd) return run_evolve(opt);
        if (cmd == audit_cmd) return run_audit(opt);
        if (cmd == gme_cmd) return run_gme(opt);
        if (cmd == hdiff_cmd) return run_hdiff(opt);
        return 1;
    } catch (const std::exception& e) {
        json err;
        err["schema"] = "qcc-1";
        err["error"] = json{{"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
