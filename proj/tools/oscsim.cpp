// Command-line front end: every workflow of the library behind one binary
// with deterministic, seedable output. Machine output goes to stdout only;
// messages go to stderr. Exit codes: 0 ok, 2 invalid input, 3 resource cap,
// 4 indeterminate decision.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "oscsim/blockenc.hpp"
#include "oscsim/bqp.hpp"
#include "oscsim/dynamics.hpp"
#include "oscsim/estimate.hpp"
#include "oscsim/gluedtrees.hpp"
#include "oscsim/io.hpp"

namespace {

using namespace oscsim;

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        std::size_t used = 0;
        values.push_back(std::stod(item, &used));
        if (used != item.size())
            throw std::invalid_argument("malformed number in list: " + item);
    }
    return values;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    for (double v : parse_double_list(text)) {
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw std::invalid_argument("expected integers in list");
        values.push_back(i);
    }
    return values;
}

// "1-2,3-3" -> {(0,1), (2,2)}
std::vector<std::pair<int, int>> parse_pair_list(const std::string& text) {
    std::vector<std::pair<int, int>> pairs;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const auto dash = item.find('-');
        if (dash == std::string::npos)
            throw std::invalid_argument("edge subsets use j-k pairs: " + item);
        pairs.emplace_back(std::stoi(item.substr(0, dash)) - 1,
                           std::stoi(item.substr(dash + 1)) - 1);
    }
    return pairs;
}

class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot open output file: " + path);
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct InitialCondition {
    std::string x_text;
    std::string v_text;

    ClassicalState resolve(int n) const {
        ClassicalState state{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), 0.0};
        state.v[0] = 1.0; // default: unit kick on the first oscillator
        if (!x_text.empty()) {
            const auto values = parse_double_list(x_text);
            if (static_cast<int>(values.size()) != n)
                throw std::invalid_argument("--x0 needs exactly n values");
            for (int j = 0; j < n; ++j) state.x[j] = values[static_cast<std::size_t>(j)];
        }
        if (!v_text.empty()) {
            const auto values = parse_double_list(v_text);
            if (static_cast<int>(values.size()) != n)
                throw std::invalid_argument("--v0 needs exactly n values");
            state.v.setZero();
            for (int j = 0; j < n; ++j) state.v[j] = values[static_cast<std::size_t>(j)];
        }
        return state;
    }
};

void write_timeseries_header(std::ostream& out, int n, bool json) {
    if (json) return;
    out << "t";
    for (int j = 1; j <= n; ++j) out << ",x_" << j;
    for (int j = 1; j <= n; ++j) out << ",v_" << j;
    out << ",K,U,E\n";
}

void write_timeseries_row(std::ostream& out, const SpringNetwork& net,
                          const ClassicalState& state, bool json,
                          nlohmann::json* rows) {
    const auto e = energy(net, state);
    if (json) {
        nlohmann::json row;
        row["t"] = state.t;
        row["x"] = std::vector<double>(state.x.data(), state.x.data() + state.x.size());
        row["v"] = std::vector<double>(state.v.data(), state.v.data() + state.v.size());
        row["K"] = e.kinetic;
        row["U"] = e.potential;
        row["E"] = e.total;
        rows->push_back(std::move(row));
        return;
    }
    out << io::csv_double(state.t);
    for (int j = 0; j < net.size(); ++j) out << ',' << io::csv_double(state.x[j]);
    for (int j = 0; j < net.size(); ++j) out << ',' << io::csv_double(state.v[j]);
    out << ',' << io::csv_double(e.kinetic) << ',' << io::csv_double(e.potential)
        << ',' << io::csv_double(e.total) << '\n';
}

// x(t) recovered from a stretch vector mu = B^T y(t): row-space part through
// the mode basis, kernel part completed from the initial data (it never
// enters the encoding).
Eigen::VectorXd positions_from_stretch(const SpringNetwork& net,
                                       const SystemMatrices& mats,
                                       const EncodedModeBasis& basis,
                                       const Eigen::VectorXd& mu,
                                       const ClassicalState& s0, double t) {
    const int n = net.size();
    Eigen::VectorXd y0(n), yd0(n);
    for (int j = 0; j < n; ++j) {
        y0[j] = mats.m_sqrt[j] * s0.x[j];
        yd0[j] = mats.m_sqrt[j] * s0.v[j];
    }
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (Eigen::Index k = 0; k < basis.sigma.size(); ++k) {
        const double coeff = basis.right.col(k).dot(mu) / basis.sigma[k];
        y += coeff * basis.left.col(k);
        y0 -= basis.left.col(k).dot(y0) * basis.left.col(k);
        yd0 -= basis.left.col(k).dot(yd0) * basis.left.col(k);
    }
    y += y0 + t * yd0; // linear drift of the zero modes
    for (int j = 0; j < n; ++j) y[j] /= mats.m_sqrt[j];
    return y;
}

int run_simulate(const std::string& network_path, double t_final, int samples,
                 const std::string& backend, double dt_override, double eps_pe,
                 const InitialCondition& init, const std::string& out_path,
                 const std::string& format) {
    const SpringNetwork net = io::read_network_file(network_path);
    const ClassicalState s0 = init.resolve(net.size());
    if (!(t_final >= 0.0)) throw std::invalid_argument("--t must be nonnegative");
    const bool json = format == "json";
    if (!json && format != "csv")
        throw std::invalid_argument("--format must be csv or json");

    EvolutionBackend config;
    if (backend == "exact") config.kind = EvolutionBackend::Kind::exact_classical;
    else if (backend == "verlet") config.kind = EvolutionBackend::Kind::verlet;
    else if (backend == "hamiltonian") config.kind = EvolutionBackend::Kind::hamiltonian;
    else if (backend == "qpe") config.kind = EvolutionBackend::Kind::qpe_emulated;
    else throw std::invalid_argument("unknown backend: " + backend);
    config.dt = dt_override;
    config.eps_pe = eps_pe;
    config.validate(net);

    OutputTarget target(out_path);
    std::ostream& out = target.stream();
    nlohmann::json rows = nlohmann::json::array();
    write_timeseries_header(out, net.size(), json);

    const auto emit = [&](const ClassicalState& state) {
        write_timeseries_row(out, net, state, json, &rows);
    };

    if (config.kind == EvolutionBackend::Kind::exact_classical) {
        const NormalModes modes = normal_modes(system_operator(net));
        for (int i = 0; i <= samples; ++i)
            emit(evolve_exact(net, modes, s0, t_final * i / samples));
    } else if (config.kind == EvolutionBackend::Kind::verlet) {
        const double dt = dt_override > 0.0 ? dt_override : default_verlet_dt(net);
        ClassicalState state = s0;
        emit(state);
        for (int i = 1; i <= samples; ++i) {
            const double target_t = t_final * i / samples;
            state = evolve_newton(net, state, target_t - state.t, dt);
            state.t = target_t;
            emit(state);
        }
    } else if (config.kind == EvolutionBackend::Kind::hamiltonian) {
        const SystemMatrices mats = build_matrices(net);
        const EncodedModeBasis basis = encoded_mode_basis(mats);
        const EncodedState psi0 = encode_primary(net, s0);
        for (int i = 0; i <= samples; ++i) {
            const double t = t_final * i / samples;
            const EncodedState psi = evolve_encoded(basis, psi0, t);
            const DecodedBlocks blocks = decode_primary(net, psi);
            ClassicalState state;
            state.t = t;
            state.v = blocks.scaled_velocities.cwiseQuotient(mats.m_sqrt);
            state.x = positions_from_stretch(net, mats, basis, blocks.mu, s0, t);
            emit(state);
        }
    } else {
        const SystemMatrices mats = build_matrices(net);
        const EncodedModeBasis basis = encoded_mode_basis(mats);
        Eigen::VectorXd y0(net.size()), yd0(net.size());
        for (int j = 0; j < net.size(); ++j) {
            y0[j] = mats.m_sqrt[j] * s0.x[j];
            yd0[j] = mats.m_sqrt[j] * s0.v[j];
        }
        const EncodedState psi0 = encode_generalized(mats.A, y0, yd0);
        const double scale = std::sqrt(2.0 * psi0.energy);
        for (int i = 0; i <= samples; ++i) {
            const double t = t_final * i / samples;
            const EncodedState psi = qpe_emulate_evolution(mats.A, psi0, t, eps_pe);
            const Eigen::VectorXd yd = scale * psi.amplitudes.head(net.size()).real();
            const Eigen::VectorXd mu_g =
                scale * psi.amplitudes.tail(net.size()).imag();
            ClassicalState state;
            state.t = t;
            state.v = yd.cwiseQuotient(mats.m_sqrt);
            // y = sqrt(A)^+ mu_g + kernel completion from the initial data
            Eigen::VectorXd y = Eigen::VectorXd::Zero(net.size());
            Eigen::VectorXd ky = y0, kv = yd0;
            for (Eigen::Index k = 0; k < basis.sigma.size(); ++k) {
                y += (basis.left.col(k).dot(mu_g) / basis.sigma[k]) * basis.left.col(k);
                ky -= basis.left.col(k).dot(ky) * basis.left.col(k);
                kv -= basis.left.col(k).dot(kv) * basis.left.col(k);
            }
            y += ky + t * kv;
            state.x = y.cwiseQuotient(mats.m_sqrt);
            emit(state);
        }
    }
    if (json) out << rows.dump() << '\n';
    return 0;
}

int run_glued_trees(int n, std::uint64_t seed, const std::string& mode, double tmax,
                    double step, const std::string& out_path) {
    if (!(tmax > 0.0)) throw std::invalid_argument("--tmax must be positive");
    if (!(step > 0.0)) throw std::invalid_argument("--step must be positive");
    OutputTarget target(out_path);
    std::ostream& out = target.stream();
    out << "t,exit_kinetic_fraction\n";
    if (mode == "reduced") {
        const auto chain = gluedtrees::reduce_to_chain(n);
        const auto modes = gluedtrees::chain_modes(chain);
        for (double t = 0.0; t <= tmax; t += step) {
            const double zdot = gluedtrees::exit_velocity(modes, t);
            out << io::csv_double(t) << ',' << io::csv_double(zdot * zdot) << '\n';
        }
    } else if (mode == "full") {
        if (n > 10)
            throw resource_limit_error("full mode is capped at n <= 10");
        const auto inst = gluedtrees::generate(n, seed);
        ClassicalState s0{Eigen::VectorXd::Zero(inst.network.size()),
                          Eigen::VectorXd::Zero(inst.network.size()), 0.0};
        s0.v[inst.entrance_id] = 1.0;
        const NormalModes modes = normal_modes(system_operator(inst.network));
        for (double t = 0.0; t <= tmax; t += step) {
            const auto state = evolve_exact(inst.network, modes, s0, t);
            const double zdot = state.v[inst.exit_id];
            out << io::csv_double(t) << ',' << io::csv_double(zdot * zdot) << '\n';
        }
    } else {
        throw std::invalid_argument("unknown mode: " + mode);
    }
    return 0;
}

nlohmann::json estimate_report_json(const EstimateReport& report) {
    nlohmann::json doc;
    doc["exact_value"] = report.exact_value;
    doc["estimate"] = report.estimate;
    doc["epsilon"] = report.epsilon;
    doc["delta"] = report.delta;
    doc["shots_used"] = report.shots_used;
    doc["ae_query_model"] = report.ae_query_model;
    doc["seed"] = report.seed;
    return doc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled-oscillator simulation workbench"};
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "evolve a network and emit a time series");
    std::string sim_network, sim_backend = "exact", sim_out, sim_format = "csv";
    InitialCondition sim_init;
    double sim_t = 1.0, sim_dt = 0.0, sim_eps_pe = 1e-3;
    int sim_samples = 1;
    simulate->add_option("--network", sim_network, "network json file")->required();
    simulate->add_option("--t", sim_t, "final time")->required();
    simulate->add_option("--samples", sim_samples, "output rows after t=0")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--backend", sim_backend,
                         "exact | verlet | hamiltonian | qpe");
    simulate->add_option("--dt", sim_dt, "verlet step override");
    simulate->add_option("--eps-pe", sim_eps_pe, "phase-estimation grid half-width");
    simulate->add_option("--x0", sim_init.x_text, "comma list of displacements");
    simulate->add_option("--v0", sim_init.v_text, "comma list of velocities");
    simulate->add_option("--out", sim_out, "output file (default stdout)");
    simulate->add_option("--format", sim_format, "csv | json");

    // glued-trees
    auto* glued = app.add_subcommand("glued-trees", "exit-weight series of a glued-trees network");
    int gt_n = 4;
    std::uint64_t gt_seed = 0;
    std::string gt_mode = "reduced", gt_out;
    double gt_tmax = 80.0, gt_step = 0.05;
    glued->add_option("--n", gt_n, "tree depth")->required()->check(CLI::Range(2, 64));
    glued->add_option("--seed", gt_seed, "generator seed");
    glued->add_option("--mode", gt_mode, "reduced | full");
    glued->add_option("--tmax", gt_tmax, "time horizon");
    glued->add_option("--step", gt_step, "sample spacing");
    glued->add_option("--out", gt_out, "output file (default stdout)");

    // bqp
    auto* bqp_cmd = app.add_subcommand("bqp", "clock-register compiler workflows");
    bqp_cmd->require_subcommand(1);
    auto* bqp_compile = bqp_cmd->add_subcommand("compile", "circuit json -> network json");
    std::string bc_circuit, bc_out;
    bqp_compile->add_option("--circuit", bc_circuit, "circuit json file")->required();
    bqp_compile->add_option("--out", bc_out, "output file (default stdout)");

    auto* bqp_run = bqp_cmd->add_subcommand("run", "evolve a compiled instance");
    std::string br_circuit;
    double br_t = 1.0;
    bqp_run->add_option("--circuit", br_circuit, "circuit json file")->required();
    bqp_run->add_option("--t", br_t, "evolution time")->required();

    auto* bqp_chain = bqp_cmd->add_subcommand("perfect-chain", "engineered transfer chain report");
    int pc_length = 1;
    bqp_chain->add_option("--L", pc_length, "chain length parameter")->required()
        ->check(CLI::Range(1, 1000));

    auto* bqp_decide = bqp_cmd->add_subcommand("decide", "threshold decision over times");
    std::string bd_circuit, bd_times;
    double bd_yes = 0.01, bd_no = 1e-9;
    bqp_decide->add_option("--circuit", bd_circuit, "circuit json file")->required();
    bqp_decide->add_option("--times", bd_times, "comma list of times")->required();
    bqp_decide->add_option("--yes-threshold", bd_yes, "accept at or above");
    bqp_decide->add_option("--no-threshold", bd_no, "reject at or below");

    // blockenc
    auto* blockenc_cmd = app.add_subcommand("blockenc", "quantized block-encoding checks");
    blockenc_cmd->require_subcommand(1);
    auto* be_verify = blockenc_cmd->add_subcommand("verify", "measure the encoding error");
    std::string be_network;
    int be_r = 8, be_rm = 8, be_rkappa = 8;
    be_verify->add_option("--network", be_network, "network json file")->required();
    be_verify->add_option("--r", be_r, "comparison bits")->check(CLI::Range(1, 20));
    be_verify->add_option("--rm", be_rm, "mass bits")->check(CLI::Range(1, 62));
    be_verify->add_option("--rkappa", be_rkappa, "spring bits")->check(CLI::Range(1, 62));

    // estimate
    auto* estimate_cmd = app.add_subcommand("estimate", "energy-fraction estimation");
    estimate_cmd->require_subcommand(1);
    std::string es_network, es_subset, es_x0, es_v0;
    double es_t = 0.0, es_eps = 0.05, es_delta = 0.01;
    std::uint64_t es_seed = 0;
    for (const char* name : {"kinetic", "potential"}) {
        auto* sub = estimate_cmd->add_subcommand(
            name, std::string(name) + " energy fraction of a subset");
        sub->add_option("--network", es_network, "network json file")->required();
        sub->add_option("--subset", es_subset,
                        "1-based indices (kinetic) or j-k pairs (potential)")
            ->required();
        sub->add_option("--t", es_t, "evaluation time")->required();
        sub->add_option("--epsilon", es_eps, "target accuracy");
        sub->add_option("--delta", es_delta, "failure probability");
        sub->add_option("--seed", es_seed, "sampling seed");
        sub->add_option("--x0", es_x0, "comma list of displacements");
        sub->add_option("--v0", es_v0, "comma list of velocities");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 2;
    }

    try {
        if (simulate->parsed()) {
            return run_simulate(sim_network, sim_t, sim_samples, sim_backend, sim_dt,
                                sim_eps_pe, sim_init, sim_out, sim_format);
        }
        if (glued->parsed()) {
            return run_glued_trees(gt_n, gt_seed, gt_mode, gt_tmax, gt_step, gt_out);
        }
        if (bqp_compile->parsed()) {
            const auto inst = bqp::compile_circuit(io::read_circuit_file(bc_circuit));
            OutputTarget target(bc_out);
            target.stream() << io::network_to_json(inst.network) << '\n';
            return 0;
        }
        if (bqp_run->parsed()) {
            const auto inst = bqp::compile_circuit(io::read_circuit_file(br_circuit));
            const auto result = bqp::run_instance(inst, br_t);
            nlohmann::json doc;
            doc["t"] = br_t;
            doc["dimension"] = inst.dimension();
            doc["output_oscillator"] = inst.output_index + 1;
            doc["kinetic_fraction_output"] = result.kinetic_fraction_output;
            doc["structural_residual"] = result.structural_residual;
            std::cout << doc.dump() << '\n';
            return 0;
        }
        if (bqp_chain->parsed()) {
            const auto report = bqp::perfect_chain(pc_length);
            nlohmann::json doc;
            doc["L"] = pc_length;
            doc["b"] = std::vector<double>(report.b.data(), report.b.data() + report.b.size());
            doc["u"] = std::vector<double>(report.u.data(), report.u.data() + report.u.size());
            doc["persymmetric"] = report.persymmetric;
            doc["inequality_ok"] = report.inequality_ok;
            doc["couplings_positive"] = report.couplings_positive;
            doc["spectrum"] = std::vector<double>(
                report.spectrum.data(), report.spectrum.data() + report.spectrum.size());
            doc["selected_indexing"] = report.selected_indexing;
            doc["spectrum_residual_selected"] =
                std::min(report.spectrum_residual_shifted, report.spectrum_residual_printed);
            doc["spectrum_residual_printed_indexing"] = report.spectrum_residual_printed;
            doc["max_exp_transfer"] = report.max_exp_transfer;
            doc["max_cos_transfer"] = report.max_cos_transfer;
            doc["exp_transfer_time"] = report.exp_transfer_time;
            std::cout << doc.dump() << '\n';
            return 0;
        }
        if (bqp_decide->parsed()) {
            const auto inst = bqp::compile_circuit(io::read_circuit_file(bd_circuit));
            const auto decision =
                bqp::decide(inst, parse_double_list(bd_times), bd_yes, bd_no);
            nlohmann::json doc;
            doc["decision"] = decision == bqp::Decision::yes  ? "yes"
                              : decision == bqp::Decision::no ? "no"
                                                              : "indeterminate";
            std::cout << doc.dump() << '\n';
            return decision == bqp::Decision::indeterminate ? 4 : 0;
        }
        if (be_verify->parsed()) {
            const auto net = io::read_network_file(be_network);
            const blockenc::QuantizationConfig cfg{be_r, be_rm, be_rkappa};
            const auto enc = blockenc::block_encode_B(net, cfg);
            nlohmann::json doc;
            doc["achieved_error"] = enc.achieved_error;
            doc["predicted_epsilon_prime"] = enc.predicted_error;
            doc["lambda"] = enc.lambda;
            doc["bits"] = {{"r", cfg.r}, {"r_m", cfg.r_m}, {"r_kappa", cfg.r_kappa}};
            doc["padded_n"] = enc.padded_n;
            doc["padded_d"] = enc.padded_d;
            std::cout << doc.dump() << '\n';
            return 0;
        }
        if (estimate_cmd->parsed()) {
            const bool kinetic =
                estimate_cmd->get_subcommands().front()->get_name() == "kinetic";
            const auto net = io::read_network_file(es_network);
            InitialCondition init{es_x0, es_v0};
            const ClassicalState s0 = init.resolve(net.size());
            const auto evolved = evolve_exact(net, s0, es_t);
            const auto psi = encode_primary(net, evolved);
            SubsetOracle subset;
            if (kinetic) {
                auto indices = parse_int_list(es_subset);
                for (int& j : indices) j -= 1;
                subset = SubsetOracle::for_vertices(std::move(indices));
            } else {
                subset = SubsetOracle::for_edges(parse_pair_list(es_subset));
            }
            const auto report = sample_estimate(psi, subset, es_eps, es_delta, es_seed);
            nlohmann::json doc = estimate_report_json(report);
            doc["t"] = es_t;
            doc["kind"] = kinetic ? "kinetic" : "potential";
            std::cout << doc.dump() << '\n';
            return 0;
        }
        throw std::invalid_argument("no subcommand selected");
    } catch (const resource_limit_error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 3;
    } catch (const degenerate_state_error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
