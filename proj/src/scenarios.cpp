#include "relatherm/scenarios.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "relatherm/kms.hpp"
#include "relatherm/models.hpp"
#include "relatherm/presets.hpp"
#include "relatherm/spectral.hpp"
#include "relatherm/thermo.hpp"

namespace relatherm {

namespace {

std::string format_value(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

std::string format_hash(std::uint64_t h) {
    char buffer[24];
    std::snprintf(buffer, sizeof(buffer), "0x%016llx", static_cast<unsigned long long>(h));
    return buffer;
}

using Row = std::vector<std::string>;

// Static-partition parallel map with deterministic slot assignment.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::scoped_lock lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// ------------------------- configuration binding -----------------------------

Coupling parse_coupling(const std::string& word) {
    return word == "udw" ? Coupling::UdW : Coupling::TD;
}

std::vector<Coupling> couplings_from_config(const Config& cfg, const std::string& fallback) {
    const std::string word = cfg.get_choice("bath.coupling", {"udw", "td", "both"}, fallback);
    if (word == "both") return {Coupling::UdW, Coupling::TD};
    return {parse_coupling(word)};
}

double beta_from_config(const Config& cfg, double fallback_temperature) {
    if (cfg.has("bath.beta") && cfg.has("bath.temperature"))
        cfg.fail("bath.beta", "specify either bath.beta or bath.temperature, not both");
    if (cfg.has("bath.beta")) return cfg.get_double("bath.beta");
    const double t = cfg.get_double("bath.temperature", fallback_temperature);
    if (!(t > 0.0)) cfg.fail("bath.temperature", "temperature must be positive");
    return 1.0 / t;
}

BathSpec bath_from_config(const Config& cfg, Coupling coupling, double fallback_temperature = 1.0,
                          double fallback_lambda = 0.1) {
    BathSpec bath{coupling, beta_from_config(cfg, fallback_temperature),
                  cfg.get_double("bath.u", 0.0), cfg.get_double("bath.lambda", fallback_lambda)};
    try {
        bath.validate();
    } catch (const DomainError& e) {
        cfg.fail("bath.beta", e.what());
    }
    return bath;
}

struct SystemBundle {
    SystemSpec sys;
    std::string preset;
    double omega0{0.0};  // preset frequency when applicable
};

SystemBundle system_from_config(const Config& cfg, const BathSpec& bath) {
    SystemBundle out;
    out.preset = cfg.get_choice("system.preset",
                                {"qubit", "oscillator", "three-level", "explicit"}, "qubit");
    if (out.preset == "qubit") {
        out.omega0 = cfg.get_double("system.omega0", 1.0);
        out.sys = qubit_system(out.omega0);
    } else if (out.preset == "oscillator") {
        out.omega0 = cfg.get_double("system.omega0", 1.0);
        const double mass = cfg.get_double("system.mass", 1.0);
        Index dim = cfg.get_int("system.dim", 0);
        if (dim == 0)
            dim = oscillator_dim_for_tail(bath_occupation(bath, out.omega0), 1e-10,
                                          cfg.get_int("numerics.max_dim", 64));
        out.sys = oscillator_system(out.omega0, mass, dim);
    } else if (out.preset == "three-level") {
        const double w1 = cfg.get_double("system.omega1", 1.0);
        const double w2 = cfg.get_double("system.omega2", 0.6);
        out.sys = three_level_system(w1, w2, cfg.get_double("system.lambda1", 1.0),
                                     cfg.get_double("system.lambda2", 1.0));
        out.omega0 = w1;
    } else {
        const Index dim = cfg.get_int("system.dim");
        if (dim < 2) cfg.fail("system.dim", "dimension must be >= 2");
        out.sys = {cfg.get_complex_matrix("system.h", dim),
                   cfg.get_complex_matrix("system.a", dim)};
        try {
            out.sys.validate();
        } catch (const std::exception& e) {
            cfg.fail("system.h", e.what());
        }
    }
    return out;
}

Matrix initial_state_from_config(const Config& cfg, const SystemSpec& sys) {
    const std::string kind = cfg.get_choice(
        "initial.kind", {"thermal", "pure", "level", "maximally-mixed"}, "thermal");
    if (kind == "thermal") {
        if (!cfg.has("initial.t0")) cfg.fail("initial.t0", "thermal initial state needs t0");
        const double t0 = cfg.get_double("initial.t0");
        if (!(t0 > 0.0)) cfg.fail("initial.t0", "initial temperature must be positive");
        return gibbs_state(sys, 1.0 / t0);
    }
    if (kind == "pure") {
        if (sys.dim() != 2) cfg.fail("initial.kind", "pure (theta, phi) states are qubit-only");
        return QubitInit{cfg.get_double("initial.theta", pi), cfg.get_double("initial.phi", 0.0)}
            .density();
    }
    if (kind == "level") {
        const Index level = cfg.get_int("initial.level", 0);
        if (level < 0 || level >= sys.dim()) cfg.fail("initial.level", "level out of range");
        Matrix rho = Matrix::Zero(sys.dim(), sys.dim());
        rho(level, level) = 1.0;
        return rho;
    }
    return Matrix::Identity(sys.dim(), sys.dim()) / static_cast<double>(sys.dim());
}

Liouvillian generator_from_config(const Config& cfg, const SystemSpec& sys, const BathSpec& bath,
                                  const TransitionDecomposition& dec) {
    if (cfg.has("bath.n_override")) {
        const auto occupations = cfg.get_list("bath.n_override");
        if (occupations.size() != dec.transitions.size())
            cfg.fail("bath.n_override", "need exactly one occupation per Bohr frequency (" +
                                            std::to_string(dec.transitions.size()) + ")");
        for (double n : occupations)
            if (!(n >= 0.0)) cfg.fail("bath.n_override", "occupations must be nonnegative");
        return build_liouvillian_with_occupations(sys, bath, dec, occupations);
    }
    const bool include_lamb = cfg.get_bool("numerics.include_lamb", false);
    if (include_lamb && !cfg.has("numerics.epsilon"))
        cfg.fail("numerics.epsilon", "the Lamb shift requires an explicit cutoff epsilon");
    return build_liouvillian(sys, bath, dec, include_lamb,
                             include_lamb ? std::optional<double>(cfg.get_double(
                                                "numerics.epsilon"))
                                          : std::nullopt);
}

EvolveOptions evolve_options_from_config(const Config& cfg) {
    EvolveOptions opts;
    const std::string method = cfg.get_choice("numerics.method", {"rk45", "expstep"}, "rk45");
    opts.method = method == "rk45" ? Method::RK45 : Method::ExpStep;
    opts.tol = cfg.get_double("numerics.tol", 1e-10);
    opts.sample_count = cfg.get_int("numerics.samples", 200);
    opts.max_step = cfg.get_double("numerics.max_step", 0.0);
    if (opts.sample_count < 1) cfg.fail("numerics.samples", "need at least one sample");
    return opts;
}

// ------------------------------ output assembly ------------------------------

struct Dataset {
    std::vector<std::string> columns;
    std::vector<Row> rows;
    std::string summary;
    std::vector<Trajectory> trajectories;
};

ScenarioResult finalize(const std::string& scenario, const Config& cfg, const RunOptions& opts,
                        Dataset&& data) {
    ScenarioResult result;
    result.scenario = scenario;
    result.columns = data.columns;
    result.cells = std::move(data.rows);
    result.trajectories = std::move(data.trajectories);

    std::ostringstream csv;
    csv << "# relatherm " << scenario << " dataset\n";
    csv << "# config = " << cfg.source_name() << "\n";
    csv << "# config_hash = " << format_hash(cfg.hash()) << "\n";
    csv << "# seed = " << opts.seed << "\n";
    for (std::size_t c = 0; c < result.columns.size(); ++c)
        csv << result.columns[c] << (c + 1 < result.columns.size() ? "," : "");
    csv << "\n";
    for (const auto& row : result.cells) {
        for (std::size_t c = 0; c < row.size(); ++c)
            csv << row[c] << (c + 1 < row.size() ? "," : "");
        csv << "\n";
    }
    result.csv = csv.str();

    std::string path = cfg.get_string("output.path", scenario + ".csv");
    if (!opts.output_dir.empty())
        path = (std::filesystem::path(opts.output_dir) / path).string();
    if (const auto parent = std::filesystem::path(path).parent_path(); !parent.empty())
        std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file '" + path + "'");
    out << result.csv;
    result.csv_path = path;

    if (!data.summary.empty()) {
        std::ostringstream doc;
        doc << "scenario = " << scenario << "\n";
        doc << "config_hash = " << format_hash(cfg.hash()) << "\n";
        doc << data.summary;
        result.summary = doc.str();
        result.summary_path = path + ".summary";
        std::ofstream sum(result.summary_path, std::ios::binary);
        if (!sum) throw ConfigError("cannot write summary file '" + result.summary_path + "'");
        sum << result.summary;
    }
    return result;
}

void append_state_record(Dataset& data, const SystemSpec& sys, const TransitionDecomposition& dec,
                         const BathSpec& bath, const Liouvillian& gen, double tau,
                         const Matrix& rho, const QuadratureSpec& quad) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho), Eigen::EigenvaluesOnly);
    const double trace_err =
        std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    data.rows.push_back({format_value(tau), format_value(internal_energy(rho, sys)),
                         format_value(heat_current(gen, rho, sys)),
                         format_value(von_neumann_entropy(rho)),
                         format_value(sigma_moving(sys, dec, bath, rho, quad)),
                         format_value(trace_err), format_value(es.eigenvalues().minCoeff())});
}

// --------------------------------- scenarios ---------------------------------

Dataset run_spectrum(const Config& cfg, const RunOptions& opts) {
    const auto couplings = couplings_from_config(cfg, "both");
    const auto grid = cfg.get_grid("grid.beta_omega", [] {
        std::vector<double> g(50);
        for (int i = 0; i < 50; ++i) g[i] = 0.1 + (5.0 - 0.1) * i / 49.0;
        return g;
    }());
    const auto u_list = cfg.get_grid("grid.u_list", {0.4, 0.9});
    const double lambda = cfg.get_double("bath.lambda", 1.0);

    struct Point {
        Coupling coupling;
        double u, x;
    };
    std::vector<Point> points;
    for (Coupling c : couplings)
        for (double u : u_list)
            for (double x : grid) points.push_back({c, u, x});

    std::vector<double> values(points.size());
    parallel_for(points.size(), opts.threads, [&](std::size_t i) {
        const BathSpec bath{points[i].coupling, points[i].x, points[i].u, lambda};
        values[i] = bath_occupation(bath, 1.0);
    });

    Dataset data;
    data.columns = {"beta_omega", "u", "coupling", "N"};
    for (std::size_t i = 0; i < points.size(); ++i)
        data.rows.push_back({format_value(points[i].x), format_value(points[i].u),
                             to_string(points[i].coupling), format_value(values[i])});
    return data;
}

Dataset run_qubit_heat(const Config& cfg, const RunOptions& opts) {
    const auto couplings = couplings_from_config(cfg, "both");
    const double omega0 = cfg.get_double("system.omega0", 1.0);
    const auto u_grid = cfg.get_grid("grid.u", [] {
        std::vector<double> g(41);
        for (int i = 0; i < 41; ++i) g[i] = 2.0 * i / 40.0;
        return g;
    }());
    const auto x_list = cfg.get_grid("grid.beta_omega", {0.25, 0.5, 1.0, 2.0});
    const double lambda = cfg.get_double("bath.lambda", 0.1);

    struct Point {
        Coupling coupling;
        double u, x;
    };
    std::vector<Point> points;
    for (Coupling c : couplings)
        for (double x : x_list)
            for (double u : u_grid) points.push_back({c, u, x});

    // probe prepared at the bath's rest-frame temperature: T0 = T
    std::vector<double> values(points.size());
    parallel_for(points.size(), opts.threads, [&](std::size_t i) {
        const double beta = points[i].x / omega0;
        const BathSpec bath{points[i].coupling, beta, points[i].u, lambda};
        const double n0 = planck_n(beta, omega0);
        const double n = bath_occupation(bath, omega0);
        values[i] = qubit_heat_transfer(n0, n, omega0);
    });

    Dataset data;
    data.columns = {"u", "beta_omega", "coupling", "delta_Q"};
    for (std::size_t i = 0; i < points.size(); ++i)
        data.rows.push_back({format_value(points[i].u), format_value(points[i].x),
                             to_string(points[i].coupling), format_value(values[i])});
    return data;
}

Dataset run_entropy_production(const Config& cfg, const RunOptions& opts) {
    (void)opts;
    const auto couplings = couplings_from_config(cfg, "both");
    const double omega0 = cfg.get_double("system.omega0", 1.0);
    const double u = cfg.get_double("bath.u", 0.9);
    const double lambda = cfg.get_double("bath.lambda", 0.1);
    const double t_bath = 1.0 / beta_from_config(cfg, 1.0);
    const double t_init = cfg.get_double("initial.t0", 33.0);
    const double horizon = cfg.get_double("numerics.gamma0_t_max", 3.0);
    const int samples = cfg.get_int("numerics.samples", 150);
    const bool alternate = cfg.get_bool("figure.alternate", true);
    const QuadratureSpec quad{cfg.get_int("numerics.quad_order", 64)};

    std::vector<std::pair<double, double>> pairs{{t_init, t_bath}};
    if (alternate && t_init != t_bath) pairs.push_back({t_bath, t_init});

    const SystemSpec sys = qubit_system(omega0);
    const auto dec = decompose_transitions(sys);

    Dataset data;
    data.columns = {"gamma0_t", "sigma_over_gamma0", "coupling", "u", "t0", "t"};
    for (Coupling coupling : couplings) {
        // figure normalization: the u = 0 vacuum rate of the coupling
        const double l2 = lambda * lambda;
        const double gamma0 = coupling == Coupling::UdW
                                  ? l2 * omega0 / (2.0 * pi)
                                  : l2 * omega0 * omega0 * omega0 / (6.0 * pi);
        for (const auto& [t0, tb] : pairs) {
            const BathSpec bath{coupling, 1.0 / tb, u, lambda};
            const Liouvillian gen = build_liouvillian(sys, bath, dec);
            const Matrix rho0 = gibbs_state(sys, 1.0 / t0);
            Trajectory traj = evolve(gen, rho0, horizon / gamma0,
                                     {.tol = 1e-11, .sample_count = samples});
            for (std::size_t s = 0; s < traj.times.size(); ++s) {
                const double sigma = sigma_moving(sys, dec, bath, traj.states[s], quad);
                data.rows.push_back({format_value(gamma0 * traj.times[s]),
                                     format_value(sigma / gamma0), to_string(coupling),
                                     format_value(u), format_value(t0), format_value(tb)});
            }
            data.trajectories.push_back(std::move(traj));
        }
    }
    return data;
}

Dataset run_total_entropy(const Config& cfg, const RunOptions& opts) {
    const auto couplings = couplings_from_config(cfg, "both");
    const double omega0 = cfg.get_double("system.omega0", 1.0);
    const auto u_grid = cfg.get_grid("grid.u", [] {
        std::vector<double> g(21);
        for (int i = 0; i < 21; ++i) g[i] = 2.0 * i / 20.0;
        return g;
    }());
    const double lambda = cfg.get_double("bath.lambda", 0.1);
    const double t_bath = 1.0 / beta_from_config(cfg, 1.0);
    const double t_init = cfg.get_double("initial.t0", 33.0);
    const bool alternate = cfg.get_bool("figure.alternate", true);
    const QuadratureSpec quad{cfg.get_int("numerics.quad_order", 64)};

    std::vector<std::pair<double, double>> pairs{{t_init, t_bath}};
    if (alternate && t_init != t_bath) pairs.push_back({t_bath, t_init});

    const SystemSpec sys = qubit_system(omega0);
    const auto dec = decompose_transitions(sys);

    struct Point {
        Coupling coupling;
        double u, t0, tb;
    };
    std::vector<Point> points;
    for (Coupling c : couplings)
        for (const auto& [t0, tb] : pairs)
            for (double u : u_grid) points.push_back({c, u, t0, tb});

    std::vector<std::pair<double, double>> values(points.size());
    parallel_for(points.size(), opts.threads, [&](std::size_t i) {
        const BathSpec bath{points[i].coupling, 1.0 / points[i].tb, points[i].u, lambda};
        const Matrix rho0 = gibbs_state(sys, 1.0 / points[i].t0);
        values[i] = {total_entropy_production(sys, dec, bath, rho0, quad, false),
                     total_entropy_production(sys, dec, bath, rho0, quad, true)};
    });

    Dataset data;
    data.columns = {"u", "coupling", "delta_S_tot", "delta_S_tot_alt", "t0", "t"};
    for (std::size_t i = 0; i < points.size(); ++i)
        data.rows.push_back({format_value(points[i].u), to_string(points[i].coupling),
                             format_value(values[i].first), format_value(values[i].second),
                             format_value(points[i].t0), format_value(points[i].tb)});
    return data;
}

Dataset run_evolve(const Config& cfg, const RunOptions&) {
    const auto couplings = couplings_from_config(cfg, "udw");
    if (couplings.size() != 1) cfg.fail("bath.coupling", "evolve needs a single coupling");
    const BathSpec bath = bath_from_config(cfg, couplings[0]);
    const SystemBundle bundle = system_from_config(cfg, bath);
    const auto dec = decompose_transitions(bundle.sys);
    const Liouvillian gen = generator_from_config(cfg, bundle.sys, bath, dec);
    const Matrix rho0 = initial_state_from_config(cfg, bundle.sys);
    const double t_final = cfg.get_double("numerics.t_final", 20.0);
    if (!(t_final > 0.0)) cfg.fail("numerics.t_final", "t_final must be positive");
    const EvolveOptions eopts = evolve_options_from_config(cfg);
    const QuadratureSpec quad{cfg.get_int("numerics.quad_order", 64)};

    Trajectory traj = evolve(gen, rho0, t_final, eopts);

    Dataset data;
    data.columns = {"tau", "energy", "heat_current", "entropy_vn", "sigma", "trace_error",
                    "min_eig"};
    for (std::size_t s = 0; s < traj.times.size(); ++s)
        append_state_record(data, bundle.sys, dec, bath, gen, traj.times[s], traj.states[s],
                            quad);

    const Matrix& final_state = traj.states.back();
    std::ostringstream summary;
    summary << "system = " << bundle.preset << "\n";
    summary << "dim = " << bundle.sys.dim() << "\n";
    summary << "steps = " << traj.steps << "\n";
    summary << "max_trace_error = " << format_value(traj.max_trace_error) << "\n";
    summary << "min_eigenvalue = " << format_value(traj.min_eigenvalue) << "\n";
    summary << "final_energy = " << format_value(internal_energy(final_state, bundle.sys))
            << "\n";
    summary << "final_entropy = " << format_value(von_neumann_entropy(final_state)) << "\n";
    try {
        const Matrix target = stationary_state(gen);
        summary << "stationary_distance = " << format_value((final_state - target).norm())
                << "\n";
    } catch (const DegenerateStationaryError&) {
        summary << "stationary_distance = n/a (asymptotic state not unique)\n";
    }
    data.summary = summary.str();
    data.trajectories.push_back(std::move(traj));
    return data;
}

Dataset run_stationary(const Config& cfg, const RunOptions&) {
    const auto couplings = couplings_from_config(cfg, "udw");
    if (couplings.size() != 1) cfg.fail("bath.coupling", "stationary needs a single coupling");
    const BathSpec bath = bath_from_config(cfg, couplings[0]);
    const SystemBundle bundle = system_from_config(cfg, bath);
    const auto dec = decompose_transitions(bundle.sys);
    const Liouvillian gen = generator_from_config(cfg, bundle.sys, bath, dec);
    const double tol = cfg.get_double("numerics.tol", 1e-10);

    const Matrix rho = stationary_state(gen, tol);
    const Matrix rho_eig = dec.eigenvectors.adjoint() * rho * dec.eigenvectors;

    auto report = check_detailed_balance(rho, dec, bath, 1e-8);
    if (cfg.has("bath.n_override")) {
        // ratios against the explicitly injected occupations
        report = DetailedBalanceReport{};
        const auto occ = cfg.get_list("bath.n_override");
        for (std::size_t i = 0; i < dec.transitions.size(); ++i) {
            const double expected = occ[i] / (occ[i] + 1.0);
            for (const auto& [n, m] : dec.transitions[i].pairs) {
                const double ratio = rho_eig(m, m).real() / rho_eig(n, n).real();
                report.pairs.push_back({m, n, ratio, expected});
                report.max_violation = std::max(report.max_violation,
                                                std::abs(ratio - expected) / expected);
            }
        }
        report.holds = report.max_violation < 1e-8;
    }

    Dataset data;
    data.columns = {"level", "population"};
    double coherence = 0.0;
    for (Index i = 0; i < bundle.sys.dim(); ++i) {
        data.rows.push_back({std::to_string(i), format_value(rho_eig(i, i).real())});
        for (Index j = 0; j < bundle.sys.dim(); ++j)
            if (i != j) coherence += std::norm(rho_eig(i, j));
    }

    std::ostringstream summary;
    summary << "system = " << bundle.preset << "\n";
    summary << "dim = " << bundle.sys.dim() << "\n";
    for (Index i = 0; i < bundle.sys.dim(); ++i)
        summary << "population_" << i << " = " << format_value(rho_eig(i, i).real()) << "\n";
    summary << "coherence_norm = " << format_value(std::sqrt(coherence)) << "\n";
    summary << "heat_current_residual = "
            << format_value(std::abs(heat_current(gen, rho, bundle.sys))) << "\n";
    summary << "generator_residual = " << format_value((gen.total * vectorize(rho)).norm())
            << "\n";
    summary << "detailed_balance_holds = " << (report.holds ? "true" : "false") << "\n";
    summary << "detailed_balance_max_violation = " << format_value(report.max_violation) << "\n";
    for (const auto& p : report.pairs)
        summary << "balance_ratio_" << p.upper << "_" << p.lower << " = "
                << format_value(p.ratio) << " (expected " << format_value(p.expected) << ")\n";
    data.summary = summary.str();
    return data;
}

Dataset run_kms_check(const Config& cfg, const RunOptions& opts) {
    const auto beta_list = cfg.get_grid("grid.beta_list", {1.0});
    const auto u_list = cfg.get_grid("grid.u_list", {0.5, 1.0});
    const auto t_list = cfg.get_grid("grid.t_list", {0.25, 0.45});
    const int nmax = cfg.get_int("kms.nmax", 10000);
    const QuadratureSpec quad{cfg.get_int("numerics.quad_order", 64)};

    struct Point {
        double beta, u, t;
    };
    std::vector<Point> points;
    for (double beta : beta_list)
        for (double u : u_list)
            for (double t : t_list) points.push_back({beta, u, t});

    struct Values {
        double kms, boosted_kms, convex, closed_err;
    };
    std::vector<Values> values(points.size());
    parallel_for(points.size(), opts.threads, [&](std::size_t i) {
        const auto& [beta, u, t] = points[i];
        const ImageSumSpec rest{beta, nmax, 0.0};
        const ImageSumSpec boosted{beta, nmax, u};
        const Complex g = hadamard_thermal(rest, t, 0.0);
        const Complex g_shift = hadamard_thermal(rest, Complex(t, -beta), 0.0);
        const Complex gb = hadamard_boosted(boosted, t, 0.0, 0.0);
        const Complex gb_shift = hadamard_boosted(boosted, Complex(t, -beta), 0.0, 0.0);
        values[i] = {std::abs(g_shift - g), std::abs(gb_shift - gb),
                     boosted_convex_check(boosted, t, quad),
                     std::abs(g.real() - hadamard_closed_r0(beta, t))};
    });

    Dataset data;
    data.columns = {"beta", "u",           "t",
                    "nmax", "kms_residual", "boosted_kms_residual",
                    "convex_residual", "closed_form_error"};
    for (std::size_t i = 0; i < points.size(); ++i)
        data.rows.push_back({format_value(points[i].beta), format_value(points[i].u),
                             format_value(points[i].t), std::to_string(nmax),
                             format_value(values[i].kms), format_value(values[i].boosted_kms),
                             format_value(values[i].convex),
                             format_value(values[i].closed_err)});
    return data;
}

}  // namespace

double ScenarioResult::number(std::size_t row, const std::string& column) const {
    return std::stod(text(row, column));
}

const std::string& ScenarioResult::text(std::size_t row, const std::string& column) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (columns[c] == column) return cells.at(row).at(c);
    throw std::out_of_range("ScenarioResult: no column named '" + column + "'");
}

ScenarioResult run_scenario(const Config& cfg, const RunOptions& opts) {
    if (!cfg.has("scenario"))
        throw ConfigError(cfg.source_name() + ": missing required key 'scenario'");
    const std::string scenario =
        cfg.get_choice("scenario",
                       {"spectrum", "qubit-heat", "entropy-production", "total-entropy",
                        "evolve", "stationary", "kms-check"},
                       "");
    Dataset data;
    if (scenario == "spectrum")
        data = run_spectrum(cfg, opts);
    else if (scenario == "qubit-heat")
        data = run_qubit_heat(cfg, opts);
    else if (scenario == "entropy-production")
        data = run_entropy_production(cfg, opts);
    else if (scenario == "total-entropy")
        data = run_total_entropy(cfg, opts);
    else if (scenario == "evolve")
        data = run_evolve(cfg, opts);
    else if (scenario == "stationary")
        data = run_stationary(cfg, opts);
    else
        data = run_kms_check(cfg, opts);
    return finalize(scenario, cfg, opts, std::move(data));
}

int exit_code_for(const std::exception& error) {
    if (dynamic_cast<const ConfigError*>(&error)) return 2;
    if (dynamic_cast<const QuadratureError*>(&error)) return 3;
    if (dynamic_cast<const IntegratorError*>(&error)) return 3;
    if (dynamic_cast<const DegenerateStationaryError*>(&error)) return 4;
    if (dynamic_cast<const DomainError*>(&error)) return 2;
    if (dynamic_cast<const DimensionError*>(&error)) return 2;
    return 1;
}

}  // namespace relatherm
