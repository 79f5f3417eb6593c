// burstpower command-line driver: solve, closed-form, simulate, sweep.
//
// Exit codes: 0 success, 1 malformed input, 2 no feasible solution.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "burstpower/config.hpp"
#include "burstpower/error.hpp"
#include "burstpower/json_io.hpp"
#include "burstpower/parallel.hpp"

namespace bp = burstpower;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;

struct ScheduleOverrides {
    std::optional<double> t0;
    std::optional<double> c_sa;
    std::optional<double> t_min;
    std::optional<int> outer;
    std::optional<int> inner;
    std::optional<std::uint64_t> seed;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--t0", t0, "Initial temperature (default: automatic)");
        cmd->add_option("--c-sa", c_sa, "Cooling constant");
        cmd->add_option("--t-min", t_min, "Stopping temperature");
        cmd->add_option("--outer", outer, "Outage-vector draws per temperature");
        cmd->add_option("--inner", inner, "Rate-vector draws per surviving outage vector");
        cmd->add_option("--seed", seed, "RNG seed");
    }

    void apply(bp::AnnealingSchedule& s) const {
        if (t0) s.t0 = *t0;
        if (c_sa) s.c_sa = *c_sa;
        if (t_min) s.t_min = *t_min;
        if (outer) s.outer_per_temp = *outer;
        if (inner) s.rate_inner = *inner;
        if (seed) s.seed = *seed;
        s.validate();
    }
};

std::string fmt_double(double x) {
    if (!std::isfinite(x)) return "";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return ec == std::errc{} ? std::string(buf, end) : std::string();
}

std::string fmt_opt(const std::optional<double>& x) { return x ? fmt_double(*x) : std::string(); }

std::string join(std::span<const double> xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ';';
        out += fmt_double(xs[i]);
    }
    return out;
}

std::string csv_safe(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

std::vector<double> parse_values(const std::string& range, const std::string& list) {
    std::vector<double> values;
    if (!list.empty()) {
        std::stringstream ss(list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument("bad sweep value '" + item + "'");
        }
        return values;
    }
    double start = 0.0, stop = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::stringstream ss(range);
    if (!(ss >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !ss.eof())
        throw std::invalid_argument("range must look like start:stop:step");
    if (step == 0.0 || !std::isfinite(step)) throw std::invalid_argument("range step must be non-zero");
    const double span = (stop - start) / step;
    if (span < -1e-9) return values;  // wrong direction: empty
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) values.push_back(start + static_cast<double>(i) * step);
    return values;
}

std::string sweep_csv(const bp::SweepRequest& req, const std::vector<bp::SweepRow>& rows) {
    std::ostringstream out;
    out << "# burstpower sweep: one row per axis value; per-state vectors are ';'-separated; "
           "empty cells mean not applicable or infeasible\n";
    out << "# axis,axis_value,problem,feasible,solver_avg_power,cf_boundary_avg_power,cf_search_avg_power,"
           "eps,rates,powers,gamma,n,eps_out,rate,r_min,r_max,peak_power_w,noise_power,mean_fading_power,"
           "t0,c_sa,t_min,outer_per_temp,rate_inner,seed,evaluated_count,error\n";
    for (const auto& row : rows) {
        const bp::ProblemSpec& s = row.spec;
        const bp::AnnealingSchedule& sc = row.schedule;
        out << bp::to_string(req.axis) << ',' << fmt_double(row.axis_value) << ',' << bp::to_string(req.problem)
            << ',' << (row.feasible() ? 1 : 0) << ',';
        if (row.result) {
            out << fmt_double(row.result->best_avg_power);
        }
        out << ',' << fmt_opt(row.closed_form_boundary) << ',' << fmt_opt(row.closed_form_search) << ',';
        if (row.result) {
            const bp::Policy& p = row.result->best_policy;
            out << join(p.eps.values()) << ',' << join(p.rates) << ',' << join(p.powers);
        } else {
            out << ",,";
        }
        out << ',' << fmt_double(s.gamma) << ',' << s.n_states << ',' << fmt_double(s.eps_out) << ','
            << fmt_double(s.avg_rate) << ',' << fmt_double(s.r_min) << ',' << fmt_double(s.r_max) << ','
            << fmt_double(s.peak_power) << ',' << fmt_double(s.channel.noise_power) << ','
            << fmt_double(s.channel.mean_fading_power) << ',' << fmt_opt(sc.t0) << ',' << fmt_double(sc.c_sa)
            << ',' << fmt_double(sc.t_min) << ',' << sc.outer_per_temp << ',' << sc.rate_inner << ',' << sc.seed
            << ',' << (row.result ? std::to_string(row.result->evaluated_count) : std::string()) << ','
            << csv_safe(row.error) << '\n';
    }
    return out.str();
}

std::optional<bp::Problem> parse_problem(const std::string& name) {
    if (name == "fixed") return bp::Problem::Fixed;
    if (name == "variable") return bp::Problem::Variable;
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-minimal power/rate policies for lossy fading links without transmitter CSI"};
    app.require_subcommand(1);

    // solve
    std::string solve_problem = "fixed";
    std::string solve_spec;
    std::string solve_out;
    int restarts = 1;
    int threads = 0;
    ScheduleOverrides solve_over;
    auto* solve = app.add_subcommand("solve", "Run the annealing solver");
    solve->add_option("--problem", solve_problem, "fixed or variable")->check(CLI::IsMember({"fixed", "variable"}));
    solve->add_option("spec", solve_spec, "Spec file (key = value)")->required();
    solve->add_option("--restarts", restarts, "Independent seeds; the best result is kept");
    solve->add_option("--threads", threads, "Worker threads for restarts (0 = OpenMP default)");
    solve->add_option("--out", solve_out, "Write JSON here instead of stdout");
    solve_over.add_to(solve);

    // closed-form
    std::string cf_spec;
    std::string cf_out;
    int grid = bp::kDefaultGridPoints;
    auto* closed = app.add_subcommand("closed-form", "Analytical N=1 solutions");
    closed->add_option("spec", cf_spec, "Spec file (key = value)")->required();
    closed->add_option("--grid", grid, "Grid points for the scalar searches");
    closed->add_option("--out", cf_out, "Write JSON here instead of stdout");

    // simulate
    std::string sim_policy;
    std::string sim_out;
    std::uint64_t slots = 1'000'000;
    std::uint64_t sim_seed = 1;
    std::uint64_t burn_in = 1000;
    int replications = 1;
    bool do_validate = false;
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo simulation of a policy");
    simulate->add_option("policy", sim_policy, "Policy JSON (a solve output works)")->required();
    simulate->add_option("--slots", slots, "Counted slots per replication");
    simulate->add_option("--seed", sim_seed, "RNG seed");
    simulate->add_option("--burn-in", burn_in, "Slots discarded before counting");
    simulate->add_option("--replications", replications, "Independent replications to merge");
    simulate->add_option("--threads", threads, "Worker threads for replications (0 = OpenMP default)");
    simulate->add_flag("--validate", do_validate, "Compare against analytic steady-state values");
    simulate->add_option("--out", sim_out, "Write JSON here instead of stdout");

    // sweep
    std::string axis_name;
    std::string range;
    std::string value_list;
    std::string sweep_problem = "fixed";
    std::string sweep_spec;
    std::string sweep_out;
    ScheduleOverrides sweep_over;
    auto* sweep = app.add_subcommand("sweep", "Solve across a parameter range and emit CSV");
    sweep->add_option("--axis", axis_name, "eps_out, n, gamma or rate")->required();
    auto* range_opt = sweep->add_option("--range", range, "start:stop:step");
    auto* values_opt = sweep->add_option("--values", value_list, "Comma-separated values");
    range_opt->excludes(values_opt);
    sweep->add_option("--problem", sweep_problem, "fixed or variable")->check(CLI::IsMember({"fixed", "variable"}));
    sweep->add_option("spec", sweep_spec, "Spec file (key = value)")->required();
    sweep->add_option("--grid", grid, "Grid points for the N=1 closed-form columns");
    sweep->add_option("--threads", threads, "Worker threads (0 = OpenMP default)");
    sweep->add_option("--out", sweep_out, "Write CSV here instead of stdout");
    sweep_over.add_to(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*solve) {
            bp::RunConfig cfg = bp::load_config(solve_spec);
            solve_over.apply(cfg.schedule);
            const bp::Problem problem = *parse_problem(solve_problem);
            const bp::RestartResult result = bp::solve_restarts(problem, cfg.spec, cfg.schedule, restarts, threads);
            emit(bp::solve_document(problem, cfg.spec, cfg.schedule, result).dump(2) + "\n", solve_out);
            std::cerr << bp::to_string(problem) << " N=" << cfg.spec.n_states << ": P* = " << result.best.best_avg_power
                      << " W (seed " << result.seed << ", " << result.best.evaluated_count << " candidates)\n";
            return kExitOk;
        }
        if (*closed) {
            const bp::RunConfig cfg = bp::load_config(cf_spec);
            if (cfg.spec.n_states != 1) {
                std::cerr << "error: closed form defined only for N=1\n";
                return kExitInput;
            }
            emit(bp::closed_form_document(cfg.spec, grid).dump(2) + "\n", cf_out);
            return kExitOk;
        }
        if (*simulate) {
            std::ifstream in(sim_policy);
            if (!in) throw std::invalid_argument("cannot open " + sim_policy);
            bp::json doc;
            try {
                doc = bp::json::parse(in);
            } catch (const bp::json::exception& e) {
                throw std::invalid_argument(sim_policy + ": " + e.what());
            }
            bp::PolicyDocument pd = bp::policy_from_json(doc);
            bp::SimConfig sim{.policy = pd.policy, .channel = pd.spec.channel, .slots = slots, .seed = sim_seed,
                              .burn_in = burn_in};
            bp::SimReport report = replications == 1 ? bp::simulate(sim)
                                                     : bp::simulate_replicated(sim, replications, threads);
            bp::json out = {{"policy", bp::to_json(pd.policy)}, {"report", bp::to_json(report)}};
            if (do_validate) out["validation"] = bp::to_json(bp::compare(bp::analytic_summary(pd.policy), report));
            emit(out.dump(2) + "\n", sim_out);
            return kExitOk;
        }
        if (*sweep) {
            const auto axis = bp::parse_axis(axis_name);
            if (!axis) throw std::invalid_argument("unknown axis '" + axis_name + "'");
            if (range.empty() && value_list.empty()) throw std::invalid_argument("give --range or --values");
            bp::RunConfig cfg = bp::load_config(sweep_spec);
            sweep_over.apply(cfg.schedule);
            bp::SweepRequest req{.problem = *parse_problem(sweep_problem),
                                 .axis = *axis,
                                 .values = parse_values(range, value_list),
                                 .base = cfg.spec,
                                 .schedule = cfg.schedule,
                                 .closed_form_grid = grid};
            req.validate();
            const auto rows = bp::run_sweep(req, threads);
            emit(sweep_csv(req, rows), sweep_out);
            return kExitOk;
        }
    } catch (const bp::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << " (" << e.evaluated_count() << " candidates evaluated)\n";
        return kExitInfeasible;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
