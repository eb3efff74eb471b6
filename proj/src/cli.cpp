// Copyright 2026 The Contractis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "contractis/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "contractis/algebra.hpp"
#include "contractis/contractivity.hpp"
#include "contractis/discrimination.hpp"
#include "contractis/dynamics.hpp"
#include "contractis/error.hpp"
#include "contractis/io.hpp"

namespace contractis::cli {

namespace {

using io::Json;

constexpr const char* kHorizonNote =
    "N0 = ceil(log(epsilon/2) / log(kappa)), natural logarithms. The value 50 is sometimes quoted for "
    "kappa = 0.9, epsilon = 0.01; the exact ceiling is 51 because 0.9^50 = 0.00515 > 0.005 >= 0.9^51 = 0.00464, "
    "and this tool reports 51.";

// {"a": 1, "b": [1, 2]}: compact, one space after ':' and ',', numbers at 12 significant digits.
void write_json(std::ostream& os, const Json& j) {
    switch (j.type()) {
        case Json::value_t::object: {
            os << '{';
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) os << ", ";
                first = false;
                os << Json(key).dump() << ": ";
                write_json(os, value);
            }
            os << '}';
            break;
        }
        case Json::value_t::array: {
            os << '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ", ";
                write_json(os, j[i]);
            }
            os << ']';
            break;
        }
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            os << (std::isfinite(x) ? io::format12(io::round12(x)) : "null");
            break;
        }
        default:
            os << j.dump();
    }
}

std::string csv_cell(const Json& j) {
    if (j.is_number_float()) return io::format12(io::round12(j.get<double>()));
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

// Scalar fields as a header row and a value row; trajectories as step,distance,bound rows.
void write_csv(std::ostream& os, const Json& j) {
    if (j.contains("trajectory")) {
        os << "step,distance,bound\n";
        for (const auto& p : j["trajectory"]) {
            os << csv_cell(p["step"]) << ',' << csv_cell(p["distance"]) << ',' << csv_cell(p["bound"]) << '\n';
        }
        return;
    }
    std::string header, values;
    for (const auto& [key, value] : j.items()) {
        if (value.is_structured()) continue;
        header += (header.empty() ? "" : ",") + key;
        values += (values.empty() ? "" : ",") + csv_cell(value);
    }
    os << header << '\n' << values << '\n';
}

QuantumChannel load_channel(const std::string& source, const std::string& what) {
    return io::channel_from_json(io::load_json(source, what), what);
}

DensityOperator load_state(const std::string& source, const std::string& what) {
    return io::state_from_json(io::load_json(source, what), what);
}

QuantumChannel load_valid_channel(const std::string& source, const std::string& what) {
    QuantumChannel ch = load_channel(source, what);
    ch.require_channel(what);
    return ch;
}

Json trajectory_json(const Trajectory& t) {
    Json points = Json::array();
    for (const auto& p : t.points) {
        points.push_back(Json{{"step", p.step}, {"distance", p.distance}, {"bound", p.bound}});
    }
    return points;
}

struct Globals {
    std::string format = "json";
    std::uint64_t seed = 0;
    std::optional<double> tol;
    std::size_t samples = SearchBudget{}.samples;
    std::size_t restarts = SearchBudget{}.restarts;
    std::size_t workers = 1;
    std::string out;

    SearchBudget budget() const { return {samples, restarts, seed, workers}; }
};

std::uint64_t default_seed() {
    const char* env = std::getenv("CONTRACTIS_SEED");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || env[0] == '-') throw InputError("CONTRACTIS_SEED: expected a nonnegative integer");
    return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Globals g;
    try {
        g.seed = default_seed();
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    CLI::App app{"Analysis of strictly contractive quantum channels", "contractis"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", g.seed, "Search seed (default: $CONTRACTIS_SEED or 0)");
    app.add_option("--tol", g.tol, "Fixed-point tolerance")->check(CLI::PositiveNumber);
    app.add_option("--samples", g.samples, "Random starting pairs per search")->check(CLI::PositiveNumber);
    app.add_option("--restarts", g.restarts, "Independent search restarts")->check(CLI::PositiveNumber);
    app.add_option("--workers", g.workers, "Worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "Write the result to this file instead of stdout");

    std::function<Json()> action;
    std::string channel_arg, channel_b_arg, state_a, state_b, config_arg, code_arg, sigma_arg, method = "nullspace",
                                                                                                base = "e";
    std::optional<std::string> channel_opt;
    double prior = 0.5, kappa_value = 0.0, epsilon = 0.0;
    std::size_t ancilla = 0;
    std::optional<std::size_t> power;
    bool proxy = false, witness = false;

    auto* validate = app.add_subcommand("validate", "Check complete positivity, trace preservation and unitality");
    validate->add_option("channel", channel_arg, "Channel JSON or file")->required();
    validate->callback([&] {
        action = [&] {
            const QuantumChannel ch = load_channel(channel_arg, "channel");
            if (!ch.is_channel()) throw ValidationError("channel: " + ch.violation());
            return Json{{"valid", true},
                        {"dim", ch.dim()},
                        {"operators", ch.kraus().size()},
                        {"completely_positive", ch.completely_positive()},
                        {"trace_preserving", ch.trace_preserving()},
                        {"unital", ch.unital()},
                        {"choi_min_eigenvalue", ch.choi_min_eigenvalue()},
                        {"trace_deviation", ch.trace_preservation_deviation()}};
        };
    });

    auto* kappa_cmd = app.add_subcommand("kappa", "Contractivity modulus (exact closed form or search lower bound)");
    kappa_cmd->add_option("channel", channel_arg, "Channel JSON or file")->required();
    kappa_cmd->add_flag("--witness", witness, "Also report the method and the witness pair");
    kappa_cmd->callback([&] {
        action = [&] {
            const KappaEstimate est = kappa(load_valid_channel(channel_arg, "channel"), g.budget());
            Json j{{"kappa", est.lower_bound}, {"exact", est.exact}};
            if (witness) {
                j["method"] = to_string(est.method);
                j["witness_rho"] = io::state_to_json(est.witness_rho);
                j["witness_sigma"] = io::state_to_json(est.witness_sigma);
            }
            return j;
        };
    });

    auto* fp = app.add_subcommand("fixed-point", "Unique fixed point of a channel");
    fp->add_option("channel", channel_arg, "Channel JSON or file")->required();
    fp->add_option("--method", method, "Solver")->check(CLI::IsMember({"nullspace", "iteration"}));
    fp->callback([&] {
        action = [&] {
            const QuantumChannel ch = load_valid_channel(channel_arg, "channel");
            const auto m = method == "iteration" ? FixedPointMethod::iteration : FixedPointMethod::nullspace;
            const FixedPointResult r = fixed_point(ch, m, g.tol.value_or(1e-10));
            return Json{{"method", to_string(r.method)},
                        {"residual", r.residual},
                        {"iterations", r.iterations},
                        {"state", io::state_to_json(r.state)}};
        };
    });

    auto* disc = app.add_subcommand("discriminate", "Optimal two-state discrimination, optionally after a channel");
    disc->add_option("rho1", state_a, "First state JSON or file")->required();
    disc->add_option("rho2", state_b, "Second state JSON or file")->required();
    disc->add_option("--prior", prior, "Prior probability of rho1")->check(CLI::Range(0.0, 1.0));
    disc->add_option("--channel", channel_opt, "Send both states through this channel first");
    disc->callback([&] {
        action = [&] {
            DensityOperator a = load_state(state_a, "rho1"), b = load_state(state_b, "rho2");
            if (a.dim() != b.dim()) throw DimensionError("rho1 and rho2 have different dimensions");
            DiscriminationBound bound{1.0, 1.0, true};
            if (channel_opt) {
                const QuantumChannel ch = load_valid_channel(*channel_opt, "channel");
                if (ch.dim() != a.dim()) throw DimensionError("channel dimension does not match the states");
                bound = discrimination_ceiling(ch, g.budget());
                a = apply(ch, a);
                b = apply(ch, b);
            }
            const DiscriminationResult r = helstrom(a, b, prior);
            return Json{{"p_correct", r.p_correct},
                        {"distance", linalg::trace_norm_distance(a.matrix(), b.matrix())},
                        {"bound", bound.bound},
                        {"bound_certified", bound.certified}};
        };
    });

    auto* memory = app.add_subcommand("memory", "Decoherence of a noisy memory towards the fixed point");
    memory->add_option("config", config_arg, "Experiment JSON or file: {channel, initial, steps}")->required();
    memory->callback([&] {
        action = [&] {
            const io::ExperimentConfig cfg = io::experiment_from_json(io::load_json(config_arg, "config"));
            if (!cfg.gates.empty()) throw InputError("config.gates: a memory experiment takes no gates");
            if (cfg.initial.size() != 1) throw InputError("config.initial: a memory experiment takes one state");
            const Trajectory t = simulate_memory(cfg.channel, cfg.initial[0], cfg.steps, g.budget());
            const double last_bound = t.points.back().bound;
            return Json{{"kappa", t.kappa},
                        {"kappa_exact", t.kappa_exact},
                        {"steps", cfg.steps},
                        {"p_correct", helstrom(t.final_state, t.reference, 0.5).p_correct},
                        {"p_correct_ceiling", std::min(1.0, 0.5 + 0.25 * last_bound)},
                        {"fixed_point", io::state_to_json(t.reference)},
                        {"trajectory", trajectory_json(t)}};
        };
    });

    auto* circuit = app.add_subcommand("circuit", "Noisy circuit: noise after every gate");
    circuit->add_option("config", config_arg, "Experiment JSON or file: {channel, gates, initial, steps}")->required();
    circuit->callback([&] {
        action = [&] {
            io::ExperimentConfig cfg = io::experiment_from_json(io::load_json(config_arg, "config"));
            const NoisyCircuit c{std::move(cfg.gates), std::move(cfg.channel), std::move(cfg.initial), cfg.steps};
            const Trajectory t = simulate_circuit(c, g.budget());
            return Json{{"kappa", t.kappa},
                        {"kappa_exact", t.kappa_exact},
                        {"steps", t.points.size() - 1},
                        {"trajectory", trajectory_json(t)}};
        };
    });

    auto* horizon = app.add_subcommand("horizon", "Steps after which all trajectories are epsilon-close");
    horizon->footer(kHorizonNote);
    horizon->add_option("--kappa", kappa_value, "Contractivity modulus in (0, 1)")->required();
    horizon->add_option("--epsilon", epsilon, "Trace-norm resolution in (0, 2)")->required();
    horizon->callback([&] {
        action = [&] { return Json{{"horizon", distinguishability_horizon(kappa_value, epsilon)}}; };
    });

    auto* algebra = app.add_subcommand("algebra", "Interaction algebra, commutant and noiseless subsystems");
    algebra->add_option("channel", channel_arg, "Channel JSON or file")->required();
    algebra->callback([&] {
        action = [&] {
            const NoiselessSubsystems ns = noiseless_subsystems(load_valid_channel(channel_arg, "channel"));
            Json blocks = Json::array();
            for (const auto& b : ns.profile.blocks) blocks.push_back({b.multiplicity, b.dimension});
            return Json{{"algebra_dim", ns.profile.algebra_dim},
                        {"commutant_dim", ns.commutant_dim},
                        {"blocks", blocks},
                        {"nontrivial_ns", ns.nontrivial}};
        };
    });

    auto* kl = app.add_subcommand("kl-check", "Knill-Laflamme conditions for a code subspace");
    kl->add_option("channel", channel_arg, "Channel JSON or file")->required();
    kl->add_option("--code", code_arg, "Code basis JSON or file: [[c...], ...] or {vectors}")->required();
    kl->callback([&] {
        action = [&] {
            const QuantumChannel ch = load_valid_channel(channel_arg, "channel");
            const ComplexMatrix code = io::code_basis_from_json(io::load_json(code_arg, "code"), "code");
            const KnillLaflammeResult r = knill_laflamme_check(ch, code);
            return Json{{"correctable", r.correctable},
                        {"max_residual", r.max_residual},
                        {"lambda", io::matrix_to_json(r.lambda)}};
        };
    });

    auto* approx = app.add_subcommand("approximate", "Strictly contractive channel within epsilon of a channel");
    approx->add_option("channel", channel_arg, "Channel JSON or file")->required();
    approx->add_option("--epsilon", epsilon, "Target cb-norm distance")->required()->check(CLI::PositiveNumber);
    approx->add_option("--sigma", sigma_arg, "State of the constant channel mixed in (default I/d)");
    approx->add_flag("--proxy", proxy, "Find a depolarizing channel D_{1/n} epsilon-indistinguishable from the channel");
    approx->callback([&] {
        action = [&] {
            const QuantumChannel ch = load_valid_channel(channel_arg, "channel");
            if (proxy) {
                const DepolarizingProxy p = depolarizing_indistinguishability_n(ch, epsilon, g.budget());
                return Json{{"n", p.n},
                            {"p", 1.0 / static_cast<double>(p.n)},
                            {"distance_to_identity", p.distance_to_identity},
                            {"achieved_lower", p.achieved_lower},
                            {"check_passed", p.check_passed}};
            }
            const DensityOperator sigma = sigma_arg.empty() ? maximally_mixed(ch.dim()) : load_state(sigma_arg, "sigma");
            const ContractiveApproximation a = contractive_approximation(ch, sigma, epsilon);
            const KappaEstimate est = kappa(a.channel, g.budget());
            return Json{{"n", a.n},
                        {"kappa_ceiling", a.kappa_ceiling},
                        {"cb_ceiling", a.cb_ceiling},
                        {"kappa", est.lower_bound},
                        {"kappa_exact", est.exact},
                        {"channel", io::channel_to_json(a.channel)}};
        };
    });

    auto* cb = app.add_subcommand("cbdist", "Bounds on the cb-norm distance between two channels");
    cb->add_option("a", channel_arg, "Channel JSON or file")->required();
    cb->add_option("b", channel_b_arg, "Channel JSON or file (default: identity)");
    cb->add_option("--ancilla", ancilla, "Ancilla dimension for the lower bound (default: d)");
    cb->add_option("--power", power, "Also report the residual bound delta^n for a = T, b = identity");
    cb->callback([&] {
        action = [&] {
            const QuantumChannel a = load_valid_channel(channel_arg, "a");
            const QuantumChannel b = channel_b_arg.empty() ? identity_channel(a.dim()) : load_valid_channel(channel_b_arg, "b");
            if (a.dim() != b.dim()) throw DimensionError("a and b have different dimensions");
            Json j{{"lower", cb_dist_lower(a, b, ancilla, g.budget())}, {"upper", cb_dist_upper(a, b, g.budget())}};
            if (power) {
                if (!channel_b_arg.empty()) throw InputError("--power: the residual bound compares a with the identity");
                const ResidualBound r = approx_ec_residual_bound(a, *power, g.budget());
                j["residual_bound"] = r.bound;
                j["residual_certified"] = r.is_certified;
            }
            return j;
        };
    });

    auto* entropy = app.add_subcommand("entropy", "Von Neumann entropy of a state");
    entropy->add_option("state", state_a, "State JSON or file")->required();
    entropy->add_option("--base", base, "Logarithm base")->check(CLI::IsMember({"e", "2"}));
    entropy->callback([&] {
        action = [&] {
            const DensityOperator rho = load_state(state_a, "state");
            return Json{{"entropy", von_neumann_entropy(rho, base == "2" ? LogBase::two : LogBase::natural)},
                        {"purity", rho.purity()}};
        };
    });

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    // nothing is printed unless the whole command succeeds
    std::ostringstream buffer;
    try {
        const Json result = action();
        if (g.format == "csv") {
            write_csv(buffer, result);
        } else {
            write_json(buffer, result);
            buffer << '\n';
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "validation failed: " << e.what() << '\n';
        return kValidationFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    }

    if (g.out.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(g.out, std::ios::binary);
        if (!file || !(file << buffer.str())) {
            err << "error: --out: cannot write '" << g.out << "'\n";
            return kUsageError;
        }
    }
    return kSuccess;
}

}  // namespace contractis::cli
