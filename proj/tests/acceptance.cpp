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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: contractis_acceptance [path-to-unit-test-binary]

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "contractis/algebra.hpp"
#include "contractis/cli.hpp"
#include "contractis/contractivity.hpp"
#include "contractis/discrimination.hpp"
#include "contractis/dynamics.hpp"
#include "helpers.hpp"

using namespace contractis;
using namespace contractis::testing;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

std::string fmt(double x, int digits = 6) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

QuantumChannel random_unital_qubit(Rng& rng, double vmax) { return qubit_canonical(random_unital_form(rng, vmax)); }

// Random qubit form with its max |v_i|, rejection-sampled until CP.
std::pair<QuantumChannel, double> random_form_with_kappa(Rng& rng, double vmax) {
    for (;;) {
        QubitCanonicalForm form;
        form.u = random_unitary(2, rng);
        form.v_unitary = random_unitary(2, rng);
        for (int k = 0; k < 3; ++k) form.v(k) = uniform(rng, -vmax, vmax);
        for (int k = 0; k < 3; ++k) form.t(k) = uniform(rng, -0.3, 0.3);
        try {
            return {qubit_canonical(form), form.v.cwiseAbs().maxCoeff()};
        } catch (const ValidationError&) {
        }
    }
}

Check criterion1() {
    Check c;
    double worst_time = 0.0, worst_gap = 0.0;
    for (double p : {0.1, 0.5, 0.9}) {
        const auto t0 = std::chrono::steady_clock::now();
        const QuantumChannel ch = depolarizing(2, p);
        const KappaEstimate exact = kappa(ch);
        const KappaEstimate search = kappa_search(ch);
        const double elapsed = seconds_since(t0);
        worst_time = std::max(worst_time, elapsed);
        worst_gap = std::max(worst_gap, std::abs(search.lower_bound - (1 - p)));
        c.require(exact.exact && std::abs(exact.lower_bound - (1 - p)) < 1e-12, "closed form wrong at p=" + fmt(p));
        c.require(std::abs(search.lower_bound - (1 - p)) <= 1e-4, "search off at p=" + fmt(p));
        c.require(elapsed < 5.0, "too slow at p=" + fmt(p));
    }
    if (c.ok) c.detail = "max search gap " + fmt(worst_gap, 3) + ", slowest " + fmt(worst_time, 3) + " s";
    return c;
}

Check criterion2() {
    Check c;
    Rng rng = make_rng(202);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto [ch, vmax] = random_form_with_kappa(rng, 1.0);
        const KappaEstimate exact = kappa(ch);
        const KappaEstimate search = kappa_search(ch, {2000, 16, static_cast<std::uint64_t>(i), 1});
        worst = std::max(worst, std::abs(search.lower_bound - exact.lower_bound));
        c.require(exact.exact && std::abs(exact.lower_bound - vmax) < 1e-10, "closed form != max|v| at form " + std::to_string(i));
        c.require(std::abs(search.lower_bound - exact.lower_bound) <= 1e-3, "search off at form " + std::to_string(i));
    }
    if (c.ok) c.detail = "50 forms, max |exact - search| " + fmt(worst, 3);
    return c;
}

Check criterion3() {
    Check c;
    Rng rng = make_rng(303);
    double worst_kappa = 0.0, worst_scaling = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double p = uniform(rng, 0.05, 0.95), q = uniform(rng, 0.05, 0.95);
        const QuantumChannel ch = tensor(depolarizing(2, p), depolarizing(2, q));
        const double expected = std::max(1 - p, 1 - q);
        const KappaEstimate est = kappa(ch);
        const KappaEstimate search = kappa_search(ch, {2000, 16, static_cast<std::uint64_t>(i), 1});
        worst_kappa = std::max({worst_kappa, std::abs(est.lower_bound - expected), std::abs(search.lower_bound - expected)});
        c.require(std::abs(est.lower_bound - expected) <= 1e-3, "closed-form estimate off for pair " + std::to_string(i));
        c.require(std::abs(search.lower_bound - expected) <= 1e-3, "search estimate off for pair " + std::to_string(i));
        for (int s = 0; s < 10; ++s) {
            const DensityOperator rho = random_state(4, rng);
            const auto before = decompose_two_qubit(rho);
            const auto after = decompose_two_qubit(apply(ch, rho));
            const double dev = std::max({(after.alpha - (1 - p) * before.alpha).cwiseAbs().maxCoeff(),
                                         (after.beta - (1 - q) * before.beta).cwiseAbs().maxCoeff(),
                                         (after.theta - (1 - p) * (1 - q) * before.theta).cwiseAbs().maxCoeff()});
            worst_scaling = std::max(worst_scaling, dev);
        }
    }
    c.require(worst_scaling <= 1e-10, "(alpha, beta, theta) scaling deviates by " + fmt(worst_scaling, 3));
    if (c.ok) c.detail = "kappa gap " + fmt(worst_kappa, 3) + ", scaling deviation " + fmt(worst_scaling, 3) + " on 100 states";
    return c;
}

Check criterion4() {
    Check c;
    QubitCanonicalForm form;
    form.v = Eigen::Vector3d(0.9, 0.9, 0.81);
    form.t = Eigen::Vector3d(0, 0, 0.19);
    const QuantumChannel ch = qubit_canonical(form);
    const FixedPointResult fp = fixed_point(ch);
    // |1> is orthogonal to the fixed point |0>
    const DensityOperator rho0 = pure_state(basis(2, 1));
    c.require(std::abs(linalg::hs_inner(rho0.matrix(), fp.state.matrix())) < 1e-12, "initial state not orthogonal to the fixed point");
    const Trajectory t = simulate_memory(ch, rho0, 10);
    const double bound = t.points.back().bound;
    const double ceiling = 0.5 + 0.25 * bound;
    const double p = helstrom(t.final_state, t.reference, 0.5).p_correct;
    c.require(t.kappa_exact && std::abs(t.kappa - 0.9) < 1e-12, "kappa is not exactly 0.9");
    c.require(std::abs(bound - 0.69735688) <= 1e-6, "bound " + fmt(bound, 10));
    c.require(std::abs(ceiling - 0.67433922) <= 1e-6, "ceiling " + fmt(ceiling, 10));
    c.require(p <= ceiling + 1e-12, "Helstrom probability above the ceiling");
    for (const auto& pt : t.points) c.require(pt.distance <= pt.bound + 1e-9, "distance above bound at step " + std::to_string(pt.step));
    if (c.ok) c.detail = "bound " + fmt(bound, 8) + ", ceiling " + fmt(ceiling, 8) + ", achieved p " + fmt(p, 8);
    return c;
}

Check criterion5() {
    Check c;
    const std::size_t n = distinguishability_horizon(0.9, 0.01);
    c.require(n == 51, "horizon " + std::to_string(n));
    c.require(std::pow(0.9, 51) <= 0.005 && 0.005 < std::pow(0.9, 50), "ceiling inequalities fail");
    std::ostringstream out, err;
    cli::run({"contractis", "horizon", "--help"}, out, err);
    c.require(out.str().find("50") != std::string::npos && out.str().find("51") != std::string::npos,
              "help text does not document 50 vs 51");
    if (c.ok) c.detail = "N0 = 51, 0.9^51 = " + fmt(std::pow(0.9, 51), 4) + " <= 0.005 < 0.9^50 = " + fmt(std::pow(0.9, 50), 4);
    return c;
}

Check criterion6() {
    Check c;
    Rng rng = make_rng(606);
    double worst_margin = 1.0;
    for (int i = 0; i < 500; ++i) {
        const std::size_t d = 2 + i % 2;
        const DensityOperator a = i % 3 ? random_state(d, rng) : pure_state(random_pure(d, rng));
        const DensityOperator b = random_state(d, rng);
        const double pi1 = uniform(rng);
        const double best = helstrom(a, b, pi1).p_correct;
        for (int k = 0; k < 200; ++k) {
            worst_margin = std::min(worst_margin, best - success_probability(a, b, pi1, random_effect(d, rng)));
        }
    }
    c.require(worst_margin >= -1e-9, "random POVM beat Helstrom by " + fmt(-worst_margin, 3));

    std::vector<QuantumChannel> channels;
    for (int i = 0; i < 8; ++i) channels.push_back(random_form_with_kappa(rng, 0.95).first);
    for (int i = 0; i < 6; ++i) channels.push_back(depolarizing(2 + i % 3, uniform(rng, 0.05, 0.95)));
    for (int i = 0; i < 6; ++i) channels.push_back(tensor(random_unital_qubit(rng, 0.95), random_unital_qubit(rng, 0.95)));
    double worst_ceiling = -1.0;
    for (const auto& ch : channels) {
        const DiscriminationBound bound = discrimination_ceiling(ch);
        c.require(bound.certified, "kappa not exact for a ceiling channel");
        for (int k = 0; k < 1000; ++k) {
            const bool pure = k % 2 == 0;
            const DensityOperator a = pure ? pure_state(random_pure(ch.dim(), rng)) : random_state(ch.dim(), rng);
            const DensityOperator b = pure ? pure_state(random_pure(ch.dim(), rng)) : random_state(ch.dim(), rng);
            const double p = helstrom(apply(ch, a), apply(ch, b), 0.5).p_correct;
            worst_ceiling = std::max(worst_ceiling, p - bound.bound);
        }
    }
    c.require(worst_ceiling <= 1e-9, "discrimination ceiling exceeded by " + fmt(worst_ceiling, 3));
    if (c.ok) {
        c.detail = "min POVM margin " + fmt(worst_margin, 3) + " over 500x200, max ceiling slack " + fmt(worst_ceiling, 3) +
                   " over 20x1000";
    }
    return c;
}

Check criterion7() {
    Check c;
    Rng rng = make_rng(707);
    constexpr double tol = 1e-12;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto [ch, k] = random_form_with_kappa(rng, 0.95);
        const FixedPointResult a = fixed_point(ch, FixedPointMethod::nullspace);
        const FixedPointResult b = fixed_point(ch, FixedPointMethod::iteration, tol);
        const double gap = trace_norm_distance(a.state, b.state);
        worst = std::max(worst, gap);
        c.require(gap <= 1e-9, "solvers disagree by " + fmt(gap, 3) + " on channel " + std::to_string(i));
        const auto limit = static_cast<std::size_t>(std::ceil(std::log(tol / 2) / std::log(k)));
        c.require(b.iterations <= limit, "iteration count " + std::to_string(b.iterations) + " above " + std::to_string(limit));
    }
    if (c.ok) c.detail = "100 channels, max disagreement " + fmt(worst, 3);
    return c;
}

Check criterion8() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = make_rng(808);
    for (int i = 0; i < 50; ++i) {
        const QuantumChannel ch = i < 25 ? random_form_with_kappa(rng, 0.95).first
                                         : tensor(random_unital_qubit(rng, 0.95), random_unital_qubit(rng, 0.95));
        const NoiselessSubsystems ns = noiseless_subsystems(ch);
        c.require(ns.commutant_dim == 1 && !ns.nontrivial, "nontrivial commutant for channel " + std::to_string(i));
    }
    const NoiselessSubsystems local = noiseless_subsystems(tensor(identity_channel(2), depolarizing(2, 0.3)));
    c.require(local.profile.blocks.size() == 1 && local.profile.blocks[0].multiplicity == 2 &&
                  local.profile.blocks[0].dimension == 2 && local.nontrivial,
              "tensor(id, D_p) profile is not [(2,2)]");
    const double elapsed = seconds_since(t0);
    c.require(elapsed < 30.0, "took " + fmt(elapsed, 3) + " s");
    if (c.ok) c.detail = "50 channels with commutant dim 1, tensor(id, D_p) -> [(2,2)], " + fmt(elapsed, 3) + " s";
    return c;
}

Check criterion9() {
    Check c;
    std::vector<ComplexMatrix> errors{linalg::identity(8)};
    for (std::size_t q = 0; q < 3; ++q) {
        ComplexMatrix x = ComplexMatrix::Ones(1, 1);
        for (std::size_t k = 0; k < 3; ++k) x = linalg::kron(x, k == q ? linalg::pauli(1) : linalg::identity(2));
        errors.push_back(x);
    }
    ComplexMatrix code(8, 2);
    code << basis(8, 0), basis(8, 7);
    c.require(knill_laflamme_check(errors, code).correctable, "repetition code rejected");

    Rng rng = make_rng(909);
    const QuantumChannel dep = depolarizing(4, 0.1);
    double smallest = 1e300;
    for (int i = 0; i < 200; ++i) {
        const auto r = knill_laflamme_check(dep, random_unitary(4, rng).leftCols(2));
        c.require(!r.correctable, "random subspace " + std::to_string(i) + " accepted");
        smallest = std::min(smallest, r.max_residual);
    }
    c.require(smallest >= 1e-3, "smallest residual " + fmt(smallest, 3));
    if (c.ok) c.detail = "repetition code correctable, 200 subspaces rejected, min residual " + fmt(smallest, 4);
    return c;
}

Check criterion10() {
    Check c;
    Rng rng = make_rng(1010);
    double worst_kappa = -1.0, worst_cb = -1.0;
    for (int i = 0; i < 20; ++i) {
        const std::size_t d = 2 + i % 2;
        const QuantumChannel ch = random_channel(d, 1 + i % 3, rng);
        const ContractiveApproximation a = contractive_approximation(ch, random_state(d, rng), 0.1);
        const SearchBudget budget{2000, 16, static_cast<std::uint64_t>(i), 1};
        const double k = kappa(a.channel, budget).lower_bound;
        const double cb = cb_dist_lower(ch, a.channel, 0, budget);
        const double n = static_cast<double>(a.n);
        worst_kappa = std::max(worst_kappa, k - (1 - 1 / (2 * n)));
        worst_cb = std::max(worst_cb, cb - 1 / n);
        c.require(k <= 1 - 1 / (2 * n) + 1e-9, "kappa above 1 - 1/2n for channel " + std::to_string(i));
        c.require(cb <= 1 / n, "cb distance above 1/n for channel " + std::to_string(i));
    }
    if (c.ok) {
        c.detail = "n = 11, max kappa - ceiling " + fmt(worst_kappa, 3) + ", max cb - 1/n " + fmt(worst_cb, 3);
    }
    return c;
}

// Everything that could depend on scheduling, printed at full precision.
std::string deterministic_transcript(std::size_t workers) {
    std::ostringstream os;
    os.precision(17);
    Rng rng = make_rng(1111);
    for (int i = 0; i < 4; ++i) {
        const QuantumChannel ch = random_channel(2 + i % 2, 2, rng);
        const SearchBudget budget{400, 8, static_cast<std::uint64_t>(i), workers};
        const KappaEstimate k = kappa_search(ch, budget);
        os << k.lower_bound << ' ' << k.witness_rho.matrix() << ' ' << cb_dist_lower(ch, identity_channel(ch.dim()), 0, budget)
           << ' ' << cb_dist_upper(ch, identity_channel(ch.dim()), budget) << '\n';
    }
    std::ostringstream out, err;
    cli::run({"contractis", "kappa", "--witness", "--samples", "300", "--restarts", "6", "--seed", "3", "--workers",
              std::to_string(workers),
              R"({"type":"tensor","channels":[{"type":"qubit_canonical","v":[0.9,0.9,0.81],"t":[0,0,0.19]},
                  {"type":"qubit_canonical","v":[0.5,0.6,0.4],"t":[0.1,0,0.2]}]})"},
             out, err);
    os << out.str();
    return os.str();
}

std::string capture(const std::string& command) {
    std::string output;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
    if (!pipe) return output;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) output.append(buf.data(), n);
    return output;
}

Check criterion11(const std::string& unit_tests) {
    Check c;
    const std::string one = deterministic_transcript(1);
    c.require(one == deterministic_transcript(1), "repeated run differs");
    c.require(one == deterministic_transcript(4), "4 workers differ from 1 worker");
    std::string detail = "searches and CLI identical across runs and 1/4 workers";
    if (!unit_tests.empty()) {
        const std::string cmd = "'" + unit_tests + "' --no-version 2>&1";
        const std::string first = capture(cmd);
        c.require(!first.empty() && first == capture(cmd), "unit suite output differs between runs");
        detail += ", unit suite output byte-identical across two runs";
    }
    if (c.ok) c.detail = detail;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string unit_tests = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
        {"kappa closed forms for depolarizing qubit channels", criterion1},
        {"qubit canonical kappa vs multistart search", criterion2},
        {"tensor depolarizing kappa and Bloch scaling", criterion3},
        {"noisy memory bound and Helstrom ceiling", criterion4},
        {"distinguishability horizon", criterion5},
        {"Helstrom optimality and discrimination ceiling", criterion6},
        {"fixed-point solver agreement", criterion7},
        {"trivial commutants and noiseless subsystem profile", criterion8},
        {"Knill-Laflamme checker", criterion9},
        {"strictly contractive approximation", criterion10},
        {"determinism", [&] { return criterion11(unit_tests); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            c = criteria[i].second();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        failed += c.ok ? 0 : 1;
        std::cout << (c.ok ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << " (" << c.detail
                  << ")" << std::endl;
    }
    std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
