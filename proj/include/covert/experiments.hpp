#pragma once

#include <optional>

#include "covert/analytics.hpp"
#include "covert/dependent_model.hpp"
#include "covert/detectors.hpp"
#include "covert/pmf.hpp"
#include "covert/table.hpp"

namespace covert {

// One spec drives every experiment; each driver reads the fields it needs
// and validates them against its preconditions.
struct ExperimentSpec {
    std::optional<PacketSizePmf> pmf;
    std::optional<DependentSizeModel> model;
    std::vector<double> epsilons;
    std::vector<uint64_t> lengths;       // stream lengths n
    std::vector<double> gammas;          // insertion exponents, sqrt-law sweep
    uint64_t trials = 1000;
    double alpha = 0.05;                 // mean-detector false-alarm budget
    EtaMode eta_mode = EtaMode::kConservative;
    uint64_t seed = 1;
};

// For each (epsilon, n) at p = epsilon/(xi sqrt(n)): empirical P_e of the
// likelihood-ratio and mean detectors next to the analytic floor 1/2-epsilon.
Table covertness_sweep(const ExperimentSpec& spec);

// For each (gamma, n): selection probability rescaled so the expected total
// insertion is n^gamma, detected with the mean detector.
Table sqrt_law_sweep(const ExperimentSpec& spec);

// Distribution of n_c against the expected L*m*p*n and the half-mean
// threshold.
Table throughput_experiment(const ExperimentSpec& spec);

// Monte Carlo mean n_c against p' * c(n), plus the per-row conditional KL
// budget check.
Table dependent_experiment(const ExperimentSpec& spec);

// Analytic only: both KL terms of the joint (size, flag) distance and their
// budgets, one row per n.
Table flag_covertness_report(const PacketSizePmf& pmf, double epsilon,
                             const std::vector<uint64_t>& lengths);

// The scalar inequality behind the flag-bit bound checked on a dense grid;
// returns true when it holds at every point.
bool flag_scalar_inequality_holds(size_t grid_points, double r_max);

}  // namespace covert
