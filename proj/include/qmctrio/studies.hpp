// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qmct {

/// Shared configuration for the experiment harness. n ranges over 2^m for
/// m in [m_min, m_max]; each (setting, n) cell is evaluated over
/// `replications` independent randomizations.
struct StudyConfig {
    std::string id;
    std::vector<std::size_t> dims = {2, 5, 10};
    unsigned m_min = 4;
    unsigned m_max = 12;
    std::size_t replications = 100;
    std::vector<std::string> samplers = {"iid", "lattice", "sobol"};
    std::uint64_t seed = 0;
    std::string out;  // empty = stdout
    unsigned threads = 1;
    std::string kernel = "l2";  // "l2" or "weighted"
    double gamma_decay = 3.0;   // gamma_k^2 = k^-decay for the weighted kernel

    void validate() const;  // throws std::invalid_argument
};

/// Root-mean-square discrepancy versus n per (d, sampler), normalized by the
/// one-point value and annotated with the fitted log-log slope.
/// Columns: d,n,sampler,rms_disc,scaled_disc,slope
void discrepancy_decay_study(const StudyConfig& cfg, std::ostream& os);

/// Absolute-error quantiles for the 3-d Gaussian box probability under both
/// cube transforms. Columns: n,sampler,transform,median_abs_err,q90_abs_err
void mvn_error_study(const StudyConfig& cfg, std::ostream& os);

/// Absolute-error quantiles for the Asian call under both path constructions,
/// against an internal high-n scrambled-Sobol' reference.
/// Columns: n,sampler,construction,median_abs_err,q90_abs_err
void asian_study(const StudyConfig& cfg, std::ostream& os);

/// Fitted decay slopes on the Gaussian problem: median error slope, RMS
/// discrepancy slope, and their difference (the implied confounding slope).
/// Columns: sampler,error_slope,disc_slope,cnf_slope
void confounding_order_study(const StudyConfig& cfg, std::ostream& os);

/// Per-replication Bayesian cubature fits on the 3-d Gaussian problem with a
/// trailing summary row carrying the empirical coverage of the 99% bound.
/// Columns: rep,n,theta,scale,mu_hat,half_width,covered,coverage
void bayes_coverage_study(const StudyConfig& cfg, std::ostream& os);

/// Dispatch by cfg.id; throws std::invalid_argument on an unknown id.
void run_study(const StudyConfig& cfg, std::ostream& os);

/// Known study ids, in dispatch order.
std::vector<std::string> study_names();

}  // namespace qmct
