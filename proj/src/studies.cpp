// SPDX-License-Identifier: MIT
#include "qmctrio/studies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qmctrio/apps.hpp"
#include "qmctrio/bayes.hpp"
#include "qmctrio/kernels.hpp"
#include "qmctrio/sequences.hpp"
#include "qmctrio/trio.hpp"

namespace qmct {

namespace {

constexpr const char* kStudyNames[] = {"disc-decay", "mvn-error", "asian",
                                       "confounding-order", "bayes-coverage"};

/// Shortest round-trip decimal form so CSV bytes are platform-stable.
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Static-partition parallel loop. Results must be written to slots indexed
/// by i so the reduction order (and the CSV bytes) never depend on threads.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, count);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

double quantile(std::vector<double> v, double q) {
    if (v.empty()) throw std::invalid_argument("quantile: empty sample");
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}

Randomization default_randomization(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::iid: return Randomization::none;
        case SamplerKind::lattice: return Randomization::shift;
        case SamplerKind::sobol: return Randomization::scramble_shift;
    }
    return Randomization::none;
}

SampleDesign make_design(SamplerKind kind, std::size_t d, unsigned m,
                         const StreamKey& key) {
    SamplerSpec spec{kind, d, default_randomization(kind), key};
    return generate_nodes(spec, m);
}

std::vector<double> decay_gammas(std::size_t d, double decay) {
    std::vector<double> g(d);
    for (std::size_t k = 0; k < d; ++k)
        g[k] = std::pow(static_cast<double>(k + 1), -0.5 * decay);
    return g;
}

double closed_disc(const SampleDesign& design, const std::string& kernel,
                   const std::vector<double>& gamma) {
    if (kernel == "l2") return l2_discrepancy_closed(design);
    return weighted_l2_discrepancy(design, gamma);
}

/// RMS of the closed-form discrepancy over cfg.replications randomizations.
double rms_disc(const StudyConfig& cfg, SamplerKind kind, std::size_t d, unsigned m,
                const StreamKey& cell_key, const std::vector<double>& gamma) {
    std::vector<double> sq(cfg.replications);
    parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
        const SampleDesign design = make_design(kind, d, m, cell_key.child("rep", r));
        const double dsc = closed_disc(design, cfg.kernel, gamma);
        sq[r] = dsc * dsc;
    });
    double mean = 0.0;
    for (double s : sq) mean += s;
    return std::sqrt(mean / static_cast<double>(cfg.replications));
}

/// Per-replication absolute errors of the cubature estimate against mu_ref.
std::vector<double> abs_errors(const StudyConfig& cfg, SamplerKind kind,
                               const Integrand& f, unsigned m, const StreamKey& cell_key,
                               double mu_ref) {
    std::vector<double> errs(cfg.replications);
    parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
        const SampleDesign design = make_design(kind, f.d, m, cell_key.child("rep", r));
        errs[r] = std::abs(estimate(design, f) - mu_ref);
    });
    return errs;
}

std::vector<unsigned> m_values(const StudyConfig& cfg) {
    std::vector<unsigned> ms;
    for (unsigned m = cfg.m_min; m <= cfg.m_max; ++m) ms.push_back(m);
    return ms;
}

double slope_or_nan(const std::vector<double>& log2n, const std::vector<double>& log2y) {
    if (log2n.size() < 3) return std::numeric_limits<double>::quiet_NaN();
    return fit_slope(log2n, log2y);
}

}  // namespace

void StudyConfig::validate() const {
    if (replications < 1) throw std::invalid_argument("StudyConfig: replications >= 1");
    if (m_min > m_max) throw std::invalid_argument("StudyConfig: empty m range");
    if (dims.empty()) throw std::invalid_argument("StudyConfig: dimension list empty");
    if (samplers.empty()) throw std::invalid_argument("StudyConfig: sampler list empty");
    if (kernel != "l2" && kernel != "weighted")
        throw std::invalid_argument("StudyConfig: kernel must be l2 or weighted");
    for (const auto& s : samplers) sampler_kind_from_string(s);  // throws on typo
}

void discrepancy_decay_study(const StudyConfig& cfg, std::ostream& os) {
    cfg.validate();
    const StreamKey root = StreamKey{cfg.seed}.child("disc-decay", 0);
    os << "d,n,sampler,rms_disc,scaled_disc,slope\n";
    for (std::size_t d : cfg.dims) {
        const std::vector<double> gamma = decay_gammas(d, cfg.gamma_decay);
        for (const auto& name : cfg.samplers) {
            const SamplerKind kind = sampler_kind_from_string(name);
            const StreamKey group = root.child(name, d);
            const double base = rms_disc(cfg, kind, d, 0, group.child("m", 0), gamma);
            std::vector<double> log2n, log2rms, rms(cfg.m_max - cfg.m_min + 1);
            for (unsigned m : m_values(cfg)) {
                const double r = rms_disc(cfg, kind, d, m, group.child("m", m), gamma);
                rms[m - cfg.m_min] = r;
                log2n.push_back(static_cast<double>(m));
                log2rms.push_back(std::log2(r));
            }
            const double slope = slope_or_nan(log2n, log2rms);
            for (unsigned m : m_values(cfg)) {
                const double r = rms[m - cfg.m_min];
                os << d << ',' << (std::size_t{1} << m) << ',' << name << ',' << num(r)
                   << ',' << num(r / base) << ',' << num(slope) << '\n';
            }
        }
    }
}

void mvn_error_study(const StudyConfig& cfg, std::ostream& os) {
    cfg.validate();
    const StreamKey root = StreamKey{cfg.seed}.child("mvn-error", 0);
    const GaussianProblem problem = GaussianProblem::example3();
    const struct {
        const char* name;
        Integrand f;
    } transforms[] = {{"genz", genz_integrand(problem)},
                      {"affine", affine_integrand(problem)}};
    os << "n,sampler,transform,median_abs_err,q90_abs_err\n";
    for (unsigned m : m_values(cfg)) {
        for (const auto& name : cfg.samplers) {
            const SamplerKind kind = sampler_kind_from_string(name);
            for (const auto& t : transforms) {
                const StreamKey cell = root.child(name, t.f.d).child("m", m);
                const std::vector<double> errs =
                    abs_errors(cfg, kind, t.f, m, cell, GaussianProblem::kExample3Mean);
                os << (std::size_t{1} << m) << ',' << name << ',' << t.name << ','
                   << num(quantile(errs, 0.5)) << ',' << num(quantile(errs, 0.9)) << '\n';
            }
        }
    }
}

void asian_study(const StudyConfig& cfg, std::ostream& os) {
    cfg.validate();
    const StreamKey root = StreamKey{cfg.seed}.child("asian", 0);
    OptionProblem problem = OptionProblem::example12();

    // internal reference: one scrambled-Sobol' run well past the study range
    problem.construction = PathConstruction::pca;
    const Integrand ref_f = asian_call_integrand(problem);
    const unsigned m_ref = std::min(kMaxLogN, cfg.m_max + 4);
    const double mu_ref = estimate(
        make_design(SamplerKind::sobol, problem.d, m_ref, root.child("reference", 0)),
        ref_f);

    const struct {
        const char* name;
        PathConstruction construction;
    } constructions[] = {{"pca", PathConstruction::pca},
                         {"cholesky", PathConstruction::cholesky}};
    os << "n,sampler,construction,median_abs_err,q90_abs_err\n";
    for (unsigned m : m_values(cfg)) {
        for (const auto& name : cfg.samplers) {
            const SamplerKind kind = sampler_kind_from_string(name);
            for (const auto& c : constructions) {
                problem.construction = c.construction;
                const Integrand f = asian_call_integrand(problem);
                const StreamKey cell =
                    root.child(name, c.construction == PathConstruction::pca ? 0 : 1)
                        .child("m", m);
                const std::vector<double> errs = abs_errors(cfg, kind, f, m, cell, mu_ref);
                os << (std::size_t{1} << m) << ',' << name << ',' << c.name << ','
                   << num(quantile(errs, 0.5)) << ',' << num(quantile(errs, 0.9)) << '\n';
            }
        }
    }
}

void confounding_order_study(const StudyConfig& cfg, std::ostream& os) {
    cfg.validate();
    if (cfg.m_max - cfg.m_min + 1 < 3)
        throw std::invalid_argument("confounding_order_study: need >= 3 sizes for slopes");
    const StreamKey root = StreamKey{cfg.seed}.child("confounding-order", 0);
    const GaussianProblem problem = GaussianProblem::example3();
    const Integrand f = genz_integrand(problem);
    const std::vector<double> gamma = decay_gammas(f.d, cfg.gamma_decay);

    os << "sampler,error_slope,disc_slope,cnf_slope\n";
    for (const auto& name : cfg.samplers) {
        const SamplerKind kind = sampler_kind_from_string(name);
        const StreamKey group = root.child(name, 0);
        std::vector<double> log2n, log2err, log2dsc;
        for (unsigned m : m_values(cfg)) {
            const StreamKey cell = group.child("m", m);
            const std::vector<double> errs =
                abs_errors(cfg, kind, f, m, cell.child("err", 0),
                           GaussianProblem::kExample3Mean);
            const double dsc =
                rms_disc(cfg, kind, f.d, m, cell.child("dsc", 0), gamma);
            log2n.push_back(static_cast<double>(m));
            log2err.push_back(std::log2(quantile(errs, 0.5)));
            log2dsc.push_back(std::log2(dsc));
        }
        const double es = fit_slope(log2n, log2err);
        const double ds = fit_slope(log2n, log2dsc);
        os << name << ',' << num(es) << ',' << num(ds) << ',' << num(es - ds) << '\n';
    }
}

void bayes_coverage_study(const StudyConfig& cfg, std::ostream& os) {
    cfg.validate();
    if (cfg.m_max > 12)
        throw std::invalid_argument(
            "bayes_coverage_study: n capped at 4096 (O(n^3) per fit)");
    const StreamKey root = StreamKey{cfg.seed}.child("bayes-coverage", 0);
    const GaussianProblem problem = GaussianProblem::example3();
    const Integrand f = genz_integrand(problem);
    const double mu_ref = GaussianProblem::kExample3Mean;

    os << "rep,n,theta,scale,mu_hat,half_width,covered,coverage\n";
    for (unsigned m : m_values(cfg)) {
        const std::size_t n = std::size_t{1} << m;
        const StreamKey cell = root.child("m", m);
        std::vector<BayesFit> fits(cfg.replications);
        parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
            const SampleDesign design =
                make_design(SamplerKind::sobol, f.d, m, cell.child("rep", r));
            std::vector<double> y(design.n);
            for (std::size_t i = 0; i < design.n; ++i) y[i] = f.eval(design.node(i));
            fits[r] = bayes_fit(design.nodes, design.n, design.d, y, WeightMode::optimal);
        });
        std::size_t covered = 0;
        for (std::size_t r = 0; r < cfg.replications; ++r) {
            const BayesFit& fit = fits[r];
            const bool hit = std::abs(fit.mu_hat - mu_ref) <= fit.half_width_99;
            covered += hit ? 1 : 0;
            os << r << ',' << n << ',' << num(fit.theta) << ',' << num(fit.scale) << ','
               << num(fit.mu_hat) << ',' << num(fit.half_width_99) << ','
               << (hit ? 1 : 0) << ",\n";
        }
        os << "summary," << n << ",,,,,,"
           << num(static_cast<double>(covered) / static_cast<double>(cfg.replications))
           << '\n';
    }
}

void run_study(const StudyConfig& cfg, std::ostream& os) {
    if (cfg.id == "disc-decay") return discrepancy_decay_study(cfg, os);
    if (cfg.id == "mvn-error") return mvn_error_study(cfg, os);
    if (cfg.id == "asian") return asian_study(cfg, os);
    if (cfg.id == "confounding-order") return confounding_order_study(cfg, os);
    if (cfg.id == "bayes-coverage") return bayes_coverage_study(cfg, os);
    throw std::invalid_argument("run_study: unknown study id '" + cfg.id + "'");
}

std::vector<std::string> study_names() {
    return {std::begin(kStudyNames), std::end(kStudyNames)};
}

}  // namespace qmct
