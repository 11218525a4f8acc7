// SPDX-License-Identifier: MIT
//
// qmctrio: point-set generation, discrepancy evaluation, trio decompositions,
// and the experiment studies, all emitting plain text or CSV.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmctrio/apps.hpp"
#include "qmctrio/bayes.hpp"
#include "qmctrio/kernels.hpp"
#include "qmctrio/sequences.hpp"
#include "qmctrio/studies.hpp"
#include "qmctrio/trio.hpp"

namespace {

struct GlobalOpts {
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string out;
};

/// Stream for --out: file when set, otherwise stdout.
class OutStream {
public:
    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw CLI::RuntimeError("cannot open output file: " + path, 1);
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

qmct::SampleDesign load_design(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::RuntimeError("cannot open point-set file: " + path, 1);
    return qmct::read_design(in);
}

qmct::KernelSpec make_kernel(const std::string& name, std::size_t d, double gamma_decay,
                             double theta) {
    if (name == "l2") return qmct::KernelSpec::l2(d);
    if (name == "weighted") return qmct::KernelSpec::weighted_decay(d, gamma_decay);
    if (name == "matern") return qmct::KernelSpec::matern(d, theta);
    throw CLI::RuntimeError("unknown kernel: " + name, 1);
}

void add_points(CLI::App& app, GlobalOpts& g) {
    auto opts = std::make_shared<std::tuple<std::string, std::size_t, unsigned, std::string>>(
        "sobol", std::size_t{2}, 8u, "scramble");
    CLI::App* cmd = app.add_subcommand("points", "Generate a low-discrepancy point set");
    cmd->fallthrough();
    cmd->add_option("--sampler", std::get<0>(*opts), "iid | lattice | sobol");
    cmd->add_option("--d", std::get<1>(*opts), "dimension");
    cmd->add_option("--m", std::get<2>(*opts), "log2 of the point count");
    cmd->add_option("--randomize", std::get<3>(*opts), "none | shift | scramble");
    cmd->callback([opts, &g] {
        const auto& [sampler, d, m, randomize] = *opts;
        qmct::SamplerSpec spec{qmct::sampler_kind_from_string(sampler), d,
                               qmct::randomization_from_string(randomize),
                               qmct::StreamKey{g.seed}};
        const qmct::SampleDesign design = qmct::generate_nodes(spec, m);
        OutStream os(g.out);
        qmct::write_design(os.get(), design);
    });
}

void add_disc(CLI::App& app, GlobalOpts& g) {
    struct Opts {
        std::string kernel = "l2";
        double gamma_decay = 3.0;
        double theta = 1.0;
        std::vector<std::string> files;
    };
    auto opts = std::make_shared<Opts>();
    CLI::App* cmd = app.add_subcommand("disc", "Discrepancy of point-set files");
    cmd->fallthrough();
    cmd->add_option("--kernel", opts->kernel, "l2 | weighted | matern");
    cmd->add_option("--gamma-decay", opts->gamma_decay,
                    "p in gamma_k^2 = k^-p for the weighted kernel");
    cmd->add_option("--theta", opts->theta, "Matern shape parameter");
    cmd->add_option("files", opts->files, "point-set files")->required();
    cmd->callback([opts, &g] {
        OutStream os(g.out);
        os.get() << "file,kernel,d,n,discrepancy\n";
        for (const auto& path : opts->files) {
            const qmct::SampleDesign design = load_design(path);
            const qmct::KernelSpec spec =
                make_kernel(opts->kernel, design.d, opts->gamma_decay, opts->theta);
            os.get() << path << ',' << opts->kernel << ',' << design.d << ',' << design.n
                     << ',' << qmct::discrepancy_quadratic(spec, design) << '\n';
        }
    });
}

void add_trio(CLI::App& app, GlobalOpts& g) {
    struct Opts {
        std::string sampler = "sobol";
        std::string randomize = "scramble";
        std::string kernel = "l2";
        std::size_t d = 2;
        unsigned m = 8;
        double gamma_decay = 3.0;
        std::size_t anchors = 5;
    };
    auto opts = std::make_shared<Opts>();
    CLI::App* cmd = app.add_subcommand(
        "trio", "Error = confounding x discrepancy x variation on a random "
                "kernel-section integrand");
    cmd->fallthrough();
    cmd->add_option("--sampler", opts->sampler, "iid | lattice | sobol");
    cmd->add_option("--randomize", opts->randomize, "none | shift | scramble");
    cmd->add_option("--kernel", opts->kernel, "l2 | weighted");
    cmd->add_option("--d", opts->d, "dimension");
    cmd->add_option("--m", opts->m, "log2 of the point count");
    cmd->add_option("--gamma-decay", opts->gamma_decay, "weighted-kernel decay");
    cmd->add_option("--anchors", opts->anchors, "kernel sections in the integrand");
    cmd->callback([opts, &g] {
        const qmct::StreamKey key{g.seed};
        const qmct::KernelSpec spec =
            make_kernel(opts->kernel, opts->d, opts->gamma_decay, 1.0);

        qmct::RandomStream stream(key.child("integrand", 0));
        std::vector<double> anchors(opts->anchors * opts->d), coeff(opts->anchors);
        for (double& a : anchors) a = stream.next_uniform01();
        for (double& c : coeff) c = 2.0 * stream.next_uniform01() - 1.0;
        const qmct::KernelSectionIntegrand f(spec, anchors, coeff);

        qmct::SamplerSpec sspec{qmct::sampler_kind_from_string(opts->sampler), opts->d,
                                qmct::randomization_from_string(opts->randomize),
                                key.child("design", 0)};
        const qmct::SampleDesign design = qmct::generate_nodes(sspec, opts->m);
        const double dsc = qmct::discrepancy_quadratic(spec, design);
        const qmct::TrioReport report = qmct::trio_decompose(
            design, f.as_integrand(), dsc, f.exact_variation,
            qmct::TrioFlavor::deterministic);

        OutStream os(g.out);
        os.get() << "mu,mu_hat,error,confounding,discrepancy,variation\n"
                 << f.exact_mean << ',' << report.mu_hat << ',' << *report.error << ','
                 << *report.confounding << ',' << report.discrepancy << ','
                 << *report.variation << '\n';
    });
}

void per_replication_errors(std::ostream& os, const qmct::Integrand& f, double mu_ref,
                            const std::string& sampler, const std::string& variant,
                            unsigned m, std::size_t reps, const GlobalOpts& g) {
    os << "rep,n,sampler,variant,estimate,abs_err\n";
    const qmct::SamplerKind kind = qmct::sampler_kind_from_string(sampler);
    const qmct::Randomization randomization = kind == qmct::SamplerKind::iid
                                                  ? qmct::Randomization::none
                                              : kind == qmct::SamplerKind::lattice
                                                  ? qmct::Randomization::shift
                                                  : qmct::Randomization::scramble_shift;
    for (std::size_t r = 0; r < reps; ++r) {
        qmct::SamplerSpec spec{kind, f.d, randomization,
                               qmct::StreamKey{g.seed}.child("rep", r)};
        const double est = qmct::estimate(qmct::generate_nodes(spec, m), f);
        os << r << ',' << (std::size_t{1} << m) << ',' << sampler << ',' << variant << ','
           << est << ',' << std::abs(est - mu_ref) << '\n';
    }
}

void add_mvn(CLI::App& app, GlobalOpts& g) {
    struct Opts {
        std::string transform = "genz";
        std::string sampler = "sobol";
        unsigned m = 10;
        std::size_t reps = 10;
    };
    auto opts = std::make_shared<Opts>();
    CLI::App* cmd = app.add_subcommand("mvn", "3-d Gaussian box probability");
    cmd->fallthrough();
    cmd->add_option("--transform", opts->transform, "genz | affine");
    cmd->add_option("--sampler", opts->sampler, "iid | lattice | sobol");
    cmd->add_option("--m", opts->m, "log2 of the point count");
    cmd->add_option("--reps", opts->reps, "replications");
    cmd->callback([opts, &g] {
        const qmct::GaussianProblem p = qmct::GaussianProblem::example3();
        const qmct::Integrand f = opts->transform == "genz" ? qmct::genz_integrand(p)
                                                            : qmct::affine_integrand(p);
        OutStream os(g.out);
        per_replication_errors(os.get(), f, qmct::GaussianProblem::kExample3Mean,
                               opts->sampler, opts->transform, opts->m, opts->reps, g);
    });
}

void add_asian(CLI::App& app, GlobalOpts& g) {
    struct Opts {
        std::string construction = "pca";
        std::string sampler = "sobol";
        unsigned m = 10;
        std::size_t reps = 10;
    };
    auto opts = std::make_shared<Opts>();
    CLI::App* cmd = app.add_subcommand("asian", "Arithmetic-mean Asian call price");
    cmd->fallthrough();
    cmd->add_option("--construction", opts->construction, "pca | cholesky");
    cmd->add_option("--sampler", opts->sampler, "iid | lattice | sobol");
    cmd->add_option("--m", opts->m, "log2 of the point count");
    cmd->add_option("--reps", opts->reps, "replications");
    cmd->callback([opts, &g] {
        qmct::OptionProblem p = qmct::OptionProblem::example12();
        p.construction = opts->construction == "cholesky"
                             ? qmct::PathConstruction::cholesky
                             : qmct::PathConstruction::pca;
        const qmct::Integrand f = qmct::asian_call_integrand(p);

        // high-n scrambled-Sobol' reference for the abs_err column
        qmct::SamplerSpec ref{qmct::SamplerKind::sobol, p.d,
                              qmct::Randomization::scramble_shift,
                              qmct::StreamKey{g.seed}.child("reference", 0)};
        const unsigned m_ref = std::min(qmct::kMaxLogN, opts->m + 4);
        const double mu_ref = qmct::estimate(qmct::generate_nodes(ref, m_ref), f);

        OutStream os(g.out);
        per_replication_errors(os.get(), f, mu_ref, opts->sampler, opts->construction,
                               opts->m, opts->reps, g);
    });
}

void add_bayes(CLI::App& app, GlobalOpts& g) {
    struct Opts {
        std::size_t n = 256;
        std::size_t reps = 100;
        std::string problem = "mvn3";
    };
    auto opts = std::make_shared<Opts>();
    CLI::App* cmd = app.add_subcommand("bayes", "Bayesian cubature credible-interval runs");
    cmd->fallthrough();
    cmd->add_option("--n", opts->n, "points per fit (power of two, <= 4096)");
    cmd->add_option("--reps", opts->reps, "independent scrambles");
    cmd->add_option("--problem", opts->problem, "mvn3");
    cmd->callback([opts, &g] {
        if (opts->problem != "mvn3")
            throw CLI::RuntimeError("unknown problem: " + opts->problem, 1);
        unsigned m = 0;
        while ((std::size_t{1} << m) < opts->n && m < 20) ++m;
        if ((std::size_t{1} << m) != opts->n)
            throw CLI::RuntimeError("--n must be a power of two", 1);
        qmct::StudyConfig cfg;
        cfg.id = "bayes-coverage";
        cfg.m_min = cfg.m_max = m;
        cfg.replications = opts->reps;
        cfg.seed = g.seed;
        cfg.threads = g.threads;
        OutStream os(g.out);
        qmct::bayes_coverage_study(cfg, os.get());
    });
}

void add_study(CLI::App& app, GlobalOpts& g) {
    auto cfg = std::make_shared<qmct::StudyConfig>();
    CLI::App* cmd = app.add_subcommand("study", "Run a named experiment study");
    cmd->fallthrough();
    std::string names;
    for (const auto& n : qmct::study_names()) names += (names.empty() ? "" : " | ") + n;
    cmd->add_option("name", cfg->id, names)->required();
    cmd->add_option("--dims", cfg->dims, "dimension list");
    cmd->add_option("--m-min", cfg->m_min, "smallest log2 size");
    cmd->add_option("--m-max", cfg->m_max, "largest log2 size");
    cmd->add_option("--reps", cfg->replications, "replications per cell");
    cmd->add_option("--samplers", cfg->samplers, "sampler list");
    cmd->add_option("--kernel", cfg->kernel, "l2 | weighted");
    cmd->add_option("--gamma-decay", cfg->gamma_decay, "weighted-kernel decay");
    cmd->callback([cfg, &g] {
        cfg->seed = g.seed;
        cfg->threads = g.threads;
        if (cfg->id == "bayes-coverage" && cfg->m_max > 12) {
            cfg->m_min = std::min(cfg->m_min, 8u);
            cfg->m_max = 8;  // keep the O(n^3) fits tractable by default
        }
        OutStream os(g.out);
        qmct::run_study(*cfg, os.get());
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-Monte Carlo cubature toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file");

    GlobalOpts g;
    app.add_option("--seed", g.seed, "master seed")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads")->capture_default_str();
    app.add_option("--out", g.out, "output path (default: stdout)");

    add_points(app, g);
    add_disc(app, g);
    add_trio(app, g);
    add_mvn(app, g);
    add_asian(app, g);
    add_bayes(app, g);
    add_study(app, g);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
