// SPDX-License-Identifier: MIT
#include "qmctrio/core.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qmct {

void SampleDesign::validate() const {
    if (n == 0 || d == 0) throw std::invalid_argument("SampleDesign: empty design");
    if (nodes.size() != n * d) throw std::invalid_argument("SampleDesign: node storage size");
    if (weights.size() != n) throw std::invalid_argument("SampleDesign: weight count");
    for (double x : nodes)
        if (!(x >= 0.0 && x <= 1.0))
            throw std::invalid_argument("SampleDesign: coordinate outside [0,1]");
    double sum = 0.0, comp = 0.0;  // Kahan summation: n can reach 2^20
    for (double w : weights) {
        if (!std::isfinite(w)) throw std::invalid_argument("SampleDesign: non-finite weight");
        const double y = w - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    if (probability && std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("SampleDesign: probability design weights must sum to 1");
}

SampleDesign SampleDesign::equal_weight(std::size_t n, std::size_t d,
                                        std::vector<double> nodes) {
    SampleDesign design;
    design.n = n;
    design.d = d;
    design.nodes = std::move(nodes);
    design.weights.assign(n, 1.0 / static_cast<double>(n));
    design.probability = true;
    design.validate();
    return design;
}

double estimate(const SampleDesign& design, const Integrand& f) {
    if (design.d != f.d)
        throw std::invalid_argument("estimate: design dimension " + std::to_string(design.d) +
                                    " != integrand dimension " + std::to_string(f.d));
    double acc = 0.0;
    for (std::size_t i = 0; i < design.n; ++i) {
        double v = f.eval(design.node(i));
        if (!std::isfinite(v))
            throw std::runtime_error("estimate: non-finite integrand value at node " +
                                     std::to_string(i));
        acc += design.weights[i] * v;
    }
    return acc;
}

void write_design(std::ostream& os, const SampleDesign& design) {
    const bool uniform = design.probability &&
                         [&] {
                             for (double w : design.weights)
                                 if (std::abs(w * static_cast<double>(design.n) - 1.0) > 1e-12)
                                     return false;
                             return true;
                         }();
    os << "# d=" << design.d << " n=" << design.n
       << " weights=" << (uniform ? "uniform" : "explicit") << "\n";
    os.precision(17);
    for (std::size_t i = 0; i < design.n; ++i) {
        auto x = design.node(i);
        for (std::size_t k = 0; k < design.d; ++k) {
            if (k) os << ' ';
            os << x[k];
        }
        if (!uniform) os << ' ' << design.weights[i];
        os << '\n';
    }
}

SampleDesign read_design(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("# ", 0) != 0)
        throw std::runtime_error("read_design: missing header line");
    std::size_t d = 0, n = 0;
    std::string weights_mode;
    {
        std::istringstream hs(header.substr(2));
        std::string tok;
        while (hs >> tok) {
            if (tok.rfind("d=", 0) == 0) d = std::stoul(tok.substr(2));
            else if (tok.rfind("n=", 0) == 0) n = std::stoul(tok.substr(2));
            else if (tok.rfind("weights=", 0) == 0) weights_mode = tok.substr(8);
        }
    }
    if (d == 0 || n == 0 || (weights_mode != "uniform" && weights_mode != "explicit"))
        throw std::runtime_error("read_design: malformed header: " + header);

    SampleDesign design;
    design.n = n;
    design.d = d;
    design.nodes.reserve(n * d);
    design.weights.reserve(n);
    const bool uniform = weights_mode == "uniform";
    std::string line;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(is, line))
            throw std::runtime_error("read_design: unexpected end of file");
        std::istringstream ls(line);
        for (std::size_t k = 0; k < d; ++k) {
            double x;
            if (!(ls >> x)) throw std::runtime_error("read_design: bad coordinate on line " +
                                                     std::to_string(i + 2));
            design.nodes.push_back(x);
        }
        if (uniform) {
            design.weights.push_back(1.0 / static_cast<double>(n));
        } else {
            double w;
            if (!(ls >> w)) throw std::runtime_error("read_design: missing weight on line " +
                                                     std::to_string(i + 2));
            design.weights.push_back(w);
        }
    }
    double sum = 0.0;
    for (double w : design.weights) sum += w;
    design.probability = std::abs(sum - 1.0) <= 1e-12;
    design.validate();
    return design;
}

const char* to_string(TrioFlavor flavor) {
    switch (flavor) {
        case TrioFlavor::deterministic: return "deterministic";
        case TrioFlavor::randomized: return "randomized";
        case TrioFlavor::bayesian: return "bayesian";
        case TrioFlavor::randomized_bayesian: return "randomized-bayesian";
    }
    return "unknown";
}

}  // namespace qmct
