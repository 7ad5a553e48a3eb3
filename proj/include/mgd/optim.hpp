#pragma once

#include <functional>
#include <vector>

// Small deterministic optimization routines.  All of these are exact-arts
// classics (Nelder-Mead simplex, Lawson-Hanson NNLS, revised simplex LP);
// they are written out here so tie-breaking and termination are fully pinned
// down, which the reproducibility contract needs.
namespace mgd::opt {

struct NmOptions {
    int max_iter = 500;
    double xtol = 1e-10;  // simplex diameter
    double ftol = 1e-14;  // value spread
    double step = 0.1;    // initial simplex displacement
};

struct NmResult {
    std::vector<double> x;
    double value;
    int evaluations;
};

// Derivative-free local descent.  Deterministic for a fixed starting point.
NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     std::vector<double> x0, const NmOptions& opts = {});

struct NnlsResult {
    std::vector<double> x;
    double residual; // ||A x - b||_2
    bool converged;
};

// min ||A x - b||_2 subject to x >= 0.  `cols[j]` is the j-th column of A.
NnlsResult nnls(const std::vector<std::vector<double>>& cols, const std::vector<double>& b);

struct SimplexResult {
    std::vector<double> w; // dense, size = number of columns
    double value;
    std::vector<int> basis;
    int iterations;
    bool optimal;
};

// min c^T w  s.t.  M w = b, w >= 0.  `initial_basis` must index m linearly
// independent columns whose basic solution is feasible.  Dantzig pricing
// with a Bland fallback against cycling; all ties break to lowest index.
SimplexResult simplex_min(const std::vector<std::vector<double>>& cols,
                          const std::vector<double>& cost, const std::vector<double>& b,
                          std::vector<int> initial_basis, int max_iter = 20000);

} // namespace mgd::opt
