#include "mgd/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "mgd/errors.hpp"
#include "mgd/guesswork.hpp"
#include "mgd/optim.hpp"
#include "mgd/rng.hpp"

namespace mgd {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double plog2p(double p) {
    return p > 0.0 ? p * std::log2(p) : 0.0;
}

// g(x) = x^d ln(x)/ln2; returns g^(k)(x)/k! via
//   g^(k)(x) = (a_k x^{d-k} ln x + b_k x^{d-k}) / ln 2,
//   a_{t+1} = a_t (d-t),  b_{t+1} = a_t + b_t (d-t).
double hermite_entry(double x, int k, int d) {
    if (x <= 1e-12)
        return 0.0; // x^{d-k} ln x -> 0 for k < d
    double a = 1.0, b = 0.0, fact = 1.0;
    for (int t = 0; t < k; ++t) {
        const double an = a * (d - t);
        b = a + b * (d - t);
        a = an;
        fact *= t + 1;
    }
    return std::pow(x, d - k) * (a * std::log(x) + b) / (kLn2 * fact);
}

// Eigenvalues -> coalesced node list (value repeated per multiplicity).
std::vector<double> coalesce(std::vector<double> lambda) {
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    for (auto& l : lambda)
        l = std::max(0.0, l);
    std::vector<double> nodes;
    nodes.reserve(lambda.size());
    size_t i = 0;
    while (i < lambda.size()) {
        size_t j = i + 1;
        double sum = lambda[i];
        while (j < lambda.size() && lambda[j - 1] - lambda[j] <= 1e-9) {
            sum += lambda[j];
            ++j;
        }
        const double rep = std::max(0.0, sum / static_cast<double>(j - i));
        for (size_t k = i; k < j; ++k)
            nodes.push_back(rep);
        i = j;
    }
    return nodes;
}

} // namespace

double shannon_entropy(const Distribution& d) {
    double h = 0.0;
    for (double p : d.values())
        h -= plog2p(p);
    return h;
}

double von_neumann_entropy(const HermitianOperator& rho) {
    double s = 0.0;
    for (double lam : eig(rho).eigenvalues)
        s -= plog2p(std::max(0.0, lam));
    return s;
}

double holevo_chi(const Ensemble& e) {
    double chi = von_neumann_entropy(e.average_state());
    for (int i = 0; i < e.size(); ++i)
        chi -= e.prob(i) * von_neumann_entropy(e.state(i));
    return std::max(0.0, chi);
}

double subentropy(const HermitianOperator& rho) {
    const std::vector<double> nodes = coalesce(eig(rho).eigenvalues);
    const int d = static_cast<int>(nodes.size());
    // Newton divided-difference table over repeated nodes; equal nodes take
    // the derivative entry g^(j)/j!.
    std::vector<double> col(nodes.size());
    for (int i = 0; i < d; ++i)
        col[i] = hermite_entry(nodes[i], 0, d);
    for (int j = 1; j < d; ++j)
        for (int i = 0; i + j < d; ++i) {
            if (nodes[i + j] == nodes[i])
                col[i] = hermite_entry(nodes[i], j, d);
            else
                col[i] = (col[i + 1] - col[i]) / (nodes[i + j] - nodes[i]);
        }
    return -col[0];
}

double lambda_lower(const Ensemble& e) {
    double lam = subentropy(e.average_state());
    for (int i = 0; i < e.size(); ++i)
        lam -= e.prob(i) * subentropy(e.state(i));
    return lam;
}

EntropyPack entropy_pack(const Ensemble& e) {
    EntropyPack p;
    p.shannon_H = shannon_entropy(e.prior());
    p.von_neumann_S = von_neumann_entropy(e.average_state());
    p.holevo_chi = holevo_chi(e);
    p.subentropy_Q = subentropy(e.average_state());
    p.lambda_lower = lambda_lower(e);
    return p;
}

double g_upper_from_error(int n, double p_err) {
    return 0.5 * n * p_err + 1.0;
}

double g_lower_from_error(double p_err) {
    if (!(p_err < 1.0))
        throw validation_error("error probability must be below 1");
    return 0.5 / (1.0 - p_err) + 0.5;
}

double g_lower_from_entropy(double h_bits) {
    return 0.25 * std::exp2(h_bits) + 1.0;
}

double g_upper_from_entropy(int n, double h_bits) {
    if (n < 2)
        throw validation_error("the entropy upper bound needs at least two symbols");
    return (n - 1) / (2.0 * std::log2(static_cast<double>(n))) * h_bits + 1.0;
}

double unambiguous_upper_bound(int n, double p_inc) {
    if (!(p_inc >= 0.0 && p_inc <= 1.0))
        throw validation_error("inconclusive probability must lie in [0, 1]");
    return 1.0 + 0.5 * (n - 1) * p_inc;
}

std::vector<BoundReport> bound_suite(const Ensemble& e, const ReferenceValues& refs,
                                     int precondition_samples, std::uint64_t seed) {
    const int n = e.size();
    const double h = shannon_entropy(e.prior());
    const double p_err = error_probability(e.prior());
    const double gx = guesswork(e.prior());
    const double chi = holevo_chi(e);
    const double lam = lambda_lower(e);
    const EntropyFloor floor = posterior_entropy_floor(e, precondition_samples, seed);

    std::vector<BoundReport> out;
    auto push = [&out](BoundReport r) { out.push_back(std::move(r)); };

    {
        BoundReport r;
        r.name = "g_upper_from_error";
        r.value = g_upper_from_error(n, p_err);
        r.side = BoundSide::upper;
        r.consistent = gx <= r.value + 1e-9;
        push(std::move(r));
    }
    {
        BoundReport r;
        r.name = "g_lower_from_error";
        r.value = g_lower_from_error(p_err);
        r.consistent = r.value <= gx + 1e-9;
        push(std::move(r));
    }
    {
        BoundReport r;
        r.name = "g_lower_from_entropy";
        r.value = g_lower_from_entropy(h);
        r.precondition_met = h >= 2.0;
        if (!r.precondition_met)
            r.precondition_note = "prior entropy below 2 bits";
        else
            r.consistent = r.value <= gx + 1e-9;
        push(std::move(r));
    }
    {
        BoundReport r;
        r.name = "g_upper_from_entropy";
        r.side = BoundSide::upper;
        r.precondition_met = n >= 2;
        if (r.precondition_met) {
            r.value = g_upper_from_entropy(n, h);
            r.consistent = gx <= r.value + 1e-9;
        } else {
            r.value = 1.0;
            r.precondition_note = "single-symbol alphabet";
        }
        push(std::move(r));
    }
    {
        BoundReport r;
        r.name = "gopt_lower_from_min_error";
        r.target = BoundTarget::optimal;
        r.precondition_met = refs.p_err_opt.has_value();
        if (r.precondition_met) {
            r.value = g_lower_from_error(*refs.p_err_opt);
            if (refs.g_opt)
                r.consistent = r.value <= *refs.g_opt + 1e-9;
        } else {
            r.precondition_note = "needs the optimal error probability";
        }
        push(std::move(r));
    }
    {
        BoundReport r;
        r.name = "gopt_upper_from_min_error";
        r.side = BoundSide::upper;
        r.target = BoundTarget::optimal;
        r.precondition_met = refs.p_err_opt.has_value();
        if (r.precondition_met) {
            r.value = g_upper_from_error(n, *refs.p_err_opt);
            if (refs.g_opt)
                r.consistent = *refs.g_opt <= r.value + 1e-9;
        } else {
            r.precondition_note = "needs the optimal error probability";
        }
        push(std::move(r));
    }
    {
        BoundReport r;
        r.name = "gopt_lower_holevo";
        r.target = BoundTarget::optimal;
        r.value = g_lower_from_entropy(h - chi);
        r.precondition_met = floor.ok;
        if (!floor.ok)
            r.precondition_note = "sampled posterior entropy floor " +
                                  std::to_string(floor.min_entropy) + " is below 2 bits";
        else if (refs.g_opt)
            r.consistent = r.value <= *refs.g_opt + 1e-9;
        push(std::move(r));
    }
    {
        BoundReport r;
        r.name = "gopt_upper_subentropy";
        r.side = BoundSide::upper;
        r.target = BoundTarget::optimal;
        r.precondition_met = n >= 2;
        if (r.precondition_met) {
            r.value = g_upper_from_entropy(n, h - lam);
            if (refs.g_opt)
                r.consistent = *refs.g_opt <= r.value + 1e-9;
        } else {
            r.value = 1.0;
            r.precondition_note = "single-symbol alphabet";
        }
        push(std::move(r));
    }
    {
        BoundReport r;
        r.name = "gopt_upper_unambiguous";
        r.side = BoundSide::upper;
        r.target = BoundTarget::optimal;
        r.precondition_met = refs.p_inc.has_value();
        if (r.precondition_met) {
            r.value = unambiguous_upper_bound(n, *refs.p_inc);
            if (refs.g_opt)
                r.consistent = *refs.g_opt <= r.value + 1e-9;
        } else {
            r.precondition_note = "needs an inconclusive-outcome probability";
        }
        push(std::move(r));
    }
    return out;
}

EntropyFloor posterior_entropy_floor(const Ensemble& e, int samples, std::uint64_t seed) {
    if (samples < 1)
        throw validation_error("entropy floor needs at least one sample");
    const int d = e.dim();

    auto entropy_at = [&e](const std::vector<cplx>& ket) {
        double mass = 0.0;
        for (const cplx& c : ket)
            mass += std::norm(c);
        if (mass <= 1e-18)
            return 1e9;
        try {
            return shannon_entropy(posterior(e, dyad(ket)).dist);
        } catch (const degenerate_outcome&) {
            return 1e9; // direction orthogonal to every state: no outcome
        }
    };

    Rng rng(seed);
    // Keep the worst few samples as descent starts.
    std::vector<std::pair<double, std::vector<cplx>>> worst;
    for (int s = 0; s < samples; ++s) {
        std::vector<cplx> ket(d);
        for (auto& c : ket)
            c = rng.complex_normal();
        const double h = entropy_at(ket);
        worst.emplace_back(h, std::move(ket));
        std::sort(worst.begin(), worst.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (worst.size() > 3)
            worst.pop_back();
    }

    double best = worst.front().first;
    std::vector<cplx> best_ket = worst.front().second;
    opt::NmOptions nmo;
    nmo.max_iter = 400;
    nmo.step = 0.05;
    for (const auto& [h0, ket] : worst) {
        std::vector<double> x0(2 * d);
        for (int i = 0; i < d; ++i) {
            x0[2 * i] = ket[i].real();
            x0[2 * i + 1] = ket[i].imag();
        }
        const auto res = opt::nelder_mead(
            [&](const std::vector<double>& x) {
                std::vector<cplx> v(d);
                for (int i = 0; i < d; ++i)
                    v[i] = cplx(x[2 * i], x[2 * i + 1]);
                return entropy_at(v);
            },
            x0, nmo);
        if (res.value < best) {
            best = res.value;
            for (int i = 0; i < d; ++i)
                best_ket[i] = cplx(res.x[2 * i], res.x[2 * i + 1]);
        }
    }

    // Normalize and fix the phase: first nonzero amplitude real nonnegative.
    double mass = 0.0;
    for (const cplx& c : best_ket)
        mass += std::norm(c);
    if (mass > 0.0) {
        cplx phase = 1.0;
        for (const cplx& c : best_ket)
            if (std::abs(c) > 1e-12) {
                phase = std::conj(c) / std::abs(c);
                break;
            }
        for (auto& c : best_ket)
            c *= phase / std::sqrt(mass);
    }

    EntropyFloor out;
    out.min_entropy = best;
    out.ok = best >= 2.0 - 1e-12;
    out.worst_ket = std::move(best_ket);
    return out;
}

} // namespace mgd
