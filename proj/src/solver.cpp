#include "wardowski/solver.hpp"

#include <algorithm>
#include <cmath>

namespace wardowski {

std::string to_string(RunStatus s) {
    switch (s) {
        case RunStatus::FixedPointHit: return "fixed_point_hit";
        case RunStatus::Converged: return "converged";
        case RunStatus::BudgetExhausted: return "budget_exhausted";
        case RunStatus::DivergenceSuspected: return "divergence_suspected";
    }
    return "unknown";
}

double hyers_ulam_bound(const ComparisonFunction& phi, double d_x_Tx, const Tolerance& tol,
                        std::size_t n_cap) {
    if (!(d_x_Tx >= 0.0)) throw InvalidParameter("hyers_ulam_bound: residual must be nonnegative");
    const SeriesResult s = phi_series(phi, d_x_Tx, tol, n_cap);
    if (s.status != SeriesStatus::Converged)
        throw SeriesNotConvergent("hyers_ulam_bound: Phi did not converge at " +
                                  std::to_string(d_x_Tx));
    return s.value + s.tail_estimate;
}

TailBoundCertificate tail_bound_regular(std::span<const double> rho, const WardowskiFunction& F,
                                        double a, double k, std::optional<double> beta) {
    if (!(a > 0.0)) throw InvalidParameter("tail_bound_regular: a must be positive");
    if (!(k > 0.0) || !(k < 1.0)) throw InvalidParameter("tail_bound_regular: k must be in (0,1)");

    TailBoundCertificate cert;
    cert.k = k;
    cert.a = a;

    // Checked range: recorded steps before the first exact zero (the orbit is
    // constant beyond it).
    std::size_t L = rho.size();
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (rho[i] == 0.0) {
            L = i;
            break;
        }
        if (!(rho[i] > 0.0)) throw PreconditionViolated("tail_bound_regular: rho must be >= 0");
    }
    if (L < 2) {
        cert.trivial = true;
        cert.rho_bound_holds = true;
        cert.beta = beta.value_or(0.0);
        return cert;
    }

    const double F0 = F.eval(rho[0]).finite_value();
    std::vector<double> g(L, 0.0);  // g[n] = [F(rho_0) - F(rho_n)] rho_n^k
    for (std::size_t n = 1; n < L; ++n)
        g[n] = (F0 - F.eval(rho[n]).finite_value()) * std::pow(rho[n], k);

    if (beta) {
        cert.beta = *beta;
        if (!(cert.beta > 0.0)) throw InvalidParameter("tail_bound_regular: beta must be positive");
    } else {
        const std::size_t burn_in = std::max<std::size_t>(2, L / 4);
        double m = 0.0;
        for (std::size_t n = 1; n < burn_in; ++n) m = std::max(m, g[n]);
        cert.beta = 1.05 * m;
        if (!(cert.beta > 0.0))
            throw RankNotFound("tail_bound_regular: burn-in window gives no positive beta");
    }

    // Least rank from which g stays <= beta.
    std::size_t from = L;
    for (std::size_t n = L; n-- > 1;) {
        if (g[n] > cert.beta) break;
        from = n;
    }
    if (from == L)
        throw RankNotFound("tail_bound_regular: no rank on the recorded prefix keeps "
                           "[F(rho_0)-F(rho_n)] rho_n^k <= beta");
    cert.from_rank = (from == 1) ? 0 : from;  // rank 0 certifies the same range

    cert.rho_bound_holds = true;
    const double inv_k = 1.0 / k;
    for (std::size_t n = std::max<std::size_t>(cert.from_rank, 1); n < L; ++n) {
        const double bound = std::pow(cert.beta / (a * static_cast<double>(n)), inv_k);
        if (rho[n] > bound) {
            cert.rho_bound_holds = false;
            cert.first_violation = n;
            break;
        }
    }

    // sum_{n >= N} n^(-1/k) <= N^(-1/k) + N^(1-1/k) / (1/k - 1)
    const double N = static_cast<double>(L);
    cert.tail_from = L;
    cert.tail_sum_bound = std::pow(cert.beta / a, inv_k) *
                          (std::pow(N, -inv_k) + std::pow(N, 1.0 - inv_k) / (inv_k - 1.0));
    return cert;
}

TeleSumCertificate telescopic_certificate(std::span<const double> rho) {
    if (rho.empty()) throw PreconditionViolated("telescopic_certificate: need >= 2 iterates");

    TeleSumCertificate cert;
    for (double r : rho) cert.partial += r;

    // Exact absorption: the orbit stopped moving.
    if (rho.back() == 0.0) {
        cert.tail_estimate = 0.0;
        cert.ratio = 0.0;
        return cert;
    }

    constexpr std::size_t kWindow = 8;
    if (rho.size() < kWindow + 1) return cert;

    std::vector<double> ratios;
    ratios.reserve(kWindow);
    for (std::size_t i = rho.size() - kWindow; i < rho.size(); ++i) {
        if (!(rho[i - 1] > 0.0)) {
            cert.tail_estimate = 0.0;  // zero inside the window: orbit absorbed
            cert.ratio = 0.0;
            return cert;
        }
        ratios.push_back(rho[i] / rho[i - 1]);
    }
    const double rhat = *std::max_element(ratios.begin(), ratios.end());
    bool drifting_up = true;
    for (std::size_t i = 0; i + 1 < ratios.size(); ++i)
        if (!(ratios[i + 1] > ratios[i])) drifting_up = false;

    cert.ratio = rhat;
    if (std::isfinite(rhat) && rhat <= 1.0 - 1e-6 && !drifting_up)
        cert.tail_estimate = rho.back() * rhat / (1.0 - rhat);
    return cert;
}

} // namespace wardowski
