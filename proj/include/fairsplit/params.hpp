#pragma once

#include <cmath>
#include <cstddef>

#include "fairsplit/rational.hpp"

namespace fairsplit {

// Derived constants of the online balancer. For k = 2:
//   cap = eps^2 / (100 L),  g = eps^2 / (8 L),  lambda = 4 L / eps,
// and for k > 2:
//   cap = g = eps^2 / (100 k L'),  lambda = eps / (4 g),
// where L = log_term(n) and L' = log_term(n k). In both regimes the exponent
// coefficient of the potential's slack term is exact:
//   k = 2:  lambda^2 g / 2      = L
//   k > 2:  2 lambda^2 g / k    = 12.5 L'
struct BalancerParams {
    size_t n = 0;
    int k = 2;
    Rat epsilon;
    Rat log_factor;   // L above
    Rat cap;          // per-gap upper bound of the online model
    Rat g;            // interval mass threshold
    double lambda = 0;
    double slack_coeff = 0;  // coefficient of (1 - s_t) in the exponent

    static BalancerParams halving(size_t n, const Rat& epsilon);
    static BalancerParams splitting(size_t n, int k, const Rat& epsilon);
};

inline BalancerParams BalancerParams::halving(size_t n, const Rat& epsilon) {
    BalancerParams p;
    p.n = n;
    p.k = 2;
    p.epsilon = epsilon;
    p.log_factor = log_term(n);
    p.cap = epsilon * epsilon / (100 * p.log_factor);
    p.g = epsilon * epsilon / (8 * p.log_factor);
    p.lambda = 4 * rat_double(p.log_factor) / rat_double(epsilon);
    p.slack_coeff = rat_double(p.log_factor);
    return p;
}

inline BalancerParams BalancerParams::splitting(size_t n, int k, const Rat& epsilon) {
    if (k == 2) return halving(n, epsilon);
    BalancerParams p;
    p.n = n;
    p.k = k;
    p.epsilon = epsilon;
    p.log_factor = log_term(n * static_cast<unsigned long>(k));
    p.cap = epsilon * epsilon / (100 * k * p.log_factor);
    p.g = p.cap;
    p.lambda = rat_double(epsilon) / (4 * rat_double(p.g));
    p.slack_coeff = 12.5 * rat_double(p.log_factor);
    return p;
}

// Online necklace parameters. Interval thresholds are cube roots of
// rationals, so comparisons are done on cubes; per-color integer bead
// thresholds are precomputed from them.
struct NecklaceParams {
    size_t n = 0;
    int k = 2;
    long m = 0;            // max_i m_i
    Rat log_factor;        // L(n) for k = 2, L(nk) for k > 2
    Rat g_cubed;           // g^3
    Rat critical_cubed;    // threshold^3 for the remaining-bead rule
    bool all_critical = false;
    double lambda = 0;
    double slack_coeff = 0;

    static NecklaceParams halving(size_t n, long m);
    static NecklaceParams splitting(size_t n, int k, long m);
};

inline NecklaceParams NecklaceParams::halving(size_t n, long m) {
    NecklaceParams p;
    p.n = n;
    p.k = 2;
    p.m = m;
    p.log_factor = log_term(n);
    // eps = 10 (L/m)^(1/3), g = eps^2/(8L) = 12.5 L^(-1/3) m^(-2/3).
    p.g_cubed = rat(15625, 8) / (p.log_factor * m * m);
    // Critical when remaining < 20 m^(2/3) L^(1/3).
    p.critical_cubed = Rat(8000) * m * m * p.log_factor;
    p.all_critical = Rat(1000) * p.log_factor > m;
    double eps = 10.0 * std::cbrt(rat_double(p.log_factor) / static_cast<double>(m));
    p.lambda = 4 * rat_double(p.log_factor) / eps;
    p.slack_coeff = rat_double(p.log_factor);
    return p;
}

inline NecklaceParams NecklaceParams::splitting(size_t n, int k, long m) {
    if (k == 2) return halving(n, m);
    NecklaceParams p;
    p.n = n;
    p.k = k;
    p.m = m;
    p.log_factor = log_term(n * static_cast<unsigned long>(k));
    // eps = (k/m)^(1/3), g = eps^2/(100 k L) = 1/(100 k^(1/3) m^(2/3) L).
    Rat L3 = p.log_factor * p.log_factor * p.log_factor;
    p.g_cubed = Rat(1) / (Rat(1000000) * k * m * m * L3);
    // Critical when remaining <= 10 k^(1/3) m^(2/3); strict-less against
    // (threshold+1)^3 is equivalent on integers, handled at the call site.
    p.critical_cubed = Rat(1000) * k * m * m;
    p.all_critical = k > m;
    double eps = std::cbrt(static_cast<double>(k) / static_cast<double>(m));
    double g = 1.0 / (100.0 * std::cbrt(static_cast<double>(k)) *
                      std::pow(static_cast<double>(m), 2.0 / 3.0) *
                      rat_double(p.log_factor));
    p.lambda = eps / (4 * g);
    p.slack_coeff = 12.5 * rat_double(p.log_factor);
    return p;
}

}  // namespace fairsplit
