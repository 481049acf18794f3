/*
 * plant.hh
 *
 * Networks of discrete-time control systems. Each component i owns a
 * state block x_i and a finite input set U_i; its update reads only its
 * own block, the blocks of its neighbors (ascending index order) and its
 * own input:  x_i(t+1) = psi_i(x_i, w_i, u_i).
 *
 * A GasCertificate is a user-supplied incremental-stability witness
 * (weighted sup-norm V with K-infinity bounds); it is checked by random
 * falsification, never constructed here.
 */

#pragma once

#include "decsym/decimal.hh"
#include "decsym/kinf.hh"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace decsym {

struct Matrix {
    int rows = 0, cols = 0;
    std::vector<double> a; // row major

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, 0.0) {}
    double& at(int r, int c) { return a[std::size_t(r) * cols + c]; }
    double at(int r, int c) const { return a[std::size_t(r) * cols + c]; }
};

// ring of scalar rooms:
//   T_i+ = T_i + alpha*(T_left + T_right - 2 T_i) + beta*(t_ext - T_i)
//          + gamma*(t_heat - T_i)*u_i
struct ThermalRing {
    Decimal alpha, beta, gamma, t_ext, t_heat;
};

// x_i+ = sum_j A[i][j] x_j + c_i + B_i u_i, the sum over {i} and declared blocks
struct LinearCoupled {
    std::vector<std::map<int, Matrix>> blocks; // blocks[i][j] is n_i x n_j
    std::vector<Matrix> gain;                  // n_i x m_i
    std::vector<std::vector<double>> offset;   // c_i
};

// like LinearCoupled, but the input gain is affine in the local state:
//   B_i(x_i) = B0_i + sum_k x_i[k] * B1_i[k]
struct ControlAffineCoupled {
    LinearCoupled drift;                            // gain field unused
    std::vector<Matrix> gain0;                      // n_i x m_i
    std::vector<std::vector<Matrix>> gain1;         // per i: n_i matrices n_i x m_i
};

struct ExternDynamics {
    // (i, x_i, w_i, u_i) -> x_i+ ; w_i = neighbor blocks, ascending index
    std::function<std::vector<double>(int, const std::vector<double>&,
                                      const std::vector<double>&,
                                      const std::vector<double>&)>
        psi;
    std::vector<std::vector<int>> neighbors; // must be declared explicitly
};

using Dynamics = std::variant<ThermalRing, LinearCoupled, ControlAffineCoupled, ExternDynamics>;

struct NetworkModel {
    int n_comp = 0;
    std::vector<int> dims;                    // n_i
    std::vector<int> input_dims;              // m_i
    std::vector<std::vector<DecVec>> inputs;  // U_i, canonically sorted, 0 included
    Dynamics dynamics;

    // derived caches, filled by finalize()
    std::vector<std::vector<std::vector<double>>> inputs_dbl; // [i][k][coord]
    std::vector<std::vector<int>> neighbor_lists;
    std::vector<int> offsets; // state block offsets, offsets[n_comp] = n

    void finalize(); // validates and builds caches; throws std::invalid_argument
    int state_dim() const { return offsets[n_comp]; }
    const std::vector<int>& neighbors(int i) const;
};

// single-component update; u checked for exact membership in U_i
std::vector<double> psi_eval(const NetworkModel& m, int i,
                             const std::vector<double>& x_i,
                             const std::vector<double>& w_i,
                             const std::vector<double>& u_i);
std::vector<double> psi_eval_idx(const NetworkModel& m, int i,
                                 const std::vector<double>& x_i,
                                 const std::vector<double>& w_i, int u_index);

// synchronous network step; u = concatenated component inputs (values) or
// per-component input indices; same arithmetic path as psi_eval
std::vector<double> step(const NetworkModel& m, const std::vector<double>& x,
                         const std::vector<double>& u);
std::vector<double> step_idx(const NetworkModel& m, const std::vector<double>& x,
                             const std::vector<int>& u_idx);

// gathers the neighbor blocks of component i out of a full state vector
std::vector<double> gather_neighbors(const NetworkModel& m, int i,
                                     const std::vector<double>& x);

struct GasCertificate {
    std::vector<Decimal> weight; // size n, or size 1 for uniform
    KinfFn alpha_lo, alpha_hi, rho, sigma;

    void validate(int state_dim) const;
    double weight_at(int j) const;
    // V(x,y) = max_j weight_j |x_j - y_j|
    double v(const std::vector<double>& x, const std::vector<double>& y) const;
};

// contraction modulus of the thermal ring:
//   max(|1 - 2a - b - g|, |1 - 2a - b|) + 2a, exact decimal arithmetic
Decimal thermal_contraction(const Decimal& alpha, const Decimal& beta, const Decimal& gamma);

struct FalsifyResult {
    bool found = false;
    std::uint64_t sample_index = 0;
    std::string condition;               // "lower-bound", "decrease", "output-deviation"
    std::vector<double> x, x2, x3, u;    // witness sample
    double lhs = 0, rhs = 0;
    std::uint64_t samples_run = 0;
};

// random search for certificate violations inside the box [lo, hi]^n;
// deterministic in `seed` and independent of the worker count (the lowest
// violating sample index wins)
FalsifyResult falsify_certificate(const NetworkModel& m, const GasCertificate& cert,
                                  const std::vector<double>& lo,
                                  const std::vector<double>& hi,
                                  std::uint64_t samples, std::uint64_t seed,
                                  int workers);
FalsifyResult falsify_certificate_serial(const NetworkModel& m, const GasCertificate& cert,
                                         const std::vector<double>& lo,
                                         const std::vector<double>& hi,
                                         std::uint64_t samples, std::uint64_t seed);

// largest admissible quantization step at contraction margin mu:
//   min( sigma^-1(rho(alpha_lo(mu))), alpha_hi^-1(alpha_lo(mu)) )
struct QuantBound {
    double value = 0;
    std::optional<Decimal> exact; // set when every stage stayed in decimals
};
QuantBound quantization_bound(const GasCertificate& cert, double mu);
QuantBound quantization_bound(const GasCertificate& cert, const Decimal& mu);

enum class PlanMode { split, aligned };

struct AccuracyPlan {
    bool feasible = false;
    std::string binding;           // violated constraint when infeasible
    double mu = 0;
    std::optional<Decimal> mu_exact;
    Decimal eta;                   // uniform grid step, "nice" decimal
    QuantBound bound;              // quantization bound at mu
    std::vector<std::string> notes;
};

// picks (mu, eta) for accuracy theta. split mode divides the budget,
// solving mu + bound(mu)/2 = theta by bisection with no grid alignment;
// aligned mode takes mu = theta and additionally requires eta to divide
// every specification coordinate, so the word points sit on grid centers.
// eta is the largest k*10^e with k in {1, 2, 2.5, 5} meeting all
// constraints.
AccuracyPlan accuracy_plan(const GasCertificate& cert, const Decimal& theta,
                           const std::vector<Decimal>& spec_coords, PlanMode mode);

// checks an explicitly supplied pair; returns a violation description or
// nullopt when the pair is admissible
std::optional<std::string> validate_accuracy(const GasCertificate& cert,
                                             const Decimal& theta, double mu,
                                             const Decimal& eta,
                                             const std::vector<Decimal>& spec_coords,
                                             PlanMode mode);

} // namespace decsym
