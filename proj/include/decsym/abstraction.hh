/*
 * abstraction.hh
 *
 * Symbolic models of the network components on the quantized grid. The
 * abstraction is never materialized during synthesis: symbolic_succ
 * computes single successors on demand. enumerate_abstraction builds the
 * explicit product system over a bounded box and exists for validation
 * and small studies only.
 */

#pragma once

#include "decsym/plant.hh"
#include "decsym/quantizer.hh"
#include "decsym/transition_system.hh"

#include <optional>
#include <vector>

namespace decsym {

// successor cell of component i from its own cell, the neighbor cells
// (ascending neighbor order) and input index:  [psi_i(., ., u)]_eta
GridPoint symbolic_succ(const NetworkModel& m, const Quantizer& q, int i,
                        const GridPoint& xi, const std::vector<GridPoint>& w,
                        int u_index, bool* boundary_risk = nullptr);

// synchronous successor of the whole network; xi holds one cell per component
std::vector<GridPoint> network_symbolic_succ(const NetworkModel& m, const Quantizer& q,
                                             const std::vector<GridPoint>& xi,
                                             const std::vector<int>& u_idx,
                                             bool* boundary_risk = nullptr);

// per-component index ranges [lo, hi] (inclusive, one pair per coordinate)
struct GridBox {
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> range;
};

struct EnumeratedAbstraction {
    TransitionSystem ts;                               // outputs: exact cell centers
    std::vector<std::vector<GridPoint>> state_cells;   // per state, per component
    std::vector<std::vector<int>> input_tuples;        // per input symbol, per component
};

// explicit symbolic model over the box; transitions leaving the box are
// dropped; throws when the state count would exceed `cap`
EnumeratedAbstraction enumerate_abstraction(const NetworkModel& m, const Quantizer& q,
                                            const GridBox& box, std::size_t cap = 1000000);

// membership in the mu-approximate bisimulation relation:
// V(x, center(xi)) <= alpha_lo(mu)
bool in_relation_mu(const GasCertificate& cert, double mu, const NetworkModel& m,
                    const Quantizer& q, const std::vector<double>& x,
                    const std::vector<GridPoint>& xi);

// preimage of a cell tuple under the relation, as a predicate and (when
// the radii divide exactly) as an exact coordinate box
struct RegionSpec {
    std::vector<GridPoint> center;  // per component
    DecVec center_point;            // concatenated exact centers
    double radius = 0;              // alpha_lo(mu)
    std::optional<Decimal> radius_exact;
    std::optional<DecVec> box_lo, box_hi;

    bool contains(const GasCertificate& cert, const std::vector<double>& x) const;
};

RegionSpec make_region(const GasCertificate& cert, double mu,
                       const std::optional<Decimal>& mu_exact, const NetworkModel& m,
                       const Quantizer& q, const std::vector<GridPoint>& center);

} // namespace decsym
