/*
 * synthesis.hh
 *
 * On-the-fly supervisor synthesis over the transition specification.
 * For every spec transition and component the indicator asks whether
 * some input of U_i drives the quantized source cell to the quantized
 * target cell given the neighbors' spec cells; transitions whose
 * indicators all hold are retained, and the trim of the result is the
 * maximal controlled behavior.
 *
 * The centralized variant decides the same question over joint inputs;
 * the conditions share no input coordinates, so its retained set equals
 * the decentralized one transition-for-transition, which synthesize_cen
 * re-derives (and, in literal mode, verifies tuple by tuple).
 */

#pragma once

#include "decsym/abstraction.hh"
#include "decsym/bigcount.hh"
#include "decsym/specification.hh"

#include <optional>
#include <string>
#include <vector>

namespace decsym {

// admissible inputs of component `comp` on spec transition `trans_idx`;
// slack > 0 relaxes the successor test to "within slack cells per
// coordinate" and marks every downstream artifact as non-faithful
std::vector<int> indicator_candidates(const NetworkModel& m, const Quantizer& q,
                                      const TransitionSpec& sq, int trans_idx, int comp,
                                      int slack = 0);

struct Feasibility {
    // candidates[t][i], t indexing TransitionSpec::ts.transitions
    std::vector<std::vector<std::vector<int>>> candidates;

    friend bool operator==(const Feasibility&, const Feasibility&) = default;
};

struct ControlledSpec {
    TransitionSystem full;      // every spec state, retained transitions only
    TransitionSystem trimmed;
    Feasibility feas;
    std::vector<char> retained; // per spec transition
    bool centralized = false;
    std::uint64_t eval_count = 0; // indicator evaluations actually executed
    BigCount nominal_count;       // enumeration size the mode stands for
    bool boundary_risk = false;   // some spec point quantized near a cell edge
    int slack = 0;                // relaxation used; 0 means faithful
    double wall_seconds = 0;
    int workers = 1;

    // wall time and worker count excluded; used by determinism tests
    bool same_result(const ControlledSpec& o) const;
};

ControlledSpec synthesize_dec(const NetworkModel& m, const Quantizer& q,
                              const TransitionSpec& sq, int workers, int slack = 0);
ControlledSpec synthesize_dec_serial(const NetworkModel& m, const Quantizer& q,
                                     const TransitionSpec& sq, int slack = 0);
// centralized synthesis; literal mode materializes the joint input sets
// (product size capped) and cross-checks them against the factored form
ControlledSpec synthesize_cen(const NetworkModel& m, const Quantizer& q,
                              const TransitionSpec& sq, int workers,
                              bool literal = false, std::uint64_t literal_cap = 10000,
                              int slack = 0);

enum class WordPolicy { shortest, index, unroll };

struct WordChoice {
    std::vector<DecVec> word;         // q_0 ... q_tf
    std::vector<StateId> sq_path;     // spec states realizing the word
    std::vector<int> sq_trans_path;   // indices into TransitionSpec transitions
    TransitionSystem chain;           // the word as a single-path system
};

// picks a marked word from the trimmed controlled behavior; nullopt when
// the policy finds none (empty trim, index beyond the language, ...)
std::optional<WordChoice> select_word(const TransitionSpec& sq, const ControlledSpec& cs,
                                      WordPolicy policy, int param = 0);

struct DecControllers {
    WordChoice wc;
    std::vector<std::vector<std::vector<int>>> h; // [step][component] -> inputs
    RegionSpec x0, xf;
    double mu = 0;
    std::optional<Decimal> mu_exact;
    std::vector<Decimal> eta;
    Decimal theta;
};

// per-component controllers along the chosen word; every admissible input
// is re-verified through the abstraction before it is emitted
DecControllers extract_dec_controllers(const NetworkModel& m, const Quantizer& q,
                                       const GasCertificate& cert, double mu,
                                       const std::optional<Decimal>& mu_exact,
                                       const Decimal& theta, const TransitionSpec& sq,
                                       const ControlledSpec& cs, const WordChoice& wc);

struct CenController {
    TransitionSystem trimmed;
    Feasibility feas;                  // by global spec-transition index
    std::vector<int> trans_index;      // trimmed.transitions[k] <-> spec transition
    std::vector<RegionSpec> x0, xf;    // unions over initial / marked states
    double mu = 0;
    std::optional<Decimal> mu_exact;
    std::vector<Decimal> eta;
    Decimal theta;
};

CenController extract_cen_controller(const NetworkModel& m, const Quantizer& q,
                                     const GasCertificate& cert, double mu,
                                     const std::optional<Decimal>& mu_exact,
                                     const Decimal& theta, const TransitionSpec& sq,
                                     const ControlledSpec& cs);

struct StaticEntry {
    int t;                 // first chain position with this point
    DecVec center;         // component's own spec slice at that point
    std::vector<DecVec> neighbor_centers;
    std::vector<int> inputs;
};

struct StaticCheck {
    bool ok = false;
    // refusal witness: positions t < t' carrying the same point with
    // different successors
    int witness_t = -1, witness_tp = -1;
    std::vector<std::vector<StaticEntry>> maps; // per component, when ok
};

// a repeated word point with diverging successors makes memoryless
// feedback impossible; otherwise the chain controllers collapse to
// static maps keyed on the word points
StaticCheck check_static_feedback(const NetworkModel& m, const DecControllers& dc);

struct DiagnosisEntry {
    int trans_idx = -1, component = -1;
    std::vector<std::int64_t> target_cell;
    std::vector<std::vector<std::int64_t>> achievable_cells; // distinct, sorted
    std::int64_t min_cell_distance = 0;                      // sup-norm, grid units
    double max_gap = 0; // widest spacing between adjacent achievable values
    std::string suggestion;
};

// explains every (transition, component) pair whose indicator failed
std::vector<DiagnosisEntry> diagnose(const NetworkModel& m, const Quantizer& q,
                                     const TransitionSpec& sq, const ControlledSpec& cs);

} // namespace decsym
