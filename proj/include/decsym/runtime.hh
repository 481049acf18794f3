/*
 * runtime.hh
 *
 * Closed-loop execution of synthesized controllers against the
 * continuous network, trace verification against the enforced word, and
 * deterministic Monte-Carlo batches over the initial region.
 */

#pragma once

#include "decsym/synthesis.hh"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace decsym {

enum class InputPick { min, max, random };
enum class SuccessorPick { smallest, random };

struct TraceRow {
    int t = 0;
    std::vector<double> x;
    std::vector<int> u_idx;     // empty on the final row
    std::vector<double> u_vals;
    DecVec q;                   // word point tracked at this step
    double deviation = 0;       // sup-norm distance between x and q
};

struct Trace {
    std::vector<TraceRow> rows;
    bool blocked = false; // controller had no admissible input
    int blocked_t = -1, blocked_comp = -1;
};

Trace run_dec(const NetworkModel& m, const DecControllers& dc,
              const std::vector<double>& x0, InputPick pick,
              std::uint64_t seed = 0);

// walks the trimmed centralized behavior until the first marked state;
// starting outside X_0 only costs the guarantee, the trace is still made
Trace run_cen(const NetworkModel& m, const CenController& cc,
              const std::vector<double>& x0, InputPick pick,
              SuccessorPick succ, std::uint64_t seed = 0,
              std::size_t max_steps = 100000);

struct VerifyResult {
    bool ok = false;
    std::string violation; // empty when ok
    int t = -1;
    double deviation = 0;
};

// x(0) in X_0, x(t_f) in X_f, and deviation(t) <= theta throughout;
// trace and word lengths must agree
VerifyResult verify_enforcement(const GasCertificate& cert, const Trace& trace,
                                const std::vector<DecVec>& word, const Decimal& theta,
                                const RegionSpec& x0, const RegionSpec& xf);

std::string trace_csv(const Trace& trace);

// marked words of the trimmed centralized behavior
std::set<Word> enforced_language(const CenController& cc, std::size_t max_len);

struct BatchResult {
    std::uint64_t n_traces = 0, n_ok = 0;
    double max_deviation = 0;
    std::uint64_t first_failure = 0; // valid when n_ok < n_traces
    std::string first_violation;
};

// runs `count` decentralized traces from uniformly sampled X_0 points;
// per-trace seeding keeps the outcome independent of the worker count
BatchResult simulate_batch(const NetworkModel& m, const GasCertificate& cert,
                           const DecControllers& dc, std::uint64_t count,
                           std::uint64_t seed, InputPick pick, int workers);
BatchResult simulate_batch_serial(const NetworkModel& m, const GasCertificate& cert,
                                  const DecControllers& dc, std::uint64_t count,
                                  std::uint64_t seed, InputPick pick);

// deterministic sample in the region box (falls back to the predicate
// center when no exact box exists)
std::vector<double> sample_region(const RegionSpec& r, const GasCertificate& cert,
                                  std::uint64_t seed, std::uint64_t index);

} // namespace decsym
