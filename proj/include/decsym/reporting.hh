/*
 * reporting.hh
 *
 * Human tables and machine-readable JSON artifacts: controller tables,
 * synthesis and simulation reports, infeasibility diagnoses, and the
 * comparison of a freshly computed instance against the reference
 * result bundle shipped with the example configs.
 */

#pragma once

#include "decsym/runtime.hh"

#include <string>

namespace decsym {

// provenance attached to every machine artifact
struct RunStamp {
    std::string config;
    std::uint64_t seed = 0;
    int workers = 1;
    bool faithful = true; // false once slack or overrides were used
};

// one row per chain step, one column per component, cells list the
// admissible inputs
std::string controller_table_text(const NetworkModel& m, const DecControllers& dc);
std::string controller_table_json(const NetworkModel& m, const DecControllers& dc);

std::string region_text(const RegionSpec& r);

std::string synthesis_report_json(const RunStamp& stamp, const NetworkModel& m,
                                  const Decimal& theta, const AccuracyPlan& plan,
                                  const ControlledSpec* dec_result,
                                  const ControlledSpec* cen_result,
                                  const DecControllers* dec_ctrl,
                                  const CenController* cen_ctrl);

std::string batch_report_json(const RunStamp& stamp, const Decimal& theta,
                              const BatchResult& b);

std::string diagnosis_text(const std::vector<DiagnosisEntry>& entries);
std::string diagnosis_json(const std::vector<DiagnosisEntry>& entries);

// Recomputes the bundled reference tables for the ring instance and
// spells out every disagreement instead of passing or failing: grid
// alignment of the published step size, the published row-label order
// together with a replay score per row, and a replay of the published
// trace. `ours` adds a column comparing the published inputs with the
// admissible sets actually synthesized here (nullable).
std::string reference_report_json(const std::string& reference_text,
                                  const NetworkModel& m,
                                  const std::vector<DecVec>& schedule,
                                  const DecControllers* ours);
std::string reference_report_text(const std::string& report_json);

} // namespace decsym
