/*
 * heating.hh
 *
 * Builtin ring-of-rooms benchmark model: N rooms in a circle, each with
 * a heater, plus the matching contraction certificate and temperature
 * schedules.  Two schedule variants are shipped; they differ only in
 * the first room at steps 9 and 10.
 */

#pragma once

#include "decsym/plant.hh"

#include <vector>

namespace decsym {

// inclusive decimal ladder start, start+step, ..., <= stop
std::vector<DecVec> decimal_range(const Decimal& start, const Decimal& step,
                                  const Decimal& stop);

// N scalar rooms on a ring; every room shares the same input list
NetworkModel heating_model(int n_rooms, std::vector<DecVec> inputs);
NetworkModel heating_model(int n_rooms); // default 0.025 grid on [0,1]

// sup-norm certificate with unit weights; contraction modulus 0.955
GasCertificate heating_certificate();

enum class ScheduleVariant {
    uniform_first, // first room held at 19 throughout
    raised_tail,   // first room at 20 during steps 9 and 10
};

// 12 points of dimension n_rooms
std::vector<DecVec> heating_schedule(int n_rooms, ScheduleVariant variant);

} // namespace decsym
