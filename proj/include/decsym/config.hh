/*
 * config.hh
 *
 * Text-file front end: plant descriptions (dynamics + input sets +
 * optional certificate), specification builder files, and the project
 * file that ties a run together.  All numeric fields are exact decimals
 * unless the quantity is inherently approximate.
 */

#pragma once

#include "decsym/plant.hh"
#include "decsym/specification.hh"

#include <cstdint>
#include <optional>
#include <string>

namespace decsym {

struct PlantFile {
    NetworkModel model;
    std::optional<GasCertificate> cert;
};

// throws std::runtime_error naming the offending line
PlantFile load_plant_file(const std::string& path);
PlantFile parse_plant_text(const std::string& text, const std::string& origin);

SpecExpr load_spec_file(const std::string& path);
SpecExpr parse_spec_text(const std::string& text, const std::string& origin);

enum class PlanChoice { aligned, split, explicit_pair };
enum class RunMode { dec, cen, both };

struct WordSelect {
    enum class Kind { shortest, unroll, index };
    Kind kind = Kind::shortest;
    int arg = 0; // repetitions for unroll, word index otherwise
};

struct ProjectConfig {
    std::string plant_path, spec_path;
    Decimal theta;
    PlanChoice plan = PlanChoice::aligned;
    std::optional<Decimal> mu_explicit, eta_explicit;
    RunMode mode = RunMode::dec;
    WordSelect word;
    std::string preset = "center"; // center | corner
    std::uint64_t samples = 100;
    std::uint64_t seed = 0;
    std::string outdir = "out";
    std::string reference;               // optional reference bundle (json)
    std::uint64_t falsify_samples = 10000;
    double falsify_lo = 0, falsify_hi = 50;
    int slack = 0;                       // >0 taints every artifact
    std::string origin;                  // directory of the config file
};

ProjectConfig load_project_file(const std::string& path);
ProjectConfig parse_project_text(const std::string& text, const std::string& origin);

// resolves a possibly relative path against the config file location
std::string resolve_path(const ProjectConfig& cfg, const std::string& p);

} // namespace decsym
