#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chowtori/chow.hpp"
#include "chowtori/weil.hpp"

namespace chowtori::io {

// Parsed form of a problem file. The on-disk format is strict JSON with
// exactly the documented keys; unknown keys are rejected.
struct ProblemFile {
    std::string name;
    std::size_t degree = 0; // rank of Q-hat
    std::vector<groups::SignedPermutation> generators;
    lattice::IntegerMatrix phat_embedding; // N x r
    bool has_embedding = false;
    // optional, per generator, in the embedding-column basis
    std::optional<std::vector<lattice::IntegerMatrix>> phat_action;
    std::vector<std::string> variables; // display names, default x1..xN
    int degree_from = 1, degree_to = 1;
    std::vector<std::string> tasks;
    chow::Options options;
    bool oracle = false;
};

ProblemFile parse_problem(const std::string& path);
ProblemFile parse_problem_text(const std::string& text, const std::string& origin);

struct WitnessRecord {
    Int order;
    // coefficient, exponent vector; sorted by basis position
    std::vector<std::pair<Int, std::vector<int>>> terms;
};

struct DegreeRecord {
    int degree = 0;
    std::optional<lattice::AbelianGroupStructure> chow;
    std::optional<lattice::AbelianGroupStructure> kernel;
    std::optional<lattice::AbelianGroupStructure> cokernel;
    std::optional<lattice::AbelianGroupStructure> h1;
    std::vector<WitnessRecord> witnesses;
    double time_ms = 0.0;
};

struct StratumRecord {
    std::vector<int> subset; // 1-based in files
    std::size_t orbit_size = 0;
    std::size_t stabilizer_order = 0;
    std::vector<std::pair<std::vector<int>, std::size_t>> blocks; // points, stabilizer order
};

struct StrataRecord {
    int p = 0;
    std::vector<StratumRecord> orbits;
};

struct ReportFile {
    std::string problem;
    std::vector<std::string> variables;
    std::vector<DegreeRecord> degrees;
    std::vector<StrataRecord> strata;

    bool operator==(const ReportFile& rhs) const;
};

ReportFile run_pipeline(const ProblemFile& pf);

std::string report_to_json_text(const ReportFile& rf);
ReportFile report_from_json_text(const std::string& text);
std::string render_table(const ReportFile& rf);

// Exit codes: 0 ok, 2 parse, 3 validation, 4 resource bound, 5 internal
// invariant or cross-check failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace chowtori::io
