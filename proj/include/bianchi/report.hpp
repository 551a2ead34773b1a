#pragma once

#include <string>
#include <vector>

#include "bianchi/symmetry.hpp"

namespace bianchi {

enum class DiagCode {
    PAPER_N_EXCEEDS_CLASSES,
    FEWER_SYMMETRIES_THAN_THEOREM,
    SIGMA_COLUMN_MISMATCH,
    DET_SIGN_NOTE,
    CHARACTER_CONDITION_SKIPPED,
};

std::string diag_code_name(DiagCode code);

struct Diagnostic {
    DiagCode code;
    std::string detail;
    std::vector<std::pair<std::string, std::string>> data;
};

/// Per-D verdict: class group, the predicted cusp count, found symmetries,
/// and every discrepancy between prediction and computation. Mismatches are
/// surfaced as diagnostics, never reconciled silently.
struct AnalysisReport {
    long long D = 0;
    int n = 0;               // number of prime divisors of D
    long long paper_N = 0;   // predicted cusp count 2^n or 2^(n-1)
    ClassGroupStructure classgroup;
    bool elementary_two = false;
    bool cyclic_two_power = false;
    bool exponent_matches = false;  // cyclic 2-power with h equal to paper_N
    long long singular_class_count = 0;
    std::vector<SymmetryCandidate> symmetries;  // deduped; all fully verified
    long long covered_class_count = 0;          // distinct singular classes hit
    std::vector<Diagnostic> diagnostics;
};

/// Throws ExcludedFieldError for D = 1, 3 and std::invalid_argument for
/// non-square-free D.
AnalysisReport analyze(long long D, const SearchConfig& cfg);

struct RangeScan {
    long long from = 0, to = 0;
    std::vector<AnalysisReport> reports;
    std::vector<long long> skipped;  // non-square-free and excluded values
};

/// Analyzes every in-scope D in [from, to]; cfg.workers > 1 fans the D values
/// out to threads, with output order independent of scheduling.
RangeScan range_scan(long long from, long long to, const SearchConfig& cfg);

struct FixtureResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// The seven tabulated example rows (searched with c_max = 4 and checked
/// against the full verification battery) plus the two historical case
/// constructions (flip check only).
std::vector<FixtureResult> paper_check();

enum class EmitFormat { Pretty, Json, Csv };

EmitFormat parse_format(const std::string& name);  // throws on unknown format

std::string csv_header();

std::string emit(const AnalysisReport& r, EmitFormat format, bool approx = false);
std::string emit_range(const RangeScan& scan, EmitFormat format, bool approx = false);
std::string emit_fixtures(const std::vector<FixtureResult>& results, EmitFormat format);

}  // namespace bianchi
