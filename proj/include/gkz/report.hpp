#pragma once

// The full pipeline for one (A, c, z) instance and its JSON record.

#include "gkz/admissibility.hpp"
#include "gkz/asymptotics.hpp"
#include "gkz/critical_points.hpp"
#include "gkz/lattice_polytope.hpp"
#include "gkz/quadrature.hpp"
#include "gkz/thimbles.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gkz {

inline constexpr const char* report_schema = "gkz-analysis/1";
inline constexpr const char* library_version = "1.0.0";

/// β_i = <κ_i, c - 1>, the order of the integrand along the divisor of facet i.
struct FacetOrder {
    IntVector kappa;
    std::optional<ExactComplex> exact;
    cplx value = 0.0;
};

std::vector<FacetOrder> beta_orders(const LatticePolytope& polytope, const ParameterVector& c);

struct AnalysisOptions {
    std::uint64_t seed = 0x5eed;
    CriticalOptions critical;
    FlowOptions flow;
    QuadratureOptions quadrature;
    AsymptoticOptions asymptotics;
    std::vector<double> lambda_ladder{20.0, 40.0, 80.0};
    bool run_periods = true;  // false stops after the cycles
    bool run_asymptotics = true;
};

enum class ReportStatus { full, partial, error };
std::string to_string(ReportStatus s);

struct StageFailure {
    std::string stage;
    std::string kind;
    std::string message;
};

struct SkippedStage {
    std::string stage;
    std::string reason;
};

struct AsymptoticEntry {
    AsymptoticTerm term;
    std::vector<RatioSample> ladder;
    std::optional<cplx> first_correction;
};

struct AnalysisReport {
    PointConfiguration config;
    ParameterVector c;
    std::vector<cplx> z;
    AnalysisOptions options;

    std::optional<LatticePolytope> polytope{};
    std::vector<FacetOrder> betas{};
    std::optional<PyramidCheck> pyramid{};
    std::optional<AdmissibilityVerdict> admissibility{};
    std::vector<CriticalPoint> critical{};
    std::optional<CountCertificate> certificate{};

    std::string route = "none";  // "thimbles", "sector-connectors" or "none"
    std::vector<Cycle> cycles{};
    std::vector<IntegralResult> periods{};
    std::vector<AsymptoticEntry> asymptotics{};
    std::optional<StokesTable> stokes{};

    std::vector<StageFailure> failures{};
    std::vector<SkippedStage> skipped{};
    ReportStatus status = ReportStatus::full;
};

/// Runs polytope, admissibility, critical points, cycles, periods and
/// asymptotics. Stage errors are recorded, never thrown; a failed hypothesis
/// skips the stages that depend on it and makes the report partial.
AnalysisReport analyze(const PointConfiguration& config, const ParameterVector& c, const std::vector<cplx>& z,
                       const AnalysisOptions& options = {});

/// Deterministic: no timings, no addresses, fixed key order.
nlohmann::ordered_json to_json(const AnalysisReport& report);

}  // namespace gkz
