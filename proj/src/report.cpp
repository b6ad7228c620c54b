#include "gkz/report.hpp"

#include "gkz/errors.hpp"
#include "gkz/laurent.hpp"

#include <algorithm>
#include <limits>

namespace gkz {

using ordered_json = nlohmann::ordered_json;

std::vector<FacetOrder> beta_orders(const LatticePolytope& polytope, const ParameterVector& c) {
    std::vector<ExactComplex> shifted;
    if (c.is_exact())
        for (std::size_t k = 0; k < c.size(); ++k) shifted.push_back(*c.exact_component(k) - ExactComplex{1, 0});
    std::vector<FacetOrder> out;
    for (const auto& f : polytope.facets()) {
        FacetOrder o;
        o.kappa = f.kappa;
        for (std::size_t k = 0; k < c.size(); ++k)
            o.value += static_cast<double>(f.kappa[k]) * (c.value(k) - 1.0);
        if (c.is_exact()) {
            o.exact = pairing(f.kappa, shifted);
            o.value = o.exact->to_complex();
        }
        out.push_back(std::move(o));
    }
    return out;
}

std::string to_string(ReportStatus s) {
    switch (s) {
        case ReportStatus::full: return "full";
        case ReportStatus::partial: return "partial";
        case ReportStatus::error: return "error";
    }
    return "error";
}

namespace {

template <class F>
bool stage(AnalysisReport& r, const std::string& name, F&& body) {
    try {
        body();
        return true;
    } catch (const Error& e) {
        r.failures.push_back({name, e.kind(), e.what()});
    } catch (const std::exception& e) {
        r.failures.push_back({name, "InternalError", e.what()});
    }
    return false;
}

std::string thimble_obstacle(const AnalysisReport& r) {
    if (!origin_interior(*r.polytope)) return "0 is not an interior point of the Newton polytope";
    if (!r.certificate || r.certificate->status != CertificateStatus::complete)
        return "critical point count is not certified complete";
    for (const auto& p : r.critical)
        if (!p.morse) return "a critical point is not Morse";
    return {};
}

}  // namespace

AnalysisReport analyze(const PointConfiguration& config, const ParameterVector& c, const std::vector<cplx>& z,
                       const AnalysisOptions& options) {
    AnalysisReport r{.config = config, .c = c, .z = z, .options = options};
    CriticalOptions copts = options.critical;
    copts.solver.seed = options.seed;
    copts.require_complete = false;

    const bool geometry = stage(r, "polytope", [&] {
        if (c.size() != config.dim()) throw InvalidConfiguration("c has the wrong length");
        if (z.size() != config.size()) throw InvalidConfiguration("z has the wrong length");
        r.polytope = build_delta(config);
        r.betas = beta_orders(*r.polytope, c);
        r.pyramid = pyramid_identity(*r.polytope);
    });
    if (!geometry) {
        r.status = ReportStatus::error;
        return r;
    }

    const LaurentPolynomial h = from_config(config, z);
    stage(r, "admissibility", [&] { r.admissibility = admissibility(config, c, z, copts); });
    stage(r, "critical", [&] {
        r.critical = solve_critical(h, copts);
        r.certificate = count_certificate(r.critical, *r.polytope);
    });
    if (r.critical.size() >= 2) r.stokes = stokes_lines(r.critical);

    const bool resonant = r.admissibility && !r.admissibility->resonance.nonresonant;
    if (resonant) {
        r.skipped.push_back({"basis", "nonresonant=false: a facet through 0 has <κ, c> ∈ Z"});
    } else {
        const std::string obstacle = thimble_obstacle(r);
        bool built = false;
        if (obstacle.empty()) {
            built = stage(r, "thimbles", [&] {
                for (auto& t : thimble_basis(h, r.critical, options.flow)) r.cycles.emplace_back(std::move(t));
                r.route = "thimbles";
            });
        } else {
            r.skipped.push_back({"thimbles", obstacle});
        }
        if (!built && config.dim() == 1) {
            built = stage(r, "cycles", [&] {
                for (auto& cyc : cycle_basis_1d(h, c)) r.cycles.emplace_back(std::move(cyc));
                r.route = "sector-connectors";
            });
        } else if (!built) {
            r.skipped.push_back({"cycles", "no cycle construction applies"});
        }
        if (built && options.run_periods)
            stage(r, "periods", [&] { r.periods = period_vector(h, c, r.cycles, options.quadrature); });
    }

    if (r.route == "thimbles" && options.run_asymptotics) {
        AsymptoticOptions aopts = options.asymptotics;
        aopts.flow = options.flow;
        aopts.quadrature = options.quadrature;
        std::vector<cplx> ladder(options.lambda_ladder.begin(), options.lambda_ladder.end());
        for (std::size_t k = 0; k < r.cycles.size(); ++k) {
            const auto& t = std::get<Thimble>(r.cycles[k]);
            AsymptoticEntry entry;
            const bool ok = stage(r, "asymptotics", [&] {
                entry.term = leading_term(h, c, t.saddle, k, t.rotation, aopts);
                if (!ladder.empty()) entry.ladder = asymptotic_ratio(h, c, entry.term, t, ladder, aopts);
                if (entry.ladder.size() >= 2) entry.first_correction = first_correction(entry.ladder);
            });
            if (ok) r.asymptotics.push_back(std::move(entry));
        }
    } else if (options.run_asymptotics) {
        r.skipped.push_back({"asymptotics", "needs the thimble basis"});
    }

    r.status = r.failures.empty() && r.skipped.empty() ? ReportStatus::full : ReportStatus::partial;
    return r;
}

namespace {

ordered_json cj(cplx v) { return ordered_json::array({v.real(), v.imag()}); }

ordered_json bj(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

ordered_json vj(const IntVector& v) {
    ordered_json out = ordered_json::array();
    for (const auto& x : v) out.push_back(bj(x));
    return out;
}

ordered_json sector_json(const std::optional<Sector>& s) {
    if (!s) return nullptr;
    return {{"divisor", to_string(s->divisor)}, {"index", s->index}, {"lo", s->lo}, {"hi", s->hi}};
}

ordered_json cycle_json(const Cycle& cycle) {
    if (const auto* t = std::get_if<Thimble>(&cycle)) {
        std::size_t panels = 0;
        for (const auto& ray : t->rays) panels += ray.panels.size();
        return {{"kind", "thimble"},
                {"saddle", cj(t->saddle.value)},
                {"rays", t->rays.size()},
                {"angular_panels", t->fan.size()},
                {"flow_panels", panels},
                {"rotation", cj(t->rotation)},
                {"orientation", t->orientation}};
    }
    const auto& c = std::get<Cycle1D>(cycle);
    return {{"kind", c.kind},
            {"from", sector_json(c.from_sector)},
            {"to", sector_json(c.to_sector)},
            {"closed", c.closed},
            {"orientation", c.orientation},
            {"samples", c.samples.size()}};
}

}  // namespace

ordered_json to_json(const AnalysisReport& r) {
    ordered_json j;
    j["schema"] = report_schema;
    j["status"] = to_string(r.status);

    ordered_json input;
    input["n"] = r.config.dim();
    input["A"] = ordered_json::array();
    for (const auto& p : r.config.points()) input["A"].push_back(vj(p));
    input["c"] = ordered_json::array();
    for (std::size_t k = 0; k < r.c.size(); ++k) {
        const auto& e = r.c.exact_component(k);
        input["c"].push_back({{"exact", e ? ordered_json(to_string(*e)) : ordered_json(nullptr)}, {"value", cj(r.c.value(k))}});
    }
    input["z"] = ordered_json::array();
    for (cplx v : r.z) input["z"].push_back(cj(v));
    j["input"] = input;

    if (r.polytope) {
        const auto& P = *r.polytope;
        ordered_json poly;
        poly["vertices"] = ordered_json::array();
        for (const auto& v : P.vertices()) poly["vertices"].push_back(vj(v));
        poly["normalized_volume"] = bj(normalized_volume(P));
        poly["origin"] = origin_interior(P) ? "interior" : P.contains_origin() ? "boundary" : "outside";
        poly["facets"] = ordered_json::array();
        for (std::size_t k = 0; k < P.facets().size(); ++k) {
            const auto& f = P.facets()[k];
            const auto& b = r.betas.at(k);
            poly["facets"].push_back({{"kappa", vj(f.kappa)},
                                      {"offset", bj(f.offset)},
                                      {"pole_order", bj(f.pole_order)},
                                      {"face_volume", bj(f.face_volume)},
                                      {"contains_origin", f.contains_origin},
                                      {"beta", {{"exact", b.exact ? ordered_json(to_string(*b.exact)) : ordered_json(nullptr)},
                                                {"value", cj(b.value)}}}});
        }
        if (r.pyramid) poly["pyramid"] = {{"holds", r.pyramid->holds}, {"facet_sum", bj(r.pyramid->facet_sum)}};
        j["polytope"] = poly;
    }

    if (r.admissibility) {
        const auto& a = *r.admissibility;
        ordered_json res = ordered_json::array();
        for (const auto& f : a.resonance.facets)
            res.push_back({{"kappa", vj(f.kappa)},
                           {"pairing", r.c.is_exact() ? ordered_json(to_string(f.pairing)) : ordered_json(nullptr)},
                           {"value", cj(f.approx)},
                           {"resonant", f.resonant}});
        ordered_json faces = ordered_json::array();
        for (const auto& f : a.nondegeneracy.faces)
            if (!f.nondegenerate) {
                ordered_json verts = ordered_json::array();
                for (const auto& v : f.vertices) verts.push_back(vj(v));
                faces.push_back({{"vertices", verts}, {"dim", f.dim}, {"method", f.method}});
            }
        j["admissibility"] = {{"nonresonant", a.resonance.nonresonant},
                              {"resonance_confidence", to_string(a.resonance.confidence)},
                              {"resonance_suspect", a.resonance.suspect},
                              {"resonance_facets", res},
                              {"nondegenerate", a.nondegeneracy.nondegenerate},
                              {"nondegeneracy_confidence", to_string(a.nondegeneracy.confidence)},
                              {"faces_checked", a.nondegeneracy.faces.size()},
                              {"degenerate_faces", faces},
                              {"in_omega_zero", a.in_omega_zero},
                              {"non_morse", a.non_morse},
                              {"min_hessian_ratio", a.min_hessian_ratio},
                              {"confidence", to_string(a.confidence)}};
    }

    ordered_json crit;
    crit["points"] = ordered_json::array();
    for (const auto& p : r.critical) {
        ordered_json x = ordered_json::array();
        for (Eigen::Index k = 0; k < p.location.coords.size(); ++k) x.push_back(cj(p.location.coords[k]));
        crit["points"].push_back({{"x", x},
                                  {"value", cj(p.value)},
                                  {"hessian_det", cj(p.hessian_det)},
                                  {"morse", p.morse},
                                  {"residual", p.residual}});
    }
    if (r.certificate)
        crit["certificate"] = {{"found", r.certificate->found},
                               {"expected", bj(r.certificate->expected)},
                               {"status", to_string(r.certificate->status)},
                               {"min_separation", r.certificate->min_separation}};
    j["critical"] = crit;

    ordered_json basis;
    basis["route"] = r.route;
    basis["count"] = r.cycles.size();
    basis["cycles"] = ordered_json::array();
    for (const auto& cyc : r.cycles) basis["cycles"].push_back(cycle_json(cyc));
    j["basis"] = basis;

    j["periods"] = ordered_json::array();
    for (const auto& p : r.periods)
        j["periods"].push_back({{"value", cj(p.value)}, {"error_estimate", p.error_estimate}, {"evaluations", p.evaluations}});

    j["asymptotics"] = ordered_json::array();
    for (const auto& e : r.asymptotics) {
        ordered_json ladder = ordered_json::array();
        for (const auto& s : e.ladder)
            ladder.push_back({{"lambda", cj(s.lambda)},
                              {"integral", cj(s.integral)},
                              {"error_estimate", s.error_estimate},
                              {"ratio", cj(s.ratio)}});
        j["asymptotics"].push_back({{"saddle", e.term.saddle},
                                    {"prefactor", cj(e.term.prefactor)},
                                    {"rate", cj(e.term.rate)},
                                    {"power", e.term.power},
                                    {"sqrt_branch", e.term.sqrt_branch},
                                    {"calibrated", e.term.calibrated},
                                    {"calibration_ratio", cj(e.term.calibration_ratio)},
                                    {"ladder", ladder},
                                    {"first_correction", e.first_correction ? cj(*e.first_correction) : ordered_json(nullptr)}});
    }

    if (r.stokes) {
        ordered_json lines = ordered_json::array(), skipped = ordered_json::array();
        for (const auto& l : r.stokes->lines)
            lines.push_back({{"pair", {l.i, l.j}}, {"angles", {l.angles[0], l.angles[1]}}});
        for (const auto& [a, b] : r.stokes->skipped) skipped.push_back({a, b});
        j["stokes"] = {{"lines", lines}, {"skipped", skipped}};
    } else {
        j["stokes"] = nullptr;
    }

    j["failures"] = ordered_json::array();
    for (const auto& f : r.failures) j["failures"].push_back({{"stage", f.stage}, {"kind", f.kind}, {"message", f.message}});
    j["skipped"] = ordered_json::array();
    for (const auto& s : r.skipped) j["skipped"].push_back({{"stage", s.stage}, {"reason", s.reason}});

    const auto& o = r.options;
    ordered_json ladder = ordered_json::array();
    for (double l : o.lambda_ladder) ladder.push_back(l);
    j["provenance"] = {{"version", library_version},
                       {"seed", o.seed},
                       {"tolerances",
                        {{"quadrature", o.quadrature.tolerance},
                         {"morse", o.critical.morse_tolerance},
                         {"ode", o.flow.ode_tolerance},
                         {"fan", o.flow.fan_tolerance},
                         {"rho0", o.flow.rho0},
                         {"r_cut", o.flow.r_cut},
                         {"tie_delta", o.flow.tie_delta},
                         {"sector_delta", o.asymptotics.sector_delta},
                         {"calibration_lambda", o.asymptotics.calibration_lambda}}},
                       {"lambda_ladder", ladder}};
    return j;
}

}  // namespace gkz
