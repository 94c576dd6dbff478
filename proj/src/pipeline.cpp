#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>

#include <boost/version.hpp>
#include <gmp.h>

#include "centerkit/center.hpp"
#include "centerkit/errors.hpp"
#include "centerkit/pipeline.hpp"

namespace centerkit {

namespace {

using nlohmann::ordered_json;
using cd = std::complex<double>;

std::string error_type(std::exception const &e)
{
#define CENTERKIT_ERROR_NAME(T) \
  if (dynamic_cast<T const *>(&e)) { return #T; }
  CENTERKIT_ERROR_NAME(StepUnderflow)
  CENTERKIT_ERROR_NAME(NoReturn)
  CENTERKIT_ERROR_NAME(SingularMatrix)
  CENTERKIT_ERROR_NAME(NotARotation)
  CENTERKIT_ERROR_NAME(IrrationalFrequency)
  CENTERKIT_ERROR_NAME(Inconclusive)
  CENTERKIT_ERROR_NAME(NotIsolated)
  CENTERKIT_ERROR_NAME(BranchFailure)
  CENTERKIT_ERROR_NAME(PreconditionViolation)
  CENTERKIT_ERROR_NAME(SingularPoint)
#undef CENTERKIT_ERROR_NAME
  return "Error";
}

// Runs body into section; on failure records the error and returns false.
template <typename Body> bool run_stage(ordered_json &section, Report &report, Body &&body)
{
  section["status"] = "ok";
  try {
    body();
    return true;
  } catch (Error const &e) {
    section["status"] = "error";
    section["error"] = {{"type", error_type(e)}, {"message", e.what()}};
    if (dynamic_cast<NumericError const *>(&e)) { report.numeric_failure = true; }
  } catch (std::exception const &e) {
    section["status"] = "error";
    section["error"] = {{"type", "Failure"}, {"message", e.what()}};
  }
  return false;
}

ordered_json skipped(std::string const &why) { return {{"status", "skipped"}, {"reason", why}}; }

ordered_json complex_json(cd z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json matrix_json(Matrix2c const &m)
{
  return ordered_json::array({ordered_json::array({m(0, 0).to_string(), m(0, 1).to_string()}),
                              ordered_json::array({m(1, 0).to_string(), m(1, 1).to_string()})});
}

ordered_json obstructions_json(std::vector<Obstruction> const &obs)
{
  ordered_json rows = ordered_json::array();
  for (auto const &o : obs) { rows.push_back({{"j", o.index}, {"degree", o.degree()}, {"value", o.value.to_string()}}); }
  return rows;
}

ordered_json optional_int(std::optional<int> const &v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

std::string format(char const *fmt, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

// ---- real fields ------------------------------------------------------------

void center_stage(ProblemSpec const &spec, int n, ordered_json &sections, Report &report,
                  std::optional<CenterCertificate> &cert)
{
  ordered_json section;
  run_stage(section, report, [&] {
    CenterCertificate const c = certify_center(*spec.field, n);
    section["verdict"] = to_string(c.verdict);
    section["truncation"] = c.truncation;
    section["reason"] = c.reason;
    if (c.normalization) {
      section["normalization"] = {{"change_matrix", matrix_json(c.normalization->change_matrix)},
                                  {"time_rescale", c.normalization->time_rescale.to_string()}};
    } else {
      section["normalization"] = nullptr;
    }
    section["obstructions"] = c.report ? obstructions_json(c.report->obstructions) : ordered_json::array();
    section["first_nonzero"] = c.report ? optional_int(c.report->first_nonzero) : ordered_json(nullptr);
    section["focus_sign"] = c.focus_sign;
    section["first_integral"] = c.report ? ordered_json(c.report->first_integral.to_string()) : ordered_json(nullptr);
    section["first_integral_original"]
      = c.first_integral_original ? ordered_json(c.first_integral_original->to_string()) : ordered_json(nullptr);
    section["morse"] = {{"nondegenerate", c.morse.nondegenerate}, {"definite", c.morse.definite}};
    std::string summary = to_string(c.verdict) + " at truncation " + std::to_string(c.truncation);
    if (c.focus) {
      summary += ": first nonzero obstruction eta_" + std::to_string(c.focus->index) + " = " + c.focus->value.to_string()
                 + (c.focus_sign > 0 ? " (repelling)" : " (attracting)");
    }
    if (c.verdict == CenterVerdict::NotApplicable) { summary += ": " + c.reason; }
    section["summary"] = summary;
    cert = c;
  });
  sections["center"] = std::move(section);
}

void dump_orbits(VectorField2 const &field, TransverseSegment const &seg, std::vector<double> const &radii,
                 std::vector<double> const &times, double tol, std::string const &dir, std::string const &stem,
                 ordered_json &files)
{
  std::filesystem::create_directories(dir);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    std::string const path = (std::filesystem::path(dir) / (stem + "_r" + std::to_string(k) + ".csv")).string();
    write_orbit_csv(integrate(field, seg.point(radii[k]), times[k], tol), path);
    files.push_back(path);
  }
}

void returnmap_stage(ProblemSpec const &spec, PipelineOptions const &options, ordered_json &sections, Report &report,
                     std::optional<bool> &periodic)
{
  FieldAnalysis const &fa = spec.field_analysis;
  double const tol = options.tol.value_or(fa.tol);
  std::vector<double> const radii = options.radii.value_or(fa.radii);
  std::optional<VectorField2> normalized;
  try {
    normalized = normalize_rotation(*spec.field).normalized;
  } catch (Error const &e) {
    sections["return_maps"] = skipped(std::string("linear part is not a rotation: ") + e.what());
    return;
  }
  ordered_json section;
  run_stage(section, report, [&] {
    VectorField2 const &field = *normalized;
    TransverseSegment const seg = make_segment(field, fa.segment_direction, fa.segment_length);
    section["segment"] = {{"direction", {seg.direction.x(), seg.direction.y()}}, {"length", seg.length}};
    section["tol"] = tol;
    section["t_budget"] = fa.t_budget;
    ReturnOptions ro;
    ro.tol = tol;
    ro.t_budget = fa.t_budget;
    ro.integration.domain_box = fa.domain_box;
    PeriodicSequenceVerdict const v = detect_periodic_sequence(field, seg, radii, ro);
    TransverseSegment const opposite{-seg.direction, seg.length};
    ordered_json rows = ordered_json::array();
    std::vector<double> times;
    for (std::size_t k = 0; k < radii.size(); ++k) {
      ReturnMapSample const full = return_map(field, seg, radii[k], ro);
      ReturnMapSample const half = half_return_map(field, seg, radii[k], ro);
      ordered_json row{{"r_in", radii[k]},
                       {"r_out", v.returns[k]},
                       {"residual", v.residuals[k]},
                       {"relative_residual", v.relative_residuals[k]},
                       {"crossings", full.crossings},
                       {"return_time", full.time},
                       {"half_return", half.r_out}};
      times.push_back(full.time);
      if (half.r_out <= seg.length) {
        ReturnMapSample const back = half_return_map(field, opposite, half.r_out, ro);
        row["half_half"] = back.r_out;
        row["half_half_relative_error"] = std::abs(back.r_out - radii[k]) / radii[k];
      } else {
        row["half_half"] = nullptr;
        row["half_half_relative_error"] = nullptr;
      }
      row["tol"] = tol;
      rows.push_back(std::move(row));
    }
    section["rows"] = std::move(rows);
    section["relative_tolerance"] = v.tolerance;
    section["verdict"] = v.verdict();
    section["caveat"] = v.caveat;
    section["summary"] = v.verdict() + " over " + std::to_string(radii.size()) + " radii, max relative residual "
                         + format("%.3g", *std::max_element(v.relative_residuals.begin(), v.relative_residuals.end()));
    if (options.dump_dir) {
      ordered_json files = ordered_json::array();
      dump_orbits(field, seg, radii, times, tol, *options.dump_dir, spec.name.empty() ? "orbit" : spec.name, files);
      section["orbit_dumps"] = std::move(files);
    }
    periodic = v.periodic;
  });
  sections["return_maps"] = std::move(section);
}

void scan_stage(ProblemSpec const &spec, ordered_json &sections, Report &report)
{
  FieldAnalysis const &fa = spec.field_analysis;
  ordered_json section;
  run_stage(section, report, [&] {
    TransverseSegment const seg = make_segment(*spec.field, fa.scan_direction, fa.scan_length);
    ScanOptions so;
    so.t_budget = fa.scan_t_budget;
    so.tol = fa.scan_tol;
    so.integration.domain_box = fa.domain_box;
    auto const reports = bounded_order_scan(*spec.field, seg, fa.scan_points, fa.scan_k, so);
    section["segment"] = {{"direction", {seg.direction.x(), seg.direction.y()}}, {"length", seg.length}};
    section["k"] = fa.scan_k;
    section["t_budget"] = so.t_budget;
    ordered_json rows = ordered_json::array();
    int worst = 0;
    bool all_within = true;
    for (auto const &r : reports) {
      rows.push_back({{"point", {r.point.x(), r.point.y()}},
                      {"count", r.count},
                      {"within_bound", r.within_bound},
                      {"closed", r.closed},
                      {"budget_exhausted", r.budget_exhausted},
                      {"crossings", r.crossings},
                      {"tol", so.tol}});
      worst = std::max(worst, r.count);
      all_within = all_within && r.within_bound;
    }
    section["rows"] = std::move(rows);
    section["all_within_bound"] = all_within;
    section["summary"] = std::to_string(reports.size()) + " orbits, max count " + std::to_string(worst)
                         + (all_within ? ", all within k = " : ", some exceed k = ") + std::to_string(fa.scan_k);
  });
  sections["bounded_order"] = std::move(section);
}

void real_field_pipeline(ProblemSpec const &spec, PipelineOptions const &options, ordered_json &sections,
                         Report &report)
{
  int const n = options.truncation.value_or(spec.field_analysis.lyapunov_truncation.value_or(spec.truncation));
  std::optional<CenterCertificate> cert;
  std::optional<bool> periodic;
  if (options.stages & stage::lyapunov) { center_stage(spec, n, sections, report, cert); }
  if (options.stages & stage::returnmap) {
    returnmap_stage(spec, options, sections, report, periodic);
    if (!spec.field_analysis.scan_points.empty()) { scan_stage(spec, sections, report); }
  }
  if ((options.stages & stage::lyapunov) && (options.stages & stage::returnmap)) {
    ordered_json combined;
    combined["symbolic"] = cert ? ordered_json(to_string(cert->verdict)) : ordered_json(nullptr);
    combined["numeric"] = periodic ? ordered_json(*periodic ? "PERIODIC_SEQUENCE" : "NOT_PERIODIC") : ordered_json(nullptr);
    if (cert && periodic) {
      bool const center = cert->verdict == CenterVerdict::CenterToOrderN;
      combined["agreement"] = center == *periodic;
      combined["summary"] = center == *periodic ? "symbolic and numeric verdicts agree"
                                                : "symbolic and numeric verdicts disagree";
    } else {
      combined["agreement"] = nullptr;
      combined["summary"] = "one side unavailable; no comparison";
    }
    combined["authority"] = "symbolic";
    sections["combined"] = std::move(combined);
  }
}

// ---- complex forms ----------------------------------------------------------

ordered_json form_json(OneForm2 const &w) { return {{"a", w.a.to_string()}, {"b", w.b.to_string()}}; }

void complex_form_pipeline(ProblemSpec const &spec, PipelineOptions const &options, ordered_json &sections,
                           Report &report)
{
  OneForm2 const &form = *spec.form;
  bool const siegel = siegel_check(form);
  sections["siegel"] = {{"status", "ok"},
                        {"siegel", siegel},
                        {"summary", siegel ? "linear part is x dy + y dx" : "linear part is not x dy + y dx"}};

  if (options.stages & stage::blowup) {
    ordered_json section;
    run_stage(section, report, [&] {
      BlowupResult const b = blowup(form);
      section["dicritical"] = b.dicritical();
      section["divisor_invariant"] = b.divisor_invariant;
      section["gluing_consistent"] = b.gluing_consistent;
      section["multiplicity_t"] = b.multiplicity_t;
      section["multiplicity_s"] = b.multiplicity_s;
      section["chart_t"] = form_json(b.chart_t);
      section["chart_s"] = form_json(b.chart_s);
      ordered_json rows = ordered_json::array();
      for (auto const &s : b.singularities_on_E) {
        rows.push_back({{"chart", s.chart},
                        {"location", complex_json(s.location)},
                        {"lambda_transverse", complex_json(s.lambda_transverse)},
                        {"lambda_tangent", complex_json(s.lambda_tangent)},
                        {"ratio", complex_json(s.ratio)}});
      }
      section["singularities"] = std::move(rows);
      section["summary"] = std::string(b.dicritical() ? "dicritical" : "invariant divisor") + ", "
                           + std::to_string(b.singularities_on_E.size()) + " singular points on the divisor";
    });
    sections["blowup"] = std::move(section);
  }

  if (!(options.stages & stage::slice)) { return; }
  if (!siegel) {
    sections["first_integral"] = skipped("form is not Siegel");
    sections["factor"] = skipped("form is not Siegel");
    sections["slice"] = skipped("form is not Siegel");
    return;
  }
  int const n = options.truncation.value_or(spec.form_analysis.integral_truncation.value_or(spec.truncation + 1));
  std::optional<SiegelIntegral> integral;
  ordered_json fi;
  run_stage(fi, report, [&] {
    SiegelIntegral const s = formal_first_integral_siegel(siegel_form(form), n);
    fi["truncation"] = n;
    fi["first_integral"] = s.first_integral.to_string();
    fi["obstructions"] = obstructions_json(s.obstructions);
    fi["first_nonzero"] = optional_int(s.first_nonzero);
    fi["summary"] = s.first_nonzero ? "no formal first integral: obstruction at (xy)^" + std::to_string(*s.first_nonzero)
                                    : "formal first integral to degree " + std::to_string(n);
    integral = s;
  });
  sections["first_integral"] = std::move(fi);
  if (!integral || integral->first_nonzero) {
    sections["factor"] = skipped("no formal first integral");
    sections["slice"] = skipped("no formal first integral");
    return;
  }

  std::optional<FactorPair> pair;
  ordered_json fs;
  run_stage(fs, report, [&] {
    FactorPair const p = factor_fg(integral->first_integral, n);
    fs["truncation"] = p.truncation;
    fs["f"] = p.f.to_string();
    fs["g"] = p.g.to_string();
    fs["branch_f"] = p.branch_f.to_string();
    fs["unit"] = p.unit.to_string();
    fs["general_position"] = p.general_position;
    fs["reconstructs"] = p.product() == integral->first_integral.with_truncation(p.truncation);
    fs["summary"] = "F = f g to degree " + std::to_string(p.truncation);
    pair = p;
  });
  sections["factor"] = std::move(fs);
  if (!pair) {
    sections["slice"] = skipped("factorization failed");
    return;
  }

  ordered_json sl;
  run_stage(sl, report, [&] {
    RealSlice const r = real_slice(*pair, spec.form_analysis.slice);
    double max_im = 0.0, min_re = 0.0;
    for (auto const &s : r.samples) {
      max_im = std::max(max_im, std::abs(s.fg.imag()));
      min_re = std::min(min_re, s.fg.real());
    }
    sl["seeds"] = r.seeds;
    sl["samples"] = int(r.samples.size());
    sl["failed_seeds"] = r.failed_seeds;
    sl["max_abs_im_fg"] = max_im;
    sl["min_re_fg"] = min_re;
    sl["all_products_ok"] = r.all_products_ok;
    sl["all_contact_one"] = r.all_contact_one;
    sl["tol"] = r.tol;
    sl["summary"] = std::to_string(r.samples.size()) + " samples, "
                    + (r.all_products_ok && r.all_contact_one ? "slice checks pass" : "slice checks fail");
  });
  sections["slice"] = std::move(sl);
}

// ---- germs ------------------------------------------------------------------

template <typename Scalar>
void germ_pipeline(BasicGerm<Scalar> const &f, GermAnalysis const &ga, ordered_json &sections, Report &report)
{
  std::optional<int> order;
  bool conclusive = false;
  ordered_json fo;
  run_stage(fo, report, [&] {
    fo["truncation"] = f.truncation();
    fo["k_max"] = ga.k_max;
    if constexpr (std::is_same_v<Scalar, Coefficient>) {
      fo["multiplier"] = f.multiplier().to_string();
    } else {
      fo["multiplier"] = complex_json(f.multiplier());
    }
    fo["multiplier_order"] = optional_int(multiplier_order(f.multiplier(), ga.k_max));
    order = finite_order(f, ga.k_max);
    conclusive = true;
    fo["order"] = optional_int(order);
    fo["summary"] = order ? "finite order " + std::to_string(*order) : "no finite order up to " + std::to_string(ga.k_max);
  });
  sections["finite_order"] = std::move(fo);

  ordered_json po;
  run_stage(po, report, [&] {
    po["escape_radius"] = ga.escape_radius;
    po["steps"] = ga.orbit_steps;
    ordered_json rows = ordered_json::array();
    bool consistent = true;
    bool const tangent = multiplier_order(f.multiplier(), 1).has_value();
    for (auto const &z0 : ga.orbit_seeds) {
      PseudoOrbit const orbit = pseudo_orbit(f, z0, ga.orbit_steps, ga.escape_radius, ga.orbit_tol);
      rows.push_back({{"z0", complex_json(z0)},
                      {"status", to_string(orbit.status)},
                      {"period", optional_int(orbit.period)},
                      {"length", int(orbit.iterates.size()) - 1},
                      {"tol", orbit.tolerance}});
      if (conclusive && order) {
        consistent = consistent && orbit.period && *order % *orbit.period == 0;
      } else if (conclusive && tangent) {
        consistent = consistent && orbit.status != OrbitStatus::Periodic;
      }
    }
    po["rows"] = std::move(rows);
    po["consistent_with_order"] = consistent;
    po["summary"] = std::to_string(ga.orbit_seeds.size()) + " pseudo-orbits, "
                    + (consistent ? "consistent with finite_order" : "inconsistent with finite_order");
  });
  sections["pseudo_orbits"] = std::move(po);
}

ordered_json tolerances(ProblemSpec const &spec, PipelineOptions const &options)
{
  switch (spec.kind) {
  case ProblemKind::RealField: {
    FieldAnalysis const &fa = spec.field_analysis;
    return {{"lyapunov_truncation", options.truncation.value_or(fa.lyapunov_truncation.value_or(spec.truncation))},
            {"integration_tol", options.tol.value_or(fa.tol)},
            {"event_time_tol", event_time_tol},
            {"periodic_relative_tol", periodic_rel_tol},
            {"transversality_floor", transversality_floor},
            {"radii", options.radii.value_or(fa.radii)},
            {"scan_tol", fa.scan_tol}};
  }
  case ProblemKind::ComplexForm:
    return {{"integral_truncation",
             options.truncation.value_or(spec.form_analysis.integral_truncation.value_or(spec.truncation + 1))},
            {"slice_residual_tol", spec.form_analysis.slice.residual_tol},
            {"slice_check_tol", spec.form_analysis.slice.check_tol}};
  case ProblemKind::Germ:
    return {{"identity_tol", numeric_identity_tol}, {"orbit_tol", spec.germ_analysis.orbit_tol}};
  }
  return ordered_json::object();
}

} // namespace

std::string fnv1a_hex(std::string_view bytes)
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

Report run_pipeline(ProblemSpec const &spec, PipelineOptions const &options)
{
  Report report;
  ordered_json &j = report.json;
  j["schema_version"] = report_schema_version;
  j["kind"] = to_string(spec.kind);
  j["name"] = spec.name;
  j["truncation"] = spec.truncation;
  j["provenance"] = {{"input_hash", "fnv1a64:" + fnv1a_hex(spec.source)},
                     {"tolerances", tolerances(spec, options)},
                     {"versions",
                      {{"centerkit", centerkit_version},
                       {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "."
                                   + std::to_string(EIGEN_MINOR_VERSION)},
                       {"boost", BOOST_LIB_VERSION},
                       {"gmp", gmp_version}}}};
  j["timestamp"] = "";
  ordered_json sections = ordered_json::object();
  switch (spec.kind) {
  case ProblemKind::RealField: real_field_pipeline(spec, options, sections, report); break;
  case ProblemKind::ComplexForm: complex_form_pipeline(spec, options, sections, report); break;
  case ProblemKind::Germ:
    if (options.stages & stage::germ) {
      if (spec.germ) {
        germ_pipeline(*spec.germ, spec.germ_analysis, sections, report);
      } else {
        germ_pipeline(*spec.numeric_germ, spec.germ_analysis, sections, report);
      }
    }
    break;
  }
  std::string summary;
  for (auto const &[name, section] : sections.items()) {
    if (section.contains("summary")) { summary += name + ": " + section["summary"].get<std::string>() + "; "; }
    else if (section.contains("reason")) { summary += name + ": skipped; "; }
    else if (section.contains("error")) { summary += name + ": " + section["error"]["type"].get<std::string>() + "; "; }
  }
  if (summary.size() >= 2) { summary.resize(summary.size() - 2); }
  j["sections"] = std::move(sections);
  j["summary"] = summary;
  return report;
}

} // namespace centerkit
