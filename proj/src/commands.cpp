#include "vwstat/commands.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "vwstat/chi_square.hpp"
#include "vwstat/inference.hpp"
#include "vwstat/json_writer.hpp"

namespace vwstat {

using Json = nlohmann::ordered_json;

void RunConfig::validate() const {
  if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("--level must lie in (0, 1)", {level});
  if (resamples < 1) throw InvalidArgument("--B must be >= 1");
  if (!(gap_tol > 0.0)) throw InvalidArgument("--gap-tol must be positive", {gap_tol});
  if (threads < 1) throw InvalidArgument("--threads must be >= 1");
}

std::string CommandResult::json_text() const { return to_json_text(document); }

namespace {

Json scalar_json(Real x) { return x; }
Json scalar_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

template <class Scalar>
Json vector_json(const Vector<Scalar>& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(scalar_json(v(i)));
  return out;
}

template <class Scalar>
Json matrix_json(const Matrix<Scalar>& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_json<Scalar>(m.row(r).transpose()));
  return out;
}

const char* variant_name(Variant v) { return v == Variant::Real ? "real" : "complex"; }

template <class Scalar>
Sample<Scalar> sample_from(const Dataset& data);

template <>
Sample<Real> sample_from<Real>(const Dataset& data) {
  std::vector<AxialPoint> pts;
  pts.reserve(data.size());
  for (const auto& cfg : data.configs) pts.push_back(to_axis(cfg));
  return Sample<Real>(std::move(pts));
}

template <>
Sample<Complex> sample_from<Complex>(const Dataset& data) {
  std::vector<ShapePoint> pts;
  pts.reserve(data.size());
  for (const auto& cfg : data.configs) pts.push_back(to_shape_point(to_preshape(cfg)));
  return Sample<Complex>(std::move(pts));
}

template <class Scalar>
Json affine_or_null(const ProjectivePoint<Scalar>& p) {
  try {
    return vector_json<Scalar>(affine_coords(p));
  } catch (const OutsideChart&) {
    return nullptr;
  }
}

template <class Scalar>
Json extremizer_json(const ExtremizerResult<Scalar>& e) {
  Json out;
  out["rep"] = vector_json<Scalar>(e.point.rep());
  out["eigenvalue"] = e.eigenvalue;
  out["gap"] = e.gap;
  out["frechet_value"] = e.frechet_value;
  out["affine_coords"] = affine_or_null(e.point);
  if constexpr (!is_complex_v<Scalar>) {
    if (e.point.dim() == 2) {
      Real deg = std::atan2(e.point.rep()(1), e.point.rep()(0)) * 180.0 / std::numbers::pi;
      if (deg < 0.0) deg += 180.0;
      if (deg >= 180.0) deg -= 180.0;
      out["axis_angle_deg"] = deg;
    }
  }
  return out;
}

Json nonfocality_json(const NonfocalityReport& r) {
  Json out;
  out["lambda_min"] = r.lambda_min;
  out["lambda_max"] = r.lambda_max;
  out["gap_bottom"] = r.gap_bottom;
  out["gap_top"] = r.gap_top;
  out["multiplicity_bottom"] = r.multiplicity_bottom;
  out["multiplicity_top"] = r.multiplicity_top;
  out["alpha_vw_nonfocal"] = r.alpha_vw_nonfocal;
  out["vw_nonfocal"] = r.vw_nonfocal;
  return out;
}

Json header_json(const char* command, const RunConfig& rc, const Dataset& data, Eigen::Index dim) {
  Json out;
  out["command"] = command;
  out["dataset"] = data.name;
  out["variant"] = variant_name(rc.variant);
  out["n"] = data.size();
  out["k"] = data.k;
  out["ambient_dimension"] = dim;
  out["gap_tol"] = rc.gap_tol;
  return out;
}

template <class Scalar>
CommandResult analyze_impl(const RunConfig& rc, const Dataset& data) {
  const Sample<Scalar> s = sample_from<Scalar>(data);
  const auto moments = moment_matrix(s);
  const auto antimean = extrinsic_antimean(moments, s.size(), rc.gap_tol);
  const auto mean = extrinsic_mean(moments, s.size(), rc.gap_tol);
  const auto anticov = anticovariance(s, moments.spectral, rc.gap_tol);
  const int dof = tangent_dof<Scalar>(anticov.dim());

  Json doc = header_json("analyze", rc, data, s.dim());
  doc["eigenvalues"] = vector_json<Real>(moments.spectral.eigenvalues);
  doc["antimean"] = extremizer_json(antimean);
  doc["mean"] = extremizer_json(mean);
  doc["nonfocality"] = nonfocality_json(nonfocality_report(moments.spectral.eigenvalues, rc.gap_tol));
  Json ac;
  ac["dim"] = anticov.dim();
  ac["matrix"] = matrix_json<Scalar>(anticov.matrix.entries());
  ac["psd"] = hermitian_psd_check(anticov.matrix);
  doc["anticovariance"] = std::move(ac);
  Json region;
  region["method"] = to_string(RegionMethod::Asymptotic);
  region["level"] = rc.level;
  region["dof"] = dof;
  region["threshold"] = chi2_quantile(dof, rc.level);
  doc["asymptotic_region"] = std::move(region);
  return CommandResult{0, std::move(doc), std::nullopt};
}

// Coordinates of a replicate for plotting: affine when inside the chart, else the
// components in the reference's complement basis after aligning the phase.
template <class Scalar>
std::pair<const char*, Vector<Scalar>> plot_coords(const ProjectivePoint<Scalar>& x,
                                                   const ProjectivePoint<Scalar>& reference,
                                                   const Matrix<Scalar>& reference_basis) {
  try {
    return {"affine", affine_coords(x)};
  } catch (const OutsideChart&) {
    const Scalar align = conj(unit_phase(inner<Scalar>(reference.rep(), x.rep())));
    return {"orthocomplement", Vector<Scalar>(reference_basis.adjoint() * x.rep() * align)};
  }
}

template <class Scalar>
std::string replicate_table(const BootstrapDistribution<Scalar>& boot,
                            const ProjectivePoint<Scalar>& reference,
                            const Matrix<Scalar>& reference_basis, bool with_t) {
  const Eigen::Index d = reference.dim() - 1;
  std::ostringstream os;
  os << "replicate,status,chart";
  for (Eigen::Index i = 1; i <= d; ++i) {
    if constexpr (is_complex_v<Scalar>) {
      os << ",c" << i << "_re,c" << i << "_im";
    } else {
      os << ",c" << i;
    }
  }
  if (with_t) os << ",t";
  os << '\n';
  for (std::size_t r = 0; r < boot.replicates.size(); ++r) {
    const auto& rep = boot.replicates[r];
    os << r;
    if (!rep.extremizer) {
      os << ",skipped:" << rep.skip_reason << ',';
      for (Eigen::Index i = 0; i < d; ++i) os << (is_complex_v<Scalar> ? ",," : ",");
      if (with_t) os << ',';
      os << '\n';
      continue;
    }
    const auto [chart, coords] = plot_coords(*rep.extremizer, reference, reference_basis);
    os << ",ok," << chart;
    for (Eigen::Index i = 0; i < d; ++i) {
      if constexpr (is_complex_v<Scalar>) {
        os << ',' << format_real(coords(i).real()) << ',' << format_real(coords(i).imag());
      } else {
        os << ',' << format_real(coords(i));
      }
    }
    if (with_t) os << ',' << (rep.t_value ? format_real(*rep.t_value) : std::string());
    os << '\n';
  }
  return os.str();
}

template <class Scalar>
Json skip_summary(const BootstrapDistribution<Scalar>& boot) {
  std::map<std::string, std::size_t> reasons;
  for (const auto& r : boot.replicates) {
    if (r.skipped()) ++reasons[r.skip_reason];
  }
  Json out = Json::object();
  for (const auto& [k, v] : reasons) out[k] = v;
  return out;
}

template <class Scalar>
Json affine_cis_json(const BootstrapDistribution<Scalar>& boot, Real level) {
  if constexpr (!is_complex_v<Scalar>) {
    (void)boot;
    (void)level;
    return nullptr;
  } else {
    const AffineIntervals cis = simultaneous_affine_cis(boot, level);
    Json out;
    out["level"] = level;
    out["used"] = cis.used;
    out["dropped"] = cis.dropped;
    Json rects = Json::array();
    for (std::size_t i = 0; i < cis.rectangles.size(); ++i) {
      const auto& rect = cis.rectangles[i];
      Json r;
      r["coordinate"] = "w" + std::to_string(i + 1);
      r["lower"] = scalar_json(rect.lower);
      r["upper"] = scalar_json(rect.upper);
      r["display"] = format_affine_rectangle(i + 1, rect);
      rects.push_back(std::move(r));
    }
    out["rectangles"] = std::move(rects);
    return out;
  }
}

template <class Scalar>
CommandResult bootstrap_impl(const RunConfig& rc, const Dataset& data) {
  const Sample<Scalar> s = sample_from<Scalar>(data);
  const BootstrapOptions options{rc.threads, rc.gap_tol};
  const auto moments = moment_matrix(s);
  const bool pivotal = rc.mode == BootstrapMode::Pivotal;
  const ExtremeKind kind = pivotal ? ExtremeKind::Antimean : rc.kind;

  const auto reference = kind == ExtremeKind::Mean ? extrinsic_mean(moments, s.size(), rc.gap_tol)
                                                   : extrinsic_antimean(moments, s.size(), rc.gap_tol);
  const Eigen::Index d = s.dim() - 1;
  const Matrix<Scalar> reference_basis = kind == ExtremeKind::Mean
                                             ? Matrix<Scalar>(moments.spectral.eigenvectors.leftCols(d))
                                             : Matrix<Scalar>(moments.spectral.eigenvectors.rightCols(d));

  Json doc = header_json("bootstrap", rc, data, s.dim());
  doc["mode"] = pivotal ? "pivotal" : "nonpivotal";
  doc["kind"] = to_string(kind);
  doc["B"] = rc.resamples;
  doc["seed"] = rc.seed;
  doc["level"] = rc.level;
  doc["reference"] = extremizer_json(reference);

  std::optional<BootstrapDistribution<Scalar>> boot;
  if (pivotal) {
    auto piv = bootstrap_pivotal(s, rc.resamples, rc.seed, rc.level, options);
    doc["dof"] = piv.region.dof;
    doc["threshold"] = piv.region.threshold;
    doc["chi2_threshold"] = chi2_quantile(piv.region.dof, rc.level);
    boot = std::move(piv.distribution);
  } else {
    boot = bootstrap_nonpivotal(s, rc.resamples, rc.seed, kind, options);
  }
  doc["valid"] = boot->replicates.size() - boot->skipped();
  doc["skipped"] = boot->skipped();
  doc["skip_reasons"] = skip_summary(*boot);
  doc["spread"] = bootstrap_spread(*boot, reference.point);
  try {
    doc["affine_cis"] = affine_cis_json(*boot, rc.level);
  } catch (const ChartFailure& e) {
    doc["affine_cis"] = nullptr;
    doc["affine_cis_error"] = e.what();
  }
  return CommandResult{0, std::move(doc),
                       replicate_table(*boot, reference.point, reference_basis, pivotal)};
}

template <class F>
CommandResult guarded(const std::string& command, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return error_result(command, e);
  }
}

}  // namespace

CommandResult error_result(const std::string& command, const Error& e) {
  Json err;
  err["type"] = std::string(e.name());
  err["message"] = e.what();
  err["values"] = e.values();
  Json doc;
  doc["command"] = command;
  doc["error"] = std::move(err);
  return CommandResult{exit_code_for(e.code()), std::move(doc), std::nullopt};
}

CommandResult cmd_analyze(const RunConfig& rc, const Dataset& data) {
  return guarded("analyze", [&] {
    rc.validate();
    return rc.variant == Variant::Real ? analyze_impl<Real>(rc, data) : analyze_impl<Complex>(rc, data);
  });
}

CommandResult cmd_analyze(const RunConfig& rc) {
  return guarded("analyze", [&] { return cmd_analyze(rc, read_landmarks(rc.input)); });
}

CommandResult cmd_bootstrap(const RunConfig& rc, const Dataset& data) {
  return guarded("bootstrap", [&] {
    rc.validate();
    return rc.variant == Variant::Real ? bootstrap_impl<Real>(rc, data)
                                       : bootstrap_impl<Complex>(rc, data);
  });
}

CommandResult cmd_bootstrap(const RunConfig& rc) {
  return guarded("bootstrap", [&] { return cmd_bootstrap(rc, read_landmarks(rc.input)); });
}

CommandResult cmd_simulate(const RunConfig& rc) {
  return guarded("simulate", [&] {
    rc.validate();
    const Dataset data = simulate_configs(rc.k, rc.n, rc.concentration, rc.seed);
    Json doc;
    doc["command"] = "simulate";
    doc["k"] = rc.k;
    doc["n"] = rc.n;
    doc["concentration"] = rc.concentration;
    doc["seed"] = rc.seed;
    doc["output"] = rc.output;
    return CommandResult{0, std::move(doc), landmarks_csv(data)};
  });
}

}  // namespace vwstat
