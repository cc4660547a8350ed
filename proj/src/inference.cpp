#include "vwstat/inference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <random>
#include <thread>

#include "vwstat/chi_square.hpp"
#include "vwstat/errors.hpp"

namespace vwstat {

const char* to_string(RegionMethod method) noexcept {
  return method == RegionMethod::Asymptotic ? "asymptotic" : "pivotal-bootstrap";
}

template <class Scalar>
AnticovarianceMatrix<Scalar> anticovariance(const Sample<Scalar>& s,
                                            const SpectralDecomposition<Scalar>& spectral,
                                            Real gap_tol) {
  const Eigen::Index n_dim = s.dim();
  if (spectral.dim() != n_dim) throw DimensionMismatch("eigen-system does not match the sample");
  if (n_dim < 2 || !(spectral.min_gap > gap_tol)) {
    throw FocalSample("smallest moment eigenvalue is not simple", {spectral.min_gap});
  }
  const Eigen::Index d = n_dim - 1;
  const Vector<Real>& lambda = spectral.eigenvalues;
  const Vector<Scalar> m1 = spectral.eigenvector(0);
  const Matrix<Scalar> basis = spectral.eigenvectors.rightCols(d);

  Matrix<Scalar> coords(d, static_cast<Eigen::Index>(s.size()));
  Vector<Real> w(static_cast<Eigen::Index>(s.size()));
  Vector<Scalar> pw(static_cast<Eigen::Index>(s.size()));
  for (std::size_t r = 0; r < s.size(); ++r) {
    const auto& x = s[r].rep();
    const auto col = static_cast<Eigen::Index>(r);
    const Scalar pole_coord = conj(inner<Scalar>(m1, x));
    coords.col(col) = basis.adjoint() * x;
    w(col) = s.weights()[r] * abs2(pole_coord);
    pw(col) = s.weights()[r] * pole_coord * pole_coord;
  }
  Matrix<Scalar> acc = coords * w.cast<Scalar>().asDiagonal() * coords.adjoint();
  Matrix<Scalar> pseudo = coords * pw.asDiagonal() * coords.transpose();
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const Real scale = (lambda(a + 1) - lambda(0)) * (lambda(b + 1) - lambda(0));
      acc(a, b) /= scale;
      pseudo(a, b) /= scale;
    }
  }
  return AnticovarianceMatrix<Scalar>{SelfAdjointMatrix<Scalar>(acc), std::move(pseudo), basis, m1,
                                      lambda, s.size()};
}

template <class Scalar>
AnticovarianceMatrix<Scalar> anticovariance(const Sample<Scalar>& s, Real gap_tol) {
  return anticovariance(s, moment_matrix(s).spectral, gap_tol);
}

AnticovarianceMatrix<Real> anticovariance_real(const AxialSample& s, Real gap_tol) {
  return anticovariance(s, gap_tol);
}

AnticovarianceMatrix<Complex> anticovariance_complex(const ShapeSample& s, Real gap_tol) {
  return anticovariance(s, gap_tol);
}

template <class Scalar>
TStatistic t_statistic(const ExtremizerResult<Scalar>& center,
                       const AnticovarianceMatrix<Scalar>& anticov,
                       const ProjectivePoint<Scalar>& hypothesis,
                       const std::optional<Matrix<Scalar>>& hypothesis_basis) {
  const Eigen::Index d = anticov.dim();
  const int dof = tangent_dof<Scalar>(d);
  if (hypothesis.dim() != center.point.dim() || anticov.basis.rows() != hypothesis.dim() ||
      anticov.basis.cols() != d) {
    throw DimensionMismatch("hypothesis, center and anticovariance dimensions differ");
  }
  if (hypothesis.rep() == center.point.rep()) return TStatistic{0.0, dof};

  const Matrix<Scalar> nu_basis =
      hypothesis_basis ? *hypothesis_basis : orthocomplement_basis(hypothesis);
  if (nu_basis.rows() != hypothesis.dim() || nu_basis.cols() != d) {
    throw DimensionMismatch("hypothesis basis must be N x (N-1)");
  }

  const Matrix<Scalar> transport = nu_basis.adjoint() * anticov.basis;
  const Matrix<Scalar> carried = transport * anticov.matrix.entries() * transport.adjoint();
  Vector<Scalar> coords;
  Matrix<Scalar> form;
  if constexpr (is_complex_v<Scalar>) {
    const Scalar align = conj(unit_phase(inner<Scalar>(anticov.pole, center.point.rep())));
    const Vector<Scalar> c = nu_basis.adjoint() * center.point.rep() * align;
    const Matrix<Scalar> carried_pseudo = transport * anticov.pseudo * transport.transpose();
    coords.resize(2 * d);
    coords << c, c.conjugate();
    form.resize(2 * d, 2 * d);
    form << carried, carried_pseudo, carried_pseudo.conjugate(), carried.conjugate();
  } else {
    coords = nu_basis.adjoint() * center.point.rep();
    form = carried;
  }
  const auto spectral = spectral_decompose(SelfAdjointMatrix<Scalar>(form));
  const Real top = spectral.eigenvalues(form.rows() - 1);
  const Real bottom = spectral.eigenvalues(0);
  if (!(top > 0.0) || !(bottom > kAnticovRelativeCutoff * top)) {
    throw SingularAnticovariance("anticovariance matrix is not invertible", {bottom, top});
  }
  Real quad = 0.0;
  for (Eigen::Index i = 0; i < form.rows(); ++i) {
    quad += abs2(inner<Scalar>(spectral.eigenvector(i), coords)) / spectral.eigenvalues(i);
  }
  return TStatistic{static_cast<Real>(anticov.sample_size) * quad, dof};
}

template <class Scalar>
ConfidenceRegion<Scalar> asymptotic_region(const Sample<Scalar>& s, Real level, Real gap_tol) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("level must lie in (0, 1)", {level});
  const auto moments = moment_matrix(s);
  auto center = extrinsic_antimean(moments, s.size(), gap_tol);
  auto anticov = anticovariance(s, moments.spectral, gap_tol);
  const int dof = tangent_dof<Scalar>(anticov.dim());
  const Real threshold = chi2_quantile(dof, level);
  return ConfidenceRegion<Scalar>{std::move(center), std::move(anticov), level, threshold, dof,
                                  RegionMethod::Asymptotic};
}

std::vector<std::size_t> resample_indices(std::uint64_t seed, std::size_t index, std::size_t n) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 gen(seq);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> out(n);
  for (auto& i : out) i = pick(gen);
  return out;
}

template <class Scalar>
Sample<Scalar> resample(const Sample<Scalar>& s, const std::vector<std::size_t>& indices) {
  std::vector<ProjectivePoint<Scalar>> pts;
  pts.reserve(indices.size());
  for (std::size_t i : indices) pts.push_back(s[i]);
  return Sample<Scalar>(std::move(pts));
}

template <class Scalar>
std::size_t BootstrapDistribution<Scalar>::skipped() const {
  return static_cast<std::size_t>(
      std::count_if(replicates.begin(), replicates.end(), [](const auto& r) { return r.skipped(); }));
}

template <class Scalar>
std::vector<ProjectivePoint<Scalar>> BootstrapDistribution<Scalar>::extremizers() const {
  std::vector<ProjectivePoint<Scalar>> out;
  for (const auto& r : replicates) {
    if (r.extremizer) out.push_back(*r.extremizer);
  }
  return out;
}

namespace {

// Runs job(i) for i in [0, count), striding across workers; each slot is written by
// exactly one worker so the result is independent of the thread count.
template <class Job>
void run_replicates(std::size_t count, unsigned threads, Job&& job) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += workers) job(i);
      } catch (...) {
        failures[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

}  // namespace

template <class Scalar>
BootstrapDistribution<Scalar> bootstrap_nonpivotal(const Sample<Scalar>& s, std::size_t resamples,
                                                   std::uint64_t seed, ExtremeKind kind,
                                                   const BootstrapOptions& options) {
  if (resamples < 1) throw InvalidArgument("bootstrap needs at least one resample");
  BootstrapDistribution<Scalar> out{resamples, seed, kind,
                                    std::vector<BootstrapReplicate<Scalar>>(resamples)};
  run_replicates(resamples, options.threads, [&](std::size_t i) {
    auto& slot = out.replicates[i];
    try {
      const auto star = resample(s, resample_indices(seed, i, s.size()));
      const auto moments = moment_matrix(star);
      slot.extremizer = kind == ExtremeKind::Mean
                            ? extrinsic_mean(moments, star.size(), options.gap_tol).point
                            : extrinsic_antimean(moments, star.size(), options.gap_tol).point;
    } catch (const Error& e) {
      slot.skip_reason = std::string(e.name());
    }
  });
  if (out.skipped() == resamples) {
    throw AllResamplesDegenerate("every bootstrap resample had a non-unique extremizer",
                                 {static_cast<double>(resamples)});
  }
  return out;
}

template <class Scalar>
Real bootstrap_spread(const BootstrapDistribution<Scalar>& boot,
                      const ProjectivePoint<Scalar>& reference) {
  Real total = 0.0;
  std::size_t used = 0;
  for (const auto& r : boot.replicates) {
    if (!r.extremizer) continue;
    total += projective_distance(*r.extremizer, reference);
    ++used;
  }
  return used == 0 ? 0.0 : total / static_cast<Real>(used);
}

Real type1_quantile(std::vector<Real> values, Real prob) {
  if (values.empty()) throw InvalidArgument("quantile of an empty set");
  std::sort(values.begin(), values.end());
  const auto n = static_cast<Real>(values.size());
  auto rank = static_cast<std::ptrdiff_t>(std::ceil(prob * n - 1e-9));
  rank = std::clamp<std::ptrdiff_t>(rank, 1, static_cast<std::ptrdiff_t>(values.size()));
  return values[static_cast<std::size_t>(rank - 1)];
}

template <class Scalar>
PivotalBootstrap<Scalar> bootstrap_pivotal(const Sample<Scalar>& s, std::size_t resamples,
                                           std::uint64_t seed, Real level,
                                           const BootstrapOptions& options) {
  if (resamples < 100) throw InvalidArgument("pivotal bootstrap needs at least 100 resamples");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("level must lie in (0, 1)", {level});

  const auto moments = moment_matrix(s);
  auto center = extrinsic_antimean(moments, s.size(), options.gap_tol);
  auto anticov = anticovariance(s, moments.spectral, options.gap_tol);
  const Matrix<Scalar>& original_basis = anticov.basis;

  BootstrapDistribution<Scalar> dist{resamples, seed, ExtremeKind::Antimean,
                                     std::vector<BootstrapReplicate<Scalar>>(resamples)};
  run_replicates(resamples, options.threads, [&](std::size_t i) {
    auto& slot = dist.replicates[i];
    try {
      const auto star = resample(s, resample_indices(seed, i, s.size()));
      const auto star_moments = moment_matrix(star);
      auto star_center = extrinsic_antimean(star_moments, star.size(), options.gap_tol);
      const auto star_anticov = anticovariance(star, star_moments.spectral, options.gap_tol);
      const auto t = t_statistic(star_center, star_anticov, center.point,
                                 std::optional<Matrix<Scalar>>(original_basis));
      slot.t_value = t.value;
      slot.extremizer = std::move(star_center.point);
    } catch (const Error& e) {
      slot.skip_reason = std::string(e.name());
    }
  });

  const std::size_t skipped = dist.skipped();
  if (10 * skipped > resamples) {
    throw TooManyDegenerateResamples("more than 10% of bootstrap resamples were degenerate",
                                     {static_cast<double>(skipped), static_cast<double>(resamples)});
  }
  std::vector<Real> t_values;
  t_values.reserve(resamples - skipped);
  for (const auto& r : dist.replicates) {
    if (r.t_value) t_values.push_back(*r.t_value);
  }
  const Real threshold = type1_quantile(std::move(t_values), level);
  const int dof = tangent_dof<Scalar>(anticov.dim());
  return PivotalBootstrap<Scalar>{
      ConfidenceRegion<Scalar>{std::move(center), std::move(anticov), level, threshold, dof,
                               RegionMethod::PivotalBootstrap},
      std::move(dist)};
}

AffineIntervals simultaneous_affine_cis(const BootstrapDistribution<Complex>& boot, Real level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("level must lie in (0, 1)", {level});
  std::vector<Vector<Complex>> coords;
  std::size_t dropped = 0;
  for (const auto& r : boot.replicates) {
    if (!r.extremizer) continue;
    try {
      coords.push_back(affine_coords(*r.extremizer));
    } catch (const OutsideChart&) {
      ++dropped;
    }
  }
  const std::size_t total = coords.size() + dropped;
  if (coords.empty() || 10 * dropped > total) {
    throw ChartFailure("too many bootstrap extremizers fall outside the affine chart",
                       {static_cast<double>(dropped), static_cast<double>(total)});
  }

  const Eigen::Index d = coords.front().size();
  const Real tail = (1.0 - level) / (4.0 * static_cast<Real>(d));
  AffineIntervals out{{}, coords.size(), dropped};
  std::vector<Real> re(coords.size());
  std::vector<Real> im(coords.size());
  for (Eigen::Index i = 0; i < d; ++i) {
    for (std::size_t r = 0; r < coords.size(); ++r) {
      re[r] = coords[r](i).real();
      im[r] = coords[r](i).imag();
    }
    out.rectangles.push_back(AffineRectangle{
        Complex(type1_quantile(re, tail), type1_quantile(im, tail)),
        Complex(type1_quantile(re, 1.0 - tail), type1_quantile(im, 1.0 - tail))});
  }
  return out;
}

namespace {

std::string format_complex4(Complex z) {
  char buf[64];
  const Real im = z.imag();
  std::snprintf(buf, sizeof buf, "%.4f %c %.4fi", z.real(), std::signbit(im) ? '-' : '+',
                std::abs(im));
  return buf;
}

}  // namespace

std::string format_affine_rectangle(std::size_t index, const AffineRectangle& rect) {
  return "w" + std::to_string(index) + ": [" + format_complex4(rect.lower) + "   " +
         format_complex4(rect.upper) + "]";
}

#define VWSTAT_INSTANTIATE(S)                                                                      \
  template AnticovarianceMatrix<S> anticovariance(const Sample<S>&,                                \
                                                  const SpectralDecomposition<S>&, Real);          \
  template AnticovarianceMatrix<S> anticovariance(const Sample<S>&, Real);                         \
  template TStatistic t_statistic(const ExtremizerResult<S>&, const AnticovarianceMatrix<S>&,      \
                                  const ProjectivePoint<S>&, const std::optional<Matrix<S>>&);     \
  template ConfidenceRegion<S> asymptotic_region(const Sample<S>&, Real, Real);                    \
  template Sample<S> resample(const Sample<S>&, const std::vector<std::size_t>&);                  \
  template struct BootstrapDistribution<S>;                                                        \
  template BootstrapDistribution<S> bootstrap_nonpivotal(const Sample<S>&, std::size_t,            \
                                                         std::uint64_t, ExtremeKind,               \
                                                         const BootstrapOptions&);                 \
  template Real bootstrap_spread(const BootstrapDistribution<S>&, const ProjectivePoint<S>&);      \
  template PivotalBootstrap<S> bootstrap_pivotal(const Sample<S>&, std::size_t, std::uint64_t,     \
                                                 Real, const BootstrapOptions&);

VWSTAT_INSTANTIATE(Real)
VWSTAT_INSTANTIATE(Complex)

#undef VWSTAT_INSTANTIATE

}  // namespace vwstat
