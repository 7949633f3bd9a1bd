#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dsn/correlation.hpp"
#include "dsn/diversity.hpp"
#include "dsn/errors.hpp"
#include "dsn/similarity.hpp"
#include "dsn/types.hpp"

namespace dsn {

// One population of a study: proportions and network. The attribute matrix
// and the dissimilarity derived from it are shared across the whole study.
struct StudyMember {
  ProportionVector proportions;
  SquareMatrix adjacency;
  std::string label;
};

// r populations, their external performance values, and the diversity order
// at which profiles are evaluated. Correlation is degenerate below r = 3.
class StudyDataset {
 public:
  StudyDataset(AttributeMatrix attributes, std::vector<StudyMember> members,
               std::vector<double> performance, QParam q,
               SimilarityKernel kernel = SimilarityKernel::Exp)
      : attributes_(std::move(attributes)),
        members_(std::move(members)),
        performance_(std::move(performance)),
        q_(q),
        kernel_(kernel) {
    if (members_.size() < 3)
      throw ValidationError("study: need at least 3 populations, got " +
                            std::to_string(members_.size()));
    if (performance_.size() != members_.size())
      throw DimensionMismatch("study: ys length " + std::to_string(performance_.size()) +
                              " != population count " + std::to_string(members_.size()));
    for (const StudyMember& mem : members_) {
      if (mem.proportions.size() != attributes_.rows() ||
          mem.adjacency.order() != attributes_.rows())
        throw DimensionMismatch("study: population '" + mem.label +
                                "' order differs from attribute rows");
      require_unit_interval(mem.adjacency, "adjacency");
    }
  }

  const AttributeMatrix& attributes() const { return attributes_; }
  const std::vector<StudyMember>& members() const { return members_; }
  const std::vector<double>& performance() const { return performance_; }
  QParam q() const { return q_; }
  SimilarityKernel kernel() const { return kernel_; }
  std::size_t population_count() const { return members_.size(); }

 private:
  AttributeMatrix attributes_;
  std::vector<StudyMember> members_;
  std::vector<double> performance_;
  QParam q_;
  SimilarityKernel kernel_;
};

enum class CorrelationKind { Pearson, Spearman, Mic };

inline const char* to_string(CorrelationKind kind) {
  switch (kind) {
    case CorrelationKind::Pearson:
      return "pearson";
    case CorrelationKind::Spearman:
      return "spearman";
    case CorrelationKind::Mic:
      return "mic";
  }
  return "?";
}

// Euclidean projection onto the probability simplex.
inline WeightVector project_to_simplex(std::span<const double> v) {
  if (v.empty()) throw ValidationError("project_to_simplex: empty input");
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) tau = candidate;
  }
  std::vector<double> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    w[i] = std::clamp(v[i] - tau, 0.0, 1.0);
  return WeightVector(std::move(w));
}

namespace detail {

// Similarity matrix from raw nonnegative weights; used inside the optimizer
// where iterates may sit slightly off the simplex.
inline SquareMatrix similarity_for_raw_weights(const AttributeMatrix& attributes,
                                               std::span<const double> w,
                                               SimilarityKernel kernel) {
  const std::size_t n = attributes.rows();
  SquareMatrix z(n);
  for (std::size_t i = 0; i < n; ++i) {
    z(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t m = 0; m < w.size(); ++m) {
        const double d = attributes(i, m) - attributes(j, m);
        acc += std::max(w[m], 0.0) * d * d;
      }
      const double s = apply_kernel(kernel, std::sqrt(acc));
      z(i, j) = s;
      z(j, i) = s;
    }
  }
  return z;
}

inline std::vector<double> profile_for_raw_weights(const StudyDataset& ds,
                                                   std::span<const double> w) {
  const SquareMatrix z = similarity_for_raw_weights(ds.attributes(), w, ds.kernel());
  std::vector<double> out;
  out.reserve(ds.population_count());
  for (const StudyMember& mem : ds.members()) {
    const Population pop{mem.proportions, z, mem.adjacency, mem.label};
    out.push_back(dsn(pop, ds.q()));
  }
  return out;
}

}  // namespace detail

// Per-population diversity values under the similarity induced by w.
inline std::vector<double> diversity_profile(const StudyDataset& ds, const WeightVector& w) {
  if (w.size() != ds.attributes().cols())
    throw DimensionMismatch("diversity_profile: weight dimension " +
                            std::to_string(w.size()) + " != attribute columns " +
                            std::to_string(ds.attributes().cols()));
  return detail::profile_for_raw_weights(ds, w.values());
}

struct StartRecord {
  std::vector<double> initial;
  std::vector<double> solution;
  std::optional<double> objective;  // empty when the start failed to evaluate
};

struct EstimationResult {
  WeightVector weights;
  double objective = 0.0;
  CorrelationKind kind = CorrelationKind::Pearson;
  int starts_used = 0;
  std::vector<StartRecord> per_start;
};

namespace detail {

// Squared correlation (raw score for mic) of the diversity profile at w
// against the performance vector; empty when the profile degenerates.
inline std::optional<double> weight_objective(const StudyDataset& ds,
                                              std::span<const double> w,
                                              CorrelationKind kind) {
  try {
    const std::vector<double> profile = profile_for_raw_weights(ds, w);
    switch (kind) {
      case CorrelationKind::Pearson: {
        const double r = pearson(profile, ds.performance());
        return r * r;
      }
      case CorrelationKind::Spearman: {
        const double r = spearman(profile, ds.performance());
        return r * r;
      }
      case CorrelationKind::Mic:
        return mic(profile, ds.performance());
    }
  } catch (const ComputationFailure&) {
    return std::nullopt;
  }
  return std::nullopt;
}

// Greedy sweeps over pair-exchange directions e_i - e_j, which span the
// simplex tangent space and respect the boundary exactly. Step sizes halve
// from `step0` down to `step_min`. Deterministic for a given start.
inline void pair_exchange_search(const StudyDataset& ds, CorrelationKind kind,
                                 std::vector<double>& w, double& fw, double step0,
                                 double step_min) {
  const std::size_t a = w.size();
  for (double step = step0; step >= step_min; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < a; ++j) {
          if (i == j || w[j] < step) continue;
          std::vector<double> cand = w;
          cand[i] += step;
          cand[j] -= step;
          const std::optional<double> fc = weight_objective(ds, cand, kind);
          if (fc && *fc > fw) {
            w = std::move(cand);
            fw = *fc;
            improved = true;
          }
        }
    }
  }
}

// Projected ascent with central finite-difference gradients (step 1e-6),
// backtracking on the simplex; suited to the smooth pearson objective.
inline void projected_gradient_ascent(const StudyDataset& ds, CorrelationKind kind,
                                      std::vector<double>& w, double& fw) {
  constexpr double kFdStep = 1e-6;
  const std::size_t a = w.size();
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<double> grad(a, 0.0);
    bool grad_ok = true;
    for (std::size_t m = 0; m < a && grad_ok; ++m) {
      std::vector<double> hi(w), lo(w);
      hi[m] += kFdStep;
      lo[m] = std::max(lo[m] - kFdStep, 0.0);
      const double span = hi[m] - lo[m];
      const auto fh = weight_objective(ds, hi, kind);
      const auto fl = weight_objective(ds, lo, kind);
      if (!fh || !fl || span <= 0.0) {
        grad_ok = false;
        break;
      }
      grad[m] = (*fh - *fl) / span;
    }
    if (!grad_ok) break;
    double norm = 0.0;
    for (double g : grad) norm = std::max(norm, std::abs(g));
    if (norm < 1e-12) break;
    bool accepted = false;
    for (double step = 0.5; step >= 1e-10; step *= 0.5) {
      std::vector<double> cand(a);
      for (std::size_t m = 0; m < a; ++m) cand[m] = w[m] + step * grad[m];
      const WeightVector projected = project_to_simplex(cand);
      const auto fc = weight_objective(ds, projected.values(), kind);
      if (fc && *fc > fw + 1e-14) {
        w = projected.values();
        fw = *fc;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
}

}  // namespace detail

// Multi-start maximization of the squared correlation between the study's
// performance vector and its diversity profile, over attribute weights on the
// probability simplex. Start 0 is the simplex center; the rest are seeded
// Dirichlet(1,...,1) draws, so results are reproducible for a given seed.
// Smooth objectives (pearson) use projected finite-difference ascent followed
// by a pair-exchange polish; rank-based objectives (spearman, mic) are
// piecewise constant and use the direct search alone.
inline EstimationResult estimate_weights(const StudyDataset& ds, CorrelationKind kind,
                                         int starts, std::uint64_t seed) {
  if (starts < 1) throw ValidationError("estimate_weights: starts must be >= 1");
  if (detail::is_constant(ds.performance()))
    throw DegenerateVariance("estimate_weights: performance vector is constant");
  const std::size_t a = ds.attributes().cols();

  std::vector<std::vector<double>> initials;
  initials.reserve(static_cast<std::size_t>(starts));
  initials.push_back(std::vector<double>(a, 1.0 / static_cast<double>(a)));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int s = 1; s < starts; ++s) {
    std::vector<double> g(a);
    double sum = 0.0;
    for (std::size_t m = 0; m < a; ++m) {
      double u = unif(rng);
      while (u >= 1.0) u = unif(rng);
      g[m] = -std::log(1.0 - u);
      sum += g[m];
    }
    for (double& v : g) v /= sum;
    initials.push_back(std::move(g));
  }

  std::vector<StartRecord> per_start;
  WeightVector best_weights = WeightVector::uniform(a);
  std::optional<double> best;
  for (const std::vector<double>& start : initials) {
    StartRecord record;
    record.initial = start;
    std::vector<double> w = project_to_simplex(start).values();
    std::optional<double> fw = detail::weight_objective(ds, w, kind);
    if (fw && a > 1) {
      double f = *fw;
      if (kind == CorrelationKind::Pearson) {
        detail::projected_gradient_ascent(ds, kind, w, f);
        detail::pair_exchange_search(ds, kind, w, f, 0.1, 1e-6);
      } else {
        detail::pair_exchange_search(ds, kind, w, f, 0.25, 1e-5);
      }
      fw = f;
    }
    record.solution = w;
    record.objective = fw;
    if (fw && (!best || *fw > *best)) {
      best = fw;
      best_weights = project_to_simplex(w);
    }
    per_start.push_back(std::move(record));
  }
  if (!best)
    throw NoImprovement("estimate_weights: no start produced an evaluable objective");
  // Report the objective recomputed at the returned point.
  const auto final_objective = detail::weight_objective(ds, best_weights.values(), kind);
  return EstimationResult{std::move(best_weights), final_objective ? *final_objective : *best,
                          kind, starts, std::move(per_start)};
}

}  // namespace dsn
