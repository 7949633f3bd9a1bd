#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dsn/correlation.hpp"
#include "dsn/diversity.hpp"
#include "dsn/errors.hpp"
#include "dsn/estimation.hpp"
#include "dsn/similarity.hpp"
#include "dsn/types.hpp"

namespace dsn {

// Descriptive statistics the synthetic preferences are calibrated to
// reproduce at zero noise.
inline constexpr double kTargetPreferenceMean = 5.256;
inline constexpr double kTargetPreferenceSd = 1.362;

// The benchmark design: 7 proportion settings x 8 strong/weak network
// patterns over 3 categories, with a fixed 3x2 attribute encoding.
struct StudyDesign {
  std::vector<std::array<double, 3>> raw_proportions;  // as designed; one row sums to 0.99
  std::vector<std::array<double, 3>> proportions;      // renormalized to sum 1
  std::vector<SquareMatrix> networks;                  // 8 symmetric patterns, diagonal 1
  AttributeMatrix attributes;
  double strong_weight = 1.0;
  double weak_weight = 0.5;
};

struct DesignPopulation {
  ProportionVector proportions;
  SquareMatrix adjacency;
  std::string name;  // letter (proportion setting) + digit (network pattern)
};

// Deterministic and order-stable: proportion settings map to letters A..G in
// the order listed; network patterns map to 1..8 in descending binary order
// with strong = 1, so pattern 1 is all-strong and pattern 8 all-weak. Bit
// order over the undirected pairs is (0,1), (0,2), (1,2).
inline StudyDesign generate_design() {
  std::vector<std::array<double, 3>> raw = {
      {0.33, 0.33, 0.33}, {0.80, 0.10, 0.10}, {0.10, 0.80, 0.10}, {0.10, 0.10, 0.80},
      {0.20, 0.40, 0.40}, {0.40, 0.20, 0.40}, {0.40, 0.40, 0.20}};
  std::vector<std::array<double, 3>> normalized;
  for (const auto& triple : raw) {
    const double sum = triple[0] + triple[1] + triple[2];
    normalized.push_back({triple[0] / sum, triple[1] / sum, triple[2] / sum});
  }
  const double strong = 1.0;
  const double weak = 0.5;
  constexpr std::array<std::array<int, 2>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
  std::vector<SquareMatrix> networks;
  for (int pattern = 1; pattern <= 8; ++pattern) {
    const int code = 8 - pattern;  // bits: 1 = strong
    SquareMatrix e = SquareMatrix::identity(3);
    for (int b = 0; b < 3; ++b) {
      const bool is_strong = (code >> (2 - b)) & 1;
      const double weight = is_strong ? strong : weak;
      e(pairs[b][0], pairs[b][1]) = weight;
      e(pairs[b][1], pairs[b][0]) = weight;
    }
    networks.push_back(e);
  }
  // Categories 0..2: gender and origin encoded in [0,1] x [0,1].
  AttributeMatrix attributes = AttributeMatrix::from_rows({{1, 0}, {1, 1}, {0, 0}});
  return StudyDesign{std::move(raw), std::move(normalized), std::move(networks),
                     std::move(attributes), strong, weak};
}

// The 56 populations in name order: A1, A2, ..., A8, B1, ..., G8.
inline std::vector<DesignPopulation> design_populations(const StudyDesign& design) {
  std::vector<DesignPopulation> out;
  out.reserve(design.proportions.size() * design.networks.size());
  for (std::size_t pi = 0; pi < design.proportions.size(); ++pi)
    for (std::size_t ni = 0; ni < design.networks.size(); ++ni) {
      const auto& triple = design.proportions[pi];
      std::string name;
      name += static_cast<char>('A' + pi);
      name += static_cast<char>('1' + ni);
      out.push_back({ProportionVector({triple[0], triple[1], triple[2]}),
                     design.networks[ni], std::move(name)});
    }
  return out;
}

enum class PreferenceModel { DsnLinear, HillLinear, Noisy };

namespace detail {

inline void sample_mean_sd(std::span<const double> v, double& mean, double& sd) {
  mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  sd = std::sqrt(acc / static_cast<double>(v.size() - 1));
}

}  // namespace detail

// Synthetic stand-in for survey preferences: ys_k = alpha + beta * Index_k +
// eps_k with eps ~ Normal(0, noise_sd). Index_k is the dsn or hill value of
// population k (or a seeded standard-normal draw for the Noisy control), and
// alpha, beta are fitted so that at noise_sd = 0 the sample mean and sd equal
// the calibration targets. Identical seeds give identical output.
inline std::vector<double> synthesize_preferences(const StudyDesign& design,
                                                  PreferenceModel model,
                                                  const WeightVector& w, QParam q,
                                                  double noise_sd, std::uint64_t seed) {
  if (noise_sd < 0.0) throw ValidationError("synthesize_preferences: noise_sd < 0");
  const std::vector<DesignPopulation> populations = design_populations(design);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> index;
  index.reserve(populations.size());
  switch (model) {
    case PreferenceModel::DsnLinear: {
      const SquareMatrix z =
          build_similarity_matrix(design.attributes, w, SimilarityKernel::Exp);
      for (const auto& pop : populations)
        index.push_back(dsn(Population{pop.proportions, z, pop.adjacency, pop.name}, q));
      break;
    }
    case PreferenceModel::HillLinear:
      for (const auto& pop : populations) index.push_back(hill_number(pop.proportions, q));
      break;
    case PreferenceModel::Noisy:
      for (std::size_t k = 0; k < populations.size(); ++k) index.push_back(normal(rng));
      break;
  }

  double mean = 0.0, sd = 0.0;
  detail::sample_mean_sd(index, mean, sd);
  if (sd == 0.0)
    throw DegenerateVariance("synthesize_preferences: index is constant across the design");
  const double beta = kTargetPreferenceSd / sd;
  const double alpha = kTargetPreferenceMean - beta * mean;

  std::vector<double> ys;
  ys.reserve(index.size());
  for (double ix : index) {
    double y = alpha + beta * ix;
    if (noise_sd > 0.0) y += noise_sd * normal(rng);
    ys.push_back(y);
  }
  return ys;
}

// Copy of E with every row except the focused one zeroed; the focus row
// (including its diagonal entry) is kept as-is.
inline SquareMatrix category_focused_adjacency(const SquareMatrix& adjacency,
                                               std::size_t focus) {
  if (focus >= adjacency.order())
    throw IndexOutOfRange("category_focused_adjacency: focus " + std::to_string(focus) +
                          " out of range for order " + std::to_string(adjacency.order()));
  SquareMatrix out(adjacency.order());
  for (std::size_t j = 0; j < adjacency.order(); ++j) out(focus, j) = adjacency(focus, j);
  return out;
}

struct ComparisonRow {
  std::string index_name;
  std::optional<double> q;  // empty for indices that do not depend on q
  std::optional<double> pearson;
  std::optional<double> spearman;
  std::optional<double> mic;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;

  std::string to_csv() const;

  const ComparisonRow* find(const std::string& index_name, std::optional<double> q) const {
    for (const auto& row : rows)
      if (row.index_name == index_name && row.q == q) return &row;
    return nullptr;
  }
};

namespace detail {

inline std::string full_precision(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::optional<double> safe_pearson(std::span<const double> a,
                                          std::span<const double> b) {
  try {
    return pearson(a, b);
  } catch (const ComputationFailure&) {
    return std::nullopt;
  }
}

inline std::optional<double> safe_spearman(std::span<const double> a,
                                           std::span<const double> b) {
  try {
    return spearman(a, b);
  } catch (const ComputationFailure&) {
    return std::nullopt;
  }
}

inline ComparisonRow make_row(std::string name, std::optional<double> q,
                              std::span<const double> profile,
                              std::span<const double> ys) {
  ComparisonRow row;
  row.index_name = std::move(name);
  row.q = q;
  row.pearson = safe_pearson(profile, ys);
  row.spearman = safe_spearman(profile, ys);
  row.mic = mic(profile, ys);
  return row;
}

}  // namespace detail

inline std::string ComparisonTable::to_csv() const {
  std::string out = "index_name,q,pearson,spearman,mic\n";
  for (const ComparisonRow& row : rows) {
    out += row.index_name;
    out += ',';
    if (row.q) out += std::isinf(*row.q) ? "inf" : detail::full_precision(*row.q);
    for (const auto& cell : {row.pearson, row.spearman, row.mic}) {
      out += ',';
      if (cell) out += detail::full_precision(*cell);
    }
    out += '\n';
  }
  return out;
}

// Correlation of ys against every index family: hill, leinster and dsn per q,
// the three category-focused dsn variants per q, and network density.
// Degenerate correlations (a constant profile, e.g. hill at q = 0 on this
// design) yield empty cells rather than failing the whole table.
inline ComparisonTable comparison_table(const StudyDesign& design,
                                        const std::vector<double>& ys,
                                        const WeightVector& w,
                                        const std::vector<QParam>& q_grid) {
  const std::vector<DesignPopulation> populations = design_populations(design);
  if (ys.size() != populations.size())
    throw DimensionMismatch("comparison_table: ys length " + std::to_string(ys.size()) +
                            " != population count " + std::to_string(populations.size()));
  const SquareMatrix z = build_similarity_matrix(design.attributes, w, SimilarityKernel::Exp);
  const std::size_t r = populations.size();

  ComparisonTable table;
  for (const QParam& q : q_grid) {
    std::vector<double> hill_profile(r), leinster_profile(r), dsn_profile(r);
    std::array<std::vector<double>, 3> focus_profiles;
    for (auto& fp : focus_profiles) fp.resize(r);
    for (std::size_t k = 0; k < r; ++k) {
      const auto& pop = populations[k];
      hill_profile[k] = hill_number(pop.proportions, q);
      leinster_profile[k] = leinster_diversity(pop.proportions, z, q);
      dsn_profile[k] = dsn(Population{pop.proportions, z, pop.adjacency, pop.name}, q);
      for (std::size_t f = 0; f < 3; ++f)
        focus_profiles[f][k] =
            dsn(Population{pop.proportions, z, category_focused_adjacency(pop.adjacency, f),
                           pop.name},
                q);
    }
    table.rows.push_back(detail::make_row("hill", q.value(), hill_profile, ys));
    table.rows.push_back(detail::make_row("leinster", q.value(), leinster_profile, ys));
    table.rows.push_back(detail::make_row("dsn", q.value(), dsn_profile, ys));
    for (std::size_t f = 0; f < 3; ++f)
      table.rows.push_back(detail::make_row("dsn_focus_" + std::to_string(f), q.value(),
                                            focus_profiles[f], ys));
  }
  std::vector<double> density_profile(r);
  for (std::size_t k = 0; k < r; ++k)
    density_profile[k] = network_density(populations[k].adjacency);
  table.rows.push_back(detail::make_row("network_density", std::nullopt, density_profile, ys));
  return table;
}

// Bridge to the estimation module: the design's populations plus a
// performance vector form a study dataset.
inline StudyDataset to_study_dataset(const StudyDesign& design, std::vector<double> ys,
                                     QParam q) {
  std::vector<StudyMember> members;
  for (auto& pop : design_populations(design))
    members.push_back({std::move(pop.proportions), std::move(pop.adjacency), std::move(pop.name)});
  return StudyDataset(design.attributes, std::move(members), std::move(ys), q);
}

}  // namespace dsn
