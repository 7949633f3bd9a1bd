#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dsn/errors.hpp"
#include "dsn/estimation.hpp"
#include "dsn/similarity.hpp"
#include "dsn/types.hpp"

namespace dsn {

inline SimilarityKernel kernel_from_string(const std::string& name) {
  if (name == "exp") return SimilarityKernel::Exp;
  if (name == "reciprocal") return SimilarityKernel::Reciprocal;
  if (name == "raw") return SimilarityKernel::Raw;
  throw ValidationError("unknown kernel '" + name + "' (expected exp, reciprocal or raw)");
}

inline const char* to_string(SimilarityKernel kernel) {
  switch (kernel) {
    case SimilarityKernel::Exp:
      return "exp";
    case SimilarityKernel::Reciprocal:
      return "reciprocal";
    case SimilarityKernel::Raw:
      return "raw";
  }
  return "?";
}

inline CorrelationKind correlation_kind_from_string(const std::string& name) {
  if (name == "pearson") return CorrelationKind::Pearson;
  if (name == "spearman") return CorrelationKind::Spearman;
  if (name == "mic") return CorrelationKind::Mic;
  throw ValidationError("unknown correlation kind '" + name +
                        "' (expected pearson, spearman or mic)");
}

inline SetCoefficient set_coefficient_from_string(const std::string& name) {
  if (name == "jaccard") return SetCoefficient::Jaccard;
  if (name == "dice") return SetCoefficient::Dice;
  if (name == "simpson") return SetCoefficient::Simpson;
  throw ValidationError("unknown set coefficient '" + name +
                        "' (expected jaccard, dice or simpson)");
}

// "inf" (any of inf/Inf/infinity) or a nonnegative number.
inline QParam parse_q(const nlohmann::json& j, const std::string& field) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "Inf" || s == "infinity") return QParam::infinity();
    throw ValidationError(field + ": expected a number or \"inf\", got \"" + s + "\"");
  }
  if (!j.is_number()) throw ValidationError(field + ": expected a number or \"inf\"");
  return QParam(j.get<double>());
}

namespace detail {

inline nlohmann::json load_json(const std::filesystem::path& path) {
  std::ifstream stream(path);
  if (!stream) throw ParseError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(stream);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline const nlohmann::json& require_field(const nlohmann::json& j, const std::string& name,
                                           const std::string& context) {
  if (!j.contains(name))
    throw ValidationError(context + ": missing field '" + name + "'");
  return j.at(name);
}

inline std::vector<double> as_vector(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array()) throw ValidationError(field + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw ValidationError(field + ": expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

inline std::vector<std::vector<double>> as_matrix(const nlohmann::json& j,
                                                  const std::string& field) {
  if (!j.is_array()) throw ValidationError(field + ": expected an array of rows");
  std::vector<std::vector<double>> rows;
  rows.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    rows.push_back(as_vector(j.at(i), field + " row " + std::to_string(i)));
  return rows;
}

inline SquareMatrix similarity_from_json(const nlohmann::json& doc, std::size_t n,
                                         std::optional<SimilarityKernel> kernel_override) {
  int sources = 0;
  for (const char* key : {"similarity", "dissimilarity", "attributes", "attribute_sets"})
    sources += doc.contains(key) ? 1 : 0;
  if (sources != 1)
    throw ValidationError("population file must provide exactly one similarity source "
                          "(similarity, dissimilarity, attributes or attribute_sets); got " +
                          std::to_string(sources));
  if (kernel_override && !doc.contains("attributes"))
    throw ValidationError("kernel override requires an attribute-based similarity source");

  if (doc.contains("similarity")) {
    SquareMatrix z = SquareMatrix::from_rows(as_matrix(doc.at("similarity"), "similarity"));
    if (z.order() != n) throw DimensionMismatch("similarity order != proportions length");
    require_unit_interval(z, "similarity");
    return z;
  }
  if (doc.contains("dissimilarity")) {
    SquareMatrix zbar =
        SquareMatrix::from_rows(as_matrix(doc.at("dissimilarity"), "dissimilarity"));
    if (zbar.order() != n) throw DimensionMismatch("dissimilarity order != proportions length");
    require_unit_interval(zbar, "dissimilarity");
    require_zero_diagonal(zbar, "dissimilarity");
    SquareMatrix z(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) z(i, j) = 1.0 - zbar(i, j);
    return z;
  }
  if (doc.contains("attributes")) {
    const auto& spec = doc.at("attributes");
    const AttributeMatrix x =
        AttributeMatrix::from_rows(as_matrix(require_field(spec, "matrix", "attributes"),
                                             "attributes.matrix"));
    if (x.rows() != n) throw DimensionMismatch("attribute rows != proportions length");
    const WeightVector w(as_vector(require_field(spec, "weights", "attributes"),
                                   "attributes.weights"));
    SimilarityKernel kernel =
        spec.contains("kernel") ? kernel_from_string(spec.at("kernel").get<std::string>())
                                : SimilarityKernel::Exp;
    if (kernel_override) kernel = *kernel_override;
    return build_similarity_matrix(x, w, kernel);
  }
  const auto& spec = doc.at("attribute_sets");
  const auto& sets_json = require_field(spec, "sets", "attribute_sets");
  if (!sets_json.is_array())
    throw ValidationError("attribute_sets.sets: expected an array of token arrays");
  AttributeSetFamily sets;
  for (const auto& s : sets_json) {
    AttributeSet tokens;
    for (const auto& t : s) tokens.insert(t.get<std::string>());
    sets.push_back(std::move(tokens));
  }
  if (sets.size() != n) throw DimensionMismatch("attribute_sets count != proportions length");
  const SetCoefficient coeff = set_coefficient_from_string(
      require_field(spec, "coefficient", "attribute_sets").get<std::string>());
  return build_set_similarity_matrix(sets, coeff);
}

}  // namespace detail

inline Population load_population(const std::filesystem::path& path,
                                  std::optional<SimilarityKernel> kernel_override = {}) {
  const nlohmann::json doc = detail::load_json(path);
  if (!doc.is_object()) throw ValidationError(path.string() + ": expected a JSON object");
  ProportionVector p(
      detail::as_vector(detail::require_field(doc, "proportions", "population file"),
                        "proportions"));
  SquareMatrix z = detail::similarity_from_json(doc, p.size(), kernel_override);
  SquareMatrix e = SquareMatrix::from_rows(
      detail::as_matrix(detail::require_field(doc, "adjacency", "population file"),
                        "adjacency"));
  std::string label = doc.contains("label") ? doc.at("label").get<std::string>() : "";
  return Population::create(std::move(p), std::move(z), std::move(e), std::move(label));
}

// Serializes the resolved similarity (whatever the source was) so that a
// reloaded population evaluates identically.
inline void save_population(const Population& pop, const std::filesystem::path& path) {
  nlohmann::json doc;
  if (!pop.label.empty()) doc["label"] = pop.label;
  doc["proportions"] = pop.proportions.values();
  const std::size_t n = pop.size();
  auto matrix_json = [n](const SquareMatrix& m) {
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
    return rows;
  };
  doc["similarity"] = matrix_json(pop.similarity);
  doc["adjacency"] = matrix_json(pop.adjacency);
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw IoFailure("save_population: cannot open " + path.string());
  stream << doc.dump(2) << '\n';
  if (!stream) throw IoFailure("save_population: write failed for " + path.string());
}

struct StudyFile {
  StudyDataset dataset;
  CorrelationKind kind = CorrelationKind::Pearson;
  int starts = 16;
  std::uint64_t seed = 0;
};

inline StudyFile load_study(const std::filesystem::path& path) {
  const nlohmann::json doc = detail::load_json(path);
  if (!doc.is_object()) throw ValidationError(path.string() + ": expected a JSON object");
  AttributeMatrix attributes = AttributeMatrix::from_rows(
      detail::as_matrix(detail::require_field(doc, "attributes", "study file"), "attributes"));
  const auto& pops_json = detail::require_field(doc, "populations", "study file");
  if (!pops_json.is_array())
    throw ValidationError("study file: populations must be an array");
  std::vector<StudyMember> members;
  for (std::size_t k = 0; k < pops_json.size(); ++k) {
    const auto& pj = pops_json.at(k);
    const std::string context = "population " + std::to_string(k);
    ProportionVector p(
        detail::as_vector(detail::require_field(pj, "proportions", context), "proportions"));
    SquareMatrix e = SquareMatrix::from_rows(
        detail::as_matrix(detail::require_field(pj, "adjacency", context), "adjacency"));
    std::string label = pj.contains("label") ? pj.at("label").get<std::string>() : "";
    members.push_back({std::move(p), std::move(e), std::move(label)});
  }
  std::vector<double> ys =
      detail::as_vector(detail::require_field(doc, "ys", "study file"), "ys");
  QParam q = parse_q(detail::require_field(doc, "q", "study file"), "q");
  SimilarityKernel kernel =
      doc.contains("kernel") ? kernel_from_string(doc.at("kernel").get<std::string>())
                             : SimilarityKernel::Exp;
  StudyFile out{StudyDataset(std::move(attributes), std::move(members), std::move(ys), q,
                             kernel)};
  if (doc.contains("kind"))
    out.kind = correlation_kind_from_string(doc.at("kind").get<std::string>());
  if (doc.contains("starts")) out.starts = doc.at("starts").get<int>();
  if (doc.contains("seed")) out.seed = doc.at("seed").get<std::uint64_t>();
  return out;
}

inline nlohmann::json estimation_result_to_json(const EstimationResult& result) {
  nlohmann::json doc;
  doc["kind"] = to_string(result.kind);
  doc["objective"] = result.objective;
  doc["w_star"] = result.weights.values();
  doc["starts"] = result.starts_used;
  nlohmann::json log = nlohmann::json::array();
  for (const StartRecord& rec : result.per_start) {
    nlohmann::json entry;
    entry["initial"] = rec.initial;
    entry["solution"] = rec.solution;
    if (rec.objective)
      entry["objective"] = *rec.objective;
    else
      entry["objective"] = nullptr;
    log.push_back(std::move(entry));
  }
  doc["per_start"] = std::move(log);
  return doc;
}

}  // namespace dsn
