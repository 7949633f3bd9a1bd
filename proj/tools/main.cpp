// Command-line surface: compute, estimate, layout, study.
//
// Exit codes: 0 success, 2 input validation failure, 1 computation failure.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dsn/dsn.hpp"

namespace {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fmt_q(const dsn::QParam& q) {
  return q.is_infinite() ? "inf" : fmt6(q.value());
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(token);
  return out;
}

dsn::QParam parse_q_token(const std::string& token) {
  if (token == "inf" || token == "Inf" || token == "infinity") return dsn::QParam::infinity();
  try {
    return dsn::QParam(std::stod(token));
  } catch (const std::exception&) {
    throw dsn::ValidationError("cannot parse q value '" + token + "'");
  }
}

std::vector<dsn::QParam> parse_q_list(const std::string& csv) {
  std::vector<dsn::QParam> out;
  for (const std::string& token : split_list(csv)) out.push_back(parse_q_token(token));
  if (out.empty()) throw dsn::ValidationError("empty q list");
  return out;
}

std::vector<double> parse_double_list(const std::string& csv, const char* what) {
  std::vector<double> out;
  for (const std::string& token : split_list(csv)) {
    try {
      out.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw dsn::ValidationError(std::string("cannot parse ") + what + " value '" + token +
                                 "'");
    }
  }
  if (out.empty()) throw dsn::ValidationError(std::string("empty ") + what + " list");
  return out;
}

std::optional<dsn::SimilarityKernel> parse_kernel_flag(const std::string& flag) {
  if (flag.empty()) return std::nullopt;
  return dsn::kernel_from_string(flag);
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw dsn::IoFailure("cannot open " + path.string());
  stream.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!stream) throw dsn::IoFailure("write failed for " + path.string());
}

int run_compute(const std::string& file, const std::string& q_csv,
                const std::string& power_series, const std::string& kernel_flag) {
  const dsn::Population pop = dsn::load_population(file, parse_kernel_flag(kernel_flag));
  dsn::SquareMatrix adjacency = pop.adjacency;
  if (!power_series.empty()) {
    const auto parts = split_list(power_series);
    if (parts.size() != 2)
      throw dsn::ValidationError("--power-series expects N,RHO");
    int terms = 0;
    double rho = 0.0;
    try {
      terms = std::stoi(parts[0]);
      rho = std::stod(parts[1]);
    } catch (const std::exception&) {
      throw dsn::ValidationError("--power-series expects N,RHO");
    }
    adjacency = dsn::network_power_series(adjacency, terms, rho, /*clamp_to_unit=*/true);
  }
  const dsn::Population effective =
      dsn::Population::create(pop.proportions, pop.similarity, adjacency, pop.label);
  const double density = dsn::network_density(effective.adjacency);

  if (!effective.label.empty()) std::cout << "label: " << effective.label << "\n";
  std::cout << "n: " << effective.size() << "\n";
  std::printf("%-8s %-12s %-12s %-12s %-12s\n", "q", "dsn", "hill", "leinster", "density");
  for (const dsn::QParam& q : parse_q_list(q_csv)) {
    const double d = dsn::dsn(effective, q);
    const double h = dsn::hill_number(effective.proportions, q);
    const double l = dsn::leinster_diversity(effective.proportions, effective.similarity, q);
    std::printf("%-8s %-12s %-12s %-12s %-12s\n", fmt_q(q).c_str(), fmt6(d).c_str(),
                fmt6(h).c_str(), fmt6(l).c_str(), fmt6(density).c_str());
  }
  return 0;
}

int run_estimate(const std::string& file, const std::string& kind_flag, int starts_flag,
                 long long seed_flag, const std::string& out,
                 const std::string& kernel_flag) {
  dsn::StudyFile study = dsn::load_study(file);
  if (!kind_flag.empty()) study.kind = dsn::correlation_kind_from_string(kind_flag);
  if (starts_flag > 0) study.starts = starts_flag;
  if (seed_flag >= 0) study.seed = static_cast<std::uint64_t>(seed_flag);
  std::optional<dsn::SimilarityKernel> kernel = parse_kernel_flag(kernel_flag);
  const dsn::StudyDataset dataset =
      kernel ? dsn::StudyDataset(study.dataset.attributes(), study.dataset.members(),
                                 study.dataset.performance(), study.dataset.q(), *kernel)
             : study.dataset;

  const dsn::EstimationResult result =
      dsn::estimate_weights(dataset, study.kind, study.starts, study.seed);

  std::cout << "kind: " << dsn::to_string(result.kind) << "\n";
  std::cout << "starts: " << result.starts_used << "\n";
  std::cout << "seed: " << study.seed << "\n";
  std::cout << "objective: " << fmt6(result.objective) << "\n";
  std::cout << "w*:";
  for (double w : result.weights.values()) std::cout << ' ' << fmt6(w);
  std::cout << "\n";
  std::cout << "per-start log:\n";
  for (std::size_t s = 0; s < result.per_start.size(); ++s) {
    const auto& rec = result.per_start[s];
    std::cout << "  start " << s << ": objective ";
    std::cout << (rec.objective ? fmt6(*rec.objective) : std::string("failed"));
    std::cout << " initial [";
    for (std::size_t m = 0; m < rec.initial.size(); ++m)
      std::cout << (m ? " " : "") << fmt6(rec.initial[m]);
    std::cout << "] solution [";
    for (std::size_t m = 0; m < rec.solution.size(); ++m)
      std::cout << (m ? " " : "") << fmt6(rec.solution[m]);
    std::cout << "]\n";
  }
  write_text_file(out, dsn::estimation_result_to_json(result).dump(2) + "\n");
  return 0;
}

int run_layout(const std::string& file, const std::string& out, double scale,
               const std::string& kernel_flag) {
  const dsn::Population pop = dsn::load_population(file, parse_kernel_flag(kernel_flag));
  const dsn::Layout layout = dsn::make_layout(pop, scale);
  dsn::render_svg(layout, out);
  return 0;
}

int run_study(const std::string& model_flag, const std::string& w_csv,
              const std::string& q_flag, double noise, long long seed,
              const std::string& q_grid_csv, const std::string& out) {
  dsn::PreferenceModel model = dsn::PreferenceModel::DsnLinear;
  if (model_flag == "dsn_linear")
    model = dsn::PreferenceModel::DsnLinear;
  else if (model_flag == "hill_linear")
    model = dsn::PreferenceModel::HillLinear;
  else if (model_flag == "noisy")
    model = dsn::PreferenceModel::Noisy;
  else
    throw dsn::ValidationError("unknown model '" + model_flag +
                               "' (expected dsn_linear, hill_linear or noisy)");
  const dsn::WeightVector w(parse_double_list(w_csv, "weight"));
  const dsn::QParam q = parse_q_token(q_flag);
  const std::vector<dsn::QParam> grid = parse_q_list(q_grid_csv);

  const dsn::StudyDesign design = dsn::generate_design();
  const std::vector<double> ys = dsn::synthesize_preferences(
      design, model, w, q, noise, static_cast<std::uint64_t>(seed));
  const dsn::ComparisonTable table = dsn::comparison_table(design, ys, w, grid);
  const std::string csv = table.to_csv();
  if (out.empty())
    std::cout << csv;
  else
    write_text_file(out, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diversity/inclusion indices with similarity and network structure"};
  app.require_subcommand(1);

  std::string file, q_csv = "0,1,2,inf", power_series, kernel_flag, out;
  auto* compute = app.add_subcommand("compute", "Evaluate indices for one population file");
  compute->add_option("file", file, "population JSON file")->required();
  compute->add_option("--q", q_csv, "comma-separated q values (inf allowed)");
  compute->add_option("--power-series", power_series,
                      "N,RHO: replace adjacency by its clamped discounted power series");
  compute->add_option("--kernel", kernel_flag, "kernel override: exp, reciprocal or raw");

  std::string est_file, est_kind, est_out = "estimate_result.json", est_kernel;
  int est_starts = 0;
  long long est_seed = -1;
  auto* estimate = app.add_subcommand("estimate", "Estimate attribute weights from a study file");
  estimate->add_option("file", est_file, "study JSON file")->required();
  estimate->add_option("--kind", est_kind, "pearson, spearman or mic");
  estimate->add_option("--starts", est_starts, "number of optimizer starts");
  estimate->add_option("--seed", est_seed, "seed for the extra starts");
  estimate->add_option("--out", est_out, "machine-readable result path");
  estimate->add_option("--kernel", est_kernel, "kernel override: exp or reciprocal");

  std::string lay_file, lay_out, lay_kernel;
  double lay_scale = 1.0;
  auto* layout = app.add_subcommand("layout", "Render a population as an SVG map");
  layout->add_option("file", lay_file, "population JSON file")->required();
  layout->add_option("--out", lay_out, "output SVG path")->required();
  layout->add_option("--scale", lay_scale, "total of circle diameters");
  layout->add_option("--kernel", lay_kernel, "kernel override: exp, reciprocal or raw");

  std::string st_model = "dsn_linear", st_w = "0.5,0.5", st_q = "2",
              st_grid = "0,0.5,1,2,10", st_out;
  double st_noise = 0.0;
  long long st_seed = 0;
  auto* study = app.add_subcommand("study", "Run the synthetic benchmark study");
  study->add_option("--model", st_model, "dsn_linear, hill_linear or noisy");
  study->add_option("--w", st_w, "attribute weights for the generator");
  study->add_option("--q", st_q, "diversity order for the generator");
  study->add_option("--noise", st_noise, "noise standard deviation");
  study->add_option("--seed", st_seed, "generator seed");
  study->add_option("--q-grid", st_grid, "comma-separated q grid for the table");
  study->add_option("--out", st_out, "CSV output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (compute->parsed()) return run_compute(file, q_csv, power_series, kernel_flag);
    if (estimate->parsed())
      return run_estimate(est_file, est_kind, est_starts, est_seed, est_out, est_kernel);
    if (layout->parsed()) return run_layout(lay_file, lay_out, lay_scale, lay_kernel);
    if (study->parsed())
      return run_study(st_model, st_w, st_q, st_noise, st_seed, st_grid, st_out);
  } catch (const dsn::ValidationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
