// ncharm command-line front end.
//
//   ncharm run <config.json>                 execute a named study
//   ncharm norm <fun.json> --norm <name>     evaluate one norm of a function
//   ncharm corpus <spec.json> -o <dir>       generate a deterministic corpus
//
// Exit codes: 0 all assertions pass, 1 config/IO error, 2 assertion failure.

#include "ncharm/studies.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace ncharm;

namespace {

StudyConfig config_from_json(const Json& j) {
  StudyConfig cfg;
  cfg.study = j.at("study").get<std::string>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("count")) cfg.count = j.at("count").get<int>();
  if (j.contains("dim")) cfg.dim = j.at("dim").get<int>();
  if (j.contains("degree")) cfg.degree = j.at("degree").get<int>();
  if (j.contains("scale")) cfg.scale = j.at("scale").get<int>();
  if (j.contains("stability")) cfg.stability = j.at("stability").get<bool>();
  if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
  if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
  return cfg;
}

void validate_config(const StudyConfig& cfg) {
  const auto& names = study_names();
  if (std::find(names.begin(), names.end(), cfg.study) == names.end())
    throw std::invalid_argument("unknown study: " + cfg.study);
  if (cfg.tol != -1.0 && !(cfg.tol > 0))
    throw std::invalid_argument("tolerance must be positive");
  if (cfg.scale < 1) throw std::invalid_argument("scale must be >= 1");
  if (cfg.count != -1 && cfg.count < 1)
    throw std::invalid_argument("count must be positive");
}

int cmd_run(const std::string& path, const StudyConfig& overrides) {
  StudyConfig cfg = config_from_json(read_json_file(path));
  // flag > file > default precedence
  if (!overrides.out_dir.empty()) cfg.out_dir = overrides.out_dir;
  if (overrides.count != -1) cfg.count = overrides.count;
  if (overrides.seed != 20240801) cfg.seed = overrides.seed;
  if (overrides.scale != 1) cfg.scale = overrides.scale;
  if (overrides.tol != -1.0) cfg.tol = overrides.tol;
  validate_config(cfg);

  const StudyResult res = run_study(cfg);
  for (const std::string& line : res.lines) std::cout << line << "\n";
  std::cout << (res.pass ? "PASS " : "FAIL ") << cfg.study << "\n";

  if (!cfg.out_dir.empty()) {
    fs::create_directories(cfg.out_dir);
    Json rep = res.report;
    rep["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                           std::chrono::system_clock::now().time_since_epoch())
                           .count();
    write_text_file(cfg.out_dir + "/report.json", rep.dump(2) + "\n");
    write_text_file(cfg.out_dir + "/rows.csv", res.csv);
  }
  return res.pass ? 0 : 2;
}

NormSearchGrid grid_from_spec(const std::string& spec) {
  if (spec.empty()) return NormSearchGrid::standard();
  int v[4] = {256, 11, 32, 128};
  std::istringstream is(spec);
  std::string tok;
  for (int i = 0; i < 4 && std::getline(is, tok, ':'); ++i) v[i] = std::stoi(tok);
  return NormSearchGrid::standard(v[0], v[1], v[2], v[3]);
}

int cmd_norm(const std::string& path, const std::string& name, double p,
             double alpha, const std::string& grid_spec) {
  const CircleFun f = circlefun_from_json(read_json_file(path));
  const NormSearchGrid grid = grid_from_spec(grid_spec);
  if (name == "lp_c") {
    std::cout << "lp_c(p=" << p << ") = " << format_double(lp_c_norm(f, p)) << "\n";
  } else if (name == "linf_c") {
    std::cout << "linf_c = " << format_double(linf_c_norm(f)) << "\n";
  } else if (name == "bmo_c" || name == "bmo_r") {
    const CircleFun g = name == "bmo_r" ? f.adjoint_fun() : f;
    const auto [star, witness] = star_c_norm(g, grid);
    const double v = op_norm(circle_mean(g)) + star;
    std::cout << name << " = " << format_double(v) << " witness arc center="
              << format_double(witness.center) << " radius="
              << format_double(witness.radius) << "\n";
  } else if (name == "garsia") {
    std::cout << "garsia = " << format_double(garsia_norm(f, grid)) << "\n";
  } else if (name == "h1c-upper") {
    std::cout << "h1c-upper = " << format_double(h1c_upper_bound(f, 3).bound) << "\n";
  } else if (name == "h1c-lower") {
    std::vector<CircleFun> witnesses;
    const Rng root(7);
    for (int k = 0; k < 12; ++k)
      witnesses.push_back(random_bandlimited(root.fork(k), f.dim(), 4, false));
    std::cout << "h1c-lower = "
              << format_double(h1c_lower_bound(f, witnesses, grid)) << "\n";
  } else if (name == "area-h1") {
    const ConeQuadrature quad = ConeQuadrature::build(alpha, 1.0);
    std::cout << "area-h1(alpha=" << alpha << ") = "
              << format_double(h1c_area_norm(f, quad)) << "\n";
  } else {
    throw std::invalid_argument("unknown norm name: " + name);
  }
  return 0;
}

int cmd_corpus(const std::string& spec_path, const std::string& out_dir) {
  const Json j = read_json_file(spec_path);
  CorpusSpec spec;
  const std::string kind = j.value("kind", "analytic-bandlimited");
  if (kind == "analytic-bandlimited") spec.kind = CorpusKind::analytic_bandlimited;
  else if (kind == "general-bandlimited") spec.kind = CorpusKind::general_bandlimited;
  else if (kind == "piecewise") spec.kind = CorpusKind::piecewise;
  else if (kind == "atoms") spec.kind = CorpusKind::atoms;
  else throw std::invalid_argument("unknown corpus kind: " + kind);
  spec.count = j.value("count", 100);
  spec.dim = j.value("dim", 2);
  spec.degree = j.value("degree", 8);
  spec.seed = j.value("seed", std::uint64_t{1});

  const Corpus c = corpus_generate(spec);
  fs::create_directories(out_dir);
  Json manifest;
  manifest["kind"] = corpus_kind_name(spec.kind);
  manifest["count"] = spec.count;
  manifest["dim"] = spec.dim;
  manifest["degree"] = spec.degree;
  manifest["seed"] = spec.seed;
  manifest["version"] = kVersion;
  Json files = Json::array();
  for (size_t k = 0; k < c.items.size(); ++k) {
    const std::string name = "item-" + std::to_string(k) + ".json";
    Json item = spec.kind == CorpusKind::atoms ? to_json(c.atoms[k])
                                               : to_json(c.items[k]);
    write_text_file(out_dir + "/" + name, item.dump(2) + "\n");
    files.push_back(name);
  }
  manifest["files"] = std::move(files);
  write_text_file(out_dir + "/manifest.json", manifest.dump(2) + "\n");
  std::cout << "wrote " << c.items.size() << " items to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator-valued harmonic analysis on the circle"};
  app.require_subcommand(1);

  std::string config_path;
  StudyConfig overrides;
  CLI::App* run = app.add_subcommand("run", "execute a named study");
  run->add_option("config", config_path, "study configuration (JSON)")->required();
  run->add_option("--out", overrides.out_dir, "output directory override");
  run->add_option("--count", overrides.count, "corpus size override");
  run->add_option("--seed", overrides.seed, "seed override");
  run->add_option("--scale", overrides.scale, "quadrature scale override");
  run->add_option("--tol", overrides.tol, "identity tolerance override");

  std::string fun_path, norm_name, grid_spec;
  double p = 2.0, alpha = 2.0;
  CLI::App* norm = app.add_subcommand("norm", "evaluate one norm of a function");
  norm->add_option("file", fun_path, "function file (JSON)")->required();
  norm->add_option("--norm", norm_name, "lp_c linf_c bmo_c bmo_r garsia h1c-upper h1c-lower area-h1")
      ->required();
  norm->add_option("--p", p, "Schatten exponent for lp_c");
  norm->add_option("--alpha", alpha, "cone aperture for area-h1");
  norm->add_option("--grid", grid_spec, "centers:levels:radii:angles");

  std::string corpus_spec, corpus_out;
  CLI::App* corpus = app.add_subcommand("corpus", "generate a deterministic corpus");
  corpus->add_option("spec", corpus_spec, "corpus spec (JSON)")->required();
  corpus->add_option("-o,--out", corpus_out, "output directory")->required();

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(config_path, overrides);
    if (norm->parsed()) return cmd_norm(fun_path, norm_name, p, alpha, grid_spec);
    if (corpus->parsed()) return cmd_corpus(corpus_spec, corpus_out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 1 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
