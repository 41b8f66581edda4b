// Command-line front end: code generation and inspection, WCNF emission,
// single-shot decoding, Monte-Carlo sweeps, density reports, curve fits and
// record export.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cssdec/code_io.hpp"
#include "cssdec/decoder.hpp"
#include "cssdec/experiment.hpp"
#include "cssdec/external_solver.hpp"
#include "cssdec/fits.hpp"
#include "cssdec/noise.hpp"
#include "cssdec/wcnf_io.hpp"

namespace {

using namespace cssdec;

struct CodeArgs {
  std::string generator;
  std::size_t distance = 3;
  std::string file;
  std::string format = "matrix-text";

  void attach(CLI::App* app) {
    app->add_option("--gen", generator, "built-in family: toric, surface, color");
    app->add_option("--d", distance, "code distance for --gen");
    app->add_option("--code", file, "code file (matrix-text, or `hx,hz` alist pair)");
    app->add_option("--code-format", format, "code file format: matrix-text | alist");
  }

  CssCode build() const {
    if (!file.empty())
      return load_code(file, format == "alist" ? CodeFormat::alist : CodeFormat::matrix_text);
    if (generator == "toric") return gen_toric(distance);
    if (generator == "surface") return gen_rotated_surface(distance);
    if (generator == "color") return gen_color_666(distance);
    throw CLI::ValidationError("need --gen {toric|surface|color} or --code <file>");
  }
};

BitVec read_bits(const std::string& path, std::size_t expected) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open syndrome file: " + path);
  std::vector<int> bits;
  std::string tok;
  while (in >> tok) {
    for (char c : tok) {
      if (c == '0')
        bits.push_back(0);
      else if (c == '1')
        bits.push_back(1);
      else
        throw std::runtime_error("syndrome file must contain 0/1 bits");
    }
  }
  if (bits.size() != expected)
    throw std::runtime_error("syndrome length " + std::to_string(bits.size()) + ", expected " +
                             std::to_string(expected));
  BitVec v(expected);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) v.set(i, true);
  return v;
}

void print_density(const DensityReport& rep) {
  std::cout << "alpha_3sat            " << rep.alpha_3sat << "\n"
            << "alpha_max3sat         " << rep.alpha_max3sat << "\n"
            << "alpha_3sat_chain      " << rep.alpha_3sat_chain << "\n"
            << "alpha_3sat_spacetime  " << rep.alpha_3sat_spacetime << "\n"
            << "alpha_max3sat_spacetime " << rep.alpha_max3sat_spacetime << "\n";
  if (rep.actual_vars > 0)
    std::cout << "actual_alpha          " << rep.actual_alpha << "  (" << rep.actual_clauses
              << " clauses / " << rep.actual_vars << " vars)\n";
  std::cout << "easy_phase            " << (rep.easy_phase ? "yes" : "no") << "\n";
}

std::vector<std::pair<double, double>> read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open points file: " + path);
  std::vector<std::pair<double, double>> points;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double p, pl;
    if (ls >> p >> pl) points.push_back({p, pl});
  }
  return points;
}

std::vector<CollapseCurve> read_collapse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open points file: " + path);
  std::vector<CollapseCurve> curves;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double d, p, pl;
    if (!(ls >> d >> p >> pl)) continue;
    auto it = std::find_if(curves.begin(), curves.end(),
                           [d](const CollapseCurve& c) { return c.d == d; });
    if (it == curves.end()) {
      curves.push_back({d, {}});
      it = curves.end() - 1;
    }
    it->points.push_back({p, pl});
  }
  return curves;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MaxSAT decoding toolkit for CSS codes"};
  app.require_subcommand(1);

  // --- code gen|validate|info ---
  auto* code_cmd = app.add_subcommand("code", "generate, validate or inspect CSS codes");
  code_cmd->require_subcommand(1);

  CodeArgs gen_args;
  std::string gen_out;
  auto* code_gen_cmd = code_cmd->add_subcommand("gen", "generate a built-in code");
  gen_args.attach(code_gen_cmd);
  code_gen_cmd->add_option("--out,-o", gen_out, "output file (default stdout)");
  code_gen_cmd->callback([&] {
    CssCode code = gen_args.build();
    if (gen_out.empty())
      write_code_text(std::cout, code);
    else
      save_code(gen_out, code);
  });

  CodeArgs validate_args;
  auto* code_validate_cmd = code_cmd->add_subcommand("validate", "check all CSS invariants");
  validate_args.attach(code_validate_cmd);
  code_validate_cmd->callback([&] {
    CssCode code = validate_args.build();
    ValidationReport rep = validate_css(code);
    for (const auto& e : rep.entries)
      std::cout << (e.ok ? "[ ok ] " : "[FAIL] ") << e.check
                << (e.detail.empty() ? "" : ": " + e.detail) << "\n";
    if (!rep.all_ok()) throw CLI::RuntimeError(1);
  });

  CodeArgs info_args;
  auto* code_info_cmd = code_cmd->add_subcommand("info", "print code parameters");
  info_args.attach(code_info_cmd);
  code_info_cmd->callback([&] {
    CssCode code = info_args.build();
    std::cout << code.name << ": [[" << code.n << ", " << code.k << ", " << code.d << "]]\n"
              << "Hx: " << code.hx.rows() << " checks, Hz: " << code.hz.rows() << " checks\n";
    auto weights = [](const BitMatrix& m) {
      std::size_t lo = SIZE_MAX, hi = 0;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        lo = std::min(lo, m.row_weight(i));
        hi = std::max(hi, m.row_weight(i));
      }
      return std::pair{lo, hi};
    };
    auto [xl, xh] = weights(code.hx);
    auto [zl, zh] = weights(code.hz);
    std::cout << "check weights: Hx " << xl << ".." << xh << ", Hz " << zl << ".." << zh << "\n";
  });

  // --- encode ---
  CodeArgs enc_code;
  double enc_p = 0.1, enc_q = 0.0;
  int enc_rounds = 1;
  std::string enc_syndrome, enc_out, enc_format = "wcnf", enc_noise;
  std::uint64_t enc_seed = 1;
  bool enc_sample = false;
  std::string enc_sector = "x";
  std::string enc_strict = "on";
  std::int64_t enc_scale = 10000;
  auto* encode_cmd = app.add_subcommand("encode", "emit a decoding instance as WCNF");
  enc_code.attach(encode_cmd);
  encode_cmd->add_option("--p", enc_p, "depolarizing rate");
  encode_cmd->add_option("--q", enc_q, "measurement flip rate");
  encode_cmd->add_option("--noise", enc_noise, "noise specification JSON file");
  encode_cmd->add_option("--L", enc_rounds, "measurement rounds");
  encode_cmd->add_option("--syndrome", enc_syndrome, "syndrome (difference) bits file");
  encode_cmd->add_flag("--sample", enc_sample, "sample a random syndrome instead");
  encode_cmd->add_option("--seed", enc_seed, "sampling seed");
  encode_cmd->add_option("--sector", enc_sector, "x (Hz checks) or z (Hx checks)");
  encode_cmd->add_option("--strict3", enc_strict, "strict 3-SAT padding: on | off");
  encode_cmd->add_option("--scale", enc_scale, "integer weight scale");
  encode_cmd->add_option("--format", enc_format, "wcnf (classic) | wcnf2022");
  encode_cmd->add_option("--out,-o", enc_out, "output file (default stdout)");
  encode_cmd->callback([&] {
    CssCode code = enc_code.build();
    NoiseModel noise = enc_noise.empty() ? uniform_depolarizing(code, enc_p, enc_q)
                                         : noise_from_json_file(enc_noise, code);
    const BitMatrix& h = enc_sector == "z" ? code.hx : code.hz;
    auto priors = enc_sector == "z" ? noise.phase_priors() : noise.flip_priors();
    auto q_priors = enc_sector == "z" ? noise.q_hx : noise.q_hz;
    BitVec sdiff(h.rows() * static_cast<std::size_t>(enc_rounds));
    if (!enc_syndrome.empty()) {
      sdiff = read_bits(enc_syndrome, sdiff.size());
    } else if (enc_sample) {
      Rng rng(enc_seed);
      auto sample = sample_spacetime(h, priors, q_priors, enc_rounds, rng);
      for (int t = 0; t < enc_rounds; ++t)
        for (std::size_t i = 0; i < h.rows(); ++i)
          if (sample.s_diff[t].get(i)) sdiff.set(t * h.rows() + i, true);
    }
    EncodeOptions opt{.strict3 = enc_strict != "off"};
    WcnfFormula f = build_spacetime_wcnf(h, sdiff, priors, q_priors, enc_rounds, opt);
    WcnfFormula q = quantize_weights(f, enc_scale);
    WcnfDialect dialect =
        enc_format == "wcnf2022" ? WcnfDialect::fmt2022 : WcnfDialect::classic;
    if (enc_out.empty()) {
      write_wcnf(std::cout, q, dialect);
    } else {
      std::ofstream out(enc_out);
      write_wcnf(out, q, dialect);
    }
  });

  // --- decode ---
  CodeArgs dec_code;
  double dec_p = 0.1, dec_q = 0.0;
  int dec_rounds = 1;
  std::string dec_syndrome, dec_engine = "embedded", dec_solver_cmd, dec_sector = "x";
  std::string dec_strict = "off", dec_noise;
  auto* decode_cmd = app.add_subcommand("decode", "decode a single syndrome from a file");
  dec_code.attach(decode_cmd);
  decode_cmd->add_option("--p", dec_p, "depolarizing rate");
  decode_cmd->add_option("--q", dec_q, "measurement flip rate");
  decode_cmd->add_option("--noise", dec_noise, "noise specification JSON file");
  decode_cmd->add_option("--L", dec_rounds, "measurement rounds");
  decode_cmd->add_option("--syndrome", dec_syndrome, "syndrome (difference) bits file")
      ->required();
  decode_cmd->add_option("--sector", dec_sector, "x (Hz checks) or z (Hx checks)");
  decode_cmd->add_option("--engine", dec_engine, "embedded | external");
  decode_cmd->add_option("--solver-cmd", dec_solver_cmd,
                         "external command template with {wcnf}");
  decode_cmd->add_option("--strict3", dec_strict, "strict 3-SAT padding: on | off");
  decode_cmd->callback([&] {
    CssCode code = dec_code.build();
    NoiseModel noise = dec_noise.empty() ? uniform_depolarizing(code, dec_p, dec_q)
                                         : noise_from_json_file(dec_noise, code);
    const BitMatrix& h = dec_sector == "z" ? code.hx : code.hz;
    auto priors = dec_sector == "z" ? noise.phase_priors() : noise.flip_priors();
    auto q_priors = dec_sector == "z" ? noise.q_hx : noise.q_hz;
    BitVec sdiff = read_bits(dec_syndrome, h.rows() * static_cast<std::size_t>(dec_rounds));
    DecodeOptions opt;
    opt.encode.strict3 = dec_strict != "off";
    opt.engine = dec_engine == "external" ? EngineChoice::external : EngineChoice::embedded;
    opt.solver_command = dec_solver_cmd;
    DecodeResult res = decode_sector(h, sdiff, priors, q_priors, dec_rounds, opt);
    std::cout << "status " << to_string(res.status) << "\nobjective " << res.objective
              << "\nseconds " << res.seconds << "\ne_dec ";
    for (std::size_t j = 0; j < res.data_correction.size(); ++j)
      std::cout << (res.data_correction.get(j) ? '1' : '0');
    std::cout << "\n";
    if (res.meas_correction.size() > 0) {
      std::cout << "r_dec ";
      for (std::size_t i = 0; i < res.meas_correction.size(); ++i)
        std::cout << (res.meas_correction.get(i) ? '1' : '0');
      std::cout << "\n";
    }
  });

  // --- mc ---
  std::string mc_config, mc_out;
  std::uint64_t mc_seed = 0;
  std::size_t mc_trials = 0;
  auto* mc_cmd = app.add_subcommand("mc", "Monte-Carlo sweep from a JSON config");
  mc_cmd->add_option("--config", mc_config, "JSON config file")->required();
  mc_cmd->add_option("--seed", mc_seed, "override config seed");
  mc_cmd->add_option("--trials", mc_trials, "override config trials");
  mc_cmd->add_option("--out,-o", mc_out, "override config output path");
  mc_cmd->callback([&] {
    ExperimentConfig cfg = ExperimentConfig::from_json_file(mc_config);
    if (mc_seed) cfg.seed = mc_seed;
    if (mc_trials) cfg.trials = mc_trials;
    if (!mc_out.empty()) cfg.output = mc_out;
    auto records = mc_sweep(cfg);
    for (const auto& r : records)
      std::cout << r.code_name << " p=" << r.p << " q=" << r.q << " L=" << r.rounds
                << " p_L=" << r.p_l << " [" << r.ci_low << ", " << r.ci_high << "]"
                << " trials=" << r.trials << " mean_t=" << r.mean_seconds << "s\n";
  });

  // --- density ---
  CodeArgs den_code;
  int den_rounds = 1;
  bool den_actual = false;
  std::string den_sector = "x";
  auto* density_cmd = app.add_subcommand("density", "clause density report");
  den_code.attach(density_cmd);
  density_cmd->add_option("--L", den_rounds, "measurement rounds");
  density_cmd->add_option("--sector", den_sector, "x (Hz checks) or z (Hx checks)");
  density_cmd->add_flag("--actual", den_actual, "also count an emitted strict instance");
  density_cmd->callback([&] {
    CssCode code = den_code.build();
    const BitMatrix& h = den_sector == "z" ? code.hx : code.hz;
    if (den_actual) {
      NoiseModel noise = uniform_depolarizing(code, 0.1, den_rounds > 1 ? 0.01 : 0.0);
      BitVec zero(h.rows() * static_cast<std::size_t>(den_rounds));
      auto q_priors = den_sector == "z" ? noise.q_hx : noise.q_hz;
      auto priors = den_sector == "z" ? noise.phase_priors() : noise.flip_priors();
      WcnfFormula f = build_spacetime_wcnf(h, zero, priors, q_priors, den_rounds, {});
      print_density(clause_density(h, den_rounds, f));
    } else {
      print_density(clause_density(h, den_rounds));
    }
  });

  // --- fit heuristic|pth|collapse ---
  auto* fit_cmd = app.add_subcommand("fit", "curve fits on (p, p_L) data");
  fit_cmd->require_subcommand(1);
  std::string fit_in;
  int fit_k = 1;

  auto* fit_h_cmd = fit_cmd->add_subcommand("heuristic", "fit p_L = p^(d/2) exp(c0+c1 p+c2 p^2)");
  fit_h_cmd->add_option("--in", fit_in, "CSV of p,p_L rows")->required();
  fit_h_cmd->callback([&] {
    auto fit = fit_heuristic(read_points_csv(fit_in));
    std::cout << "d_fit " << fit.d_fit << "\nc0 " << fit.c0 << "\nc1 " << fit.c1 << "\nc2 "
              << fit.c2 << "\nresidual " << fit.residual_norm << "\n";
  });

  auto* fit_p_cmd = fit_cmd->add_subcommand("pth", "pseudo-threshold of a fitted curve");
  fit_p_cmd->add_option("--in", fit_in, "CSV of p,p_L rows")->required();
  fit_p_cmd->add_option("--k", fit_k, "logical qubit count for the break-even curve");
  fit_p_cmd->callback([&] {
    auto fit = fit_heuristic(read_points_csv(fit_in));
    std::cout << "pseudo_threshold " << pseudo_threshold(fit, fit_k) << "\n";
  });

  auto* fit_c_cmd = fit_cmd->add_subcommand("collapse", "critical scaling ansatz fit");
  fit_c_cmd->add_option("--in", fit_in, "CSV of d,p,p_L rows")->required();
  fit_c_cmd->callback([&] {
    auto fit = fit_collapse(read_collapse_csv(fit_in));
    std::cout << "p_th " << fit.p_th << "\nnu " << fit.nu << "\nf " << fit.coeff[0] << " "
              << fit.coeff[1] << " " << fit.coeff[2] << "\nresidual " << fit.residual_norm
              << "\nconverged " << (fit.converged ? "yes" : "no") << "\n";
  });

  // --- export ---
  std::string exp_in, exp_csv, exp_jsonl;
  auto* export_cmd = app.add_subcommand("export", "convert sweep records");
  export_cmd->add_option("--in", exp_in, "records JSONL")->required();
  export_cmd->add_option("--csv", exp_csv, "CSV output path");
  export_cmd->add_option("--jsonl", exp_jsonl, "JSONL output path (normalized)");
  export_cmd->callback([&] {
    auto records = read_records_jsonl(exp_in);
    if (!exp_csv.empty()) {
      std::ofstream out(exp_csv);
      write_records_csv(out, records);
    }
    if (!exp_jsonl.empty()) write_records_jsonl(exp_jsonl, records);
    if (exp_csv.empty() && exp_jsonl.empty()) write_records_csv(std::cout, records);
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
