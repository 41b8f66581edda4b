#include "cssdec/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cssdec/code_io.hpp"
#include "cssdec/fits.hpp"
#include "cssdec/noise.hpp"

namespace cssdec {

using nlohmann::json;

ExperimentConfig ExperimentConfig::from_json_string(const std::string& text) {
  json j = json::parse(text);
  ExperimentConfig cfg;
  if (j.contains("code")) {
    const auto& c = j["code"];
    if (c.contains("generator")) cfg.generator = c["generator"].get<std::string>();
    if (c.contains("d")) cfg.distance = c["d"].get<std::size_t>();
    if (c.contains("file")) cfg.code_file = c["file"].get<std::string>();
    if (c.contains("format")) cfg.code_format = c["format"].get<std::string>();
  }
  if (j.contains("noise")) {
    const auto& nz = j["noise"];
    if (nz.contains("p")) {
      if (nz["p"].is_array())
        cfg.p_grid = nz["p"].get<std::vector<double>>();
      else
        cfg.p_grid = {nz["p"].get<double>()};
    }
    if (nz.contains("q")) cfg.q = nz["q"].get<double>();
  }
  if (j.contains("rounds")) cfg.rounds = j["rounds"].get<int>();
  if (j.contains("L")) cfg.rounds = j["L"].get<int>();
  if (j.contains("trials")) cfg.trials = j["trials"].get<std::size_t>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("engine")) {
    if (j["engine"].is_string()) {
      cfg.engine = j["engine"].get<std::string>();
    } else {
      cfg.engine = j["engine"].value("type", "embedded");
      cfg.solver_command = j["engine"].value("command", "");
    }
  }
  if (j.contains("encoder")) cfg.strict3 = j["encoder"].value("strict3", false);
  if (j.contains("solver")) {
    cfg.solver_wall_seconds = j["solver"].value("wall_seconds", 0.0);
    cfg.scale = j["solver"].value("scale", std::int64_t(10000));
  }
  if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
  if (j.contains("output")) cfg.output = j["output"].get<std::string>();
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_string(ss.str());
}

void ExperimentConfig::validate() const {
  if (generator.empty() && code_file.empty())
    throw std::invalid_argument("config: need a code generator or file");
  if (!generator.empty() && generator != "toric" && generator != "surface" &&
      generator != "color")
    throw std::invalid_argument("config: unknown generator `" + generator + "`");
  if (p_grid.empty()) throw std::invalid_argument("config: empty noise grid");
  for (double p : p_grid)
    if (p < 0.0 || p >= 1.0) throw std::invalid_argument("config: p out of [0, 1)");
  if (q < 0.0 || q >= 1.0) throw std::invalid_argument("config: q out of [0, 1)");
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (rounds < 1) throw std::invalid_argument("config: rounds must be >= 1");
  if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
  if (engine != "embedded" && engine != "external")
    throw std::invalid_argument("config: engine must be embedded or external");
}

CssCode ExperimentConfig::build_code() const {
  if (!code_file.empty())
    return load_code(code_file,
                     code_format == "alist" ? CodeFormat::alist : CodeFormat::matrix_text);
  if (generator == "toric") return gen_toric(distance);
  if (generator == "surface") return gen_rotated_surface(distance);
  if (generator == "color") return gen_color_666(distance);
  throw std::invalid_argument("config: unknown generator `" + generator + "`");
}

DecodeOptions ExperimentConfig::decode_options() const {
  DecodeOptions opt;
  opt.encode.strict3 = strict3;
  opt.engine = engine == "external" ? EngineChoice::external : EngineChoice::embedded;
  opt.solver_command = solver_command;
  opt.quant_scale = scale;
  if (solver_wall_seconds > 0.0) opt.budget.wall_seconds = solver_wall_seconds;
  return opt;
}

std::string ExperimentRecord::to_json_line() const {
  json j;
  j["code"] = code_name;
  j["n"] = n;
  j["k"] = k;
  j["d"] = d;
  j["p"] = p;
  j["q"] = q;
  j["rounds"] = rounds;
  j["trials"] = trials;
  j["failures"] = failures;
  j["solver_noisy"] = solver_noisy;
  j["p_l"] = p_l;
  j["ci_low"] = ci_low;
  j["ci_high"] = ci_high;
  j["mean_seconds"] = mean_seconds;
  j["p50_seconds"] = p50_seconds;
  j["p95_seconds"] = p95_seconds;
  j["max_seconds"] = max_seconds;
  j["num_vars"] = num_vars;
  j["num_clauses"] = num_clauses;
  j["actual_alpha"] = actual_alpha;
  j["seed"] = seed;
  j["point_index"] = point_index;
  return j.dump();
}

ExperimentRecord ExperimentRecord::from_json_line(const std::string& line) {
  json j = json::parse(line);
  ExperimentRecord r;
  r.code_name = j.value("code", "");
  r.n = j.value("n", std::size_t(0));
  r.k = j.value("k", std::size_t(0));
  r.d = j.value("d", std::size_t(0));
  r.p = j.value("p", 0.0);
  r.q = j.value("q", 0.0);
  r.rounds = j.value("rounds", 1);
  r.trials = j.value("trials", std::size_t(0));
  r.failures = j.value("failures", std::size_t(0));
  r.solver_noisy = j.value("solver_noisy", std::size_t(0));
  r.p_l = j.value("p_l", 0.0);
  r.ci_low = j.value("ci_low", 0.0);
  r.ci_high = j.value("ci_high", 0.0);
  r.mean_seconds = j.value("mean_seconds", 0.0);
  r.p50_seconds = j.value("p50_seconds", 0.0);
  r.p95_seconds = j.value("p95_seconds", 0.0);
  r.max_seconds = j.value("max_seconds", 0.0);
  r.num_vars = j.value("num_vars", std::size_t(0));
  r.num_clauses = j.value("num_clauses", std::size_t(0));
  r.actual_alpha = j.value("actual_alpha", 0.0);
  r.seed = j.value("seed", std::uint64_t(0));
  r.point_index = j.value("point_index", std::size_t(0));
  return r;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t point_index, std::size_t trial_index) {
  std::uint64_t h = Rng::mix(master ^ 0xabcdef1234567890ULL);
  h = Rng::mix(h ^ (0x100000001b3ULL * (point_index + 1)));
  h = Rng::mix(h ^ (0x9e3779b97f4a7c15ULL * (trial_index + 1)));
  return h;
}

NoiseModel noise_from_json_string(const std::string& text, const CssCode& code) {
  json j = json::parse(text);
  NoiseModel nm;
  auto fill = [&code, &j](const char* key, std::vector<double>& out, double fallback) {
    if (j.contains(key)) {
      if (j[key].is_array())
        out = j[key].get<std::vector<double>>();
      else
        out.assign(code.n, j[key].get<double>());
    } else {
      out.assign(code.n, fallback);
    }
    if (out.size() != code.n)
      throw std::invalid_argument(std::string("noise file: `") + key + "` has " +
                                  std::to_string(out.size()) + " entries for n = " +
                                  std::to_string(code.n));
  };
  if (j.contains("p")) {
    double p = j["p"].get<double>();
    nm = uniform_depolarizing(code, p, 0.0);
  } else {
    fill("px", nm.px, 0.0);
    fill("py", nm.py, 0.0);
    fill("pz", nm.pz, 0.0);
  }
  auto fill_q = [&j](const char* key, std::vector<double>& out, std::size_t rows) {
    out.assign(rows, 0.0);
    if (!j.contains(key)) return;
    if (j[key].is_array()) {
      out = j[key].get<std::vector<double>>();
      if (out.size() != rows)
        throw std::invalid_argument(std::string("noise file: `") + key +
                                    "` does not match the check count");
    } else {
      out.assign(rows, j[key].get<double>());
    }
  };
  if (j.contains("q_hx") || j.contains("q_hz")) {
    fill_q("q_hx", nm.q_hx, code.hx.rows());
    fill_q("q_hz", nm.q_hz, code.hz.rows());
  } else {
    fill_q("q", nm.q_hx, code.hx.rows());
    fill_q("q", nm.q_hz, code.hz.rows());
  }
  nm.validate();
  return nm;
}

NoiseModel noise_from_json_file(const std::string& path, const CssCode& code) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open noise file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return noise_from_json_string(ss.str(), code);
}

namespace {

struct PointTally {
  std::size_t failures = 0;
  std::size_t solver_noisy = 0;
  std::vector<double> seconds;
};

PointTally run_point_chunk(const CssCode& code, const NoiseModel& noise, int rounds,
                           const DecodeOptions& opts, std::uint64_t master,
                           std::size_t point_index, std::size_t begin, std::size_t end) {
  PointTally tally;
  tally.seconds.reserve(end - begin);
  for (std::size_t t = begin; t < end; ++t) {
    TrialOutcome out = run_trial(code, noise, rounds, trial_seed(master, point_index, t), opts);
    if (out.failed()) ++tally.failures;
    if (!out.solver_clean) ++tally.solver_noisy;
    tally.seconds.push_back(out.seconds);
  }
  return tally;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  double idx = q * static_cast<double>(values.size() - 1);
  std::size_t lo = static_cast<std::size_t>(idx);
  std::size_t hi = std::min(lo + 1, values.size() - 1);
  double frac = idx - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

}  // namespace

std::vector<ExperimentRecord> mc_sweep(const ExperimentConfig& config) {
  config.validate();
  CssCode code = config.build_code();
  DecodeOptions opts = config.decode_options();

  std::vector<ExperimentRecord> done;
  if (!config.output.empty()) {
    std::ifstream probe(config.output);
    if (probe) {
      std::string line;
      while (std::getline(probe, line)) {
        if (line.empty()) continue;
        done.push_back(ExperimentRecord::from_json_line(line));
      }
    }
  }
  auto already_done = [&](double p, std::size_t point_index) {
    for (const auto& r : done)
      if (r.point_index == point_index && r.p == p && r.q == config.q &&
          r.rounds == config.rounds && r.trials == config.trials && r.seed == config.seed &&
          r.code_name == code.name)
        return true;
    return false;
  };

  std::vector<ExperimentRecord> records;
  std::ofstream sink;
  if (!config.output.empty()) sink.open(config.output, std::ios::app);

  for (std::size_t pi = 0; pi < config.p_grid.size(); ++pi) {
    const double p = config.p_grid[pi];
    if (already_done(p, pi)) {
      for (const auto& r : done)
        if (r.point_index == pi && r.p == p) records.push_back(r);
      continue;
    }
    NoiseModel noise = uniform_depolarizing(code, p, config.q);

    PointTally tally;
    if (config.jobs <= 1) {
      tally = run_point_chunk(code, noise, config.rounds, opts, config.seed, pi, 0,
                              config.trials);
    } else {
      // Trial-level fan-out; per-trial seeds keep results independent of the
      // chunking, and chunks merge in fixed order.
      std::size_t jobs = std::min<std::size_t>(config.jobs, config.trials);
      std::vector<std::future<PointTally>> futures;
      for (std::size_t c = 0; c < jobs; ++c) {
        std::size_t begin = config.trials * c / jobs;
        std::size_t end = config.trials * (c + 1) / jobs;
        futures.push_back(std::async(std::launch::async, run_point_chunk, std::cref(code),
                                     std::cref(noise), config.rounds, std::cref(opts),
                                     config.seed, pi, begin, end));
      }
      for (auto& fut : futures) {
        PointTally part = fut.get();
        tally.failures += part.failures;
        tally.solver_noisy += part.solver_noisy;
        tally.seconds.insert(tally.seconds.end(), part.seconds.begin(), part.seconds.end());
      }
    }

    ExperimentRecord rec;
    rec.code_name = code.name;
    rec.n = code.n;
    rec.k = code.k;
    rec.d = code.d;
    rec.p = p;
    rec.q = config.q;
    rec.rounds = config.rounds;
    rec.trials = config.trials;
    rec.failures = tally.failures;
    rec.solver_noisy = tally.solver_noisy;
    rec.p_l = static_cast<double>(tally.failures) / static_cast<double>(config.trials);
    auto ci = wilson_interval(tally.failures, config.trials);
    rec.ci_low = ci.low;
    rec.ci_high = ci.high;
    double sum = 0.0, mx = 0.0;
    for (double s : tally.seconds) {
      sum += s;
      mx = std::max(mx, s);
    }
    rec.mean_seconds = sum / static_cast<double>(tally.seconds.size());
    rec.p50_seconds = percentile(tally.seconds, 0.5);
    rec.p95_seconds = percentile(tally.seconds, 0.95);
    rec.max_seconds = mx;
    rec.seed = config.seed;
    rec.point_index = pi;

    // Interchange-format instance sizes and density for this grid point.
    {
      NoiseModel nm = uniform_depolarizing(code, std::max(p, 1e-3), config.q);
      EncodeOptions strict{.strict3 = true};
      BitVec zero(code.hz.rows() * static_cast<std::size_t>(config.rounds));
      std::vector<double> qz = nm.q_hz;
      WcnfFormula probe = build_spacetime_wcnf(code.hz, zero, nm.flip_priors(), qz,
                                               config.rounds, strict);
      rec.num_vars = static_cast<std::size_t>(probe.num_vars);
      rec.num_clauses = probe.clause_count();
      rec.actual_alpha = static_cast<double>(rec.num_clauses) / static_cast<double>(rec.num_vars);
    }

    records.push_back(rec);
    if (sink.is_open()) {
      sink << rec.to_json_line() << "\n";
      sink.flush();
    }
  }
  return records;
}

std::vector<ExperimentRecord> read_records_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open records file: " + path);
  std::vector<ExperimentRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(ExperimentRecord::from_json_line(line));
  }
  return records;
}

void write_records_jsonl(const std::string& path, const std::vector<ExperimentRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write records file: " + path);
  for (const auto& r : records) out << r.to_json_line() << "\n";
}

void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << "code,n,k,d,p,q,rounds,trials,failures,solver_noisy,p_l,ci_low,ci_high,"
         "mean_seconds,p50_seconds,p95_seconds,max_seconds,num_vars,num_clauses,"
         "actual_alpha,seed,point_index\n";
  out.precision(17);
  for (const auto& r : records) {
    out << r.code_name << "," << r.n << "," << r.k << "," << r.d << "," << r.p << "," << r.q
        << "," << r.rounds << "," << r.trials << "," << r.failures << "," << r.solver_noisy
        << "," << r.p_l << "," << r.ci_low << "," << r.ci_high << "," << r.mean_seconds << ","
        << r.p50_seconds << "," << r.p95_seconds << "," << r.max_seconds << "," << r.num_vars
        << "," << r.num_clauses << "," << r.actual_alpha << "," << r.seed << ","
        << r.point_index << "\n";
  }
}

}  // namespace cssdec
