// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
//
// dirunif: uniformity tests for directional data on S^(p-1).
//   dirunif test    run tests on a data file, JSON to stdout
//   dirunif sample  draw from the null or an alternative, write a data file
//   dirunif null    tabulate an analytic null law as CSV
//   dirunif power   level/power study table as CSV

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dirunif/circular.hpp"
#include "dirunif/highdim.hpp"
#include "dirunif/mc.hpp"
#include "dirunif/nulldist.hpp"
#include "dirunif/registry.hpp"
#include "dirunif/sample.hpp"
#include "dirunif/samplers.hpp"

namespace {

using namespace dirunif;

std::string fmt17(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

void write_outcomes(std::ostream& os, const std::vector<TestOutcome>& outcomes,
                    const ConfigEcho& config) {
  os << "[\n";
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    os << "  {\"test\": \"" << json_escape(o.test) << "\", "
       << "\"statistic\": " << fmt17(o.statistic) << ", "
       << "\"p_value\": " << fmt17(o.p_value) << ", "
       << "\"p_value_method\": \"" << to_string(o.method) << "\", "
       << "\"n\": " << o.n << ", \"p\": " << o.p << ", \"config\": {";
    bool first = true;
    for (const auto& [k, v] : config) {
      os << (first ? "" : ", ") << '"' << json_escape(k) << "\": \""
         << json_escape(v) << '"';
      first = false;
    }
    for (const auto& [k, v] : o.extras) {
      os << (first ? "" : ", ") << '"' << json_escape(k) << "\": \""
         << json_escape(v) << '"';
      first = false;
    }
    os << "}, \"warnings\": [";
    for (std::size_t w = 0; w < o.warnings.size(); ++w)
      os << (w ? ", " : "") << '"' << json_escape(o.warnings[w]) << '"';
    os << "]}" << (i + 1 < outcomes.size() ? "," : "") << "\n";
  }
  os << "]\n";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

RegimeSpec parse_regime(const std::string& text, bool& automatic) {
  automatic = false;
  if (text == "auto") {
    automatic = true;
    return {};
  }
  if (text == "sub") return {Regime::sub_exponential, 0.0};
  if (text == "super") return {Regime::super_exponential, 0.0};
  if (text.rfind("exp", 0) == 0) {
    RegimeSpec spec{Regime::exponential, 0.0};
    const auto colon = text.find(':');
    if (colon != std::string::npos)
      spec.beta = std::stod(text.substr(colon + 1));
    return spec;
  }
  throw CLI::ValidationError("--regime", "expected auto|sub|exp[:beta]|super");
}

AlternativeSpec parse_alternative(const std::string& text) {
  const auto parts = split(text, ':');
  AlternativeSpec alt;
  if (parts.empty()) throw CLI::ValidationError("--alternative", "empty spec");
  const std::string& fam = parts[0];
  if (fam == "uniform") {
    if (parts.size() != 1)
      throw CLI::ValidationError("--alternative", "uniform takes no parameter");
    return alt;
  }
  if (fam == "vmf" || fam == "axial") {
    if (parts.size() != 2)
      throw CLI::ValidationError("--alternative", fam + " needs :<kappa>");
    return fam == "vmf" ? AlternativeSpec::vmf(std::stod(parts[1]))
                        : AlternativeSpec::axial(std::stod(parts[1]));
  }
  if (fam == "cardioid") {
    if (parts.size() != 2)
      throw CLI::ValidationError("--alternative", "cardioid needs :<rho>");
    return AlternativeSpec::cardioid(std::stod(parts[1]));
  }
  if (fam == "mixture8") {
    if (parts.size() != 4)
      throw CLI::ValidationError(
          "--alternative", "mixture8 needs :<cardioid|vmf>:<param>:<weight>");
    alt.family = AlternativeSpec::Family::mixture8;
    if (parts[1] == "cardioid")
      alt.base = AlternativeSpec::MixtureBase::cardioid;
    else if (parts[1] == "vmf")
      alt.base = AlternativeSpec::MixtureBase::vmf;
    else
      throw CLI::ValidationError("--alternative", "base must be cardioid|vmf");
    alt.base_param = std::stod(parts[2]);
    alt.kappa_mix = std::stod(parts[3]);
    return alt;
  }
  throw CLI::ValidationError("--alternative", "unknown family '" + fam + "'");
}

std::vector<double> parse_mu(const std::string& text) {
  std::vector<double> mu;
  for (const auto& part : split(text, ','))
    if (!part.empty()) mu.push_back(std::stod(part));
  double s = 0.0;
  for (double v : mu) s += v * v;
  if (s <= 0.0) throw CLI::ValidationError("--mu", "zero vector");
  for (double& v : mu) v /= std::sqrt(s);
  return mu;
}

// ------------------------------------------------------------------ test --
int cmd_test(const std::string& input, const std::string& format,
             const std::string& tests, const std::string& pvalue,
             std::size_t mc_replicates, std::uint64_t seed, double alpha,
             bool highdim, unsigned workers, bool renormalize,
             double renorm_band, std::size_t projection_k,
             const std::string& regime_text, bool rao_normal, bool hr_centered,
             int rothman_trunc, int jupp_cap, bool coherence_packing) {
  IngestOptions ingest_options;
  ingest_options.format = parse_format(format);
  ingest_options.renormalize = renormalize;
  ingest_options.renorm_band = renorm_band;
  const auto sample = ingest(input, ingest_options);

  RunOptions options;
  if (pvalue == "auto")
    options.method = RunOptions::Method::automatic;
  else if (pvalue == "exact")
    options.method = RunOptions::Method::exact;
  else if (pvalue == "asymptotic")
    options.method = RunOptions::Method::asymptotic;
  else if (pvalue == "mc")
    options.method = RunOptions::Method::monte_carlo;
  else
    throw CLI::ValidationError("--pvalue", "expected auto|exact|asymptotic|mc");
  options.mc_replicates = mc_replicates;
  options.seed = seed;
  options.workers = workers;
  options.projection_k = projection_k;
  options.rao_normal = rao_normal;
  options.coherence_packing_roles = coherence_packing;
  options.hermans_rasson_centered = hr_centered;
  options.rothman_truncation = rothman_trunc;
  options.jupp_cap = jupp_cap;
  options.regime = parse_regime(regime_text, options.regime_auto);

  std::vector<std::string> ids;
  if (tests == "all")
    ids = default_test_ids(sample.dim(), highdim);
  else
    ids = split(tests, ',');

  std::vector<TestOutcome> outcomes;
  for (const auto& id : ids) outcomes.push_back(run_test(id, sample, options));

  ConfigEcho config{{"input", input},
                    {"format", format},
                    {"pvalue", pvalue},
                    {"mc_replicates", std::to_string(mc_replicates)},
                    {"seed", std::to_string(seed)},
                    {"alpha", fmt17(alpha)}};
  write_outcomes(std::cout, outcomes, config);
  return 0;
}

// ---------------------------------------------------------------- sample --
int cmd_sample(const std::string& family, std::size_t n, std::size_t p,
               double kappa, double rho, double kappa_mix,
               const std::string& base, const std::string& mu_text,
               std::uint64_t seed, const std::string& out,
               const std::string& format) {
  AlternativeSpec alt;
  if (family == "uniform") {
    alt = AlternativeSpec::uniform();
  } else if (family == "vmf") {
    alt = AlternativeSpec::vmf(kappa);
  } else if (family == "axial") {
    alt = AlternativeSpec::axial(kappa);
  } else if (family == "cardioid") {
    alt = AlternativeSpec::cardioid(rho);
  } else if (family == "mixture8") {
    alt.family = AlternativeSpec::Family::mixture8;
    alt.kappa_mix = kappa_mix;
    const auto parts = split(base, ':');
    if (parts.size() != 2 || (parts[0] != "cardioid" && parts[0] != "vmf"))
      throw CLI::ValidationError("--base", "expected cardioid:<rho>|vmf:<kappa>");
    alt.base = parts[0] == "cardioid" ? AlternativeSpec::MixtureBase::cardioid
                                      : AlternativeSpec::MixtureBase::vmf;
    alt.base_param = std::stod(parts[1]);
  } else {
    throw CLI::ValidationError("--family", "unknown family '" + family + "'");
  }
  if (!mu_text.empty()) alt.mu = parse_mu(mu_text);
  const auto sample = draw_alternative(alt, n, p, seed);
  emit(sample, out, parse_format(format));
  return 0;
}

// ------------------------------------------------------------------ null --
int cmd_null(const std::string& law, double from, double to, double step) {
  if (step <= 0.0) throw CLI::ValidationError("--step", "must be positive");
  const auto parts = split(law, ':');
  const std::string& name = parts[0];
  auto param = [&](std::size_t i) {
    if (parts.size() <= i)
      throw CLI::ValidationError("--law", name + " needs a parameter");
    return std::stod(parts[i]);
  };
  std::function<double(double)> eval;
  std::string column = "value";
  if (name == "kolmogorov") {
    eval = [](double x) { return kolmogorov_cdf(x); };
    column = "cdf";
  } else if (name == "kuiper") {
    const std::size_t n = static_cast<std::size_t>(param(1));
    eval = [n](double x) { return kuiper_pvalue(x, n); };
    column = "upper_tail";
  } else if (name == "watson") {
    eval = [](double x) { return watson_pvalue(x); };
    column = "upper_tail";
  } else if (name == "ajne") {
    eval = [](double x) { return ajne_pvalue(x); };
    column = "upper_tail";
  } else if (name == "hodges-ajne") {
    eval = [](double x) { return hodges_ajne_pvalue(x); };
    column = "upper_tail";
  } else if (name == "range") {
    const std::size_t n = static_cast<std::size_t>(param(1));
    eval = [n](double x) { return range_cdf(x, n); };
    column = "cdf";
  } else if (name == "chisq") {
    const double df = param(1);
    eval = [df](double x) { return chisq_pvalue(x, df); };
    column = "upper_tail";
  } else if (name == "normal") {
    const double mean = param(1);
    const double var = param(2);
    eval = [mean, var](double x) {
      return normal_pvalue(x, mean, var, NormalTail::upper);
    };
    column = "upper_tail";
  } else if (name == "f1") {
    eval = [](double x) {
      return extreme_value_cdf(x, {Regime::sub_exponential, 0.0});
    };
    column = "cdf";
  } else if (name == "f2") {
    const double beta = param(1);
    eval = [beta](double x) {
      return extreme_value_cdf(x, {Regime::exponential, beta});
    };
    column = "cdf";
  } else if (name == "f3") {
    eval = [](double x) {
      return extreme_value_cdf(x, {Regime::super_exponential, 0.0});
    };
    column = "cdf";
  } else {
    throw CLI::ValidationError("--law", "unknown law '" + name + "'");
  }
  char buf[64];
  std::cout << "x," << column << "\n";
  for (double x = from; x <= to + 1e-12; x += step) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::cout << buf << ",";
    std::snprintf(buf, sizeof buf, "%.17g", eval(x));
    std::cout << buf << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- power --
int cmd_power(const std::string& tests, const std::string& alternative,
              const std::string& mu_text, std::size_t n, std::size_t p,
              double alpha, std::size_t replicates, std::size_t mc_null,
              std::uint64_t seed, unsigned workers) {
  AlternativeSpec alt = parse_alternative(alternative);
  if (!mu_text.empty()) alt.mu = parse_mu(mu_text);
  std::vector<StudyCell> grid;
  for (const auto& id : split(tests, ','))
    grid.push_back({id, alt, n, p, alpha});
  StudyConfig cfg;
  cfg.replicates = replicates;
  cfg.mc_null_size = mc_null;
  cfg.seed = seed;
  cfg.workers = workers;
  const auto rows = level_power_study(grid, cfg);
  char buf[64];
  std::cout << "test,alternative,n,p,alpha,replicates,rejections,rate,std_error\n";
  for (const auto& row : rows) {
    std::cout << row.cell.test_id << "," << alternative << "," << row.cell.n
              << "," << row.cell.p << ",";
    std::snprintf(buf, sizeof buf, "%.17g", row.cell.alpha);
    std::cout << buf << "," << row.replicates << "," << row.rejections << ",";
    std::snprintf(buf, sizeof buf, "%.17g", row.rate);
    std::cout << buf << ",";
    std::snprintf(buf, sizeof buf, "%.17g", row.std_error);
    std::cout << buf << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniformity tests on the circle and hypersphere"};
  app.require_subcommand(1);

  // test
  auto* test = app.add_subcommand("test", "run uniformity tests on a file");
  std::string input, format = "angles-rad", tests = "all", pvalue = "auto";
  std::size_t mc_replicates = 999;
  std::uint64_t seed = 1;
  double alpha = 0.05;
  bool highdim = false, renormalize = false, rao_normal = false,
       hr_centered = false, coherence_packing = false;
  unsigned workers = 0;
  double renorm_band = 1e-3;
  std::size_t projection_k = 0;
  std::string regime = "auto";
  int rothman_trunc = kRothmanDefaultTruncation;
  int jupp_cap = kJuppDefaultCap;
  test->add_option("--input", input, "data file")->required();
  test->add_option("--format", format, "angles-rad|angles-deg|vectors");
  test->add_option("--test", tests, "comma list of test ids, or 'all'");
  test->add_option("--pvalue", pvalue, "auto|exact|asymptotic|mc");
  test->add_option("--mc-replicates", mc_replicates, "Monte Carlo replicates");
  test->add_option("--seed", seed, "master seed");
  test->add_option("--alpha", alpha, "level echoed into the config");
  test->add_flag("--highdim", highdim, "include rayleigh-hd and coherence in 'all'");
  test->add_option("--workers", workers, "worker threads (0 = hardware)");
  test->add_flag("--renormalize", renormalize, "rescale near-unit rows");
  test->add_option("--renorm-band", renorm_band, "renormalization band");
  test->add_option("--k", projection_k, "projection count (0 = default)");
  test->add_option("--regime", regime, "auto|sub|exp[:beta]|super");
  test->add_flag("--rao-normal", rao_normal,
                 "use the documented normal reading of the Rao law");
  test->add_flag("--coherence-packing", coherence_packing,
                 "pair the coherence statistic with the dimension/count "
                 "roles under which it converges");
  test->add_flag("--hr-centered", hr_centered,
                 "Hermans-Rasson kernel without additive constants");
  test->add_option("--rothman-trunc", rothman_trunc, "rothman series cutoff");
  test->add_option("--jupp-cap", jupp_cap, "jupp selector cap");

  // sample
  auto* sample = app.add_subcommand("sample", "draw a sample to a file");
  std::string family = "uniform", out, mu_text, base = "cardioid:0.5",
              sformat = "vectors";
  std::size_t sn = 100, sp = 2;
  double kappa = 0.0, rho = 0.0, kappa_mix = 0.0;
  std::uint64_t sseed = 1;
  sample->add_option("--family", family,
                     "uniform|vmf|cardioid|mixture8|axial");
  sample->add_option("--n", sn, "sample size");
  sample->add_option("--p", sp, "dimension");
  sample->add_option("--kappa", kappa, "vMF/axial concentration");
  sample->add_option("--rho", rho, "cardioid amplitude in [0, 1/2]");
  sample->add_option("--kappa-mix", kappa_mix, "mixture weight in [0, 1]");
  sample->add_option("--base", base, "mixture base: cardioid:<rho>|vmf:<kappa>");
  sample->add_option("--mu", mu_text, "location, comma separated (normalized)");
  sample->add_option("--seed", sseed, "seed");
  sample->add_option("--out", out, "output file")->required();
  sample->add_option("--format", sformat, "angles-rad|angles-deg|vectors");

  // null
  auto* null = app.add_subcommand("null", "tabulate a null law as CSV");
  std::string law;
  double from = 0.0, to = 1.0, step = 0.01;
  null->add_option("--law", law,
                   "kolmogorov|kuiper:<n>|watson|ajne|hodges-ajne|range:<n>|"
                   "chisq:<df>|normal:<mean>:<var>|f1|f2:<beta>|f3")
      ->required();
  null->add_option("--from", from, "grid start")->required();
  null->add_option("--to", to, "grid end")->required();
  null->add_option("--step", step, "grid step")->required();

  // power
  auto* power = app.add_subcommand("power", "level/power study as CSV");
  std::string ptests = "rayleigh", alternative = "uniform", pmu;
  std::size_t pn = 100, pp = 2, preps = 1000, pmc = 9999;
  double palpha = 0.05;
  std::uint64_t pseed = 1;
  unsigned pworkers = 0;
  power->add_option("--tests", ptests, "comma list of test ids");
  power->add_option("--alternative", alternative,
                    "uniform|vmf:<k>|axial:<k>|cardioid:<rho>|"
                    "mixture8:<base>:<param>:<weight>");
  power->add_option("--mu", pmu, "location, comma separated");
  power->add_option("--n", pn, "sample size");
  power->add_option("--p", pp, "dimension");
  power->add_option("--alpha", palpha, "level");
  power->add_option("--replicates", preps, "datasets per cell");
  power->add_option("--mc-null", pmc, "null draws for Monte Carlo tests");
  power->add_option("--seed", pseed, "master seed");
  power->add_option("--workers", pworkers, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (test->parsed())
      return cmd_test(input, format, tests, pvalue, mc_replicates, seed, alpha,
                      highdim, workers, renormalize, renorm_band, projection_k,
                      regime, rao_normal, hr_centered, rothman_trunc, jupp_cap,
                      coherence_packing);
    if (sample->parsed())
      return cmd_sample(family, sn, sp, kappa, rho, kappa_mix, base, mu_text,
                        sseed, out, sformat);
    if (null->parsed()) return cmd_null(law, from, to, step);
    if (power->parsed())
      return cmd_power(ptests, alternative, pmu, pn, pp, palpha, preps, pmc,
                       pseed, pworkers);
  } catch (const std::exception& e) {
    std::cerr << "dirunif: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
