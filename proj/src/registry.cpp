// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#include "dirunif/registry.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "dirunif/circular.hpp"
#include "dirunif/highdim.hpp"
#include "dirunif/projection.hpp"

namespace dirunif {

namespace {

// Fixed stream for tabulating chi-squared mixture laws; keeping it
// independent of the user seed makes every law a fixed table.
constexpr std::uint64_t kMixtureLawSeed = 0x6d69787475726531ULL;
constexpr std::size_t kMixtureLawReplicates = 100000;

const ChiSqMixture& cached_mixture(const std::string& key,
                                   const SobolevWeights& weights,
                                   std::size_t p, unsigned workers) {
  static std::mutex mutex;
  static std::map<std::string, ChiSqMixture> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    std::vector<double> w2(weights.v.size()), dims(weights.v.size());
    for (std::size_t k = 0; k < weights.v.size(); ++k) {
      w2[k] = weights.v[k] * weights.v[k];
      dims[k] = eigendim(static_cast<int>(p), static_cast<int>(k) + 1);
    }
    it = cache
             .emplace(key, ChiSqMixture(std::move(w2), std::move(dims),
                                        kMixtureLawReplicates,
                                        kMixtureLawSeed, workers))
             .first;
  }
  return it->second;
}

}  // namespace

std::string to_string(PvMethod method) {
  switch (method) {
    case PvMethod::exact:
      return "exact";
    case PvMethod::asymptotic:
      return "asymptotic";
    case PvMethod::monte_carlo:
      return "monte-carlo";
  }
  return "?";
}

SobolevWeights load_weights_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open weights file '" + path.string() +
                                "'");
  SobolevWeights w;
  w.label = "custom:" + path.string();
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double v;
    if (!(ls >> v))
      throw std::invalid_argument("bad weight line '" + line + "' in " +
                                  path.string());
    w.v.push_back(v);
  }
  if (w.v.empty())
    throw std::invalid_argument("weights file '" + path.string() +
                                "' has no entries");
  return w;
}

ResolvedTest resolve_test(const std::string& id) {
  ResolvedTest t;
  t.id = id;
  const auto colon = id.find(':');
  t.family = colon == std::string::npos ? id : id.substr(0, colon);
  static const char* kPlain[] = {
      "kuiper",    "watson",  "hodges-ajne",    "range",       "rao",
      "greenwood", "rayleigh", "ajne",          "bingham",     "gine-g",
      "gine-f",    "hermans-rasson", "pycke",   "jupp",        "projection",
      "rayleigh-hd", "coherence"};
  bool plain = false;
  for (const char* name : kPlain)
    if (t.family == name) plain = true;
  if (plain) {
    if (colon != std::string::npos)
      throw std::invalid_argument("test '" + t.family +
                                  "' takes no inline parameter");
    return t;
  }
  if (t.family == "rothman") {
    if (colon == std::string::npos)
      throw std::invalid_argument("rothman needs a parameter: rothman:<t>");
    t.rothman_t = std::stod(id.substr(colon + 1));
    if (!(t.rothman_t > 0.0 && t.rothman_t < 1.0))
      throw std::invalid_argument("rothman t must lie in (0,1)");
    return t;
  }
  if (t.family == "sobolev") {
    if (colon == std::string::npos)
      throw std::invalid_argument(
          "sobolev needs a weights file: sobolev:<path>");
    t.custom_weights = load_weights_file(id.substr(colon + 1));
    return t;
  }
  throw std::invalid_argument("unknown test id '" + id + "'");
}

std::vector<std::string> default_test_ids(std::size_t p, bool highdim) {
  std::vector<std::string> ids;
  if (p == 2)
    ids = {"kuiper", "watson", "hodges-ajne", "range", "rao", "greenwood",
           "rayleigh", "ajne", "bingham", "gine-g", "gine-f",
           "hermans-rasson", "pycke", "jupp", "projection"};
  else
    ids = {"rayleigh", "ajne", "bingham", "gine-g", "gine-f", "jupp",
           "projection"};
  if (highdim) {
    ids.push_back("rayleigh-hd");
    ids.push_back("coherence");
  }
  return ids;
}

bool is_circular_only(const std::string& family) {
  return family == "kuiper" || family == "watson" || family == "hodges-ajne" ||
         family == "range" || family == "rao" || family == "greenwood" ||
         family == "rothman" || family == "hermans-rasson" ||
         family == "pycke";
}

bool is_highdim(const std::string& family) {
  return family == "rayleigh-hd" || family == "coherence";
}

std::size_t min_sample_size(const std::string& family) {
  if (family == "range" || family == "rao" || family == "greenwood" ||
      family == "hermans-rasson" || family == "pycke" || family == "jupp" ||
      family == "coherence")
    return 2;
  return 1;
}

McTail natural_tail(const std::string& family) {
  if (family == "range" || family == "projection" || family == "coherence")
    return McTail::lower;
  if (family == "greenwood") return McTail::two_sided;
  return McTail::upper;
}

namespace {

RegimeSpec resolve_regime(const RunOptions& options, std::size_t n,
                          std::size_t p) {
  if (!options.regime_auto) return options.regime;
  // The ratio is log(count)/dimension; the published pairing reads the
  // observation count as the dimension axis.
  if (options.coherence_packing_roles)
    return regime_classify(p, static_cast<double>(n));
  return regime_classify(n, static_cast<double>(p));
}

std::vector<std::vector<double>> projection_directions(std::size_t k,
                                                       std::size_t p,
                                                       std::uint64_t seed) {
  Rng rng(seed, 0);
  std::vector<std::vector<double>> dirs(k, std::vector<double>(p));
  for (auto& d : dirs) {
    for (;;) {
      double s = 0.0;
      for (double& v : d) {
        v = rng.normal();
        s += v * v;
      }
      if (s > 1e-24) {
        const double inv = 1.0 / std::sqrt(s);
        for (double& v : d) v *= inv;
        break;
      }
    }
  }
  return dirs;
}

}  // namespace

StatisticFn statistic_for(const ResolvedTest& test, const RunOptions& options,
                          std::size_t n, std::size_t p) {
  const std::string& f = test.family;
  if (f == "kuiper") return [](const DirectionalSample& s) { return kuiper(s); };
  if (f == "watson") return [](const DirectionalSample& s) { return watson(s); };
  if (f == "hodges-ajne")
    return [](const DirectionalSample& s) { return hodges_ajne(s); };
  if (f == "range")
    return [](const DirectionalSample& s) { return circular_range(s); };
  if (f == "rao")
    return [](const DirectionalSample& s) { return rao_spacings(s); };
  if (f == "greenwood")
    return [](const DirectionalSample& s) { return greenwood(s); };
  if (f == "rayleigh")
    return [](const DirectionalSample& s) { return rayleigh(s); };
  if (f == "ajne") return [](const DirectionalSample& s) { return ajne(s); };
  if (f == "bingham")
    return [](const DirectionalSample& s) { return bingham(s); };
  if (f == "gine-g")
    return [](const DirectionalSample& s) { return gine_g(s); };
  if (f == "gine-f")
    return [](const DirectionalSample& s) { return gine_f(s); };
  if (f == "hermans-rasson") {
    const auto kernel = options.hermans_rasson_centered
                            ? CircularKernel::hermans_rasson_centered
                            : CircularKernel::hermans_rasson;
    return [kernel](const DirectionalSample& s) {
      return circular_kernel_statistic(s, kernel);
    };
  }
  if (f == "pycke")
    return [](const DirectionalSample& s) {
      return circular_kernel_statistic(s, CircularKernel::pycke);
    };
  if (f == "rothman") {
    const double t = test.rothman_t;
    const int trunc = options.rothman_truncation;
    return [t, trunc](const DirectionalSample& s) {
      return rothman(s, t, trunc);
    };
  }
  if (f == "sobolev") {
    const SobolevWeights w = test.custom_weights;
    return [w](const DirectionalSample& s) { return sobolev_statistic(s, w); };
  }
  if (f == "jupp") {
    const int cap = options.jupp_cap;
    return [cap](const DirectionalSample& s) { return jupp(s, cap).statistic; };
  }
  if (f == "projection") {
    const std::size_t k =
        options.projection_k ? options.projection_k
                             : ProjectionConfig::default_k(p);
    const auto dirs = projection_directions(k, p, options.seed);
    return [dirs](const DirectionalSample& s) {
      double best = 1.0;
      for (const auto& d : dirs)
        best = std::min(best, single_projection_test(s, d).pvalue);
      return best;
    };
  }
  if (f == "rayleigh-hd")
    return [](const DirectionalSample& s) { return rayleigh_standardized(s); };
  if (f == "coherence") {
    const RegimeSpec regime = resolve_regime(options, n, p);
    const bool packing = options.coherence_packing_roles;
    return [regime, packing](const DirectionalSample& s) {
      return coherence_statistic(s, regime, packing).statistic;
    };
  }
  throw std::invalid_argument("unknown test family '" + f + "'");
}

PvMethod default_method(const ResolvedTest& test, std::size_t p) {
  const std::string& f = test.family;
  if (f == "range") return PvMethod::exact;
  if (f == "rao" || f == "gine-g" || f == "gine-f" ||
      f == "hermans-rasson" || f == "pycke" || f == "projection")
    return PvMethod::monte_carlo;
  // The printed Ajne series is the circular null; the general-p weight
  // sequence is not published, so the sphere versions calibrate by
  // Monte Carlo.
  if (f == "ajne" && p != 2) return PvMethod::monte_carlo;
  return PvMethod::asymptotic;
}

namespace {

void append_mixture_notes(TestOutcome& out, const SobolevWeights& w,
                          std::size_t p, double tail_bound) {
  out.extras.emplace_back("mixture_terms", std::to_string(w.v.size()));
  out.extras.emplace_back("mixture_replicates",
                          std::to_string(kMixtureLawReplicates));
  if (tail_bound > 0.0) {
    std::ostringstream os;
    os << "series truncated at K=" << w.v.size()
       << "; dropped tail mass of sum v_k^2 d_{" << p << ",k} is below "
       << tail_bound;
    out.warnings.push_back(os.str());
  }
}

}  // namespace

TestOutcome run_test(const std::string& id, const DirectionalSample& sample,
                     const RunOptions& options) {
  const ResolvedTest test = resolve_test(id);
  const std::size_t n = sample.n();
  const std::size_t p = sample.dim();
  if (is_circular_only(test.family) && p != 2)
    throw std::invalid_argument(test.family + " requires p=2 (data has p=" +
                                std::to_string(p) + ")");
  if (n < min_sample_size(test.family))
    throw std::invalid_argument(test.family + " requires n >= " +
                                std::to_string(min_sample_size(test.family)));
  if (test.family == "coherence" && p <= 2)
    throw std::invalid_argument("coherence requires p > e (data has p=" +
                                std::to_string(p) + ")");

  TestOutcome out;
  out.test = test.id;
  out.n = n;
  out.p = p;

  PvMethod method = PvMethod::asymptotic;
  switch (options.method) {
    case RunOptions::Method::automatic:
      method = default_method(test, p);
      break;
    case RunOptions::Method::exact:
      method = PvMethod::exact;
      break;
    case RunOptions::Method::asymptotic:
      method = PvMethod::asymptotic;
      break;
    case RunOptions::Method::monte_carlo:
      method = PvMethod::monte_carlo;
      break;
  }
  out.method = method;

  // Families with bespoke handling first.
  if (test.family == "projection") {
    const std::size_t k = options.projection_k
                              ? options.projection_k
                              : ProjectionConfig::default_k(p);
    out.extras.emplace_back("projections", std::to_string(k));
    if (options.method == RunOptions::Method::exact)
      throw std::invalid_argument("projection has no exact law");
    if (k == 1) {
      // Single projection: the Kolmogorov limit is the published law, so it
      // is the automatic choice; a forced Monte Carlo run calibrates the
      // same statistic against uniform replicates.
      const auto dirs = projection_directions(1, p, options.seed);
      const auto res = single_projection_test(sample, dirs[0]);
      out.statistic = res.statistic;
      if (options.method == RunOptions::Method::monte_carlo) {
        McConfig cfg{options.mc_replicates, options.seed, options.workers,
                     false};
        const StatisticFn ks = [d = dirs[0]](const DirectionalSample& s) {
          return projection_ks_statistic(s, d);
        };
        out.statistic = ks(sample);
        out.p_value = mc_pvalue(sample, ks, cfg, McTail::upper).pvalue;
        out.method = PvMethod::monte_carlo;
      } else {
        out.p_value = res.pvalue;
        out.method = PvMethod::asymptotic;
      }
      return out;
    }
    if (options.method == RunOptions::Method::asymptotic)
      throw std::invalid_argument(
          "aggregated projection is calibrated by Monte Carlo only");
    ProjectionConfig cfg;
    cfg.k = k;
    cfg.seed = options.seed;
    cfg.mc_replicates = options.mc_replicates;
    cfg.workers = options.workers;
    const auto res = multi_projection_test(sample, cfg);
    out.statistic = res.statistic;
    out.p_value = res.pvalue;
    out.method = PvMethod::monte_carlo;
    return out;
  }

  if (test.family == "coherence") {
    const RegimeSpec regime = resolve_regime(options, n, p);
    const auto res =
        coherence_statistic(sample, regime, options.coherence_packing_roles);
    if (options.coherence_packing_roles)
      out.extras.emplace_back("coherence_roles", "packing");
    out.statistic = res.statistic;
    out.extras.emplace_back("coherence", std::to_string(res.coherence));
    switch (regime.regime) {
      case Regime::sub_exponential:
        out.extras.emplace_back("regime", "sub-exponential");
        break;
      case Regime::exponential:
        out.extras.emplace_back(
            "regime", "exponential beta=" + std::to_string(res.regime.beta));
        break;
      case Regime::super_exponential:
        out.extras.emplace_back("regime", "super-exponential");
        break;
    }
    if (res.degenerate) {
      out.warnings.push_back(
          "coherence equals 1 (duplicate or antipodal pair); degenerate "
          "statistic, p-value reported as 0");
      out.p_value = 0.0;
      out.method = PvMethod::asymptotic;
      return out;
    }
    if (method == PvMethod::monte_carlo) {
      McConfig cfg{options.mc_replicates, options.seed, options.workers, false};
      const auto res_mc = mc_pvalue(
          sample, statistic_for(test, options, n, p), cfg, McTail::lower);
      out.p_value = res_mc.pvalue;
      return out;
    }
    if (method == PvMethod::exact)
      throw std::invalid_argument("coherence has no exact law");
    out.p_value = res.pvalue;
    out.method = PvMethod::asymptotic;
    return out;
  }

  // Everything else: statistic once, then the p-value by method.
  const StatisticFn stat = statistic_for(test, options, n, p);
  double value = stat(sample);

  if (test.family == "jupp") {
    const auto res = jupp(sample, options.jupp_cap);
    value = res.statistic;
    out.extras.emplace_back("jupp_order", std::to_string(res.order));
    if (res.cap_hit)
      out.warnings.push_back(
          "jupp selector still rising at the order cap " +
          std::to_string(options.jupp_cap) + "; statistic truncated");
  }
  out.statistic = value;

  if (method == PvMethod::monte_carlo) {
    McTail tail = natural_tail(test.family);
    if (options.tail_override) {
      if (*options.tail_override != tail)
        out.warnings.push_back(
            "tail override differs from the statistic's natural rejection "
            "direction");
      tail = *options.tail_override;
    }
    McConfig cfg{options.mc_replicates, options.seed, options.workers, false};
    const auto res = mc_pvalue(sample, stat, cfg, tail);
    out.p_value = res.pvalue;
    return out;
  }

  const std::string& f = test.family;
  if (method == PvMethod::exact) {
    if (f != "range")
      throw std::invalid_argument(f + " has no exact null law");
    out.p_value = range_cdf(value, n);
    return out;
  }

  // Asymptotic laws.
  if (f == "kuiper") {
    out.p_value = kuiper_pvalue(value, n);
  } else if (f == "watson") {
    out.p_value = watson_pvalue(value);
  } else if (f == "hodges-ajne") {
    out.p_value = hodges_ajne_pvalue(value);
  } else if (f == "ajne") {
    if (p != 2)
      throw std::invalid_argument(
          "ajne's printed series is the circular null; use Monte Carlo for "
          "p > 2");
    out.p_value = ajne_pvalue(value);
  } else if (f == "range") {
    out.p_value = range_cdf(value, n);  // the exact law doubles as the limit
    out.method = PvMethod::exact;
  } else if (f == "greenwood") {
    out.p_value = normal_pvalue(value, 0.0, 4.0, NormalTail::two_sided);
  } else if (f == "rao") {
    if (!options.rao_normal)
      throw std::invalid_argument(
          "rao has no trustworthy analytic law; use Monte Carlo or pass the "
          "normal-approximation flag");
    const double var =
        4.0 * kPi * kPi * (2.0 * std::exp(-1.0) - 5.0 * std::exp(-2.0));
    out.p_value = normal_pvalue(value, 0.0, var, NormalTail::upper);
    out.warnings.push_back(
        "normal approximation N(0, 4 pi^2 (2/e - 5/e^2)) is a documented "
        "reading of the stated law, not ground truth");
  } else if (f == "rayleigh") {
    out.p_value = chisq_pvalue(value, static_cast<double>(p));
  } else if (f == "bingham") {
    out.p_value = chisq_pvalue(
        value, static_cast<double>((p - 1) * (p + 2)) / 2.0);
  } else if (f == "jupp") {
    out.p_value = chisq_pvalue(value, static_cast<double>(p));
  } else if (f == "rayleigh-hd") {
    out.p_value = normal_pvalue(value, 0.0, 1.0, NormalTail::upper);
  } else if (f == "rothman") {
    const auto w = rothman_weights(test.rothman_t, options.rothman_truncation);
    const std::string key = "rothman:" + std::to_string(test.rothman_t) + ":" +
                            std::to_string(options.rothman_truncation);
    const auto& law = cached_mixture(key, w, p, options.workers);
    out.p_value = law.pvalue(value);
    append_mixture_notes(
        out, w, p,
        2.0 / (kPi * kPi * static_cast<double>(options.rothman_truncation)));
  } else if (f == "sobolev") {
    const std::string key = "sobolev:" + test.custom_weights.label;
    const auto& law = cached_mixture(key, test.custom_weights, p,
                                     options.workers);
    out.p_value = law.pvalue(value);
    append_mixture_notes(out, test.custom_weights, p, 0.0);
  } else if (f == "gine-g" || f == "gine-f" || f == "hermans-rasson" ||
             f == "pycke") {
    throw std::invalid_argument(
        f + " has no analytic law here; use Monte Carlo");
  } else {
    throw std::invalid_argument("no asymptotic law wired for '" + f + "'");
  }
  return out;
}

}  // namespace dirunif
