#include "entlab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "entlab/errors.hpp"

namespace entlab {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(std::string(what) + ": cannot parse '" + std::string(text) + "' as a number");
  }
  return v;
}

}  // namespace

std::vector<double> GridRange::values() const {
  std::vector<double> v(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    v[k] = steps == 1 ? min
                      : min + (max - min) * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
  if (steps > 1) v.back() = max;
  return v;
}

void GridRange::validate(std::string_view name) const {
  const std::string n(name);
  if (!std::isfinite(min) || !std::isfinite(max)) throw ConfigError(n + ": bounds must be finite");
  if (steps < 1) throw ConfigError(n + ": steps must be >= 1");
  if (min > max) throw ConfigError(n + ": min " + num(min) + " exceeds max " + num(max));
}

GridRange GridRange::parse(std::string_view text) {
  const auto first = text.find(':');
  if (first == std::string_view::npos) {
    const double v = parse_double(text, "range");
    return {v, v, 1};
  }
  const auto second = text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw ConfigError("range '" + std::string(text) + "' must have the form min:max:steps");
  }
  GridRange r;
  r.min = parse_double(text.substr(0, first), "range min");
  r.max = parse_double(text.substr(first + 1, second - first - 1), "range max");
  const auto steps_text = text.substr(second + 1);
  long long steps = 0;
  auto [ptr, ec] = std::from_chars(steps_text.data(), steps_text.data() + steps_text.size(), steps);
  if (ec != std::errc() || ptr != steps_text.data() + steps_text.size() || steps < 1) {
    throw ConfigError("range steps '" + std::string(steps_text) + "' must be a positive integer");
  }
  r.steps = static_cast<std::size_t>(steps);
  r.validate("range");
  return r;
}

void SweepConfig::validate() const {
  alpha.validate("alpha");
  dt.validate("dt");
  if (c0_values.empty()) throw ConfigError("c0: at least one value is required");
  for (double c0 : c0_values) {
    if (!std::isfinite(c0) || c0 < 0.0 || c0 > 1.0) {
      throw ConfigError("c0: value " + num(c0) + " outside [0, 1]");
    }
  }
  if (domain == DomainPolicy::kStrict) {
    for (double a : {alpha.min, alpha.max}) {
      if (!in_domain({family, a})) {
        throw ConfigError("alpha " + num(a) + " is outside the domain of state " +
                          std::string(to_string(family)) +
                          (family == Family::kState1 ? " [2, 5]" : " (0, 1)") +
                          "; pass the out-of-domain override to sweep it anyway");
      }
    }
  }
}

std::size_t SweepConfig::grid_size() const { return c0_values.size() * alpha.steps * dt.steps; }

std::size_t worker_count_from_env() {
  if (const char* env = std::getenv("ENTLAB_WORKERS")) {
    const std::string_view text(env);
    long long n = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec != std::errc() || ptr != text.data() + text.size() || n < 1) {
      throw ConfigError("ENTLAB_WORKERS must be a positive integer, got '" + std::string(text) + "'");
    }
    return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

SweepRecord make_record(Family family, double alpha, double c0, double dt,
                        const DensityMatrix& reduced, bool out_of_domain) {
  const CriteriaResult cr = evaluate(reduced);
  SweepRecord rec;
  rec.family = family;
  rec.alpha = alpha;
  rec.c0 = c0;
  rec.dt = dt;
  rec.negativity = cr.negativity;
  rec.realignment = cr.realignment;
  rec.red_min_a = cr.reduction.min_eig_side_a;
  rec.red_min_b = cr.reduction.min_eig_side_b;
  rec.label = cr.label;
  rec.out_of_domain = out_of_domain;
  return rec;
}

}  // namespace

SweepRecord evaluate_point(Family family, double alpha, double c0, double dt,
                           const Evolver& evolver, DomainPolicy domain) {
  const DensityMatrix rho = horodecki_state({family, alpha}, domain);
  const DensityMatrix reduced = evolver.evolve_and_reduce(rho, aux_qubit(c0), dt);
  return make_record(family, alpha, c0, dt, reduced, !in_domain({family, alpha}));
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  config.validate();

  std::vector<double> c0s = config.c0_values;
  std::sort(c0s.begin(), c0s.end());
  const std::vector<double> alphas = config.alpha.values();
  const std::vector<double> dts = config.dt.values();

  const Evolver evolver(config.variant, config.embedding);
  std::vector<ComplexMatrix> propagators;
  propagators.reserve(dts.size());
  for (double dt : dts) propagators.push_back(evolver.propagator(dt));

  std::vector<QubitState> qubits;
  for (double c0 : c0s) qubits.push_back(aux_qubit(c0));

  std::vector<DensityMatrix> states;
  std::vector<bool> out_of_domain;
  states.reserve(alphas.size());
  for (double a : alphas) {
    states.push_back(horodecki_state({config.family, a}, config.domain));
    out_of_domain.push_back(!in_domain({config.family, a}));
  }

  const std::size_t n_dt = dts.size();
  const std::size_t n_alpha = alphas.size();
  const std::size_t total = c0s.size() * n_alpha * n_dt;
  std::vector<SweepRecord> records(total);

  const std::size_t workers =
      std::min(total, config.workers != 0 ? config.workers : worker_count_from_env());
  constexpr std::size_t kChunk = 32;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::size_t error_index = std::numeric_limits<std::size_t>::max();
  std::string error_text;

  auto work = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= total) return;
      const std::size_t end = std::min(total, begin + kChunk);
      for (std::size_t idx = begin; idx < end; ++idx) {
        const std::size_t i_dt = idx % n_dt;
        const std::size_t i_alpha = (idx / n_dt) % n_alpha;
        const std::size_t i_c0 = idx / (n_dt * n_alpha);
        try {
          const DensityMatrix reduced =
              evolver.evolve_and_reduce(states[i_alpha], qubits[i_c0], propagators[i_dt]);
          records[idx] = make_record(config.family, alphas[i_alpha], c0s[i_c0], dts[i_dt], reduced,
                                     out_of_domain[i_alpha]);
        } catch (const std::exception& e) {
          std::lock_guard lock(error_mutex);
          if (idx < error_index) {
            error_index = idx;
            error_text = "sweep failed at family=" + std::string(to_string(config.family)) +
                         " alpha=" + num(alphas[i_alpha]) + " c0=" + num(c0s[i_c0]) +
                         " dt=" + num(dts[i_dt]) + ": " + e.what();
          }
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failed) throw NumericalError(error_text);
  return records;
}

std::vector<std::vector<SweepRecord>> group_by_c0(std::span<const SweepRecord> records) {
  std::vector<std::vector<SweepRecord>> groups;
  for (const auto& rec : records) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return g.front().family == rec.family && g.front().c0 == rec.c0;
    });
    if (it == groups.end()) {
      groups.push_back({rec});
    } else {
      it->push_back(rec);
    }
  }
  return groups;
}

RegionReport find_negative_region(std::span<const SweepRecord> records) {
  RegionReport rep;
  if (records.empty()) return rep;
  const Family family = records.front().family;
  const double c0 = records.front().c0;
  for (const auto& rec : records) {
    if (rec.family != family || rec.c0 != c0) {
      throw ParameterError("find_negative_region: records mix several (family, c0) sweeps");
    }
  }

  std::vector<const SweepRecord*> negative;
  for (const auto& rec : records) {
    if (rec.red_min() < -tol::kReduction) negative.push_back(&rec);
  }
  if (negative.empty()) return rep;

  rep.negative_points = negative.size();
  rep.dt_lo = rep.dt_hi = negative.front()->dt;
  rep.alpha_lo = rep.alpha_hi = negative.front()->alpha;
  for (const auto* rec : negative) {
    rep.dt_lo = std::min(rep.dt_lo, rec->dt);
    rep.dt_hi = std::max(rep.dt_hi, rec->dt);
    rep.alpha_lo = std::min(rep.alpha_lo, rec->alpha);
    rep.alpha_hi = std::max(rep.alpha_hi, rec->alpha);
  }
  std::stable_sort(negative.begin(), negative.end(),
                   [](const auto* a, const auto* b) { return a->red_min() < b->red_min(); });
  const std::size_t keep = std::min<std::size_t>(10, negative.size());
  for (std::size_t i = 0; i < keep; ++i) rep.witness_points.push_back(*negative[i]);
  return rep;
}

std::vector<Crossing> zero_crossings(std::span<const SweepRecord> records, Quantity quantity,
                                     double tolerance) {
  // (c0, dt) -> (alpha, value) in alpha order.
  std::map<std::pair<double, double>, std::vector<std::pair<double, double>>> lines;
  for (const auto& rec : records) {
    const double v = quantity == Quantity::kNegativity ? rec.negativity : rec.realignment;
    lines[{rec.c0, rec.dt}].emplace_back(rec.alpha, v);
  }
  std::vector<Crossing> out;
  for (auto& [key, pts] : lines) {
    std::stable_sort(pts.begin(), pts.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 1; k < pts.size(); ++k) {
      const double prev = pts[k - 1].second;
      const double cur = pts[k].second;
      if (prev <= tolerance && cur > tolerance) out.push_back({key.first, key.second, pts[k].first, true});
      if (prev >= -tolerance && cur < -tolerance) {
        out.push_back({key.first, key.second, pts[k].first, false});
      }
    }
  }
  return out;
}

}  // namespace entlab
