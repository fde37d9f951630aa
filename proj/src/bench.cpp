#include "hrkin/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <new>
#include <numbers>
#include <random>
#include <stdexcept>

#include "hrkin/classic.hpp"
#include "hrkin/controller.hpp"
#include "hrkin/dls.hpp"
#include "hrkin/errors.hpp"
#include "hrkin/jacobian.hpp"
#include "hrkin/kernels.hpp"
#include "hrkin/sector.hpp"

namespace hrkin {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct PhaseTimes {
  double fk = 0, jac = 0, dls = 0, step = 0;
};

// Applies the clamped update in place; the integration part of a step.
void integrate(std::vector<double>& q, const std::vector<double>& qdot,
               double dt, double clamp) {
  double norm2 = 0.0;
  for (double v : qdot) norm2 += v * v;
  const double norm = std::sqrt(norm2);
  double scale = dt;
  if (norm > clamp) scale *= clamp / norm;
  kernels::axpy(static_cast<int>(qdot.size()), scale, qdot.data(), q.data());
}

std::array<double, 6> random_twist(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::array<double, 6> u{};
  for (double& v : u) v = dist(rng);
  return u;
}

BenchRecord time_classic(const ArmLayout& layout, int repeats,
                         std::mt19937_64& rng, double damping, bool naive) {
  std::uniform_real_distribution<double> angle(-0.5 * std::numbers::pi,
                                               0.5 * std::numbers::pi);
  FullConfiguration q = FullConfiguration::zeros(layout.num_links);
  for (double& v : q.v) v = angle(rng);
  const std::array<double, 6> u = random_twist(rng);

  BenchRecord rec;
  rec.method = naive ? "naive" : "classic";
  rec.state = -1;
  rec.num_links = layout.num_links;
  rec.active_dofs = 2 * layout.functional_links();
  rec.control_vars = rec.active_dofs;
  rec.repeats = repeats;

  std::vector<PhaseTimes> times;
  ClassicCache cache;
  DlsWorkspace ws;
  std::vector<double> qdot;
  std::vector<double> scratch(static_cast<size_t>(rec.active_dofs), 0.0);
  for (int rep = 0; rep < repeats + 1; ++rep) {
    PhaseTimes pt;
    const auto step0 = Clock::now();

    auto t0 = Clock::now();
    Jacobian jac;
    if (naive) {
      const HomTransform end = classic_forward_naive(layout, q);
      pt.fk = seconds_since(t0);
      (void)end;
      t0 = Clock::now();
      jac = classic_jacobian_naive(layout, q);
    } else {
      classic_forward(layout, q, cache);
      pt.fk = seconds_since(t0);
      t0 = Clock::now();
      jac = classic_jacobian(layout, cache);
    }
    pt.jac = seconds_since(t0);

    t0 = Clock::now();
    dls_apply(jac, damping, u.data(), 6, ws, qdot);
    pt.dls = seconds_since(t0);

    integrate(scratch, qdot, 1.0, 0.5);
    pt.step = seconds_since(step0);
    if (rep > 0) times.push_back(pt);  // first run is warmup
  }
  std::vector<double> fk, jc, dl, st;
  for (const PhaseTimes& pt : times) {
    fk.push_back(pt.fk);
    jc.push_back(pt.jac);
    dl.push_back(pt.dls);
    st.push_back(pt.step);
  }
  rec.t_fk_s = median(fk);
  rec.t_jac_s = median(jc);
  rec.t_dls_s = median(dl);
  rec.t_step_s = median(st);
  return rec;
}

// Random reduced configuration with every shared bend inside the closed-form
// validity domain (u-1)*|theta| < 2*pi.
ReducedConfiguration random_reduced(const SectorDecomposition& decomp,
                                    std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-0.5 * std::numbers::pi,
                                               0.5 * std::numbers::pi);
  std::uniform_real_distribution<double> frac(0.5, 0.95);
  std::uniform_int_distribution<int> sign(0, 1);
  ReducedConfiguration Q;
  Q.v.resize(static_cast<size_t>(decomp.q_size()));
  for (int t = 0; t < static_cast<int>(decomp.sectors.size()); ++t) {
    const Sector& s = decomp.sectors[t];
    const int off = decomp.sector_q_offset[t];
    Q.v[off] = angle(rng);
    Q.v[off + 1] = angle(rng);
    if (s.body_count > 0) {
      const double cap =
          2.0 * std::numbers::pi / std::max(1, s.body_count - 1);
      const double mag = frac(rng) * std::min(cap, 0.5 * std::numbers::pi);
      Q.v[off + 2] = sign(rng) ? mag : -mag;
    }
  }
  return Q;
}

BenchRecord time_dynamic(const ArmLayout& layout, int state_index, int repeats,
                         std::mt19937_64& rng, double damping) {
  const SectorDecomposition decomp = decompose(layout);
  const ReducedConfiguration Q = random_reduced(decomp, rng);
  const std::array<double, 6> u = random_twist(rng);

  // Correctness gate: never emit timings for a mismatching configuration.
  const FullConfiguration q = expand_configuration(decomp, layout, Q);
  const HomTransform classic_end = classic_forward(layout, q);
  const HomTransform reduced_end = reduced_forward(decomp, layout, Q);
  const double divergence = max_abs_diff(classic_end, reduced_end);
  if (!(divergence <= 1e-9)) {
    throw SelfCheckFailure(
        "bench: classic/sector-form disagreement " + std::to_string(divergence) +
        " at state " + std::to_string(state_index));
  }

  const auto [control, mobile] = count_dofs(decomp);
  BenchRecord rec;
  rec.method = "dynamic";
  rec.state = state_index;
  rec.num_links = layout.num_links;
  rec.active_dofs = mobile;
  rec.control_vars = control;
  rec.repeats = repeats;

  std::vector<PhaseTimes> times;
  ReducedCache cache;
  DlsWorkspace ws;
  std::vector<double> qdot;
  std::vector<double> scratch(static_cast<size_t>(decomp.q_size()), 0.0);
  for (int rep = 0; rep < repeats + 1; ++rep) {
    PhaseTimes pt;
    const auto step0 = Clock::now();

    auto t0 = Clock::now();
    reduced_forward(decomp, layout, Q, cache);
    pt.fk = seconds_since(t0);

    t0 = Clock::now();
    const Jacobian jac = reduced_jacobian(decomp, layout, cache);
    pt.jac = seconds_since(t0);

    t0 = Clock::now();
    dls_apply(jac, damping, u.data(), 6, ws, qdot);
    pt.dls = seconds_since(t0);

    integrate(scratch, qdot, 1.0, 0.5);
    pt.step = seconds_since(step0);
    if (rep > 0) times.push_back(pt);
  }
  std::vector<double> fk, jc, dl, st;
  for (const PhaseTimes& pt : times) {
    fk.push_back(pt.fk);
    jc.push_back(pt.jac);
    dl.push_back(pt.dls);
    st.push_back(pt.step);
  }
  rec.t_fk_s = median(fk);
  rec.t_jac_s = median(jc);
  rec.t_dls_s = median(dl);
  rec.t_step_s = median(st);
  return rec;
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchOptions& options) {
  if (options.num_links < 1 || options.repeats < 1) {
    throw std::invalid_argument("run_bench: num_links and repeats must be >= 1");
  }
  const int states = state_count(options.num_links);
  if (options.state >= states) {
    throw std::invalid_argument("run_bench: state " + std::to_string(options.state) +
                                " out of range (have " + std::to_string(states) +
                                ")");
  }
  std::mt19937_64 rng(options.seed);
  std::vector<BenchRecord> records;

  auto guarded = [&](const std::string& method, int state, auto&& fn) {
    try {
      records.push_back(fn());
    } catch (const std::bad_alloc&) {
      BenchRecord rec;
      rec.method = method;
      rec.state = state;
      rec.num_links = options.num_links;
      rec.repeats = options.repeats;
      rec.skipped = true;
      records.push_back(rec);
    }
  };

  ControllerState state = initial_coarse_state(options.num_links, 1.0);
  guarded("classic", -1, [&] {
    return time_classic(state.layout, options.repeats, rng, options.damping,
                        /*naive=*/false);
  });
  if (options.include_naive) {
    guarded("naive", -1, [&] {
      return time_classic(state.layout, options.repeats, rng, options.damping,
                          /*naive=*/true);
    });
  }
  for (int a = 0; a < states; ++a) {
    if (options.state < 0 || options.state == a) {
      guarded("dynamic", a, [&] {
        return time_dynamic(state.layout, a, options.repeats, rng,
                            options.damping);
      });
    }
    if (a + 1 < states) state = halving_step(state);
  }
  return records;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "method,state,num_links,active_dofs,control_vars,t_fk_s,t_jac_s,"
         "t_dls_s,t_step_s,repeats,skipped\n";
  char buf[64];
  for (const BenchRecord& r : records) {
    out << r.method << ',' << r.state << ',' << r.num_links << ','
        << r.active_dofs << ',' << r.control_vars;
    for (double t : {r.t_fk_s, r.t_jac_s, r.t_dls_s, r.t_step_s}) {
      std::snprintf(buf, sizeof(buf), "%.9e", t);
      out << ',' << buf;
    }
    out << ',' << r.repeats << ',' << (r.skipped ? 1 : 0) << '\n';
  }
}

double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_loglog_slope: need >= 2 matching points");
  }
  const size_t n = x.size();
  double mx = 0, my = 0;
  std::vector<double> lx(n), ly(n);
  for (size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::invalid_argument("fit_loglog_slope: values must be positive");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double num = 0, den = 0;
  for (size_t i = 0; i < n; ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  if (den == 0.0) throw std::invalid_argument("fit_loglog_slope: degenerate x");
  return num / den;
}

}  // namespace hrkin
