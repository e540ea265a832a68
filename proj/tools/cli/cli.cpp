#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "erglab/arith/estimators.hpp"
#include "erglab/arith/sieve.hpp"
#include "erglab/arith/wtrick.hpp"
#include "erglab/errors.hpp"
#include "erglab/fft.hpp"
#include "erglab/gowers/gowers.hpp"
#include "erglab/parallel.hpp"
#include "report.hpp"

namespace erglab::cli {
namespace {

using arith::SieveTable;

// Subcommand defaults, applied after flags and config are merged.
struct Resolved {
  const RunConfig& cfg;

  std::uint64_t n_max(std::uint64_t fallback) const {
    if (cfg.n_max) return *cfg.n_max;
    if (!cfg.n_list.empty()) return cfg.n_list.back();
    return fallback;
  }
  int k(int fallback) const { return cfg.k.value_or(fallback); }
  std::string weight(const std::string& fallback) const { return cfg.weight.value_or(fallback); }
  std::string system(const std::string& fallback) const {
    if (cfg.systems.size() > 1) throw std::invalid_argument(cfg.subcommand + ": takes a single --system");
    return cfg.systems.empty() ? fallback : cfg.systems.front();
  }
  std::string observable(const std::string& fallback) const {
    if (cfg.observables.size() > 1) throw std::invalid_argument(cfg.subcommand + ": takes a single --obs");
    return cfg.observables.empty() ? fallback : cfg.observables.front();
  }
  systems::Point base_point(const systems::SystemSpec& sys) const {
    const std::string b = cfg.base.value_or("origin");
    if (b == "origin") return systems::origin_point(sys);
    if (b == "random") return systems::random_point(sys, cfg.seed.value_or(1));
    throw std::invalid_argument("--base must be 'origin' or 'random'");
  }
};

std::vector<std::uint64_t> check_list(std::vector<std::uint64_t> list, std::uint64_t n_max) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == 0 || (i > 0 && list[i] <= list[i - 1])) {
      throw std::invalid_argument("--n values must be positive and strictly increasing");
    }
    if (list[i] > n_max) throw std::invalid_argument("--n values must not exceed --nmax");
  }
  return list;
}

std::vector<std::uint64_t> decades(std::uint64_t lo, std::uint64_t n_max) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = lo; v <= n_max; v *= 10) out.push_back(v);
  if (out.empty() || out.back() != n_max) out.push_back(n_max);
  return out;
}

std::vector<std::uint64_t> powers_of_two(std::uint64_t lo, std::uint64_t n_max) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = lo; v <= n_max; v *= 2) out.push_back(v);
  if (out.empty() || out.back() != n_max) out.push_back(n_max);
  return out;
}

std::vector<std::uint64_t> n_values(const Resolved& r, std::uint64_t n_max, bool dyadic, std::uint64_t lo) {
  if (!r.cfg.n_list.empty()) return check_list(r.cfg.n_list, n_max);
  return dyadic ? powers_of_two(lo, n_max) : decades(lo, n_max);
}

SieveTable sieve_for(std::uint64_t top) { return arith::build_sieve(std::max<std::uint64_t>(top, 2)); }

bool is_wtricked(const std::string& w) { return w == "mangoldt_prime_wtricked"; }

std::uint64_t chosen_W(const RunConfig& cfg, std::uint64_t n) {
  return cfg.W ? *cfg.W : arith::default_W(std::max<std::uint64_t>(n, 3)).W;
}

// a(m) = A(m) f(T^m x) for m = 1..len.
FiniteSeq weighted_orbit(const Resolved& r, const std::string& weight_default, const std::string& sys_default,
                         const std::string& obs_default, std::size_t len, const SieveTable& table) {
  const std::string wtag = r.weight(weight_default);
  const auto w = parse_weight(wtag, chosen_W(r.cfg, len), r.cfg.residue);
  const auto sys = parse_system(r.system(sys_default));
  const auto obs = parse_observable(r.observable(obs_default));
  FiniteSeq a = cube::weight_sequence(w, len, table);
  const FiniteSeq orbit = systems::orbit_samples(sys, obs, r.base_point(sys), len);
  for (std::size_t m = 1; m <= len; ++m) a[m] *= orbit[m];
  return a;
}

FiniteSeq prefix(const FiniteSeq& a, std::size_t n) { return FiniteSeq::from_values(a.terms().first(n)); }

struct Outcome {
  CsvReport report;
  std::string summary;
};

std::string short_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

Outcome run_sieve(const Resolved& r) {
  const std::uint64_t n_max = r.n_max(1000000);
  if (n_max < 2) throw std::invalid_argument("sieve: --nmax must be at least 2");
  const auto list = n_values(r, n_max, false, 10);
  const SieveTable table = arith::build_sieve(n_max);
  Outcome o;
  o.report.extra_columns = {"psi", "upsilon", "pi", "li", "gap_ratio", "gap_bound", "max_gap_fraction"};
  // max over 2 <= x <= N of ((psi - upsilon)(x) / x) / gap_bound(x); at most 1 when the bound holds pointwise.
  double worst = 0.0;
  std::uint64_t scanned = 1;
  for (const auto n : list) {
    if (n < 2) throw std::invalid_argument("sieve: N values must be at least 2");
    for (std::uint64_t x = scanned + 1; x <= n; ++x) {
      const double xd = static_cast<double>(x);
      worst = std::max(worst, (table.psi_at(x) - table.upsilon_at(x)) / xd / arith::chebyshev_gap_bound(xd));
    }
    scanned = n;
    const auto c = arith::chebyshev(table, static_cast<double>(n));
    const auto p = arith::prime_pi_li(table, n);
    o.report.add(n, cplx(c.psi / static_cast<double>(n), 0.0),
                 {c.psi, c.upsilon, static_cast<double>(p.pi), p.li, (c.psi - c.upsilon) / static_cast<double>(n),
                  arith::chebyshev_gap_bound(static_cast<double>(n)), worst});
  }
  if (r.cfg.dump) {
    std::ofstream f(*r.cfg.dump, std::ios::binary);
    if (!f) throw io_error("cannot open dump file '" + *r.cfg.dump + "'");
    try {
      table.save(f);
    } catch (const format_error& e) {
      throw io_error(e.what());
    }
  }
  o.summary = "pi(" + std::to_string(n_max) + ") = " + std::to_string(table.pi_at(n_max)) +
              ", psi/N = " + short_double(o.report.rows.back().value.real());
  return o;
}

std::vector<std::string> per_vertex(const std::vector<std::string>& tags, const std::string& fallback, int k,
                                    const char* what) {
  const std::size_t v = (std::size_t{1} << k) - 1;
  if (tags.empty()) return std::vector<std::string>(v, fallback);
  if (tags.size() == 1) return std::vector<std::string>(v, tags.front());
  if (tags.size() != v) throw std::invalid_argument(std::string("expected 1 or 2^k - 1 ") + what + " tags");
  return tags;
}

cube::CubeSpec build_spec(const Resolved& r, int k, cube::Weight w, const std::string& sys_default,
                          const std::string& obs_default) {
  cube::CubeSpec spec;
  spec.k = k;
  spec.weight = std::move(w);
  for (const auto& t : per_vertex(r.cfg.systems, sys_default, k, "--system")) spec.systems.push_back(parse_system(t));
  for (const auto& t : per_vertex(r.cfg.observables, obs_default, k, "--obs")) {
    spec.observables.push_back(parse_observable(t));
  }
  spec.base_point = r.base_point(spec.systems.front());
  return spec;
}

void check_k(int k, int lo, int hi, const std::string& who) {
  if (k < lo || k > hi) {
    throw std::invalid_argument(who + ": --k must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

Outcome run_cube(const Resolved& r) {
  const int k = r.k(2);
  check_k(k, 1, 6, "cube");
  const std::uint64_t n_max = r.n_max(8192);
  const auto list = n_values(r, n_max, true, std::min<std::uint64_t>(512, n_max));
  const std::string wtag = r.weight("mobius");
  const std::uint64_t len = static_cast<std::uint64_t>(k) * n_max;
  const std::uint64_t W = chosen_W(r.cfg, len);
  auto spec = build_spec(r, k, parse_weight(wtag, W, r.cfg.residue), "rotation:golden", "character:1");
  const SieveTable table = sieve_for(is_wtricked(wtag) ? W * len + W : len);
  const std::string path = r.cfg.path.value_or("auto");
  if (path != "auto" && path != "direct" && path != "fft" && path != "both") {
    throw std::invalid_argument("cube: --path must be auto, direct, fft or both");
  }
  if ((path == "fft" || path == "both") && k != 2) throw std::invalid_argument("cube: the fft path needs k = 2");
  const bool prime_weight = wtag == "mangoldt_prime";
  Outcome o;
  if (path == "both") o.report.extra_columns = {"direct_re", "direct_im", "rel_diff"};
  if (prime_weight) {
    for (const char* c : {"norm_re", "norm_im", "norm_abs"}) o.report.extra_columns.push_back(c);
  }
  std::vector<std::pair<std::size_t, cplx>> values;
  std::vector<cplx> direct;
  if (path == "auto") {
    values = cube::decay_series(spec, std::vector<std::size_t>(list.begin(), list.end()), table).entries;
  } else {
    const auto seqs = cube::vertex_sequences(spec, n_max, table);
    for (const auto n : list) {
      if (path == "direct") {
        values.emplace_back(n, cube::grid_average(seqs, k, n));
        continue;
      }
      values.emplace_back(n, cube::fft_average_k2(seqs, n));
      if (path == "both") direct.push_back(cube::grid_average(seqs, k, n));
    }
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& [n, v] = values[i];
    std::vector<double> extra;
    if (path == "both") {
      extra = {direct[i].real(), direct[i].imag(), std::abs(v - direct[i]) / std::abs(direct[i])};
    }
    if (prime_weight) {
      const cplx z = v / cube::mangoldt_prime_scale(k, n, table);
      for (const double x : {z.real(), z.imag(), std::abs(z)}) extra.push_back(x);
    }
    o.report.add(n, v, std::move(extra));
  }
  o.summary = "k=" + std::to_string(k) + " weight=" + wtag + ": |A_N| = " + short_double(std::abs(values.back().second)) +
              " at N = " + std::to_string(values.back().first);
  return o;
}

Outcome run_ncsm(const Resolved& r) {
  const int k = r.k(2);
  check_k(k, 1, 6, "ncsm");
  const std::uint64_t n_max = r.n_max(4096);
  const auto list = n_values(r, n_max, true, std::min<std::uint64_t>(512, n_max));
  const std::uint64_t len = static_cast<std::uint64_t>(k) * n_max;
  const std::uint64_t W = chosen_W(r.cfg, len);
  auto spec = build_spec(r, k, cube::weight::MangoldtPrimeWTricked{arith::make_w_trick(W), 0}, "rotation:golden",
                         "const:1");
  const auto& residues = std::get<cube::weight::MangoldtPrimeWTricked>(spec.weight).params.residues;
  const SieveTable table = sieve_for(W * len + W);
  Outcome o;
  for (const auto b : residues) {
    o.report.extra_columns.push_back("b" + std::to_string(b) + "_re");
    o.report.extra_columns.push_back("b" + std::to_string(b) + "_im");
  }
  for (const auto n : list) {
    const auto res = cube::ncsm_residue_average(spec, n, table);
    std::vector<double> extra;
    for (const auto& v : res.per_residue) {
      extra.push_back(v.real());
      extra.push_back(v.imag());
    }
    o.report.add(n, res.average, std::move(extra));
  }
  o.summary = "k=" + std::to_string(k) + " W=" + std::to_string(W) + ": residue-averaged |value| = " +
              short_double(std::abs(o.report.rows.back().value)) + " at N = " +
              std::to_string(o.report.rows.back().n);
  return o;
}

Outcome run_gowers(const Resolved& r) {
  const int s = r.cfg.s.value_or(2);
  if (s != 2 && s != 3) throw std::invalid_argument("gowers: --s must be 2 or 3");
  const std::uint64_t n_max = r.n_max(100000);
  const auto list = n_values(r, n_max, false, std::min<std::uint64_t>(1000, n_max));
  const SieveTable table = sieve_for(n_max);
  const FiniteSeq a = weighted_orbit(r, "mobius", "identity", "const:1", n_max, table);
  Outcome o;
  if (r.cfg.cyclic.value_or(false)) {
    if (s != 2) throw std::invalid_argument("gowers: --cyclic compares U^2 only");
    o.report.extra_columns = {"modulus", "recursive", "rel_diff"};
    for (const auto n : list) {
      const std::size_t m = r.cfg.modulus ? *r.cfg.modulus : next_power_of_two(n);
      const FiniteSeq f = prefix(a, n);
      const double fast = gowers::u2_via_fft(f, m), slow = gowers::gowers_uk_cyclic(f, 2, m);
      o.report.add(n, cplx(fast, 0.0), {static_cast<double>(m), slow, std::abs(fast - slow) / slow});
    }
    double worst = 0.0;
    for (const auto& row : o.report.rows) worst = std::max(worst, row.extra[2]);
    o.summary = "cyclic U^2, FFT vs recursive: max relative difference " + short_double(worst);
    return o;
  }
  for (const auto n : list) o.report.add(n, cplx(gowers::gowers_uk_interval(prefix(a, n), s), 0.0));
  o.summary = "U^" + std::to_string(s) + " norm = " + short_double(o.report.rows.back().value.real()) + " at N = " +
              std::to_string(o.report.rows.back().n);
  return o;
}

Outcome run_ghk(const Resolved& r) {
  gowers::GhkParams p;
  p.k = r.k(2);
  check_k(p.k, 1, 3, "ghk");
  p.h_max = r.cfg.h_max.value_or(1000);
  p.n_samples = r.cfg.samples.value_or(50000);
  const auto sys = parse_system(r.system("rotation:golden"));
  const auto obs = parse_observable(r.observable("character:1"));
  const auto x = r.base_point(sys);
  const double v = gowers::ghk_estimate(sys, obs, x, p);
  gowers::GhkParams doubled = p;
  doubled.h_max = 2 * p.h_max;
  const double v2 = gowers::ghk_estimate(sys, obs, x, doubled);
  Outcome o;
  o.report.extra_columns = {"h_max", "value_2h"};
  o.report.add(p.n_samples, cplx(v, 0.0), {static_cast<double>(p.h_max), v2});
  o.summary = "GHK seminorm estimate (k=" + std::to_string(p.k) + ") = " + short_double(v) + " at H, " +
              short_double(v2) + " at 2H";
  return o;
}

Outcome run_nil(const Resolved& r) {
  const std::uint64_t n_max = r.n_max(100000);
  const auto list = n_values(r, n_max, false, std::min<std::uint64_t>(1000, n_max));
  const auto obs = parse_observable(r.observable("nil:zphase"));
  const SieveTable table = sieve_for(n_max);
  const auto ps = systems::default_quadratic_sequence();
  // Closed-form check on g(n) = (1, sqrt2, 0)^n, whose z-phase is e(sqrt2 C(n,2)) exactly.
  const double beta = std::sqrt(2.0);
  const auto check = systems::PolySeq::linear({1.0, beta, 0.0});
  const systems::Observable zphase = systems::NilLipschitz{systems::NilFunction::kZPhase};
  Outcome o;
  o.report.extra_columns = {"closed_form_err"};
  double worst = 0.0;
  std::uint64_t scanned = 0;
  for (const auto n : list) {
    for (std::uint64_t m = scanned + 1; m <= n; ++m) {
      const long double t = static_cast<long double>(m) * (m - 1) / 2 * static_cast<long double>(beta);
      const long double f = t - std::floor(t);
      const cplx expect = std::polar(1.0, static_cast<double>(2.0L * 3.14159265358979323846264338327950288L * f));
      worst = std::max(worst, std::abs(systems::eval_nilsequence(check, zphase, static_cast<std::int64_t>(m)) - expect));
    }
    scanned = n;
    o.report.add(n, systems::mobius_nil_correlation(ps, obs, table, n), {worst});
  }
  o.summary = "|mobius-nilsequence correlation| = " + short_double(std::abs(o.report.rows.back().value)) +
              " at N = " + std::to_string(o.report.rows.back().n) + ", closed-form error " + short_double(worst);
  return o;
}

Outcome run_nh(const Resolved& r) {
  const std::uint64_t n_max = r.n_max(1000000);
  const auto list = n_values(r, n_max, false, std::min<std::uint64_t>(1000, n_max));
  const SieveTable table = sieve_for(n_max);
  const FiniteSeq a = weighted_orbit(r, "ones", "identity", "const:1", n_max, table);
  std::vector<arith::NhPrimeGap> prime_gaps;
  double c = 0.0;
  for (const auto n : list) {
    prime_gaps.push_back(arith::nh_prime_gap(prefix(a, n), table));
    c = std::max(c, arith::nh_constant_for(prime_gaps.back().bound, static_cast<double>(n)));
  }
  if (r.cfg.c_abs) c = *r.cfg.c_abs;
  if (!(c > 0.0)) c = 1.0;
  Outcome o;
  o.report.extra_columns = {"rhs", "prime_lhs", "prime_bound", "c_abs"};
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto g = arith::nh_gap(prefix(a, list[i]), table, {c});
    o.report.add(list[i], cplx(g.lhs, 0.0), {g.rhs, prime_gaps[i].lhs, prime_gaps[i].bound, c});
  }
  bool holds = true;
  for (const auto& row : o.report.rows) holds = holds && row.value.real() <= row.extra[0];
  o.summary = "C = " + short_double(c) + ", lhs <= rhs at every N: " + (holds ? "yes" : "no");
  return o;
}

Outcome run_aperiodicity(const Resolved& r) {
  const std::uint64_t n_max = r.n_max(100000);
  const auto list = n_values(r, n_max, false, std::min<std::uint64_t>(1000, n_max));
  const std::uint64_t a_max = r.cfg.a_max.value_or(10);
  const SieveTable table = sieve_for(n_max);
  const std::string wtag = r.weight("mobius");
  const FiniteSeq w = cube::weight_sequence(parse_weight(wtag, chosen_W(r.cfg, n_max), r.cfg.residue), n_max, table);
  const auto sys = parse_system(r.system("rotation:golden"));
  const auto obs = parse_observable(r.observable("character:1"));
  const FiniteSeq orbit = systems::orbit_samples(sys, obs, r.base_point(sys), n_max);
  Outcome o;
  o.report.extra_columns = {"orth_ratio"};
  for (const auto n : list) {
    const FiniteSeq wn = prefix(w, n);
    o.report.add(n, cplx(arith::aperiodicity_profile(wn, a_max), 0.0),
                 {arith::stat_orth_ratio(wn, prefix(orbit, n))});
  }
  o.summary = "max progression mean of " + wtag + " = " + short_double(o.report.rows.back().value.real()) +
              " at N = " + std::to_string(o.report.rows.back().n);
  return o;
}

Outcome run_beta(const Resolved& r) {
  const int k = r.k(2);
  check_k(k, 1, 4, "beta");
  const auto bp = cube::beta_product(k, r.cfg.p_max.value_or(7), r.cfg.p_min.value_or(2));
  Outcome o;
  o.report.extra_columns = {"beta_p"};
  double partial = 1.0;
  std::string factors;
  for (const auto& [p, b] : bp.factors) {
    partial *= b;
    o.report.add(p, cplx(partial, 0.0), {b});
    factors += (factors.empty() ? "" : " ") + ("(" + std::to_string(p) + "," + short_double(b) + ")");
  }
  o.summary = "factors " + factors + " product " + short_double(bp.partial);
  return o;
}

Outcome run_wtrick(const Resolved& r) {
  const std::uint64_t n_max = r.n_max(100000);
  const std::uint64_t W = chosen_W(r.cfg, n_max);
  const auto params = arith::make_w_trick(W);
  if (n_max < 2 * W) throw std::invalid_argument("wtrick: --nmax must be at least 2 W");
  const std::uint64_t top_n = (n_max - W) / W;
  const auto list = n_values(r, top_n, false, std::min<std::uint64_t>(10, top_n));
  const SieveTable table = sieve_for(n_max);
  const FiniteSeq a = weighted_orbit(r, "ones", "identity", "const:1", n_max, table);
  Outcome o;
  o.report.extra_columns = {"rhs_re", "rhs_im", "boundary_re", "boundary_im", "residual"};
  double worst = 0.0;
  for (const auto n : list) {
    const auto c = cube::wtrick_decomposition_check(a, params, n, table);
    const double residual = std::abs(c.lhs - c.rhs - c.boundary);
    worst = std::max(worst, residual);
    o.report.add(n, c.lhs, {c.rhs.real(), c.rhs.imag(), c.boundary.real(), c.boundary.imag(), residual});
  }
  o.summary = "W=" + std::to_string(W) + ": max |lhs - rhs - boundary| = " + short_double(worst);
  return o;
}

Outcome dispatch(const RunConfig& cfg) {
  const Resolved r{cfg};
  const std::string& s = cfg.subcommand;
  if (s == "sieve") return run_sieve(r);
  if (s == "cube") return run_cube(r);
  if (s == "ncsm") return run_ncsm(r);
  if (s == "gowers") return run_gowers(r);
  if (s == "ghk") return run_ghk(r);
  if (s == "nil") return run_nil(r);
  if (s == "nh") return run_nh(r);
  if (s == "aperiodicity") return run_aperiodicity(r);
  if (s == "beta") return run_beta(r);
  if (s == "wtrick") return run_wtrick(r);
  throw std::invalid_argument("unknown subcommand '" + s + "'");
}

std::filesystem::path output_path(const RunConfig& cfg) {
  std::filesystem::path p = cfg.out.value_or(cfg.subcommand + ".csv");
  if (const char* dir = std::getenv("ERGLAB_OUT"); dir != nullptr && *dir != '\0') {
    p = std::filesystem::path(dir) / p.filename();
  }
  return p;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw io_error("cannot open '" + p.string() + "' for writing");
  f << text;
  f.flush();
  if (!f) throw io_error("write to '" + p.string() + "' failed");
}

template <class T>
void take(const nlohmann::json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<typename std::decay_t<decltype(dst)>>();
}

template <class T>
void take(const nlohmann::json& j, const char* key, std::optional<T>& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"sieve", "cube", "ncsm", "gowers", "ghk",
                                                 "nil", "nh", "aperiodicity", "beta", "wtrick"};
  return names;
}

std::string list_components() {
  std::string s = "subcommands:";
  for (const auto& n : subcommands()) s += " " + n;
  s += "\n";
  s += "weights: ones mobius liouville mangoldt_prime mangoldt_prime_wtricked custom:<path>\n";
  s += "systems: rotation:golden rotation:<alpha> skew:golden,sqrt2 skew:<alpha>,<beta> doubling nil:quadratic "
       "nil:<x>,<y>,<z> identity\n";
  s += "observables: character:<m1,...> const:<c> nil:zphase nil:twisted nil:tent\n";
  return s;
}

void merge_json(RunConfig& cfg, const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  static const std::vector<std::string> known = {
      "subcommand", "n_max", "k", "weight", "systems", "observables", "W", "residue", "seed", "out", "plot",
      "base", "n_list", "s", "p_max", "p_min", "h_max", "samples", "a_max", "c_abs", "dump", "threads", "path", "cyclic", "modulus"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  try {
    take(j, "subcommand", cfg.subcommand);
    take(j, "n_max", cfg.n_max);
    take(j, "k", cfg.k);
    take(j, "weight", cfg.weight);
    take(j, "systems", cfg.systems);
    take(j, "observables", cfg.observables);
    take(j, "W", cfg.W);
    take(j, "residue", cfg.residue);
    take(j, "seed", cfg.seed);
    take(j, "out", cfg.out);
    take(j, "plot", cfg.plot);
    take(j, "base", cfg.base);
    take(j, "n_list", cfg.n_list);
    take(j, "s", cfg.s);
    take(j, "p_max", cfg.p_max);
    take(j, "p_min", cfg.p_min);
    take(j, "h_max", cfg.h_max);
    take(j, "samples", cfg.samples);
    take(j, "a_max", cfg.a_max);
    take(j, "c_abs", cfg.c_abs);
    take(j, "dump", cfg.dump);
    take(j, "threads", cfg.threads);
    take(j, "path", cfg.path);
    take(j, "cyclic", cfg.cyclic);
    take(j, "modulus", cfg.modulus);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.threads) {
      if (*cfg.threads == 0) throw std::invalid_argument("--threads must be positive");
      set_thread_count(*cfg.threads);
    }
    const Outcome o = dispatch(cfg);
    const auto path = output_path(cfg);
    write_file(path, o.report.csv());
    if (cfg.plot.value_or(false)) {
      auto svg = path;
      svg.replace_extension(".svg");
      write_file(svg, o.report.svg(cfg.subcommand));
    }
    out << cfg.subcommand << ": " << o.summary << " -> " << path.string() << "\n";
    return kExitOk;
  } catch (const resource_limit_error& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const io_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const format_error& e) {
    err << "input format error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "invalid arguments: " << e.what() << "\nrun with --help for usage\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "invalid arguments: " << e.what() << "\nrun with --help for usage\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "invalid arguments: " << e.what() << "\n";
    return kExitUsage;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"erglab: weighted cube averages, Gowers norms and arithmetic weights"};
  app.set_version_flag("--version", "erglab 1.0");
  bool list = false;
  app.add_flag("--list", list, "List subcommands, weights, systems and observables");
  app.require_subcommand(0, 1);

  struct Raw {
    std::uint64_t n_max = 0, W = 0, residue = 0, seed = 0, p_max = 0, p_min = 0, h_max = 0, samples = 0, a_max = 0,
                  threads = 0;
    int k = 0, s = 0;
    double c_abs = 0.0;
    std::uint64_t modulus = 0;
    std::string weight, out, base, dump, config, path;
    bool cyclic = false;
    std::vector<std::string> systems, observables;
    std::vector<std::uint64_t> n_list;
    bool plot = false;
  } raw;

  for (const auto& name : subcommands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--nmax", raw.n_max, "Largest N (also sizes the sieve)");
    sub->add_option("--n", raw.n_list, "Explicit N values, strictly increasing")->delimiter(',');
    sub->add_option("--k", raw.k, "Cube order / seminorm order");
    sub->add_option("--s", raw.s, "Gowers norm order");
    sub->add_option("--weight", raw.weight, "Weight tag");
    sub->add_option("--system", raw.systems, "System tag (repeat for per-vertex systems)");
    sub->add_option("--obs", raw.observables, "Observable tag (repeat for per-vertex observables)");
    sub->add_option("--W", raw.W, "W-trick modulus (a primorial)");
    sub->add_option("--residue", raw.residue, "Residue r for mangoldt_prime_wtricked");
    sub->add_option("--seed", raw.seed, "Seed for randomized choices");
    sub->add_option("--base", raw.base, "Base point: origin or random");
    sub->add_option("--pmax", raw.p_max, "Largest prime in the beta product");
    sub->add_option("--pmin", raw.p_min, "Smallest prime in the beta product");
    sub->add_option("--hmax", raw.h_max, "GHK shift range");
    sub->add_option("--samples", raw.samples, "GHK orbit length");
    sub->add_option("--amax", raw.a_max, "Largest progression modulus for aperiodicity");
    sub->add_option("--c", raw.c_abs, "Absolute constant C (default: calibrated)");
    sub->add_option("--dump", raw.dump, "Write the sieve table to this binary file");
    sub->add_option("--threads", raw.threads, "Worker threads");
    sub->add_option("--out", raw.out, "CSV output path");
    sub->add_option("--config", raw.config, "JSON config file");
    sub->add_flag("--plot", raw.plot, "Also write an SVG plot next to the CSV");
    sub->add_option("--path", raw.path, "cube: auto, direct, fft or both");
    sub->add_flag("--cyclic", raw.cyclic, "gowers: cyclic U^2, FFT against the recursive formula");
    sub->add_option("--modulus", raw.modulus, "gowers --cyclic: power-of-two modulus");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "erglab 1.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  if (list) {
    out << list_components();
    return kExitOk;
  }
  const auto chosen = app.get_subcommands();
  if (chosen.empty()) {
    err << app.help();
    return kExitUsage;
  }
  CLI::App* sub = chosen.front();

  RunConfig cfg;
  if (!raw.config.empty()) {
    std::ifstream f(raw.config);
    if (!f) {
      err << "i/o error: cannot open config '" << raw.config << "'\n";
      return kExitIo;
    }
    std::stringstream text;
    text << f.rdbuf();
    try {
      merge_json(cfg, text.str());
    } catch (const std::invalid_argument& e) {
      err << "invalid arguments: " << e.what() << "\n";
      return kExitUsage;
    }
    if (!cfg.subcommand.empty() && cfg.subcommand != sub->get_name()) {
      err << "invalid arguments: config is for '" << cfg.subcommand << "', not '" << sub->get_name() << "'\n";
      return kExitUsage;
    }
  }
  cfg.subcommand = sub->get_name();
  auto given = [&](const char* flag) { return sub->count(flag) > 0; };
  if (given("--nmax")) cfg.n_max = raw.n_max;
  if (given("--n")) cfg.n_list = raw.n_list;
  if (given("--k")) cfg.k = raw.k;
  if (given("--s")) cfg.s = raw.s;
  if (given("--weight")) cfg.weight = raw.weight;
  if (given("--system")) cfg.systems = raw.systems;
  if (given("--obs")) cfg.observables = raw.observables;
  if (given("--W")) cfg.W = raw.W;
  if (given("--residue")) cfg.residue = raw.residue;
  if (given("--seed")) cfg.seed = raw.seed;
  if (given("--base")) cfg.base = raw.base;
  if (given("--pmax")) cfg.p_max = raw.p_max;
  if (given("--pmin")) cfg.p_min = raw.p_min;
  if (given("--hmax")) cfg.h_max = raw.h_max;
  if (given("--samples")) cfg.samples = raw.samples;
  if (given("--amax")) cfg.a_max = raw.a_max;
  if (given("--c")) cfg.c_abs = raw.c_abs;
  if (given("--dump")) cfg.dump = raw.dump;
  if (given("--threads")) cfg.threads = raw.threads;
  if (given("--out")) cfg.out = raw.out;
  if (given("--plot")) cfg.plot = raw.plot;
  if (given("--path")) cfg.path = raw.path;
  if (given("--cyclic")) cfg.cyclic = raw.cyclic;
  if (given("--modulus")) cfg.modulus = raw.modulus;
  return run(cfg, out, err);
}

}  // namespace erglab::cli
