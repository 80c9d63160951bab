#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "ecg/core_arith.hpp"
#include "ecg/curve_lab.hpp"
#include "ecg/golden.hpp"
#include "ecg/occurrence.hpp"
#include "ecg/report.hpp"
#include "ecg/sieve_estimates.hpp"

namespace {

using ecg::i64;
using ecg::u128;
using ecg::u64;

struct GlobalOpts {
  std::string format = "csv";
  std::string output;
  int threads = 0;
  u64 mem_budget = ecg::RunOptions{}.mem_budget_bytes;
  bool timing = false;
};

void strip_underscores(std::string& s) {
  s.erase(std::remove(s.begin(), s.end(), '_'), s.end());
}

// integers accept underscores as digit separators, e.g. 1_000_000
const CLI::Validator kPlainInt(
    [](std::string& s) {
      strip_underscores(s);
      return std::string();
    },
    "", "int");

u64 env_mem_budget(u64 fallback) {
  const char* env = std::getenv("ECG_MEM_BUDGET_BYTES");
  if (env == nullptr) return fallback;
  std::string text = env;
  strip_underscores(text);
  size_t used = 0;
  u64 value = std::stoull(text, &used);
  if (used != text.size())
    throw std::invalid_argument("ECG_MEM_BUDGET_BYTES is not an integer: " +
                                std::string(env));
  return value;
}

ecg::RunOptions make_run_options(const GlobalOpts& g) {
  ecg::RunOptions opt;
  opt.threads = g.threads;
  opt.mem_budget_bytes = g.mem_budget;
  return opt;
}

ecg::CensusOptions make_census_options(const GlobalOpts& g) {
  ecg::CensusOptions opt;
  opt.threads = g.threads;
  return opt;
}

void emit(const GlobalOpts& g, const ecg::Report& rep) {
  ecg::ReportFormat fmt = ecg::parse_format(g.format);
  if (g.output.empty()) {
    ecg::write_report(std::cout, rep, fmt);
    return;
  }
  std::ofstream out(g.output, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file: " + g.output);
  ecg::write_report(out, rep, fmt);
}

void emit_lines(const GlobalOpts& g, const std::vector<std::string>& lines) {
  if (g.output.empty()) {
    for (const std::string& line : lines) std::cout << line << '\n';
    return;
  }
  std::ofstream out(g.output, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file: " + g.output);
  for (const std::string& line : lines) out << line << '\n';
}

ecg::CountStrategy parse_strategy(const std::string& name) {
  if (name == "auto") return ecg::CountStrategy::kAuto;
  if (name == "direct") return ecg::CountStrategy::kDirect;
  return ecg::CountStrategy::kPrimeDriven;  // guarded by IsMember
}

std::string strategy_name(ecg::CountStrategy s) {
  switch (s) {
    case ecg::CountStrategy::kDirect: return "direct";
    case ecg::CountStrategy::kPrimeDriven: return "prime_driven";
    default: return "auto";
  }
}

// largest j >= 0 with j^2 < 4k, overflow-free
u64 hasse_j_limit(u64 k) {
  u64 j = 2 * ecg::isqrt_u64(k) + 1;
  while (u128(j) * j >= u128(4) * k) --j;
  return j;
}

int run_occurs(const GlobalOpts& g, u64 m, u64 k, bool witnesses_only) {
  ecg::OccurrenceResult res = ecg::occurs(m, k, true);  // validates the domain
  u64 base = k * m * m;
  u64 jmax = hasse_j_limit(k);
  ecg::Report rep;
  rep.columns = {"m", "k", "j", "candidate", "witness", "occurs"};
  u64 occ = res.occurs ? 1 : 0;
  for (i64 j = -i64(jmax); j <= i64(jmax); ++j) {
    u64 cand = j >= 0 ? base + u64(j) * m + 1 : base - u64(-j) * m + 1;
    u64 witness = ecg::is_prime(cand) ? 1 : 0;
    if (witnesses_only && witness == 0) continue;
    rep.add_row({m, k, j, cand, witness, occ});
  }
  emit(g, rep);
  return 0;
}

int run_count(const GlobalOpts& g, u64 max_m, u64 max_k,
              const std::string& strategy, const std::string& marginals) {
  ecg::Marginals marg = ecg::Marginals::kNone;
  if (marginals == "per-k") marg = ecg::Marginals::kPerK;
  if (marginals == "per-m") marg = ecg::Marginals::kPerM;
  ecg::CountReport res = ecg::count_S(max_m, max_k, parse_strategy(strategy),
                                      make_run_options(g), marg);
  if (g.timing)
    std::cerr << "elapsed_seconds=" << res.elapsed_seconds << '\n';
  std::string used = strategy_name(res.strategy_used);
  ecg::Report rep;
  if (marg == ecg::Marginals::kNone) {
    rep.columns = {"max_m", "max_k", "strategy", "count"};
    rep.add_row({max_m, max_k, used, res.count});
  } else if (marg == ecg::Marginals::kPerK) {
    rep.columns = {"max_m", "max_k", "strategy", "k", "count"};
    for (u64 k = 1; k <= max_k; ++k)
      rep.add_row({max_m, max_k, used, k, res.per_k[k]});
  } else {
    rep.columns = {"max_m", "max_k", "strategy", "m", "count"};
    for (u64 m = 1; m <= max_m; ++m)
      rep.add_row({max_m, max_k, used, m, res.per_m[m]});
  }
  emit(g, rep);
  return 0;
}

int run_count_r(const GlobalOpts& g, u64 max_m, u64 max_k) {
  ecg::Report rep;
  rep.columns = {"max_m", "max_k", "count"};
  rep.add_row({max_m, max_k, ecg::count_R(max_m, max_k, make_run_options(g))});
  emit(g, rep);
  return 0;
}

std::vector<u64> parse_grid(std::string text) {
  strip_underscores(text);
  std::vector<u64> grid;
  size_t start = 0;
  while (start <= text.size()) {
    size_t pos = text.find(',', start);
    std::string tok = pos == std::string::npos ? text.substr(start)
                                               : text.substr(start, pos - start);
    if (tok.empty())
      throw std::invalid_argument("empty entry in --k-grid");
    size_t used = 0;
    grid.push_back(std::stoull(tok, &used));
    if (used != tok.size())
      throw std::invalid_argument("bad --k-grid entry: " + tok);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return grid;
}

int run_density_scan(const GlobalOpts& g, u64 max_m, const std::string& grid) {
  std::vector<ecg::DensityPoint> points =
      ecg::density_scan(max_m, parse_grid(grid), make_run_options(g));
  ecg::Report rep;
  rep.columns = {"max_m", "max_k", "count", "density"};
  for (const ecg::DensityPoint& pt : points)
    rep.add_row({max_m, pt.max_k, pt.count, pt.density});
  emit(g, rep);
  return 0;
}

int run_shapes(const GlobalOpts& g, u64 p, u64 max_m) {
  ecg::Report rep;
  rep.columns = {"p", "m", "k", "order"};
  for (const ecg::GroupShape& s : ecg::shapes_for_prime(p, max_m))
    rep.add_row({p, s.m, s.k, s.order()});
  emit(g, rep);
  return 0;
}

int run_curves(const GlobalOpts& g, u64 p, bool have_curve, u64 a, u64 b,
               const std::string& mode) {
  ecg::Report rep;
  if (have_curve) {
    ecg::CurveRecord rec = ecg::curve_record(p, a, b);
    rep.columns = {"p", "a", "b", "n_points", "trace", "m", "k"};
    rep.add_row({rec.p, rec.a, rec.b, rec.n_points, rec.trace, rec.shape.m,
                 rec.shape.k});
  } else {
    ecg::CensusOptions opt = make_census_options(g);
    if (mode == "iso") opt.mode = ecg::CensusMode::kIsoClasses;
    rep.columns = {"p", "m", "k", "count"};
    for (const auto& [shape, count] : ecg::census(p, opt))
      rep.add_row({p, shape.m, shape.k, count});
  }
  emit(g, rep);
  return 0;
}

int run_verify_ruck(const GlobalOpts& g, u64 p_max) {
  ecg::RuckCheck res = ecg::verify_ruck(p_max, make_census_options(g));
  if (res.failures.empty()) {
    emit_lines(g, {"OK"});
    return 0;
  }
  emit_lines(g, res.failures);
  return 4;
}

int run_m_of_g(const GlobalOpts& g, u64 m, u64 k, u64 census_max_p) {
  ecg::MofGResult res =
      ecg::M_of_G(m, k, census_max_p, make_census_options(g));
  ecg::Report rep;
  rep.columns = {"m", "k", "value", "censored"};
  rep.add_row({m, k, res.value, u64(res.censored ? 1 : 0)});
  emit(g, rep);
  return 0;
}

int run_aut(const GlobalOpts& g, u64 m, u64 k, const std::string& mode) {
  ecg::AutMode am =
      mode == "brute" ? ecg::AutMode::kBruteForce : ecg::AutMode::kClosedForm;
  ecg::Report rep;
  rep.columns = {"m", "k", "aut_order"};
  rep.add_row({m, k, ecg::aut_order(m, k, am)});
  emit(g, rep);
  return 0;
}

int run_cl_ratio(const GlobalOpts& g, u64 m, u64 k, u64 census_max_p) {
  ecg::CohenLenstraRatio res =
      ecg::cohen_lenstra_ratio(m, k, census_max_p, make_census_options(g));
  ecg::Report rep;
  rep.columns = {"m", "k", "lhs", "rhs_unnormalized", "censored"};
  rep.add_row({m, k, res.lhs, res.rhs_unnormalized, u64(res.censored ? 1 : 0)});
  emit(g, rep);
  return 0;
}

int run_rho(const GlobalOpts& g, u64 k, i64 j, u64 d) {
  ecg::Report rep;
  rep.columns = {"k", "j", "d", "rho"};
  rep.add_row({k, j, d, ecg::rho({k, j}, d)});
  emit(g, rep);
  return 0;
}

int run_sieve(const GlobalOpts& g, u64 k, i64 j, u64 max_m, u64 y) {
  ecg::SieveInstance inst{k, j, max_m};
  ecg::Report rep;
  rep.columns = {"k", "j", "max_m", "y", "survivors", "main_term"};
  rep.add_row({k, j, max_m, y, ecg::sieve_survivors(inst, y),
               ecg::sieve_main_term(inst, y)});
  emit(g, rep);
  return 0;
}

int run_euler_product(const GlobalOpts& g, u64 d, u64 y, u64 y_from) {
  ecg::CharacterSpec chi = ecg::make_character(d);
  double product = y < 2 && y_from <= 1
                       ? 1.0
                       : ecg::euler_product_range(chi, y_from, y);
  ecg::Report rep;
  rep.columns = {"d", "conductor", "square_part", "y_from", "y", "product"};
  rep.add_row({d, chi.conductor, chi.square_part, y_from, y, product});
  emit(g, rep);
  return 0;
}

int run_fund_disc(const GlobalOpts& g, u64 d) {
  auto [d1, a] = ecg::fundamental_discriminant(d);
  ecg::Report rep;
  rep.columns = {"d", "conductor", "square_part"};
  rep.add_row({d, d1, a});
  emit(g, rep);
  return 0;
}

int run_t_sum(const GlobalOpts& g, u64 d, u64 max_k) {
  ecg::Report rep;
  rep.columns = {"d", "max_k", "value"};
  rep.add_row({d, max_k, ecg::T_sum(d, max_k)});
  emit(g, rep);
  return 0;
}

int run_discrepancy(const GlobalOpts& g, u64 y, u64 h, u64 q, u64 a) {
  ecg::Report rep;
  rep.columns = {"y", "h", "q", "a", "value"};
  rep.add_row({y, h, q, a, ecg::psi_discrepancy({y, h, q, a})});
  emit(g, rep);
  return 0;
}

int run_ratios(const GlobalOpts& g, u64 max_m, u64 max_k,
               const std::string& strategy) {
  ecg::TheoremRatios r = ecg::theorem_ratios(
      max_m, max_k, parse_strategy(strategy), make_run_options(g));
  ecg::Report rep;
  rep.columns = {"max_m", "max_k",         "count",
                 "thm12", "thm13_density", "thm14_ratio"};
  rep.add_row({max_m, max_k, r.count, r.thm12, r.thm13_density, r.thm14_ratio});
  emit(g, rep);
  return 0;
}

int run_golden(const GlobalOpts& g, const std::string& dir, bool bless) {
  if (bless) {
    ecg::golden_bless(dir, make_run_options(g));
    std::cout << "blessed " << ecg::golden_names().size()
              << " experiments into " << dir << '\n';
    return 0;
  }
  std::vector<ecg::GoldenOutcome> outcomes =
      ecg::golden_check(dir, make_run_options(g));
  bool all_ok = true;
  for (const ecg::GoldenOutcome& o : outcomes) {
    if (o.ok)
      std::cout << o.name << ": ok\n";
    else
      std::cout << o.name << ": MISMATCH - " << o.detail << '\n';
    all_ok = all_ok && o.ok;
  }
  return all_ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"point groups of elliptic curves over prime fields: occurrence "
               "counts, curve censuses, and sieve diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--output", g.output, "write the report to this file");
  app.add_option("--threads", g.threads, "worker count (0 = logical cores)")
      ->transform(kPlainInt);
  app.add_option("--mem-budget", g.mem_budget,
                 "occurrence bitset budget in bytes (also via "
                 "ECG_MEM_BUDGET_BYTES)")
      ->transform(kPlainInt);
  app.add_flag("--timing", g.timing, "print elapsed seconds to stderr");

  int rc = 0;

  u64 oc_m = 1, oc_k = 1;
  bool oc_wit = false;
  auto* occurs_cmd =
      app.add_subcommand("occurs", "window candidates and prime witnesses for "
                                   "the shape Z/m x Z/mk");
  occurs_cmd->add_option("--m", oc_m, "first invariant factor")
      ->required()
      ->transform(kPlainInt);
  occurs_cmd->add_option("--k", oc_k, "exponent cofactor")
      ->required()
      ->transform(kPlainInt);
  occurs_cmd->add_flag("--witnesses", oc_wit, "emit witness rows only");
  occurs_cmd->callback([&] { rc = run_occurs(g, oc_m, oc_k, oc_wit); });

  u64 ct_m = 1, ct_k = 1;
  std::string ct_strategy = "auto", ct_marginals = "none";
  auto* count_cmd =
      app.add_subcommand("count", "number of occurring shapes in the box "
                                  "m <= max_m, k <= max_k");
  count_cmd->add_option("--max-m", ct_m, "m bound")->required()->transform(kPlainInt);
  count_cmd->add_option("--max-k", ct_k, "k bound")->required()->transform(kPlainInt);
  count_cmd->add_option("--strategy", ct_strategy, "counting strategy")
      ->check(CLI::IsMember({"auto", "direct", "prime-driven"}));
  count_cmd->add_option("--marginals", ct_marginals, "emit per-k or per-m rows")
      ->check(CLI::IsMember({"none", "per-k", "per-m"}));
  count_cmd->callback(
      [&] { rc = run_count(g, ct_m, ct_k, ct_strategy, ct_marginals); });

  u64 cr_m = 1, cr_k = 1;
  auto* countr_cmd = app.add_subcommand(
      "count-r", "non-occurring shapes in the dyadic box (max_m/2, max_m] x "
                 "(max_k/2, max_k]");
  countr_cmd->add_option("--max-m", cr_m, "m bound")->required()->transform(kPlainInt);
  countr_cmd->add_option("--max-k", cr_k, "k bound")->required()->transform(kPlainInt);
  countr_cmd->callback([&] { rc = run_count_r(g, cr_m, cr_k); });

  u64 ds_m = 1;
  std::string ds_grid;
  auto* density_cmd = app.add_subcommand(
      "density-scan", "occurrence density along an ascending k grid");
  density_cmd->add_option("--max-m", ds_m, "m bound")->required()->transform(kPlainInt);
  density_cmd->add_option("--k-grid", ds_grid, "comma-separated k bounds")
      ->required();
  density_cmd->callback([&] { rc = run_density_scan(g, ds_m, ds_grid); });

  u64 sp_p = 5, sp_m = 1;
  auto* shapes_cmd = app.add_subcommand(
      "shapes-for-prime", "every shape with m <= max_m whose window contains p");
  shapes_cmd->add_option("--p", sp_p, "prime")->required()->transform(kPlainInt);
  shapes_cmd->add_option("--max-m", sp_m, "m bound")->required()->transform(kPlainInt);
  shapes_cmd->callback([&] { rc = run_shapes(g, sp_p, sp_m); });

  u64 cv_p = 5, cv_a = 0, cv_b = 0;
  std::string cv_mode = "equations";
  auto* curves_cmd = app.add_subcommand(
      "curves", "census of group shapes over F_p, or one curve record");
  curves_cmd->add_option("--p", cv_p, "prime field size")
      ->required()
      ->transform(kPlainInt);
  auto* cv_a_opt =
      curves_cmd->add_option("--a", cv_a, "curve coefficient a")->transform(kPlainInt);
  auto* cv_b_opt =
      curves_cmd->add_option("--b", cv_b, "curve coefficient b")->transform(kPlainInt);
  cv_a_opt->needs(cv_b_opt);
  cv_b_opt->needs(cv_a_opt);
  curves_cmd->add_option("--mode", cv_mode, "census counting mode")
      ->check(CLI::IsMember({"equations", "iso"}));
  curves_cmd->callback([&] {
    rc = run_curves(g, cv_p, cv_a_opt->count() > 0, cv_a, cv_b, cv_mode);
  });

  u64 vr_pmax = 100;
  auto* ruck_cmd = app.add_subcommand(
      "verify-ruck", "census shapes vs the admissible sets for p in [5, p-max]");
  ruck_cmd->add_option("--p-max", vr_pmax, "prime bound")->transform(kPlainInt);
  ruck_cmd->callback([&] { rc = run_verify_ruck(g, vr_pmax); });

  u64 mg_m = 1, mg_k = 1, mg_cap = 499;
  auto* mofg_cmd = app.add_subcommand(
      "m-of-g", "curve count of the shape summed over its order window");
  mofg_cmd->add_option("--m", mg_m, "first invariant factor")
      ->required()
      ->transform(kPlainInt);
  mofg_cmd->add_option("--k", mg_k, "exponent cofactor")
      ->required()
      ->transform(kPlainInt);
  mofg_cmd->add_option("--census-max-p", mg_cap, "largest census prime allowed")
      ->transform(kPlainInt);
  mofg_cmd->callback([&] { rc = run_m_of_g(g, mg_m, mg_k, mg_cap); });

  u64 au_m = 1, au_k = 1;
  std::string au_mode = "closed";
  auto* aut_cmd =
      app.add_subcommand("aut", "automorphism group order of Z/m x Z/mk");
  aut_cmd->add_option("--m", au_m, "first invariant factor")
      ->required()
      ->transform(kPlainInt);
  aut_cmd->add_option("--k", au_k, "exponent cofactor")
      ->required()
      ->transform(kPlainInt);
  aut_cmd->add_option("--mode", au_mode, "closed form or brute force")
      ->check(CLI::IsMember({"closed", "brute"}));
  aut_cmd->callback([&] { rc = run_aut(g, au_m, au_k, au_mode); });

  u64 cl_m = 1, cl_k = 1, cl_cap = 499;
  auto* cl_cmd = app.add_subcommand(
      "cl-ratio", "mass-formula ratio: M(G) log N / (4 sqrt N) vs N^{3/2}/#Aut");
  cl_cmd->add_option("--m", cl_m, "first invariant factor")
      ->required()
      ->transform(kPlainInt);
  cl_cmd->add_option("--k", cl_k, "exponent cofactor")
      ->required()
      ->transform(kPlainInt);
  cl_cmd->add_option("--census-max-p", cl_cap, "largest census prime allowed")
      ->transform(kPlainInt);
  cl_cmd->callback([&] { rc = run_cl_ratio(g, cl_m, cl_k, cl_cap); });

  u64 rh_k = 1, rh_d = 1;
  i64 rh_j = 0;
  auto* rho_cmd = app.add_subcommand(
      "rho", "roots of k c^2 + j c + 1 modulo d");
  rho_cmd->add_option("--k", rh_k, "leading coefficient")
      ->required()
      ->transform(kPlainInt);
  rho_cmd->add_option("--j", rh_j, "linear coefficient")
      ->required()
      ->transform(kPlainInt);
  rho_cmd->add_option("--d", rh_d, "modulus")->required()->transform(kPlainInt);
  rho_cmd->callback([&] { rc = run_rho(g, rh_k, rh_j, rh_d); });

  u64 sv_k = 1, sv_m = 1, sv_y = 1;
  i64 sv_j = 0;
  auto* sieve_cmd = app.add_subcommand(
      "sieve", "survivors of sieving k m^2 + j m + 1 by primes <= y, plus the "
               "main-term product");
  sieve_cmd->add_option("--k", sv_k, "leading coefficient")
      ->required()
      ->transform(kPlainInt);
  sieve_cmd->add_option("--j", sv_j, "linear coefficient")
      ->required()
      ->transform(kPlainInt);
  sieve_cmd->add_option("--max-m", sv_m, "family length")
      ->required()
      ->transform(kPlainInt);
  sieve_cmd->add_option("--y", sv_y, "sieve limit")->required()->transform(kPlainInt);
  sieve_cmd->callback([&] { rc = run_sieve(g, sv_k, sv_j, sv_m, sv_y); });

  u64 ep_d = 1, ep_y = 1, ep_from = 1;
  auto* euler_cmd = app.add_subcommand(
      "euler-product", "truncated Euler product of the character (-d/.)");
  euler_cmd->add_option("--d", ep_d, "character parameter")
      ->required()
      ->transform(kPlainInt);
  euler_cmd->add_option("--y", ep_y, "truncation bound")
      ->required()
      ->transform(kPlainInt);
  euler_cmd->add_option("--y-from", ep_from, "start of the prime range")
      ->transform(kPlainInt);
  euler_cmd->callback([&] { rc = run_euler_product(g, ep_d, ep_y, ep_from); });

  u64 fd_d = 1;
  auto* fd_cmd = app.add_subcommand(
      "fund-disc", "conductor and square part of -d");
  fd_cmd->add_option("--d", fd_d, "positive integer")->required()->transform(kPlainInt);
  fd_cmd->callback([&] { rc = run_fund_disc(g, fd_d); });

  u64 ts_d = 1, ts_k = 1;
  auto* tsum_cmd = app.add_subcommand(
      "t-sum", "sum of k/phi(k) over j^2 - 4k = -d with k <= max-k");
  tsum_cmd->add_option("--d", ts_d, "discriminant parameter")
      ->required()
      ->transform(kPlainInt);
  tsum_cmd->add_option("--max-k", ts_k, "k bound")->required()->transform(kPlainInt);
  tsum_cmd->callback([&] { rc = run_t_sum(g, ts_d, ts_k); });

  u64 dc_y = 0, dc_h = 0, dc_q = 1, dc_a = 0;
  auto* disc_cmd = app.add_subcommand(
      "discrepancy", "prime-power count discrepancy |psi(y+h;q,a) - psi(y;q,a)"
                     " - h/phi(q)|");
  disc_cmd->set_help_flag("--help", "print help");  // frees -h for --h below
  disc_cmd->add_option("--y", dc_y, "window start")->required()->transform(kPlainInt);
  disc_cmd->add_option("--h", dc_h, "window length")->required()->transform(kPlainInt);
  disc_cmd->add_option("--q", dc_q, "modulus")->transform(kPlainInt);
  disc_cmd->add_option("--a", dc_a, "residue")->transform(kPlainInt);
  disc_cmd->callback([&] { rc = run_discrepancy(g, dc_y, dc_h, dc_q, dc_a); });

  u64 rt_m = 1, rt_k = 1;
  std::string rt_strategy = "auto";
  auto* ratios_cmd = app.add_subcommand(
      "ratios", "normalized occurrence-count ratios for a box");
  ratios_cmd->add_option("--max-m", rt_m, "m bound")->required()->transform(kPlainInt);
  ratios_cmd->add_option("--max-k", rt_k, "k bound")->required()->transform(kPlainInt);
  ratios_cmd->add_option("--strategy", rt_strategy, "counting strategy")
      ->check(CLI::IsMember({"auto", "direct", "prime-driven"}));
  ratios_cmd->callback([&] { rc = run_ratios(g, rt_m, rt_k, rt_strategy); });

  std::string gd_dir;
  bool gd_bless = false;
  auto* golden_cmd = app.add_subcommand(
      "golden", "regression experiments: re-run and diff against blessed files");
  golden_cmd->add_option("--dir", gd_dir, "golden file directory")->required();
  golden_cmd->add_flag("--bless", gd_bless,
                       "write the blessed files instead of checking");
  golden_cmd->callback([&] { rc = run_golden(g, gd_dir, gd_bless); });

  try {
    g.mem_budget = env_mem_budget(g.mem_budget);
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return rc;
}
