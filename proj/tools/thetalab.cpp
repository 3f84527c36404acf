// thetalab: root numbers, theta transformation checks, Galois orbits of
// theta values at CM points, lattice recognition, and the vanishing survey.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "thetalab/characters.hpp"
#include "thetalab/galois.hpp"
#include "thetalab/modularforms.hpp"
#include "thetalab/recognize.hpp"
#include "thetalab/rootnumber.hpp"
#include "thetalab/scanner.hpp"
#include "thetalab/suites.hpp"

namespace {

using namespace thetalab;

struct GlobalOptions {
  long prec = 192;
  bool prec_explicit = false;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "text";
  unsigned workers = std::thread::hardware_concurrency();
};

long default_prec_from_env() {
  if (const char* env = std::getenv("THETALAB_PREC")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 64) return v;
  }
  return 192;
}

BigComplex parse_tau(const std::string& s, const PrecisionContext& ctx) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw domain_error("tau must be 're,im'");
  BigFloat re = ctx.real_str(s.substr(0, comma).c_str());
  BigFloat im = ctx.real_str(s.substr(comma + 1).c_str());
  if (!(im > 0l)) throw domain_error("tau must have positive imaginary part");
  return {std::move(re), std::move(im)};
}

void write_or_print(const GlobalOptions& g, const std::string& payload) {
  if (g.out.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + g.out);
    f << payload;
  }
}

int cmd_chars(const GlobalOptions& g, std::uint64_t N, bool primitive) {
  auto chars = enumerate_characters(N, primitive);
  if (g.format == "json") {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& chi : chars) {
      nlohmann::ordered_json j;
      j["label"] = chi.label();
      j["order"] = chi.order();
      j["parity"] = chi.parity();
      j["conductor"] = chi.conductor();
      arr.push_back(j);
    }
    write_or_print(g, arr.dump(2));
  } else {
    std::ostringstream os;
    os << "label\torder\tparity\tconductor\n";
    for (const auto& chi : chars)
      os << chi.label() << '\t' << chi.order() << '\t' << chi.parity() << '\t' << chi.conductor()
         << '\n';
    write_or_print(g, os.str());
  }
  return 0;
}

int cmd_theta(const GlobalOptions& g, const std::string& label, const std::string& tau_str) {
  PrecisionContext ctx(g.prec);
  DirichletCharacter chi = parse_character_label(label);
  if (!chi.is_primitive())
    std::cerr << "warning: " << label << " is imprimitive (conductor " << chi.conductor() << ")\n";
  BigComplex tau = parse_tau(tau_str, ctx);
  ThetaEval te = theta_chi_counted(chi, tau, ctx);
  nlohmann::ordered_json j;
  j["label"] = label;
  j["eps"] = chi.eps();
  j["re"] = te.value.re().str(30);
  j["im"] = te.value.im().str(30);
  j["abs"] = abs(te.value).str(30);
  j["terms"] = te.terms;
  if (g.format == "json")
    write_or_print(g, j.dump(2));
  else {
    std::ostringstream os;
    os << "theta_chi(tau) = " << te.value.re().str(30) << " + " << te.value.im().str(30)
       << " i  (" << te.terms << " series indices)\n";
    write_or_print(g, os.str());
  }
  return 0;
}

int cmd_rootnum(const GlobalOptions& g, const std::string& label, const std::string& method) {
  PrecisionContext ctx(g.prec);
  DirichletCharacter chi = parse_character_label(label);
  std::ostringstream os;
  nlohmann::ordered_json j;
  j["label"] = label;
  std::optional<BigComplex> wg, wt;
  if (method == "gauss" || method == "both") {
    wg = root_number_gauss(chi, ctx);
    os << "W_gauss = " << wg->re().str(30) << " + " << wg->im().str(30) << " i\n";
    j["w_gauss_re"] = wg->re().str(30);
    j["w_gauss_im"] = wg->im().str(30);
  }
  if (method == "theta" || method == "both") {
    ThetaQuotient q = root_number_theta_counted(chi, ctx);
    wt = q.w;
    os << "W_theta = " << wt->re().str(30) << " + " << wt->im().str(30) << " i  ("
       << q.terms_numerator + q.terms_denominator << " series indices)\n";
    j["w_theta_re"] = wt->re().str(30);
    j["w_theta_im"] = wt->im().str(30);
    j["theta_terms"] = q.terms_numerator + q.terms_denominator;
  }
  if (wg && wt) {
    BigFloat diff = abs(*wg - *wt);
    os << "|W_gauss - W_theta| = " << diff.str(10) << '\n';
    j["agreement"] = diff.str(10);
    if (!(diff < ctx.tolerance())) {
      write_or_print(g, g.format == "json" ? j.dump(2) : os.str());
      return 1;
    }
  }
  write_or_print(g, g.format == "json" ? j.dump(2) : os.str());
  return 0;
}

int cmd_gauss_sum(const GlobalOptions& g, std::int64_t b, std::int64_t d) {
  PrecisionContext ctx(g.prec);
  BigComplex closed = quadratic_gauss_sum_closed(b, d, ctx);
  BigComplex direct = quadratic_gauss_sum_direct(b, d, ctx);
  BigFloat res = abs(closed - direct);
  std::ostringstream os;
  os << "S_{" << b << "," << d << "} closed = " << closed.re().str(30) << " + "
     << closed.im().str(30) << " i\n";
  os << "direct residual = " << res.str(10) << '\n';
  write_or_print(g, os.str());
  return res < ctx.tolerance() ? 0 : 1;
}

int cmd_verify(const GlobalOptions& g, const std::string& law, int trials,
               std::vector<std::int64_t> n_list) {
  PrecisionContext ctx(g.prec);
  SuiteRng rng(g.seed);
  SuiteResult result;
  if (law == "funceq") {
    std::vector<std::uint64_t> Ns;
    if (n_list.empty())
      for (std::uint64_t N = 1; N <= 20; ++N) Ns.push_back(N);
    else
      for (auto n : n_list) Ns.push_back(static_cast<std::uint64_t>(n));
    result = funceq_suite(Ns, trials > 0 ? trials : 5, rng, ctx);
  } else if (law == "transform") {
    if (n_list.empty()) n_list = {3, 5, 9, 15};
    result = transform_suite(n_list, trials > 0 ? trials : 20, rng, ctx);
  } else if (law == "inversion") {
    result = inversion_suite(trials > 0 ? trials : 100, rng, ctx);
  } else if (law == "meyer") {
    result = meyer_suite(trials > 0 ? trials : 200, 50, rng, ctx);
  } else if (law == "level") {
    if (n_list.empty()) n_list = {3, 5};
    result = level_suite(n_list, trials > 0 ? trials : 10, rng, ctx);
  } else {
    throw domain_error("unknown law: " + law);
  }
  BigFloat tol = ctx.tolerance();
  std::ostringstream os;
  os << law << ": " << result.cases << " cases, max residual " << result.max_residual.str(10)
     << " (tolerance " << tol.str(5) << ")\n";
  write_or_print(g, os.str());
  return result.max_residual < tol ? 0 : 1;
}

int cmd_orbit(const GlobalOptions& g, std::uint64_t p, std::uint64_t m, const std::string& kind) {
  PrecisionContext ctx(g.prec);
  OrbitKind k = OrbitKind::B;
  if (kind == "B")
    k = OrbitKind::B;
  else if (kind == "B2")
    k = OrbitKind::B2;
  else if (kind == "An")
    k = OrbitKind::An;
  else if (kind == "A2n")
    k = OrbitKind::A2n;
  else
    throw domain_error("unknown orbit kind: " + kind);
  OrbitReport rep = orbit(p, m, k, ctx);
  if (g.format == "json") {
    write_or_print(g, rep.to_json().dump(2));
  } else {
    std::ostringstream os;
    os << "orbit " << orbit_kind_name(rep.kind) << " for (p=" << p << ", m=" << m
       << "): " << (rep.applicable ? "orbit" : "NotAnOrbit") << ", " << rep.members.size()
       << " members\n";
    for (const auto& [label, val] : rep.members)
      os << "  " << label << ": " << val.re().str(30) << " + " << val.im().str(30) << " i\n";
    write_or_print(g, os.str());
  }
  return 0;
}

int cmd_product(const GlobalOptions& g, std::uint64_t p, std::uint64_t m, bool include_principal) {
  PrecisionContext ctx(g.prec);
  OrbitProduct prod = orbit_product(p, m, ctx, include_principal);
  if (g.format == "json")
    write_or_print(g, prod.to_json().dump(2));
  else {
    std::ostringstream os;
    os << "N(" << p << "," << m << ") = " << prod.value.str(30)
       << (prod.vanishing_member ? "  [vanishing member]" : "") << "\n";
    os << "N^2 in H_O: yes;  N in H_O: " << (prod.in_ring_class_field ? "yes" : "not implied")
       << '\n';
    write_or_print(g, os.str());
  }
  return 0;
}

int cmd_recognize(const GlobalOptions& g, std::uint64_t p, std::uint64_t m,
                  const std::string& target, int maxdeg, const std::string& height) {
  PrecisionContext ctx(g.prec_explicit ? g.prec : 512);
  mpz_class H(height);
  if (H < 1) throw domain_error("height bound must be positive");

  if (target == "A") {
    auto X = enumerate_X(p, m);
    if (X.empty()) throw domain_error("X(p, m) is empty");
    OrderParams params = OrderParams::make(p, m, X.front().parity());
    DirichletCharacter chi = X.front();
    auto gen = [&](const PrecisionContext& c) {
      return pow_ui(A_value(chi, c), static_cast<unsigned long>(params.n));
    };
    int deg = maxdeg > 0 ? maxdeg : static_cast<int>(2 * degree_bound(p, m));
    auto rel = recognize_minpoly(gen, deg, H, ctx);
    if (!rel) {
      write_or_print(g, "no relation found (certified within the height bound)\n");
      return 0;
    }
    write_or_print(g, rel->to_json().dump(2));
    return 0;
  }

  auto x_gen = [&](const PrecisionContext& c) {
    OrbitProduct prod = orbit_product(p, m, c);
    BigFloat v = prod.value;
    if (target == "N2") v *= prod.value;
    return v;
  };
  auto j_gen = [&](const PrecisionContext& c) {
    return j_invariant(c.complex(0, static_cast<long>(p)), c).re();
  };
  std::uint64_t h = class_number_formula(p);
  auto expansion = recognize_in_jfield(x_gen, h, j_gen, H, ctx);
  if (!expansion) {
    write_or_print(g, "no relation found (certified within the height bound)\n");
    return 0;
  }
  write_or_print(g, expansion->to_json().dump(2));
  return 0;
}

int cmd_scan(const GlobalOptions& g, std::uint64_t nmax, long base_bits, long refine_bits) {
  ScanConfig cfg;
  cfg.nmax = nmax;
  cfg.base_bits = base_bits;
  cfg.refine_bits = refine_bits;
  cfg.workers = g.workers ? g.workers : 1;
  ScanResult result = scan(cfg);
  std::cout << "scan nmax=" << result.summary.nmax << ": " << result.summary.records
            << " primitive classes, " << result.summary.vanishing << " vanishing";
  for (const auto& label : result.summary.vanishing_labels) std::cout << ' ' << label;
  std::cout << " (series terms: " << result.summary.total_series_terms << ")\n";
  if (!g.out.empty()) {
    EmitFormat fmt = g.format == "json" ? EmitFormat::json : EmitFormat::csv;
    emit(result.records, fmt, g.out);
  }
  return 0;
}

int cmd_classnum(const GlobalOptions& g, std::uint64_t p) {
  std::uint64_t formula = class_number_formula(p);
  std::int64_t D = -4 * static_cast<std::int64_t>(p) * static_cast<std::int64_t>(p);
  std::uint64_t oracle = class_number_oracle(D);
  std::ostringstream os;
  os << "h(Z[" << p << "i]) = " << formula << " (formula), " << oracle
     << " (reduced forms, D = " << D << ")\n";
  write_or_print(g, os.str());
  return formula == oracle ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOptions g;
  g.prec = default_prec_from_env();
  if (g.workers == 0) g.workers = 1;

  CLI::App app{"theta values at CM points: root numbers, transformation laws, Galois orbits"};
  app.require_subcommand(1);
  app.fallthrough();  // global options are accepted after the subcommand too
  app.add_option("--prec", g.prec, "working precision in bits (>= 64)")
      ->check(CLI::Range(64l, 1l << 20))
      ->each([&](const std::string&) { g.prec_explicit = true; });
  app.add_option("--seed", g.seed, "seed for randomized suites");
  app.add_option("--out", g.out, "write output to this path instead of stdout");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--workers", g.workers, "worker threads for the scanner");

  // chars list
  auto* chars_cmd = app.add_subcommand("chars", "character enumeration");
  auto* chars_list = chars_cmd->add_subcommand("list", "list characters mod N");
  std::uint64_t chars_N = 1;
  bool chars_primitive = false;
  chars_list->add_option("N", chars_N, "modulus")->required();
  chars_list->add_flag("--primitive", chars_primitive, "only primitive characters");

  auto* theta_cmd = app.add_subcommand("theta", "evaluate theta_chi(tau)");
  std::string theta_label, theta_tau = "0,1";
  theta_cmd->add_option("label", theta_label, "character label N:e1,e2,...")->required();
  theta_cmd->add_option("--tau", theta_tau, "evaluation point re,im (default 0,1)");

  auto* rootnum_cmd = app.add_subcommand("rootnum", "root number W(chi)");
  std::string rn_label, rn_method = "both";
  rootnum_cmd->add_option("label", rn_label)->required();
  rootnum_cmd->add_option("--method", rn_method)->check(CLI::IsMember({"gauss", "theta", "both"}));

  auto* verify_cmd = app.add_subcommand("verify", "randomized transformation-law suites");
  std::string verify_law;
  int verify_trials = 0;
  std::vector<std::int64_t> verify_nlist;
  verify_cmd->add_option("law", verify_law, "funceq|transform|inversion|meyer|level")->required();
  verify_cmd->add_option("--trials", verify_trials, "cases (meaning depends on the law)");
  verify_cmd->add_option("--n-list", verify_nlist, "conductors / levels")->delimiter(',');

  auto* gauss_cmd = app.add_subcommand("gauss-sum", "quadratic Gauss sum S_{b,d}");
  std::int64_t gs_b = 0, gs_d = 1;
  gauss_cmd->add_option("b", gs_b)->required();
  gauss_cmd->add_option("d", gs_d)->required();

  auto* orbit_cmd = app.add_subcommand("orbit", "Galois orbit of special values");
  std::uint64_t orbit_p = 5, orbit_m = 2;
  std::string orbit_kind = "B";
  orbit_cmd->add_option("p", orbit_p)->required();
  orbit_cmd->add_option("m", orbit_m)->required();
  orbit_cmd->add_option("--kind", orbit_kind)->check(CLI::IsMember({"B", "B2", "An", "A2n"}));

  auto* product_cmd = app.add_subcommand("product", "orbit product N(p, m)");
  std::uint64_t prod_p = 5, prod_m = 2;
  bool prod_principal = false;
  product_cmd->add_option("p", prod_p)->required();
  product_cmd->add_option("m", prod_m)->required();
  product_cmd->add_flag("--include-principal", prod_principal,
                        "multiply in B of the principal character mod p");

  auto* rec_cmd = app.add_subcommand("recognize", "lattice recognition of orbit values");
  std::uint64_t rec_p = 5, rec_m = 2;
  std::string rec_target = "N", rec_height = "1152921504606846976";  // 2^60
  int rec_maxdeg = 0;
  rec_cmd->add_option("p", rec_p)->required();
  rec_cmd->add_option("m", rec_m)->required();
  rec_cmd->add_option("--target", rec_target)->check(CLI::IsMember({"N", "N2", "A"}));
  rec_cmd->add_option("--maxdeg", rec_maxdeg, "maximal degree for minpoly recognition");
  rec_cmd->add_option("--height", rec_height, "height bound for coefficients");

  auto* scan_cmd = app.add_subcommand("scan", "Cohen-Zagier style vanishing survey");
  std::uint64_t scan_nmax = 600;
  long scan_base = 96, scan_refine = 256;
  scan_cmd->add_option("--nmax", scan_nmax, "largest conductor");
  scan_cmd->add_option("--base-prec", scan_base, "base precision in bits");
  scan_cmd->add_option("--refine-prec", scan_refine, "confirmation precision in bits");

  auto* class_cmd = app.add_subcommand("classnum", "class number of Z[ip]");
  std::uint64_t class_p = 5;
  class_cmd->add_option("p", class_p)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (chars_list->parsed()) return cmd_chars(g, chars_N, chars_primitive);
    if (theta_cmd->parsed()) return cmd_theta(g, theta_label, theta_tau);
    if (rootnum_cmd->parsed()) return cmd_rootnum(g, rn_label, rn_method);
    if (verify_cmd->parsed()) return cmd_verify(g, verify_law, verify_trials, verify_nlist);
    if (gauss_cmd->parsed()) return cmd_gauss_sum(g, gs_b, gs_d);
    if (orbit_cmd->parsed()) return cmd_orbit(g, orbit_p, orbit_m, orbit_kind);
    if (product_cmd->parsed()) return cmd_product(g, prod_p, prod_m, prod_principal);
    if (rec_cmd->parsed()) return cmd_recognize(g, rec_p, rec_m, rec_target, rec_maxdeg, rec_height);
    if (scan_cmd->parsed()) return cmd_scan(g, scan_nmax, scan_base, scan_refine);
    if (class_cmd->parsed()) return cmd_classnum(g, class_p);
    std::cerr << app.help();
    return 2;
  } catch (const vanishing_theta_error& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const insufficient_precision_error& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
