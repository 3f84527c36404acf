#pragma once

// Desk-scale Cohen-Zagier survey: theta_chi(i) for every primitive character
// with conductor up to a bound, two-stage vanishing detection (cheap pass at
// base precision, confirmation at refine precision), and deterministic
// CSV/JSON emission. Characters are partitioned across workers by conductor;
// each record is computed independently, so worker count never changes the
// output bytes.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "thetalab/characters.hpp"
#include "thetalab/errors.hpp"
#include "thetalab/modularforms.hpp"
#include "thetalab/numkernel.hpp"
#include "thetalab/parallel.hpp"
#include "vendor_json.hpp"

namespace thetalab {

struct ScanConfig {
  std::uint64_t nmax = 600;
  long base_bits = 96;
  long refine_bits = 256;
  unsigned workers = 1;
  bool collapse_conjugates = true;

  void validate() const {
    if (nmax < 1) throw domain_error("scan: nmax must be >= 1");
    if (refine_bits <= base_bits) throw domain_error("scan: refine precision must exceed base");
  }
};

struct ScanRecord {
  std::uint64_t N = 0;
  std::string label;
  std::uint64_t order = 0;
  int parity = 0;
  BigFloat abs_theta;
  std::optional<BigComplex> w;
  bool vanish = false;
  long precision = 0;
  std::vector<std::uint64_t> exponents;  // for deterministic ordering

  nlohmann::ordered_json to_json(int digits = 30) const {
    nlohmann::ordered_json j;
    j["N"] = N;
    j["label"] = label;
    j["m"] = order;
    j["v"] = parity;
    j["abs_theta"] = abs_theta.str(digits);
    if (w) {
      j["re_W"] = w->re().str(digits);
      j["im_W"] = w->im().str(digits);
    } else {
      j["re_W"] = nullptr;
      j["im_W"] = nullptr;
    }
    j["vanish"] = vanish;
    j["precision"] = precision;
    return j;
  }
};

struct ScanSummary {
  std::uint64_t nmax = 0;
  std::size_t records = 0;
  std::size_t vanishing = 0;
  std::vector<std::string> vanishing_labels;
  unsigned long long total_series_terms = 0;
};

struct ScanResult {
  std::vector<ScanRecord> records;
  ScanSummary summary;
};

namespace scan_detail {

/// theta_chi(i) and theta_chibar(i) for every primitive character mod N,
/// sharing the radial table e^(-pi n^2 / N) and the root-of-unity table.
struct ConductorScan {
  std::vector<ScanRecord> records;
  unsigned long long terms = 0;
};

inline ConductorScan scan_conductor(std::uint64_t N, const ScanConfig& cfg) {
  ConductorScan out;
  auto chars = enumerate_characters(N, /*primitive_only=*/true);
  if (chars.empty()) return out;

  PrecisionContext base(cfg.base_bits);
  const std::uint64_t E = chars.front().basis().group_exponent();

  BigFloat rate = BigFloat::pi(base.prec() + 8) / static_cast<long>(N);
  // the odd-character series carries the n^eps factor; bound for eps = 1 covers both
  long nmax = theta_truncation_bound(static_cast<long>(N), 1, rate, cfg.base_bits + 8);

  // radial table r[n] = e^-(pi n^2 / N), built incrementally
  std::vector<BigFloat> radial(static_cast<std::size_t>(nmax) + 1, BigFloat(base.prec()));
  {
    BigFloat u = exp(-(BigFloat::pi(base.prec() + 8) / static_cast<long>(N)));
    BigFloat u2 = u * u;
    BigFloat t = u;        // u^(n^2) at n = 1
    BigFloat odd = u * u2; // u^(2n+1) at n = 1
    for (long n = 1; n <= nmax; ++n) {
      radial[static_cast<std::size_t>(n)] = t;
      t *= odd;
      odd *= u2;
    }
  }
  std::vector<BigComplex> roots(E, BigComplex(base.prec()));
  for (std::uint64_t k = 0; k < E; ++k)
    roots[k] = root_of_unity(static_cast<long>(k), static_cast<long>(E), base);

  // shared discrete logs of 1..nmax
  const auto& basis = chars.front().basis();
  const std::size_t width = basis.size();
  std::vector<std::uint64_t> dl(static_cast<std::size_t>(nmax + 1) * std::max<std::size_t>(width, 1));
  std::vector<bool> unit(static_cast<std::size_t>(nmax) + 1, false);
  for (long n = 1; n <= nmax; ++n)
    unit[static_cast<std::size_t>(n)] =
        basis.dlog(static_cast<std::uint64_t>(n),
                   std::span<std::uint64_t>(dl.data() + static_cast<std::size_t>(n) * width, width));

  BigFloat base_threshold = BigFloat::pow2(-(cfg.base_bits / 2), 64);

  for (const auto& chi : chars) {
    if (cfg.collapse_conjugates &&
        conjugacy_representative(chi).exponents() != chi.exponents())
      continue;
    const int eps = chi.eps();
    const auto& exps = chi.exponents();
    const auto& entries = basis.entries();

    BigComplex theta(base.prec()), theta_bar(base.prec());
    if (N == 1) {
      theta += base.complex(1, 0);
      theta_bar += base.complex(1, 0);
    }
    for (long n = 1; n <= nmax; ++n) {
      if (!unit[static_cast<std::size_t>(n)]) continue;
      const std::uint64_t* kn = dl.data() + static_cast<std::size_t>(n) * width;
      std::uint64_t k = 0;
      for (std::size_t i = 0; i < width; ++i)
        k = (k + mul_mod(mul_mod(exps[i], kn[i], E), E / entries[i].order, E)) % E;
      BigFloat coeff = radial[static_cast<std::size_t>(n)];
      if (eps) coeff *= n;
      theta += roots[k] * coeff;
      theta_bar += roots[(E - k) % E] * coeff;
      ++out.terms;
    }
    theta = theta * 2 - (N == 1 ? base.complex(1, 0) : base.complex(0, 0));
    theta_bar = theta_bar * 2 - (N == 1 ? base.complex(1, 0) : base.complex(0, 0));

    ScanRecord rec;
    rec.N = N;
    rec.label = chi.label();
    rec.order = chi.order();
    rec.parity = chi.parity();
    rec.exponents = exps;
    rec.abs_theta = abs(theta);
    rec.precision = cfg.base_bits;
    if (rec.abs_theta < base_threshold) {
      // two-stage confirmation at the refine precision
      PrecisionContext fine(cfg.refine_bits);
      ThetaEval te = theta_chi_counted(chi, fine.complex(0, 1), fine);
      out.terms += static_cast<unsigned long long>(te.terms);
      rec.abs_theta = abs(te.value);
      rec.precision = cfg.refine_bits;
      rec.vanish = rec.abs_theta < BigFloat::pow2(-(cfg.refine_bits / 2), 64);
      if (!rec.vanish) {
        ThetaEval tb = theta_chi_counted(chi.conjugate(), fine.complex(0, 1), fine);
        out.terms += static_cast<unsigned long long>(tb.terms);
        rec.w = tb.value / te.value;
      }
    } else {
      rec.w = theta_bar / theta;
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

}  // namespace scan_detail

inline ScanResult scan(const ScanConfig& cfg) {
  cfg.validate();
  std::vector<std::uint64_t> conductors;
  for (std::uint64_t N = 1; N <= cfg.nmax; ++N) conductors.push_back(N);

  std::vector<scan_detail::ConductorScan> per_N(conductors.size());
  parallel_for(conductors.size(), cfg.workers,
               [&](std::size_t i) { per_N[i] = scan_detail::scan_conductor(conductors[i], cfg); });

  ScanResult out;
  out.summary.nmax = cfg.nmax;
  for (auto& cs : per_N) {
    out.summary.total_series_terms += cs.terms;
    for (auto& rec : cs.records) {
      if (rec.vanish) {
        ++out.summary.vanishing;
        out.summary.vanishing_labels.push_back(rec.label);
      }
      out.records.push_back(std::move(rec));
    }
  }
  out.summary.records = out.records.size();
  // records are produced in (N, exponent-vector) order already; keep it canonical
  std::sort(out.records.begin(), out.records.end(), [](const ScanRecord& a, const ScanRecord& b) {
    if (a.N != b.N) return a.N < b.N;
    return a.exponents < b.exponents;
  });
  return out;
}

/// Re-evaluate one record at a higher precision and refresh the vanish flag.
inline ScanRecord refine(const ScanRecord& rec, long bits) {
  if (bits <= rec.precision) throw domain_error("refine: precision must increase");
  DirichletCharacter chi = parse_character_label(rec.label);
  PrecisionContext ctx(bits);
  BigComplex theta = theta_chi(chi, ctx.complex(0, 1), ctx);
  ScanRecord out = rec;
  out.abs_theta = abs(theta);
  out.precision = bits;
  out.vanish = out.abs_theta < BigFloat::pow2(-(bits / 2), 64);
  if (!out.vanish) {
    BigComplex tb = theta_chi(chi.conjugate(), ctx.complex(0, 1), ctx);
    out.w = tb / theta;
  } else {
    out.w.reset();
  }
  return out;
}

inline std::string scan_csv(const std::vector<ScanRecord>& records) {
  std::ostringstream os;
  os << "N,label,m,v,abs_theta,re_W,im_W,vanish,precision\n";
  for (const auto& r : records) {
    os << r.N << ',' << r.label << ',' << r.order << ',' << r.parity << ','
       << r.abs_theta.str(30) << ',';
    if (r.w)
      os << r.w->re().str(30) << ',' << r.w->im().str(30);
    else
      os << ',';
    os << ',' << (r.vanish ? 1 : 0) << ',' << r.precision << '\n';
  }
  return os.str();
}

inline nlohmann::ordered_json scan_json(const std::vector<ScanRecord>& records) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : records) arr.push_back(r.to_json());
  return arr;
}

enum class EmitFormat { csv, json };

inline void emit(const std::vector<ScanRecord>& records, EmitFormat format,
                 const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  if (format == EmitFormat::csv)
    f << scan_csv(records);
  else
    f << scan_json(records).dump(2) << '\n';
  if (!f.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace thetalab
