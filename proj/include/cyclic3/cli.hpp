#pragma once

// Command implementations behind the cyclic3 tool. Each returns a process
// exit code: 0 ok, 1 usage, 2 assertion failure, 3 I/O.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cyclic3/catalog.hpp"
#include "cyclic3/classify.hpp"
#include "cyclic3/density.hpp"
#include "cyclic3/lfunc.hpp"
#include "cyclic3/verify.hpp"

namespace cyclic3 {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitAssertion = 2, kExitIo = 3 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  i64 X = 100'000'000;
  double beta = 0.2;
  LambdaMode mode = LambdaMode::Kummer;
  std::string out;      ///< empty: standard output
  std::string catalog;  ///< optional input catalog
  i64 p0 = 1'000'000;
  i64 ymax = 100'000;
  double s = 2.0;
  std::vector<i64> primes = {7, 13, 31};
};

inline void validate(const RunConfig& c) {
  if (c.X < 1000) throw UsageError("--x must be at least 1000");
  if (!(c.beta > 0.0 && c.beta < 1.0)) throw UsageError("--beta must lie in (0, 1)");
  if (c.p0 < 10 || c.p0 > 1'000'000) throw UsageError("--p0 must lie in 10..1e6");
  if (c.ymax < 1 || c.ymax > 1'000'000) throw UsageError("--ymax must lie in 1..1e6");
  if (c.s < 1.5) throw UsageError("--s must be at least 1.5");
  for (i64 p : c.primes) {
    if (p == 3) throw UsageError("--primes: p = 3 is not supported");
    if (!is_prime(p)) throw UsageError("--primes: " + std::to_string(p) + " is not prime");
  }
}

inline LambdaMode parse_mode(const std::string& s) {
  if (s == "kummer") return LambdaMode::Kummer;
  if (s == "paper") return LambdaMode::PaperLiteral;
  throw UsageError("--mode must be kummer or paper");
}

inline std::vector<i64> parse_prime_list(const std::string& s) {
  std::vector<i64> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("--primes: bad entry '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--primes: empty list");
  return out;
}

namespace detail {

// Writes `body` to path (or `fallback` when path is empty), naming the path on failure.
inline void emit(const std::string& path, const std::string& body, std::ostream& fallback) {
  if (path.empty()) {
    fallback << body;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << body;
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

inline std::vector<FieldRecord> load_or_enumerate(const RunConfig& c) {
  if (c.catalog.empty()) return enumerate_family(c.X);
  std::ifstream f(c.catalog);
  if (!f) throw IoError("cannot open catalog '" + c.catalog + "'");
  try {
    return parse_catalog(f);
  } catch (const CatalogError& e) {
    throw IoError("catalog '" + c.catalog + "': " + e.what());
  }
}

inline std::string fixed(double v, int digits = 12) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace detail

inline int cmd_enumerate(const RunConfig& c, std::ostream& out = std::cout) {
  const std::vector<FieldRecord> records = enumerate_family(c.X);
  std::ostringstream body;
  write_catalog(body, records, {"X=" + std::to_string(c.X), "sorted by (conductor, D)"});
  detail::emit(c.out, body.str(), out);
  return kExitOk;
}

/// Density table as CSV plus the summary block (returned separately for printing).
struct DensityOutput {
  std::string csv;
  std::string summary;
  FamilyAverage family;
  ReferenceMap references;
  SymmetryVerdict verdict;
};

inline DensityOutput compute_density(const RunConfig& c) {
  const TestFunctionPair tf = fejer_pair(c.beta);
  std::vector<FieldRecord> records = detail::load_or_enumerate(c);
  DensityOutput o;
  o.family = family_average(records, tf, c.mode);
  o.references = reference_statistics(records, tf);
  o.verdict = classify_symmetry(o.family.T, o.references);

  std::ostringstream csv;
  csv << "# X=" << c.X << " beta=" << c.beta << " mode=" << to_string(c.mode) << " test=fejer fields="
      << o.family.count << "\n";
  csv << "e3,d1,d2,D,conductor,archimedean,gamma_term,prime_sum,total\n";
  for (const DensityBreakdown& b : o.family.rows) {
    csv << b.label.e3 << "," << b.label.d1 << "," << b.label.d2 << "," << b.label.D() << "," << b.conductor << ","
        << detail::fixed(b.archimedean, 17) << "," << detail::fixed(b.gamma_term, 17) << ","
        << detail::fixed(b.prime_sum, 17) << "," << detail::fixed(b.total, 17) << "\n";
  }
  o.csv = csv.str();

  std::ostringstream sum;
  sum << "mode: " << to_string(c.mode) << (c.mode == LambdaMode::PaperLiteral ? " (paper-literal characters)" : "")
      << "\n";
  sum << "fields: " << o.family.count << "\n";
  sum << "average: " << detail::fixed(o.family.average) << "\n";
  sum << "mean_gamma: " << detail::fixed(o.family.mean_gamma) << "\n";
  sum << "T: " << detail::fixed(o.family.T) << "\n";
  for (KernelType k : kAllKernels) {
    sum << "reference_" << to_string(k) << ": " << detail::fixed(o.references.at(k)) << "\n";
  }
  sum << "classification: " << to_string(o.verdict.best) << (o.verdict.ambiguous ? " (ambiguous)" : "") << "\n";
  sum << "runner_up: " << to_string(o.verdict.runner_up) << "\n";
  sum << "margin: " << detail::fixed(o.verdict.margin) << "\n";
  o.summary = sum.str();
  return o;
}

inline int cmd_density(const RunConfig& c, std::ostream& out = std::cout) {
  const DensityOutput o = compute_density(c);
  if (c.out.empty()) {
    out << o.csv;
  } else {
    detail::emit(c.out, o.csv, out);
  }
  out << o.summary;
  return kExitOk;
}

/// The probe suite at the configured sizes, ordered by subject.
inline std::vector<ProbeReport> run_probe_suite(const RunConfig& c) {
  std::vector<ProbeReport> reports;
  reports.push_back(splitting_oracle_equivalence(200, 500));
  reports.push_back(fault_injection_probe());
  const std::vector<LabelPrime> pairs = sample_label_primes(1000);
  reports.push_back(choice_invariance_probe(pairs, LambdaMode::Kummer));
  reports.push_back(choice_invariance_probe(pairs, LambdaMode::PaperLiteral));
  reports.push_back(paper_literal_discrepancy(parse_label(7), 100));

  const std::vector<FieldLabel> corpus = calibration_corpus(50);
  const int k_star = calibrate_cube_level(corpus);
  ProbeReport audit;
  audit.subject = "ramification_at_3";
  audit.columns = {"label", "unramified", "split_i", "split_ii"};
  long disagree = 0, findings = 0;
  for (const FieldLabel& l : corpus) {
    const ProbeReport r = ramification_audit_at_3(l, k_star);
    if (r.failed()) ++disagree;
    if (r.status == ProbeStatus::Finding) ++findings;
    audit.rows.push_back({detail::str(l), r.numbers[1].second, r.numbers[2].second, r.numbers[3].second});
  }
  audit.note("k_star", k_star);
  audit.note("corpus", corpus.size());
  audit.note("probe_disagreements", disagree);
  audit.note("findings", findings);
  if (k_star == 0 || disagree != 0) {
    audit.fail();
  } else if (findings != 0) {
    audit.finding();
  }
  reports.push_back(audit);

  for (i64 D : {7, 9, 13, 19, 21, 31, 61, 63, 91, 133}) reports.push_back(ideal_count_crosscheck(parse_label(D), 10000));

  for (i64 p : c.primes) {
    ProbeReport r;
    r.subject = "char_sum_p" + std::to_string(p);
    const std::vector<CharSum> sums = char_sums(p, log_grid(c.ymax));
    r.columns = {"Y", "S", "|S|"};
    for (const CharSum& s : sums) r.rows.push_back({std::to_string(s.Y), detail::str(s.value), detail::fixed(s.magnitude)});
    const double e = fitted_exponent(sums);
    r.note("Ymax", c.ymax);
    r.note("exponent", e);
    if (sums.front().value != EisensteinInteger{1} || e > 1.1) r.fail();
    reports.push_back(r);
  }
  for (i64 p : {5, 13}) reports.push_back(genseries_compare(p, c.s, c.p0));
  reports.push_back(family_count_probe({1'000'000, 10'000'000, 100'000'000}));

  std::stable_sort(reports.begin(), reports.end(),
                   [](const ProbeReport& a, const ProbeReport& b) { return a.subject < b.subject; });
  return reports;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out = std::cout) {
  const std::vector<ProbeReport> reports = run_probe_suite(c);
  std::ostringstream body;
  bool failed = false;
  for (const ProbeReport& r : reports) {
    body << r.text() << "\n";
    failed = failed || r.failed();
  }
  body << "# summary\n";
  for (const ProbeReport& r : reports) body << r.summary_line() << "\n";
  detail::emit(c.out, body.str(), out);
  if (!c.out.empty()) {
    for (const ProbeReport& r : reports) out << r.summary_line() << "\n";
  }
  return failed ? kExitAssertion : kExitOk;
}

inline int cmd_charsum(const RunConfig& c, std::ostream& out = std::cout) {
  const std::vector<i64> grid = log_grid(c.ymax);
  std::ostringstream csv;
  csv << "# grid=log-spaced, 4 points per decade, Y<=" << c.ymax << ":";
  for (i64 y : grid) csv << " " << y;
  csv << "\n";
  csv << "p,Y,a,b,magnitude,exponent\n";
  for (i64 p : c.primes) {
    const std::vector<CharSum> sums = char_sums(p, grid);
    const double e = fitted_exponent(sums);
    for (const CharSum& s : sums) {
      csv << p << "," << s.Y << "," << s.value.a() << "," << s.value.b() << "," << detail::fixed(s.magnitude) << ","
          << detail::fixed(e, 6) << "\n";
    }
  }
  detail::emit(c.out, csv.str(), out);
  return kExitOk;
}

/// Dispatch with the documented exit codes; messages go to `err`.
inline int run_command(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    validate(c);
    if (c.command == "enumerate") return cmd_enumerate(c, out);
    if (c.command == "density") return cmd_density(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "charsum") return cmd_charsum(c, out);
    throw UsageError("unknown command '" + c.command + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const EmptyFamily& e) {
    err << "error: " << e.what() << "\n";
    return kExitAssertion;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
}

}  // namespace cyclic3
