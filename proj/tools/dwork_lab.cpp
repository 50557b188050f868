#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dworklab.h"

using nlohmann::json;

namespace {

enum Exit { exit_ok = 0, exit_finding = 1, exit_usage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PolyDeleter {
  void operator()(dwl_polynomial* f) const { dwl_polynomial_free(f); }
};
struct SeqDeleter {
  void operator()(dwl_sequence* a) const { dwl_sequence_free(a); }
};
using Poly = std::unique_ptr<dwl_polynomial, PolyDeleter>;
using Seq = std::unique_ptr<dwl_sequence, SeqDeleter>;

// Throws on errors, returns true for DWL_FINDING.
bool check(dwl_status st) {
  if (st == DWL_OK) return false;
  if (st == DWL_FINDING) return true;
  throw ApiError(std::string(dwl_status_name(st)) + ": " + dwl_last_error());
}

json take_json(char* s) {
  json j = json::parse(s);
  dwl_string_free(s);
  return j;
}

std::string take_string(char* s) {
  std::string out(s);
  dwl_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Input {
  std::string catalog;
  std::string path;
  std::string poly;
  std::string sequence;
};

void add_input(CLI::App* cmd, Input& in, bool allow_sequence) {
  cmd->add_option("--catalog", in.catalog, "catalog entry name");
  cmd->add_option("--input", in.path, "polynomial file, text grammar or JSON");
  cmd->add_option("--poly", in.poly, "polynomial in the text grammar");
  if (allow_sequence) cmd->add_option("--sequence", in.sequence, "period sequence JSON file");
}

int count_sources(const Input& in) {
  return !in.catalog.empty() + !in.path.empty() + !in.poly.empty() + !in.sequence.empty();
}

Poly load_polynomial(const Input& in) {
  if (count_sources(in) != 1 || !in.sequence.empty())
    throw UsageError("give exactly one of --catalog, --input, --poly");
  dwl_polynomial* f = nullptr;
  if (!in.catalog.empty())
    check(dwl_polynomial_from_catalog(in.catalog.c_str(), &f));
  else if (!in.path.empty())
    check(dwl_polynomial_parse(read_file(in.path).c_str(), &f));
  else
    check(dwl_polynomial_parse(in.poly.c_str(), &f));
  return Poly(f);
}

Seq compute_sequence(const Input& in, std::size_t max_n, const std::string& method,
                     unsigned long modulus_prime, unsigned modulus_exponent) {
  dwl_sequence* a = nullptr;
  if (!in.sequence.empty()) {
    if (count_sources(in) != 1) throw UsageError("give exactly one of --catalog, --input, --poly, --sequence");
    check(dwl_sequence_from_json(read_file(in.sequence).c_str(), &a));
    Seq s(a);
    if (dwl_sequence_length(a) < max_n + 1)
      throw UsageError("insufficient sequence length: index " + std::to_string(max_n) + " needed, " +
                       std::to_string(dwl_sequence_length(a)) + " values given");
    return s;
  }
  Poly f = load_polynomial(in);
  check(dwl_period(f.get(), max_n, method.c_str(), modulus_prime, modulus_exponent, &a));
  return Seq(a);
}

unsigned thread_count(unsigned flag) {
  if (flag != 0) return flag;
  if (const char* env = std::getenv("DWORK_LAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw UsageError("DWORK_LAB_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return 1;
}

std::uint64_t ipow(unsigned long p, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= p;
  return r;
}

void write_output(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constant-term sequences of Laurent polynomials and their Dwork congruences"};
  app.require_subcommand(1);
  std::string output;
  unsigned threads = 0;
  app.add_option("--output,-o", output, "write the JSON report to a file");
  app.add_option("--threads", threads, "worker threads (default DWORK_LAB_THREADS or 1)");
  app.fallthrough();

  Input in;

  auto* parse = app.add_subcommand("parse", "parse a polynomial and print its canonical form");
  add_input(parse, in, false);

  unsigned long analyze_prime = 0;
  auto* analyze = app.add_subcommand("analyze", "Newton polytope certificate and kernel lattice");
  add_input(analyze, in, false);
  analyze->add_option("--prime", analyze_prime, "also check the kernel gcd condition for this prime");

  std::size_t period_n = 12;
  std::string method = "pruned";
  unsigned long mod_p = 0;
  unsigned mod_s = 1;
  auto* period = app.add_subcommand("period", "constant terms a(n) of f^n");
  add_input(period, in, false);
  period->add_option("--max-n", period_n, "largest n");
  period->add_option("--method", method, "pruned or multinomial")->check(CLI::IsMember({"pruned", "multinomial"}));
  period->add_option("--modulus-prime", mod_p, "reduce modulo p^s");
  period->add_option("--modulus-exponent", mod_s, "s for --modulus-prime");

  std::string kind;
  unsigned long prime = 0;
  unsigned s = 1;
  std::uint64_t max_n = 0;
  std::optional<std::uint64_t> digit_bound, covering_k;
  std::string ring = "exact";
  std::size_t max_witnesses = 10;
  auto* congruence = app.add_subcommand("congruence", "check a Dwork-type congruence");
  add_input(congruence, in, true);
  congruence->add_option("--kind", kind, "d1, d3, digit, thm41 or covering")
      ->required()
      ->check(CLI::IsMember({"d1", "d3", "digit", "thm41", "covering"}));
  congruence->add_option("--prime", prime, "the prime p")->required();
  congruence->add_option("--s", s, "level s (d3: all levels up to s)");
  congruence->add_option("--max-n", max_n, "largest index for d1, d3 and digit");
  congruence->add_option("--digit-bound", digit_bound, "bound on the top digit (thm41, covering; default p-1)");
  congruence->add_option("--k", covering_k, "covering index (default: from the kernel lattice)");
  congruence->add_option("--ring", ring, "exact or modular")->check(CLI::IsMember({"exact", "modular"}));
  congruence->add_option("--method", method, "pruned or multinomial")->check(CLI::IsMember({"pruned", "multinomial"}));
  congruence->add_option("--max-witnesses", max_witnesses, "witnesses kept in the report");

  unsigned long dec_n = 1;
  bool sweep = false;
  auto* decompose = app.add_subcommand("decompose", "layers g_{n,k} of f^(n p^s) and the exchange sweep");
  add_input(decompose, in, false);
  decompose->add_option("--n", dec_n, "n");
  decompose->add_option("--prime", prime, "the prime p")->required();
  decompose->add_option("--s", s, "number of levels");
  decompose->add_flag("--sweep", sweep, "also run the exhaustive summand exchange at level s");

  std::string lemma = "all";
  std::uint64_t trials = 10000, seed = 20240601;
  unsigned max_s = 8;
  auto* lemmas = app.add_subcommand("verify-lemmas", "seeded random checks of the splitting lemmas");
  lemmas->add_option("--lemma", lemma, "all, existence, multiplicity, common-left or common-right")
      ->check(CLI::IsMember({"all", "existence", "multiplicity", "common-left", "common-right"}));
  lemmas->add_option("--trials", trials, "instances per lemma");
  lemmas->add_option("--seed", seed, "random seed");
  lemmas->add_option("--max-s", max_s, "largest s drawn");

  std::string x = "0";
  unsigned precision = 0;
  auto* unitroot = app.add_subcommand("unitroot", "successive ratios F^{s+1}(x)/F^s(x^p)");
  add_input(unitroot, in, true);
  unitroot->add_option("--prime", prime, "the prime p")->required();
  unitroot->add_option("--x", x, "evaluation point (decimal integer)");
  unitroot->add_option("--s", s, "largest s");
  unitroot->add_option("--precision", precision, "p-adic precision (default s+1)");

  std::string entry;
  auto* catalog = app.add_subcommand("catalog", "list catalog entries or show one");
  catalog->add_option("--name", entry, "entry name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    json report;
    bool finding = false;
    std::string summary;
    char* buf = nullptr;

    if (parse->parsed()) {
      Poly f = load_polynomial(in);
      check(dwl_polynomial_to_json(f.get(), &buf));
      report = take_json(buf);
      check(dwl_polynomial_format(f.get(), &buf));
      report["text"] = take_string(buf);
      summary = "parsed " + std::to_string(report["terms"].size()) + " terms";
    } else if (analyze->parsed()) {
      Poly f = load_polynomial(in);
      finding = check(dwl_analyze(f.get(), analyze_prime, &buf));
      report = take_json(buf);
      summary = std::string("unique=") + (report["unique"].get<bool>() ? "true" : "false") +
                " k=" + report["k"].get<std::string>();
      if (report.contains("kernel_gcd_condition")) {
        const std::string outcome = report["kernel_gcd_condition"]["outcome"];
        summary += " kernel gcd condition: " + outcome;
        finding = outcome == "violated";
      }
    } else if (period->parsed()) {
      Seq a = compute_sequence(in, period_n, method, mod_p, mod_s);
      check(dwl_sequence_to_json(a.get(), &buf));
      report = take_json(buf);
      summary = "computed a(0.." + std::to_string(period_n) + ")";
    } else if (congruence->parsed()) {
      const std::uint64_t bound = digit_bound ? *digit_bound : prime - 1;
      std::uint64_t k = 1;
      if (kind == "covering") {
        if (covering_k) {
          k = *covering_k;
        } else {
          Poly f = load_polynomial(in);
          check(dwl_analyze(f.get(), 0, &buf));
          k = std::stoull(take_json(buf)["k"].get<std::string>());
          if (k == 0) throw UsageError("covering index is 0; pass --k");
        }
      }
      std::uint64_t need = max_n;
      unsigned exponent = 1;
      if (kind == "thm41" || kind == "covering") {
        need = k * ((ipow(prime, s) - 1) + bound * ipow(prime, s));
        exponent = s;
      } else if (kind == "d3") {
        exponent = s + 1;
      }
      if (ring == "modular" && kind == "d1") throw UsageError("d1 needs exact values");
      Seq a = compute_sequence(in, need, method, ring == "modular" ? prime : 0, exponent);
      dwl_congruence_params params{kind.c_str(), prime, s, max_n, bound, k, max_witnesses};
      finding = check(dwl_congruence(a.get(), &params, &buf));
      report = take_json(buf);
      summary = kind + " p=" + std::to_string(prime) + ": " + report["status"].get<std::string>() + ", " +
                std::to_string(report["violations"].get<std::uint64_t>()) + " violations in " +
                std::to_string(report["instances"].get<std::uint64_t>()) + " instances";
    } else if (decompose->parsed()) {
      Poly f = load_polynomial(in);
      finding = check(dwl_decompose(f.get(), dec_n, prime, s, &buf));
      report = take_json(buf);
      summary = std::string("reconstruction ") + (report["reconstruction_holds"].get<bool>() ? "holds" : "FAILS");
      if (sweep) {
        finding |= check(dwl_exchange_sweep(f.get(), prime, s, &buf));
        report["exchange_sweep"] = take_json(buf);
        summary += ", exchange sweep: " +
                   std::to_string(report["exchange_sweep"]["failures"].get<std::uint64_t>()) + " failures in " +
                   std::to_string(report["exchange_sweep"]["instances"].get<std::uint64_t>()) + " instances";
      }
    } else if (lemmas->parsed()) {
      const unsigned t = thread_count(threads);
      std::vector<std::string> names = {"existence", "multiplicity", "common-left", "common-right"};
      if (lemma != "all") names = {lemma};
      report = json::array();
      std::uint64_t total = 0;
      for (const auto& name : names) {
        finding |= check(dwl_verify_lemma(name.c_str(), trials, seed, max_s, t, &buf));
        report.push_back(take_json(buf));
        total += report.back()["counterexamples"].get<std::uint64_t>();
      }
      summary = std::to_string(names.size()) + " lemmas, " + std::to_string(total) + " counterexamples";
    } else if (unitroot->parsed()) {
      const unsigned prec = precision == 0 ? s + 1 : precision;
      Seq a = compute_sequence(in, ipow(prime, s + 1) - 1, "pruned", prime, prec);
      int in_domain = 0;
      check(dwl_domain_check(a.get(), prime, x.c_str(), &in_domain));
      if (!in_domain) {
        report = {{"p", prime}, {"x", x}, {"in_domain", false}};
        finding = true;
        summary = "x is outside the domain: F^1(x) is divisible by p";
      } else {
        finding = check(dwl_unit_root(a.get(), prime, x.c_str(), s, prec, &buf));
        report = take_json(buf);
        report["in_domain"] = true;
        summary = std::string("ratios ") + (report["consistent"].get<bool>() ? "agree" : "DISAGREE") +
                  ", unit root approximation " + report["value"]["residue"].get<std::string>();
      }
    } else if (catalog->parsed()) {
      if (entry.empty())
        check(dwl_catalog_list(&buf));
      else
        check(dwl_catalog_entry(entry.c_str(), &buf));
      report = take_json(buf);
      summary = entry.empty() ? std::to_string(report.size()) + " entries" : entry;
    }

    write_output(report, output);
    std::cerr << summary << "\n";
    return finding ? exit_finding : exit_ok;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
}
