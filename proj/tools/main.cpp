// cnd: command-line front end for the prime-sum deficit toolkit.
//
// Exit codes: 0 success/verified, 1 violation found, 2 usage/config error,
// 3 precision indeterminate, 4 resource/capacity exhausted.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <cnd/analytic_eval.hpp>
#include <cnd/bound_factory.hpp>
#include <cnd/errors.hpp>
#include <cnd/exact_coeffs.hpp>
#include <cnd/prime_engine.hpp>
#include <cnd/verifier.hpp>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIndeterminate = 3;
constexpr int kExitResource = 4;

struct GlobalOpts {
  uint64_t capacity = cnd::PrimeEngine::Config{}.capacity;
  uint64_t segment = cnd::PrimeEngine::Config{}.segment_span;
  int workers = 1;
  std::string format = "text";
  bool no_timestamp = false;
};

cnd::PrimeEngine make_engine(const GlobalOpts& g) {
  cnd::PrimeEngine::Config cfg;
  cfg.capacity = g.capacity;
  cfg.segment_span = g.segment;
  return cnd::PrimeEngine(cfg);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << text;
}

std::pair<uint64_t, uint64_t> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos)
    throw std::invalid_argument("range must look like A..B");
  uint64_t from = std::stoull(text.substr(0, dots));
  uint64_t to = std::stoull(text.substr(dots + 2));
  if (from < 1 || from > to)
    throw std::invalid_argument("range must satisfy 1 <= A <= B");
  return {from, to};
}

std::vector<uint64_t> parse_u64_list(const std::string& text) {
  std::vector<uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoull(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<cnd::Rational> parse_rational_list(const std::string& text) {
  std::vector<cnd::Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(cnd::parse_rational(item));
  }
  return out;
}

cnd::AisTable load_ais(const std::string& spec) {
  if (spec == "builtin-m2") return cnd::AisTable::builtin_m2();
  return cnd::AisTable::from_json(read_file(spec));
}

cnd::BoundHypothesis load_hypothesis(const std::string& spec) {
  if (spec == "prop53") return cnd::BoundHypothesis::prop53();
  if (spec == "prop56") return cnd::BoundHypothesis::prop56();
  return cnd::BoundHypothesis::from_json(read_file(spec));
}

cnd::BoundCertificate load_certificate(const std::string& spec) {
  if (spec == "prop53") return cnd::prop53_lower();
  if (spec == "prop56") return cnd::prop56_upper();
  return cnd::BoundCertificate::from_json(read_file(spec));
}

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json expansion_json(const cnd::AsymptoticExpansion& e) {
  json j;
  j["version"] = 1;
  switch (e.scale) {
    case cnd::Scale::N: j["scale"] = "n"; break;
    case cnd::Scale::HalfNSquared: j["scale"] = "n^2/2"; break;
    case cnd::Scale::PSquared: j["scale"] = "p^2"; break;
  }
  j["terms"] = json::array();
  for (const auto& t : e.terms)
    j["terms"].push_back({{"coeff", cnd::rational_str(t.coeff)},
                          {"logPower", t.log_power},
                          {"loglogPower", t.loglog_power},
                          {"exact", true}});
  j["remainder"] = e.remainder;
  return j;
}

void print_expansion_text(const cnd::AsymptoticExpansion& e) {
  const char* scale = e.scale == cnd::Scale::N              ? "n"
                      : e.scale == cnd::Scale::HalfNSquared ? "n^2/2"
                                                            : "p^2";
  std::cout << "scale: " << scale << "\n";
  for (const auto& t : e.terms) {
    std::cout << "  " << cnd::rational_str(t.coeff);
    if (t.loglog_power != 0) std::cout << " loglog^" << t.loglog_power;
    if (t.log_power > 0)
      std::cout << " / log^" << t.log_power;
    else if (t.log_power < 0)
      std::cout << " log^" << -t.log_power;
    std::cout << "\n";
  }
  std::cout << "remainder: " << e.remainder << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"prime-sum deficit toolkit"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--capacity", g.capacity, "sieve capacity (largest prime)")
      ->envname("CND_CAPACITY");
  app.add_option("--segment", g.segment, "sieve segment span");
  app.add_option("--workers", g.workers, "worker thread count")
      ->envname("CND_WORKERS")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--no-timestamp", g.no_timestamp,
               "omit timestamps for byte-identical output");

  // cn exact | cn stream
  auto* cn = app.add_subcommand("cn", "exact prime-sum deficit C_n");
  cn->require_subcommand(1);
  auto* cn_exact = cn->add_subcommand("exact", "single C_n");
  uint64_t n_arg = 0;
  cn_exact->add_option("--n", n_arg, "prime index")->required();
  auto* cn_stream = cn->add_subcommand("stream", "stream records over a range");
  std::string range_arg;
  std::string ckpt_path;
  uint64_t cadence = 1'000'000;
  cn_stream->add_option("--range", range_arg, "n range A..B")->required();
  cn_stream->add_option("--checkpoint", ckpt_path,
                        "checkpoint file to resume from / write to");
  cn_stream->add_option("--cadence", cadence, "records between checkpoints");

  // coeff b | t | thm29 | u-poly
  auto* coeff = app.add_subcommand("coeff", "exact coefficients");
  coeff->require_subcommand(1);
  auto* coeff_b = coeff->add_subcommand("b", "integer recurrence b_{s,i,j,r}");
  int bs = 0, bi = 0, bj = 0, br = 0;
  coeff_b->add_option("--s", bs)->required();
  coeff_b->add_option("--i", bi)->required();
  coeff_b->add_option("--j", bj)->required();
  coeff_b->add_option("--r", br)->required();
  auto* coeff_t = coeff->add_subcommand("t", "t_{i,j} from a_2..a_m");
  std::string a_list;
  int ti = 0, tj = 0;
  coeff_t->add_option("--a", a_list, "comma-separated a_2..a_m")->required();
  coeff_t->add_option("--i", ti)->required();
  coeff_t->add_option("--j", tj)->required();
  auto* coeff_29 = coeff->add_subcommand("thm29", "(k-1)!(1-2^-k)");
  int k_arg = 1;
  coeff_29->add_option("--k", k_arg)->required();
  auto* coeff_u = coeff->add_subcommand("u-poly", "monic polynomial U_s");
  int us = 1;
  std::string ais_spec = "builtin-m2";
  coeff_u->add_option("--s", us)->required();
  coeff_u->add_option("--ais", ais_spec, "builtin-m2 or a JSON file");

  // expand thm21 | thm29
  auto* expand = app.add_subcommand("expand", "asymptotic expansions");
  expand->require_subcommand(1);
  auto* exp21 = expand->add_subcommand("thm21", "C_n expansion, scale n^2/2");
  int m21 = 2;
  std::string ais21 = "builtin-m2";
  exp21->add_option("--m", m21)->required();
  exp21->add_option("--ais", ais21, "builtin-m2 or a JSON file");
  auto* exp29 = expand->add_subcommand("thm29", "C_n expansion, scale p_n^2");
  int m29 = 2;
  exp29->add_option("--m", m29)->required();

  // li
  auto* li_cmd = app.add_subcommand("li", "logarithmic integral with bound");
  double li_x = 0.0, li_tol = 1e-13;
  li_cmd->add_option("--x", li_x)->required();
  li_cmd->add_option("--rel-tol", li_tol);

  // lemma-check
  auto* lemma = app.add_subcommand("lemma-check", "li bound margins");
  std::string which = "lemma51";
  double lemma_x = 0.0;
  lemma->add_option("--which", which)
      ->check(CLI::IsMember({"lemma51", "lemma52", "lemma54"}));
  lemma->add_option("--x", lemma_x)->required();

  // certify
  auto* certify = app.add_subcommand("certify", "build a bound certificate");
  std::string hyp_spec;
  std::string cert_out;
  double cert_tol = 1e-13;
  certify->add_option("--hypothesis", hyp_spec, "prop53|prop56|FILE")
      ->required();
  certify->add_option("--out", cert_out, "write certificate JSON here");
  certify->add_option("--li-rel-tol", cert_tol);

  // verify
  auto* verify = app.add_subcommand("verify", "check a certificate on a range");
  std::string cert_spec, verify_range_arg;
  verify->add_option("--cert", cert_spec, "prop53|prop56|FILE")->required();
  verify->add_option("--range", verify_range_arg, "n range A..B")->required();

  // tables thm29 | corollary
  auto* tables = app.add_subcommand("tables", "empirical tables");
  tables->require_subcommand(1);
  auto* tab29 = tables->add_subcommand("thm29", "truncation error table");
  int tab_m = 4;
  std::string points_arg;
  tab29->add_option("--m", tab_m)->required();
  tab29->add_option("--points", points_arg, "comma-separated n values")
      ->required();
  auto* tabcor = tables->add_subcommand("corollary", "prime sum vs li/pi");
  std::string cor_points;
  uint64_t pi_cap = 20'000'000'000ULL;
  tabcor->add_option("--points", cor_points, "comma-separated n values")
      ->required();
  tabcor->add_option("--pi-capacity", pi_cap,
                     "largest p^2 the pi column will sieve");

  // spot-check
  auto* spot = app.add_subcommand("spot-check", "sample a pi hypothesis");
  std::string spot_hyp, samples_arg;
  spot->add_option("--hypothesis", spot_hyp, "prop53|prop56|FILE")->required();
  spot->add_option("--samples", samples_arg, "comma-separated x values")
      ->required();

  // Let global flags appear after subcommands, e.g. `verify ... --format json`.
  std::function<void(CLI::App*)> allow_globals = [&](CLI::App* a) {
    for (CLI::App* s : a->get_subcommands({})) {
      s->fallthrough();
      allow_globals(s);
    }
  };
  allow_globals(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*cn_exact) {
    cnd::PrimeEngine engine = make_engine(g);
    cnd::Int128 c = engine.cn_exact(n_arg);
    if (g.format == "json") {
      json j{{"version", 1},
             {"n", n_arg},
             {"p", engine.nth_prime(n_arg)},
             {"c", cnd::to_string(c)},
             {"exact", true}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << cnd::to_string(c) << "\n";
    }
    return kExitOk;
  }

  if (*cn_stream) {
    auto [from, to] = parse_range(range_arg);
    cnd::PrimeEngine engine = make_engine(g);
    std::optional<cnd::Checkpoint> resume;
    if (!ckpt_path.empty() && std::ifstream(ckpt_path).good())
      resume = cnd::Checkpoint::load(ckpt_path);
    if (g.format == "csv") std::cout << "n,p,sum,c\n";
    uint64_t since_ckpt = 0;
    cnd::PrimeRecord last{};
    auto emit = [&](const cnd::PrimeRecord& rec) {
      if (g.format == "json") {
        json j{{"n", rec.n},
               {"p", rec.p},
               {"sum", cnd::to_string(rec.sum)},
               {"c", cnd::to_string(rec.c)},
               {"exact", true}};
        std::cout << j.dump() << "\n";
      } else if (g.format == "csv") {
        std::cout << rec.n << ',' << rec.p << ',' << cnd::to_string(rec.sum)
                  << ',' << cnd::to_string(rec.c) << "\n";
      } else {
        std::cout << rec.n << ' ' << rec.p << ' ' << cnd::to_string(rec.sum)
                  << ' ' << cnd::to_string(rec.c) << "\n";
      }
      last = rec;
      if (!ckpt_path.empty() && ++since_ckpt >= cadence) {
        cnd::Checkpoint::from_record(rec).save(ckpt_path);
        since_ckpt = 0;
      }
    };
    if (resume && resume->n > from) {
      std::cerr << "checkpoint is past the range start; ignoring it\n";
      resume.reset();
    }
    if (resume)
      engine.cn_stream(from, to, emit, *resume);
    else
      engine.cn_stream(from, to, emit);
    if (!ckpt_path.empty() && last.n != 0)
      cnd::Checkpoint::from_record(last).save(ckpt_path);
    return kExitOk;
  }

  if (*coeff_b) {
    std::cout << cnd::b_coeff(bs, bi, bj, br).get_str() << "\n";
    return kExitOk;
  }
  if (*coeff_t) {
    auto a = parse_rational_list(a_list);
    std::cout << cnd::rational_str(cnd::t_coeff(a, ti, tj)) << "\n";
    return kExitOk;
  }
  if (*coeff_29) {
    std::cout << cnd::rational_str(cnd::thm29_coeff(k_arg)) << "\n";
    return kExitOk;
  }
  if (*coeff_u) {
    cnd::AisTable table = load_ais(ais_spec);
    cnd::Polynomial u = cnd::u_polynomial(us, table);
    if (g.format == "json") {
      json coeffs = json::array();
      for (const auto& c : u.coeffs)
        coeffs.push_back({{"value", cnd::rational_str(c)}, {"exact", true}});
      json j{{"version", 1}, {"s", us}, {"poly", u.str()}, {"coeffs", coeffs}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << u.str() << "\n";
    }
    return kExitOk;
  }

  if (*exp21) {
    auto e = cnd::thm21_expansion(m21, load_ais(ais21));
    if (g.format == "json")
      std::cout << expansion_json(e).dump() << "\n";
    else
      print_expansion_text(e);
    return kExitOk;
  }
  if (*exp29) {
    auto e = cnd::thm29_truncation(m29);
    if (g.format == "json")
      std::cout << expansion_json(e).dump() << "\n";
    else
      print_expansion_text(e);
    return kExitOk;
  }

  if (*li_cmd) {
    cnd::EvaluatedBound r = cnd::li(li_x, li_tol);
    if (g.format == "json") {
      json j{{"version", 1},
             {"x", li_x},
             {"value", r.value},
             {"absErr", r.abs_err}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << fmt_real(r.value) << " +- " << fmt_real(r.abs_err) << "\n";
    }
    return kExitOk;
  }

  if (*lemma) {
    cnd::LiBound b = which == "lemma51"   ? cnd::LiBound::Lemma51
                     : which == "lemma52" ? cnd::LiBound::Lemma52
                                          : cnd::LiBound::Lemma54;
    cnd::EvaluatedBound margin = cnd::li_bound_check(b, lemma_x);
    bool holds = margin.lo() >= 0.0;
    bool fails = margin.hi() < 0.0;
    const char* verdict =
        holds ? "verified" : fails ? "violated" : "indeterminate";
    if (g.format == "json") {
      json j{{"version", 1},
             {"lemma", which},
             {"x", lemma_x},
             {"margin", margin.value},
             {"absErr", margin.abs_err},
             {"verdict", verdict}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << verdict << " margin " << fmt_real(margin.value) << " +- "
                << fmt_real(margin.abs_err) << "\n";
    }
    return holds ? kExitOk : fails ? kExitViolated : kExitIndeterminate;
  }

  if (*certify) {
    cnd::BoundHypothesis h = load_hypothesis(hyp_spec);
    cnd::PrimeEngine engine = make_engine(g);
    cnd::BoundCertificate cert = cnd::make_certificate(h, engine, cert_tol);
    std::string text = cert.to_json();
    if (!cert_out.empty()) write_file(cert_out, text);
    std::cout << text << "\n";
    return kExitOk;
  }

  if (*verify) {
    auto [from, to] = parse_range(verify_range_arg);
    cnd::BoundCertificate cert = load_certificate(cert_spec);
    cnd::PrimeEngine engine = make_engine(g);
    cnd::VerificationReport report =
        cnd::verify_range(cert, engine, from, to, g.workers);
    if (g.format == "json") {
      std::cout << report.to_json(!g.no_timestamp) << "\n";
    } else if (g.format == "csv") {
      std::cout << cnd::VerificationReport::csv_header() << "\n"
                << report.to_csv_row() << "\n";
    } else {
      std::cout << report.verdict() << ": " << report.pass_count << " pass, "
                << report.fail_ns.size() << " fail, "
                << report.indeterminate_ns.size() << " indeterminate, "
                << report.out_of_domain_count << " out of domain; min margin "
                << fmt_real(report.min_margin) << " at n="
                << report.min_margin_n << "\n";
    }
    if (!report.fail_ns.empty()) return kExitViolated;
    if (!report.indeterminate_ns.empty()) return kExitIndeterminate;
    return kExitOk;
  }

  if (*tab29) {
    cnd::PrimeEngine engine = make_engine(g);
    auto rows =
        cnd::asymptotic_error_table(engine, tab_m, parse_u64_list(points_arg));
    if (g.format == "json") {
      json arr = json::array();
      for (const auto& r : rows)
        arr.push_back({{"n", r.n},
                       {"p", r.p},
                       {"c", cnd::to_string(r.c)},
                       {"truncation", r.truncation},
                       {"normalizedError", r.normalized_error},
                       {"absErr", 1e-12 * std::fabs(r.normalized_error)}});
      std::cout << json{{"version", 1}, {"m", tab_m}, {"rows", arr}}.dump()
                << "\n";
    } else {
      std::cout << "n,p,c,truncation,normalized_error\n";
      for (const auto& r : rows)
        std::cout << r.n << ',' << r.p << ',' << cnd::to_string(r.c) << ','
                  << fmt_real(r.truncation) << ','
                  << fmt_real(r.normalized_error) << "\n";
    }
    return kExitOk;
  }
  if (*tabcor) {
    cnd::PrimeEngine engine = make_engine(g);
    auto rows = cnd::corollary_tables(engine, parse_u64_list(cor_points), pi_cap);
    if (g.format == "json") {
      json arr = json::array();
      for (const auto& r : rows) {
        json row{{"n", r.n},
                 {"p", r.p},
                 {"primeSum", cnd::to_string(r.prime_sum)},
                 {"liP2", {{"value", r.li_p2.value}, {"absErr", r.li_p2.abs_err}}},
                 {"liDiffNormalized", r.li_diff_normalized}};
        if (r.pi_p2) {
          row["piP2"] = *r.pi_p2;
          row["piDiffNormalized"] = *r.pi_diff_normalized;
        }
        arr.push_back(row);
      }
      std::cout << json{{"version", 1}, {"rows", arr}}.dump() << "\n";
    } else {
      std::cout << "n,p,prime_sum,li_p2,pi_p2,li_diff_norm,pi_diff_norm\n";
      for (const auto& r : rows) {
        std::cout << r.n << ',' << r.p << ',' << cnd::to_string(r.prime_sum)
                  << ',' << fmt_real(r.li_p2.value) << ',';
        if (r.pi_p2)
          std::cout << *r.pi_p2;
        std::cout << ',' << fmt_real(r.li_diff_normalized) << ',';
        if (r.pi_diff_normalized)
          std::cout << fmt_real(*r.pi_diff_normalized);
        std::cout << "\n";
      }
    }
    return kExitOk;
  }

  if (*spot) {
    cnd::BoundHypothesis h = load_hypothesis(spot_hyp);
    cnd::PrimeEngine engine = make_engine(g);
    auto rows =
        cnd::hypothesis_spot_check(h, engine, parse_u64_list(samples_arg));
    if (g.format == "json") {
      json arr = json::array();
      for (const auto& r : rows)
        arr.push_back({{"x", r.x},
                       {"belowCutoff", r.below_cutoff},
                       {"margin", r.margin},
                       {"absErr", 1e-12 * std::fabs(r.margin)}});
      std::cout << json{{"version", 1}, {"rows", arr}}.dump() << "\n";
    } else {
      std::cout << "x,below_cutoff,margin\n";
      for (const auto& r : rows)
        std::cout << fmt_real(r.x) << ',' << (r.below_cutoff ? 1 : 0) << ','
                  << fmt_real(r.margin) << "\n";
    }
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cnd::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const cnd::PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return kExitIndeterminate;
  } catch (const cnd::CorruptionError& e) {
    std::cerr << "corrupt input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
