// Copyright 2026 The qmckit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Command-line front end. Every subcommand prints a human-readable report
// by default and a JSON document with --json. With --out DIR the report and
// any artifacts are written to DIR together with manifest.json.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qmckit/io.hpp"
#include "qmckit/qmckit.hpp"
#include "qmckit/reproduce.hpp"

#ifndef QMCKIT_README_PATH
#define QMCKIT_README_PATH ""
#endif

namespace {

using nlohmann::json;
using namespace qmckit;

struct Context {
  bool json_output = false;
  unsigned threads = 1;
  std::string out_dir;
};

struct Outcome {
  json report;
  std::string text;
  std::vector<std::pair<std::string, std::string>> artifacts;
  int code = 0;
};

std::vector<std::string> split_list(const std::string& text, char sep = ',') {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, sep)) {
    if (token.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
    out.push_back(token);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<std::int64_t> int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& t : split_list(text)) {
    std::size_t used = 0;
    const long long v = std::stoll(t, &used);
    if (used != t.size()) throw std::invalid_argument("bad integer '" + t + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<std::uint64_t> uint_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (auto v : int_list(text)) {
    if (v < 0) throw std::invalid_argument("negative value in '" + text + "'");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

/// A missing or conflicting option that the parser cannot express; exit 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void require(bool present, const std::string& what) {
  if (!present) throw UsageError(what);
}

/// log_b(n) when n is an exact power of b.
std::size_t exact_log(std::uint64_t n, std::uint64_t b) {
  std::size_t m = 0;
  std::uint64_t v = 1;
  while (v < n) {
    v *= b;
    ++m;
  }
  if (v != n) throw std::invalid_argument(std::to_string(n) + " points is not a power of " + std::to_string(b));
  return m;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string kind;
  std::uint64_t n = 0, b = 0, s = 0, m = 0, start = 0;
  std::string a, alpha, bases, f, g, matrices, first, second;
  bool allow_non_coprime = false;
};

Outcome cmd_gen(const GenArgs& args, const Context& ctx) {
  PointSet p;
  std::optional<GeneratingMatrixSet> mats;
  if (args.kind == "lattice") {
    require(args.n > 0 && !args.a.empty(), "lattice needs --N and --a");
    p = lattice_points(int_list(args.a), args.n);
  } else if (args.kind == "kronecker") {
    require(args.n > 0 && !args.alpha.empty(), "kronecker needs --N and --alpha");
    std::vector<KroneckerAlpha> alphas;
    for (const auto& t : split_list(args.alpha)) alphas.push_back(parse_alpha(t));
    p = kronecker(alphas, args.n);
  } else if (args.kind == "halton") {
    require(args.n > 0 && !args.bases.empty(), "halton needs --N and --bases");
    p = halton(uint_list(args.bases), args.n, args.start, args.allow_non_coprime);
  } else if (args.kind == "niederreiter") {
    require(args.b > 0 && args.s > 0 && args.m > 0, "niederreiter needs --b, --s and --m");
    mats = niederreiter_matrices(static_cast<std::uint32_t>(args.b), args.s, args.m, args.m);
    p = digital_net(*mats);
  } else if (args.kind == "polylattice") {
    require(args.b > 0 && !args.f.empty() && !args.g.empty(), "polylattice needs --b, --f and --g");
    const PrimeField F(args.b);
    PolyLatticeParams params{parse_coefficients(F, args.f), {}};
    for (const auto& t : split_list(args.g, ';')) params.generators.push_back(parse_coefficients(F, t));
    mats = polynomial_lattice_matrices(params);
    p = polynomial_lattice(params);
  } else if (args.kind == "digital") {
    require(!args.matrices.empty(), "digital needs --matrices FILE");
    const auto j = json::parse(io::read_file(args.matrices));
    mats = io::matrices_from_json(j.contains("generating_matrices") ? j.at("generating_matrices") : j);
    p = digital_net(*mats);
  } else if (args.kind == "hybrid") {
    require(!args.first.empty() && !args.second.empty(), "hybrid needs --first and --second CSV files");
    p = hybrid(io::points_from_csv(io::read_file(args.first)), io::points_from_csv(io::read_file(args.second)));
  } else {
    throw std::invalid_argument("unknown kind '" + args.kind + "'");
  }
  Outcome o;
  const std::string csv = io::points_to_csv(p);
  const json side = io::sidecar(p, mats ? &*mats : nullptr);
  o.artifacts = {{"points.csv", csv}, {"points.json", side.dump(2) + "\n"}};
  o.report = side;
  o.report.erase("generating_matrices");
  if (ctx.out_dir.empty()) {
    o.text = csv;
  } else {
    o.text = "wrote " + std::to_string(p.size()) + " points (s=" + std::to_string(p.dimension()) + ", " +
             to_string(p.representation()) + ") to " + ctx.out_dir + "\n";
  }
  return o;
}

struct VerifyArgs {
  std::string points, sidecar;
  std::uint64_t b = 0;
  std::optional<std::size_t> m, t;
};

Outcome cmd_verify(const VerifyArgs& args) {
  const PointSet p = io::points_from_csv(io::read_file(args.points));
  std::optional<GeneratingMatrixSet> mats;
  if (!args.sidecar.empty()) {
    const auto j = json::parse(io::read_file(args.sidecar));
    if (j.contains("generating_matrices")) mats = io::matrices_from_json(j.at("generating_matrices"));
  }
  std::uint64_t b = args.b;
  if (b == 0 && mats) b = mats->base;
  require(b >= 2, "verify needs --b (or a sidecar with generating matrices)");
  const std::size_t m = args.m ? *args.m : exact_log(p.size(), b);
  const std::size_t s = p.dimension();
  Outcome o;
  const std::size_t t_geo = minimal_t_geometric(p, b, m, s);
  o.report = {{"n", p.size()}, {"s", s}, {"b", b}, {"m", m}, {"t_geometric", t_geo}};
  o.text = "(t,m,s)-net in base " + std::to_string(b) + ": m=" + std::to_string(m) + " s=" +
           std::to_string(s) + " minimal t (geometric) = " + std::to_string(t_geo) + "\n";
  if (mats) {
    if (mats->base != b) throw std::invalid_argument("sidecar base differs from --b");
    const std::size_t t_dual = minimal_t_dual(*mats);
    o.report["t_dual"] = t_dual;
    o.text += "minimal t (dual) = " + std::to_string(t_dual) + "\n";
    if (t_dual != t_geo) {
      o.code = 1;
      o.text += "geometric and dual t disagree\n";
    }
  }
  if (args.t) {
    const bool net = t_geo <= *args.t;
    o.report["t"] = *args.t;
    o.report["is_net"] = net;
    o.text += std::string("is a (") + std::to_string(*args.t) + "," + std::to_string(m) + "," +
              std::to_string(s) + ")-net: " + (net ? "yes" : "no") + "\n";
    if (!net) o.code = 1;
  }
  return o;
}

Outcome cmd_discrepancy(const std::string& points, std::size_t samples, std::uint64_t seed) {
  const PointSet p = io::points_from_csv(io::read_file(points));
  Outcome o;
  o.report = {{"n", p.size()}, {"s", p.dimension()}};
  try {
    const auto d = star_discrepancy(p);
    o.report["method"] = "exact";
    o.report["star_discrepancy"] = io::to_json(d);
    o.text = "D*_N = " + io::format_double(d.value) + (d.exact ? " = " + to_string(*d.exact) : "") + " (exact)\n";
  } catch (const std::length_error& e) {
    const double lb = star_discrepancy_lower_bound(p, samples, seed);
    o.report["method"] = "sampled_lower_bound";
    o.report["lower_bound"] = lb;
    o.report["samples"] = samples;
    o.report["seed"] = seed;
    o.text = "D*_N >= " + io::format_double(lb) + " (lower bound from " + std::to_string(samples) +
             " sampled boxes; exact budget exceeded)\n";
  }
  return o;
}

Outcome cmd_p2(const std::string& a_text, std::uint64_t n) {
  const auto a = int_list(a_text);
  const double v = p_alpha(a, n);
  Outcome o;
  o.report = {{"a", a}, {"N", n}, {"p2", v}};
  o.text = "P_2 = " + io::format_double(v) + "\n";
  return o;
}

Outcome cmd_integrate(const std::string& points, const std::string& integrand, const std::string& box) {
  const PointSet p = io::points_from_csv(io::read_file(points));
  Integrand f;
  double exact = 1.0;
  if (integrand == "product") {
    f = [](std::span<const double> x) {
      double v = 1.0;
      for (double xi : x) v *= 2.0 * xi;
      return v;
    };
  } else if (integrand == "exp") {
    f = [](std::span<const double> x) {
      double v = 1.0;
      for (double xi : x) v *= std::exp(xi) / (std::exp(1.0) - 1.0);
      return v;
    };
  } else if (integrand == "box") {
    std::vector<double> y;
    for (const auto& t : split_list(box)) y.push_back(std::stod(t));
    if (y.size() != p.dimension()) throw std::invalid_argument("--box needs one corner coordinate per dimension");
    exact = 1.0;
    for (double v : y) exact *= v;
    f = [y](std::span<const double> x) {
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (!(x[j] < y[j])) return 0.0;
      }
      return 1.0;
    };
  } else {
    throw std::invalid_argument("unknown integrand '" + integrand + "' (product, exp, box)");
  }
  const double est = qmc_integrate(f, p);
  Outcome o;
  o.report = {{"integrand", integrand}, {"n", p.size()}, {"estimate", est}, {"exact", exact},
              {"error", std::fabs(est - exact)}};
  o.text = "estimate " + io::format_double(est) + ", exact " + io::format_double(exact) + ", error " +
           io::format_double(std::fabs(est - exact)) + "\n";
  return o;
}

Outcome cmd_isbn(const std::string& code) {
  const auto r = isbn10_check(code);
  Outcome o;
  o.report = {{"isbn", code}, {"valid", r.valid}, {"weighted_sum", r.weighted_sum}, {"digits", r.digits}};
  o.text = code + ": weighted sum " + std::to_string(r.weighted_sum) + (r.valid ? " = 0 mod 11, valid\n" : " != 0 mod 11, invalid\n");
  o.code = r.valid ? 0 : 1;
  return o;
}

Outcome cmd_cmsweep(std::uint64_t q, std::uint64_t q_max) {
  require((q == 0) != (q_max == 0), "cmsweep needs exactly one of --q and --qmax");
  std::vector<std::uint64_t> primes;
  if (q) {
    if (!is_prime(q) || q == 2) throw std::invalid_argument("--q must be an odd prime");
    primes.push_back(q);
  } else {
    for (std::uint64_t p = 3; p <= q_max; p += 2) {
      if (is_prime(p)) primes.push_back(p);
    }
  }
  Outcome o;
  o.report = json::array();
  std::size_t mismatches = 0;
  for (auto p : primes) {
    const auto sweep = fb_sweep(p);
    mismatches += sweep.mismatches.size();
    o.report.push_back({{"q", p}, {"count", sweep.count}, {"witnesses", sweep.witnesses},
                        {"mismatches", sweep.mismatches}});
    std::vector<std::string> w;
    for (auto b : sweep.witnesses) w.push_back(std::to_string(b));
    o.text += "q=" + std::to_string(p) + ": " + std::to_string(sweep.count) + " complete f_b, b in {" +
              join(w, ",") + "}" + (sweep.mismatches.empty() ? "" : ", criterion MISMATCH") + "\n";
  }
  if (mismatches) o.code = 1;
  return o;
}

Outcome cmd_factor(std::uint64_t p, const std::string& coeffs) {
  const PrimeField F(p);
  const Poly f = parse_coefficients(F, coeffs);
  const auto r = factor(f);
  Outcome o;
  json factors = json::array();
  o.text = f.to_string() + " = " + std::to_string(r.content);
  for (const auto& fac : r.factors) {
    factors.push_back({{"coefficients", format_coefficients(fac.poly)}, {"multiplicity", fac.multiplicity}});
    o.text += " * (" + fac.poly.to_string() + ")" + (fac.multiplicity > 1 ? "^" + std::to_string(fac.multiplicity) : "");
  }
  o.text += "\n";
  o.report = {{"p", p}, {"input", format_coefficients(f)}, {"content", r.content}, {"factors", factors},
              {"reassembles", r.reassemble() == f}};
  return o;
}

struct InversiveArgs {
  std::uint64_t q = 0, a = 1, b = 0, u0 = 0, n = 20, s = 0;
};

Outcome cmd_inversive(const InversiveArgs& args) {
  const InversiveGenerator gen(args.q, static_cast<FieldElement>(args.a), static_cast<FieldElement>(args.b),
                               static_cast<FieldElement>(args.u0));
  const auto period = least_period(gen);
  const auto seq = gen.sequence(args.n);
  Outcome o;
  o.report = {{"q", args.q}, {"a", args.a}, {"b", args.b}, {"u0", args.u0}, {"sequence", seq},
              {"preperiod", period.preperiod}, {"period", period.period}};
  std::vector<std::string> shown;
  for (auto u : seq) shown.push_back(std::to_string(u));
  o.text = "u = " + join(shown, " ") + "\npreperiod " + std::to_string(period.preperiod) + ", period " +
           std::to_string(period.period) + "\n";
  if (args.s) {
    std::vector<std::uint64_t> windows;
    for (std::uint64_t n = 1; n <= period.preperiod + period.period; ++n) windows.push_back(n);
    const auto stats = residue_stats(gen, args.s, windows);
    double worst = 0.0;
    bool ok = true;
    for (const auto& st : stats) {
      worst = std::max(worst, st.deviation / st.bound);
      ok = ok && st.satisfied;
    }
    o.report["s"] = args.s;
    o.report["windows"] = windows.size();
    o.report["max_deviation_over_bound"] = worst;
    o.report["bound_holds"] = ok;
    o.text += "s=" + std::to_string(args.s) + ": max |R_s(N)-N/s| / bound = " + io::format_double(worst) +
              (ok ? " (bound holds)\n" : " (bound VIOLATED)\n");
    if (!ok) o.code = 1;
  }
  return o;
}

Outcome cmd_inversive_audit(std::uint64_t q_max, const std::string& b_text, std::uint64_t u0, unsigned threads) {
  std::vector<FieldElement> bs;
  for (auto v : uint_list(b_text)) bs.push_back(static_cast<FieldElement>(v));
  const auto summary = inversive_audit(q_max, bs, static_cast<FieldElement>(u0), threads);
  Outcome o;
  json violations = json::array();
  for (const auto& v : summary.violations) {
    violations.push_back({{"q", v.q}, {"a", v.a}, {"b", v.b}, {"u0", v.u0}, {"s", v.s}, {"N", v.n},
                          {"count", v.count}, {"deviation", v.deviation}, {"bound", v.bound}});
  }
  o.report = {{"q_max", summary.q_max}, {"parameter_sets", summary.parameter_sets}, {"checks", summary.checks},
              {"short_periods", summary.short_periods}, {"violations", violations}};
  o.text = std::to_string(summary.parameter_sets) + " parameter sets, " + std::to_string(summary.checks) +
           " checks, " + std::to_string(summary.short_periods) + " with period < 4, " +
           std::to_string(summary.violations.size()) + " violations\n";
  o.code = summary.violations.empty() ? 0 : 1;
  return o;
}

struct ZarembaArgs {
  std::uint64_t base = 2, c = 3, n_min = 2, n_max = 0;
  unsigned m_max = 0;
  bool any_n = false;
};

Outcome cmd_zaremba(const ZarembaArgs& args) {
  Outcome o;
  std::string csv;
  o.report = {{"c", args.c}};
  json rows = json::array();
  std::size_t absent = 0;
  auto row_text = [](const std::optional<std::uint64_t>& w, const std::vector<std::uint64_t>& qs) {
    std::vector<std::string> parts;
    for (auto q : qs) parts.push_back(std::to_string(q));
    return (w ? std::to_string(*w) : std::string()) + "," + join(parts, " ");
  };
  if (args.any_n) {
    require(args.n_max >= args.n_min && args.n_min >= 2, "--any-N needs 2 <= --nmin <= --nmax");
    csv = "N,witness,quotients\n";
    for (std::uint64_t n = args.n_min; n <= args.n_max; ++n) {
      const auto w = zaremba_search(n, args.c);
      const auto qs = w ? continued_fraction(*w, n).quotients : std::vector<std::uint64_t>{};
      absent += w ? 0 : 1;
      csv += std::to_string(n) + "," + row_text(w, qs) + "\n";
      rows.push_back({{"N", n}, {"witness", w ? json(*w) : json(nullptr)}, {"quotients", qs}});
    }
    o.report["mode"] = "any-N";
  } else {
    require(args.m_max >= 1, "zaremba needs --mmax >= 1");
    csv = "m,N,witness,quotients\n";
    for (const auto& r : zaremba_table(args.base, args.m_max, args.c)) {
      absent += r.witness ? 0 : 1;
      csv += std::to_string(r.m) + "," + std::to_string(r.n) + "," + row_text(r.witness, r.quotients) + "\n";
      rows.push_back({{"m", r.m}, {"N", r.n}, {"witness", r.witness ? json(*r.witness) : json(nullptr)},
                      {"quotients", r.quotients}});
    }
    o.report["base"] = args.base;
  }
  o.report["rows"] = rows;
  o.report["absent"] = absent;
  o.artifacts = {{"zaremba.csv", csv}};
  o.text = csv;
  return o;
}

Outcome cmd_reproduce(int id, unsigned threads, const std::string& readme) {
  const auto r = reproduce::run(id, threads, readme);
  Outcome o;
  o.report = {{"criterion", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail},
              {"time_limit_seconds", r.time_limit}};
  o.text = std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.title + ": " +
           r.detail + " (" + reproduce::detail::fmt(r.seconds, 3) + " s)\n";
  o.code = r.passed ? 0 : 1;
  return o;
}

// ---------------------------------------------------------------------------

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const std::length_error*>(&e)) return "budget_exceeded";
  if (dynamic_cast<const std::overflow_error*>(&e)) return "overflow";
  if (dynamic_cast<const std::out_of_range*>(&e)) return "out_of_range";
  if (dynamic_cast<const std::invalid_argument*>(&e)) return "invalid_argument";
  if (dynamic_cast<const std::domain_error*>(&e)) return "domain_error";
  if (dynamic_cast<const json::exception*>(&e)) return "bad_json";
  return "error";
}

/// Every option given on the command line, keyed by its name.
std::map<std::string, std::string> recorded_parameters(const CLI::App* sub) {
  std::map<std::string, std::string> params;
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->count() == 0) continue;
    std::string name = opt->get_name(false, true);
    name.erase(0, name.find_first_not_of('-'));
    if (name == "help") continue;
    params[name] = opt->get_expected_min() == 0 ? "true" : join(opt->results(), ",");
  }
  return params;
}

void write_artifacts(const Context& ctx, const std::string& command, const std::map<std::string, std::string>& params,
                     Outcome& o) {
  namespace fs = std::filesystem;
  fs::create_directories(ctx.out_dir);
  o.artifacts.emplace_back("report.json", o.report.dump(2) + "\n");
  io::RunManifest manifest{command, params, {}};
  for (const auto& [name, contents] : o.artifacts) {
    io::write_file((fs::path(ctx.out_dir) / name).string(), contents);
    manifest.add_output(name, contents);
  }
  io::write_file((fs::path(ctx.out_dir) / "manifest.json").string(), manifest.to_json().dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmckit: finite-field algebra, low-discrepancy point sets and their quality measures"};
  app.require_subcommand(1);
  Context ctx;
  app.add_flag("--json", ctx.json_output, "Print the report as JSON");
  app.add_option("--threads", ctx.threads, "Worker threads for parallel audits")->check(CLI::Range(1, 256));
  app.add_option("--out", ctx.out_dir, "Directory for the report, artifacts and manifest.json");

  std::function<Outcome()> action;
  auto sub = [&app](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  GenArgs gen;
  auto* gen_cmd = sub("gen", "Generate a point set");
  gen_cmd->add_option("--kind", gen.kind, "lattice, kronecker, halton, niederreiter, polylattice, digital or hybrid")
      ->required()
      ->check(CLI::IsMember({"lattice", "kronecker", "halton", "niederreiter", "polylattice", "digital", "hybrid"}));
  gen_cmd->add_option("--N", gen.n, "Number of points");
  gen_cmd->add_option("--a", gen.a, "Lattice generating vector, e.g. 1,34");
  gen_cmd->add_option("--alpha", gen.alpha, "Kronecker directions, e.g. sqrt(2),sqrt(3)");
  gen_cmd->add_option("--bases", gen.bases, "Halton bases, e.g. 2,3");
  gen_cmd->add_option("--start", gen.start, "First Halton index");
  gen_cmd->add_flag("--allow-non-coprime", gen.allow_non_coprime, "Accept Halton bases sharing a factor");
  gen_cmd->add_option("--b", gen.b, "Prime base");
  gen_cmd->add_option("--s", gen.s, "Dimension");
  gen_cmd->add_option("--m", gen.m, "Net has b^m points");
  gen_cmd->add_option("--f", gen.f, "Polynomial lattice modulus, coefficients lowest degree first");
  gen_cmd->add_option("--g", gen.g, "Polynomial lattice generators separated by ';'");
  gen_cmd->add_option("--matrices", gen.matrices, "Generating matrices JSON (or a sidecar containing them)");
  gen_cmd->add_option("--first", gen.first, "First CSV for hybrid");
  gen_cmd->add_option("--second", gen.second, "Second CSV for hybrid");
  gen_cmd->callback([&] { action = [&] { return cmd_gen(gen, ctx); }; });

  VerifyArgs verify;
  auto* verify_cmd = sub("verify", "Minimal t of a point set, geometrically and from generating matrices");
  verify_cmd->add_option("--points", verify.points, "Point CSV")->required();
  verify_cmd->add_option("--sidecar", verify.sidecar, "Sidecar JSON written by gen");
  verify_cmd->add_option("--b", verify.b, "Base");
  verify_cmd->add_option("--m", verify.m, "Net has b^m points (inferred from N when omitted)");
  verify_cmd->add_option("--t", verify.t, "Check the (t,m,s)-net property for this t");
  verify_cmd->callback([&] { action = [&] { return cmd_verify(verify); }; });

  std::string disc_points;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  auto* disc_cmd = sub("discrepancy", "Star discrepancy, exact within budget, else a sampled lower bound");
  disc_cmd->add_option("--points", disc_points, "Point CSV")->required();
  disc_cmd->add_option("--samples", samples, "Boxes sampled when the exact budget is exceeded");
  disc_cmd->add_option("--seed", seed, "Sampling seed");
  disc_cmd->callback([&] { action = [&] { return cmd_discrepancy(disc_points, samples, seed); }; });

  std::string p2_a;
  std::uint64_t p2_n = 0;
  auto* p2_cmd = sub("p2", "P_2 worst-case error of a rank-1 lattice rule");
  p2_cmd->add_option("--a", p2_a, "Generating vector")->required();
  p2_cmd->add_option("--N", p2_n, "Number of points")->required()->check(CLI::PositiveNumber);
  p2_cmd->callback([&] { action = [&] { return cmd_p2(p2_a, p2_n); }; });

  std::string int_points, integrand = "product", box;
  auto* int_cmd = sub("integrate", "QMC estimate of a built-in test integrand");
  int_cmd->add_option("--points", int_points, "Point CSV")->required();
  int_cmd->add_option("--integrand", integrand, "product, exp or box");
  int_cmd->add_option("--box", box, "Upper corner for the box indicator");
  int_cmd->callback([&] { action = [&] { return cmd_integrate(int_points, integrand, box); }; });

  std::string isbn_code;
  auto* isbn_cmd = sub("isbn", "Validate an ISBN-10");
  isbn_cmd->add_option("code", isbn_code, "ISBN-10, hyphens allowed")->required();
  isbn_cmd->callback([&] { action = [&] { return cmd_isbn(isbn_code); }; });

  std::uint64_t cm_q = 0, cm_qmax = 0;
  auto* cm_cmd = sub("cmsweep", "Complete mappings f_b(X) = X^((q+1)/2) + bX, closed form against brute force");
  cm_cmd->add_option("--q", cm_q, "One odd prime");
  cm_cmd->add_option("--qmax", cm_qmax, "All odd primes up to this bound");
  cm_cmd->callback([&] { action = [&] { return cmd_cmsweep(cm_q, cm_qmax); }; });

  std::uint64_t fac_p = 0;
  std::string fac_coeffs;
  auto* fac_cmd = sub("factor", "Factor a polynomial over F_2, F_3 or F_5");
  fac_cmd->add_option("--p", fac_p, "Characteristic")->required();
  fac_cmd->add_option("--coeffs", fac_coeffs, "Coefficients, lowest degree first")->required();
  fac_cmd->callback([&] { action = [&] { return cmd_factor(fac_p, fac_coeffs); }; });

  InversiveArgs inv;
  auto* inv_cmd = sub("inversive", "Inversive congruential sequence, period and power-residue counts");
  inv_cmd->add_option("--q", inv.q, "Prime modulus")->required();
  inv_cmd->add_option("--a", inv.a, "Multiplier (nonzero)");
  inv_cmd->add_option("--b", inv.b, "Shift");
  inv_cmd->add_option("--u0", inv.u0, "Seed");
  inv_cmd->add_option("--n", inv.n, "Terms to print")->check(CLI::PositiveNumber);
  inv_cmd->add_option("--s", inv.s, "Check s-th power residue counts over every prefix of the orbit");
  inv_cmd->callback([&] { action = [&] { return cmd_inversive(inv); }; });

  std::uint64_t audit_qmax = 101, audit_u0 = 1;
  std::string audit_b = "0,1";
  auto* audit_cmd = sub("inversive-audit", "Power-residue bound over all parameters up to a prime bound");
  audit_cmd->add_option("--qmax", audit_qmax, "Largest prime");
  audit_cmd->add_option("--b", audit_b, "Shift values");
  audit_cmd->add_option("--u0", audit_u0, "Seed");
  audit_cmd->callback([&] { action = [&] { return cmd_inversive_audit(audit_qmax, audit_b, audit_u0, ctx.threads); }; });

  ZarembaArgs zar;
  auto* zar_cmd = sub("zaremba", "Smallest multipliers with bounded partial quotients");
  zar_cmd->add_option("--base", zar.base, "N = base^m");
  zar_cmd->add_option("--mmax", zar.m_max, "Largest exponent");
  zar_cmd->add_option("--c", zar.c, "Partial quotient bound")->check(CLI::PositiveNumber);
  zar_cmd->add_flag("--any-N", zar.any_n, "Exploratory: every N in [--nmin, --nmax]");
  zar_cmd->add_option("--nmin", zar.n_min, "First N for --any-N");
  zar_cmd->add_option("--nmax", zar.n_max, "Last N for --any-N");
  zar_cmd->callback([&] { action = [&] { return cmd_zaremba(zar); }; });

  int criterion = 0;
  std::string readme = QMCKIT_README_PATH;
  auto* rep_cmd = sub("reproduce", "Run one acceptance criterion end to end");
  rep_cmd->add_option("criterion", criterion, "Criterion id")
      ->required()
      ->check(CLI::Range(1, qmckit::reproduce::kCriterionCount));
  rep_cmd->add_option("--readme", readme, "README checked by the exclusions criterion");
  rep_cmd->callback([&] { action = [&] { return cmd_reproduce(criterion, ctx.threads, readme); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  try {
    Outcome o = action();
    if (!ctx.out_dir.empty()) write_artifacts(ctx, chosen->get_name(), recorded_parameters(chosen), o);
    if (ctx.json_output) {
      std::cout << o.report.dump(2) << "\n";
    } else {
      std::cout << o.text;
    }
    return o.code;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n" << chosen->help();
    return 2;
  } catch (const std::exception& e) {
    const json err = {{"error", {{"type", error_type(e)}, {"message", e.what()}, {"command", chosen->get_name()}}}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
}
