#include "symstable_cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "symstable/density.hpp"
#include "symstable/fisher.hpp"
#include "symstable/mle.hpp"
#include "symstable/params.hpp"

namespace symstable::cli {

namespace {

using nlohmann::json;

struct OutputRecord {
  double x = 0.0;
  double alpha = 0.0;
  std::string quantity;
  double value = 0.0;
  std::string method;
  std::string accuracy;
};

// Runs fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) fn(i);
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
}

AccuracyClass worse(AccuracyClass a, AccuracyClass b) {
  return static_cast<int>(a) > static_cast<int>(b) ? a : b;
}

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

const std::vector<std::string> kQuantities = {"f",           "df_dx",     "d2f_dx2",
                                              "df_dalpha",   "d2f_dalpha2", "df_dsigma",
                                              "df_dmu",      "score"};

// One or three records (score) for a point.
std::vector<OutputRecord> evaluate_point(const std::string& q, double x, const StableParams& p) {
  auto rec = [&](const std::string& name, double v, const EvalMethod& m, AccuracyClass a) {
    return OutputRecord{x, p.alpha(), name, v, to_string(m), to_string(a)};
  };
  if (q == "f") {
    const auto o = pdf(x, p);
    return {rec(q, o.value, o.method, o.accuracy)};
  }
  if (q == "df_dx") {
    const auto o = pdf_dx(x, p);
    return {rec(q, o.value, o.method, o.accuracy)};
  }
  if (q == "d2f_dx2") {
    const auto o = pdf_dxdx(x, p);
    return {rec(q, o.value, o.method, o.accuracy)};
  }
  if (q == "df_dalpha") {
    const auto o = pdf_dalpha(x, p);
    return {rec(q, o.value, o.method, o.accuracy)};
  }
  if (q == "d2f_dalpha2") {
    const auto o = pdf_dalpha2(x, p);
    return {rec(q, o.value, o.method, o.accuracy)};
  }
  if (q == "df_dmu") {
    const auto o = pdf_dx(x, p);
    return {rec(q, -o.value, o.method, o.accuracy)};
  }
  const auto f = pdf(x, p);
  const auto fx = pdf_dx(x, p);
  if (q == "df_dsigma") {
    return {rec(q, pdf_dsigma(x, p), fx.method, worse(f.accuracy, fx.accuracy))};
  }
  const auto fa = pdf_dalpha(x, p);
  const Vec3 s = score(x, p);
  const auto acc_ms = worse(f.accuracy, fx.accuracy);
  return {rec("score_mu", s[0], fx.method, acc_ms), rec("score_sigma", s[1], fx.method, acc_ms),
          rec("score_alpha", s[2], fa.method, worse(f.accuracy, fa.accuracy))};
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file " + path);
    }
    out_ = file_ ? file_.get() : &fallback;
  }
  std::ostream& os() { return *out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

struct Common {
  std::string format = "csv";
  std::string out_path;
  unsigned threads = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", c.out_path, "Output file (default stdout)");
  sub->add_option("--threads", c.threads, "Worker threads (0: all cores)")->capture_default_str();
}

// ---- pdf -------------------------------------------------------------------

struct PdfArgs {
  std::string x, alpha;
  double mu = 0.0, sigma = 1.0;
  std::string quantity = "f";
  Common common;
};

int cmd_pdf(const PdfArgs& a, std::ostream& out, std::ostream& err) {
  const auto xs = parse_values(a.x);
  const auto alphas = parse_values(a.alpha);
  if (!(a.sigma > 0.0) || !std::isfinite(a.mu)) throw std::invalid_argument("need sigma > 0");
  for (double al : alphas) {
    if (!(al > 0.0 && al <= 2.0)) throw std::invalid_argument("alpha must lie in (0, 2]");
  }
  const std::size_t n = xs.size() * alphas.size();
  std::vector<std::vector<OutputRecord>> results(n);
  std::vector<char> unsupported(n, 0);
  parallel_for(n, a.common.threads, [&](std::size_t i) {
    const double al = alphas[i / xs.size()];
    const double x = xs[i % xs.size()];
    const StableParams p(a.mu, a.sigma, al);
    try {
      results[i] = evaluate_point(a.quantity, x, p);
    } catch (const UnsupportedParameter&) {
      unsupported[i] = 1;
      results[i] = {OutputRecord{x, al, a.quantity, std::numeric_limits<double>::quiet_NaN(),
                                 "none", to_string(AccuracyClass::Unsupported)}};
    }
  });

  Sink sink(a.common.out_path, out);
  std::ostream& os = sink.os();
  if (a.common.format == "csv") {
    os << "x,alpha,quantity,value,method,accuracy\n";
    for (const auto& rs : results) {
      for (const auto& r : rs) {
        os << format_real(r.x) << ',' << format_real(r.alpha) << ',' << r.quantity << ','
           << format_real(r.value) << ',' << r.method << ',' << r.accuracy << '\n';
      }
    }
  } else {
    json arr = json::array();
    for (const auto& rs : results) {
      for (const auto& r : rs) {
        arr.push_back({{"x", r.x},
                       {"alpha", r.alpha},
                       {"quantity", r.quantity},
                       {"value", real_or_null(r.value)},
                       {"method", r.method},
                       {"accuracy", r.accuracy}});
      }
    }
    os << arr.dump(2) << '\n';
  }
  const auto bad = std::count(unsupported.begin(), unsupported.end(), 1);
  if (bad > 0) {
    err << "symstable: " << bad << " evaluation(s) unsupported (alpha below "
        << format_real(kDensityAlphaFloor) << ")\n";
    return kExitUnsupported;
  }
  return kExitOk;
}

// ---- fisher ----------------------------------------------------------------

struct FisherArgs {
  std::string alpha;
  bool near_two = false;
  Common common;
};

std::string csv_info(double v) {
  if (std::isinf(v)) return "inf";
  if (std::isnan(v)) return "undefined";
  return format_real(v);
}

json json_info(double v) {
  if (std::isinf(v)) return "inf";
  if (std::isnan(v)) return "undefined";
  return v;
}

int cmd_fisher(const FisherArgs& a, std::ostream& out, std::ostream& err) {
  const auto alphas = parse_values(a.alpha);
  for (double al : alphas) {
    if (!(al > 0.0 && al <= 2.0)) throw std::invalid_argument("alpha must lie in (0, 2]");
    if (a.near_two && !(al > 1.999 && al < 2.0)) {
      throw std::invalid_argument("--near-two needs alpha in (1.999, 2)");
    }
  }
  const std::size_t n = alphas.size();
  std::vector<InfoMatrix> info(n);
  std::vector<NearTwoInfo> v1(n), v2(n);
  std::vector<std::string> failure(n);
  parallel_for(n, a.common.threads, [&](std::size_t i) {
    try {
      if (a.near_two) {
        v1[i] = info_near_two(alphas[i], 1);
        v2[i] = info_near_two(alphas[i], 2);
      } else {
        info[i] = info_matrix(alphas[i]);
      }
    } catch (const UnsupportedParameter& e) {
      failure[i] = e.what();
    }
  });

  Sink sink(a.common.out_path, out);
  std::ostream& os = sink.os();
  json arr = json::array();
  if (a.common.format == "csv") {
    os << (a.near_two ? "alpha,i_alphaalpha_1,i_alphaalpha_2,ns_asymptote,i_sigmaalpha_1,"
                        "i_sigmaalpha_2,accuracy\n"
                      : "alpha,i_mumu,i_sigmasigma,i_alphaalpha,i_sigmaalpha\n");
  }
  int bad = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!failure[i].empty()) {
      ++bad;
      err << "symstable: alpha=" << format_real(alphas[i]) << ": " << failure[i] << '\n';
      continue;
    }
    if (a.near_two) {
      const double ns = ns_asymptote(alphas[i]);
      const auto acc = worse(v1[i].accuracy, v2[i].accuracy);
      if (a.common.format == "csv") {
        os << format_real(alphas[i]) << ',' << format_real(v1[i].i_alphaalpha) << ','
           << format_real(v2[i].i_alphaalpha) << ',' << format_real(ns) << ','
           << format_real(v1[i].i_sigmaalpha) << ',' << format_real(v2[i].i_sigmaalpha) << ','
           << to_string(acc) << '\n';
      } else {
        arr.push_back({{"alpha", alphas[i]},
                       {"i_alphaalpha_1", v1[i].i_alphaalpha},
                       {"i_alphaalpha_2", v2[i].i_alphaalpha},
                       {"ns_asymptote", ns},
                       {"i_sigmaalpha_1", v1[i].i_sigmaalpha},
                       {"i_sigmaalpha_2", v2[i].i_sigmaalpha},
                       {"accuracy", to_string(acc)}});
      }
    } else {
      const auto& m = info[i];
      if (!m.converged) {
        err << "symstable: alpha=" << format_real(alphas[i])
            << ": quadrature did not converge; partial values reported\n";
      }
      if (a.common.format == "csv") {
        os << format_real(alphas[i]) << ',' << csv_info(m.i_mumu) << ','
           << csv_info(m.i_sigmasigma) << ',' << csv_info(m.i_alphaalpha) << ','
           << csv_info(m.i_sigmaalpha) << '\n';
      } else {
        arr.push_back({{"alpha", alphas[i]},
                       {"i_mumu", json_info(m.i_mumu)},
                       {"i_sigmasigma", json_info(m.i_sigmasigma)},
                       {"i_alphaalpha", json_info(m.i_alphaalpha)},
                       {"i_sigmaalpha", json_info(m.i_sigmaalpha)},
                       {"converged", m.converged}});
      }
    }
  }
  if (a.common.format == "json") os << arr.dump(2) << '\n';
  return bad > 0 ? kExitUnsupported : kExitOk;
}

// ---- fit -------------------------------------------------------------------

struct FitArgs {
  std::string data_path;
  std::string free = "mu,sigma,alpha";
  std::string init = "auto";
  int max_iter = 100;
  double grad_tol = 1e-8;
  int se_variant = 2;
  std::string out_path;
};

FreeParams parse_free(const std::string& s) {
  FreeParams f{false, false, false};
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "mu") f.mu = true;
    else if (tok == "sigma") f.sigma = true;
    else if (tok == "alpha") f.alpha = true;
    else throw std::invalid_argument("unknown parameter in --free: " + tok);
  }
  if (f.count() == 0) throw std::invalid_argument("--free names no parameter");
  return f;
}

json mat_json(const Mat3& m) {
  json rows = json::array();
  for (const auto& r : m) rows.push_back({real_or_null(r[0]), real_or_null(r[1]), real_or_null(r[2])});
  return rows;
}

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream&) {
  const auto data = read_data_file(a.data_path);
  FitConfig cfg;
  cfg.free_params = parse_free(a.free);
  cfg.max_iter = a.max_iter;
  cfg.grad_tol = a.grad_tol;
  cfg.std_error_variant = a.se_variant;
  if (a.init != "auto") {
    const auto v = parse_values(a.init);
    if (v.size() != 3) throw std::invalid_argument("--init needs mu,sigma,alpha or auto");
    cfg.init = StableParams(v[0], v[1], v[2]);
  }
  const FitResult r = fit(data, cfg);
  json j = {{"n", data.size()},
            {"theta_hat",
             {{"mu", r.theta_hat.mu()}, {"sigma", r.theta_hat.sigma()}, {"alpha", r.theta_hat.alpha()}}},
            {"free", a.free},
            {"loglik", real_or_null(r.loglik)},
            {"obs_info_1", mat_json(r.obs_info_1)},
            {"obs_info_2", mat_json(r.obs_info_2)},
            {"std_errors",
             {{"mu", real_or_null(r.std_errors[0])},
              {"sigma", real_or_null(r.std_errors[1])},
              {"alpha", real_or_null(r.std_errors[2])}}},
            {"iterations", r.iterations},
            {"converged", r.converged}};
  Sink sink(a.out_path, out);
  sink.os() << j.dump(2) << '\n';
  return kExitOk;
}

// ---- simulate --------------------------------------------------------------

struct SimArgs {
  std::string alpha = "1.5";
  std::size_t n = 50;
  std::size_t reps = 200;
  std::uint64_t seed = 1;
  Common common;
};

int cmd_simulate(const SimArgs& a, std::ostream& out, std::ostream&) {
  const auto alphas = parse_values(a.alpha);
  for (double al : alphas) {
    if (!(al >= kDerivativeAlphaFloor && al <= 2.0)) {
      throw std::invalid_argument("simulate needs alpha in [0.2, 2]");
    }
  }
  if (a.n < 1 || a.reps < 2) throw std::invalid_argument("need --n >= 1 and --reps >= 2");
  Sink sink(a.common.out_path, out);
  std::ostream& os = sink.os();
  json arr = json::array();
  if (a.common.format == "csv") {
    os << "alpha,n,reps,mean_alpha_hat,inv_var_scaled,i_alphaalpha,mean_info_1,var_info_1,"
          "mean_info_2,var_info_2,nonconverged\n";
  }
  for (double al : alphas) {
    const auto r = simulate_alpha_mle({al, a.n, a.reps, a.seed, a.common.threads});
    if (a.common.format == "csv") {
      os << format_real(al) << ',' << r.n << ',' << r.reps << ',' << format_real(r.mean_alpha_hat)
         << ',' << format_real(r.inv_var_scaled) << ',' << csv_info(r.exact_info) << ','
         << format_real(r.mean_info_1) << ',' << format_real(r.var_info_1) << ','
         << format_real(r.mean_info_2) << ',' << format_real(r.var_info_2) << ','
         << r.nonconverged << '\n';
    } else {
      arr.push_back({{"alpha", al},
                     {"n", r.n},
                     {"reps", r.reps},
                     {"seed", a.seed},
                     {"mean_alpha_hat", r.mean_alpha_hat},
                     {"inv_var_scaled", r.inv_var_scaled},
                     {"i_alphaalpha", json_info(r.exact_info)},
                     {"mean_info_1", r.mean_info_1},
                     {"var_info_1", r.var_info_1},
                     {"mean_info_2", r.mean_info_2},
                     {"var_info_2", r.var_info_2},
                     {"nonconverged", r.nonconverged}});
    }
  }
  if (a.common.format == "json") os << arr.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_values(const std::string& spec) {
  auto to_real = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) {
      throw std::invalid_argument("not a finite number: '" + s + "'");
    }
    return v;
  };
  std::vector<double> out;
  if (spec.empty()) throw std::invalid_argument("empty value list");
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:step");
    const double lo = to_real(parts[0]), hi = to_real(parts[1]), step = to_real(parts[2]);
    if (!(step > 0.0) || hi < lo) throw std::invalid_argument("range needs step > 0, stop >= start");
    const double count = std::floor((hi - lo) / step + 1e-9) + 1.0;
    if (count > 1e7) throw std::invalid_argument("range too long");
    for (long i = 0; i < static_cast<long>(count); ++i) out.push_back(lo + double(i) * step);
    return out;
  }
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(to_real(tok));
  return out;
}

std::vector<double> read_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read data file " + path);
  std::vector<double> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(b, e - b + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || !std::isfinite(v)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": not a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::runtime_error("no observations in " + path);
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetric stable densities, derivatives, Fisher information and MLE"};
  app.name("symstable");
  app.require_subcommand(1);

  PdfArgs pa;
  auto* pdf_cmd = app.add_subcommand("pdf", "Evaluate density quantities on a grid");
  pdf_cmd->add_option("--x", pa.x, "Value, comma list or start:stop:step")->required();
  pdf_cmd->add_option("--alpha", pa.alpha, "Value, comma list or start:stop:step")->required();
  pdf_cmd->add_option("--mu", pa.mu)->capture_default_str();
  pdf_cmd->add_option("--sigma", pa.sigma)->capture_default_str();
  pdf_cmd->add_option("--quantity", pa.quantity)
      ->check(CLI::IsMember(kQuantities))
      ->capture_default_str();
  add_common(pdf_cmd, pa.common);

  FisherArgs fa;
  auto* fisher_cmd = app.add_subcommand("fisher", "Fisher information at mu = 0, sigma = 1");
  fisher_cmd->add_option("--alpha", fa.alpha, "Value, comma list or start:stop:step")->required();
  fisher_cmd->add_flag("--near-two", fa.near_two,
                       "Both near-normal variants and the asymptote, alpha in (1.999, 2)");
  add_common(fisher_cmd, fa.common);

  FitArgs ta;
  auto* fit_cmd = app.add_subcommand("fit", "Maximum likelihood fit; prints JSON");
  fit_cmd->add_option("--data", ta.data_path, "One number per line, '#' comments")->required();
  fit_cmd->add_option("--free", ta.free, "Comma list of mu, sigma, alpha")->capture_default_str();
  fit_cmd->add_option("--init", ta.init, "auto or mu,sigma,alpha")->capture_default_str();
  fit_cmd->add_option("--max-iter", ta.max_iter)->check(CLI::PositiveNumber)->capture_default_str();
  fit_cmd->add_option("--grad-tol", ta.grad_tol)->check(CLI::PositiveNumber)->capture_default_str();
  fit_cmd->add_option("--se-variant", ta.se_variant, "Observed information used for errors")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  fit_cmd->add_option("--out", ta.out_path, "Output file (default stdout)");

  SimArgs sa;
  auto* sim_cmd = app.add_subcommand("simulate", "Alpha-only MLE experiment at mu = 0, sigma = 1");
  sim_cmd->add_option("--alpha", sa.alpha, "Value or comma list")->capture_default_str();
  sim_cmd->add_option("--n", sa.n)->capture_default_str();
  sim_cmd->add_option("--reps", sa.reps)->capture_default_str();
  sim_cmd->add_option("--seed", sa.seed)->capture_default_str();
  add_common(sim_cmd, sa.common);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "symstable: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*pdf_cmd) return cmd_pdf(pa, out, err);
    if (*fisher_cmd) return cmd_fisher(fa, out, err);
    if (*fit_cmd) return cmd_fit(ta, out, err);
    if (*sim_cmd) return cmd_simulate(sa, out, err);
  } catch (const UnsupportedParameter& e) {
    err << "symstable: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const std::exception& e) {
    err << "symstable: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace symstable::cli
