#include "secrecy/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "secrecy/enhance.hpp"
#include "secrecy/misome.hpp"

namespace secrecy {

using nlohmann::json;

Command command_from_string(const std::string& s) {
  if (s == "region") return Command::region;
  if (s == "enhance-verify") return Command::enhance_verify;
  if (s == "misome") return Command::misome;
  if (s == "misome-highsnr") return Command::misome_highsnr;
  if (s == "check") return Command::check;
  throw std::invalid_argument("command: unknown value '" + s + "'");
}

std::string to_string(Command c) {
  switch (c) {
    case Command::region: return "region";
    case Command::enhance_verify: return "enhance-verify";
    case Command::misome: return "misome";
    case Command::misome_highsnr: return "misome-highsnr";
    case Command::check: return "check";
  }
  return "?";
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

Matrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw std::invalid_argument(path + ": expected a row-major array of rows");
  const size_t rows = j.size(), cols = j[0].size();
  Matrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw std::invalid_argument(path + ": ragged rows");
    for (size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number())
        throw std::invalid_argument(path + ": non-numeric entry");
      m(i, k) = j[i][k].get<double>();
    }
  }
  return m;
}

SymMatrix sym_from_json(const json& j, const std::string& path) {
  const Matrix m = matrix_from_json(j, path);
  if (m.rows() != m.cols())
    throw std::invalid_argument(path + ": symmetric matrix must be square");
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9)
    std::cerr << "warning: " << path << " asymmetry " << format_number(asym)
              << ", symmetrizing\n";
  return SymMatrix(m);
}

SymMatrix noise_from_json(const json& j, const std::string& path) {
  const SymMatrix n = sym_from_json(j, path);
  const double lo = min_eigenvalue(n);
  if (lo <= 0.0)
    throw std::invalid_argument(path + ": not positive definite, min eigenvalue " +
                                format_number(lo));
  return n;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

const json& require(const json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end())
    throw std::invalid_argument(path.empty() ? key + ": missing"
                                             : path + "." + key + ": missing");
  return *it;
}

std::string rowmajor(const Matrix& m) {
  std::string s;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      if (!s.empty()) s += ';';
      s += format_number(m(i, k));
    }
  return s;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
  }
  RunConfig cfg;
  cfg.command = command_from_string(require(j, "command", "").get<std::string>());

  const json& ch = require(j, "channel", "");
  const Matrix h1 = matrix_from_json(require(ch, "H1", "channel"), "channel.H1");
  const Matrix h2 = matrix_from_json(require(ch, "H2", "channel"), "channel.H2");
  const Matrix h3 = matrix_from_json(require(ch, "H3", "channel"), "channel.H3");
  const SymMatrix n1 = noise_from_json(require(ch, "N1", "channel"), "channel.N1");
  const SymMatrix n2 = noise_from_json(require(ch, "N2", "channel"), "channel.N2");
  const SymMatrix n3 = noise_from_json(require(ch, "N3", "channel"), "channel.N3");

  const json& con = require(ch, "constraint", "channel");
  const std::string kind =
      require(con, "kind", "channel.constraint").get<std::string>();
  InputConstraint constraint;
  if (kind == "covariance") {
    const SymMatrix s = sym_from_json(require(con, "S", "channel.constraint"),
                                      "channel.constraint.S");
    if (!is_psd(s))
      throw std::invalid_argument("channel.constraint.S: not PSD, min eigenvalue " +
                                  format_number(min_eigenvalue(s)));
    constraint = InputConstraint::covariance(s);
  } else if (kind == "power") {
    const json& p = require(con, "P", "channel.constraint");
    if (!p.is_number() || !(p.get<double>() > 0))
      throw std::invalid_argument("channel.constraint.P: positive number required");
    constraint = InputConstraint::power(p.get<double>());
  } else {
    throw std::invalid_argument("channel.constraint.kind: expected covariance|power");
  }
  try {
    cfg.channel = ChannelInstance(h1, h2, h3, n1, n2, n3, constraint);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("channel: ") + e.what());
  }

  if (j.contains("solver")) {
    const json& s = j["solver"];
    if (s.contains("restarts")) cfg.solver.restarts = s["restarts"].get<int>();
    if (s.contains("max_iterations"))
      cfg.solver.max_iterations = s["max_iterations"].get<int>();
    if (s.contains("seed")) cfg.solver.seed = s["seed"].get<std::uint64_t>();
  }
  if (j.contains("mu_grid")) cfg.mu_grid_size = j["mu_grid"].get<int>();
  if (j.contains("mu_max")) cfg.mu_max = j["mu_max"].get<double>();
  if (j.contains("alpha_grid")) cfg.alpha_grid_size = j["alpha_grid"].get<int>();
  if (j.contains("output")) cfg.output = j["output"].get<std::string>();
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  if (cfg.format != "csv" && cfg.format != "json")
    throw std::invalid_argument("format: expected csv|json");
  if (j.contains("seed")) {
    cfg.seed = j["seed"].get<std::uint64_t>();
    cfg.solver.seed = cfg.seed;
  }

  if ((cfg.command == Command::misome || cfg.command == Command::misome_highsnr)) {
    try {
      MisomeChannel::from_channel(cfg.channel);
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string("channel: not MISOME-classifiable: ") +
                                  e.what());
    }
  }
  if (cfg.mu_grid_size < 1 || cfg.alpha_grid_size < 2)
    throw std::invalid_argument("grids: mu_grid >= 1 and alpha_grid >= 2 required");
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  json j;
  j["command"] = to_string(cfg.command);
  json ch;
  ch["H1"] = matrix_to_json(cfg.channel.H1);
  ch["H2"] = matrix_to_json(cfg.channel.H2);
  ch["H3"] = matrix_to_json(cfg.channel.H3);
  ch["N1"] = matrix_to_json(cfg.channel.N1.mat());
  ch["N2"] = matrix_to_json(cfg.channel.N2.mat());
  ch["N3"] = matrix_to_json(cfg.channel.N3.mat());
  json con;
  if (cfg.channel.constraint.kind == InputConstraint::Kind::covariance) {
    con["kind"] = "covariance";
    con["S"] = matrix_to_json(cfg.channel.constraint.S.mat());
  } else {
    con["kind"] = "power";
    con["P"] = cfg.channel.constraint.P;
  }
  ch["constraint"] = std::move(con);
  j["channel"] = std::move(ch);
  j["solver"] = {{"restarts", cfg.solver.restarts},
                 {"max_iterations", cfg.solver.max_iterations},
                 {"seed", cfg.solver.seed}};
  j["mu_grid"] = cfg.mu_grid_size;
  j["mu_max"] = cfg.mu_max;
  j["alpha_grid"] = cfg.alpha_grid_size;
  j["output"] = cfg.output;
  j["format"] = cfg.format;
  j["seed"] = cfg.seed;
  return j.dump(2);
}

namespace {

json certificate_to_json(double mu, const SolveReport& rep,
                         const EnhancementCertificate& cert) {
  json c;
  c["mu"] = mu;
  c["converged"] = rep.converged;
  c["kkt_residual"] = rep.kkt_residual;
  c["R1_bits"] = rep.rates.R1;
  c["R2_bits"] = rep.rates.R2;
  c["ordering_ok"] = cert.ordering_ok;
  c["ordering_min_eig"] = cert.ordering_min_eig;
  c["proportionality"] = {{"applicable", cert.prop_applicable},
                          {"alpha", cert.prop.alpha},
                          {"residual", cert.prop.residual},
                          {"condition", cert.prop.condition},
                          {"ok", cert.prop_ok}};
  c["rate_gap_bits"] = {cert.rate_gap[0], cert.rate_gap[1]};
  c["rates_ok"] = cert.rates_ok;
  c["kkt_enhanced_residual"] = {cert.kkt_enhanced_residual[0],
                                cert.kkt_enhanced_residual[1]};
  c["witness_min_eig"] = cert.witness_min_eig;
  c["kkt_ok"] = cert.kkt_ok;
  c["certified"] = cert.all_ok();
  c["N1_enhanced"] = matrix_to_json(cert.enhanced.N1p.mat());
  c["N2_enhanced"] = matrix_to_json(cert.enhanced.N2p.mat());
  return c;
}

int run_region(const RunConfig& cfg, std::ostream& out) {
  const auto grid = default_mu_grid(cfg.mu_grid_size, cfg.mu_max);
  const auto hull = trace_boundary(cfg.channel, grid, cfg.solver);
  if (cfg.format == "json") {
    json pts = json::array();
    for (const auto& p : hull.points)
      pts.push_back({{"weight_mu", p.mu},
                     {"permutation", p.perm.label()},
                     {"R1_bits", p.rates.R1},
                     {"R2_bits", p.rates.R2},
                     {"B1_rowmajor", rowmajor(p.split.B[0].mat())},
                     {"B2_rowmajor", rowmajor(p.split.B[1].mat())},
                     {"converged", p.converged}});
    out << json{{"command", "region"}, {"points", pts}}.dump(2) << "\n";
    return 0;
  }
  out << "weight_mu,permutation,R1_bits,R2_bits,B1_rowmajor,B2_rowmajor,converged\n";
  for (const auto& p : hull.points)
    out << format_number(p.mu) << ',' << p.perm.label() << ','
        << format_number(p.rates.R1) << ',' << format_number(p.rates.R2) << ','
        << rowmajor(p.split.B[0].mat()) << ',' << rowmajor(p.split.B[1].mat()) << ','
        << (p.converged ? "true" : "false") << "\n";
  return 0;
}

int run_enhance_verify(const RunConfig& cfg, std::ostream& out) {
  const auto cls = classify(cfg.channel);
  if (cls.tag != ChannelTag::SADBC)
    throw std::invalid_argument("enhance-verify: SADBC channel required, got " +
                                to_string(cls.tag));
  const auto grid = default_mu_grid(cfg.mu_grid_size, cfg.mu_max);
  json certs = json::array();
  for (double mu : grid) {
    const WeightedObjective obj(1.0, mu);
    const auto rep = maximize_weighted_sum(cfg.channel, obj, cfg.solver);
    json entry;
    try {
      const auto mult = recover_multipliers(rep.split, obj, cfg.channel);
      const auto cert = certify_enhancement(rep.split, mult, cfg.channel);
      entry = certificate_to_json(mu, rep, cert);
    } catch (const std::exception& e) {
      entry = {{"mu", mu},
               {"converged", rep.converged},
               {"kkt_residual", rep.kkt_residual},
               {"certified", false},
               {"diagnostic", e.what()}};
    }
    certs.push_back(std::move(entry));
  }
  out << json{{"command", "enhance-verify"}, {"certificates", certs}}.dump(2) << "\n";
  return 0;
}

int run_misome(const RunConfig& cfg, std::ostream& out) {
  const auto ch = MisomeChannel::from_channel(cfg.channel);
  const std::vector<Permutation> perms{Permutation::identity(2),
                                       Permutation(std::vector<int>{1, 0})};
  const auto hull =
      misome_region(ch, uniform_alpha_grid(cfg.alpha_grid_size), perms);
  if (cfg.format == "json") {
    json pts = json::array();
    for (const auto& p : hull.points)
      pts.push_back({{"alpha_split", p.mu},
                     {"permutation", p.perm.label()},
                     {"R1_bits", p.rates.R1},
                     {"R2_bits", p.rates.R2}});
    out << json{{"command", "misome"}, {"points", pts}}.dump(2) << "\n";
    return 0;
  }
  out << "alpha_split,permutation,R1_bits,R2_bits\n";
  for (const auto& p : hull.points)
    out << format_number(p.mu) << ',' << p.perm.label() << ','
        << format_number(p.rates.R1) << ',' << format_number(p.rates.R2) << "\n";
  return 0;
}

int run_misome_highsnr(const RunConfig& cfg, std::ostream& out) {
  const auto ch = MisomeChannel::from_channel(cfg.channel);
  const auto rect = misome_highsnr(ch);
  json j;
  j["command"] = "misome-highsnr";
  j["a"] = rect.a;
  j["b"] = rect.b;
  j["a_degenerate"] = rect.a_degenerate;
  j["b_degenerate"] = rect.b_degenerate;
  auto corner = [](const RatePair& r) {
    json c;
    c["R1_bits"] = std::isinf(r.R1) ? json("inf") : json(r.R1);
    c["R2_bits"] = std::isinf(r.R2) ? json("inf") : json(r.R2);
    return c;
  };
  j["rectangle_12"] = corner(rect.corner_12);
  j["rectangle_21"] = corner(rect.corner_21);
  json hull = json::array();
  for (const auto& p : rect.hull.points)
    hull.push_back({{"R1_bits", p.rates.R1}, {"R2_bits", p.rates.R2}});
  j["hull"] = std::move(hull);
  out << j.dump(2) << "\n";
  return 0;
}

int run_check(const RunConfig& cfg, std::ostream& out) {
  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok) {
    out << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
    all_ok = all_ok && ok;
  };
  const auto& ch = cfg.channel;
  const auto cls = classify(ch);
  out << "channel_class " << to_string(cls.tag) << "\n";

  report("noise covariances PD", min_eigenvalue(ch.N1) > 0 &&
                                     min_eigenvalue(ch.N2) > 0 &&
                                     min_eigenvalue(ch.N3) > 0);
  report("psd order reflexive", psd_leq(ch.N1, ch.N1) && psd_leq(ch.N3, ch.N3));
  if (cls.tag == ChannelTag::SADBC)
    report("degradation order", psd_leq(ch.N1, ch.N2) && psd_leq(ch.N2, ch.N3));

  bool zero_ok = true, random_ok = true, identity_ok = true;
  const bool aligned = ch.aligned();
  const SymMatrix cap = ch.constraint.cap(ch.t);
  const CovarianceSplit zero(SymMatrix::zero(ch.t), SymMatrix::zero(ch.t));
  try {
    const auto r = sdpc_rates(Permutation::identity(2), zero, ch);
    zero_ok = r[0] == 0.0 && r[1] == 0.0;
  } catch (const std::exception&) {
    zero_ok = false;
  }
  report("zero split gives zero rates", zero_ok);

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 32 && (random_ok || identity_ok); ++trial) {
    Matrix g1(ch.t, ch.t), g2(ch.t, ch.t);
    for (int i = 0; i < ch.t; ++i)
      for (int k = 0; k < ch.t; ++k) {
        g1(i, k) = normal(rng);
        g2(i, k) = normal(rng);
      }
    CovarianceSplit raw(SymMatrix(Matrix(g1 * g1.transpose())),
                        SymMatrix(Matrix(g2 * g2.transpose())));
    const auto split = project_feasible(raw, cap);
    try {
      const auto r = sdpc_rates(Permutation::identity(2), split, ch);
      random_ok = random_ok && r[0] >= 0.0 && r[1] >= 0.0 && std::isfinite(r[0]) &&
                  std::isfinite(r[1]);
      if (aligned) {
        const auto g = gaussian_rates(split, ch);
        identity_ok = identity_ok && std::abs(g.R1 - r[0]) <= 1e-12 &&
                      std::abs(g.R2 - r[1]) <= 1e-12;
      }
    } catch (const std::exception&) {
      random_ok = false;
    }
  }
  report("random feasible splits give finite non-negative rates", random_ok);
  if (aligned) report("SDPC identity permutation matches Gaussian rates", identity_ok);

  SearchBudget quick = cfg.solver;
  quick.restarts = std::min(quick.restarts, 8);
  const auto hull = trace_boundary(ch, default_mu_grid(5, 100.0), quick);
  double max_r1 = 0.0, max_r2 = 0.0;
  bool feas_ok = true;
  for (const auto& p : hull.points) {
    max_r1 = std::max(max_r1, p.rates.R1);
    max_r2 = std::max(max_r2, p.rates.R2);
    if (!p.split.B.empty()) feas_ok = feas_ok && p.split.feasible(ch.constraint);
  }
  report("boundary splits feasible", feas_ok);
  out << "region_max_R1_bits " << format_number(max_r1) << "\n";
  out << "region_max_R2_bits " << format_number(max_r2) << "\n";
  if (max_r1 == 0.0 && max_r2 == 0.0) out << "region collapses to the origin\n";
  return all_ok ? 0 : 1;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.output.empty()) {
    file.open(cfg.output, std::ios::binary);
    if (!file) {
      diag << "error: cannot open output path " << cfg.output << "\n";
      return 2;
    }
    sink = &file;
  }
  try {
    switch (cfg.command) {
      case Command::region: return run_region(cfg, *sink);
      case Command::enhance_verify: return run_enhance_verify(cfg, *sink);
      case Command::misome: return run_misome(cfg, *sink);
      case Command::misome_highsnr: return run_misome_highsnr(cfg, *sink);
      case Command::check: return run_check(cfg, *sink);
    }
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace secrecy
