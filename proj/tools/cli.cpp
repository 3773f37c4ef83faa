#include "cli.hpp"

#include "paircache/oracle.hpp"

#include "json.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

namespace paircache::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string rational_pair(const Rational& r) {
  return r.to_string() + " (" + r.to_decimal() + ")";
}

}  // namespace

int cmd_rate(const RateOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const ProblemInstance inst(opt.K, opt.m);  // validates K, m
    if (opt.j && !opt.L) {
      err << "rate: --j requires --L\n";
      return 1;
    }
    Rational r;
    if (!opt.L) {
      r = worst_case_rate(opt.K, opt.m);
    } else if (*opt.L == 0 || *opt.L == opt.K) {
      if (opt.j) {
        err << "rate: --j applies only to mixed demands (0 < L < K)\n";
        return 1;
      }
      r = Rational(1);  // single-file demand: every subfile sent once
    } else if (opt.j) {
      r = rate_with_threshold(opt.K, opt.m, *opt.L, *opt.j);
    } else {
      r = rate_for_split(opt.K, opt.m, *opt.L);
    }
    if (opt.json) {
      ordered_json o;
      o["K"] = opt.K;
      o["m"] = opt.m;
      if (opt.L) o["L"] = *opt.L;
      if (opt.j) o["j"] = *opt.j;
      o["rate"] = r.to_string();
      o["rate_decimal"] = r.to_decimal();
      out << o.dump(2) << "\n";
    } else {
      out << rational_pair(r) << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    err << "rate: " << e.what() << "\n";
    return 1;
  }
}

std::vector<SweepRow> sweep_rows(int K) {
  const auto pts = achievable_points(K);
  const auto hull = lower_hull(pts);
  std::map<Rational, SweepRow> by_m;
  for (const auto& p : pts) {
    auto& row = by_m[p.M];
    row.M = p.M;
    if (p.source == PointSource::Scheme)
      row.r_scheme = p.R;
    else
      row.r_mn = p.R;
  }
  std::vector<SweepRow> rows;
  rows.reserve(by_m.size());
  for (auto& [M, row] : by_m) {
    row.r_hull = hull_value_at(hull, M);
    row.r_lb = cutset_lower_bound(K, M);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "M,M_dec,R_scheme,R_mn,R_hull,R_lb\n";
  for (const auto& row : rows) {
    out << row.M.to_string() << ',' << row.M.to_decimal() << ',';
    if (row.r_scheme) out << row.r_scheme->to_string();
    out << ',';
    if (row.r_mn) out << row.r_mn->to_string();
    out << ',' << row.r_hull.to_string() << ',' << row.r_lb.to_string() << '\n';
  }
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const auto rows = sweep_rows(opt.K);
    if (opt.out_path.empty()) {
      write_sweep_csv(out, rows);
    } else {
      std::ofstream f(opt.out_path);
      if (!f) {
        err << "sweep: cannot open " << opt.out_path << "\n";
        return 1;
      }
      write_sweep_csv(f, rows);
      if (!f.good()) {
        err << "sweep: write failed for " << opt.out_path << "\n";
        return 1;
      }
    }
    return 0;
  } catch (const std::exception& e) {
    err << "sweep: " << e.what() << "\n";
    return 1;
  }
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  SimulationReport rep;
  std::string demand_str;
  try {
    const ProblemInstance inst(opt.K, opt.m, opt.subfile_bytes);
    const Demand demand = Demand::parse(opt.demands);
    if (demand.size() != opt.K)
      throw std::invalid_argument("demand string length must equal K");
    demand_str = demand.to_string();
    rep = simulate(inst, demand, opt.seed);
  } catch (const DecodeError& e) {
    err << "simulate: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "simulate: " << e.what() << "\n";
    return 1;
  }

  const int ok_count =
      static_cast<int>(std::count(rep.user_ok.begin(), rep.user_ok.end(), true));
  if (opt.json) {
    ordered_json o;
    o["K"] = rep.K;
    o["m"] = rep.m;
    o["demands"] = demand_str;
    o["L"] = rep.L;
    if (rep.threshold) o["threshold"] = *rep.threshold;
    o["seed"] = opt.seed;
    o["subfile_bytes"] = opt.subfile_bytes;
    o["step_counts"] = rep.step_counts;
    o["total_messages"] = rep.total_messages;
    o["total_bytes"] = rep.total_bytes;
    o["rate"] = rep.rate.to_string();
    o["rate_decimal"] = rep.rate.to_decimal();
    o["user_ok"] = rep.user_ok;
    o["all_ok"] = rep.all_ok();
    out << o.dump(2) << "\n";
  } else {
    out << "K=" << rep.K << " m=" << rep.m << " demands=" << demand_str << " L=" << rep.L;
    if (rep.threshold) out << " j=" << *rep.threshold;
    out << "\n";
    const auto& c = rep.step_counts;
    out << "steps: " << c[0] << "/" << c[1] << "/" << c[2] << "/" << c[3]
        << "  messages: " << rep.total_messages << "  bytes: " << rep.total_bytes << "\n";
    out << "rate: " << rational_pair(rep.rate) << "\n";
    for (int u = 1; u <= rep.K; ++u)
      out << "user " << u << " (" << demand_str[u - 1]
          << "): " << (rep.user_ok[u - 1] ? "OK" : "FAIL") << "\n";
    out << "decode: " << ok_count << "/" << rep.K << " OK\n";
  }
  return rep.all_ok() ? 0 : 2;
}

int cmd_hull(const HullOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const auto pts = achievable_points(opt.K);
    const auto hull = lower_hull(pts);
    if (opt.json) {
      ordered_json o;
      o["K"] = opt.K;
      o["vertices"] = ordered_json::array();
      for (const auto& v : hull) {
        ordered_json e;
        e["M"] = v.M.to_string();
        e["M_decimal"] = v.M.to_decimal();
        e["R"] = v.R.to_string();
        e["R_decimal"] = v.R.to_decimal();
        e["source"] = to_string(v.source);
        o["vertices"].push_back(e);
      }
      out << o.dump(2) << "\n";
    } else {
      out << "K=" << opt.K << " hull vertices: " << hull.size() << "\n";
      for (const auto& v : hull)
        out << "M=" << rational_pair(v.M) << "  R=" << rational_pair(v.R) << "  ["
            << to_string(v.source) << "]\n";
    }
    return 0;
  } catch (const std::exception& e) {
    err << "hull: " << e.what() << "\n";
    return 1;
  }
}

int cmd_fmin(const FminOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const std::uint64_t v = min_file_size_k10(opt.m);
    if (opt.json) {
      ordered_json o;
      o["K"] = 10;
      o["m"] = opt.m;
      o["f_min"] = v;
      out << o.dump(2) << "\n";
    } else {
      out << v << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    err << "fmin: " << e.what() << "\n";
    return 1;
  }
}

namespace {

struct PropertyResult {
  std::string name;
  bool pass = true;
  std::string detail;  // counterexample on failure
};

std::vector<Demand> sample_demands(int K, std::uint64_t seed, int samples) {
  std::vector<Demand> out;
  if (K <= 5) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << K); ++bits) {
      std::vector<FileId> req(K);
      for (int u = 0; u < K; ++u)
        req[u] = (bits >> u) & 1 ? FileId::B : FileId::A;
      out.emplace_back(std::move(req));
    }
    return out;
  }
  out.push_back(Demand(std::vector<FileId>(K, FileId::A)));
  out.push_back(Demand(std::vector<FileId>(K, FileId::B)));
  std::mt19937_64 gen(seed * 1000003ull + static_cast<std::uint64_t>(K) * 131ull);
  for (int i = 0; i < samples; ++i) {
    std::vector<FileId> req(K);
    for (int u = 0; u < K; ++u) req[u] = (gen() & 1) ? FileId::B : FileId::A;
    out.emplace_back(std::move(req));
  }
  return out;
}

PropertyResult check_threshold_optimality(int k_max) {
  PropertyResult res{"proposition-1-threshold-optimality", true, ""};
  for (int K = 2; K <= k_max; ++K)
    for (int m = 1; m <= K - 1; ++m)
      for (int L = 1; L <= K - 1; ++L) {
        const Rational best = rate_for_split(K, m, L);
        const auto [lo, hi] = threshold_window(K, m, L);
        for (int j = lo; j <= hi; ++j)
          if (rate_with_threshold(K, m, L, j) < best) {
            res.pass = false;
            res.detail = "K=" + std::to_string(K) + " m=" + std::to_string(m) +
                         " L=" + std::to_string(L) + " j=" + std::to_string(j);
            return res;
          }
      }
  return res;
}

PropertyResult check_baseline_dominance(int k_max) {
  PropertyResult res{"proposition-2-baseline-dominance", true, ""};
  for (int K = 2; K <= k_max; ++K)
    for (int t = 1; 2 * t <= K - 1; ++t) {
      const Rational scheme = worst_case_rate(K, 2 * t);
      const Rational mn = mn_baseline_rate(K, Rational(2 * t, K));
      const bool tie_allowed = (K % 2 == 1) && (2 * t == K - 1);
      if (scheme > mn || (scheme == mn && !tie_allowed)) {
        res.pass = false;
        res.detail = "K=" + std::to_string(K) + " t=" + std::to_string(t) +
                     " scheme=" + scheme.to_string() + " baseline=" + mn.to_string();
        return res;
      }
    }
  return res;
}

PropertyResult check_formula_simulation(int k_max, std::uint64_t seed) {
  PropertyResult res{"formula-simulation-agreement", true, ""};
  for (int K = 2; K <= std::min(k_max, 10); ++K)
    for (int m = 1; m <= K - 1; ++m) {
      const ProblemInstance inst(K, m);
      for (int L = 1; L <= K - 1; ++L) {
        std::vector<FileId> req(K, FileId::B);
        for (int u = 0; u < L; ++u) req[u] = FileId::A;
        const auto rep = simulate(inst, Demand(std::move(req)), seed);
        if (rep.rate != rate_for_split(K, m, L)) {
          res.pass = false;
          res.detail = "K=" + std::to_string(K) + " m=" + std::to_string(m) +
                       " L=" + std::to_string(L);
          return res;
        }
      }
    }
  return res;
}

PropertyResult check_decode_sweep(int k_max, std::uint64_t seed) {
  PropertyResult res{"decode-sweep", true, ""};
  for (int K = 2; K <= k_max; ++K)
    for (int m = 1; m <= K - 1; ++m) {
      const ProblemInstance inst(K, m);
      for (const auto& d : sample_demands(K, seed + m, 14)) {
        SimulationReport rep;
        try {
          rep = simulate(inst, d, seed);
        } catch (const std::exception& e) {
          res.pass = false;
          res.detail = "K=" + std::to_string(K) + " m=" + std::to_string(m) +
                       " demands=" + d.to_string() + " error=" + e.what();
          return res;
        }
        if (!rep.all_ok()) {
          res.pass = false;
          res.detail = "K=" + std::to_string(K) + " m=" + std::to_string(m) +
                       " demands=" + d.to_string();
          return res;
        }
      }
    }
  return res;
}

PropertyResult check_oracle_agreement(int k_max) {
  PropertyResult res{"oracle-decodability", true, ""};
  for (int K = 2; K <= std::min(k_max, 8); ++K)
    for (int m = 1; m <= K - 1; ++m) {
      const ProblemInstance inst(K, m);
      for (int L = 0; L <= K; ++L) {
        const DeliveryPlan plan =
            (L == 0 || L == K) ? generate_messages(inst, L, 0)
                               : generate_messages(inst, L, optimal_threshold(K, m, L));
        for (int u = 1; u <= K; ++u) {
          const FileId want = (L == 0) ? FileId::B : (L == K || u <= L) ? FileId::A : FileId::B;
          const auto sys = build_user_system(inst, u, plan);
          const auto r = decodable(sys, want);
          if (!r.decodable) {
            res.pass = false;
            res.detail = "K=" + std::to_string(K) + " m=" + std::to_string(m) +
                         " L=" + std::to_string(L) + " user=" + std::to_string(u) +
                         " missing=" + (r.missing ? r.missing->to_string() : "?");
            return res;
          }
        }
      }
    }
  return res;
}

PropertyResult check_lower_bound(int k_max) {
  PropertyResult res{"cutset-below-achievable", true, ""};
  for (int K = 2; K <= k_max; ++K) {
    for (int m = 1; m <= K - 1; ++m)
      if (cutset_lower_bound(K, Rational(m, K)) > worst_case_rate(K, m)) {
        res.pass = false;
        res.detail = "K=" + std::to_string(K) + " m=" + std::to_string(m);
        return res;
      }
    for (int t = 0; t <= K; ++t) {
      const Rational M(2 * t, K);
      if (cutset_lower_bound(K, M) > mn_baseline_rate(K, M)) {
        res.pass = false;
        res.detail = "K=" + std::to_string(K) + " t=" + std::to_string(t);
        return res;
      }
    }
  }
  return res;
}

PropertyResult check_hull_validity(int k_max) {
  PropertyResult res{"hull-below-points", true, ""};
  for (int K = 2; K <= k_max; ++K) {
    const auto pts = achievable_points(K);
    const auto hull = lower_hull(pts);
    for (const auto& p : pts)
      if (p.R < hull_value_at(hull, p.M)) {
        res.pass = false;
        res.detail = "K=" + std::to_string(K) + " M=" + p.M.to_string();
        return res;
      }
  }
  return res;
}

}  // namespace

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.k_max < 2 || opt.k_max > 20) {
    err << "verify: --K-max must be in 2..20\n";
    return 1;
  }
  std::vector<PropertyResult> results;
  results.push_back(check_threshold_optimality(opt.k_max));
  results.push_back(check_baseline_dominance(opt.k_max));
  results.push_back(check_formula_simulation(opt.k_max, opt.seed));
  results.push_back(check_decode_sweep(opt.k_max, opt.seed));
  results.push_back(check_oracle_agreement(opt.k_max));
  results.push_back(check_lower_bound(opt.k_max));
  results.push_back(check_hull_validity(opt.k_max));

  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  if (opt.json) {
    ordered_json o;
    o["k_max"] = opt.k_max;
    o["seed"] = opt.seed;
    o["properties"] = ordered_json::array();
    for (const auto& r : results) {
      ordered_json e;
      e["name"] = r.name;
      e["pass"] = r.pass;
      if (!r.pass) e["counterexample"] = r.detail;
      o["properties"].push_back(e);
    }
    o["all_pass"] = all;
    out << o.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      if (r.pass)
        out << "[PASS] " << r.name << "\n";
      else
        out << "[FAIL] " << r.name << "  counterexample: " << r.detail << "\n";
    }
    out << (all ? "all properties passed" : "some properties FAILED") << " (K-max "
        << opt.k_max << ")\n";
  }
  return all ? 0 : 2;
}

}  // namespace paircache::cli
