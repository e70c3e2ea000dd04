#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "etf/etf.hpp"

// Exit codes: 0 success, 1 negative verification result, 2 usage/parse or
// precondition failure, 3 size limit exceeded.

namespace {

using nlohmann::json;

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw etf::format_error("cannot open " + path);
    ss << f.rdbuf();
  }
  return ss.str();
}

std::int64_t env_int(const char* name, std::int64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const long long v = std::strtoll(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 1)
    throw etf::format_error(std::string(name) + ": expected a positive integer, got \"" + raw +
                            "\"");
  return v;
}

json params_json(const etf::FrameParams& p) {
  json j{{"n", p.n}, {"k", p.k},        {"mu", p.mu},
         {"lambda1", p.lambda1},        {"lambda2", p.lambda2}};
  if (p.e_integral) j["e"] = p.e;
  return j;
}

std::string params_human(const etf::FrameParams& p) {
  std::string s = "n = " + std::to_string(p.n) + ", k = " + std::to_string(p.k);
  if (p.e_integral) s += ", e = " + std::to_string(p.e);
  s += ", lambda = (" + std::to_string(p.lambda1) + ", " + std::to_string(p.lambda2) + ")";
  return s;
}

std::string params_tsv(const etf::FrameParams& p) {
  return std::to_string(p.n) + "\t" + std::to_string(p.k) + "\t" + std::to_string(p.mu) + "\t" +
         (p.e_integral ? std::to_string(p.e) : std::string()) + "\t" +
         std::to_string(p.lambda1) + "\t" + std::to_string(p.lambda2);
}

int run_verify(const std::string& input, const std::string& format, bool conditions) {
  const auto Q = etf::parse_crsm(read_input(input));
  const auto report =
      conditions ? etf::verify_via_conditions_explained(Q) : etf::verify_signature_explained(Q);
  std::optional<etf::FrameParams> params;
  if (report.mu) {
    try {
      params = etf::derive_params(Q.order(), *report.mu);
    } catch (const etf::param_error&) {
    }
  }
  if (format == "json") {
    json j{{"signature", report.mu.has_value()}};
    if (report.mu) j["mu"] = *report.mu;
    if (params) j["params"] = params_json(*params);
    if (report.failure)
      j["failure"] = {{"i", report.failure->i},
                      {"j", report.failure->j},
                      {"reason", report.failure->reason}};
    std::cout << j.dump(2) << "\n";
  } else if (format == "tsv") {
    if (params) {
      std::cout << "1\t" << params_tsv(*params) << "\n";
    } else if (report.mu) {
      std::cout << "1\t" << Q.order() << "\t\t" << *report.mu << "\t\t\t\n";
    } else {
      std::cout << "0\t\t\t\t\t\t\n";
    }
  } else {
    if (report.mu) {
      std::cout << "signature matrix: mu = " << *report.mu << "\n";
      if (params) std::cout << params_human(*params) << "\n";
    } else {
      std::cout << "not a signature matrix: " << report.failure->reason << " at ("
                << report.failure->i << ", " << report.failure->j << ")\n";
    }
  }
  return report.mu ? 0 : 1;
}

int run_params(std::int64_t n, std::int64_t mu, const std::string& format) {
  const auto p = etf::derive_params(n, mu);
  if (format == "json") {
    std::cout << params_json(p).dump(2) << "\n";
  } else if (format == "tsv") {
    std::cout << params_tsv(p) << "\n";
  } else {
    std::cout << params_human(p) << "\n";
  }
  return 0;
}

int run_standard_form(const std::string& input) {
  const auto Q = etf::parse_crsm(read_input(input));
  std::cout << etf::emit_crsm(etf::standard_form(Q).first);
  return 0;
}

int run_feasible(std::int64_t max_n, const std::string& format) {
  const auto rows = etf::feasibility_table(max_n);
  if (format == "json") {
    json arr = json::array();
    for (const auto& p : rows) arr.push_back(params_json(p));
    std::cout << arr.dump(2) << "\n";
  } else if (format == "tsv") {
    for (const auto& p : rows) std::cout << params_tsv(p) << "\n";
  } else {
    std::cout << "admissible parameters up to n = " << max_n << ":\n";
    for (const auto& p : rows) std::cout << "  " << params_human(p) << "\n";
    if (rows.empty()) std::cout << "  (none)\n";
  }
  return 0;
}

int run_to_graph(const std::string& input) {
  const auto Q = etf::parse_crsm(read_input(input));
  if (!etf::is_standard_form(Q))
    throw etf::precondition_error(
        "to-graph: input must be in standard form; run standard-form first");
  std::cout << etf::emit_dg(etf::remove_vertex(etf::graph_of(Q), 0));
  return 0;
}

int run_from_graph(const std::string& input) {
  const auto G = etf::parse_dg(read_input(input));
  std::cout << etf::emit_crsm(etf::bordered(G));
  return 0;
}

int run_check_graph(const std::string& input, const std::string& format) {
  const auto G = etf::parse_dg(read_input(input));
  const auto report = etf::check_digraph_conditions_explained(G);
  const std::int64_t m = G.order();
  if (format == "json") {
    json j{{"holds", report.e.has_value()}, {"order", m}};
    if (report.e) {
      j["e"] = *report.e;
      j["bordered_mu"] = m - 3 * *report.e - 1;
    }
    if (report.failure)
      j["failure"] = {{"v", report.failure->v},
                      {"w", report.failure->w},
                      {"reason", report.failure->reason}};
    std::cout << j.dump(2) << "\n";
  } else if (format == "tsv") {
    if (report.e) {
      std::cout << "1\t" << *report.e << "\t" << (m - 3 * *report.e - 1) << "\n";
    } else {
      std::cout << "0\t\t\n";
    }
  } else {
    if (report.e) {
      std::cout << "digraph conditions hold: e = " << *report.e << ", bordered matrix has n = "
                << (m + 1) << ", mu = " << (m - 3 * *report.e - 1) << "\n";
    } else {
      std::cout << "digraph conditions fail: " << report.failure->reason << " at ("
                << report.failure->v << ", " << report.failure->w << ")\n";
    }
  }
  return report.e ? 0 : 1;
}

int run_search(int n, std::optional<std::int64_t> mu, std::uint64_t limit, bool prune,
               int threads, const std::string& emit_dir) {
  if (!emit_dir.empty()) std::filesystem::create_directories(emit_dir);
  etf::SearchConfig cfg;
  cfg.order = n;
  cfg.limit = limit;
  cfg.pairwise_prune = prune;
  cfg.threads = threads;
  cfg.mu = mu;
  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t index = 0;
  const auto stats = etf::search_signatures(cfg, [&](const etf::SeidelMatrix& Q) {
    json line{{"index", index}};
    if (emit_dir.empty()) {
      line["crsm"] = etf::emit_crsm(Q);
    } else {
      char name[32];
      std::snprintf(name, sizeof name, "solution_%04llu.crsm",
                    static_cast<unsigned long long>(index));
      const auto path = std::filesystem::path(emit_dir) / name;
      std::ofstream f(path, std::ios::binary);
      f << etf::emit_crsm(Q);
      if (!f) throw etf::format_error("cannot write " + path.string());
      line["path"] = path.string();
    }
    std::cout << line.dump() << "\n";
    ++index;
    return true;
  });
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  std::cout << json{{"nodes", stats.nodes}, {"solutions", stats.solutions}, {"wall_ms", ms}}.dump()
            << "\n";
  return 0;
}

int run_construct_tensor(const std::string& a, const std::string& b, std::int64_t cap) {
  const auto Q1 = etf::parse_crsm(read_input(a));
  const auto Q2 = etf::parse_crsm(read_input(b));
  const std::int64_t order = static_cast<std::int64_t>(Q1.order()) * Q2.order();
  if (order > cap)
    throw etf::size_limit_error("construct tensor: result order " + std::to_string(order) +
                                " exceeds the size cap " + std::to_string(cap));
  std::cout << etf::emit_crsm(etf::tensor_compose(Q1, Q2));
  return 0;
}

int run_frame(const std::string& input, bool report) {
  const auto Q = etf::parse_crsm(read_input(input));
  const auto fs = etf::synthesize(Q);
  if (report) {
    const auto r = etf::validate_frame(fs);
    std::fprintf(stderr,
                 "parseval %.3e  norms %.3e  angles %.3e  gram %.3e  (tolerance %.1e)\n",
                 r.parseval_deviation, r.norm_deviation, r.angle_deviation, r.gram_deviation,
                 etf::frame_tolerance(fs.n));
  }
  std::cout << etf::frame_to_json(fs);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equiangular tight frames from cube-root Seidel matrices"};
  app.require_subcommand(1);

  std::string format = "human";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"human", "tsv", "json"}));

  std::string input = "-";
  bool conditions = false;
  auto* verify = app.add_subcommand("verify", "verify that a .crsm matrix is a signature matrix");
  verify->add_option("input", input, "matrix file, or - for stdin");
  verify->add_flag("--conditions", conditions,
                   "use the row/pair condition route (standard-form input)");
  verify->fallthrough();

  std::int64_t pn = 0, pmu = 0;
  auto* params = app.add_subcommand("params", "derive (k, e, lambda) from n and mu");
  params->add_option("n", pn, "matrix order")->required();
  params->add_option("mu", pmu, "linear coefficient in Q^2 = (n-1)I + mu Q")->required();
  params->fallthrough();

  std::string sf_input = "-";
  auto* sform = app.add_subcommand("standard-form", "switch a matrix into standard form");
  sform->add_option("input", sf_input, "matrix file, or - for stdin");
  sform->fallthrough();

  std::int64_t max_n = 100;
  auto* feasible = app.add_subcommand("feasible", "list admissible (n, k) up to a bound");
  feasible->add_option("max_n", max_n, "largest order to test");
  feasible->add_option("--max-n", max_n, "largest order to test");
  feasible->fallthrough();

  std::string tg_input = "-";
  auto* tograph = app.add_subcommand("to-graph", "reduce a standard-form matrix to its digraph");
  tograph->add_option("input", tg_input, "matrix file, or - for stdin");
  tograph->fallthrough();

  std::string fg_input = "-";
  auto* fromgraph = app.add_subcommand("from-graph", "border a digraph into a Seidel matrix");
  fromgraph->add_option("input", fg_input, "digraph file, or - for stdin");
  fromgraph->fallthrough();

  std::string cg_input = "-";
  auto* checkgraph = app.add_subcommand("check-graph", "test the digraph signature conditions");
  checkgraph->add_option("input", cg_input, "digraph file, or - for stdin");
  checkgraph->fallthrough();

  auto* construct = app.add_subcommand("construct", "emit known signature matrices");
  construct->require_subcommand(1);
  construct->fallthrough();
  auto* nine = construct->add_subcommand("nine", "the 9x9 matrix of the (9,6) frame");
  nine->fallthrough();
  int power_m = 1;
  auto* power9 = construct->add_subcommand("power9", "tensor power of order 9^m");
  power9->add_option("-m,--m", power_m, "exponent")->required();
  power9->fallthrough();
  std::string tensor_a, tensor_b;
  auto* tensor = construct->add_subcommand("tensor", "tensor composition of two mu = -2 matrices");
  tensor->add_option("first", tensor_a, "first matrix file")->required();
  tensor->add_option("second", tensor_b, "second matrix file")->required();
  tensor->fallthrough();

  int search_n = 0;
  std::int64_t search_mu = 0;
  std::uint64_t search_limit = 0;
  bool no_prune = false;
  int search_threads = 0;
  std::string emit_dir;
  auto* search = app.add_subcommand("search", "enumerate standard-form signature matrices");
  search->add_option("order", search_n, "matrix order");
  search->add_option("--n", search_n, "matrix order");
  auto* search_mu_opt =
      search->add_option("--mu", search_mu, "search only this mu (default: every admissible)");
  search->add_option("--limit", search_limit, "stop after this many solutions (0 = all)");
  search->add_flag("--no-pairwise-prune", no_prune, "disable pair-condition pruning");
  search->add_option("--threads", search_threads, "worker threads (default ETF_THREADS or 1)");
  search->add_option("--emit-dir", emit_dir, "write each solution to this directory");
  search->fallthrough();

  std::string frame_input = "-";
  bool frame_report = false;
  auto* frame = app.add_subcommand("frame", "synthesize the frame of a signature matrix");
  frame->add_option("input", frame_input, "matrix file, or - for stdin");
  frame->add_flag("--report", frame_report, "print deviation report to stderr");
  frame->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(input, format, conditions);
    if (params->parsed()) return run_params(pn, pmu, format);
    if (sform->parsed()) return run_standard_form(sf_input);
    if (feasible->parsed()) return run_feasible(max_n, format);
    if (tograph->parsed()) return run_to_graph(tg_input);
    if (fromgraph->parsed()) return run_from_graph(fg_input);
    if (checkgraph->parsed()) return run_check_graph(cg_input, format);
    if (construct->parsed()) {
      const std::int64_t cap = env_int("ETF_SIZE_CAP", etf::default_size_cap);
      if (nine->parsed()) {
        std::cout << etf::emit_crsm(etf::signature_9_6());
        return 0;
      }
      if (power9->parsed()) {
        std::cout << etf::emit_crsm(etf::power_9(power_m, cap));
        return 0;
      }
      if (tensor->parsed()) return run_construct_tensor(tensor_a, tensor_b, cap);
    }
    if (search->parsed()) {
      if (search_n <= 0) throw etf::precondition_error("search: a positive order is required");
      const int threads = search_threads > 0
                              ? search_threads
                              : static_cast<int>(env_int("ETF_THREADS", 1));
      std::optional<std::int64_t> mu;
      if (search_mu_opt->count() > 0) mu = search_mu;
      return run_search(search_n, mu, search_limit, !no_prune, threads, emit_dir);
    }
    if (frame->parsed()) return run_frame(frame_input, frame_report);
  } catch (const etf::size_limit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const etf::param_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const etf::frame_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const etf::format_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const etf::precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
