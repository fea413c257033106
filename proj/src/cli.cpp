#include "mpoly/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpoly/constructions.hpp"
#include "mpoly/error.hpp"
#include "mpoly/rank_analysis.hpp"
#include "mpoly/scaling.hpp"
#include "mpoly/tensor_io.hpp"
#include "mpoly/verify.hpp"

namespace mpoly {

namespace {

using nlohmann::json;

struct Globals {
  std::uint64_t seed = 0;
  std::optional<double> eps;
  std::optional<std::size_t> max_iter;
  std::optional<std::size_t> restarts;
  std::string json_out;
};

Tensor load_tensor(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return read_tensor(in);
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  return read_tensor(f);
}

json parse_json_arg(const std::string& arg) {
  try {
    const auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return json::parse(arg);
    std::ifstream f(arg);
    if (!f) throw ParseError("cannot open " + arg);
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

ScalingConfig scaling_config(const Globals& g, ScalingConfig cfg) {
  cfg.seed = g.seed;
  if (g.eps) cfg.epsilon = *g.eps;
  if (g.max_iter) cfg.max_iter = *g.max_iter;
  if (g.restarts) cfg.restarts = *g.restarts;
  cfg.validate();
  return cfg;
}

json vector_json(const Vector& v) {
  auto j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back({v[i].real(), v[i].imag()});
  return j;
}

json membership_json(const MembershipVerdict& v) {
  json j{{"status", to_string(v.status)}, {"best_delta", v.best_delta}, {"runs", v.runs},
         {"iterations", v.iterations}, {"ill_conditioned_runs", v.ill_conditioned_runs}};
  if (v.member()) {
    j["delta"] = v.delta;
    j["witness"] = point_to_json(*v.witness);
  }
  return j;
}

json scaling_json(const ScalingReport& r) {
  return {{"iterations", r.iterations},
          {"converged", r.converged},
          {"final_residual", r.final_residual()},
          {"final_norm_sl", r.final_norm_sl},
          {"support_deficient", r.support_deficient},
          {"norm_floor_reached", r.norm_floor_reached},
          {"seed", r.seed},
          {"residual_history", r.residual_history},
          {"updated_legs", r.updated_legs},
          {"final_tensor", tensor_to_json(r.final_tensor)}};
}

json rank_json(const RankProfile& p) {
  return {{"minrank_upper", p.minrank_upper}, {"minrank_witness", vector_json(p.minrank_witness)},
          {"maxrank_estimate", p.maxrank_estimate}, {"samples", p.samples},
          {"seed", p.seed}, {"exact", p.exact}};
}

}  // namespace

int cli_main(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moment polytope and minrank toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Global random seed");
  app.add_option("--eps", g.eps, "Convergence threshold")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", g.max_iter, "Iteration budget")->check(CLI::PositiveNumber);
  app.add_option("--restarts", g.restarts, "Generic restarts per membership test")->check(CLI::PositiveNumber);
  app.add_option("--json-out", g.json_out, "Also write the JSON result to this file");

  std::string input;
  auto add_input = [&](CLI::App* sub) { sub->add_option("input", input, "Tensor JSON file (default stdin)"); };

  auto* construct_cmd = app.add_subcommand("construct", "Emit a named tensor");
  std::string kind;
  std::vector<std::size_t> params;
  std::vector<double> q;
  construct_cmd->add_option("--kind", kind, "unit|matmul|imm|polymul|pencil|balanced-pencil|bci|wedge3|zero")
      ->required();
  construct_cmd->add_option("--params", params, "Integer parameters");
  construct_cmd->add_option("--q", q, "Probability vector for bci");

  auto* info_cmd = app.add_subcommand("info", "Marginals and spectrum point");
  add_input(info_cmd);
  auto* scale_cmd = app.add_subcommand("scale-uniform", "Uniform tensor scaling");
  add_input(scale_cmd);
  auto* semi_cmd = app.add_subcommand("semistable", "SL-semistability evidence");
  add_input(semi_cmd);

  auto* member_cmd = app.add_subcommand("member", "Moment polytope membership evidence");
  std::string point_arg;
  member_cmd->add_option("--point", point_arg, "Spectrum point JSON (file or inline)")->required();
  add_input(member_cmd);

  auto* uniform_cmd = app.add_subcommand("uniform-point", "Membership of a uniform point");
  std::vector<std::size_t> uniform_dims;
  uniform_cmd->add_option("--dims", uniform_dims, "Support size per leg")->required()->expected(3)->allow_extra_args(false);
  add_input(uniform_cmd);

  SamplingConfig sampling;
  auto* minrank_cmd = app.add_subcommand("minrank", "Sampled minrank upper bound");
  auto* maxrank_cmd = app.add_subcommand("maxrank", "Sampled maxrank");
  for (auto* sub : {minrank_cmd, maxrank_cmd}) {
    sub->add_option("--leg", sampling.leg, "Slicing leg (1-based)")->default_val(1)->check(CLI::PositiveNumber);
    sub->add_option("--samples", sampling.samples, "Random directions")->default_val(200);
    add_input(sub);
  }

  std::size_t n = 0, c = 0;
  auto* sep_cmd = app.add_subcommand("separation", "Pencil vs matrix multiplication separation");
  sep_cmd->add_option("--n", n)->required();
  sep_cmd->add_option("--c", c)->required();
  auto* border_cmd = app.add_subcommand("border-subrank", "Border subrank upper bound for M_n");
  border_cmd->add_option("--n", n)->required();

  auto* verify_cmd = app.add_subcommand("verify", "Replay the claim suite");
  std::string filter;
  bool list_only = false;
  verify_cmd->add_option("--filter", filter, "Claim id glob");
  verify_cmd->add_flag("--list", list_only, "List claim ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  int status = 0;
  try {
    json result;
    bool raw_output = false;
    if (construct_cmd->parsed()) {
      result = tensor_to_json(construct({parse_construction_kind(kind), params, q}));
      raw_output = true;
    } else if (info_cmd->parsed()) {
      const Tensor t = load_tensor(input, in);
      const auto mm = moment_map(t);
      json marg = json::array();
      for (const auto& m : mm.matrices) marg.push_back(matrix_to_json(m));
      result = {{"dims", t.shape().dims()}, {"norm", t.norm()}, {"conciseness", conciseness_profile(t)},
                {"marginals", marg}, {"spec_point", point_to_json(spec_point(t))}};
    } else if (scale_cmd->parsed()) {
      result = scaling_json(scale_uniform(load_tensor(input, in), scaling_config(g, ScalingConfig::uniform())));
    } else if (semi_cmd->parsed()) {
      const auto v = semistability_test(load_tensor(input, in), scaling_config(g, ScalingConfig::uniform()));
      result = {{"status", to_string(v.status)}, {"residual", v.residual}, {"min_norm", v.min_norm},
                {"concise", v.concise}, {"iterations", v.iterations}};
    } else if (member_cmd->parsed()) {
      const SpectrumPoint p = point_from_json(parse_json_arg(point_arg));
      result = membership_json(membership_test(load_tensor(input, in), p, scaling_config(g, ScalingConfig::membership())));
    } else if (uniform_cmd->parsed()) {
      const auto v = uniform_point_test(load_tensor(input, in), uniform_dims, scaling_config(g, ScalingConfig::membership()));
      result = membership_json(v.membership);
      if (v.semistable_witness) result["semistable_witness"] = tensor_to_json(*v.semistable_witness);
    } else if (minrank_cmd->parsed() || maxrank_cmd->parsed()) {
      sampling.seed = g.seed;
      sampling.leg -= 1;
      const Tensor t = load_tensor(input, in);
      if (minrank_cmd->parsed()) result = rank_json(minrank_upper(t, sampling));
      else result = {{"maxrank_estimate", maxrank(t, sampling)}, {"samples", sampling.samples + 1}, {"seed", g.seed}};
    } else if (sep_cmd->parsed()) {
      const auto r = separation_check(n, c);
      result = {{"n", r.n}, {"c", r.c}, {"pencil_minrank", r.pencil_minrank}, {"matmul_bound", r.matmul_bound},
                {"verdict", to_string(r.verdict)}};
    } else if (border_cmd->parsed()) {
      const auto r = border_subrank_bound(n);
      result = {{"n", n}, {"bound", r.bound}, {"a", r.a}, {"b", r.b}};
    } else if (verify_cmd->parsed()) {
      if (list_only) {
        result = json::array();
        for (const auto& info : list_claims())
          result.push_back({{"claim_id", info.id}, {"anchor", info.anchor}, {"evidence_only", info.evidence_only}});
      } else {
        const auto rs = run_verify(filter.empty() ? std::nullopt : std::optional<std::string>(filter), g.seed);
        for (const auto& r : rs)
          err << to_string(r.status) << "  " << r.claim_id << "  metric=" << r.metric << " tol=" << r.tolerance
              << "  " << r.runtime_ms << "ms  " << r.detail << "\n";
        result = to_json(rs);
        if (!verify_ok(rs)) status = 1;
      }
    }

    out << (raw_output ? result.dump() : result.dump(2)) << "\n";
    if (!g.json_out.empty()) {
      std::ofstream f(g.json_out);
      if (!f) throw ParseError("cannot write " + g.json_out);
      f << result.dump(2) << "\n";
    }
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    err << "internal check failed: " << e.what() << "\n";
    return 3;
  }
  return status;
}

}  // namespace mpoly
