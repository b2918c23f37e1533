#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gsc/errors.hpp"
#include "gsc/rep.hpp"
#include "gsc/serialize.hpp"
#include "gsc/state.hpp"
#include "script.hpp"
#include "verify.hpp"

namespace {

using json = nlohmann::json;
using namespace gsc;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::vector<SubgroupPtr> all_subgroups(const GroupPtr& G) {
  std::set<std::vector<int>> seen;
  std::vector<SubgroupPtr> out;
  auto add = [&](SubgroupPtr H) {
    if (seen.insert(H->members()).second) out.push_back(std::move(H));
  };
  for (int a = 0; a < G->order(); ++a) add(subgroup_closure(G, {a}));
  for (int a = 1; a < G->order(); ++a)
    for (int b = a + 1; b < G->order(); ++b) add(subgroup_closure(G, {a, b}));
  return out;
}

json generator_names(const GroupTable& G, const Subgroup& H) {
  json names = json::array();
  for (int g : small_generating_set(*H.as_group())) names.push_back(G.name(H.embed(g)));
  return names;
}

json group_info(const GroupPtr& G) {
  json j;
  j["command"] = "group-info";
  j["group"] = G->label();
  j["spec"] = group_spec_to_json(G->spec());
  j["order"] = G->order();
  j["abelian"] = G->is_abelian();
  j["bit_order"] = "qubit 1 is the most significant bit";
  std::vector<std::string> names;
  for (int g = 0; g < G->order(); ++g) names.push_back(G->name(g));
  j["elements"] = names;
  json al = json::object();
  for (const auto& [n, g] : G->aliases()) al[n] = G->name(g);
  j["aliases"] = al;
  auto chk = validate_group(*G);
  j["validation"] = {{"ok", chk.ok()}, {"message", chk.message}};
  j["classes"] = classes_to_json(*G);
  j["num_classes"] = j["classes"].size();

  int center = 0;
  for (int z = 0; z < G->order(); ++z) {
    bool c = true;
    for (int g = 0; g < G->order() && c; ++g) c = G->mul(z, g) == G->mul(g, z);
    center += c ? 1 : 0;
  }
  json aut;
  aut["inner_automorphisms"] = G->order() / center;
  auto gens = small_generating_set(*G);
  double candidates = std::pow(static_cast<double>(G->order()), static_cast<double>(gens.size()));
  if (candidates <= 1e5) {
    std::size_t count = 0;
    std::vector<int> img(gens.size(), 0);
    while (true) {
      std::vector<std::pair<int, int>> pairs;
      for (std::size_t i = 0; i < gens.size(); ++i) pairs.emplace_back(gens[i], img[i]);
      try {
        automorphism_from_images(G, pairs);
        ++count;
      } catch (const Error&) {
      }
      std::size_t k = 0;
      while (k < img.size() && ++img[k] == G->order()) img[k++] = 0;
      if (k == img.size()) break;
    }
    aut["automorphisms"] = count;
    aut["has_outer"] = static_cast<int>(count) > G->order() / center;
  } else {
    aut["automorphisms"] = nullptr;
  }
  j["automorphism_checks"] = aut;

  json knits = json::array();
  std::size_t total = 0;
  if (G->order() <= 64) {
    auto subs = all_subgroups(G);
    for (const auto& H : subs)
      for (const auto& K : subs) {
        if (H->size() == 1 || K->size() == 1 || H->size() * K->size() != G->order()) continue;
        try {
          knit_decompose(G, H, K);
        } catch (const NotAKnitProduct&) {
          continue;
        }
        if (++total > 32) continue;
        knits.push_back({{"H", generator_names(*G, *H)},
                         {"K", generator_names(*G, *K)},
                         {"H_order", H->size()},
                         {"K_order", K->size()},
                         {"H_normal", is_normal(*H)},
                         {"K_normal", is_normal(*K)}});
      }
  }
  j["knit_candidates"] = knits;
  j["knit_candidates_total"] = total;
  return j;
}

json rep_report(const GroupPtr& G, const std::vector<std::string>& subgroup) {
  json j;
  j["command"] = "rep-report";
  j["group"] = G->label();
  auto rd = representations(G);
  j["character_table"] = character_table_to_json(rd->table);
  if (!subgroup.empty()) {
    std::vector<int> gens;
    for (const auto& w : subgroup) gens.push_back(G->parse(w));
    j["subgroup_report"] = multiplicity_report(G, subgroup_closure(G, gens));
  }
  json fusion = json::array();
  for (int a = 0; a < rd->table.num_irreps(); ++a)
    for (int b = a; b < rd->table.num_irreps(); ++b) {
      std::string s;
      for (auto [k, m] : clebsch_gordan(G, a, b).summands)
        for (int t = 0; t < m; ++t) s += (s.empty() ? "" : "+") + rd->table.labels[k];
      fusion.push_back({{"r1", rd->table.labels[a]}, {"r2", rd->table.labels[b]}, {"fusion", s}});
    }
  j["fusion_rules"] = fusion;
  return j;
}

void emit(const json& report, const std::string& json_out) {
  std::cout << report.dump(2) << "\n";
  if (!json_out.empty()) {
    std::ofstream f(json_out);
    if (!f) throw ScriptError("cannot write " + json_out);
    f << report.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gsc: group surface code simulator"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string policy, json_out;
  int max_attempts = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "RNG seed (random when omitted)");
    sub->add_option("--policy", policy, "sample or postselect")->check(CLI::IsMember({"sample", "postselect"}));
    sub->add_option("--json-out", json_out, "also write the report to this file");
    sub->add_option("--max-attempts", max_attempts, "charge-move attempts per seam charge")
        ->check(CLI::PositiveNumber);
  };

  std::string spec_text;
  auto* info = app.add_subcommand("group-info", "group order, classes, automorphisms and knit candidates");
  info->add_option("spec", spec_text, "group spec, e.g. D4, S3, Z2xZ2, D4_abc, GCCX or a JSON object")->required();
  add_common(info);

  std::vector<std::string> subgroup;
  auto* rep = app.add_subcommand("rep-report", "character table, fusion and induction/restriction");
  rep->add_option("spec", spec_text, "group spec")->required();
  rep->add_option("--subgroup", subgroup, "generator words of a subgroup")->delimiter(',');
  add_common(rep);

  std::string script_path;
  auto* run = app.add_subcommand("run", "execute a protocol script");
  run->add_option("script", script_path, "path to a JSON protocol script")->required();
  add_common(run);

  std::string suite = "all";
  bool inject = false;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "all, group, rep, lattice, sim, protocols or engineering");
  verify->add_flag("--inject-mutation", inject, "corrupt the D4 table before the group suite");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  bool seeded = false;
  for (auto* sub : {info, rep, run, verify})
    if (sub->parsed() && sub->count("--seed")) seeded = true;
  if (!seeded) {
    seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
    std::cerr << "seed: " << seed << "\n";
  }

  try {
    if (info->parsed()) {
      auto j = group_info(build_group(parse_group_spec(spec_text)));
      j["seed"] = seed;
      emit(j, json_out);
      return j["validation"]["ok"].get<bool>() ? kExitPass : kExitFail;
    }
    if (rep->parsed()) {
      auto j = rep_report(build_group(parse_group_spec(spec_text)), subgroup);
      j["seed"] = seed;
      emit(j, json_out);
      return kExitPass;
    }
    if (run->parsed()) {
      std::ifstream f(script_path);
      if (!f) throw ScriptError("cannot read " + script_path);
      json script;
      try {
        script = json::parse(f);
      } catch (const json::parse_error& e) {
        throw ScriptError(std::string("invalid JSON: ") + e.what());
      }
      cli::RunOptions opt;
      opt.seed = seed;
      if (!policy.empty()) opt.policy = policy_from_string(policy);
      if (max_attempts > 0) opt.max_attempts = max_attempts;
      auto j = cli::run_script(script, opt);
      emit(j, json_out);
      return j["pass"].get<bool>() ? kExitPass : kExitFail;
    }
    cli::VerifyOptions opt;
    opt.seed = seed;
    opt.inject_mutation = inject;
    auto j = cli::run_verify(suite, opt);
    emit(j, json_out);
    return j["pass"].get<bool>() ? kExitPass : kExitFail;
  } catch (const ScriptError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidSpec& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const OrderCapExceeded& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const CapExceeded& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const NotAKnitProduct& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const OutOfRange& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "bad JSON value: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitFail;
  }
}
