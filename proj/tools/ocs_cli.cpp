// Command-line front end. Exit codes: 0 success, 1 semantic failure (axiom
// violations, unknown names, degenerate inputs), 2 malformed documents or IO.

#include <CLI11.hpp>

#include "ocs/errors.hpp"
#include "ocs/matching.hpp"
#include "ocs/model_io.hpp"
#include "ocs/randomization.hpp"
#include "ocs/random_variable.hpp"
#include "ocs/rational.hpp"
#include "ocs/render.hpp"
#include "ocs/sampling.hpp"
#include "ocs/system.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace ocs;

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> names;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) throw Error("empty name in '" + text + "'");
    names.push_back(part);
  }
  if (names.empty()) throw Error("expected at least one name");
  return names;
}

const ObservableCausalSystem& system_of(const ModelDocument& doc) {
  if (!doc.system) throw Error("model '" + doc.name + "' declares no families");
  return *doc.system;
}

std::string values_line(const SpacePtr& space, const RandomVariable& v) {
  std::string out;
  for (std::size_t i = 0; i < space->size(); ++i) {
    if (i) out += " ";
    out += space->atom(i).id + "=" + std::to_string(v.value(i));
  }
  return out;
}

void print_law(const Law& l, const std::string& indent) {
  for (const auto& [tuple, p] : l.entries()) {
    std::string key;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      if (i) key += ",";
      key += l.names()[i] + "=" + std::to_string(tuple[i]);
    }
    std::cout << indent << "P(" << key << ") = " << pretty(p) << "\n";
  }
}

int cmd_validate(const std::string& path) {
  ModelDocument doc = parse_model_file(path);
  std::cout << "model '" << doc.name << "': " << doc.space->size() << " atoms, "
            << doc.variables.size() << " variables, " << doc.declared_families.size()
            << " families\n";
  if (!doc.system) {
    std::cout << "no families declared; structural checks only\n";
    return 0;
  }
  ValidationReport report = validate(*doc.system);
  if (report.valid) {
    std::cout << "consistency axioms hold\n";
    return 0;
  }
  for (const AxiomViolation& v : report.violations) {
    std::cout << "axiom " << v.axiom << " violated: target " << v.target << " at "
              << v.assignment.to_string();
    if (!v.atom_id.empty()) std::cout << ", atom " << v.atom_id;
    std::cout << ": " << v.detail << "\n";
  }
  std::cout << report.violations.size() << " violation(s)\n";
  return 1;
}

int cmd_contract(const std::string& path, const std::string& target, const std::string& over) {
  ModelDocument doc = parse_model_file(path);
  const ObservableCausalSystem& sys = system_of(doc);
  PotentialOutcomeFamily result =
      contract(sys.observables(), sys.complete_family(target), split_names(over));
  std::cout << "family of " << result.target() << " over (";
  for (std::size_t i = 0; i < result.index_names().size(); ++i) {
    if (i) std::cout << ",";
    std::cout << result.index_names()[i];
  }
  std::cout << ")\n";
  for (const auto& [key, member] : result.members()) {
    std::cout << "  " << member.name() << ": " << values_line(doc.space, member) << "\n";
  }
  return 0;
}

int cmd_causal(const std::string& path, const std::string& source, const std::string& target) {
  ModelDocument doc = parse_model_file(path);
  const ObservableCausalSystem& sys = system_of(doc);
  const std::vector<std::string> sources = split_names(source);
  if (sources.size() == 1) {
    CausalReport r = is_causal(sys, sources[0], target);
    std::cout << sources[0] << " causes " << target << ": " << (r.causal ? "yes" : "no") << "\n";
    if (r.causal) {
      std::cout << "  witness measure " << pretty(r.witness_measure) << " on atoms";
      for (const std::string& id : r.witness.member_ids()) std::cout << " " << id;
      std::cout << "\n  differing members: " << target << " at "
                << r.differing->first.to_string() << " vs " << r.differing->second.to_string()
                << "\n";
    }
    return 0;
  }
  JointCausalReport r = is_jointly_causal(sys, sources, target);
  for (const JointConditionReport& c : r.conditions) {
    std::cout << "moving " << c.moving << " with " << c.fixed.to_string() << " fixed: "
              << (c.holds ? "differs" : "never differs");
    if (c.holds) std::cout << " (measure " << pretty(c.detail.witness_measure) << ")";
    std::cout << "\n";
  }
  std::cout << "jointly causal for " << target << ": " << (r.jointly_causal ? "yes" : "no")
            << "\n";
  if (r.extension) {
    std::cout << "note: more than two sources; member-by-member extension of the pairwise "
                 "definition\n";
  }
  return 0;
}

int cmd_ace(const std::string& path, const std::string& treatment, const std::string& target) {
  ModelDocument doc = parse_model_file(path);
  std::cout << "ace(" << treatment << " -> " << target
            << ") = " << pretty(ace(system_of(doc), treatment, target)) << "\n";
  return 0;
}

int cmd_aoe(const std::string& path, const std::string& treatment, const std::string& target) {
  ModelDocument doc = parse_model_file(path);
  std::cout << "aoe(" << treatment << " -> " << target
            << ") = " << pretty(aoe(doc.variable(treatment), doc.variable(target))) << "\n";
  return 0;
}

int cmd_randomize(const std::string& path, const std::string& treatment,
                  const std::string& target, bool joint, const std::string& spec_path) {
  ModelDocument doc = parse_model_file(path);
  const ObservableCausalSystem& sys = system_of(doc);
  const std::vector<std::string> treatments = split_names(treatment);

  const RandomizerSpec spec = [&] {
    if (!spec_path.empty()) return parse_randomizer_file(spec_path);
    std::vector<std::pair<std::string, std::vector<std::int64_t>>> arms;
    for (const std::string& t : treatments) arms.emplace_back(t, sys.observable(t).image());
    return fair_randomizer(arms);
  }();

  const RandomizedSystem rs = [&] {
    if (treatments.size() == 1 && !joint) {
      return target.empty() ? randomize(sys, treatments[0], spec)
                            : randomize(sys, treatments[0], target, spec);
    }
    return target.empty() ? joint_randomize(sys, treatments, spec)
                          : joint_randomize(sys, treatments, target, spec);
  }();

  std::cout << "product space: " << rs.prod.space->size() << " atoms ("
            << rs.prod.left->size() << " source x " << rs.prod.right->size()
            << " randomizer)\n";
  RandomizationCheck check = verify_randomization_identity(rs);
  for (const ArmCheck& arm : check.arms) {
    std::cout << "arm " << arm.arm.to_string() << ": "
              << (arm.equal ? "outcome law equals the potential-outcome law"
                            : "LAW MISMATCH")
              << "\n";
    print_law(arm.source, "    ");
    if (!arm.equal) {
      std::cout << "  randomized side:\n";
      print_law(arm.randomized, "    ");
    }
  }
  if (treatments.size() == 1) {
    const Rational observed = aoe(rs.treatments[0], rs.outcome);
    const Rational causal = ace(sys, treatments[0], rs.target_name);
    std::cout << "aoe under randomization = " << pretty(observed) << ", ace = " << pretty(causal)
              << (observed == causal ? " (equal)" : " (DIFFER)") << "\n";
  }
  return check.all_equal ? 0 : 1;
}

int cmd_match(const std::string& path, std::string treatment, std::string outcome,
              std::string covariates, std::uint64_t samples, std::uint64_t seed) {
  ModelDocument doc = parse_model_file(path);
  if (doc.matching) {
    if (treatment.empty()) treatment = doc.matching->treatment;
    if (outcome.empty()) outcome = doc.matching->outcome;
    if (covariates.empty()) {
      for (const std::string& z : doc.matching->covariates) {
        if (!covariates.empty()) covariates += ",";
        covariates += z;
      }
    }
  }
  if (treatment.empty() || outcome.empty() || covariates.empty()) {
    throw Error("no matching section in the model; pass --treatment, --outcome and --covariates");
  }
  const RandomVariable& x = doc.variable(treatment);
  const RandomVariable& y = doc.variable(outcome);
  std::vector<RandomVariable> zs;
  for (const std::string& name : split_names(covariates)) zs.push_back(doc.variable(name));

  MatchReport report = nesting_report(x, zs);
  for (const MatchLevel& level : report.levels) {
    std::cout << "k=" << level.k << ": " << level.matchable.size()
              << " matchable cell(s), support measure " << pretty(level.support_measure) << "\n";
  }
  std::cout << "supports nested: " << (report.nested ? "yes" : "no") << "\n";
  std::cout << "population limit of the matched contrast (k=" << zs.size()
            << "): " << pretty(matched_population_limit(x, y, zs, zs.size())) << "\n";

  if (samples > 0) {
    SampleBatch batch = sample_atoms(doc.space, samples, seed);
    MatchedEstimate est = matched_estimate(batch, x, y, zs, zs.size(), seed);
    std::cout << "matched estimate over " << samples << " draws (seed " << seed
              << "): " << pretty(est.estimate) << " from " << est.pairs << " pairs\n";
  }
  return 0;
}

int cmd_enumerate(const std::string& path, const std::string& treatment,
                  const std::string& target, std::uint64_t cap) {
  ModelDocument doc = parse_model_file(path);
  const RandomVariable& x = doc.variable(treatment);
  const RandomVariable& y = doc.variable(target);
  ConsistentEnumeration e = enumerate_consistent(x, y, cap);
  std::cout << e.total.str() << " consistent completion(s)";
  if (e.truncated) std::cout << ", showing the first " << e.items.size();
  std::cout << "\n";
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    std::cout << "#" << i << "\n  " << e.items[i].first.name() << ": "
              << values_line(doc.space, e.items[i].first) << "\n  "
              << e.items[i].second.name() << ": " << values_line(doc.space, e.items[i].second)
              << "\n";
  }
  return 0;
}

int cmd_sample(const std::string& path, std::uint64_t n, std::uint64_t seed,
               const std::string& out_path) {
  ModelDocument doc = parse_model_file(path);
  SampleBatch batch = sample_atoms(doc.space, n, seed);
  if (out_path.empty()) {
    write_batch(std::cout, batch);
    return 0;
  }
  std::ostringstream buffer;
  write_batch(buffer, batch);
  write_file_atomic(out_path, buffer.str());
  std::cout << "wrote " << n << " draws to " << out_path << "\n";
  return 0;
}

int cmd_render(const std::string& path, const std::string& select, const std::string& out_path) {
  ModelDocument doc = parse_model_file(path);
  RenderPlan plan = plan_render(doc, split_names(select));
  write_file_atomic(out_path, render_svg(doc, plan));
  std::cout << "wrote " << plan.panels.size() << " panel(s) to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact causal models on finite probability spaces"};
  app.require_subcommand(1);
  int rc = 0;

  std::string model, target, source, treatment, outcome, over, covariates, select, spec, out;
  std::uint64_t n = 0, seed = 0, cap = 64, samples = 0;
  bool joint = false;

  auto* validate = app.add_subcommand("validate", "check the consistency axioms of a model");
  validate->add_option("model", model)->required();
  validate->callback([&] { rc = cmd_validate(model); });

  auto* contract = app.add_subcommand("contract", "remove indices from a family");
  contract->add_option("model", model)->required();
  contract->add_option("--target", target, "family target")->required();
  contract->add_option("--over", over, "comma-separated indices to remove")->required();
  contract->callback([&] { rc = cmd_contract(model, target, over); });

  auto* causal = app.add_subcommand("causal", "test whether sources cause a target");
  causal->add_option("model", model)->required();
  causal->add_option("--source", source, "one name, or a comma-separated set")->required();
  causal->add_option("--target", target)->required();
  causal->callback([&] { rc = cmd_causal(model, source, target); });

  auto* ace_cmd = app.add_subcommand("ace", "average causal effect, exact");
  ace_cmd->add_option("model", model)->required();
  ace_cmd->add_option("--treatment", treatment)->required();
  ace_cmd->add_option("--target", target)->required();
  ace_cmd->callback([&] { rc = cmd_ace(model, treatment, target); });

  auto* aoe_cmd = app.add_subcommand("aoe", "average observed effect, exact");
  aoe_cmd->add_option("model", model)->required();
  aoe_cmd->add_option("--treatment", treatment)->required();
  aoe_cmd->add_option("--target", target)->required();
  aoe_cmd->callback([&] { rc = cmd_aoe(model, treatment, target); });

  auto* randomize = app.add_subcommand("randomize", "run the model as a randomized experiment");
  randomize->add_option("model", model)->required();
  randomize->add_option("--treatment", treatment, "one name, or a comma-separated set")
      ->required();
  randomize->add_option("--target", target, "outcome; inferred when unambiguous");
  randomize->add_flag("--joint", joint, "force the joint path for a single treatment");
  randomize->add_option("--spec", spec, "randomizer document (default: fair independent)");
  randomize->callback([&] { rc = cmd_randomize(model, treatment, target, joint, spec); });

  auto* match = app.add_subcommand("match", "exact matching supports and estimates");
  match->add_option("model", model)->required();
  match->add_option("--treatment", treatment, "default: the model's matching section");
  match->add_option("--outcome", outcome, "default: the model's matching section");
  match->add_option("--covariates", covariates, "comma-separated; default: matching section");
  match->add_option("--samples", samples, "draw a batch and report the matched estimate");
  match->add_option("--seed", seed);
  match->callback([&] { rc = cmd_match(model, treatment, outcome, covariates, samples, seed); });

  auto* enumerate = app.add_subcommand("enumerate", "all consistent potential-outcome pairs");
  enumerate->add_option("model", model)->required();
  enumerate->add_option("--treatment", treatment)->required();
  enumerate->add_option("--target", target)->required();
  enumerate->add_option("--cap", cap, "print at most this many completions");
  enumerate->callback([&] { rc = cmd_enumerate(model, treatment, target, cap); });

  auto* sample = app.add_subcommand("sample", "reproducible atom draws");
  sample->add_option("model", model)->required();
  sample->add_option("-n", n)->required();
  sample->add_option("--seed", seed);
  sample->add_option("-o", out, "write the batch to a file instead of stdout");
  sample->callback([&] { rc = cmd_sample(model, n, seed, out); });

  auto* render = app.add_subcommand("render", "shaded square panels as SVG");
  render->add_option("model", model)->required();
  render->add_option("--select", select, "names, family:<target>, or families")->required();
  render->add_option("-o", out)->required();
  render->callback([&] { rc = cmd_render(model, select, out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
