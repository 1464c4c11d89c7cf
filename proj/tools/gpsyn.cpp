// gpsyn: synthesize, validate and evaluate planning programs from labeled
// classical planning instances.

#include <CLI11.hpp>

#include "gpsyn/gpsyn.hpp"

namespace {

void add_planner_flags(CLI::App* cmd, gpsyn::PlannerOptions& p) {
  cmd->add_option("--strategy", p.strategy, "Search strategy: gbfs | bfs")->capture_default_str();
  cmd->add_option("--heuristic", p.heuristic, "Heuristic for gbfs: hadd | goalcount | blind")->capture_default_str();
  cmd->add_option("--max-seconds", p.max_seconds, "Wall-clock budget (overrides GPSYN_PLANNER_BUDGET)");
  cmd->add_option("--max-expansions", p.max_expansions, "Expansion budget");
  cmd->add_option("--max-states", p.max_states, "Stored-state budget");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gpsyn: generalized planning with positive and negative examples"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gpsyn::kVersion));
  bool json = false;
  app.add_flag("--json", json, "Machine-readable JSON on stdout");

  gpsyn::SynthOptions synth;
  auto* c_synth = app.add_subcommand("synth", "Synthesize a program with lines 0..n from a problem file");
  c_synth->add_option("problem", synth.problem, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
  c_synth->add_option("-n,--lines", synth.lines, "Index n of the last program line")->required();
  c_synth->add_option("-o,--output", synth.output, "Write the program here");
  c_synth->add_flag("--backward-gotos", synth.backward_gotos_only, "Only allow gotos to earlier lines");
  add_planner_flags(c_synth, synth.planner);

  gpsyn::ValidateOptions validate;
  std::string mode = "both";
  auto* c_validate = app.add_subcommand("validate", "Check a program against every instance of a problem");
  c_validate->add_option("problem", validate.problem, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
  c_validate->add_option("program", validate.program, "Program file")->required()->check(CLI::ExistingFile);
  c_validate->add_option("--mode", mode, "direct | compiled | both")
      ->check(CLI::IsMember({"direct", "compiled", "both"}))
      ->capture_default_str();
  add_planner_flags(c_validate, validate.planner);

  gpsyn::EvalOptions eval;
  auto* c_eval = app.add_subcommand("eval", "Precision, recall and accuracy of a program on a test set");
  c_eval->add_option("program", eval.program, "Program file")->required()->check(CLI::ExistingFile);
  c_eval->add_option("test_set", eval.test_set, "Test set (JSON problem)")->required()->check(CLI::ExistingFile);

  gpsyn::ExportOptions exp;
  auto* c_export = app.add_subcommand("export-pddl", "Write ground PDDL for the instances or a compilation");
  c_export->add_option("problem", exp.problem, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
  c_export->add_option("-d,--out-dir", exp.out_dir, "Output directory")->capture_default_str();
  c_export->add_option("--compile", exp.compile, "Export a compilation instead: synth | validate");
  c_export->add_option("-n,--lines", exp.lines, "Index n of the last program line (synth)");
  c_export->add_option("--program", exp.program, "Program file (validate)");
  c_export->add_option("--domain-name", exp.domain, "PDDL domain name")->capture_default_str();

  gpsyn::ImportOptions imp;
  auto* c_import = app.add_subcommand("import-pddl", "Read ground PDDL back into the JSON problem format");
  c_import->add_option("domain", imp.domain_file, "Domain file")->required()->check(CLI::ExistingFile);
  c_import->add_option("problems", imp.problem_files, "Problem files")->check(CLI::ExistingFile);
  c_import->add_option("-o,--output", imp.output, "Write the problem here");

  gpsyn::GenOptions gen;
  std::optional<std::size_t> size;
  std::optional<std::string> label;
  auto* c_gen = app.add_subcommand("gen", "Generate instances of a benchmark domain");
  c_gen->add_option("domain", gen.domain, "robopainter | gripper | fibonacci | trisum | list | greenblock")->required();
  c_gen->add_option("size", size, "Size of a single instance");
  c_gen->add_option("label", label, "Label of the single instance: positive | negative");
  c_gen->add_option("--pos", gen.positive_sizes, "Sizes of positive instances")->delimiter(',');
  c_gen->add_option("--neg", gen.negative_sizes, "Sizes of negative instances")->delimiter(',');
  c_gen->add_option("--count", gen.count, "Number of random instances");
  c_gen->add_option("--min-size", gen.min_size, "Smallest random size")->capture_default_str();
  c_gen->add_option("--max-size", gen.max_size, "Largest random size")->capture_default_str();
  c_gen->add_option("--label-mode", gen.label, "Random instance labels: positive | negative | mixed")->capture_default_str();
  c_gen->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  c_gen->add_option("-o,--output", gen.output, "Write the problem here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? gpsyn::kExitOk : gpsyn::kExitUsage;
  }

  gpsyn::CommandIO io{std::cout, std::cerr, json, std::getenv(gpsyn::kBudgetEnv)};
  if (*c_synth) return gpsyn::cmd_synth(synth, io);
  if (*c_validate) {
    validate.mode = mode == "direct" ? gpsyn::ValidateMode::Direct
                    : mode == "compiled" ? gpsyn::ValidateMode::Compiled
                                         : gpsyn::ValidateMode::Both;
    return gpsyn::cmd_validate(validate, io);
  }
  if (*c_eval) return gpsyn::cmd_eval(eval, io);
  if (*c_export) return gpsyn::cmd_export_pddl(exp, io);
  if (*c_import) return gpsyn::cmd_import_pddl(imp, io);
  if (*c_gen) {
    if (size) {
      if (!label || *label == "positive") {
        gen.positive_sizes.push_back(*size);
      } else if (*label == "negative") {
        gen.negative_sizes.push_back(*size);
      } else {
        std::cerr << "gpsyn: label must be positive or negative\n";
        return gpsyn::kExitUsage;
      }
    }
    return gpsyn::cmd_gen(gen, io);
  }
  return gpsyn::kExitUsage;
}
