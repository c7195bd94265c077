// opdkit command line: parse, build and check finite presentations of
// categories, operads, bounded SMCs, pinned SMCs and substitudes.
//
// Exit codes: 0 verdict true, 1 verdict false, 2 input/usage error,
// 3 internal inconsistency between theorem-equivalent criteria.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "opdkit/adjunctions.hpp"
#include "opdkit/testkit.hpp"
#include "opdkit/textio.hpp"

using namespace opdkit;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw input_error("cannot write " + out_path);
  out << text;
}

int emit_report(const CheckReport& report, bool as_json) {
  if (as_json) {
    std::cout << report.to_json().dump(2) << "\n";
  } else {
    std::cout << report.check << ": " << (report.verdict ? "PASS" : "FAIL")
              << " (bound " << report.bound << ", checked " << report.coverage.checked
              << ", skipped " << report.coverage.skipped << ")\n";
    if (!report.verdict) std::cout << "witness: " << report.witness.dump(2) << "\n";
  }
  return report.verdict ? 0 : 1;
}

// Pinned-SMC checkers accept either a pinned file or a substitude file (the
// latter goes through the free construction at --bound).
smc::PinnedSMC load_pinned(const std::string& path, int bound) {
  const auto model = io::parse_model(read_file(path));
  if (model.kind == io::Model::Kind::pinned) return *model.pinned;
  if (model.kind == io::Model::Kind::substitude) {
    if (!opd::is_substitude(*model.substitude))
      throw input_error(path + ": pinned operad is not a substitude (coreflect it first)");
    return adj::subst_free(*model.substitude, bound);
  }
  throw input_error(path + ": expected a pinned or substitude file");
}

opd::Substitude load_substitude(const std::string& path) {
  const auto model = io::parse_model(read_file(path));
  if (model.kind != io::Model::Kind::substitude)
    throw input_error(path + ": expected a substitude file");
  if (!opd::is_substitude(*model.substitude))
    throw input_error(path + ": pinned operad is not a substitude (coreflect it first)");
  return *model.substitude;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"opdkit: finite presentations of categories, operads and bounded "
               "symmetric monoidal categories, with the recognizers for regular "
               "patterns and Feynman categories"};
  app.require_subcommand(1);

  std::string in_path, out_path;
  int bound = 3;
  std::uint64_t seed = 0;
  bool as_json = false;
  bool selftest_disagree = false;

  auto add_common = [&](CLI::App* cmd, bool with_bound = true) {
    cmd->add_flag("--json", as_json, "emit the CheckReport JSON schema");
    if (with_bound) cmd->add_option("--bound", bound, "sequence bound L");
  };

  auto* cmd_check = app.add_subcommand("check", "validate a model file");
  cmd_check->add_option("file", in_path)->required();
  add_common(cmd_check, false);

  auto* cmd_free = app.add_subcommand("free-smc", "free symmetric monoidal category on a category");
  cmd_free->add_option("file", in_path)->required();
  cmd_free->add_option("--out", out_path, "output path (default stdout)");
  add_common(cmd_free);

  auto* cmd_hermida = app.add_subcommand("hermida", "free symmetric monoidal category on an operad");
  cmd_hermida->add_option("file", in_path)->required();
  cmd_hermida->add_option("--out", out_path);
  add_common(cmd_hermida);

  auto* cmd_end = app.add_subcommand("end", "endomorphism operad of a bounded SMC");
  cmd_end->add_option("file", in_path)->required();
  cmd_end->add_option("--out", out_path);
  add_common(cmd_end, false);

  auto* cmd_coreflect = app.add_subcommand("coreflect", "base-change a pinned operad to its pins");
  cmd_coreflect->add_option("file", in_path)->required();
  cmd_coreflect->add_option("--out", out_path);
  add_common(cmd_coreflect, false);

  auto* cmd_strictify =
      app.add_subcommand("strictify", "strictify a seeded twisted weak instance (demo driver)");
  cmd_strictify->add_option("--seed", seed);
  add_common(cmd_strictify);

  auto* cmd_hered = app.add_subcommand("hereditary", "hereditary condition of a pinned SMC");
  cmd_hered->add_option("file", in_path)->required();
  add_common(cmd_hered);

  auto* cmd_exact = app.add_subcommand("exact", "Guitart exactness of the coherence square");
  cmd_exact->add_option("file", in_path)->required();
  add_common(cmd_exact);

  auto* cmd_rp = app.add_subcommand("regular-pattern", "regular pattern recognizer");
  cmd_rp->add_option("file", in_path)->required();
  cmd_rp->add_flag("--selftest-disagree", selftest_disagree)->group("");  // hidden
  add_common(cmd_rp);

  auto* cmd_feyn = app.add_subcommand("feynman", "Feynman category recognizer");
  cmd_feyn->add_option("file", in_path)->required();
  add_common(cmd_feyn);

  auto* cmd_comma = app.add_subcommand("comma", "Kaufmann-Ward comma condition");
  cmd_comma->add_option("file", in_path)->required();
  add_common(cmd_comma);

  auto* cmd_round = app.add_subcommand("roundtrip", "adjunction round-trip report");
  cmd_round->add_option("file", in_path)->required();
  add_common(cmd_round);

  auto* cmd_algebra =
      app.add_subcommand("algebra", "algebra correspondence against the free target");
  cmd_algebra->add_option("file", in_path)->required();
  add_common(cmd_algebra);

  std::string gen_kind;
  testkit::GenConfig gen_cfg;
  auto* cmd_gen = app.add_subcommand("gen", "seeded random structure");
  cmd_gen->add_option("kind", gen_kind, "category | operad | substitude | comm")->required();
  cmd_gen->add_option("--seed", gen_cfg.seed);
  cmd_gen->add_option("--size", gen_cfg.max_ops, "signature size cap");
  cmd_gen->add_option("--colours", gen_cfg.max_colours);
  cmd_gen->add_option("--objects", gen_cfg.max_objects);
  cmd_gen->add_option("--arrows", gen_cfg.max_arrows);
  cmd_gen->add_option("--arity", gen_cfg.arity_bound);
  cmd_gen->add_option("--out", out_path);
  add_common(cmd_gen, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_check) {
      try {
        io::parse_model(read_file(in_path));
      } catch (const io::validation_error& e) {
        if (as_json)
          std::cout << e.report.dump(2) << "\n";
        else
          std::cout << "FAIL: " << e.what() << "\n";
        return 1;
      }
      if (as_json)
        std::cout << CheckReport::pass("check", 0).to_json().dump(2) << "\n";
      else
        std::cout << "check: PASS\n";
      return 0;
    }
    if (*cmd_free) {
      const auto model = io::parse_model(read_file(in_path));
      if (model.kind != io::Model::Kind::category)
        throw input_error(in_path + ": expected a category file");
      const auto fs = smc::free_smc(model.category, bound);
      write_output(out_path, io::print_model(io::model_of_smc(fs.smc, model.name + "_free")));
      return 0;
    }
    if (*cmd_hermida) {
      const auto model = io::parse_model(read_file(in_path));
      if (model.kind != io::Model::Kind::operad)
        throw input_error(in_path + ": expected an operad file");
      const auto hf = adj::hermida_free(model.operad, bound);
      write_output(out_path, io::print_model(io::model_of_smc(hf.smc, model.name + "_hermida")));
      return 0;
    }
    if (*cmd_end) {
      const auto model = io::parse_model(read_file(in_path));
      if (model.kind != io::Model::Kind::smc)
        throw input_error(in_path + ": expected an smc file");
      const auto end = opd::end_operad(model.smc);
      write_output(out_path, io::print_model(io::model_of_operad(end.operad, model.name + "_end")));
      return 0;
    }
    if (*cmd_coreflect) {
      const auto model = io::parse_model(read_file(in_path));
      if (model.kind != io::Model::Kind::substitude)
        throw input_error(in_path + ": expected a substitude file");
      const auto co = opd::coreflect(*model.substitude);
      write_output(out_path,
                   io::print_model(io::model_of_substitude(co.substitude, model.name + "_core")));
      return 0;
    }
    if (*cmd_strictify) {
      const auto inst = testkit::gen_twisted_weak(seed, bound);
      CheckReport report = CheckReport::pass("strictify", bound);
      report.absorb(smc::validate_weak_smc(*inst.weak));
      report.absorb(smc::validate_strong_monoidal(inst.twisted));
      if (report.verdict) {
        const auto st = smc::strictify(inst.twisted);
        report.absorb(smc::validate_smc(*st.strict_smc));
        report.absorb(smc::validate_strong_monoidal(st.embed));
      }
      return emit_report(report, as_json);
    }
    if (*cmd_hered) return emit_report(adj::hereditary_check(load_pinned(in_path, bound)), as_json);
    if (*cmd_exact)
      return emit_report(smc::monoidal_exactness_check(load_pinned(in_path, bound)), as_json);
    if (*cmd_rp) {
      const auto tau = load_pinned(in_path, bound);
      auto report = adj::regular_pattern_check(tau);
      if (selftest_disagree)
        throw internal_error("forced disagreement for the exit-code self-test");
      return emit_report(report, as_json);
    }
    if (*cmd_feyn) return emit_report(adj::feynman_check(load_pinned(in_path, bound)), as_json);
    if (*cmd_comma)
      return emit_report(adj::comma_condition_check(load_pinned(in_path, bound)), as_json);
    if (*cmd_round) {
      const auto model = io::parse_model(read_file(in_path));
      if (model.kind == io::Model::Kind::substitude) {
        if (!opd::is_substitude(*model.substitude))
          throw input_error(in_path + ": pinned operad is not a substitude");
        return emit_report(adj::roundtrip_substitude(*model.substitude, bound), as_json);
      }
      if (model.kind == io::Model::Kind::pinned)
        return emit_report(adj::roundtrip_pinned(*model.pinned), as_json);
      throw input_error(in_path + ": expected a pinned or substitude file");
    }
    if (*cmd_algebra) {
      const auto s = load_substitude(in_path);
      const auto hf = adj::hermida_free(s.body, bound);
      std::vector<int> carrier_obj(s.body->colours.size());
      for (size_t c = 0; c < carrier_obj.size(); ++c) carrier_obj[c] = static_cast<int>(c);
      std::vector<int> carrier_arrow;
      for (int a = 0; a < s.pins->num_arrows(); ++a) {
        const perm::FinFunction alpha(1, 1, {1});
        carrier_arrow.push_back(
            hf.mor_of(hf.smc->object_of({s.pins->arrows[static_cast<size_t>(a)].dom}), alpha,
                      {s.arrow_map[static_cast<size_t>(a)]}));
      }
      return emit_report(
          adj::algebra_correspondence_check(s, hf.smc, carrier_obj, carrier_arrow, bound), as_json);
    }
    if (*cmd_gen) {
      if (gen_kind == "comm") {
        write_output(out_path,
                     io::print_model(io::model_of_operad(opd::comm_operad(gen_cfg.arity_bound), "comm")));
      } else if (gen_kind == "category") {
        const auto c = testkit::gen_category(gen_cfg);
        write_output(out_path, io::print_model(io::model_of_category(c, "gen")));
      } else if (gen_kind == "operad") {
        const auto p = testkit::gen_operad(gen_cfg);
        write_output(out_path, io::print_model(io::model_of_operad(p, "gen")));
      } else if (gen_kind == "substitude") {
        const auto p = testkit::gen_operad(gen_cfg);
        const auto pins = opd::pinnings(p);
        write_output(out_path, io::print_model(io::model_of_substitude(pins.groupoid, "gen")));
      } else {
        throw input_error("gen: unknown kind '" + gen_kind + "'");
      }
      return 0;
    }
  } catch (const internal_error& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const io::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
