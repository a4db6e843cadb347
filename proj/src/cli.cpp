#include "cotwist/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"

#include "cotwist/models.hpp"
#include "cotwist/sweep.hpp"

namespace cotwist {

namespace {

struct Options {
  ModelParams params;
  SampleSpec spec;
  std::string suite = "all";
  std::string format = "text";
  std::string perturb = "none";
  bool timings = true;
  bool serial = false;
  std::string emit;
  std::string stage = "twisted";
  int table_box = 2;
};

void add_model_options(CLI::App* app, Options& o) {
  app->add_option("--model", o.params.model, "classical_torus, nc_torus, finite_bicharacter or fun_group")
      ->check(CLI::IsMember({"classical_torus", "nc_torus", "finite_bicharacter", "fun_group"}));
  app->add_option("--p", o.params.p, "nc_torus: theta = p/q");
  app->add_option("--q", o.params.q, "nc_torus: theta = p/q")->check(CLI::PositiveNumber);
  app->add_option("--n", o.params.n, "finite_bicharacter: Z_n x Z_n")->check(CLI::Range(2, 64));
  app->add_option("--pairing", o.params.pairing, "finite_bicharacter: ad-bc or ad")
      ->check(CLI::IsMember({"ad-bc", "ad"}));
  app->add_option("--group", o.params.group, "fun_group: S3")->check(CLI::IsMember({"S3"}));
  app->add_option("--cocycle", o.params.cocycle, "cocycle kind: theta, bicharacter, coboundary, trivial or table")
      ->check(CLI::IsMember({"theta", "bicharacter", "coboundary", "trivial", "table"}));
  app->set_config("--config", "", "flat key=value file with the same keys")->check(CLI::ExistingFile);
}

int cmd_verify(const Options& o, std::ostream& out) {
  set_parallel(!o.serial);
  ModelBundle b = build_model(o.params, o.spec, perturbation_from_name(o.perturb));
  Report r = run_suite(b, o.suite, o.spec);
  out << (o.format == "json" ? r.to_json(o.timings) : r.to_text(o.timings));
  return r.ok() ? 0 : 1;
}

int cmd_twist(const Options& o, std::ostream& out) {
  ModelBundle b = build_model(o.params, o.spec);
  const std::string text = twist_document(b, o.stage, o.table_box).dump(2) + "\n";
  if (o.emit == "-") {
    out << text;
    return 0;
  }
  std::ofstream f(o.emit, std::ios::binary);
  if (!f) throw Error("cannot open " + o.emit + " for writing");
  f << text;
  f.close();
  if (!f) throw Error("write failed: " + o.emit);
  out << "wrote " << o.emit << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"cotwist: exact unitary 2-cocycle deformation engine"};
  app.require_subcommand(1);
  Options o;

  // Options live on the top-level app so that a flat key=value config file reaches them.
  add_model_options(&app, o);
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  app.add_option("--suite", o.suite, "verify: suite to run")->check(CLI::IsMember(suites));
  auto* box = app.add_option("--box", o.spec.box, "verify: lattice box |m| <= box; twist: table box (default 2)")
                  ->check(CLI::Range(0, 64));
  app.add_option("--samples", o.spec.samples, "verify: samples per sampled check")->check(CLI::Range(1, 100000));
  app.add_option("--seed", o.spec.seed, "verify: sampler seed");
  app.add_option("--format", o.format, "verify: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->envname("COTWIST_FORMAT");
  std::vector<std::string> perts{"none"};
  for (const auto& p : perturbations()) perts.push_back(p.name);
  app.add_option("--perturb", o.perturb, "verify: inject a documented single-entry fault")->check(CLI::IsMember(perts));
  app.add_flag("!--no-timings", o.timings, "verify: omit duration_ms for byte-stable output");
  app.add_flag("--serial", o.serial, "verify: use the serial reference sweeps");
  app.add_option("--emit", o.emit, "twist: output path, - for standard output");
  app.add_option("--stage", o.stage, "twist: base, twisted or roundtrip")
      ->check(CLI::IsMember({"base", "twisted", "roundtrip"}));

  auto* verify = app.add_subcommand("verify", "build a model and run verification suites")->fallthrough();
  auto* twist = app.add_subcommand("twist", "emit structure tables of a model as JSON")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* sub = *verify ? verify : *twist ? twist : &app;
    out << sub->help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*verify) {
      if (o.spec.box < 1) throw CLI::ValidationError("--box", "must be at least 1 for verify");
      return cmd_verify(o, out);
    }
    if (o.emit.empty()) throw CLI::RequiredError("--emit");
    if (box->count() == 0) o.table_box = 2;
    else if (o.spec.box > 8) throw CLI::ValidationError("--box", "table box must be at most 8");
    else o.table_box = o.spec.box;
    return cmd_twist(o, out);
  } catch (const CLI::Error& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cotwist
