// diagres: resolutions of the diagonal for smooth projective toric varieties from a fan.
//
// Exit codes: 0 success, 1 usage or unsupported request, 2 schema error, 3 fan validation
// failure, 4 verification failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "diagres/arrangement.hpp"
#include "diagres/complex.hpp"
#include "diagres/fan.hpp"
#include "diagres/fixtures.hpp"
#include "diagres/io.hpp"
#include "diagres/verify.hpp"

namespace fs = std::filesystem;
using namespace diagres;

namespace {

enum Exit { kOk = 0, kUsage = 1, kSchema = 2, kFan = 3, kVerify = 4 };

struct Options {
  std::string input;
  std::string epsilon;
  std::string basis;
  std::string removed;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 1;
};

// Everything derived from one fan file plus the command-line overrides.
struct Run {
  std::string title;
  FanInput input;
  FanClassification classification;
  ExactSeq seq;
  Deformation eps;
  std::vector<Cone> cones;

  QuotientComplex arrangement() const { return enumerate_cells(seq, eps); }
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

Run load(const Options& opt, bool require_smooth_complete = true) {
  if (opt.input.empty()) throw SchemaError("--input is required");
  Run run;
  run.title = fs::path(opt.input).stem().string();
  run.input = parse_fan_json(read_json(opt.input));
  if (!opt.epsilon.empty()) run.input.epsilon = parse_epsilon_list(opt.epsilon);
  if (!opt.basis.empty()) run.input.basis = parse_basis_list(opt.basis);
  if (!opt.removed.empty()) run.input.removed_rays = parse_index_list(opt.removed);
  const Fan& fan = run.input.fan;
  run.classification = validate_fan(fan);
  if (require_smooth_complete) {
    if (!run.classification.smooth) throw FanError("fan is not smooth");
    if (run.classification.completeness_checked && !run.classification.complete) throw FanError("fan is not complete");
  }
  run.seq = run.input.basis ? fundamental_sequence(fan, run.input.basis) : fundamental_sequence(fan);
  run.eps = make_deformation(run.input.epsilon, fan.n());
  run.cones = run.input.removed_rays.empty() ? fan.max_cones : chamber_cones(fan, run.input.removed_rays);
  return run;
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out);
  if (!out) throw std::runtime_error("cannot write " + opt.out);
  out << text;
}

bool undeformed(const Deformation& eps) {
  return std::all_of(eps.a.begin(), eps.a.end(), [](const Rat& v) { return v == 0; });
}

VerificationReport verify_run(const Run& run, const QuotientComplex& qc, const GradedFreeComplex& c, std::uint64_t seed) {
  BatteryOptions options;
  options.seed = seed;
  options.unimodularity = undeformed(run.eps);
  return run_battery(run.input.fan, run.seq, qc, c, run.cones, options);
}

int cmd_classify(const Options& opt) {
  Run run = load(opt, false);
  emit(opt, classification_json(run.input.fan, run.classification, run.seq).dump(2) + "\n");
  return kOk;
}

int cmd_resolve(const Options& opt) {
  Run run = load(opt);
  auto qc = run.arrangement();
  auto c = canonicalize(build_complex(qc, run.seq));
  if (opt.format == "table") emit(opt, complex_table(c));
  else if (opt.format == "svg") emit(opt, quotient_svg(qc, cell_labels(qc), run.title));
  else if (opt.format == "cas") emit(opt, macaulay2_script(c, run.seq, run.title));
  else emit(opt, complex_to_json(c).dump(2) + "\n");
  return kOk;
}

int cmd_verify(const Options& opt) {
  Run run = load(opt);
  auto qc = run.arrangement();
  auto c = canonicalize(build_complex(qc, run.seq));
  auto report = verify_run(run, qc, c, opt.seed);
  if (opt.format == "table") {
    std::ostringstream text;
    for (const auto& check : report.checks)
      text << (check.passed ? "PASS " : "FAIL ") << check.name << (check.detail.empty() ? "" : "  " + check.detail) << "\n";
    emit(opt, text.str());
  } else {
    auto j = report.to_json();
    auto tr = transversality_report(qc);
    j["transversal"] = tr.transversal;
    j["transversality_violations"] = tr.violations;
    emit(opt, j.dump(2) + "\n");
  }
  return report.passed() ? kOk : kVerify;
}

int cmd_svg(const Options& opt) {
  Run run = load(opt);
  auto qc = run.arrangement();
  if (qc.m > 2) {
    std::cerr << "svg: only fans of rank 1 or 2 can be drawn\n";
    return kUsage;
  }
  emit(opt, quotient_svg(qc, cell_labels(qc), run.title));
  return kOk;
}

int cmd_cas(const Options& opt) {
  Run run = load(opt);
  auto qc = run.arrangement();
  auto c = canonicalize(build_complex(qc, run.seq));
  emit(opt, macaulay2_script(c, run.seq, run.title));
  return kOk;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int cmd_examples(const Options& opt) {
  fs::path dir = opt.out.empty() ? fs::path("examples_out") : fs::path(opt.out);
  fs::create_directories(dir);
  int status = kOk;
  for (const auto& f : all_fixtures()) {
    write_file(dir / (f.name + ".fan.json"), fixture_fan_json(f));
    Options sub = opt;
    sub.input = (dir / (f.name + ".fan.json")).string();
    sub.out.clear();
    Run run = load(sub);
    run.title = f.name;
    auto qc = run.arrangement();
    auto c = canonicalize(build_complex(qc, run.seq));
    write_file(dir / (f.name + ".complex.json"), complex_to_json(c).dump(2) + "\n");
    write_file(dir / (f.name + ".table.txt"), complex_table(c));
    write_file(dir / (f.name + ".m2"), macaulay2_script(c, run.seq, f.description));
    if (qc.m <= 2) write_file(dir / (f.name + ".svg"), quotient_svg(qc, cell_labels(qc), f.description));
    auto report = verify_run(run, qc, c, opt.seed);
    write_file(dir / (f.name + ".verify.json"), report.to_json().dump(2) + "\n");
    std::cout << (report.passed() ? "ok    " : "FAIL  ") << f.name << "  ranks";
    for (auto r : c.ranks()) std::cout << " " << r;
    std::cout << "\n";
    if (!report.passed()) status = kVerify;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cellular resolutions of the diagonal for smooth projective toric varieties"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input,-i", opt.input, "fan JSON file");
    if (needs_input) in->required();
    sub->add_option("--epsilon", opt.epsilon, "deformation, comma separated rationals (overrides the file)");
    sub->add_option("--basis", opt.basis, "Cl(X) basis as divisors, e.g. 0,1,0,0;0,0,1,0");
    sub->add_option("--removed-rays", opt.removed, "0-based rays dropped from every maximal cone");
    sub->add_option("--out,-o", opt.out, "output file (directory for examples)");
    sub->add_option("--format", opt.format, "json, table, svg or cas")->check(CLI::IsMember({"json", "table", "svg", "cas"}));
    sub->add_option("--seed", opt.seed, "seed for the randomized checks");
  };

  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> commands = {
      {app.add_subcommand("classify", "smoothness, completeness, unimodularity and Cl(X)"), cmd_classify},
      {app.add_subcommand("resolve", "build the complex (json, table, svg or cas)"), cmd_resolve},
      {app.add_subcommand("verify", "run the verification battery"), cmd_verify},
      {app.add_subcommand("svg", "draw the quotient cell complex"), cmd_svg},
      {app.add_subcommand("cas-script", "emit a Macaulay2 script"), cmd_cas},
      {app.add_subcommand("examples", "write the built-in examples and their checks"), cmd_examples},
  };
  for (auto& [sub, fn] : commands) add_common(sub, sub->get_name() != "examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    for (auto& [sub, fn] : commands)
      if (sub->parsed()) return fn(opt);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kSchema;
  } catch (const FanError& e) {
    std::cerr << "fan error: " << e.what() << "\n";
    return kFan;
  } catch (const CertificateError& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return kVerify;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
