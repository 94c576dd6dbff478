#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "centerkit/errors.hpp"
#include "centerkit/pipeline.hpp"

using namespace centerkit;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_numeric = 2;

std::string utc_timestamp()
{
  std::time_t const now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<double> parse_radii(std::string const &text)
{
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) { throw std::invalid_argument(item); }
    } catch (std::exception const &) {
      throw ParseError("--radii", "'" + item + "' is not a number");
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (!(out[k] > 0.0) || (k > 0 && !(out[k] < out[k - 1]))) {
      throw ValidationError("--radii", "radii must be positive and strictly decreasing");
    }
  }
  if (out.empty()) { throw ValidationError("--radii", "empty list"); }
  return out;
}

struct Settings
{
  std::string input;
  std::optional<int> truncation;
  std::optional<double> tol;
  std::string radii;
  std::string out;
  std::string dump_dir;
};

void add_common(CLI::App *cmd, Settings &s)
{
  cmd->add_option("spec", s.input, "problem spec (JSON)")->required();
  cmd->add_option("--truncation", s.truncation, "truncation degree for the symbolic stages");
  cmd->add_option("--tol", s.tol, "integration tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--radii", s.radii, "return-map radii a,b,c (decreasing)");
  cmd->add_option("--out", s.out, "write the report here instead of stdout");
  cmd->add_option("--dump-orbits", s.dump_dir, "directory for CSV orbit dumps");
}

struct Command
{
  char const *name;
  char const *help;
  unsigned stages;
  std::vector<ProblemKind> kinds;
};

int run(Command const &command, Settings const &s)
{
  ProblemSpec const spec = parse_spec(s.input);
  if (std::find(command.kinds.begin(), command.kinds.end(), spec.kind) == command.kinds.end()) {
    throw ValidationError(command.name, "does not apply to a " + to_string(spec.kind) + " spec");
  }
  PipelineOptions options;
  options.stages = command.stages;
  options.truncation = s.truncation;
  options.tol = s.tol;
  if (!s.radii.empty()) { options.radii = parse_radii(s.radii); }
  if (!s.dump_dir.empty()) { options.dump_dir = s.dump_dir; }

  Report report = run_pipeline(spec, options);
  report.json["timestamp"] = utc_timestamp();
  if (s.out.empty()) {
    std::cout << report.dump();
  } else {
    std::ofstream file(s.out, std::ios::binary);
    if (!file) { throw InputError("cannot write " + s.out); }
    file << report.dump();
  }
  return report.numeric_failure ? exit_numeric : exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Center/focus analysis of planar singularities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", centerkit_version);

  std::vector<Command> const commands{
    {"analyze", "run every stage that applies to the spec", stage::all,
     {ProblemKind::RealField, ProblemKind::ComplexForm, ProblemKind::Germ}},
    {"lyapunov", "normal form, obstructions and center verdict", stage::lyapunov, {ProblemKind::RealField}},
    {"returnmap", "return maps, periodic-sequence test and bounded-order scan", stage::returnmap,
     {ProblemKind::RealField}},
    {"blowup", "quadratic blow-up of a 1-form", stage::blowup, {ProblemKind::ComplexForm}},
    {"germ", "finite order and pseudo-orbits of a germ", stage::germ, {ProblemKind::Germ}},
    {"slice", "first integral, f g factorization and real slice", stage::slice, {ProblemKind::ComplexForm}},
  };
  Settings settings;
  std::vector<std::pair<CLI::App *, Command const *>> subs;
  for (auto const &c : commands) {
    CLI::App *sub = app.add_subcommand(c.name, c.help);
    add_common(sub, settings);
    subs.emplace_back(sub, &c);
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int const code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    for (auto const &[sub, command] : subs) {
      if (sub->parsed()) { return run(*command, settings); }
    }
  } catch (InputError const &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_input;
  } catch (NumericError const &e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return exit_numeric;
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_numeric;
  }
  return exit_input;
}
