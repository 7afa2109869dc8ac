// surfsep: build, verify, explore and export separating covers.
//
// Exit status: 0 success, 1 input or structural error (including a failed
// verification), 2 mathematical precondition or capacity error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "surfsep/surfsep.hpp"

namespace fs = std::filesystem;
using namespace surfsep;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::PeripheralH:
    case ErrorKind::BInH:
    case ErrorKind::DegenerateSurface:
    case ErrorKind::HypothesisViolated:
    case ErrorKind::CapExceeded:
    case ErrorKind::SelectionFailed:
    case ErrorKind::ZeroQuotient:
    case ErrorKind::Inconsistent:
    case ErrorKind::NoCorridor:
      return 2;
    default:
      return 1;
  }
}

int report_error(const Error& e) {
  json j = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
  if (!e.detail().empty()) j["detail"] = e.detail();
  std::cerr << j.dump() << "\n";
  return exit_code(e.kind());
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "malformed JSON in " + path, e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
  out << text;
}

struct Overrides {
  int subdiv = 0;
  int prime_retries = -1;
  int oracle_cap = 0;
};

Problem load_problem(const std::string& path, const Overrides& o) {
  auto p = problem_from_json(read_json(path));
  if (o.subdiv > 0) p.options.subdiv = o.subdiv;
  if (o.prime_retries >= 0) p.options.prime_retries = o.prime_retries;
  if (o.oracle_cap > 0) p.options.oracle_cap = o.oracle_cap;
  return p;
}

int cmd_separate(const std::string& input, const std::string& out, const Overrides& o) {
  auto p = load_problem(input, o);
  auto cert = separate(p);
  auto j = certificate_to_json(cert);
  if (!out.empty()) write_text(out, j.dump(2) + "\n");
  else std::cout << j.dump(2) << "\n";
  std::ostream& summary = out.empty() ? std::cerr : std::cout;
  summary << "degree " << cert.cover.degree << ", boundary " << cert.report.boundary << ", log " << cert.log.size()
          << " step(s), verification " << (cert.report.pass() ? "passed" : "FAILED") << "\n";
  return cert.report.pass() ? 0 : 1;
}

int cmd_verify(const std::string& problem_path, const std::string& cert_path, const Overrides& o) {
  auto p = load_problem(problem_path, o);
  validate(p);
  auto j = read_json(cert_path);
  if (!j.contains("cover")) throw Error(ErrorKind::ParseError, "certificate has no cover");
  Cover c = cover_from_json(p, j.at("cover"));
  auto report = verify_certificate(p, c);
  json out = report_to_json(report);
  bool replay_ok = true;
  if (j.contains("log") && !j.at("log").empty()) {
    try {
      auto again = cover_to_json(p, replay(p, j.at("log")));
      replay_ok = again.dump() == j.at("cover").dump();
    } catch (const Error& e) {
      replay_ok = false;
      out["replay_error"] = e.what();
    }
    out["replay"] = replay_ok;
  }
  std::cout << out.dump(2) << "\n";
  return report.pass() && replay_ok ? 0 : 1;
}

int cmd_oracle(const std::string& input, int bound, const std::string& out, const Overrides& o) {
  auto p = load_problem(input, o);
  validate(p);
  auto res = oracle_min_conservative_degree(p, bound);
  auto j = oracle_to_json(p, bound, res);
  if (!out.empty()) write_text(out, j.dump(2) + "\n");
  else std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_export(const std::string& cert_path, const std::string& dir) {
  auto j = read_json(cert_path);
  auto cert = certificate_from_json(j);
  fs::create_directories(dir);
  write_text((fs::path(dir) / "base.dot").string(), base_dot(cert.problem));
  write_text((fs::path(dir) / "marked.dot").string(), marked_dot(cert.problem, cert.cover));
  write_text((fs::path(dir) / "cover.dot").string(), cover_dot(cert.problem, cert.cover));
  auto rings = cyclic_join_dots(cert.problem, cert.log);
  for (std::size_t i = 0; i < rings.size(); ++i)
    write_text((fs::path(dir) / ("cyclic_join_" + std::to_string(i) + ".dot")).string(), rings[i]);
  std::cout << "wrote " << 3 + rings.size() << " DOT file(s) to " << dir << "\n";
  return 0;
}

/// Random problem on a small surface: H generated by short random words,
/// B by words outside H. Not every draw is a valid problem.
int cmd_sample(unsigned seed, const std::string& out) {
  std::mt19937 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  Problem p;
  do {
    p.genus = pick(0, 2);
    p.boundary = pick(1, 3);
  } while (p.euler_characteristic() >= 0);
  auto word = [&](int len) {
    std::vector<Letter> w;
    for (int i = 0; i < len; ++i) {
      int g = pick(0, p.rank() - 1);
      w.push_back(pick(0, 1) ? Letter::positive(g) : Letter::negative(g));
    }
    return Word::reduce(w);
  };
  int nh = pick(0, 2);
  for (int i = 0; i < nh; ++i) p.H.push_back(word(pick(1, 4)));
  int nb = pick(0, 2);
  for (int i = 0; i < nb; ++i) p.B.push_back(word(pick(1, 4)));
  auto j = problem_to_json(p).dump(2) + "\n";
  if (!out.empty()) write_text(out, j);
  else std::cout << j;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite conservative covers separating surface subgroups"};
  app.require_subcommand(1);
  Overrides o;
  std::string input, cert_path, out;
  int bound = 6;
  unsigned seed = 1;

  auto* sep = app.add_subcommand("separate", "build and verify a certificate for a problem");
  sep->add_option("problem", input, "problem JSON")->required();
  sep->add_option("--out", out, "certificate path (default: stdout)");

  auto* ver = app.add_subcommand("verify", "re-verify a certificate against a problem");
  ver->add_option("problem", input, "problem JSON")->required();
  ver->add_option("certificate", cert_path, "certificate JSON")->required();

  auto* orc = app.add_subcommand("oracle", "least degree of a conservative separating cover, by enumeration");
  orc->add_option("problem", input, "problem JSON")->required();
  orc->add_option("--bound", bound, "largest degree searched")->check(CLI::PositiveNumber);
  orc->add_option("--out", out, "oracle table path (default: stdout)");

  auto* exp = app.add_subcommand("export", "write DOT files for a certificate");
  exp->add_option("certificate", cert_path, "certificate JSON")->required();
  exp->add_option("--out", out, "output directory")->required();

  auto* smp = app.add_subcommand("sample", "print a random problem");
  smp->add_option("--seed", seed, "random seed");
  smp->add_option("--out", out, "problem path (default: stdout)");

  for (auto* sc : {sep, ver, orc}) {
    sc->add_option("--subdiv", o.subdiv, "edge subdivision level")->check(CLI::PositiveNumber);
    sc->add_option("--prime-retries", o.prime_retries, "big-cover prime escalations")->check(CLI::NonNegativeNumber);
    sc->add_option("--oracle-cap", o.oracle_cap, "largest degree the oracle accepts")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (sep->parsed()) return cmd_separate(input, out, o);
    if (ver->parsed()) return cmd_verify(input, cert_path, o);
    if (orc->parsed()) return cmd_oracle(input, bound, out, o);
    if (exp->parsed()) return cmd_export(cert_path, out);
    if (smp->parsed()) return cmd_sample(seed, out);
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "io"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 1;
}
