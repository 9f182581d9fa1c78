// nichols-forge: batch front end.  Exit status 0 = pass, 1 = mathematical
// failure, 2 = input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "nichols_forge/commands.hpp"
#include "nichols_forge/errors.hpp"
#include "nichols_forge/parallel.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw nf::ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw nf::ParseError("cannot write " + path);
  out << content;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::size_t threads_from_env() {
  const char* v = std::getenv("NICHOLS_FORGE_THREADS");
  if (!v || !*v) return 0;
  char* end = nullptr;
  long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) throw nf::InvalidParameter(std::string("bad NICHOLS_FORGE_THREADS '") + v + "'");
  return static_cast<std::size_t>(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nichols algebras, Hopf structure constants and fusion data"};
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false, timing = false;
  std::size_t threads = 0;
  std::string output, emit;
  app.add_flag("--json", as_json, "Print the JSON report instead of tables");
  app.add_option("--threads", threads, "Worker threads (default: NICHOLS_FORGE_THREADS, else hardware)");
  app.add_option("-o,--output", output, "Write the report to a file");
  app.add_flag("--timing", timing, "Include per-phase timing in the report");

  std::string input, filtration = "radical", lambdas = "1,1/2,zeta(3)", group;
  nf::NicholsOptions nopt;
  std::size_t oracle = 0;

  auto* nichols = app.add_subcommand("nichols", "Nichols algebra of a diagonal braiding");
  nichols->add_option("braiding", input, "Braiding file")->required();
  nichols->add_option("--max-degree", nopt.max_degree, "Degree cutoff")->capture_default_str();
  nichols->add_option("--oracle-degree", oracle, "Check the symmetrizer oracle up to this degree");
  nichols->add_option("--emit", emit, "Write the Hopf structure file (finite results only)");

  auto* verify = app.add_subcommand("verify", "Check the Hopf axioms and ccc-ness");
  verify->add_option("structure", input, "Hopf structure file")->required();

  auto* gr = app.add_subcommand("gr", "Associated graded structure");
  gr->add_option("structure", input, "Hopf structure file")->required();
  gr->add_option("--filtration", filtration, "radical or coradical")->capture_default_str();
  gr->add_option("--emit", emit, "Write the graded structure file");

  auto* degen = app.add_subcommand("degenerate", "One-parameter degeneration to the graded structure");
  degen->add_option("structure", input, "Hopf structure file")->required();
  degen->add_option("--filtration", filtration, "radical or coradical")->capture_default_str();
  degen->add_option("--lambda-samples", lambdas, "Comma separated nonzero scalars")->capture_default_str();
  degen->add_option("--emit", emit, "Write the limit structure file");

  auto* isn = app.add_subcommand("is-nichols", "Pairing, generation and gr criteria");
  isn->add_option("structure", input, "Hopf structure file")->required();

  auto* fver = app.add_subcommand("fusion-verify", "Pentagon, unit, duality and hexagon checks");
  fver->add_option("fusion", input, "Fusion data file")->required();

  auto* fgen = app.add_subcommand("fusion-gen", "Center of Vec_G for a finite abelian group");
  fgen->add_option("--group", group, "Cyclic orders, e.g. 2,2")->required();
  fgen->add_option("--emit", emit, "Write the fusion data file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::size_t n = threads ? threads : threads_from_env();
    if (!n) n = std::max(1u, std::thread::hardware_concurrency());
    nf::set_thread_count(n);

    nf::RunReport r;
    if (*nichols) {
      if (oracle) nopt.oracle_degree = oracle;
      r = nf::cmd_nichols(read_file(input), nopt);
    } else if (*verify) {
      r = nf::cmd_verify(read_file(input));
    } else if (*gr) {
      r = nf::cmd_gr(read_file(input), nf::parse_filtration_kind(filtration));
    } else if (*degen) {
      std::vector<nf::Scalar> ls;
      for (const auto& s : split(lambdas, ',')) ls.push_back(nf::parse_scalar(s));
      r = nf::cmd_degenerate(read_file(input), nf::parse_filtration_kind(filtration), ls);
    } else if (*isn) {
      r = nf::cmd_is_nichols(read_file(input));
    } else if (*fver) {
      r = nf::cmd_fusion_verify(read_file(input));
    } else {
      std::vector<int> g;
      if (!group.empty())
        for (const auto& s : split(group, ',')) {
          try {
            g.push_back(std::stoi(s));
          } catch (const std::exception&) {
            throw nf::ParseError("bad group '" + group + "'");
          }
        }
      r = nf::cmd_fusion_gen(g);
    }

    if (!emit.empty()) {
      if (r.emitted) write_file(emit, r.emitted->dump(1) + "\n");
      else r.warnings.push_back("nothing to emit");
    }
    std::string text;
    if (as_json) {
      text = r.to_json(timing).dump(2) + "\n";
    } else {
      text = r.command + "  input " + r.input_digest + "\n" + r.table;
      for (const auto& w : r.warnings) text += "warning: " + w + "\n";
      if (timing)
        for (const auto& [phase, sec] : r.timing) text += "time " + phase + ": " + std::to_string(sec) + " s\n";
      text += r.status == 0 ? "PASS\n" : "FAIL\n";
    }
    if (output.empty()) std::cout << text;
    else write_file(output, text);
    return r.status;
  } catch (const nf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
