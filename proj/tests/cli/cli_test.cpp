// Runs the CLI binary end to end.
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(LEP_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cout << "FAIL " << what << "\n";
  }
}

const std::string kQubit = "--model qubit --bind gamma_e=1 --bind gamma_f=0 --bind J=1/4 --omega0=-1/2";
const std::string kSpin =
    "--model spin_half --bind gamma_minus=0 --bind gamma_x=1 --bind gamma_y=2 --bind Omega=1 --omega0=-3";

// Loops need no shift.
const std::string kQubitLoop = "--model qubit --bind gamma_e=1 --bind gamma_f=0 --bind J=1/4";
const std::string kSpinLoop = "--model spin_half --bind gamma_minus=0 --bind gamma_x=1 --bind gamma_y=2 --bind Omega=1";

struct Panel {
  const char* golden;
  std::string args;
};

// Exact outputs are compared byte for byte.
const std::vector<Panel> kExact = {
    {"fig1a_polygon.json", "polygon " + kSpin + " --perturb generic --seed 42"},
    {"fig2a_polygon.json", "polygon " + kQubit + " --perturb gamma_f"},
    {"fig3a_polygon.json", "polygon " + kQubit + " --perturb J"},
    {"scan_gamma_x.json",
     "scan --model spin_half --target gamma_x --bind gamma_minus=0 --bind gamma_y=2 --bind Omega=1"},
};

// Numeric outputs must be reproducible from run to run.
const std::vector<std::string> kNumeric = {
    "amoeba " + kSpin + " --perturb generic --seed 42",
    "scale " + kSpin + " --perturb generic --seed 42",
    "encircle " + kSpinLoop + " --perturb generic --seed 42",
    "amoeba " + kQubit + " --perturb gamma_f",
    "scale " + kQubit + " --perturb gamma_f",
    "encircle " + kQubitLoop + " --perturb gamma_f",
    "amoeba " + kQubit + " --perturb J",
    "scale " + kQubit + " --perturb J",
    "encircle " + kQubitLoop + " --perturb J",
};

}  // namespace

int main() {
  const bool update = std::getenv("LEP_UPDATE_GOLDEN") != nullptr;
  for (const auto& p : kExact) {
    Run r = run(p.args);
    expect(r.status == 0, std::string(p.golden) + ": exit " + std::to_string(r.status));
    const fs::path g = fs::path(LEP_GOLDEN_DIR) / p.golden;
    if (update) {
      std::ofstream(g, std::ios::binary) << r.out;
      continue;
    }
    expect(r.out == slurp(g), std::string(p.golden) + ": output differs from golden");
  }

  for (const auto& a : kNumeric) {
    Run first = run(a), second = run(a);
    expect(first.status == 0, a + ": exit " + std::to_string(first.status));
    expect(!first.out.empty() && first.out == second.out, a + ": not deterministic");
  }

  // Qualitative content of the numeric panels.
  {
    auto cycles = [](const std::string& perturb) {
      Run r = run("encircle " + kQubitLoop + " --perturb " + perturb + " --out /dev/null");
      auto doc = nlohmann::json::parse(r.out, nullptr, false);
      if (doc.is_discarded() || !doc.contains("cycles")) return std::vector<int>{};
      return doc.at("cycles").get<std::vector<int>>();
    };
    expect(cycles("gamma_f") == std::vector<int>{3, 1}, "qubit gamma_f loop is not a 3-cycle");
    expect(cycles("J") == std::vector<int>{2, 1, 1}, "qubit J loop is not a 2-cycle");
  }

  const fs::path svg = fs::temp_directory_path() / "lep_cli_test.svg";
  fs::remove(svg);
  Run s = run("scale " + kQubit + " --perturb J --out /dev/null --svg " + svg.string());
  expect(s.status == 0 && fs::exists(svg) && slurp(svg).find("<svg") != std::string::npos, "svg output");

  expect(run("build --model qubit").status == 0, "build");
  expect(run("").status == 2, "missing subcommand -> 2");
  expect(run("polygon --model no_such_model.json --omega0=0").status == 2, "unknown model -> 2");
  expect(run("polygon " + kQubit + " --bind J=abc").status == 2, "bad binding -> 2");
  expect(run("polygon " + kQubit + " --bind kappa=1").status == 2, "unknown parameter -> 2");
  expect(run("polygon --model qubit --bind gamma_e=1 --bind gamma_f=0 --bind J=1/4 --omega0=3").status == 3,
         "omega0 not an eigenvalue -> 3");
  expect(run("scale " + kQubit + " --perturb J --eps-min 1e-2 --eps-max 1e-6").status == 3, "bad grid -> 3");
  expect(run("polygon " + kQubit).status == 0, "default generic perturbation");

  const fs::path model = fs::path(LEP_EXAMPLES_DIR) / "two_level.json";
  expect(run("polygon --model " + model.string() + " --bind kappa=1 --bind delta=0 --omega0=-1/2 --perturb delta")
                 .status == 0,
         "model file");

  std::cout << (failures ? "cli tests failed" : "cli tests passed") << "\n";
  return failures ? 1 : 0;
}
