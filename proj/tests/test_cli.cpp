// Copyright 2026 The qfab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

/// Scratch directory, removed on destruction.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("qfab_cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  fs::path operator/(const std::string& s) const { return dir / s; }
};

/// Runs the CLI with `args` from `cwd`; returns the exit status.
int run(const fs::path& cwd, const std::string& args, std::string* output = nullptr) {
  const fs::path log = cwd / "cli.log";
  const std::string cmd = "cd '" + cwd.string() + "' && '" QFAB_CLI "' " + args + " > '" +
                          log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  if (output) {
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    *output = ss.str();
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

const char* kRouted =
    "OPENQASM 2.0;\nqreg q[3];\nh q[0];\ncx q[0],q[2];\ncx q[1],q[2];\nt q[2];\n";

}  // namespace

TEST_CASE("usage errors exit 2") {
  Scratch s("usage");
  CHECK(run(s.dir, "") == 2);
  CHECK(run(s.dir, "frobnicate") == 2);
  CHECK(run(s.dir, "transpile missing.qasm") == 2);
  write(s / "bad.qasm", "OPENQASM 2.0; qreg q[2]; cx q[0];");
  CHECK(run(s.dir, "transpile bad.qasm") == 2);
  write(s / "ok.qasm", kRouted);
  CHECK(run(s.dir, "transpile ok.qasm --algorithm tket") == 2);
  CHECK(run(s.dir, "transpile ok.qasm --passes 2") == 2);
  write(s / "cfg.json", "{not json");
  CHECK(run(s.dir, "transpile ok.qasm --config cfg.json") == 2);
  CHECK(run(s.dir, "--help") == 0);
}

TEST_CASE("transpile then verify, and tampering is caught") {
  Scratch s("verify");
  write(s / "c.qasm", kRouted);
  std::string out;
  REQUIRE(run(s.dir, "transpile c.qasm -o r.qasm --seeds 3", &out) == 0);
  const auto metrics = nlohmann::json::parse(out);
  CHECK(metrics.at("conformant") == false);
  const std::string routed = slurp(s / "r.qasm");
  CHECK(routed.find("// qfab-initial-layout:") != std::string::npos);
  CHECK(routed.find("// qfab-output-permutation:") != std::string::npos);

  REQUIRE(run(s.dir, "verify c.qasm r.qasm", &out) == 0);
  CHECK(nlohmann::json::parse(out).at("equivalent") == true);
  for (const char* m : {"statevector", "unitary"})
    CHECK(run(s.dir, std::string("verify c.qasm r.qasm --method ") + m) == 0);
  CHECK(run(s.dir, "verify c.qasm r.qasm --method clifford") == 2);

  // Drop the last T gate from the routed circuit.
  std::string tampered = routed;
  const auto pos = tampered.rfind("t q[");
  REQUIRE(pos != std::string::npos);
  tampered.erase(pos, tampered.find('\n', pos) - pos + 1);
  write(s / "bad.qasm", tampered);
  CHECK(run(s.dir, "verify c.qasm bad.qasm", &out) == 1);
  CHECK(nlohmann::json::parse(out).at("equivalent") == false);
}

TEST_CASE("conformant input is written back unchanged") {
  Scratch s("conformant");
  const std::string src = "OPENQASM 2.0;\nqreg q[3];\nh q[0];\ncx q[0],q[1];\ncx q[1],q[2];\n";
  write(s / "g.qasm", src);
  std::string out;
  REQUIRE(run(s.dir, "transpile g.qasm -o g.out.qasm", &out) == 0);
  CHECK(nlohmann::json::parse(out).at("conformant") == true);
  CHECK(slurp(s / "g.out.qasm") == src);
  CHECK(run(s.dir, "verify g.qasm g.out.qasm") == 0);
}

TEST_CASE("allocate writes reports deterministically") {
  Scratch s("allocate");
  REQUIRE(run(s.dir, "allocate --restarts 4 --out a") == 0);
  for (int n = 2; n <= 5; ++n) {
    const auto p = s / ("a/allocation_n" + std::to_string(n) + ".json");
    REQUIRE(fs::exists(p));
    const auto j = nlohmann::json::parse(slurp(p));
    CHECK(j.at("feasible") == true);
    CHECK(fs::exists(s / ("a/modules/alloc_n" + std::to_string(n) + ".json")));
  }
  CHECK(fs::exists(s / "a/interaction_separations.csv"));
  REQUIRE(run(s.dir, "allocate --restarts 4 --out b") == 0);
  for (const char* f : {"allocation_n4.json", "interaction_separations.csv", "modules/alloc_n3.json"})
    CHECK(slurp(s / (std::string("a/") + f)) == slurp(s / (std::string("b/") + f)));
  // The emitted module fixture routes.
  write(s / "c.qasm", kRouted);
  CHECK(run(s.dir, "transpile c.qasm -o r.qasm --seeds 2 --topology a/modules/alloc_n3.json") == 0);
}

TEST_CASE("infeasible allocation exits 1") {
  Scratch s("infeasible");
  CHECK(run(s.dir, "allocate --sizes 3 --restarts 2 --q-lo-ghz 4.0 --q-hi-ghz 4.3 --out o") == 1);
  CHECK(fs::exists(s / "o/allocation_n3.json"));
  CHECK_FALSE(fs::exists(s / "o/modules/alloc_n3.json"));
}

TEST_CASE("command-line flags override the config file") {
  Scratch s("config");
  write(s / "cfg.json", R"({"restarts": 2, "allocate": {"sizes": [2], "out": "from_config"}})");
  REQUIRE(run(s.dir, "allocate --config cfg.json") == 0);
  CHECK(fs::exists(s / "from_config/allocation_n2.json"));
  CHECK_FALSE(fs::exists(s / "from_config/allocation_n3.json"));
  REQUIRE(run(s.dir, "allocate --config cfg.json --sizes 3") == 0);
  CHECK(fs::exists(s / "from_config/allocation_n3.json"));
  write(s / "bad.json", R"({"allocate": {"sizes": "two"}})");
  CHECK(run(s.dir, "allocate --config bad.json") == 2);
}

TEST_CASE("bench writes CSVs and per-run records") {
  Scratch s("bench");
  fs::create_directories(s / "w");
  write(s / "w/ghz_4.qasm",
        "OPENQASM 2.0;\nqreg q[4];\nh q[0];\ncx q[0],q[1];\ncx q[1],q[2];\ncx q[2],q[3];\n"
        "cx q[0],q[3];\ncx q[1],q[3];\n");
  const std::string args =
      "bench --workloads w --topologies 4q4e --seeds 2 --threads 2 --out ";
  REQUIRE(run(s.dir, args + "o1") == 0);
  REQUIRE(run(s.dir, args + "o2") == 0);
  const std::string csv = slurp(s / "o1/bench.csv");
  CHECK(csv.rfind("algorithm,circuit,topology,post_selection,", 0) == 0);
  CHECK(csv == slurp(s / "o2/bench.csv"));
  CHECK(slurp(s / "o1/bench_summary.csv") == slurp(s / "o2/bench_summary.csv"));
  CHECK(fs::exists(s / "o1/runs/ghz_4__4q4e__finesse__native.json"));
  CHECK(run(s.dir, "bench --workloads missing --out o3") == 2);
}
