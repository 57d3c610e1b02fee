#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

const std::string kCli = BARRIERLAB_CLI_PATH;
const fs::path kData = BARRIERLAB_DATA_DIR;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + kCli + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream is(s);
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

std::string double_barrier() {
  return (kData / "double_parabolic_touching.json").string();
}

}  // namespace

TEST_CASE("transmission sweep finds the resonance peak") {
  const auto r = run("transmission --potential " + double_barrier() +
                     " --e-min 0.01 --e-max 0.12 --points 500");
  REQUIRE(r.exit_code == 0);
  const auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 501);
  CHECK(rows[0] == "energy,transmission,reflection");
  std::vector<double> e(rows.size() - 1), t(rows.size() - 1);
  for (size_t i = 1; i < rows.size(); ++i) {
    double rr;
    REQUIRE(std::sscanf(rows[i].c_str(), "%lf,%lf,%lf", &e[i - 1], &t[i - 1],
                        &rr) == 3);
    CHECK(std::abs(t[i - 1] + rr - 1.0) < 1e-9);
  }
  // the quasi-bound state is the dominant interior peak of the sweep (the
  // monotone rise toward the barrier-top at the range edge is not a peak)
  double best_e = 0.0, best_t = -1.0;
  for (size_t i = 1; i + 1 < t.size(); ++i) {
    if (t[i] >= t[i - 1] && t[i] >= t[i + 1] && t[i] > best_t) {
      best_t = t[i];
      best_e = e[i];
    }
  }
  CHECK(std::abs(best_e - 0.06115146) < 2.5e-4);  // within one grid spacing
  CHECK(best_t > 0.1);  // the tail is visible even on a coarse grid
}

TEST_CASE("identical commands produce byte-identical output") {
  const std::string cmd = "transmission --potential " + double_barrier() +
                          " --e-min 0.02 --e-max 0.1 --points 64";
  const auto a = run(cmd);
  const auto b = run(cmd);
  const auto c = run(cmd, "BARRIERLAB_THREADS=3 ");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("wavefunction profile has the expected off-resonant shape") {
  const auto r = run("wavefunction --potential " + double_barrier() +
                     " --energy 0.02 --x-min -25 --x-max 25 --points 2000");
  REQUIRE(r.exit_code == 0);
  const auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 2001);
  CHECK(rows[0] == "x,psi_re,psi_im,density");
  double max_left = 0.0, max_right = 0.0;
  for (size_t i = 1; i < rows.size(); ++i) {
    double x, re, im, d;
    REQUIRE(std::sscanf(rows[i].c_str(), "%lf,%lf,%lf,%lf", &x, &re, &im, &d) == 4);
    if (x > -20.0 && x < 0.0) max_left = std::max(max_left, d);
    if (x > 0.0 && x < 20.0) max_right = std::max(max_right, d);
  }
  // an incident wave at a typical energy piles up in the left barrier and
  // barely reaches the right one
  CHECK(max_left > 1.0);
  CHECK(max_right < 1e-2 * max_left);
}

TEST_CASE("dwell verb reproduces the off-resonant barrier dwell time") {
  const auto r = run("dwell --potential " + double_barrier() +
                     " --energy 0.02 --interval turning:1:2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("\"time_unit\": \"aut\"") != std::string::npos);
  const auto tau_pos = r.out.find("\"tau\": ");
  REQUIRE(tau_pos != std::string::npos);
  const double tau = std::atof(r.out.c_str() + tau_pos + 7);
  CHECK(std::abs(tau - 11.5) < 0.115);
  // numeric interval form works too
  const auto r2 = run("dwell --potential " + double_barrier() +
                      " --energy 0.02 --interval -1.5:2.0 --format csv");
  REQUIRE(r2.exit_code == 0);
  CHECK(lines_of(r2.out)[0] == "x1,x2,j_in,integral,tau");
}

TEST_CASE("resonance verb emits the refined energy as json") {
  const auto r = run("resonance --potential " + double_barrier() +
                     " --e-min 0.01 --e-max 0.12 --grid 2200");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("\"unit_system\": \"hartree\"") != std::string::npos);
  CHECK(r.out.find("\"trivially_transparent\": false") != std::string::npos);
  CHECK(r.out.find("0.0611514") != std::string::npos);
}

TEST_CASE("oracle-check passes on shipped potentials") {
  for (const char* f :
       {"single_parabolic.json", "mixed_double.json", "sech_infinite.json"}) {
    const auto r = run("oracle-check --potential " + (kData / f).string() +
                       " --energy 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"abs_diff\"") != std::string::npos);
  }
  // an impossible tolerance turns the same comparison into a numerical failure
  const auto r = run("oracle-check --potential " +
                     (kData / "single_parabolic.json").string() +
                     " --energy 0.5 --tol 1e-18");
  CHECK(r.exit_code == 3);
}

TEST_CASE("units verb reproduces the reference conversions") {
  auto r = run("units --value 3 --from eV --to hartree");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "0.125\n");
  r = run("units --value 10 --from angstrom --to bohr");
  CHECK(r.out == "20\n");
  r = run("units --value 1 --from hartree --to eV --constants codata");
  CHECK(r.out.substr(0, 7) == "27.2113");
  r = run("units --value 1 --from eV --to bohr");
  CHECK(r.exit_code == 2);
}

TEST_CASE("validation failures exit with code 2") {
  CHECK(run("transmission --potential /no/such/file.json --e-min 0.1 --e-max 0.2")
            .exit_code == 2);
  CHECK(run("dwell --potential " + double_barrier() +
            " --energy 0.02 --interval turning:9:10")
            .exit_code == 2);
  CHECK(run("dwell --potential " + double_barrier() +
            " --energy 0.02 --interval 5:1")
            .exit_code == 2);
  CHECK(run("transmission --potential " + double_barrier() +
            " --e-min 0.2 --e-max 0.1")
            .exit_code == 2);
  CHECK(run("nonsense-verb").exit_code == 2);

  const auto bad = fs::temp_directory_path() / "barrierlab_overlap.json";
  {
    std::ofstream out(bad);
    out << R"({"unit_system": "hartree", "segments": [
      {"shape": "parabolic", "alpha": 1.0, "u0": 1.0, "gamma": 0.0},
      {"shape": "parabolic", "alpha": 1.0, "u0": 1.0, "gamma": 0.5}]})";
  }
  CHECK(run("transmission --potential " + bad.string() +
            " --e-min 0.1 --e-max 0.9")
            .exit_code == 2);
  fs::remove(bad);
}

TEST_CASE("output file matches stdout output") {
  const auto tmp = fs::temp_directory_path() / "barrierlab_sweep.csv";
  const std::string cmd = "transmission --potential " + double_barrier() +
                          " --e-min 0.02 --e-max 0.1 --points 16";
  const auto direct = run(cmd);
  const auto to_file = run(cmd + " --output " + tmp.string());
  REQUIRE(to_file.exit_code == 0);
  CHECK(to_file.out.empty());
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == direct.out);
  fs::remove(tmp);
}

TEST_CASE("json formats carry the unit system") {
  const auto r = run("transmission --potential " + double_barrier() +
                     " --e-min 0.02 --e-max 0.1 --points 8 --format json");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("\"unit_system\": \"hartree\"") != std::string::npos);
  const auto w = run("wavefunction --potential " + double_barrier() +
                     " --energy 0.02 --x-min -1 --x-max 1 --points 4 "
                     "--format json");
  CHECK(w.out.find("\"unit_system\": \"hartree\"") != std::string::npos);
}
