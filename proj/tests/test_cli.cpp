#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(JTBERRY_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.output.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

fs::path tmp_dir() {
  fs::path p(JTBERRY_TMP_DIR);
  fs::create_directories(p);
  return p;
}

std::string write_config(const std::string& name, const std::string& text) {
  fs::path p = tmp_dir() / name;
  std::ofstream out(p);
  out << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("model-info happy path") {
  std::string cfg = write_config("mi.cfg",
                                 "model = e_x_e\n"
                                 "# comment line\n"
                                 "F = 1.0\n");
  RunResult r = run_cli("model-info --config " + cfg + " --no-timestamp");
  CHECK(r.exit_code == 0);
  Json env = Json::parse(r.output);
  CHECK(env["status"] == "ok");
  CHECK(env["command"] == "model-info");
  CHECK(env["schema_version"] == "1");
  CHECK(!env.contains("timestamp"));
  CHECK(env["config"]["model"] == "e_x_e");
  CHECK(env["payload"]["N"] == 2);
  CHECK(env["payload"]["M"] == 2);
  CHECK(std::abs(env["payload"]["Qstar"].get<double>() - 1.0) < 1e-9);
  CHECK(std::abs(env["payload"]["Emin"].get<double>() + 0.5) < 1e-9);
}

TEST_CASE("timestamp appears unless suppressed") {
  std::string cfg = write_config("ts.cfg", "model = e_x_e\n");
  RunResult r = run_cli("model-info --config " + cfg);
  CHECK(r.exit_code == 0);
  Json env = Json::parse(r.output);
  CHECK(env.contains("timestamp"));
}

TEST_CASE("config errors exit with code 2") {
  std::string missing = write_config("missing.cfg", "F = 1.0\n");
  CHECK(run_cli("model-info --config " + missing).exit_code == 2);

  std::string unknown =
      write_config("unknown.cfg", "model = e_x_e\nbogus_key = 3\n");
  RunResult r = run_cli("model-info --config " + unknown + " --no-timestamp");
  CHECK(r.exit_code == 2);
  Json env = Json::parse(r.output);
  CHECK(env["status"] == "error");
  CHECK(env["error"]["code"] == "config");
  std::string msg = env["error"]["message"];
  CHECK(msg.find("bogus_key") != std::string::npos);

  std::string nomodel = write_config("nomodel.cfg", "model = nosuch\n");
  RunResult r2 = run_cli("model-info --config " + nomodel + " --no-timestamp");
  CHECK(r2.exit_code == 2);
  CHECK(Json::parse(r2.output)["error"]["code"] == "model-not-found");

  CHECK(run_cli("model-info --config /nonexistent/path.cfg").exit_code == 2);
}

TEST_CASE("numerical errors exit with code 4") {
  std::string cfg = write_config("f0.cfg", "model = e_x_e\nF = 0\n");
  RunResult r = run_cli("berry --config " + cfg + " --no-timestamp");
  CHECK(r.exit_code == 4);
  CHECK(Json::parse(r.output)["error"]["code"] == "degenerate-trough");
}

TEST_CASE("capacity errors exit with code 3") {
  std::string cfg = write_config("cap.cfg",
                                 "model = t_e_t2\n"
                                 "vibronic.n_max = 30\n"
                                 "vibronic.max_dim = 1000\n");
  RunResult r = run_cli("vibronic --config " + cfg + " --no-timestamp");
  CHECK(r.exit_code == 3);
  CHECK(Json::parse(r.output)["error"]["code"] == "capacity");
}

TEST_CASE("berry command payload and files") {
  fs::path out = tmp_dir() / "berry_out";
  std::string cfg = write_config("berry.cfg",
                                 "model = e_x_e\n"
                                 "loop.kind = nontrivial\n"
                                 "loop.steps = 256\n");
  RunResult r = run_cli("berry --config " + cfg + " --no-timestamp --out " +
                        out.string() + " --format both");
  REQUIRE(r.exit_code == 0);
  Json env = Json::parse(r.output);
  Json pay = env["payload"];
  CHECK(pay["phase"] == -1);
  CHECK(std::abs(pay["phase_raw"].get<double>() + 1.0) < 1e-6);
  CHECK(pay["steps"] == 256);
  CHECK(pay["min_gap"].get<double>() > 1.0);
  CHECK(pay["min_step_overlap"].get<double>() > 0.99);
  CHECK(pay["flipped_count"] == 1);

  CHECK(fs::exists(out / "berry.json"));
  Json file_env = Json::parse(slurp(out / "berry.json"));
  CHECK(file_env == env);

  std::string csv = slurp(out / "berry_transport.csv");
  CHECK(csv.rfind("# schema=1 columns=step,t,c1,c2", 0) == 0);
  int lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 258);  // header + 257 points
}

TEST_CASE("csv-only format writes no json file") {
  fs::path out = tmp_dir() / "csvonly";
  fs::remove_all(out);
  std::string cfg = write_config("csvonly.cfg", "model = e_x_e\n");
  RunResult r = run_cli("berry --config " + cfg + " --no-timestamp --out " +
                        out.string() + " --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(!fs::exists(out / "berry.json"));
  CHECK(fs::exists(out / "berry_transport.csv"));
}

TEST_CASE("repeated runs are byte-identical without timestamps") {
  fs::path out1 = tmp_dir() / "det1";
  fs::path out2 = tmp_dir() / "det2";
  std::string cfg = write_config("det.cfg",
                                 "model = t_e_t2\n"
                                 "loop.steps = 128\n");
  std::string tail = " --no-timestamp --format both";
  RunResult a =
      run_cli("berry --config " + cfg + " --out " + out1.string() + tail);
  RunResult b =
      run_cli("berry --config " + cfg + " --out " + out2.string() + tail);
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(slurp(out1 / "berry.json") == slurp(out2 / "berry.json"));
  CHECK(slurp(out1 / "berry_transport.csv") ==
        slurp(out2 / "berry_transport.csv"));
}

TEST_CASE("holonomy command reports the excited block") {
  std::string cfg = write_config("hol.cfg",
                                 "model = t_e_t2\n"
                                 "loop.base = 1.2, 0.4\n");
  RunResult r = run_cli("holonomy --config " + cfg + " --no-timestamp");
  REQUIRE(r.exit_code == 0);
  Json pay = Json::parse(r.output)["payload"];
  CHECK(pay["phase"] == -1);
  CHECK(pay["flipped_count"] == 1);
  CHECK(std::abs(pay["W_det"].get<double>() + 1.0) < 1e-6);
  REQUIRE(pay["W"].size() == 2);
  REQUIRE(pay["W"][0].size() == 2);
}

TEST_CASE("vibronic command on a small model") {
  fs::path out = tmp_dir() / "vib_out";
  std::string cfg = write_config("vib.cfg",
                                 "model = e_x_e\n"
                                 "F = 2\n"
                                 "vibronic.n_max = 14\n"
                                 "vibronic.k = 6\n");
  RunResult r = run_cli("vibronic --config " + cfg + " --no-timestamp --out " +
                        out.string() + " --format both");
  REQUIRE(r.exit_code == 0);
  Json pay = Json::parse(r.output)["payload"];
  CHECK(pay["ground_degeneracy"] == 2);
  CHECK(pay["levels"].size() == 6);
  CHECK(pay["n_max"] == 14);
  double e0 = pay["levels"][0].get<double>();
  double e1 = pay["levels"][1].get<double>();
  CHECK(std::abs(e1 - e0) < 1e-6);
  std::string csv = slurp(out / "vibronic_levels.csv");
  CHECK(csv.rfind("# schema=1 columns=index,energy,cluster", 0) == 0);
}

TEST_CASE("vibronic requires n_max") {
  std::string cfg = write_config("vibmiss.cfg", "model = e_x_e\n");
  CHECK(run_cli("vibronic --config " + cfg).exit_code == 2);
}

TEST_CASE("rotor command and parity validation") {
  fs::path out = tmp_dir() / "rot_out";
  std::string cfg = write_config("rotor.cfg",
                                 "rotor.N = 3\n"
                                 "rotor.parity = antiperiodic\n"
                                 "rotor.k = 3\n");
  RunResult r = run_cli("rotor --config " + cfg + " --no-timestamp --out " +
                        out.string() + " --format both");
  REQUIRE(r.exit_code == 0);
  Json pay = Json::parse(r.output)["payload"];
  REQUIRE(pay["levels"].size() == 3);
  CHECK(pay["levels"][0]["L"] == 1);
  CHECK(pay["levels"][0]["degeneracy"] == 3);
  CHECK(pay["levels"][1]["degeneracy"] == 7);
  CHECK(pay["levels"][2]["degeneracy"] == 11);
  std::string csv = slurp(out / "rotor_levels.csv");
  CHECK(csv.rfind("# schema=1 columns=L,energy,degeneracy", 0) == 0);

  std::string bad = write_config("rotbad.cfg",
                                 "rotor.N = 3\nrotor.parity = sideways\n");
  CHECK(run_cli("rotor --config " + bad).exit_code == 2);
  std::string missing = write_config("rotmiss.cfg", "rotor.parity = odd\n");
  CHECK(run_cli("rotor --config " + missing).exit_code == 2);
}

TEST_CASE("apes-scan finds the trough ring") {
  fs::path out = tmp_dir() / "apes_out";
  std::string cfg = write_config("apes.cfg",
                                 "model = e_x_e\n"
                                 "scan.extent = 2\n"
                                 "scan.resolution = 161\n");
  RunResult r = run_cli("apes-scan --config " + cfg + " --no-timestamp --out " +
                        out.string() + " --format both");
  REQUIRE(r.exit_code == 0);
  Json pay = Json::parse(r.output)["payload"];
  CHECK(std::abs(pay["min_value"].get<double>() + 0.5) < 1e-3);
  double u = pay["min_u"].get<double>();
  double v = pay["min_v"].get<double>();
  CHECK(std::abs(std::hypot(u, v) - 1.0) < 0.02);
  std::string csv = slurp(out / "apes_scan.csv");
  CHECK(csv.rfind("# schema=1 columns=u,v,apes1,apes2", 0) == 0);

  std::string bad = write_config("apesbad.cfg",
                                 "model = e_x_e\n"
                                 "scan.dir1 = 1, 0\n"
                                 "scan.dir2 = 1, 0\n");
  CHECK(run_cli("apes-scan --config " + bad).exit_code == 2);
}

TEST_CASE("perturb-scan matches berry at zero strength") {
  fs::path out = tmp_dir() / "pert_out";
  std::string berry_cfg = write_config("pb.cfg", "model = e_x_e\n");
  RunResult rb = run_cli("berry --config " + berry_cfg + " --no-timestamp");
  REQUIRE(rb.exit_code == 0);
  double berry_raw =
      Json::parse(rb.output)["payload"]["phase_raw"].get<double>();

  std::string cfg = write_config("pert.cfg",
                                 "model = e_x_e\n"
                                 "perturb.type = quadratic\n"
                                 "perturb.grid = 0, 0.5, 1.5\n");
  RunResult r = run_cli("perturb-scan --config " + cfg +
                        " --no-timestamp --out " + out.string() +
                        " --format both --threads 2");
  REQUIRE(r.exit_code == 0);
  Json rows = Json::parse(r.output)["payload"]["rows"];
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["status"] == "ok");
  CHECK(rows[0]["phase_raw"].get<double>() == berry_raw);
  CHECK(rows[0]["phase"] == -1);
  CHECK(rows[1]["phase"] == -1);
  CHECK(rows[2]["phase"] == 1);
  std::string csv = slurp(out / "perturb_scan.csv");
  CHECK(csv.rfind("# schema=1 "
                  "columns=strength,phase_raw,phase_snapped,min_gap,"
                  "splitting,status",
                  0) == 0);
}

TEST_CASE("perturb-scan field path with splitting") {
  std::string cfg = write_config("pfield.cfg",
                                 "model = e_x_e\n"
                                 "F = 2\n"
                                 "perturb.type = field\n"
                                 "perturb.field = 1, 0, 0, -1\n"
                                 "perturb.grid = 0, 0.05\n"
                                 "perturb.splitting_n_max = 10\n");
  RunResult r = run_cli("perturb-scan --config " + cfg + " --no-timestamp");
  REQUIRE(r.exit_code == 0);
  Json rows = Json::parse(r.output)["payload"]["rows"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["status"] == "ok");
  REQUIRE(rows[1].contains("splitting"));
  CHECK(rows[1]["splitting"].get<double>() >
        rows[0]["splitting"].get<double>());

  std::string bad = write_config("pfieldbad.cfg",
                                 "model = e_x_e\n"
                                 "perturb.type = field\n"
                                 "perturb.field = 1, 0, 0\n"
                                 "perturb.grid = 0\n");
  CHECK(run_cli("perturb-scan --config " + bad).exit_code == 2);
}
