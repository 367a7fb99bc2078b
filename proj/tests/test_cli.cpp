#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

const std::string kCli = WIRETAP_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string out_path = "cli_test_stdout.tmp";
  const std::string cmd = kCli + " " + args + " > " + out_path + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(out_path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  std::remove(out_path.c_str());
  return {WEXITSTATUS(raw), buf.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("rate subcommand emits the scheme report") {
  const RunResult r = run("rate --ef 0.02 --df 0.01 --eb 0.1 --db 0.1 --scheme pure");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.output);
  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("config").at("ef") == 0.02);
  CHECK(doc.at("report").at("scheme") == "pure_feedback");
  CHECK(std::abs(doc.at("report").at("overall_rate").get<double>() -
                 0.097508840139983087) < 1e-12);

  const RunResult wy = run("rate --ef 0.01 --df 0.02 --scheme wyner");
  REQUIRE(wy.exit_code == 0);
  const json wdoc = json::parse(wy.output);
  CHECK(std::abs(wdoc.at("report").at("overall_rate").get<double>() - 0.0606) < 6e-4);
}

TEST_CASE("numeric flags are range validated") {
  CHECK(run("rate --ef 0.6 --df 0.01 --eb 0.1 --db 0.1 --scheme pure").exit_code == 2);
  CHECK(run("rate --ef -0.1 --df 0.01 --eb 0.1 --db 0.1 --scheme pure").exit_code == 2);
  CHECK(run("rate --ef 0.02 --df 0.01 --scheme nonsense").exit_code == 2);
  CHECK(run("simulate kernel --eb 0.1 --db 0.1 --bits 1000").exit_code == 2);  // missing seed
}

TEST_CASE("sweep produces a deterministic CSV grid") {
  const std::string path1 = "cli_sweep1.csv";
  const std::string path2 = "cli_sweep2.csv";
  const std::string args =
      "sweep --ef 0.02 --df 0.01 --eb-min 0.1 --eb-max 0.2 --eb-step 0.1 "
      "--db-min 0.3 --db-max 0.4 --db-step 0.1 --schemes pure,reversed,improvement ";
  REQUIRE(run(args + "--out " + path1).exit_code == 0);
  REQUIRE(run(args + "--jobs 4 --out " + path2).exit_code == 0);

  const std::string csv1 = slurp(path1);
  const std::string csv2 = slurp(path2);
  CHECK(csv1 == csv2);  // byte-identical across reruns and thread counts

  const auto lines = lines_of(csv1);
  REQUIRE(lines.size() == 5);  // header + 2x2 grid
  CHECK(lines[0] == "eps_b,delta_b,pure,reversed,improvement");
  CHECK(lines[1].substr(0, 8) == "0.1,0.3,");
  CHECK(lines[2].substr(0, 8) == "0.1,0.4,");
  CHECK(lines[3].substr(0, 8) == "0.2,0.3,");  // eps_b outer, delta_b inner

  // pure rates strictly positive where Wyner gives zero
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::stringstream ss(lines[i]);
    std::string field;
    std::getline(ss, field, ',');
    std::getline(ss, field, ',');
    std::getline(ss, field, ',');
    CHECK(std::stod(field) > 0.0);
  }

  std::remove(path1.c_str());
  std::remove(path2.c_str());
}

TEST_CASE("verifier counterexamples map to exit code 4 with the report written") {
  // eps == delta is the boundary case: intersection abscissae coincide and
  // the ordering claim fails, which must be reported, not thrown
  const RunResult r = run(
      "verify projection-order --eps 0.1 --delta 0.1 "
      "--p1 0.05 --p4 0.15 --p2 0.25 --p3 0.4");
  CHECK(r.exit_code == 4);
  const json doc = json::parse(r.output);
  CHECK(doc.at("report").at("n_fail") == 1);
  REQUIRE(doc.at("report").at("counterexamples").size() == 1);
}

TEST_CASE("sweep supports optimizer columns and strict positivity holds") {
  const RunResult r = run(
      "sweep --ef 0.01 --df 0.02 --eb-min 0.1 --eb-max 0.3 --eb-step 0.1 "
      "--db-min 0.1 --db-max 0.3 --db-step 0.1 "
      "--schemes pure,mixed,gamma_star,n_star --nmax 9");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 10);  // header + 3x3
  CHECK(lines[0] == "eps_b,delta_b,pure,mixed,gamma_star,n_star");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::stringstream ss(lines[i]);
    std::string field;
    std::vector<double> v;
    while (std::getline(ss, field, ',')) v.push_back(std::stod(field));
    REQUIRE(v.size() == 6);
    CHECK(v[2] > 0.0);                     // pure rate strictly positive
    CHECK(v[3] >= 0.060647406645 - 1e-9);  // mixed >= Wyner gap
    CHECK(v[4] >= 0.0);                    // gamma* in [0, 0.5]
    CHECK(v[4] <= 0.5);
    CHECK(static_cast<int>(v[5]) % 2 == 1);  // n* odd
  }
}

TEST_CASE("verify two-point and frontier smoke") {
  const RunResult tp =
      run("verify two-point --eps 0.01 --delta 0.02 --samples 25 --seed 3");
  REQUIRE(tp.exit_code == 0);
  const json tdoc = json::parse(tp.output);
  CHECK(tdoc.at("report").at("n_pass") == 25);
  CHECK(tdoc.at("report").at("worst_margin").get<double>() < 1e-6);

  const RunResult fr =
      run("verify frontier --eps 0.01 --delta 0.02 --resolution 8");
  REQUIRE(fr.exit_code == 0);
  const json fdoc = json::parse(fr.output);
  CHECK(fdoc.at("report").at("n_fail") == 0);

  const RunResult gs =
      run("verify g-structure --eps 0.01 --delta 0.02 --samples 50 --seed 11");
  CHECK(gs.exit_code == 0);
}

TEST_CASE("simulate crypto and repetition smoke") {
  const RunResult cr = run("simulate crypto --eb 0.1 --db 0.2 --bits 200000 --seed 4");
  REQUIRE(cr.exit_code == 0);
  const json cdoc = json::parse(cr.output);
  const double bias = cdoc.at("result").at("broadcast_bias").get<double>();
  CHECK(std::abs(bias - 0.5) < 0.01);

  const RunResult rp = run("simulate repetition --p 0.1 --nrep 3 --trials 200000 --seed 4");
  REQUIRE(rp.exit_code == 0);
  const json rdoc = json::parse(rp.output);
  const double est = rdoc.at("result").at("crossover").get<double>();
  const double expect = rdoc.at("result").at("expected").get<double>();
  CHECK(expect == doctest::Approx(0.028).epsilon(1e-12));
  CHECK(std::abs(est - expect) < 0.002);
}

TEST_CASE("rate covers the remaining schemes") {
  for (const char* scheme : {"mixed", "best"}) {
    const RunResult r = run(std::string("rate --ef 0.01 --df 0.02 --eb 0.3 --db 0.35 --scheme ") + scheme);
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc.at("report").at("overall_rate").get<double>() >= 0.0606);
  }
  const RunResult rev = run("rate --ef 0.02 --df 0.01 --eb 0.1 --db 0.3 --scheme reversed");
  REQUIRE(rev.exit_code == 0);
  CHECK(std::abs(json::parse(rev.output).at("report").at("overall_rate").get<double>() -
                 0.27853696913461125) < 1e-9);
  const RunResult fe = run("rate --ef 0.02 --df 0.01 --eb 0.1 --db 0.3 --scheme full-encryption");
  REQUIRE(fe.exit_code == 0);
  const RunResult rep = run("rate --ef 0.02 --df 0.01 --eb 0.3 --db 0.4 --scheme repetition --nmax 15");
  REQUIRE(rep.exit_code == 0);
  CHECK(json::parse(rep.output).at("report").at("detail").at("n_star").get<double>() > 1.0);
}

TEST_CASE("region scaling flag") {
  const RunResult r = run("region --rmax 0.6 --cs 0.2 --points 3 --forwarding-rate 1");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 4);
  CHECK(lines[3].substr(0, 4) == "0.3,");  // r_max halves at f = 1
}

TEST_CASE("sweep rejects unwritable output path") {
  const RunResult r = run(
      "sweep --ef 0.02 --df 0.01 --eb-min 0.1 --eb-max 0.1 --eb-step 0.1 "
      "--db-min 0.1 --db-max 0.1 --db-step 0.1 --schemes pure "
      "--out /nonexistent_dir_xyz/file.csv");
  CHECK(r.exit_code == 3);
}

TEST_CASE("region subcommand samples the boundary") {
  const RunResult r = run("region --rmax 0.8586 --cs 0.0606 --points 101");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 102);  // header + 101 rows
  CHECK(lines[0] == "r,d");
  CHECK(lines[1] == "0,1");
  CHECK(run("region --rmax 0.5 --cs 0.6 --points 10").exit_code == 2);  // cs > rmax
}

TEST_CASE("verify subcommand writes a report and uses exit code 0 on pass") {
  const RunResult r =
      run("verify bsc-optimality --eps 0.01 --delta 0.02 --samples 2000 --seed 7");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.output);
  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("report").at("claim") == "bsc-optimality");
  CHECK(doc.at("report").at("n_pass") == 2000);
  CHECK(doc.at("report").at("n_fail") == 0);
  CHECK(doc.at("report").at("worst_margin").get<double>() >= -1e-9);

  const RunResult proj = run(
      "verify projection-order --eps 0.01 --delta 0.02 "
      "--p1 0.05 --p4 0.15 --p2 0.25 --p3 0.4");
  REQUIRE(proj.exit_code == 0);
  const json pdoc = json::parse(proj.output);
  CHECK(pdoc.at("report").at("n_pass") == 1);
  CHECK(pdoc.at("report").at("intersections").at("abscissa_e").get<double>() >
        pdoc.at("report").at("intersections").at("abscissa_d").get<double>());
}

TEST_CASE("simulate kernel reproduces the closed-form error rates") {
  const RunResult r = run("simulate kernel --eb 0.1 --db 0.1 --bits 1000000 --seed 1");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.output);
  const double eve = doc.at("result").at("eve_ber").get<double>();
  const double sigma = doc.at("result").at("eve_ber_std").get<double>();
  CHECK(std::abs(eve - 0.18) <= 3.0 * sigma);
  CHECK(doc.at("result").at("n_bits_total").get<long>() >= 1000000);

  // identical invocation, identical bytes
  const RunResult again = run("simulate kernel --eb 0.1 --db 0.1 --bits 1000000 --seed 1");
  CHECK(again.output == r.output);
}

TEST_CASE("simulate leakage carries both arms") {
  const RunResult r = run(
      "simulate leakage --eb 0.1 --db 0.1 --bits 400000 --seed 2 --payload constant");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.output);
  const double mi = doc.at("result").at("mi_broadcast_eve_bits").get<double>();
  const double ctrl = doc.at("control").at("mi_broadcast_eve_bits").get<double>();
  const double thresh = doc.at("control").at("mi_zero_threshold").get<double>();
  CHECK(mi > 0.25);
  CHECK(ctrl <= thresh);
}

TEST_CASE("equivocation subcommand parses matrix files") {
  const std::string path = "cli_parity.txt";
  {
    std::ofstream out(path);
    out << "110\n011\n";
  }
  const RunResult r = run("equivocation --matrix " + path + " --deltas 0,0.1,0.5");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.output);
  CHECK(doc.at("code").at("n") == 3);
  CHECK(doc.at("code").at("secret_bits") == 2);
  const auto values = doc.at("equivocation").get<std::vector<double>>();
  REQUIRE(values.size() == 3);
  CHECK(values[0] == 0.0);
  CHECK(std::abs(values[1] - 0.63470225570144389) < 1e-12);
  CHECK(values[2] == 1.0);
  std::remove(path.c_str());

  CHECK(run("equivocation --matrix no_such_file.txt --deltas 0.1").exit_code == 3);
}
