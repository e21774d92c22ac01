#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int rc = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is discarded unless merged by the caller.
Run mf(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" MF_CLI_PATH "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool has_line(const std::string& out, const std::string& line) {
  std::istringstream in(out);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("mf_cli_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("documented examples") {
  auto r = mf("ppd 2 11");
  CHECK(r.rc == 0);
  CHECK(r.out == "89\n");

  r = mf("triples search --group C6");
  CHECK(r.rc == 1);
  CHECK(r.out == "no witness (abelian obstruction delta=6)\n");

  r = mf("classify --group A5 --pair \"(1 2 3 4 5);(1 2 3)\" --audit");
  CHECK(r.rc == 0);
  CHECK(r.out.find("totally-noncongruence") != std::string::npos);
  r = mf("--format report classify --group A5 --pair \"(1 2 3 4 5);(1 2 3)\" --audit");
  CHECK(has_line(r.out, "verdict: totally-noncongruence"));
}

TEST_CASE("exit codes") {
  CHECK(mf("ppd 2 6").rc == 1);
  CHECK(mf("ppd 1 6").rc == 2);
  CHECK(mf("ppd 2").rc == 2);
  CHECK(mf("no-such-command").rc == 2);
  CHECK(mf("classify --group A5").rc == 2);
  CHECK(mf("classify --group B5 --pair \"();()\"").rc == 2);
  CHECK(mf("group info --group A40").rc == 2);
  CHECK(mf("group info --group A40 --max-n 40").rc == 2);  // global flag must precede the subcommand
  CHECK(mf("--max-n 20 group info --group A17").rc == 0);
  CHECK(mf("classify --group A5 --pair \"(1 2 3);(1 2)\"").rc == 2);   // outside A5
  CHECK(mf("classify --group A5 --pair \"(1 2 3);(1 3 2)\"").rc == 2);  // not generating
  CHECK(mf("triples verify --group A5 --pair \"(1 2 3 4 5);(1 2 3)\"").rc == 1);
  CHECK(mf("--help").rc == 0);
}

TEST_CASE("help documents flags and environment") {
  const auto r = mf("--help-all");
  for (const char* s : {"--seed", "--workers", "--audit", "--max-orbit", "--modulus-cap", "--format", "--timing",
                        "MF_MAX_ORBIT", "MF_MODULUS_CAP"}) {
    CHECK_MESSAGE(r.out.find(s) != std::string::npos, s);
  }
  const auto search = mf("triples search --help");
  CHECK(search.out.find("--budget") != std::string::npos);
  CHECK(search.out.find("--require-smooth") != std::string::npos);
}

TEST_CASE("environment bounds") {
  CHECK(mf("orbit --group A5 --pair \"(1 2 3 4 5);(1 2 3)\"").rc == 0);
  CHECK(mf("orbit --group A5 --pair \"(1 2 3 4 5);(1 2 3)\"", "MF_MAX_ORBIT=4").rc == 2);
  CHECK(mf("--max-orbit 4 orbit --group A5 --pair \"(1 2 3 4 5);(1 2 3)\"").rc == 2);
  CHECK(mf("closure --group A5 --pair \"(1 2 3 4 5);(1 2 3)\"", "MF_MODULUS_CAP=10").rc == 2);
}

TEST_CASE("witness alt") {
  auto r = mf("--format report witness alt 5");
  CHECK(r.rc == 0);
  CHECK(has_line(r.out, "orders: 5 3 2"));
  CHECK(has_line(r.out, "delta: 1"));
  CHECK(has_line(r.out, "generates: true"));
  r = mf("--format report witness alt 7");
  CHECK(has_line(r.out, "orders: 7 5 3"));
  CHECK(mf("witness alt 4").rc == 2);
}

TEST_CASE("searches are deterministic across worker counts") {
  const auto a = mf("--seed 5 --workers 1 triples search --group A6");
  const auto b = mf("--seed 5 --workers 3 triples search --group A6");
  CHECK(a.rc == 0);
  CHECK(a.out == b.out);
  const auto s = mf("--format report triples search --group \"SL2(5)\" --require-smooth center");
  CHECK(s.rc == 0);
  CHECK(has_line(s.out, "smooth: true"));
}

TEST_CASE("frobenius through a table file") {
  const auto path = scratch("a5.tab");
  CHECK(mf("chartab --group A5 --out '" + path.string() + "'").rc == 0);
  const auto from_file = mf("--format report frobenius --table '" + path.string() + "' --classes 2,3,4");
  const auto from_group = mf("--format report frobenius --group A5 --classes 2,3,4");
  CHECK(from_file.rc == from_group.rc);
  CHECK(from_file.out == from_group.out);
  CHECK(mf("frobenius --table '" + path.string() + "' --classes 2,3,9").rc == 2);
  CHECK(mf("frobenius --classes 1,1,1").rc == 2);
  std::filesystem::remove(path);
}

TEST_CASE("group info and classes") {
  auto r = mf("--format report group info --group \"SL2(5)\"");
  CHECK(has_line(r.out, "order: 120"));
  CHECK(has_line(r.out, "degree: 24"));
  CHECK(has_line(r.out, "center-order: 2"));
  r = mf("classes --group A5");
  CHECK(r.rc == 0);
  std::istringstream in(r.out);
  std::size_t rows = 0;
  for (std::string l; std::getline(in, l);)
    if (!l.starts_with("#")) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("nielsen and smooth") {
  auto r = mf("--format report nielsen --group A5 --pair \"(1 2 3 4 5);(1 2 3)\" --to \"(1 2 3 4 5);(1 2 4 5 3)\"");
  CHECK((r.rc == 0 || r.rc == 1));
  CHECK(r.out.find("verdict: ") != std::string::npos);
  r = mf("--format report nielsen --group A5 --pair \"(1 2 3 4 5);(1 2 3)\" --to \"(1 2 3 4 5);(1 3 4 5 2)\"");
  CHECK(r.rc == 0);
  CHECK(has_line(r.out, "verdict: equivalent"));
}

TEST_CASE("corpus run is idempotent") {
  const auto manifest = scratch("manifest.txt");
  {
    std::ofstream m(manifest);
    m << "S3 exhaustive congruence\nA5 sample=5 noncongruence,totally-noncongruence\n";
  }
  const auto d1 = scratch("out1");
  const auto d2 = scratch("out2");
  const auto r1 = mf("--seed 3 corpus run --manifest '" + manifest.string() + "' --out '" + d1.string() + "'");
  const auto r2 =
      mf("--seed 3 --workers 4 corpus run --manifest '" + manifest.string() + "' --out '" + d2.string() + "'");
  CHECK(r1.rc == 0);
  CHECK(r1.out == r2.out);
  for (const char* f : {"S3.txt", "A5.txt"}) {
    std::ifstream a(d1 / f), b(d2 / f);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(!sa.str().empty());
    CHECK(sa.str() == sb.str());
  }
  std::filesystem::remove_all(d1);
  std::filesystem::remove_all(d2);
  std::filesystem::remove(manifest);
}
