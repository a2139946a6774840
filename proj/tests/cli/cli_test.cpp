// Drives the installed CLI binary end to end through a shell.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <sys/wait.h>

#include "support/tempdir.hpp"

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  std::cout << (ok ? "ok" : "FAIL") << " - " << what << "\n";
  if (!ok) ++failures;
}

int run(const std::string& command) {
  int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string taxonomy_text() {
  std::string text;
  auto chain = [&](const std::string& topic) {
    std::string prev = "root";
    for (int d = 0; d < 11; ++d) {
      std::string node = topic + "_s" + std::to_string(d);
      text += "E\t" + node + "\t" + prev + "\n";
      prev = node;
    }
    text += "E\t" + topic + "_a\t" + prev + "\nE\t" + topic + "_b\t" + prev + "\n";
  };
  chain("bear");
  chain("wolf");
  chain("fish");
  text += "T\tbear\tbear_a\nT\tgrizzly\tbear_b\nT\twolf\twolf_a\nT\tcoyote\twolf_b\n";
  text += "T\tfish\tfish_a\nT\tsalmon\tfish_b\n";
  return text;
}

}  // namespace

int main() {
  const std::string cli = SEMICRO_CLI_PATH;
  semicro::testing::TempDir dir;
  dir.write("tax.txt", taxonomy_text());
  dir.write("log.txt", "bear cave\ngrizzly den\nwolf pack\ncoyote howl\nfish tank\nsalmon run\n");
  const std::string base = cli + " run --input " + (dir.path() / "log.txt").string() +
                           " --taxonomy " + (dir.path() / "tax.txt").string();

  check(run(cli + " --help > /dev/null 2>&1") == 0, "--help exits 0");
  check(run(cli + " > /dev/null 2>&1") != 0, "missing subcommand is rejected");
  check(run(cli + " run --bogus-flag > /dev/null 2>&1") == 2, "unknown flag exits 2");

  const std::string out = (dir.path() / "out").string();
  check(run(base + " --k 2 --out " + out + " > /dev/null 2>&1") == 0, "run exits 0");
  check(std::filesystem::exists(dir.path() / "out/clusters.json"), "clusters.json written");
  check(std::filesystem::exists(dir.path() / "out/anonymized.tsv"), "anonymized.tsv written");
  check(std::filesystem::exists(dir.path() / "out/metrics.csv"), "metrics.csv written");
  check(std::filesystem::exists(dir.path() / "out/summary.json"), "summary.json written");

  check(run(cli + " run --input " + (dir.path() / "absent.txt").string() + " --taxonomy " +
            (dir.path() / "tax.txt").string() + " --out " + out + " > /dev/null 2>&1") == 1,
        "missing input exits 1");
  check(run(base + " --k 1 --out " + out + " > /dev/null 2>&1") == 2, "k below 2 exits 2");
  check(run(base + " --k 50 --out " + out + " > /dev/null 2>&1") == 3,
        "all-suppressed run exits 3");

  const std::string common = " --input " + (dir.path() / "log.txt").string() + " --taxonomy " +
                             (dir.path() / "tax.txt").string();
  check(run(cli + " ingest" + common + " > " + (dir.path() / "ingest.tsv").string() +
            " 2>/dev/null") == 0,
        "ingest exits 0");
  check(!dir.read("ingest.tsv").empty(), "ingest wrote records");
  check(run(cli + " distance" + common + " > /dev/null 2>&1") == 0, "distance exits 0");
  check(run(cli + " cluster" + common + " --k 2 --out " + out + " > /dev/null 2>&1") == 0,
        "cluster exits 0");
  check(run(cli + " metrics" + common + " --k 2 --out " + out + " > /dev/null 2>&1") == 0,
        "metrics exits 0");
  check(run(cli + " oracle" + common + " --k 2 > /dev/null 2>&1") == 0, "oracle exits 0");

  if (failures != 0) {
    std::cout << failures << " check(s) failed\n";
    return 1;
  }
  std::cout << "all cli checks passed\n";
  return 0;
}
