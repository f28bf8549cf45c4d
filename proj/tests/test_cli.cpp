//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include <doctest.h>
#include <json.hpp>

#include "support/support.h"

#ifndef CHEMDIV_CLI
#error "CHEMDIV_CLI must be defined"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {
struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path()
                 / ("chemdiv_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write(const std::string &name, const std::string &text) {
  fs::path p = scratch() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

Run run(const std::string &args) {
  fs::path out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
  std::string cmd = std::string("\"") + CHEMDIV_CLI + "\" " + args + " > \""
                    + out.string() + "\" 2> \"" + err.string() + "\"";
  int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string q(const fs::path &p) {
  return "\"" + p.string() + "\"";
}

std::string lines(const std::vector<std::string> &v) {
  std::string s;
  for (const auto &x: v)
    s += x + "\n";
  return s;
}
}  // namespace

TEST_CASE("cli: usage errors exit 1, data errors exit 2") {
  CHECK(run("").code == 1);
  CHECK(run("divreport").code == 1);
  CHECK(run("nosuchcommand").code == 1);
  CHECK(run("validate /nonexistent/file.smi").code == 2);
  CHECK(run("validate " + q(write("empty.smi", ""))).code == 2);
}

TEST_CASE("cli: validate") {
  Run r = run("validate " + q(write("four.smi", "CCO\nc1ccccc1\nC1CC\nCC(=O)O\n")));
  CHECK(r.code == 0);
  CHECK(r.out.find("valid 3/4 = 0.75") != std::string::npos);

  Run p = run("validate " + q(write("samples.smi", lines(chemdiv::test::reference_samples()))));
  CHECK(p.code == 0);
  CHECK(p.out.find("valid 10/10") != std::string::npos);

  Run per = run("validate --per-line " + q(scratch() / "four.smi"));
  CHECK(per.code == 0);
  CHECK(per.out.find("ring") != std::string::npos);
}

TEST_CASE("cli: divreport") {
  fs::path single = write("single.smi", "CCO\n");
  Run s = run("divreport " + q(single));
  REQUIRE(s.code == 0);
  CHECK(json::parse(s.out)["value"] == 0.0);

  fs::path corpus = chemdiv::test::data_path("corpus.smi");
  Run in = run("divreport " + q(corpus));
  Run ex = run("divreport " + q(corpus) + " --metric external --against " + q(corpus)
               + " --subsample 0");
  REQUIRE(in.code == 0);
  REQUIRE(ex.code == 0);
  json ji = json::parse(in.out), je = json::parse(ex.out);
  CHECK(ji["metric"] == "internal_diversity");
  CHECK(ji["n_valid"] == 500);
  CHECK(je["value"].get<double>() == ji["value"].get<double>());

  // Byte-identical reruns, with a manifest next to the report.
  fs::path o1 = scratch() / "r1.json", o2 = scratch() / "r2.json";
  REQUIRE(run("divreport " + q(corpus) + " --subsample 100 --seed 4 --out " + q(o1)).code == 0);
  REQUIRE(run("divreport " + q(corpus) + " --subsample 100 --seed 4 --out " + q(o2)).code == 0);
  CHECK(slurp(o1) == slurp(o2));
  json man = json::parse(slurp(o1.string() + ".manifest.json"));
  CHECK(man["seed"] == 4);
  CHECK(man["command"] == "divreport");
  CHECK(json::parse(slurp(o1))["subsampled"] == true);

  CHECK(run("divreport " + q(corpus) + " --metric external").code == 1);
  CHECK(run("divreport " + q(corpus) + " --metric median").code == 1);
}

TEST_CASE("cli: challenge") {
  std::vector<std::string> nature = { "CCO", "c1ccccc1O", "CN1CCNCC1", "ClCCBr",
                                      "CC(=O)Nc1ccc(O)cc1" };
  fs::path nat = write("nature.smi", lines(nature));
  std::string tsv = "smiles\tp_active\n";
  for (const auto &s: nature)
    tsv += s + "\t0.9\n";
  std::vector<std::string> dup = { "CCCCCCO", "CCCCCCCO", "CCCCCCO", "CCCCCCCCO" };
  for (const auto &s: dup)
    tsv += s + "\t0.95\n";
  fs::path scores = write("scores.tsv", tsv);

  Run same = run("challenge " + q(nat) + " " + q(nat) + " --scores " + q(scores));
  REQUIRE(same.code == 0);
  json js = json::parse(same.out);
  CHECK(js["pass"] == true);
  CHECK(js["ratio"] == 1.0);
  CHECK(same.err.find("PASS") != std::string::npos);

  fs::path gen = write("dup.smi", lines(dup));
  Run fail = run("challenge " + q(gen) + " " + q(nat) + " --scores " + q(scores));
  REQUIRE(fail.code == 0);
  json jf = json::parse(fail.out);
  CHECK(jf["pass"] == false);
  CHECK(jf["ratio"].get<double>() < 0.5);
  CHECK(fail.err.find("FAIL") != std::string::npos);

  Run high = run("challenge " + q(nat) + " " + q(nat) + " --scores " + q(scores)
                 + " --threshold 0.99");
  REQUIRE(high.code == 0);
  json jh = json::parse(high.out);
  CHECK(jh["n_g"] == 0);
  CHECK(jh["pass"] == false);

  CHECK(run("challenge " + q(nat) + " " + q(nat) + " --scores " + q(scores)
            + " --score-col missing").code == 2);
}

TEST_CASE("cli: table and fingerprint") {
  fs::path nat = write("t.smi", "CCO\nc1ccccc1\nC1CC\n");
  fs::path scores = write("t.tsv", "smiles\tp_active\nCCO\t0.9\nc1ccccc1\t0.85\n");
  fs::path out = scratch() / "table.json";
  Run t = run("table " + q(nat) + " --scores " + q(scores) + " --out " + q(out));
  REQUIRE(t.code == 0);
  json jt = json::parse(slurp(out));
  REQUIRE(jt.is_array());
  CHECK(jt[0]["n_valid"] == 2);
  CHECK(jt[0]["prop_above_threshold"].get<double>() == doctest::Approx(2.0 / 3));

  fs::path cache = scratch() / "fp.bin";
  Run f = run("fingerprint " + q(nat) + " --out " + q(cache));
  CHECK(f.code == 0);
  CHECK(slurp(cache).substr(0, 4) == "CDFP");
}

TEST_CASE("cli: train and sample") {
  fs::path cfg = write("zero.cfg", "mode=toy\ncorpus=builtin:toy\nalphabet=ABCD_\nT=8\n"
                                   "order=2\nobjective=motif:AB\nepochs=0\n"
                                   "pretrain_epochs=10\neval_samples=50\n");
  fs::path dir = scratch() / "run0";
  Run t = run("train --config " + q(cfg) + " --out " + q(dir));
  REQUIRE(t.code == 0);
  std::istringstream reports(slurp(dir / "reports.jsonl"));
  std::vector<json> rows;
  for (std::string line; std::getline(reports, line);)
    rows.push_back(json::parse(line));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["phase"] == "pretrain");
  CHECK(fs::exists(dir / "checkpoint.bin"));
  CHECK(fs::exists(dir / "manifest.json"));

  std::string ck = q(dir / "checkpoint.bin");
  Run a = run("sample --checkpoint " + ck + " --n 20 --seed 3");
  Run b = run("sample --checkpoint " + ck + " --n 20 --seed 3");
  Run c = run("sample --checkpoint " + ck + " --n 20 --seed 4");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 20);

  CHECK(run("sample --checkpoint " + q(cfg)).code == 2);
  CHECK(run("train --config " + q(write("bad.cfg", "colour=red\n")) + " --out "
            + q(scratch() / "bad")).code == 2);
}

TEST_CASE("cli: plain RL raises the fraction above threshold") {
  std::string base = slurp(fs::path(chemdiv::test::data_path("../configs/toy_rl.cfg")));
  int rises = 0;
  for (int seed = 1; seed <= 5; ++seed) {
    fs::path cfg = write("rl" + std::to_string(seed) + ".cfg",
                         base + "epochs=8\nseed=" + std::to_string(seed) + "\n");
    fs::path dir = scratch() / ("rl" + std::to_string(seed));
    Run t = run("train --config " + q(cfg) + " --out " + q(dir));
    REQUIRE(t.code == 0);
    std::istringstream reports(slurp(dir / "reports.jsonl"));
    std::vector<json> rows;
    for (std::string line; std::getline(reports, line);)
      rows.push_back(json::parse(line));
    REQUIRE(rows.size() == 9);
    rises += rows.back()["prop_above_threshold"].get<double>()
             > rows[1]["prop_above_threshold"].get<double>();
  }
  CHECK(rises >= 3);
}
