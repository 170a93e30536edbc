#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const char* kCli = MFDFA_CLI_PATH;
const char* kReference = MFDFA_REFERENCE_CSV;

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path cli_temp_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("mfdfa_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CmdResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_file = cli_temp_dir() / ("out" + std::to_string(counter));
  const fs::path err_file = cli_temp_dir() / ("err" + std::to_string(counter));
  ++counter;
  const std::string cmd = std::string(kCli) + " " + args + " >" +
                          out_file.string() + " 2>" + err_file.string();
  const int status = std::system(cmd.c_str());
  CmdResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

bool mentions_all(const std::string& text, const std::vector<std::string>& flags) {
  for (const auto& f : flags)
    if (text.find(f) == std::string::npos) {
      MESSAGE("missing flag in help: ", f);
      return false;
    }
  return true;
}

// Cascade fixture: strongly multifractal, so the default quadratic width is
// well defined.
fs::path fixture_wav() {
  static const fs::path wav = [] {
    const fs::path p = cli_temp_dir() / "fixture.wav";
    run_cli("synth --kind binomial --a 0.6 --length 16384 --seed 5 --rate 8192 --out " +
            p.string());
    return p;
  }();
  return wav;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

// ---------------------------------------------------------------------------
// help text documents every flag
// ---------------------------------------------------------------------------

TEST_CASE("every subcommand's --help exits 0 and documents its flags") {
  const std::vector<std::string> analysis_flags{
      "--q-min", "--q-max", "--q-step", "--scales-min", "--scales-max",
      "--n-scales", "--detrend-order", "--segmentation", "--width-method",
      "--config"};

  CmdResult top = run_cli("--help");
  CHECK(top.exit_code == 0);
  CHECK(mentions_all(top.out, {"analyze", "batch", "synth", "shuffle-test", "report"}));

  CmdResult analyze = run_cli("analyze --help");
  CHECK(analyze.exit_code == 0);
  auto analyze_flags = analysis_flags;
  analyze_flags.insert(analyze_flags.end(),
                       {"--clip-start", "--clip-length", "--parts", "--decimate",
                        "--format", "--out"});
  CHECK(mentions_all(analyze.out, analyze_flags));

  CmdResult batch = run_cli("batch --help");
  CHECK(batch.exit_code == 0);
  auto batch_flags = analysis_flags;
  batch_flags.insert(batch_flags.end(),
                     {"--clip-start", "--clip-length", "--parts", "--format",
                      "--out", "--summary", "--jobs"});
  CHECK(mentions_all(batch.out, batch_flags));

  CmdResult synth = run_cli("synth --help");
  CHECK(synth.exit_code == 0);
  CHECK(mentions_all(synth.out, {"--kind", "--length", "--a", "--beta", "--seed",
                                 "--rate", "--out"}));

  CmdResult shuffle = run_cli("shuffle-test --help");
  CHECK(shuffle.exit_code == 0);
  auto shuffle_flags = analysis_flags;
  shuffle_flags.insert(shuffle_flags.end(), {"--surrogates", "--seed"});
  CHECK(mentions_all(shuffle.out, shuffle_flags));

  CmdResult report = run_cli("report --help");
  CHECK(report.exit_code == 0);
  CHECK(mentions_all(report.out, {"--reference", "--format", "--out"}));
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

TEST_CASE("synth writes the requested number of samples deterministically") {
  const fs::path a = cli_temp_dir() / "synth_a.wav";
  const fs::path b = cli_temp_dir() / "synth_b.wav";
  CHECK(run_cli("synth --kind binomial --a 0.6 --length 65536 --seed 9 --out " +
                a.string()).exit_code == 0);
  CHECK(run_cli("synth --kind binomial --a 0.6 --length 65536 --seed 9 --out " +
                b.string()).exit_code == 0);
  CHECK(fs::file_size(a) == 44 + 2 * 65536);
  CHECK(slurp(a) == slurp(b));  // byte-identical outputs
}

TEST_CASE("synth validates parameters") {
  const fs::path out = cli_temp_dir() / "bad.wav";
  CHECK(run_cli("synth --kind binomial --a 1.5 --length 65536 --out " +
                out.string()).exit_code == 2);
  CHECK(run_cli("synth --kind nonsense --out " + out.string()).exit_code == 2);
  CHECK(run_cli("synth --kind white --length 65536").exit_code == 2);  // no --out
}

TEST_CASE("synth emits CSV series too") {
  const fs::path out = cli_temp_dir() / "series.csv";
  CHECK(run_cli("synth --kind white --length 256 --seed 4 --out " +
                out.string()).exit_code == 0);
  const std::string text = slurp(out);
  CHECK(std::count(text.begin(), text.end(), '\n') == 256);
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

TEST_CASE("analyze on a synthesized WAV yields one result row") {
  const CmdResult res = run_cli("analyze " + fixture_wav().string() + " --format csv");
  CHECK(res.exit_code == 0);
  CHECK(std::count(res.out.begin(), res.out.end(), '\n') == 2);  // header + row
  CHECK(res.out.find("label,n_samples,sample_rate_hz,width_method,W,") == 0);
  CHECK(res.out.find("fixture.wav,16384,8192,") != std::string::npos);
}

TEST_CASE("analyze exit codes distinguish validation from runtime errors") {
  CHECK(run_cli("analyze /no/such/file.wav").exit_code == 1);
  CHECK(run_cli("analyze " + fixture_wav().string() + " --q-min 5 --q-max 5")
            .exit_code == 2);
  CHECK(run_cli("analyze " + fixture_wav().string() + " --segmentation sideways")
            .exit_code == 2);
}

TEST_CASE("config file values apply under flags") {
  const fs::path cfg = cli_temp_dir() / "cfg.json";
  std::ofstream(cfg) << R"({"width_method": "endpoint_span", "q_max": 4})";
  const CmdResult with_cfg = run_cli("analyze " + fixture_wav().string() +
                                     " --config " + cfg.string() + " --format csv");
  CHECK(with_cfg.exit_code == 0);
  CHECK(with_cfg.out.find("endpoint_span") != std::string::npos);
  // flag beats config
  const CmdResult with_flag =
      run_cli("analyze " + fixture_wav().string() + " --config " + cfg.string() +
              " --width-method quadratic_fit --format csv");
  CHECK(with_flag.exit_code == 0);
  CHECK(with_flag.out.find("quadratic_fit") != std::string::npos);
}

TEST_CASE("identical analyze invocations write identical files") {
  const fs::path a = cli_temp_dir() / "res_a.csv";
  const fs::path b = cli_temp_dir() / "res_b.csv";
  const std::string base = "analyze " + fixture_wav().string() + " --format json --out ";
  CHECK(run_cli(base + a.string()).exit_code == 0);
  CHECK(run_cli(base + b.string()).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
}

// ---------------------------------------------------------------------------
// batch
// ---------------------------------------------------------------------------

TEST_CASE("empty manifest exits 0 with an empty result table") {
  const fs::path manifest = cli_temp_dir() / "empty.json";
  std::ofstream(manifest) << "[]";
  const CmdResult res = run_cli("batch " + manifest.string());
  CHECK(res.exit_code == 0);
  CHECK(res.out == "gharana,artist_id,generation,lineage,part_index,W,alpha0,quadA,quadB\n");
}

TEST_CASE("batch of one entry produces four rows; partial failure exits 3") {
  const fs::path dir = cli_temp_dir();
  run_cli("synth --kind powerlaw --length 32768 --seed 3 --rate 8192 --out " +
          (dir / "batch_clip.wav").string());
  const fs::path manifest = dir / "batch_manifest.json";
  std::ofstream(manifest) << R"([{"path": "batch_clip.wav", "gharana": "G",
    "artist_id": "a1", "generation": 1, "clip_start_s": 0.0}])";
  const fs::path out = dir / "batch_out.csv";
  const CmdResult ok = run_cli("batch " + manifest.string() +
                               " --clip-length 4 --width-method endpoint_span --out " +
                               out.string());
  CHECK(ok.exit_code == 0);
  const std::string table = slurp(out);
  CHECK(std::count(table.begin(), table.end(), '\n') == 5);

  const fs::path manifest2 = dir / "batch_manifest2.json";
  std::ofstream(manifest2) << R"([{"path": "batch_clip.wav", "gharana": "G",
    "artist_id": "a1", "generation": 1},
    {"path": "gone.wav", "gharana": "G", "artist_id": "a2", "generation": 2}])";
  const CmdResult partial = run_cli("batch " + manifest2.string() +
                                    " --clip-length 4 --width-method endpoint_span");
  CHECK(partial.exit_code == 3);
  CHECK(partial.err.find("gone.wav") != std::string::npos);
}

// ---------------------------------------------------------------------------
// shuffle-test
// ---------------------------------------------------------------------------

TEST_CASE("shuffle-test rejects zero surrogates") {
  CHECK(run_cli("shuffle-test " + fixture_wav().string() + " --surrogates 0")
            .exit_code == 2);
}

TEST_CASE("shuffle-test reports a verdict") {
  const CmdResult res =
      run_cli("shuffle-test " + fixture_wav().string() + " --surrogates 4 --seed 9");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("verdict") != std::string::npos);
  CHECK(res.out.find("W original") != std::string::npos);
}

TEST_CASE("long-range-correlated noise is called correlation_dominated") {
  const fs::path wav = cli_temp_dir() / "lrc.wav";
  CHECK(run_cli("synth --kind powerlaw --beta 0.8 --length 65536 --seed 7 --out " +
                wav.string()).exit_code == 0);
  const CmdResult res = run_cli("shuffle-test " + wav.string() + " --seed 1");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("correlation_dominated") != std::string::npos);
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

TEST_CASE("report over the bundled reference prints the published means") {
  const CmdResult res = run_cli("report " + std::string(kReference));
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("0.3825") != std::string::npos);  // agra_1
  CHECK(res.out.find("0.8950") != std::string::npos);  // kirana_5
  CHECK(res.out.find("0.4375") != std::string::npos);  // gwalior_4
  CHECK(res.out.find("0.7025") != std::string::npos);  // patiala_2
}

TEST_CASE("report rejects malformed CSV with exit 2") {
  const fs::path bad = cli_temp_dir() / "bad.csv";
  std::ofstream(bad) << "this,is,not\na,results,file\n";
  CHECK(run_cli("report " + bad.string()).exit_code == 2);
}

TEST_CASE("report --reference with zero matches notes it and exits 0") {
  const fs::path mine = cli_temp_dir() / "mine.csv";
  std::ofstream(mine)
      << "gharana,artist_id,generation,lineage,part_index,W,alpha0,quadA,quadB\n"
      << "Nowhere,x1,1,,1,0.5,1.0,-2,0\n";
  const CmdResult res =
      run_cli("report " + mine.string() + " --reference " + kReference);
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("0 matched") != std::string::npos);
}

TEST_CASE("report --reference flags a tampered reference with exit 2") {
  std::string text = slurp(kReference);
  text[text.size() - 2] = '8';
  const fs::path tampered = cli_temp_dir() / "tampered_ref.csv";
  std::ofstream(tampered, std::ios::binary) << text;
  const CmdResult res = run_cli("report " + std::string(kReference) +
                                " --reference " + tampered.string());
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("checksum") != std::string::npos);
}

TEST_SUITE_END();
