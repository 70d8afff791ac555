#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "suitegen/phenotype.hpp"

namespace suitegen {

namespace fs = std::filesystem;

namespace {

using Kind = ExternalRunnerError::Kind;

std::optional<fs::path> find_on_path(const std::string& program) {
  if (program.find('/') != std::string::npos) {
    if (::access(program.c_str(), X_OK) == 0) return fs::path(program);
    return std::nullopt;
  }
  const char* path_env = std::getenv("PATH");
  if (!path_env) return std::nullopt;
  std::stringstream dirs(path_env);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) dir = ".";
    fs::path candidate = fs::path(dir) / program;
    if (::access(candidate.c_str(), X_OK) == 0 && !fs::is_directory(candidate)) return candidate;
  }
  return std::nullopt;
}

/// Owns a fresh directory under the system temp dir for one invocation.
class TempDir {
 public:
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "suitegen-XXXXXX").string();
    if (!::mkdtemp(tmpl.data())) {
      throw ExternalRunnerError(Kind::RunnerFailed,
                                std::string("cannot create temp dir: ") + std::strerror(errno));
    }
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Runs argv in `cwd` with PYTHONPATH/COVERAGE_FILE set, output to `log`.
int spawn(const fs::path& exe, const std::vector<std::string>& argv, const fs::path& cwd,
          const fs::path& pythonpath, const fs::path& log) {
  std::string pp = pythonpath.string();
  if (const char* existing = std::getenv("PYTHONPATH"); existing && *existing) {
    pp += ":" + std::string(existing);
  }
  const std::string coverage_file = (cwd / ".coverage").string();

  const pid_t pid = ::fork();
  if (pid < 0) {
    throw ExternalRunnerError(Kind::RunnerFailed, std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    const int fd = ::open(log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd >= 0) {
      ::dup2(fd, STDOUT_FILENO);
      ::dup2(fd, STDERR_FILENO);
      ::close(fd);
    }
    if (::chdir(cwd.c_str()) != 0) ::_exit(127);
    ::setenv("PYTHONPATH", pp.c_str(), 1);
    ::setenv("COVERAGE_FILE", coverage_file.c_str(), 1);
    ::setenv("PYTHONDONTWRITEBYTECODE", "1", 1);
    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    ::execv(exe.c_str(), args.data());
    ::_exit(127);
  }
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) {
      throw ExternalRunnerError(Kind::RunnerFailed, "waitpid failed");
    }
  }
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
}

std::string tail(const std::string& text, std::size_t max = 800) {
  return text.size() <= max ? text : "..." + text.substr(text.size() - max);
}

}  // namespace

fs::path resolve_uut_dir(const UutMetadata& meta, const fs::path& base) {
  fs::path loc = meta.location.empty() ? fs::path(".") : fs::path(meta.location);
  if (loc.is_relative()) loc = base / loc;
  std::error_code ec;
  fs::path abs = fs::weakly_canonical(fs::absolute(loc), ec);
  return ec ? fs::absolute(loc) : abs;
}

CoverageReport parse_coverage_json(const std::string& json_text, const std::string& module) {
  using nlohmann::json;
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ExternalRunnerError(Kind::ReportUnparseable,
                              std::string("coverage report is not valid JSON: ") + e.what());
  }
  const std::string wanted = module + ".py";
  auto files = root.find("files");
  if (files == root.end() || !files->is_object()) {
    throw ExternalRunnerError(Kind::ReportUnparseable, "coverage report has no \"files\" table");
  }
  for (auto it = files->begin(); it != files->end(); ++it) {
    if (fs::path(it.key()).filename() != wanted) continue;
    const json& entry = it.value();
    CoverageReport report;
    try {
      for (int line : entry.at("executed_lines")) {
        report.covered_lines.insert(line);
        report.executable_lines.insert(line);
      }
      for (int line : entry.at("missing_lines")) report.executable_lines.insert(line);
    } catch (const json::exception& e) {
      throw ExternalRunnerError(Kind::ReportUnparseable,
                                "malformed entry for " + wanted + ": " + e.what());
    }
    return report;
  }
  throw ExternalRunnerError(Kind::ReportUnparseable, "coverage report has no entry for " + wanted);
}

CoverageReport run_external_coverage(const TestSuite& suite, const UutMetadata& meta,
                                     const RunnerConfig& config) {
  const auto exe = find_on_path(config.runner);
  if (!exe) {
    throw ExternalRunnerError(Kind::RunnerNotFound,
                              "test runner \"" + config.runner + "\" not found on PATH");
  }
  const fs::path uut_dir = resolve_uut_dir(meta, config.base_dir);
  const fs::path uut_file = uut_dir / (meta.file + ".py");
  if (!fs::is_regular_file(uut_file)) {
    throw ExternalRunnerError(Kind::UutMissing, "unit under test not found: " + uut_file.string());
  }

  TempDir tmp;
  const fs::path test_file = tmp.path() / ("test_" + meta.file + "_generated.py");
  const fs::path report_file = tmp.path() / "coverage.json";
  const fs::path log_file = tmp.path() / "runner.log";
  {
    std::ofstream out(test_file, std::ios::binary);
    out << render_suite(suite, meta);
  }

  std::vector<std::string> argv = {config.runner,
                                   "-q",
                                   "-p",
                                   "no:cacheprovider",
                                   "--rootdir=" + tmp.path().string(),
                                   "--cov=" + meta.file,
                                   "--cov-report=json:" + report_file.string()};
  argv.insert(argv.end(), config.extra_args.begin(), config.extra_args.end());
  argv.push_back(test_file.string());

  const int status = spawn(*exe, argv, tmp.path(), uut_dir, log_file);
  // 0: all passed, 1: some tests failed (expected: generated tests may
  // raise), 5: nothing collected. Anything else is a runner problem.
  if (status != 0 && status != 1 && status != 5) {
    throw ExternalRunnerError(Kind::RunnerFailed, "test runner exited with status " +
                                                      std::to_string(status) + ":\n" +
                                                      tail(read_file(log_file)));
  }
  if (!fs::is_regular_file(report_file)) {
    throw ExternalRunnerError(Kind::ReportMissing, "runner produced no coverage report:\n" +
                                                       tail(read_file(log_file)));
  }
  return parse_coverage_json(read_file(report_file), meta.file);
}

double measure_external_coverage(const TestSuite& suite, const UutMetadata& meta,
                                 const RunnerConfig& config) {
  const CoverageReport report = run_external_coverage(suite, meta, config);
  if (report.executable_lines.empty()) return 0.0;
  return report.statement_percent();
}

}  // namespace suitegen
