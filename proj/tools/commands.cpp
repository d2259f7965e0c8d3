#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "ranking_file.hpp"
#include "rgfair/adjust.hpp"
#include "rgfair/decimal.hpp"
#include "rgfair/errors.hpp"
#include "rgfair/fairtest.hpp"
#include "rgfair/mtable.hpp"
#include "rgfair/sim.hpp"
#include "rgfair/table_cache.hpp"

namespace rgfair::cli {
namespace {

struct GlobalOptions {
  bool noCache = false;
  std::string cacheDir;
};

struct TableOptions {
  std::int64_t k = 0;
  double p = 0.0;
  double alpha = 0.0;
  bool adjusted = false;
};

void addTableOptions(CLI::App& command, TableOptions& options) {
  command.add_option("--k", options.k, "Ranking length")->required()->check(CLI::PositiveNumber);
  command.add_option("--p", options.p, "Minimum proportion of protected candidates")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  command.add_option("--alpha", options.alpha, "Significance level")->required()->check(CLI::Range(0.0, 1.0));
  command.add_flag("--adjusted", options.adjusted, "Use the significance-adjusted table");
}

std::unique_ptr<TableCache> openCache(const GlobalOptions& global) {
  if (global.noCache) {
    return nullptr;
  }
  return std::make_unique<TableCache>(global.cacheDir.empty() ? TableCache::defaultDirectory()
                                                              : std::filesystem::path(global.cacheDir));
}

AdjustmentResult buildTable(const TableOptions& options, const GlobalOptions& global) {
  if (options.adjusted) {
    const auto cache = openCache(global);
    return adjustAlphaCached(cache.get(), options.k, options.p, options.alpha);
  }
  auto table = constructMTable(options.k, options.p, options.alpha);
  const double fail = failProbability(table);
  return AdjustmentResult{options.alpha, std::move(table), fail};
}

void printCsvTable(std::ostream& out, const AdjustmentResult& result, bool adjusted) {
  if (adjusted) {
    out << "# alpha_adjusted=" << formatProbability(result.alphaAdjusted) << '\n'
        << "# fail_probability=" << formatProbability(result.failProbability) << '\n';
  }
  out << "position,m\n";
  for (std::int64_t i = 1; i <= result.table.k(); ++i) {
    out << i << ',' << result.table.at(i) << '\n';
  }
}

void printHumanTable(std::ostream& out, const TableOptions& options, const AdjustmentResult& result) {
  out << "k=" << options.k << " p=" << formatProbability(options.p)
      << " alpha=" << formatProbability(options.alpha) << '\n';
  if (options.adjusted) {
    out << "alpha_adjusted=" << formatProbability(result.alphaAdjusted) << '\n'
        << "fail_probability=" << formatProbability(result.failProbability) << '\n';
  }
  out << "position      m\n";
  for (std::int64_t i = 1; i <= result.table.k(); ++i) {
    out << std::setw(8) << i << std::setw(7) << result.table.at(i) << '\n';
  }
}

int cmdMtable(const TableOptions& options, const std::string& format, const GlobalOptions& global,
              std::ostream& out) {
  const auto result = buildTable(options, global);
  if (format == "json") {
    out << serializeAdjustment(options.p, options.alpha, result);
  } else if (format == "csv") {
    printCsvTable(out, result, options.adjusted);
  } else {
    printHumanTable(out, options, result);
  }
  return kExitOk;
}

int cmdVerify(const TableOptions& options, const std::string& rankingPath, const GlobalOptions& global,
              std::ostream& out) {
  const auto ranking = readRankingFile(rankingPath);
  if (ranking.empty()) {
    throw InvalidParameter(rankingPath + ": ranking has no candidates");
  }
  const auto result = buildTable(options, global);
  const auto report = verify(ranking, result.table);
  if (report.passed) {
    out << "PASS\n";
    return kExitOk;
  }
  out << "FAIL first_violation=" << *report.firstViolationPosition << '\n';
  for (const auto& violation : report.violations) {
    out << "position=" << violation.position << " required=" << violation.required
        << " actual=" << violation.actual << '\n';
  }
  return kExitDomainFailure;
}

std::vector<Candidate> scoreSorted(const Ranking& ranking, bool expectProtected, const std::string& source) {
  std::vector<Candidate> sorted = ranking.items;
  for (const auto& candidate : sorted) {
    if (candidate.isProtected != expectProtected) {
      throw InvalidParameter(source + ": candidate '" + candidate.id + "' has protected=" +
                             (candidate.isProtected ? "1" : "0"));
    }
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
  return sorted;
}

void writeOutput(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << content;
  file.flush();
  if (!file) {
    throw std::runtime_error("cannot write " + path);
  }
}

int cmdRerank(const TableOptions& options, const std::string& protectedPath, const std::string& otherPath,
              const std::string& outPath, const GlobalOptions& global, std::ostream& out) {
  const auto protectedList = scoreSorted(readRankingFile(protectedPath), true, protectedPath);
  const auto otherList = scoreSorted(readRankingFile(otherPath), false, otherPath);
  const auto result = buildTable(options, global);
  const auto ranking = rerank(protectedList, otherList, result.table);
  std::ostringstream csv;
  writeRankingCsv(csv, ranking);
  writeOutput(outPath, csv.str(), out);
  return kExitOk;
}

struct SimulateOptions {
  std::vector<std::int64_t> kList;
  std::int64_t maxK = 0;
  double p = 0.5;
  double alpha = 0.1;
  std::int64_t trials = 10'000;
  std::uint64_t seed = 0;
  bool adjusted = false;
  unsigned threads = 1;
  std::string out;
  std::string format;
};

int cmdSimulate(const SimulateOptions& options, const GlobalOptions& global, std::ostream& out) {
  SimulationConfig config;
  if (!options.kList.empty()) {
    config.kValues = options.kList;
  }
  if (options.maxK > 0) {
    std::erase_if(config.kValues, [&](std::int64_t k) { return k > options.maxK; });
  }
  config.p = options.p;
  config.alpha = options.alpha;
  config.trials = options.trials;
  config.seed = options.seed;
  config.adjusted = options.adjusted;
  config.threads = options.threads;

  std::string format = options.format;
  if (format.empty()) {
    format = options.out.ends_with(".json") ? "json" : "csv";
  }
  const auto cache = config.adjusted ? openCache(global) : nullptr;
  const auto report = runCalibration(config, cache.get());
  writeOutput(options.out, format == "json" ? toJson(report) : toCsv(report), out);
  return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ranked group fairness tables, significance adjustment and calibration"};
  app.name("rgfair");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_flag("--no-cache", global.noCache, "Do not read or write the adjusted-table cache");
  app.add_option("--cache-dir", global.cacheDir, "Cache directory (default: $RGFAIR_CACHE_DIR or ~/.cache/rgfair)");

  TableOptions mtableOptions;
  std::string format = "table";
  auto* mtable = app.add_subcommand("mtable", "Print the table of minimum protected counts");
  addTableOptions(*mtable, mtableOptions);
  mtable->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));

  TableOptions verifyOptions;
  std::string rankingPath;
  auto* verifyCommand = app.add_subcommand("verify", "Test a ranking against the table (exit 0 pass, 1 fail)");
  addTableOptions(*verifyCommand, verifyOptions);
  verifyCommand->add_option("--ranking", rankingPath, "Ranking CSV (position,id,score,protected)")->required();

  TableOptions rerankOptions;
  std::string protectedPath;
  std::string otherPath;
  std::string rerankOut;
  auto* rerankCommand = app.add_subcommand("rerank", "Merge two candidate lists into a ranking that passes the table");
  addTableOptions(*rerankCommand, rerankOptions);
  rerankCommand->add_option("--protected", protectedPath, "Protected candidates CSV")->required();
  rerankCommand->add_option("--nonprotected", otherPath, "Non-protected candidates CSV")->required();
  rerankCommand->add_option("--out", rerankOut, "Output ranking CSV ('-' for stdout)")->required();

  SimulateOptions simulateOptions;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo rejection rates of fair rankings");
  simulate->add_option("--k-list", simulateOptions.kList, "Comma-separated ranking lengths")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  simulate->add_option("--max-k", simulateOptions.maxK, "Drop k values above this budget")->check(CLI::PositiveNumber);
  simulate->add_option("--p", simulateOptions.p, "Minimum proportion")->required()->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--alpha", simulateOptions.alpha, "Significance level")->required()->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--trials", simulateOptions.trials, "Rankings per k")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", simulateOptions.seed, "Generator seed");
  simulate->add_flag("--adjusted", simulateOptions.adjusted, "Test against the adjusted table");
  simulate->add_option("--threads", simulateOptions.threads, "Worker threads (0 = all cores)");
  simulate->add_option("--out", simulateOptions.out, "Report file ('-' or omitted for stdout)");
  simulate->add_option("--format", simulateOptions.format, "csv or json (default from --out extension)")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "rgfair: " << e.what() << '\n';
    if (const auto* selected = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << "run 'rgfair " << selected->get_name() << " --help' for usage\n";
    }
    return kExitUsage;
  }

  try {
    if (mtable->parsed()) {
      return cmdMtable(mtableOptions, format, global, out);
    }
    if (verifyCommand->parsed()) {
      return cmdVerify(verifyOptions, rankingPath, global, out);
    }
    if (rerankCommand->parsed()) {
      return cmdRerank(rerankOptions, protectedPath, otherPath, rerankOut, global, out);
    }
    return cmdSimulate(simulateOptions, global, out);
  } catch (const Infeasible& e) {
    err << "rgfair: infeasible: " << e.what() << '\n';
    return kExitDomainFailure;
  } catch (const ParseError& e) {
    err << "rgfair: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParameter& e) {
    err << "rgfair: invalid parameter: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "rgfair: " << e.what() << '\n';
    return kExitUsage;
  }
}

} // namespace rgfair::cli
