// adtool: asymptotic density toolkit front end.
//
//   adtool density    EXPR
//   adtool intertwine SET_A SET_B
//   adtool refute     MAP SET_A SET_B
//   adtool transfer   MAP S [R]
//
// Exit codes: 0 pass, 1 bound/assertion failure, 2 usage or parse error.

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "adkit/commands.hpp"
#include "adkit/error.hpp"

namespace {

// Accepts "1000000", "1e6" and "10^6".
std::uint64_t parse_count(const std::string& text) {
  auto all_digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  auto power = [](std::uint64_t base, std::uint64_t exp) {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
      if (v > std::numeric_limits<std::uint64_t>::max() / base)
        throw adkit::ParseError("count '" + std::to_string(base) + "^" + std::to_string(exp) + "' overflows", 0);
      v *= base;
    }
    return v;
  };
  if (all_digits(text)) return std::stoull(text);
  for (const std::string sep : {"e", "E", "^"}) {
    const auto at = text.find(sep);
    if (at == std::string::npos) continue;
    const std::string lhs = text.substr(0, at), rhs = text.substr(at + 1);
    if (!all_digits(lhs) || !all_digits(rhs)) break;
    if (sep == "^") return power(std::stoull(lhs), std::stoull(rhs));
    return std::stoull(lhs) * power(10, std::stoull(rhs));
  }
  throw adkit::ParseError("malformed count '" + text + "'", 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic density toolkit"};
  app.require_subcommand(1);

  std::string horizon_text = "1000000";
  std::string format_text = "csv";
  std::string out_path;
  adkit::RunConfig config;

  app.add_option("--horizon", horizon_text, "largest n evaluated (e.g. 1000000, 1e6, 10^6)");
  app.add_option("--eps", config.eps_spec, "epsilon schedule geo(a,r): eps_k = a r^k");
  app.add_option("--depth", config.depth, "number of thresholds");
  app.add_option("--checkpoints", config.checkpoints_spec, "checkpoint schedule geo(theta,n0)");
  app.add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "output file (default: standard output)");

  std::string expr, set_a, set_b, map_expr;
  std::uint64_t s = 0;
  std::optional<std::uint64_t> r;

  auto* density = app.add_subcommand("density", "checkpoint table of A(n)/n");
  density->add_option("expr", expr, "set expression")->required();

  auto* intertwine = app.add_subcommand("intertwine", "splice two sets of equal density");
  intertwine->add_option("set_a", set_a)->required();
  intertwine->add_option("set_b", set_b)->required();

  auto* refute = app.add_subcommand("refute", "oscillating image construction for a map");
  refute->add_option("map", map_expr)->required();
  refute->add_option("set_a", set_a)->required();
  refute->add_option("set_b", set_b)->required();

  auto* transfer = app.add_subcommand("transfer", "probe d(f(A)) / lambda at r/s");
  transfer->add_option("map", map_expr)->required();
  transfer->add_option("s", s)->required();
  transfer->add_option("r", r);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return adkit::kExitUsage;
  }

  try {
    config.horizon = parse_count(horizon_text);
    config.format = format_text == "json" ? adkit::OutputFormat::kJson : adkit::OutputFormat::kCsv;

    adkit::CommandResult result;
    if (*density) {
      result = adkit::cmd_density(expr, config);
    } else if (*intertwine) {
      result = adkit::cmd_intertwine(set_a, set_b, config);
    } else if (*refute) {
      result = adkit::cmd_refute(map_expr, set_a, set_b, config);
    } else {
      result = adkit::cmd_transfer(map_expr, s, r, config);
    }

    const std::string text = adkit::render(result.table, config.format);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return adkit::kExitUsage;
      }
      file << text;
      for (const auto& [key, value] : result.table.meta)
        if (key == "exact_density" || key == "result" || key == "gap" || key == "lambda")
          std::cout << key << ": " << value << "\n";
      std::cout << "wrote " << result.table.rows.size() << " rows to " << out_path << "\n";
    }
    return result.exit_code;
  } catch (const adkit::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return adkit::kExitUsage;
  } catch (const adkit::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return adkit::kExitUsage;
  } catch (const adkit::Error& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return adkit::kExitBoundFailure;
  }
}
