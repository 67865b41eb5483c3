#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "bhawkes/cli.hpp"
#include "bhawkes/config.hpp"
#include "bhawkes/errors.hpp"
#include "bhawkes/io.hpp"
#include "bhawkes/rng.hpp"

using namespace bhawkes;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "bhawkes");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("bhawkes_test_" + std::to_string(Rng(std::random_device{}()).next_u64()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ExperimentConfig random_config(Rng& rng) {
  ExperimentConfig c;
  c.params = {0.1 + 5 * rng.uniform(), 2 * rng.uniform(), 0.1 + 3 * rng.uniform(), 0.1 + 3 * rng.uniform(),
              3 * rng.uniform()};
  if (rng.bernoulli(0.5)) c.minus_params = ModelParams{1 + rng.uniform(), rng.uniform(), 2.0, 1.0, rng.uniform()};
  c.seed = rng.next_u64();
  c.horizon = 1000 * rng.uniform();
  c.stationary = rng.bernoulli(0.5);
  c.burn_in = rng.bernoulli(0.5) ? -1.0 : 30 * rng.uniform();
  c.lookback = 50 * rng.uniform();
  c.t_max = 1 + 99 * rng.uniform();
  c.grid_points = 1 + rng.next_u64() % 1000;
  c.n_paths = 100 + rng.next_u64() % 10000;
  c.scales.clear();
  for (int i = 0, n = 1 + int(rng.next_u64() % 4); i < n; ++i) c.scales.push_back(1 + long(rng.next_u64() % 500));
  c.t_grid.clear();
  double t = 0;
  for (int i = 0, n = 1 + int(rng.next_u64() % 4); i < n; ++i) c.t_grid.push_back(t += 0.1 + rng.uniform());
  const char* kinds[] = {"midprice", "inverse-depth", "geometric"};
  c.price_kind = kinds[rng.next_u64() % 3];
  c.alpha = rng.uniform();
  c.s0 = 0.5 + rng.uniform();
  c.sigma = 0.5 * rng.uniform();
  c.bin_width = rng.bernoulli(0.5) ? -1.0 : 100 * rng.uniform();
  c.out_dir = rng.bernoulli(0.5) ? "" : "out/" + std::to_string(rng.next_u64() % 100);
  c.output = rng.bernoulli(0.5) ? "" : "file.csv";
  return c;
}

} // namespace

TEST_CASE("format_double round-trips") {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double x = std::ldexp(rng.uniform() - 0.5, int(rng.next_u64() % 200) - 100);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("metadata line") {
  std::ostringstream os;
  write_metadata(os, {{"command", "simulate"}, {"seed", 7}});
  const std::string line = lines(os.str()).at(0);
  CHECK(line.rfind("# ", 0) == 0);
  const auto meta = parse_metadata(line);
  CHECK(meta.at("tool") == "bhawkes");
  CHECK(meta.at("version") == kToolkitVersion);
  CHECK(meta.at("seed") == 7);
  CHECK(parse_metadata("time,kind").is_null());
  CHECK(parse_metadata("# not json").is_null());
}

TEST_CASE("event logs survive a CSV round trip") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const EventLog log = seed % 2 ? simulate_path(kPaperExample, 30.0, seed)
                                  : simulate_stationary_path(ModelParams{2, 1, 3, 1, 1}, 30.0, 10.0, seed);
    std::stringstream ss;
    write_event_log_csv(ss, log, {{"command", "simulate"}});
    const EventLog back = read_event_log_csv(ss);
    CHECK(back.params == log.params);
    CHECK(back.seed == log.seed);
    CHECK(back.horizon == log.horizon);
    CHECK(back.burn_in == log.burn_in);
    CHECK(back.init == log.init);
    REQUIRE(back.events.size() == log.events.size());
    CHECK(back.events == log.events);
  }
}

TEST_CASE("event log reader rejects bad input") {
  std::istringstream no_meta("time,kind,lambda,gamma,n\n1.0,limit,1,1,0\n");
  CHECK_THROWS_AS(read_event_log_csv(no_meta), ConfigError);

  std::stringstream ss;
  write_event_log_csv(ss, simulate_path(kPaperExample, 5.0, 3), {});
  std::string text = ss.str();
  text += "6.0,teleport,1,1,1\n";
  std::istringstream bad_kind(text);
  CHECK_THROWS_AS(read_event_log_csv(bad_kind), ConfigError);
}

TEST_CASE("writers are deterministic and use the documented headers") {
  const EventLog log = simulate_path(kPaperExample, 10.0, 4);
  auto csv = [&](auto&& write) {
    std::ostringstream os;
    write(os);
    return os.str();
  };
  const std::string a = csv([&](std::ostream& os) { write_event_log_csv(os, log, {}); });
  CHECK(a == csv([&](std::ostream& os) { write_event_log_csv(os, simulate_path(kPaperExample, 10.0, 4), {}); }));
  CHECK(lines(a).at(1) == "time,kind,lambda,gamma,n");

  const auto grid = uniform_grid(10.0, 10);
  CHECK(lines(csv([&](std::ostream& os) { write_grid_csv(os, path_to_grid(log, grid), {}); })).at(1) ==
        "t,lambda,gamma,n");
  const ClusterSample cs = simulate_market_orders(kPaperExample, 10.0, 4);
  const auto orders = lines(csv([&](std::ostream& os) { write_order_times_csv(os, cs, {}); }));
  CHECK(orders.at(1) == "time");
  CHECK(orders.size() == cs.order_times.size() + 2);
  const std::vector<double> births{0.5, 1.5};
  const auto z = lines(csv([&](std::ostream& os) { write_z_path_csv(os, births, {}); }));
  CHECK(z.at(1) == "time,z");
  CHECK(z.size() == 5);
  CHECK(lines(csv([&](std::ostream& os) { write_moment_curves_csv(os, second_moments(kPaperExample, grid), {}); }))
            .at(1) == "t,ell,g,m,pbar,qbar,rbar,ubar,vbar,wbar,x,y");
  const std::vector<long> scales{2};
  const std::vector<double> tg{1.0};
  const ScalingReport r = run_scaling(kPaperExample, scales, 100, tg, 5);
  CHECK(lines(csv([&](std::ostream& os) { write_scaling_csv(os, r, {}); })).at(1) ==
        "m,t,n_paths,emp_mean,emp_var,predicted_var,ks");
  CHECK(to_json(r).at("scales").at(0).at("stats").size() == 1);
  const PricePath pp = simulate_price(kPaperExample, kPaperExample, PriceKind::Midprice, 1.0, 10.0, grid, 5);
  CHECK(lines(csv([&](std::ostream& os) { write_price_csv(os, pp, {}); })).at(1) == "t,price");
}

TEST_CASE("configs round-trip through JSON") {
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const ExperimentConfig c = random_config(rng);
    const auto text = to_json(c).dump();
    REQUIRE(config_from_json(nlohmann::json::parse(text)) == c);
  }
  CHECK(config_from_json(nlohmann::json::object()) == ExperimentConfig{});

  TempDir dir;
  const ExperimentConfig c = random_config(rng);
  save_config(c, (dir.path / "c.json").string());
  CHECK(load_config((dir.path / "c.json").string()) == c);
  CHECK_THROWS_AS(load_config((dir.path / "missing.json").string()), ConfigError);
}

TEST_CASE("config errors name the field") {
  auto message = [](const nlohmann::json& j) -> std::string {
    try {
      validate_config(config_from_json(j));
    } catch (const ValidationError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message({{"horizon", "long"}}).find("horizon") != std::string::npos);
  CHECK(message({{"params", {{"b", "x"}}}}).find("params.b") != std::string::npos);
  CHECK(message({{"params", {{"speed", 1}}}}).find("params.speed") != std::string::npos);
  CHECK(message({{"colour", 1}}).find("colour") != std::string::npos);
  CHECK(message({{"scales", {0}}}).find("scales") != std::string::npos);
  CHECK(message({{"t_grid", {2.0, 1.0}}}).find("t_grid") != std::string::npos);
  CHECK(message({{"horizon", -1.0}}).find("horizon") != std::string::npos);
  CHECK(message({{"params", {{"a", 5.0}}}}).find("5 >= 4") != std::string::npos);
  CHECK(message(nlohmann::json::object()).empty());
  CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), ConfigError);
}

TEST_CASE("cli: moments") {
  const auto r = run({"moments", "--preset", "paper-example", "--t-max", "50", "--points", "50"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 53);
  const auto meta = parse_metadata(ls[0]);
  CHECK(meta.at("command") == "moments");
  CHECK(meta.at("config").at("params").at("a") == 1.0);
  std::istringstream last(ls.back());
  std::vector<double> row;
  for (std::string cell; std::getline(last, cell, ',');) row.push_back(std::stod(cell));
  REQUIRE(row.size() == 12);
  CHECK(row[0] == 50.0);
  CHECK(row[9] / 50.0 == Approx(2.3016049383).epsilon(1e-6));
}

TEST_CASE("cli: simulate") {
  const auto empty = run({"simulate", "--horizon", "0"});
  CHECK(empty.code == 0);
  CHECK(lines(empty.out).size() == 2);

  const auto a = run({"simulate", "--horizon", "20", "--seed", "3"});
  const auto b = run({"simulate", "--horizon", "20", "--seed", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  std::istringstream is(a.out);
  const EventLog log = read_event_log_csv(is);
  CHECK(log.events == simulate_path(kPaperExample, 20.0, 3).events);

  const auto st = run({"simulate", "--horizon", "10", "--stationary", "--burn-in", "5"});
  CHECK(st.code == 0);
  std::istringstream sis(st.out);
  CHECK(read_event_log_csv(sis).burn_in == 5.0);

  CHECK(run({"simulate", "--horizon", "-1"}).code == 1);
}

TEST_CASE("cli: validation failures exit 1 with the reason") {
  const auto unstable = run({"simulate", "--a", "5"});
  CHECK(unstable.code == 1);
  CHECK(unstable.err.find("5 >= 4") != std::string::npos);
  CHECK(run({"simulate", "--b", "-1"}).code == 1);
  CHECK(run({"simulate", "--preset", "nonsense"}).code == 1);
  CHECK(run({"teleport"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"price", "--kind", "vwap"}).code == 1);
  CHECK(run({"scaling", "--n-paths", "10"}).code == 1);

  TempDir dir;
  const fs::path cfg = dir.path / "bad.json";
  std::ofstream(cfg) << R"({"params": {"lambda0": "fast"}})";
  const auto bad = run({"moments", "--config", cfg.string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("params.lambda0") != std::string::npos);
}

TEST_CASE("cli: config file and flag precedence") {
  TempDir dir;
  ExperimentConfig c;
  c.params = ModelParams{2, 1, 3, 1, 1};
  c.t_max = 10;
  c.grid_points = 5;
  save_config(c, (dir.path / "c.json").string());
  const auto r = run({"moments", "--config", (dir.path / "c.json").string(), "--points", "4"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  CHECK(ls.size() == 7);
  const auto meta = parse_metadata(ls[0]);
  CHECK(meta.at("config").at("params").at("lambda0") == 2.0);
  CHECK(meta.at("config").at("grid_points") == 4);
}

TEST_CASE("cli: output locations") {
  TempDir dir;
  const auto explicit_file = run({"cluster", "--horizon", "10", "-o", (dir.path / "o.csv").string()});
  CHECK(explicit_file.code == 0);
  CHECK(explicit_file.out.empty());
  CHECK(lines(slurp(dir.path / "o.csv")).at(1) == "time");

  CHECK(run({"moments", "--out-dir", dir.path.string(), "--points", "10"}).code == 0);
  CHECK(fs::exists(dir.path / "moments.csv"));

  const fs::path env_dir = dir.path / "env";
  fs::create_directories(env_dir);
  ::setenv("BHAWKES_OUT_DIR", env_dir.c_str(), 1);
  const auto via_env = run({"price", "--horizon", "10", "--points", "10"});
  ::unsetenv("BHAWKES_OUT_DIR");
  CHECK(via_env.code == 0);
  const auto price = lines(slurp(env_dir / "price.csv"));
  CHECK(price.size() == 13);
  CHECK(price.at(1) == "t,price");

  CHECK(run({"cluster", "--horizon", "10", "--z-path", (dir.path / "z.csv").string()}).code == 0);
  CHECK(lines(slurp(dir.path / "z.csv")).at(1) == "time,z");
  CHECK(run({"simulate", "--horizon", "10", "--grid-out", (dir.path / "g.csv").string()}).code == 0);
  CHECK(lines(slurp(dir.path / "g.csv")).at(1) == "t,lambda,gamma,n");
}

TEST_CASE("cli: estimate from logs") {
  TempDir dir;
  for (int i = 0; i < 2; ++i)
    REQUIRE(run({"simulate", "--horizon", "2000", "--seed", std::to_string(i), "-o",
                 (dir.path / ("log" + std::to_string(i) + ".csv")).string()})
                .code == 0);
  const auto r = run({"estimate", "--input", (dir.path / "log0.csv").string(), "--input",
                      (dir.path / "log1.csv").string(), "--bin-width", "5"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("meta").at("inputs").size() == 2);
  CHECK(j.at("estimates").at("bins") == 800);
  CHECK(std::abs(j.at("estimates").at("exec_ratio").get<double>() - 0.5) < 0.05);

  const auto short_run = run({"estimate", "--horizon", "100"});
  CHECK(short_run.code == 1);
}

TEST_CASE("cli: scaling formats") {
  const auto csv = run({"scaling", "--scales", "1,5", "--t-grid", "1,2", "--n-paths", "200", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(lines(csv.out).size() == 6);
  const auto js = run({"scaling", "--scales", "5", "--t-grid", "1", "--n-paths", "200", "--format", "json"});
  REQUIRE(js.code == 0);
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j.at("meta").at("command") == "scaling");
  CHECK(j.at("report").at("scales").at(0).at("stats").size() == 1);
  CHECK(run({"scaling", "--format", "xml"}).code == 1);
}

TEST_CASE("cli: price kinds") {
  const auto same = run({"price", "--horizon", "10", "--points", "5", "--same-streams"});
  REQUIRE(same.code == 0);
  for (std::size_t i = 2; i < lines(same.out).size(); ++i) {
    const auto l = lines(same.out)[i];
    CHECK(std::stod(l.substr(l.find(',') + 1)) == 0.0);
  }
  const auto geo = run({"price", "--kind", "geometric", "--alpha", "0.05", "--s0", "3", "--horizon", "5"});
  REQUIRE(geo.code == 0);
  const auto row = lines(geo.out).at(2);
  CHECK(std::stod(row.substr(row.find(',') + 1)) == 3.0);
  CHECK(run({"price", "--horizon", "0"}).code == 1);
}
