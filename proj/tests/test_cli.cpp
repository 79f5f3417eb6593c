#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kCli = BURSTPOWER_CLI;
const fs::path kData = BURSTPOWER_TEST_DATA;

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("burstpower_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args, const std::string& tag = "out") {
    const std::string cmd = kCli.string() + " " + args + " > " + (scratch() / (tag + ".stdout")).string() + " 2> " +
                            (scratch() / (tag + ".stderr")).string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p;
}

std::string quick() { return " --t0 5 --t-min 0.05 --outer 60 --inner 5"; }

std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') out.push_back(line);
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

TEST_CASE("solve writes JSON and a summary line") {
    const fs::path spec = write("plateau.cfg", "gamma = 0.2\nn = 1\neps_out = 0.3\nrate = 1\npeak_power_dbw = 20\n");
    const fs::path out = scratch() / "plateau.json";
    REQUIRE(run("solve --problem fixed " + spec.string() + quick() + " --out " + out.string()) == 0);
    const auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc["best_avg_power"].get<double>() == doctest::Approx(4.48142).epsilon(0.02));
    CHECK(doc["best_policy"]["eps"].size() == 2);
    CHECK(slurp(scratch() / "out.stderr").find("P* =") != std::string::npos);
}

TEST_CASE("solve is deterministic for a fixed seed") {
    const fs::path spec = kData / "fixed_n3.cfg";
    const fs::path a = scratch() / "a.json";
    const fs::path b = scratch() / "b.json";
    REQUIRE(run("solve --problem variable " + spec.string() + quick() + " --seed 7 --out " + a.string()) == 0);
    REQUIRE(run("solve --problem variable " + spec.string() + quick() + " --seed 7 --out " + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    REQUIRE(run("solve --problem variable " + spec.string() + quick() + " --seed 7 --restarts 3 --out " + b.string()) == 0);
    CHECK(nlohmann::json::parse(slurp(b))["best_avg_power"].get<double>() <=
          nlohmann::json::parse(slurp(a))["best_avg_power"].get<double>());
}

TEST_CASE("solve exit codes") {
    const fs::path bad = write("bad.cfg", "r_min = 5\nr_max = 1\n");
    CHECK(run("solve --problem variable " + bad.string()) == 1);
    CHECK(slurp(scratch() / "out.stderr").find("r_min") != std::string::npos);

    const fs::path typo = write("typo.cfg", "gamma = 0.2\nepsout = 0.1\n");
    CHECK(run("solve " + typo.string()) == 1);
    CHECK(slurp(scratch() / "out.stderr").find(":2") != std::string::npos);

    const fs::path window = write("window.cfg", "eps_out = 0.05\nrate = 3\n");
    CHECK(run("solve --problem fixed " + window.string()) == 2);

    CHECK(run("solve --problem sideways " + (kData / "fixed_n1.cfg").string()) == 1);
    CHECK(run("solve /does/not/exist.cfg") == 1);
    CHECK(run("") == 1);
    CHECK(run("--help") == 0);
}

TEST_CASE("closed-form command") {
    const fs::path out = scratch() / "cf.json";
    REQUIRE(run("closed-form " + (kData / "fixed_n1.cfg").string() + " --out " + out.string()) == 0);
    const auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc["fixed"]["boundary"]["avg_power"].get<double>() == doctest::Approx(5.03686).epsilon(1e-5));
    CHECK(doc["fixed"]["region"] == "bursty packet loss dominant");

    const fs::path edge = write("edge.cfg", "eps_out = 0.2\n");
    REQUIRE(run("closed-form " + edge.string() + " --out " + out.string()) == 0);
    CHECK(nlohmann::json::parse(slurp(out))["fixed"]["boundary"]["avg_power"].get<double>() ==
          doctest::Approx(4.48142).epsilon(1e-6));

    CHECK(run("closed-form " + (kData / "fixed_n3.cfg").string()) == 1);
    CHECK(slurp(scratch() / "out.stderr").find("closed form defined only for N=1") != std::string::npos);
}

TEST_CASE("simulate command") {
    const fs::path policy = write("policy.json", R"({"eps": [0.225, 0.1], "rates": [1, 1]})");
    const fs::path out = scratch() / "sim.json";
    REQUIRE(run("simulate " + policy.string() + " --slots 200000 --seed 3 --validate --out " + out.string()) == 0);
    const auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc["report"]["slots"] == 200000);
    CHECK(doc["validation"]["max_abs_z"].get<double>() < 4.0);

    const fs::path zero = write("zero.json", R"({"eps": [0.3, 0.3], "rates": [0, 0]})");
    REQUIRE(run("simulate " + zero.string() + " --slots 1000 --out " + out.string()) == 0);
    CHECK(nlohmann::json::parse(slurp(out))["report"]["empirical_gamma"].get<double>() == 0.0);

    REQUIRE(run("simulate " + policy.string() + " --slots 1 --out " + out.string()) == 0);

    REQUIRE(run("simulate " + policy.string() + " --slots 5000 --replications 3 --out " + out.string()) == 0);
    CHECK(nlohmann::json::parse(slurp(out))["report"]["slots"] == 15000);

    CHECK(run("simulate " + write("broken.json", "{\"eps\": [0.2,").string()) == 1);
    CHECK(run("simulate " + write("short.json", R"({"eps": [0.2]})").string()) == 1);
    CHECK(run("simulate " + write("wrong.json", R"({"eps": [0.2, 0.1], "rates": [1, 1], "powers": [3, 3]})").string()) ==
          1);
}

TEST_CASE("solve output can be simulated directly") {
    const fs::path out = scratch() / "solved.json";
    REQUIRE(run("solve --problem fixed " + (kData / "fixed_n1.cfg").string() + quick() + " --out " + out.string()) == 0);
    REQUIRE(run("simulate " + out.string() + " --slots 100000 --validate", "sim") == 0);
    const auto doc = nlohmann::json::parse(slurp(scratch() / "sim.stdout"));
    CHECK(doc["policy"]["eps"].size() == 2);
}

TEST_CASE("sweep CSV is self-describing and ordered") {
    const fs::path out = scratch() / "sweep.csv";
    REQUIRE(run("sweep --axis n --values 1,2,3 --problem fixed " + (kData / "fixed_n3.cfg").string() + quick() +
                " --threads 2 --out " + out.string()) == 0);
    const std::string csv = slurp(out);
    REQUIRE(csv.rfind("# ", 0) == 0);
    const auto rows = data_lines(csv);
    REQUIRE(rows.size() == 3);

    // Header comment names the columns in order.
    std::string header;
    for (std::istringstream in(csv); std::getline(in, header);)
        if (header.rfind("# axis,", 0) == 0) break;
    const auto columns = split(header.substr(2), ',');

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto cells = split(rows[i], ',');
        REQUIRE(cells.size() == columns.size());
        auto col = [&](const std::string& name) {
            for (std::size_t c = 0; c < columns.size(); ++c)
                if (columns[c] == name) return cells[c];
            FAIL("missing column " << name);
            return std::string();
        };
        CHECK(std::stoi(col("n")) == static_cast<int>(i) + 1);
        CHECK(col("feasible") == "1");
        CHECK(split(col("eps"), ';').size() == i + 2);
        CHECK(!col("seed").empty());
        if (i == 0) CHECK(!col("cf_search_avg_power").empty());
        if (i > 0) CHECK(col("cf_search_avg_power").empty());

        // Re-run the row on its own from the echoed fields.
        const fs::path spec = write("row.cfg", "gamma = " + col("gamma") + "\nn = " + col("n") + "\neps_out = " +
                                                   col("eps_out") + "\nrate = " + col("rate") + "\nr_min = " +
                                                   col("r_min") + "\nr_max = " + col("r_max") + "\npeak_power_w = " +
                                                   col("peak_power_w") + "\nnoise_power = " + col("noise_power") +
                                                   "\nmean_fading_power = " + col("mean_fading_power") + "\nt0 = " +
                                                   col("t0") + "\nc_sa = " + col("c_sa") + "\nt_min = " + col("t_min") +
                                                   "\nouter_per_temp = " + col("outer_per_temp") +
                                                   "\nrate_inner = " + col("rate_inner") + "\nseed = " + col("seed") +
                                                   "\n");
        REQUIRE(run("solve --problem fixed " + spec.string(), "row") == 0);
        const auto doc = nlohmann::json::parse(slurp(scratch() / "row.stdout"));
        CHECK(doc["best_avg_power"].get<double>() == std::stod(col("solver_avg_power")));
    }
}

TEST_CASE("sweep range handling") {
    const std::string spec = (kData / "fixed_n1.cfg").string();
    CHECK(run("sweep --axis eps_out --range 0.3:0.1:0.1 " + spec) == 1);
    CHECK(run("sweep --axis eps_out --range 0.1:0.3 " + spec) == 1);
    CHECK(run("sweep --axis eps_out --range 0.1:0.3:0 " + spec) == 1);
    CHECK(run("sweep --axis power --values 1,2 " + spec) == 1);
    CHECK(run("sweep --axis eps_out " + spec) == 1);
    CHECK(run("sweep --axis eps_out --values 0.2,0.1,0.3 " + spec) == 1);

    REQUIRE(run("sweep --axis eps_out --range 0.3:0.1:-0.1 " + spec + quick(), "down") == 0);
    CHECK(data_lines(slurp(scratch() / "down.stdout")).size() == 3);

    REQUIRE(run("sweep --axis eps_out --values 0.1,1.5 " + spec + quick(), "mixed") == 0);
    const auto rows = data_lines(slurp(scratch() / "mixed.stdout"));
    REQUIRE(rows.size() == 2);
    CHECK(split(rows[1], ',')[3] == "0");
}
