#include <gtest/gtest.h>

#include <sstream>

#include "asymvol/cli.hpp"
#include "asymvol/volume.hpp"
#include "json.hpp"

using namespace asymvol;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(Cli, EvalExamples) {
  auto r = run({"eval", "--model", "blowup3", "--class", "2,-1", "--what", "vol"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "7 (closed_form)\n");
  EXPECT_EQ(run({"eval", "--class", "2,-1"}).out, "7 (closed_form)\n");
  EXPECT_EQ(run({"eval", "--model", "cutkosky_golden", "--class", "0,0,0"}).out,
            "-7/2 + 5/2*sqrt(5) (closed_form)\n");
  EXPECT_EQ(run({"eval", "--class", "0,0"}).out, "0 (closed_form)\n");
  auto h = run({"eval", "--class", "2,1", "--what", "hhat"});
  EXPECT_EQ(h.out, "hhat^0=8 hhat^1=0 hhat^2=1 hhat^3=0 (closed_form)\n");
}

TEST(Cli, EvalJson) {
  auto r = run({"eval", "--class", "2,-1", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value"]["exact"], "7");
  EXPECT_EQ(j["provenance"], "closed_form");
  auto c = nlohmann::json::parse(run({"eval", "--model", "cutkosky_golden", "--class", "0,0,0", "--format", "json"}).out);
  EXPECT_EQ(c["value"]["exact"], "-7/2 + 5/2*sqrt(5)");
  EXPECT_NEAR(std::stod(c["value"]["decimal"].get<std::string>()), 2.0901699437494742, 1e-15);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"eval", "--class", "1,-1", "--what", "ord", "--ray", "4"}).code, 1);
  EXPECT_EQ(run({"eval", "--model", "nosuch", "--class", "1"}).code, 2);
  EXPECT_EQ(run({"eval", "--bogus"}).code, 2);
  EXPECT_EQ(run({"grid", "--slice", "0,0;0,0;1,0;2,2"}).code, 2);
  EXPECT_EQ(run({"family", "--rule", "m1^2 thres"}).code, 2);
  EXPECT_EQ(run({"zariski", "--model", "blowup_surface", "--class", "-1,0"}).code, 1);
  EXPECT_EQ(run({}).code, 2);
  auto e = run({"eval", "--class", "1,-1", "--what", "ord", "--ray", "4"});
  EXPECT_NE(e.err.find("not-big"), std::string::npos);
}

TEST(Cli, Zariski) {
  auto r = run({"zariski", "--model", "blowup_surface", "--class", "2,3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "P = (2,0)\nN = (0,3) = 3*C0\nvol = 4 (closed_form)\n");
}

TEST(Cli, GridMatchesClosedForm) {
  auto r = run({"grid", "--model", "blowup2", "--slice", "-1,-1;3,0;0,3;24,24", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 1u + 25 * 25);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"i", "j", "c1", "c2", "vol", "vol_decimal"}));
  for (std::size_t k = 1; k < rows.size(); ++k) {
    Rat x = parse_rat(rows[k][2]), y = -parse_rat(rows[k][3]);
    Rat expect = x < 0 ? Rat(0) : y <= 0 ? Rat(x * x) : y <= x ? Rat(x * x - y * y) : Rat(0);
    EXPECT_EQ(parse_rat(rows[k][4]), expect) << rows[k][2] << "," << rows[k][3];
  }
}

TEST(Cli, JsonRoundTripsToCsv) {
  std::vector<std::string> base = {"grid", "--model", "blowup3", "--slice", "-1,-1;3,0;0,3;6,6", "--what", "vol,hhat"};
  auto csv = base, json = base;
  csv.insert(csv.end(), {"--format", "csv"});
  json.insert(json.end(), {"--format", "json"});
  auto c = run(csv), j = run(json);
  ASSERT_EQ(c.code, 0);
  ASSERT_EQ(j.code, 0);
  auto doc = nlohmann::json::parse(j.out);
  std::string rendered;
  auto line = [&](const nlohmann::json& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) rendered += (i ? "," : "") + cells[i].get<std::string>();
    rendered += "\n";
  };
  line(doc["columns"]);
  for (const auto& row : doc["rows"]) line(row);
  EXPECT_EQ(rendered, c.out);
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args = {"check", "--property", "log_concavity", "--n", "200", "--seed", "7", "--records"};
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run({"check", "--property", "log_concavity", "--n", "200", "--seed", "8", "--records"}).out);
  auto g1 = run({"grid", "--model", "cutkosky_golden", "--slice", "0,0,0;1,0,0;0,1,0;4,4", "--format", "json"});
  auto g2 = run({"grid", "--model", "cutkosky_golden", "--slice", "0,0,0;1,0,0;0,1,0;4,4", "--format", "json"});
  EXPECT_EQ(g1.out, g2.out);
}

TEST(Cli, Sweep) {
  auto r = run({"sweep", "--model", "cutkosky_golden", "--to", "1000", "--tolerance", "0.005"});
  EXPECT_EQ(r.code, 0) << r.err;
  auto f = run({"sweep", "--model", "cutkosky_golden", "--to", "10", "--tolerance", "0.005"});
  EXPECT_EQ(f.code, 1);
  auto t = run({"sweep", "--model", "blowup2", "--class", "1,1", "--to", "8", "--format", "csv"});
  EXPECT_EQ(t.code, 0);
}

TEST(Cli, Family) {
  auto r = run({"family", "--rule", "threshold m1+2m2", "--scan"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("max_second_difference: 0"), std::string::npos) << r.out;
  auto bad = run({"family", "--rule", "table", "--rank", "1"});
  EXPECT_EQ(bad.code, 2);
}

TEST(Cli, Check) {
  EXPECT_EQ(run({"check", "--property", "log_concavity", "--n", "1000", "--seed", "7"}).code, 0);
  EXPECT_EQ(run({"check", "--property", "chamber_fit", "--model", "blowup2"}).code, 0);
  EXPECT_EQ(run({"check", "--property", "chamber_fit", "--model", "cutkosky_golden", "--slice",
                 "1,0,0,0;0,1,0,0;0,0,1,0;8,8"})
                .code,
            1);
  EXPECT_EQ(run({"check", "--property", "nonsense"}).code, 2);
}
