#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "edcnc/cli.hpp"

namespace fs = std::filesystem;
using edcnc::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = fs::temp_directory_path() / ("edcnc_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(CliCodec, EncodeDefaultMatrix) {
  const auto r = call({"codec", "encode", "--streams", "101,110", "--matrix", "default"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "c1=1100 c2=10010\n");
}

TEST(CliCodec, EncodeCustomMatrix) {
  const auto r = call({"codec", "encode", "--streams", "10,11,01", "--matrix", "0,3,5"});
  EXPECT_EQ(r.out, "c1=1001101\n");
}

TEST(CliCodec, Decode) {
  const auto r = call({"codec", "decode", "--raw", "1:101", "--coded", "0,1:1100"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x2=110\n");
  const auto both = call({"codec", "decode", "--coded", "0,1:1100", "--coded", "0,2:10010"});
  EXPECT_EQ(both.out, "x1=101 x2=110\n");
}

TEST(CliCodec, ExitCodes) {
  EXPECT_EQ(call({"codec", "encode", "--streams", "10a"}).code, 1);
  EXPECT_EQ(call({"codec", "decode", "--coded", "0,1:1100"}).code, 2);
  EXPECT_EQ(call({"codec", "frobnicate"}).code, 1);
  EXPECT_EQ(call({}).code, 1);
}

TEST(CliCost, Table1) {
  const auto r = call({"cost", "--table1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "d_raw,l_f,d_total,d_enc,enc_cb_pct,min_dec_cb_pct,max_dec_cb_pct\n"
            "2,1,4,3,25.00,0.00,50.00\n"
            "3,1,5,3,40.00,33.33,66.67\n"
            "4,1,6,3,50.00,50.00,75.00\n"
            "5,1,7,3,57.14,60.00,80.00\n"
            "6,1,8,3,62.50,66.67,83.33\n");
}

TEST(CliCost, Sweep) {
  const auto r = call({"cost", "--sweep", "d_raw=2..6", "l_f=1..3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 16U);
  EXPECT_EQ(call({"cost", "--sweep", "d_raw=1..2", "l_f=1"}).code, 1);
  EXPECT_EQ(call({"cost", "--sweep", "d_raw=2..x"}).code, 1);
  EXPECT_EQ(call({"cost"}).code, 1);
}

TEST(CliCost, WritesToOutPath) {
  const auto path = (fs::temp_directory_path() / "edcnc_cli_table1.csv").string();
  EXPECT_EQ(call({"--out", path, "cost", "--table1"}).code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(count_lines(ss.str()), 6U);
}

TEST(CliLeakage, Summaries) {
  const auto fig3 = call({"leakage", "--topology", "fig3", "--len", "4"});
  EXPECT_EQ(fig3.code, 0);
  EXPECT_NE(fig3.out.find("consistent_count=8,full_break=false,stream_disclosed=false,bit_disclosed=true\n"),
            std::string::npos);
  EXPECT_NE(fig3.out.find("stream,bit,status,value\n"), std::string::npos);
  EXPECT_EQ(count_lines(fig3.out), 1U + 8U + 1U);
  const auto fig4 = call({"leakage", "--topology", "fig4", "--len", "2"});
  EXPECT_NE(fig4.out.find("full_break=true"), std::string::npos);
  EXPECT_EQ(call({"leakage", "--topology", "fig3", "--len", "16"}).code, 1);
}

TEST(CliSimulate, Fig3NoFailures) {
  const auto cfg = write_temp("fig3.json", R"({"topology":"fig3","streams":["10110011","01101100"]})");
  const auto r = call({"simulate", "--config", cfg});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "destination,received,recovered,d_dec,case,extra_round_trips\n"
            "5,3,true,1,a,0\n"
            "6,3,true,1,a,0\n");
}

TEST(CliSimulate, Fig3FailedLink) {
  const auto cfg = write_temp("fig3l.json", R"({"topology":"fig3","streams":["10110011","01101100"],
                                                "failed_links":["1->4"]})");
  const auto r = call({"--config", cfg, "simulate"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("5,2,true,2,c,0\n"), std::string::npos);
  EXPECT_NE(r.out.find("6,2,true,2,c,0\n"), std::string::npos);
}

TEST(CliSimulate, Fig4Relay4) {
  const auto cfg = write_temp("fig4.json", R"({"topology":"fig4","streams":["10110011","01101100","11100001"],
                                               "failed_relays":[4]})");
  const auto r = call({"simulate", "--config", cfg});
  EXPECT_EQ(r.code, 0);  // F-AP7 is beyond its tolerance
  EXPECT_NE(r.out.find("7,2,false,"), std::string::npos);
  EXPECT_NE(r.out.find("6,3,true,2,c,0\n"), std::string::npos);
}

TEST(CliSimulate, ConfigErrors) {
  EXPECT_EQ(call({"simulate", "--config", write_temp("u.json", R"({"topology":"fig3","stream":["1"]})")}).code, 1);
  EXPECT_EQ(call({"simulate", "--config", write_temp("m.json", "{not json")}).code, 1);
  EXPECT_EQ(call({"simulate", "--config", write_temp("n.json", R"({"topology":"fig3","streams":["10","01"],
                                                                 "failed_links":["1->9"]})")})
                .code,
            1);
  EXPECT_EQ(call({"simulate"}).code, 1);
}
