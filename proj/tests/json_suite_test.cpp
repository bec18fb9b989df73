#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "theta4/errors.hpp"
#include "theta4/json_io.hpp"
#include "theta4/suite.hpp"

namespace theta4 {
namespace {

const std::filesystem::path kData = THETA4_TEST_DATA_DIR;

TEST(JsonIo, CharacteristicForms) {
  const Characteristic c = Characteristic::from_bits({1, 0}, {1, 1});
  const Json j = to_json(c);
  EXPECT_EQ(j.dump(), R"({"a1":[1,0],"a2":[1,1]})");
  EXPECT_EQ(characteristic_from_json(j, 2), c);
  EXPECT_EQ(characteristic_from_json(Json::array({2, 3}), 2), c);
  EXPECT_EQ(parse_characteristic("2,3", 2), c);
  EXPECT_THROW(parse_characteristic("2;3", 2), InputError);
  EXPECT_THROW(parse_characteristic("4,0", 2), InputError);
  EXPECT_THROW(characteristic_from_json(j, 3), InputError);
}

// Serialization followed by parsing is the identity, for every
// characteristic and for seeded period matrices.
TEST(JsonIo, RoundTrips) {
  for (int g = 1; g <= 3; ++g) {
    for (const auto& c : enumerate_characteristics(g)) {
      ASSERT_EQ(characteristic_from_json(Json::parse(to_json(c).dump()), g), c);
    }
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto tau = random_tau(g, seed);
      ASSERT_EQ(period_matrix_from_json(Json::parse(canonical_dump(to_json(tau)))), tau);
    }
  }
}

TEST(JsonIo, PeriodMatrixErrors) {
  EXPECT_THROW(load_period_matrix(kData / "malformed_tau.json"), InputError);
  EXPECT_THROW(load_period_matrix(kData / "not_siegel.json"), InputError);
  EXPECT_THROW(load_period_matrix(kData / "does_not_exist.json"), InputError);
  EXPECT_THROW(period_matrix_from_json(Json::parse(R"({"g":1,"re":[[0]]})")), InputError);
  EXPECT_EQ(load_period_matrix(kData / "tau_g1_i.json").genus(), 1);
}

TEST(JsonIo, ParsePoint) {
  const Point z = parse_point("0.5,0.25;-1,2");
  ASSERT_EQ(z.size(), 2);
  EXPECT_EQ(z[0], Complex(0.5, 0.25));
  EXPECT_EQ(z[1], Complex(-1, 2));
  EXPECT_EQ(parse_point("3")[0], Complex(3, 0));
  EXPECT_THROW(parse_point("a,b"), InputError);
}

TEST(JsonIo, CanonicalDump) {
  const Json j = {{"b", 0.1}, {"a", {1, 2}}, {"c", {{"y", true}, {"x", nullptr}}}};
  EXPECT_EQ(canonical_dump(j),
            "{\n  \"a\": [1, 2],\n  \"b\": 0.10000000000000001,\n  \"c\": {\n    \"x\": null,\n"
            "    \"y\": true\n  }\n}\n");
  EXPECT_EQ(canonical_dump(Json(std::numeric_limits<double>::quiet_NaN())), "null\n");
}

TEST(JsonIo, AtomicWrite) {
  const auto path = std::filesystem::temp_directory_path() / "theta4_atomic_test.json";
  write_file_atomic(path, "{}\n");
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(text, "{}\n");
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);
}

TEST(Suite, ParseCorpusSources) {
  const CorpusSpec spec = load_corpus(kData / "standard_corpus.json");
  ASSERT_EQ(spec.entries.size(), 5u);
  EXPECT_EQ(spec.entries[0].tau.genus(), 1);
  EXPECT_EQ(spec.entries[1].tau, random_tau(2, 11, 1.0));
  EXPECT_EQ(spec.entries[4].tau.genus(), 2);
  EXPECT_EQ(spec.entries[3].expect.vanishing_nulls, 1);
  EXPECT_EQ(spec.settings.identity_samples, 3u);
}

TEST(Suite, CorpusValidation) {
  EXPECT_THROW(load_corpus(kData / "bad_corpus.json"), InputError);
  EXPECT_THROW(parse_corpus(Json::parse(R"({"entries":[{"label":"x","tau":{"kind":"random","g":1}},
                                                       {"label":"x","tau":{"kind":"random","g":1}}]})"),
                            kData),
               InputError);
  EXPECT_THROW(parse_corpus(Json::parse(R"({"entries":[{"label":"x","tau":{"kind":"nope"}}]})"), kData),
               InputError);
  EXPECT_THROW(parse_corpus(Json::parse(R"({"entries":[{"label":"x","tau":{"kind":"random","g":1},
                                                        "kappa0":[1,1]}]})"),
                            kData),
               InputError);
}

TEST(Suite, EmptyCorpus) {
  const RunReport report = run_suite(load_corpus(kData / "empty_corpus.json"));
  EXPECT_TRUE(report.entries.empty());
  EXPECT_EQ(exit_code(report), 0);
  EXPECT_EQ(to_json(report)["entries"], Json::array());
}

TEST(Suite, ExpectedFailuresCountAsPass) {
  const RunReport report = run_suite(load_corpus(kData / "standard_corpus.json"));
  EXPECT_EQ(report.rollup, EntryStatus::pass);
  for (const auto& e : report.entries) EXPECT_EQ(e.status, EntryStatus::pass) << e.label;
  const auto& diag = report.entries[3];
  ASSERT_TRUE(diag.report.has_value());
  EXPECT_FALSE(diag.report->theorem11_verdict);
  EXPECT_EQ(diag.report->dim - diag.report->fourth_power_rank, 1);
  EXPECT_TRUE(report.mmatrix.at(1).ok());
  EXPECT_TRUE(report.mmatrix.at(2).ok());
}

TEST(Suite, MismatchedExpectationFails) {
  const auto spec = parse_corpus(Json::parse(R"({"settings":{"samples":1},"entries":[
      {"label":"wrong","tau":{"kind":"diagonal","entries":[[0,1],[0,1]]},
       "expect":{"theorem12":true}}]})"),
                                 kData);
  const RunReport report = run_suite(spec);
  EXPECT_EQ(report.rollup, EntryStatus::fail);
  EXPECT_EQ(exit_code(report), 1);
}

TEST(Suite, DeterministicSerialization) {
  const auto spec = load_corpus(kData / "standard_corpus.json");
  const std::string first = canonical_dump(to_json(run_suite(spec)));
  const std::string second = canonical_dump(to_json(run_suite(spec)));
  EXPECT_EQ(first, second);
  EXPECT_EQ(first.find("timings"), std::string::npos);
}

}  // namespace
}  // namespace theta4
