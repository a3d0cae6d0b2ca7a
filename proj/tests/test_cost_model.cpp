#include <sstream>

#include <gtest/gtest.h>

#include "edcnc/cost_model.hpp"

using namespace edcnc;

TEST(CostModel, EncryptionBenefit) {
  EXPECT_EQ(enc_cb(2, 1), Percent(25));
  EXPECT_NEAR(round2(enc_cb(5, 1)), 57.14, 1e-9);
  EXPECT_EQ(enc_cb(3, 1), Percent(40));
  EXPECT_EQ(enc_cb_from_counts(5, 3), Percent(40));
}

TEST(CostModel, ReducedAndUnreducedFormsAgreeExactly) {
  for (std::int64_t d = 2; d <= 50; ++d)
    for (std::int64_t f = 1; f <= 10; ++f)
      EXPECT_EQ(enc_cb(d, f), enc_cb_from_counts(total_streams(d, f), encrypted_streams(f))) << d << "," << f;
}

TEST(CostModel, DecryptionBenefit) {
  EXPECT_EQ(dec_cb(2, 2), Percent(0));
  EXPECT_NEAR(round2(dec_cb(3, 1)), 66.67, 1e-9);
  EXPECT_NEAR(round2(dec_cb(6, 2)), 66.67, 1e-9);
  EXPECT_EQ(dec_cb(3, 4), Percent(-100, 3));
}

TEST(CostModel, DecryptCountCases) {
  EXPECT_EQ(d_dec_for(LossCase::NoFailure, 1), 1);
  EXPECT_EQ(d_dec_for(LossCase::Otherwise, 1), 2);
  EXPECT_EQ(d_dec_for(LossCase::OneEncryptedLost, 3), 1);
}

TEST(CostModel, DomainErrors) {
  EXPECT_THROW(enc_cb(1, 1), Error);
  EXPECT_THROW(enc_cb(2, 0), Error);
  EXPECT_THROW(dec_cb(2, 0), Error);
}

TEST(CostModel, Table1) {
  const auto rows = table1();
  ASSERT_EQ(rows.size(), 5U);
  const double enc[] = {25, 40, 50, 57.14, 62.5};
  const double min_dec[] = {0, 33.33, 50, 60, 66.67};
  const double max_dec[] = {50, 66.67, 75, 80, 83.3};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].d_raw, static_cast<std::int64_t>(i + 2));
    EXPECT_EQ(rows[i].d_total, static_cast<std::int64_t>(i + 4));
    EXPECT_EQ(rows[i].d_enc, 3);
    EXPECT_NEAR(round2(rows[i].enc_cb_pct), enc[i], 0.05);
    EXPECT_NEAR(round2(rows[i].min_dec_cb_pct), min_dec[i], 0.05);
    EXPECT_NEAR(round2(rows[i].max_dec_cb_pct), max_dec[i], 0.05);
  }
  EXPECT_NEAR(round2(rows[4].max_dec_cb_pct), 83.33, 1e-9);
}

TEST(CostModel, SweepTrendsAndInvariants) {
  const auto rows = sweep(2, 12, 1, 4);
  ASSERT_EQ(rows.size(), 44U);
  auto at = [&](std::int64_t d, std::int64_t f) { return rows[static_cast<std::size_t>((d - 2) * 4 + (f - 1))]; };
  for (std::int64_t d = 2; d <= 12; ++d) {
    for (std::int64_t f = 1; f <= 4; ++f) {
      const auto r = at(d, f);
      EXPECT_GE(r.enc_cb_pct, Percent(0));
      EXPECT_LT(r.enc_cb_pct, Percent(100));
      EXPECT_GE(r.max_dec_cb_pct, r.min_dec_cb_pct);
      if (d > 2) {
        EXPECT_GT(r.enc_cb_pct, at(d - 1, f).enc_cb_pct);
        EXPECT_GE(r.min_dec_cb_pct, at(d - 1, f).min_dec_cb_pct);
        EXPECT_GE(r.max_dec_cb_pct, at(d - 1, f).max_dec_cb_pct);
      }
      if (f > 1) EXPECT_LT(r.enc_cb_pct, at(d, f - 1).enc_cb_pct);
    }
  }
  EXPECT_LT(at(3, 3).min_dec_cb_pct, Percent(0));
}

TEST(CostModel, CsvLayout) {
  std::ostringstream out;
  write_cost_csv(out, {cost_report(3, 3)});
  EXPECT_EQ(out.str(),
            "d_raw,l_f,d_total,d_enc,enc_cb_pct,min_dec_cb_pct,max_dec_cb_pct\n"
            "3,3,7,5,28.57,-33.33,66.67\n");
}
