#pragma once

// Security cost benefit of selective encryption relative to encrypting (and
// decrypting) every stream. Values are exact rationals; rounding happens only
// when rendered.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "edcnc/error.hpp"

namespace edcnc {

using Percent = boost::rational<std::int64_t>;

inline double to_double(Percent p) { return boost::rational_cast<double>(p); }
inline double round2(Percent p) { return std::round(to_double(p) * 100.0) / 100.0; }

inline void check_shape(std::int64_t d_raw, std::int64_t l_f) {
  if (d_raw < 2 || l_f < 1) throw Error(ErrorCode::DomainError, "requires d_raw >= 2 and l_f >= 1");
}

constexpr std::int64_t total_streams(std::int64_t d_raw, std::int64_t l_f) { return d_raw + l_f + 1; }
constexpr std::int64_t encrypted_streams(std::int64_t l_f) { return l_f + 2; }

/// Reduced form 100 (D_raw - 1) / (D_raw + L_f + 1).
inline Percent enc_cb(std::int64_t d_raw, std::int64_t l_f) {
  check_shape(d_raw, l_f);
  return Percent(100 * (d_raw - 1), total_streams(d_raw, l_f));
}

/// Unreduced form 100 (D_total - D_enc) / D_total.
inline Percent enc_cb_from_counts(std::int64_t d_total, std::int64_t d_enc) {
  if (d_total <= 0 || d_enc < 0) throw Error(ErrorCode::DomainError, "invalid stream counts");
  return Percent(100 * (d_total - d_enc), d_total);
}

/// 100 (D_raw - D_dec) / D_raw, unclamped.
inline Percent dec_cb(std::int64_t d_raw, std::int64_t d_dec) {
  if (d_raw < 2 || d_dec < 1) throw Error(ErrorCode::DomainError, "requires d_raw >= 2 and d_dec >= 1");
  return Percent(100 * (d_raw - d_dec), d_raw);
}

enum class LossCase { NoFailure, OneEncryptedLost, Otherwise };

constexpr std::int64_t d_dec_for(LossCase c, std::int64_t l_f) {
  return c == LossCase::Otherwise ? l_f + 1 : 1;
}

struct CostReport {
  std::int64_t d_raw = 0;
  std::int64_t l_f = 0;
  std::int64_t d_total = 0;
  std::int64_t d_enc = 0;
  Percent enc_cb_pct;
  Percent min_dec_cb_pct;
  Percent max_dec_cb_pct;
};

inline CostReport cost_report(std::int64_t d_raw, std::int64_t l_f) {
  check_shape(d_raw, l_f);
  return {d_raw,
          l_f,
          total_streams(d_raw, l_f),
          encrypted_streams(l_f),
          enc_cb(d_raw, l_f),
          dec_cb(d_raw, d_dec_for(LossCase::Otherwise, l_f)),
          dec_cb(d_raw, d_dec_for(LossCase::NoFailure, l_f))};
}

/// One link failure tolerated, two to six broadcast streams.
inline std::vector<CostReport> table1() {
  std::vector<CostReport> rows;
  for (std::int64_t d = 2; d <= 6; ++d) rows.push_back(cost_report(d, 1));
  return rows;
}

inline std::vector<CostReport> sweep(std::int64_t d_raw_lo, std::int64_t d_raw_hi, std::int64_t l_f_lo,
                                     std::int64_t l_f_hi) {
  if (d_raw_lo > d_raw_hi || l_f_lo > l_f_hi) throw Error(ErrorCode::DomainError, "empty sweep range");
  std::vector<CostReport> rows;
  for (auto d = d_raw_lo; d <= d_raw_hi; ++d)
    for (auto f = l_f_lo; f <= l_f_hi; ++f) rows.push_back(cost_report(d, f));
  return rows;
}

inline void write_cost_csv(std::ostream& out, const std::vector<CostReport>& rows) {
  out << "d_raw,l_f,d_total,d_enc,enc_cb_pct,min_dec_cb_pct,max_dec_cb_pct\n";
  auto pct = [](Percent p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", round2(p));
    return std::string(buf);
  };
  for (const auto& r : rows) {
    out << r.d_raw << ',' << r.l_f << ',' << r.d_total << ',' << r.d_enc << ',' << pct(r.enc_cb_pct) << ','
        << pct(r.min_dec_cb_pct) << ',' << pct(r.max_dec_cb_pct) << '\n';
  }
}

}  // namespace edcnc
