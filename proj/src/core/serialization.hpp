#pragma once

#include <optional>
#include <string>

#include "core/group.hpp"
#include "core/khovanskii.hpp"
#include "core/verify.hpp"

namespace apxgrp {

/// Set documents: {"group": {"moduli": [...], "rank": n},
///                 "points": [[t_1..t_m, z_1..z_n], ...]}.
/// Torsion residues are reduced on input.
PointSet parse_set_document(const std::string& json_text);
std::string set_to_json_text(const PointSet& ps);

/// Deterministic digest of a canonical set, embedded in certificates.
std::string content_hash(const PointSet& ps);

std::string certificate_to_json_text(const CoverCertificate& cert);
struct ParsedCertificate {
  PointSet set;
  int64_t r = 0;
  int64_t h = 0;
  PointSet cover;
};
ParsedCertificate parse_certificate(const std::string& json_text);

std::string witness_to_json_text(const GroupElement& witness);

std::string hfold_document(const PointSet& input, int64_t h,
                           const PointSet& result);
std::string hfold_counts_document(const PointSet& input, int64_t h_max);

std::string khovanskii_report(const PointSet& input,
                              const KhovanskiiData& data);

std::string minimal_report(const CoverCertificate& cert, bool optimal,
                           int64_t budget_used);

std::string scan_report(const PointSet& input, int64_t r, int64_t ell,
                        const ScanResult& scan);
/// CSV columns: h,greedy_size,minimal_size,lower_bound,paper_bound with
/// minimal_size blank on rows where the exact search was skipped.
std::string scan_csv(const ScanResult& scan);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace apxgrp
