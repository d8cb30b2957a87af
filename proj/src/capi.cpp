#include "apxgrp/apxgrp.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/config.hpp"
#include "core/cover.hpp"
#include "core/serialization.hpp"
#include "core/simplex.hpp"
#include "core/sumset.hpp"
#include "core/verify.hpp"

struct apxgrp_set {
  apxgrp::PointSet value;
};

namespace {

thread_local std::string t_last_error;

apxgrp_status map_code(apxgrp::ErrorCode code) {
  using apxgrp::ErrorCode;
  switch (code) {
    case ErrorCode::Parse:
      return APXGRP_ERR_PARSE;
    case ErrorCode::SpecMismatch:
      return APXGRP_ERR_SPEC_MISMATCH;
    case ErrorCode::Domain:
      return APXGRP_ERR_DOMAIN;
    case ErrorCode::Threshold:
      return APXGRP_ERR_THRESHOLD;
    case ErrorCode::Overflow:
      return APXGRP_ERR_OVERFLOW;
    case ErrorCode::Resource:
      return APXGRP_ERR_RESOURCE;
    case ErrorCode::Membership:
      return APXGRP_ERR_MEMBERSHIP;
    case ErrorCode::Validation:
      return APXGRP_ERR_VALIDATION;
    case ErrorCode::Falsified:
      return APXGRP_ERR_FALSIFIED;
    case ErrorCode::Io:
      return APXGRP_ERR_IO;
    case ErrorCode::Internal:
      return APXGRP_ERR_INTERNAL;
  }
  return APXGRP_ERR_INTERNAL;
}

template <typename F>
apxgrp_status guarded(F&& f) noexcept {
  try {
    f();
    t_last_error.clear();
    return APXGRP_OK;
  } catch (const apxgrp::Error& e) {
    t_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return APXGRP_ERR_RESOURCE;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return APXGRP_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown failure";
    return APXGRP_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool cond, const char* msg) {
  if (!cond) apxgrp::raise(apxgrp::ErrorCode::Domain, msg);
}

apxgrp::BuiltCover dispatch_build(const apxgrp::PointSet& A, int64_t r,
                                  int64_t h, const std::string& method) {
  using namespace apxgrp;
  if (method == "simplex") return build_cover_simplex(A, r, h);
  if (method == "main-zn") return build_cover_Zn(A, r, h);
  if (method == "abelian") return build_cover_abelian(A, r, h);
  if (method == "auto") {
    const GroupSpec& spec = A.spec();
    if (spec.pure_torsion()) return build_cover_abelian(A, r, h);
    if (spec.torsion_free()) return build_cover_Zn(A, r, h);
    return build_cover_abelian(A, r, h);
  }
  raise(ErrorCode::Domain,
        "unknown method \"" + method +
            "\" (expected auto, simplex, main-zn or abelian)");
}

}  // namespace

extern "C" {

const char* apxgrp_version(void) { return apxgrp::kVersion; }

const char* apxgrp_last_error(void) { return t_last_error.c_str(); }

void apxgrp_string_free(char* s) { std::free(s); }

apxgrp_status apxgrp_set_parse(const char* json_text, apxgrp_set** out) {
  return guarded([&] {
    require(json_text && out, "null argument");
    *out = new apxgrp_set{apxgrp::parse_set_document(json_text)};
  });
}

apxgrp_status apxgrp_set_read_file(const char* path, apxgrp_set** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new apxgrp_set{
        apxgrp::parse_set_document(apxgrp::read_text_file(path))};
  });
}

void apxgrp_set_free(apxgrp_set* set) { delete set; }

apxgrp_status apxgrp_set_to_json(const apxgrp_set* set, char** json_out) {
  return guarded([&] {
    require(set && json_out, "null argument");
    *json_out = dup_string(apxgrp::set_to_json_text(set->value));
  });
}

apxgrp_status apxgrp_set_card(const apxgrp_set* set, int64_t* card_out) {
  return guarded([&] {
    require(set && card_out, "null argument");
    *card_out = static_cast<int64_t>(set->value.size());
  });
}

apxgrp_status apxgrp_sumset(const apxgrp_set* a, const apxgrp_set* b,
                            apxgrp_set** out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = new apxgrp_set{apxgrp::sumset(a->value, b->value)};
  });
}

apxgrp_status apxgrp_hfold(const apxgrp_set* set, int64_t h,
                           apxgrp_set** out) {
  return guarded([&] {
    require(set && out, "null argument");
    *out = new apxgrp_set{apxgrp::h_fold(set->value, h)};
  });
}

apxgrp_status apxgrp_hfold_document(const apxgrp_set* set, int64_t h,
                                    char** json_out) {
  return guarded([&] {
    require(set && json_out, "null argument");
    apxgrp::PointSet result = apxgrp::h_fold(set->value, h);
    *json_out = dup_string(apxgrp::hfold_document(set->value, h, result));
  });
}

apxgrp_status apxgrp_hfold_counts(const apxgrp_set* set, int64_t h_max,
                                  char** json_out) {
  return guarded([&] {
    require(set && json_out, "null argument");
    require(h_max >= 1, "h_max must be at least 1");
    *json_out = dup_string(apxgrp::hfold_counts_document(set->value, h_max));
  });
}

apxgrp_status apxgrp_build_cover(const apxgrp_set* set, int64_t r, int64_t h,
                                 const char* method,
                                 char** certificate_json_out,
                                 char** witness_json_out) {
  return guarded([&] {
    require(set && method && certificate_json_out, "null argument");
    apxgrp::BuiltCover built =
        dispatch_build(set->value, r, h, std::string(method));
    // The certificate claims the set the construction certifies; for the
    // exposed methods that is the input set itself.
    apxgrp::CertifyOutcome outcome = apxgrp::certify(
        set->value, r, h, built.cover, built.plan.method,
        built.plan.paper_bound, built.plan.khovanskii_c);
    if (!outcome.verification.ok) {
      if (witness_json_out && outcome.verification.witness) {
        *witness_json_out = dup_string(
            apxgrp::witness_to_json_text(*outcome.verification.witness));
      }
      apxgrp::raise(apxgrp::ErrorCode::Falsified,
                    "constructed cover failed the exact containment check");
    }
    *certificate_json_out =
        dup_string(apxgrp::certificate_to_json_text(outcome.certificate));
  });
}

apxgrp_status apxgrp_verify_certificate(const char* certificate_json,
                                        char** witness_json_out) {
  return guarded([&] {
    require(certificate_json, "null argument");
    apxgrp::ParsedCertificate cert =
        apxgrp::parse_certificate(certificate_json);
    apxgrp::VerifyResult vr =
        apxgrp::verify_cover(cert.set, cert.r, cert.h, cert.cover);
    if (!vr.ok) {
      if (witness_json_out && vr.witness) {
        *witness_json_out =
            dup_string(apxgrp::witness_to_json_text(*vr.witness));
      }
      apxgrp::raise(apxgrp::ErrorCode::Falsified,
                    "certificate failed the exact containment check");
    }
  });
}

apxgrp_status apxgrp_verify_cover(const apxgrp_set* set, int64_t r, int64_t h,
                                  const apxgrp_set* cover,
                                  char** witness_json_out) {
  return guarded([&] {
    require(set && cover, "null argument");
    apxgrp::VerifyResult vr =
        apxgrp::verify_cover(set->value, r, h, cover->value);
    if (!vr.ok) {
      if (witness_json_out && vr.witness) {
        *witness_json_out =
            dup_string(apxgrp::witness_to_json_text(*vr.witness));
      }
      apxgrp::raise(apxgrp::ErrorCode::Falsified,
                    "cover failed the exact containment check");
    }
  });
}

apxgrp_status apxgrp_minimal_cover(const apxgrp_set* set, int64_t r, int64_t h,
                                   int64_t budget, char** report_json_out) {
  return guarded([&] {
    require(set && report_json_out, "null argument");
    apxgrp::MinimalResult m = apxgrp::minimal_cover(set->value, r, h, budget);
    apxgrp::CertifyOutcome outcome =
        apxgrp::certify(set->value, r, h, m.cover, "exact-minimal",
                        std::nullopt, std::nullopt);
    if (!outcome.verification.ok) {
      apxgrp::raise(apxgrp::ErrorCode::Internal,
                    "minimal cover failed its own containment check");
    }
    *report_json_out = dup_string(
        apxgrp::minimal_report(outcome.certificate, m.optimal, m.nodes));
  });
}

apxgrp_status apxgrp_scan_h0(const apxgrp_set* set, int64_t r, int64_t ell,
                             int64_t h_max, int exact, char** report_json_out,
                             char** csv_out) {
  return guarded([&] {
    require(set && report_json_out, "null argument");
    apxgrp::ScanResult scan =
        apxgrp::scan_h0(set->value, r, ell, h_max, exact != 0);
    *report_json_out =
        dup_string(apxgrp::scan_report(set->value, r, ell, scan));
    if (csv_out) {
      *csv_out = dup_string(apxgrp::scan_csv(scan));
    }
  });
}

apxgrp_status apxgrp_khovanskii(const apxgrp_set* set,
                                char** report_json_out) {
  return guarded([&] {
    require(set && report_json_out, "null argument");
    apxgrp::KhovanskiiData data = apxgrp::khovanskii_constant(set->value);
    *report_json_out =
        dup_string(apxgrp::khovanskii_report(set->value, data));
  });
}

}  // extern "C"
