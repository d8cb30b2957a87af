#include "core/serialization.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "core/config.hpp"
#include "core/sumset.hpp"

namespace apxgrp {

using json = nlohmann::ordered_json;

namespace {

int64_t as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) {
    raise(ErrorCode::Parse, std::string(what) + " must be an integer");
  }
  return j.get<int64_t>();
}

GroupSpec parse_group(const json& j) {
  if (!j.is_object() || !j.contains("moduli") || !j.contains("rank")) {
    raise(ErrorCode::Parse, "group must carry \"moduli\" and \"rank\"");
  }
  const json& jm = j.at("moduli");
  if (!jm.is_array()) {
    raise(ErrorCode::Parse, "moduli must be an array");
  }
  std::vector<int64_t> moduli;
  for (const json& d : jm) {
    int64_t v = as_int(d, "modulus");
    if (v < 2) raise(ErrorCode::Parse, "each modulus must be at least 2");
    moduli.push_back(v);
  }
  int64_t rank = as_int(j.at("rank"), "rank");
  if (rank < 0) raise(ErrorCode::Parse, "rank must be nonnegative");
  try {
    return GroupSpec(std::move(moduli), rank);
  } catch (const Error& e) {
    raise(ErrorCode::Parse, e.what());
  }
}

PointSet parse_set_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("group") || !doc.contains("points")) {
    raise(ErrorCode::Parse, "set document must carry \"group\" and \"points\"");
  }
  GroupSpec spec = parse_group(doc.at("group"));
  const json& jp = doc.at("points");
  if (!jp.is_array()) {
    raise(ErrorCode::Parse, "points must be an array of coordinate arrays");
  }
  std::vector<GroupElement> elems;
  for (const json& row : jp) {
    if (!row.is_array() || row.size() != spec.width()) {
      raise(ErrorCode::Parse, "each point needs " +
                                  std::to_string(spec.width()) +
                                  " coordinates, torsion residues first");
    }
    std::vector<int64_t> coords;
    for (const json& v : row) coords.push_back(as_int(v, "coordinate"));
    elems.emplace_back(spec, std::move(coords));  // reduces torsion
  }
  return PointSet::from_elements(spec, elems);
}

json group_to_json(const GroupSpec& spec) {
  json g;
  g["moduli"] = spec.moduli();
  g["rank"] = spec.rank();
  return g;
}

json set_to_json(const PointSet& ps) {
  json doc;
  doc["group"] = group_to_json(ps.spec());
  json points = json::array();
  for (size_t i = 0; i < ps.size(); ++i) {
    Row r = ps.row(i);
    points.push_back(std::vector<int64_t>(r.begin(), r.end()));
  }
  doc["points"] = std::move(points);
  return doc;
}

json parse_text(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    raise(ErrorCode::Parse, "malformed JSON document");
  }
  return doc;
}

}  // namespace

PointSet parse_set_document(const std::string& json_text) {
  return parse_set_json(parse_text(json_text));
}

std::string set_to_json_text(const PointSet& ps) {
  return set_to_json(ps).dump(2);
}

std::string content_hash(const PointSet& ps) {
  uint64_t digest = hash_rows(ps.spec(), ps.data());
  char buf[32];
  snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
           static_cast<unsigned long long>(digest));
  return buf;
}

std::string certificate_to_json_text(const CoverCertificate& cert) {
  json doc;
  doc["version"] = cert.version;
  doc["set"] = set_to_json(cert.set);
  doc["set_hash"] = cert.set_hash;
  doc["r"] = cert.r;
  doc["h"] = cert.h;
  doc["cover"] = set_to_json(cert.cover);
  doc["method"] = cert.method;
  doc["verified"] = cert.verified;
  doc["lower_bound"] = cert.lower_bound;
  if (cert.paper_bound) doc["paper_bound"] = *cert.paper_bound;
  if (cert.khovanskii_c) doc["khovanskii_c"] = *cert.khovanskii_c;
  return doc.dump(2);
}

ParsedCertificate parse_certificate(const std::string& json_text) {
  json doc = parse_text(json_text);
  if (!doc.is_object() || !doc.contains("set") || !doc.contains("cover") ||
      !doc.contains("r") || !doc.contains("h")) {
    raise(ErrorCode::Parse,
          "certificate must carry \"set\", \"cover\", \"r\" and \"h\"");
  }
  ParsedCertificate out;
  out.set = parse_set_json(doc.at("set"));
  out.cover = parse_set_json(doc.at("cover"));
  out.r = as_int(doc.at("r"), "r");
  out.h = as_int(doc.at("h"), "h");
  return out;
}

std::string witness_to_json_text(const GroupElement& witness) {
  json doc;
  doc["witness"] = witness.coords();
  return doc.dump();  // compact: one witness point, one line
}

std::string hfold_document(const PointSet& input, int64_t h,
                           const PointSet& result) {
  json doc;
  doc["version"] = kVersion;
  doc["set"] = set_to_json(input);
  doc["h"] = h;
  doc["count"] = result.size();
  doc["result"] = set_to_json(result);
  return doc.dump(2);
}

std::string hfold_counts_document(const PointSet& input, int64_t h_max) {
  json doc;
  doc["version"] = kVersion;
  doc["set"] = set_to_json(input);
  json counts = json::array();
  for (int64_t h = 1; h <= h_max; ++h) {
    PointSet p = h_fold(input, h);
    counts.push_back(json{{"h", h}, {"count", p.size()}});
  }
  doc["counts"] = std::move(counts);
  return doc.dump(2);
}

std::string khovanskii_report(const PointSet& input,
                              const KhovanskiiData& data) {
  json doc;
  doc["version"] = kVersion;
  doc["set"] = set_to_json(input);
  doc["policy"] = data.policy;
  json pts = json::array();
  for (const auto& e : data.entries) {
    pts.push_back(json{{"p", e.point}, {"z", e.rep}, {"l1", e.l1}});
  }
  doc["points"] = std::move(pts);
  doc["m"] = data.m;
  doc["c"] = data.c;
  return doc.dump(2);
}

std::string minimal_report(const CoverCertificate& cert, bool optimal,
                           int64_t budget_used) {
  json doc = parse_text(certificate_to_json_text(cert));
  doc["size"] = cert.cover.size();
  doc["optimal"] = optimal;
  doc["nodes"] = budget_used;
  return doc.dump(2);
}

std::string scan_report(const PointSet& input, int64_t r, int64_t ell,
                        const ScanResult& scan) {
  json doc;
  doc["version"] = kVersion;
  doc["set"] = set_to_json(input);
  doc["r"] = r;
  doc["ell"] = ell;
  doc["h_max"] = scan.h_max;
  if (scan.h0) {
    doc["h0"] = *scan.h0;
  } else {
    doc["h0"] = nullptr;
  }
  doc["h0_valid_up_to_h_max_only"] = true;
  json rows = json::array();
  for (const auto& row : scan.rows) {
    json jr;
    jr["h"] = row.h;
    jr["greedy_size"] = row.greedy_size;
    if (row.minimal_size) {
      jr["minimal_size"] = *row.minimal_size;
      jr["minimal_optimal"] = row.minimal_optimal;
    } else {
      jr["minimal_size"] = nullptr;
    }
    jr["lower_bound"] = row.lower_bound;
    if (row.paper_bound) {
      jr["paper_bound"] = *row.paper_bound;
    } else {
      jr["paper_bound"] = nullptr;
    }
    rows.push_back(std::move(jr));
  }
  doc["table"] = std::move(rows);
  return doc.dump(2);
}

std::string scan_csv(const ScanResult& scan) {
  std::ostringstream os;
  os << "h,greedy_size,minimal_size,lower_bound,paper_bound\n";
  for (const auto& row : scan.rows) {
    os << row.h << "," << row.greedy_size << ",";
    if (row.minimal_size) os << *row.minimal_size;
    os << "," << row.lower_bound << ",";
    if (row.paper_bound) os << *row.paper_bound;
    os << "\n";
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(ErrorCode::Io, "cannot read " + path);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    raise(ErrorCode::Io, "cannot write " + path);
  }
  out << text;
  if (!out.good()) {
    raise(ErrorCode::Io, "write failed for " + path);
  }
}

}  // namespace apxgrp
