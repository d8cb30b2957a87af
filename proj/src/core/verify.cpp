#include "core/verify.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "core/config.hpp"
#include "core/cover.hpp"
#include "core/serialization.hpp"
#include "core/sumset.hpp"

namespace apxgrp {

namespace {

void check_verify_args(const PointSet& A, int64_t r, int64_t h,
                       const PointSet& X) {
  A.require_nonempty("verify_cover");
  if (r < 2) raise(ErrorCode::Domain, "verification requires r >= 2");
  if (h < 1) raise(ErrorCode::Domain, "verification requires h >= 1");
  if (!X.empty() && !(X.spec() == A.spec())) {
    raise(ErrorCode::SpecMismatch, "cover and set live in different groups");
  }
}

template <typename Member>
VerifyResult verify_with(const PointSet& A, int64_t r, int64_t h,
                         const PointSet& X, const Member& member_of_hA) {
  PointSet rhA = h_fold(A, r * h);
  const GroupSpec& spec = A.spec();
  size_t w = spec.width();
  std::vector<int64_t> buf(w);
  std::vector<GroupElement> neg;
  neg.reserve(X.size());
  for (size_t i = 0; i < X.size(); ++i) {
    neg.push_back(negate_elem(X.element(i)));
  }
  for (size_t u = 0; u < rhA.size(); ++u) {
    Row target = rhA.row(u);
    bool covered = false;
    for (size_t i = 0; i < neg.size() && !covered; ++i) {
      add_rows(spec, target.data(), neg[i].coords().data(), buf.data());
      covered = member_of_hA(Row(buf));
    }
    if (!covered) {
      return VerifyResult{false, rhA.element(u)};
    }
  }
  return VerifyResult{true, std::nullopt};
}

}  // namespace

VerifyResult verify_cover(const PointSet& A, int64_t r, int64_t h,
                          const PointSet& X) {
  check_verify_args(A, r, h, X);
  PointSet hA = h_fold(A, h);
  PointIndex index(hA);
  return verify_with(A, r, h, X, [&](Row q) { return index.contains(q); });
}

VerifyResult verify_cover_sorted(const PointSet& A, int64_t r, int64_t h,
                                 const PointSet& X) {
  check_verify_args(A, r, h, X);
  PointSet hA = h_fold(A, h);
  return verify_with(A, r, h, X, [&](Row q) { return hA.contains(q); });
}

int64_t lower_bound_size(const PointSet& A, int64_t r, int64_t h) {
  A.require_nonempty("lower_bound");
  if (r < 2) raise(ErrorCode::Domain, "lower_bound requires r >= 2");
  if (h < 1) raise(ErrorCode::Domain, "lower_bound requires h >= 1");
  PointSet hA = h_fold(A, h);
  PointSet rhA = h_fold(A, r * h);
  int64_t num = static_cast<int64_t>(rhA.size());
  int64_t den = static_cast<int64_t>(hA.size());
  return (num + den - 1) / den;
}

namespace {

struct CoverInstance {
  PointSet universe;            // rhA, canonical
  PointSet translate_set;       // hA
  PointSet candidates;          // rhA - hA
  std::vector<GroupElement> candidate_shift;  // candidate rows as elements
};

CoverInstance make_instance(const PointSet& A, int64_t r, int64_t h,
                            bool exact) {
  CoverInstance inst;
  inst.translate_set = h_fold(A, h);
  inst.universe = h_fold(A, r * h);
  if (exact &&
      static_cast<int64_t>(inst.universe.size()) > limits().universe_cap) {
    raise(ErrorCode::Resource,
          "cover universe exceeds the cap; only greedy and the counting "
          "bound are available at this size");
  }
  inst.candidates = difference_set(inst.universe, inst.translate_set);
  __int128 work = static_cast<__int128>(inst.candidates.size()) *
                  static_cast<__int128>(inst.translate_set.size());
  if (work > limits().greedy_work_cap) {
    raise(ErrorCode::Resource, "cover search work exceeds the cap");
  }
  return inst;
}

// Uncovered-point count of candidate x, i.e. |(x + hA) ∩ uncovered|.
int64_t coverage_count(const CoverInstance& inst, const PointIndex& universe,
                       Row x, const std::vector<uint8_t>& covered) {
  const GroupSpec& spec = inst.universe.spec();
  size_t w = spec.width();
  std::vector<int64_t> buf(w);
  int64_t n = 0;
  for (size_t t = 0; t < inst.translate_set.size(); ++t) {
    add_rows(spec, x.data(), inst.translate_set.row(t).data(), buf.data());
    size_t idx = universe.find(Row(buf));
    if (idx != PointSet::npos && !covered[idx]) ++n;
  }
  return n;
}

void mark_covered(const CoverInstance& inst, const PointIndex& universe,
                  Row x, std::vector<uint8_t>& covered, size_t& remaining) {
  const GroupSpec& spec = inst.universe.spec();
  size_t w = spec.width();
  std::vector<int64_t> buf(w);
  for (size_t t = 0; t < inst.translate_set.size(); ++t) {
    add_rows(spec, x.data(), inst.translate_set.row(t).data(), buf.data());
    size_t idx = universe.find(Row(buf));
    if (idx != PointSet::npos && !covered[idx]) {
      covered[idx] = 1;
      --remaining;
    }
  }
}

}  // namespace

PointSet greedy_cover(const PointSet& A, int64_t r, int64_t h) {
  A.require_nonempty("greedy_cover");
  if (r < 2) raise(ErrorCode::Domain, "greedy_cover requires r >= 2");
  if (h < 1) raise(ErrorCode::Domain, "greedy_cover requires h >= 1");
  CoverInstance inst = make_instance(A, r, h, /*exact=*/false);
  PointIndex universe(inst.universe);
  std::vector<uint8_t> covered(inst.universe.size(), 0);
  size_t remaining = inst.universe.size();

  // Lazy greedy: keys only shrink, so a popped entry whose recomputed
  // coverage matches its key is the max; index order settles ties.
  struct Entry {
    int64_t cov;
    size_t idx;
  };
  auto cmp = [](const Entry& a, const Entry& b) {
    if (a.cov != b.cov) return a.cov < b.cov;
    return a.idx > b.idx;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  for (size_t i = 0; i < inst.candidates.size(); ++i) {
    int64_t cov =
        coverage_count(inst, universe, inst.candidates.row(i), covered);
    if (cov > 0) heap.push(Entry{cov, i});
  }
  std::vector<int64_t> chosen_rows;
  size_t w = inst.universe.spec().width();
  while (remaining > 0) {
    if (heap.empty()) {
      raise(ErrorCode::Internal, "greedy ran out of useful candidates");
    }
    Entry top = heap.top();
    heap.pop();
    Row x = inst.candidates.row(top.idx);
    int64_t fresh = coverage_count(inst, universe, x, covered);
    if (fresh <= 0) continue;
    if (fresh == top.cov) {
      chosen_rows.insert(chosen_rows.end(), x.begin(), x.end());
      mark_covered(inst, universe, x, covered, remaining);
    } else {
      heap.push(Entry{fresh, top.idx});
    }
  }
  (void)w;
  return PointSet::from_rows(A.spec(), std::move(chosen_rows));
}

namespace {

struct BranchAndBound {
  const CoverInstance& inst;
  std::vector<std::vector<uint32_t>> coverage;    // candidate -> universe ids
  std::vector<std::vector<uint32_t>> coverers;    // universe id -> candidates
  size_t universe_n;
  int64_t max_cov = 1;
  int64_t budget;
  int64_t nodes = 0;
  bool exhausted = false;

  std::vector<uint32_t> best;   // candidate indices of the incumbent
  size_t best_size = SIZE_MAX;

  std::vector<uint8_t> covered;
  size_t remaining = 0;
  std::vector<uint32_t> chosen;

  explicit BranchAndBound(const CoverInstance& inst_, int64_t budget_)
      : inst(inst_), universe_n(inst_.universe.size()), budget(budget_) {}

  void prepare() {
    const GroupSpec& spec = inst.universe.spec();
    size_t w = spec.width();
    PointIndex universe(inst.universe);
    std::vector<int64_t> buf(w);
    coverage.resize(inst.candidates.size());
    coverers.resize(universe_n);
    __int128 stored = 0;
    for (size_t i = 0; i < inst.candidates.size(); ++i) {
      Row x = inst.candidates.row(i);
      for (size_t t = 0; t < inst.translate_set.size(); ++t) {
        add_rows(spec, x.data(), inst.translate_set.row(t).data(), buf.data());
        size_t idx = universe.find(Row(buf));
        if (idx != PointSet::npos) {
          coverage[i].push_back(static_cast<uint32_t>(idx));
        }
      }
      std::sort(coverage[i].begin(), coverage[i].end());
      coverage[i].erase(std::unique(coverage[i].begin(), coverage[i].end()),
                        coverage[i].end());
      stored += coverage[i].size();
      if (stored > limits().bb_work_cap) {
        raise(ErrorCode::Resource, "exact cover table exceeds the cap");
      }
      max_cov = std::max<int64_t>(max_cov,
                                  static_cast<int64_t>(coverage[i].size()));
      for (uint32_t u : coverage[i]) {
        coverers[u].push_back(static_cast<uint32_t>(i));
      }
    }
    covered.assign(universe_n, 0);
    remaining = universe_n;
  }

  bool lex_less(const std::vector<uint32_t>& a,
                const std::vector<uint32_t>& b) const {
    // candidate indices follow canonical element order
    std::vector<uint32_t> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(),
                                        sb.end());
  }

  void offer(const std::vector<uint32_t>& cand) {
    if (cand.size() < best_size ||
        (cand.size() == best_size && lex_less(cand, best))) {
      best = cand;
      best_size = cand.size();
    }
  }

  void apply(uint32_t ci, std::vector<uint32_t>& newly) {
    for (uint32_t u : coverage[ci]) {
      if (!covered[u]) {
        covered[u] = 1;
        newly.push_back(u);
        --remaining;
      }
    }
  }

  void undo(const std::vector<uint32_t>& newly) {
    for (uint32_t u : newly) {
      covered[u] = 0;
      ++remaining;
    }
  }

  void dfs() {
    if (exhausted) return;
    if (++nodes > budget) {
      exhausted = true;
      return;
    }
    if (remaining == 0) {
      offer(chosen);
      return;
    }
    size_t need =
        (remaining + static_cast<size_t>(max_cov) - 1) / max_cov;
    if (chosen.size() + need > best_size) return;
    // branch on the uncovered point with the fewest covering candidates
    size_t pick = SIZE_MAX;
    size_t pick_count = SIZE_MAX;
    for (size_t u = 0; u < universe_n; ++u) {
      if (covered[u]) continue;
      size_t cnt = coverers[u].size();
      if (cnt < pick_count) {
        pick_count = cnt;
        pick = u;
        if (cnt <= 1) break;
      }
    }
    if (pick == SIZE_MAX) {
      raise(ErrorCode::Internal, "lost track of an uncovered point");
    }
    for (uint32_t ci : coverers[pick]) {
      std::vector<uint32_t> newly;
      apply(ci, newly);
      if (!newly.empty()) {
        chosen.push_back(ci);
        dfs();
        chosen.pop_back();
      }
      undo(newly);
      if (exhausted) return;
    }
  }
};

}  // namespace

MinimalResult minimal_cover(const PointSet& A, int64_t r, int64_t h,
                            int64_t budget) {
  A.require_nonempty("minimal_cover");
  if (r < 2) raise(ErrorCode::Domain, "minimal_cover requires r >= 2");
  if (h < 1) raise(ErrorCode::Domain, "minimal_cover requires h >= 1");
  if (budget <= 0) budget = limits().default_bb_budget;
  CoverInstance inst = make_instance(A, r, h, /*exact=*/true);

  BranchAndBound bb(inst, budget);
  bb.prepare();

  // Greedy incumbent keeps the search bounded from the start.
  PointSet seed = greedy_cover(A, r, h);
  std::vector<uint32_t> seed_ids;
  for (size_t i = 0; i < seed.size(); ++i) {
    size_t idx = inst.candidates.index_of(seed.row(i));
    if (idx == PointSet::npos) {
      raise(ErrorCode::Internal, "greedy chose an unknown candidate");
    }
    seed_ids.push_back(static_cast<uint32_t>(idx));
  }
  bb.offer(seed_ids);

  bb.dfs();

  std::vector<int64_t> rows;
  size_t w = A.spec().width();
  for (uint32_t ci : bb.best) {
    Row x = inst.candidates.row(ci);
    rows.insert(rows.end(), x.begin(), x.end());
  }
  (void)w;
  MinimalResult out;
  out.cover = PointSet::from_rows(A.spec(), std::move(rows));
  out.optimal = !bb.exhausted;
  out.nodes = bb.nodes;
  return out;
}

ScanResult scan_h0(const PointSet& A, int64_t r, int64_t ell, int64_t h_max,
                   bool exact) {
  A.require_nonempty("scan_h0");
  if (r < 2) raise(ErrorCode::Domain, "scan requires r >= 2");
  if (ell < 0) raise(ErrorCode::Domain, "scan requires ell >= 0");
  if (h_max < 1) raise(ErrorCode::Domain, "scan requires h_max >= 1");
  std::optional<int64_t> bound = paper_bound_for(A, r);
  ScanResult out;
  out.h_max = h_max;
  int64_t last_violation = 0;
  for (int64_t h = 1; h <= h_max; ++h) {
    ScanRow row;
    row.h = h;
    row.lower_bound = lower_bound_size(A, r, h);
    row.paper_bound = bound;
    PointSet greedy = greedy_cover(A, r, h);
    row.greedy_size = static_cast<int64_t>(greedy.size());
    int64_t decided = row.greedy_size;
    if (exact || row.greedy_size > ell) {
      MinimalResult m = minimal_cover(A, r, h, 0);
      row.minimal_size = static_cast<int64_t>(m.cover.size());
      row.minimal_optimal = m.optimal;
      decided = std::min(decided, *row.minimal_size);
    }
    if (decided > ell) last_violation = h;
    out.rows.push_back(std::move(row));
  }
  const ScanRow& last = out.rows.back();
  int64_t final_size = last.minimal_size
                           ? std::min(last.greedy_size, *last.minimal_size)
                           : last.greedy_size;
  if (final_size > ell) {
    out.h0 = std::nullopt;
  } else {
    out.h0 = last_violation + 1;
    if (*out.h0 < 1) out.h0 = 1;
  }
  return out;
}

CertifyOutcome certify(const PointSet& A, int64_t r, int64_t h,
                       const PointSet& X, const std::string& method,
                       std::optional<int64_t> paper_bound,
                       std::optional<int64_t> khovanskii_c) {
  CertifyOutcome out;
  out.verification = verify_cover(A, r, h, X);
  out.certificate.set = A;
  out.certificate.r = r;
  out.certificate.h = h;
  out.certificate.cover = X;
  out.certificate.method = method;
  out.certificate.verified = out.verification.ok;
  out.certificate.lower_bound = lower_bound_size(A, r, h);
  out.certificate.paper_bound = paper_bound;
  out.certificate.khovanskii_c = khovanskii_c;
  out.certificate.set_hash = content_hash(A);
  out.certificate.version = kVersion;
  if (out.verification.ok &&
      out.certificate.lower_bound > static_cast<int64_t>(X.size())) {
    raise(ErrorCode::Internal, "verified cover beats the counting bound");
  }
  return out;
}

}  // namespace apxgrp
