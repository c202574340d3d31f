#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "fathom/catalog.hpp"
#include "fathom/dualfol.hpp"
#include "fathom/fatness.hpp"
#include "fathom/submersion.hpp"

namespace fathom {

enum class CheckState { pass, fail, skipped };

inline const char* to_string(CheckState s) {
  switch (s) {
    case CheckState::pass: return "pass";
    case CheckState::fail: return "fail";
    default: return "skipped";
  }
}

/// Fiber-dimension predicates: the equality case {1,3,7}, the multiple-of-
/// 2/4/8 rule, and the table-sourced exception (the dimension-5 sphere row).
struct FiberDimensionRule {
  bool equality_case = false;
  bool multiple_rule = false;
  bool table_exception = false;

  bool ok() const { return equality_case || multiple_rule || table_exception; }
};

inline FiberDimensionRule fiber_dimension_rule(int dim_fiber) {
  FiberDimensionRule r;
  r.equality_case = (dim_fiber == 1 || dim_fiber == 3 || dim_fiber == 7);
  r.multiple_rule = (dim_fiber > 0 && dim_fiber % 2 == 0);
  r.table_exception = (dim_fiber == 5);
  return r;
}

/// One transcribed classification-table row: raw key=value fields plus the
/// table it belongs to. Values are catalog resolver keys (quotient
/// decorations like /z2 are stripped during resolution, never rewritten).
struct TableRow {
  std::string table_id;
  std::string id;
  std::map<std::string, std::string> fields;

  bool has(const std::string& key) const { return fields.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const {
    auto it = fields.find(key);
    return it == fields.end() ? fallback : it->second;
  }
};

struct RowVerdict {
  CheckState dim_ok = CheckState::skipped;
  CheckState even_base_ok = CheckState::skipped;
  CheckState multiples_ok = CheckState::skipped;
  CheckState rank_ok = CheckState::skipped;
  CheckState symmetric_pair_ok = CheckState::skipped;
  CheckState fatness_ok = CheckState::skipped;
  double fat_margin = 0.0;
  std::string notes;
  std::vector<std::string> flags;  // names of failed or tension checks
};

struct VerifyParams {
  int grid_density = 32;
  int refine_iters = 20;
  double tolerance = 1e-9;
  int max_fat_dim = 21;
  long grid_budget = 200000;
};

namespace detail {

struct Resolved {
  int dim = 0;
  int rank = 0;
  bool is_embedding = false;
};

/// Resolves a name as an embedding of `parent` first, then as a catalog
/// record. Throws catalog_miss when neither exists.
inline Resolved resolve_in(const Catalog& cat, const std::string& parent,
                           const std::string& name) {
  if (!parent.empty() && cat.has_record(parent) && cat.record(parent).realizable &&
      cat.has_embedding(parent, name)) {
    if (Catalog::base_name(name) == "e") return {0, 0, true};
    const auto& rec = cat.embedding_record(parent, name);
    return {rec.dim, rec.rank, true};
  }
  const auto& rec = cat.record(name);
  return {rec.dim, rec.rank, false};
}

inline CheckState pair_check_state(const Catalog& cat, const std::string& H,
                                   const std::string& K, const std::string& pair_type,
                                   std::string& notes) {
  if (pair_type == "group" || pair_type == "discrete" || pair_type == "skip") {
    return CheckState::skipped;
  }
  if (!cat.has_record(H) || !cat.record(H).realizable || !cat.has_embedding(H, K)) {
    notes += " [pair " + H + "/" + K + " not realizable in catalog]";
    return CheckState::skipped;
  }
  const SubalgebraEmbedding emb = cat.embedding(H, K);
  const PairCheck pc = check_pair(orthogonal_complement(emb));
  if (!pc.reductive) {
    notes += " [pair " + H + "/" + K + " not reductive]";
    return CheckState::fail;
  }
  return pc.symmetric ? CheckState::pass : CheckState::fail;
}

inline CheckState fatness_check_state(const Catalog& cat, const std::string& fat_names,
                                      const VerifyParams& params, double& margin,
                                      std::string& notes) {
  if (fat_names.empty() || fat_names == "-") return CheckState::skipped;
  std::string names = fat_names;
  std::replace(names.begin(), names.end(), '/', ' ');
  std::istringstream ss(names);
  std::string gname, hname, kname;
  ss >> gname >> hname >> kname;
  if (!cat.has_record(gname) || !cat.record(gname).realizable) {
    notes += " [fatness triple not realizable]";
    return CheckState::skipped;
  }
  if (cat.record(gname).dim > params.max_fat_dim) {
    notes += " [fatness skipped: dim g > " + std::to_string(params.max_fat_dim) + "]";
    return CheckState::skipped;
  }
  const HomogeneousTriple tr = make_triple(cat.algebra(gname), cat.embedding(gname, hname),
                                           cat.embedding(gname, kname),
                                           gname + "/" + hname + "/" + kname);
  const int density =
      adapted_density(tr.dim_p(), params.grid_density, params.grid_budget);
  const FatnessReport rep = fatness_margin(tr, density, params.refine_iters, params.tolerance);
  margin = rep.margin;
  if (rep.verdict == FatVerdict::fat) return CheckState::pass;
  notes += " [fatness verdict " + std::string(to_string(rep.verdict)) + "]";
  return CheckState::fail;
}

inline std::pair<std::string, int> split_label_dim(const std::string& v) {
  const auto colon = v.find(':');
  if (colon == std::string::npos) return {v, -1};
  return {v.substr(0, colon), std::stoi(v.substr(colon + 1))};
}

}  // namespace detail

/// Evaluates every check applicable to the row's table. Mismatches become
/// flagged verdicts; rows are never rewritten to make a check pass.
inline RowVerdict verify_row(const Catalog& cat, const TableRow& row,
                             const VerifyParams& params = {}) {
  RowVerdict v;
  const std::string table = row.table_id;
  if (row.get("placeholder") == "yes") {
    v.flags.push_back("name");
    v.notes += " [placeholder name for a blank cell]";
  }
  if (table == "ziller-A") {
    const auto [mlabel, mdim] = detail::split_label_dim(row.get("M"));
    const auto [blabel, bdim] = detail::split_label_dim(row.get("B"));
    const auto H = detail::resolve_in(cat, "", row.get("H"));
    const auto K = detail::resolve_in(cat, row.get("H"), row.get("K"));
    const auto Hp = detail::resolve_in(cat, "", row.get("Hp"));
    const auto Kp = detail::resolve_in(cat, row.get("Hp"), row.get("Kp"));
    const bool fiber_ok = (H.dim - K.dim == mdim);
    const bool base_ok = (Hp.dim - Kp.dim == bdim);
    const bool bundle_ok = (mdim == bdim + 3);
    v.dim_ok = (fiber_ok && base_ok && bundle_ok) ? CheckState::pass : CheckState::fail;
    if (!fiber_ok) {
      v.notes += " [dim " + row.get("H") + "/" + row.get("K") + " = " +
                 std::to_string(H.dim - K.dim) + ", table says " + std::to_string(mdim) + "]";
    }
    v.even_base_ok = (bdim % 2 == 0) ? CheckState::pass : CheckState::fail;
    const ConstraintReport cons = check_dimensional_constraints(3, bdim);
    v.multiples_ok = cons.overall ? CheckState::pass : CheckState::fail;
    if (row.get("rank1even") == "yes") {
      v.rank_ok = (Hp.rank == Kp.rank) ? CheckState::pass : CheckState::fail;
    }
    const CheckState fiber_pair =
        detail::pair_check_state(cat, row.get("H"), row.get("K"), row.get("pairHK"), v.notes);
    const CheckState base_pair =
        detail::pair_check_state(cat, row.get("Hp"), row.get("Kp"), row.get("pairBase"), v.notes);
    if (fiber_pair == CheckState::fail || base_pair == CheckState::fail) {
      v.symmetric_pair_ok = CheckState::fail;
    } else if (fiber_pair == CheckState::pass || base_pair == CheckState::pass) {
      v.symmetric_pair_ok = CheckState::pass;
    }
    v.fatness_ok = detail::fatness_check_state(cat, row.get("fat"), params, v.fat_margin, v.notes);
  } else if (table == "symmetric-fiber-B" || table == "table-A") {
    const int recorded = std::stoi(row.get("dim"));
    const auto H = detail::resolve_in(cat, "", row.get("H"));
    const auto K = detail::resolve_in(cat, row.get("H"), row.get("K"));
    v.dim_ok = (H.dim - K.dim == recorded) ? CheckState::pass : CheckState::fail;
    const FiberDimensionRule rule = fiber_dimension_rule(recorded);
    v.multiples_ok = rule.ok() ? CheckState::pass : CheckState::fail;
    if (rule.table_exception && !rule.equality_case && !rule.multiple_rule) {
      v.notes += " [fiber dim " + std::to_string(recorded) + " admitted as table exception]";
    }
    if (row.get("rank1even") == "yes") {
      v.rank_ok = (H.rank == K.rank) ? CheckState::pass : CheckState::fail;
    }
    v.symmetric_pair_ok =
        detail::pair_check_state(cat, row.get("H"), row.get("K"), row.get("pair"), v.notes);
  } else if (table == "berard-bergery-C") {
    const auto G = detail::resolve_in(cat, "", row.get("G"));
    const auto H = detail::resolve_in(cat, row.get("G"), row.get("H"));
    const auto K = detail::resolve_in(cat, row.get("G"), row.get("K"));
    const int base = G.dim - H.dim;
    const int fiber = H.dim - K.dim;
    v.dim_ok = (base > 0 && fiber > 0) ? CheckState::pass : CheckState::fail;
    const ConstraintReport cons = check_dimensional_constraints(fiber, base);
    v.even_base_ok = cons.even_base ? CheckState::pass : CheckState::fail;
    v.multiples_ok = (cons.equality_case_dims && cons.multiple_of_4 && cons.multiple_of_8)
                         ? CheckState::pass
                         : CheckState::fail;
    if (!cons.overall) v.notes += " [" + cons.detail + "]";
    v.symmetric_pair_ok =
        detail::pair_check_state(cat, row.get("G"), row.get("H"), row.get("pairGH"), v.notes);
    v.fatness_ok = detail::fatness_check_state(cat, row.get("fat"), params, v.fat_margin, v.notes);
  } else if (table == "table-B") {
    const auto G = detail::resolve_in(cat, "", row.get("G"));
    const auto H = detail::resolve_in(cat, row.get("G"), row.get("H"));
    v.dim_ok = (G.dim - H.dim > 0) ? CheckState::pass : CheckState::fail;
    if (row.get("rank1even") == "yes") {
      v.rank_ok = (G.rank == H.rank) ? CheckState::pass : CheckState::fail;
    }
    v.symmetric_pair_ok =
        detail::pair_check_state(cat, row.get("G"), row.get("H"), row.get("pairGH"), v.notes);
  } else {
    throw catalog_miss("verify_row: unknown table id " + table);
  }
  auto flag_if_failed = [&](CheckState s, const char* name) {
    if (s == CheckState::fail) v.flags.push_back(name);
  };
  flag_if_failed(v.dim_ok, "dim");
  flag_if_failed(v.even_base_ok, "even_base");
  flag_if_failed(v.multiples_ok, "multiples");
  flag_if_failed(v.rank_ok, "rank");
  flag_if_failed(v.symmetric_pair_ok, "symmetric_pair");
  flag_if_failed(v.fatness_ok, "fatness");
  return v;
}

// ---------------------------------------------------------------------------
// Fixture files
// ---------------------------------------------------------------------------

/// Parses data/tables.txt:
///   table <id>
///   row id=<key> <field>=<value> ...
inline std::map<std::string, std::vector<TableRow>> load_tables(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw catalog_miss("cannot open tables fixture: " + path);
  std::map<std::string, std::vector<TableRow>> tables;
  std::string line, current;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    std::string kind;
    if (!(ss >> kind)) continue;
    if (kind == "table") {
      ss >> current;
    } else if (kind == "row") {
      TableRow row;
      row.table_id = current;
      std::string kv;
      while (ss >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw catalog_miss("tables fixture: bad field " + kv);
        row.fields[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      row.id = row.get("id");
      if (row.id.empty()) throw catalog_miss("tables fixture: row without id");
      tables[current].push_back(row);
    } else {
      throw catalog_miss("tables fixture: unknown record " + kind);
    }
  }
  return tables;
}

using FlagKey = std::tuple<std::string, std::string, std::string>;  // table, row, check

/// Parses data/expected_flags.txt: `<table> <row> <check> <free-text reason>`.
inline std::set<FlagKey> load_expected_flags(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw catalog_miss("cannot open expected-flags file: " + path);
  std::set<FlagKey> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    std::string table, row, check;
    if (ss >> table >> row >> check) out.insert({table, row, check});
  }
  return out;
}

struct TableRunResult {
  std::vector<std::pair<TableRow, RowVerdict>> rows;
  std::vector<FlagKey> observed_flags;
  std::vector<FlagKey> unexpected_flags;
  std::vector<FlagKey> missing_expected;
  bool clean = false;  // no unexpected failures, every expected tension observed
};

inline TableRunResult run_tables(const Catalog& cat,
                                 const std::map<std::string, std::vector<TableRow>>& tables,
                                 const std::set<FlagKey>& expected,
                                 const std::vector<std::string>& which,
                                 const VerifyParams& params = {}) {
  TableRunResult out;
  std::set<FlagKey> observed;
  for (const auto& table_id : which) {
    auto it = tables.find(table_id);
    if (it == tables.end()) throw catalog_miss("no such table fixture: " + table_id);
    for (const TableRow& row : it->second) {
      RowVerdict v = verify_row(cat, row, params);
      for (const std::string& f : v.flags) {
        observed.insert({table_id, row.id, f});
        out.observed_flags.push_back({table_id, row.id, f});
      }
      out.rows.emplace_back(row, std::move(v));
    }
  }
  for (const FlagKey& k : observed) {
    if (!expected.count(k)) out.unexpected_flags.push_back(k);
  }
  for (const FlagKey& k : expected) {
    const auto& [table, rowid, check] = k;
    const bool in_scope =
        std::find(which.begin(), which.end(), table) != which.end();
    if (in_scope && !observed.count(k)) out.missing_expected.push_back(k);
  }
  out.clean = out.unexpected_flags.empty() && out.missing_expected.empty();
  return out;
}

// ---------------------------------------------------------------------------
// Candidate enumeration
// ---------------------------------------------------------------------------

struct Candidate {
  TripleNames names;
  int dim_g = 0, dim_h = 0, dim_k = 0, dim_m = 0, dim_p = 0;
  double fat_margin = 0.0;
};

/// Walks the registered catalog triples and keeps those passing every
/// applicable obstruction: nontrivial fiber (dim p >= 2, matching the
/// dim H/K > 1 hypothesis of the classification), even base, the
/// dim p <= dim m - 1 bound, the 4k/8k multiples, and a fat verdict when the
/// triple is realizable and small enough to test.
inline std::vector<Candidate> enumerate_candidates(const Catalog& cat, int max_dim_g,
                                                   const VerifyParams& params = {}) {
  if (max_dim_g > 36) throw dimension_mismatch("enumerate_candidates: max_dim_g must be <= 36");
  std::vector<Candidate> out;
  for (const TripleNames& names : cat.triples(max_dim_g)) {
    const HomogeneousTriple tr =
        make_triple(cat.algebra(names.g), cat.embedding(names.g, names.h),
                    cat.embedding(names.g, names.k), names.g + "/" + names.h + "/" + names.k);
    Candidate c;
    c.names = names;
    c.dim_g = tr.dim_g();
    c.dim_h = tr.dim_h();
    c.dim_k = tr.dim_k();
    c.dim_m = tr.dim_m();
    c.dim_p = tr.dim_p();
    if (c.dim_p < 2) continue;              // one-dimensional fibers are out of scope here
    if (c.dim_m % 2 != 0) continue;         // odd base
    if (c.dim_p > c.dim_m - 1) continue;    // injectivity bound
    if (!check_dimensional_constraints(c.dim_p, c.dim_m).overall) continue;
    if (c.dim_g <= params.max_fat_dim) {
      const int density = adapted_density(c.dim_p, params.grid_density, params.grid_budget);
      const FatnessReport rep =
          fatness_margin(tr, density, params.refine_iters, params.tolerance);
      if (rep.verdict != FatVerdict::fat) continue;
      c.fat_margin = rep.margin;
    }
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.dim_g, a.names.g, a.names.h, a.names.k) <
           std::tie(b.dim_g, b.names.g, b.names.h, b.names.k);
  });
  return out;
}

}  // namespace fathom
