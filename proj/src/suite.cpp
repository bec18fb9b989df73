#include "theta4/suite.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "theta4/errors.hpp"

namespace theta4 {

namespace {

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw InputError(std::string("corpus field '") + key + "' has the wrong type");
  }
}

PeriodMatrix tau_from_source(const Json& src, const std::filesystem::path& base_dir) {
  if (src.is_string()) return load_period_matrix(base_dir / src.get<std::string>());
  if (!src.is_object()) throw InputError("tau source must be a path or an object");
  const std::string kind = get_or<std::string>(src, "kind", "literal");
  if (kind == "file") {
    if (!src.contains("path") || !src["path"].is_string()) {
      throw InputError("file tau source needs a 'path'");
    }
    return load_period_matrix(base_dir / src["path"].get<std::string>());
  }
  if (kind == "literal") return period_matrix_from_json(src);
  if (kind == "random") {
    return random_tau(get_or<int>(src, "g", 0), get_or<std::uint64_t>(src, "seed", 0),
                      get_or<double>(src, "floor", 1.0));
  }
  if (kind == "diagonal") {
    if (!src.contains("entries") || !src["entries"].is_array() || src["entries"].empty()) {
      throw InputError("diagonal tau source needs nonempty 'entries'");
    }
    std::vector<Complex> diag;
    for (const auto& e : src["entries"]) diag.push_back(complex_from_json(e));
    return PeriodMatrix::diagonal(diag);
  }
  if (kind == "block") {
    if (!src.contains("blocks") || !src["blocks"].is_array() || src["blocks"].empty()) {
      throw InputError("block tau source needs nonempty 'blocks'");
    }
    std::vector<PeriodMatrix> blocks;
    for (const auto& b : src["blocks"]) blocks.push_back(tau_from_source(b, base_dir));
    return PeriodMatrix::block_diagonal(blocks);
  }
  throw InputError("unknown tau source kind '" + kind + "'");
}

SuiteSettings settings_from_json(const Json& j) {
  SuiteSettings s;
  if (j.is_null()) return s;
  if (!j.is_object()) throw InputError("corpus 'settings' must be an object");
  s.truncation.target_eps = get_or<double>(j, "eps", s.truncation.target_eps);
  s.truncation.max_radius = get_or<int>(j, "max_radius", s.truncation.max_radius);
  s.rank.rel_sv_threshold = get_or<double>(j, "sv_threshold", s.rank.rel_sv_threshold);
  s.null_threshold = get_or<double>(j, "null_threshold", s.null_threshold);
  s.identity_tolerance = get_or<double>(j, "identity_tolerance", s.identity_tolerance);
  s.identity_samples = get_or<std::size_t>(j, "samples", s.identity_samples);
  s.seed = get_or<std::uint64_t>(j, "seed", s.seed);
  s.truncation.validate();
  s.rank.validate();
  if (!(s.null_threshold > 0.0 && s.null_threshold < 1.0)) {
    throw InputError("null_threshold must lie in (0, 1)");
  }
  if (!(s.identity_tolerance > 0.0)) throw InputError("identity_tolerance must be positive");
  return s;
}

template <typename F>
auto timed(std::vector<StageTiming>& timings, const char* stage, F&& fn) {
  const auto start = std::chrono::steady_clock::now();
  struct Record {
    std::vector<StageTiming>& timings;
    const char* stage;
    std::chrono::steady_clock::time_point start;
    ~Record() {
      const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
      timings.push_back({stage, d.count()});
    }
  } record{timings, stage, start};
  return fn();
}

void demote(EntryResult& r, EntryStatus s, std::string reason) {
  if (s == EntryStatus::fail || (s == EntryStatus::warn && r.status == EntryStatus::pass)) {
    r.status = s;
  }
  r.reasons.push_back(std::move(reason));
}

EntryResult run_entry(const CorpusEntry& entry, const SuiteSettings& s,
                      const std::map<int, MMatrixVerification>& mmatrix) {
  EntryResult r;
  r.label = entry.label;
  const int g = entry.tau.genus();
  try {
    if (auto it = mmatrix.find(g); it != mmatrix.end() && !it->second.ok()) {
      demote(r, EntryStatus::fail, "sign matrix identities failed");
    }

    const auto points = sample_points(entry.tau, s.identity_samples, s.seed);
    const auto quartic = timed(r.timings, "quartic",
                               [&] { return verify_quartic(entry.tau, points, s.truncation); });
    const auto inversion = timed(r.timings, "inversion",
                                 [&] { return verify_inversion(entry.tau, points, s.truncation); });
    r.quartic_checks = quartic.size();
    r.inversion_checks = inversion.size();
    for (const auto& q : quartic) {
      r.max_quartic_residual = std::max(r.max_quartic_residual, q.scaled_residual);
    }
    for (const auto& q : inversion) {
      r.max_inversion_residual = std::max(r.max_inversion_residual, q.scaled_residual);
    }
    if (!(r.max_quartic_residual < s.identity_tolerance)) {
      demote(r, EntryStatus::fail, "quartic relation residual above tolerance");
    }
    if (!(r.max_inversion_residual < s.identity_tolerance)) {
      demote(r, EntryStatus::fail, "inversion residual above tolerance");
    }

    const Characteristic kappa0 = entry.kappa0.value_or(Characteristic::zero(g));
    r.report = timed(r.timings, "basis_report", [&] {
      return basis_report(entry.tau, kappa0, s.truncation, s.rank, s.null_threshold, s.seed);
    });
    const BasisReport& rep = *r.report;
    if (rep.status == ReportStatus::inconsistent) {
      demote(r, EntryStatus::fail, "verdicts inconsistent with the vanishing-null count");
    } else if (rep.status == ReportStatus::warn) {
      demote(r, EntryStatus::warn, "near-degenerate: near-vanishing null or unstable rank");
    }
    const auto& e = entry.expect;
    if (e.theorem11 && *e.theorem11 != rep.theorem11_verdict) {
      demote(r, EntryStatus::fail, "evaluation-matrix verdict differs from expectation");
    }
    if (e.theorem12 && *e.theorem12 != rep.theorem12_verdict) {
      demote(r, EntryStatus::fail, "fourth-power verdict differs from expectation");
    }
    if (e.vanishing_nulls &&
        *e.vanishing_nulls != static_cast<int>(rep.vanishing_nulls.size())) {
      demote(r, EntryStatus::fail, "vanishing-null count differs from expectation");
    }
  } catch (const Error& ex) {
    r.error = ex.what();
    demote(r, EntryStatus::fail, "evaluation error");
  }
  return r;
}

Json timings_to_json(const std::vector<StageTiming>& ts) {
  Json out = Json::object();
  for (const auto& t : ts) out[t.stage] = t.seconds;
  return out;
}

}  // namespace

CorpusSpec parse_corpus(const Json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw InputError("corpus must be a JSON object");
  CorpusSpec spec;
  spec.settings = settings_from_json(doc.value("settings", Json()));
  if (!doc.contains("entries")) return spec;
  if (!doc["entries"].is_array()) throw InputError("corpus 'entries' must be an array");

  std::set<std::string> labels;
  for (const auto& e : doc["entries"]) {
    if (!e.is_object() || !e.contains("label") || !e["label"].is_string() || !e.contains("tau")) {
      throw InputError("corpus entry needs a string 'label' and a 'tau' source");
    }
    const std::string label = e["label"].get<std::string>();
    if (!labels.insert(label).second) throw InputError("duplicate corpus label '" + label + "'");
    PeriodMatrix tau = [&] {
      try {
        return tau_from_source(e["tau"], base_dir);
      } catch (const InputError& ex) {
        throw InputError("entry '" + label + "': " + ex.what());
      }
    }();
    CorpusEntry entry{label, std::move(tau), std::nullopt, {}};
    if (e.contains("kappa0")) {
      entry.kappa0 = characteristic_from_json(e["kappa0"], entry.tau.genus());
      if (!is_even(*entry.kappa0)) throw InputError("entry '" + label + "': kappa0 must be even");
    }
    if (e.contains("expect")) {
      const Json& x = e["expect"];
      if (!x.is_object()) throw InputError("entry '" + label + "': 'expect' must be an object");
      if (x.contains("theorem11")) entry.expect.theorem11 = get_or<bool>(x, "theorem11", true);
      if (x.contains("theorem12")) entry.expect.theorem12 = get_or<bool>(x, "theorem12", true);
      if (x.contains("vanishing_nulls")) {
        entry.expect.vanishing_nulls = get_or<int>(x, "vanishing_nulls", 0);
      }
    }
    spec.entries.push_back(std::move(entry));
  }
  return spec;
}

CorpusSpec load_corpus(const std::filesystem::path& path) {
  return parse_corpus(read_json_file(path), path.parent_path());
}

const char* to_string(EntryStatus s) {
  switch (s) {
    case EntryStatus::pass:
      return "pass";
    case EntryStatus::fail:
      return "fail";
    case EntryStatus::warn:
      return "warn";
  }
  return "unknown";
}

RunReport run_suite(const CorpusSpec& corpus) {
  RunReport report;
  for (const auto& e : corpus.entries) {
    const int g = e.tau.genus();
    // Exact checks beyond genus 4 cost minutes in rational arithmetic.
    if (g <= 4 && !report.mmatrix.contains(g)) report.mmatrix.emplace(g, verify_mmatrix(g));
  }
  for (const auto& e : corpus.entries) {
    report.entries.push_back(run_entry(e, corpus.settings, report.mmatrix));
  }
  for (const auto& r : report.entries) {
    if (r.status == EntryStatus::fail) {
      report.rollup = EntryStatus::fail;
    } else if (r.status == EntryStatus::warn && report.rollup == EntryStatus::pass) {
      report.rollup = EntryStatus::warn;
    }
  }
  return report;
}

Json to_json(const RunReport& report, bool include_timings) {
  Json mm = Json::object();
  for (const auto& [g, v] : report.mmatrix) mm[std::to_string(g)] = to_json(v);
  Json entries = Json::array();
  for (const auto& r : report.entries) {
    Json e = {{"label", r.label},
              {"status", to_string(r.status)},
              {"reasons", r.reasons},
              {"error", r.error ? Json(*r.error) : Json(nullptr)},
              {"max_quartic_residual", r.max_quartic_residual},
              {"max_inversion_residual", r.max_inversion_residual},
              {"quartic_checks", r.quartic_checks},
              {"inversion_checks", r.inversion_checks},
              {"basis_report", r.report ? to_json(*r.report) : Json(nullptr)}};
    if (include_timings) e["timings"] = timings_to_json(r.timings);
    entries.push_back(std::move(e));
  }
  return {{"tool", "theta4"},
          {"version", kToolVersion},
          {"mmatrix", std::move(mm)},
          {"entries", std::move(entries)},
          {"rollup", to_string(report.rollup)}};
}

int exit_code(const RunReport& report) {
  switch (report.rollup) {
    case EntryStatus::pass:
      return 0;
    case EntryStatus::fail:
      return 1;
    case EntryStatus::warn:
      return 3;
  }
  return 1;
}

}  // namespace theta4
