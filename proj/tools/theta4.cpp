// theta4: command-line front end.
//
// Exit codes: 0 pass, 1 mathematical failure, 2 invalid input, 3 warning.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "theta4/basis_analysis.hpp"
#include "theta4/errors.hpp"
#include "theta4/identities.hpp"
#include "theta4/json_io.hpp"
#include "theta4/mmatrix.hpp"
#include "theta4/suite.hpp"

namespace {

using namespace theta4;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitWarn = 3;

void emit(const Json& j, const std::string& out_path) {
  const std::string text = canonical_dump(j);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(out_path, text);
  }
}

struct TruncationArgs {
  double eps = TruncationPolicy{}.target_eps;
  int max_radius = TruncationPolicy{}.max_radius;

  void attach(CLI::App* cmd, const char* eps_flag = "--eps") {
    cmd->add_option(eps_flag, eps, "absolute tail bound for each lattice sum");
    cmd->add_option("--max-radius", max_radius, "cap on the summation box half-width");
  }
  TruncationPolicy policy() const {
    TruncationPolicy p{eps, max_radius};
    p.validate();
    return p;
  }
};

struct IdentityArgs {
  std::string tau_file;
  std::size_t samples = 20;
  std::uint64_t seed = 1;
  double tolerance = 1e-8;
  std::string out;
  TruncationArgs truncation;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tau", tau_file, "period matrix JSON")->required();
    cmd->add_option("--samples", samples, "number of sample points z");
    cmd->add_option("--seed", seed, "seed for the sample points");
    cmd->add_option("--eps", tolerance, "pass iff every rel_residual is below this");
    cmd->add_option("--out", out, "write the records here instead of stdout");
    truncation.attach(cmd, "--trunc-eps");
  }
};

int run_identities(const IdentityArgs& args, bool inversion) {
  const PeriodMatrix tau = load_period_matrix(args.tau_file);
  const auto points = sample_points(tau, args.samples, args.seed);
  const auto policy = args.truncation.policy();
  const auto records =
      inversion ? verify_inversion(tau, points, policy) : verify_quartic(tau, points, policy);
  Json out = Json::array();
  bool ok = true;
  for (const auto& r : records) {
    out.push_back(to_json(r));
    ok = ok && r.rel_residual < args.tolerance;
  }
  emit(out, args.out);
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"theta4: theta functions of order four"};
  app.require_subcommand(1);

  int chars_genus = 1;
  bool chars_even_only = false;
  auto* chars = app.add_subcommand("chars", "list theta characteristics with parity");
  chars->add_option("--genus", chars_genus)->required();
  chars->add_flag("--even-only", chars_even_only);

  int mm_genus = 1;
  bool mm_verify = false;
  std::string mm_emit;
  auto* mm = app.add_subcommand("mmatrix", "build the sign matrix M");
  mm->add_option("--genus", mm_genus)->required();
  mm->add_flag("--verify", mm_verify, "exit 0 iff the row-sum and inverse identities hold");
  mm->add_option("--emit", mm_emit, "write {g, dim, entries} here");

  std::string th_tau, th_char, th_z;
  TruncationArgs th_trunc;
  auto* th = app.add_subcommand("theta", "evaluate theta[a1;a2](z, tau)");
  th->add_option("--tau", th_tau, "period matrix JSON")->required();
  th->add_option("--char", th_char, "\"a1,a2\" as integers, most significant bit first")
      ->required();
  th->add_option("--z", th_z, "\"re,im;re,im;...\"")->required();
  th_trunc.attach(th);

  std::string nu_tau, nu_out;
  double nu_threshold = kDefaultNullThreshold;
  TruncationArgs nu_trunc;
  auto* nu = app.add_subcommand("nulls", "even theta-nulls and the vanishing ones");
  nu->add_option("--tau", nu_tau, "period matrix JSON")->required();
  nu->add_option("--null-threshold", nu_threshold);
  nu->add_option("--out", nu_out);
  nu_trunc.attach(nu);

  IdentityArgs quartic_args, inversion_args;
  auto* vq = app.add_subcommand("verify-quartic", "check Riemann's quartic relation");
  quartic_args.attach(vq);
  auto* vi = app.add_subcommand("verify-inversion", "check the inverted quartic relation");
  inversion_args.attach(vi);

  std::string br_tau, br_kappa0, br_out;
  double br_sv = NumericalRankPolicy{}.rel_sv_threshold;
  double br_null = kDefaultNullThreshold;
  std::uint64_t br_seed = 1;
  TruncationArgs br_trunc;
  auto* br = app.add_subcommand("basis-report", "projective-basis verdicts for one tau");
  br->add_option("--tau", br_tau, "period matrix JSON")->required();
  br->add_option("--kappa0", br_kappa0, "\"c1,c2\", even; default 0");
  br->add_option("--sv-threshold", br_sv);
  br->add_option("--null-threshold", br_null);
  br->add_option("--seed", br_seed);
  br->add_option("--out", br_out)->required();
  br_trunc.attach(br);

  std::string rs_corpus, rs_out;
  bool rs_timings = false;
  auto* rs = app.add_subcommand("run-suite", "run a corpus of period matrices");
  rs->add_option("--corpus", rs_corpus, "corpus JSON")->required();
  rs->add_option("--out", rs_out, "report JSON")->required();
  rs->add_flag("--timings", rs_timings, "include wall-clock per stage (not reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*chars) {
      Json out = Json::array();
      for (const auto& c : enumerate_characteristics(chars_genus)) {
        if (chars_even_only && !is_even(c)) continue;
        Json j = to_json(c);
        j["index"] = c.index();
        j["parity"] = parity(c).value();
        out.push_back(std::move(j));
      }
      emit(out, "");
      return kExitPass;
    }

    if (*mm) {
      const SignMatrix m = build_m(mm_genus);
      if (!mm_emit.empty()) emit(to_json(m), mm_emit);
      if (mm_verify) {
        const auto v = verify_mmatrix(mm_genus);
        emit(to_json(v), "");
        return v.ok() ? kExitPass : kExitFail;
      }
      if (mm_emit.empty()) emit(to_json(m), "");
      return kExitPass;
    }

    if (*th) {
      const PeriodMatrix tau = load_period_matrix(th_tau);
      const Characteristic c = parse_characteristic(th_char, tau.genus());
      const Point z = parse_point(th_z);
      const ThetaValue v = theta_with_char(c, z, tau, th_trunc.policy());
      emit({{"characteristic", to_json(c)},
            {"z", to_json(z)},
            {"value", to_json(v.value)},
            {"error_bound", v.error_bound},
            {"radius", v.radius}},
           "");
      return kExitPass;
    }

    if (*nu) {
      const PeriodMatrix tau = load_period_matrix(nu_tau);
      if (!(nu_threshold > 0.0 && nu_threshold < 1.0)) {
        throw InputError("null threshold must lie in (0, 1)");
      }
      Json out = to_json(theta_nulls(tau, nu_trunc.policy()), nu_threshold);
      out["g"] = tau.genus();
      emit(out, nu_out);
      return kExitPass;
    }

    if (*vq) return run_identities(quartic_args, false);
    if (*vi) return run_identities(inversion_args, true);

    if (*br) {
      const PeriodMatrix tau = load_period_matrix(br_tau);
      const Characteristic kappa0 = br_kappa0.empty()
                                        ? Characteristic::zero(tau.genus())
                                        : parse_characteristic(br_kappa0, tau.genus());
      const BasisReport r = basis_report(tau, kappa0, br_trunc.policy(),
                                         NumericalRankPolicy{br_sv}, br_null, br_seed);
      emit(to_json(r), br_out);
      switch (r.status) {
        case ReportStatus::consistent:
          return kExitPass;
        case ReportStatus::inconsistent:
          return kExitFail;
        case ReportStatus::warn:
          return kExitWarn;
      }
    }

    if (*rs) {
      const CorpusSpec corpus = load_corpus(rs_corpus);
      const RunReport report = run_suite(corpus);
      emit(to_json(report, rs_timings), rs_out);
      return exit_code(report);
    }
  } catch (const InputError& e) {
    std::cerr << "theta4: invalid input: " << e.what() << '\n';
    return kExitInput;
  } catch (const TruncationError& e) {
    std::cerr << "theta4: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "theta4: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitFail;
}
