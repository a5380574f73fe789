// Batch command-line surface: cycle coefficients with their bound gates,
// identity verification, and lattice membership checks.  All arithmetic is
// exact; reports are deterministic JSON.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grcycle/asymptotics.hpp"
#include "grcycle/bmcycles.hpp"
#include "grcycle/io.hpp"
#include "grcycle/lattice.hpp"
#include "grcycle/step4.hpp"

using namespace grcycle;
using json = io::json;

namespace {

void emit(const json& report, const std::string& out_path) {
  if (out_path.empty())
    std::cout << report.dump(2) << "\n";
  else
    io::write_report(report, out_path);
}

struct HodgeFlags {
  std::string group_path;
  int e = 1;
  std::string mu_list;
  Int residue_char = 0;
  Int nu = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--group", group_path, "group spec file (JSON)")->required();
    cmd->add_option("--e", e, "number of Hodge-type entries")->required();
    cmd->add_option("--mu", mu_list, "Hodge type, e.g. \"2,0;2,0\"")->required();
    cmd->add_option("--char", residue_char, "residue characteristic (0 for none)");
    cmd->add_option("--nu", nu, "ramification valuation parameter");
  }

  HodgeType hodge() const {
    HodgeType h;
    h.e = e;
    h.mus = io::parse_weight_list(mu_list);
    h.residue_char = residue_char;
    h.nu = nu;
    if (static_cast<int>(h.mus.size()) != e)
      throw InputError("--mu holds " + std::to_string(h.mus.size()) + " entries, --e says " +
                       std::to_string(e));
    return h;
  }
};

int cmd_cycle(const HodgeFlags& hf, const std::string& gate, bool override_bounds,
              const std::string& out_path) {
  io::GroupSpec gs = io::load_group(hf.group_path);
  HodgeType h = hf.hodge();
  BoundsReport rep = check_bounds(h, gs.rd);
  bool enforced_pass = gate == "none" || (gate == "a1" && rep.gate_a1) ||
                       (gate == "a2" && rep.gate_a2) || (gate == "nu" && rep.gate_nu);
  if (!gs.rd.twist_coch) {
    json out;
    out["error"] = "no twisting element";
    emit(out, out_path);
    return 1;
  }
  json out;
  bool computed = rep.gate_a1 || override_bounds;
  if (computed) {
    CycleCoefficients cc = bm_coefficients(h, gs.rd, override_bounds);
    out = io::cycle_report(gs.echo, h, rep, gate, enforced_pass, cc, gs.rd);
  } else {
    out["group"] = gs.echo;
    out["hodge_type"] = io::hodge_json(h);
    json gates = io::bounds_json(rep);
    gates["enforced"] = gate;
    gates["enforced_pass"] = enforced_pass;
    out["gates"] = gates;
    out["error"] = "bound violated; rerun with --override-bounds to compute anyway";
  }
  emit(out, out_path);
  if (!enforced_pass && !override_bounds) return 2;
  if (!computed) return 2;
  return 0;
}

int cmd_verify(const HodgeFlags& hf, Int n_max, const std::string& coeffs_file,
               bool override_bounds, const std::string& out_path) {
  io::GroupSpec gs = io::load_group(hf.group_path);
  HodgeType h = hf.hodge();
  if (n_max <= 0) n_max = gs.rd.num_positive() <= 1 ? 8 : 4;
  if (!gs.rd.twist_coch) {
    json out;
    out["error"] = "no twisting element";
    emit(out, out_path);
    return 1;
  }
  CycleCoefficients cc;
  if (coeffs_file.empty()) {
    cc = bm_coefficients(h, gs.rd, override_bounds);
  } else {
    cc.base = h;
    cc.rho = *gs.rd.twist_coch;
    cc.coeffs = io::coefficients_from_json(io::read_json_file(coeffs_file));
    IntVec bound(gs.rd.dim, 0);
    for (const IntVec& mu : h.mus) bound = vec_add(bound, mu);
    cc.leading = vec_sub(bound, vec_scale(cc.rho, h.e));
  }

  json out;
  out["group"] = gs.echo;
  out["hodge_type"] = io::hodge_json(h);
  bool identity_ok = true;
  json idj = json::array();
  for (Int n = 1; n <= std::min<Int>(3, n_max); ++n) {
    AntisymMismatch diag = exact_antisym_identity_diag(h, cc, n, gs.rd);
    json rec;
    rec["n"] = n;
    rec["holds"] = diag.holds;
    if (!diag.holds) {
      rec["monomial"] = io::weight_json(diag.monomial);
      rec["lhs_coeff"] = diag.lhs_coeff;
      rec["rhs_coeff"] = diag.rhs_coeff;
      identity_ok = false;
    }
    idj.push_back(rec);
  }
  out["identity"] = idj;

  NormSequence seq = difference_norm_sequence(h, cc, n_max, gs.rd, std::max<Int>(n_max, 16));
  out["norms"] = seq.norms;
  out["signed_sums"] = seq.signed_sums;
  int degree_bound = static_cast<int>(h.e * gs.rd.num_positive());
  out["degree_bound"] = degree_bound;
  std::string verdict = "insufficient data";
  bool degree_ok = true;
  if (static_cast<int>(seq.norms.size()) >= degree_bound + 2) {
    DegreeEstimate est = degree_estimate(seq.norms, degree_bound);
    out["dth_differences"] = est.dth_differences;
    degree_ok = est.verdict == DegreeVerdict::Consistent;
    verdict = degree_ok ? "consistent" : "inconsistent";
  }
  out["degree_verdict"] = verdict;
  bool pass = identity_ok && degree_ok;
  out["pass"] = pass;
  emit(out, out_path);
  if (!identity_ok) {
    for (const auto& rec : idj)
      if (!rec.at("holds").get<bool>())
        std::cerr << "identity fails at n = " << rec.at("n")
                  << ", monomial " << rec.at("monomial").dump() << "\n";
    return 3;
  }
  return pass ? 0 : 3;
}

struct NablaFlags {
  std::string matrix_path;
  int e = 0;
  bool special = false;
  std::string pis;
  std::string mu_list;
  std::string emit_matrix;
};

template <class Ctx>
int run_nabla(const io::MatrixFile& mf, const NablaFlags& nf, const Ctx& ctx,
              const std::string& out_path) {
  using K = typename Ctx::Field;
  SeriesMatrix<K> x = io::build_matrix(mf, ctx);
  io::MatrixFile ecsrc = mf;
  if (!nf.pis.empty()) {
    ecsrc.econfig_pis.clear();
    std::stringstream ss(nf.pis);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) ecsrc.econfig_pis.push_back(tok);
    ecsrc.econfig_e = static_cast<int>(ecsrc.econfig_pis.size());
    ecsrc.econfig_special = false;
  } else if (nf.special) {
    if (nf.e <= 0) throw InputError("--special needs --e");
    ecsrc.econfig_pis.clear();
    ecsrc.econfig_e = nf.e;
    ecsrc.econfig_special = true;
  } else if (nf.e > 0) {
    if (!ecsrc.econfig_e)
      throw InputError("--e without --special or --pis needs an econfig in the file");
    if (*ecsrc.econfig_e != nf.e)
      throw InputError("--e disagrees with the file's E-configuration");
  }
  EConfig<K> ec = io::build_econfig(ecsrc, ctx);
  if (!nf.emit_matrix.empty()) {
    json field = mf.rational ? json("rationals") : json{{"prime", mf.prime}};
    io::write_report(io::matrix_json(x, field, ec), nf.emit_matrix);
  }

  json out;
  out["n"] = mf.n;
  out["e"] = ec.e;
  out["special"] = ec.special;
  out["precision"] = mf.exact ? json("exact") : json(mf.precision);
  try {
    Lattice<K> lat = psi_of_frobenius(x, ec);
    bool nab = in_nabla(x, ec);
    out["nabla"] = nab;
    bool pass = nab;
    if (ec.special) {
      out["position"] = io::weight_json(relative_position(lat));
    } else {
      json pos = json::array();
      for (const K& pi : ec.pis)
        pos.push_back(io::weight_json(relative_position_at(lat, pi)));
      out["positions"] = pos;
    }
    if (!nf.mu_list.empty()) {
      HodgeType h;
      h.e = ec.e;
      h.mus = io::parse_weight_list(nf.mu_list);
      h.residue_char = 0;
      bool wed = wedge_condition(lat, h, ec);
      out["wedge"] = wed;
      pass = pass && wed;
    }
    out["pass"] = pass;
    emit(out, out_path);
    return pass ? 0 : 2;
  } catch (const PrecisionError& ex) {
    out["undecidable"] = ex.what();
    emit(out, out_path);
    return 4;
  }
}

int cmd_nabla(const NablaFlags& nf, const std::string& out_path) {
  io::MatrixFile mf = io::parse_matrix_file(io::read_json_file(nf.matrix_path));
  if (mf.rational) return run_nabla(mf, nf, RatCtx{}, out_path);
  return run_nabla(mf, nf, FpCtx(mf.prime), out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact cycle-coefficient and affine-Grassmannian lattice checks"};
  app.require_subcommand(1);

  HodgeFlags cycle_flags;
  std::string cycle_gate = "a1";
  bool cycle_override = false;
  std::string cycle_out;
  CLI::App* cycle = app.add_subcommand("cycle", "compute cycle coefficients and bound gates");
  cycle_flags.attach(cycle);
  cycle->add_option("--gate", cycle_gate, "which gate to enforce: a1, a2, nu, none")
      ->check(CLI::IsMember({"a1", "a2", "nu", "none"}));
  cycle->add_flag("--override-bounds", cycle_override, "compute despite a failing gate");
  cycle->add_option("--out", cycle_out, "write the report here instead of stdout");

  HodgeFlags verify_flags;
  Int n_max = 0;
  std::string coeffs_file, verify_out;
  bool verify_override = false;
  CLI::App* verify = app.add_subcommand("verify", "check the antisymmetrized identity");
  verify_flags.attach(verify);
  verify->add_option("--n-max", n_max, "largest dilation checked (default: 8 rank-one, 4 above)");
  verify->add_option("--coeffs-file", coeffs_file, "use these coefficients instead");
  verify->add_flag("--override-bounds", verify_override, "compute despite a failing gate");
  verify->add_option("--out", verify_out, "write the report here instead of stdout");

  NablaFlags nabla_flags;
  std::string nabla_out;
  CLI::App* nabla = app.add_subcommand("nabla", "lattice membership checks");
  nabla->add_option("--matrix", nabla_flags.matrix_path, "matrix file (JSON)")->required();
  nabla->add_option("--e", nabla_flags.e, "number of places");
  nabla->add_flag("--special", nabla_flags.special, "special fibre (all pi = 0)");
  nabla->add_option("--pis", nabla_flags.pis, "comma-separated pi values");
  nabla->add_option("--mu", nabla_flags.mu_list, "Hodge type for the wedge bound");
  nabla->add_option("--emit-matrix", nabla_flags.emit_matrix,
                    "write the parsed matrix back out in the input format");
  nabla->add_option("--out", nabla_out, "write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cycle->parsed()) return cmd_cycle(cycle_flags, cycle_gate, cycle_override, cycle_out);
    if (verify->parsed()) return cmd_verify(verify_flags, n_max, coeffs_file, verify_override, verify_out);
    if (nabla->parsed()) return cmd_nabla(nabla_flags, nabla_out);
  } catch (const BoundViolation& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const PrecisionError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 4;
  } catch (const InputError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  } catch (const CapExceeded& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}
