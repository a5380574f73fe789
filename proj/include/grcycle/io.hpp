#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "asymptotics.hpp"
#include "bmcycles.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "rootdata.hpp"
#include "series_matrix.hpp"

// File formats: group specs, matrix files, and the structured reports the
// CLI emits.  All reports use a fixed key order and exact integer/rational
// strings so identical inputs produce byte-identical files.

namespace grcycle::io {

using json = nlohmann::ordered_json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw InputError("cannot parse '" + path + "': " + ex.what());
  }
  return j;
}

// --- weight vectors ----------------------------------------------------------

inline IntVec parse_weight(const std::string& s) {
  IntVec v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      v.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw InputError("cannot parse weight coordinate '" + tok + "'");
    }
  }
  if (v.empty()) throw InputError("empty weight vector");
  return v;
}

// "2,0;2,0" -> [(2,0), (2,0)]
inline std::vector<IntVec> parse_weight_list(const std::string& s) {
  std::vector<IntVec> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ';'))
    if (!tok.empty()) out.push_back(parse_weight(tok));
  if (out.empty()) throw InputError("empty weight list");
  return out;
}

inline json weight_json(const IntVec& v) { return json(v); }

inline IntVec weight_from_json(const json& j) {
  if (!j.is_array()) throw InputError("weight vector must be an array of integers");
  IntVec v;
  for (const auto& x : j) v.push_back(x.get<Int>());
  return v;
}

// --- group specs --------------------------------------------------------------

struct GroupSpec {
  RootDatum rd;
  json echo;  // what the input looked like, for report echoing
};

inline GroupSpec parse_group(const json& j) {
  if (!j.contains("group")) throw InputError("group file needs a 'group' object");
  const json& g = j.at("group");
  RootDatumOptions opt;
  if (j.contains("weyl_cap")) opt.weyl_cap = j.at("weyl_cap").get<std::size_t>();
  GroupSpec out;
  if (g.contains("type")) {
    std::string t = g.at("type").get<std::string>();
    if (t != "GL") throw InputError("unknown named group type '" + t + "'");
    int n = g.at("n").get<int>();
    out.rd = build_gl(n, opt);
    out.echo = json{{"type", "GL"}, {"n", n}};
    return out;
  }
  if (!g.contains("pairing") || !g.contains("roots") || !g.contains("coroots") ||
      !g.contains("simple"))
    throw InputError("explicit group needs pairing, roots, coroots and simple");
  IntMat pairing;
  for (const auto& row : g.at("pairing")) pairing.push_back(weight_from_json(row));
  std::vector<IntVec> roots, coroots;
  for (const auto& r : g.at("roots")) roots.push_back(weight_from_json(r));
  for (const auto& r : g.at("coroots")) coroots.push_back(weight_from_json(r));
  std::vector<int> simple;
  for (const auto& s : g.at("simple")) simple.push_back(s.get<int>());
  out.rd = build_explicit(pairing, roots, coroots, simple, opt);
  out.echo = json{{"explicit", true}, {"rank", out.rd.dim}};
  return out;
}

inline GroupSpec load_group(const std::string& path) { return parse_group(read_json_file(path)); }

// --- matrix files ---------------------------------------------------------------

struct MatrixFile {
  int n = 0;
  bool rational = true;
  Int prime = 0;
  bool exact = true;
  long long precision = 0;
  // entries[i][j] = list of (exponent, coefficient string)
  std::vector<std::vector<std::vector<std::pair<Int, std::string>>>> entries;
  std::optional<int> econfig_e;
  bool econfig_special = false;
  std::vector<std::string> econfig_pis;
};

inline MatrixFile parse_matrix_file(const json& j) {
  MatrixFile mf;
  mf.n = j.at("n").get<int>();
  if (mf.n < 1) throw InputError("matrix size must be positive");
  const json& f = j.at("field");
  if (f.is_string() && f.get<std::string>() == "rationals") {
    mf.rational = true;
  } else if (f.is_object() && f.contains("prime")) {
    mf.rational = false;
    mf.prime = f.at("prime").get<Int>();
  } else {
    throw InputError("field must be \"rationals\" or {\"prime\": p}");
  }
  if (j.contains("precision")) {
    const json& p = j.at("precision");
    if (p.is_string() && p.get<std::string>() == "exact") {
      mf.exact = true;
    } else if (p.is_number_integer()) {
      mf.exact = false;
      mf.precision = p.get<long long>();
    } else {
      throw InputError("precision must be \"exact\" or an integer");
    }
  }  // omitted: the finite entry lists are the whole entries, i.e. exact
  const json& rows = j.at("entries");
  if (static_cast<int>(rows.size()) != mf.n) throw InputError("entry row count differs from n");
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != mf.n) throw InputError("entry column count differs from n");
    std::vector<std::vector<std::pair<Int, std::string>>> r;
    for (const auto& cell : row) {
      std::vector<std::pair<Int, std::string>> terms;
      for (const auto& term : cell) {
        if (!term.is_array() || term.size() != 2)
          throw InputError("matrix entry terms are [exponent, coefficient] pairs");
        std::string coeff = term.at(1).is_string() ? term.at(1).get<std::string>()
                                                   : term.at(1).dump();
        terms.emplace_back(term.at(0).get<Int>(), coeff);
      }
      r.push_back(std::move(terms));
    }
    mf.entries.push_back(std::move(r));
  }
  if (j.contains("econfig")) {
    const json& ec = j.at("econfig");
    if (ec.contains("pis")) {
      for (const auto& pi : ec.at("pis"))
        mf.econfig_pis.push_back(pi.is_string() ? pi.get<std::string>() : pi.dump());
      mf.econfig_e = static_cast<int>(mf.econfig_pis.size());
    } else {
      mf.econfig_e = ec.at("e").get<int>();
      mf.econfig_special = ec.value("special", true);
    }
  }
  return mf;
}

template <class Ctx>
SeriesMatrix<typename Ctx::Field> build_matrix(const MatrixFile& mf, const Ctx& ctx) {
  using K = typename Ctx::Field;
  SeriesMatrix<K> m(mf.n, mf.exact ? kExactPrec : mf.precision);
  for (int i = 0; i < mf.n; ++i)
    for (int j = 0; j < mf.n; ++j) {
      Frac<K> entry;
      for (const auto& [exp, coeff] : mf.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
        entry += Frac<K>::monomial(ctx.parse(coeff), static_cast<int>(exp));
      m.at(i, j) = entry;
    }
  return m;
}

template <class Ctx>
EConfig<typename Ctx::Field> build_econfig(const MatrixFile& mf, const Ctx& ctx) {
  using K = typename Ctx::Field;
  if (!mf.econfig_e) throw InputError("no E-configuration given (file econfig or flags)");
  if (!mf.econfig_pis.empty()) {
    std::vector<K> pis;
    for (const auto& s : mf.econfig_pis) pis.push_back(ctx.parse(s));
    return EConfig<K>::generic_fibre(std::move(pis));
  }
  if (!mf.econfig_special) throw InputError("generic fibre needs explicit pis");
  return EConfig<K>::special_fibre(*mf.econfig_e);
}

// --- reports ---------------------------------------------------------------------

inline json bounds_json(const BoundsReport& rep) {
  json g;
  g["a1"] = rep.gate_a1;
  g["a2"] = rep.gate_a2;
  g["nu"] = rep.gate_nu;
  g["max_root_sum"] = rep.max_root_sum;
  g["strictly_dominant"] = rep.strictly_dominant;
  return g;
}

inline json hodge_json(const HodgeType& h) {
  json out;
  out["e"] = h.e;
  json mus = json::array();
  for (const IntVec& mu : h.mus) mus.push_back(weight_json(mu));
  out["mus"] = mus;
  out["residue_char"] = h.residue_char;
  out["nu"] = h.nu;
  return out;
}

inline HodgeType hodge_from_json(const json& j) {
  HodgeType h;
  h.e = j.at("e").get<int>();
  for (const auto& mu : j.at("mus")) h.mus.push_back(weight_from_json(mu));
  h.residue_char = j.at("residue_char").get<Int>();
  h.nu = j.at("nu").get<Int>();
  return h;
}

inline json cycle_report(const json& group_echo, const HodgeType& h, const BoundsReport& rep,
                         const std::string& enforced_gate, bool enforced_pass,
                         const CycleCoefficients& cc, const RootDatum& rd) {
  json out;
  out["group"] = group_echo;
  out["hodge_type"] = hodge_json(h);
  json gates = bounds_json(rep);
  gates["enforced"] = enforced_gate;
  gates["enforced_pass"] = enforced_pass;
  out["gates"] = gates;
  out["rho"] = weight_json(cc.rho);
  RootDatum rdd = rd.dual();
  json coeffs = json::array();
  Int dim_sum = 0;
  for (const auto& [lam, m] : cc.coeffs) {
    json c;
    c["lambda"] = weight_json(lam);
    c["m"] = m;
    // the Hodge type of the corresponding cycle: (lambda + rho, rho, ..., rho)
    json tup = json::array();
    tup.push_back(weight_json(vec_add(lam, cc.rho)));
    for (int i = 1; i < h.e; ++i) tup.push_back(weight_json(cc.rho));
    c["hodge_tuple"] = tup;
    IntVec shifted = vec_add(lam, vec_scale(cc.rho, h.e));
    c["cycle_dim"] = cycle_dimension(shifted, h.e, rd);
    c["schubert_dim"] = schubert_dimension(shifted, rd);
    c["leading"] = (lam == cc.leading);
    coeffs.push_back(c);
    dim_sum += m * weyl_dimension(lam, rdd);
  }
  out["coefficients"] = coeffs;
  Int lhs_dim = 1;
  for (const IntVec& mu : h.mus) lhs_dim *= weyl_dimension(vec_sub(mu, cc.rho), rdd);
  out["dimension_check"] = json{{"product", lhs_dim}, {"sum", dim_sum}, {"equal", lhs_dim == dim_sum}};
  out["e_dim_G_mod_B"] = static_cast<Int>(h.e * rd.num_positive());
  // display-only Part-2 tally with f = 1: dim G + [K:Q_p] dim G/B
  out["total_dim_with_group"] =
      static_cast<Int>(rd.dim + rd.roots.size() + h.e * rd.num_positive());
  return out;
}

// reads the "coefficients" list of a cycle report (or a bare list) back
inline std::map<IntVec, Int> coefficients_from_json(const json& j) {
  const json& list = j.is_array() ? j : j.at("coefficients");
  std::map<IntVec, Int> out;
  for (const auto& c : list) out[weight_from_json(c.at("lambda"))] = c.at("m").get<Int>();
  return out;
}

inline void write_report(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

// CharacterElement as a list of (weight, coefficient) pairs; the term map is
// ordered lexicographically already
inline json character_json(const CharacterElement& x) {
  json out = json::array();
  for (const auto& [w, c] : x.terms()) out.push_back(json::array({weight_json(w), c}));
  return out;
}

// a matrix back in the input format (u-Laurent entries only)
template <class K>
json matrix_json(const SeriesMatrix<K>& m, const json& field, const EConfig<K>& ec) {
  json out;
  out["n"] = m.size();
  out["field"] = field;
  out["precision"] = m.exact() ? json("exact") : json(m.prec());
  json rows = json::array();
  for (int i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.size(); ++j) {
      const Frac<K>& f = m.at(i, j);
      json cell = json::array();
      if (!f.is_zero()) {
        if (!f.is_u_laurent())
          throw InputError("matrix entry is not Laurent in u; cannot serialize");
        for (int d = f.laurent_mindeg(); d <= f.laurent_maxdeg(); ++d) {
          K c = f.laurent_coeff(d);
          if (!field_is_zero(c)) cell.push_back(json::array({d, field_str(c)}));
        }
      }
      row.push_back(cell);
    }
    rows.push_back(row);
  }
  out["entries"] = rows;
  json ej;
  if (ec.special) {
    ej["e"] = ec.e;
    ej["special"] = true;
  } else {
    json pis = json::array();
    for (const K& pi : ec.pis) pis.push_back(field_str(pi));
    ej["pis"] = pis;
  }
  out["econfig"] = ej;
  return out;
}

}  // namespace grcycle::io
