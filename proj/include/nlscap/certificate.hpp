#pragma once
// Proof certificates on disk.  A certificate is a JSON document holding the
// complete input (options and seed coefficients) and the complete output of a
// proof run, with every floating-point number stored as a hexadecimal literal
// so that values survive the round trip bit for bit.  Rechecking a
// certificate replays the whole pipeline from the stored input and demands
// that the replay reproduce the stored output exactly — any library, compiler
// or data change that affects a single bit of the proof is caught.
// Certificates carry no timestamps or host information: the same input yields
// the same file.

#include <nlscap/pipeline.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlscap {

namespace detail {

inline std::string hex_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%a", v);
  return std::string(buf);
}

inline double parse_hex_double(const std::string& s) {
  if (s.empty()) throw std::runtime_error("empty number in certificate");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw std::runtime_error("malformed number in certificate: " + s);
  return v;
}

inline nlohmann::json json_cplx(std::complex<double> z) {
  return nlohmann::json::array({hex_double(z.real()), hex_double(z.imag())});
}

inline std::complex<double> cplx_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::runtime_error("malformed complex number in certificate");
  return {parse_hex_double(j[0].get<std::string>()),
          parse_hex_double(j[1].get<std::string>())};
}

inline nlohmann::json json_cvec(const std::vector<std::complex<double>>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& z : v) a.push_back(json_cplx(z));
  return a;
}

inline std::vector<std::complex<double>> cvec_from_json(
    const nlohmann::json& j) {
  std::vector<std::complex<double>> v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(cplx_from_json(e));
  return v;
}

inline nlohmann::json json_bounds(const RadiiBounds& b) {
  return {{"Y0", hex_double(b.Y0)},
          {"Z0", hex_double(b.Z0)},
          {"Z1", hex_double(b.Z1)},
          {"Z2", hex_double(b.Z2)}};
}

}  // namespace detail

inline nlohmann::json certificate_json(
    const ProofOptions& opt, const std::vector<std::complex<double>>& seed,
    const ProofResult& r) {
  using detail::hex_double;
  using detail::json_cplx;
  using detail::json_cvec;
  nlohmann::json cert;
  cert["format"] = 1;
  cert["kind"] = "connecting-orbit existence proof";
  cert["equation"] = "-i u_t = u_xx + u^2, even periodic, period 1";

  cert["options"] = {{"equilibrium_modes", opt.eq_modes},
                     {"nu", hex_double(opt.nu)},
                     {"modes", opt.modes},
                     {"orders", opt.orders},
                     {"scale", hex_double(opt.scale_l2)},
                     {"theta", hex_double(opt.theta)},
                     {"sigma", json_cplx(opt.sigma)},
                     {"coeffs", opt.coeffs},
                     {"step", hex_double(opt.step)},
                     {"steps", opt.steps},
                     {"stop", opt.stop}};
  cert["seed"] = json_cvec(seed);

  nlohmann::json proof;
  proof["success"] = r.success;
  proof["message"] = r.message;

  {
    const EquilibriumResult& e = r.equilibrium;
    proof["equilibrium"] = {{"success", e.success},
                            {"message", e.message},
                            {"modes", e.modes},
                            {"k0", e.k0},
                            {"nu", hex_double(e.nu)},
                            {"lambda", json_cplx(e.lambda)},
                            {"a", json_cvec(e.a)},
                            {"b", json_cvec(e.b)},
                            {"r0", hex_double(e.r0)},
                            {"bounds", detail::json_bounds(e.bounds)},
                            {"newton_residual", hex_double(e.newton_residual)}};
  }
  {
    const ManifoldResult& m = r.manifold;
    nlohmann::json taylor = nlohmann::json::array();
    for (const auto& row : m.p) taylor.push_back(json_cvec(row));
    proof["manifold"] = {{"success", m.success},
                         {"message", m.message},
                         {"K", m.K},
                         {"M", m.M},
                         {"nu", hex_double(m.nu)},
                         {"theta", hex_double(m.theta)},
                         {"scale", hex_double(m.scale)},
                         {"lambda", json_cplx(m.lambda)},
                         {"lambda_r0", hex_double(m.lambda_r0)},
                         {"taylor", taylor},
                         {"rp", hex_double(m.rp)},
                         {"bounds", detail::json_bounds(m.bounds)},
                         {"norm_X", hex_double(m.norm_X)},
                         {"alpha_op", hex_double(m.alpha_op)},
                         {"mu_star", hex_double(m.mu_star)}};
  }
  proof["chart_point"] = {{"phi0", json_cvec(r.phi0)},
                          {"eps0", hex_double(r.eps0)},
                          {"epsinf", hex_double(r.epsinf)}};
  {
    const IntegrationResult& f = r.flow;
    nlohmann::json steps = nlohmann::json::array();
    for (const StepCertificate& s : f.steps) {
      nlohmann::json table = nlohmann::json::array();
      for (const auto& row : s.c) table.push_back(json_cvec(row));
      steps.push_back({{"c", table},
                       {"newton_residual", hex_double(s.newton_residual)},
                       {"d0", hex_double(s.d0)},
                       {"dinf", hex_double(s.dinf)},
                       {"normX", hex_double(s.normX)},
                       {"W0", hex_double(s.W0)},
                       {"Winf", hex_double(s.Winf)},
                       {"Wbar", hex_double(s.Wbar)},
                       {"Wsup", hex_double(s.Wsup)},
                       {"kappa", hex_double(s.kappa)},
                       {"eps0", hex_double(s.eps0)},
                       {"epsinf", hex_double(s.epsinf)},
                       {"rho0", hex_double(s.rho0)},
                       {"rhoinf", hex_double(s.rhoinf)}});
    }
    proof["flow"] = {{"success", f.success},
                     {"message", f.message},
                     {"modes", f.modes},
                     {"coeffs", f.coeffs},
                     {"step", hex_double(f.step)},
                     {"steps", steps},
                     {"phi_end", json_cvec(f.phi_end)},
                     {"rho0_end", hex_double(f.rho0_end)},
                     {"rhoinf_end", hex_double(f.rhoinf_end)}};
  }
  proof["handoff"] = {{"z0", json_cplx(r.handoff.z0)},
                      {"tail_norm", hex_double(r.handoff.tail_norm)},
                      {"rho0_enc", hex_double(r.handoff.rho0_enc)},
                      {"rhoinf_enc", hex_double(r.handoff.rhoinf_enc)}};
  proof["stable"] = {{"success", r.stable.success},
                     {"message", r.stable.message},
                     {"rho0", hex_double(r.stable.rho0)},
                     {"rho1", hex_double(r.stable.rho1)},
                     {"margin", hex_double(r.stable.margin)},
                     {"witness_r", hex_double(r.stable.witness_r)}};
  // Symmetry bookkeeping for companion orbits; see conjugate_certificate and
  // rescale_certificate below.  A freshly computed proof is the unreversed,
  // unscaled member of its family.
  proof["symmetry"] = {{"time_reversed", false},
                       {"rescaling", 1},
                       {"orbit", "equilibrium -> zero"}};
  cert["proof"] = proof;
  return cert;
}

inline void save_certificate(const std::string& path,
                             const nlohmann::json& cert) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write certificate: " + path);
  f << cert.dump(1) << '\n';
  if (!f) throw std::runtime_error("failed writing certificate: " + path);
}

inline nlohmann::json load_certificate(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read certificate: " + path);
  nlohmann::json cert = nlohmann::json::parse(f, nullptr, true);
  if (!cert.is_object() || !cert.contains("format") ||
      cert["format"].get<int>() != 1)
    throw std::runtime_error("unrecognized certificate format: " + path);
  return cert;
}

inline ProofOptions options_from_certificate(const nlohmann::json& cert) {
  using detail::parse_hex_double;
  const nlohmann::json& o = cert.at("options");
  ProofOptions opt;
  opt.eq_modes = o.at("equilibrium_modes").get<int>();
  opt.nu = parse_hex_double(o.at("nu").get<std::string>());
  opt.modes = o.at("modes").get<int>();
  opt.orders = o.at("orders").get<int>();
  opt.scale_l2 = parse_hex_double(o.at("scale").get<std::string>());
  opt.theta = parse_hex_double(o.at("theta").get<std::string>());
  opt.sigma = detail::cplx_from_json(o.at("sigma"));
  opt.coeffs = o.at("coeffs").get<int>();
  opt.step = parse_hex_double(o.at("step").get<std::string>());
  opt.steps = o.at("steps").get<int>();
  opt.stop = o.at("stop").get<std::string>();
  return opt;
}

inline std::vector<std::complex<double>> seed_from_certificate(
    const nlohmann::json& cert) {
  return detail::cvec_from_json(cert.at("seed"));
}

// The equation's symmetries hand out companion orbits for free: if u(t)
// solves it, so does the conjugate reversal u(-t)*, and so does every member
// of the rescaling family n^2 u(n^2 t, n x).  The two transforms below only
// annotate a certificate accordingly — every stored enclosure is carried over
// bit for bit, because the companion orbit is certified by the original data.

// Re-labels the certificate for the time-reversed conjugate orbit, which runs
// from zero into the conjugate equilibrium.  Applying it twice restores the
// original certificate exactly.
inline nlohmann::json conjugate_certificate(const nlohmann::json& cert) {
  nlohmann::json out = cert;
  nlohmann::json& sym = out.at("proof").at("symmetry");
  const bool reversed = !sym.at("time_reversed").get<bool>();
  sym["time_reversed"] = reversed;
  sym["orbit"] =
      reversed ? "zero -> conjugate equilibrium" : "equilibrium -> zero";
  return out;
}

// Re-labels the certificate for the n-fold rescaled orbit (amplitude factor
// n^2, time compression n^2, mode dilation n).  Indices compose
// multiplicatively, and index 1 is the identity.
inline nlohmann::json rescale_certificate(const nlohmann::json& cert,
                                          long long n) {
  if (n < 1) throw std::invalid_argument("rescaling index must be >= 1");
  nlohmann::json out = cert;
  nlohmann::json& sym = out.at("proof").at("symmetry");
  const long long prev = sym.at("rescaling").get<long long>();
  if (prev < 1) throw std::invalid_argument("corrupt rescaling index");
  if (prev > 3037000499LL / n)  // keep idx and idx^2 exactly representable
    throw std::overflow_error("rescaling index too large");
  const long long idx = prev * n;
  sym["rescaling"] = idx;
  sym.erase("amplitude_factor");
  sym.erase("time_factor");
  sym.erase("mode_dilation");
  if (idx != 1) {
    sym["amplitude_factor"] = idx * idx;
    sym["time_factor"] = idx * idx;
    sym["mode_dilation"] = idx;
  }
  return out;
}

namespace detail {

// First differing location between two JSON trees, as a JSON-pointer-style
// path; empty when the trees agree.
inline std::string first_difference(const nlohmann::json& a,
                                    const nlohmann::json& b,
                                    const std::string& at) {
  // Parsed documents store non-negative integers unsigned while in-memory
  // trees built from int are signed; value comparison below handles that.
  if (a.type() != b.type() && !(a.is_number() && b.is_number()))
    return at.empty() ? "/" : at;
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) return at + "/" + it.key();
      const std::string d =
          first_difference(it.value(), b.at(it.key()), at + "/" + it.key());
      if (!d.empty()) return d;
    }
    for (auto it = b.begin(); it != b.end(); ++it)
      if (!a.contains(it.key())) return at + "/" + it.key();
    return "";
  }
  if (a.is_array()) {
    if (a.size() != b.size()) return at.empty() ? "/" : at;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string d =
          first_difference(a[i], b[i], at + "/" + std::to_string(i));
      if (!d.empty()) return d;
    }
    return "";
  }
  return a == b ? "" : (at.empty() ? "/" : at);
}

}  // namespace detail

struct RecheckResult {
  bool success = false;       // stored proof succeeds and replays bit-exactly
  bool replay_match = false;  // replay reproduced the stored output exactly
  std::string message;
};

inline RecheckResult recheck_certificate(const std::string& path) {
  RecheckResult out;
  nlohmann::json stored;
  ProofOptions opt;
  std::vector<std::complex<double>> seed;
  bool time_reversed = false;
  long long rescaling = 1;
  try {
    stored = load_certificate(path);
    opt = options_from_certificate(stored);
    seed = seed_from_certificate(stored);
    const nlohmann::json& sym = stored.at("proof").at("symmetry");
    time_reversed = sym.at("time_reversed").get<bool>();
    rescaling = sym.at("rescaling").get<long long>();
    if (rescaling < 1)
      throw std::runtime_error("invalid rescaling index in certificate");
  } catch (const std::exception& e) {
    out.message = e.what();
    return out;
  }

  const ProofResult replay = prove_heteroclinic(seed, opt);
  nlohmann::json fresh = certificate_json(opt, seed, replay);
  // The stored certificate may describe a symmetry companion of the computed
  // orbit; replay the annotation steps so the trees must agree exactly.
  if (time_reversed) fresh = conjugate_certificate(fresh);
  if (rescaling != 1) {
    try {
      fresh = rescale_certificate(fresh, rescaling);
    } catch (const std::exception& e) {
      out.message = e.what();
      return out;
    }
  }
  const std::string diff = detail::first_difference(stored, fresh, "");
  if (!diff.empty()) {
    out.message = "replay differs from the stored certificate at " + diff;
    return out;
  }
  out.replay_match = true;
  if (!replay.success) {
    out.message =
        "the stored run replays bit-exactly but does not certify an orbit: " +
        replay.message;
    return out;
  }
  out.success = true;
  out.message = "certificate verified: " + replay.message;
  return out;
}

}  // namespace nlscap
