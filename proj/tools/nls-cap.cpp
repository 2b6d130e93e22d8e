// Command-line front end for the proof library.
//
// Subcommands mirror the proof stages: `equilibrium` and `manifold` validate
// the departing fixed point and its local unstable manifold, `integrate` runs
// the certified time stepper, `verify-stable` checks a terminal state against
// the stable set of the decaying sector profiles, and `prove` chains all of
// them into one connecting-orbit certificate.  `recheck` replays a stored
// certificate and demands bit-exact agreement, `export` turns one into CSV
// tables, and `portrait` samples the homogeneous vector field for plots.
//
// Every number written into a JSON file is a hexadecimal float literal, so
// files round-trip bit for bit.  Exit status is 0 exactly when the requested
// validation succeeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <nlscap/certificate.hpp>
#include <nlscap/config.hpp>
#include <nlscap/pipeline.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using cplx = std::complex<double>;
using nlohmann::json;

std::string sci(double v) { return nlscap::detail::fmt_sci(v); }

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

void write_seq(const std::string& path, const std::vector<cplx>& a,
               const std::string& header) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "# " << header << "\n";
  for (std::size_t k = 0; k < a.size(); ++k)
    f << k << " " << full(a[k].real()) << " " << full(a[k].imag()) << "\n";
  if (!f) throw std::runtime_error("failed writing " + path);
  std::cout << "wrote " << path << "\n";
}

void write_json(const std::string& path, const json& doc) {
  nlscap::save_certificate(path, doc);
  std::cout << "wrote " << path << "\n";
}

// Cosine-series value a_0 + 2 sum_k a_k cos(2 pi k x) of one mode vector.
cplx series_at(const std::vector<cplx>& a, double x) {
  cplx u = a.empty() ? cplx{} : a[0];
  for (std::size_t k = 1; k < a.size(); ++k)
    u += 2.0 * a[k] * std::cos(2.0 * M_PI * double(k) * x);
  return u;
}

// ---- equilibrium -----------------------------------------------------------

int run_equilibrium(const std::string& seed_path, int modes, double nu,
                    const std::string& out) {
  nlscap::EquilibriumInput in;
  in.seed = nlscap::read_seed(seed_path);
  in.modes = modes;
  in.nu = nu;
  const nlscap::EquilibriumResult r = nlscap::validate_equilibrium(in);
  std::cout << (r.success ? "validated" : "FAILED") << ": " << r.message
            << "\n";
  if (r.success) {
    std::cout << "  r0      = " << sci(r.r0) << "\n";
    std::cout << "  lambda  = " << full(r.lambda.real()) << " + "
              << full(r.lambda.imag()) << " i\n";
    std::cout << "  a[0]    = " << full(r.a[0].real()) << " + "
              << full(r.a[0].imag()) << " i\n";
  }
  if (!out.empty()) {
    json doc;
    doc["format"] = 1;
    doc["kind"] = "equilibrium validation";
    doc["options"] = {{"modes", modes},
                      {"nu", nlscap::detail::hex_double(nu)}};
    doc["seed"] = nlscap::detail::json_cvec(in.seed);
    doc["result"] = {
        {"success", r.success},
        {"message", r.message},
        {"modes", r.modes},
        {"k0", r.k0},
        {"nu", nlscap::detail::hex_double(r.nu)},
        {"lambda", nlscap::detail::json_cplx(r.lambda)},
        {"a", nlscap::detail::json_cvec(r.a)},
        {"b", nlscap::detail::json_cvec(r.b)},
        {"r0", nlscap::detail::hex_double(r.r0)},
        {"bounds", nlscap::detail::json_bounds(r.bounds)},
        {"newton_residual", nlscap::detail::hex_double(r.newton_residual)}};
    write_json(out, doc);
  }
  return r.success ? 0 : 1;
}

// ---- manifold --------------------------------------------------------------

int run_manifold(const std::string& eq_path, int K, int M, double alpha,
                 double theta, const std::string& out,
                 const std::vector<std::string>& emit) {
  std::ifstream f(eq_path);
  if (!f) throw std::runtime_error("cannot read " + eq_path);
  const json eq_doc = json::parse(f);
  if (!eq_doc.is_object() || eq_doc.value("kind", "") != "equilibrium validation")
    throw std::runtime_error(eq_path + " is not an equilibrium validation file");

  nlscap::EquilibriumInput ein;
  ein.seed = nlscap::detail::cvec_from_json(eq_doc.at("seed"));
  ein.modes = eq_doc.at("options").at("modes").get<int>();
  ein.nu = nlscap::detail::parse_hex_double(
      eq_doc.at("options").at("nu").get<std::string>());
  const nlscap::EquilibriumResult eq = nlscap::validate_equilibrium(ein);
  if (!eq.success) {
    std::cout << "FAILED (equilibrium): " << eq.message << "\n";
    return 1;
  }

  const nlscap::ManifoldResult r =
      nlscap::validate_manifold(nlscap::manifold_input(eq, K, M, alpha, theta));
  std::cout << (r.success ? "validated" : "FAILED") << ": " << r.message
            << "\n";
  if (r.success) {
    std::cout << "  rp      = " << sci(r.rp) << "\n";
    std::cout << "  norm_X  = " << full(r.norm_X) << "\n";
    std::cout << "  mu_star = " << full(r.mu_star) << "\n";
  }

  if (!out.empty()) {
    json taylor = json::array();
    for (const auto& row : r.p) taylor.push_back(nlscap::detail::json_cvec(row));
    json doc;
    doc["format"] = 1;
    doc["kind"] = "unstable-manifold validation";
    doc["equilibrium"] = {{"options", eq_doc.at("options")},
                          {"seed", eq_doc.at("seed")}};
    doc["options"] = {{"K", K},
                      {"M", M},
                      {"alpha_l2", nlscap::detail::hex_double(alpha)},
                      {"theta", nlscap::detail::hex_double(theta)}};
    doc["result"] = {{"success", r.success},
                     {"message", r.message},
                     {"K", r.K},
                     {"M", r.M},
                     {"nu", nlscap::detail::hex_double(r.nu)},
                     {"theta", nlscap::detail::hex_double(r.theta)},
                     {"scale", nlscap::detail::hex_double(r.scale)},
                     {"lambda", nlscap::detail::json_cplx(r.lambda)},
                     {"lambda_r0", nlscap::detail::hex_double(r.lambda_r0)},
                     {"taylor", taylor},
                     {"rp", nlscap::detail::hex_double(r.rp)},
                     {"bounds", nlscap::detail::json_bounds(r.bounds)},
                     {"norm_X", nlscap::detail::hex_double(r.norm_X)},
                     {"alpha_op", nlscap::detail::hex_double(r.alpha_op)},
                     {"mu_star", nlscap::detail::hex_double(r.mu_star)}};
    write_json(out, doc);
  }

  if (!emit.empty()) {
    if (!r.success) {
      std::cout << "no endpoint emitted: the manifold did not validate\n";
      return 1;
    }
    if (emit.size() != 2)
      throw std::runtime_error("--emit-endpoint expects: {+1|-1} <file>");
    double sig = 0.0;
    if (emit[0] == "+1" || emit[0] == "1")
      sig = 1.0;
    else if (emit[0] == "-1")
      sig = -1.0;
    else
      throw std::runtime_error("endpoint parameter must be +1 or -1");
    const nlscap::ManifoldPoint pt =
        nlscap::evaluate_manifold(r, cplx(sig, 0.0));
    std::vector<cplx> mid(pt.coef.size());
    nlscap::Interval gap0(0.0), gapinf(0.0);
    for (std::size_t k = 0; k < pt.coef.size(); ++k) {
      const nlscap::CInterval& z = pt.coef[k];
      mid[k] = {0.5 * (z.re.lo + z.re.hi), 0.5 * (z.im.lo + z.im.hi)};
      const nlscap::CInterval d(z.re - nlscap::Interval(mid[k].real()),
                                z.im - nlscap::Interval(mid[k].imag()));
      if (k == 0)
        gap0 = nlscap::Interval(d.mag());
      else
        gapinf += 2.0 * nlscap::Interval(d.mag());
    }
    write_seq(emit[1], mid,
              "unstable-manifold endpoint at sigma = " + emit[0]);
    const double e0 = (gap0 + nlscap::Interval(pt.err)).hi;
    const double ei = (gapinf + nlscap::Interval(pt.err)).hi;
    std::cout << "  hand these to `integrate`: --eps0 " << full(e0)
              << " --epsinf " << full(ei) << "\n";
  }
  return r.success ? 0 : 1;
}

// ---- integrate -------------------------------------------------------------

json step_json(const nlscap::StepCertificate& s) {
  using nlscap::detail::hex_double;
  json table = json::array();
  for (const auto& row : s.c) table.push_back(nlscap::detail::json_cvec(row));
  return {{"c", table},
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
          {"rhoinf", hex_double(s.rhoinf)}};
}

nlscap::StableInput handoff_of(const std::vector<cplx>& phi, double e0,
                               double ei) {
  nlscap::StableInput h;
  h.z0 = phi[0];
  nlscap::Interval tail(0.0);
  for (std::size_t k = 1; k < phi.size(); ++k)
    tail += 2.0 * nlscap::Interval(
                      nlscap::CInterval(nlscap::Interval(phi[k].real()),
                                        nlscap::Interval(phi[k].imag()))
                          .mag());
  h.tail_norm = tail.hi;
  h.rho0_enc = e0;
  h.rhoinf_enc = ei;
  return h;
}

int run_integrate(const std::string& initial, double eps0, double epsinf,
                  double h, int coeffs, int fourier_k, int max_steps,
                  const std::string& stop, const std::string& out,
                  const std::string& csv) {
  if (stop != "fixed" && stop != "stable-set")
    throw std::runtime_error("--stop must be 'fixed' or 'stable-set'");
  std::vector<cplx> phi = nlscap::read_seed(initial);
  if (fourier_k >= 0 && int(phi.size()) != fourier_k + 1)
    throw std::runtime_error("initial data carry " +
                             std::to_string(phi.size() - 1) +
                             " modes, --fourier-K says " +
                             std::to_string(fourier_k));

  nlscap::IntegratorOptions opt;
  opt.coeffs = coeffs;
  opt.step = h;
  opt.steps = 1;
  double e0 = eps0, ei = epsinf;
  std::vector<nlscap::StepCertificate> steps;
  bool settled = false;
  nlscap::StableCertificate stable;
  std::string failure;
  for (int s = 0; s < max_steps && !settled; ++s) {
    opt.eps0 = e0;
    opt.epsinf = ei;
    const nlscap::IntegrationResult one = nlscap::integrate_orbit(phi, opt);
    if (!one.success) {
      failure = "step " + std::to_string(s + 1) + ": " + one.message;
      break;
    }
    steps.push_back(one.steps.front());
    phi = one.phi_end;
    e0 = one.rho0_end;
    ei = one.rhoinf_end;
    if (stop == "stable-set") {
      stable = nlscap::verify_stable(handoff_of(phi, e0, ei));
      settled = stable.success;
    }
  }

  const bool ok = failure.empty() && (stop == "fixed" || settled);
  std::cout << (ok ? "certified " : "FAILED after ") << steps.size()
            << " steps (t = " << full(double(steps.size()) * h) << ")\n";
  if (!failure.empty()) std::cout << "  " << failure << "\n";
  if (!steps.empty()) {
    std::cout << "  rho0   = " << sci(e0) << "\n";
    std::cout << "  rhoinf = " << sci(ei) << "\n";
  }
  if (stop == "stable-set")
    std::cout << "  stable set: " << stable.message << "\n";

  if (!out.empty()) {
    json doc;
    doc["format"] = 1;
    doc["kind"] = "flow certification";
    doc["options"] = {{"coeffs", coeffs},
                      {"step", nlscap::detail::hex_double(h)},
                      {"max_steps", max_steps},
                      {"stop", stop},
                      {"eps0", nlscap::detail::hex_double(eps0)},
                      {"epsinf", nlscap::detail::hex_double(epsinf)}};
    doc["initial"] = nlscap::detail::json_cvec(nlscap::read_seed(initial));
    json jsteps = json::array();
    for (const auto& s : steps) jsteps.push_back(step_json(s));
    doc["result"] = {{"success", ok},
                     {"message", failure.empty() ? "certified" : failure},
                     {"steps", jsteps},
                     {"phi_end", nlscap::detail::json_cvec(phi)},
                     {"rho0_end", nlscap::detail::hex_double(e0)},
                     {"rhoinf_end", nlscap::detail::hex_double(ei)}};
    if (stop == "stable-set")
      doc["result"]["stable"] = {
          {"success", stable.success},
          {"message", stable.message},
          {"rho0", nlscap::detail::hex_double(stable.rho0)},
          {"rho1", nlscap::detail::hex_double(stable.rho1)},
          {"margin", nlscap::detail::hex_double(stable.margin)},
          {"witness_r", nlscap::detail::hex_double(stable.witness_r)}};
    write_json(out, doc);
  }

  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw std::runtime_error("cannot write " + csv);
    f << "step,t0,t1,newton_residual,d0,dinf,normX,W0,Winf,Wbar,Wsup,kappa,"
         "eps0,epsinf,rho0,rhoinf\n";
    for (std::size_t s = 0; s < steps.size(); ++s) {
      const auto& c = steps[s];
      f << (s + 1) << "," << full(double(s) * h) << ","
        << full(double(s + 1) * h) << "," << full(c.newton_residual) << ","
        << full(c.d0) << "," << full(c.dinf) << "," << full(c.normX) << ","
        << full(c.W0) << "," << full(c.Winf) << "," << full(c.Wbar) << ","
        << full(c.Wsup) << "," << full(c.kappa) << "," << full(c.eps0) << ","
        << full(c.epsinf) << "," << full(c.rho0) << "," << full(c.rhoinf)
        << "\n";
    }
    if (!f) throw std::runtime_error("failed writing " + csv);
    std::cout << "wrote " << csv << "\n";
  }
  return ok ? 0 : 1;
}

// ---- verify-stable ---------------------------------------------------------

int run_verify_stable(const std::string& endpoint, int p, double eps0,
                      double epsinf) {
  if (p != 2)
    throw std::runtime_error(
        "the quadratic equation fixes p = 2; other powers are available only "
        "through `portrait`");
  const std::vector<cplx> a = nlscap::read_seed(endpoint);
  const nlscap::StableCertificate r =
      nlscap::verify_stable(handoff_of(a, eps0, epsinf));
  std::cout << (r.success ? "stable" : "NOT CERTIFIED") << ": " << r.message
            << "\n";
  std::cout << "  rho0      = " << full(r.rho0) << "\n";
  std::cout << "  rho1      = " << full(r.rho1) << "\n";
  std::cout << "  margin    = " << full(r.margin) << "\n";
  if (r.success) std::cout << "  witness r = " << full(r.witness_r) << "\n";
  return r.success ? 0 : 1;
}

// ---- portrait --------------------------------------------------------------

int run_portrait(int p, int grid, const std::string& out) {
  if (p < 2) throw std::runtime_error("--p must be at least 2");
  if (grid < 2) throw std::runtime_error("--grid must be at least 2");
  const nlscap::Interval cp = nlscap::sector_constant(p);
  std::cout << "sector constant C_" << p << " in [" << full(cp.lo) << ", "
            << full(cp.hi) << "]\n";

  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << "kind,id,t,re,im,dre,dim\n";

  // vector-field samples of z' = i z^p on a centered box
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double x = -2.0 + 4.0 * double(i) / double(grid - 1);
      const double y = -2.0 + 4.0 * double(j) / double(grid - 1);
      cplx zp(1.0, 0.0);
      for (int q = 0; q < p; ++q) zp *= cplx(x, y);
      const cplx d = cplx(0.0, 1.0) * zp;
      f << "field,0,0," << full(x) << "," << full(y) << "," << full(d.real())
        << "," << full(d.imag()) << "\n";
    }
  }

  // nonrigorous trajectories from a spread of starting points
  const std::vector<cplx> starts = {{0.0, 1.0},  {0.5, 0.5},  {-0.5, 0.5},
                                    {1.0, 0.1},  {-1.0, 0.1}, {0.0, 0.25},
                                    {0.4, -0.2}, {-0.4, -0.2}};
  const double dt = 1e-3;
  for (std::size_t id = 0; id < starts.size(); ++id) {
    cplx z = starts[id];
    for (int n = 0; n <= 3000; ++n) {
      if (n % 25 == 0)
        f << "orbit," << id << "," << full(double(n) * dt) << ","
          << full(z.real()) << "," << full(z.imag()) << ",0,0\n";
      auto rhs = [p](cplx w) {
        cplx wp(1.0, 0.0);
        for (int q = 0; q < p; ++q) wp *= w;
        return cplx(0.0, 1.0) * wp;
      };
      const cplx k1 = rhs(z);
      const cplx k2 = rhs(z + 0.5 * dt * k1);
      const cplx k3 = rhs(z + 0.5 * dt * k2);
      const cplx k4 = rhs(z + dt * k3);
      z += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (std::abs(z) > 10.0) break;
    }
  }

  // closed-form decaying profiles (quadratic case only)
  if (p == 2) {
    for (std::size_t id = 0; id < starts.size(); ++id) {
      if (starts[id].imag() < 0.0) continue;
      for (int n = 0; n <= 120; ++n) {
        const double t = 3.0 * double(n) / 120.0;
        const nlscap::CInterval z =
            nlscap::sector_profile(starts[id], t);
        f << "profile," << id << "," << full(t) << ","
          << full(0.5 * (z.re.lo + z.re.hi)) << ","
          << full(0.5 * (z.im.lo + z.im.hi)) << ",0,0\n";
      }
    }
  }
  if (!f) throw std::runtime_error("failed writing " + out);
  std::cout << "wrote " << out << "\n";
  return 0;
}

// ---- prove / recheck -------------------------------------------------------

int run_prove(const std::string& config_path, std::string out) {
  const nlscap::Config cfg = nlscap::load_config(config_path);
  const std::string seed_path = cfg.get_string("seed");
  nlscap::ProofOptions opt;
  opt.eq_modes = cfg.get_int("equilibrium_modes", opt.eq_modes);
  opt.nu = cfg.get_double("nu", opt.nu);
  opt.modes = cfg.get_int("modes", opt.modes);
  opt.orders = cfg.get_int("orders", opt.orders);
  opt.scale_l2 = cfg.get_double("scale", opt.scale_l2);
  opt.theta = cfg.get_double("theta", opt.theta);
  const int sigma = cfg.get_int("sigma", 1);
  if (sigma != 1 && sigma != -1)
    throw std::runtime_error("config: sigma must be 1 or -1");
  opt.sigma = cplx(double(sigma), 0.0);
  opt.coeffs = cfg.get_int("coeffs", opt.coeffs);
  opt.step = cfg.get_double("step", opt.step);
  opt.steps = cfg.get_int("steps", opt.steps);
  opt.stop = cfg.get_string("stop", opt.stop);
  if (out.empty()) out = cfg.get_string("out", "");

  const std::vector<cplx> seed = nlscap::read_seed(seed_path);
  const nlscap::ProofResult r = nlscap::prove_heteroclinic(seed, opt);

  std::cout << "equilibrium: "
            << (r.equilibrium.success ? "r0 = " + sci(r.equilibrium.r0)
                                      : r.equilibrium.message)
            << "\n";
  if (r.equilibrium.success)
    std::cout << "manifold:    "
              << (r.manifold.success ? "rp = " + sci(r.manifold.rp)
                                     : r.manifold.message)
              << "\n";
  if (r.manifold.success && !r.flow.steps.empty())
    std::cout << "flow:        " << r.flow.steps.size()
              << " steps, rho0 = " << sci(r.flow.rho0_end)
              << ", rhoinf = " << sci(r.flow.rhoinf_end) << "\n";
  if (r.flow.success)
    std::cout << "stable set:  "
              << (r.stable.success
                      ? "rho0 = " + full(r.stable.rho0) +
                            ", margin = " + sci(r.stable.margin)
                      : r.stable.message)
              << "\n";
  std::cout << (r.success ? "PROVED" : "FAILED") << ": " << r.message << "\n";

  if (!out.empty()) write_json(out, nlscap::certificate_json(opt, seed, r));
  return r.success ? 0 : 1;
}

int run_recheck(const std::string& path) {
  const nlscap::RecheckResult rc = nlscap::recheck_certificate(path);
  std::cout << (rc.success ? "OK" : "FAILED") << ": " << rc.message << "\n";
  return rc.success ? 0 : 1;
}

// ---- export ----------------------------------------------------------------

std::vector<cplx> cvec_of(const json& j) {
  return nlscap::detail::cvec_from_json(j);
}

int run_export(const std::string& path, bool csv, bool plots,
               const std::string& out_dir) {
  const json cert = nlscap::load_certificate(path);
  const json& proof = cert.at("proof");
  const json& flow = proof.at("flow");
  const double h =
      nlscap::detail::parse_hex_double(flow.at("step").get<std::string>());
  const int coeffs = flow.at("coeffs").get<int>();
  std::vector<std::string> written;

  if (csv) {
    const std::string orbit_path = out_dir + "/orbit.csv";
    std::ofstream f(orbit_path);
    if (!f) throw std::runtime_error("cannot write " + orbit_path);
    const int nx = 9;  // samples of the even profile over half a period
    f << "t,rho0,rhoinf";
    for (int i = 0; i < nx; ++i)
      f << ",u_re_" << i << ",u_im_" << i;
    f << "\n";
    const json& steps = flow.at("steps");
    for (std::size_t s = 0; s < steps.size(); ++s) {
      nlscap::StepCertificate sc;
      for (const auto& row : steps[s].at("c")) sc.c.push_back(cvec_of(row));
      const double rho0 = nlscap::detail::parse_hex_double(
          steps[s].at("rho0").get<std::string>());
      const double rhoinf = nlscap::detail::parse_hex_double(
          steps[s].at("rhoinf").get<std::string>());
      // one row per Chebyshev node, in increasing time order
      for (int n = coeffs - 1; n >= 0; --n) {
        const double tau =
            std::cos(M_PI * (2.0 * double(n) + 1.0) / (2.0 * double(coeffs)));
        const double t = double(s) * h + 0.5 * h * (tau + 1.0);
        const std::vector<cplx> a = nlscap::step_value(sc, tau);
        f << full(t) << "," << full(rho0) << "," << full(rhoinf);
        for (int i = 0; i < nx; ++i) {
          const cplx u = series_at(a, double(i) / (2.0 * double(nx - 1)));
          f << "," << full(u.real()) << "," << full(u.imag());
        }
        f << "\n";
      }
    }
    if (!f) throw std::runtime_error("failed writing " + orbit_path);
    std::cout << "wrote " << orbit_path << "\n";
    written.push_back("orbit.csv");
  }

  if (plots) {
    const std::string prof_path = out_dir + "/profiles.csv";
    std::ofstream f(prof_path);
    if (!f) throw std::runtime_error("cannot write " + prof_path);
    const std::vector<cplx> eq = cvec_of(proof.at("equilibrium").at("a"));
    const std::vector<cplx> start = cvec_of(proof.at("chart_point").at("phi0"));
    const std::vector<cplx> last = cvec_of(flow.at("phi_end"));
    f << "x,equilibrium_re,equilibrium_im,start_re,start_im,end_re,end_im\n";
    for (int i = 0; i <= 100; ++i) {
      const double x = 0.5 * double(i) / 100.0;
      const cplx ue = series_at(eq, x), us = series_at(start, x),
                 ul = series_at(last, x);
      f << full(x) << "," << full(ue.real()) << "," << full(ue.imag()) << ","
        << full(us.real()) << "," << full(us.imag()) << "," << full(ul.real())
        << "," << full(ul.imag()) << "\n";
    }
    if (!f) throw std::runtime_error("failed writing " + prof_path);
    std::cout << "wrote " << prof_path << "\n";
    written.push_back("profiles.csv");
  }

  json manifest;
  manifest["format"] = 1;
  manifest["kind"] = "run manifest";
  manifest["source"] = path;
  manifest["options"] = cert.at("options");
  manifest["seed_modes"] = cert.at("seed").size() - 1;
  manifest["proof"] = {
      {"success", proof.at("success")},
      {"message", proof.at("message")},
      {"equilibrium_r0", proof.at("equilibrium").at("r0")},
      {"manifold_rp", proof.at("manifold").at("rp")},
      {"flow_steps", flow.at("steps").size()},
      {"flow_rho0", flow.at("rho0_end")},
      {"flow_rhoinf", flow.at("rhoinf_end")},
      {"stable_margin", proof.at("stable").at("margin")},
      {"symmetry", proof.at("symmetry")}};
  manifest["outputs"] = written;
  write_json(out_dir + "/manifest.json", manifest);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "nls-cap: computer-assisted existence proofs for connecting orbits of "
      "the quadratic Schrodinger equation on the circle"};
  // free the short name so `integrate --h` can be the step length
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);

  // equilibrium
  std::string eq_seed, eq_out;
  int eq_modes = 28;
  double eq_nu = 1.0;
  auto* eq = app.add_subcommand("equilibrium",
                                "validate an equilibrium and its unstable "
                                "eigenpair from a seed file");
  eq->add_option("--seed", eq_seed, "seed file (rows: index re im)")
      ->required();
  eq->add_option("--modes", eq_modes, "mode window size");
  eq->add_option("--nu", eq_nu, "geometric sequence weight");
  eq->add_option("--out", eq_out, "write a validation JSON file");

  // manifold
  std::string mf_eq, mf_out;
  int mf_k = 27, mf_m = 150;
  double mf_alpha = 20.0, mf_theta = 0.0;
  std::vector<std::string> mf_emit;
  auto* mf = app.add_subcommand(
      "manifold", "validate the local unstable manifold of an equilibrium");
  mf->add_option("--equilibrium", mf_eq,
                 "equilibrium validation JSON (from `equilibrium --out`)")
      ->required();
  mf->add_option("--K", mf_k, "Fourier mode window");
  mf->add_option("--M", mf_m, "Taylor order window");
  mf->add_option("--alpha-l2", mf_alpha, "l2 size of the first-order data");
  mf->add_option("--theta", mf_theta, "rotation of the first-order data");
  mf->add_option("--out", mf_out, "write a validation JSON file");
  mf->add_option("--emit-endpoint", mf_emit,
                 "write the chart endpoint at sigma = +1 or -1 to a seq file")
      ->expected(2);

  // integrate
  std::string in_initial, in_stop = "fixed", in_out, in_csv;
  double in_eps0 = 0.0, in_epsinf = 0.0, in_h = 2.5e-3;
  int in_n = 13, in_k = -1, in_max = 20;
  auto* integ = app.add_subcommand(
      "integrate", "run the certified time stepper from an initial sequence");
  integ->add_option("--initial", in_initial, "initial data seq file")
      ->required();
  integ->add_option("--eps0", in_eps0, "initial error budget, zero mode");
  integ->add_option("--epsinf", in_epsinf, "initial error budget, tail");
  integ->add_option("--h", in_h, "step length");
  integ->add_option("--cheb-N", in_n, "Chebyshev coefficients per step");
  integ->add_option("--fourier-K", in_k,
                    "expected mode window (checked against the file)");
  integ->add_option("--max-steps", in_max, "step budget");
  integ->add_option("--stop", in_stop,
                    "'fixed' runs the whole budget; 'stable-set' stops at the "
                    "first step whose endpoint certifies");
  integ->add_option("--out", in_out, "write a flow certification JSON file");
  integ->add_option("--csv", in_csv, "write per-step bounds as CSV");

  // verify-stable
  std::string vs_endpoint;
  int vs_p = 2;
  double vs_eps0 = 0.0, vs_epsinf = 0.0;
  auto* vs = app.add_subcommand(
      "verify-stable",
      "certify that a terminal state lies in the stable set");
  vs->add_option("--endpoint", vs_endpoint, "terminal data seq file")
      ->required();
  vs->add_option("--p", vs_p, "nonlinearity power (must be 2)");
  vs->add_option("--eps0", vs_eps0, "enclosure radius, zero mode");
  vs->add_option("--epsinf", vs_epsinf, "enclosure radius, tail");

  // portrait
  std::string pt_out;
  int pt_p = 2, pt_grid = 64;
  auto* pt = app.add_subcommand(
      "portrait", "sample the homogeneous field z' = i z^p for plotting");
  pt->add_option("--p", pt_p, "nonlinearity power");
  pt->add_option("--grid", pt_grid, "field samples per axis");
  pt->add_option("--out", pt_out, "CSV output file")->required();

  // prove
  std::string pr_config, pr_out;
  auto* pr = app.add_subcommand(
      "prove", "run the full connecting-orbit proof from a config file");
  pr->add_option("--config", pr_config, "flat key = value config file")
      ->required();
  pr->add_option("--out", pr_out,
                 "certificate path (overrides the config's `out`)");

  // recheck
  std::string rc_path;
  auto* rc = app.add_subcommand(
      "recheck", "replay a stored certificate and demand bit-exact agreement");
  rc->add_option("certificate", rc_path, "certificate JSON file")->required();

  // export
  std::string ex_path, ex_dir = ".";
  bool ex_csv = false, ex_plots = false;
  auto* ex = app.add_subcommand("export",
                                "turn a certificate into CSV tables and a "
                                "run manifest");
  ex->add_option("certificate", ex_path, "certificate JSON file")->required();
  ex->add_flag("--csv", ex_csv, "write per-node orbit samples (orbit.csv)");
  ex->add_flag("--plots", ex_plots,
               "write profile snapshots for plotting (profiles.csv)");
  ex->add_option("--out-dir", ex_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eq->parsed()) return run_equilibrium(eq_seed, eq_modes, eq_nu, eq_out);
    if (mf->parsed())
      return run_manifold(mf_eq, mf_k, mf_m, mf_alpha, mf_theta, mf_out,
                          mf_emit);
    if (integ->parsed())
      return run_integrate(in_initial, in_eps0, in_epsinf, in_h, in_n, in_k,
                           in_max, in_stop, in_out, in_csv);
    if (vs->parsed())
      return run_verify_stable(vs_endpoint, vs_p, vs_eps0, vs_epsinf);
    if (pt->parsed()) return run_portrait(pt_p, pt_grid, pt_out);
    if (pr->parsed()) return run_prove(pr_config, pr_out);
    if (rc->parsed()) return run_recheck(rc_path);
    if (ex->parsed()) return run_export(ex_path, ex_csv, ex_plots, ex_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
