// Extended connecting-orbit runs.  These take tens of minutes combined and
// are therefore kept out of the default suite; run them explicitly with
//   ctest --test-dir build -R acceptance_long -C long
// or by invoking the binary.  Each run reports success or failure only.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <nlscap/pipeline.hpp>

namespace {

std::string seed_path(const char* name) {
  return std::string(NLSCAP_SOURCE_DIR) + "/data/seeds/" + name;
}

bool run_case(const char* label, const std::string& seed_file,
              const nlscap::ProofOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto seed = nlscap::read_seed(seed_path(seed_file.c_str()));
  const nlscap::ProofResult pr = nlscap::prove_heteroclinic(seed, opt);
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("%s: %s  (%.0f s)\n", label, pr.success ? "SUCCESS" : "FAILURE",
              dt);
  if (!pr.success) std::printf("  %s\n", pr.message.c_str());
  std::fflush(stdout);
  return pr.success;
}

}  // namespace

int main() {
  using nlscap::ProofOptions;
  bool ok = true;

  {
    // Slow exit from the first real equilibrium: the orbit leaves along the
    // opposite end of the chart and decays almost to zero before the
    // terminal certificate applies, so it needs thousands of short steps.
    ProofOptions opt;
    opt.sigma = {-1.0, 0.0};
    opt.step = 3.6e-4;
    opt.steps = 3000;
    ok &= run_case("extended run 1, first equilibrium, opposite exit",
                   "u1i.seq", opt);
  }

  {
    // Second real equilibrium (one unstable complex pair, larger amplitude):
    // wider mode and order windows, much shorter steps.
    ProofOptions opt;
    opt.eq_modes = 60;
    opt.modes = 41;
    opt.orders = 40;
    opt.scale_l2 = 20.0;
    opt.theta = 0.0;
    opt.sigma = {1.0, 0.0};
    opt.step = 3.2e-5;
    opt.steps = 2000;
    ok &= run_case("extended run 2, second equilibrium", "u1ii.seq", opt);
  }

  return ok ? 0 : 1;
}
