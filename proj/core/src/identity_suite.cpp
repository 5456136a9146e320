#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ktensor/analysis.hpp"
#include "ktensor/parallel.hpp"

namespace ktensor {

namespace {

// Images of the projections are trace-free up to rounding relative to the input.
constexpr double kUnchecked = std::numeric_limits<double>::infinity();

double rel(const SymTensor& a, const SymTensor& b) {
  return norm(a - b) / std::max({1.0, norm(a), norm(b)});
}

double rel(const FrameTensor& a, const FrameTensor& b) {
  return norm(a - b) / std::max({1.0, norm(a), norm(b)});
}

double rel_scalar(double a, double b, double scale) { return std::fabs(a - b) / std::max(1.0, scale); }

// Worst residual per identity name for one (n, p).
struct Worst {
  std::map<std::string, double> r;
  void put(const std::string& name, double v) {
    auto [it, fresh] = r.emplace(name, v);
    if (!fresh) it->second = std::max(it->second, std::isnan(v) ? INFINITY : v);
  }
};

void algebra_trials(int n, int p, int trials, Rng& rng, Worst& w) {
  for (int t = 0; t < trials; ++t) {
    const SymTensor k = random_tensor(n, p, rng);
    const auto vv = random_vector(n, rng);
    const SymTensor v = SymTensor::vector(vv);

    for (int q = 1; q <= 2; ++q) {
      const SymTensor b = random_tensor(n, q, rng);
      const SymTensor c = random_tensor(n, 1, rng);
      w.put("product commutative", rel(sym_product(k, b), sym_product(b, k)));
      w.put("product associative", rel(sym_product(sym_product(k, b), c), sym_product(k, sym_product(b, c))));
    }

    const SymTensor up = random_tensor(n, p + 1, rng);
    w.put("adjoint v. / v_|", rel_scalar(inner(sym_product(v, k), up), inner(k, contract(vv, up)),
                                         norm(v) * norm(k) * norm(up)));
    const SymTensor up2 = random_tensor(n, p + 2, rng);
    w.put("adjoint L / Lambda", rel_scalar(inner(mult_L(k), up2), inner(k, trace_Lambda(up2)), norm(k) * norm(up2)));

    // [Λ, L] = 2n + 4 deg, [deg, L] = 2L, [deg, Λ] = -2Λ
    SymTensor lam_l = trace_Lambda(mult_L(k));
    if (p >= 2) lam_l -= mult_L(trace_Lambda(k));
    w.put("commu [Lambda,L]", rel(lam_l, k * double(2 * n + 4 * p)));
    w.put("commu [deg,L]", rel(euler_operator(mult_L(k)) - mult_L(euler_operator(k)), mult_L(k) * 2.0));
    if (p >= 2)
      w.put("commu [deg,Lambda]",
            rel(euler_operator(trace_Lambda(k)) - trace_Lambda(euler_operator(k)), trace_Lambda(k) * -2.0));

    // [Λ, v.] = 2 v_|, [v_|, L] = 2 v., [Λ, v_|] = 0 = [L, v.]
    if (p >= 1) {
      SymTensor a = trace_Lambda(sym_product(v, k));
      if (p >= 2) a -= sym_product(v, trace_Lambda(k));
      w.put("commu2 [Lambda,v.]", rel(a, contract(vv, k) * 2.0));
      w.put("commu2 [v_|,L]", rel(contract(vv, mult_L(k)) - mult_L(contract(vv, k)), sym_product(v, k) * 2.0));
    } else {
      w.put("commu2 [v_|,L]", rel(contract(vv, mult_L(k)), sym_product(v, k) * 2.0));
    }
    if (p >= 3) w.put("commu2 [Lambda,v_|]", rel(trace_Lambda(contract(vv, k)), contract(vv, trace_Lambda(k))));
    w.put("commu2 [L,v.]", rel(mult_L(sym_product(v, k)), sym_product(v, mult_L(k))));

    // Euler: Σ e_i.(e_i _| K) = pK, and as polynomials
    w.put("euler", rel(euler_operator(k), k * double(p)));
    w.put("euler polynomial", rel_scalar(poly_eval(euler_operator(k), vv), p * poly_eval(k, vv),
                                         std::fabs(p * poly_eval(k, vv))));

    // standard decomposition: trace-free parts, round trip, idempotent
    const Decomposition dec = standard_decomposition(k);
    double tf = 0.0;
    for (const auto& part : dec.parts)
      if (part.degree() >= 2) tf = std::max(tf, norm(trace_Lambda(part)) / std::max(1.0, norm(part)));
    w.put("decomposition trace-free", tf);
    const SymTensor back = reconstruct(dec);
    w.put("decomposition round trip", rel(back, k));
    const Decomposition again = standard_decomposition(back);
    double idem = 0.0;
    for (std::size_t i = 0; i < dec.parts.size(); ++i) idem = std::max(idem, rel(again.parts[i], dec.parts[i]));
    w.put("decomposition idempotent", idem);

    // projection formula: (v.K)_0 = v.K - L(v _| K)/(n + 2(p-1)) for trace-free K
    if (p >= 1) {
      const SymTensor k0 = random_trace_free(n, p, rng);
      const SymTensor proj = tracefree_sym_product(vv, k0);
      w.put("projection trace-free", norm(trace_Lambda(proj)) / std::max(1.0, norm(proj)));
      w.put("projection formula", rel(proj, trace_free_part(sym_product(v, k0))));
    }

    // π1 π1* = (p+1) id on Sym^{p+1}_0
    const SymTensor s1 = random_trace_free(n, p + 1, rng);
    w.put("pi1 pi1* = (p+1)", rel(pi1(pi1_adjoint(s1)), s1 * double(p + 1)));

    if (p >= 1) {
      // (dK)_0 = dK + L(δK)/(n+2p-2) for ∇K with trace-free slots
      const FrameTensor t = random_trace_free_frame_tensor(n, p, rng);
      SymTensor d0 = symmetrize(t);
      d0.axpy(1.0 / (n + 2.0 * p - 2.0), mult_L(divergence(t)));
      w.put("dprojection", rel(pi1(t), d0));
      w.put("dprojection trace-free", norm(trace_Lambda(d0)) / std::max(1.0, norm(d0)));
    }

    if (p >= 1 && !cartan_degenerate(n, p)) {
      const SymTensor s2 = random_trace_free(n, p - 1, rng);
      const double c2 = (n + 2.0 * p - 2.0) * (n + p - 3.0) / (n + 2.0 * p - 4.0);
      w.put("pi2 pi2* constant", rel(pi2(pi2_adjoint(s2, p)), s2 * c2));

      const FrameTensor t = random_trace_free_frame_tensor(n, p, rng);
      const CartanParts parts = cartan_decompose(t);
      const double tn = std::max(1.0, norm(t) * norm(t));
      w.put("cartan sum", rel(parts.P1 + parts.P2 + parts.P3, t));
      w.put("cartan orthogonal", std::max({std::fabs(inner(parts.P1, parts.P2)), std::fabs(inner(parts.P1, parts.P3)),
                                           std::fabs(inner(parts.P2, parts.P3))}) / tn);
      const CartanParts c1 = cartan_decompose(parts.P1, kUnchecked);
      const CartanParts c2p = cartan_decompose(parts.P2, kUnchecked);
      const CartanParts c3 = cartan_decompose(parts.P3, kUnchecked);
      w.put("cartan idempotent", std::max({rel(c1.P1, parts.P1), rel(c2p.P2, parts.P2), rel(c3.P3, parts.P3)}));
      const FrameTensor image = pi1_adjoint(s1);
      const CartanParts ci = cartan_decompose(image, kUnchecked);
      w.put("cartan pi1* image", rel(ci.P1, image) + norm(ci.P2) / std::max(1.0, norm(image)));
    }

    // the Λ² action is antisymmetric and kills scalars
    const auto yy = random_vector(n, rng);
    w.put("lambda2 antisymmetric", norm(lambda2_act(vv, yy, k) + lambda2_act(yy, vv, k)) /
                                       std::max(1.0, norm(v) * norm(SymTensor::vector(yy)) * norm(k)));
  }
}

void weitzenbock_trials(int n, int p, int trials, bool flip, Rng& rng, Worst& w) {
  if (p < 1 || cartan_degenerate(n, p)) return;
  const double sign = flip ? -1.0 : 1.0;
  for (int t = 0; t < trials; ++t) {
    const FrameTensor x = random_trace_free_frame_tensor(n, p, rng);
    const FrameTensor b = conformal_weight(x);
    const CartanParts parts = cartan_decompose(x);
    const FrameTensor rhs = double(p) * parts.P1 - sign * double(n + p - 2) * parts.P2 - parts.P3;
    w.put("weitzenbock B = p P1 - (n+p-2) P2 - P3", rel(b, rhs));
    const FrameTensor alt =
        pi1_adjoint(pi1(x)) - ((n + 2.0 * p - 4.0) / (n + 2.0 * p - 2.0)) * pi2_adjoint(pi2(x), p) - x;
    w.put("weitzenbock endomorphism form", rel(b, alt));
  }
}

}  // namespace

SuiteReport identity_suite(const IdentityOptions& opt) {
  if (opt.n_min < 2 || opt.n_max < opt.n_min || opt.p_min < 0 || opt.p_max < opt.p_min || opt.n_max > 8 ||
      opt.p_max > 6)
    throw ConfigError("identity_suite: unsupported ranges (need 2 <= n <= 8, 0 <= p <= 6)");
  if (opt.trials < 1) throw ConfigError("identity_suite: trials must be positive");
  std::vector<std::pair<int, int>> shapes;
  for (int n = opt.n_min; n <= opt.n_max; ++n)
    for (int p = opt.p_min; p <= opt.p_max; ++p) shapes.emplace_back(n, p);

  std::vector<Worst> worst(shapes.size());
  const int wtrials = std::max(opt.trials, opt.weitzenbock_trials);
  parallel_for(shapes.size(), [&](std::size_t i) {
    const auto [n, p] = shapes[i];
    Rng rng = task_rng(opt.seed, i);
    algebra_trials(n, p, opt.trials, rng, worst[i]);
    weitzenbock_trials(n, p, wtrials, opt.inject_sign_flip, rng, worst[i]);
  });

  SuiteReport rep;
  rep.suite = "identities";
  rep.trials = opt.trials;
  rep.seed = opt.seed;
  rep.tolerance = opt.tol;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const auto [n, p] = shapes[i];
    for (const auto& [name, v] : worst[i].r)
      rep.add(name + " n=" + std::to_string(n) + " p=" + std::to_string(p), v, opt.tol);
  }
  rep.finalize();
  return rep;
}

}  // namespace ktensor
