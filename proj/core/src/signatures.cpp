#include "chered/signatures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace chered {

template <class F>
SignatureCharacter sch_sequence(const StandardModule<F>& m,
                                const std::vector<F>& class_values, int max_degree,
                                SchTarget target) {
  SignatureCharacter out;
  out.target = target;
  auto gram = beta_gram_sweep(m, class_values, max_degree);
  for (int n = 0; n <= max_degree; ++n) {
    bool margin = true;
    Inertia in = gram_inertia(gram[size_t(n)], &margin);
    out.float_margin_ok = out.float_margin_ok && margin;
    out.values.push_back(in.signature());
    out.dims.push_back(target == SchTarget::Standard ? long(m.dim(n)) : long(in.rank()));
  }
  return out;
}

template <class F>
SignatureCharacter isotypic_sch(const StandardModule<F>& m, const WIrrep<F>& pi,
                                const std::vector<F>& class_values, int max_degree,
                                SchTarget target) {
  SignatureCharacter out;
  out.target = target;
  auto gram = beta_gram_sweep(m, class_values, max_degree);
  for (int n = 0; n <= max_degree; ++n) {
    bool margin = true;
    Inertia in = isotypic_inertia(m, gram[size_t(n)], pi, n, &margin);
    out.float_margin_ok = out.float_margin_ok && margin;
    out.values.push_back(in.signature());
    out.dims.push_back(target == SchTarget::Standard ? long(in.p + in.q + in.z)
                                                     : long(in.rank()));
  }
  return out;
}

RationalFit rational_fit(const std::vector<long>& seq, int pole_order, int min_window) {
  RationalFit fit;
  fit.pole_order = pole_order;
  // Coefficients of (1-t)^r * sum seq_n t^n.
  std::vector<Rat> binom(size_t(pole_order) + 1);
  Rat b(1);
  for (int j = 0; j <= pole_order; ++j) {
    binom[size_t(j)] = (j % 2 == 0) ? b : -b;
    b = b * Rat(pole_order - j) / Rat(j + 1);
  }
  std::vector<Rat> prod(seq.size(), Rat(0));
  for (size_t n = 0; n < seq.size(); ++n) {
    Rat acc(0);
    for (int j = 0; j <= pole_order && size_t(j) <= n; ++j)
      acc += binom[size_t(j)] * Rat(seq[n - size_t(j)]);
    prod[n] = acc;
  }
  int last_nonzero = -1;
  for (size_t n = 0; n < prod.size(); ++n)
    if (prod[n] != 0) last_nonzero = int(n);
  fit.zero_window = int(prod.size()) - 1 - last_nonzero;
  fit.stabilized = fit.zero_window >= min_window;
  fit.numerator = Poly<Rat>(std::vector<Rat>(prod.begin(), prod.begin() + (last_nonzero + 1)));
  return fit;
}

std::optional<RationalFit> fit_with_inferred_order(const std::vector<long>& seq,
                                                   int max_r, int min_window) {
  for (int r = 0; r <= max_r; ++r) {
    RationalFit fit = rational_fit(seq, r, min_window);
    if (fit.stabilized) return fit;
  }
  return std::nullopt;
}

Rat asymptotic_signature(const RationalFit& sch_fit, const RationalFit& ch_fit) {
  if (sch_fit.pole_order != ch_fit.pole_order)
    throw std::invalid_argument("asymptotic signature: mismatched pole orders");
  Rat p1 = sch_fit.numerator(Rat(1));
  Rat q1 = ch_fit.numerator(Rat(1));
  if (q1 == 0) throw std::invalid_argument("asymptotic signature: ch fit vanishes at 1");
  Rat a = p1 / q1;
  if (a > 1 || a < -1)
    throw std::logic_error("asymptotic signature outside [-1, 1]");
  return a;
}

AsymptoticSignature cesaro_estimate(const std::vector<long>& sch,
                                    const std::vector<long>& dims) {
  AsymptoticSignature out;
  auto partial = [&](size_t upto) {
    double s = 0, d = 0;
    for (size_t n = 0; n < upto; ++n) {
      s += double(sch[n]);
      d += double(dims[n]);
    }
    return d == 0 ? 0.0 : s / d;
  };
  double full = partial(sch.size());
  double half = partial(sch.size() / 2);
  out.exact = false;
  out.estimate = full;
  out.error_bar = std::max(std::fabs(full - half), 1e-12);
  return out;
}

namespace {

// Character of the quotient L[n] per conjugacy class: trace on Delta[n]
// minus the trace on the radical.
template <class F>
std::vector<F> quotient_character(const StandardModule<F>& m, const Matrix<F>& kernel,
                                  int degree) {
  const auto& ctx = m.ctx();
  int nc = int(ctx.classes.members.size());
  std::vector<F> out(size_t(nc), F(0));
  // Projector onto the kernel span: K (K^T K)^{-1} K^T (exact field).
  Matrix<F> proj;
  if (kernel.cols() > 0) {
    Matrix<F> gram = kernel.transpose() * kernel;
    // Invert by solving gram * X = K^T.
    Matrix<F> kt = kernel.transpose();
    Matrix<F> x(gram.rows(), kt.cols());
    for (int j = 0; j < kt.cols(); ++j) {
      std::vector<F> col(size_t(kt.rows()));
      for (int i = 0; i < kt.rows(); ++i) col[size_t(i)] = kt(i, j);
      auto sol = solve(gram, col);
      if (!sol) throw std::logic_error("kernel projector solve failed");
      for (int i = 0; i < gram.rows(); ++i) x(i, j) = (*sol)[size_t(i)];
    }
    proj = kernel * x;
  }
  for (int c = 0; c < nc; ++c) {
    const auto& el = ctx.elements[size_t(ctx.classes.representative[size_t(c)])];
    Matrix<F> act = m.action(el, degree);
    F tr(0);
    for (int i = 0; i < act.rows(); ++i) tr += act(i, i);
    if (kernel.cols() > 0) {
      Matrix<F> pa = proj * act;
      for (int i = 0; i < pa.rows(); ++i) tr -= pa(i, i);
    }
    out[size_t(c)] = tr;
  }
  return out;
}

}  // namespace

template <class F>
EpsilonDecomposition epsilon_decomposition(const GroupContext<F>& ctx,
                                           const std::vector<WIrrep<F>>& irreps,
                                           const WIrrep<F>& lambda,
                                           const ParamPoint& c, int max_degree) {
  EpsilonDecomposition out;
  std::vector<F> cv = class_values<F>(c);

  // Lowest-weight gaps h_c(mu) - h_c(lambda); candidates need nonnegative
  // integer gaps.
  auto h_of = [&](const WIrrep<F>& rep) { return h_c_lambda_exact(ctx, rep, cv); };
  F h_lambda = h_of(lambda);
  struct Candidate {
    const WIrrep<F>* rep;
    int gap;
    std::unique_ptr<StandardModule<F>> module;
    RadicalSweep<F> sweep;
    std::vector<std::vector<F>> ch_L;  // [degree][class]
    std::vector<long> sch_L;
    std::map<std::string, std::vector<long>> isotypic_sch_L;
    int multiplicity = 0;
    long k_sum_store = 0;
  };
  std::vector<Candidate> cands;
  for (const auto& rep : irreps) {
    F gap = h_of(rep) - h_lambda;
    double g = FieldTraits<F>::to_double(gap);
    long gi = std::lround(g);
    bool integral;
    if constexpr (FieldTraits<F>::is_exact) {
      integral = (gap == F(int(gi)));
    } else {
      integral = std::fabs(g - double(gi)) < 1e-9;
    }
    if (!integral || gi < 0 || gi > max_degree) continue;
    Candidate cand;
    cand.rep = &rep;
    cand.gap = int(gi);
    cands.push_back(std::move(cand));
  }

  // Gram data for lambda itself.
  StandardModule<F> m_lambda(ctx, lambda);
  auto gram_lambda = beta_gram_sweep(m_lambda, cv, max_degree);
  bool degenerate = false;
  for (int n = 0; n <= max_degree; ++n)
    if (gram_inertia(gram_lambda[size_t(n)]).z > 0) degenerate = true;

  // Candidate L data (radical sweep at the same c, shifted window).
  for (auto& cand : cands) {
    cand.module = std::make_unique<StandardModule<F>>(ctx, *cand.rep);
    int window = max_degree - cand.gap;
    cand.sweep = radical_sweep(*cand.module, cv, window);
    for (int n = 0; n <= window; ++n) {
      cand.ch_L.push_back(
          quotient_character(*cand.module, cand.sweep.kernel[size_t(n)], n));
      cand.sch_L.push_back(cand.sweep.inertia[size_t(n)].signature());
    }
  }

  // Multiplicities by degree-ascending character subtraction.
  int nc = int(ctx.classes.members.size());
  std::vector<std::vector<F>> residual(size_t(max_degree) + 1,
                                       std::vector<F>(size_t(nc), F(0)));
  for (int n = 0; n <= max_degree; ++n) {
    for (int cl = 0; cl < nc; ++cl) {
      const auto& el = ctx.elements[size_t(ctx.classes.representative[size_t(cl)])];
      Matrix<F> act = m_lambda.action(el, n);
      F tr(0);
      for (int i = 0; i < act.rows(); ++i) tr += act(i, i);
      residual[size_t(n)][size_t(cl)] = tr;
    }
  }
  auto subtract = [&](const Candidate& cand, int mult) {
    for (int k = 0; k < int(cand.ch_L.size()); ++k) {
      int n = cand.gap + k;
      if (n > max_degree) break;
      for (int cl = 0; cl < nc; ++cl)
        residual[size_t(n)][size_t(cl)] -= F(mult) * cand.ch_L[size_t(k)][size_t(cl)];
    }
  };
  for (int n = 0; n <= max_degree; ++n) {
    bool zero = true;
    for (int cl = 0; cl < nc; ++cl)
      if (!FieldTraits<F>::is_zero(residual[size_t(n)][size_t(cl)])) zero = false;
    if (zero) continue;
    // Decompose the residual character at degree n into irreducibles.
    for (auto& cand : cands) {
      if (cand.gap != n) continue;
      F ip(0);
      for (int cl = 0; cl < nc; ++cl)
        ip += F(int(ctx.classes.members[size_t(cl)].size())) *
              residual[size_t(n)][size_t(cl)] * cand.rep->char_by_class[size_t(cl)];
      ip = ip / F(int(ctx.order()));
      double val = FieldTraits<F>::to_double(ip);
      long mult = std::lround(val);
      if (std::fabs(val - double(mult)) > 1e-9 || mult < 0) {
        out.message = "character subtraction produced a non-integer multiplicity";
        return out;
      }
      if (mult == 0) continue;
      cand.multiplicity = int(mult);
      subtract(cand, int(mult));
    }
    for (int cl = 0; cl < nc; ++cl)
      if (!FieldTraits<F>::is_zero(residual[size_t(n)][size_t(cl)])) {
        out.message = "character residual at degree " + std::to_string(n) +
                      " not resolved by candidate factors";
        return out;
      }
  }

  // Target signature character, isotypically refined.  If beta is degenerate
  // at c within the window, use c(1+eps) just off the wall instead.
  std::vector<F> target_cv = cv;
  if (degenerate) {
    out.target_deformed = true;
    Rat eps(1, 64);
    while (true) {
      std::vector<F> trial;
      for (const auto& v : cv) trial.push_back(v * (F(1) + FieldTraits<F>::from_rat(eps)));
      auto g = beta_gram_sweep(m_lambda, trial, max_degree);
      bool ok = true;
      for (int n = 0; n <= max_degree && ok; ++n)
        if (gram_inertia(g[size_t(n)]).z > 0) ok = false;
      if (ok) {
        // Confirm sign stability by halving eps once.
        std::vector<F> trial2;
        Rat eps2 = eps / 2;
        for (const auto& v : cv)
          trial2.push_back(v * (F(1) + FieldTraits<F>::from_rat(eps2)));
        auto g2 = beta_gram_sweep(m_lambda, trial2, max_degree);
        bool same = true;
        for (int n = 0; n <= max_degree && same; ++n)
          if (gram_inertia(g[size_t(n)]).signature() !=
              gram_inertia(g2[size_t(n)]).signature())
            same = false;
        if (same) {
          target_cv = trial;
          break;
        }
      }
      eps = eps / 2;
      if (eps < Rat(1, 1000000)) {
        out.message = "no stable deformation off the wall found";
        return out;
      }
    }
  }

  // Solve for k_mu from the isotypic signature characters: at degree
  // gap(mu), the mu-isotypic sch of the target picks out k_mu * dim(mu).
  auto gram_target = beta_gram_sweep(m_lambda, target_cv, max_degree);
  std::map<std::string, std::vector<long>> target_iso;
  for (auto& cand : cands) {
    if (cand.multiplicity == 0) continue;
    const std::string& pname = cand.rep->name;
    if (target_iso.count(pname)) continue;
    std::vector<long> seq;
    for (int n = 0; n <= max_degree; ++n)
      seq.push_back(isotypic_inertia(m_lambda, gram_target[size_t(n)], *cand.rep, n)
                        .signature());
    target_iso[pname] = seq;
  }
  // Isotypic sch of each factor L(mu) (at c itself; forms on L are defined
  // at the wall since the radical is quotiented out).
  for (auto& cand : cands) {
    if (cand.multiplicity == 0) continue;
    auto g = beta_gram_sweep(*cand.module, cv, max_degree - cand.gap);
    for (auto& [pname, dummy] : target_iso) {
      (void)dummy;
      const WIrrep<F>& pi = find_irrep(irreps, pname);
      std::vector<long> seq;
      for (int k = 0; k + cand.gap <= max_degree; ++k)
        seq.push_back(isotypic_inertia(*cand.module, g[size_t(k)], pi, k).signature());
      cand.isotypic_sch_L[pname] = seq;
    }
  }
  // Triangular solve, ascending in gap.
  std::vector<Candidate*> active;
  for (auto& cand : cands)
    if (cand.multiplicity > 0) active.push_back(&cand);
  std::sort(active.begin(), active.end(),
            [](const Candidate* a, const Candidate* b) { return a->gap < b->gap; });
  std::map<std::string, std::vector<long>> residual_iso = target_iso;
  for (Candidate* cand : active) {
    const std::string& self = cand->rep->name;
    long num = residual_iso[self][size_t(cand->gap)];
    if (num % cand->rep->dim != 0) {
      out.message = "epsilon solve: non-integral k at " + self;
      return out;
    }
    long k = num / cand->rep->dim;
    if (std::labs(k) > cand->multiplicity ||
        (k - cand->multiplicity) % 2 != 0) {
      out.message = "epsilon solve: |k| exceeds multiplicity or parity mismatch at " + self;
      return out;
    }
    cand->k_sum_store = k;
    for (auto& [pname, seq] : residual_iso) {
      const auto& lseq = cand->isotypic_sch_L[pname];
      for (size_t j = 0; j < lseq.size(); ++j) {
        size_t n = size_t(cand->gap) + j;
        if (n < seq.size()) seq[n] -= k * lseq[j];
      }
    }
  }
  // Every refined residual must vanish through the window.
  for (const auto& [pname, seq] : residual_iso)
    for (long v : seq)
      if (v != 0) {
        out.message = "epsilon decomposition failed to match sch in component " + pname;
        return out;
      }
  for (Candidate* cand : active)
    out.factors.push_back({cand->rep->name, cand->gap, cand->multiplicity,
                           int(cand->k_sum_store)});
  out.consistent = true;
  return out;
}

#define CHERED_INSTANTIATE(F)                                                   \
  template SignatureCharacter sch_sequence<F>(const StandardModule<F>&,          \
                                              const std::vector<F>&, int,       \
                                              SchTarget);                        \
  template SignatureCharacter isotypic_sch<F>(const StandardModule<F>&,          \
                                              const WIrrep<F>&,                  \
                                              const std::vector<F>&, int,        \
                                              SchTarget);                        \
  template EpsilonDecomposition epsilon_decomposition<F>(                        \
      const GroupContext<F>&, const std::vector<WIrrep<F>>&, const WIrrep<F>&,   \
      const ParamPoint&, int);

CHERED_INSTANTIATE(Exact)
CHERED_INSTANTIATE(double)
#undef CHERED_INSTANTIATE

}  // namespace chered
