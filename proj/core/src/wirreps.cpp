#include "chered/wirreps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace chered {

namespace {

// --- Young orthogonal form for S_k, k <= 3 (adjacent transposition gens) ---

template <class F>
struct SmallSymRep {
  std::string name;  // partition digits, e.g. "21"
  int dim = 1;
  std::vector<Matrix<F>> adj;  // matrix of (i, i+1), i = 0..k-2
};

template <class F>
Matrix<F> one_by_one(F v) {
  Matrix<F> m(1, 1);
  m(0, 0) = v;
  return m;
}

template <class F>
std::vector<SmallSymRep<F>> sym_reps(int k) {
  std::vector<SmallSymRep<F>> out;
  if (k <= 1) {
    out.push_back({"", 1, {}});
    if (k == 1) out.back().name = "1";
    return out;
  }
  if (k == 2) {
    out.push_back({"2", 1, {one_by_one(F(1))}});
    out.push_back({"11", 1, {one_by_one(F(-1))}});
    return out;
  }
  if (k == 3) {
    out.push_back({"3", 1, {one_by_one(F(1)), one_by_one(F(1))}});
    Matrix<F> a(2, 2), b(2, 2);
    a(0, 0) = F(1);
    a(1, 1) = F(-1);
    F half = F(1) / F(2);
    F root3_half;
    if constexpr (FieldTraits<F>::is_exact)
      root3_half = F(Exact(0, Rat(1, 2), 3));
    else
      root3_half = std::sqrt(3.0) / 2;
    b(0, 0) = -half;
    b(0, 1) = root3_half;
    b(1, 0) = root3_half;
    b(1, 1) = half;
    out.push_back({"21", 2, {a, b}});
    out.push_back({"111", 1, {one_by_one(F(-1)), one_by_one(F(-1))}});
    return out;
  }
  throw std::invalid_argument("sym_reps: k > 3 not constructed");
}

// --- Induced irreps of the hyperoctahedral group B_n = Z2^n x| S_n ---

std::vector<std::vector<int>> subsets_of_size(int n, int a) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (int(cur.size()) == a) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// Matrix of the generator on the induced module Ind(chi_A (x) V_mu (x) V_nu).
// gen_kind 0: transposition (p, p+1); gen_kind 1: sign flip t_p.
template <class F>
Matrix<F> bn_generator(int n, const SmallSymRep<F>& mu, const SmallSymRep<F>& nu,
                       int gen_kind, int p) {
  int a = 0;
  {
    // |mu| from its name length encoding: dim data does not carry k, so
    // recover from the partition digit sum.
    for (char ch : mu.name) a += ch - '0';
  }
  auto subsets = subsets_of_size(n, a);
  int du = mu.dim, dv = nu.dim;
  int block = du * dv;
  Matrix<F> m(int(subsets.size()) * block, int(subsets.size()) * block);
  auto subset_index = [&](const std::vector<int>& s) {
    for (size_t i = 0; i < subsets.size(); ++i)
      if (subsets[i] == s) return int(i);
    return -1;
  };
  for (size_t ai = 0; ai < subsets.size(); ++ai) {
    const auto& A = subsets[ai];
    if (gen_kind == 1) {
      bool in = std::find(A.begin(), A.end(), p) != A.end();
      F sign = in ? F(1) : F(-1);
      for (int t = 0; t < block; ++t)
        m(int(ai) * block + t, int(ai) * block + t) = sign;
      continue;
    }
    bool pin = std::find(A.begin(), A.end(), p) != A.end();
    bool qin = std::find(A.begin(), A.end(), p + 1) != A.end();
    if (pin == qin) {
      // Acts within the mu part (both in A) or the nu part (both outside).
      Matrix<F> bu = Matrix<F>::identity(du), bv = Matrix<F>::identity(dv);
      if (pin) {
        int pos = int(std::lower_bound(A.begin(), A.end(), p) - A.begin());
        bu = mu.adj[size_t(pos)];
      } else {
        std::vector<int> comp;
        for (int i = 0; i < n; ++i)
          if (std::find(A.begin(), A.end(), i) == A.end()) comp.push_back(i);
        int pos = int(std::lower_bound(comp.begin(), comp.end(), p) - comp.begin());
        bv = nu.adj[size_t(pos)];
      }
      for (int u1 = 0; u1 < du; ++u1)
        for (int u2 = 0; u2 < du; ++u2)
          for (int v1 = 0; v1 < dv; ++v1)
            for (int v2 = 0; v2 < dv; ++v2)
              m(int(ai) * block + u1 * dv + v1, int(ai) * block + u2 * dv + v2) =
                  bu(u1, u2) * bv(v1, v2);
    } else {
      // Swapping p and p+1 moves A; sorted positions are unchanged, so the
      // block is the identity placed off-diagonal.
      std::vector<int> target = A;
      for (auto& v : target) {
        if (v == p) v = p + 1;
        else if (v == p + 1) v = p;
      }
      std::sort(target.begin(), target.end());
      int bi = subset_index(target);
      for (int t = 0; t < block; ++t) m(int(bi) * block + t, int(ai) * block + t) = F(1);
    }
  }
  return m;
}

template <class F>
std::vector<WIrrep<F>> irreps_bn(const CoxeterDatum<F>& w) {
  int n = w.rank;
  std::vector<WIrrep<F>> out;
  for (int a = n; a >= 0; --a) {
    for (const auto& mu : sym_reps<F>(a))
      for (const auto& nu : sym_reps<F>(n - a)) {
        WIrrep<F> rep;
        rep.name = "(" + mu.name + "|" + nu.name + ")";
        // Simple generators: (01), (12), ..., then the flip of the last coord.
        for (int p = 0; p + 1 < n; ++p)
          rep.gen.push_back(bn_generator(n, mu, nu, 0, p));
        rep.gen.push_back(bn_generator(n, mu, nu, 1, n - 1));
        rep.dim = rep.gen.empty() ? 1 : rep.gen[0].rows();
        out.push_back(std::move(rep));
      }
  }
  return out;
}

// --- Dihedral irreps (I2(m), A2 = I2(3), G2 = I2(6)) ---

template <class F>
bool dihedral_reflect_matrix(int m, int two_k_num, Matrix<F>* out) {
  // reflect(theta) with theta = two_k_num * pi / (2m):
  // [[cos 2theta, sin 2theta], [sin 2theta, -cos 2theta]]
  double ang = double(two_k_num) * M_PI / double(m);
  Matrix<F> r(2, 2);
  if constexpr (FieldTraits<F>::is_exact) {
    auto cv = [&](double v) -> std::optional<Exact> {
      static const Rat half(1, 2);
      struct Entry {
        double v;
        Exact e;
      };
      static const std::vector<Entry> table = {
          {0.0, Exact(0)},
          {1.0, Exact(1)},
          {-1.0, Exact(-1)},
          {0.5, Exact(half)},
          {-0.5, Exact(Rat(-1, 2))},
          {std::sqrt(3.0) / 2, Exact(0, half, 3)},
          {-std::sqrt(3.0) / 2, Exact(0, Rat(-1, 2), 3)},
          {std::sqrt(2.0) / 2, Exact(0, half, 2)},
          {-std::sqrt(2.0) / 2, Exact(0, Rat(-1, 2), 2)},
      };
      for (const auto& e : table)
        if (std::fabs(v - e.v) < 1e-12) return e.e;
      return std::nullopt;
    };
    auto c = cv(std::cos(ang)), s = cv(std::sin(ang));
    if (!c || !s) return false;
    r(0, 0) = F(*c);
    r(0, 1) = F(*s);
    r(1, 0) = F(*s);
    r(1, 1) = F(-*c);
  } else {
    r(0, 0) = std::cos(ang);
    r(0, 1) = std::sin(ang);
    r(1, 0) = std::sin(ang);
    r(1, 1) = -std::cos(ang);
  }
  *out = r;
  return true;
}

template <class F>
std::vector<WIrrep<F>> irreps_dihedral(const CoxeterDatum<F>& w, int m) {
  std::vector<WIrrep<F>> out;
  auto line = [&](const std::string& name, F g1, F g2) {
    WIrrep<F> rep;
    rep.name = name;
    rep.dim = 1;
    rep.gen = {one_by_one(g1), one_by_one(g2)};
    out.push_back(std::move(rep));
  };
  line("triv", F(1), F(1));
  line("sgn", F(-1), F(-1));
  if (m % 2 == 0) {
    // s1 is the angle-0 wall (class of even k), s2 the angle-pi/m wall.
    line("sgn1", F(-1), F(1));
    line("sgn2", F(1), F(-1));
  }
  int nrot = (m % 2 == 0) ? m / 2 - 1 : (m - 1) / 2;
  for (int j = 1; j <= nrot; ++j) {
    WIrrep<F> rep;
    rep.name = "rot" + std::to_string(j);
    rep.dim = 2;
    Matrix<F> g1(2, 2), g2(2, 2);
    g1(0, 0) = F(1);
    g1(1, 1) = F(-1);
    if (!dihedral_reflect_matrix(m, 2 * j, &g2))
      throw std::invalid_argument("dihedral irrep needs float mode: " + w.label);
    rep.gen = {g1, g2};
    out.push_back(std::move(rep));
  }
  return out;
}

// --- A1 and the D3 model of A3 ---

template <class F>
std::vector<WIrrep<F>> irreps_a1() {
  std::vector<WIrrep<F>> out;
  WIrrep<F> t{"triv", {}, 1, {one_by_one(F(1))}, {}};
  WIrrep<F> s{"sgn", {}, 1, {one_by_one(F(-1))}, {}};
  out.push_back(t);
  out.push_back(s);
  return out;
}

template <class F>
std::vector<WIrrep<F>> irreps_a3(const CoxeterDatum<F>& w) {
  std::vector<WIrrep<F>> out;
  auto lin = [&](const std::string& name, F v) {
    WIrrep<F> rep;
    rep.name = name;
    rep.dim = 1;
    rep.gen = {one_by_one(v), one_by_one(v), one_by_one(v)};
    out.push_back(std::move(rep));
  };
  lin("triv", F(1));
  lin("sgn", F(-1));
  // Two-dimensional representation through the S3 quotient.  The Coxeter
  // diagram of the D3 model is a chain centered at the first simple root, so
  // the outer generators share a matrix.
  {
    WIrrep<F> rep;
    rep.name = "std2";
    rep.dim = 2;
    Matrix<F> outer(2, 2), center(2, 2);
    outer(0, 0) = F(1);
    outer(1, 1) = F(-1);
    F half = F(1) / F(2);
    F root3_half;
    if constexpr (FieldTraits<F>::is_exact)
      root3_half = F(Exact(0, Rat(1, 2), 3));
    else
      root3_half = std::sqrt(3.0) / 2;
    center(0, 0) = -half;
    center(0, 1) = root3_half;
    center(1, 0) = root3_half;
    center(1, 1) = half;
    rep.gen = {center, outer, outer};
    out.push_back(std::move(rep));
  }
  // Reflection representation and its sign twist (signed permutations).
  {
    WIrrep<F> rep;
    rep.name = "refl";
    rep.dim = 3;
    for (int i : w.simple) rep.gen.push_back(w.refl_matrix[size_t(i)]);
    WIrrep<F> rep2;
    rep2.name = "reflsgn";
    rep2.dim = 3;
    for (const auto& g : rep.gen) rep2.gen.push_back(-g);
    out.push_back(std::move(rep));
    out.push_back(std::move(rep2));
  }
  return out;
}

template <class F>
void attach_characters_and_aliases(const GroupContext<F>& ctx,
                                   std::vector<WIrrep<F>>& reps) {
  const auto& cls = ctx.classes;
  // Character of the reflection representation for alias detection.
  std::vector<F> refl_char;
  for (size_t c = 0; c < cls.members.size(); ++c) {
    const auto& mat = ctx.elements[size_t(cls.representative[c])].mat;
    F tr(0);
    for (int i = 0; i < mat.rows(); ++i) tr += mat(i, i);
    refl_char.push_back(tr);
  }
  for (auto& rep : reps) {
    rep.char_by_class.clear();
    for (size_t c = 0; c < cls.members.size(); ++c) {
      Matrix<F> m = irrep_matrix(rep, ctx.elements[size_t(cls.representative[c])].word);
      F tr(0);
      for (int i = 0; i < m.rows(); ++i) tr += m(i, i);
      rep.char_by_class.push_back(tr);
    }
    // Aliases
    bool is_triv = true, is_sgn = true, is_refl = true;
    for (size_t c = 0; c < cls.members.size(); ++c) {
      const auto& word = ctx.elements[size_t(cls.representative[c])].word;
      F det = (word.size() % 2 == 0) ? F(1) : F(-1);
      auto eq = [](const F& x, const F& y) {
        if constexpr (FieldTraits<F>::is_exact)
          return x == y;
        else
          return std::fabs(FieldTraits<F>::to_double(x) - FieldTraits<F>::to_double(y)) < 1e-9;
      };
      if (!eq(rep.char_by_class[c], F(1))) is_triv = false;
      if (!eq(rep.char_by_class[c], det)) is_sgn = false;
      if (!eq(rep.char_by_class[c], refl_char[c])) is_refl = false;
    }
    if (is_triv && rep.name != "triv") rep.aliases.push_back("triv");
    if (is_sgn && rep.name != "sgn") rep.aliases.push_back("sgn");
    if (is_refl) {
      rep.aliases.push_back("refl");
      rep.aliases.push_back("std");
    }
    if (rep.name == "refl") rep.aliases.push_back("std");
  }
}

}  // namespace

template <class F>
GroupContext<F> GroupContext<F>::build(const std::string& label) {
  GroupContext<F> ctx;
  if constexpr (FieldTraits<F>::is_exact)
    ctx.W = build_coxeter(label);
  else
    ctx.W = build_coxeter_float(label);
  ctx.elements = enumerate_group(ctx.W);
  ctx.classes = conjugacy_classes(ctx.W, ctx.elements);
  for (int s = 0; s < ctx.W.num_refl(); ++s) {
    int idx = element_index(ctx.elements, ctx.W.refl_matrix[size_t(s)]);
    if (idx < 0) throw std::logic_error("reflection not found in group enumeration");
    ctx.refl_element.push_back(idx);
  }
  return ctx;
}

template <class F>
Matrix<F> irrep_matrix(const WIrrep<F>& rep, const std::vector<int>& word) {
  Matrix<F> m = Matrix<F>::identity(rep.dim);
  for (int g : word) m = m * rep.gen[size_t(g)];
  return m;
}

template <class F>
std::vector<WIrrep<F>> irreps_of(const GroupContext<F>& ctx) {
  const std::string& label = ctx.W.label;
  std::vector<WIrrep<F>> reps;
  if (label == "A1")
    reps = irreps_a1<F>();
  else if (label == "A3")
    reps = irreps_a3(ctx.W);
  else if (label == "B2" || label == "B3")
    reps = irreps_bn(ctx.W);
  else if (label == "A2" || label == "G2" || label.rfind("I2", 0) == 0) {
    int m = ctx.W.degrees[1];
    reps = irreps_dihedral(ctx.W, m);
  } else
    throw std::invalid_argument("irreps not constructed for label " + label);
  attach_characters_and_aliases(ctx, reps);
  long sumsq = 0;
  for (const auto& r : reps) sumsq += long(r.dim) * r.dim;
  if (sumsq != ctx.order())
    throw std::logic_error("irrep list incomplete for " + label);
  return reps;
}

template <class F>
const WIrrep<F>& find_irrep(const std::vector<WIrrep<F>>& irreps, const std::string& name) {
  for (const auto& r : irreps)
    if (r.answers_to(name)) return r;
  throw std::invalid_argument("no irrep named " + name);
}

template <class F>
F h_c_lambda_exact(const GroupContext<F>& ctx, const WIrrep<F>& rep,
                   const std::vector<F>& class_values) {
  F acc(0);
  for (int s = 0; s < ctx.W.num_refl(); ++s) {
    int rc = ctx.W.refl_class[size_t(s)];
    int wc = ctx.classes.class_of[size_t(ctx.refl_element[size_t(s)])];
    acc += class_values[size_t(rc)] * rep.char_by_class[size_t(wc)];
  }
  return F(ctx.W.rank) / F(2) - acc / F(rep.dim);
}

double h_c_lambda(const GroupContext<double>& ctx, const WIrrep<double>& rep,
                  const ParamPoint& c) {
  if (!c.real()) throw std::invalid_argument("h_c: real parameter expected");
  std::vector<double> vals;
  for (const auto& v : c.values) vals.push_back(v.real());
  return h_c_lambda_exact(ctx, rep, vals);
}

std::complex<double> central_reflection_scalar(const GroupContext<double>& ctx,
                                               const WIrrep<double>& rep,
                                               const ParamPoint& c) {
  std::complex<double> acc(0.0);
  for (int s = 0; s < ctx.W.num_refl(); ++s) {
    int rc = ctx.W.refl_class[size_t(s)];
    int wc = ctx.classes.class_of[size_t(ctx.refl_element[size_t(s)])];
    acc += c.values[size_t(rc)] * rep.char_by_class[size_t(wc)];
  }
  return acc / double(rep.dim);
}

template <class F>
std::vector<F> standard_character(const GroupContext<F>& ctx, const WIrrep<F>& rep,
                                  const GroupElement<F>& w, int truncation) {
  int l = ctx.W.rank;
  Matrix<Poly<F>> m(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      std::vector<F> coeffs = {F(i == j ? 1 : 0), -w.mat(i, j)};
      m(i, j) = Poly<F>(coeffs);
    }
  Poly<F> det = det_poly(m);
  std::vector<F> inv = series_inverse(det, truncation);
  F chi(0);
  {
    Matrix<F> rm = irrep_matrix(rep, w.word);
    for (int i = 0; i < rep.dim; ++i) chi += rm(i, i);
  }
  for (auto& v : inv) v = chi * v;
  return inv;
}

Poly<Rat> poincare_poly(const std::vector<int>& degrees) {
  Poly<Rat> out(Rat(1));
  for (int d : degrees) {
    std::vector<Rat> c(size_t(d), Rat(1));
    out = out * Poly<Rat>(c);
  }
  return out;
}

template <class F>
Poly<Rat> theta_poly(const GroupContext<F>& ctx, const WIrrep<F>& lambda,
                     const WIrrep<F>& pi) {
  int top = 0, dsum = 0;
  for (int d : ctx.W.degrees) {
    top += d - 1;
    dsum += d;
  }
  // Compute the series far enough that product coefficients are exact on a
  // window beyond the coinvariant top degree.
  int order = top + dsum;
  std::vector<F> acc(size_t(order) + 1, F(0));
  for (size_t c = 0; c < ctx.classes.members.size(); ++c) {
    const auto& el = ctx.elements[size_t(ctx.classes.representative[c])];
    std::vector<F> ser = standard_character(ctx, lambda, el, order);
    F chi_pi = pi.char_by_class[c];
    F size = F(int(ctx.classes.members[c].size()));
    for (size_t k = 0; k < ser.size(); ++k) acc[k] += size * chi_pi * ser[k];
  }
  // Multiply by prod (1 - t^{d_i}) and scale by dim(pi)/|W|.
  Poly<F> series(std::vector<F>(acc.begin(), acc.end()));
  Poly<F> prod(F(1));
  for (int d : ctx.W.degrees) {
    std::vector<F> c(size_t(d) + 1, F(0));
    c[0] = F(1);
    c[size_t(d)] = F(-1);
    prod = prod * Poly<F>(c);
  }
  Poly<F> theta = series * prod;
  F scale = F(pi.dim) / F(int(ctx.order()));
  std::vector<Rat> out;
  for (int k = 0; k <= top; ++k) {
    F v = scale * theta.coeff(k);
    if constexpr (FieldTraits<F>::is_exact) {
      Exact e = v;
      if (!e.is_rational())
        throw std::logic_error("theta coefficient not rational");
      Rat r = e.rat_part();
      if (boost::multiprecision::denominator(r) != 1 || r < 0)
        throw std::logic_error("theta coefficient not a nonnegative integer");
      out.push_back(r);
    } else {
      double d = FieldTraits<F>::to_double(v);
      long r = std::lround(d);
      if (std::fabs(d - double(r)) > 1e-6 || r < 0)
        throw std::logic_error("theta coefficient not a nonnegative integer");
      out.push_back(Rat(r));
    }
  }
  // Exactly computed coefficients beyond the coinvariant top degree cancel.
  for (int k = top + 1; k <= order; ++k)
    if (!FieldTraits<F>::is_zero(theta.coeff(k)))
      throw std::logic_error("theta series fails to terminate");
  return Poly<Rat>(out);
}

template <class F>
WIrrep<double> to_float(const WIrrep<F>& rep) {
  WIrrep<double> out;
  out.name = rep.name;
  out.aliases = rep.aliases;
  out.dim = rep.dim;
  for (const auto& g : rep.gen) {
    Matrix<double> m(g.rows(), g.cols());
    for (int i = 0; i < g.rows(); ++i)
      for (int j = 0; j < g.cols(); ++j) m(i, j) = FieldTraits<F>::to_double(g(i, j));
    out.gen.push_back(m);
  }
  for (const auto& v : rep.char_by_class)
    out.char_by_class.push_back(FieldTraits<F>::to_double(v));
  return out;
}

#define CHERED_INSTANTIATE(F)                                                    \
  template struct GroupContext<F>;                                               \
  template Matrix<F> irrep_matrix<F>(const WIrrep<F>&, const std::vector<int>&); \
  template std::vector<WIrrep<F>> irreps_of<F>(const GroupContext<F>&);          \
  template const WIrrep<F>& find_irrep<F>(const std::vector<WIrrep<F>>&,         \
                                          const std::string&);                   \
  template F h_c_lambda_exact<F>(const GroupContext<F>&, const WIrrep<F>&,       \
                                 const std::vector<F>&);                         \
  template std::vector<F> standard_character<F>(const GroupContext<F>&,          \
                                                const WIrrep<F>&,                \
                                                const GroupElement<F>&, int);    \
  template Poly<Rat> theta_poly<F>(const GroupContext<F>&, const WIrrep<F>&,     \
                                   const WIrrep<F>&);                            \
  template WIrrep<double> to_float<F>(const WIrrep<F>&);

CHERED_INSTANTIATE(Exact)
CHERED_INSTANTIATE(double)
#undef CHERED_INSTANTIATE

}  // namespace chered
