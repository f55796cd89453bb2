#include "chered/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace chered {

namespace {

struct LabelInfo {
  std::string family;  // "A", "B", "D", "G", "I2"
  int rank = 0;
  int m = 0;  // dihedral order parameter for I2
};

std::optional<LabelInfo> parse_label(const std::string& label) {
  if (label == "A1") return LabelInfo{"A", 1, 0};
  if (label == "A2") return LabelInfo{"I2", 2, 3};
  if (label == "A3") return LabelInfo{"A", 3, 0};
  if (label == "B2") return LabelInfo{"B", 2, 0};
  if (label == "B3") return LabelInfo{"B", 3, 0};
  if (label == "D4") return LabelInfo{"D", 4, 0};
  if (label == "G2") return LabelInfo{"I2", 2, 6};
  if (label.rfind("I2", 0) == 0 && label.size() > 2) {
    std::string arg = label.substr(2);
    if (!arg.empty() && (arg[0] == '_' || arg[0] == '(')) arg = arg.substr(1);
    if (!arg.empty() && arg.back() == ')') arg.pop_back();
    try {
      int m = std::stoi(arg);
      if (m >= 3) return LabelInfo{"I2", 2, m};
    } catch (...) {
    }
  }
  return std::nullopt;
}

// Recognize a double as one of the trig values occurring for m in {3,4,6}.
std::optional<std::pair<Exact, int>> exact_trig_value(double v) {
  static const Rat half(1, 2);
  struct Entry {
    double v;
    Exact e;
    int d;
  };
  static const std::vector<Entry> table = {
      {1.0, Exact(1), 0},
      {-1.0, Exact(-1), 0},
      {0.0, Exact(0), 0},
      {0.5, Exact(half), 0},
      {-0.5, Exact(Rat(-1, 2)), 0},
      {std::sqrt(3.0) / 2, Exact(0, half, 3), 3},
      {-std::sqrt(3.0) / 2, Exact(0, Rat(-1, 2), 3), 3},
      {std::sqrt(2.0) / 2, Exact(0, half, 2), 2},
      {-std::sqrt(2.0) / 2, Exact(0, Rat(-1, 2), 2), 2},
  };
  for (const auto& e : table)
    if (std::fabs(v - e.v) < 1e-12) return std::make_pair(e.e, e.d);
  return std::nullopt;
}

// Exact (cos, sin) of k*pi/m for the quadratic-field dihedral cases.
bool exact_cos_sin(int m, int k, Exact* c, Exact* s, int* quad_d) {
  double ang = double(k) * M_PI / double(m);
  auto cc = exact_trig_value(std::cos(ang));
  auto ss = exact_trig_value(std::sin(ang));
  if (!cc || !ss) return false;
  if (cc->second && ss->second && cc->second != ss->second) return false;
  *c = cc->first;
  *s = ss->first;
  *quad_d = std::max(cc->second, ss->second);
  return true;
}

template <class F>
std::vector<F> vec_of(std::initializer_list<int> v) {
  std::vector<F> out;
  for (int x : v) out.push_back(F(x));
  return out;
}

template <class F>
F dot(const std::vector<F>& a, const std::vector<F>& b) {
  F out(0);
  for (size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

// Finish a datum whose pos_roots, simple, degrees, label are set: coroots,
// reflection matrices, conjugacy classes of reflections.
template <class F>
void finish(CoxeterDatum<F>& w) {
  int l = w.rank;
  int n = w.num_refl();
  w.pos_coroots.clear();
  w.refl_matrix.clear();
  for (int s = 0; s < n; ++s) {
    const auto& alpha = w.pos_roots[size_t(s)];
    F norm2 = dot(alpha, alpha);
    std::vector<F> coroot(static_cast<size_t>(l), F(0));
    for (int j = 0; j < l; ++j) coroot[size_t(j)] = F(2) * alpha[size_t(j)] / norm2;
    w.pos_coroots.push_back(coroot);
    Matrix<F> m = Matrix<F>::identity(l);
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) m(i, j) -= coroot[size_t(i)] * alpha[size_t(j)];
    w.refl_matrix.push_back(m);
  }
  // Conjugacy classes of reflections: orbits under conjugation by the
  // reflections themselves (they generate W).
  auto refl_index = [&](const Matrix<F>& m) {
    for (int s = 0; s < n; ++s)
      if constexpr (FieldTraits<F>::is_exact) {
        if (w.refl_matrix[size_t(s)] == m) return s;
      } else {
        double diff = 0;
        for (int i = 0; i < l; ++i)
          for (int j = 0; j < l; ++j)
            diff = std::max(diff, std::fabs(w.refl_matrix[size_t(s)](i, j) - m(i, j)));
        if (diff < 1e-9) return s;
      }
    return -1;
  };
  w.refl_class.assign(size_t(n), -1);
  w.num_classes = 0;
  for (int s = 0; s < n; ++s) {
    if (w.refl_class[size_t(s)] >= 0) continue;
    int cls = w.num_classes++;
    std::vector<int> frontier = {s};
    w.refl_class[size_t(s)] = cls;
    while (!frontier.empty()) {
      int t = frontier.back();
      frontier.pop_back();
      for (int g = 0; g < n; ++g) {
        Matrix<F> conj = w.refl_matrix[size_t(g)] * w.refl_matrix[size_t(t)] *
                         w.refl_matrix[size_t(g)];
        int idx = refl_index(conj);
        if (idx >= 0 && w.refl_class[size_t(idx)] < 0) {
          w.refl_class[size_t(idx)] = cls;
          frontier.push_back(idx);
        }
      }
    }
  }
  w.group_order = 1;
  for (int d : w.degrees) w.group_order *= d;
}

template <class F>
void build_type_A1(CoxeterDatum<F>& w) {
  w.rank = 1;
  w.degrees = {2};
  w.pos_roots = {vec_of<F>({1})};
  w.simple = {0};
}

// A3 realized as D3 (root system {e_i +- e_j}), which keeps all roots and the
// two 3-dimensional representations rational.
template <class F>
void build_type_A3(CoxeterDatum<F>& w) {
  w.rank = 3;
  w.degrees = {2, 3, 4};
  auto root = [&](int i, int j, int sign) {
    std::vector<F> r(3, F(0));
    r[size_t(i)] = F(1);
    r[size_t(j)] = F(sign);
    return r;
  };
  w.pos_roots = {root(0, 1, -1), root(0, 2, -1), root(1, 2, -1),
                 root(0, 1, 1),  root(0, 2, 1),  root(1, 2, 1)};
  w.simple = {0, 2, 5};  // e1-e2, e2-e3, e2+e3
}

template <class F>
void build_type_B(CoxeterDatum<F>& w, int l) {
  w.rank = l;
  w.degrees.clear();
  for (int i = 1; i <= l; ++i) w.degrees.push_back(2 * i);
  w.pos_roots.clear();
  for (int i = 0; i < l; ++i) {
    std::vector<F> r(size_t(l), F(0));
    r[size_t(i)] = F(1);
    w.pos_roots.push_back(r);
  }
  int diag_start = l;
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j)
      for (int sign : {-1, 1}) {
        std::vector<F> r(size_t(l), F(0));
        r[size_t(i)] = F(1);
        r[size_t(j)] = F(sign);
        w.pos_roots.push_back(r);
      }
  // Simple roots: e1-e2, ..., e_{l-1}-e_l, e_l.
  auto idx_of = [&](int i, int j, int sign) {
    int idx = diag_start;
    for (int a = 0; a < l; ++a)
      for (int b = a + 1; b < l; ++b)
        for (int s : {-1, 1}) {
          if (a == i && b == j && s == sign) return idx;
          ++idx;
        }
    return -1;
  };
  w.simple.clear();
  for (int i = 0; i < l - 1; ++i) w.simple.push_back(idx_of(i, i + 1, -1));
  w.simple.push_back(l - 1);  // e_l
}

template <class F>
void build_type_D4(CoxeterDatum<F>& w) {
  w.rank = 4;
  w.degrees = {2, 4, 4, 6};
  w.pos_roots.clear();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int sign : {-1, 1}) {
        std::vector<F> r(4, F(0));
        r[size_t(i)] = F(1);
        r[size_t(j)] = F(sign);
        w.pos_roots.push_back(r);
      }
  auto idx_of = [&](int i, int j, int sign) {
    int idx = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        for (int s : {-1, 1}) {
          if (a == i && b == j && s == sign) return idx;
          ++idx;
        }
    return -1;
  };
  w.simple = {idx_of(0, 1, -1), idx_of(1, 2, -1), idx_of(2, 3, -1),
              idx_of(2, 3, 1)};
}

// Dihedral I2(m): positive roots are inward normals of the m reflection
// lines at angles k*pi/m; listed even k first so the class containing the
// angle-0 wall comes first when m is even.
template <class F>
bool build_type_I2(CoxeterDatum<F>& w, int m) {
  w.rank = 2;
  w.degrees = {2, m};
  std::vector<int> ks;
  if (m % 2 == 0) {
    for (int k = 2; k <= m; k += 2) ks.push_back(k);
    for (int k = 1; k < m; k += 2) ks.push_back(k);
  } else {
    for (int k = 1; k <= m; ++k) ks.push_back(k);
  }
  w.pos_roots.clear();
  int pos_m = -1, pos_1 = -1;
  for (size_t idx = 0; idx < ks.size(); ++idx) {
    int k = ks[idx];
    if (k == m) pos_m = int(idx);
    if (k == 1) pos_1 = int(idx);
    if constexpr (FieldTraits<F>::is_exact) {
      Exact c, s;
      int d = 0;
      if (!exact_cos_sin(m, k, &c, &s, &d)) return false;
      w.quad_d = std::max(w.quad_d, d);
      w.pos_roots.push_back({F(s), F(-c)});
    } else {
      double ang = double(k) * M_PI / double(m);
      w.pos_roots.push_back({std::sin(ang), -std::cos(ang)});
    }
  }
  w.simple = {pos_m, pos_1};
  return true;
}

template <class F>
CoxeterDatum<F> build_impl(const std::string& label) {
  auto info = parse_label(label);
  if (!info) throw std::invalid_argument("unsupported Coxeter label: " + label);
  CoxeterDatum<F> w;
  w.label = label;
  if (info->family == "A" && info->rank == 1)
    build_type_A1(w);
  else if (info->family == "A" && info->rank == 3)
    build_type_A3(w);
  else if (info->family == "B")
    build_type_B(w, info->rank);
  else if (info->family == "D")
    build_type_D4(w);
  else if (info->family == "I2") {
    if (!build_type_I2(w, info->m))
      throw std::invalid_argument("label " + label + " requires float mode");
  } else
    throw std::invalid_argument("unsupported Coxeter label: " + label);
  if (label == "A2") w.degrees = {2, 3};
  if (label == "G2") w.degrees = {2, 6};
  finish(w);
  return w;
}

}  // namespace

bool label_supported(const std::string& label) {
  return parse_label(label).has_value();
}

bool label_is_exact(const std::string& label) {
  auto info = parse_label(label);
  if (!info) return false;
  if (info->family != "I2") return true;
  return info->m == 3 || info->m == 4 || info->m == 6;
}

CoxeterDatum<Exact> build_coxeter(const std::string& label) {
  if (!label_is_exact(label))
    throw std::invalid_argument("label " + label +
                                " is float-mode only; use build_coxeter_float");
  return build_impl<Exact>(label);
}

CoxeterDatum<double> build_coxeter_float(const std::string& label) {
  return build_impl<double>(label);
}

template <class F>
CoxeterDatum<double> to_float(const CoxeterDatum<F>& w) {
  CoxeterDatum<double> out;
  out.label = w.label;
  out.rank = w.rank;
  out.quad_d = -1;
  for (const auto& r : w.pos_roots) {
    std::vector<double> v;
    for (const auto& x : r) v.push_back(FieldTraits<F>::to_double(x));
    out.pos_roots.push_back(v);
  }
  for (const auto& r : w.pos_coroots) {
    std::vector<double> v;
    for (const auto& x : r) v.push_back(FieldTraits<F>::to_double(x));
    out.pos_coroots.push_back(v);
  }
  for (const auto& m : w.refl_matrix) {
    Matrix<double> d(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) d(i, j) = FieldTraits<F>::to_double(m(i, j));
    out.refl_matrix.push_back(d);
  }
  out.refl_class = w.refl_class;
  out.num_classes = w.num_classes;
  out.simple = w.simple;
  out.degrees = w.degrees;
  out.group_order = w.group_order;
  return out;
}

template <class F>
int CoxeterDatum<F>::coxeter_m(int i, int j) const {
  Matrix<F> prod = refl_matrix[size_t(simple[size_t(i)])] *
                   refl_matrix[size_t(simple[size_t(j)])];
  Matrix<F> acc = Matrix<F>::identity(rank);
  for (int m = 1; m <= 1000; ++m) {
    acc = acc * prod;
    bool ident = true;
    for (int r = 0; r < rank && ident; ++r)
      for (int c = 0; c < rank && ident; ++c) {
        F want = (r == c) ? F(1) : F(0);
        if constexpr (FieldTraits<F>::is_exact) {
          if (!(acc(r, c) == want)) ident = false;
        } else {
          if (std::fabs(acc(r, c) - want) > 1e-9) ident = false;
        }
      }
    if (ident) return m;
  }
  throw std::runtime_error("coxeter_m: product order not found");
}

template <class F>
std::vector<GroupElement<F>> enumerate_group(const CoxeterDatum<F>& w, long cap) {
  std::vector<GroupElement<F>> out;
  out.push_back({Matrix<F>::identity(w.rank), {}});
  size_t frontier_begin = 0;
  while (frontier_begin < out.size()) {
    size_t frontier_end = out.size();
    for (size_t e = frontier_begin; e < frontier_end; ++e)
      for (size_t i = 0; i < w.simple.size(); ++i) {
        Matrix<F> m = out[e].mat * w.refl_matrix[size_t(w.simple[i])];
        if (element_index(out, m) >= 0) continue;
        GroupElement<F> g;
        g.mat = m;
        g.word = out[e].word;
        g.word.push_back(int(i));
        out.push_back(std::move(g));
        if (long(out.size()) > cap)
          throw std::runtime_error("group order cap exceeded (" +
                                   std::to_string(cap) + ")");
      }
    frontier_begin = frontier_end;
  }
  return out;
}

template <class F>
int element_index(const std::vector<GroupElement<F>>& g, const Matrix<F>& m) {
  for (size_t i = 0; i < g.size(); ++i) {
    if constexpr (FieldTraits<F>::is_exact) {
      if (g[i].mat == m) return int(i);
    } else {
      double diff = 0;
      for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
          diff = std::max(diff, std::fabs(g[i].mat(r, c) - m(r, c)));
      if (diff < 1e-8) return int(i);
    }
  }
  return -1;
}

template <class F>
ConjClasses conjugacy_classes(const CoxeterDatum<F>& w,
                              const std::vector<GroupElement<F>>& g) {
  (void)w;
  ConjClasses cc;
  cc.class_of.assign(g.size(), -1);
  for (size_t e = 0; e < g.size(); ++e) {
    if (cc.class_of[e] >= 0) continue;
    int cls = int(cc.members.size());
    cc.members.push_back({});
    cc.representative.push_back(int(e));
    std::vector<size_t> frontier = {e};
    cc.class_of[e] = cls;
    cc.members[size_t(cls)].push_back(int(e));
    while (!frontier.empty()) {
      size_t t = frontier.back();
      frontier.pop_back();
      for (size_t h = 0; h < g.size(); ++h) {
        Matrix<F> conj = g[h].mat * g[t].mat * g[h].mat.transpose();
        int idx = element_index(g, conj);
        if (idx >= 0 && cc.class_of[size_t(idx)] < 0) {
          cc.class_of[size_t(idx)] = cls;
          cc.members[size_t(cls)].push_back(idx);
          frontier.push_back(size_t(idx));
        }
      }
    }
  }
  return cc;
}

template <class F>
MPoly<F> discriminant(const CoxeterDatum<F>& w) {
  MPoly<F> delta = MPoly<F>::constant(w.rank, F(1));
  for (const auto& alpha : w.pos_roots) delta = delta * MPoly<F>::linear(alpha);
  return delta;
}

std::vector<double> chamber_basepoint(const CoxeterDatum<double>& w) {
  // Solve alpha_i(x) = 1 for the simple roots, then rescale to clearance 1.
  Eigen::MatrixXd a(w.rank, w.rank);
  for (int i = 0; i < w.rank; ++i)
    for (int j = 0; j < w.rank; ++j)
      a(i, j) = w.pos_roots[size_t(w.simple[size_t(i)])][size_t(j)];
  Eigen::VectorXd b = Eigen::VectorXd::Ones(w.rank);
  Eigen::VectorXd x = a.fullPivLu().solve(b);
  std::vector<double> pt(x.data(), x.data() + w.rank);
  double cl = clearance(w, pt);
  for (auto& v : pt) v /= cl;
  return pt;
}

double clearance(const CoxeterDatum<double>& w, const std::vector<double>& x) {
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < w.num_refl(); ++s) {
    double num = 0, nrm = 0;
    for (int j = 0; j < w.rank; ++j) {
      num += w.pos_roots[size_t(s)][size_t(j)] * x[size_t(j)];
      nrm += w.pos_roots[size_t(s)][size_t(j)] * w.pos_roots[size_t(s)][size_t(j)];
    }
    best = std::min(best, std::fabs(num) / std::sqrt(nrm));
  }
  return best;
}

#define CHERED_INSTANTIATE(F)                                                  \
  template struct CoxeterDatum<F>;                                             \
  template CoxeterDatum<double> to_float<F>(const CoxeterDatum<F>&);           \
  template std::vector<GroupElement<F>> enumerate_group<F>(                    \
      const CoxeterDatum<F>&, long);                                           \
  template int element_index<F>(const std::vector<GroupElement<F>>&,           \
                                const Matrix<F>&);                             \
  template ConjClasses conjugacy_classes<F>(const CoxeterDatum<F>&,            \
                                            const std::vector<GroupElement<F>>&); \
  template MPoly<F> discriminant<F>(const CoxeterDatum<F>&);

CHERED_INSTANTIATE(Exact)
CHERED_INSTANTIATE(double)
#undef CHERED_INSTANTIATE

}  // namespace chered
