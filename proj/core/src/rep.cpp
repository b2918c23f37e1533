// Copyright 2026 The gsc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gsc/rep.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <random>

#include "gsc/errors.hpp"

namespace gsc {

// ---- CMatrix -----------------------------------------------------------------

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  CMatrix r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      cplx a = (*this)(i, k);
      if (a == cplx(0)) continue;
      for (int j = 0; j < o.cols; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
  CMatrix r = *this;
  for (std::size_t i = 0; i < data.size(); ++i) r.data[i] += o.data[i];
  return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
  CMatrix r = *this;
  for (std::size_t i = 0; i < data.size(); ++i) r.data[i] -= o.data[i];
  return r;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMatrix CMatrix::conj() const {
  CMatrix r = *this;
  for (auto& x : r.data) x = std::conj(x);
  return r;
}

CMatrix CMatrix::kron(const CMatrix& o) const {
  CMatrix r(rows * o.rows, cols * o.cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      for (int k = 0; k < o.rows; ++k)
        for (int l = 0; l < o.cols; ++l) r(i * o.rows + k, j * o.cols + l) = (*this)(i, j) * o(k, l);
  return r;
}

cplx CMatrix::trace() const {
  cplx t = 0;
  for (int i = 0; i < std::min(rows, cols); ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0;
  for (const auto& x : data) m = std::max(m, std::abs(x));
  return m;
}

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

MatrixXcd to_eigen(const CMatrix& m) {
  MatrixXcd r(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r(i, j) = m(i, j);
  return r;
}

CMatrix from_eigen(const MatrixXcd& m) {
  CMatrix r(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < r.rows; ++i)
    for (int j = 0; j < r.cols; ++j) r(i, j) = m(i, j);
  return r;
}

std::string irrep_letter(int k) {
  if (k < 26) return std::string(1, static_cast<char>('A' + k));
  return "R" + std::to_string(k + 1);
}

struct Candidate {
  int dim;
  std::vector<cplx> chars;
};

bool less_key(const Candidate& a, const Candidate& b) {
  bool ta = std::all_of(a.chars.begin(), a.chars.end(), [](cplx z) { return std::abs(z - 1.0) < 1e-8; });
  bool tb = std::all_of(b.chars.begin(), b.chars.end(), [](cplx z) { return std::abs(z - 1.0) < 1e-8; });
  if (ta != tb) return ta;
  if (a.dim != b.dim) return a.dim < b.dim;
  for (std::size_t k = 0; k < a.chars.size(); ++k) {
    double ar = std::round(a.chars[k].real() * 1e6), br = std::round(b.chars[k].real() * 1e6);
    if (ar != br) return ar > br;
    double ai = std::round(a.chars[k].imag() * 1e6), bi = std::round(b.chars[k].imag() * 1e6);
    if (ai != bi) return ai > bi;
  }
  return false;
}

}  // namespace

int round_multiplicity(double x) {
  double r = std::round(x);
  if (std::abs(x - r) > 1e-6)
    throw NumericalDegeneracy("multiplicity " + std::to_string(x) + " is not an integer");
  return static_cast<int>(r);
}

// ---- character table -------------------------------------------------------

// chi(g) = sum_j m_j zeta^j over the eigenvalues of R(g); m_j are recovered from the
// power map and rounded to integers, which removes eigensolver noise.
static void snap_characters(CharacterTable& T) {
  const auto& G = *T.G;
  const double tau = 2.0 * std::acos(-1.0);
  for (auto& row : T.chars) {
    std::vector<cplx> snapped(row.size());
    bool ok = true;
    for (std::size_t k = 0; k < row.size() && ok; ++k) {
      int g = T.classes[k][0];
      int m = G.element_order(g);
      std::vector<cplx> pw(m), zeta(m);
      for (int t = 0, x = 0; t < m; ++t, x = G.mul(x, g)) {
        pw[t] = row[T.class_of[x]];
        zeta[t] = std::polar(1.0, tau * t / m);
      }
      cplx chi = 0;
      for (int j = 0; j < m; ++j) {
        cplx s = 0;
        for (int t = 0; t < m; ++t) s += pw[t] * std::conj(zeta[(j * t) % m]);
        s /= static_cast<double>(m);
        double r = std::round(s.real());
        if (std::abs(s - r) > 1e-6 || r < 0) ok = false;
        chi += r * zeta[j];
      }
      if (std::abs(chi.real()) < 1e-14) chi.real(0);
      if (std::abs(chi.imag()) < 1e-14) chi.imag(0);
      snapped[k] = chi;
    }
    if (ok) row = snapped;
  }
}

CharacterTable character_table(const GroupPtr& G, std::uint64_t seed) {
  CharacterTable T;
  T.G = G;
  T.classes = conjugacy_classes(*G);
  T.class_of = class_index(*G, T.classes);
  const int n = G->order();
  const int nc = static_cast<int>(T.classes.size());

  // c[j][i][k] = #{(x in C_j, y in C_i) : x y = rep_k}
  std::vector<double> c(static_cast<std::size_t>(nc) * nc * nc, 0.0);
  for (int k = 0; k < nc; ++k) {
    int gk = T.classes[k][0];
    for (int x = 0; x < n; ++x) {
      int y = G->mul(G->inv(x), gk);
      c[(static_cast<std::size_t>(T.class_of[x]) * nc + T.class_of[y]) * nc + k] += 1.0;
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  for (int attempt = 0; attempt < 16; ++attempt) {
    MatrixXd M = MatrixXd::Zero(nc, nc);
    for (int j = 0; j < nc; ++j) {
      double lam = unif(rng);
      for (int i = 0; i < nc; ++i)
        for (int k = 0; k < nc; ++k) M(i, k) += lam * c[(static_cast<std::size_t>(j) * nc + i) * nc + k];
    }
    Eigen::ComplexEigenSolver<MatrixXcd> es(M.cast<cplx>());
    if (es.info() != Eigen::Success) continue;
    auto ev = es.eigenvalues();
    double gap = 1e300;
    for (int a = 0; a < nc; ++a)
      for (int b = a + 1; b < nc; ++b) gap = std::min(gap, std::abs(ev(a) - ev(b)));
    if (nc > 1 && gap < 1e-6) continue;

    std::vector<Candidate> cands;
    bool ok = true;
    for (int a = 0; a < nc && ok; ++a) {
      VectorXcd w = es.eigenvectors().col(a);
      if (std::abs(w(0)) < 1e-12) {
        ok = false;
        break;
      }
      w /= w(0);
      double s = 0;
      for (int k = 0; k < nc; ++k) s += std::norm(w(k)) / static_cast<double>(T.classes[k].size());
      double d2 = n / s;
      int d = static_cast<int>(std::lround(std::sqrt(d2)));
      if (std::abs(std::sqrt(d2) - d) > 1e-6) {
        ok = false;
        break;
      }
      Candidate cd{d, std::vector<cplx>(nc)};
      for (int k = 0; k < nc; ++k) {
        cplx v = w(k) * static_cast<double>(d) / static_cast<double>(T.classes[k].size());
        // snap dust
        if (std::abs(v.real()) < 1e-12) v.real(0);
        if (std::abs(v.imag()) < 1e-12) v.imag(0);
        cd.chars[k] = v;
      }
      cands.push_back(std::move(cd));
    }
    if (!ok) continue;
    std::sort(cands.begin(), cands.end(), less_key);
    T.chars.clear();
    T.dims.clear();
    T.labels.clear();
    for (std::size_t r = 0; r < cands.size(); ++r) {
      T.chars.push_back(cands[r].chars);
      T.dims.push_back(cands[r].dim);
      T.labels.push_back(irrep_letter(static_cast<int>(r)));
    }
    int sumsq = 0;
    for (int d : T.dims) sumsq += d * d;
    if (sumsq != n) continue;
    snap_characters(T);
    return T;
  }
  throw NumericalDegeneracy("class-sum eigenvectors could not be separated for " + G->label());
}

// ---- irreps ------------------------------------------------------------------

namespace {

bool s3_aliases(const GroupTable& G, int& r, int& s) {
  if (G.order() != 6 || G.is_abelian()) return false;
  r = s = -1;
  for (const auto& [nm, g] : G.aliases()) {
    if (nm == "r") r = g;
    if (nm == "s") s = g;
  }
  return r >= 0 && s >= 0 && G.element_order(r) == 3 && G.element_order(s) == 2;
}

Irrep irrep_from_character(const GroupPtr& G, const CharacterTable& T, int row, std::mt19937_64& rng) {
  const int n = G->order();
  const int d = T.dims[row];
  Irrep R;
  R.label = T.labels[row];
  R.dim = d;
  R.mats.resize(n);
  if (d == 1) {
    for (int g = 0; g < n; ++g) {
      R.mats[g] = CMatrix(1, 1);
      R.mats[g](0, 0) = T.chi(row, g);
    }
    return R;
  }
  // Isotypic projector on the left regular representation: P_xy = d/|G| conj(chi(x y^-1)).
  MatrixXcd P(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      P(x, y) = static_cast<double>(d) / n * std::conj(T.chi(row, G->mul(x, G->inv(y))));
  Eigen::SelfAdjointEigenSolver<MatrixXcd> pes(P);
  MatrixXcd Q(n, d * d);
  {
    int col = 0;
    for (int a = 0; a < n; ++a)
      if (pes.eigenvalues()(a) > 0.5) Q.col(col++) = pes.eigenvectors().col(a);
    if (col != d * d) throw NumericalDegeneracy("isotypic component has wrong dimension");
  }
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<double> cg(n);
    for (auto& v : cg) v = unif(rng);
    // Hermitian element of the right-regular commutant.
    MatrixXcd A(n, n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        A(x, y) = cg[G->mul(G->inv(x), y)] + cg[G->mul(G->inv(y), x)];
    MatrixXcd B = Q.adjoint() * A * Q;
    B = 0.5 * (B + B.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> bes(B);
    const auto& ev = bes.eigenvalues();
    bool clustered = true;
    for (int a = 1; a < d; ++a) clustered = clustered && std::abs(ev(a) - ev(0)) < 1e-8;
    if (!clustered || std::abs(ev(d) - ev(0)) < 1e-6) continue;
    MatrixXcd U = Q * bes.eigenvectors().leftCols(d);
    for (int g = 0; g < n; ++g) {
      MatrixXcd LU(n, d);
      int gi = G->inv(g);
      for (int x = 0; x < n; ++x) LU.row(x) = U.row(G->mul(gi, x));
      MatrixXcd Rg = U.adjoint() * LU;
      // polar unitarization
      Eigen::JacobiSVD<MatrixXcd> svd(Rg, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Rg = svd.matrixU() * svd.matrixV().adjoint();
      R.mats[g] = from_eigen(Rg);
    }
    return R;
  }
  throw NumericalDegeneracy("could not split isotypic component of irrep " + R.label);
}

}  // namespace

std::vector<Irrep> irrep_matrices(const GroupPtr& G, int cap, std::uint64_t seed) {
  if (G->order() > cap)
    throw CapExceeded("irrep matrices requested for |G| = " + std::to_string(G->order()) +
                      " above cap " + std::to_string(cap));
  auto T = character_table(G, seed);
  std::mt19937_64 rng(seed ^ 0x5eedULL);
  std::vector<Irrep> out;
  for (int row = 0; row < T.num_irreps(); ++row) out.push_back(irrep_from_character(G, T, row, rng));

  int r, s;
  if (s3_aliases(*G, r, s)) {
    const double pi = std::acos(-1.0);
    cplx w = std::polar(1.0, 2 * pi / 3);
    CMatrix Cr(2, 2), Cs(2, 2);
    Cr(0, 0) = w;
    Cr(1, 1) = w * w;
    Cs(0, 1) = 1;
    Cs(1, 0) = 1;
    for (auto& R : out) {
      if (R.dim != 2) continue;
      for (int g = 0; g < G->order(); ++g) {
        CMatrix m = CMatrix::identity(2);
        bool found = false;
        for (int p = 0; p < 3 && !found; ++p)
          for (int q = 0; q < 2 && !found; ++q)
            if (G->mul(G->pow(r, p), G->pow(s, q)) == g) {
              for (int t = 0; t < p; ++t) m = m * Cr;
              if (q) m = m * Cs;
              found = true;
            }
        R.mats[g] = m;
      }
    }
  }
  for (std::size_t row = 0; row < out.size(); ++row)
    for (int g = 0; g < G->order(); ++g)
      if (std::abs(out[row].mats[g].trace() - T.chi(static_cast<int>(row), g)) > 1e-8)
        throw NumericalDegeneracy("irrep trace does not match character");
  return out;
}

std::shared_ptr<const RepData> representations(const GroupPtr& G) {
  static std::mutex mu;
  static std::map<const GroupTable*, std::pair<std::weak_ptr<const GroupTable>, std::shared_ptr<const RepData>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(G.get());
  if (it != cache.end() && !it->second.first.expired()) return it->second.second;
  auto data = std::make_shared<RepData>();
  data->table = character_table(G);
  data->irreps = irrep_matrices(G);
  data->trivial = 0;
  cache[G.get()] = {G, data};
  return data;
}

std::vector<IrrepBasisState> irrep_basis_states(const GroupPtr& G) {
  auto rd = representations(G);
  const int n = G->order();
  std::vector<IrrepBasisState> out;
  for (int r = 0; r < static_cast<int>(rd->irreps.size()); ++r) {
    const auto& R = rd->irreps[r];
    double norm = std::sqrt(static_cast<double>(R.dim) / n);
    for (int i = 0; i < R.dim; ++i)
      for (int j = 0; j < R.dim; ++j) {
        IrrepBasisState st{r, i, j, std::vector<cplx>(n)};
        for (int g = 0; g < n; ++g) st.vec[g] = norm * R(g)(i, j);
        out.push_back(std::move(st));
      }
  }
  return out;
}

std::vector<int> restrict_multiplicities(const Subgroup& H, const Irrep& R) {
  auto rh = representations(H.as_group());
  std::vector<int> out;
  for (int mu = 0; mu < rh->table.num_irreps(); ++mu) {
    cplx s = 0;
    for (int l = 0; l < H.size(); ++l) s += std::conj(rh->table.chi(mu, l)) * R(H.embed(l)).trace();
    out.push_back(round_multiplicity(s.real() / H.size()));
  }
  return out;
}

std::vector<int> induced_trivial_multiplicities(const Subgroup& H) {
  auto rg = representations(H.parent());
  std::vector<int> out;
  for (int i = 0; i < rg->table.num_irreps(); ++i) {
    cplx s = 0;
    for (int h : H.members()) s += rg->table.chi(i, h);
    out.push_back(round_multiplicity(s.real() / H.size()));
  }
  return out;
}

CMatrix isotypic_projector(const std::vector<CMatrix>& RV, const Irrep& W, int a, int b) {
  const int n = static_cast<int>(RV.size());
  CMatrix P(RV[0].rows, RV[0].cols);
  double f = static_cast<double>(W.dim) / n;
  for (int g = 0; g < n; ++g) {
    cplx w = std::conj(W(g)(a, b)) * f;
    if (w == cplx(0)) continue;
    for (std::size_t k = 0; k < P.data.size(); ++k) P.data[k] += w * RV[g].data[k];
  }
  return P;
}

FusionDecomposition clebsch_gordan(const GroupPtr& G, const Irrep& R1, const Irrep& R2, bool conj2) {
  auto rd = representations(G);
  const int n = G->order();
  std::vector<CMatrix> V(n);
  for (int g = 0; g < n; ++g) V[g] = R1(g).kron(conj2 ? R2(g).conj() : R2(g));
  const int D = R1.dim * R2.dim;
  FusionDecomposition F;
  F.cg = CMatrix(D, D);
  int col = 0;
  for (int mu = 0; mu < rd->table.num_irreps(); ++mu) {
    cplx s = 0;
    for (int g = 0; g < n; ++g) s += std::conj(rd->table.chi(mu, g)) * V[g].trace();
    int mult = round_multiplicity(s.real() / n);
    if (mult == 0) continue;
    F.summands.emplace_back(mu, mult);
    const auto& W = rd->irreps[mu];
    MatrixXcd P11 = to_eigen(isotypic_projector(V, W, 0, 0));
    P11 = 0.5 * (P11 + P11.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(P11);
    std::vector<VectorXcd> seeds;
    for (int a = D - 1; a >= 0 && static_cast<int>(seeds.size()) < mult; --a)
      if (es.eigenvalues()(a) > 0.5) seeds.push_back(es.eigenvectors().col(a));
    if (static_cast<int>(seeds.size()) != mult) throw NumericalDegeneracy("CG multiplicity space mismatch");
    for (int nu = 0; nu < mult; ++nu)
      for (int kappa = 0; kappa < W.dim; ++kappa) {
        VectorXcd v = to_eigen(isotypic_projector(V, W, kappa, 0)) * seeds[nu];
        v.normalize();
        for (int r = 0; r < D; ++r) F.cg(r, col) = v(r);
        F.columns.emplace_back(mu, nu, kappa);
        ++col;
      }
  }
  if (col != D) throw NumericalDegeneracy("CG columns do not span the product space");
  return F;
}

FusionDecomposition clebsch_gordan(const GroupPtr& G, int r1, int r2) {
  auto rd = representations(G);
  auto F = clebsch_gordan(G, rd->irreps[r1], rd->irreps[r2], false);
  F.r1 = r1;
  F.r2 = r2;
  return F;
}

}  // namespace gsc
