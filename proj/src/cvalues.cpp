#include "wnr/cvalues.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "wnr/rng.hpp"

namespace wnr {

namespace {

// Resource guard for the combinatorial enumeration itself; the cpolynomial
// entry point applies the stricter public guard (n <= 8, degree <= 5000).
constexpr long long kEnumerationCap = 200000;

double value_scale(const CValueSet& s) {
  double m = 0.0;
  for (const cplx& v : s.values) m = std::max(m, std::abs(v));
  return 1.0 + m;
}

}  // namespace

DegreeInfo degree(const WeightVector& c, int n) {
  DegreeInfo info;
  info.r = c.nonzero_count();
  if (info.r > n)
    throw WeightCountExceedsDimension("weight vector has " + std::to_string(info.r) +
                                      " nonzero entries but n = " + std::to_string(n));
  long long deg = 1;
  for (int k = 0; k < info.r; ++k) deg *= (n - k);  // falling factorial n (n-1) ... (n-r+1)
  for (const auto& [value, mult] : c.signature()) {
    info.group_multiplicities.push_back(mult);
    long long fact = 1;
    for (int k = 2; k <= mult; ++k) fact *= k;
    deg /= fact;  // exact: assignments within an equal-weight group are unordered
  }
  info.degree = deg;
  return info;
}

CValueSet enumerate_cvalues(const Spectrum& spectrum, const WeightVector& c) {
  const int n = int(spectrum.eigenvalues.size());
  const DegreeInfo info = degree(c, n);
  if (info.degree > kEnumerationCap)
    throw DegreeTooLarge("c-value enumeration of size " + std::to_string(info.degree));

  // Slots of equal weight grouped in first-appearance order; each group
  // receives an unordered set of eigenvalue indices, written back to its
  // slots in ascending index order.
  const std::vector<int> slots = c.nonzero_slots();
  const auto signature = c.signature();
  std::vector<std::vector<int>> group_slots(signature.size());
  for (int slot : slots) {
    for (std::size_t g = 0; g < signature.size(); ++g)
      if (c[slot] == signature[g].first) {
        group_slots[g].push_back(slot);
        break;
      }
  }

  CValueSet out;
  out.values.reserve(std::size_t(info.degree));
  std::vector<int> slot_to_pos(std::size_t(c.dim()), -1);
  for (std::size_t t = 0; t < slots.size(); ++t) slot_to_pos[std::size_t(slots[t])] = int(t);

  std::vector<int> witness(slots.size(), -1);
  std::vector<bool> used(std::size_t(n), false);

  const auto emit = [&]() {
    cplx v = 0.0;
    for (std::size_t t = 0; t < slots.size(); ++t)
      v += c[slots[t]] * spectrum.eigenvalues[std::size_t(witness[t])];
    out.values.push_back(v);
    out.witnesses.push_back(witness);
  };

  // choose an ascending index combination for group g, then recurse
  const auto rec = [&](auto&& self, std::size_t g) -> void {
    if (g == group_slots.size()) {
      emit();
      return;
    }
    const int need = int(group_slots[g].size());
    std::vector<int> chosen;
    const auto pick = [&](auto&& pick_self, int start, int left) -> void {
      if (left == 0) {
        for (int i = 0; i < need; ++i)
          witness[std::size_t(slot_to_pos[std::size_t(group_slots[g][std::size_t(i)])])] =
              chosen[std::size_t(i)];
        self(self, g + 1);
        return;
      }
      for (int j = start; j <= n - left; ++j) {
        if (used[std::size_t(j)]) continue;
        used[std::size_t(j)] = true;
        chosen.push_back(j);
        pick_self(pick_self, j + 1, left - 1);
        chosen.pop_back();
        used[std::size_t(j)] = false;
      }
    };
    pick(pick, 0, need);
  };
  rec(rec, 0);

  if (static_cast<long long>(out.values.size()) != info.degree)
    throw Error("enumeration produced " + std::to_string(out.values.size()) +
                " values, expected " + std::to_string(info.degree));
  return out;
}

CPolynomial cpolynomial(const ComplexMatrix& a, const WeightVector& c) {
  if (a.dim() > 8) throw DegreeTooLarge("cpolynomial is limited to n <= 8");
  const DegreeInfo info = degree(c, a.dim());
  if (info.degree > 5000)
    throw DegreeTooLarge("deg(A;c) = " + std::to_string(info.degree) + " exceeds 5000");

  CValueSet set = enumerate_cvalues(eig_general(a), c);
  // Multiply linear factors in shuffled order; the mix keeps magnitudes
  // balanced as the degree grows.
  std::mt19937_64 gen(kDefaultSeed);
  for (std::size_t i = set.values.size(); i > 1; --i)
    std::swap(set.values[i - 1], set.values[std::size_t(gen() % i)]);

  std::vector<cplx> coeff = {cplx(1.0, 0.0)};  // ascending, stays monic
  for (const cplx& root : set.values) {
    coeff.push_back(cplx(0.0, 0.0));
    for (std::size_t k = coeff.size() - 1; k > 0; --k)
      coeff[k] = coeff[k - 1] - root * coeff[k];
    coeff[0] = -root * coeff[0];
  }
  return CPolynomial{std::move(coeff)};
}

cplx eval_r(const ComplexMatrix& a, const WeightVector& c, cplx x, cplx y, cplx t) {
  const ComplexMatrix m = x * a + y * a.adjoint();
  const CValueSet set = enumerate_cvalues(eig_general(m), c);
  cplx p = 1.0;
  for (const cplx& v : set.values) p *= (t - v);
  return p;
}

std::vector<CValueMatch> common_cvalue(const ComplexMatrix& a, const WeightVector& c,
                                       const ComplexMatrix& b, const WeightVector& d, double tol) {
  const CValueSet sa = enumerate_cvalues(eig_general(a), c);
  const CValueSet sb = enumerate_cvalues(eig_general(b), d);
  if (tol <= 0.0) tol = 1e-7 * std::max(value_scale(sa), value_scale(sb));

  std::vector<CValueMatch> out;
  for (std::size_t i = 0; i < sa.values.size(); ++i)
    for (std::size_t j = 0; j < sb.values.size(); ++j) {
      if (std::abs(sa.values[i] - sb.values[j]) > tol) continue;
      out.push_back({0.5 * (sa.values[i] + sb.values[j]), sa.witnesses[i], sb.witnesses[j]});
      if (out.size() >= 10000) return out;  // degenerate-coincidence cap
    }
  std::sort(out.begin(), out.end(), [](const CValueMatch& x, const CValueMatch& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return out;
}

bool all_cvalues_subset(const ComplexMatrix& a, const WeightVector& c, const ComplexMatrix& b,
                        const WeightVector& d, double tol) {
  const CValueSet sa = enumerate_cvalues(eig_general(a), c);
  const CValueSet sb = enumerate_cvalues(eig_general(b), d);
  if (tol <= 0.0) tol = 1e-7 * std::max(value_scale(sa), value_scale(sb));
  for (const cplx& va : sa.values) {
    bool hit = false;
    for (const cplx& vb : sb.values)
      if (std::abs(va - vb) <= tol) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

int cvalue_multiplicity(const CValueSet& set, cplx v, double tol) {
  int count = 0;
  for (const cplx& w : set.values)
    if (std::abs(w - v) <= tol) ++count;
  return count;
}

}  // namespace wnr
