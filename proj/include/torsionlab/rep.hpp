#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "torsionlab/group_ring.hpp"
#include "torsionlab/matrix.hpp"
#include "torsionlab/presentation.hpp"
#include "torsionlab/root_of_unity.hpp"
#include "torsionlab/sym_power.hpp"
#include "torsionlab/word.hpp"

namespace torsionlab {

/// Construction metadata carried alongside a representation; reports and
/// serialization read it, the matrix numerics do not (apart from the exact
/// eigenvalue shortcut in the large-dimension torsion path).
struct RepMeta {
  std::optional<int> n;
  std::optional<int> j;
  std::optional<int> k;
  std::optional<RootOfUnity> xi;
  std::optional<double> u;
};

/// Assignment generator -> SL(2,C) matrix over a fixed presentation.
/// Everything is immutable after construction; classification predicates are
/// pure free functions (twist_reps.hpp).
template <class C>
struct Rep {
  Presentation pres;
  std::vector<Matrix<C>> images;  // 2x2, indexed by generator
  RepMeta meta;

  const Matrix<C>& image(int gen) const {
    if (gen < 0 || gen >= int(images.size()))
      throw std::out_of_range("Rep: unknown generator index");
    return images[gen];
  }
};

template <class C>
Matrix<C> inverse2(const Matrix<C>& m) {
  const C d = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (d == C(0)) throw std::domain_error("inverse2: singular");
  Matrix<C> r(2, 2);
  r(0, 0) = m(1, 1) / d;
  r(0, 1) = -m(0, 1) / d;
  r(1, 0) = -m(1, 0) / d;
  r(1, 1) = m(0, 0) / d;
  return r;
}

/// Ordered product of generator images (and inverses) along the word,
/// optionally composed with the lift into dimension `lift_dim`.
/// lift_dim = 2 (or std::nullopt) evaluates in SL(2,C) directly.
template <class C>
Matrix<C> evaluate_word(const Rep<C>& rep, const Word& w,
                        std::optional<int> lift_dim = std::nullopt) {
  const int dim = lift_dim.value_or(2);
  if (dim < 1) throw std::invalid_argument("evaluate_word: bad lift dimension");
  if (w.max_generator() >= int(rep.images.size()))
    throw std::out_of_range("evaluate_word: word references an unknown generator index");

  // lift each needed generator image (and inverse) once
  const int ng = int(rep.images.size());
  std::vector<std::optional<Matrix<C>>> pos(ng), neg(ng);
  auto lifted = [&](int g, int e) -> const Matrix<C>& {
    auto& slot = e > 0 ? pos[g] : neg[g];
    if (!slot) {
      Matrix<C> base = e > 0 ? rep.image(g) : inverse2(rep.image(g));
      slot = dim == 2 ? base : sym_power(base, dim);
    }
    return *slot;
  };

  Matrix<C> acc = Matrix<C>::identity(dim);
  for (const Letter& l : w.letters()) acc = acc * lifted(l.gen, l.exp);
  return acc;
}

template <class C>
struct RelationReport {
  using real_type = typename scalar_traits<C>::real_type;
  std::vector<real_type> residuals;  // per relator, max-norm against identity
  real_type max_residual;
};

/// Residual of each relator under the representation: the entrywise max-norm
/// of evaluate_word(rep, relator) - identity.
template <class C>
RelationReport<C> verify_relations(const Rep<C>& rep, const Presentation& pres) {
  using R = typename scalar_traits<C>::real_type;
  RelationReport<C> rpt;
  rpt.max_residual = R(0);
  for (const Word& r : pres.relators()) {
    R res = evaluate_word(rep, r).residual_vs_identity();
    rpt.residuals.push_back(res);
    if (res > rpt.max_residual) rpt.max_residual = res;
  }
  return rpt;
}

template <class C>
RelationReport<C> verify_relations(const Rep<C>& rep) {
  return verify_relations(rep, rep.pres);
}

/// Sum of coefficient * evaluate_word over the terms of a group-ring element.
template <class C>
Matrix<C> eval_group_ring(const GroupRingElement& e, const Rep<C>& rep,
                          std::optional<int> lift_dim = std::nullopt) {
  const int dim = lift_dim.value_or(2);
  Matrix<C> acc = Matrix<C>::zero(dim, dim);
  for (const auto& [w, c] : e.terms())
    acc = acc + evaluate_word(rep, w, dim) * C(double(c));
  return acc;
}

/// Image of the Fox derivative d(w)/d(gen) under the lifted representation,
/// evaluated in one walk over the word (the derivative's terms are signed
/// prefixes, so the running prefix product covers them all). Agrees with
/// eval_group_ring(fox_derivative(w, gen), rep, dim) but is linear in the
/// word length.
template <class C>
Matrix<C> fox_derivative_image(const Rep<C>& rep, const Word& w, int gen,
                               std::optional<int> lift_dim = std::nullopt) {
  const int dim = lift_dim.value_or(2);
  if (w.max_generator() >= int(rep.images.size()))
    throw std::out_of_range("fox_derivative_image: unknown generator index");

  const int ng = int(rep.images.size());
  std::vector<std::optional<Matrix<C>>> pos(ng), neg(ng);
  auto lifted = [&](int g, int e) -> const Matrix<C>& {
    auto& slot = e > 0 ? pos[g] : neg[g];
    if (!slot) {
      Matrix<C> base = e > 0 ? rep.image(g) : inverse2(rep.image(g));
      slot = dim == 2 ? base : sym_power(base, dim);
    }
    return *slot;
  };

  Matrix<C> sum = Matrix<C>::zero(dim, dim);
  Matrix<C> prefix = Matrix<C>::identity(dim);
  for (const Letter& l : w.letters()) {
    if (l.gen == gen) {
      if (l.exp == 1)
        sum = sum + prefix;
      else
        sum = sum - prefix * lifted(l.gen, -1);
    }
    prefix = prefix * lifted(l.gen, l.exp);
  }
  return sum;
}

}  // namespace torsionlab
