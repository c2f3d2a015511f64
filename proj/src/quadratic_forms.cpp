#include "risjam/quadratic_forms.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace risjam {

namespace {

cplx dot_unconj(const PhaseVector& v, const CVector& x) {
  cplx s{0.0, 0.0};
  for (std::size_t n = 0; n < v.size(); ++n) s += v.element(n) * x(static_cast<Eigen::Index>(n));
  return s;
}

void check_size(const QuadraticForm& form, const PhaseVector& v) {
  if (form.b.size() != form.a.size() || static_cast<Eigen::Index>(v.size()) != form.a.size())
    throw std::invalid_argument(
        fmt::format("quadratic form of size {} evaluated with a phase vector of size {}", form.a.size(), v.size()));
}

}  // namespace

QuadraticForm build_form(FormKind kind, const ChannelSet& ch, const CVector& w_st,
                         const std::optional<CRowVector>& w_j_bar) {
  ch.check_shapes();
  QuadraticForm f;
  switch (kind) {
    case FormKind::ST:
    case FormKind::M: {
      if (w_st.size() != ch.m_t()) throw std::invalid_argument("build_form: w_st must have M_t entries");
      const CVector& reflect = kind == FormKind::ST ? ch.h_ir : ch.h_im;
      const CRowVector& direct = kind == FormKind::ST ? ch.h_tr : ch.h_tm;
      // a = diag(h^H) H_TI^H w_ST
      f.a = reflect.conjugate().cwiseProduct(ch.h_ti.adjoint() * w_st);
      const cplx direct_gain = (direct * w_st)(0, 0);
      f.b = f.a * std::conj(direct_gain);
      f.c = std::norm(direct_gain);
      break;
    }
    case FormKind::J: {
      if (!w_j_bar) throw std::invalid_argument("build_form: the jamming form needs a jamming direction");
      if (w_j_bar->size() != ch.k_jammers()) throw std::invalid_argument("build_form: w_j_bar must have K entries");
      f.a = ch.h_ir.conjugate().cwiseProduct(ch.h_ki * w_j_bar->adjoint());
      const cplx direct_gain = (ch.h_kr * w_j_bar->adjoint())(0, 0);
      f.b = f.a * std::conj(direct_gain);
      f.c = std::norm(direct_gain);
      break;
    }
    default:
      throw std::invalid_argument("build_form: unknown form kind");
  }
  return f;
}

double eval_form(const QuadraticForm& form, const PhaseVector& v) {
  check_size(form, v);
  return std::norm(dot_unconj(v, form.a)) + 2.0 * std::real(dot_unconj(v, form.b)) + form.c;
}

PerElementCoeffs per_element_coeffs(const QuadraticForm& form, const PhaseVector& v, std::size_t ell) {
  check_size(form, v);
  if (ell >= v.size())
    throw std::out_of_range(fmt::format("element index {} out of range for {} elements", ell, v.size()));
  cplx others_a{0.0, 0.0};  // Σ_{m≠ℓ} v_m a_m
  cplx others_b{0.0, 0.0};  // Σ_{m≠ℓ} v_m b_m
  for (std::size_t m = 0; m < v.size(); ++m) {
    if (m == ell) continue;
    const auto idx = static_cast<Eigen::Index>(m);
    others_a += v.element(m) * form.a(idx);
    others_b += v.element(m) * form.b(idx);
  }
  const auto l = static_cast<Eigen::Index>(ell);
  PerElementCoeffs p;
  p.alpha = 2.0 * (form.b(l) + form.a(l) * std::conj(others_a));
  p.beta = std::norm(form.a(l)) + std::norm(others_a) + 2.0 * std::real(others_b) + form.c;
  p.rho = std::abs(p.alpha);
  p.phase = wrap_angle(std::arg(p.alpha));
  return p;
}

}  // namespace risjam
