#include "tables.hpp"

#include <string>

namespace henon::cli {

Csv slice_table(const SliceMeasure& m) {
  Csv csv({"re_t", "im_t", "mass"});
  for (int j = 0; j < m.resolution; ++j)
    for (int i = 0; i < m.resolution; ++i) {
      const cd t = m.cell_center(i, j);
      csv << t.real() << t.imag() << m.mass(i, j);
      csv.end_row();
    }
  csv.footer("total_mass", m.total_mass);
  csv.footer("error_estimate", m.error_estimate);
  csv.footer("negative_mass", m.negative_mass);
  csv.footer("pole_cells", std::to_string(m.pole_count()));
  return csv;
}

Csv equidist_table(const EquidistReport& r) {
  Csv csv({"n", "e_n", "bound_model"});
  for (std::size_t k = 0; k < r.n.size(); ++k) {
    csv << r.n[k] << r.errors[k] << r.bound_model[k];
    csv.end_row();
  }
  csv.footer("fitted_rate", r.fitted_rate);
  csv.footer("fitted_constant", r.fitted_constant);
  csv.footer("bound_constant", r.bound_constant);
  csv.footer("first_used", std::to_string(r.first_used));
  csv.footer("last_used", std::to_string(r.last_used));
  csv.footer("saturated", r.saturated ? "true" : "false");
  return csv;
}

Csv periodic_table(const std::vector<PeriodicPoint>& pts) {
  Csv csv({"re1", "im1", "re2", "im2", "period", "mult1_re", "mult1_im", "mult2_re", "mult2_im", "kind",
           "residual"});
  for (const auto& p : pts) {
    csv << p.point(0).real() << p.point(0).imag() << p.point(1).real() << p.point(1).imag() << p.period
        << p.mult1.real() << p.mult1.imag() << p.mult2.real() << p.mult2.imag() << std::string(to_string(p.kind))
        << p.residual;
    csv.end_row();
  }
  return csv;
}

Csv rigidity_table(const std::vector<RigidityRow>& rows) {
  Csv csv({"r", "psi_id", "tau_psi", "tplus_psi", "abs_diff", "T_r", "ddc_mass_proxy", "full_mass"});
  for (const auto& r : rows) {
    csv << r.r << r.psi_id << r.tau_psi << r.tplus_psi << r.abs_diff << r.T_r << r.ddc_mass_proxy << r.full_mass;
    csv.end_row();
  }
  return csv;
}

}  // namespace henon::cli
