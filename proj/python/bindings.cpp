#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "secrecy/cli.hpp"
#include "secrecy/enhance.hpp"
#include "secrecy/misome.hpp"

namespace py = pybind11;
using namespace secrecy;

namespace {

ChannelInstance make_channel(const Matrix& h1, const Matrix& h2, const Matrix& h3,
                             const Matrix& n1, const Matrix& n2, const Matrix& n3,
                             py::object constraint) {
  InputConstraint c;
  if (py::isinstance<py::float_>(constraint) || py::isinstance<py::int_>(constraint))
    c = InputConstraint::power(constraint.cast<double>());
  else
    c = InputConstraint::covariance(SymMatrix(constraint.cast<Matrix>()));
  return ChannelInstance(h1, h2, h3, SymMatrix(n1), SymMatrix(n2), SymMatrix(n3), c);
}

CovarianceSplit make_split(const Matrix& b1, const Matrix& b2) {
  return CovarianceSplit(SymMatrix(b1), SymMatrix(b2));
}

py::dict point_dict(const RegionPoint& p) {
  py::dict d;
  d["R1_bits"] = p.rates.R1;
  d["R2_bits"] = p.rates.R2;
  d["mu"] = p.mu;
  d["permutation"] = p.perm.label();
  d["converged"] = p.converged;
  if (p.split.users() == 2) {
    d["B1"] = p.split.B[0].mat();
    d["B2"] = p.split.B[1].mat();
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_secrecy, m) {
  m.doc() = "Secrecy-capacity regions of Gaussian MIMO broadcast channels";

  py::class_<ChannelInstance>(m, "Channel")
      .def(py::init(&make_channel), py::arg("H1"), py::arg("H2"), py::arg("H3"),
           py::arg("N1"), py::arg("N2"), py::arg("N3"), py::arg("constraint"))
      .def_property_readonly("t", [](const ChannelInstance& c) { return c.t; })
      .def_property_readonly("aligned",
                             [](const ChannelInstance& c) { return c.aligned(); })
      .def_property_readonly("classification", [](const ChannelInstance& c) {
        return to_string(classify(c).tag);
      });

  m.def(
      "gaussian_rates",
      [](const Matrix& b1, const Matrix& b2, const ChannelInstance& ch) {
        const auto r = gaussian_rates(make_split(b1, b2), ch);
        return py::make_tuple(r.R1, r.R2);
      },
      py::arg("B1"), py::arg("B2"), py::arg("channel"));

  m.def(
      "sdpc_rates",
      [](const std::vector<int>& order, const Matrix& b1, const Matrix& b2,
         const ChannelInstance& ch) {
        std::vector<int> zero_based(order);
        for (auto& v : zero_based) v -= 1;
        return sdpc_rates(Permutation(zero_based), make_split(b1, b2), ch);
      },
      py::arg("order"), py::arg("B1"), py::arg("B2"), py::arg("channel"));

  m.def(
      "maximize_weighted_sum",
      [](const ChannelInstance& ch, double g1, double g2, int restarts,
         std::uint64_t seed) {
        SearchBudget b;
        b.restarts = restarts;
        b.seed = seed;
        const auto rep = maximize_weighted_sum(ch, WeightedObjective(g1, g2), b);
        py::dict d;
        d["R1_bits"] = rep.rates.R1;
        d["R2_bits"] = rep.rates.R2;
        d["objective"] = rep.objective;
        d["kkt_residual"] = rep.kkt_residual;
        d["converged"] = rep.converged;
        d["B1"] = rep.split.B[0].mat();
        d["B2"] = rep.split.B[1].mat();
        return d;
      },
      py::arg("channel"), py::arg("gamma1"), py::arg("gamma2"),
      py::arg("restarts") = 32, py::arg("seed") = 1);

  m.def(
      "trace_boundary",
      [](const ChannelInstance& ch, int mu_grid, double mu_max, int restarts,
         std::uint64_t seed) {
        SearchBudget b;
        b.restarts = restarts;
        b.seed = seed;
        const auto hull = trace_boundary(ch, default_mu_grid(mu_grid, mu_max), b);
        py::list out;
        for (const auto& p : hull.points) out.append(point_dict(p));
        return out;
      },
      py::arg("channel"), py::arg("mu_grid") = 32, py::arg("mu_max") = 1e3,
      py::arg("restarts") = 32, py::arg("seed") = 1);

  m.def(
      "certify_enhancement",
      [](const ChannelInstance& ch, double mu, int restarts, std::uint64_t seed) {
        SearchBudget b;
        b.restarts = restarts;
        b.seed = seed;
        const WeightedObjective obj(1.0, mu);
        const auto rep = maximize_weighted_sum(ch, obj, b);
        const auto mult = recover_multipliers(rep.split, obj, ch);
        const auto cert = certify_enhancement(rep.split, mult, ch);
        py::dict d;
        d["certified"] = cert.all_ok();
        d["ordering_ok"] = cert.ordering_ok;
        d["prop_ok"] = cert.prop_ok;
        d["rates_ok"] = cert.rates_ok;
        d["kkt_ok"] = cert.kkt_ok;
        d["alpha"] = cert.prop.alpha;
        d["prop_residual"] = cert.prop.residual;
        d["rate_gap_bits"] = py::make_tuple(cert.rate_gap[0], cert.rate_gap[1]);
        d["N1_enhanced"] = cert.enhanced.N1p.mat();
        d["N2_enhanced"] = cert.enhanced.N2p.mat();
        return d;
      },
      py::arg("channel"), py::arg("mu"), py::arg("restarts") = 32,
      py::arg("seed") = 1);

  m.def(
      "misome_rates",
      [](const Vector& h1, const Vector& h2, const Matrix& h3, double power,
         double alpha, const std::vector<int>& order) {
        std::vector<int> zero_based(order);
        for (auto& v : zero_based) v -= 1;
        const MisomeChannel ch(h1, h2, h3, power);
        const auto r = misome_rates(ch, PowerSplit(alpha), Permutation(zero_based));
        return py::make_tuple(r.R1, r.R2);
      },
      py::arg("h1"), py::arg("h2"), py::arg("H3"), py::arg("P"), py::arg("alpha"),
      py::arg("order") = std::vector<int>{1, 2});

  m.def(
      "misome_region",
      [](const Vector& h1, const Vector& h2, const Matrix& h3, double power,
         int alpha_grid) {
        const MisomeChannel ch(h1, h2, h3, power);
        const std::vector<Permutation> perms{Permutation::identity(2),
                                             Permutation(std::vector<int>{1, 0})};
        const auto hull = misome_region(ch, uniform_alpha_grid(alpha_grid), perms);
        py::list out;
        for (const auto& p : hull.points)
          out.append(py::make_tuple(p.rates.R1, p.rates.R2));
        return out;
      },
      py::arg("h1"), py::arg("h2"), py::arg("H3"), py::arg("P"),
      py::arg("alpha_grid") = 101);

  m.def(
      "misome_highsnr",
      [](const Vector& h1, const Vector& h2, const Matrix& h3) {
        const auto rect = misome_highsnr(MisomeChannel(h1, h2, h3, 1.0));
        py::dict d;
        d["a"] = rect.a;
        d["b"] = rect.b;
        d["a_degenerate"] = rect.a_degenerate;
        d["b_degenerate"] = rect.b_degenerate;
        d["corner_12"] = py::make_tuple(rect.corner_12.R1, rect.corner_12.R2);
        d["corner_21"] = py::make_tuple(rect.corner_21.R1, rect.corner_21.R2);
        return d;
      },
      py::arg("h1"), py::arg("h2"), py::arg("H3"));

  m.def("parse_config_roundtrip",
        [](const std::string& text) { return serialize_config(parse_config(text)); });
  m.def("format_number", &format_number);
}
