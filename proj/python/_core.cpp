#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "carpet/analysis.hpp"
#include "carpet/error.hpp"
#include "carpet/heat_kernel.hpp"
#include "carpet/oracle.hpp"

namespace py = pybind11;
using namespace carpet;

namespace {

using CellTuple = std::tuple<int, std::int64_t, std::int64_t>;

std::vector<CellTuple> to_tuples(const Chain& chain) {
  std::vector<CellTuple> out;
  for (const CellId& c : chain) out.emplace_back(c.level, c.ix, c.iy);
  return out;
}

DistanceQuery make_query(double a, double b, const std::string& source, const std::string& target,
                         int level, bool pure, const std::optional<std::pair<std::string, std::string>>& segment) {
  DistanceQuery q{WeightParams(a, b), TriadicPoint::parse(source), TriadicPoint::parse(target),
                  level, pure ? LevelMode::Pure : LevelMode::Mixed, {}, {}};
  if (segment) q.filter = segment_filter(Segment{TriadicPoint::parse(segment->first), TriadicPoint::parse(segment->second)});
  return q;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Chain-infimum metrics on the Sierpinski carpet";
  py::register_exception<Error>(m, "CarpetError", PyExc_ValueError);

  m.def("classify_params", [](double a, double b) { return std::string(to_string(classify_params(a, b))); },
        py::arg("a"), py::arg("b"));

  py::class_<WeightParams>(m, "WeightParams")
      .def(py::init<double, double>(), py::arg("a"), py::arg("b"))
      .def_static("snapped_i1", &WeightParams::snapped_i1, py::arg("a"))
      .def_static("snapped_i2", &WeightParams::snapped_i2, py::arg("b"))
      .def_property_readonly("a", &WeightParams::a)
      .def_property_readonly("b", &WeightParams::b)
      .def_property_readonly("c", &WeightParams::c)
      .def_property_readonly("region", [](const WeightParams& p) { return std::string(to_string(p.region())); })
      .def("weight", [](const WeightParams& p, const std::string& word) { return weight(p, Word::parse(word)); },
           py::arg("word"))
      .def("__repr__", [](const WeightParams& p) {
        return "WeightParams(a=" + std::to_string(p.a()) + ", b=" + std::to_string(p.b()) + ")";
      });

  m.def("word_to_cell", [](const std::string& w) {
    const CellId c = word_to_cell(Word::parse(w));
    return CellTuple{c.level, c.ix, c.iy};
  });
  m.def("cell_to_word", [](int level, std::int64_t ix, std::int64_t iy) {
    return cell_to_word(CellId{level, ix, iy}).str();
  });

  m.def("canonical_chain", [](const std::string& kind, int level) {
    if (kind != "bottom" && kind != "diagonal") throw Error(ErrorKind::Parse, "kind must be 'bottom' or 'diagonal'");
    return to_tuples(canonical_chain(kind == "bottom" ? CanonicalKind::Bottom : CanonicalKind::Diagonal, level));
  }, py::arg("kind"), py::arg("level"));

  m.def("chain_cost", [](double a, double b, const std::string& words) {
    return chain_cost(WeightParams(a, b), chain_from_words(words));
  }, py::arg("a"), py::arg("b"), py::arg("words"));

  m.def("distance",
        [](double a, double b, const std::string& source, const std::string& target, int level, bool pure,
           std::optional<std::pair<std::string, std::string>> segment) {
          DistanceResult r;
          {
            py::gil_scoped_release release;
            r = shortest_chain(make_query(a, b, source, target, level, pure, segment));
          }
          return py::make_tuple(r.value, to_tuples(r.witness), r.settled);
        },
        py::arg("a"), py::arg("b"), py::arg("source"), py::arg("target"), py::arg("level"),
        py::arg("pure") = false, py::arg("segment") = std::nullopt,
        "Returns (value, witness cells as (level, ix, iy), settled count).");

  m.def("oracle",
        [](double a, double b, const std::string& source, const std::string& target, int level, bool pure,
           std::optional<std::pair<std::string, std::string>> segment) {
          return exhaustive_oracle(make_query(a, b, source, target, level, pure, segment));
        },
        py::arg("a"), py::arg("b"), py::arg("source"), py::arg("target"), py::arg("level"),
        py::arg("pure") = false, py::arg("segment") = std::nullopt);

  m.def("metric_ball",
        [](double a, double b, const std::string& center, double radius, int level, bool pure) {
          std::vector<std::tuple<int, std::int64_t, std::int64_t, double>> out;
          for (const BallCell& c : metric_ball(WeightParams(a, b), TriadicPoint::parse(center), radius, level,
                                               pure ? LevelMode::Pure : LevelMode::Mixed)) {
            out.emplace_back(c.cell.level, c.cell.ix, c.cell.iy, c.dist);
          }
          return out;
        },
        py::arg("a"), py::arg("b"), py::arg("center"), py::arg("radius"), py::arg("level"), py::arg("pure") = false);

  m.def("critical_exponent", [](double a, double b) { return critical_exponent(WeightParams(a, b)); },
        py::arg("a"), py::arg("b"));

  m.def("degeneracy_scan", [](double step, int level, unsigned threads) {
    py::list rows;
    for (const ScanRow& r : degeneracy_scan(step, level, threads)) {
      py::dict d;
      d["a"] = r.a;
      d["b"] = r.b;
      d["level"] = r.level;
      d["region"] = std::string(to_string(r.region));
      d["D_p1p3"] = r.distance;
      d["bottom_bound"] = r.bottom_bound;
      d["verdict"] = std::string(to_string(r.verdict));
      rows.append(d);
    }
    return rows;
  }, py::arg("step"), py::arg("level"), py::arg("threads") = 1);

  m.def("solve_beta", [](double mu1, double rho) { return solve_beta(MeasureParams::from_mu1(mu1), rho); },
        py::arg("mu1"), py::arg("rho") = kRhoDefault);
  m.def("derive_ab", [](double mu1, double rho, double beta) {
    const WeightParams p = derive_ab(MeasureParams::from_mu1(mu1), rho, beta);
    return std::make_pair(p.a(), p.b());
  }, py::arg("mu1"), py::arg("rho"), py::arg("beta"));
  m.def("resistance_exponent", &resistance_exponent, py::arg("rho"));
  m.def("heat_kernel_params", [](double mu1, double rho) {
    const HeatKernelParams hk = heat_kernel_params(MeasureParams::from_mu1(mu1), rho);
    py::dict d;
    d["rho"] = hk.rho;
    d["beta"] = hk.beta;
    d["a"] = hk.a;
    d["b"] = hk.b;
    d["gamma"] = hk.gamma;
    return d;
  }, py::arg("mu1"), py::arg("rho") = kRhoDefault);
  m.def("volume", [](double a, double b, double mu1, const std::string& center, double radius, int level, bool pure) {
    return volume(WeightParams(a, b), MeasureParams::from_mu1(mu1), TriadicPoint::parse(center), radius, level,
                  pure ? LevelMode::Pure : LevelMode::Mixed);
  }, py::arg("a"), py::arg("b"), py::arg("mu1"), py::arg("center"), py::arg("radius"), py::arg("level"),
     py::arg("pure") = false);

  m.attr("RHO_DEFAULT") = kRhoDefault;
}
