#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "graphesa/catalog.hpp"
#include "graphesa/classify.hpp"
#include "graphesa/cli.hpp"
#include "graphesa/dirichlet.hpp"
#include "graphesa/error.hpp"
#include "graphesa/family_io.hpp"
#include "graphesa/operators.hpp"
#include "graphesa/report.hpp"

namespace py = pybind11;
using namespace graphesa;

namespace {

// Families cross the boundary as JSON text; the Python layer does the dict conversion.
Family family_of(const std::string& text, const Params& params) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidFamily, std::string("malformed family JSON: ") + e.what());
  }
  return family_from_json(doc, params);
}

std::string dump(const Json& j) { return write_json(j, -1); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Essential self-adjointness checks for weighted graph operators";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<Error>(m, "GraphesaError", PyExc_ValueError);

  m.def("upper_threshold", &catalog::dyadic_upper_threshold);
  m.def("lower_threshold", &catalog::dyadic_lower_threshold);

  m.def("example_json", [](const std::string& name, const Params& params) {
    return dump(family_to_json(example_family(name, params)));
  }, py::arg("name"), py::arg("params") = Params{});

  m.def("classify_json", [](const std::string& family, const Params& params, const std::vector<std::string>& disable) {
    ClassifyOptions opt;
    for (const auto& name : disable) {
      bool found = false;
      for (Rule r : {Rule::ThmNonComplete, Rule::ThmSeries, Rule::ThmAgmonGrowth, Rule::WeylNumeric}) {
        if (name == to_string(r)) {
          opt.disabled.insert(r);
          found = true;
        }
      }
      if (!found) throw Error(ErrorKind::BadParams, "unknown rule '" + name + "'");
    }
    const Family f = family_of(family, params);
    py::gil_scoped_release release;
    return dump(to_json(classify(f, opt)));
  }, py::arg("family"), py::arg("params") = Params{}, py::arg("disable") = std::vector<std::string>{});

  m.def("weyl_json", [](const std::string& family, const Params& params, std::complex<double> lambda) {
    const Family f = family_of(family, params);
    const auto* end = std::get_if<EndFamily>(&f);
    if (!end) throw Error(ErrorKind::BadParams, "weyl classification needs an end family");
    return dump(to_json(classify_end(*end, lambda)));
  }, py::arg("family"), py::arg("params") = Params{}, py::arg("lambda_") = std::complex<double>(0.0, 1.0));

  m.def("witness_json", [](const std::string& family, const Params& params, const std::vector<Index>& horizons,
                           double boundary) {
    const Family f = family_of(family, params);
    py::gil_scoped_release release;
    return dump(to_json(non_esa_witness(f, horizons, boundary)));
  }, py::arg("family"), py::arg("params") = Params{}, py::arg("horizons") = std::vector<Index>{50, 100, 200, 400},
     py::arg("boundary") = 1.0);

  m.def("boundary_distances", [](const std::string& family, const Params& params, Index horizon) {
    const Family f = family_of(family, params);
    const auto* end = std::get_if<EndFamily>(&f);
    if (!end) throw Error(ErrorKind::BadParams, "boundary distances are exposed for end families");
    return boundary_distances(*end, MetricScheme::InvSqrtC, horizon);
  }, py::arg("family"), py::arg("params") = Params{}, py::arg("horizon") = 20);

  m.def("dense_operator", [](const std::string& family, const Params& params, Index horizon) {
    return dense_operator(build_truncation(family_of(family, params), horizon));
  }, py::arg("family"), py::arg("params") = Params{}, py::arg("horizon") = 20);

  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::execute(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
