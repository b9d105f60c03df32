#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "teichforge/io.hpp"

namespace py = pybind11;
using namespace tf;

namespace {

// JSON crosses the boundary as text; the package wrapper decodes it
Json parse(const std::string& s) { return Json::parse(s); }
std::string dump(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<PipelineError>(m, "PipelineError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("construct", [](const std::string& delta, uint64_t seed, uint64_t budget,
                        std::optional<std::array<uint32_t, 4>> toy_primes, bool refine) {
    PipelineConfig cfg;
    cfg.seed = seed;
    cfg.budget = budget;
    cfg.toy_primes = toy_primes;
    cfg.refine = refine;
    const CosetAction d = delta_from_json(parse(delta));
    py::gil_scoped_release release;
    return dump(certificate(construct(d, cfg)));
  }, py::arg("delta"), py::arg("seed") = 1, py::arg("budget") = 10000, py::arg("toy_primes") = py::none(),
     py::arg("refine") = true);

  m.def("verify", [](const std::string& cert, const std::string& delta) {
    const Json c = parse(cert);
    const CosetAction d = delta_from_json(parse(delta));
    py::gil_scoped_release release;
    return dump(to_json(verify_certificate(c, d)));
  }, py::arg("cert"), py::arg("delta"));

  m.def("stabilizer", [](const std::string& cert) {
    const Json c = parse(cert);
    std::vector<ModSubspace> layers;
    for (const auto& u : c.at("lambda").at("layers")) layers.push_back(subspace_from_json(u));
    LayeredSubgroup l(table_from_json(c.at("d")), layers);
    py::gil_scoped_release release;
    return dump(to_json(stabilizer(l)));
  }, py::arg("cert"));

  m.def("veech_of_origami", [](const std::string& text) {
    const Origami o = Origami::parse_text(text);
    Json j = to_json(veech_of_origami(o));
    j["origami"] = to_json(o);
    return dump(j);
  }, py::arg("text"));

  m.def("gamma2_word", [](const std::array<std::string, 4>& entries) {
    const Mat2 m = mat2_from_json(Json(entries));
    const SignedWord w = gamma2_word(m);
    return py::make_tuple(w.word.str(), w.sign);
  }, py::arg("matrix"));

  m.def("sl2_word", [](const std::array<std::string, 4>& entries) {
    return sl2_word(mat2_from_json(Json(entries))).str();
  }, py::arg("matrix"));

  m.def("decompose", [](const std::string& table, const std::string& word) {
    const CosetAction t = table_from_json(parse(table));
    const FreeWord w = FreeWord::parse(t.mark(), word);
    Json out = Json::array();
    for (const auto& e : cyclic_class_decomposition(t, w.letters()))
      out.push_back({{"coset", e.coset},
                     {"representative", FreeWord(t.mark(), e.representative).str()},
                     {"conjugator", FreeWord(t.mark(), e.conjugator).str()},
                     {"size", e.size}});
    return dump(out);
  }, py::arg("table"), py::arg("word"));

  m.def("atlas", [] { return dump(atlas_json()); });
  m.def("suite_names", &suite_names);
  m.def("run_suite", [](const std::string& name, uint32_t samples, uint32_t words, uint64_t seed, uint64_t budget) {
    py::gil_scoped_release release;
    return dump(to_json(run_suite(name, SuiteOptions{samples, words, seed, budget})));
  }, py::arg("name"), py::arg("samples") = 12, py::arg("words") = 25, py::arg("seed") = 1, py::arg("budget") = 10000);
  m.def("index2_delta", [] { return dump(to_json(index2_delta())); });
  m.attr("CERTIFICATE_VERSION") = kCertificateVersion;
}
