// Python bindings: spec-driven reports plus a few direct entry points on permutation groups.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fk/cli.hpp"
#include "fk/fusion.hpp"

namespace py = pybind11;
using namespace fk;

namespace {

FiniteGroup group_from_cycles(const std::vector<std::string>& gens, int degree) {
  std::vector<Perm> perms;
  for (const auto& g : gens) perms.push_back(parse_cycles(g, degree));
  return FiniteGroup::from_perms(perms, degree);
}

ElemSet subgroup_from_cycles(const FiniteGroup& G, const std::vector<std::string>& gens) {
  std::vector<int> ids;
  for (const auto& g : gens) {
    int x = G.find_perm(parse_cycles(g, G.degree()));
    if (x < 0) throw InputError("'" + g + "' is not an element of the group");
    ids.push_back(x);
  }
  return G.closure(ids);
}

std::string render(const FusionSystem& F, const PSub& P) {
  std::vector<std::string> gens;
  const FiniteGroup& G = F.ambient_group();
  ElemSet A = F.to_ambient(P);
  for (int g : G.generators_of(A)) gens.push_back(perm_to_cycles(G.perm(g)));
  std::string out = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? ", " : "") + gens[i];
  return out + ">";
}

py::dict flags_dict(const SubgroupFlags& f) {
  py::dict d;
  d["fully_normalized"] = f.fully_normalized;
  d["fully_centralized"] = f.fully_centralized;
  d["fully_automized"] = f.fully_automized;
  d["receptive"] = f.receptive;
  d["centric"] = f.centric;
  d["radical"] = f.radical;
  return d;
}

}  // namespace

PYBIND11_MODULE(_fusionkit, m) {
  m.doc() = "Fusion systems, linking systems and twisted products over finite and p-toral groups";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<BoundExceeded>(m, "BoundExceeded", PyExc_RuntimeError);
  py::register_exception<StructureError>(m, "StructureError", PyExc_RuntimeError);

  m.def("commands", &cli::commands);
  m.def("normalize_spec", [](const std::string& text) { return cli::render_spec(cli::parse_spec(text)); },
        "Parse a spec document and print it back in canonical form.");
  m.def(
      "_run_json",
      [](const std::string& command, const std::string& text, const std::string& path, const std::string& family,
         int truncation, unsigned long long seed, const std::vector<std::string>& what, const std::string& out_dir) {
        cli::Options o;
        o.command = command;
        o.spec_path = path;
        o.family = family;
        o.truncation = truncation;
        o.seed = seed;
        o.what = what;
        o.out_dir = out_dir;
        cli::Report r;
        {
          py::gil_scoped_release release;
          r = cli::run_report(cli::parse_spec(text), text, o);
        }
        return py::make_tuple(r.json.dump(), r.table, r.exit_code);
      },
      py::arg("command"), py::arg("spec_text"), py::arg("path") = "<string>", py::arg("family") = "",
      py::arg("truncation") = 4, py::arg("seed") = 1, py::arg("what") = std::vector<std::string>{},
      py::arg("out_dir") = ".");

  py::class_<FiniteGroup>(m, "PermutationGroup")
      .def(py::init(&group_from_cycles), py::arg("generators"), py::arg("degree"))
      .def_property_readonly("order", &FiniteGroup::order)
      .def_property_readonly("degree", &FiniteGroup::degree)
      .def("sylow_order", [](const FiniteGroup& G, int p) { return G.sylow(p).size(); });

  py::class_<FusionSystem>(m, "FusionSystem")
      .def_static(
          "of_group",
          [](const FiniteGroup& G, int p, const std::optional<std::vector<std::string>>& sylow) {
            if (sylow) return FusionSystem::ambient(G, subgroup_from_cycles(G, *sylow), p);
            return FusionSystem::ambient(G, p);
          },
          py::arg("group"), py::arg("p"), py::arg("sylow") = py::none())
      .def_property_readonly("p", &FusionSystem::prime)
      .def("classes",
           [](const FusionSystem& F) {
             py::list out;
             for (const FClass& k : f_classes(F, all_subgroups(F.group()))) {
               py::dict d;
               d["rep"] = render(F, k.rep);
               d["order"] = k.rep.H.size();
               d["s_classes"] = k.s_classes.size();
               d["flags"] = flags_dict(classify(F, k.rep));
               out.append(d);
             }
             return out;
           })
      .def("saturation", [](const FusionSystem& F) {
        SaturationReport r = check_saturated(F, all_subgroups(F.group()));
        py::dict d;
        d["saturated"] = r.saturated;
        d["axioms"] = r.def_axioms;
        d["criterion"] = r.cor_criterion;
        py::list w;
        for (const Witness& x : r.witnesses) w.append(py::make_tuple(x.kind, x.subgroup, x.detail));
        d["witnesses"] = w;
        return d;
      });
}
