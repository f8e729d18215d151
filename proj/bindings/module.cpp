// Python surface of the library. Thin: every conversion is handled by the
// pybind11 Eigen and STL casters, and rng-consuming entry points take a seed
// instead of a generator object.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <dfakit/algebra.hpp>
#include <dfakit/channel.hpp>
#include <dfakit/channel_io.hpp>
#include <dfakit/checks.hpp>
#include <dfakit/dfa.hpp>
#include <dfakit/matrix.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace dfakit;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Decoherence-free subalgebras of unital quantum channels";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<RankPolicy>(m, "RankPolicy")
      .def(py::init([](double rel_tol) {
             RankPolicy p;
             p.rel_tol = rel_tol;
             return p;
           }),
           py::arg("rel_tol") = 1e-12)
      .def_readwrite("rel_tol", &RankPolicy::rel_tol)
      .def("threshold", &RankPolicy::threshold, py::arg("sigma_max"), py::arg("rows"),
           py::arg("cols"));

  py::class_<KrausChannel>(m, "KrausChannel")
      .def(py::init<Eigen::Index, std::vector<ComplexMatrix>>(), py::arg("dim"),
           py::arg("kraus"))
      .def_property_readonly("dim", &KrausChannel::dim)
      .def_property_readonly("num_kraus", &KrausChannel::num_kraus)
      .def("kraus", &KrausChannel::kraus, py::return_value_policy::copy)
      .def("__repr__", [](const KrausChannel& ch) {
        std::ostringstream out;
        out << "KrausChannel(dim=" << ch.dim() << ", num_kraus=" << ch.num_kraus() << ")";
        return out.str();
      });

  py::class_<ChannelFlags>(m, "ChannelFlags")
      .def_readonly("unital", &ChannelFlags::unital)
      .def_readonly("trace_preserving", &ChannelFlags::trace_preserving)
      .def_readonly("unital_residual", &ChannelFlags::unital_residual)
      .def_readonly("trace_residual", &ChannelFlags::trace_residual)
      .def("__repr__", [](const ChannelFlags& f) {
        std::ostringstream out;
        out << "ChannelFlags(unital=" << (f.unital ? "True" : "False")
            << ", trace_preserving=" << (f.trace_preserving ? "True" : "False") << ")";
        return out.str();
      });

  py::class_<MatrixSubspace>(m, "MatrixSubspace")
      .def_static("from_orthonormal", &MatrixSubspace::from_orthonormal,
                  py::arg("ambient_dim"), py::arg("basis"))
      .def_static("full", &MatrixSubspace::full, py::arg("ambient_dim"))
      .def_property_readonly("ambient_dim", &MatrixSubspace::ambient_dim)
      .def_property_readonly("dim", &MatrixSubspace::dim)
      .def("basis", &MatrixSubspace::basis, py::return_value_policy::copy)
      .def("project", &MatrixSubspace::project, py::arg("x"))
      .def("vectorized_projector", &MatrixSubspace::vectorized_projector)
      .def("__repr__", [](const MatrixSubspace& s) {
        std::ostringstream out;
        out << "MatrixSubspace(ambient_dim=" << s.ambient_dim() << ", dim=" << s.dim()
            << ")";
        return out.str();
      });

  py::class_<SubspaceComparison>(m, "SubspaceComparison")
      .def_readonly("equal", &SubspaceComparison::equal)
      .def_readonly("s1_in_s2", &SubspaceComparison::s1_in_s2)
      .def_readonly("s2_in_s1", &SubspaceComparison::s2_in_s1)
      .def_readonly("distance", &SubspaceComparison::distance)
      .def_readonly("s1_in_s2_residual", &SubspaceComparison::s1_in_s2_residual)
      .def_readonly("s2_in_s1_residual", &SubspaceComparison::s2_in_s1_residual);

  py::class_<StinespringDilation>(m, "StinespringDilation")
      .def_readonly("n", &StinespringDilation::n)
      .def_readonly("m", &StinespringDilation::m)
      .def_readonly("v", &StinespringDilation::v);

  py::class_<RangeProjector>(m, "RangeProjector")
      .def_readonly("p_tilde", &RangeProjector::p_tilde)
      .def_readonly("p_env", &RangeProjector::p_env)
      .def_readonly("factorization_residual", &RangeProjector::factorization_residual)
      .def_readonly("rank", &RangeProjector::rank);

  py::class_<ReducedKraus>(m, "ReducedKraus")
      .def_readonly("reduced", &ReducedKraus::reduced)
      .def_readonly("mixing", &ReducedKraus::mixing);

  py::class_<AlgebraReport>(m, "AlgebraReport")
      .def_readonly("dim_a_commutant", &AlgebraReport::dim_a_commutant)
      .def_readonly("dim_fixed", &AlgebraReport::dim_fixed)
      .def_readonly("dim_dfa", &AlgebraReport::dim_dfa)
      .def_readonly("dim_b_commutant", &AlgebraReport::dim_b_commutant)
      .def_readonly("chain_ok", &AlgebraReport::chain_ok)
      .def_readonly("oracle_distance", &AlgebraReport::oracle_distance)
      .def_readonly("luders_applicable", &AlgebraReport::luders_applicable)
      .def_readonly("luders_ok", &AlgebraReport::luders_ok)
      .def_readonly("unital_residual", &AlgebraReport::unital_residual)
      .def_readonly("trace_residual", &AlgebraReport::trace_residual)
      .def_readonly("a_comm_in_fixed_residual", &AlgebraReport::a_comm_in_fixed_residual)
      .def_readonly("fixed_in_dfa_residual", &AlgebraReport::fixed_in_dfa_residual)
      .def_readonly("dfa_vs_b_commutant_distance",
                    &AlgebraReport::dfa_vs_b_commutant_distance)
      .def("__repr__", [](const AlgebraReport& r) {
        std::ostringstream out;
        out << "AlgebraReport(dim_a_commutant=" << r.dim_a_commutant
            << ", dim_fixed=" << r.dim_fixed << ", dim_dfa=" << r.dim_dfa
            << ", dim_b_commutant=" << r.dim_b_commutant
            << ", chain_ok=" << (r.chain_ok ? "True" : "False") << ")";
        return out.str();
      });

  m.def("validate", &validate, py::arg("channel"), py::arg("tol") = 1e-8);
  m.def("apply", &apply, py::arg("channel"), py::arg("x"));
  m.def("dissipation", &dissipation, py::arg("channel"), py::arg("x"));
  m.def("dilation_kron", &dilation_kron, py::arg("sys_op"), py::arg("env_op"));
  m.def("stinespring", &stinespring, py::arg("channel"));
  m.def("range_projector", &range_projector, py::arg("channel"), py::arg("tol") = 1e-10,
        py::arg("policy") = RankPolicy{});
  m.def("reduce_kraus", &reduce_kraus, py::arg("channel"), py::arg("rel_tol") = 1e-12);
  m.def("equivalent_rep", &equivalent_rep, py::arg("channel"), py::arg("w"));

  m.def(
      "random_channel",
      [](const std::string& kind, Eigen::Index n, Eigen::Index k, std::uint64_t seed) {
        return random_channel(checks::parse_kind(kind), n, k, seed);
      },
      py::arg("kind"), py::arg("n"), py::arg("k"), py::arg("seed"),
      "Deterministic per seed; kind is one of 'mixed_unitary', 'luders', 'padded'.");
  m.def(
      "ginibre",
      [](Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
        Rng rng(seed);
        return ginibre(rows, cols, rng);
      },
      py::arg("rows"), py::arg("cols"), py::arg("seed"));
  m.def(
      "haar_unitary",
      [](Eigen::Index n, std::uint64_t seed) {
        Rng rng(seed);
        return haar_unitary(n, rng);
      },
      py::arg("n"), py::arg("seed"));
  m.def(
      "random_isometry",
      [](Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
        Rng rng(seed);
        return random_isometry(rows, cols, rng);
      },
      py::arg("rows"), py::arg("cols"), py::arg("seed"));

  m.def(
      "commutant",
      [](const std::vector<ComplexMatrix>& generators, const RankPolicy& policy) {
        return commutant(GeneratorSet(generators), policy);
      },
      py::arg("generators"), py::arg("policy") = RankPolicy{});
  m.def(
      "algebra_closure",
      [](const std::vector<ComplexMatrix>& generators, double tol) {
        return algebra_closure(GeneratorSet(generators), tol);
      },
      py::arg("generators"), py::arg("tol") = 1e-12);
  m.def("contains", &contains, py::arg("subspace"), py::arg("x"), py::arg("tol") = 1e-8);
  m.def("orthonormalize", &orthonormalize, py::arg("matrices"), py::arg("tol") = 1e-12);
  m.def("compare_subspaces", &compare_subspaces, py::arg("s1"), py::arg("s2"),
        py::arg("tol") = 1e-8);

  m.def(
      "generator_products",
      [](const KrausChannel& ch) { return generator_products(ch).gens; },
      py::arg("channel"), "The products A_i A_j^* as a list of matrices.");
  m.def("decoherence_free_algebra", &decoherence_free_algebra, py::arg("channel"),
        py::arg("policy") = RankPolicy{});
  m.def("dfa_oracle", &dfa_oracle, py::arg("channel"), py::arg("policy") = RankPolicy{});
  m.def("fixed_point_algebra", &fixed_point_algebra, py::arg("channel"),
        py::arg("policy") = RankPolicy{});
  m.def(
      "choi_multiplicativity_check",
      [](const KrausChannel& ch, const MatrixSubspace& nphi, int trials,
         std::uint64_t seed) {
        Rng rng(seed);
        return choi_multiplicativity_check(ch, nphi, trials, rng);
      },
      py::arg("channel"), py::arg("nphi"), py::arg("trials") = 20, py::arg("seed") = 0);
  m.def("inclusion_report", &inclusion_report, py::arg("channel"),
        py::arg("policy") = RankPolicy{}, py::arg("tol") = 1e-8);

  m.def("format_channel", &format_channel, py::arg("channel"));
  m.def("parse_channel", &parse_channel, py::arg("text"));
  m.def("read_channel", &read_channel, py::arg("path"));
  m.def("write_channel", &write_channel, py::arg("path"), py::arg("channel"));
}
