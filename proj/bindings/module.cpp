#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "gridtie/cli_app.hpp"
#include "gridtie/reference_frames.hpp"
#include "gridtie/steady_state.hpp"
#include "gridtie/switched_sim.hpp"
#include "gridtie/tlb_converter.hpp"

namespace py = pybind11;
using namespace gridtie;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Grid-tied power-chain toolkit: three-level dc-dc converter model, "
              "synchronous-frame inverter, operating-point solver and fixed-step simulator";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            if (e.numerical()) {
                PyErr_SetString(PyExc_RuntimeError, e.what());
            } else {
                PyErr_SetString(PyExc_ValueError, e.what());
            }
        }
    });

    // --- reference frames ---------------------------------------------------
    py::class_<ThreePhase>(m, "ThreePhase")
        .def(py::init([](double a, double b, double c) { return ThreePhase{a, b, c}; }),
             py::arg("a") = 0.0, py::arg("b") = 0.0, py::arg("c") = 0.0)
        .def_readwrite("a", &ThreePhase::a)
        .def_readwrite("b", &ThreePhase::b)
        .def_readwrite("c", &ThreePhase::c)
        .def("__repr__", [](const ThreePhase& f) {
            return "ThreePhase(a=" + std::to_string(f.a) + ", b=" + std::to_string(f.b) +
                   ", c=" + std::to_string(f.c) + ")";
        });

    py::class_<QdoFrame>(m, "QdoFrame")
        .def(py::init([](double q, double d, double o) { return QdoFrame{q, d, o}; }),
             py::arg("q") = 0.0, py::arg("d") = 0.0, py::arg("o") = 0.0)
        .def_readwrite("q", &QdoFrame::q)
        .def_readwrite("d", &QdoFrame::d)
        .def_readwrite("o", &QdoFrame::o)
        .def("__repr__", [](const QdoFrame& f) {
            return "QdoFrame(q=" + std::to_string(f.q) + ", d=" + std::to_string(f.d) +
                   ", o=" + std::to_string(f.o) + ")";
        });

    m.attr("PHASE_DISPLACEMENT") = kPhaseDisplacement;
    m.def("park", &park, py::arg("f"), py::arg("theta"),
          "abc -> qdo at the given angle (amplitude-invariant scaling)");
    m.def("inverse_park", &inverse_park, py::arg("f"), py::arg("theta"),
          "qdo -> abc; exact inverse of park at the same angle");

    // --- converter ----------------------------------------------------------
    py::enum_<Mode>(m, "Mode")
        .value("I", Mode::I)
        .value("II", Mode::II)
        .value("III", Mode::III)
        .value("IV", Mode::IV);

    py::class_<SwitchState>(m, "SwitchState")
        .def(py::init([](bool s1, bool s2, bool s3, bool s4) {
                 return SwitchState{s1, s2, s3, s4};
             }),
             py::arg("s1"), py::arg("s2"), py::arg("s3"), py::arg("s4"))
        .def_static("from_outer", &SwitchState::from_outer, py::arg("s1"), py::arg("s4"))
        .def_readwrite("s1", &SwitchState::s1)
        .def_readwrite("s2", &SwitchState::s2)
        .def_readwrite("s3", &SwitchState::s3)
        .def_readwrite("s4", &SwitchState::s4)
        .def("complementary", &SwitchState::complementary);

    py::class_<ConstantCurrentLoad>(m, "ConstantCurrentLoad")
        .def(py::init([](double amps) { return ConstantCurrentLoad{amps}; }), py::arg("amps"))
        .def_readwrite("amps", &ConstantCurrentLoad::amps);

    py::class_<ResistiveLoad>(m, "ResistiveLoad")
        .def(py::init([](double ohms) { return ResistiveLoad{ohms}; }), py::arg("ohms"))
        .def_readwrite("ohms", &ResistiveLoad::ohms);

    py::class_<ConverterParams>(m, "ConverterParams")
        .def(py::init<>())
        .def_readwrite("inductance", &ConverterParams::inductance)
        .def_readwrite("c1", &ConverterParams::c1)
        .def_readwrite("c2", &ConverterParams::c2)
        .def_readwrite("vs", &ConverterParams::vs)
        .def_readwrite("load", &ConverterParams::load);

    py::class_<ConverterState>(m, "ConverterState")
        .def(py::init([](double il, double vc1, double vc2) {
                 return ConverterState{il, vc1, vc2};
             }),
             py::arg("il") = 0.0, py::arg("vc1") = 0.0, py::arg("vc2") = 0.0)
        .def_readwrite("il", &ConverterState::il)
        .def_readwrite("vc1", &ConverterState::vc1)
        .def_readwrite("vc2", &ConverterState::vc2)
        .def_property_readonly("vo", &ConverterState::vo)
        .def("__repr__", [](const ConverterState& x) {
            return "ConverterState(il=" + std::to_string(x.il) +
                   ", vc1=" + std::to_string(x.vc1) + ", vc2=" + std::to_string(x.vc2) + ")";
        });

    py::class_<DutyPair>(m, "DutyPair")
        .def(py::init([](double d1, double d4) { return DutyPair{d1, d4}; }), py::arg("d1"),
             py::arg("d4"))
        .def_readwrite("d1", &DutyPair::d1)
        .def_readwrite("d4", &DutyPair::d4);

    m.def("mode_of", &mode_of, py::arg("state"));
    m.def("load_current", &load_current, py::arg("load"), py::arg("vo"));
    m.def("state_derivative", &state_derivative, py::arg("state"), py::arg("switches"),
          py::arg("params"), py::arg("io"));
    m.def("voltage_gain", &voltage_gain, py::arg("duties"));
    m.def("average_current_ratio", &average_current_ratio, py::arg("duties"));
    m.def("steady_state_duties", &steady_state_duties, py::arg("vs"), py::arg("vo_target"));

    // --- inverter -----------------------------------------------------------
    py::class_<GridParams>(m, "GridParams")
        .def(py::init<>())
        .def_readwrite("resistance", &GridParams::resistance)
        .def_readwrite("inductance", &GridParams::inductance)
        .def_readwrite("frequency_hz", &GridParams::frequency_hz)
        .def_readwrite("vqg", &GridParams::vqg)
        .def_readwrite("vdc", &GridParams::vdc)
        .def_property_readonly("omega", &GridParams::omega);

    py::class_<DqCurrents>(m, "DqCurrents")
        .def(py::init([](double iq, double id) { return DqCurrents{iq, id}; }),
             py::arg("iq") = 0.0, py::arg("id") = 0.0)
        .def_readwrite("iq", &DqCurrents::iq)
        .def_readwrite("id", &DqCurrents::id)
        .def("__repr__", [](const DqCurrents& i) {
            return "DqCurrents(iq=" + std::to_string(i.iq) + ", id=" + std::to_string(i.id) +
                   ")";
        });

    py::class_<ModulationPair>(m, "ModulationPair")
        .def(py::init([](double mq, double md) { return ModulationPair{mq, md}; }),
             py::arg("mq") = 0.0, py::arg("md") = 0.0)
        .def_readwrite("mq", &ModulationPair::mq)
        .def_readwrite("md", &ModulationPair::md)
        .def("magnitude", &ModulationPair::magnitude)
        .def("__repr__", [](const ModulationPair& p) {
            return "ModulationPair(mq=" + std::to_string(p.mq) +
                   ", md=" + std::to_string(p.md) + ")";
        });

    py::class_<PhaseAngle>(m, "PhaseAngle")
        .def_readonly("theta", &PhaseAngle::theta)
        .def_readonly("leading", &PhaseAngle::leading)
        .def("tangent", &PhaseAngle::tangent);

    py::class_<AcPower>(m, "AcPower")
        .def_readonly("active", &AcPower::active)
        .def_readonly("reactive", &AcPower::reactive)
        .def("__repr__", [](const AcPower& p) {
            return "AcPower(active=" + std::to_string(p.active) +
                   ", reactive=" + std::to_string(p.reactive) + ")";
        });

    m.def("theta_from_pf", &theta_from_pf, py::arg("pf"));
    m.def("grid_currents", &grid_currents, py::arg("p_target"), py::arg("grid"),
          py::arg("angle"));
    m.def("modulation_indices", &modulation_indices, py::arg("currents"), py::arg("grid"));
    m.def("dq_dynamics", &dq_dynamics, py::arg("currents"), py::arg("modulation"),
          py::arg("grid"));
    m.def("powers", &powers, py::arg("currents"), py::arg("grid"));
    m.def("reactive_from_active", &reactive_from_active, py::arg("p"), py::arg("theta"));
    m.def("dc_link_current", &dc_link_current, py::arg("modulation"), py::arg("currents"));

    // --- steady state -------------------------------------------------------
    py::class_<OperatingPoint>(m, "OperatingPoint")
        .def(py::init([](double pf, double p_target) {
                 return OperatingPoint{pf, p_target};
             }),
             py::arg("pf"), py::arg("p_target") = 600.0)
        .def_readwrite("pf", &OperatingPoint::pf)
        .def_readwrite("p_target", &OperatingPoint::p_target);

    py::class_<SteadyStateRow>(m, "SteadyStateRow")
        .def_readonly("pf", &SteadyStateRow::pf)
        .def_readonly("mq", &SteadyStateRow::mq)
        .def_readonly("md", &SteadyStateRow::md)
        .def_readonly("iq", &SteadyStateRow::iq)
        .def_readonly("id", &SteadyStateRow::id)
        .def_readonly("ipeak", &SteadyStateRow::ipeak)
        .def_readonly("pg_dc", &SteadyStateRow::pg_dc)
        .def_readonly("pg_ac", &SteadyStateRow::pg_ac)
        .def("__repr__", [](const SteadyStateRow& r) {
            return "SteadyStateRow(pf=" + std::to_string(r.pf) +
                   ", mq=" + std::to_string(r.mq) + ", md=" + std::to_string(r.md) +
                   ", iq=" + std::to_string(r.iq) + ", id=" + std::to_string(r.id) +
                   ", ipeak=" + std::to_string(r.ipeak) + ")";
        });

    py::class_<SweepEntry>(m, "SweepEntry")
        .def_readonly("pf", &SweepEntry::pf)
        .def_readonly("row", &SweepEntry::row)
        .def_readonly("error", &SweepEntry::error);

    py::class_<TrendSeries>(m, "TrendSeries")
        .def_readonly("mq_vs_md", &TrendSeries::mq_vs_md)
        .def_readonly("ipeak_vs_pf", &TrendSeries::ipeak_vs_pf)
        .def_readonly("pg_vs_pf", &TrendSeries::pg_vs_pf)
        .def_readonly("r_squared_mq_md", &TrendSeries::r_squared_mq_md)
        .def_readonly("degenerate_fit", &TrendSeries::degenerate_fit);

    m.def("solve_point", &solve_point, py::arg("operating_point"), py::arg("grid"));
    m.def(
        "pf_sweep",
        [](const std::vector<double>& pfs, double p_target, const GridParams& g) {
            return pf_sweep(pfs, p_target, g);
        },
        py::arg("pfs"), py::arg("p_target"), py::arg("grid"));
    m.def(
        "trend_series",
        [](const std::vector<SteadyStateRow>& rows) { return trend_series(rows); },
        py::arg("rows"));

    // --- simulation ---------------------------------------------------------
    py::enum_<IntegratorKind>(m, "IntegratorKind")
        .value("euler", IntegratorKind::euler)
        .value("rk4", IntegratorKind::rk4);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("dt", &SimConfig::dt)
        .def_readwrite("t_end", &SimConfig::t_end)
        .def_readwrite("f_sw", &SimConfig::f_sw)
        .def_readwrite("integrator", &SimConfig::integrator)
        .def_readwrite("record_decimation", &SimConfig::record_decimation);

    py::class_<Waveform>(m, "Waveform")
        .def_readonly("name", &Waveform::name)
        .def_readonly("t0", &Waveform::t0)
        .def_readonly("dt_sample", &Waveform::dt_sample)
        .def_readonly("samples", &Waveform::samples)
        .def("time_at", &Waveform::time_at, py::arg("k"));

    py::class_<SteadyMetrics>(m, "SteadyMetrics")
        .def_readonly("mean", &SteadyMetrics::mean)
        .def_readonly("ripple_pp", &SteadyMetrics::ripple_pp)
        .def_readonly("settle_time", &SteadyMetrics::settle_time);

    py::class_<SimRun>(m, "SimRun")
        .def_readonly("waves", &SimRun::waves)
        .def_readonly("metrics", &SimRun::metrics)
        .def_readonly("steady_time", &SimRun::steady_time)
        .def("wave", &SimRun::wave, py::arg("name"),
             py::return_value_policy::reference_internal);

    m.def("tlb_pwm", &tlb_pwm, py::arg("duties"), py::arg("t"), py::arg("f_sw"));
    m.def("steady_metrics", &steady_metrics, py::arg("waveform"), py::arg("window_fraction"));
    m.def("simulate_converter", &simulate_converter, py::arg("params"), py::arg("duties"),
          py::arg("config"), py::arg("initial") = std::nullopt);
    m.def("simulate_inverter_dq", &simulate_inverter_dq, py::arg("grid"),
          py::arg("modulation"), py::arg("i0"), py::arg("config"));

    // --- CLI entry point (for scripting the command-line interface) ---------
    m.def("run_cli", &run_cli, py::arg("args"),
          "Run the command-line interface with the given argument list; returns the exit code");
}
