macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(trajectory, "trajectory.rs", trajectory_example_runs);
example!(phase_diagram, "phase_diagram.rs", phase_diagram_example_runs);
example!(critical_coupling, "critical_coupling.rs", critical_coupling_example_runs);
example!(stopped_light, "stopped_light.rs", stopped_light_example_runs);
example!(dynamics, "dynamics.rs", dynamics_example_runs);
example!(oracle, "oracle.rs", oracle_example_runs);
example!(usc, "usc.rs", usc_example_runs);
example!(splitting, "splitting.rs", splitting_example_runs);
example!(energy_map, "energy_map.rs", energy_map_example_runs);
