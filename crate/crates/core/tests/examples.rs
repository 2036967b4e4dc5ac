//! Every example must run to completion.

macro_rules! example {
    ($module:ident, $test:ident, $path:literal) => {
        #[allow(dead_code)]
        #[path = $path]
        mod $module;

        #[test]
        fn $test() {
            $module::run().unwrap();
        }
    };
}

example!(usd_bound, usd_bound_runs, "../examples/usd_bound.rs");
example!(deterministic_transform, deterministic_transform_runs, "../examples/deterministic_transform.rs");
example!(kraus_construction, kraus_construction_runs, "../examples/kraus_construction.rs");
example!(unital_mixing, unital_mixing_runs, "../examples/unital_mixing.rs");
example!(transfer_matrix, transfer_matrix_runs, "../examples/transfer_matrix.rs");
example!(ensemble_majorization, ensemble_majorization_runs, "../examples/ensemble_majorization.rs");
example!(no_cloning, no_cloning_runs, "../examples/no_cloning.rs");
example!(majorization_witness, majorization_witness_runs, "../examples/majorization_witness.rs");
example!(certificate_search, certificate_search_runs, "../examples/certificate_search.rs");
example!(converse_probe, converse_probe_runs, "../examples/converse_probe.rs");
