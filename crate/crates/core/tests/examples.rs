//! Every example runs to completion.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/examples/",
                stringify!($name),
                ".rs"
            ));
        }

        #[test]
        fn $name() {
            $name::run().unwrap();
        }
    };
}

example!(polynomial_algebra);
example!(ghost_spectrum);
example!(positive_spectrum);
example!(canonical_maps);
example!(jordan_limit);
example!(classical_trajectory);
example!(collapse_scan);
example!(bosonic_envelope);
example!(variational_certificate);
example!(cli_reports);
