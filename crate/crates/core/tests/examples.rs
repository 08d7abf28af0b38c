mod weyl_quotients_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/weyl_quotients.rs"));
}

#[test]
fn weyl_quotients_example_runs() {
    weyl_quotients_example::run().expect("weyl quotients example should run");
}

mod quantum_chevalley_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/quantum_chevalley.rs"));
}

#[test]
fn quantum_chevalley_example_runs() {
    quantum_chevalley_example::run().expect("quantum chevalley example should run");
}

mod grassmannian_zeta2_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/grassmannian_zeta2.rs"));
}

#[test]
fn grassmannian_zeta2_example_runs() {
    grassmannian_zeta2_example::run().expect("grassmannian zeta2 example should run");
}

mod spinor_zeta3_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/spinor_zeta3.rs"));
}

#[test]
fn spinor_zeta3_example_runs() {
    spinor_zeta3_example::run().expect("spinor zeta3 example should run");
}

mod product_euler_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/product_euler.rs"));
}

#[test]
fn product_euler_example_runs() {
    product_euler_example::run().expect("product euler example should run");
}

mod sine_formula_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sine_formula.rs"));
}

#[test]
fn sine_formula_example_runs() {
    sine_formula_example::run().expect("sine formula example should run");
}

mod identify_constants_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/identify_constants.rs"));
}

#[test]
fn identify_constants_example_runs() {
    identify_constants_example::run().expect("identify constants example should run");
}

mod apery_class_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/apery_class.rs"));
}

#[test]
fn apery_class_example_runs() {
    apery_class_example::run().expect("apery class example should run");
}

mod strain_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/strain.rs"));
}

#[test]
fn strain_example_runs() {
    strain_example::run().expect("strain example should run");
}

mod convergence_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/convergence.rs"));
}

#[test]
fn convergence_example_runs() {
    convergence_example::run().expect("convergence example should run");
}

mod result_record_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/result_record.rs"));
}

#[test]
fn result_record_example_runs() {
    result_record_example::run().expect("result record example should run");
}
