mod common;

use common::*;
use num_complex::Complex64 as C;
use probe_witness::qmath::{
    eig_hermitian, expm_generator, kron as lib_kron, partial_trace, CMatrix, SpaceLayout, Subsystem,
};
use proptest::prelude::*;

fn matrix(n: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n * n)
        .prop_map(move |v| (0..n).map(|i| (0..n).map(|j| c(v[i * n + j].0, v[i * n + j].1)).collect()).collect())
}

fn hermitian(n: usize) -> impl Strategy<Value = Mat> {
    matrix(n).prop_map(|a| scale(&add(&a, &dag(&a)), c(0.5, 0.0)))
}

fn lib(m: &Mat) -> CMatrix {
    from_mat(m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_matches_reference(a in matrix(2), b in matrix(4)) {
        let k = lib_kron(&lib(&a), &lib(&b)).unwrap();
        prop_assert!(max_diff(&to_mat(&k), &kron(&a, &b)) < 1e-14);
    }

    #[test]
    fn kron_mixed_product(a in matrix(2), b in matrix(2), x in matrix(2), y in matrix(2)) {
        let lhs = lib_kron(&lib(&a), &lib(&b)).unwrap().matmul(&lib_kron(&lib(&x), &lib(&y)).unwrap()).unwrap();
        let rhs = lib_kron(&lib(&a).matmul(&lib(&x)).unwrap(), &lib(&b).matmul(&lib(&y)).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn partial_trace_of_product(a in matrix(4), b in matrix(2)) {
        let layout = SpaceLayout::target_with_probe(2, Subsystem::ProbeIn);
        let full = kron(&a, &b);
        let reduced = partial_trace(&lib(&full), &layout, &[Subsystem::Target1, Subsystem::Target2]).unwrap();
        prop_assert!(max_diff(&to_mat(&reduced), &scale(&a, trace(&b))) < 1e-12);
        prop_assert!(max_diff(&to_mat(&reduced), &trace_last(&full, 2)) < 1e-12);
    }

    #[test]
    fn partial_trace_over_first_qubit(a in matrix(2), b in matrix(2)) {
        let reduced = partial_trace(&lib(&kron(&a, &b)), &SpaceLayout::two_qubits(), &[Subsystem::Target2]).unwrap();
        prop_assert!(max_diff(&to_mat(&reduced), &scale(&b, trace(&a))) < 1e-12);
    }

    #[test]
    fn eigen_reconstruction(h in hermitian(8)) {
        let e = eig_hermitian(&lib(&h)).unwrap();
        let back = e.map_spectrum(|x| C::new(x, 0.0));
        prop_assert!(max_diff(&to_mat(&back), &h) < 1e-10);
        for k in 0..8 {
            let v = e.column(k);
            let hv = lib(&h).apply(&v).unwrap();
            let lambda = lib(&h).expectation(&v).unwrap().re;
            let resid = hv.iter().zip(&v).map(|(a, b)| (a - b * lambda).norm()).fold(0.0, f64::max);
            prop_assert!(resid < 1e-10);
        }
    }

    #[test]
    fn expm_is_unitary_and_matches_series(h in hermitian(4), angle in -3.0..3.0f64) {
        let u = expm_generator(&lib(&h), angle).unwrap();
        prop_assert!(u.unitarity_defect() < 1e-12);
        let reference = expm(&scale(&h, c(0.0, -angle)));
        prop_assert!(max_diff(&to_mat(&u), &reference) < 1e-10);
    }
}
