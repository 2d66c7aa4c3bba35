use cvghz::oracle::{check_set, joint_eigenvector, OracleConfig};
use cvghz::paradox::SearchSpace;
use cvghz::{builtin, LatticeParams};
use num_complex::Complex64;

#[test]
fn searched_paradoxes_hold_numerically() {
    let out = SearchSpace::boxed(LatticeParams::new(2).unwrap(), 3, 4, 1).unwrap().run().unwrap();
    assert!(!out.sets.is_empty());
    for set in &out.sets {
        let r = check_set(set, &OracleConfig::default()).unwrap();
        assert!(r.agrees(1e-10));
        assert!(r.max_commutator_norm < 1e-10);
        let je = joint_eigenvector(set, &OracleConfig::default()).unwrap();
        assert!((je.eigenvalue_product() + Complex64::new(1.0, 0.0)).norm() < 1e-8);
    }
}

#[test]
fn w6_joint_eigenvalues_multiply_to_minus_one() {
    let je = joint_eigenvector(&builtin("w6").unwrap(), &OracleConfig::default()).unwrap();
    assert_eq!(je.vector.len(), 1024);
    assert!(je.residual < 1e-8);
    for l in &je.eigenvalues {
        // fourth roots of unity at d = 4
        assert!((l.powi(4) - Complex64::new(1.0, 0.0)).norm() < 1e-8, "{l}");
    }
    assert!((je.eigenvalue_product() + Complex64::new(1.0, 0.0)).norm() < 1e-8);
}

#[test]
fn eigenvector_is_seed_independent_in_product() {
    for seed in [1, 2, 3, 99] {
        let cfg = OracleConfig { seed, ..OracleConfig::default() };
        let je = joint_eigenvector(&builtin("v4").unwrap(), &cfg).unwrap();
        assert!((je.eigenvalue_product() + Complex64::new(1.0, 0.0)).norm() < 1e-8, "seed {seed}");
    }
}
