use chainrep::grp::DEFAULT_CAP;
use chainrep::oracle::onn_polynomial_fit;

// Orbit sizes and orbit counts are polynomials of degree at most two in q,
// so three residue fields suffice to predict the fourth.
#[test]
fn orbit_data_interpolates_to_q5() {
    let rep = onn_polynomial_fit(2, 2, "galois", &[2, 3, 4], &[5], DEFAULT_CAP).unwrap();
    assert!(rep.degrees_within_bound);
    for ty in ["2", "1+1", "1^2"] {
        for name in ["per_orbit", "orbits"] {
            let fit = rep.fit(&format!("{name}[{ty}]")).unwrap();
            assert!(fit.predicts_holdout(), "{name}[{ty}]: {:?}", fit.holdout);
        }
    }
    let per_orbit = |ty: &str| rep.fit(&format!("per_orbit[{ty}]")).unwrap().holdout[0].observed;
    assert_eq!(per_orbit("2"), 24);
    assert_eq!(per_orbit("1+1"), 16);
    assert_eq!(per_orbit("1^2"), 20);
}
