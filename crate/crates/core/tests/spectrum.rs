use chainrep::charthy::CharContext;
use chainrep::grp::{GroupContext, DEFAULT_CAP};
use chainrep::oracle::gl2_full_spectrum;

fn spectrum(lit: &str) -> chainrep::oracle::CountReport {
    gl2_full_spectrum(&CharContext::new(&GroupContext::from_literal(lit, 2, DEFAULT_CAP).unwrap())).unwrap()
}

#[test]
fn level_three_spectra_agree_across_characteristics() {
    let a = spectrum("zmod:2^3");
    let b = spectrum("fqt:2:3");
    let full = a.full.clone().unwrap();
    assert_eq!(full, b.full.unwrap());
    assert_eq!(a.classes, b.classes);
    let sum_sq: u64 = full.iter().map(|(&d, &c)| (d * d) as u64 * c).sum();
    assert_eq!(sum_sq as usize, a.order);
    assert_eq!(full.values().sum::<u64>() as usize, a.classes.unwrap());
    // The rest are det twists of characters inflated from GL_2(Z/4).
    assert_eq!(a.regular_mass(), a.order as i64 - 2 * 96);
}
