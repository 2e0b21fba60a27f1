use esakia::heyting::{dual_algebra, is_leq};
use esakia::jankov::{
    antichain_verify, canonical_values, jankov_dna_formula, jankov_refutation_check, separating_formula, Side,
};
use esakia::logic::is_dna_valid;
use esakia::poset::{make_delta0, make_delta1, posets_up_to, two_chain, diamond};
use esakia::regularity::is_regular_structural;

#[test]
fn every_source_refutes_its_own_formula() {
    for a in posets_up_to(5).into_iter().filter(|a| a.is_rooted() && is_regular_structural(a)) {
        let h = dual_algebra(&a).unwrap();
        let b = jankov_dna_formula(&h).unwrap();
        let (alpha, psi_s) = canonical_values(&b).unwrap();
        assert_eq!(alpha, h.top());
        assert_eq!(psi_s, b.second_greatest());
        assert_ne!(psi_s, h.top());
        assert!(jankov_refutation_check(&a, &b).unwrap());
    }
}

#[test]
fn formulas_are_reproducible() {
    let h = dual_algebra(&make_delta0(1).unwrap()).unwrap();
    let a = serde_json::to_string(&jankov_dna_formula(&h).unwrap().to_json_value()).unwrap();
    let b = serde_json::to_string(&jankov_dna_formula(&h).unwrap().to_json_value()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn delta_antichains_separate() {
    let (f2, f3) = (make_delta0(2).unwrap(), make_delta0(3).unwrap());
    let s = separating_formula(std::slice::from_ref(&f2), std::slice::from_ref(&f3)).unwrap().unwrap();
    assert_eq!(s.source, "delta0-2");
    assert_eq!(s.refuted_on, Side::First);
    assert_eq!(s.valid_on, vec!["delta0-3".to_string()]);
    assert!(!is_dna_valid(&dual_algebra(&f2).unwrap(), &s.formula).unwrap());
    assert!(is_dna_valid(&dual_algebra(&f3).unwrap(), &s.formula).unwrap());

    let (g3, g4) = (make_delta1(3).unwrap(), make_delta1(4).unwrap());
    let s = separating_formula(std::slice::from_ref(&g3), std::slice::from_ref(&g4)).unwrap().unwrap();
    assert_eq!(s.source, "delta1-3");
    assert!(!is_leq(&g3, &g4) && !is_leq(&g4, &g3));
    let r = antichain_verify(&[g3, g4]);
    assert!(r.is_antichain && r.members.iter().all(|m| m.strongly_regular && m.regular));
}

#[test]
fn comparable_pairs_are_reported() {
    let r = antichain_verify(&[two_chain(), diamond()]);
    assert!(!r.is_antichain);
    let r = antichain_verify(&[make_delta0(2).unwrap(), make_delta0(3).unwrap()]);
    assert!(r.is_antichain);
    assert!(r.members.iter().all(|m| m.regular && m.rooted));
}
