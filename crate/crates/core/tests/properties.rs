//! Property tests over random posets and formulas.

use esakia::bits::bits;
use esakia::heyting::{
    dual_algebra, generated_closure, is_leq, regular_elements, FiniteHeytingAlgebra,
};
use esakia::logic::{
    check_validity, dnf_inquisitive, eval_algebra, format_formula, is_standard, parse, support_table, sweep_validity,
    team_valid, Formula, SweepBudget, ValidityMode, Valuation,
};
use esakia::poset::{
    apply_reduction, enumerate_reductions, make_medvedev, strong_regularization, validate_p_morphism, FinitePoset,
};
use esakia::regularity::{is_strongly_regular, quotient, sim_infty, sim_n, sim_sequence};
use proptest::prelude::*;

fn poset(n: usize, edges: &[bool]) -> FinitePoset {
    let mut pairs = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if edges[k] {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    let labels = (0..n).map(|i| format!("x{i}")).collect();
    FinitePoset::from_pairs(None, labels, &pairs).expect("upper-triangular pairs are acyclic")
}

fn arb_poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.4), n * (n - 1) / 2).prop_map(move |e| poset(n, &e))
    })
}

fn arb_formula(atoms: &'static [&'static str], tensor: bool) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        proptest::sample::select(atoms).prop_map(Formula::atom),
        Just(Formula::Bot),
        Just(Formula::Top),
    ];
    leaf.prop_recursive(4, 16, 2, move |inner| {
        let ops = if tensor { 4 } else { 3 };
        (0..ops, inner.clone(), inner).prop_map(|(op, a, b)| match op {
            0 => Formula::and(a, b),
            1 => Formula::or(a, b),
            2 => Formula::imp(a, b),
            _ => Formula::tensor(a, b),
        })
    })
}

fn valuation(h: &FiniteHeytingAlgebra, atoms: &[&str], picks: &[usize]) -> Valuation {
    atoms.iter().zip(picks).map(|(a, &i)| (a.to_string(), h.elements()[i % h.len()])).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closures_are_closure_operators((p, s, t) in arb_poset(6).prop_flat_map(|p| {
        let m = p.all_mask();
        (Just(p), 0..=m, 0..=m)
    })) {
        let up = |m| p.up_closure_mask(m);
        let down = |m| p.down_closure_mask(m);
        prop_assert_eq!(up(s) & s, s);
        prop_assert_eq!(up(up(s)), up(s));
        prop_assert_eq!(up(s & t) & !up(s), 0);
        prop_assert_eq!(down(s) & s, s);
        prop_assert_eq!(down(down(s)), down(s));
        prop_assert_eq!(down(s & t) & !down(s), 0);
        let top = p.maximal_mask(s);
        prop_assert_eq!(top & !s, 0);
        for x in bits(top) {
            for y in bits(top) {
                prop_assert!(x == y || !p.leq(x, y));
            }
        }
    }

    #[test]
    fn reductions_are_p_morphisms(p in arb_poset(6)) {
        for r in enumerate_reductions(&p) {
            let (_, f) = apply_reduction(&p, r.kind, r.x, r.y).unwrap();
            prop_assert!(validate_p_morphism(&f) && f.is_surjective());
        }
    }

    #[test]
    fn strong_regularisation_is_strongly_regular(p in arb_poset(8)) {
        let (s, f) = strong_regularization(&p);
        prop_assert!(is_strongly_regular(&s));
        prop_assert!(validate_p_morphism(&f) && f.is_surjective());
    }

    #[test]
    fn residuation_and_complements(p in arb_poset(6), picks in proptest::collection::vec(0usize..1000, 3)) {
        let h = dual_algebra(&p).unwrap();
        let [a, b, c] = [0, 1, 2].map(|i| h.elements()[picks[i] % h.len()]);
        let le = |x: u64, y: u64| x & !y == 0;
        prop_assert_eq!(le(h.meet(a, b), c), le(a, h.imp(b, c)));
        let core = regular_elements(&h);
        for &x in core.elements() {
            prop_assert_eq!(core.bjoin(&h, x, h.neg(x)), h.top());
            prop_assert_eq!(h.meet(x, h.neg(x)), h.bottom());
        }
    }

    #[test]
    fn strongly_regular_points_are_separated_by_regulars(p in arb_poset(6)) {
        prop_assume!(is_strongly_regular(&p));
        let regs = dual_algebra(&p).unwrap().regular_masks();
        for x in 0..p.len() {
            for y in 0..p.len() {
                if x != y {
                    prop_assert!(regs.iter().any(|r| (r >> x & 1) != (r >> y & 1)));
                }
            }
        }
    }

    #[test]
    fn order_is_reflexive_and_transitive(a in arb_poset(4), b in arb_poset(4), c in arb_poset(5)) {
        prop_assert!(is_leq(&a, &a));
        if is_leq(&a, &b) && is_leq(&b, &c) {
            prop_assert!(is_leq(&a, &c));
        }
    }

    #[test]
    fn bisimulation_chain(p in arb_poset(7)) {
        let seq = sim_sequence(&p);
        prop_assert!(seq.len() <= p.len() + 2);
        for w in seq.windows(2) {
            prop_assert!(w[1].refines(&w[0]));
        }
        for n in 0..seq.len() {
            prop_assert_eq!(&sim_n(&p, n), &seq[n]);
            let (_, f) = quotient(&p, &seq[n]).unwrap();
            prop_assert!(f.is_surjective());
        }
        let inf = sim_infty(&p);
        prop_assert_eq!(&inf, seq.last().unwrap());
        let (_, f) = quotient(&p, &inf).unwrap();
        prop_assert!(f.is_valid());
    }

    #[test]
    fn denotations_are_upsets(p in arb_poset(6), f in arb_formula(&["p", "q"], false), picks in proptest::collection::vec(0usize..1000, 2)) {
        let h = dual_algebra(&p).unwrap();
        let v = eval_algebra(&h, &valuation(&h, &["p", "q"], &picks), &f).unwrap();
        prop_assert!(p.is_upset(v));
    }

    #[test]
    fn support_is_downward_closed(f in arb_formula(&["p", "q"], true)) {
        let atoms = vec!["p".to_string(), "q".to_string()];
        let worlds: Vec<u64> = (0..4).collect();
        let tab = support_table(&f, &atoms, &worlds).unwrap();
        for t in 0..16usize {
            for s in 0..16usize {
                if s & !t == 0 && tab[t] {
                    prop_assert!(tab[s], "{} supported by {:#06b} but not {:#06b}", f, t, s);
                }
            }
        }
    }

    #[test]
    fn negative_validity_only_sees_the_regular_subalgebra(p in arb_poset(5), f in arb_formula(&["p", "q"], false)) {
        let h = dual_algebra(&p).unwrap();
        let k = FiniteHeytingAlgebra::from_elements(p.clone(), generated_closure(&h, &h.regular_masks())).unwrap();
        let budget = SweepBudget::unlimited();
        let on_h = check_validity(&h, &f, ValidityMode::Negative, budget).unwrap().valid;
        let on_k = check_validity(&k, &f, ValidityMode::Negative, budget).unwrap().valid;
        prop_assert_eq!(on_h, on_k);
    }

    #[test]
    fn search_matches_plain_sweep(p in arb_poset(5), f in arb_formula(&["p", "q"], false), negative in any::<bool>()) {
        let h = dual_algebra(&p).unwrap();
        let mode = if negative { ValidityMode::Negative } else { ValidityMode::All };
        let a = check_validity(&h, &f, mode, SweepBudget::unlimited()).unwrap();
        let b = sweep_validity(&h, &f, mode, SweepBudget::unlimited()).unwrap();
        prop_assert_eq!(a.valid, b.valid);
    }

    #[test]
    fn rendering_round_trips(f in arb_formula(&["p", "q", "r1"], true)) {
        prop_assert_eq!(parse(&format_formula(&f)).unwrap(), f);
    }

    #[test]
    fn normal_form_is_standard_and_equivalent(f in arb_formula(&["p", "q"], false)) {
        let d = dnf_inquisitive(&f).unwrap();
        prop_assert!(d.iter().all(is_standard));
        let k = f.atoms().len();
        prop_assert!(team_valid(&Formula::iff(f, Formula::disj(d)), k).unwrap());
    }
}

#[test]
fn medvedev_frames_are_strongly_regular() {
    for n in 1..=4 {
        assert!(is_strongly_regular(&make_medvedev(n).unwrap()));
    }
}

#[test]
fn strongly_regular_upsets_need_not_be_unions_of_regulars() {
    // x0 < x2, x3 and x1 < x2, x3, x4: every regular up-set containing x1 contains x0
    let p = FinitePoset::from_pairs(
        None,
        (0..5).map(|i| format!("x{i}")).collect(),
        &[(0, 2), (0, 3), (1, 2), (1, 3), (1, 4)],
    )
    .unwrap();
    assert!(is_strongly_regular(&p));
    let h = dual_algebra(&p).unwrap();
    let u = p.up_mask(1);
    let union = h.regular_masks().iter().filter(|&&r| r & !u == 0).fold(0, |m, &r| m | r);
    assert_eq!(p.format_mask(u), "{x1,x2,x3,x4}");
    assert_eq!(p.format_mask(union), "{x2,x3,x4}");
}
