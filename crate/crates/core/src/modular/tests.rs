use std::sync::Arc;

use num_traits::Signed;
use proptest::prelude::*;

use super::*;
use crate::charcalc::CharCalc;

fn rs(name: &str) -> Arc<RootSystem> {
    RootSystem::build(&name.parse().unwrap()).unwrap()
}

fn p(n: u32) -> Prime {
    Prime::new(n).unwrap()
}

fn w(r: &RootSystem, c: &[i32]) -> Weight {
    r.weight(c).unwrap()
}

#[test]
fn primes() {
    for n in [2, 3, 5, 7, 11, 13, 97] {
        assert!(Prime::new(n).is_ok());
    }
    for n in [0, 1, 4, 9, 15, 91] {
        assert!(Prime::new(n).is_err());
    }
    assert_eq!(p(3).valuation(18), 2);
    assert_eq!(p(2).valuation(7), 0);
}

#[test]
fn affine_reflection_examples() {
    let a1 = rs("A1");
    let alpha = a1.simple_root(0);
    assert_eq!(affine_reflect(&a1, alpha, 1, p(2), &a1.zero()).unwrap(), w(&a1, &[2]));
    let f4 = rs("F4");
    let lam = w(&f4, &[1, -2, 3, 0]);
    for beta in f4.positive_roots() {
        for m in -2..3 {
            let once = affine_reflect(&f4, beta, m, p(5), &lam).unwrap();
            assert_eq!(affine_reflect(&f4, beta, m, p(5), &once).unwrap(), lam);
        }
    }
    // ϖ4 − ρ lies in the dot orbit of 0 at p = 2, and a reflection image stays there
    let start = &f4.fundamental(4) - f4.rho();
    assert!(linked(&f4, p(2), &start, &f4.zero()).unwrap());
    let image = affine_reflect(&f4, f4.highest_short_root(0), 1, p(2), &start).unwrap();
    assert!(linked(&f4, p(2), &image, &f4.zero()).unwrap());
}

#[test]
fn alcove_rep_fixes_bottom_alcove() {
    let f4 = rs("F4");
    for lam in [f4.zero(), f4.fundamental(4), f4.fundamental(1)] {
        if bottom_alcove(&f4, p(13), &lam).unwrap() {
            assert_eq!(alcove_rep(&f4, p(13), &lam).unwrap(), lam);
        }
    }
    assert!(bottom_alcove(&f4, p(13), &f4.fundamental(1)).unwrap());
    assert_eq!(alcove_rep(&f4, p(5), &f4.fundamental(4)).unwrap(), alcove_rep(&f4, p(5), &w(&f4, &[1, 0, 0, 1])).unwrap());
}

#[test]
fn f4_linkage_facts() {
    let f4 = rs("F4");
    let w1 = f4.fundamental(1);
    let w4 = f4.fundamental(4);
    let w14 = w(&f4, &[1, 0, 0, 1]);
    assert!(linked(&f4, p(5), &w4, &w14).unwrap());
    assert!(up_arrow(&f4, p(5), &w4, &w14).unwrap());
    assert!(linked(&f4, p(7), &w1, &w14).unwrap());
    assert!(up_arrow(&f4, p(7), &w1, &w14).unwrap());
    let w34 = w(&f4, &[0, 0, 1, 1]);
    assert!(!linked(&f4, p(2), &w34, &f4.fundamental(2)).unwrap());
    let chain = [
        &f4.fundamental(4) - f4.rho(),
        f4.zero(),
        f4.fundamental(4),
        f4.fundamental(1),
        f4.fundamental(3),
        w(&f4, &[0, 0, 0, 2]),
        w14.clone(),
        f4.fundamental(2),
    ];
    for pair in chain.windows(2) {
        assert!(up_arrow(&f4, p(2), &pair[0], &pair[1]).unwrap(), "{:?} ↑ {:?}", pair[0], pair[1]);
        assert!(!up_arrow(&f4, p(2), &pair[1], &pair[0]).unwrap());
    }
    assert!(up_arrow(&f4, p(2), &(&w1 - f4.rho()), &w34).unwrap());
    // every dominant weight below ϖ3+ϖ4 lies in one orbit, the highest weight in another
    let lower: Vec<_> = dominant_weights_of(&f4, &w34).unwrap().into_iter().filter(|m| *m != w34).collect();
    assert_eq!(lower.len(), 7);
    for m in &lower {
        assert!(!linked(&f4, p(2), m, &w34).unwrap());
        assert!(linked(&f4, p(2), m, &f4.zero()).unwrap());
    }
    assert!(irreducible_by_linkage(&f4, p(2), &w34).unwrap());
    assert!(!irreducible_by_linkage(&f4, p(5), &w14).unwrap());
    assert!(irreducible_by_linkage(&f4, p(2), &f4.zero()).unwrap());
}

#[test]
fn up_arrow_trivial_and_outside_interval() {
    let b2 = rs("B2");
    let l = w(&b2, &[1, 1]);
    assert!(up_arrow(&b2, p(3), &l, &l).unwrap());
    assert!(!up_arrow(&b2, p(3), &w(&b2, &[3, 3]), &l).unwrap());
}

#[test]
fn bottom_alcove_of_zero_tracks_coxeter_number() {
    for (name, h) in [("A1", 2), ("A3", 4), ("B3", 6), ("G2", 6), ("F4", 12), ("E6", 12), ("E7", 18), ("E8", 30)] {
        let r = rs(name);
        for q in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            assert_eq!(bottom_alcove(&r, p(q), &r.zero()).unwrap(), q >= h - 1, "{name} p={q}");
        }
    }
    let a1 = rs("A1");
    assert!(bottom_alcove(&a1, p(2), &w(&a1, &[1])).unwrap());
}

#[test]
fn steinberg_and_trivial_sums_vanish() {
    for name in ["A1", "A2", "B2", "G2", "A3", "B3", "C3", "A4", "B4", "C4", "D4", "F4", "E6", "E7", "E8", "A5A1", "C3A1"] {
        let r = rs(name);
        for q in [2, 3, 5] {
            let st = r.rho().scale(q as i32 - 1);
            assert!(jantzen_sum(&r, p(q), &st).unwrap().is_empty(), "{name} p={q}");
            assert!(jantzen_sum(&r, p(q), &r.zero()).unwrap().is_empty());
        }
    }
    let a1 = rs("A1");
    assert!(!jantzen_sum(&a1, p(2), &w(&a1, &[2])).unwrap().is_empty());
    assert!(jantzen_sum(&a1, p(2), &w(&a1, &[1])).unwrap().is_empty());
}

/// Steinberg tensor product: `dim L(n) = ∏ (n_i + 1)` over base-p digits.
fn sl2_simple_dim(mut n: u32, q: u32) -> u32 {
    let mut d = 1;
    while n > 0 {
        d *= n % q + 1;
        n /= q;
    }
    d
}

#[test]
fn rank_one_jantzen_against_steinberg_tensor_product() {
    let a1 = rs("A1");
    for q in [2, 3, 5] {
        for n in 0..=40 {
            let lam = w(&a1, &[n as i32]);
            let irreducible = sl2_simple_dim(n, q) == n + 1;
            let sum = jantzen_sum(&a1, p(q), &lam).unwrap();
            assert_eq!(sum.is_empty(), irreducible, "p={q} n={n}");
            assert_eq!(nabla_irreducible(&a1, p(q), &lam).unwrap().is_yes(), irreducible);
        }
    }
}

#[test]
fn jantzen_known_value() {
    // ∇(2) at p = 2 has socle L(0): the sum is χ(0).
    let a1 = rs("A1");
    let s = jantzen_sum(&a1, p(2), &w(&a1, &[2])).unwrap();
    assert_eq!(s.to_text(), "[0] 1\n");
}

#[test]
fn jantzen_sums_are_genuine_at_weight_level() {
    for name in ["A2", "B2", "G2", "A3", "C3"] {
        let r = rs(name);
        let calc = CharCalc::new(Arc::clone(&r));
        for q in [2, 3, 5, 7] {
            for lam in all_up_to(r.rank(), 5) {
                let lam = w(&r, &lam);
                let s = jantzen_sum(&r, p(q), &lam).unwrap();
                let ch = calc.to_weights(&s).unwrap();
                assert!(ch.iter().all(|(_, c)| !c.is_negative()), "{name} p={q} {lam:?}");
                if bottom_alcove(&r, p(q), &lam).unwrap() {
                    assert!(s.is_empty());
                }
            }
        }
    }
}

fn all_up_to(rank: usize, height: i32) -> Vec<Vec<i32>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i32>| {
                (0..=height).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().sum::<i32>() <= height);
    out
}

#[test]
fn nabla_irreducible_examples() {
    let f4 = rs("F4");
    assert_eq!(
        nabla_irreducible(&f4, p(2), &w(&f4, &[0, 0, 1, 1])).unwrap(),
        Irreducibility::Yes(vec![IrreducibilityReason::Linkage])
    );
    assert!(nabla_irreducible(&f4, p(7), &f4.zero()).unwrap().is_yes());
    let a1 = rs("A1");
    assert!(matches!(
        nabla_irreducible(&a1, p(3), &w(&a1, &[3])).unwrap(),
        Irreducibility::Unknown { component: 0, .. }
    ));
    let e7a1 = rs("E7A1");
    let lam = w(&e7a1, &[0, 0, 0, 0, 0, 0, 1, 1]);
    assert_eq!(
        nabla_irreducible(&e7a1, p(5), &lam).unwrap(),
        Irreducibility::Yes(vec![IrreducibilityReason::Linkage, IrreducibilityReason::BottomAlcove])
    );
    let lam = w(&e7a1, &[0, 0, 0, 0, 0, 0, 1, 3]);
    assert!(matches!(
        nabla_irreducible(&e7a1, p(3), &lam).unwrap(),
        Irreducibility::Unknown { component: 1, .. }
    ));
}

fn arb_weight(rank: usize) -> impl Strategy<Value = Vec<i32>> {
    proptest::collection::vec(-12i32..=12, rank)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn alcove_rep_is_canonical(v in arb_weight(4), idx in 0usize..24, m in -3i64..4, q in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let f4 = rs("F4");
        let lam = w(&f4, &v);
        let rep = alcove_rep(&f4, p(q), &lam).unwrap();
        prop_assert_eq!(alcove_rep(&f4, p(q), &rep).unwrap(), rep.clone());
        let shifted: Vec<i32> = rep.coords().iter().map(|x| x + 1).collect();
        for b in f4.positive_roots() {
            let n = b.pair(&shifted);
            prop_assert!((0..=q as i64).contains(&n));
        }
        let beta = &f4.positive_roots()[idx];
        let moved = affine_reflect(&f4, beta, m, p(q), &lam).unwrap();
        prop_assert_eq!(alcove_rep(&f4, p(q), &moved).unwrap(), rep.clone());
        prop_assert!(linked(&f4, p(q), &moved, &lam).unwrap());
        // finite Weyl group on λ+ρ and translation by p·α
        let mut dotted: Vec<i32> = v.iter().map(|x| x + 1).collect();
        let k = dotted[idx % 4];
        for (x, c) in dotted.iter_mut().zip(&f4.cartan()[idx % 4]) { *x -= k * c; }
        let dotted: Vec<i32> = dotted.iter().zip(&f4.cartan()[(idx + 1) % 4]).map(|(x, c)| x - 1 + q as i32 * c).collect();
        prop_assert!(linked(&f4, p(q), &w(&f4, &dotted), &lam).unwrap());
    }

    #[test]
    fn up_arrow_implies_linked_and_below(a in proptest::collection::vec(0i32..4, 2), b in proptest::collection::vec(0i32..4, 2), q in prop::sample::select(vec![2u32, 3, 5])) {
        let g2 = rs("G2");
        let (mu, lam) = (w(&g2, &a), w(&g2, &b));
        if up_arrow(&g2, p(q), &mu, &lam).unwrap() {
            prop_assert!(linked(&g2, p(q), &mu, &lam).unwrap());
            prop_assert!(g2.dominance_leq(&mu, &lam).unwrap());
        }
    }

    #[test]
    fn linked_is_an_equivalence(a in arb_weight(3), b in arb_weight(3), c in arb_weight(3)) {
        let b3 = rs("B3");
        let (x, y, z) = (w(&b3, &a), w(&b3, &b), w(&b3, &c));
        let q = p(3);
        prop_assert!(linked(&b3, q, &x, &x).unwrap());
        prop_assert_eq!(linked(&b3, q, &x, &y).unwrap(), linked(&b3, q, &y, &x).unwrap());
        if linked(&b3, q, &x, &y).unwrap() && linked(&b3, q, &y, &z).unwrap() {
            prop_assert!(linked(&b3, q, &x, &z).unwrap());
        }
    }
}
