use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::branching::{catalog, derive_subsystem, reflection_closure, Provenance, PAIRS};
use crate::charcalc::{DominantCharacter, WeylSum};
use crate::modular::{linked, up_arrow};
use crate::rootdata::Weight;

fn prime(n: u32) -> Prime {
    Prime::new(n).unwrap()
}

fn case(pair: &str, p: u32) -> PairCase {
    PairCase::new(catalog(pair).unwrap(), prime(p)).unwrap()
}

fn rs(name: &str) -> Arc<RootSystem> {
    RootSystem::build(&name.parse().unwrap()).unwrap()
}

fn run(pair: &str, p: u32) -> Report {
    run_pair(&case(pair, p), &strategy_table(pair).unwrap(), &RunOptions::default())
}

/// Certified steps of a report, replayed into a fresh set.
fn replay(c: &PairCase, report: &Report) -> CertSet {
    let mut set = CertSet::new(Arc::clone(c.source()));
    for s in &report.steps {
        set.insert(s.clone());
    }
    set
}

fn certify(set: &mut CertSet, lam: &Weight) {
    let step = CertStep::from_evidence(
        Some(lam.clone()),
        lam.to_string(),
        "given".into(),
        vec![Evidence::note("given")],
        Vec::new(),
    );
    assert!(set.insert(step));
}

fn single(calc: &CharCalc, lam: &Weight) -> WeylSum {
    WeylSum::single(Arc::clone(calc.system()), lam.clone()).unwrap()
}

// ---- recipes ----

#[test]
fn recipe_parse_display_round_trip() {
    let e8 = rs("E8");
    for text in ["w1", "tensor(w1,w8)", "alt(2,w8)", "alt(4,w8)", "tensor(alt(2,w1),w3)", "[1,0,0,0,0,0,0,1]"] {
        let r = AuxRecipe::parse(&e8, text).unwrap();
        let again = AuxRecipe::parse(&e8, &r.to_string()).unwrap();
        assert_eq!(r, again, "{text}");
    }
    let r = AuxRecipe::parse(&e8, "tensor(w1,alt(2,w8))").unwrap();
    let leaves: Vec<Weight> = r.leaves().into_iter().cloned().collect();
    assert_eq!(leaves, vec![e8.fundamental(1), e8.fundamental(8)]);
    for bad in ["", "w9", "w0", "alt(w1)", "tensor(w1)", "alt(0,w1)", "foo(w1,w2)", "tensor(w1,w2"] {
        assert!(AuxRecipe::parse(&e8, bad).is_err(), "{bad}");
    }
    assert!(r.check_prime(prime(2)).is_err());
    assert!(r.check_prime(prime(3)).is_ok());
    assert!(AuxRecipe::parse(&e8, "tensor(w1,w8)").unwrap().check_prime(prime(2)).is_ok());
}

#[test]
fn supp_nabla_examples() {
    let a1a1 = CharCalc::new(rs("A1A1"));
    let z = a1a1.system().zero();
    let r = AuxRecipe::tensor(AuxRecipe::nabla(z.clone()), AuxRecipe::nabla(z.clone()));
    assert_eq!(supp_nabla(&a1a1, &r).unwrap(), single(&a1a1, &z));

    let e6 = CharCalc::new(rs("E6"));
    let r = AuxRecipe::parse(e6.system(), "alt(2,w1)").unwrap();
    assert_eq!(supp_nabla(&e6, &r).unwrap(), single(&e6, &e6.system().fundamental(3)));

    let a1 = CharCalc::new(rs("A1"));
    let one = a1.system().fundamental(1);
    let r = AuxRecipe::tensor(AuxRecipe::nabla(one.clone()), AuxRecipe::nabla(one.clone()));
    let s = supp_nabla(&a1, &r).unwrap();
    assert_eq!(s.coeff(&one.scale(2)), BigInt::from(1));
    assert_eq!(s.coeff(&a1.system().zero()), BigInt::from(1));
    assert_eq!(s.len(), 2);
}

/// All weights of `∇(λ)` with multiplicity, by expanding dominant weights over their orbits.
fn all_weights(calc: &CharCalc, lam: &Weight) -> Vec<Weight> {
    let ch = calc.freudenthal(lam).unwrap();
    let mut out = Vec::new();
    for (mu, m) in ch.iter() {
        let m: usize = m.to_string().parse().unwrap();
        for w in calc.system().weyl_orbit(mu, 100_000).unwrap() {
            out.extend(std::iter::repeat(w).take(m));
        }
    }
    out
}

/// `∧^k` of the weight list, summing each strictly increasing index tuple, then decomposed.
fn brute_alt(calc: &CharCalc, lam: &Weight, k: usize) -> WeylSum {
    let ws = all_weights(calc, lam);
    let rs = calc.system();
    let mut entries: BTreeMap<Weight, BigInt> = BTreeMap::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k <= ws.len() {
        loop {
            let mut sum = rs.zero();
            for &i in &idx {
                sum = &sum + &ws[i];
            }
            if sum.is_dominant() {
                *entries.entry(sum).or_default() += 1;
            }
            let mut j = k;
            loop {
                if j == 0 {
                    let ch = DominantCharacter::genuine(Arc::clone(rs), entries).unwrap();
                    return calc.decompose(&ch).unwrap();
                }
                j -= 1;
                if idx[j] < ws.len() - (k - j) {
                    idx[j] += 1;
                    for t in j + 1..k {
                        idx[t] = idx[t - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    WeylSum::zero(Arc::clone(rs))
}

#[test]
fn supp_nabla_matches_brute_force_exterior_powers() {
    for (name, i, k) in [("B2", 1, 2), ("B2", 2, 2), ("A3", 1, 2), ("A3", 1, 3), ("G2", 1, 2), ("G2", 1, 3), ("A2", 2, 2), ("C3", 1, 3), ("B3", 3, 2)] {
        let calc = CharCalc::new(rs(name));
        let lam = calc.system().fundamental(i);
        let r = AuxRecipe::alt(k as u32, AuxRecipe::nabla(lam.clone()));
        assert_eq!(supp_nabla(&calc, &r).unwrap(), brute_alt(&calc, &lam, k), "{name} alt({k},w{i})");
    }
}

// ---- verify_aux ----

#[test]
fn aux_tensor_certifies_e8_omega2() {
    let c = case("E8/D8", 5);
    let g = c.source();
    let mut set = CertSet::new(Arc::clone(g));
    for i in [8, 1, 7] {
        certify(&mut set, &g.fundamental(i));
    }
    let r = AuxRecipe::parse(g, "tensor(w1,w8)").unwrap();
    let step = verify_aux(&c, &g.fundamental(2), &r, &set).unwrap();
    assert_eq!(step.status, StepStatus::Certified, "{:?}", step.failures());
    assert!(matches!(&step.evidence[0], Evidence::Target { coeff, .. } if coeff == "1"));
    assert!(step.dependencies.contains(&g.fundamental(1).to_string()));
    assert!(step.dependencies.contains(&g.fundamental(8).to_string()));
}

#[test]
fn aux_alt4_certifies_e8_omega5_above_three() {
    for p in [5, 7] {
        let c = case("E8/D8", p);
        let report = run_pair(&c, &strategy_table("E8/D8").unwrap(), &RunOptions::default());
        let set = replay(&c, &report);
        let g = c.source();
        let r = AuxRecipe::parse(g, "alt(4,w8)").unwrap();
        let step = verify_aux(&c, &g.fundamental(5), &r, &set).unwrap();
        assert_eq!(step.status, StepStatus::Certified);
        assert_eq!(report.step(&g.fundamental(5)).unwrap().strategy, "aux alt(4,w8)");
    }
}

#[test]
fn aux_preconditions() {
    let c = case("F4/B4", 5);
    let g = c.source();
    let mut set = CertSet::new(Arc::clone(g));
    let r = AuxRecipe::parse(g, "alt(2,w4)").unwrap();
    // leaf not certified
    assert!(matches!(verify_aux(&c, &g.fundamental(3), &r, &set), Err(Error::Precondition(_))));
    certify(&mut set, &g.fundamental(4));
    // λ not in the support
    assert!(matches!(verify_aux(&c, &g.fundamental(2), &r, &set), Err(Error::Precondition(_))));
    let alt = AuxRecipe::parse(g, "alt(2,w4)").unwrap();
    let c2 = case("F4/B4", 2);
    let mut set2 = CertSet::new(Arc::clone(c2.source()));
    certify(&mut set2, &g.fundamental(4));
    assert!(verify_aux(&c2, &g.fundamental(3), &alt, &set2).is_err());
}

#[test]
fn aux_fails_on_linked_weight_above_target() {
    // ∇(2)⊗∇(2) for one A1 factor contains ∇(4), linked to 0 at p = 3 and not below it
    let c = case("Diagonal(A1,2)", 3);
    let g = c.source();
    let two = g.weight(&[2, 0]).unwrap();
    let mut set = CertSet::new(Arc::clone(g));
    certify(&mut set, &two);
    let r = AuxRecipe::tensor(AuxRecipe::nabla(two.clone()), AuxRecipe::nabla(two));
    let step = verify_aux(&c, &g.zero(), &r, &set).unwrap();
    assert_eq!(step.status, StepStatus::Failed);
    let fails = step.failures();
    assert_eq!(fails.len(), 1);
    assert!(matches!(fails[0], Evidence::Linked { weight, .. } if *weight == g.weight(&[4, 0]).unwrap().to_string()));
    assert!(matches!(fails[0], Evidence::Linked { .. }));
    // at p = 5 the same weight is in another linkage class
    let c5 = case("Diagonal(A1,2)", 5);
    let step = verify_aux(&c5, &g.zero(), &r, &set).unwrap();
    assert_eq!(step.status, StepStatus::Certified);
}

#[test]
fn unlinked_evidence_admits_no_strong_linkage() {
    let mut seen = 0;
    for pair in ["F4/B4", "F4/C3A1", "E6/A5A1", "E7/A7"] {
        for p in [3, 5] {
            let c = case(pair, p);
            let g = c.source();
            let report = run_pair(&c, &strategy_table(pair).unwrap(), &RunOptions::default());
            for s in &report.steps {
                let Some(lam) = &s.key else { continue };
                for e in &s.evidence {
                    if let Evidence::Unlinked { weight, .. } = e {
                        let mu = g.parse_weight(weight).unwrap();
                        assert!(!linked(g, prime(p), lam, &mu).unwrap());
                        assert!(!up_arrow(g, prime(p), &mu, lam).unwrap(), "{pair} p={p} {mu} ↑ {lam}");
                        assert!(!up_arrow(g, prime(p), lam, &mu).unwrap(), "{pair} p={p} {lam} ↑ {mu}");
                        seen += 1;
                    }
                }
            }
        }
    }
    assert!(seen > 0);
}

// ---- irreducible layers ----

#[test]
fn e8_d8_omega8_has_two_layers() {
    for p in [3, 5, 7] {
        let c = case("E8/D8", p);
        let step = verify_irreducible_layers(&c, &c.source().fundamental(8)).unwrap();
        assert_eq!(step.status, StepStatus::Certified, "p={p}");
        let dims: BTreeSet<String> = step
            .evidence
            .iter()
            .filter_map(|e| match e {
                Evidence::Layer { dim, .. } => Some(dim.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(dims, BTreeSet::from(["120".to_string(), "128".to_string()]));
    }
}

#[test]
fn e6_c4_omega1_is_one_layer() {
    for p in [5, 7] {
        let c = case("E6/C4", p);
        let step = verify_irreducible_layers(&c, &c.source().fundamental(1)).unwrap();
        assert_eq!(step.status, StepStatus::Certified);
        let layers: Vec<&Evidence> = step.evidence.iter().filter(|e| matches!(e, Evidence::Layer { .. })).collect();
        assert_eq!(layers.len(), 1);
        assert!(matches!(layers[0], Evidence::Layer { dim, .. } if dim == "27"));
    }
}

#[test]
fn layers_of_zero_weight_and_bad_input() {
    let c = case("F4/B4", 3);
    let step = verify_irreducible_layers(&c, &c.source().zero()).unwrap();
    assert_eq!(step.status, StepStatus::Certified);
    let neg = c.source().weight(&[-1, 0, 0, 0]).unwrap();
    assert!(matches!(verify_irreducible_layers(&c, &neg), Err(Error::NotDominant(_))));
    let foreign = rs("E6").fundamental(1);
    assert!(verify_irreducible_layers(&c, &foreign).is_err());
}

// ---- socle ----

#[test]
fn socle_examples() {
    for (pair, ws) in [("E8/E7A1", vec![1]), ("E7/D6A1", vec![7, 1, 2]), ("F4/C3A1", vec![4, 1]), ("E6/A5A1", vec![1, 2])] {
        for p in [3, 5, 7] {
            let c = case(pair, p);
            for &i in &ws {
                let step = verify_socle_product(&c, &c.source().fundamental(i)).unwrap();
                assert_eq!(step.status, StepStatus::Certified, "{pair} p={p} w{i}: {:?}", step.failures());
                assert!(step.evidence.iter().any(|e| matches!(e, Evidence::Pairing { coeff, .. } if coeff == "1")));
            }
        }
    }
}

#[test]
fn socle_rejects_targets_without_a1_factor() {
    let c = case("F4/B4", 5);
    assert!(matches!(verify_socle_product(&c, &c.source().fundamental(1)), Err(Error::Precondition(_))));
}

#[test]
fn socle_fails_when_levi_weight_has_two_partners() {
    let c = case("E6/A5A1", 5);
    let lam = c.source().fundamental(2).scale(2);
    let step = verify_socle_product(&c, &lam).unwrap();
    assert_eq!(step.status, StepStatus::Failed);
    assert!(step
        .failures()
        .iter()
        .any(|e| matches!(e, Evidence::Check { name, .. } if name == "unique A1 partner")));
}

// ---- symmetry ----

/// `τ` permutes the roots of `H` (as a subset of the roots of `G`) when `τ` comes from a
/// diagram automorphism carrying the subsystem to itself.
fn subsystem_stable(pair: &str, tau: &[usize]) -> bool {
    let e = catalog(pair).unwrap();
    let Provenance::SubsystemRoots(gens) = e.provenance() else { panic!("{pair} is not a subsystem") };
    let roots = reflection_closure(e.source(), gens).unwrap();
    roots.iter().all(|r| {
        let mut img = vec![0; r.len()];
        for (i, &x) in r.iter().enumerate() {
            img[tau[i]] = x;
        }
        roots.contains(&img)
    })
}

#[test]
fn e6_graph_automorphism_preserves_a5a1() {
    assert!(subsystem_stable("E6/A5A1", &[5, 1, 4, 3, 2, 0]));
}

#[test]
fn symmetry_examples() {
    for pair in ["E6/A5A1", "E6/C4"] {
        let c = case(pair, 5);
        let g = c.source();
        let mut set = CertSet::new(Arc::clone(g));
        assert!(matches!(verify_symmetry(&c, &g.fundamental(6), 1, &set), Err(Error::Precondition(_))));
        certify(&mut set, &g.fundamental(1));
        certify(&mut set, &g.fundamental(3));
        let step = verify_symmetry(&c, &g.fundamental(6), 1, &set).unwrap();
        assert_eq!(step.status, StepStatus::Certified, "{pair}");
        let step = verify_symmetry(&c, &g.fundamental(5), 3, &set).unwrap();
        assert_eq!(step.status, StepStatus::Certified, "{pair}");
        // ϖ5 is the twist of ϖ3, not of ϖ1
        let step = verify_symmetry(&c, &g.fundamental(5), 1, &set).unwrap();
        assert_eq!(step.status, StepStatus::Failed);
        assert!(verify_symmetry(&c, &g.fundamental(5), 7, &set).is_err());
    }
}

// ---- E6 ⊃ C4 adjoint ----

#[test]
fn e6_c4_adjoint_argument() {
    for p in [3, 5, 7, 11] {
        let c = case("E6/C4", p);
        let step = verify_e6c4_omega2(&c).unwrap();
        assert_eq!(step.status, StepStatus::CertifiedWithExternal, "p={p}: {:?}", step.failures());
        let zero = step.evidence.iter().find(|e| matches!(e, Evidence::Check { name, .. } if name == "zero weight space"));
        assert!(matches!(zero, Some(Evidence::Check { passed: true, .. })));
        let h = c.target();
        let sub = h.fundamental(1).scale(2).to_string();
        assert!(step.evidence.iter().any(|e| matches!(e, Evidence::Layer { weight, dim, .. } if *weight == sub && dim == "36")));
        if p == 3 {
            assert!(step.evidence.iter().any(|e| matches!(e, Evidence::Check { name, passed: true, .. } if name == "quotient at p = 3")));
        }
    }
    assert!(PairCase::new(catalog("E6/C4").unwrap(), prime(2)).map(|c| verify_e6c4_omega2(&c).is_err()).unwrap());
    assert!(verify_e6c4_omega2(&case("E6/A5A1", 5)).is_err());
}

// ---- three pieces ----

#[test]
fn e6_f4_three_pieces() {
    let table = strategy_table("E6/F4").unwrap();
    let super::Strategy::ThreePieces { base, external } = &table.rows[0].strategy else { panic!("not three pieces") };
    assert!(external.is_some());
    for (p, want) in [(2, StepStatus::Certified), (3, StepStatus::CertifiedWithExternal), (5, StepStatus::Certified), (7, StepStatus::Certified)] {
        let c = case("E6/F4", p);
        let sigma = scaled_sigmas(&c, base).unwrap();
        let step = verify_three_pieces(&c, &sigma, external.as_deref()).unwrap();
        assert_eq!(step.status, want, "p={p}: {:?}", step.failures());
        let found = search_three_pieces(c.embedding(), prime(p)).unwrap();
        assert!(found.is_some(), "p={p}");
    }
    // without the claim, p = 3 cannot settle surjectivity
    let c = case("E6/F4", 3);
    let sigma = scaled_sigmas(&c, base).unwrap();
    assert_eq!(verify_three_pieces(&c, &sigma, None).unwrap().status, StepStatus::Failed);
    // swapped pieces break the arithmetic
    let swapped = [sigma[1].clone(), sigma[0].clone(), sigma[2].clone()];
    assert_eq!(verify_three_pieces(&c, &swapped, None).unwrap().status, StepStatus::Failed);
    assert_eq!(three_pieces_obstruction(c.embedding()).unwrap(), None);
}

#[test]
fn a4_b2_three_pieces_obstructed() {
    let e = catalog("A4/B2").unwrap();
    let ob = three_pieces_obstruction(&e).unwrap().expect("obstruction");
    assert_eq!(ob.coefficient, 4);
    assert_eq!(ob.node, 2);
    assert_eq!(ob.res_rho.coords(), &[2, 4]);
    for p in [2, 3, 5] {
        assert_eq!(search_three_pieces(&e, prime(p)).unwrap(), None, "p={p}");
    }
}

// ---- tables ----

#[test]
fn shipped_tables_name_expected_rows() {
    let row = |pair: &str, i: usize, p: u32| -> String {
        let t = strategy_table(pair).unwrap();
        let sel = t.select(p);
        sel.iter().find(|(w, _)| *w == Some(i)).unwrap().1.unwrap().strategy.to_string()
    };
    assert_eq!(row("E8/D8", 7, 5), "aux alt(2,w8)");
    assert_eq!(row("E8/D8", 8, 5), "layers");
    assert_eq!(row("E8/E7A1", 1, 5), "socle");
    assert_eq!(row("E7/A7", 6, 3), "aux alt(2,w7)");
    assert_eq!(row("E7/A7", 5, 3), "aux tensor(w1,w2)");
    assert_eq!(row("E7/A7", 5, 5), "aux alt(3,w7)");
    assert_eq!(row("E7/A7", 2, 7), "layers");
    assert_eq!(row("E7/A7", 2, 5), "aux tensor(w1,w7)");
    assert_eq!(row("E8/D8", 6, 3), "aux tensor(w1,w1)");
    assert_eq!(row("E8/D8", 6, 5), "aux alt(3,w8)");
    assert_eq!(row("E6/C4", 2, 5), "adjoint-e6c4");
    assert_eq!(row("E6/A5A1", 6, 5), "symmetry w1");
    assert!(matches!(strategy_table("E6/F4").unwrap().rows[0].strategy, super::Strategy::ThreePieces { .. }));
    assert!(matches!(strategy_table("A4/B2"), Err(Error::UnknownPair(_))));
}

#[test]
fn tables_round_trip_and_respect_dominance() {
    for pair in PAIRS {
        let t = strategy_table(pair).unwrap();
        let g = catalog(pair).unwrap();
        let again = StrategyTable::parse(pair, t.min_p, g.source(), &t.to_text()).unwrap();
        assert_eq!(t, again, "{pair}");
        t.check_order(g.source()).unwrap();
        if t.rows.len() > 1 {
            let mut rev = t.clone();
            rev.rows.reverse();
            assert!(rev.check_order(g.source()).is_err(), "{pair}");
        }
    }
}

#[test]
fn pcond_parse_and_display() {
    for (text, p, holds) in [("any", 2, true), ("p=3", 3, true), ("p=3", 5, false), ("p!=7", 7, false), ("p>3", 5, true), ("p>3", 3, false)] {
        let e8 = rs("E8");
        let row = Row::parse(&e8, &format!("w1 {text} layers")).unwrap();
        assert_eq!(row.when.holds(p), holds, "{text} at {p}");
        assert_eq!(row.when.to_string(), text);
    }
    assert!(Row::parse(&rs("E8"), "w1 p~3 layers").is_err());
    assert!(Row::parse(&rs("E8"), "w1 layers").is_err());
}

#[test]
fn overrides_replace_rows_in_place() {
    let t = strategy_table("F4/B4").unwrap();
    let g = catalog("F4/B4").unwrap();
    let row = Row::parse(g.source(), "w3 any aux tensor(w4,w4)").unwrap();
    let t2 = t.clone().with_overrides(vec![row.clone()]);
    assert_eq!(t2.weights(), t.weights());
    assert_eq!(t2.rows[2], row);
}

// ---- engine ----

#[test]
fn f4_b4_run_uses_table_strategies() {
    let r = run("F4/B4", 5);
    assert_eq!(r.status, ReportStatus::Certified);
    let got: Vec<(&str, &str)> = r.steps.iter().map(|s| (s.weight.as_str(), s.strategy.as_str())).collect();
    assert_eq!(
        got,
        vec![
            ("[0,0,0,1]", "layers"),
            ("[1,0,0,0]", "layers"),
            ("[0,0,1,0]", "aux alt(2,w4)"),
            ("[0,1,0,0]", "aux alt(2,w1)"),
        ]
    );
    let ind = r.induction.as_ref().unwrap();
    assert_eq!(ind.samples, 50);
    assert!(ind.failures.is_empty());
}

#[test]
fn runs_are_deterministic_and_acyclic() {
    for (pair, p) in [("E6/A5A1", 3), ("E7/A7", 5), ("F4/C3A1", 7)] {
        let c = case(pair, p);
        let t = strategy_table(pair).unwrap();
        let a = run_pair(&c, &t, &RunOptions::default());
        let b = run_pair(&case(pair, p), &t, &RunOptions::default());
        assert!(a.same_outcome(&b), "{pair}");
        assert!(a.status.is_certified());
        let set = replay(&c, &a);
        assert_eq!(set.steps().len(), c.source().rank());
        assert!(set.is_acyclic());
    }
}

#[test]
fn acyclic_detects_forward_dependency() {
    let g = rs("F4");
    let mut set = CertSet::new(Arc::clone(&g));
    let mut s = CertStep::from_evidence(Some(g.fundamental(3)), g.fundamental(3).to_string(), "x".into(), vec![], vec![g.fundamental(4).to_string()]);
    set.insert(s.clone());
    s = CertStep::from_evidence(Some(g.fundamental(4)), g.fundamental(4).to_string(), "x".into(), vec![], vec![]);
    set.insert(s);
    assert!(!set.is_acyclic());
}

#[test]
fn covered_needs_every_smaller_fundamental() {
    let g = rs("F4");
    let mut set = CertSet::new(Arc::clone(&g));
    let w1 = g.fundamental(1);
    certify(&mut set, &g.fundamental(4));
    assert_eq!(set.covered(&w1).unwrap(), None);
    certify(&mut set, &w1);
    assert_eq!(set.covered(&w1).unwrap(), Some(vec![w1.clone(), g.fundamental(4)]));
    assert!(set.covered(&g.zero()).unwrap().unwrap().is_empty());
}

#[test]
fn small_primes_and_skipped_rows() {
    let r = run("F4/B4", 2);
    assert_eq!(r.status, ReportStatus::Failed);
    let c = case("E8/D8", 5);
    let opts = RunOptions { skip_slow: true, ..RunOptions::default() };
    let r = run_pair(&c, &strategy_table("E8/D8").unwrap(), &opts);
    assert_eq!(r.status, ReportStatus::Incomplete);
    assert_eq!(r.steps.iter().filter(|s| s.status == StepStatus::Skipped).count(), 3);
}

#[test]
fn corrupted_table_fails_the_step() {
    let pair = "F4/B4";
    let g = catalog(pair).unwrap();
    // ∧²∇(ϖ4) used for ϖ2, which it does not contain
    let bad = Row::parse(g.source(), "w2 any aux alt(2,w4)").unwrap();
    let t = strategy_table(pair).unwrap().with_overrides(vec![bad]);
    let r = run_pair(&case(pair, 5), &t, &RunOptions::default());
    assert_eq!(r.status, ReportStatus::Failed);
    let step = r.step(&g.source().fundamental(2)).unwrap();
    assert_eq!(step.status, StepStatus::Failed);
    // a row that refers to a weight certified later
    let early = Row::parse(g.source(), "w4 any aux alt(2,w1)").unwrap();
    let t = strategy_table(pair).unwrap().with_overrides(vec![early]);
    let r = run_pair(&case(pair, 5), &t, &RunOptions::default());
    assert_eq!(r.step(&g.source().fundamental(4)).unwrap().status, StepStatus::Failed);
    // missing fundamental weight
    let mut t = strategy_table(pair).unwrap();
    t.rows.pop();
    let r = run_pair(&case(pair, 5), &t, &RunOptions::default());
    assert_eq!(r.status, ReportStatus::Failed);
}

#[test]
fn e8_d8_other_diagram_automorphism_gives_same_verdict() {
    let t = strategy_table("E8/D8").unwrap();
    for p in [3, 5] {
        let a = run("E8/D8", p);
        let c = PairCase::new(derive_subsystem("E8/D8", 1).unwrap(), prime(p)).unwrap();
        let b = run_pair(&c, &t, &RunOptions::default());
        assert_eq!(a.status, ReportStatus::Certified);
        assert_eq!(b.status, a.status, "p={p}");
        let strategies = |r: &Report| r.steps.iter().map(|s| s.strategy.clone()).collect::<Vec<_>>();
        assert_eq!(strategies(&a), strategies(&b));
    }
}

#[test]
fn report_serializes() {
    let r = run("E6/F4", 3);
    assert_eq!(r.status, ReportStatus::CertifiedWithExternal);
    assert!(r.induction.is_none());
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["status"], "CertifiedWithExternal");
    assert!(json["steps"][0]["evidence"].as_array().unwrap().iter().any(|e| e["kind"] == "external"));
    assert!(r.to_text().contains("EXTERNAL"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unlinked_weights_are_not_strongly_linked(
        a in proptest::collection::vec(0i32..8, 2),
        b in proptest::collection::vec(0i32..8, 2),
        name in prop::sample::select(vec!["A2", "B2", "G2"]),
        q in prop::sample::select(vec![2u32, 3, 5, 7]),
    ) {
        let g = rs(name);
        let (x, y) = (g.weight(&a).unwrap(), g.weight(&b).unwrap());
        if !linked(&g, prime(q), &x, &y).unwrap() {
            prop_assert!(!up_arrow(&g, prime(q), &x, &y).unwrap());
            prop_assert!(!up_arrow(&g, prime(q), &y, &x).unwrap());
        }
    }

    #[test]
    fn tensor_recipe_has_top_weight_once(
        a in proptest::collection::vec(0i32..2, 4),
        b in proptest::collection::vec(0i32..2, 4),
    ) {
        let calc = CharCalc::new(rs("F4"));
        let g = calc.system();
        let (x, y) = (g.weight(&a).unwrap(), g.weight(&b).unwrap());
        let s = supp_nabla(&calc, &AuxRecipe::tensor(AuxRecipe::nabla(x.clone()), AuxRecipe::nabla(y.clone()))).unwrap();
        let top = &x + &y;
        prop_assert_eq!(s.coeff(&top), BigInt::from(1));
        for (mu, _) in s.iter() {
            prop_assert!(mu == &top || g.dominance_lt(mu, &top).unwrap());
        }
    }
}
