mod common;

use common::*;
use lipeq::decide::*;
use lipeq::exactnum::FactorConfig;
use lipeq::ifscore::{Ifs, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn fc() -> FactorConfig {
    FactorConfig::default()
}

fn cfg() -> DecideConfig {
    DecideConfig::default()
}

fn wit(side: WitnessSide, letter: usize, k: u32, k_prime: u32, j: &str) -> SubstitutabilityWitness {
    SubstitutabilityWitness {
        side,
        letter,
        k,
        k_prime,
        j: w(j),
    }
}

/// Every witness with `|j| ≤ max_len`, `k, k' ≤ max_k`, found by trying all
/// words in nondecreasing order (the identity depends only on the
/// multiset and the last letter).
fn brute_witnesses(ifs: &Ifs, i: usize, max_len: usize, max_k: u32) -> Vec<SubstitutabilityWitness> {
    let n = ifs.n();
    let mut out = Vec::new();
    let mut words = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for u in &words {
            let from = u.0.last().copied().unwrap_or(1) as usize;
            for l in from..=n {
                next.push(u.push(l));
            }
        }
        for u in &next {
            for last in 0..u.len() {
                let mut letters: Vec<u8> = u.0.clone();
                let l = letters.remove(last);
                letters.push(l);
                let j = Word(letters);
                for side in [WitnessSide::Left, WitnessSide::Right] {
                    for k in 0..=max_k {
                        for kp in 0..=max_k {
                            let c = SubstitutabilityWitness {
                                side,
                                letter: i,
                                k,
                                k_prime: kp,
                                j: j.clone(),
                            };
                            if c.verify(ifs) {
                                out.push(c);
                            }
                        }
                    }
                }
            }
        }
        words = next;
    }
    out
}

#[test]
fn necessary_condition_examples() {
    let a = three_map((1, 4), (1, 8), (1, 8));
    assert_eq!(check_necessary(&a, &fc()).unwrap(), Necessary::Pass { p: 3, q: 2 });
    let b = three_map((1, 4), (1, 5), (1, 3));
    assert_eq!(check_necessary(&b, &fc()).unwrap(), Necessary::Fail);
    assert_eq!(check_necessary(&set145(), &fc()).unwrap(), Necessary::Pass { p: 1, q: 1 });
}

#[test]
fn witness_identities() {
    let p2 = three_map((1, 5), (1, 4), (1, 5));
    assert!(wit(WitnessSide::Right, 2, 2, 0, "21").verify(&p2));
    // last letter in Σ_T is not admissible on the right
    assert!(!wit(WitnessSide::Right, 2, 1, 0, "2").verify(&p2));
    assert!(!wit(WitnessSide::Right, 2, 3, 0, "21").verify(&p2));
    assert!(!wit(WitnessSide::Right, 1, 2, 0, "21").verify(&p2));
    assert!(!wit(WitnessSide::Left, 2, 2, 0, "").verify(&p2));
}

#[test]
fn problem_two_fast_path() {
    for r2 in [(1, 4), (1, 7), (2, 9)] {
        let p2 = three_map((1, 5), r2, (1, 5));
        let (cond, ws) = corollary_fastpath(&p2, &fc()).unwrap().unwrap();
        assert_eq!(cond, FastPathCondition::First);
        assert_eq!(ws, vec![wit(WitnessSide::Right, 2, 2, 0, "21")]);
    }
}

#[test]
fn equal_ratio_fast_path() {
    let ws = corollary_fastpath(&set145(), &fc()).unwrap().unwrap().1;
    assert_eq!(ws, vec![wit(WitnessSide::Right, 2, 2, 0, "21")]);
    let ifs = six_three_blocks();
    let (_, ws) = corollary_fastpath(&ifs, &fc()).unwrap().unwrap();
    let letters: Vec<usize> = ws.iter().map(|w| w.letter).collect();
    assert_eq!(letters, vec![1, 4, 5]);
    for x in &ws {
        // u = v = w = 1: j = i · α
        assert_eq!((x.k, x.k_prime), (2, 0));
        assert_eq!(x.j, Word::from_letters(&[x.letter, ifs.ts.alpha]));
        assert!(x.verify(&ifs));
    }
}

#[test]
fn fast_path_ignores_the_middle_ratio() {
    // {1, n, α} ∪ (Σ_T + 1) = {1, 3} and ρ_1 = ρ_3
    let ifs = three_map((1, 4), (1, 3), (1, 4));
    let (cond, ws) = corollary_fastpath(&ifs, &fc()).unwrap().unwrap();
    assert_eq!(cond, FastPathCondition::First);
    assert_eq!(ws, vec![wit(WitnessSide::Right, 2, 2, 0, "21")]);
}

#[test]
fn fast_path_with_powers() {
    // ρ_1^3 = ρ_3^2, so u = 3, v = 2, w = 2
    let ifs = three_map((1, 4), (1, 8), (1, 8));
    let ws = corollary_fastpath(&ifs, &fc()).unwrap().unwrap().1;
    assert_eq!(ws, vec![wit(WitnessSide::Right, 2, 4, 0, "23111")]);
}

#[test]
fn second_condition_gives_left_witnesses() {
    // touching at 1 with α = 2, β = 1: ρ_2 = 1/5 breaks the first condition,
    // while {1, n} ∪ {1} all have ratio 1/9
    let ifs = ifs(
        &[(1, 9), (1, 5), (1, 9), (1, 9)],
        &[(0, 1), (1, 9), (1, 2), (8, 9)],
    );
    assert_eq!(ifs.ts.sigma_t.iter().copied().collect::<Vec<_>>(), vec![1]);
    let (cond, ws) = corollary_fastpath(&ifs, &fc()).unwrap().unwrap();
    assert_eq!(cond, FastPathCondition::Second);
    assert_eq!(ws, vec![wit(WitnessSide::Left, 1, 2, 0, "24")]);
}

#[test]
fn lattice_examples() {
    let p2 = three_map((1, 4), (1, 8), (1, 8));
    // ρ_3 ρ_1^3 = ρ_2 ρ_2²: 2^-9 on both sides
    assert_eq!(
        substitutable(&p2, 2, &Budget::default(), &fc()).unwrap(),
        SearchOutcome::Found(wit(WitnessSide::Left, 2, 3, 0, "22"))
    );
    assert_eq!(
        search_side(&p2, WitnessSide::Right, 2, &Budget::default(), &fc()).unwrap(),
        SearchOutcome::Found(wit(WitnessSide::Right, 2, 2, 0, "111"))
    );
    let p = three_map((1, 5), (1, 4), (1, 5));
    match search_side(&p, WitnessSide::Right, 2, &Budget::default(), &fc()).unwrap() {
        SearchOutcome::Found(x) => assert!(x.verify(&p)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn lattice_proves_nonexistence() {
    let ifs = four_map((1, 6), (1, 5), (1, 7));
    assert_eq!(ifs.ts.sigma_t.iter().copied().collect::<Vec<_>>(), vec![2]);
    assert_eq!(
        substitutable(&ifs, 2, &Budget::default(), &fc()).unwrap(),
        SearchOutcome::Infeasible
    );
    match verdict(&ifs, &cfg()).unwrap() {
        Verdict::Unknown { reason, letters, .. } => {
            assert_eq!(reason, UnknownReason::Unwitnessed);
            assert_eq!(letters, vec![(2, LetterStatus::Infeasible)]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn small_budget_exhausts() {
    let p2 = three_map((1, 4), (1, 8), (1, 8));
    let tiny = Budget {
        letters: 1,
        exponent: 60,
        states: 100,
    };
    assert_eq!(
        substitutable(&p2, 2, &tiny, &fc()).unwrap(),
        SearchOutcome::Exhausted
    );
}

#[test]
fn lattice_agrees_with_brute_force() {
    let specs = [
        three_map((1, 4), (1, 8), (1, 8)),
        three_map((1, 4), (1, 16), (1, 8)),
        three_map((1, 8), (1, 4), (1, 4)),
        three_map((1, 9), (1, 3), (1, 27)),
        three_map((1, 6), (1, 4), (1, 9)),
        three_map((1, 5), (1, 4), (1, 5)),
        four_map((1, 6), (1, 5), (1, 7)),
        four_map((1, 8), (1, 4), (1, 16)),
    ];
    for ifs in &specs {
        for &i in &ifs.ts.sigma_t {
            let brute = brute_witnesses(ifs, i, 4, 6);
            let found = substitutable(ifs, i, &Budget::default(), &fc()).unwrap();
            match &found {
                SearchOutcome::Found(x) => assert!(x.verify(ifs)),
                SearchOutcome::Infeasible => assert!(brute.is_empty(), "{brute:?}"),
                SearchOutcome::Exhausted => {}
            }
            if !brute.is_empty() {
                assert!(matches!(found, SearchOutcome::Found(_)), "{found:?}");
                let shortest = brute.iter().map(|b| b.j.len()).min().unwrap();
                if let SearchOutcome::Found(x) = &found {
                    // the search is by letter count, one side after the other
                    if brute.iter().any(|b| b.side == x.side) {
                        let side_min = brute
                            .iter()
                            .filter(|b| b.side == x.side)
                            .map(|b| b.j.len())
                            .min()
                            .unwrap();
                        assert!(x.j.len() <= side_min.max(shortest));
                    }
                }
            }
        }
    }
}

#[test]
fn both_witness_sources_verify() {
    for ifs in [
        set145(),
        three_map((1, 4), (1, 8), (1, 8)),
        three_map((1, 4), (1, 3), (1, 4)),
        six_two_touches(),
    ] {
        let fast = corollary_fastpath(&ifs, &fc()).unwrap().unwrap().1;
        assert!(fast.iter().all(|x| x.verify(&ifs)));
        for &i in &ifs.ts.sigma_t {
            match substitutable(&ifs, i, &Budget::default(), &fc()).unwrap() {
                SearchOutcome::Found(x) => assert!(x.verify(&ifs)),
                other => panic!("{other:?}"),
            }
        }
    }
}

#[test]
fn branch4_examples() {
    let ex = branch4_example();
    assert_eq!(
        branch4_rule(&ex, true).unwrap(),
        Some(NotEquivalentReason::DeclaredIndependence)
    );
    let rational = four_map((1, 6), (1, 5), (1, 7));
    assert_eq!(branch4_rule(&rational, false).unwrap(), None);
    let five = equal_ratio(5, 10, &[false, true, false, false]);
    assert!(matches!(branch4_rule(&five, true), Err(DecideError::Shape(_))));
}

#[test]
fn branch4_in_the_verdict() {
    let ex = branch4_example();
    let declared = DecideConfig {
        declared_independence: true,
        ..DecideConfig::default()
    };
    assert_eq!(
        verdict(&ex, &declared).unwrap(),
        Verdict::NotEquivalent {
            reason: NotEquivalentReason::DeclaredIndependence
        }
    );
    // without the assertion no touching letter has a witness at all
    match verdict(&ex, &cfg()).unwrap() {
        Verdict::Unknown { letters, .. } => {
            assert_eq!(letters, vec![(2, LetterStatus::Infeasible)])
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(verdict(&set145(), &declared), Err(DecideError::Shape(_))));
}

#[test]
fn verdict_examples() {
    let v = verdict(&set145(), &cfg()).unwrap();
    assert!(v.is_equivalent());
    assert_eq!(v.witnesses(), &[wit(WitnessSide::Right, 2, 2, 0, "21")]);
    assert_eq!(
        verdict(&three_map((1, 2), (1, 10), (1, 3)), &cfg()).unwrap(),
        Verdict::NotEquivalent {
            reason: NotEquivalentReason::LogRatio
        }
    );
    match verdict(&three_map((1, 4), (1, 8), (1, 8)), &cfg()).unwrap() {
        Verdict::Equivalent { dependence, .. } => assert_eq!(dependence, (3, 2)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn lattice_only_equivalence() {
    // ρ_2 = 1/6 and ρ_3 = 1/36 are unrelated to ρ_1 = ρ_4, but ρ_3 = ρ_2 ρ_2
    let ifs = four_map((1, 4), (1, 6), (1, 36));
    assert!(corollary_fastpath(&ifs, &fc()).unwrap().is_none());
    match verdict(&ifs, &cfg()).unwrap() {
        Verdict::Equivalent {
            fast_path,
            witnesses,
            ..
        } => {
            assert_eq!(fast_path, None);
            assert_eq!(witnesses, vec![wit(WitnessSide::Left, 2, 0, 0, "2")]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn factor_timeout_is_unknown() {
    let ifs = three_map((1, 4), (1, 8), (1, 8));
    let c = DecideConfig {
        factor: FactorConfig {
            max_factor_bits: 1,
            rho_iterations: 1,
        },
        ..DecideConfig::default()
    };
    // 2 is found by trial division, so this still decides
    assert!(verdict(&ifs, &c).unwrap().is_equivalent());
}

fn rq(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn simplex_small_cases() {
    // x + y = 1, x − y = 3 has x = 2, y = −1 only
    assert!(!feasible(&[vec![rq(1), rq(1)], vec![rq(1), rq(-1)]], &[rq(1), rq(3)]));
    assert!(feasible(&[vec![rq(1), rq(1)], vec![rq(1), rq(-1)]], &[rq(3), rq(1)]));
    // degenerate: repeated rows
    assert!(feasible(&[vec![rq(1), rq(2)], vec![rq(1), rq(2)]], &[rq(0), rq(0)]));
    assert!(!feasible(&[vec![rq(1), rq(2)], vec![rq(2), rq(4)]], &[rq(1), rq(3)]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn equal_ratio_systems_are_equivalent(
        n in 3usize..=6,
        pattern in proptest::collection::vec(any::<bool>(), 5),
        extra in 1i64..6,
    ) {
        let mut touch: Vec<bool> = pattern[..n - 1].to_vec();
        if touch.iter().all(|&t| !t) { touch[0] = true; }
        if touch.iter().all(|&t| t) { touch[n - 2] = false; }
        let ifs = equal_ratio(n, n as i64 + extra, &touch);
        let v = verdict(&ifs, &cfg()).unwrap();
        prop_assert!(v.is_equivalent());
        prop_assert_eq!(v.witnesses().len(), ifs.ts.sigma_t.len());
        prop_assert!(v.witnesses().iter().all(|x| x.verify(&ifs)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn verdict_is_monotone_in_the_budget(
        a in 1u32..4, b in 0u32..3, c in 1u32..4, d in 0u32..3, e in 1u32..4, f in 0u32..3,
        small in 1usize..4,
    ) {
        let r = |x: u32, y: u32| (1i64, 2i64.pow(x) * 3i64.pow(y));
        let (r1, r2, r3) = (r(a, b), r(c, d), r(e, f));
        let sum = 1.0 / r1.1 as f64 + 1.0 / r2.1 as f64 + 1.0 / r3.1 as f64;
        prop_assume!(sum < 1.0);
        let ifs = three_map(r1, r2, r3);
        let lo = DecideConfig {
            budget: Budget { letters: small, exponent: small as u64, states: 50 },
            ..DecideConfig::default()
        };
        let hi = DecideConfig { budget: Budget::default(), ..DecideConfig::default() };
        let vlo = verdict(&ifs, &lo).unwrap();
        let vhi = verdict(&ifs, &hi).unwrap();
        if !matches!(vlo, Verdict::Unknown { .. }) {
            prop_assert_eq!(vlo.label(), vhi.label());
        }
        if let Verdict::Unknown { letters, .. } = &vhi {
            // a larger budget only resolves letters; proofs of nonexistence stay
            if let Verdict::Unknown { letters: l2, .. } = &vlo {
                for ((i, s), (i2, s2)) in letters.iter().zip(l2) {
                    prop_assert_eq!(i, i2);
                    if *s2 == LetterStatus::Infeasible {
                        prop_assert_eq!(s, s2);
                    }
                }
            }
        }
    }

    #[test]
    fn simplex_accepts_constructed_solutions(
        a in proptest::collection::vec(-4i64..5, 6),
        x in proptest::collection::vec(0i64..4, 3),
    ) {
        let rows: Vec<Vec<BigRational>> = a.chunks(3).map(|r| r.iter().map(|&v| rq(v)).collect()).collect();
        let b: Vec<BigRational> = a.chunks(3).map(|r| rq(r.iter().zip(&x).map(|(p, q)| p * q).sum())).collect();
        prop_assert!(feasible(&rows, &b));
        // a nonnegative row with negative right-hand side cannot be met
        let mut rows2 = rows.clone();
        rows2.push(a[..3].iter().map(|v| rq(v.abs())).collect());
        let mut b2 = b.clone();
        b2.push(rq(-1));
        prop_assert!(!feasible(&rows2, &b2));
    }
}
