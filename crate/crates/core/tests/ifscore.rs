mod common;

use std::collections::BTreeSet;

use common::*;
use lipeq::exactnum::Real;
use lipeq::ifscore::*;
use proptest::prelude::*;

#[test]
fn validation_examples() {
    let s = set145();
    assert_eq!(s.ts.sigma_t, BTreeSet::from([2]));

    let dust = validate(
        vec![q(1, 5); 3],
        vec![r(0, 1), r(2, 5), r(4, 5)],
        Role::Touching,
    );
    assert_eq!(dust.unwrap_err(), SpecError::NoTouching);

    let full = validate(
        vec![q(1, 3); 3],
        vec![r(0, 1), r(1, 3), r(2, 3)],
        Role::Touching,
    );
    assert_eq!(full.unwrap_err(), SpecError::NoGap);
}

#[test]
fn validation_reports_offending_index() {
    let overlap = validate(
        vec![q(1, 5); 3],
        vec![r(0, 1), r(1, 10), r(4, 5)],
        Role::Touching,
    );
    assert_eq!(overlap.unwrap_err(), SpecError::Overlap { index: 1 });
    let right = validate(
        vec![q(1, 5); 3],
        vec![r(0, 1), r(3, 5), r(3, 4)],
        Role::Touching,
    );
    assert_eq!(right.unwrap_err(), SpecError::RightEndpoint { index: 3 });
    let left = validate(
        vec![q(1, 5); 3],
        vec![r(1, 100), r(3, 5), r(4, 5)],
        Role::Touching,
    );
    assert_eq!(left.unwrap_err(), SpecError::LeftEndpoint);
    let range = validate(
        vec![q(1, 5), q(1, 1), q(1, 5)],
        vec![r(0, 1), r(3, 5), r(4, 5)],
        Role::Touching,
    );
    assert_eq!(range.unwrap_err(), SpecError::RatioRange { index: 2 });
}

#[test]
fn canonical_dust_examples() {
    let d = canonical_dust(&vec![q(1, 5); 3]).unwrap();
    assert_eq!(d.translations(), &[r(0, 1), r(2, 5), r(4, 5)]);
    assert_eq!(
        canonical_dust(&[q(1, 2), q(1, 4)]).unwrap_err(),
        SpecError::TooFewMaps(2)
    );
    let d = canonical_dust(&[q(1, 4), q(1, 8), q(1, 8)]).unwrap();
    assert_eq!(d.translations(), &[r(0, 1), r(1, 2), r(7, 8)]);
    assert_eq!(
        canonical_dust(&[q(1, 2), q(1, 3), q(1, 6)]).unwrap_err(),
        SpecError::RatioSum
    );
}

#[test]
fn touching_structure_examples() {
    let s = set145();
    assert_eq!((s.ts.alpha, s.ts.beta), (1, 2));

    let p2 = three_map((1, 4), (1, 8), (1, 8));
    assert_eq!(p2.ts.sigma_t, BTreeSet::from([2]));
    assert_eq!((p2.ts.alpha, p2.ts.beta), (1, 2));

    let six = six_two_touches();
    assert_eq!(six.ts.sigma_t, BTreeSet::from([1, 4]));
    assert_eq!((six.ts.alpha, six.ts.beta), (2, 1));
}

#[test]
fn cylinder_interval_examples() {
    let s = set145();
    assert_eq!(s.spec.cylinder_interval(&w("2")).unwrap(), (r(3, 5), r(4, 5)));
    assert_eq!(s.spec.cylinder_interval(&Word::empty()).unwrap(), (r(0, 1), r(1, 1)));
    assert_eq!(s.spec.cylinder_interval(&w("23")).unwrap(), (r(19, 25), r(4, 5)));
    assert!(matches!(
        s.spec.cylinder_interval(&w("24")),
        Err(SpecError::LetterOutOfRange { letter: 4, n: 3 })
    ));
}

#[test]
fn components_examples() {
    let s = set145();
    let c = components(&s.spec, 1).unwrap();
    assert_eq!(c.len(), 2);
    assert_eq!(c[0].0, (r(0, 1), r(1, 5)));
    assert_eq!(c[1].0, (r(3, 5), r(1, 1)));
    assert_eq!(s.ts.blocks, vec![vec![1], vec![2, 3]]);
    assert_eq!(s.ts.c1(), 2);

    let f3 = six_three_blocks();
    assert_eq!(f3.ts.blocks, vec![vec![1, 2], vec![3], vec![4, 5, 6]]);
    let c = components(&f3.spec, 1).unwrap();
    let letters: Vec<Vec<Word>> = c.into_iter().map(|(_, ws)| ws).collect();
    assert_eq!(
        letters,
        vec![vec![w("1"), w("2")], vec![w("3")], vec![w("4"), w("5"), w("6")]]
    );
}

#[test]
fn separation_examples() {
    let s = set145();
    let sep = |words: &[&str]| {
        let u = CylinderUnion::new(Side::T, words.iter().map(|x| w(x)).collect()).unwrap();
        is_separate(&s, &u).unwrap()
    };
    let t1 = sep(&["1"]);
    assert!(t1.separate);
    assert_eq!(t1.distance, Some(r(2, 5)));
    assert_eq!(t1.diameter, r(1, 5));

    let t2 = sep(&["2"]);
    assert!(!t2.separate);
    assert_eq!(t2.distance, Some(Real::zero()));

    assert!(!sep(&["22", "23"]).separate);
    assert_eq!(sep(&[""]).distance, None);
}

#[test]
fn sigma_lr_examples() {
    let s = set145();
    assert_eq!(sigma_lr_membership(&s.ts, &w("311")), (true, false));
    // 233 = 23·3 with 2 touching, so its left end is a touching point too
    assert_eq!(sigma_lr_membership(&s.ts, &w("233")), (true, true));
    assert_eq!(sigma_lr_membership(&s.ts, &w("232")), (false, true));
    assert_eq!(sigma_lr_membership(&s.ts, &w("1")), (false, false));
}

#[test]
fn mirror_swaps_alpha_and_beta() {
    let s = six_two_touches();
    let m = s.mirror();
    assert_eq!(m.ts, s.ts.mirror());
    assert_eq!((m.ts.alpha, m.ts.beta), (1, 2));
    assert_eq!(m.ts.sigma_t, BTreeSet::from([2, 5]));
    assert_eq!(m.mirror().spec, s.spec);
}

#[test]
fn canonical_merges_complete_sibling_families() {
    let n = 3;
    let ws = vec![w("11"), w("12"), w("13"), w("2"), w("31"), w("32")];
    assert_eq!(canonical(&ws, n), vec![w("1"), w("2"), w("31"), w("32")]);
    let ws = vec![w("1"), w("2"), w("31"), w("32"), w("33")];
    assert_eq!(canonical(&ws, n), vec![Word::empty()]);
    assert_eq!(complement(&[w("2")], n), vec![w("1"), w("3")]);
}

#[test]
fn range_cover_matches_brute_force() {
    let n = 3;
    let depth = 4;
    let leaves = all_words(n, depth);
    for u in all_words(n, 2) {
        for v in all_words(n, 2) {
            let cover = range_cover(&u, &v, n);
            for x in &leaves {
                // the leaf's coding range sits between u·1^∞ and v·n^∞
                let lo_ok = (x.prefix(2) > u) || x.prefix(2) == u;
                let hi_ok = (x.prefix(2) < v) || x.prefix(2) == v;
                let inside = cover.iter().any(|c| c.is_prefix_of(x));
                assert_eq!(inside, lo_ok && hi_ok, "u={u} v={v} x={x}");
            }
        }
    }
}

fn all_words(n: usize, m: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..m {
        out = out.iter().flat_map(|w| (1..=n).map(move |l| w.push(l))).collect();
    }
    out
}

/// `T^(1)_c`, the level-one component with block index `c`.
fn comp1(s: &Ifs, c: usize) -> Vec<Word> {
    s.ts.block(c).iter().map(|&l| Word::letter(l)).collect()
}

/// Touching specs with `n ∈ 3..6` and ratio `1/m`.
fn touching_spec() -> impl Strategy<Value = Ifs> {
    (3usize..=6)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n - 1), (n as i64 + 1)..12))
        .prop_filter("one touch and one gap", |(_, t, _)| {
            t.iter().any(|&x| x) && t.iter().any(|&x| !x)
        })
        .prop_map(|(n, t, m)| equal_ratio(n, m, &t))
}

/// Touching specs with unequal rational ratios.
fn mixed_spec() -> impl Strategy<Value = Ifs> {
    (3usize..=5)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(any::<bool>(), n - 1),
                prop::collection::vec(2i64..5, n),
            )
        })
        .prop_filter("one touch and one gap", |(t, _)| {
            t.iter().any(|&x| x) && t.iter().any(|&x| !x)
        })
        .prop_map(|(touch, dens)| {
            let n = dens.len();
            let ratios: Vec<Real> = dens.iter().map(|&d| r(1, d * n as i64)).collect();
            let sum = ratios.iter().fold(Real::zero(), |a, b| &a + b);
            let gaps = touch.iter().filter(|&&t| !t).count() as i64;
            let g = (&Real::one() - &sum).checked_div(&Real::int(gaps)).unwrap();
            let mut t = Real::zero();
            let mut ts = Vec::new();
            for i in 0..n {
                ts.push(t.clone());
                t = &t + &ratios[i];
                if i + 1 < n && !touch[i] {
                    t = &t + &g;
                }
            }
            let ratios = dens.iter().map(|&d| q(1, d * n as i64)).collect();
            Ifs::new(validate(ratios, ts, Role::Touching).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratios_and_gaps_fill_the_unit_interval(s in prop_oneof![touching_spec(), mixed_spec()]) {
        let gaps = (1..s.n()).fold(Real::zero(), |acc, a| &acc + s.spec.gap(a));
        prop_assert_eq!(&s.spec.ratio_sum() + &gaps, Real::one());
    }

    #[test]
    fn subcylinders_nest(s in mixed_spec(), seed in prop::collection::vec(1usize..6, 1..6), ext in prop::collection::vec(1usize..6, 1..4)) {
        let n = s.n();
        let u = Word::from_letters(&seed.iter().map(|l| (l - 1) % n + 1).collect::<Vec<_>>());
        let v = u.concat(&Word::from_letters(&ext.iter().map(|l| (l - 1) % n + 1).collect::<Vec<_>>()));
        let (a, b) = s.spec.cylinder_interval(&u).unwrap();
        let (c, d) = s.spec.cylinder_interval(&v).unwrap();
        prop_assert!(a.le(&c).unwrap() && d.le(&b).unwrap());
    }

    #[test]
    fn blocks_are_maximal_touching_runs(s in prop_oneof![touching_spec(), mixed_spec()]) {
        let flat: Vec<usize> = s.ts.blocks.iter().flatten().copied().collect();
        prop_assert_eq!(flat, (1..=s.n()).collect::<Vec<_>>());
        for b in &s.ts.blocks {
            for pair in b.windows(2) {
                prop_assert!(s.ts.is_touching(pair[0]));
            }
        }
        for pair in s.ts.blocks.windows(2) {
            prop_assert!(!s.ts.is_touching(*pair[0].last().unwrap()));
        }
    }

    #[test]
    fn separation_matches_closed_form(s in prop_oneof![touching_spec(), mixed_spec()],
                                      letters in prop::collection::vec(1usize..7, 0..=4),
                                      c in 1usize..4) {
        // Ψ_w(T^(1)_c) is T-separate unless its left end is a touching
        // point (c = 1 and w ∈ Σ*_L) or its right end is (c = c1 and w ∈ Σ*_R)
        let n = s.n();
        let c = (c - 1) % s.ts.c1() + 1;
        let word = Word::from_letters(&letters.iter().map(|l| (l - 1) % n + 1).collect::<Vec<_>>());
        let set = CylinderUnion::new(Side::T, comp1(&s, c)).unwrap().prefixed(&word);
        let geometric = is_separate(&s, &set).unwrap().separate;
        let (in_l, in_r) = if word.is_empty() { (false, false) } else { sigma_lr_membership(&s.ts, &word) };
        let closed = !((c == 1 && in_l) || (c == s.ts.c1() && in_r));
        prop_assert_eq!(geometric, closed, "w = {}, c = {}", word, c);
    }

    #[test]
    fn separation_distance_matches_brute_force(s in mixed_spec(), pick in prop::collection::vec(0usize..1000, 1..4)) {
        // distance from a union of level-2 cylinders to the other level-4
        // cylinders, by direct interval comparison
        let n = s.n();
        let level2 = all_words(n, 2);
        let chosen: BTreeSet<Word> = pick.iter().map(|i| level2[i % level2.len()].clone()).collect();
        let set = CylinderUnion::new(Side::T, chosen.iter().cloned().collect()).unwrap();
        let sep = is_separate(&s, &set).unwrap();
        let mut best: Option<Real> = None;
        for x in all_words(n, 4) {
            if chosen.contains(&x.prefix(2)) {
                continue;
            }
            let (xl, xh) = s.spec.cylinder_interval(&x).unwrap();
            for y in &chosen {
                let (yl, yh) = s.spec.cylinder_interval(y).unwrap();
                let d = if xh.le(&yl).unwrap() { &yl - &xh } else { &xl - &yh };
                best = Some(match best { Some(b) => b.try_min(&d).unwrap().clone(), None => d });
            }
        }
        prop_assert_eq!(sep.distance, best);
    }
}
