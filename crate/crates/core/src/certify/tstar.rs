use crate::ifscore::{canonical, sigma_lr_membership, Ifs, Word};
use crate::patches::{left_patch, right_patch};

use super::CertifyError;

/// A set of the basic classes, placed by a cylinder map `Ψ_w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Member {
    /// `T^(1)_k`, the `k`-th first-level component.
    One(usize),
    /// `R_0(T_a) ∪ L_0(T_{a+1})`.
    Two(usize),
    /// `R_q(T_a) ∪ L_p(T_{a+1})`.
    Three(usize),
}

/// The cylinders of a member set.
pub fn member_words(ifs: &Ifs, m: Member, p: u64, q: u64) -> Vec<Word> {
    let n = ifs.n();
    match m {
        Member::One(k) => ifs.ts.block(k).iter().map(|&l| Word::letter(l)).collect(),
        Member::Two(a) => right_patch(ifs, &Word::letter(a), 0)
            .union(&left_patch(ifs, &Word::letter(a + 1), 0), n)
            .into_words(),
        Member::Three(a) => right_patch(ifs, &Word::letter(a), q as usize)
            .union(&left_patch(ifs, &Word::letter(a + 1), p as usize), n)
            .into_words(),
    }
}

/// The maximal sets `Ψ_x(T^(1)_k)` contained in the canonical antichain
/// `words`, in left-to-right order.
fn parts(ifs: &Ifs, words: &[Word], x: &Word, out: &mut Vec<(Word, usize)>) {
    let c1 = ifs.ts.c1();
    if words.iter().any(|w| w.is_prefix_of(x)) {
        out.extend((1..=c1).map(|k| (x.clone(), k)));
        return;
    }
    for k in 1..=c1 {
        let block = ifs.ts.block(k);
        if block.iter().all(|&l| words.binary_search(&x.push(l)).is_ok()) {
            out.push((x.clone(), k));
            continue;
        }
        for &l in block {
            let xl = x.push(l);
            let lo = words.partition_point(|w| *w < xl);
            if words.get(lo).is_some_and(|w| xl.is_prefix_of(w)) {
                let hi = lo + words[lo..].partition_point(|w| xl.is_prefix_of(w));
                parts(ifs, &words[lo..hi], &xl, out);
            }
        }
    }
}

fn residue(ifs: &Ifs, x: &Word, k: usize) -> Vec<Word> {
    ifs.ts.block(k).iter().map(|&l| x.push(l)).collect()
}

/// Splits a `T`-separate cylinder union into disjoint placed members,
/// `A = ⋃ Ψ_w(member)`, using only members of the classes that are
/// themselves `T`-separate.
///
/// Touching pairs `Ψ_{x a n^s}(T^(1)_{c_1})`, `Ψ_{x (a+1) 1^t}(T^(1)_1)` are
/// merged into `Ψ_x` of a second-class member when `s = t = 0`, or of a
/// third-class member plus the two patch differences when `s ≤ q`, `t ≤ p`.
pub fn tstar_decompose(
    ifs: &Ifs,
    set: &[Word],
    p: u64,
    q: u64,
) -> Result<Vec<(Word, Member)>, CertifyError> {
    let words = canonical(set, ifs.n());
    if words.is_empty() {
        return Ok(Vec::new());
    }
    let mut ps = Vec::new();
    parts(ifs, &words, &Word::empty(), &mut ps);
    merge_parts(ifs, &ps, p, q)
}

/// Pairs up the touching parts of a left-to-right list of parts
/// `Ψ_x(T^(1)_k)` and sorts the resulting members by position.
pub(crate) fn merge_parts(
    ifs: &Ifs,
    ps: &[(Word, usize)],
    p: u64,
    q: u64,
) -> Result<Vec<(Word, Member)>, CertifyError> {
    let n = ifs.n();
    let c1 = ifs.ts.c1();
    let mut out = Vec::new();
    let mut idx = 0;
    while idx < ps.len() {
        let (w, k) = &ps[idx];
        let (in_l, in_r) = sigma_lr_membership(&ifs.ts, w);
        if *k == 1 && in_l {
            return Err(CertifyError::Unrecognized {
                reason: "left part touches outside the set".into(),
                residue: residue(ifs, w, *k),
            });
        }
        if *k != c1 || !in_r {
            out.push((w.clone(), Member::One(*k)));
            idx += 1;
            continue;
        }
        // w = x·a·n^s with a touching; its partner starts at x·(a+1)·1^t
        let (head, s) = w.strip_trailing(n);
        let a = head.last().expect("touching letter");
        let x = head.prefix(head.len() - 1);
        let start = x.push(a + 1);
        let partner = ps.get(idx + 1).and_then(|(v, kk)| {
            let rest = v.strip_prefix(&start)?;
            (*kk == 1 && rest.letters().all(|l| l == 1)).then_some(rest.len())
        });
        let Some(t) = partner else {
            return Err(CertifyError::Unrecognized {
                reason: "right part touches outside the set".into(),
                residue: residue(ifs, w, *k),
            });
        };
        if s == 0 && t == 0 {
            out.push((x, Member::Two(a)));
        } else if s as u64 <= q && t as u64 <= p {
            let xa = x.push(a);
            if (s as u64) < q {
                let d = right_patch(ifs, &xa, s).difference(&right_patch(ifs, &xa, q as usize), n);
                out.extend(tstar_decompose(ifs, d.words(), p, q)?);
            }
            if (t as u64) < p {
                let d = left_patch(ifs, &start, t).difference(&left_patch(ifs, &start, p as usize), n);
                out.extend(tstar_decompose(ifs, d.words(), p, q)?);
            }
            out.push((x, Member::Three(a)));
        } else {
            return Err(CertifyError::ScanDepth {
                needed: s.max(t),
                p,
                q,
            });
        }
        idx += 2;
    }
    out.sort_by_cached_key(|(w, m)| w.concat(&member_words(ifs, *m, p, q)[0]));
    Ok(out)
}
