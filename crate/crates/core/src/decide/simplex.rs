use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Whether `{x ≥ 0 : A x = b}` is nonempty over the rationals.
///
/// Phase one of the simplex method on an exact tableau, with Bland's rule
/// so that it terminates on degenerate systems.
pub fn feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    let m = a.len();
    let cols = a.first().map_or(0, Vec::len);
    // columns: originals, then one artificial per row, then the right-hand side
    let width = cols + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (r, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut line = vec![BigRational::zero(); width];
        for (c, v) in row.iter().enumerate() {
            line[c] = if flip { -v.clone() } else { v.clone() };
        }
        line[cols + r] = BigRational::from_integer(1.into());
        line[width - 1] = if flip { -rhs.clone() } else { rhs.clone() };
        t.push(line);
    }
    let mut basis: Vec<usize> = (cols..cols + m).collect();
    let artificial = |c: usize| c >= cols && c < cols + m;
    loop {
        // reduced cost of column c under the cost "sum of artificials"
        let entering = (0..cols + m).find(|&c| {
            let base = if artificial(c) { 1 } else { 0 };
            let mut rc = BigRational::from_integer(base.into());
            for (r, &bc) in basis.iter().enumerate() {
                if artificial(bc) {
                    rc -= &t[r][c];
                }
            }
            rc.is_negative()
        });
        let Some(c) = entering else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..m {
            if t[r][c].is_positive() {
                let ratio = &t[r][width - 1] / &t[r][c];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        // the phase-one objective is bounded below, so some row must leave
        let (r, _) = leave.expect("bounded phase one");
        let pivot = t[r][c].clone();
        for v in t[r].iter_mut() {
            *v /= &pivot;
        }
        let prow = t[r].clone();
        for (rr, line) in t.iter_mut().enumerate() {
            if rr != r && !line[c].is_zero() {
                let f = line[c].clone();
                for (v, p) in line.iter_mut().zip(&prow) {
                    *v -= &f * p;
                }
            }
        }
        basis[r] = c;
    }
    basis
        .iter()
        .enumerate()
        .all(|(r, &bc)| !artificial(bc) || t[r][width - 1].is_zero())
}
