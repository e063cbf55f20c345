use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exactnum::{BaseKey, ExponentVector, FactorConfig, NumError};
use crate::ifscore::{Ifs, Word};

use super::simplex::feasible;
use super::witness::{admissible_last, SubstitutabilityWitness, WitnessSide};
use super::Budget;

/// Result of a bounded witness search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(SubstitutabilityWitness),
    /// No witness exists: the linear system has no rational solution.
    Infeasible,
    /// The budget ran out before a witness was found.
    Exhausted,
}

struct Lattice {
    vectors: Vec<Vec<i64>>,
}

impl Lattice {
    fn new(ifs: &Ifs, cfg: &FactorConfig) -> Result<Self, NumError> {
        let evs: Vec<ExponentVector> = ifs
            .spec
            .ratios()
            .iter()
            .map(|r| r.exponent_vector(cfg))
            .collect::<Result<_, _>>()?;
        let keys: BTreeSet<BaseKey> = evs.iter().flat_map(|e| e.keys().cloned()).collect();
        let vectors = evs
            .iter()
            .map(|e| keys.iter().map(|k| e.get(k)).collect())
            .collect();
        Ok(Lattice { vectors })
    }

    fn of(&self, l: usize) -> &[i64] {
        &self.vectors[l - 1]
    }

    fn dim(&self) -> usize {
        self.vectors[0].len()
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// The integer `c` with `r = c·base`, if any.
fn multiple_of(r: &[i64], base: &[i64]) -> Option<i64> {
    let pos = base.iter().position(|&b| b != 0)?;
    if r[pos] % base[pos] != 0 {
        return None;
    }
    let c = r[pos] / base[pos];
    r.iter().zip(base).all(|(&x, &b)| x == c * b).then_some(c)
}

struct Problem<'a> {
    ifs: &'a Ifs,
    side: WitnessSide,
    letter: usize,
    anchor: usize,
    letters: Vec<usize>,
    target: Vec<i64>,
}

impl<'a> Problem<'a> {
    fn new(ifs: &'a Ifs, lat: &Lattice, side: WitnessSide, i: usize) -> Self {
        let n = ifs.n();
        let (anchor, plus, minus) = match side {
            WitnessSide::Left => (1, i + 1, i),
            WitnessSide::Right => (n, i, i + 1),
        };
        // powers of the anchor letter inside j fold into k'
        let letters = (1..=n).filter(|&t| t != anchor).collect();
        let target = lat
            .of(plus)
            .iter()
            .zip(lat.of(minus))
            .map(|(a, b)| a - b)
            .collect();
        Problem {
            ifs,
            side,
            letter: i,
            anchor,
            letters,
            target,
        }
    }

    fn admissible(&self, l: usize) -> bool {
        admissible_last(self.ifs, self.side, l)
    }

    /// Rational relaxation: `Σ m_t e_t − c·e_anchor = target`, `m ≥ 0`,
    /// at least one admissible letter.
    fn relaxation_feasible(&self, lat: &Lattice) -> bool {
        let adm: Vec<bool> = self.letters.iter().map(|&t| self.admissible(t)).collect();
        if !adm.iter().any(|&a| a) {
            return false;
        }
        let dim = lat.dim();
        let cols = self.letters.len() + 3;
        let mut a = Vec::with_capacity(dim + 1);
        let mut b = Vec::with_capacity(dim + 1);
        for r in 0..dim {
            let mut row = vec![BigRational::zero(); cols];
            for (c, &t) in self.letters.iter().enumerate() {
                row[c] = rat(lat.of(t)[r]);
            }
            let e = lat.of(self.anchor)[r];
            row[cols - 3] = rat(-e);
            row[cols - 2] = rat(e);
            a.push(row);
            b.push(rat(self.target[r]));
        }
        let mut row = vec![BigRational::zero(); cols];
        for (c, &ok) in adm.iter().enumerate() {
            if ok {
                row[c] = rat(1);
            }
        }
        row[cols - 1] = rat(-1);
        a.push(row);
        b.push(rat(1));
        feasible(&a, &b)
    }

    /// Ascending multiset with the largest admissible letter moved last.
    fn arrange(&self, mut letters: Vec<usize>) -> Option<Word> {
        letters.sort_unstable();
        let pos = letters.iter().rposition(|&l| self.admissible(l))?;
        let last = letters.remove(pos);
        letters.push(last);
        Some(Word::from_letters(&letters))
    }

    fn search(&self, lat: &Lattice, budget: &Budget) -> SearchOutcome {
        if !self.relaxation_feasible(lat) {
            return SearchOutcome::Infeasible;
        }
        let anchor = lat.of(self.anchor).to_vec();
        // arena of states: (sum vector, has admissible letter), parent, letter
        let mut arena: Vec<(usize, usize)> = vec![(usize::MAX, 0)];
        let mut seen: HashMap<(Vec<i64>, bool), usize> = HashMap::new();
        let zero = vec![0i64; lat.dim()];
        seen.insert((zero.clone(), false), 0);
        let mut frontier: Vec<(Vec<i64>, bool, usize)> = vec![(zero, false, 0)];
        for _len in 1..=budget.letters {
            let mut next = Vec::new();
            for (v, adm, idx) in &frontier {
                for &t in &self.letters {
                    let w: Vec<i64> = v.iter().zip(lat.of(t)).map(|(a, b)| a + b).collect();
                    let a = *adm || self.admissible(t);
                    let key = (w, a);
                    if seen.contains_key(&key) {
                        continue;
                    }
                    if arena.len() >= budget.states {
                        return SearchOutcome::Exhausted;
                    }
                    arena.push((*idx, t));
                    let id = arena.len() - 1;
                    seen.insert(key.clone(), id);
                    next.push((key.0, key.1, id));
                }
            }
            let mut found: Vec<SubstitutabilityWitness> = Vec::new();
            for (v, adm, id) in &next {
                if !adm {
                    continue;
                }
                let r: Vec<i64> = v.iter().zip(&self.target).map(|(a, b)| a - b).collect();
                let Some(c) = multiple_of(&r, &anchor) else { continue };
                // Σ e_t = target + c·e_anchor with c = k − k'
                let (k, kp) = if c >= 0 { (c, 0) } else { (0, -c) };
                if k.max(kp) as u64 > budget.exponent {
                    continue;
                }
                let mut ls = Vec::new();
                let mut cur = *id;
                while cur != 0 {
                    let (p, t) = arena[cur];
                    ls.push(t);
                    cur = p;
                }
                if let Some(j) = self.arrange(ls) {
                    found.push(SubstitutabilityWitness {
                        side: self.side,
                        letter: self.letter,
                        k: k as u32,
                        k_prime: kp as u32,
                        j,
                    });
                }
            }
            if let Some(best) = found.into_iter().min_by(|a, b| {
                (a.k + a.k_prime, &a.j).cmp(&(b.k + b.k_prime, &b.j))
            }) {
                return SearchOutcome::Found(best);
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        SearchOutcome::Exhausted
    }
}

/// Bounded search for a witness on one side.
pub fn search_side(
    ifs: &Ifs,
    side: WitnessSide,
    i: usize,
    budget: &Budget,
    cfg: &FactorConfig,
) -> Result<SearchOutcome, NumError> {
    let lat = Lattice::new(ifs, cfg)?;
    Ok(Problem::new(ifs, &lat, side, i).search(&lat, budget))
}

/// Witness search for touching letter `i`, left side first.
pub fn substitutable(
    ifs: &Ifs,
    i: usize,
    budget: &Budget,
    cfg: &FactorConfig,
) -> Result<SearchOutcome, NumError> {
    let lat = Lattice::new(ifs, cfg)?;
    let mut infeasible = true;
    for side in [WitnessSide::Left, WitnessSide::Right] {
        match Problem::new(ifs, &lat, side, i).search(&lat, budget) {
            SearchOutcome::Found(w) => return Ok(SearchOutcome::Found(w)),
            SearchOutcome::Infeasible => {}
            SearchOutcome::Exhausted => infeasible = false,
        }
    }
    Ok(if infeasible {
        SearchOutcome::Infeasible
    } else {
        SearchOutcome::Exhausted
    })
}
