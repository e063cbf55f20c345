use std::collections::BTreeMap;

use crate::decide::{SubstitutabilityWitness, Verdict, WitnessSide};
use crate::exactnum::{mult_dependence, ExactRatio, FactorConfig};
use crate::ifscore::{canonical_dust, intersect, point_disjoint, Ifs, Word};
use crate::patches::{left_patch, right_patch};

use super::serial::spec_digest;
use super::tstar::{merge_parts, tstar_decompose, Member};
use super::validate::validate;
use super::{Certificate, CertifyError, Edge, Piece, Vertex, VertexId, CERTIFICATE_VERSION};

/// Extra multiples of `(p₀, q₀)` tried when a decomposition needs a deeper
/// scan than the smallest admissible `(p, q)` allows.
const EXTRA_MULTIPLES: u64 = 6;
const MAX_MULTIPLE: u64 = 64;

fn union(a: Vec<Word>, b: Vec<Word>) -> Vec<Word> {
    let mut out = a;
    out.extend(b);
    out.sort();
    out
}

fn restrictions_hold(ifs: &Ifs, w: &SubstitutabilityWitness, p: usize, q: usize) -> bool {
    let i = w.letter;
    let n = ifs.n();
    let kp = w.k_prime as usize;
    match w.side {
        WitnessSide::Left => {
            let z = Word::letter(i).push_repeat(n, 2 * q).concat(&w.j);
            let a2 = left_patch(ifs, &z, kp);
            let r3q = right_patch(ifs, &Word::letter(i), 3 * q);
            let rq = right_patch(ifs, &Word::letter(i), q);
            let dij = left_patch(ifs, &Word::letter(i).concat(&w.j), kp);
            point_disjoint(&ifs.ts, a2.words(), r3q.words())
                && intersect(a2.words(), r3q.words()).is_empty()
                && intersect(dij.words(), rq.words()).is_empty()
        }
        WitnessSide::Right => {
            let z = Word::letter(i + 1).push_repeat(1, 2 * p).concat(&w.j);
            let a2 = right_patch(ifs, &z, kp);
            let l3p = left_patch(ifs, &Word::letter(i + 1), 3 * p);
            let lp = left_patch(ifs, &Word::letter(i + 1), p);
            let dij = right_patch(ifs, &Word::letter(i + 1).concat(&w.j), kp);
            point_disjoint(&ifs.ts, a2.words(), l3p.words())
                && intersect(a2.words(), l3p.words()).is_empty()
                && intersect(dij.words(), lp.words()).is_empty()
        }
    }
}

fn base_pq(ifs: &Ifs, cfg: &FactorConfig) -> Result<(u64, u64), CertifyError> {
    mult_dependence(ifs.spec.ratio(1), ifs.spec.ratio(ifs.n()), cfg)?
        .ok_or_else(|| CertifyError::Precondition("log ρ_1 / log ρ_n is irrational".into()))
}

fn smallest_multiple(
    ifs: &Ifs,
    witnesses: &[SubstitutabilityWitness],
    p0: u64,
    q0: u64,
    from: u64,
) -> Result<u64, CertifyError> {
    let need = witnesses.iter().map(|w| w.size() as u64).max().unwrap_or(0);
    let mut m = from.max(1);
    while m * p0 <= need || m * q0 <= need {
        m += 1;
    }
    while m <= MAX_MULTIPLE {
        let (p, q) = ((m * p0) as usize, (m * q0) as usize);
        if witnesses.iter().all(|w| restrictions_hold(ifs, w, p, q)) {
            return Ok(m);
        }
        m += 1;
    }
    Err(CertifyError::NoPq(MAX_MULTIPLE))
}

/// The smallest `(p, q) = m·(p₀, q₀)` with `ρ_1^p = ρ_n^q`, `p, q` above
/// every `k′ + |j|`, and the patch disjointness conditions holding exactly.
pub fn choose_pq(
    ifs: &Ifs,
    witnesses: &[SubstitutabilityWitness],
    cfg: &FactorConfig,
) -> Result<(u64, u64), CertifyError> {
    let (p0, q0) = base_pq(ifs, cfg)?;
    let m = smallest_multiple(ifs, witnesses, p0, q0, 1)?;
    Ok((m * p0, m * q0))
}

/// Vertex and edge construction for one system, one witness per touching
/// letter and one `(p, q)`.
pub struct Builder {
    pub ifs: Ifs,
    pub dust: Ifs,
    pub p: u64,
    pub q: u64,
    witnesses: BTreeMap<usize, SubstitutabilityWitness>,
}

impl Builder {
    pub fn new(
        ifs: &Ifs,
        witnesses: &[SubstitutabilityWitness],
        p: u64,
        q: u64,
    ) -> Result<Builder, CertifyError> {
        if ifs.ts.sigma_t.is_empty() {
            return Err(CertifyError::Precondition("no touching letter".into()));
        }
        let mut map = BTreeMap::new();
        for w in witnesses {
            if !ifs.ts.is_touching(w.letter) {
                return Err(CertifyError::Precondition(format!("witness for non-touching letter {}", w.letter)));
            }
            if !w.verify(ifs) {
                return Err(CertifyError::Precondition(format!("witness {w} does not hold")));
            }
            map.entry(w.letter).or_insert_with(|| w.clone());
        }
        if let Some(i) = ifs.ts.sigma_t.iter().find(|i| !map.contains_key(i)) {
            return Err(CertifyError::Precondition(format!("no witness for touching letter {i}")));
        }
        let dust = Ifs::new(canonical_dust(ifs.spec.ratios())?);
        Ok(Builder {
            ifs: ifs.clone(),
            dust,
            p,
            q,
            witnesses: map,
        })
    }

    pub fn witnesses(&self) -> Vec<SubstitutabilityWitness> {
        self.witnesses.values().cloned().collect()
    }

    fn n(&self) -> usize {
        self.ifs.n()
    }

    fn l(&self, w: &Word, k: usize) -> Vec<Word> {
        left_patch(&self.ifs, w, k).into_words()
    }

    fn r(&self, w: &Word, k: usize) -> Vec<Word> {
        right_patch(&self.ifs, w, k).into_words()
    }

    fn pq(&self) -> (usize, usize) {
        (self.p as usize, self.q as usize)
    }

    /// All `1 + c_1 + 3|Σ_T|` vertices.
    pub fn vertices(&self) -> Vec<Vertex> {
        let (p, q) = self.pq();
        let plain = |id, words: Vec<Word>| Vertex {
            id,
            d_words: words.clone(),
            t_words: words,
            witness: None,
        };
        let mut out = vec![plain(VertexId::Whole, vec![Word::empty()])];
        for c in 1..=self.ifs.ts.c1() {
            let words = self.ifs.ts.block(c).iter().map(|&l| Word::letter(l)).collect();
            out.push(plain(VertexId::Comp1(c), words));
        }
        for (&i, w) in &self.witnesses {
            let (a, b) = (Word::letter(i), Word::letter(i + 1));
            out.push(plain(VertexId::Touch2(i), union(self.r(&a, 0), self.l(&b, 0))));
            out.push(plain(VertexId::Touch3(i), union(self.r(&a, q), self.l(&b, p))));
            let (k, kp) = (w.k as usize, w.k_prime as usize);
            let (t_words, d_words) = match w.side {
                WitnessSide::Left => {
                    let rq = self.r(&a, q);
                    let t = [rq.clone(), self.l(&b, k)].concat();
                    let d = [rq, self.l(&a.concat(&w.j), kp)].concat();
                    (t, d)
                }
                WitnessSide::Right => {
                    let lp = self.l(&b, p);
                    let t = [self.r(&a, k), lp.clone()].concat();
                    let d = [self.r(&b.concat(&w.j), kp), lp].concat();
                    (t, d)
                }
            };
            out.push(Vertex {
                id: VertexId::Touch4(i),
                t_words,
                d_words,
                witness: Some(w.clone()),
            });
        }
        out.sort_by_key(|v| v.id);
        out
    }

    fn target(m: Member) -> VertexId {
        match m {
            Member::One(k) => VertexId::Comp1(k),
            Member::Two(a) => VertexId::Touch2(a),
            Member::Three(a) => VertexId::Touch3(a),
        }
    }

    /// A piece placed by `Ψ_t` on the touching side and `Φ_d` on the dust.
    fn placed(&self, target: VertexId, t: &Word, d: &Word) -> Piece {
        Piece {
            target,
            ratio: self.ifs.spec.word_ratio(t),
            t_map: self.ifs.spec.word_map(t),
            d_map: self.dust.spec.word_map(d),
        }
    }

    fn tstar(&self, set: &[Word], t: &Word, d: &Word) -> Result<Vec<Piece>, CertifyError> {
        let parts = tstar_decompose(&self.ifs, set, self.p, self.q)?;
        Ok(parts
            .into_iter()
            .map(|(w, m)| self.placed(Self::target(m), &t.concat(&w), &d.concat(&w)))
            .collect())
    }

    fn diff(&self, a: &[Word], b: &[Word]) -> Vec<Word> {
        crate::ifscore::difference(a, b, self.n())
    }

    /// `Ψ_u ∘ Ψ_v^{-1}` on both sides, targeting `target`.
    fn conjugated(&self, target: VertexId, u: &Word, v: &Word) -> Result<Piece, CertifyError> {
        let t = self.ifs.spec.word_map(u).compose(&self.ifs.spec.word_map(v).inverse()?);
        let d = self.dust.spec.word_map(u).compose(&self.dust.spec.word_map(v).inverse()?);
        Ok(Piece {
            target,
            ratio: ExactRatio::new(t.scale.clone())?,
            t_map: t,
            d_map: d,
        })
    }

    /// The edge leaving `v`.
    pub fn decompose(&self, v: VertexId) -> Result<Edge, CertifyError> {
        let e = Word::empty();
        let (p, q) = self.pq();
        let pieces = match v {
            VertexId::Whole => self.tstar(std::slice::from_ref(&e), &e, &e)?,
            VertexId::Comp1(c) => {
                let c1 = self.ifs.ts.c1();
                let parts: Vec<(Word, usize)> = self
                    .ifs
                    .ts
                    .block(c)
                    .iter()
                    .flat_map(|&l| (1..=c1).map(move |k| (Word::letter(l), k)))
                    .collect();
                merge_parts(&self.ifs, &parts, self.p, self.q)?
                    .into_iter()
                    .map(|(w, m)| self.placed(Self::target(m), &w, &w))
                    .collect()
            }
            VertexId::Touch2(i) => {
                let (a, b) = (Word::letter(i), Word::letter(i + 1));
                let mut out = self.tstar(&self.diff(&self.r(&a, 0), &self.r(&a, q)), &e, &e)?;
                out.extend(self.tstar(&self.diff(&self.l(&b, 0), &self.l(&b, p)), &e, &e)?);
                out.push(self.placed(VertexId::Touch3(i), &e, &e));
                out
            }
            VertexId::Touch3(i) | VertexId::Touch4(i) => {
                let w = self
                    .witnesses
                    .get(&i)
                    .ok_or_else(|| CertifyError::Precondition(format!("no witness for {i}")))?;
                self.touch_pieces(v, w)?
            }
        };
        Ok(Edge { source: v, pieces })
    }

    fn touch_pieces(&self, v: VertexId, w: &SubstitutabilityWitness) -> Result<Vec<Piece>, CertifyError> {
        let e = Word::empty();
        let n = self.n();
        let (p, q) = self.pq();
        let i = w.letter;
        let (k, kp) = (w.k as usize, w.k_prime as usize);
        let (a, b) = (Word::letter(i), Word::letter(i + 1));
        let four = matches!(v, VertexId::Touch4(_));
        let mut out = Vec::new();
        match w.side {
            WitnessSide::Left => {
                let z = a.push_repeat(n, 2 * q).concat(&w.j);
                let a2 = self.l(&z, kp);
                let a1 = self.diff(&self.r(&a, q), &union(a2, self.r(&a, 3 * q)));
                out.extend(self.tstar(&a1, &e, &e)?);
                let d2 = if four {
                    a.concat(&w.j).push_repeat(1, 2 * p + kp)
                } else {
                    b.push_repeat(1, 2 * p + k)
                };
                out.push(self.placed(VertexId::Comp1(1), &z.push_repeat(1, kp), &d2));
                out.push(self.conjugated(VertexId::Touch4(i), &a.push_repeat(n, 2 * q), &a)?);
                if four {
                    let x = self.diff(&self.l(&e, 0), &self.l(&e, 2 * p));
                    out.extend(self.tstar(&x, &b.push_repeat(1, k), &a.concat(&w.j).push_repeat(1, kp))?);
                } else {
                    out.extend(self.tstar(&self.diff(&self.l(&b, p), &self.l(&b, 2 * p + k)), &e, &e)?);
                }
            }
            WitnessSide::Right => {
                let z = b.push_repeat(1, 2 * p).concat(&w.j);
                let a2 = self.r(&z, kp);
                let a1 = self.diff(&self.l(&b, p), &union(a2, self.l(&b, 3 * p)));
                if four {
                    let x = self.diff(&self.r(&e, 0), &self.r(&e, 2 * q));
                    out.extend(self.tstar(&x, &a.push_repeat(n, k), &b.concat(&w.j).push_repeat(n, kp))?);
                } else {
                    out.extend(self.tstar(&self.diff(&self.r(&a, q), &self.r(&a, 2 * q + k)), &e, &e)?);
                }
                out.push(self.conjugated(VertexId::Touch4(i), &b.push_repeat(1, 2 * p), &b)?);
                let d2 = if four {
                    b.concat(&w.j).push_repeat(n, 2 * q + kp)
                } else {
                    a.push_repeat(n, 2 * q + k)
                };
                out.push(self.placed(VertexId::Comp1(self.ifs.ts.c1()), &z.push_repeat(n, kp), &d2));
                out.extend(self.tstar(&a1, &e, &e)?);
            }
        }
        Ok(out)
    }

    /// Vertices, edges and digests, without validation.
    pub fn assemble(&self) -> Result<Certificate, CertifyError> {
        let vertices = self.vertices();
        let edges = vertices
            .iter()
            .map(|v| self.decompose(v.id))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Certificate {
            version: CERTIFICATE_VERSION,
            spec_digest: spec_digest(&self.ifs.spec),
            dust_digest: spec_digest(&self.dust.spec),
            p: self.p,
            q: self.q,
            witnesses: self.witnesses(),
            vertices,
            edges,
        })
    }
}

/// Builds and validates a certificate from one witness per touching
/// letter. When a decomposition needs a deeper scan than the chosen
/// `(p, q)`, larger multiples are tried before giving up.
pub fn certify_witnesses(
    ifs: &Ifs,
    witnesses: &[SubstitutabilityWitness],
    cfg: &FactorConfig,
) -> Result<Certificate, CertifyError> {
    let (p0, q0) = base_pq(ifs, cfg)?;
    let first = smallest_multiple(ifs, witnesses, p0, q0, 1)?;
    let mut m = first;
    loop {
        let builder = Builder::new(ifs, witnesses, m * p0, m * q0)?;
        match builder.assemble() {
            Ok(cert) => {
                validate(&cert, ifs)?;
                return Ok(cert);
            }
            Err(err @ (CertifyError::ScanDepth { .. } | CertifyError::Unrecognized { .. })) => {
                if m >= first + EXTRA_MULTIPLES {
                    return Err(err);
                }
                m = smallest_multiple(ifs, witnesses, p0, q0, m + 1)?;
            }
            Err(err) => return Err(err),
        }
    }
}

/// The certificate for an `Equivalent` verdict.
pub fn build_certificate(ifs: &Ifs, verdict: &Verdict, cfg: &FactorConfig) -> Result<Certificate, CertifyError> {
    if !verdict.is_equivalent() {
        return Err(CertifyError::Precondition(format!("verdict is {}", verdict.label())));
    }
    certify_witnesses(ifs, verdict.witnesses(), cfg)
}

/// The one-vertex certificate pairing a dust-like system with itself.
pub fn trivial_certificate(dust: &Ifs) -> Certificate {
    let pieces = (1..=dust.n())
        .map(|l| {
            let m = dust.spec.map(l).clone();
            Piece {
                target: VertexId::Whole,
                ratio: dust.spec.ratio(l).clone(),
                d_map: m.clone(),
                t_map: m,
            }
        })
        .collect();
    let digest = spec_digest(&dust.spec);
    Certificate {
        version: CERTIFICATE_VERSION,
        spec_digest: digest.clone(),
        dust_digest: digest,
        p: 1,
        q: 1,
        witnesses: Vec::new(),
        vertices: vec![Vertex {
            id: VertexId::Whole,
            t_words: vec![Word::empty()],
            d_words: vec![Word::empty()],
            witness: None,
        }],
        edges: vec![Edge {
            source: VertexId::Whole,
            pieces,
        }],
    }
}
