use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactnum::{moran_dimension, Real, DEFAULT_TOL};
use crate::ifscore::{
    canonical, canonical_dust, is_separate, words_touch, CylinderUnion, Ifs, IfsSpec, Side, Similarity, Word,
};
use crate::patches::measure;

use super::serial::spec_digest;
use super::{Certificate, CertifyError, VertexId, CERTIFICATE_VERSION};

/// Tolerance for the measure identity when it cannot be checked exactly.
pub const MEASURE_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub vertices: usize,
    pub edges: usize,
    pub pieces: usize,
    /// Whether the measure identities were checked in exact arithmetic.
    pub measure_exact: bool,
    pub max_measure_error: f64,
}

/// Image words of one piece: the cylinders its maps send the target's
/// `t_words` and `d_words` to, index for index.
pub(crate) type Images = (Vec<Word>, Vec<Word>);

pub(crate) struct Checked {
    pub report: ValidationReport,
    pub images: BTreeMap<VertexId, Vec<Images>>,
}

fn invalid(msg: impl Into<String>) -> CertifyError {
    CertifyError::Invalid(msg.into())
}

/// The word `w` with `Ψ_w = map`, if there is one.
pub fn cylinder_of(spec: &IfsSpec, map: &Similarity) -> Result<Option<Word>, CertifyError> {
    let lo = &map.offset;
    let hi = &map.offset + &map.scale;
    let mut w = Word::empty();
    let mut cur = Similarity::identity();
    loop {
        if cur == *map {
            return Ok(Some(w));
        }
        if cur.scale.le(&map.scale)? {
            return Ok(None);
        }
        let mut next = None;
        for l in 1..=spec.n() {
            let child = cur.compose(spec.map(l));
            let top = &child.offset + &child.scale;
            if child.offset.le(lo)? && hi.le(&top)? {
                next = Some((l, child));
                break;
            }
        }
        match next {
            Some((l, child)) => {
                w = w.push(l);
                cur = child;
            }
            None => return Ok(None),
        }
    }
}

fn check_antichain(words: &[Word], what: &str) -> Result<(), CertifyError> {
    let mut sorted = words.to_vec();
    sorted.sort();
    for p in sorted.windows(2) {
        if p[0].is_prefix_of(&p[1]) {
            return Err(invalid(format!("{what}: cylinders {} and {} overlap", p[0], p[1])));
        }
    }
    Ok(())
}

fn images(spec: &IfsSpec, map: &Similarity, words: &[Word], what: &str) -> Result<Vec<Word>, CertifyError> {
    words
        .iter()
        .map(|u| {
            cylinder_of(spec, &map.compose(&spec.word_map(u)))?
                .ok_or_else(|| invalid(format!("{what}: the image of cylinder {u} is not a cylinder")))
        })
        .collect()
}

fn exact_measure(n: usize, words: &[Word]) -> BigRational {
    let n = BigInt::from(n);
    words.iter().fold(BigRational::zero(), |acc, w| {
        acc + BigRational::new(BigInt::one(), num_traits::pow(n.clone(), w.len()))
    })
}

fn unit_scale(piece_scale: &Real) -> bool {
    *piece_scale == Real::one()
}

/// Whether the edges of scale one admit a cycle.
fn unit_cycle(cert: &Certificate) -> Option<VertexId> {
    let mut succ: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for e in &cert.edges {
        let s = succ.entry(e.source).or_default();
        for p in e.pieces.iter().filter(|p| unit_scale(&p.t_map.scale)) {
            s.insert(p.target);
        }
    }
    // 0 unvisited, 1 on stack, 2 done
    let mut state: BTreeMap<VertexId, u8> = BTreeMap::new();
    fn dfs(
        v: VertexId,
        succ: &BTreeMap<VertexId, BTreeSet<VertexId>>,
        state: &mut BTreeMap<VertexId, u8>,
    ) -> Option<VertexId> {
        state.insert(v, 1);
        for &u in succ.get(&v).into_iter().flatten() {
            match state.get(&u).copied().unwrap_or(0) {
                1 => return Some(u),
                0 => {
                    if let Some(c) = dfs(u, succ, state) {
                        return Some(c);
                    }
                }
                _ => {}
            }
        }
        state.insert(v, 2);
        None
    }
    for &v in succ.keys() {
        if state.get(&v).copied().unwrap_or(0) == 0 {
            if let Some(c) = dfs(v, &succ, &mut state) {
                return Some(c);
            }
        }
    }
    None
}

pub(crate) fn check(cert: &Certificate, ifs: &Ifs) -> Result<Checked, CertifyError> {
    if cert.version != CERTIFICATE_VERSION {
        return Err(invalid(format!("unsupported version {}", cert.version)));
    }
    if cert.spec_digest != spec_digest(&ifs.spec) {
        return Err(invalid("spec digest does not match the system"));
    }
    let dust = Ifs::new(canonical_dust(ifs.spec.ratios())?);
    if cert.dust_digest != spec_digest(&dust.spec) {
        return Err(invalid("dust digest does not match the ratios"));
    }
    let n = ifs.n();
    let mut by_id = BTreeMap::new();
    for v in &cert.vertices {
        if by_id.insert(v.id, v).is_some() {
            return Err(invalid(format!("vertex {} listed twice", v.id)));
        }
        if v.t_words.is_empty() || v.t_words.len() != v.d_words.len() {
            return Err(invalid(format!("vertex {}: empty or unpaired cylinders", v.id)));
        }
        for w in v.t_words.iter().chain(&v.d_words) {
            if !w.in_range(n) {
                return Err(invalid(format!("vertex {}: word {w} out of range", v.id)));
            }
        }
        check_antichain(&v.t_words, &format!("vertex {}", v.id))?;
        check_antichain(&v.d_words, &format!("vertex {}", v.id))?;
        for (t, d) in v.t_words.iter().zip(&v.d_words) {
            if ifs.spec.word_ratio(t) != ifs.spec.word_ratio(d) {
                return Err(invalid(format!("vertex {}: cylinders {t} and {d} differ in ratio", v.id)));
            }
        }
        if v.id != VertexId::Whole {
            let set = CylinderUnion::new(Side::T, v.t_words.clone()).map_err(|_| invalid("not an antichain"))?;
            if !is_separate(ifs, &set)?.separate {
                return Err(invalid(format!("vertex {} is not separate in the attractor", v.id)));
            }
        }
    }
    match by_id.get(&VertexId::Whole) {
        Some(v) if v.t_words == [Word::empty()] && v.d_words == [Word::empty()] => {}
        _ => return Err(invalid("missing or malformed whole-set vertex")),
    }
    let exact = ifs.spec.is_equal_ratio();
    let s = if exact { 0.0 } else { moran_dimension(ifs.spec.ratios(), DEFAULT_TOL)? };
    let mut report = ValidationReport {
        vertices: cert.vertices.len(),
        edges: cert.edges.len(),
        pieces: 0,
        measure_exact: exact,
        max_measure_error: 0.0,
    };
    let mut all_images = BTreeMap::new();
    for e in &cert.edges {
        let source = by_id
            .get(&e.source)
            .ok_or_else(|| invalid(format!("edge from unknown vertex {}", e.source)))?;
        if all_images.contains_key(&e.source) {
            return Err(invalid(format!("two edges leave {}", e.source)));
        }
        if e.pieces.len() < 2 {
            return Err(invalid(format!("edge from {} has fewer than two pieces", e.source)));
        }
        let mut t_all: Vec<(Word, usize)> = Vec::new();
        let mut d_all: Vec<Word> = Vec::new();
        let mut edge_images = Vec::with_capacity(e.pieces.len());
        let mut exact_sum = BigRational::zero();
        let mut float_sum = 0.0;
        for (idx, p) in e.pieces.iter().enumerate() {
            let what = format!("edge {} piece {idx}", e.source);
            let target = by_id
                .get(&p.target)
                .ok_or_else(|| invalid(format!("{what}: unknown target {}", p.target)))?;
            if p.t_map.scale != *p.ratio.value() || p.d_map.scale != *p.ratio.value() {
                return Err(invalid(format!("{what}: scales differ from the ratio")));
            }
            if p.ratio.value().sign()? != std::cmp::Ordering::Greater || !p.ratio.value().le(&Real::one())? {
                return Err(invalid(format!("{what}: ratio outside (0, 1]")));
            }
            let ti = images(&ifs.spec, &p.t_map, &target.t_words, &what)?;
            let di = images(&dust.spec, &p.d_map, &target.d_words, &what)?;
            t_all.extend(ti.iter().map(|w| (w.clone(), idx)));
            d_all.extend(di.iter().cloned());
            if exact {
                let m = ti[0].len() - target.t_words[0].len();
                let f = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(n), m));
                exact_sum += f * exact_measure(n, &target.t_words);
            } else {
                let set = CylinderUnion::new(Side::T, target.t_words.clone()).expect("checked antichain");
                float_sum += p.ratio.powf(s) * measure(ifs, &set, s);
            }
            edge_images.push((ti, di));
        }
        t_all.sort();
        for w in t_all.windows(2) {
            if w[0].0.is_prefix_of(&w[1].0) {
                return Err(invalid(format!("edge {}: pieces overlap at {}", e.source, w[0].0)));
            }
            if w[0].1 != w[1].1 && words_touch(&ifs.ts, &w[0].0, &w[1].0) {
                return Err(invalid(format!("edge {}: pieces touch at {} and {}", e.source, w[0].0, w[1].0)));
            }
        }
        check_antichain(&d_all, &format!("edge {}", e.source))?;
        let t_words: Vec<Word> = t_all.into_iter().map(|(w, _)| w).collect();
        if canonical(&t_words, n) != canonical(&source.t_words, n) {
            return Err(invalid(format!("edge {}: pieces do not tile the set", e.source)));
        }
        if canonical(&d_all, n) != canonical(&source.d_words, n) {
            return Err(invalid(format!("edge {}: pieces do not tile the dust set", e.source)));
        }
        if exact {
            if exact_sum != exact_measure(n, &source.t_words) {
                return Err(invalid(format!("edge {}: measure identity fails", e.source)));
            }
        } else {
            let set = CylinderUnion::new(Side::T, source.t_words.clone()).expect("checked antichain");
            let err = (float_sum - measure(ifs, &set, s)).abs();
            report.max_measure_error = report.max_measure_error.max(err);
            if err > MEASURE_TOL {
                return Err(invalid(format!("edge {}: measure identity off by {err:e}", e.source)));
            }
        }
        report.pieces += e.pieces.len();
        all_images.insert(e.source, edge_images);
    }
    if let Some(v) = by_id.keys().find(|v| !all_images.contains_key(v)) {
        return Err(invalid(format!("no edge leaves {v}")));
    }
    if let Some(v) = unit_cycle(cert) {
        return Err(invalid(format!("a cycle of ratio one passes through {v}")));
    }
    Ok(Checked {
        report,
        images: all_images,
    })
}

/// Checks every structural and metric condition of a certificate against
/// the system it claims to describe, in exact arithmetic.
pub fn validate(cert: &Certificate, ifs: &Ifs) -> Result<ValidationReport, CertifyError> {
    check(cert, ifs).map(|c| c.report)
}
