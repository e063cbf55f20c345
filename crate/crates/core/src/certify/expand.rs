use std::collections::BTreeMap;

use crate::exactnum::Real;
use crate::ifscore::{canonical, Ifs, IfsSpec, Similarity, Word};

use super::validate::{check, Checked};
use super::{Certificate, CertifyError, Vertex, VertexId};

/// One piece of the finite-depth correspondence: `t_map` places the target
/// vertex set on the attractor and `d_map` places its partner on the dust.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapPiece {
    pub target: VertexId,
    pub t_map: Similarity,
    pub d_map: Similarity,
    /// The cylinders covered on either side, paired index for index.
    pub t_words: Vec<Word>,
    pub d_words: Vec<Word>,
}

struct Lookup(Vec<(Word, usize)>);

impl Lookup {
    fn new(words: &[Word]) -> Lookup {
        let mut v: Vec<(Word, usize)> = words.iter().cloned().zip(0..).collect();
        v.sort();
        Lookup(v)
    }

    /// The index of the word that is a prefix of `x`, and the rest of `x`.
    fn split(&self, x: &Word) -> (usize, Word) {
        let at = self.0.partition_point(|(w, _)| w <= x);
        let (w, k) = &self.0[at - 1];
        (*k, x.strip_prefix(w).expect("image inside the target set"))
    }
}

/// Unrolls the certificate `depth` times from the whole-set vertex.
pub fn expand_map(cert: &Certificate, ifs: &Ifs, depth: usize) -> Result<Vec<MapPiece>, CertifyError> {
    let checked = check(cert, ifs)?;
    Ok(unroll(cert, &checked, depth))
}

fn unroll(cert: &Certificate, checked: &Checked, depth: usize) -> Vec<MapPiece> {
    let lookups: BTreeMap<VertexId, (Lookup, Lookup)> = cert
        .vertices
        .iter()
        .map(|v| (v.id, (Lookup::new(&v.t_words), Lookup::new(&v.d_words))))
        .collect();
    let mut level = vec![MapPiece {
        target: VertexId::Whole,
        t_map: Similarity::identity(),
        d_map: Similarity::identity(),
        t_words: vec![Word::empty()],
        d_words: vec![Word::empty()],
    }];
    for _ in 0..depth {
        let mut next = Vec::new();
        for parent in &level {
            let edge = cert.edge(parent.target).expect("validated");
            let (tl, dl) = &lookups[&parent.target];
            for (piece, (ti, di)) in edge.pieces.iter().zip(&checked.images[&parent.target]) {
                let lift = |l: &Lookup, own: &[Word], x: &Word| {
                    let (k, rest) = l.split(x);
                    own[k].concat(&rest)
                };
                next.push(MapPiece {
                    target: piece.target,
                    t_map: parent.t_map.compose(&piece.t_map),
                    d_map: parent.d_map.compose(&piece.d_map),
                    t_words: ti.iter().map(|x| lift(tl, &parent.t_words, x)).collect(),
                    d_words: di.iter().map(|x| lift(dl, &parent.d_words, x)).collect(),
                });
            }
        }
        level = next;
    }
    level
}

/// Whether the pieces tile both the attractor and the dust exactly, with
/// no cylinder covered twice.
pub fn is_bijective(pieces: &[MapPiece], n: usize) -> bool {
    let tiles = |words: Vec<&Word>| {
        let mut ws: Vec<Word> = words.into_iter().cloned().collect();
        ws.sort();
        ws.windows(2).all(|p| !p[0].is_prefix_of(&p[1])) && canonical(&ws, n) == [Word::empty()]
    };
    tiles(pieces.iter().flat_map(|p| &p.t_words).collect()) && tiles(pieces.iter().flat_map(|p| &p.d_words).collect())
}

/// Empirical bi-Lipschitz bounds of the finite-depth correspondence.
#[derive(Clone, Debug, PartialEq)]
pub struct Distortion {
    pub c_low: f64,
    pub c_high: f64,
    pub pieces: usize,
    pub points: usize,
    pub pairs: usize,
}

/// Stop refining once the accumulated scale is below this.
const END_SCALE: f64 = 1e-40;

/// Coordinate differences above this are taken in floating point.
const FLOAT_SEPARATION: f64 = 1e-6;

/// The two ends of a vertex set on the attractor and their images on the
/// dust.
#[derive(Clone)]
struct Ends {
    left: (Real, Real),
    right: (Real, Real),
}

/// For each vertex, its end points and their images, found by following
/// the outermost piece down the graph until the accumulated scale is
/// negligible.
fn vertex_ends(cert: &Certificate, ifs: &Ifs, dust: &IfsSpec, checked: &Checked) -> BTreeMap<VertexId, Ends> {
    // index of the outermost piece on each side
    let outer: BTreeMap<VertexId, (usize, usize)> = checked
        .images
        .iter()
        .map(|(&v, imgs)| {
            let key = |k: &usize| imgs[*k].0.iter().min().expect("nonempty");
            let lo = (0..imgs.len()).min_by_key(key).expect("nonempty edge");
            let key = |k: &usize| imgs[*k].0.iter().max().expect("nonempty");
            let hi = (0..imgs.len()).max_by_key(key).expect("nonempty edge");
            (v, (lo, hi))
        })
        .collect();
    let end = |v: &Vertex, right: bool| {
        let k = if right {
            (0..v.t_words.len()).max_by_key(|&k| &v.t_words[k])
        } else {
            (0..v.t_words.len()).min_by_key(|&k| &v.t_words[k])
        }
        .expect("nonempty");
        let t = ifs.spec.word_map(&v.t_words[k]);
        let d = dust.word_map(&v.d_words[k]);
        if right {
            (&t.offset + &t.scale, &d.offset + &d.scale)
        } else {
            (t.offset, d.offset)
        }
    };
    let chase = |v: &Vertex, right: bool| {
        let x = end(v, right).0;
        let mut acc = Similarity::identity();
        let mut cur = v.id;
        while acc.scale.to_f64() >= END_SCALE {
            let (lo, hi) = outer[&cur];
            let piece = &cert.edge(cur).expect("validated").pieces[if right { hi } else { lo }];
            acc = acc.compose(&piece.d_map);
            cur = piece.target;
        }
        (x, acc.apply(&end(cert.vertex(cur).expect("validated"), right).1))
    };
    cert.vertices
        .iter()
        .map(|v| {
            let ends = Ends {
                left: chase(v, false),
                right: chase(v, true),
            };
            (v.id, ends)
        })
        .collect()
}

/// `min` and `max` of `|f(x) − f(y)| / |x − y|` over representative points:
/// both ends of each piece on the attractor, with their images on the dust. All pairs are used when there are at most
/// `sample_pairs`; otherwise pairs `(i, i + 2^m)` in left-to-right order,
/// thinned evenly to the budget.
pub fn distortion_report(
    cert: &Certificate,
    ifs: &Ifs,
    depth: usize,
    sample_pairs: usize,
) -> Result<Distortion, CertifyError> {
    let checked = check(cert, ifs)?;
    let pieces = unroll(cert, &checked, depth);
    let dust = crate::ifscore::canonical_dust(ifs.spec.ratios())?;
    let ends = vertex_ends(cert, ifs, &dust, &checked);
    let mut pts: Vec<(Real, Real)> = Vec::with_capacity(2 * pieces.len());
    for p in &pieces {
        let e = &ends[&p.target];
        for (x, y) in [&e.left, &e.right] {
            pts.push((p.t_map.apply(x), p.d_map.apply(y)));
        }
    }
    pts.sort_by(|a, b| a.0.try_cmp(&b.0).unwrap_or_else(|_| a.0.to_f64().total_cmp(&b.0.to_f64())));
    let m = pts.len();
    let all = m * m.saturating_sub(1) / 2;
    let float: Vec<(f64, f64)> = pts.iter().map(|(x, y)| (x.to_f64(), y.to_f64())).collect();
    let quotient = |i: usize, j: usize| {
        let (dx, dy) = (float[j].0 - float[i].0, float[j].1 - float[i].1);
        if dx.abs() > FLOAT_SEPARATION && dy.abs() > FLOAT_SEPARATION {
            return (dy / dx).abs();
        }
        let dx = (&pts[j].0 - &pts[i].0).to_f64();
        let dy = (&pts[j].1 - &pts[i].1).to_f64();
        (dy / dx).abs()
    };
    let mut c_low = f64::INFINITY;
    let mut c_high = 0.0f64;
    let mut count = 0;
    let mut see = |r: f64| {
        c_low = c_low.min(r);
        c_high = c_high.max(r);
        count += 1;
    };
    if all <= sample_pairs {
        for i in 0..m {
            for j in i + 1..m {
                see(quotient(i, j));
            }
        }
    } else {
        let mut pairs = Vec::new();
        let mut gap = 1;
        while gap < m {
            pairs.extend((0..m - gap).map(|i| (i, i + gap)));
            gap *= 2;
        }
        let step = pairs.len().div_ceil(sample_pairs.max(1));
        for &(i, j) in pairs.iter().step_by(step) {
            see(quotient(i, j));
        }
    }
    Ok(Distortion {
        c_low,
        c_high,
        pieces: pieces.len(),
        points: m,
        pairs: count,
    })
}
