use serde::Serialize;

use lipeq::exactnum::ratio_cmp;
use lipeq::ifscore::{CylinderUnion, Ifs};
use lipeq::patches::{c_family, e_family, partition_s, partition_t, PatchConfig, PatchError};

use crate::Family;

#[derive(Serialize)]
pub struct Piece {
    pub lo: String,
    pub hi: String,
    pub words: Vec<String>,
}

#[derive(Serialize)]
pub struct Dump {
    pub format: &'static str,
    pub version: u32,
    pub family: &'static str,
    pub k: usize,
    /// Whether the sets were built on the mirrored system and reflected back.
    pub mirrored: bool,
    pub count: usize,
    pub pieces: Vec<Piece>,
}

fn word_string(w: &lipeq::ifscore::Word) -> String {
    if w.is_empty() {
        return "ϑ".into();
    }
    let sep = if w.letters().any(|l| l > 9) { "." } else { "" };
    w.letters().map(|l| l.to_string()).collect::<Vec<_>>().join(sep)
}

fn sets(ifs: &Ifs, family: Family, k: usize, cfg: &PatchConfig) -> Result<Vec<CylinderUnion>, PatchError> {
    Ok(match family {
        Family::C => {
            let i0 = cfg.i0.or_else(|| ifs.ts.sigma_t.iter().next().copied()).unwrap_or(0);
            c_family(ifs, i0, k)?.into_iter().map(|c| c.set).collect()
        }
        Family::S => partition_s(ifs, cfg, k)?.pieces,
        Family::T => partition_t(ifs, cfg, k)?.pieces,
        Family::E => e_family(ifs, k)?,
    })
}

/// The members of `family` at level `k` with their exact hulls, left to right.
pub fn dump(ifs: &Ifs, family: Family, k: usize, letter: Option<usize>) -> Result<Dump, PatchError> {
    let cfg = PatchConfig::default();
    if k == 0 || k > cfg.depth_cap {
        return Err(PatchError::DepthCap { k, cap: cfg.depth_cap });
    }
    let n = ifs.n();
    let mirrored = family != Family::E && ratio_cmp(ifs.spec.ratio(1), ifs.spec.ratio(n))?.is_lt();
    let (work, cfg) = if mirrored {
        let i0 = letter.map(|a| n - a);
        (ifs.mirror(), PatchConfig { i0, ..cfg })
    } else {
        (ifs.clone(), PatchConfig { i0: letter, ..cfg })
    };
    let mut found = sets(&work, family, k, &cfg)?;
    if mirrored {
        found = found.iter().map(|s| s.mirrored(n)).collect();
    }
    let mut pieces = Vec::with_capacity(found.len());
    for s in &found {
        if s.is_empty() {
            continue;
        }
        let (lo, hi) = s.hull(ifs)?;
        pieces.push((lo, hi, s.words().iter().map(word_string).collect()));
    }
    let mut err = None;
    pieces.sort_by(|a, b| {
        a.0.try_cmp(&b.0)
            .and_then(|o| Ok(o.then(a.1.try_cmp(&b.1)?)))
            .unwrap_or_else(|e| {
                err = Some(e);
                std::cmp::Ordering::Equal
            })
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    let pieces: Vec<Piece> = pieces
        .into_iter()
        .map(|(lo, hi, words)| Piece {
            lo: lo.to_string(),
            hi: hi.to_string(),
            words,
        })
        .collect();
    Ok(Dump {
        format: "lipeq-partition",
        version: 1,
        family: match family {
            Family::C => "C",
            Family::S => "S",
            Family::T => "T",
            Family::E => "E",
        },
        k,
        mirrored,
        count: pieces.len(),
        pieces,
    })
}
