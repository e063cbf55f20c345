use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::decide::SubstitutabilityWitness;
use crate::exactnum::{parse_real, ExactRatio, Real};
use crate::ifscore::{Ifs, IfsSpec, Similarity, Word};

use super::{Certificate, CertifyError, Edge, Piece, Vertex, VertexId};

const FORMAT: &str = "lipeq-certificate";

/// SHA-256 of the exact ratios and translations of a system.
pub fn spec_digest(spec: &IfsSpec) -> String {
    let mut h = Sha256::new();
    h.update(b"lipeq-spec-v1\n");
    h.update(format!("{}\n", spec.n()));
    for r in spec.ratios() {
        h.update(format!("{r}\n"));
    }
    for t in spec.translations() {
        h.update(format!("{t}\n"));
    }
    hex::encode(h.finalize())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    scale: String,
    offset: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceDoc {
    target: VertexId,
    ratio: String,
    t_map: MapDoc,
    d_map: MapDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    source: VertexId,
    pieces: Vec<PieceDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: VertexId,
    t_words: Vec<Word>,
    d_words: Vec<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<SubstitutabilityWitness>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertDoc {
    format: String,
    version: u32,
    spec_digest: String,
    dust_digest: String,
    p: u64,
    q: u64,
    witnesses: Vec<SubstitutabilityWitness>,
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
}

fn map_doc(m: &Similarity) -> MapDoc {
    MapDoc {
        scale: m.scale.to_string(),
        offset: m.offset.to_string(),
    }
}

/// Canonical JSON text; equal certificates give identical bytes.
pub fn certificate_to_json(cert: &Certificate) -> String {
    let doc = CertDoc {
        format: FORMAT.into(),
        version: cert.version,
        spec_digest: cert.spec_digest.clone(),
        dust_digest: cert.dust_digest.clone(),
        p: cert.p,
        q: cert.q,
        witnesses: cert.witnesses.clone(),
        vertices: cert
            .vertices
            .iter()
            .map(|v| VertexDoc {
                id: v.id,
                t_words: v.t_words.clone(),
                d_words: v.d_words.clone(),
                witness: v.witness.clone(),
            })
            .collect(),
        edges: cert
            .edges
            .iter()
            .map(|e| EdgeDoc {
                source: e.source,
                pieces: e
                    .pieces
                    .iter()
                    .map(|p| PieceDoc {
                        target: p.target,
                        ratio: p.ratio.to_string(),
                        t_map: map_doc(&p.t_map),
                        d_map: map_doc(&p.d_map),
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

/// Parses a certificate for `ifs`; symbols in exact values resolve against
/// the system's declared bases. The result is not validated.
pub fn certificate_from_json(text: &str, ifs: &Ifs) -> Result<Certificate, CertifyError> {
    let doc: CertDoc = serde_json::from_str(text).map_err(|e| CertifyError::Format(e.to_string()))?;
    if doc.format != FORMAT {
        return Err(CertifyError::Format(format!("not a certificate: format {:?}", doc.format)));
    }
    let table = ifs.spec.table();
    let real = |s: &str| parse_real(s, table).map_err(|e| CertifyError::Format(format!("{s:?}: {e}")));
    let map = |m: &MapDoc| -> Result<Similarity, CertifyError> { Ok(Similarity::new(real(&m.scale)?, real(&m.offset)?)) };
    let edges = doc
        .edges
        .iter()
        .map(|e| {
            let pieces = e
                .pieces
                .iter()
                .map(|p| {
                    let r: Real = real(&p.ratio)?;
                    Ok(Piece {
                        target: p.target,
                        ratio: ExactRatio::new(r).map_err(|e| CertifyError::Format(e.to_string()))?,
                        t_map: map(&p.t_map)?,
                        d_map: map(&p.d_map)?,
                    })
                })
                .collect::<Result<Vec<_>, CertifyError>>()?;
            Ok(Edge {
                source: e.source,
                pieces,
            })
        })
        .collect::<Result<Vec<_>, CertifyError>>()?;
    Ok(Certificate {
        version: doc.version,
        spec_digest: doc.spec_digest,
        dust_digest: doc.dust_digest,
        p: doc.p,
        q: doc.q,
        witnesses: doc.witnesses,
        vertices: doc
            .vertices
            .into_iter()
            .map(|v| Vertex {
                id: v.id,
                t_words: v.t_words,
                d_words: v.d_words,
                witness: v.witness,
            })
            .collect(),
        edges,
    })
}
